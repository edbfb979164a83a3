use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use super::{format_rational, Rational};

/// A rational valuation, or +∞ for the zero element. Infinity orders above
/// every finite value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtendedValuation {
    Finite(Rational),
    Infinity,
}

impl ExtendedValuation {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtendedValuation::Finite(r) => Some(r),
            ExtendedValuation::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedValuation::Infinity)
    }
}

impl PartialOrd for ExtendedValuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedValuation {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtendedValuation::*;
        match (self, other) {
            (Infinity, Infinity) => Ordering::Equal,
            (Infinity, Finite(_)) => Ordering::Greater,
            (Finite(_), Infinity) => Ordering::Less,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl Add for ExtendedValuation {
    type Output = ExtendedValuation;

    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (ExtendedValuation::Finite(a), ExtendedValuation::Finite(b)) => ExtendedValuation::Finite(a + b),
            _ => ExtendedValuation::Infinity,
        }
    }
}

impl fmt::Display for ExtendedValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedValuation::Finite(r) => write!(f, "{}", format_rational(r)),
            ExtendedValuation::Infinity => write!(f, "inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    #[test]
    fn infinity_is_maximal() {
        assert!(ExtendedValuation::Infinity > ExtendedValuation::Finite(int(1_000_000)));
        assert!(ExtendedValuation::Finite(rat(1, 2)) < ExtendedValuation::Finite(int(1)));
        assert_eq!(
            ExtendedValuation::Finite(rat(1, 2)) + ExtendedValuation::Infinity,
            ExtendedValuation::Infinity
        );
    }
}
