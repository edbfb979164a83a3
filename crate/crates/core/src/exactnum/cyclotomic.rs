use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{format_rational, two_adic_order, ExtendedValuation, Rational};

/// Element of Q(ζ) for ζ a primitive 2^m-th root of unity, stored in the
/// power basis 1, ζ, …, ζ^{n-1} with n = 2^{m-1}.
///
/// The minimal polynomial of ζ is x^n + 1, so products are reduced with
/// ζ^n = -1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicElement {
    log_order: u32,
    coords: Vec<Rational>,
}

impl CyclotomicElement {
    /// Largest supported m; keeps the degree 2^{m-1} at most 2^15.
    pub const MAX_LOG_ORDER: u32 = 16;

    pub fn zero(log_order: u32) -> Self {
        assert!(
            (1..=Self::MAX_LOG_ORDER).contains(&log_order),
            "cyclotomic order 2^{log_order} out of range"
        );
        Self {
            log_order,
            coords: vec![Rational::zero(); 1 << (log_order - 1)],
        }
    }

    pub fn from_rational(log_order: u32, r: Rational) -> Self {
        let mut x = Self::zero(log_order);
        x.coords[0] = r;
        x
    }

    pub fn one(log_order: u32) -> Self {
        Self::from_rational(log_order, Rational::one())
    }

    /// ζ^e for any integer exponent e.
    pub fn zeta_pow(log_order: u32, e: i64) -> Self {
        let mut x = Self::zero(log_order);
        let (idx, sign) = x.reduce_exponent(e);
        x.coords[idx] = if sign { -Rational::one() } else { Rational::one() };
        x
    }

    pub fn zeta(log_order: u32) -> Self {
        Self::zeta_pow(log_order, 1)
    }

    /// Build from power-basis coordinates; the length must be 2^{m-1}.
    pub fn from_coords(log_order: u32, coords: Vec<Rational>) -> Self {
        let x = Self::zero(log_order);
        assert_eq!(coords.len(), x.coords.len(), "coordinate count mismatch");
        Self { log_order, coords }
    }

    /// m, where the field is Q(ζ_{2^m}).
    pub fn log_order(&self) -> u32 {
        self.log_order
    }

    /// 2^m.
    pub fn order(&self) -> u64 {
        1u64 << self.log_order
    }

    /// Degree 2^{m-1} of the field over Q.
    pub fn degree(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// The rational value if the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coords[1..].iter().all(Zero::is_zero) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self {
            log_order: self.log_order,
            coords: self.coords.iter().map(|c| c * r).collect(),
        }
    }

    /// Maps ζ^e to (index, negate) in the power basis.
    fn reduce_exponent(&self, e: i64) -> (usize, bool) {
        let order = self.order() as i64;
        let n = self.degree() as i64;
        let e = e.rem_euclid(order);
        if e >= n {
            ((e - n) as usize, true)
        } else {
            (e as usize, false)
        }
    }

    /// Image under the automorphism ζ ↦ ζ^k (k odd).
    pub fn galois(&self, k: i64) -> Self {
        assert!(k.rem_euclid(2) == 1, "Galois exponent must be odd");
        let mut out = Self::zero(self.log_order);
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (idx, neg) = self.reduce_exponent(i as i64 * k);
            if neg {
                out.coords[idx] -= c;
            } else {
                out.coords[idx] += c;
            }
        }
        out
    }

    /// Odd exponents k in [1, 2^m): the Galois group of Q(ζ_{2^m})/Q.
    pub fn galois_exponents(log_order: u32) -> impl Iterator<Item = i64> {
        (1..(1i64 << log_order)).step_by(2)
    }

    /// Field norm N(x), the product of all Galois conjugates.
    pub fn norm(&self) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        let mut acc = Self::one(self.log_order);
        for k in Self::galois_exponents(self.log_order) {
            acc = &acc * &self.galois(k);
        }
        acc.as_rational()
            .cloned()
            .expect("product of all conjugates is rational")
    }

    /// v_2(x) = v_2(N(x)) / [K:Q], or +∞ for zero.
    pub fn two_adic_valuation(&self) -> ExtendedValuation {
        match two_adic_order(&self.norm()) {
            None => ExtendedValuation::Infinity,
            Some(v) => ExtendedValuation::Finite(Rational::new(v.into(), (self.degree() as i64).into())),
        }
    }

    /// Trace to Q: sum of all conjugates.
    pub fn trace(&self) -> Rational {
        let mut acc = Rational::zero();
        for k in Self::galois_exponents(self.log_order) {
            acc += &self.galois(k).coords[0];
        }
        acc
    }

    fn check_same_field(&self, other: &Self) {
        assert_eq!(
            self.log_order, other.log_order,
            "cyclotomic elements from different fields"
        );
    }
}

impl fmt::Debug for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", format_rational(c))?,
                1 => write!(f, "({})*z", format_rational(c))?,
                _ => write!(f, "({})*z^{i}", format_rational(c))?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " [Q(z_{})]", self.order())
    }
}

impl<'a> Add<&'a CyclotomicElement> for &'a CyclotomicElement {
    type Output = CyclotomicElement;

    fn add(self, rhs: &CyclotomicElement) -> CyclotomicElement {
        self.check_same_field(rhs);
        CyclotomicElement {
            log_order: self.log_order,
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a CyclotomicElement> for &'a CyclotomicElement {
    type Output = CyclotomicElement;

    fn sub(self, rhs: &CyclotomicElement) -> CyclotomicElement {
        self.check_same_field(rhs);
        CyclotomicElement {
            log_order: self.log_order,
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a CyclotomicElement> for &'a CyclotomicElement {
    type Output = CyclotomicElement;

    fn mul(self, rhs: &CyclotomicElement) -> CyclotomicElement {
        self.check_same_field(rhs);
        let n = self.degree();
        let mut out = vec![Rational::zero(); n];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let prod = a * b;
                // negacyclic wrap: ζ^n = -1
                if i + j < n {
                    out[i + j] += prod;
                } else {
                    out[i + j - n] -= prod;
                }
            }
        }
        CyclotomicElement {
            log_order: self.log_order,
            coords: out,
        }
    }
}

impl Neg for &CyclotomicElement {
    type Output = CyclotomicElement;

    fn neg(self) -> CyclotomicElement {
        CyclotomicElement {
            log_order: self.log_order,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<CyclotomicElement> for CyclotomicElement {
            type Output = CyclotomicElement;
            fn $method(self, rhs: CyclotomicElement) -> CyclotomicElement {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
