//! Exact arithmetic: rationals, 2-power cyclotomic fields and the extended
//! 2-adic valuation on them.

mod cyclotomic;
mod valuation;

pub use cyclotomic::CyclotomicElement;
pub use valuation::ExtendedValuation;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exponent of 2 in a nonzero integer.
pub fn two_adic_order_int(n: &BigInt) -> Option<i64> {
    if n.is_zero() {
        return None;
    }
    n.trailing_zeros().map(|t| t as i64)
}

/// Ordinary 2-adic valuation of a rational; `None` for zero.
pub fn two_adic_order(r: &Rational) -> Option<i64> {
    let num = two_adic_order_int(r.numer())?;
    let den = two_adic_order_int(r.denom()).unwrap_or(0);
    Some(num - den)
}

/// True when the rational lies in Z_(2), i.e. has odd denominator.
pub fn is_two_integral(r: &Rational) -> bool {
    r.is_zero() || two_adic_order(r).is_some_and(|v| v >= 0)
}

/// Render a rational as `p` or `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}
