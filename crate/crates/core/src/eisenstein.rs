//! Weight-one Eisenstein series attached to odd characters of 2-power order,
//! and the lift of the mod-2 Hasse invariant they produce.

use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::json;

use crate::arith::{divisors, is_prime, smallest_primitive_root};
use crate::error::{Error, Result};
use crate::exactnum::{format_rational, int, is_two_integral, rat, CyclotomicElement, ExtendedValuation, Rational};

/// χ: (ℤ/p)^× → μ_{2^m} with χ(g) = ζ_{2^m} for the smallest primitive root g,
/// where p - 1 = 2^m · l with l odd.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirichletCharacter {
    p: u64,
    m: u32,
    generator: u64,
    /// exponents[n] = j with χ(n) = ζ^j, or None when p | n.
    exponents: Vec<Option<u64>>,
}

impl DirichletCharacter {
    /// The modulus-p character of maximal 2-power order.
    pub fn new(p: u64) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let m = (p - 1).trailing_zeros();
        if m > CyclotomicElement::MAX_LOG_ORDER {
            return Err(Error::InvalidInput(format!("2-part of {p} - 1 is too large")));
        }
        let g = smallest_primitive_root(p);
        let order = 1u64 << m;
        let mut exponents = vec![None; p as usize];
        let mut x = 1;
        for j in 0..p - 1 {
            exponents[x as usize] = Some(j % order);
            x = x * g % p;
        }
        Ok(Self {
            p,
            m,
            generator: g,
            exponents,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// m, the 2-adic order of p - 1.
    pub fn log_order(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u64 {
        1 << self.m
    }

    pub fn generator(&self) -> u64 {
        self.generator
    }

    pub fn exponent(&self, n: i64) -> Option<u64> {
        self.exponents[n.rem_euclid(self.p as i64) as usize]
    }

    pub fn value(&self, n: i64) -> CyclotomicElement {
        match self.exponent(n) {
            Some(j) => CyclotomicElement::zeta_pow(self.m, j as i64),
            None => CyclotomicElement::zero(self.m),
        }
    }

    pub fn is_odd(&self) -> bool {
        self.exponent(-1) == Some(self.order() / 2)
    }

    /// σ_k ∘ χ for odd k, i.e. χ^k.
    pub fn galois_conjugate(&self, k: u64) -> Self {
        assert!(k % 2 == 1, "Galois exponents are odd");
        let order = self.order();
        Self {
            exponents: self.exponents.iter().map(|e| e.map(|j| j * k % order)).collect(),
            ..self.clone()
        }
    }
}

pub fn odd_two_power_character(p: u64) -> Result<DirichletCharacter> {
    DirichletCharacter::new(p)
}

/// L(0, χ) = -(1/p) Σ_{n=1}^{p-1} n χ(n).
pub fn l_value(chi: &DirichletCharacter) -> CyclotomicElement {
    assert!(chi.is_odd(), "L(0, χ) formula needs an odd character");
    let mut sum = CyclotomicElement::zero(chi.log_order());
    for n in 1..chi.modulus() as i64 {
        sum = &sum + &chi.value(n).scale(&int(n));
    }
    sum.scale(&rat(-1, chi.modulus() as i64))
}

fn require_order(chi: &DirichletCharacter) -> Result<()> {
    if chi.log_order() < 2 {
        Err(Error::OrderTooSmall {
            p: chi.modulus(),
            m: chi.log_order(),
        })
    } else {
        Ok(())
    }
}

/// 1 - 1/2^{m-2}, the exponent as originally stated.
pub fn stated_exponent(m: u32) -> Rational {
    int(1) - Rational::new(1.into(), num_bigint::BigInt::one() << (m - 2))
}

/// 1 - 1/2^{m-1}, from v₂(1 - ζ) = 1/2^{m-1}.
pub fn computed_exponent(m: u32) -> Rational {
    int(1) - Rational::new(1.into(), num_bigint::BigInt::one() << (m - 1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationClaimReport {
    pub p: u64,
    pub m: u32,
    pub l_value: CyclotomicElement,
    pub v2_l: ExtendedValuation,
    pub v2_one_minus_zeta: ExtendedValuation,
    /// v₂(L) + v₂(1 - ζ) = 1.
    pub sums_to_one: bool,
    /// L ≡ 1 + ζ + … + ζ^{2^{m-1}-1} mod 2.
    pub congruence_mod_2: bool,
    pub stated_exponent: Rational,
    pub computed_exponent: Rational,
}

impl ValuationClaimReport {
    pub fn holds(&self) -> bool {
        self.sums_to_one
            && self.congruence_mod_2
            && self.v2_l == ExtendedValuation::Finite(self.computed_exponent.clone())
    }
}

pub fn valuation_claim_check(p: u64) -> Result<ValuationClaimReport> {
    let chi = odd_two_power_character(p)?;
    require_order(&chi)?;
    let m = chi.log_order();
    let l = l_value(&chi);
    let one_minus_zeta = &CyclotomicElement::one(m) - &CyclotomicElement::zeta(m);
    let v2_l = l.two_adic_valuation();
    let v2_z = one_minus_zeta.two_adic_valuation();
    let sums_to_one = v2_l.clone() + v2_z.clone() == ExtendedValuation::Finite(int(1));
    let mut geometric = CyclotomicElement::zero(m);
    for j in 0..(1i64 << (m - 1)) {
        geometric = &geometric + &CyclotomicElement::zeta_pow(m, j);
    }
    let congruence_mod_2 = (&l - &geometric).scale(&rat(1, 2)).coords().iter().all(is_two_integral);
    Ok(ValuationClaimReport {
        p,
        m,
        l_value: l,
        v2_l,
        v2_one_minus_zeta: v2_z,
        sums_to_one,
        congruence_mod_2,
        stated_exponent: stated_exponent(m),
        computed_exponent: computed_exponent(m),
    })
}

/// Truncated q-expansion Σ_{n ≤ precision} a_n q^n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QExpansion {
    pub coeffs: Vec<CyclotomicElement>,
    pub conductor: u64,
}

impl QExpansion {
    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficient(&self, n: usize) -> &CyclotomicElement {
        &self.coeffs[n]
    }

    pub fn scale_by(&self, x: &CyclotomicElement) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| x * c).collect(),
            conductor: self.conductor,
        }
    }
}

/// E₁^χ = L(0, χ)/2 + Σ_{n ≥ 1} (Σ_{d | n} χ(d)) qⁿ.
pub fn eisenstein_q_expansion(chi: &DirichletCharacter, precision: usize) -> QExpansion {
    assert!(precision >= 1, "precision must be positive");
    let mut coeffs = vec![l_value(chi).scale(&rat(1, 2))];
    for n in 1..=precision as u64 {
        let mut c = CyclotomicElement::zero(chi.log_order());
        for d in divisors(n) {
            c = &c + &chi.value(d as i64);
        }
        coeffs.push(c);
    }
    QExpansion {
        coeffs,
        conductor: chi.modulus(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HasseLiftReport {
    pub p: u64,
    pub m: u32,
    pub l_value: CyclotomicElement,
    pub v2_l: ExtendedValuation,
    pub stated_exponent: Rational,
    pub computed_exponent: Rational,
    pub precision: usize,
    /// f_i(n): the ζ^i-coordinate of the n-th coefficient of (1 - ζ)E₁^χ.
    pub components: Vec<Vec<Rational>>,
    /// Each f_i equals 2^{-(m-1)} Σ_σ σ(ζ^{-i} E), coefficientwise.
    pub galois_average: bool,
    /// F = Σ_i f_i.
    pub f_sum: Vec<Rational>,
    pub verdict: Verdict,
}

impl HasseLiftReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Fixed key order: p, m, l_value, v2_l, paper_exponent,
    /// computed_exponent, precision, verdict, galois_average, F.
    pub fn to_json(&self) -> serde_json::Value {
        let fmt_all = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>();
        json!({
            "p": self.p,
            "m": self.m,
            "l_value": fmt_all(self.l_value.coords()),
            "v2_l": self.v2_l.to_string(),
            "paper_exponent": format_rational(&self.stated_exponent),
            "computed_exponent": format_rational(&self.computed_exponent),
            "precision": self.precision,
            "verdict": self.verdict,
            "galois_average": self.galois_average,
            "F": fmt_all(&self.f_sum),
        })
    }
}

fn v2_at_least_one(x: &Rational) -> bool {
    x.is_zero() || crate::exactnum::two_adic_order(x).is_some_and(|v| v >= 1)
}

pub fn hasse_lift(p: u64, precision: usize) -> Result<HasseLiftReport> {
    let chi = odd_two_power_character(p)?;
    require_order(&chi)?;
    if precision == 0 {
        return Err(Error::InvalidInput("precision must be at least 1".into()));
    }
    let m = chi.log_order();
    let one_minus_zeta = &CyclotomicElement::one(m) - &CyclotomicElement::zeta(m);
    let e = eisenstein_q_expansion(&chi, precision).scale_by(&one_minus_zeta);

    for (n, c) in e.coeffs.iter().enumerate() {
        if !c.coords().iter().all(is_two_integral) {
            return Err(Error::IntegralityFailure {
                index: n,
                detail: c.to_string(),
            });
        }
    }

    let degree = 1usize << (m - 1);
    let components: Vec<Vec<Rational>> = (0..degree)
        .map(|i| e.coeffs.iter().map(|c| c.coords()[i].clone()).collect())
        .collect();

    let scale = rat(1, degree as i64);
    let galois_average = (0..degree).all(|i| {
        let twist = CyclotomicElement::zeta_pow(m, -(i as i64));
        e.coeffs.iter().enumerate().all(|(n, c)| {
            let shifted = &twist * c;
            let mut acc = CyclotomicElement::zero(m);
            for k in CyclotomicElement::galois_exponents(m) {
                acc = &acc + &shifted.galois(k);
            }
            acc.scale(&scale) == CyclotomicElement::from_rational(m, components[i][n].clone())
        })
    });

    let f_sum: Vec<Rational> = (0..=precision)
        .map(|n| components.iter().map(|f| &f[n]).sum())
        .collect();
    let pass = v2_at_least_one(&(&f_sum[0] - int(1))) && f_sum[1..].iter().all(v2_at_least_one);

    let l = l_value(&chi);
    Ok(HasseLiftReport {
        p,
        m,
        v2_l: l.two_adic_valuation(),
        l_value: l,
        stated_exponent: stated_exponent(m),
        computed_exponent: computed_exponent(m),
        precision,
        components,
        galois_average,
        f_sum,
        verdict: if pass { Verdict::Pass } else { Verdict::Fail },
    })
}

/// The primes used for the standard Hasse-lift run.
pub const HASSE_PRIMES: [u64; 8] = [5, 13, 17, 29, 37, 41, 53, 61];
