//! Graded polynomial algebras over ℚ and prime fields, with exact linear
//! algebra on graded components.

mod checks;
mod linalg;
mod parse;
pub mod presets;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::exactnum::{format_rational, Rational};

pub use checks::{
    verify_free_basis, verify_regular_sequence, weierstrass_identity_check, BasisCertificate, BasisVerdict,
    DegreeCheck, FreeFailure, RegularFailure, RegularSequenceReport, WeierstrassReport,
};
pub use linalg::rank;
pub use parse::{parse_expression, Presentation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Canonical representative: unchanged over ℚ, an integer in [0, p) over 𝔽_p.
    pub fn reduce(&self, r: &Rational) -> Result<Rational> {
        match *self {
            Field::Rational => Ok(r.clone()),
            Field::Prime(p) => {
                let p_big = BigInt::from(p);
                let num = r.numer().mod_floor(&p_big);
                let den = r.denom().mod_floor(&p_big);
                if den.is_zero() {
                    return Err(Error::InvalidInput(format!(
                        "coefficient {} is not defined in {self}",
                        format_rational(r)
                    )));
                }
                // den^(p-2) is the inverse of den modulo p
                let inv = den.modpow(&BigInt::from(p - 2), &p_big);
                Ok(Rational::from_integer((num * inv).mod_floor(&p_big)))
            }
        }
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => f.write_str("Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "Q" {
            return Ok(Field::Rational);
        }
        s.strip_prefix('F')
            .and_then(|p| p.parse::<u64>().ok())
            .filter(|&p| is_prime(p))
            .map(Field::Prime)
            .ok_or_else(|| Error::Parse(format!("field must be Q or F<prime>, got `{s}`")))
    }
}

impl Serialize for Field {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub type Exponents = Vec<u32>;

/// Polynomial with rational coefficients, keyed by exponent vector.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Exponents, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn monomial(exps: Exponents, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Self { terms }
    }

    pub fn variable(nvars: usize, index: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        Self::monomial(exps, Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// The value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32, nvars: usize) -> Self {
        let mut acc = Self::constant(nvars, Rational::one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficients reduced into `field`, zero terms dropped.
    pub fn reduce(&self, field: Field) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let r = field.reduce(c)?;
            if !r.is_zero() {
                terms.insert(e.clone(), r);
            }
        }
        Ok(Self { terms })
    }

    fn add_term(&mut self, e: Exponents, c: Rational) {
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        let mut acc: BTreeMap<Exponents, Rational> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Poly { terms: acc }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Variable {
    pub name: String,
    pub degree: u64,
}

/// A free graded polynomial algebra over a field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedAlgebra {
    pub field: Field,
    pub vars: Vec<Variable>,
}

impl GradedAlgebra {
    pub fn new(field: Field, vars: &[(&str, u64)]) -> Result<Self> {
        let mut alg = Self {
            field,
            vars: Vec::new(),
        };
        for &(name, degree) in vars {
            alg.add_variable(name, degree)?;
        }
        Ok(alg)
    }

    pub(crate) fn add_variable(&mut self, name: &str, degree: u64) -> Result<()> {
        if degree == 0 {
            return Err(Error::InvalidInput(format!(
                "variable {name} must have positive degree"
            )));
        }
        if self.vars.iter().any(|v| v.name == name) {
            return Err(Error::InvalidInput(format!("variable {name} declared twice")));
        }
        self.vars.push(Variable {
            name: name.to_string(),
            degree,
        });
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var(&self, name: &str) -> Option<Poly> {
        self.vars
            .iter()
            .position(|v| v.name == name)
            .map(|i| Poly::variable(self.nvars(), i))
    }

    pub fn one(&self) -> Poly {
        Poly::constant(self.nvars(), Rational::one())
    }

    pub fn monomial_degree(&self, exps: &[u32]) -> u64 {
        exps.iter().zip(&self.vars).map(|(&e, v)| e as u64 * v.degree).sum()
    }

    /// Degree of a nonzero homogeneous polynomial; `None` for zero.
    pub fn homogeneous_degree(&self, p: &Poly) -> Result<Option<u64>> {
        let mut degrees = p.terms().map(|(e, _)| self.monomial_degree(e));
        let Some(first) = degrees.next() else {
            return Ok(None);
        };
        if degrees.all(|d| d == first) {
            Ok(Some(first))
        } else {
            Err(Error::InhomogeneousInput(self.format(p)))
        }
    }

    /// Monomials of weighted degree d, in decreasing lexicographic order of
    /// exponent vectors.
    pub fn graded_component(&self, d: u64) -> Vec<Exponents> {
        let mut out = Vec::new();
        let mut current = vec![0u32; self.nvars()];
        self.fill_component(0, d, &mut current, &mut out);
        out
    }

    fn fill_component(&self, i: usize, rest: u64, current: &mut Exponents, out: &mut Vec<Exponents>) {
        if i == self.nvars() {
            if rest == 0 {
                out.push(current.clone());
            }
            return;
        }
        let deg = self.vars[i].degree;
        for e in (0..=rest / deg).rev() {
            current[i] = e as u32;
            self.fill_component(i + 1, rest - e * deg, current, out);
        }
        current[i] = 0;
    }

    pub fn component_dim(&self, d: u64) -> usize {
        self.graded_component(d).len()
    }

    pub fn format_monomial(&self, exps: &[u32]) -> String {
        let factors: Vec<String> = exps
            .iter()
            .zip(&self.vars)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, v)| {
                if e == 1 {
                    v.name.clone()
                } else {
                    format!("{}^{e}", v.name)
                }
            })
            .collect();
        if factors.is_empty() {
            "1".into()
        } else {
            factors.join("*")
        }
    }

    /// Human-readable polynomial, highest monomials first.
    pub fn format(&self, p: &Poly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in p.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = self.format_monomial(e);
            if mono == "1" {
                out.push_str(&format_rational(&abs));
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{mono}", format_rational(&abs)));
            }
        }
        out
    }

    /// Coordinates of a homogeneous polynomial of degree d in the monomial
    /// basis of the degree-d component, reduced into the field.
    pub(crate) fn coordinates(&self, p: &Poly, basis: &BTreeMap<Exponents, usize>) -> Result<Vec<Rational>> {
        let mut row = vec![Rational::zero(); basis.len()];
        for (e, c) in p.reduce(self.field)?.terms() {
            let idx = basis.get(e).ok_or_else(|| Error::InhomogeneousInput(self.format(p)))?;
            row[*idx] = c.clone();
        }
        Ok(row)
    }
}

pub(crate) fn component_index(monos: &[Exponents]) -> BTreeMap<Exponents, usize> {
    monos.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect()
}

/// Coefficients of ∏ 1/(1 - t^{d_i}) through degree `through`.
pub fn hilbert_series_free(degrees: &[u64], through: u64) -> Vec<u64> {
    let mut h = vec![0u64; through as usize + 1];
    h[0] = 1;
    for &d in degrees {
        let d = d as usize;
        for k in d..h.len() {
            h[k] += h[k - d];
        }
    }
    h
}
