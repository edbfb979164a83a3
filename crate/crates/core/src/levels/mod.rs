//! Congruence subgroups of SL₂(ℤ), their invariants, and dimensions of
//! spaces of modular and cusp forms in characteristic zero.

mod dims;
mod weight1;

pub use dims::{dim_cusp_forms, dim_modular_forms, weight1_cusp_dim, DimensionTable};
pub use weight1::{Provenance, Weight1Data, Weight1Entry};

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;

use crate::arith::{divisors, euler_phi, factorize, gcd};
use crate::error::{Error, Result};
use crate::exactnum::{format_rational, int, rat, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum GroupKind {
    Gamma0,
    Gamma1,
    GammaFull,
}

impl GroupKind {
    /// Short tag used on the command line and in data files.
    pub fn tag(self) -> &'static str {
        match self {
            GroupKind::Gamma0 => "g0",
            GroupKind::Gamma1 => "g1",
            GroupKind::GammaFull => "g",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "g0" => Some(GroupKind::Gamma0),
            "g1" => Some(GroupKind::Gamma1),
            "g" => Some(GroupKind::GammaFull),
            _ => None,
        }
    }
}

/// Γ₀(n), Γ₁(n) or Γ(n).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CongruenceGroup {
    kind: GroupKind,
    level: u64,
}

/// How the dimensions of spaces of modular forms are obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DimensionModel {
    /// Representable compactified moduli: Riemann–Roch applies.
    RiemannRoch,
    /// Small level whose ring of modular forms is a polynomial ring on
    /// generators of the given weights.
    Weighted(u64, u64),
    /// Γ₀(n): classical formula with elliptic points; odd weights vanish.
    Gamma0,
}

impl CongruenceGroup {
    pub const MAX_LEVEL: u64 = 1_000_000;

    pub fn new(kind: GroupKind, level: u64) -> Result<Self> {
        if level < 2 {
            return Err(Error::InvalidGroup(format!("level {level} < 2")));
        }
        if level > Self::MAX_LEVEL {
            return Err(Error::InvalidGroup(format!(
                "level {level} exceeds {}",
                Self::MAX_LEVEL
            )));
        }
        Ok(Self { kind, level })
    }

    pub fn gamma0(level: u64) -> Result<Self> {
        Self::new(GroupKind::Gamma0, level)
    }

    pub fn gamma1(level: u64) -> Result<Self> {
        Self::new(GroupKind::Gamma1, level)
    }

    pub fn gamma(level: u64) -> Result<Self> {
        Self::new(GroupKind::GammaFull, level)
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// Whether -I lies in the group (forcing odd-weight forms to vanish).
    pub fn contains_minus_identity(&self) -> bool {
        match self.kind {
            GroupKind::Gamma0 => true,
            GroupKind::Gamma1 | GroupKind::GammaFull => self.level <= 2,
        }
    }

    pub fn dimension_model(&self) -> DimensionModel {
        match (self.kind, self.level) {
            (GroupKind::Gamma0, _) => DimensionModel::Gamma0,
            (GroupKind::Gamma1, 2) => DimensionModel::Weighted(2, 4),
            (GroupKind::Gamma1, 3) => DimensionModel::Weighted(1, 3),
            (GroupKind::Gamma1, 4) => DimensionModel::Weighted(1, 2),
            (GroupKind::GammaFull, 2) => DimensionModel::Weighted(2, 2),
            _ => DimensionModel::RiemannRoch,
        }
    }

    /// Γ₁(n) for n ≥ 5 and Γ(n) for n ≥ 3.
    pub fn is_representable(&self) -> bool {
        self.dimension_model() == DimensionModel::RiemannRoch
    }
}

impl fmt::Display for CongruenceGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.kind.tag(), self.level)
    }
}

impl FromStr for CongruenceGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (tag, level) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("group spec `{s}` is not of the form g0:N, g1:N or g:N")))?;
        let kind = GroupKind::from_tag(tag).ok_or_else(|| Error::Parse(format!("unknown group kind `{tag}`")))?;
        let level = level
            .parse::<u64>()
            .map_err(|_| Error::Parse(format!("bad level `{level}`")))?;
        CongruenceGroup::new(kind, level)
    }
}

impl Serialize for CongruenceGroup {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn prod_over_primes(n: u64, factor: impl Fn(u64) -> Rational) -> Rational {
    factorize(n).into_iter().fold(int(1), |acc, (p, _)| acc * factor(p))
}

fn expect_integer(r: Rational, what: &str) -> u64 {
    assert!(
        r.is_integer() && r >= Rational::zero(),
        "{what} is not a nonnegative integer: {r}"
    );
    r.to_integer().try_into().expect("fits in u64")
}

/// Index of the group in SL₂(ℤ); for Γ₁(n) this is d_n, the degree of the
/// forgetful map of moduli stacks.
pub fn index(group: &CongruenceGroup) -> u64 {
    let n = group.level;
    match group.kind {
        GroupKind::Gamma1 => {
            let sq = int(n as i64) * int(n as i64);
            expect_integer(sq * prod_over_primes(n, |p| int(1) - rat(1, (p * p) as i64)), "index")
        }
        GroupKind::GammaFull => {
            let cube = int(n as i64).pow(3);
            expect_integer(cube * prod_over_primes(n, |p| int(1) - rat(1, (p * p) as i64)), "index")
        }
        GroupKind::Gamma0 => expect_integer(
            int(n as i64) * prod_over_primes(n, |p| int(1) + rat(1, p as i64)),
            "index",
        ),
    }
}

/// d_n via the divisor sum Σ_{d|n} d φ(d) φ(n/d).
pub fn gamma1_index_divisor_sum(n: u64) -> u64 {
    divisors(n)
        .into_iter()
        .map(|d| d * euler_phi(d) * euler_phi(n / d))
        .sum()
}

pub fn cusp_count(group: &CongruenceGroup) -> u64 {
    let n = group.level;
    match (group.kind, n) {
        (GroupKind::Gamma1, 2) | (GroupKind::Gamma1, 3) => 2,
        (GroupKind::Gamma1, 4) => 3,
        (GroupKind::Gamma1, _) => {
            divisors(n)
                .into_iter()
                .map(|d| euler_phi(d) * euler_phi(n / d))
                .sum::<u64>()
                / 2
        }
        (GroupKind::GammaFull, 2) => 3,
        (GroupKind::GammaFull, _) => index(group) / (2 * n),
        (GroupKind::Gamma0, _) => divisors(n).into_iter().map(|d| euler_phi(gcd(d, n / d))).sum(),
    }
}

/// Irregular cusps only occur for Γ₁(4) among the supported groups.
pub fn irregular_cusp_count(group: &CongruenceGroup) -> u64 {
    u64::from(group.kind == GroupKind::Gamma1 && group.level == 4)
}

fn legendre_count(n: u64, residue_test: impl Fn(u64) -> u64) -> u64 {
    factorize(n).into_iter().map(|(p, _)| residue_test(p)).product()
}

/// Numbers (ε₂, ε₃) of elliptic points of order 2 and 3.
pub fn elliptic_points(group: &CongruenceGroup) -> (u64, u64) {
    let n = group.level;
    match group.kind {
        GroupKind::Gamma0 => {
            // 1 + (-1/p) and 1 + (-3/p), with the p = 2, 3 cases made explicit
            let e2 = if n.is_multiple_of(4) {
                0
            } else {
                legendre_count(n, |p| match p {
                    2 => 1,
                    _ if p % 4 == 1 => 2,
                    _ => 0,
                })
            };
            let e3 = if n.is_multiple_of(9) {
                0
            } else {
                legendre_count(n, |p| match p {
                    3 => 1,
                    _ if p % 3 == 1 => 2,
                    _ => 0,
                })
            };
            (e2, e3)
        }
        GroupKind::Gamma1 => match n {
            2 => (1, 0),
            3 => (0, 1),
            _ => (0, 0),
        },
        GroupKind::GammaFull => (0, 0),
    }
}

/// Genus of the compactified modular curve.
pub fn genus(group: &CongruenceGroup) -> u64 {
    let d = index(group) as i64;
    let c = cusp_count(group) as i64;
    match group.dimension_model() {
        DimensionModel::RiemannRoch => expect_integer(int(1) + rat(d, 24) - rat(c, 2), "genus"),
        DimensionModel::Weighted(..) => 0,
        DimensionModel::Gamma0 => {
            let (e2, e3) = elliptic_points(group);
            expect_integer(
                int(1) + rat(d, 12) - rat(e2 as i64, 4) - rat(e3 as i64, 3) - rat(c, 2),
                "genus",
            )
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelInvariants {
    pub group: CongruenceGroup,
    pub index: u64,
    #[serde(serialize_with = "serialize_rational")]
    pub omega_degree: Rational,
    pub cusps: u64,
    pub elliptic2: u64,
    pub elliptic3: u64,
    pub genus: u64,
}

pub(crate) fn serialize_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(&format_rational(r))
}

impl LevelInvariants {
    pub fn of(group: &CongruenceGroup) -> Self {
        let index = index(group);
        let (elliptic2, elliptic3) = elliptic_points(group);
        Self {
            group: *group,
            index,
            omega_degree: rat(index as i64, 24),
            cusps: cusp_count(group),
            elliptic2,
            elliptic3,
            genus: genus(group),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_examples() {
        assert_eq!(index(&CongruenceGroup::gamma1(5).unwrap()), 24);
        assert_eq!(index(&CongruenceGroup::gamma1(9).unwrap()), 72);
        assert_eq!(index(&CongruenceGroup::gamma(3).unwrap()), 24);
        assert_eq!(index(&CongruenceGroup::gamma(4).unwrap()), 48);
        assert_eq!(index(&CongruenceGroup::gamma0(11).unwrap()), 12);
    }

    // |SL₂(ℤ/n)| by enumerating all 2x2 matrices mod n with determinant 1.
    fn sl2_order_brute(n: u64) -> u64 {
        let mut count = 0;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        if (a * d + n * n - b * c) % n == 1 % n {
                            count += 1;
                        }
                    }
                }
            }
        }
        count
    }

    #[test]
    fn full_level_index_is_sl2_order() {
        for n in 2..=8 {
            assert_eq!(
                index(&CongruenceGroup::gamma(n).unwrap()),
                sl2_order_brute(n),
                "n = {n}"
            );
        }
    }

    #[test]
    fn gamma1_index_formulas_agree() {
        for n in 2..=500 {
            assert_eq!(index(&CongruenceGroup::gamma1(n).unwrap()), gamma1_index_divisor_sum(n));
        }
    }

    #[test]
    fn cusp_examples() {
        assert_eq!(cusp_count(&CongruenceGroup::gamma1(23).unwrap()), 22);
        assert_eq!(cusp_count(&CongruenceGroup::gamma(3).unwrap()), 4);
        assert_eq!(cusp_count(&CongruenceGroup::gamma1(5).unwrap()), 4);
        assert_eq!(cusp_count(&CongruenceGroup::gamma0(11).unwrap()), 2);
        assert_eq!(cusp_count(&CongruenceGroup::gamma0(4).unwrap()), 3);
    }

    #[test]
    fn genus_examples() {
        assert_eq!(genus(&CongruenceGroup::gamma1(11).unwrap()), 1);
        assert_eq!(genus(&CongruenceGroup::gamma1(23).unwrap()), 12);
        assert_eq!(genus(&CongruenceGroup::gamma1(5).unwrap()), 0);
        assert_eq!(genus(&CongruenceGroup::gamma(6).unwrap()), 1);
        assert_eq!(genus(&CongruenceGroup::gamma(7).unwrap()), 3);
    }

    // Classical values: X₀(11) and X₀(23) pin the Γ₀ convention.
    #[test]
    fn gamma0_genus_calibration() {
        assert_eq!(genus(&CongruenceGroup::gamma0(11).unwrap()), 1);
        assert_eq!(genus(&CongruenceGroup::gamma0(23).unwrap()), 2);
        assert_eq!(genus(&CongruenceGroup::gamma0(2).unwrap()), 0);
        assert_eq!(genus(&CongruenceGroup::gamma0(37).unwrap()), 2);
        assert_eq!(genus(&CongruenceGroup::gamma0(13).unwrap()), 0);
        assert_eq!(elliptic_points(&CongruenceGroup::gamma0(13).unwrap()), (2, 2));
    }

    #[test]
    fn rejects_small_levels() {
        assert!(CongruenceGroup::gamma1(1).is_err());
        assert!(CongruenceGroup::gamma0(0).is_err());
        assert!("g1:1".parse::<CongruenceGroup>().is_err());
        assert!("h:5".parse::<CongruenceGroup>().is_err());
        assert_eq!(
            "g:3".parse::<CongruenceGroup>().unwrap(),
            CongruenceGroup::gamma(3).unwrap()
        );
    }

    #[test]
    fn representable_genus_relation() {
        for n in 5..=60 {
            for g in [
                CongruenceGroup::gamma1(n).unwrap(),
                CongruenceGroup::gamma(n.min(40)).unwrap(),
            ] {
                let inv = LevelInvariants::of(&g);
                assert_eq!(
                    int(inv.genus as i64),
                    int(1) + inv.omega_degree.clone() - rat(inv.cusps as i64, 2)
                );
                assert_eq!((inv.elliptic2, inv.elliptic3), (0, 0));
            }
        }
    }
}
