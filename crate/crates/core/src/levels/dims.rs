use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use super::{
    cusp_count, elliptic_points, genus, index, irregular_cusp_count, CongruenceGroup, DimensionModel, Weight1Data,
};
use crate::error::{Error, Result};
use crate::exactnum::{int, rat, Rational};
use crate::hilbert::WeightedLine;

fn to_u64(r: Rational) -> u64 {
    assert!(
        r.is_integer() && r >= int(0),
        "dimension {r} is not a nonnegative integer"
    );
    r.to_integer().try_into().expect("dimension fits in u64")
}

/// dim S₁ for representable groups. Vanishes when the dual bundle
/// Ω ⊗ ω⁻¹ has negative degree 2g - 2 - d/24; otherwise looked up.
pub fn weight1_cusp_dim(group: &CongruenceGroup, w1: &Weight1Data) -> Result<u64> {
    match group.dimension_model() {
        DimensionModel::RiemannRoch => {
            if weight1_vanishes_by_degree(group) {
                Ok(0)
            } else {
                w1.get(group).map(|e| e.s1).ok_or(Error::Weight1Unavailable(*group))
            }
        }
        _ => dim_cusp_forms(group, 1, w1),
    }
}

/// 2g - 2 - deg(ω) < 0.
pub(crate) fn weight1_vanishes_by_degree(group: &CongruenceGroup) -> bool {
    let g = genus(group) as i64;
    int(2 * g - 2) - rat(index(group) as i64, 24) < int(0)
}

/// Number of independent Eisenstein series of weight k ≥ 1.
fn eisenstein_count(group: &CongruenceGroup, k: i64) -> u64 {
    let cusps = cusp_count(group);
    let regular = cusps - irregular_cusp_count(group);
    if k % 2 != 0 && group.contains_minus_identity() {
        return 0;
    }
    match k {
        1 => regular / 2,
        2 => cusps - 1,
        _ if k % 2 == 0 => cusps,
        _ => regular,
    }
}

pub fn dim_modular_forms(group: &CongruenceGroup, k: i64, w1: &Weight1Data) -> Result<u64> {
    if k < 0 {
        return Ok(0);
    }
    if k == 0 {
        return Ok(1);
    }
    let d = index(group) as i64;
    let g = genus(group) as i64;
    match group.dimension_model() {
        DimensionModel::RiemannRoch => {
            if k == 1 {
                Ok(cusp_count(group) / 2 + weight1_cusp_dim(group, w1)?)
            } else {
                Ok(to_u64(rat(d * k, 24) + int(1 - g)))
            }
        }
        DimensionModel::Weighted(a, b) => Ok(WeightedLine::new(a, b).h0_dim(k)),
        DimensionModel::Gamma0 => {
            if k % 2 != 0 {
                return Ok(0);
            }
            let (e2, e3) = elliptic_points(group);
            let c = cusp_count(group) as i64;
            Ok(to_u64(int((k - 1) * (g - 1)
                + (k / 4) * e2 as i64
                + (k / 3) * e3 as i64
                + (k / 2) * c)))
        }
    }
}

pub fn dim_cusp_forms(group: &CongruenceGroup, k: i64, w1: &Weight1Data) -> Result<u64> {
    if k <= 0 {
        return Ok(0);
    }
    if k == 1 && group.is_representable() {
        return weight1_cusp_dim(group, w1);
    }
    let m = dim_modular_forms(group, k, w1)?;
    let e = eisenstein_count(group, k);
    Ok(m.checked_sub(e)
        .unwrap_or_else(|| panic!("more Eisenstein series than forms for {group} in weight {k}")))
}

/// m_k and s_k over a range of weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionTable {
    pub group: CongruenceGroup,
    m: BTreeMap<i64, u64>,
    s: BTreeMap<i64, u64>,
}

impl DimensionTable {
    pub fn compute(group: &CongruenceGroup, weights: RangeInclusive<i64>, w1: &Weight1Data) -> Result<Self> {
        let mut m = BTreeMap::new();
        let mut s = BTreeMap::new();
        for k in weights {
            m.insert(k, dim_modular_forms(group, k, w1)?);
            s.insert(k, dim_cusp_forms(group, k, w1)?);
        }
        Ok(Self { group: *group, m, s })
    }

    /// m_k; zero for negative weights. Panics outside the computed range.
    pub fn m(&self, k: i64) -> u64 {
        if k < 0 {
            return 0;
        }
        *self.m.get(&k).unwrap_or_else(|| panic!("weight {k} not computed"))
    }

    pub fn s(&self, k: i64) -> u64 {
        if k < 0 {
            return 0;
        }
        *self.s.get(&k).unwrap_or_else(|| panic!("weight {k} not computed"))
    }

    pub fn max_weight(&self) -> i64 {
        self.m.keys().next_back().copied().unwrap_or(-1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::levels::GroupKind;

    fn w1() -> Weight1Data {
        Weight1Data::builtin()
    }

    fn g1(n: u64) -> CongruenceGroup {
        CongruenceGroup::gamma1(n).unwrap()
    }

    /// Classical dimension formula for k ≥ 2 in terms of genus, elliptic
    /// points and regular/irregular cusps, written independently of the
    /// Riemann–Roch and monomial-count paths above.
    fn classical_dim(group: &CongruenceGroup, k: i64) -> (i64, i64) {
        let g = genus(group) as i64;
        let (e2, e3) = elliptic_points(group);
        let (e2, e3) = (e2 as i64, e3 as i64);
        let c = cusp_count(group) as i64;
        let irr = irregular_cusp_count(group) as i64;
        let reg = c - irr;
        if k % 2 == 0 {
            let m = (k - 1) * (g - 1) + (k / 4) * e2 + (k / 3) * e3 + (k / 2) * c;
            let s = if k == 2 { g } else { m - c };
            (m, s)
        } else if group.contains_minus_identity() {
            (0, 0)
        } else {
            // reg is even whenever odd weights exist
            let m = (k - 1) * (g - 1) + (k / 3) * e3 + k * reg / 2 + (k - 1) / 2 * irr;
            (m, m - reg)
        }
    }

    fn all_groups() -> Vec<CongruenceGroup> {
        let mut out = Vec::new();
        for n in 2..=42 {
            out.push(g1(n));
            out.push(CongruenceGroup::gamma0(n).unwrap());
            out.push(CongruenceGroup::gamma(n.min(11)).unwrap());
        }
        out
    }

    #[test]
    fn matches_classical_formula_in_weight_two_and_up() {
        for g in all_groups() {
            for k in 2..=40 {
                let (m, s) = classical_dim(&g, k);
                assert_eq!(dim_modular_forms(&g, k, &w1()).unwrap() as i64, m, "m_{k} for {g}");
                assert_eq!(dim_cusp_forms(&g, k, &w1()).unwrap() as i64, s, "s_{k} for {g}");
            }
        }
    }

    #[test]
    fn examples() {
        assert_eq!(dim_modular_forms(&g1(23), 3, &w1()).unwrap(), 55);
        assert_eq!(dim_modular_forms(&g1(5), 1, &w1()).unwrap(), 2);
        assert_eq!(dim_modular_forms(&g1(7), -3, &w1()).unwrap(), 0);
        assert_eq!(dim_cusp_forms(&g1(23), 2, &w1()).unwrap(), 12);
        assert_eq!(dim_cusp_forms(&g1(23), 3, &w1()).unwrap(), 33);
        assert_eq!(dim_cusp_forms(&g1(23), 1, &w1()).unwrap(), 1);
    }

    #[test]
    fn weight_zero_and_negative() {
        for g in all_groups() {
            assert_eq!(dim_modular_forms(&g, 0, &w1()).unwrap(), 1);
            assert_eq!(dim_cusp_forms(&g, 0, &w1()).unwrap(), 0);
            assert_eq!(dim_modular_forms(&g, -1, &w1()).unwrap(), 0);
        }
    }

    #[test]
    fn weight1_unavailable_beyond_table() {
        // Γ₁(43): g = 57, 2g - 2 - d/24 = 35 >= 0, no table entry
        let err = dim_modular_forms(&g1(43), 1, &w1()).unwrap_err();
        assert!(matches!(err, Error::Weight1Unavailable(_)));
        assert_eq!(dim_modular_forms(&g1(43), 2, &w1()).unwrap(), 2 * 77 + 1 - 57);
        // empty data still works where the degree argument applies
        assert_eq!(dim_modular_forms(&g1(13), 1, &Weight1Data::empty()).unwrap(), 6);
    }

    #[test]
    fn weight1_criterion_consistent_with_builtin_table() {
        for (g, e) in w1().iter() {
            if g.is_representable() && weight1_vanishes_by_degree(&g) {
                assert_eq!(e.s1, 0, "{g}");
            }
        }
    }

    #[test]
    fn gamma_full_weight1_vanishes_below_twelve() {
        for n in 3..=11 {
            assert!(weight1_vanishes_by_degree(&CongruenceGroup::gamma(n).unwrap()));
        }
        assert!(!weight1_vanishes_by_degree(&CongruenceGroup::gamma(12).unwrap()));
    }

    #[test]
    fn m1_at_least_two_and_m2_bound() {
        for g in all_groups() {
            let m1 = dim_modular_forms(&g, 1, &w1()).unwrap() as i64;
            let m2 = dim_modular_forms(&g, 2, &w1()).unwrap() as i64;
            if g.is_representable() {
                assert!(m1 >= 2, "{g}");
            }
            assert!(m2 >= 2 * m1 - 1, "{g}");
        }
    }

    #[test]
    fn affine_linear_from_weight_two() {
        for g in all_groups().into_iter().filter(|g| g.is_representable()) {
            let t = DimensionTable::compute(&g, 0..=40, &w1()).unwrap();
            let slope = t.m(3) as i64 - t.m(2) as i64;
            for k in 3..=40 {
                assert_eq!(t.m(k) as i64 - t.m(k - 1) as i64, slope, "{g}");
            }
            // monotone under multiplication by a weight-1 form
            for k in 1..=40 {
                assert!(t.m(k) >= t.m(k - 1) && t.s(k) >= t.s(k - 1), "{g} at {k}");
            }
        }
    }

    #[test]
    fn small_levels_use_weighted_rings() {
        let g12 = g1(2);
        let seq: Vec<u64> = (0..8).map(|k| dim_modular_forms(&g12, k, &w1()).unwrap()).collect();
        assert_eq!(seq, vec![1, 0, 1, 0, 2, 0, 2, 0]);
        let g13 = g1(3);
        let seq: Vec<u64> = (0..6).map(|k| dim_modular_forms(&g13, k, &w1()).unwrap()).collect();
        assert_eq!(seq, vec![1, 1, 1, 2, 2, 2]);
        assert_eq!(dim_cusp_forms(&g13, 1, &w1()).unwrap(), 0);
        assert_eq!(dim_cusp_forms(&g1(4), 1, &w1()).unwrap(), 0);
        // Γ₁(2) and Γ₀(2) coincide
        let g02 = CongruenceGroup::gamma0(2).unwrap();
        for k in 0..30 {
            assert_eq!(
                dim_modular_forms(&g12, k, &w1()).unwrap(),
                dim_modular_forms(&g02, k, &w1()).unwrap()
            );
        }
        assert_eq!(CongruenceGroup::gamma(2).unwrap().kind(), GroupKind::GammaFull);
    }
}
