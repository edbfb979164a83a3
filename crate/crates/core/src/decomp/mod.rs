//! Decompositions of rings of modular forms into shifted standard blocks.
//!
//! A sequence with multiplicity c_i at shift i stands for the summand
//! block ⊗ ω^{⊗ -i}, so that in every weight k
//!
//! ```text
//! m_k(Γ) = Σ_i c_i · block(k - i)
//! ```
//!
//! The closed forms below are the primary computation; [`deconvolution_oracle`]
//! recovers the same numbers from the dimension sequence alone.

mod obstruct;
mod table;
mod verify;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::{convolve, deconvolve, default_verify_through, HilbertFunction, TwistMultiset, WeightedLine};
use crate::levels::{genus, index, CongruenceGroup, DimensionTable, GroupKind, Weight1Data};

pub use obstruct::{block_deconvolution, obstruction_search, ObstructionDivisor, ObstructionPrime, ObstructionReport};
pub use table::{golden_table, table_generate, DecompositionTable, TableFlavor, TableRow};
pub use verify::verify_consistency;

/// Weights 0..=DIM_THROUGH are computed for every decomposition; enough for
/// the k ≤ 40 convolution check and the oracle's verification overshoot.
pub const DIM_THROUGH: i64 = 48;

/// Largest weight at which the convolution identity is checked.
pub const CONVOLUTION_THROUGH: i64 = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BlockKind {
    /// Powers of ω over the level-one stack; the Hilbert function of the
    /// ring ℚ[c₄, c₆].
    OmegaPowers,
    /// Modular forms for Γ₁(2), weights (2, 4).
    Level2,
    /// Modular forms for Γ₁(3), weights (1, 3).
    Level3,
    /// Modular forms for Γ₁(4), weights (1, 2).
    Level4,
    /// Modular forms for Γ₁(5), isomorphic to those for Γ₁(6); weights (1, 1).
    Level5or6,
}

impl BlockKind {
    pub const ALL: [BlockKind; 5] = [
        BlockKind::OmegaPowers,
        BlockKind::Level2,
        BlockKind::Level3,
        BlockKind::Level4,
        BlockKind::Level5or6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BlockKind::OmegaPowers => "omega",
            BlockKind::Level2 => "level2",
            BlockKind::Level3 => "level3",
            BlockKind::Level4 => "level4",
            BlockKind::Level5or6 => "level5or6",
        }
    }

    /// Rank of the block as a vector bundle on the level-one stack.
    pub fn rank(self) -> u64 {
        match self {
            BlockKind::OmegaPowers => 1,
            BlockKind::Level2 => 3,
            BlockKind::Level3 => 8,
            BlockKind::Level4 => 12,
            BlockKind::Level5or6 => 24,
        }
    }

    /// Generator weights of the block's ring of modular forms.
    pub fn weights(self) -> (u64, u64) {
        match self {
            BlockKind::OmegaPowers => (4, 6),
            BlockKind::Level2 => (2, 4),
            BlockKind::Level3 => (1, 3),
            BlockKind::Level4 => (1, 2),
            BlockKind::Level5or6 => (1, 1),
        }
    }

    /// Largest shift that can carry a nonzero multiplicity.
    pub fn max_shift(self) -> i64 {
        match self {
            BlockKind::OmegaPowers => 11,
            BlockKind::Level2 => 7,
            BlockKind::Level3 => 5,
            BlockKind::Level4 => 4,
            BlockKind::Level5or6 => 3,
        }
    }

    pub fn hilbert(self, through: i64) -> HilbertFunction {
        let (a, b) = self.weights();
        WeightedLine::new(a, b).hilbert_function(through)
    }

    /// The block itself written in ω-powers.
    pub fn omega_expansion(self) -> &'static [u64] {
        match self {
            BlockKind::OmegaPowers => &[1],
            BlockKind::Level2 => &[1, 0, 1, 0, 1],
            BlockKind::Level3 => &[1, 1, 1, 2, 1, 1, 1],
            BlockKind::Level4 => &[1, 1, 2, 2, 2, 2, 1, 1],
            BlockKind::Level5or6 => &[1, 2, 3, 4, 4, 4, 3, 2, 1],
        }
    }

    /// Whether decompositions of `group` into this block are computed.
    pub fn supports(self, group: &CongruenceGroup) -> bool {
        let n = group.level();
        match (self, group.kind()) {
            (BlockKind::OmegaPowers, _) => true,
            (_, GroupKind::GammaFull) => n >= 3,
            (BlockKind::Level2, GroupKind::Gamma1) => n >= 4,
            (_, GroupKind::Gamma1) => n >= 5,
            (_, GroupKind::Gamma0) => false,
        }
    }
}

impl fmt::Display for BlockKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BlockKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BlockKind::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown block `{s}`")))
    }
}

impl Serialize for BlockKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionSequence {
    pub group: CongruenceGroup,
    pub block: BlockKind,
    pub mult: TwistMultiset,
}

impl DecompositionSequence {
    pub fn new(group: CongruenceGroup, block: BlockKind, mult: TwistMultiset) -> Self {
        Self { group, block, mult }
    }

    /// Multiplicities for shifts 0..=block.max_shift().
    pub fn to_vec(&self) -> Vec<u64> {
        self.mult.to_vec(self.block.max_shift())
    }

    pub fn get(&self, shift: i64) -> u64 {
        self.mult.get(shift)
    }

    /// Σ_i c_i · rank(block).
    pub fn total_rank(&self) -> u64 {
        self.mult.total() * self.block.rank()
    }

    /// Graded dimensions predicted by the sequence.
    pub fn predicted_dimensions(&self, through: i64) -> HilbertFunction {
        convolve(&self.mult, &self.block.hilbert(through), through).expect("block known through range")
    }

    /// Rewrite in ω-powers by expanding each block.
    pub fn to_omega(&self) -> DecompositionSequence {
        let exp = TwistMultiset::from_slice(self.block.omega_expansion());
        let through = self.block.max_shift() + exp.max_shift().unwrap_or(0);
        let unit = HilbertFunction::from_fn(through, |k| exp.get(k));
        let values = convolve(&self.mult, &unit, through).expect("finite expansion");
        DecompositionSequence::new(
            self.group,
            BlockKind::OmegaPowers,
            TwistMultiset::from_slice(values.values()),
        )
    }
}

impl Serialize for DecompositionSequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("DecompositionSequence", 3)?;
        st.serialize_field("group", &self.group)?;
        st.serialize_field("block", &self.block)?;
        st.serialize_field("mult", &self.to_vec())?;
        st.end()
    }
}

pub(crate) fn dimension_table(group: &CongruenceGroup, w1: &Weight1Data) -> Result<DimensionTable> {
    DimensionTable::compute(group, 0..=DIM_THROUGH, w1)
}

fn invalid(group: &CongruenceGroup, block: BlockKind, detail: String) -> Error {
    Error::DecompositionInvalid {
        group: *group,
        block,
        detail,
    }
}

fn require_support(group: &CongruenceGroup, block: BlockKind) -> Result<()> {
    if block.supports(group) {
        Ok(())
    } else {
        Err(Error::UnsupportedGroup { group: *group, block })
    }
}

/// c_i = m_i - m_{i-a} - m_{i-b} + m_{i-a-b}: the inverse of the block's
/// Hilbert series denominator applied to the dimensions.
fn second_difference(t: &DimensionTable, i: i64, a: i64, b: i64) -> i64 {
    let m = |k: i64| t.m(k) as i64;
    m(i) - m(i - a) - m(i - b) + m(i - a - b)
}

fn into_sequence(group: &CongruenceGroup, block: BlockKind, values: &[i64]) -> Result<DecompositionSequence> {
    if let Some((i, v)) = values.iter().enumerate().find(|(_, &v)| v < 0) {
        return Err(invalid(group, block, format!("negative multiplicity {v} at shift {i}")));
    }
    let values: Vec<u64> = values.iter().map(|&v| v as u64).collect();
    Ok(DecompositionSequence::new(
        *group,
        block,
        TwistMultiset::from_slice(&values),
    ))
}

/// Failed block-specific identities, as (name, detail).
pub(crate) fn identity_failures(seq: &DecompositionSequence, t: &DimensionTable) -> Vec<(String, String)> {
    let c = |i: i64| seq.get(i) as i64;
    let s = |k: i64| t.s(k) as i64;
    let m = |k: i64| t.m(k) as i64;
    let g = genus(&seq.group) as i64;
    let mut out = Vec::new();
    let mut expect = |name: String, lhs: i64, rhs: i64| {
        if lhs != rhs {
            out.push((name, format!("{lhs} != {rhs}")));
        }
    };
    match seq.block {
        BlockKind::OmegaPowers => {
            for i in 0..=3 {
                expect(format!("l{i} = m{i}"), c(i), m(i));
            }
            for i in 0..=4 {
                expect(format!("l{} = s{i}", 12 - i), c(12 - i), s(i));
            }
            expect("l10 = genus".into(), c(10), g);
        }
        BlockKind::Level3 => {
            expect("k5 = s1".into(), c(5), s(1));
            expect("k4 = s2 - s1".into(), c(4), s(2) - s(1));
            expect("k0 + k3 = k1 + k4".into(), c(0) + c(3), c(1) + c(4));
            expect("k1 + k4 = k2 + k5".into(), c(1) + c(4), c(2) + c(5));
        }
        BlockKind::Level2 => {
            expect("k0 = m0".into(), c(0), m(0));
            expect("k1 = m1".into(), c(1), m(1));
            expect("k7 = s1".into(), c(7), s(1));
            expect("k6 = s2".into(), c(6), s(2));
            expect("k6 = genus".into(), c(6), g);
        }
        BlockKind::Level4 => {
            expect("kappa0 = 1".into(), c(0), 1);
        }
        BlockKind::Level5or6 => {
            expect("kappa0 = 1".into(), c(0), 1);
            expect("kappa1 = m1 - 2".into(), c(1), m(1) - 2);
            expect("kappa2 = m2 - 2m1 + 1".into(), c(2), m(2) - 2 * m(1) + 1);
            expect("kappa3 = s1".into(), c(3), s(1));
        }
    }
    out
}

fn assert_identities(seq: DecompositionSequence, t: &DimensionTable) -> Result<DecompositionSequence> {
    match identity_failures(&seq, t).into_iter().next() {
        None => Ok(seq),
        Some((name, detail)) => Err(invalid(&seq.group, seq.block, format!("{name} fails: {detail}"))),
    }
}

/// l_i = m_i - m_{i-4} - m_{i-6} + m_{i-10} for 0 ≤ i ≤ 11.
pub fn omega_decomposition(group: &CongruenceGroup, w1: &Weight1Data) -> Result<DecompositionSequence> {
    let t = dimension_table(group, w1)?;
    let block = BlockKind::OmegaPowers;
    let values: Vec<i64> = (0..=block.max_shift())
        .map(|i| second_difference(&t, i, 4, 6))
        .collect();
    assert_identities(into_sequence(group, block, &values)?, &t)
}

/// k_i = m_i - m_{i-1} - m_{i-3} + m_{i-4} for 0 ≤ i ≤ 5.
pub fn level3_decomposition(group: &CongruenceGroup, w1: &Weight1Data) -> Result<DecompositionSequence> {
    let block = BlockKind::Level3;
    require_support(group, block)?;
    let t = dimension_table(group, w1)?;
    let values: Vec<i64> = (0..=block.max_shift())
        .map(|i| second_difference(&t, i, 1, 3))
        .collect();
    assert_identities(into_sequence(group, block, &values)?, &t)
}

/// k_i = m_i - m_{i-2} - m_{i-4} + m_{i-6} for 0 ≤ i ≤ 7.
pub fn level2_decomposition(group: &CongruenceGroup, w1: &Weight1Data) -> Result<DecompositionSequence> {
    let block = BlockKind::Level2;
    require_support(group, block)?;
    let t = dimension_table(group, w1)?;
    let values: Vec<i64> = (0..=block.max_shift())
        .map(|i| second_difference(&t, i, 2, 4))
        .collect();
    assert_identities(into_sequence(group, block, &values)?, &t)
}

/// Decomposition into Γ₁(q)-blocks for q ∈ {4, 5, 6}.
///
/// For q = 5, 6 the multiplicities are (1, m₁ - 2, m₂ - 2m₁ + 1, s₁). For
/// q = 4 the Γ₁(2)-sequence is divided by 1 + t + t² + t³, the Γ₁(4)-block
/// written in Γ₁(2)-blocks.
pub fn level456_decomposition(group: &CongruenceGroup, q: u64, w1: &Weight1Data) -> Result<DecompositionSequence> {
    let block = match q {
        4 => BlockKind::Level4,
        5 | 6 => BlockKind::Level5or6,
        _ => return Err(Error::InvalidGroup(format!("block level must be 4, 5 or 6, got {q}"))),
    };
    require_support(group, block)?;
    let t = dimension_table(group, w1)?;
    let values = match block {
        BlockKind::Level5or6 => {
            let (m1, m2) = (t.m(1) as i64, t.m(2) as i64);
            vec![1, m1 - 2, m2 - 2 * m1 + 1, t.s(1) as i64]
        }
        _ => {
            let level2 = level2_decomposition(group, w1)?;
            let upper = BlockKind::Level2.max_shift();
            let target = HilbertFunction::from_fn(upper + 3, |k| level2.get(k));
            let divisor = HilbertFunction::from_fn(upper + 3, |k| u64::from((0..4).contains(&k)));
            let mult = deconvolve(&target, &divisor, block.max_shift(), upper + 3)
                .map_err(|e| invalid(group, block, format!("Γ₁(2)-sequence not divisible: {e}")))?;
            return assert_identities(DecompositionSequence::new(*group, block, mult), &t);
        }
    };
    assert_identities(into_sequence(group, block, &values)?, &t)
}

/// The closed-form decomposition of `group` into `block`.
pub fn decomposition(group: &CongruenceGroup, block: BlockKind, w1: &Weight1Data) -> Result<DecompositionSequence> {
    match block {
        BlockKind::OmegaPowers => omega_decomposition(group, w1),
        BlockKind::Level2 => level2_decomposition(group, w1),
        BlockKind::Level3 => level3_decomposition(group, w1),
        BlockKind::Level4 => level456_decomposition(group, 4, w1),
        BlockKind::Level5or6 => level456_decomposition(group, 5, w1),
    }
}

/// The same multiplicities recovered by deconvolving the dimension sequence
/// by the block's Hilbert function.
pub fn deconvolution_oracle(
    group: &CongruenceGroup,
    block: BlockKind,
    w1: &Weight1Data,
) -> Result<DecompositionSequence> {
    require_support(group, block)?;
    let t = dimension_table(group, w1)?;
    let target = HilbertFunction::from_fn(DIM_THROUGH, |k| t.m(k));
    let (a, b) = block.weights();
    let verify = default_verify_through(block.max_shift(), a, b).max(CONVOLUTION_THROUGH);
    let mult = deconvolve(&target, &block.hilbert(DIM_THROUGH), block.max_shift(), verify)?;
    Ok(DecompositionSequence::new(*group, block, mult))
}

/// Σ mult · rank = [SL₂(ℤ) : Γ].
pub fn rank_identity_holds(seq: &DecompositionSequence) -> bool {
    seq.total_rank() == index(&seq.group)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g1(n: u64) -> CongruenceGroup {
        CongruenceGroup::gamma1(n).unwrap()
    }

    fn w1() -> Weight1Data {
        Weight1Data::builtin()
    }

    #[test]
    fn omega_examples() {
        assert_eq!(
            omega_decomposition(&g1(3), &w1()).unwrap().to_vec(),
            [1, 1, 1, 2, 1, 1, 1, 0, 0, 0, 0, 0]
        );
        assert_eq!(
            omega_decomposition(&g1(2), &w1()).unwrap().to_vec(),
            [1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0]
        );
        assert_eq!(
            omega_decomposition(&g1(23), &w1()).unwrap().to_vec(),
            [1, 12, 33, 55, 76, 87, 87, 76, 55, 33, 12, 1]
        );
        assert_eq!(
            omega_decomposition(&g1(42), &w1()).unwrap().to_vec(),
            [1, 24, 72, 120, 167, 192, 191, 168, 120, 72, 25, 0]
        );
    }

    #[test]
    fn level3_examples() {
        assert_eq!(
            level3_decomposition(&g1(5), &w1()).unwrap().to_vec(),
            [1, 1, 1, 0, 0, 0]
        );
        assert_eq!(
            level3_decomposition(&g1(23), &w1()).unwrap().to_vec(),
            [1, 11, 21, 21, 11, 1]
        );
        assert_eq!(
            level3_decomposition(&g1(17), &w1()).unwrap().to_vec(),
            [1, 7, 12, 11, 5, 0]
        );
        assert!(matches!(
            level3_decomposition(&g1(4), &w1()),
            Err(Error::UnsupportedGroup { .. })
        ));
    }

    #[test]
    fn level2_examples() {
        assert_eq!(
            level2_decomposition(&g1(4), &w1()).unwrap().to_vec(),
            [1, 1, 1, 1, 0, 0, 0, 0]
        );
        assert_eq!(
            level2_decomposition(&g1(23), &w1()).unwrap().to_vec(),
            [1, 12, 32, 43, 43, 32, 12, 1]
        );
        assert_eq!(
            level2_decomposition(&g1(11), &w1()).unwrap().to_vec(),
            [1, 5, 9, 10, 9, 5, 1, 0]
        );
        assert!(level2_decomposition(&g1(3), &w1()).is_err());
    }

    #[test]
    fn level456_examples() {
        assert_eq!(level456_decomposition(&g1(5), 5, &w1()).unwrap().to_vec(), [1, 0, 0, 0]);
        assert_eq!(level456_decomposition(&g1(7), 5, &w1()).unwrap().to_vec(), [1, 1, 0, 0]);
        assert_eq!(
            level456_decomposition(&g1(23), 6, &w1()).unwrap().to_vec(),
            [1, 10, 10, 1]
        );
        assert_eq!(
            level456_decomposition(&g1(5), 4, &w1()).unwrap().to_vec(),
            [1, 1, 0, 0, 0]
        );
        assert!(level456_decomposition(&g1(5), 7, &w1()).is_err());
    }

    #[test]
    fn block_expansions_match_hilbert_functions() {
        let omega = BlockKind::OmegaPowers.hilbert(60);
        for block in BlockKind::ALL {
            let h = block.hilbert(40);
            assert_eq!(h.get(0), Some(1));
            let exp = TwistMultiset::from_slice(block.omega_expansion());
            assert_eq!(convolve(&exp, &omega, 40).unwrap(), h, "{block}");
            assert_eq!(exp.total(), block.rank(), "{block}");
        }
        // Γ₁(5) dimensions are k + 1
        let t = dimension_table(&g1(5), &w1()).unwrap();
        let h = BlockKind::Level5or6.hilbert(DIM_THROUGH);
        for k in 0..=DIM_THROUGH {
            assert_eq!(Some(t.m(k)), h.get(k));
        }
    }

    #[test]
    fn to_omega_matches_direct_computation() {
        for n in 5..=30 {
            let g = g1(n);
            let omega = omega_decomposition(&g, &w1()).unwrap();
            for block in [
                BlockKind::Level2,
                BlockKind::Level3,
                BlockKind::Level4,
                BlockKind::Level5or6,
            ] {
                let seq = decomposition(&g, block, &w1()).unwrap();
                assert_eq!(seq.to_omega().mult, omega.mult, "{g} via {block}");
            }
        }
    }

    #[test]
    fn gamma0_sequences_are_consistent() {
        for n in 2..=60 {
            let g = CongruenceGroup::gamma0(n).unwrap();
            let seq = omega_decomposition(&g, &w1()).unwrap();
            assert!(rank_identity_holds(&seq), "{g}");
            assert_eq!(
                deconvolution_oracle(&g, BlockKind::OmegaPowers, &w1()).unwrap(),
                seq,
                "{g}"
            );
        }
    }

    #[test]
    fn gamma_full_rank() {
        let g = CongruenceGroup::gamma(4).unwrap();
        let seq = omega_decomposition(&g, &w1()).unwrap();
        assert_eq!(seq.mult.total(), 48);
        for n in 3..=11 {
            let g = CongruenceGroup::gamma(n).unwrap();
            for block in BlockKind::ALL {
                let seq = decomposition(&g, block, &w1()).unwrap();
                assert!(rank_identity_holds(&seq), "{g} {block}");
                assert_eq!(deconvolution_oracle(&g, block, &w1()).unwrap(), seq, "{g} {block}");
            }
        }
    }

    #[test]
    fn block_names_round_trip() {
        for b in BlockKind::ALL {
            assert_eq!(b.name().parse::<BlockKind>().unwrap(), b);
        }
        assert!("level7".parse::<BlockKind>().is_err());
    }
}
