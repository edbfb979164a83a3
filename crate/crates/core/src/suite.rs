//! Whole-system verification runs, grouped the way the `verify` command
//! exposes them.

use std::fmt;
use std::str::FromStr;

use crate::decomp::{
    block_deconvolution, decomposition, deconvolution_oracle, golden_table, obstruction_search, table_generate,
    verify_consistency, BlockKind, TableFlavor,
};
use crate::eisenstein::{hasse_lift, valuation_claim_check, HASSE_PRIMES};
use crate::error::{Error, Result};
use crate::hilbert::{serre_duality_check, DeconvolveError, WeightedLine};
use crate::levels::{index, CongruenceGroup, Weight1Data};
use crate::report::Report;
use crate::ringalg::presets::{self, PresetKind};
use crate::ringalg::Presentation;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Decomp,
    Wproj,
    Ringalg,
    Hasse,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::All, Suite::Decomp, Suite::Wproj, Suite::Ringalg, Suite::Hasse];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Decomp => "decomp",
            Suite::Wproj => "wproj",
            Suite::Ringalg => "ringalg",
            Suite::Hasse => "hasse",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown suite `{s}`")))
    }
}

/// Levels covered by the decomposition checks.
pub const DECOMP_LEVELS: std::ops::RangeInclusive<u64> = 2..=42;

/// Obstruction search parameters: each q needs this many witnesses below the bound.
pub const OBSTRUCTION_QS: [u64; 5] = [7, 8, 9, 11, 13];
pub const OBSTRUCTION_BOUND: u64 = 1000;
pub const OBSTRUCTION_MIN_WITNESSES: usize = 5;

pub const HASSE_PRECISION: usize = 60;

pub fn run(suite: Suite, w1_override: Option<&Weight1Data>) -> Report {
    match suite {
        Suite::All => {
            let mut r = decomp_suite(w1_override);
            r.extend(wproj_suite());
            r.extend(ringalg_suite());
            r.extend(hasse_suite());
            r
        }
        Suite::Decomp => decomp_suite(w1_override),
        Suite::Wproj => wproj_suite(),
        Suite::Ringalg => ringalg_suite(),
        Suite::Hasse => hasse_suite(),
    }
}

fn first_line_difference(actual: &str, expected: &str) -> Option<String> {
    let mut a = actual.lines();
    let mut e = expected.lines();
    for line in 1.. {
        match (a.next(), e.next()) {
            (None, None) => return None,
            (x, y) if x == y => continue,
            (x, y) => {
                return Some(format!(
                    "line {line}: got `{}`, expected `{}`",
                    x.unwrap_or("<eof>"),
                    y.unwrap_or("<eof>")
                ))
            }
        }
    }
    unreachable!()
}

/// Closed forms against the deconvolution oracle, convolution, rank and
/// block identities for every Γ₁(n) and supported block; byte-for-byte
/// comparison with the reference tables; the obstruction searches.
pub fn decomp_suite(w1_override: Option<&Weight1Data>) -> Report {
    let w1 = match w1_override {
        Some(o) => Weight1Data::builtin().with_overrides(o),
        None => Weight1Data::builtin(),
    };
    let mut report = Report::new();
    for n in DECOMP_LEVELS {
        let group = CongruenceGroup::gamma1(n).expect("level >= 2");
        for block in BlockKind::ALL.into_iter().filter(|b| b.supports(&group)) {
            let label = format!("{group} {block}");
            let seq = match decomposition(&group, block, &w1) {
                Ok(seq) => seq,
                Err(e) => {
                    report.push(format!("{label} closed form"), false, e.to_string());
                    continue;
                }
            };
            match deconvolution_oracle(&group, block, &w1) {
                Ok(oracle) => report.push(
                    format!("{label} oracle"),
                    oracle.mult == seq.mult,
                    format!("{:?}", seq.to_vec()),
                ),
                Err(e) => report.push(format!("{label} oracle"), false, e.to_string()),
            }
            report.extend(verify_consistency(&seq, &w1));
        }
    }

    for flavor in [TableFlavor::Omega, TableFlavor::Level2, TableFlavor::Level3] {
        let (from, to) = flavor.golden_range();
        let name = format!("{} table n = {from}..{to} matches reference", flavor.name());
        match table_generate(from, to, flavor, &w1) {
            Ok(t) => match first_line_difference(&t.to_tsv(), golden_table(flavor)) {
                None => report.push(name, true, format!("{} rows", t.rows.len())),
                Some(diff) => report.push(name, false, diff),
            },
            Err(e) => report.push(name, false, e.to_string()),
        }
    }

    for q in OBSTRUCTION_QS {
        let name = format!("obstruction q = {q}");
        match obstruction_search(q, OBSTRUCTION_BOUND) {
            Ok(r) => {
                let found: Vec<u64> = r.primes.iter().map(|e| e.p).collect();
                report.push(
                    name,
                    found.len() >= OBSTRUCTION_MIN_WITNESSES,
                    format!(
                        "{} primes below {OBSTRUCTION_BOUND}, first {:?}",
                        found.len(),
                        &found[..found.len().min(5)]
                    ),
                );
            }
            Err(e) => report.push(name, false, e.to_string()),
        }
    }

    let g31 = CongruenceGroup::gamma1(31).expect("valid");
    let g7 = CongruenceGroup::gamma1(7).expect("valid");
    let name = "g1:31 by g1:7 blocks is obstructed";
    match block_deconvolution(&g31, &g7, BlockKind::OmegaPowers.max_shift(), &w1) {
        Err(Error::Deconvolve(e @ DeconvolveError::NegativeMultiplicity { .. })) => {
            report.push(name, true, e.to_string())
        }
        Err(e) => report.push(name, false, format!("unexpected error: {e}")),
        Ok(m) => report.push(
            name,
            false,
            format!("deconvolution succeeded: {:?}", m.to_vec(m.max_shift().unwrap_or(0))),
        ),
    }
    let name = "g1:31 by g1:5 blocks succeeds";
    match block_deconvolution(&g31, &CongruenceGroup::gamma1(5).expect("valid"), 3, &w1) {
        Ok(m) => report.push(name, m.total() * 24 == index(&g31), format!("{:?}", m.to_vec(3))),
        Err(e) => report.push(name, false, e.to_string()),
    }
    report
}

/// dim M_k(SL₂ℤ) by counting solutions of 4a + 6b = k.
pub fn level_one_dim_brute(k: i64) -> u64 {
    if k < 0 {
        return 0;
    }
    let mut count = 0;
    for a in 0..=k / 4 {
        for b in 0..=k / 6 {
            if 4 * a + 6 * b == k {
                count += 1;
            }
        }
    }
    count
}

pub const DUALITY_MAX_WEIGHT: u64 = 12;
pub const DUALITY_MAX_TWIST: i64 = 60;

pub fn wproj_suite() -> Report {
    let mut report = Report::new();
    let mut cases = 0;
    let mut violation = None;
    for a in 1..=DUALITY_MAX_WEIGHT {
        for b in 1..=DUALITY_MAX_WEIGHT {
            let r = serre_duality_check(WeightedLine::new(a, b), -DUALITY_MAX_TWIST..=DUALITY_MAX_TWIST);
            cases += r.checked;
            if violation.is_none() {
                violation = r.first_violation.map(|(m, h0, h1)| (a, b, m, h0, h1));
            }
        }
    }
    report.push(
        format!("duality h0(m) = h1(-m-a-b), 1 <= a,b <= {DUALITY_MAX_WEIGHT}, |m| <= {DUALITY_MAX_TWIST}"),
        violation.is_none(),
        match violation {
            None => format!("{cases} cases"),
            Some((a, b, m, h0, h1)) => format!("a = {a}, b = {b}, m = {m}: h0 = {h0}, h1 = {h1}"),
        },
    );

    let line = WeightedLine::new(4, 6);
    let bad = (0..=60).find(|&k| line.h0_dim(k) != level_one_dim_brute(k));
    report.push(
        "h0 on P(4,6) equals dim M_k(SL2(Z)) for k <= 60",
        bad.is_none(),
        match bad {
            None => "lattice count agrees".to_string(),
            Some(k) => format!("k = {k}: h0 = {}, count = {}", line.h0_dim(k), level_one_dim_brute(k)),
        },
    );
    let h1 = line.h1_dim(-10);
    report.push("h1 on P(4,6) at -10", h1 == 1, format!("{h1}"));
    report
}

fn parse_preset(kind: PresetKind, name: &str) -> Result<Presentation> {
    let p = presets::find(kind, name).ok_or_else(|| Error::InvalidInput(format!("no preset `{name}`")))?;
    Presentation::parse(p.text)
}

/// Bundled free-basis presets and the number of basis elements each should certify.
pub const FREE_BASIS_EXPECTED: [(&str, usize); 4] = [
    ("f2-gamma1-3", 4),
    ("f3-gamma1-2", 3),
    ("q-gamma1-2", 6),
    ("q-gamma1-3", 16),
];
pub const FREE_BASIS_BOUND: u64 = 48;

pub fn ringalg_suite() -> Report {
    let mut report = Report::new();
    for (name, rank) in FREE_BASIS_EXPECTED {
        let label = format!("free basis {name}");
        match parse_preset(PresetKind::FreeBasis, name).and_then(|p| p.free_basis_certificate(Some(FREE_BASIS_BOUND))) {
            Ok(c) => report.push(
                label,
                c.is_free() && c.hilbert_identity && c.basis_degrees.len() == rank,
                format!(
                    "rank {} through degree {}: {:?}",
                    c.basis_degrees.len(),
                    c.bound,
                    c.verdict
                ),
            ),
            Err(e) => report.push(label, false, e.to_string()),
        }
    }
    for (name, expect_regular) in [("f2-gamma1-3", true), ("f3-gamma1-2", true), ("f3-not-regular", false)] {
        let label = format!("regular sequence {name}");
        match parse_preset(PresetKind::RegularSequence, name).and_then(|p| p.regular_sequence_report()) {
            Ok(r) => report.push(
                label,
                r.regular == expect_regular && r.hilbert_criterion == expect_regular,
                format!(
                    "regular = {}, expected {expect_regular}{}",
                    r.regular,
                    r.first_failure
                        .map(|f| format!(", element {} fails in degree {}", f.position, f.degree))
                        .unwrap_or_default()
                ),
            ),
            Err(e) => report.push(label, false, e.to_string()),
        }
    }
    for (name, expect_holds) in [("gamma1-2", true), ("gamma1-3", true), ("gamma1-3-perturbed", false)] {
        let label = format!("weierstrass {name}");
        match parse_preset(PresetKind::Weierstrass, name).and_then(|p| p.weierstrass_report()) {
            Ok(r) => report.push(
                label,
                r.holds == expect_holds,
                format!("holds = {}, expected {expect_holds}, residual {}", r.holds, r.residual),
            ),
            Err(e) => report.push(label, false, e.to_string()),
        }
    }
    report
}

pub fn hasse_suite() -> Report {
    let mut report = Report::new();
    for p in HASSE_PRIMES {
        match valuation_claim_check(p) {
            Ok(v) => report.push(
                format!("p = {p} valuation"),
                v.holds(),
                format!(
                    "v2(L) = {}, v2(1 - zeta) = {}, stated exponent {}, computed {}",
                    v.v2_l,
                    v.v2_one_minus_zeta,
                    crate::exactnum::format_rational(&v.stated_exponent),
                    crate::exactnum::format_rational(&v.computed_exponent)
                ),
            ),
            Err(e) => report.push(format!("p = {p} valuation"), false, e.to_string()),
        }
        match hasse_lift(p, HASSE_PRECISION) {
            Ok(r) => {
                report.push(
                    format!("p = {p} lift F = 1 mod 2"),
                    r.passed(),
                    format!("m = {}, precision {}", r.m, r.precision),
                );
                report.push(format!("p = {p} Galois averaging"), r.galois_average, "");
            }
            Err(e) => report.push(format!("p = {p} lift"), false, e.to_string()),
        }
    }
    report
}
