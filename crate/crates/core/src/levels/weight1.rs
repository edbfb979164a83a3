use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use super::{CongruenceGroup, GroupKind};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Provenance {
    /// Shipped with the library (read off the top-shift column of the
    /// tabulated Γ₁(n) decompositions).
    Builtin,
    /// Supplied through an override file.
    Override,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Weight1Entry {
    pub s1: u64,
    pub provenance: Provenance,
}

/// Known dimensions of weight-1 cusp form spaces.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Weight1Data {
    entries: BTreeMap<(GroupKind, u64), Weight1Entry>,
}

impl Weight1Data {
    pub const BUILTIN_GAMMA1_MAX_LEVEL: u64 = 42;

    pub fn empty() -> Self {
        Self::default()
    }

    /// Γ₁(n) for 2 ≤ n ≤ 42: s₁ = 1 exactly for n ∈ {23, 31, 39}.
    pub fn builtin() -> Self {
        let entries = (2..=Self::BUILTIN_GAMMA1_MAX_LEVEL)
            .map(|n| {
                let s1 = u64::from(matches!(n, 23 | 31 | 39));
                (
                    (GroupKind::Gamma1, n),
                    Weight1Entry {
                        s1,
                        provenance: Provenance::Builtin,
                    },
                )
            })
            .collect();
        Self { entries }
    }

    /// Parse the override format: one `kind level s1` record per line, kind
    /// one of `g0`, `g1`, `g`. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let bad = |why: &str| Error::Parse(format!("weight-1 data line {}: {why}: `{raw}`", lineno + 1));
            if fields.len() != 3 {
                return Err(bad("expected `kind level s1`"));
            }
            let kind = GroupKind::from_tag(fields[0]).ok_or_else(|| bad("unknown group kind"))?;
            let level: u64 = fields[1].parse().map_err(|_| bad("bad level"))?;
            let s1: u64 = fields[2].parse().map_err(|_| bad("bad s1"))?;
            let group = CongruenceGroup::new(kind, level)?;
            entries.insert(
                (group.kind(), group.level()),
                Weight1Entry {
                    s1,
                    provenance: Provenance::Override,
                },
            );
        }
        Ok(Self { entries })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Builtin data with the override's entries taking precedence.
    pub fn with_overrides(mut self, overrides: &Weight1Data) -> Self {
        self.entries.extend(overrides.entries.iter().map(|(k, v)| (*k, *v)));
        self
    }

    pub fn get(&self, group: &CongruenceGroup) -> Option<Weight1Entry> {
        self.entries.get(&(group.kind(), group.level())).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (CongruenceGroup, Weight1Entry)> + '_ {
        self.entries
            .iter()
            .map(|(&(kind, level), &e)| (CongruenceGroup::new(kind, level).expect("validated on insert"), e))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for ((kind, level), e) in &self.entries {
            writeln!(out, "{} {} {}", kind.tag(), level, e.s1).unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_table() {
        let w = Weight1Data::builtin();
        let nonzero: Vec<u64> = w.iter().filter(|(_, e)| e.s1 > 0).map(|(g, _)| g.level()).collect();
        assert_eq!(nonzero, vec![23, 31, 39]);
        assert!(w.get(&CongruenceGroup::gamma1(43).unwrap()).is_none());
    }

    #[test]
    fn parse_and_override() {
        let o = Weight1Data::parse("# extra data\ng1 43 0\n\ng1 23 2  # wrong on purpose\n").unwrap();
        let w = Weight1Data::builtin().with_overrides(&o);
        let e = w.get(&CongruenceGroup::gamma1(23).unwrap()).unwrap();
        assert_eq!((e.s1, e.provenance), (2, Provenance::Override));
        assert_eq!(w.get(&CongruenceGroup::gamma1(43).unwrap()).unwrap().s1, 0);
        assert_eq!(Weight1Data::parse(&o.to_text()).unwrap(), o);
    }

    #[test]
    fn parse_errors() {
        assert!(Weight1Data::parse("g1 23").is_err());
        assert!(Weight1Data::parse("g7 23 1").is_err());
        assert!(Weight1Data::parse("g1 1 0").is_err());
        assert!(Weight1Data::parse("g1 23 -1").is_err());
    }
}
