use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use super::{decomposition, BlockKind};
use crate::error::{Error, Result};
use crate::levels::{genus, CongruenceGroup, Weight1Data};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableFlavor {
    Omega,
    Level2,
    Level3,
}

impl TableFlavor {
    pub const ALL: [TableFlavor; 3] = [TableFlavor::Omega, TableFlavor::Level2, TableFlavor::Level3];

    pub fn block(self) -> BlockKind {
        match self {
            TableFlavor::Omega => BlockKind::OmegaPowers,
            TableFlavor::Level2 => BlockKind::Level2,
            TableFlavor::Level3 => BlockKind::Level3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TableFlavor::Omega => "omega",
            TableFlavor::Level2 => "level2",
            TableFlavor::Level3 => "level3",
        }
    }

    /// Levels covered by the reference tables.
    pub fn golden_range(self) -> (u64, u64) {
        match self {
            TableFlavor::Omega => (2, 42),
            TableFlavor::Level2 => (4, 23),
            TableFlavor::Level3 => (5, 23),
        }
    }

    pub fn columns(self) -> Vec<String> {
        let (prefix, with_genus) = match self {
            TableFlavor::Omega => ("l", true),
            _ => ("k", false),
        };
        let mut cols = vec!["n".to_string()];
        if with_genus {
            cols.push("genus".into());
        }
        cols.extend((0..=self.block().max_shift()).map(|i| format!("{prefix}{i}")));
        cols
    }
}

impl FromStr for TableFlavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TableFlavor::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown table flavor `{s}`")))
    }
}

impl Serialize for TableFlavor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub n: u64,
    pub genus: u64,
    pub mult: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionTable {
    pub flavor: TableFlavor,
    pub rows: Vec<TableRow>,
}

impl DecompositionTable {
    fn cells(&self, row: &TableRow) -> Vec<u64> {
        let mut cells = vec![row.n];
        if self.flavor == TableFlavor::Omega {
            cells.push(row.genus);
        }
        cells.extend(&row.mult);
        cells
    }

    fn join(cells: impl IntoIterator<Item = String>, sep: &str) -> String {
        cells.into_iter().collect::<Vec<_>>().join(sep)
    }

    pub fn to_tsv(&self) -> String {
        let mut out = Self::join(self.flavor.columns(), "\t");
        out.push('\n');
        for row in &self.rows {
            out += &Self::join(self.cells(row).iter().map(u64::to_string), "\t");
            out.push('\n');
        }
        out
    }

    pub fn to_markdown(&self) -> String {
        let cols = self.flavor.columns();
        let mut out = String::new();
        writeln!(out, "| {} |", Self::join(cols.iter().cloned(), " | ")).unwrap();
        writeln!(out, "|{}", "---:|".repeat(cols.len())).unwrap();
        for row in &self.rows {
            writeln!(
                out,
                "| {} |",
                Self::join(self.cells(row).iter().map(u64::to_string), " | ")
            )
            .unwrap();
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "flavor": self.flavor,
            "columns": self.flavor.columns(),
            "rows": self.rows.iter().map(|r| self.cells(r)).collect::<Vec<_>>(),
        })
    }
}

/// Γ₁(n) decomposition numbers for from ≤ n ≤ to.
pub fn table_generate(from: u64, to: u64, flavor: TableFlavor, w1: &Weight1Data) -> Result<DecompositionTable> {
    let rows = (from..=to)
        .map(|n| {
            let group = CongruenceGroup::gamma1(n)?;
            let seq = decomposition(&group, flavor.block(), w1)?;
            Ok(TableRow {
                n,
                genus: genus(&group),
                mult: seq.to_vec(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DecompositionTable { flavor, rows })
}

/// Reference tables, as TSV.
pub fn golden_table(flavor: TableFlavor) -> &'static str {
    match flavor {
        TableFlavor::Omega => include_str!("../../golden/omega.tsv"),
        TableFlavor::Level2 => include_str!("../../golden/level2.tsv"),
        TableFlavor::Level3 => include_str!("../../golden/level3.tsv"),
    }
}
