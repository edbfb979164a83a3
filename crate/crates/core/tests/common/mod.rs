#![allow(dead_code)]

//! Independent reference computations shared by the integration tests.

use std::path::PathBuf;

pub fn source_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../paper.md")
}

/// The three decomposition tables typeset at the end of paper.md, as rows of
/// integers: (n, genus, l0..l11), (n, k0..k7) for Γ₁(2) blocks, (n, k0..k5)
/// for Γ₁(3) blocks.
pub fn reference_tables() -> Vec<Vec<Vec<u64>>> {
    let text = std::fs::read_to_string(source_path()).expect("paper.md is readable");
    let start = text.find("Tables of decomposition numbers").expect("table section");
    let mut tables: Vec<Vec<Vec<u64>>> = Vec::new();
    for chunk in text[start..].split("\\begin{tabular}").skip(1) {
        let rows: Vec<Vec<u64>> = chunk
            .split("\\end{tabular}")
            .next()
            .unwrap()
            .lines()
            .filter_map(|line| {
                let line = line.trim().trim_end_matches("\\\\").trim();
                let cells: Option<Vec<u64>> = line.split('&').map(|c| c.trim().parse().ok()).collect();
                cells.filter(|c| c.len() > 2)
            })
            .collect();
        if !rows.is_empty() {
            tables.push(rows);
        }
    }
    tables
}

pub fn table_as_tsv(header: &[&str], rows: &[Vec<u64>]) -> String {
    let mut out = header.join("\t");
    out.push('\n');
    for r in rows {
        out += &r.iter().map(u64::to_string).collect::<Vec<_>>().join("\t");
        out.push('\n');
    }
    out
}

/// #{(i, j) ∈ ℕ² : a·i + b·j = k}.
pub fn lattice_count(a: i64, b: i64, k: i64) -> u64 {
    if k < 0 {
        return 0;
    }
    (0..=k / a).filter(|i| (k - a * i) % b == 0).count() as u64
}

/// #{(i, j), i, j ≥ 1 : a·i + b·j = -m}: Čech H¹ of O(m) on P(a, b).
pub fn h1_count(a: i64, b: i64, m: i64) -> u64 {
    let k = -m;
    (1..=k.max(0) / a)
        .filter(|i| {
            let r = k - a * i;
            r >= b && r % b == 0
        })
        .count() as u64
}

fn phi(n: u64) -> u64 {
    (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// d_n = #{points of exact order n in (ℤ/n)²}, counted directly for small
/// n and via n²∏(1 - 1/p²) otherwise.
pub fn gamma1_index(n: u64) -> u64 {
    if n <= 60 {
        return (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| gcd(gcd(x, y), n) == 1)
            .count() as u64;
    }
    let primes = (2..=n).filter(|&p| n.is_multiple_of(p) && (2..p).all(|q| p % q != 0));
    primes.fold(n * n, |acc, p| acc / (p * p) * (p * p - 1))
}

/// Cusps of X₁(n), n ≥ 5.
pub fn gamma1_cusps(n: u64) -> u64 {
    (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| phi(d) * phi(n / d))
        .sum::<u64>()
        / 2
}

/// dim M_k(Γ₁(n)) for n ≥ 5 by Riemann–Roch on X₁(n), given genus and s₁.
pub fn gamma1_dim(n: u64, genus: u64, s1: u64, k: i64) -> u64 {
    let (g, c) = (genus as i64, gamma1_cusps(n) as i64);
    let v = match k {
        _ if k < 0 => 0,
        0 => 1,
        1 => c / 2 + s1 as i64,
        2 => g + c - 1,
        _ => (k - 1) * (g - 1) + k * c / 2,
    };
    v as u64
}

/// Greedy peel-off: the c with m = Σ c_i · block(· - i), checked through `through`.
pub fn deconvolve(m: &[u64], block: &[u64], max_shift: usize) -> Option<Vec<u64>> {
    let mut c = vec![0i64; max_shift + 1];
    for i in 0..=max_shift {
        let acc: i64 = (0..i).map(|j| c[j] * block[i - j] as i64).sum();
        c[i] = m[i] as i64 - acc;
        if c[i] < 0 {
            return None;
        }
    }
    for k in 0..m.len() {
        let v: i64 = (0..=max_shift.min(k)).map(|i| c[i] * block[k - i] as i64).sum();
        if v != m[k] as i64 {
            return None;
        }
    }
    Some(c.into_iter().map(|x| x as u64).collect())
}
