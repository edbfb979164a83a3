use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::Field;
use crate::exactnum::Rational;

/// Rank of the row space. Rows over 𝔽_p must already be reduced.
pub fn rank(field: Field, rows: &[Vec<Rational>]) -> usize {
    match field {
        Field::Rational => rank_bareiss(rows.iter().map(|r| integral_row(r)).collect()),
        Field::Prime(p) => rank_mod_p(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|c| {
                            assert!(c.is_integer(), "row not reduced into F{p}");
                            c.to_integer().mod_floor(&BigInt::from(p)).to_u64().unwrap()
                        })
                        .collect()
                })
                .collect(),
            p,
        ),
    }
}

/// The row scaled by the lcm of its denominators.
fn integral_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    row.iter().map(|c| c.numer() * (&lcm / c.denom())).collect()
}

/// Fraction-free elimination; every division is exact.
fn rank_bareiss(mut m: Vec<Vec<BigInt>>) -> usize {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        let Some(pivot) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for i in rank + 1..nrows {
            for j in col + 1..ncols {
                let v = &m[rank][col] * &m[i][j] - &m[i][col] * &m[rank][j];
                m[i][j] = v / &prev;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

fn rank_mod_p(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..nrows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = crate::arith::pow_mod(m[rank][col], p - 2, p);
        let (top, below) = m.split_at_mut(rank + 1);
        let pivot = &top[rank];
        for row in below {
            let factor = row[col] * inv % p;
            if factor == 0 {
                continue;
            }
            for (x, &y) in row[col..ncols].iter_mut().zip(&pivot[col..ncols]) {
                *x = (*x + (p - factor) * y) % p;
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}
