use serde::Serialize;

use super::{dimension_table, DIM_THROUGH};
use crate::arith::{gcd, primes_up_to};
use crate::error::{Error, Result};
use crate::hilbert::{deconvolve, HilbertFunction, TwistMultiset};
use crate::levels::{index, CongruenceGroup, Weight1Data};

/// A divisor d of d_q together with a residue a such that d ∤ p² - 1 for
/// every prime p ≡ a (mod d).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionDivisor {
    pub d: u64,
    pub witness_residue: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionPrime {
    pub p: u64,
    pub d_p: u64,
    /// d_p mod d_q; never zero for a listed prime.
    pub residue: u64,
    /// p lies in the witness residue class of the chosen divisor.
    pub in_witness_class: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub q: u64,
    pub d_q: u64,
    pub bound: u64,
    pub divisor: Option<ObstructionDivisor>,
    pub primes: Vec<ObstructionPrime>,
}

fn choose_divisor(d_q: u64) -> Option<ObstructionDivisor> {
    if d_q.is_multiple_of(16) {
        return Some(ObstructionDivisor {
            d: 16,
            witness_residue: 3,
        });
    }
    if d_q.is_multiple_of(9) {
        return Some(ObstructionDivisor {
            d: 9,
            witness_residue: 2,
        });
    }
    crate::arith::factorize(d_q)
        .into_iter()
        .map(|(p, _)| p)
        .find(|&p| p >= 5)
        .map(|d| ObstructionDivisor { d, witness_residue: 2 })
}

/// Primes p ≤ bound, prime to q, for which d_q = [SL₂ℤ : Γ₁(q)] does not
/// divide d_p. Each one rules out a decomposition of Γ₁(p) into Γ₁(q)-blocks.
pub fn obstruction_search(q: u64, bound: u64) -> Result<ObstructionReport> {
    if q <= 6 {
        return Err(Error::InvalidGroup(format!("obstruction search needs q > 6, got {q}")));
    }
    let d_q = index(&CongruenceGroup::gamma1(q)?);
    let divisor = choose_divisor(d_q);
    let primes = primes_up_to(bound)
        .into_iter()
        .filter(|&p| gcd(p, q) == 1)
        .filter_map(|p| {
            let d_p = index(&CongruenceGroup::gamma1(p).expect("prime level"));
            (!d_p.is_multiple_of(d_q)).then(|| ObstructionPrime {
                p,
                d_p,
                residue: d_p % d_q,
                in_witness_class: divisor.is_some_and(|dv| p % dv.d == dv.witness_residue),
            })
        })
        .collect();
    Ok(ObstructionReport {
        q,
        d_q,
        bound,
        divisor,
        primes,
    })
}

/// Deconvolve the dimensions of `target` by those of `block` as if the
/// former were a sum of shifted copies of the latter.
pub fn block_deconvolution(
    target: &CongruenceGroup,
    block: &CongruenceGroup,
    max_shift: i64,
    w1: &Weight1Data,
) -> Result<TwistMultiset> {
    let t = dimension_table(target, w1)?;
    let b = dimension_table(block, w1)?;
    let target_h = HilbertFunction::from_fn(DIM_THROUGH, |k| t.m(k));
    let block_h = HilbertFunction::from_fn(DIM_THROUGH, |k| b.m(k));
    Ok(deconvolve(&target_h, &block_h, max_shift, DIM_THROUGH - max_shift)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::DeconvolveError;

    #[test]
    fn examples() {
        let r = obstruction_search(7, 100).unwrap();
        assert_eq!(r.d_q, 48);
        assert!(r.primes.iter().any(|e| e.p == 19 && e.d_p == 360));
        assert_eq!(
            r.divisor,
            Some(ObstructionDivisor {
                d: 16,
                witness_residue: 3
            })
        );
        let r = obstruction_search(9, 100).unwrap();
        assert!(r.primes.iter().any(|e| e.p == 5 && e.d_p == 24));
        assert_eq!(r.divisor.unwrap().d, 9);
        let r = obstruction_search(8, 100).unwrap();
        assert!(r.primes.iter().all(|e| e.p != 7 && e.p != 2));
        assert!(obstruction_search(6, 100).is_err());
    }

    #[test]
    fn witness_class_never_divides() {
        for q in 7..=40 {
            let r = obstruction_search(q, 2000).unwrap();
            let dv = r.divisor.unwrap();
            assert_eq!(r.d_q % dv.d, 0);
            for p in primes_up_to(2000).into_iter().filter(|&p| gcd(p, q) == 1) {
                if p % dv.d == dv.witness_residue {
                    assert!(r.primes.iter().any(|e| e.p == p && e.in_witness_class), "q={q} p={p}");
                    assert_ne!((p * p - 1) % dv.d, 0);
                }
            }
        }
    }

    #[test]
    fn gamma1_31_does_not_split_into_gamma1_7_blocks() {
        let w1 = Weight1Data::builtin();
        let g31 = CongruenceGroup::gamma1(31).unwrap();
        let g7 = CongruenceGroup::gamma1(7).unwrap();
        assert_eq!(index(&g31) % index(&g7), 0);
        let err = block_deconvolution(&g31, &g7, 11, &w1).unwrap_err();
        assert!(matches!(
            err,
            Error::Deconvolve(DeconvolveError::NegativeMultiplicity { shift: 3, .. })
        ));
        // sanity: Γ₁(5) blocks do work for Γ₁(31)
        let ok = block_deconvolution(&g31, &CongruenceGroup::gamma1(5).unwrap(), 3, &w1).unwrap();
        assert_eq!(ok.total() * 24, index(&g31));
    }
}
