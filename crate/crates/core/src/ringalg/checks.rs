use std::collections::BTreeMap;

use num_traits::One;
use serde::Serialize;

use super::{component_index, hilbert_series_free, rank, Exponents, Field, GradedAlgebra, Poly, Presentation};
use crate::error::{Error, Result};
use crate::exactnum::{rat, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FreeFailure {
    Spanning,
    Independence,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum BasisVerdict {
    Free,
    NotFree { degree: u64, failure: FreeFailure },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeCheck {
    pub degree: u64,
    pub ambient_dim: usize,
    pub products: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisCertificate {
    pub ambient: GradedAlgebra,
    pub subring: Vec<(String, u64)>,
    pub basis_degrees: Vec<u64>,
    pub bound: u64,
    pub degrees: Vec<DegreeCheck>,
    /// H_ambient = H_subring · Σ t^{deg bᵢ} through the bound.
    pub hilbert_identity: bool,
    pub verdict: BasisVerdict,
}

impl BasisCertificate {
    pub fn is_free(&self) -> bool {
        self.verdict == BasisVerdict::Free
    }
}

fn positive_degree(alg: &GradedAlgebra, p: &Poly, what: &str) -> Result<u64> {
    match alg.homogeneous_degree(p)? {
        Some(d) if d > 0 => Ok(d),
        _ => Err(Error::InvalidInput(format!(
            "{what} {} must be nonzero of positive degree",
            alg.format(p)
        ))),
    }
}

/// Cache of powers of a fixed polynomial.
struct Powers {
    base: Poly,
    cache: Vec<Poly>,
}

impl Powers {
    fn new(base: Poly, nvars: usize) -> Self {
        let one = Poly::constant(nvars, Rational::one());
        Self { base, cache: vec![one] }
    }

    fn get(&mut self, e: usize) -> &Poly {
        while self.cache.len() <= e {
            let next = self.cache.last().unwrap() * &self.base;
            self.cache.push(next);
        }
        &self.cache[e]
    }
}

/// Certify that `basis` is a free basis of `ambient` over the subalgebra
/// generated by `gens`, degree by degree through `bound`.
pub fn verify_free_basis(
    ambient: &GradedAlgebra,
    gens: &[(String, Poly)],
    basis: &[Poly],
    bound: u64,
) -> Result<BasisCertificate> {
    let nvars = ambient.nvars();
    let gen_degrees = gens
        .iter()
        .map(|(name, p)| positive_degree(ambient, p, &format!("generator {name}")))
        .collect::<Result<Vec<_>>>()?;
    let basis_degrees = basis
        .iter()
        .map(|p| {
            ambient
                .homogeneous_degree(p)?
                .ok_or_else(|| Error::InvalidInput("zero basis element".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let needed = basis_degrees.iter().max().unwrap_or(&0) + gen_degrees.iter().max().unwrap_or(&0);
    if bound < needed {
        return Err(Error::InvalidInput(format!(
            "degree bound {bound} is below max basis degree + max generator degree = {needed}"
        )));
    }
    let subring = GradedAlgebra {
        field: ambient.field,
        vars: gens
            .iter()
            .zip(&gen_degrees)
            .map(|((name, _), &degree)| super::Variable {
                name: name.clone(),
                degree,
            })
            .collect(),
    };
    let mut powers: Vec<Powers> = gens.iter().map(|(_, p)| Powers::new(p.clone(), nvars)).collect();

    let mut degrees = Vec::new();
    let mut verdict = BasisVerdict::Free;
    for d in 0..=bound {
        let monos = ambient.graded_component(d);
        let index = component_index(&monos);
        let mut rows = Vec::new();
        for (b, &bd) in basis.iter().zip(&basis_degrees) {
            if bd > d {
                continue;
            }
            for sub in subring.graded_component(d - bd) {
                let mut prod = b.clone();
                for (j, &e) in sub.iter().enumerate() {
                    prod = &prod * powers[j].get(e as usize);
                }
                rows.push(ambient.coordinates(&prod, &index)?);
            }
        }
        let r = rank(ambient.field, &rows);
        let check = DegreeCheck {
            degree: d,
            ambient_dim: monos.len(),
            products: rows.len(),
            rank: r,
        };
        if verdict == BasisVerdict::Free {
            if r < rows.len() {
                verdict = BasisVerdict::NotFree {
                    degree: d,
                    failure: FreeFailure::Independence,
                };
            } else if r < monos.len() {
                verdict = BasisVerdict::NotFree {
                    degree: d,
                    failure: FreeFailure::Spanning,
                };
            }
        }
        degrees.push(check);
    }

    let h_ambient = hilbert_series_free(&ambient.vars.iter().map(|v| v.degree).collect::<Vec<_>>(), bound);
    let h_sub = hilbert_series_free(&gen_degrees, bound);
    let hilbert_identity = (0..=bound as usize).all(|k| {
        let rhs: u64 = basis_degrees
            .iter()
            .filter(|&&bd| bd as usize <= k)
            .map(|&bd| h_sub[k - bd as usize])
            .sum();
        h_ambient[k] == rhs
    });

    Ok(BasisCertificate {
        ambient: ambient.clone(),
        subring: subring.vars.into_iter().map(|v| (v.name, v.degree)).collect(),
        basis_degrees,
        bound,
        degrees,
        hilbert_identity,
        verdict,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RegularFailure {
    /// Position of the element whose multiplication fails to be injective.
    pub position: usize,
    /// Source degree in the quotient.
    pub degree: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularSequenceReport {
    pub field: Field,
    pub elements: Vec<String>,
    pub degrees: Vec<u64>,
    pub bound: u64,
    pub first_failure: Option<RegularFailure>,
    /// H_{A/(f₁..f_j)} = ∏_{i≤j}(1 - t^{deg fᵢ}) · H_A for every prefix.
    pub hilbert_criterion: bool,
    pub regular: bool,
}

/// Ranks of the degree-d parts of the ideals (f₁..f_j), memoized.
struct IdealRanks<'a> {
    alg: &'a GradedAlgebra,
    elems: &'a [Poly],
    degrees: &'a [u64],
    cache: BTreeMap<(usize, u64), usize>,
}

impl IdealRanks<'_> {
    fn rows(&self, prefix: usize, d: u64) -> Result<Vec<Vec<Rational>>> {
        let monos = self.alg.graded_component(d);
        let index = component_index(&monos);
        let mut rows = Vec::new();
        for (f, &e) in self.elems[..prefix].iter().zip(self.degrees) {
            if e > d {
                continue;
            }
            for m in self.alg.graded_component(d - e) {
                rows.push(
                    self.alg
                        .coordinates(&(&Poly::monomial(m, Rational::one()) * f), &index)?,
                );
            }
        }
        Ok(rows)
    }

    fn rank(&mut self, prefix: usize, d: u64) -> Result<usize> {
        if let Some(&r) = self.cache.get(&(prefix, d)) {
            return Ok(r);
        }
        let r = rank(self.alg.field, &self.rows(prefix, d)?);
        self.cache.insert((prefix, d), r);
        Ok(r)
    }
}

fn monomial_poly(m: &Exponents) -> Poly {
    Poly::monomial(m.clone(), Rational::one())
}

/// Check that each element is a nonzerodivisor modulo its predecessors, on
/// graded pieces up to 2·Σ deg.
pub fn verify_regular_sequence(alg: &GradedAlgebra, elements: &[Poly]) -> Result<RegularSequenceReport> {
    let degrees = elements
        .iter()
        .map(|p| positive_degree(alg, p, "sequence element"))
        .collect::<Result<Vec<_>>>()?;
    let bound = 2 * degrees.iter().sum::<u64>();
    let mut ranks = IdealRanks {
        alg,
        elems: elements,
        degrees: &degrees,
        cache: BTreeMap::new(),
    };

    let mut first_failure = None;
    'outer: for (j, (f, &e)) in elements.iter().zip(&degrees).enumerate() {
        for d in 0..=bound.saturating_sub(e) {
            let quotient_dim = alg.component_dim(d) - ranks.rank(j, d)?;
            let target = d + e;
            let mut rows = ranks.rows(j, target)?;
            let base = ranks.rank(j, target)?;
            let index = component_index(&alg.graded_component(target));
            for m in alg.graded_component(d) {
                rows.push(alg.coordinates(&(&monomial_poly(&m) * f), &index)?);
            }
            let image_dim = rank(alg.field, &rows) - base;
            if image_dim != quotient_dim {
                first_failure = Some(RegularFailure { position: j, degree: d });
                break 'outer;
            }
        }
    }

    let h_a = hilbert_series_free(&alg.vars.iter().map(|v| v.degree).collect::<Vec<_>>(), bound);
    let mut hilbert_criterion = true;
    let mut expected: Vec<i64> = h_a.iter().map(|&x| x as i64).collect();
    for (j, &e) in degrees.iter().enumerate() {
        // multiply the expected series by (1 - t^e)
        for k in (e as usize..expected.len()).rev() {
            expected[k] -= expected[k - e as usize];
        }
        for d in 0..=bound {
            let actual = alg.component_dim(d) as i64 - ranks.rank(j + 1, d)? as i64;
            if actual != expected[d as usize] {
                hilbert_criterion = false;
            }
        }
    }

    Ok(RegularSequenceReport {
        field: alg.field,
        elements: elements.iter().map(|p| alg.format(p)).collect(),
        degrees,
        bound,
        regular: first_failure.is_none() && hilbert_criterion,
        first_failure,
        hilbert_criterion,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeierstrassReport {
    pub field: Field,
    pub holds: bool,
    /// c₄³ - c₆² - 1728Δ, reduced into the field.
    pub residual: String,
}

pub fn weierstrass_identity_check(
    alg: &GradedAlgebra,
    c4: &Poly,
    c6: &Poly,
    delta: &Poly,
) -> Result<WeierstrassReport> {
    let nvars = alg.nvars();
    let lhs = &(&c4.pow(3, nvars) - &c6.pow(2, nvars)) - &delta.scale(&rat(1728, 1));
    let residual = lhs.reduce(alg.field)?;
    Ok(WeierstrassReport {
        field: alg.field,
        holds: residual.is_zero(),
        residual: alg.format(&residual),
    })
}

impl Presentation {
    /// Free-basis certificate for the `gen` subring and `basis` list. The
    /// default bound is four times the largest generator degree.
    pub fn free_basis_certificate(&self, bound: Option<u64>) -> Result<BasisCertificate> {
        if self.gens.is_empty() || self.basis.is_empty() {
            return Err(Error::InvalidInput(
                "free-basis check needs `gen` and `basis` lines".into(),
            ));
        }
        let default = 4 * self
            .gens
            .iter()
            .filter_map(|(_, p)| self.algebra.homogeneous_degree(p).ok().flatten())
            .max()
            .unwrap_or(0);
        let basis: Vec<Poly> = self.basis.iter().map(|(_, p)| p.clone()).collect();
        verify_free_basis(
            &self.algebra,
            &self.gens,
            &basis,
            bound.or(self.bound).unwrap_or(default),
        )
    }

    pub fn regular_sequence_report(&self) -> Result<RegularSequenceReport> {
        if self.seq.is_empty() {
            return Err(Error::InvalidInput("regular-sequence check needs a `seq` line".into()));
        }
        let elems: Vec<Poly> = self.seq.iter().map(|(_, p)| p.clone()).collect();
        verify_regular_sequence(&self.algebra, &elems)
    }

    /// Uses the definitions named `c4`, `c6` and `Delta`.
    pub fn weierstrass_report(&self) -> Result<WeierstrassReport> {
        let get = |name: &str| {
            self.get(name)
                .ok_or_else(|| Error::InvalidInput(format!("Weierstrass check needs a definition of `{name}`")))
        };
        weierstrass_identity_check(&self.algebra, get("c4")?, get("c6")?, get("Delta")?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ringalg::presets::{find, PresetKind, PRESETS};

    fn expr(alg: &GradedAlgebra, s: &str) -> Poly {
        crate::ringalg::parse_expression(s, alg, &BTreeMap::new()).unwrap()
    }

    #[test]
    fn polynomial_ring_over_itself() {
        let alg = GradedAlgebra::new(Field::Rational, &[("x", 1), ("y", 2)]).unwrap();
        let gens = vec![("x".to_string(), expr(&alg, "x")), ("y".to_string(), expr(&alg, "y"))];
        let cert = verify_free_basis(&alg, &gens, &[alg.one()], 10).unwrap();
        assert!(cert.is_free() && cert.hilbert_identity);
    }

    #[test]
    fn failure_kinds() {
        let alg = GradedAlgebra::new(Field::Rational, &[("x", 1)]).unwrap();
        // ℚ[x] over ℚ[x²] needs {1, x}
        let gens = vec![("s".to_string(), expr(&alg, "x^2"))];
        let cert = verify_free_basis(&alg, &gens, &[alg.one()], 4).unwrap();
        assert_eq!(
            cert.verdict,
            BasisVerdict::NotFree {
                degree: 1,
                failure: FreeFailure::Spanning
            }
        );
        assert!(!cert.hilbert_identity);
        let basis = [alg.one(), expr(&alg, "x"), expr(&alg, "x^2")];
        let cert = verify_free_basis(&alg, &gens, &basis, 4).unwrap();
        assert_eq!(
            cert.verdict,
            BasisVerdict::NotFree {
                degree: 2,
                failure: FreeFailure::Independence
            }
        );
        assert!(verify_free_basis(&alg, &gens, &[expr(&alg, "x + 1")], 4).is_err());
        assert!(verify_free_basis(&alg, &gens, &basis, 3).is_err());
    }

    #[test]
    fn regular_sequences() {
        let alg = GradedAlgebra::new(Field::Rational, &[("x", 1), ("y", 1)]).unwrap();
        let r = verify_regular_sequence(&alg, &[expr(&alg, "x"), expr(&alg, "y")]).unwrap();
        assert!(r.regular);
        let r = verify_regular_sequence(&alg, &[expr(&alg, "x*y"), expr(&alg, "x^2")]).unwrap();
        assert!(!r.regular);
        assert_eq!(r.first_failure, Some(RegularFailure { position: 1, degree: 1 }));
        assert!(verify_regular_sequence(&alg, &[expr(&alg, "x + y^2")]).is_err());
    }

    #[test]
    fn weierstrass_conventions() {
        let p = Presentation::parse("field Q\nvar b2 2\nvar b4 4\n").unwrap();
        let alg = &p.algebra;
        let delta = expr(alg, "(b2^2*b4^2 - 32*b4^3)/4");
        let ok = weierstrass_identity_check(alg, &expr(alg, "b2^2 - 24*b4"), &expr(alg, "-b2^3 + 36*b2*b4"), &delta)
            .unwrap();
        assert!(ok.holds, "{}", ok.residual);
        // the other printed normalization does not satisfy the identity with this Δ
        let alt = weierstrass_identity_check(alg, &expr(alg, "b2^2 + 216*b4"), &expr(alg, "b2^3 - 576*b2*b4"), &delta)
            .unwrap();
        assert!(!alt.holds);
        // but both c₄ agree modulo 3
        let d = &expr(alg, "b2^2 + 216*b4") - &expr(alg, "b2^2 - 24*b4");
        assert!(d.reduce(Field::Prime(3)).unwrap().is_zero());
    }

    #[test]
    fn presets_parse() {
        for p in PRESETS {
            Presentation::parse(p.text).unwrap_or_else(|e| panic!("{}: {e}", p.name));
        }
    }

    #[test]
    fn free_basis_presets() {
        for (name, rank) in [
            ("f2-gamma1-3", 4),
            ("f3-gamma1-2", 3),
            ("q-gamma1-2", 6),
            ("q-gamma1-3", 16),
        ] {
            let p = Presentation::parse(find(PresetKind::FreeBasis, name).unwrap().text).unwrap();
            assert_eq!(p.basis.len(), rank);
            let cert = p.free_basis_certificate(None).unwrap();
            assert_eq!(cert.bound, 48);
            assert!(cert.is_free(), "{name}: {:?}", cert.verdict);
            assert!(cert.hilbert_identity, "{name}");
        }
    }

    #[test]
    fn regular_sequence_presets() {
        for (name, regular) in [("f2-gamma1-3", true), ("f3-gamma1-2", true), ("f3-not-regular", false)] {
            let p = Presentation::parse(find(PresetKind::RegularSequence, name).unwrap().text).unwrap();
            let r = p.regular_sequence_report().unwrap();
            assert_eq!(r.regular, regular, "{name}");
            assert_eq!(r.hilbert_criterion, regular, "{name}");
        }
        let p = Presentation::parse(find(PresetKind::RegularSequence, "f3-not-regular").unwrap().text).unwrap();
        let r = p.regular_sequence_report().unwrap();
        assert_eq!(r.first_failure, Some(RegularFailure { position: 1, degree: 0 }));
    }

    #[test]
    fn weierstrass_presets() {
        for (name, holds) in [("gamma1-2", true), ("gamma1-3", true), ("gamma1-3-perturbed", false)] {
            let p = Presentation::parse(find(PresetKind::Weierstrass, name).unwrap().text).unwrap();
            assert_eq!(p.weierstrass_report().unwrap().holds, holds, "{name}");
        }
    }
}
