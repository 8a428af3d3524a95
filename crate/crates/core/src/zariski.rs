//! Zariski decomposition `D = P + N` relative to a finite set of candidate
//! curves.
//!
//! The output is the true Zariski decomposition only when the candidate set
//! contains every irreducible curve of negative self-intersection (the
//! `complete` flag); otherwise `P` is nef relative to the candidates only.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, SurfaceModel};
use crate::linalg::{self, Matrix};
use crate::riemann_roch::integral_arithmetic_genus;
use crate::Rational;

/// Largest candidate set accepted by [`zariski_brute_force`].
pub const BRUTE_FORCE_LIMIT: usize = 20;

/// Classes of irreducible curves on a surface, pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateCurveSet {
    curves: Vec<DivisorClass>,
    complete: bool,
}

impl CandidateCurveSet {
    /// Validates that every class has non-negative integral arithmetic genus,
    /// that no class repeats, and that distinct members meet non-negatively.
    pub fn new(surface: &SurfaceModel, curves: Vec<DivisorClass>, complete: bool) -> Result<Self> {
        for (index, c) in curves.iter().enumerate() {
            surface.lattice().check(c)?;
            if !c.is_integral() {
                return Err(Error::InvalidCandidate {
                    index,
                    reason: "non-integral class".into(),
                });
            }
            match integral_arithmetic_genus(surface, c)? {
                Some(pa) if pa >= 0 => {}
                Some(pa) => {
                    return Err(Error::InvalidCandidate {
                        index,
                        reason: format!("arithmetic genus {pa} is negative"),
                    })
                }
                None => {
                    return Err(Error::InvalidCandidate {
                        index,
                        reason: "arithmetic genus is not an integer".into(),
                    })
                }
            }
        }
        for i in 0..curves.len() {
            for j in (i + 1)..curves.len() {
                if curves[i] == curves[j] {
                    return Err(Error::DuplicateCandidate {
                        first: i,
                        second: j,
                    });
                }
                if surface.intersect(&curves[i], &curves[j])?.is_negative() {
                    return Err(Error::InvalidCandidate {
                        index: j,
                        reason: format!("meets candidate #{i} negatively, so they cannot be distinct irreducible curves"),
                    });
                }
            }
        }
        Ok(Self { curves, complete })
    }

    pub fn curves(&self) -> &[DivisorClass] {
        &self.curves
    }

    pub fn complete(&self) -> bool {
        self.complete
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }
}

/// `D = P + sum a_i E_i` with the `E_i` drawn from a candidate set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZariskiDecomposition {
    positive: DivisorClass,
    /// Candidate indices, ascending.
    support: Vec<usize>,
    coefficients: Vec<Rational>,
}

/// One failed structural property of a decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvariantViolation {
    SumMismatch,
    NotNef { candidate: usize },
    NegativeSquare,
    SupportNotNegativeDefinite,
    NotOrthogonal { candidate: usize },
    NonPositiveCoefficient { candidate: usize },
}

impl ZariskiDecomposition {
    pub fn positive(&self) -> &DivisorClass {
        &self.positive
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    /// `(candidate index, coefficient)` pairs.
    pub fn coefficient_map(&self) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        self.support.iter().copied().zip(&self.coefficients)
    }

    pub fn negative(&self, candidates: &CandidateCurveSet) -> DivisorClass {
        self.coefficient_map()
            .fold(DivisorClass::zero(self.positive.rank()), |acc, (i, a)| {
                acc.add_scaled(a, &candidates.curves[i])
            })
    }

    /// Checks every structural property against `d` and `candidates`,
    /// returning the violations found.
    pub fn violations(
        &self,
        surface: &SurfaceModel,
        d: &DivisorClass,
        candidates: &CandidateCurveSet,
    ) -> Result<Vec<InvariantViolation>> {
        let mut out = Vec::new();
        if &(&self.positive + &self.negative(candidates)) != d {
            out.push(InvariantViolation::SumMismatch);
        }
        for (i, e) in candidates.curves.iter().enumerate() {
            let pe = surface.intersect(&self.positive, e)?;
            if pe.is_negative() {
                out.push(InvariantViolation::NotNef { candidate: i });
            }
            if self.support.contains(&i) && !pe.is_zero() {
                out.push(InvariantViolation::NotOrthogonal { candidate: i });
            }
        }
        if surface
            .intersect(&self.positive, &self.positive)?
            .is_negative()
        {
            out.push(InvariantViolation::NegativeSquare);
        }
        let gram = sub_gram(&candidate_gram(surface, candidates)?, &self.support);
        if !is_negative_definite(&gram)? {
            out.push(InvariantViolation::SupportNotNegativeDefinite);
        }
        for (i, a) in self.coefficient_map() {
            if !a.is_positive() {
                out.push(InvariantViolation::NonPositiveCoefficient { candidate: i });
            }
        }
        Ok(out)
    }
}

/// Sylvester's criterion: the k-th leading principal minor has sign `(-1)^k`.
pub fn is_negative_definite(gram: &[Vec<Rational>]) -> Result<bool> {
    linalg::check_symmetric(gram)?;
    Ok(linalg::leading_minors(gram)
        .iter()
        .enumerate()
        .all(|(k, minor)| {
            if k % 2 == 0 {
                minor.is_negative()
            } else {
                minor.is_positive()
            }
        }))
}

fn candidate_gram(surface: &SurfaceModel, candidates: &CandidateCurveSet) -> Result<Matrix> {
    candidates
        .curves
        .iter()
        .map(|a| {
            candidates
                .curves
                .iter()
                .map(|b| surface.intersect(a, b))
                .collect()
        })
        .collect()
}

fn sub_gram(gram: &Matrix, support: &[usize]) -> Matrix {
    support
        .iter()
        .map(|&i| support.iter().map(|&j| gram[i][j].clone()).collect())
        .collect()
}

/// Shared precomputation: pairings of `D` and of candidates with each other.
struct System<'a> {
    surface: &'a SurfaceModel,
    d: &'a DivisorClass,
    candidates: &'a CandidateCurveSet,
    gram: Matrix,
    d_dot: Vec<Rational>,
}

impl<'a> System<'a> {
    fn new(
        surface: &'a SurfaceModel,
        d: &'a DivisorClass,
        candidates: &'a CandidateCurveSet,
    ) -> Result<Self> {
        surface.lattice().check(d)?;
        if surface.intersect(d, surface.polarization())?.is_negative() {
            return Err(Error::NotPseudoeffective {
                reason: String::from("D.H < 0"),
            });
        }
        let gram = candidate_gram(surface, candidates)?;
        let d_dot = candidates
            .curves
            .iter()
            .map(|e| surface.intersect(d, e))
            .collect::<Result<_>>()?;
        Ok(Self {
            surface,
            d,
            candidates,
            gram,
            d_dot,
        })
    }

    /// Solves `(E_i.E_j) a = (D.E_i)` over `support` (ascending) and returns
    /// the coefficients and `P = D - N`. `None` if the system is singular.
    fn solve(&self, support: &[usize]) -> Option<(Vec<Rational>, DivisorClass)> {
        let gram = sub_gram(&self.gram, support);
        let rhs: Vec<Rational> = support.iter().map(|&i| self.d_dot[i].clone()).collect();
        let coeffs = linalg::solve(&gram, &rhs)?;
        let mut p = self.d.clone();
        for (&i, a) in support.iter().zip(&coeffs) {
            p = p.add_scaled(&-a, &self.candidates.curves[i]);
        }
        Some((coeffs, p))
    }

    /// `P.E` for every candidate, from the precomputed pairings.
    fn positive_dots(&self, support: &[usize], coeffs: &[Rational]) -> Vec<Rational> {
        (0..self.candidates.len())
            .map(|k| {
                let mut v = self.d_dot[k].clone();
                for (&i, a) in support.iter().zip(coeffs) {
                    v -= a * &self.gram[i][k];
                }
                v
            })
            .collect()
    }

    fn positive_square_ok(&self, p: &DivisorClass) -> bool {
        !self
            .surface
            .intersect(p, p)
            .expect("rank checked")
            .is_negative()
    }
}

/// Iterative Zariski decomposition: grow the negative support by the first
/// candidate (in stored order) that the current positive part meets
/// negatively, re-solving the orthogonality system each time.
pub fn zariski_decompose(
    surface: &SurfaceModel,
    d: &DivisorClass,
    candidates: &CandidateCurveSet,
) -> Result<ZariskiDecomposition> {
    let sys = System::new(surface, d, candidates)?;
    let mut support: Vec<usize> = Vec::new();
    let mut coeffs: Vec<Rational> = Vec::new();
    let mut positive = d.clone();
    for _ in 0..=candidates.len() {
        let dots = sys.positive_dots(&support, &coeffs);
        let violator =
            (0..candidates.len()).find(|k| !support.contains(k) && dots[*k].is_negative());
        let Some(k) = violator else {
            if let Some(pos) = coeffs.iter().position(|a| !a.is_positive()) {
                return Err(Error::NonPositiveCoefficient {
                    candidate: support[pos],
                });
            }
            if !sys.positive_square_ok(&positive) {
                return Err(Error::NotPseudoeffective {
                    reason: String::from("nef part has negative square"),
                });
            }
            return Ok(ZariskiDecomposition {
                positive,
                support,
                coefficients: coeffs,
            });
        };
        let at = support.partition_point(|&i| i < k);
        support.insert(at, k);
        if !is_negative_definite(&sub_gram(&sys.gram, &support))? {
            return Err(Error::IndefiniteSupport { support });
        }
        let (c, p) = sys
            .solve(&support)
            .ok_or_else(|| Error::IndefiniteSupport {
                support: support.clone(),
            })?;
        coeffs = c;
        positive = p;
    }
    Err(Error::NonConvergence {
        steps: candidates.len() + 1,
    })
}

/// Exhaustive oracle: tries every subset of candidates as the negative
/// support and keeps the one satisfying all decomposition conditions.
pub fn zariski_brute_force(
    surface: &SurfaceModel,
    d: &DivisorClass,
    candidates: &CandidateCurveSet,
) -> Result<ZariskiDecomposition> {
    if candidates.len() > BRUTE_FORCE_LIMIT {
        return Err(Error::TooManyCandidates {
            max: BRUTE_FORCE_LIMIT,
            found: candidates.len(),
        });
    }
    let sys = System::new(surface, d, candidates)?;
    for mask in 0u32..(1u32 << candidates.len()) {
        let support: Vec<usize> = (0..candidates.len())
            .filter(|i| mask & (1 << i) != 0)
            .collect();
        if !is_negative_definite(&sub_gram(&sys.gram, &support))? {
            continue;
        }
        let Some((coeffs, positive)) = sys.solve(&support) else {
            continue;
        };
        if !coeffs.iter().all(Signed::is_positive) {
            continue;
        }
        if sys
            .positive_dots(&support, &coeffs)
            .iter()
            .any(Signed::is_negative)
        {
            continue;
        }
        if !sys.positive_square_ok(&positive) {
            continue;
        }
        return Ok(ZariskiDecomposition {
            positive,
            support,
            coefficients: coeffs,
        });
    }
    Err(Error::NoValidSubset)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{blow_up, make_hirzebruch, make_projective_plane};
    use crate::rat;
    use alloc::vec;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect()
    }

    #[test]
    fn negative_definite_examples() {
        assert!(is_negative_definite(&m(&[&[-1]])).unwrap());
        assert!(is_negative_definite(&m(&[&[-1, 0], &[0, -1]])).unwrap());
        assert!(!is_negative_definite(&m(&[&[-1, 1], &[1, -1]])).unwrap());
        assert!(!is_negative_definite(&m(&[&[1]])).unwrap());
        assert!(is_negative_definite(&m(&[])).unwrap());
        assert!(is_negative_definite(&m(&[&[-1, 2], &[1, -1]])).is_err());
    }

    fn bl(n: u32) -> SurfaceModel {
        blow_up(&make_projective_plane(), n).unwrap()
    }

    fn exceptionals(s: &SurfaceModel) -> CandidateCurveSet {
        let curves = (1..=s.n_blowups() as usize)
            .map(|i| s.exceptional(i).unwrap())
            .collect();
        CandidateCurveSet::new(s, curves, true).unwrap()
    }

    #[test]
    fn bl1_examples_both_routes() {
        let s = bl(1);
        let cands = exceptionals(&s);
        let cases: [(&[i64], &[i64], &[(usize, i64)]); 3] = [
            (&[1, 0], &[1, 0], &[]),
            (&[0, 1], &[0, 0], &[(0, 1)]),
            (&[1, 1], &[1, 0], &[(0, 1)]),
        ];
        for (d, p, n) in cases {
            let d = DivisorClass::from_ints(d);
            let z = zariski_decompose(&s, &d, &cands).unwrap();
            assert_eq!(z.positive(), &DivisorClass::from_ints(p));
            let got: Vec<(usize, Rational)> =
                z.coefficient_map().map(|(i, a)| (i, a.clone())).collect();
            let want: Vec<(usize, Rational)> = n.iter().map(|&(i, a)| (i, rat(a))).collect();
            assert_eq!(got, want);
            assert_eq!(zariski_brute_force(&s, &d, &cands).unwrap(), z);
            assert!(z.violations(&s, &d, &cands).unwrap().is_empty());
        }
    }

    #[test]
    fn bl2_diagonal_systems() {
        let s = bl(2);
        let cands = exceptionals(&s);
        let d = DivisorClass::from_ints(&[0, 2, 1]);
        let z = zariski_brute_force(&s, &d, &cands).unwrap();
        assert!(z.positive().is_zero());
        assert_eq!(z.support(), &[0, 1]);
        assert_eq!(z.coefficients(), &[rat(2), rat(1)]);
        assert_eq!(zariski_decompose(&s, &d, &cands).unwrap(), z);

        let d = DivisorClass::from_ints(&[1, 3, 0]);
        let z = zariski_brute_force(&s, &d, &cands).unwrap();
        assert_eq!(z.positive(), &DivisorClass::from_ints(&[1, 0, 0]));
        assert_eq!(z.coefficients(), &[rat(3)]);
        assert_eq!(zariski_decompose(&s, &d, &cands).unwrap(), z);
    }

    #[test]
    fn rational_coefficients_on_hirzebruch() {
        // On F_3, D = C0 + f: D.C0 = -2, so a = 2/3 and P = C0/3 + f.
        let s = make_hirzebruch(3).unwrap();
        let cands =
            CandidateCurveSet::new(&s, vec![DivisorClass::from_ints(&[1, 0])], true).unwrap();
        let d = DivisorClass::from_ints(&[1, 1]);
        let z = zariski_decompose(&s, &d, &cands).unwrap();
        assert_eq!(z.coefficients(), &[Rational::new(2.into(), 3.into())]);
        assert_eq!(
            z.positive(),
            &DivisorClass::new(vec![Rational::new(1.into(), 3.into()), rat(1)])
        );
        assert_eq!(zariski_brute_force(&s, &d, &cands).unwrap(), z);
    }

    #[test]
    fn rejects_non_pseudoeffective() {
        let s = bl(1);
        let cands = exceptionals(&s);
        // (H - 2E1)^2 = -3 with nothing to subtract.
        let d = DivisorClass::from_ints(&[1, -2]);
        assert!(matches!(
            zariski_decompose(&s, &d, &cands),
            Err(Error::NotPseudoeffective { .. })
        ));
        assert_eq!(
            zariski_brute_force(&s, &d, &cands),
            Err(Error::NoValidSubset)
        );
        let d = DivisorClass::from_ints(&[-1, 0]);
        assert!(matches!(
            zariski_decompose(&s, &d, &cands),
            Err(Error::NotPseudoeffective { .. })
        ));
    }

    #[test]
    fn candidate_validation() {
        let s = bl(2);
        let e1 = s.exceptional(1).unwrap();
        assert_eq!(
            CandidateCurveSet::new(&s, vec![e1.clone(), e1.clone()], false),
            Err(Error::DuplicateCandidate {
                first: 0,
                second: 1
            })
        );
        // 2E1 has p_a = -2.
        assert!(CandidateCurveSet::new(&s, vec![e1.scale(&rat(2))], false).is_err());
        // H - E1 and E1 - E2... the latter has p_a = 0 but meets E2 positively and
        // E1 negatively.
        let bad = DivisorClass::from_ints(&[0, 1, -1]);
        assert!(CandidateCurveSet::new(&s, vec![e1, bad], false).is_err());
    }

    #[test]
    fn brute_force_limit() {
        let s = bl(1);
        let curves = (0..21).map(|k| DivisorClass::from_ints(&[k, 0])).collect();
        let cands = CandidateCurveSet {
            curves,
            complete: false,
        };
        assert_eq!(
            zariski_brute_force(&s, &DivisorClass::from_ints(&[1, 0]), &cands),
            Err(Error::TooManyCandidates { max: 20, found: 21 })
        );
    }
}
