//! Neron-Severi lattices of surfaces and their blow-ups.
//!
//! A surface is modelled purely numerically: a labelled basis, the integer
//! Gram matrix of the intersection pairing, and the coordinates of the
//! canonical class and of the chosen polarization. Blown-up points carry no
//! geometry, so infinitely-near and distinct points give the same model.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::{linalg, rat, Rational};

/// Symmetric integer pairing on a labelled basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionForm {
    labels: Vec<String>,
    gram: Vec<Vec<i64>>,
}

impl IntersectionForm {
    pub fn new(labels: Vec<String>, gram: Vec<Vec<i64>>) -> Result<Self> {
        if gram.len() != labels.len() {
            return Err(Error::DimensionMismatch {
                expected: labels.len(),
                found: gram.len(),
            });
        }
        let n = gram.len();
        for (row, r) in gram.iter().enumerate() {
            if r.len() != n {
                return Err(Error::NotSquare {
                    rows: n,
                    row,
                    len: r.len(),
                });
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(Self { labels, gram })
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn rational_gram(&self) -> linalg::Matrix {
        self.gram
            .iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect()
    }

    /// `a^T G b` in exact arithmetic.
    pub fn pair(&self, a: &DivisorClass, b: &DivisorClass) -> Result<Rational> {
        self.check(a)?;
        self.check(b)?;
        let mut acc = Rational::zero();
        for (i, ai) in a.coords.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            let mut row = Rational::zero();
            for (j, bj) in b.coords.iter().enumerate() {
                let g = self.gram[i][j];
                if g != 0 && !bj.is_zero() {
                    row += bj * rat(g);
                }
            }
            acc += ai * row;
        }
        Ok(acc)
    }

    pub fn check(&self, d: &DivisorClass) -> Result<()> {
        if d.rank() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: d.rank(),
            });
        }
        Ok(())
    }

    /// `(positive, negative, zero)` eigenvalue sign counts of the Gram matrix.
    pub fn signature(&self) -> (usize, usize, usize) {
        linalg::inertia(&self.rational_gram()).expect("gram is symmetric by construction")
    }

    /// Hodge index: signature `(1, rank - 1)`.
    pub fn is_hyperbolic(&self) -> bool {
        self.signature() == (1, self.rank() - 1, 0)
    }

    /// Orthogonal sum with `labels.len()` classes of self-intersection -1.
    fn with_exceptionals(&self, labels: Vec<String>) -> Self {
        let n = self.rank() + labels.len();
        let mut gram = vec![vec![0i64; n]; n];
        for (i, row) in self.gram.iter().enumerate() {
            gram[i][..row.len()].copy_from_slice(row);
        }
        for i in self.rank()..n {
            gram[i][i] = -1;
        }
        let mut all = self.labels.clone();
        all.extend(labels);
        Self { labels: all, gram }
    }
}

/// Pairing of two classes on a lattice.
pub fn intersect(
    lattice: &IntersectionForm,
    a: &DivisorClass,
    b: &DivisorClass,
) -> Result<Rational> {
    lattice.pair(a, b)
}

/// A coordinate vector in a fixed Neron-Severi basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorClass {
    coords: Vec<Rational>,
}

impl DivisorClass {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self {
            coords: coords.iter().map(|&c| rat(c)).collect(),
        }
    }

    pub fn zero(rank: usize) -> Self {
        Self {
            coords: vec![Rational::zero(); rank],
        }
    }

    pub fn basis(rank: usize, index: usize) -> Self {
        let mut d = Self::zero(rank);
        d.coords[index] = Rational::one();
        d
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coords
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self {
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }

    /// `self + k * other`; ranks must agree.
    pub fn add_scaled(&self, k: &Rational, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        Self {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + k * b)
                .collect(),
        }
    }

    /// Copy with `extra` zero coordinates appended, i.e. the pullback to a
    /// blow-up.
    pub fn extended(&self, extra: usize) -> Self {
        let mut coords = self.coords.clone();
        coords.resize(self.rank() + extra, Rational::zero());
        Self { coords }
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        self.add_scaled(&Rational::one(), rhs)
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        self.add_scaled(&-Rational::one(), rhs)
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurfaceKind {
    ProjectivePlane,
    /// F_e with a section of self-intersection -e.
    Hirzebruch {
        e: u32,
    },
    /// P(O_B + L') over a curve B of genus `genus`, with `twist_degree = deg L'`.
    Ruled {
        genus: u32,
        twist_degree: i64,
    },
    Custom,
}

impl SurfaceKind {
    pub fn name(&self) -> &'static str {
        match self {
            SurfaceKind::ProjectivePlane => "projective_plane",
            SurfaceKind::Hirzebruch { .. } => "hirzebruch",
            SurfaceKind::Ruled { .. } => "ruled",
            SurfaceKind::Custom => "custom",
        }
    }
}

/// A smooth projective surface as lattice data plus numerical invariants.
///
/// The first `base_rank()` basis vectors come from the base surface; each
/// blow-up appends one exceptional class `E_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel {
    lattice: IntersectionForm,
    canonical: DivisorClass,
    polarization: DivisorClass,
    chi: i64,
    c2: i64,
    n_blowups: u32,
    kind: SurfaceKind,
}

impl SurfaceModel {
    /// Builds a base surface (no blow-ups) from raw data, checking ranks, the
    /// Hodge index signature and Noether's formula.
    pub fn custom(
        lattice: IntersectionForm,
        canonical: DivisorClass,
        polarization: DivisorClass,
        chi: i64,
        c2: i64,
    ) -> Result<Self> {
        if !lattice.is_hyperbolic() {
            let (p, n, z) = lattice.signature();
            return Err(Error::InvalidParameter {
                name: "gram",
                reason: format!("signature ({p}, {n}, {z}) violates the Hodge index theorem; expected (1, {}, 0)", lattice.rank() - 1),
            });
        }
        Self::build(
            lattice,
            canonical,
            polarization,
            chi,
            c2,
            SurfaceKind::Custom,
        )
    }

    fn build(
        lattice: IntersectionForm,
        canonical: DivisorClass,
        polarization: DivisorClass,
        chi: i64,
        c2: i64,
        kind: SurfaceKind,
    ) -> Result<Self> {
        lattice.check(&canonical)?;
        lattice.check(&polarization)?;
        if !canonical.is_integral() {
            return Err(Error::NotIntegral {
                what: "canonical class",
            });
        }
        if !polarization.is_integral() {
            return Err(Error::NotIntegral {
                what: "polarization",
            });
        }
        let s = Self {
            lattice,
            canonical,
            polarization,
            chi,
            c2,
            n_blowups: 0,
            kind,
        };
        if !s.noether_defect().is_zero() {
            return Err(Error::InvalidParameter {
                name: "chi",
                reason: format!(
                    "12*chi = {} but K^2 + c2 = {}",
                    12 * chi,
                    s.k_squared() + rat(c2)
                ),
            });
        }
        Ok(s)
    }

    pub fn lattice(&self) -> &IntersectionForm {
        &self.lattice
    }

    pub fn canonical(&self) -> &DivisorClass {
        &self.canonical
    }

    pub fn polarization(&self) -> &DivisorClass {
        &self.polarization
    }

    pub fn chi(&self) -> i64 {
        self.chi
    }

    pub fn c2(&self) -> i64 {
        self.c2
    }

    pub fn n_blowups(&self) -> u32 {
        self.n_blowups
    }

    pub fn kind(&self) -> &SurfaceKind {
        &self.kind
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn base_rank(&self) -> usize {
        self.rank() - self.n_blowups as usize
    }

    pub fn intersect(&self, a: &DivisorClass, b: &DivisorClass) -> Result<Rational> {
        self.lattice.pair(a, b)
    }

    fn pair_known(&self, a: &DivisorClass, b: &DivisorClass) -> Rational {
        self.lattice
            .pair(a, b)
            .expect("model classes have lattice rank")
    }

    pub fn k_squared(&self) -> Rational {
        self.pair_known(&self.canonical, &self.canonical)
    }

    /// K^2 of the base surface before any blow-up.
    pub fn base_k_squared(&self) -> Rational {
        self.k_squared() + rat(i64::from(self.n_blowups))
    }

    /// `a0 = -K.H`.
    pub fn a0(&self) -> Rational {
        -self.pair_known(&self.canonical, &self.polarization)
    }

    pub fn polarization_square(&self) -> Rational {
        self.pair_known(&self.polarization, &self.polarization)
    }

    /// `12 chi - K^2 - c2`, zero for every valid model.
    pub fn noether_defect(&self) -> Rational {
        rat(12 * self.chi) - self.k_squared() - rat(self.c2)
    }

    /// Exceptional class `E_i`, `i` in `1..=n_blowups`.
    pub fn exceptional(&self, i: usize) -> Option<DivisorClass> {
        (1..=self.n_blowups as usize)
            .contains(&i)
            .then(|| DivisorClass::basis(self.rank(), self.base_rank() + i - 1))
    }

    /// Basis class by index.
    pub fn basis_class(&self, index: usize) -> DivisorClass {
        DivisorClass::basis(self.rank(), index)
    }

    /// Class with integer coordinates, checked against the rank.
    pub fn class(&self, coords: &[i64]) -> Result<DivisorClass> {
        let d = DivisorClass::from_ints(coords);
        self.lattice.check(&d)?;
        Ok(d)
    }
}

/// P^2 with basis `(H)`, `K = -3H`.
pub fn make_projective_plane() -> SurfaceModel {
    let lattice = IntersectionForm::new(vec!["H".to_string()], vec![vec![1]]).unwrap();
    SurfaceModel::build(
        lattice,
        DivisorClass::from_ints(&[-3]),
        DivisorClass::from_ints(&[1]),
        1,
        3,
        SurfaceKind::ProjectivePlane,
    )
    .unwrap()
}

/// F_e with basis `(C0, f)`, `C0^2 = -e`, polarization `C0 + (e+1) f`.
pub fn make_hirzebruch(e: i64) -> Result<SurfaceModel> {
    if e < 0 {
        return Err(Error::InvalidParameter {
            name: "e",
            reason: format!("must be >= 0, got {e}"),
        });
    }
    let e32 = u32::try_from(e).map_err(|_| Error::InvalidParameter {
        name: "e",
        reason: "too large".to_string(),
    })?;
    let lattice = IntersectionForm::new(
        vec!["C0".to_string(), "f".to_string()],
        vec![vec![-e, 1], vec![1, 0]],
    )?;
    SurfaceModel::build(
        lattice,
        DivisorClass::from_ints(&[-2, -(2 + e)]),
        DivisorClass::from_ints(&[1, e + 1]),
        1,
        4,
        SurfaceKind::Hirzebruch { e: e32 },
    )
}

/// Ruled surface `P(O_B + L')` over a genus-`g` curve with `deg L' = twist_degree`.
pub fn make_ruled(g: i64, twist_degree: i64) -> Result<SurfaceModel> {
    if g < 1 {
        return Err(Error::InvalidParameter {
            name: "g",
            reason: format!("must be >= 1, got {g}"),
        });
    }
    if twist_degree >= 3 - 3 * g {
        return Err(Error::InvalidParameter {
            name: "deg_l",
            reason: format!("must be < 3 - 3g = {}, got {twist_degree}", 3 - 3 * g),
        });
    }
    let genus = u32::try_from(g).map_err(|_| Error::InvalidParameter {
        name: "g",
        reason: "too large".to_string(),
    })?;
    let d = twist_degree;
    let lattice = IntersectionForm::new(
        vec!["C0".to_string(), "f".to_string()],
        vec![vec![d, 1], vec![1, 0]],
    )?;
    SurfaceModel::build(
        lattice,
        DivisorClass::from_ints(&[-2, 2 * g - 2 + d]),
        DivisorClass::from_ints(&[1, 2 * g + 1 - d]),
        1 - g,
        4 * (1 - g),
        SurfaceKind::Ruled {
            genus,
            twist_degree,
        },
    )
}

/// Blows up `k` further points. New classes are labelled `E{n+1}..E{n+k}`.
pub fn blow_up(surface: &SurfaceModel, k: u32) -> Result<SurfaceModel> {
    if k == 0 {
        return Err(Error::InvalidParameter {
            name: "k",
            reason: "must be positive".to_string(),
        });
    }
    let start = surface.n_blowups;
    let labels = (start + 1..=start + k).map(|i| format!("E{i}")).collect();
    let lattice = surface.lattice.with_exceptionals(labels);
    let extra = k as usize;
    let mut canonical = surface.canonical.extended(extra);
    for i in surface.rank()..lattice.rank() {
        canonical.coords[i] = Rational::one();
    }
    Ok(SurfaceModel {
        lattice,
        canonical,
        polarization: surface.polarization.extended(extra),
        chi: surface.chi,
        c2: surface.c2 + i64::from(k),
        n_blowups: surface.n_blowups + k,
        kind: surface.kind.clone(),
    })
}

/// `blow_up` that accepts `k = 0` as the identity.
pub fn blow_up_n(surface: &SurfaceModel, k: u32) -> SurfaceModel {
    if k == 0 {
        surface.clone()
    } else {
        blow_up(surface, k).expect("k > 0")
    }
}

/// Whether every polarization pairing with `classes` is non-negative.
pub fn polarization_nonnegative_on(
    surface: &SurfaceModel,
    classes: &[DivisorClass],
) -> Result<bool> {
    for c in classes {
        if surface.intersect(surface.polarization(), c)?.is_negative() {
            return Ok(false);
        }
    }
    Ok(true)
}
