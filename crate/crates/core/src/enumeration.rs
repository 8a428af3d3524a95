//! Enumeration of negative curve classes on del Pezzo blow-ups of P^2 and
//! batch verification of the blow-up bounds against them.
//!
//! On `Bl_n P^2` a class is `C = dH - sum m_i E_i`. With `K = -3H + sum E_i`
//! the query constraints become
//!
//! ```text
//! sum m_i   = K.C + 3d
//! sum m_i^2 = d^2 - C.C
//! ```
//!
//! and Cauchy-Schwarz `(sum m_i)^2 <= n sum m_i^2` bounds `d` whenever
//! `n < 9`. For `(-1)`-classes this reads `(3d - 1)^2 <= n (d^2 + 1)`, i.e.
//! `(9 - n) d^2 - 6d + 1 - n <= 0`, which for `n = 8` gives `d <= 7`.

use alloc::format;
use alloc::vec::Vec;

use crate::bounds::{blowup_bound, BoundInputs, BoundReport};
use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, SurfaceKind, SurfaceModel};
use crate::riemann_roch::integral_arithmetic_genus;

/// Largest `n` for which `Bl_n P^2` has finitely many negative curves.
pub const MAX_DEL_PEZZO_POINTS: u32 = 8;

#[derive(Debug, Clone, Copy)]
pub struct CurveClassQuery<'a> {
    pub surface: &'a SurfaceModel,
    pub self_int: i64,
    pub k_dot: i64,
    /// Inclusive cutoff on `d = C.H`.
    pub max_degree: u32,
}

impl<'a> CurveClassQuery<'a> {
    /// `(-1)`-curve query with the Cauchy-Schwarz degree cutoff.
    pub fn minus_one_curves(surface: &'a SurfaceModel) -> Result<Self> {
        check_del_pezzo(surface)?;
        let max_degree = degree_cutoff(surface.n_blowups(), -1, -1)
            .unwrap_or(0)
            .max(1);
        Ok(Self {
            surface,
            self_int: -1,
            k_dot: -1,
            max_degree,
        })
    }
}

fn check_del_pezzo(surface: &SurfaceModel) -> Result<()> {
    if surface.kind() != &SurfaceKind::ProjectivePlane {
        return Err(Error::UnsupportedSurface {
            reason: format!(
                "enumeration needs a blow-up of P^2, got {}",
                surface.kind().name()
            ),
        });
    }
    if surface.n_blowups() > MAX_DEL_PEZZO_POINTS {
        return Err(Error::UnsupportedSurface {
            reason: format!(
                "Bl_{} P^2 has infinitely many negative curves",
                surface.n_blowups()
            ),
        });
    }
    Ok(())
}

/// Largest `d >= 0` allowed by `(K.C + 3d)^2 <= n (d^2 - C.C)`, or `None`
/// if no degree is. Requires `n < 9`.
pub fn degree_cutoff(n: u32, self_int: i64, k_dot: i64) -> Option<u32> {
    assert!(n < 9, "cutoff is unbounded for n >= 9");
    let n = i64::from(n);
    let feasible = |d: i64| {
        let s = k_dot + 3 * d;
        let q = d * d - self_int;
        s >= 0 && q >= 0 && s * s <= n * q
    };
    // (9 - n) d^2 + 6 k d + k^2 + n C^2 opens upward; past the vertex the
    // first failure is final.
    let vertex = (-6 * k_dot).max(0) / (2 * (9 - n)) + 1;
    let mut last = None;
    let mut d = 0;
    loop {
        if feasible(d) {
            last = Some(d as u32);
        } else if d > vertex {
            return last;
        }
        d += 1;
    }
}

/// All classes `dH - sum m_i E_i` with `1 <= d <= max_degree`, `m_i >= 0`,
/// together with the exceptional classes `E_i` when they match, satisfying
/// `C.C = self_int` and `K.C = k_dot`. Sorted lexicographically by
/// coordinates; duplicate-free.
pub fn enumerate_classes(q: &CurveClassQuery<'_>) -> Result<Vec<DivisorClass>> {
    let surface = q.surface;
    check_del_pezzo(surface)?;
    if q.max_degree < 1 {
        return Err(Error::InvalidParameter {
            name: "max_degree",
            reason: "must be >= 1".into(),
        });
    }
    let n = surface.n_blowups() as usize;
    let mut out: Vec<Vec<i64>> = Vec::new();
    if q.self_int == -1 && q.k_dot == -1 {
        for i in 0..n {
            let mut v = alloc::vec![0i64; n + 1];
            v[i + 1] = 1;
            out.push(v);
        }
    }
    let mut m = alloc::vec![0i64; n];
    for d in 1..=i64::from(q.max_degree) {
        let sum = q.k_dot + 3 * d;
        let squares = d * d - q.self_int;
        if sum < 0 || squares < 0 {
            continue;
        }
        fill(&mut m, 0, sum, squares, &mut |m| {
            let mut v = Vec::with_capacity(n + 1);
            v.push(d);
            v.extend(m.iter().map(|x| -x));
            out.push(v);
        });
    }
    out.sort();
    out.dedup();
    Ok(out.iter().map(|v| DivisorClass::from_ints(v)).collect())
}

/// Assigns `m[at..]` with non-negative entries of total `sum` and square
/// total `squares`.
fn fill(m: &mut [i64], at: usize, sum: i64, squares: i64, emit: &mut dyn FnMut(&[i64])) {
    let left = (m.len() - at) as i64;
    if left == 0 {
        if sum == 0 && squares == 0 {
            emit(m);
        }
        return;
    }
    // Non-negative integers: x <= x^2, and Cauchy-Schwarz on what remains.
    if sum < 0 || squares < 0 || sum > squares || sum * sum > left * squares {
        return;
    }
    let mut x = 0;
    while x <= sum && x * x <= squares {
        m[at] = x;
        fill(m, at + 1, sum - x, squares - x * x, emit);
        x += 1;
    }
    m[at] = 0;
}

/// The `(-1)`-classes of `Bl_n P^2`, `n <= 8`.
pub fn minus_one_classes(surface: &SurfaceModel) -> Result<Vec<DivisorClass>> {
    enumerate_classes(&CurveClassQuery::minus_one_curves(surface)?)
}

/// Known negative curves on a blow-up of a Hirzebruch or ruled surface: the
/// section `C0`, the exceptional classes `E_i`, and the strict transforms
/// `f - E_i` of fibres through the blown-up points.
pub fn spot_check_classes(surface: &SurfaceModel) -> Result<Vec<DivisorClass>> {
    match surface.kind() {
        SurfaceKind::Hirzebruch { .. } | SurfaceKind::Ruled { .. } => {}
        other => {
            return Err(Error::UnsupportedSurface {
                reason: format!(
                    "spot checks are defined for ruled surfaces, got {}",
                    other.name()
                ),
            })
        }
    }
    let fibre = surface.basis_class(1);
    let mut out = alloc::vec![surface.basis_class(0)];
    for i in 1..=surface.n_blowups() as usize {
        out.push(surface.exceptional(i).expect("in range"));
    }
    for i in 1..=surface.n_blowups() as usize {
        out.push(&fibre - &surface.exceptional(i).expect("in range"));
    }
    Ok(out)
}

/// Bound reports for a batch of curve classes on one surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationRun {
    pub curves: Vec<DivisorClass>,
    pub reports: Vec<BoundReport>,
    /// Indices into `curves` whose self-intersection violates the bound.
    pub failures: Vec<usize>,
}

/// Evaluates the blow-up bound matching the surface's `chi` on every curve and
/// compares it with the curve's actual self-intersection.
pub fn verify_bounds(
    surface: &SurfaceModel,
    curves: &[DivisorClass],
    pg_map: impl Fn(&DivisorClass) -> i64,
) -> Result<VerificationRun> {
    let mut reports = Vec::with_capacity(curves.len());
    let mut failures = Vec::new();
    for (index, c) in curves.iter().enumerate() {
        match integral_arithmetic_genus(surface, c)? {
            Some(pa) if pa >= 0 => {}
            _ => {
                return Err(Error::InvalidCurve {
                    index,
                    reason: "arithmetic genus is not a non-negative integer".into(),
                })
            }
        }
        let mut inputs = BoundInputs::for_curve(surface, c)?;
        inputs.pg = pg_map(c);
        let c2 = surface.intersect(c, c)?;
        let c2 = i64::try_from(c2.to_integer()).map_err(|_| Error::InvalidCurve {
            index,
            reason: "self-intersection out of range".into(),
        })?;
        let report = blowup_bound(&inputs)?.with_witness(c2);
        if report.satisfied == Some(false) {
            failures.push(index);
        }
        reports.push(report);
    }
    Ok(VerificationRun {
        curves: curves.to_vec(),
        reports,
        failures,
    })
}

/// Default genus map: `(-1)`-curves are rational.
pub fn rational_curves(_: &DivisorClass) -> i64 {
    0
}
