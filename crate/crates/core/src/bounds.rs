//! Lower bounds on the self-intersection of integral curves.
//!
//! Every bound is an exact rational. Hypotheses the lattice model cannot
//! check (effectivity of `-K_X`, very-ampleness of `L`, vanishing of
//! particular section spaces) are recorded in the report as caller
//! assertions rather than verified.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, SurfaceModel};
use crate::{rat, Rational};

pub const HYP_ANTICANONICAL_EFFECTIVE: &str = "-K_X is effective";
pub const HYP_POLARIZATION_VERY_AMPLE: &str = "L is very ample on the base surface";
pub const HYP_CURVE_INTEGRAL: &str = "C is an integral curve";
pub const HYP_ANTICANONICAL_SECTIONS: &str = "h0(-K_X) > 0";
pub const HYP_NO_ANTICANONICAL_SECTIONS: &str = "h0(-K_X) = 0";
pub const HYP_NO_BICANONICAL_TWIST: &str = "h0(2(K_X + C)) = 0";
pub const HYP_BICANONICAL_TWIST: &str = "h0(2(K_X + C)) != 0";
pub const HYP_FIBRE_SECTIONS_BOUNDED: &str = "h0(-K) <= l on every smooth fibre";

/// Numerical data a bound formula reads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundInputs {
    /// `C.H`
    pub c_dot_h: i64,
    /// `-K_X.L`
    pub a0: i64,
    /// `H.H`
    pub h2: i64,
    /// `K_X^2` of the base surface, before blowing up.
    pub k2_base: i64,
    /// Number of blown-up points.
    pub n: i64,
    pub chi: i64,
    pub c2: i64,
    pub pg: i64,
    /// `h0(-K_X)` or an upper bound `l` for it.
    pub h0_anti_k: i64,
}

impl BoundInputs {
    pub fn validate(&self) -> Result<()> {
        let check = |ok: bool, name: &'static str, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::InvalidParameter {
                    name,
                    reason: what.to_string(),
                })
            }
        };
        check(self.a0 > 0, "a0", "must be positive")?;
        check(self.h2 > 0, "h2", "must be positive")?;
        check(self.c_dot_h >= 0, "c_dot_h", "must be non-negative")?;
        check(self.n >= 0, "n", "must be non-negative")?;
        check(self.pg >= 0, "pg", "must be non-negative")?;
        check(self.h0_anti_k >= 0, "h0_anti_k", "must be non-negative")
    }

    /// Reads the data for curve `c` off a surface model. `H` is the model's
    /// polarization and the base `K^2` is recovered as `K^2 + n`.
    pub fn for_curve(surface: &SurfaceModel, c: &DivisorClass) -> Result<Self> {
        let int = |q: Rational, what: &'static str| -> Result<i64> {
            if !q.is_integer() {
                return Err(Error::NotIntegral { what });
            }
            i64::try_from(q.to_integer()).map_err(|_| Error::InvalidParameter {
                name: what,
                reason: "out of range".to_string(),
            })
        };
        Ok(Self {
            c_dot_h: int(surface.intersect(c, surface.polarization())?, "C.H")?,
            a0: int(surface.a0(), "a0")?,
            h2: int(surface.polarization_square(), "H^2")?,
            k2_base: int(surface.base_k_squared(), "K^2")?,
            n: i64::from(surface.n_blowups()),
            chi: surface.chi(),
            c2: surface.c2(),
            pg: 0,
            h0_anti_k: 0,
        })
    }
}

/// Which bound a report came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundKind {
    /// Blow-ups of a base with `chi(O_X) >= 1`.
    BlowupPositiveChi,
    /// Blow-ups of a base with `chi(O_X) < 1`.
    BlowupNonPositiveChi,
    /// Surfaces with `h0(-K_X) > 0`.
    Anticanonical,
    HaoCase1,
    HaoCase21,
    HaoCase22,
    /// Vertical curves in a family of surfaces.
    Family,
}

impl BoundKind {
    pub const ALL: [BoundKind; 7] = [
        BoundKind::BlowupPositiveChi,
        BoundKind::BlowupNonPositiveChi,
        BoundKind::Anticanonical,
        BoundKind::HaoCase1,
        BoundKind::HaoCase21,
        BoundKind::HaoCase22,
        BoundKind::Family,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            BoundKind::BlowupPositiveChi => "blowup_chi_ge_1",
            BoundKind::BlowupNonPositiveChi => "blowup_chi_lt_1",
            BoundKind::Anticanonical => "anticanonical",
            BoundKind::HaoCase1 => "hao_case1",
            BoundKind::HaoCase21 => "hao_case21",
            BoundKind::HaoCase22 => "hao_case22",
            BoundKind::Family => "family",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.tag() == tag)
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Branch of the `K_X^2` versus `n` split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseTag {
    K2LeN,
    K2GtN,
    NotApplicable,
}

impl CaseTag {
    pub const ALL: [CaseTag; 3] = [CaseTag::K2LeN, CaseTag::K2GtN, CaseTag::NotApplicable];

    pub fn tag(self) -> &'static str {
        match self {
            CaseTag::K2LeN => "k2_le_n",
            CaseTag::K2GtN => "k2_gt_n",
            CaseTag::NotApplicable => "not_applicable",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.tag() == tag)
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub case: CaseTag,
    pub l: Option<Rational>,
    pub m: Option<Rational>,
    pub n: Option<Rational>,
    pub bound: Rational,
    pub witnessed_c2: Option<i64>,
    pub satisfied: Option<bool>,
    /// Hypotheses the caller asserts and the model does not check.
    pub assumed: Vec<&'static str>,
}

impl BoundReport {
    fn plain(kind: BoundKind, bound: Rational, assumed: Vec<&'static str>) -> Self {
        Self {
            kind,
            case: CaseTag::NotApplicable,
            l: None,
            m: None,
            n: None,
            bound,
            witnessed_c2: None,
            satisfied: None,
            assumed,
        }
    }

    /// Attaches a known self-intersection and records whether it obeys the bound.
    pub fn with_witness(mut self, c2: i64) -> Self {
        self.witnessed_c2 = Some(c2);
        self.satisfied = Some(rat(c2) >= self.bound);
        self
    }

    /// `C^2 - bound` when a witness is attached.
    pub fn slack(&self) -> Option<Rational> {
        self.witnessed_c2.map(|c2| rat(c2) - &self.bound)
    }
}

/// Smallest positive `m` with `C.H - a0 m <= -1`, i.e. with
/// `(mK + C).H <= -1` on a blow-up where `K.H = -a0`.
pub fn min_canonical_twist(c_dot_h: u64, a0: u64) -> u64 {
    assert!(a0 > 0, "a0 must be positive");
    // ceil((C.H + 1) / a0), never below 1
    ((c_dot_h + 1).div_ceil(a0)).max(1)
}

fn minimum(values: &[&Rational]) -> Rational {
    values.iter().copied().min().expect("non-empty").clone()
}

fn blowup_terms(inp: &BoundInputs, chi_shift: bool) -> (Rational, Rational, Rational) {
    let k2n = rat(inp.k2_base - inp.n);
    let a0 = rat(inp.a0);
    let h2 = rat(inp.h2);
    let chi = rat(inp.chi);
    let cdh = rat(inp.c_dot_h);
    let (offset, m_tail) = if chi_shift {
        (chi.clone() - rat(4), (&a0 * &cdh + &chi - rat(1)) / &h2)
    } else {
        (rat(-3), &a0 * &cdh / &h2)
    };
    let two_a0 = rat(2) * &a0;
    let l = (&cdh + &a0) / &two_a0 * &k2n + &offset;
    let n = (&cdh + rat(1)) / &two_a0 * &k2n + &offset;
    let m = (&h2 + rat(1)) * &k2n / rat(2) - &a0 * &a0 - rat(3) + m_tail;
    (l, m, n)
}

fn case_report(
    kind: BoundKind,
    inp: &BoundInputs,
    (l, m, n): (Rational, Rational, Rational),
) -> BoundReport {
    // Ties K^2 = n fall in the first branch.
    let (case, bound, l, n) = if inp.k2_base <= inp.n {
        let b = minimum(&[&l, &m]);
        (CaseTag::K2LeN, b, Some(l), None)
    } else {
        let b = minimum(&[&m, &n]);
        (CaseTag::K2GtN, b, None, Some(n))
    };
    BoundReport {
        kind,
        case,
        l,
        m: Some(m),
        n,
        bound,
        witnessed_c2: None,
        satisfied: None,
        assumed: vec![
            HYP_ANTICANONICAL_EFFECTIVE,
            HYP_POLARIZATION_VERY_AMPLE,
            HYP_CURVE_INTEGRAL,
        ],
    }
}

/// Bound for integral curves on `Bl_n X` when `chi(O_X) >= 1`.
///
/// Case `K^2 <= n`: `min{L, M}`; case `K^2 > n`: `min{M, N}` with
///
/// * `L = (C.H + a0)/(2 a0) (K^2 - n) - 3`
/// * `N = (C.H + 1)/(2 a0) (K^2 - n) - 3`
/// * `M = (H^2 + 1)(K^2 - n)/2 - a0^2 - 3 + a0 C.H / H^2`
pub fn blowup_bound_positive_chi(inp: &BoundInputs) -> Result<BoundReport> {
    inp.validate()?;
    if inp.chi < 1 {
        return Err(Error::WrongEvaluator {
            chi: inp.chi,
            use_instead: "blowup_bound_nonpositive_chi",
        });
    }
    Ok(case_report(
        BoundKind::BlowupPositiveChi,
        inp,
        blowup_terms(inp, false),
    ))
}

/// Bound for integral curves on `Bl_n X` when `chi(O_X) < 1`. Same case split
/// as [`blowup_bound_positive_chi`], with
///
/// * `L = chi + (C.H + a0)/(2 a0) (K^2 - n) - 4`
/// * `N = chi + (C.H + 1)/(2 a0) (K^2 - n) - 4`
/// * `M = (H^2 + 1)(K^2 - n)/2 - a0^2 - 3 + (a0 C.H + chi - 1) / H^2`
pub fn blowup_bound_nonpositive_chi(inp: &BoundInputs) -> Result<BoundReport> {
    inp.validate()?;
    if inp.chi >= 1 {
        return Err(Error::WrongEvaluator {
            chi: inp.chi,
            use_instead: "blowup_bound_positive_chi",
        });
    }
    Ok(case_report(
        BoundKind::BlowupNonPositiveChi,
        inp,
        blowup_terms(inp, true),
    ))
}

/// Picks the blow-up evaluator matching the sign of `chi - 1`.
pub fn blowup_bound(inp: &BoundInputs) -> Result<BoundReport> {
    if inp.chi >= 1 {
        blowup_bound_positive_chi(inp)
    } else {
        blowup_bound_nonpositive_chi(inp)
    }
}

/// `min{-2, chi + K^2 - h0(-K) - 3}` for surfaces with `h0(-K) > 0`.
pub fn anticanonical_bound(chi: i64, k2: i64, h0_anti_k: i64) -> Result<Rational> {
    if h0_anti_k < 1 {
        return Err(Error::InvalidParameter {
            name: "h0_anti_k",
            reason: format!("needs h0(-K) >= 1, got {h0_anti_k}"),
        });
    }
    Ok(rat(-2).min(rat(chi + k2 - h0_anti_k - 3)))
}

pub fn anticanonical_report(chi: i64, k2: i64, h0_anti_k: i64) -> Result<BoundReport> {
    let b = anticanonical_bound(chi, k2, h0_anti_k)?;
    Ok(BoundReport::plain(
        BoundKind::Anticanonical,
        b,
        vec![HYP_ANTICANONICAL_SECTIONS, HYP_CURVE_INTEGRAL],
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HaoCase {
    /// `h0(-K) != 0`: `C^2 >= -2` away from finitely many components of `|-K|`.
    EffectiveAnticanonical,
    /// `h0(-K) = 0`, `h0(2(K + C)) = 0`: `C^2 >= K^2 + chi - 3`.
    NoBicanonicalTwist,
    /// `h0(-K) = 0`, `h0(2(K + C)) != 0`: `C^2 >= K^2 - 3 c2 + 2 - 2 pg`.
    BicanonicalTwist,
}

impl HaoCase {
    pub fn from_tag(tag: &str) -> Result<Self> {
        match tag {
            "case1" => Ok(HaoCase::EffectiveAnticanonical),
            "case21" => Ok(HaoCase::NoBicanonicalTwist),
            "case22" => Ok(HaoCase::BicanonicalTwist),
            other => Err(Error::InvalidParameter {
                name: "case",
                reason: format!("unknown case `{other}`"),
            }),
        }
    }

    pub fn kind(self) -> BoundKind {
        match self {
            HaoCase::EffectiveAnticanonical => BoundKind::HaoCase1,
            HaoCase::NoBicanonicalTwist => BoundKind::HaoCase21,
            HaoCase::BicanonicalTwist => BoundKind::HaoCase22,
        }
    }
}

pub fn hao_bound(case: HaoCase, chi: i64, k2: i64, c2: i64, pg: i64) -> Result<Rational> {
    match case {
        HaoCase::EffectiveAnticanonical => Ok(rat(-2)),
        HaoCase::NoBicanonicalTwist => Ok(rat(k2 + chi - 3)),
        HaoCase::BicanonicalTwist => {
            if pg < 0 {
                return Err(Error::InvalidParameter {
                    name: "pg",
                    reason: "must be non-negative".to_string(),
                });
            }
            Ok(rat(k2 - 3 * c2 + 2 - 2 * pg))
        }
    }
}

pub fn hao_report(case: HaoCase, chi: i64, k2: i64, c2: i64, pg: i64) -> Result<BoundReport> {
    let b = hao_bound(case, chi, k2, c2, pg)?;
    let assumed = match case {
        HaoCase::EffectiveAnticanonical => vec![HYP_ANTICANONICAL_SECTIONS, HYP_CURVE_INTEGRAL],
        HaoCase::NoBicanonicalTwist => vec![
            HYP_NO_ANTICANONICAL_SECTIONS,
            HYP_NO_BICANONICAL_TWIST,
            HYP_CURVE_INTEGRAL,
        ],
        HaoCase::BicanonicalTwist => vec![
            HYP_NO_ANTICANONICAL_SECTIONS,
            HYP_BICANONICAL_TWIST,
            HYP_CURVE_INTEGRAL,
        ],
    };
    Ok(BoundReport::plain(case.kind(), b, assumed))
}

/// Bound for vertical curves of geometric genus `pg` lying in a smooth fibre
/// with invariants `(chi, K^2, c2)`, when `h0(-K) <= l` on all smooth fibres:
///
/// `min{-2, chi + K^2 - 3 - l, K^2 + chi - 3, K^2 - 3 c2 + 2 - 2 pg}`.
pub fn family_bound(chi: i64, k2: i64, c2: i64, l: i64, pg: i64) -> Result<Rational> {
    if l < 1 {
        return Err(Error::InvalidParameter {
            name: "l",
            reason: format!("must be >= 1, got {l}"),
        });
    }
    if pg < 0 {
        return Err(Error::InvalidParameter {
            name: "pg",
            reason: format!("must be >= 0, got {pg}"),
        });
    }
    let terms = [
        rat(-2),
        rat(chi + k2 - 3 - l),
        rat(k2 + chi - 3),
        rat(k2 - 3 * c2 + 2 - 2 * pg),
    ];
    Ok(terms.into_iter().min().expect("four terms"))
}

pub fn family_report(chi: i64, k2: i64, c2: i64, l: i64, pg: i64) -> Result<BoundReport> {
    let b = family_bound(chi, k2, c2, l, pg)?;
    Ok(BoundReport::plain(
        BoundKind::Family,
        b,
        vec![HYP_FIBRE_SECTIONS_BOUNDED, HYP_CURVE_INTEGRAL],
    ))
}

/// `true` iff `bound` is attained or exceeded by an actual self-intersection.
pub fn obeys(c2: i64, bound: &Rational) -> bool {
    !(rat(c2) - bound).is_negative()
}
