//! Task execution: turns a validated job into a [`Report`] and an exit status.

use negbound_core::bounds::{
    anticanonical_report, blowup_bound, family_report, hao_report, BoundInputs, BoundReport,
    HaoCase,
};
use negbound_core::enumeration::{
    degree_cutoff, enumerate_classes, minus_one_classes, rational_curves, spot_check_classes,
    verify_bounds, CurveClassQuery, MAX_DEL_PEZZO_POINTS,
};
use negbound_core::riemann_roch::arithmetic_genus;
use negbound_core::zariski::{zariski_decompose, CandidateCurveSet};
use negbound_core::{DivisorClass, Rational, SurfaceKind, SurfaceModel};
use serde::Serialize;

use crate::config::{AutoOr, JobConfig, Task};
use crate::error::{CliError, ConfigError, EXIT_OK, EXIT_VERIFY_FAILED};
use crate::report::{class_expr, coords, discrepancies_for, ratio, Report, Row, SurfaceSummary};

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: Report,
    pub exit_code: i32,
}

#[derive(Serialize)]
struct BoundRow {
    curve: Option<String>,
    curve_expr: Option<String>,
    c_dot_h: i64,
    pg: i64,
    bound_kind: &'static str,
    case_tag: &'static str,
    #[serde(rename = "L")]
    l: Option<String>,
    #[serde(rename = "M")]
    m: Option<String>,
    #[serde(rename = "N")]
    n: Option<String>,
    bound: String,
    witnessed_c2: Option<i64>,
    satisfied: Option<bool>,
    assumed: String,
}

#[derive(Serialize)]
struct ZariskiRow {
    divisor: String,
    divisor_expr: String,
    positive: String,
    positive_expr: String,
    negative: String,
    support: String,
    p_squared: String,
    d_squared: String,
}

#[derive(Serialize)]
struct EnumerateRow {
    index: usize,
    class: String,
    expr: String,
    degree: String,
    self_int: String,
    k_dot: String,
    pa: String,
}

#[derive(Serialize)]
struct FamilyRow {
    chi: i64,
    k2: i64,
    c2: i64,
    l: i64,
    pg: i64,
    bound_kind: &'static str,
    bound: String,
    assumed: String,
}

fn to_row(value: impl Serialize) -> Row {
    match serde_json::to_value(value).expect("row serializes") {
        serde_json::Value::Object(map) => map,
        _ => unreachable!("rows are structs"),
    }
}

fn bound_row(
    surface: Option<&SurfaceModel>,
    curve: Option<&DivisorClass>,
    inp: &BoundInputs,
    r: &BoundReport,
) -> Row {
    to_row(BoundRow {
        curve: curve.map(coords),
        curve_expr: curve
            .zip(surface)
            .map(|(c, s)| class_expr(s.lattice().labels(), c)),
        c_dot_h: inp.c_dot_h,
        pg: inp.pg,
        bound_kind: r.kind.tag(),
        case_tag: r.case.tag(),
        l: r.l.as_ref().map(ratio),
        m: r.m.as_ref().map(ratio),
        n: r.n.as_ref().map(ratio),
        bound: ratio(&r.bound),
        witnessed_c2: r.witnessed_c2,
        satisfied: r.satisfied,
        assumed: r.assumed.join("; "),
    })
}

fn to_i64(q: &Rational, what: &str) -> Result<i64, CliError> {
    if !q.is_integer() {
        return Err(CliError::Invariant(format!(
            "{what} is not an integer: {}",
            ratio(q)
        )));
    }
    i64::try_from(q.to_integer()).map_err(|_| CliError::Invariant(format!("{what} out of range")))
}

/// Runs `task` on an already parsed job.
pub fn run(cfg: &JobConfig, task: Task) -> Result<Outcome, CliError> {
    cfg.validate_for(task)?;
    let surface = if cfg.surface.is_some() {
        Some(cfg.build_surface()?)
    } else {
        None
    };
    let (rows, failed) = match task {
        Task::Bound => run_bound(cfg, surface.as_ref().expect("validated"))?,
        Task::Zariski => (
            run_zariski(cfg, surface.as_ref().expect("validated"))?,
            false,
        ),
        Task::Enumerate => (
            run_enumerate(cfg, surface.as_ref().expect("validated"))?,
            false,
        ),
        Task::Verify => run_verify(cfg, surface.as_ref().expect("validated"))?,
        Task::Family => (run_family(cfg, surface.as_ref())?, false),
    };
    let report = Report {
        surface: surface.as_ref().map(SurfaceSummary::of),
        task: task.name().to_string(),
        rows,
        discrepancies: surface.as_ref().map(discrepancies_for).unwrap_or_default(),
    };
    Ok(Outcome {
        report,
        exit_code: if failed { EXIT_VERIFY_FAILED } else { EXIT_OK },
    })
}

fn run_bound(cfg: &JobConfig, s: &SurfaceModel) -> Result<(Vec<Row>, bool), CliError> {
    let spec = cfg.bound.clone().unwrap_or_default();
    let pg = spec.pg.unwrap_or(0);
    let mut rows = Vec::new();
    let mut failed = false;
    let zero = DivisorClass::zero(s.rank());
    for value in spec.cdot_h.map(|c| c.values()).unwrap_or_default() {
        let mut inp = BoundInputs::for_curve(s, &zero)?;
        inp.c_dot_h = value;
        inp.pg = pg;
        let r = blowup_bound(&inp)?;
        rows.push(bound_row(Some(s), None, &inp, &r));
    }
    for (i, c) in spec.curves.unwrap_or_default().iter().enumerate() {
        let c = cfg.class(s, c, &format!("bound.curves[{i}]"))?;
        let mut inp = BoundInputs::for_curve(s, &c)?;
        inp.pg = pg;
        let c2 = to_i64(&s.intersect(&c, &c)?, "C^2")?;
        let r = blowup_bound(&inp)?.with_witness(c2);
        failed |= r.satisfied == Some(false);
        rows.push(bound_row(Some(s), Some(&c), &inp, &r));
    }
    Ok((rows, failed))
}

/// Candidate curves used when a job asks for `"auto"`, with their completeness.
pub fn auto_curves(s: &SurfaceModel) -> Result<(Vec<DivisorClass>, bool), CliError> {
    match s.kind() {
        SurfaceKind::ProjectivePlane if s.n_blowups() <= MAX_DEL_PEZZO_POINTS => {
            if s.n_blowups() == 0 {
                Ok((Vec::new(), true))
            } else {
                Ok((minus_one_classes(s)?, true))
            }
        }
        SurfaceKind::Hirzebruch { .. } | SurfaceKind::Ruled { .. } => {
            Ok((spot_check_classes(s)?, false))
        }
        _ => Err(ConfigError::general(format!(
            "no automatic curve set for {} with {} blow-ups; list the classes explicitly",
            s.kind().name(),
            s.n_blowups()
        ))
        .into()),
    }
}

fn explicit_or_auto(
    cfg: &JobConfig,
    s: &SurfaceModel,
    value: Option<&AutoOr>,
    path: &str,
) -> Result<(Vec<DivisorClass>, Option<bool>), CliError> {
    match value {
        None | Some(AutoOr::Auto(_)) => auto_curves(s).map(|(c, complete)| (c, Some(complete))),
        Some(AutoOr::Explicit(list)) => {
            let mut out = Vec::with_capacity(list.len());
            for (i, c) in list.iter().enumerate() {
                out.push(cfg.class(s, c, &format!("{path}[{i}]"))?);
            }
            Ok((out, None))
        }
    }
}

fn run_zariski(cfg: &JobConfig, s: &SurfaceModel) -> Result<Vec<Row>, CliError> {
    let spec = cfg.zariski.clone().unwrap_or_default();
    let (curves, auto_complete) =
        explicit_or_auto(cfg, s, spec.candidates.as_ref(), "zariski.candidates")?;
    let complete = spec.complete.or(auto_complete).unwrap_or(false);
    let candidates = CandidateCurveSet::new(s, curves, complete)?;
    let mut divisors = Vec::new();
    if let Some(d) = &spec.divisor {
        divisors.push(cfg.class(s, d, "zariski.divisor")?);
    }
    for (i, d) in spec.divisors.iter().flatten().enumerate() {
        divisors.push(cfg.class(s, d, &format!("zariski.divisors[{i}]"))?);
    }
    let labels = s.lattice().labels();
    let mut rows = Vec::with_capacity(divisors.len());
    for d in &divisors {
        let z = zariski_decompose(s, d, &candidates)?;
        let broken = z.violations(s, d, &candidates)?;
        if !broken.is_empty() {
            return Err(CliError::Invariant(format!(
                "decomposition of {} fails {broken:?}",
                coords(d)
            )));
        }
        let negative: Vec<String> = z
            .coefficient_map()
            .map(|(i, a)| {
                format!(
                    "{}: {}",
                    class_expr(labels, &candidates.curves()[i]),
                    ratio(a)
                )
            })
            .collect();
        let support: Vec<String> = z.support().iter().map(usize::to_string).collect();
        rows.push(to_row(ZariskiRow {
            divisor: coords(d),
            divisor_expr: class_expr(labels, d),
            positive: coords(z.positive()),
            positive_expr: class_expr(labels, z.positive()),
            negative: negative.join("; "),
            support: support.join(" "),
            p_squared: ratio(&s.intersect(z.positive(), z.positive())?),
            d_squared: ratio(&s.intersect(d, d)?),
        }));
    }
    Ok(rows)
}

fn run_enumerate(cfg: &JobConfig, s: &SurfaceModel) -> Result<Vec<Row>, CliError> {
    let spec = cfg.enumerate.clone().unwrap_or_default();
    let self_int = spec.self_int.unwrap_or(-1);
    let k_dot = spec.k_dot.unwrap_or(-1);
    let max_degree = match spec.max_degree {
        Some(d) => u32::try_from(d)
            .map_err(|_| ConfigError::field("enumerate.max_degree", "out of range"))?,
        // Out-of-range surfaces are rejected by the enumerator itself.
        None if s.n_blowups() <= MAX_DEL_PEZZO_POINTS => {
            degree_cutoff(s.n_blowups(), self_int, k_dot)
                .unwrap_or(0)
                .max(1)
        }
        None => 1,
    };
    let query = CurveClassQuery {
        surface: s,
        self_int,
        k_dot,
        max_degree,
    };
    let labels = s.lattice().labels();
    let mut rows = Vec::new();
    for (index, c) in enumerate_classes(&query)?.iter().enumerate() {
        rows.push(to_row(EnumerateRow {
            index,
            class: coords(c),
            expr: class_expr(labels, c),
            degree: ratio(&s.intersect(c, s.polarization())?),
            self_int: ratio(&s.intersect(c, c)?),
            k_dot: ratio(&s.intersect(s.canonical(), c)?),
            pa: ratio(&arithmetic_genus(s, c)?),
        }));
    }
    Ok(rows)
}

fn run_verify(cfg: &JobConfig, s: &SurfaceModel) -> Result<(Vec<Row>, bool), CliError> {
    let spec = cfg.verify.clone().unwrap_or_default();
    let (curves, _) = explicit_or_auto(cfg, s, spec.curves.as_ref(), "verify.curves")?;
    let run = match spec.pg {
        Some(pg) => verify_bounds(s, &curves, |_| pg)?,
        None => verify_bounds(s, &curves, rational_curves)?,
    };
    let mut rows = Vec::with_capacity(curves.len());
    for (c, r) in run.curves.iter().zip(&run.reports) {
        let mut inp = BoundInputs::for_curve(s, c)?;
        inp.pg = spec.pg.unwrap_or(0);
        rows.push(bound_row(Some(s), Some(c), &inp, r));
    }
    Ok((rows, !run.failures.is_empty()))
}

fn run_family(cfg: &JobConfig, s: Option<&SurfaceModel>) -> Result<Vec<Row>, CliError> {
    let spec = cfg.family.clone().unwrap_or_default();
    let (chi, k2, c2) = match (spec.chi, spec.k2, spec.c2, s) {
        (Some(chi), Some(k2), Some(c2), _) => (chi, k2, c2),
        (_, _, _, Some(s)) => (s.chi(), to_i64(&s.k_squared(), "K^2")?, s.c2()),
        _ => {
            return Err(ConfigError::field(
                "family",
                "fibre invariants need chi, k2, c2 or a [surface]",
            )
            .into())
        }
    };
    let l = spec.l.expect("validated");
    let pgs = spec.pg.map(|p| p.values()).unwrap_or_else(|| vec![0]);
    let mut rows = Vec::new();
    for pg in pgs {
        let mut reports = vec![anticanonical_report(chi, k2, l)?];
        for case in [
            HaoCase::EffectiveAnticanonical,
            HaoCase::NoBicanonicalTwist,
            HaoCase::BicanonicalTwist,
        ] {
            reports.push(hao_report(case, chi, k2, c2, pg)?);
        }
        reports.push(family_report(chi, k2, c2, l, pg)?);
        for r in reports {
            rows.push(to_row(FamilyRow {
                chi,
                k2,
                c2,
                l,
                pg,
                bound_kind: r.kind.tag(),
                bound: ratio(&r.bound),
                assumed: r.assumed.join("; "),
            }));
        }
    }
    Ok(rows)
}
