//! Report model and its three renderings (table, csv, json).
//!
//! Rationals are always written as canonical `p/q` strings with `q > 0`, even
//! when `q = 1`. Rows are flat maps of scalars with a fixed key order, so the
//! csv and json renderings carry exactly the same cells.

use std::fmt::Write as _;

use negbound_core::{DivisorClass, Rational, SurfaceKind, SurfaceModel};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::config::Format;

pub type Row = Map<String, Value>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceSummary {
    pub kind: String,
    pub parameters: Map<String, Value>,
    pub n_blowups: u32,
    pub basis: Vec<String>,
    pub chi: i64,
    pub c2: i64,
    pub k2: String,
    pub base_k2: String,
    pub a0: String,
    pub h2: String,
    pub canonical: String,
    pub polarization: String,
}

impl SurfaceSummary {
    pub fn of(s: &SurfaceModel) -> Self {
        let mut parameters = Map::new();
        match s.kind() {
            SurfaceKind::Hirzebruch { e } => {
                parameters.insert("e".into(), (*e).into());
            }
            SurfaceKind::Ruled {
                genus,
                twist_degree,
            } => {
                parameters.insert("g".into(), (*genus).into());
                parameters.insert("deg_l".into(), (*twist_degree).into());
            }
            SurfaceKind::ProjectivePlane | SurfaceKind::Custom => {}
        }
        Self {
            kind: s.kind().name().to_string(),
            parameters,
            n_blowups: s.n_blowups(),
            basis: s.lattice().labels().to_vec(),
            chi: s.chi(),
            c2: s.c2(),
            k2: ratio(&s.k_squared()),
            base_k2: ratio(&s.base_k_squared()),
            a0: ratio(&s.a0()),
            h2: ratio(&s.polarization_square()),
            canonical: class_expr(s.lattice().labels(), s.canonical()),
            polarization: class_expr(s.lattice().labels(), s.polarization()),
        }
    }
}

/// A published value that disagrees with what the implementation computes or uses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub id: String,
    pub quantity: String,
    pub stated: String,
    pub computed: String,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub surface: Option<SurfaceSummary>,
    pub task: String,
    pub rows: Vec<Row>,
    pub discrepancies: Vec<Discrepancy>,
}

/// Discrepancies between published formulas and the computed model.
pub fn discrepancies_for(s: &SurfaceModel) -> Vec<Discrepancy> {
    let m_constant = Discrepancy {
        id: "chi_lt_1_m_constant".into(),
        quantity: "constant term of M for chi(O_X) < 1".into(),
        stated: ratio(&Rational::from_integer((-4).into())),
        computed: ratio(&Rational::from_integer((-3).into())),
        note: "the ruled-surface substitution prints -4 where the general chi < 1 formula has -3; bounds use -3"
            .into(),
    };
    match s.kind() {
        SurfaceKind::Hirzebruch { e } => {
            let e = i64::from(*e);
            vec![
                Discrepancy {
                    id: "hirzebruch_polarization_square".into(),
                    quantity: "H^2 for L = C0 + (e+1)f".into(),
                    stated: ratio(&Rational::from_integer((e + 1).into())),
                    computed: ratio(&s.polarization_square()),
                    note: "C0^2 = -e, C0.f = 1, f^2 = 0 give (C0 + (e+1)f)^2 = e + 2; stated value is e + 1; bounds use the computed value".into(),
                },
                m_constant,
            ]
        }
        SurfaceKind::Ruled { .. } => vec![m_constant],
        SurfaceKind::ProjectivePlane | SurfaceKind::Custom => Vec::new(),
    }
}

/// Canonical `p/q`.
pub fn ratio(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses a canonical `p/q`; rejects non-reduced forms and `q <= 0`.
pub fn parse_ratio(s: &str) -> Option<Rational> {
    let (p, q) = s.split_once('/')?;
    let p: BigInt = p.parse().ok()?;
    let q: BigInt = q.parse().ok()?;
    if !q.is_positive() || !p.gcd(&q).is_one() {
        return None;
    }
    Some(Rational::new(p, q))
}

/// Rounds to `places` decimals, half away from zero.
pub fn decimal(r: &Rational, places: usize) -> String {
    let scale = BigInt::from(10).pow(places as u32);
    let scaled = r * Rational::from_integer(scale.clone());
    let rounded = scaled.round().to_integer();
    let neg = rounded.is_negative();
    let digits = rounded.abs().to_string();
    let digits = format!("{digits:0>width$}", width = places + 1);
    let (int, frac) = digits.split_at(digits.len() - places);
    let sign = if neg { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

/// Coordinates as `(p/q, ...)`.
pub fn coords(c: &DivisorClass) -> String {
    let parts: Vec<String> = c.coords().iter().map(ratio).collect();
    format!("({})", parts.join(", "))
}

/// Linear combination of basis labels, e.g. `2H - E1 - E2` or `(1/3)C0 + f`.
pub fn class_expr(labels: &[String], c: &DivisorClass) -> String {
    let mut out = String::new();
    for (label, coeff) in labels.iter().zip(c.coords()) {
        if coeff.is_zero() {
            continue;
        }
        let mag = coeff.abs();
        let sign = if coeff.is_negative() { "-" } else { "+" };
        if out.is_empty() {
            if coeff.is_negative() {
                out.push('-');
            }
        } else {
            let _ = write!(out, " {sign} ");
        }
        if mag.is_integer() {
            if mag != Rational::from_integer(1.into()) {
                let _ = write!(out, "{}", mag.numer());
            }
        } else {
            let _ = write!(out, "({})", ratio(&mag));
        }
        out.push_str(label);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn cell_text(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => n.to_string(),
        other => other.to_string(),
    }
}

fn columns(rows: &[Row]) -> Vec<String> {
    rows.first()
        .map(|r| r.keys().cloned().collect())
        .unwrap_or_default()
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
            Format::Table => self.to_table(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Header row plus one line per row; cells follow the json key order.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let cols = columns(&self.rows);
        if !cols.is_empty() {
            w.write_record(&cols).expect("in-memory write");
        }
        for row in &self.rows {
            w.write_record(row.values().map(cell_text))
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        if let Some(s) = &self.surface {
            let params: Vec<String> = s
                .parameters
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            let _ = writeln!(
                out,
                "surface: {}{} blown up at {} points; basis ({})",
                s.kind,
                if params.is_empty() {
                    String::new()
                } else {
                    format!("({})", params.join(", "))
                },
                s.n_blowups,
                s.basis.join(", ")
            );
            let _ = writeln!(out, "  K = {}   H = {}", s.canonical, s.polarization);
            let _ = writeln!(
                out,
                "  chi = {}  c2 = {}  K^2 = {}  base K^2 = {}  a0 = {}  H^2 = {}",
                s.chi,
                s.c2,
                with_decimal(&s.k2),
                with_decimal(&s.base_k2),
                with_decimal(&s.a0),
                with_decimal(&s.h2)
            );
        }
        let _ = writeln!(out, "task: {}", self.task);
        let cols = columns(&self.rows);
        if cols.is_empty() {
            out.push_str("(no rows)\n");
        } else {
            let cells: Vec<Vec<String>> = self
                .rows
                .iter()
                .map(|r| r.values().map(|v| with_decimal(&cell_text(v))).collect())
                .collect();
            let widths: Vec<usize> = (0..cols.len())
                .map(|i| {
                    cells
                        .iter()
                        .map(|r| r[i].chars().count())
                        .chain([cols[i].len()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |items: &[String]| {
                items
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            let _ = writeln!(out, "{}", line(&cols));
            for r in &cells {
                let _ = writeln!(out, "{}", line(r));
            }
        }
        for d in &self.discrepancies {
            let _ = writeln!(
                out,
                "note [{}]: {} stated {} / computed {} ({})",
                d.id,
                d.quantity,
                with_decimal(&d.stated),
                with_decimal(&d.computed),
                d.note
            );
        }
        out
    }
}

/// Appends a decimal approximation to `p/q` cells.
fn with_decimal(cell: &str) -> String {
    match parse_ratio(cell) {
        Some(r) => format!("{cell} (~{})", decimal(&r, 4)),
        None => cell.to_string(),
    }
}
