//! Job files: TOML documents with a `[surface]` table and one table per task.
//!
//! ```toml
//! [surface]
//! kind = "p2"
//! n_blowups = 6
//!
//! [verify]
//! curves = "auto"
//! ```

use std::fmt;
use std::str::FromStr;

use negbound_core::lattice::blow_up_n;
use negbound_core::{
    make_hirzebruch, make_projective_plane, make_ruled, DivisorClass, IntersectionForm,
    SurfaceModel,
};
use serde::Deserialize;

use crate::error::ConfigError;
use crate::schema;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Task {
    Bound,
    Zariski,
    Enumerate,
    Verify,
    Family,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::Bound => "bound",
            Task::Zariski => "zariski",
            Task::Enumerate => "enumerate",
            Task::Verify => "verify",
            Task::Family => "family",
        }
    }
}

impl FromStr for Task {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, ConfigError> {
        Ok(match s {
            "bound" => Task::Bound,
            "zariski" => Task::Zariski,
            "enumerate" => Task::Enumerate,
            "verify" => Task::Verify,
            "family" => Task::Family,
            other => {
                return Err(ConfigError::field(
                    "task",
                    format!("unknown task `{other}`"),
                ))
            }
        })
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s {
            "table" => Ok(Format::Table),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(ConfigError::field(
                "format",
                format!("unknown format `{other}`"),
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany {
    One(i64),
    Many(Vec<i64>),
}

impl OneOrMany {
    pub fn values(&self) -> Vec<i64> {
        match self {
            OneOrMany::One(x) => vec![*x],
            OneOrMany::Many(v) => v.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum AutoOr {
    Auto(String),
    Explicit(Vec<Vec<i64>>),
}

#[derive(Debug, Clone, Default, Deserialize)]
pub struct SurfaceSpec {
    pub kind: Option<String>,
    pub e: Option<i64>,
    pub g: Option<i64>,
    pub deg_l: Option<i64>,
    pub n_blowups: Option<i64>,
    pub labels: Option<Vec<String>>,
    pub gram: Option<Vec<Vec<i64>>>,
    pub canonical: Option<Vec<i64>>,
    pub polarization: Option<Vec<i64>>,
    pub chi: Option<i64>,
    pub c2: Option<i64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
pub struct BoundSpec {
    pub cdot_h: Option<OneOrMany>,
    pub curves: Option<Vec<Vec<i64>>>,
    pub pg: Option<i64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
pub struct ZariskiSpec {
    pub divisor: Option<Vec<i64>>,
    pub divisors: Option<Vec<Vec<i64>>>,
    pub candidates: Option<AutoOr>,
    pub complete: Option<bool>,
}

#[derive(Debug, Clone, Default, Deserialize)]
pub struct EnumerateSpec {
    pub self_int: Option<i64>,
    pub k_dot: Option<i64>,
    pub max_degree: Option<i64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
pub struct VerifySpec {
    pub curves: Option<AutoOr>,
    pub pg: Option<i64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
pub struct FamilySpec {
    pub chi: Option<i64>,
    pub k2: Option<i64>,
    pub c2: Option<i64>,
    pub l: Option<i64>,
    pub pg: Option<OneOrMany>,
}

#[derive(Debug, Clone, Default, Deserialize)]
pub struct JobConfig {
    pub task: Option<String>,
    pub format: Option<String>,
    pub surface: Option<SurfaceSpec>,
    pub bound: Option<BoundSpec>,
    pub zariski: Option<ZariskiSpec>,
    pub enumerate: Option<EnumerateSpec>,
    pub verify: Option<VerifySpec>,
    pub family: Option<FamilySpec>,
    #[serde(skip)]
    source: String,
}

fn line_of_offset(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

/// Line of `key = ...` inside the table named by the rest of `path`.
fn locate(text: &str, path: &str) -> Option<usize> {
    let (table, key) = match path.rsplit_once('.') {
        Some((t, k)) => (t, k),
        None => ("", path),
    };
    let mut current = String::new();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if let Some(header) = trimmed.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            current = header.trim().to_string();
            continue;
        }
        if current == table {
            if let Some((k, _)) = trimmed.split_once('=') {
                if k.trim().trim_matches('"') == key {
                    return Some(i + 1);
                }
            }
        }
    }
    // Fall back to the table header.
    text.lines()
        .position(|l| l.trim() == format!("[{path}]"))
        .map(|i| i + 1)
}

impl JobConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let table: toml::Table = text.parse().map_err(|e: toml::de::Error| {
            let line = e.span().map(|s| line_of_offset(text, s.start));
            ConfigError::general(e.message().to_string()).at_line(line)
        })?;
        schema::validate(&table).map_err(|e| {
            let line = e.path.as_deref().and_then(|p| locate(text, p));
            e.at_line(line)
        })?;
        let mut cfg: JobConfig = table
            .try_into()
            .map_err(|e: toml::de::Error| ConfigError::general(e.message().to_string()))?;
        cfg.source = text.to_string();
        Ok(cfg)
    }

    fn err(&self, path: &str, message: impl Into<String>) -> ConfigError {
        ConfigError::field(path, message).at_line(locate(&self.source, path))
    }

    pub fn format(&self) -> Result<Option<Format>, ConfigError> {
        self.format
            .as_deref()
            .map(|f| {
                f.parse()
                    .map_err(|e: ConfigError| e.at_line(locate(&self.source, "format")))
            })
            .transpose()
    }

    /// Checks that the chosen task has every parameter it needs.
    pub fn validate_for(&self, task: Task) -> Result<(), ConfigError> {
        if let Some(t) = &self.task {
            let declared: Task = t.parse()?;
            if declared != task {
                return Err(self.err(
                    "task",
                    format!("file declares task `{declared}` but `{task}` was requested"),
                ));
            }
        }
        self.format()?;
        let needs_surface = match task {
            Task::Family => {
                let fam = self.family.clone().unwrap_or_default();
                let explicit = fam.chi.is_some() && fam.k2.is_some() && fam.c2.is_some();
                if fam.l.is_none() {
                    return Err(self.err("family.l", "required for the family task"));
                }
                if fam.chi.is_some() || fam.k2.is_some() || fam.c2.is_some() {
                    if !explicit {
                        return Err(self.err("family", "give all of chi, k2, c2 or none of them"));
                    }
                    false
                } else {
                    true
                }
            }
            _ => true,
        };
        if needs_surface || self.surface.is_some() {
            self.build_surface()?;
        }
        match task {
            Task::Bound => {
                let b = self.bound.clone().unwrap_or_default();
                if b.cdot_h.is_none() && b.curves.is_none() {
                    return Err(self.err("bound", "give `cdot_h` or `curves`"));
                }
                if b.pg.is_some_and(|p| p < 0) {
                    return Err(self.err("bound.pg", "must be non-negative"));
                }
                if let Some(OneOrMany::Many(v)) = &b.cdot_h {
                    if v.is_empty() {
                        return Err(self.err("bound.cdot_h", "must not be empty"));
                    }
                }
            }
            Task::Zariski => {
                let z = self.zariski.clone().unwrap_or_default();
                if z.divisor.is_none() && z.divisors.is_none() {
                    return Err(self.err("zariski", "give `divisor` or `divisors`"));
                }
                if let Some(AutoOr::Auto(s)) = &z.candidates {
                    if s != "auto" {
                        return Err(self.err(
                            "zariski.candidates",
                            "expected \"auto\" or explicit classes",
                        ));
                    }
                }
            }
            Task::Enumerate => {
                let q = self.enumerate.clone().unwrap_or_default();
                if q.max_degree.is_some_and(|d| d < 1) {
                    return Err(self.err("enumerate.max_degree", "must be >= 1"));
                }
            }
            Task::Verify => {
                let v = self.verify.clone().unwrap_or_default();
                if v.pg.is_some_and(|p| p < 0) {
                    return Err(self.err("verify.pg", "must be non-negative"));
                }
            }
            Task::Family => {
                let fam = self.family.clone().unwrap_or_default();
                if fam.l.is_some_and(|l| l < 1) {
                    return Err(self.err("family.l", "must be >= 1"));
                }
                if fam
                    .pg
                    .as_ref()
                    .is_some_and(|p| p.values().iter().any(|&x| x < 0))
                {
                    return Err(self.err("family.pg", "must be non-negative"));
                }
            }
        }
        Ok(())
    }

    /// Builds the configured surface model including its blow-ups.
    pub fn build_surface(&self) -> Result<SurfaceModel, ConfigError> {
        let Some(spec) = &self.surface else {
            return Err(ConfigError::field("surface", "missing [surface] table"));
        };
        let kind = spec
            .kind
            .as_deref()
            .ok_or_else(|| self.err("surface.kind", "required"))?;
        let need = |v: Option<i64>, name: &str| {
            v.ok_or_else(|| {
                self.err(
                    &format!("surface.{name}"),
                    format!("required for kind `{kind}`"),
                )
            })
        };
        let core_err = |path: &str, e: negbound_core::Error| self.err(path, e.to_string());
        let base = match kind {
            "p2" => make_projective_plane(),
            "hirzebruch" => {
                make_hirzebruch(need(spec.e, "e")?).map_err(|e| core_err("surface.e", e))?
            }
            "ruled" => {
                let g = need(spec.g, "g")?;
                let d = need(spec.deg_l, "deg_l")?;
                make_ruled(g, d).map_err(|e| core_err("surface", e))?
            }
            "custom" => {
                let labels = spec
                    .labels
                    .clone()
                    .ok_or_else(|| self.err("surface.labels", "required for kind `custom`"))?;
                let gram = spec
                    .gram
                    .clone()
                    .ok_or_else(|| self.err("surface.gram", "required for kind `custom`"))?;
                let k = spec
                    .canonical
                    .clone()
                    .ok_or_else(|| self.err("surface.canonical", "required for kind `custom`"))?;
                let h = spec.polarization.clone().ok_or_else(|| {
                    self.err("surface.polarization", "required for kind `custom`")
                })?;
                let lattice =
                    IntersectionForm::new(labels, gram).map_err(|e| core_err("surface.gram", e))?;
                SurfaceModel::custom(
                    lattice,
                    DivisorClass::from_ints(&k),
                    DivisorClass::from_ints(&h),
                    need(spec.chi, "chi")?,
                    need(spec.c2, "c2")?,
                )
                .map_err(|e| core_err("surface", e))?
            }
            other => return Err(self.err("surface.kind", format!("unknown kind `{other}`"))),
        };
        let n = spec.n_blowups.unwrap_or(0);
        let n = u32::try_from(n).map_err(|_| {
            self.err(
                "surface.n_blowups",
                format!("must be a non-negative integer, got {n}"),
            )
        })?;
        Ok(blow_up_n(&base, n))
    }

    /// Converts a coordinate vector from the file, checking it against the rank.
    pub fn class(
        &self,
        surface: &SurfaceModel,
        coords: &[i64],
        path: &str,
    ) -> Result<DivisorClass, ConfigError> {
        surface
            .class(coords)
            .map_err(|e| self.err(path, e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_builds() {
        let cfg =
            JobConfig::parse("[surface]\nkind = \"hirzebruch\"\ne = 1\nn_blowups = 2\n").unwrap();
        let s = cfg.build_surface().unwrap();
        assert_eq!(s.rank(), 4);
        assert_eq!(s.c2(), 6);
    }

    #[test]
    fn syntax_error_has_line() {
        let err = JobConfig::parse("[surface]\nkind = \"p2\"\nn_blowups = = 3\n").unwrap_err();
        assert_eq!(err.line, Some(3));
    }

    #[test]
    fn schema_error_has_line_and_field() {
        let err = JobConfig::parse("[surface]\nkind = \"p2\"\n\n[bound]\ncdot = 1\n").unwrap_err();
        assert_eq!(err.path.as_deref(), Some("bound.cdot"));
        assert_eq!(err.line, Some(5));
    }

    #[test]
    fn task_requirements() {
        let cfg = JobConfig::parse("[surface]\nkind = \"p2\"\n").unwrap();
        assert_eq!(
            cfg.validate_for(Task::Bound).unwrap_err().path.as_deref(),
            Some("bound")
        );
        assert!(cfg.validate_for(Task::Enumerate).is_ok());
        let cfg = JobConfig::parse("[surface]\nkind = \"hirzebruch\"\n").unwrap();
        let err = cfg.validate_for(Task::Enumerate).unwrap_err();
        assert_eq!(err.path.as_deref(), Some("surface.e"));
        assert_eq!(err.line, None);
        let cfg =
            JobConfig::parse("task = \"zariski\"\n[surface]\nkind = \"p2\"\n[bound]\ncdot_h = 1\n")
                .unwrap();
        assert_eq!(
            cfg.validate_for(Task::Bound).unwrap_err().path.as_deref(),
            Some("task")
        );
        let cfg = JobConfig::parse("[family]\nchi = 1\nk2 = 9\n").unwrap();
        assert!(cfg.validate_for(Task::Family).is_err());
        let cfg = JobConfig::parse("[family]\nchi = 1\nk2 = 9\nc2 = 3\nl = 10\n").unwrap();
        assert!(cfg.validate_for(Task::Family).is_ok());
    }

    #[test]
    fn bad_surface_parameters() {
        let cfg = JobConfig::parse("[surface]\nkind = \"ruled\"\ng = 1\ndeg_l = 0\n").unwrap();
        assert!(cfg.build_surface().is_err());
        let cfg = JobConfig::parse("[surface]\nkind = \"p2\"\nn_blowups = -1\n").unwrap();
        let err = cfg.build_surface().unwrap_err();
        assert_eq!(
            (err.path.as_deref(), err.line),
            (Some("surface.n_blowups"), Some(3))
        );
    }
}
