//! Job file schema: the allowed keys, their types, and a JSON Schema rendering
//! of the same table that ships as `schema/job.schema.json`.

use serde_json::{json, Map, Value};

use crate::error::ConfigError;

#[derive(Debug, Clone, Copy)]
pub enum Ty {
    Str,
    Enum(&'static [&'static str]),
    Int,
    Bool,
    IntList,
    IntMatrix,
    IntOrIntList,
    /// The string `"auto"` or a list of integer coordinate vectors.
    AutoOrIntMatrix,
    StrList,
    Table(&'static [Field]),
}

#[derive(Debug, Clone, Copy)]
pub struct Field {
    pub name: &'static str,
    pub ty: Ty,
    pub doc: &'static str,
}

const fn f(name: &'static str, ty: Ty, doc: &'static str) -> Field {
    Field { name, ty, doc }
}

pub const TASKS: &[&str] = &["bound", "zariski", "enumerate", "verify", "family"];
pub const FORMATS: &[&str] = &["table", "csv", "json"];
pub const KINDS: &[&str] = &["p2", "hirzebruch", "ruled", "custom"];

const SURFACE: &[Field] = &[
    f("kind", Ty::Enum(KINDS), "base surface family"),
    f("e", Ty::Int, "hirzebruch: invariant e >= 0"),
    f("g", Ty::Int, "ruled: genus of the base curve, >= 1"),
    f(
        "deg_l",
        Ty::Int,
        "ruled: degree of the twisting line bundle, < 3 - 3g",
    ),
    f("n_blowups", Ty::Int, "number of points blown up, >= 0"),
    f("labels", Ty::StrList, "custom: basis labels"),
    f(
        "gram",
        Ty::IntMatrix,
        "custom: symmetric Gram matrix of the basis",
    ),
    f(
        "canonical",
        Ty::IntList,
        "custom: canonical class coordinates",
    ),
    f(
        "polarization",
        Ty::IntList,
        "custom: polarization coordinates",
    ),
    f("chi", Ty::Int, "custom: chi(O_X)"),
    f("c2", Ty::Int, "custom: topological Euler number"),
];

const BOUND: &[Field] = &[
    f("cdot_h", Ty::IntOrIntList, "degrees C.H to evaluate"),
    f(
        "curves",
        Ty::IntMatrix,
        "curve classes; C.H and the witness C^2 are read off the lattice",
    ),
    f(
        "pg",
        Ty::Int,
        "geometric genus passed to the evaluator (default 0)",
    ),
];

const ZARISKI: &[Field] = &[
    f("divisor", Ty::IntList, "divisor class to decompose"),
    f(
        "divisors",
        Ty::IntMatrix,
        "several divisor classes to decompose",
    ),
    f(
        "candidates",
        Ty::AutoOrIntMatrix,
        "negative curve candidates, or \"auto\"",
    ),
    f(
        "complete",
        Ty::Bool,
        "explicit candidates contain every negative curve",
    ),
];

const ENUMERATE: &[Field] = &[
    f("self_int", Ty::Int, "target C.C (default -1)"),
    f("k_dot", Ty::Int, "target K.C (default -1)"),
    f(
        "max_degree",
        Ty::Int,
        "cutoff on C.H (default: Cauchy-Schwarz cutoff)",
    ),
];

const VERIFY: &[Field] = &[
    f(
        "curves",
        Ty::AutoOrIntMatrix,
        "classes to verify, or \"auto\" (default)",
    ),
    f(
        "pg",
        Ty::Int,
        "geometric genus assigned to every class (default 0)",
    ),
];

const FAMILY: &[Field] = &[
    f(
        "chi",
        Ty::Int,
        "chi(O) of a smooth fibre (default: from [surface])",
    ),
    f(
        "k2",
        Ty::Int,
        "K^2 of a smooth fibre (default: from [surface])",
    ),
    f(
        "c2",
        Ty::Int,
        "c2 of a smooth fibre (default: from [surface])",
    ),
    f(
        "l",
        Ty::Int,
        "upper bound for h0(-K) on smooth fibres, >= 1",
    ),
    f(
        "pg",
        Ty::IntOrIntList,
        "geometric genus of the vertical curve (default 0)",
    ),
];

pub const ROOT: &[Field] = &[
    f(
        "task",
        Ty::Enum(TASKS),
        "optional; must agree with the subcommand",
    ),
    f("format", Ty::Enum(FORMATS), "default output format"),
    f("surface", Ty::Table(SURFACE), "surface model"),
    f("bound", Ty::Table(BOUND), "parameters for `bound`"),
    f("zariski", Ty::Table(ZARISKI), "parameters for `zariski`"),
    f(
        "enumerate",
        Ty::Table(ENUMERATE),
        "parameters for `enumerate`",
    ),
    f("verify", Ty::Table(VERIFY), "parameters for `verify`"),
    f("family", Ty::Table(FAMILY), "parameters for `family`"),
];

/// Checks keys and value shapes of a parsed job file.
pub fn validate(doc: &toml::Table) -> Result<(), ConfigError> {
    check_table(doc, ROOT, "")
}

fn join(prefix: &str, name: &str) -> String {
    if prefix.is_empty() {
        name.to_string()
    } else {
        format!("{prefix}.{name}")
    }
}

fn check_table(table: &toml::Table, fields: &[Field], prefix: &str) -> Result<(), ConfigError> {
    for (key, value) in table {
        let path = join(prefix, key);
        let Some(field) = fields.iter().find(|f| f.name == key) else {
            let allowed: Vec<&str> = fields.iter().map(|f| f.name).collect();
            return Err(ConfigError::field(
                path,
                format!("unknown key; expected one of {}", allowed.join(", ")),
            ));
        };
        check_value(value, field.ty, &path)?;
    }
    Ok(())
}

fn is_int_list(v: &toml::Value) -> bool {
    v.as_array()
        .is_some_and(|a| a.iter().all(toml::Value::is_integer))
}

fn is_int_matrix(v: &toml::Value) -> bool {
    v.as_array().is_some_and(|a| a.iter().all(is_int_list))
}

fn check_value(v: &toml::Value, ty: Ty, path: &str) -> Result<(), ConfigError> {
    let ok = match ty {
        Ty::Str => v.is_str(),
        Ty::Enum(options) => {
            let Some(s) = v.as_str() else {
                return Err(ConfigError::field(path, "expected a string"));
            };
            if !options.contains(&s) {
                return Err(ConfigError::field(
                    path,
                    format!("`{s}` is not one of {}", options.join(", ")),
                ));
            }
            true
        }
        Ty::Int => v.is_integer(),
        Ty::Bool => v.is_bool(),
        Ty::IntList => is_int_list(v),
        Ty::IntMatrix => is_int_matrix(v),
        Ty::IntOrIntList => v.is_integer() || is_int_list(v),
        Ty::AutoOrIntMatrix => v.as_str() == Some("auto") || is_int_matrix(v),
        Ty::StrList => v
            .as_array()
            .is_some_and(|a| a.iter().all(toml::Value::is_str)),
        Ty::Table(fields) => {
            let Some(t) = v.as_table() else {
                return Err(ConfigError::field(path, "expected a table"));
            };
            return check_table(t, fields, path);
        }
    };
    if ok {
        Ok(())
    } else {
        Err(ConfigError::field(
            path,
            format!("expected {}", describe(ty)),
        ))
    }
}

fn describe(ty: Ty) -> &'static str {
    match ty {
        Ty::Str | Ty::Enum(_) => "a string",
        Ty::Int => "an integer",
        Ty::Bool => "a boolean",
        Ty::IntList => "a list of integers",
        Ty::IntMatrix => "a list of integer lists",
        Ty::IntOrIntList => "an integer or a list of integers",
        Ty::AutoOrIntMatrix => "\"auto\" or a list of integer lists",
        Ty::StrList => "a list of strings",
        Ty::Table(_) => "a table",
    }
}

fn ty_schema(ty: Ty) -> Value {
    let int = json!({"type": "integer"});
    let int_list = json!({"type": "array", "items": int});
    let int_matrix = json!({"type": "array", "items": int_list});
    match ty {
        Ty::Str => json!({"type": "string"}),
        Ty::Enum(options) => json!({"type": "string", "enum": options}),
        Ty::Int => int,
        Ty::Bool => json!({"type": "boolean"}),
        Ty::IntList => int_list,
        Ty::IntMatrix => int_matrix,
        Ty::IntOrIntList => json!({"oneOf": [int, int_list]}),
        Ty::AutoOrIntMatrix => json!({"oneOf": [{"const": "auto"}, int_matrix]}),
        Ty::StrList => json!({"type": "array", "items": {"type": "string"}}),
        Ty::Table(fields) => table_schema(fields),
    }
}

fn table_schema(fields: &[Field]) -> Value {
    let mut props = Map::new();
    for field in fields {
        let mut s = ty_schema(field.ty);
        s.as_object_mut()
            .expect("object")
            .insert("description".into(), field.doc.into());
        props.insert(field.name.into(), s);
    }
    json!({"type": "object", "additionalProperties": false, "properties": props})
}

/// JSON Schema for job files.
pub fn json_schema() -> Value {
    let mut root = table_schema(ROOT);
    let obj = root.as_object_mut().expect("object");
    obj.insert(
        "$schema".into(),
        "http://json-schema.org/draft-07/schema#".into(),
    );
    obj.insert("title".into(), "negbound job".into());
    obj.insert("required".into(), json!(["surface"]));
    root
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> toml::Table {
        s.parse().unwrap()
    }

    #[test]
    fn accepts_well_formed() {
        let doc = parse("[surface]\nkind = \"p2\"\nn_blowups = 3\n[bound]\ncdot_h = [0, 1]\n");
        validate(&doc).unwrap();
        let doc =
            parse("[surface]\nkind = \"p2\"\n[zariski]\ncandidates = \"auto\"\ndivisor = [1, 1]\n");
        validate(&doc).unwrap();
    }

    #[test]
    fn reports_field_paths() {
        let err = validate(&parse("[surface]\nkind = \"p3\"\n")).unwrap_err();
        assert_eq!(err.path.as_deref(), Some("surface.kind"));
        let err = validate(&parse("[surface]\nkind = \"p2\"\nn_blowup = 2\n")).unwrap_err();
        assert_eq!(err.path.as_deref(), Some("surface.n_blowup"));
        let err = validate(&parse("[bound]\ncdot_h = \"one\"\n")).unwrap_err();
        assert_eq!(err.path.as_deref(), Some("bound.cdot_h"));
        let err = validate(&parse("[verify]\ncurves = \"all\"\n")).unwrap_err();
        assert_eq!(err.path.as_deref(), Some("verify.curves"));
    }

    #[test]
    fn shipped_schema_is_current() {
        let shipped = include_str!("../schema/job.schema.json");
        let shipped: Value = serde_json::from_str(shipped).unwrap();
        assert_eq!(shipped, json_schema());
    }
}
