use std::path::Path;
use std::process::{Command, Output};

use negbound::config::{JobConfig, Task};
use negbound::error::{CliError, EXIT_INTERNAL};
use negbound::report::{parse_ratio, Report};
use negbound::run::run;
use serde_json::Value;
use tempfile::TempDir;

fn negbound(args: &[&str], config: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_negbound"))
        .args(args)
        .arg("--config")
        .arg(config)
        .output()
        .unwrap()
}

fn job(dir: &TempDir, name: &str, text: &str) -> std::path::PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn json_run_raw(task: &str, text: &str) -> (Vec<u8>, i32) {
    let dir = TempDir::new().unwrap();
    let path = job(&dir, "job.toml", text);
    let out = negbound(&[task, "--format", "json"], &path);
    (out.stdout, out.status.code().unwrap())
}

fn json_run(task: &str, text: &str) -> (Value, i32) {
    let dir = TempDir::new().unwrap();
    let path = job(&dir, "job.toml", text);
    let out = negbound(&[task, "--format", "json"], &path);
    (
        serde_json::from_slice(&out.stdout).unwrap(),
        out.status.code().unwrap(),
    )
}

const JOBS: &[(&str, &str)] = &[
    ("bound", "[surface]\nkind = \"p2\"\nn_blowups = 10\n[bound]\ncdot_h = [0, 1, 2, 7]\n"),
    ("bound", "[surface]\nkind = \"ruled\"\ng = 2\ndeg_l = -4\nn_blowups = 2\n[bound]\ncdot_h = 5\n"),
    ("zariski", "[surface]\nkind = \"p2\"\nn_blowups = 4\n[zariski]\ndivisors = [[1, 1, 1, 0, 0], [3, 0, 0, 2, 1]]\n"),
    ("enumerate", "[surface]\nkind = \"p2\"\nn_blowups = 5\n"),
    ("verify", "[surface]\nkind = \"hirzebruch\"\ne = 3\nn_blowups = 3\n"),
    ("family", "[family]\nchi = 1\nk2 = 9\nc2 = 3\nl = 10\npg = [0, 1, 2]\n"),
];

#[test]
fn ten_point_blowup_bound() {
    let (v, code) = json_run(
        "bound",
        "[surface]\nkind = \"p2\"\nn_blowups = 10\n[bound]\ncdot_h = 1\n",
    );
    assert_eq!(code, 0);
    assert_eq!(v["rows"][0]["bound"], "-10/1");
    assert_eq!(v["rows"][0]["case_tag"], "k2_le_n");
    assert_eq!(v["discrepancies"], Value::Array(vec![]));
}

#[test]
fn six_point_del_pezzo_verifies() {
    let (v, code) = json_run(
        "verify",
        "[surface]\nkind = \"p2\"\nn_blowups = 6\n[verify]\ncurves = \"auto\"\n",
    );
    assert_eq!(code, 0);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 27);
    assert!(rows
        .iter()
        .all(|r| r["satisfied"] == true && r["witnessed_c2"] == -1));
}

#[test]
fn single_blowup_zariski() {
    let (v, code) = json_run(
        "zariski",
        "[surface]\nkind = \"p2\"\nn_blowups = 1\n[zariski]\ndivisor = [1, 1]\n",
    );
    assert_eq!(code, 0);
    let row = &v["rows"][0];
    assert_eq!(row["positive"], "(1/1, 0/1)");
    assert_eq!(row["negative"], "E1: 1/1");
    assert_eq!(row["p_squared"], "1/1");
    assert_eq!(row["d_squared"], "0/1");
}

#[test]
fn json_round_trips() {
    for (task, text) in JOBS {
        let (v, code) = json_run(task, text);
        assert_eq!(code, 0, "{task}");
        let text = serde_json::to_string(&v).unwrap();
        let report = Report::from_json(&text).unwrap();
        let again = Report::from_json(&report.to_json()).unwrap();
        assert_eq!(report, again);
        assert_eq!(serde_json::to_value(&report).unwrap(), v);
    }
}

#[test]
fn csv_matches_json() {
    let dir = TempDir::new().unwrap();
    for (i, (task, text)) in JOBS.iter().enumerate() {
        let path = job(&dir, &format!("job{i}.toml"), text);
        let json: Value =
            serde_json::from_slice(&negbound(&[task, "--format", "json"], &path).stdout).unwrap();
        let csv_out = negbound(&[task, "--format", "csv"], &path).stdout;
        let mut reader = csv::Reader::from_reader(csv_out.as_slice());
        let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
        let rows = json["rows"].as_array().unwrap();
        let records: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
        assert_eq!(records.len(), rows.len(), "{task}");
        for (record, row) in records.iter().zip(rows) {
            let row = row.as_object().unwrap();
            assert_eq!(header, row.keys().cloned().collect::<Vec<_>>());
            for (cell, value) in record.iter().zip(row.values()) {
                let expected = match value {
                    Value::Null => String::new(),
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                assert_eq!(cell, expected);
                if let Some(q) = parse_ratio(cell) {
                    assert_eq!(negbound::report::ratio(&q), cell);
                }
            }
        }
    }
}

#[test]
fn rationals_are_canonical() {
    for (task, text) in JOBS {
        let (v, _) = json_run(task, text);
        for row in v["rows"].as_array().unwrap() {
            for key in [
                "bound",
                "L",
                "M",
                "N",
                "p_squared",
                "d_squared",
                "pa",
                "self_int",
            ] {
                if let Some(s) = row.get(key).and_then(Value::as_str) {
                    assert!(parse_ratio(s).is_some(), "{task}.{key} = {s}");
                }
            }
        }
    }
}

#[test]
fn table_shows_fraction_and_decimal() {
    let dir = TempDir::new().unwrap();
    let path = job(&dir, "job.toml", JOBS[1].1);
    let out = negbound(&["bound"], &path);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("-1525/7 (~-217.8571)"), "{text}");
    assert!(text.contains("note [chi_lt_1_m_constant]"));
}

#[test]
fn output_is_deterministic_and_written_to_file() {
    let dir = TempDir::new().unwrap();
    let path = job(&dir, "job.toml", JOBS[3].1);
    let target = dir.path().join("out.csv");
    let out = negbound(
        &[
            "enumerate",
            "--format",
            "csv",
            "--out",
            target.to_str().unwrap(),
        ],
        &path,
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let first = std::fs::read_to_string(&target).unwrap();
    let second =
        String::from_utf8(negbound(&["enumerate", "--format", "csv"], &path).stdout).unwrap();
    assert_eq!(first, second);
    assert_eq!(first.lines().count(), 17);
}

#[test]
fn format_key_in_file_is_default() {
    let (v, _) = json_run("enumerate", "[surface]\nkind = \"p2\"\nn_blowups = 2\n");
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
    let dir = TempDir::new().unwrap();
    let path = job(
        &dir,
        "job.toml",
        "format = \"csv\"\n[surface]\nkind = \"p2\"\nn_blowups = 2\n",
    );
    let text = String::from_utf8(negbound(&["enumerate"], &path).stdout).unwrap();
    assert!(
        text.starts_with("index,class,expr,degree,self_int,k_dot,pa\n"),
        "{text}"
    );
}

#[test]
fn config_errors_exit_two_with_location() {
    let dir = TempDir::new().unwrap();
    let cases = [
        ("[surface]\nkind = \"p2\"\nn_blowups = = 2\n", "line 3"),
        (
            "[surface]\nkind = \"p2\"\n\n[bound]\ncdoth = 1\n",
            "line 5 in `bound.cdoth`",
        ),
        ("[surface]\nkind = \"p2\"\n", "`bound`"),
        (
            "[surface]\nkind = \"hirzebruch\"\ne = -1\n[bound]\ncdot_h = 1\n",
            "line 3 in `surface.e`",
        ),
        (
            "[surface]\nkind = \"p2\"\nn_blowups = 2\n[bound]\ncurves = [[1, 0]]\n",
            "bound.curves[0]",
        ),
    ];
    for (i, (text, needle)) in cases.iter().enumerate() {
        let path = job(&dir, &format!("bad{i}.toml"), text);
        let out = negbound(&["bound"], &path);
        assert_eq!(out.status.code(), Some(2), "{text}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert!(err.contains(needle), "{err}");
    }
    let out = negbound(&["bound"], &dir.path().join("missing.toml"));
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_negbound"))
        .arg("bogus")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bound_violation_exits_three() {
    // 5E1 is not a curve: its square -25 is below the bound -4 at C.H = 0.
    let (v, code) = json_run(
        "bound",
        "[surface]\nkind = \"p2\"\nn_blowups = 1\n[bound]\ncurves = [[0, 5], [0, 1]]\n",
    );
    assert_eq!(code, 3);
    assert_eq!(v["rows"][0]["satisfied"], false);
    assert_eq!(v["rows"][0]["bound"], "-4/1");
    assert_eq!(v["rows"][1]["satisfied"], true);
}

#[test]
fn verify_on_equality_case_passes() {
    // -2E1 has p_a = 0 and attains the bound -4 exactly.
    let (v, code) = json_run(
        "verify",
        "[surface]\nkind = \"p2\"\nn_blowups = 1\n[verify]\ncurves = [[0, -2]]\n",
    );
    assert_eq!(code, 0);
    assert_eq!(
        (
            v["rows"][0]["witnessed_c2"].as_i64(),
            v["rows"][0]["bound"].as_str()
        ),
        (Some(-4), Some("-4/1"))
    );
}

#[test]
fn verify_rejects_negative_genus_classes() {
    let (_, code) = json_run_raw(
        "verify",
        "[surface]\nkind = \"p2\"\nn_blowups = 1\n[verify]\ncurves = [[0, 5]]\n",
    );
    assert_eq!(code, 2);
}

#[test]
fn invariant_breach_maps_to_four() {
    assert_eq!(CliError::Invariant("x".into()).exit_code(), EXIT_INTERNAL);
}

#[test]
fn family_without_surface() {
    let cfg = JobConfig::parse(JOBS[5].1).unwrap();
    let out = run(&cfg, Task::Family).unwrap();
    assert!(out.report.surface.is_none());
    assert_eq!(out.report.rows.len(), 15);
    let family: Vec<&str> = out
        .report
        .rows
        .iter()
        .filter(|r| r["bound_kind"] == "family")
        .map(|r| r["bound"].as_str().unwrap())
        .collect();
    assert_eq!(family, ["-3/1", "-3/1", "-3/1"]);
}

#[test]
fn schema_subcommand_matches_shipped_file() {
    let out = Command::new(env!("CARGO_BIN_EXE_negbound"))
        .arg("schema")
        .output()
        .unwrap();
    let shipped = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/schema/job.schema.json"
    ))
    .unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), shipped);
}
