use std::process::Command;

#[test]
fn shipped_jobs_run_cleanly() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/jobs");
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let doc: toml::Table = std::fs::read_to_string(&path).unwrap().parse().unwrap();
        let task = doc["task"].as_str().unwrap();
        let out = Command::new(env!("CARGO_BIN_EXE_negbound"))
            .args([task, "--format", "json", "--config"])
            .arg(&path)
            .output()
            .unwrap();
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}: {}",
            path.display(),
            String::from_utf8_lossy(&out.stderr)
        );
        let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(report["task"], task);
        assert!(!report["rows"].as_array().unwrap().is_empty());
        seen += 1;
    }
    assert_eq!(seen, 8);
}
