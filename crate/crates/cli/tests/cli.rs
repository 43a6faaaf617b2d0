use std::path::PathBuf;
use std::process::{Command, Output};

fn descriptor(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../descriptors").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sl2branch")).args(args).output().expect("binary runs")
}

fn run_on(cmd: &str, file: &str, extra: &[&str]) -> Output {
    let path = descriptor(file);
    let mut args = vec![cmd, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

/// `(depth, degree)` rows of a branch table, skipping per-depth totals.
fn degree_rows(table: &str) -> Vec<(String, u128)> {
    table
        .lines()
        .filter(|l| l.contains(" | ") && !l.contains("total at") && !l.starts_with("depth"))
        .map(|l| {
            let cells: Vec<&str> = l.split(" | ").map(str::trim).collect();
            (cells[0].to_string(), cells[3].parse().unwrap())
        })
        .collect()
}

#[test]
fn sigma0_plus_degrees() {
    let o = run_on("branch", "sigma0_plus.toml", &[]);
    assert_eq!(o.status.code(), Some(0));
    let rows = degree_rows(&stdout(&o));
    let degrees: Vec<u128> = rows.iter().map(|r| r.1).collect();
    assert_eq!(degrees, [1, 12, 108]);
}

#[test]
fn depth_zero_ps_five_rows() {
    let o = run_on("branch", "ps_depth0_generic.toml", &[]);
    assert_eq!(o.status.code(), Some(0));
    let rows = degree_rows(&stdout(&o));
    assert_eq!(rows.len(), 5);
    assert_eq!(rows.iter().map(|r| r.1).sum::<u128>(), 36);
}

#[test]
fn overrides_apply() {
    let o = run_on("branch", "ps_depth0_generic.toml", &["--max-depth", "1", "--field", "5,1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("q = 5, depth <= 1"), "{text}");
    // q + 1 at depth 0, then two Shalika types of degree (q^2 - 1)/2 each
    assert_eq!(degree_rows(&text).iter().map(|r| r.1).sum::<u128>(), 6 + 24);
}

#[test]
fn missing_key_is_a_schema_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    let text = std::fs::read_to_string(descriptor("ps_depth0_generic.toml")).unwrap();
    std::fs::write(&bad, text.replace("depth = 0\n", "")).unwrap();
    let o = run(&["branch", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("`depth`"));
}

#[test]
fn missing_truncation_is_a_schema_error() {
    let o = run_on("branch", "reducible_eps_plus.toml", &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("max_depth"));
}

#[test]
fn json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first.json");
    let o = run_on("branch", "ramified_sc.toml", &["--format", "json", "--out", first.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let again = run(&["branch", first.to_str().unwrap(), "--format", "json"]);
    assert_eq!(again.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&first).unwrap(), stdout(&again));
    let v: serde_json::Value = serde_json::from_str(&stdout(&again)).unwrap();
    assert_eq!(v["total_degree"], "160");
}

#[test]
fn ramified_tails() {
    // split over k(sqrt(-pi)): one class from depth 2 on
    let o = run_on("tail", "ramified_sc_minus_pi.toml", &[]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("pattern: single class 1 at every depth >= 2"), "{text}");
    assert!(text.contains("conforms: true"));

    // at q = 3, T(1, pi) splits over k(sqrt(-eps pi)): the class follows the parity
    let o = run_on("tail", "ramified_sc.toml", &["--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["conforms"], true);
    assert!(v["tail"]["pattern"]["ParityFunction"].is_object(), "{v}");
}

#[test]
fn two_principal_series_intertwine_by_rule_a() {
    let (a, b) = (descriptor("ps_depth1.toml"), descriptor("ps_depth2.toml"));
    let o = run(&["intertwine", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("k_intertwines: true (rule (a)"), "{}", stdout(&o));
}

#[test]
fn packet_two_per_depth() {
    let o = run_on("packet", "reducible_eps_plus.toml", &["--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["members"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_exit_codes() {
    assert_eq!(run(&["verify", "ps", "--field", "3,1"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "shalika", "--field", "3,1", "--sequential"]).status.code(), Some(0));
    let skipped = run(&["verify", "all", "--field", "7,1", "--budget", "400"]);
    assert_eq!(skipped.status.code(), Some(3));
    assert!(stdout(&skipped).contains("verdict = skipped"));
    assert_eq!(run(&["verify", "bogus"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "ps", "--field", "13,1"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["branch"]).status.code(), Some(2));
    assert_eq!(run(&["branch", "/nonexistent.toml"]).status.code(), Some(2));
}
