use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_convgoppa"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn field_info_and_arithmetic() {
    let o = run(&["field", "--field", "7"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("primitive=3"));
    assert_eq!(
        stdout(&run(&[
            "field", "--field", "5", "--op", "mul", "--args", "3,4"
        ]))
        .trim(),
        "2"
    );
    assert_eq!(
        stdout(&run(&[
            "field", "--field", "5", "--op", "inv", "--args", "2"
        ]))
        .trim(),
        "3"
    );
    assert_eq!(
        stdout(&run(&[
            "field", "--field", "2^2", "--op", "mul", "--args", "2,2"
        ]))
        .trim(),
        "3"
    );
    assert_eq!(
        stdout(&run(&[
            "field", "--field", "5", "--op", "order", "--args", "4"
        ]))
        .trim(),
        "2"
    );
    assert_eq!(
        run(&["field", "--field", "2^2:1,0,1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["field", "--field", "5", "--op", "inv", "--args", "0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn build_writes_code_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("code.json");
    let o = run(&[
        "build",
        "thm-sr",
        "--field",
        "5",
        "--n",
        "3",
        "--r",
        "1",
        "--a",
        "1,1,1",
        "--out",
        path(&out),
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("(z + 1, z + 2, z + 4)"));
    let v = read_json(&out);
    assert_eq!(v["gen"], serde_json::json!([["1,1", "2,1", "4,1"]]));
    assert_eq!(v["spec"]["s"], 1);

    let o = run(&[
        "build", "thm-s0", "--field", "5", "--n", "3", "--r", "1", "--a", "2", "--b", "0",
    ]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["gen"], serde_json::json!([["1,1", "1,2", "1,4"]]));
}

#[test]
fn build_rejects_bad_parameters() {
    let o = run(&[
        "build", "thm-sr", "--field", "5", "--n", "5", "--r", "1", "--a", "1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("q - 1"));
    let o = run(&[
        "build", "thm-s0", "--field", "5", "--n", "3", "--r", "1", "--a", "4", "--b", "1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(
        run(&["build", "gl", "--n", "3", "--r", "1", "--a", "2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn custom_build_and_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    std::fs::write(
        &spec,
        r#"{"field":"5","r":1,"s":0,"points":[[1,1],[2,1],[4,1]]}"#,
    )
    .unwrap();
    let code = dir.path().join("code.json");
    assert!(run(&[
        "build",
        "custom",
        "--spec",
        path(&spec),
        "--lambda",
        "1,1",
        "--out",
        path(&code)
    ])
    .status
    .success());
    assert_eq!(
        read_json(&code)["gen"],
        serde_json::json!([["2,1", "2,2", "2,4"]])
    );

    let o = run(&["analyze", path(&code)]);
    assert!(o.status.success());
    let a: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(a["mds"], "proven");
    assert_eq!(a["df_lower"], 6);
    assert_eq!(a["df_lower_provenance"], "certificate");
    assert!(a["certificate"]["checks"].as_array().unwrap().len() >= 3);
}

#[test]
fn analyze_reports_refutation_and_block_distance() {
    let dir = tempfile::tempdir().unwrap();
    let code = dir.path().join("z11.json");
    std::fs::write(&code, r#"{"field":"5","gen":[["0,1","1","1"]]}"#).unwrap();
    let a: Value = serde_json::from_str(&stdout(&run(&["analyze", path(&code)]))).unwrap();
    assert_eq!(a["mds"], "refuted");
    assert_eq!(a["df_upper"], 3);
    assert_eq!(a["certificate"]["failure"], "G_0");

    let rep = dir.path().join("rep.json");
    std::fs::write(&rep, r#"{"field":"5","gen":[["1","1","1"]]}"#).unwrap();
    let a: Value = serde_json::from_str(&stdout(&run(&["analyze", path(&rep)]))).unwrap();
    assert_eq!(
        (a["delta"].as_u64(), a["df_upper"].as_u64()),
        (Some(0), Some(3))
    );

    std::fs::write(&rep, "not json").unwrap();
    assert_eq!(run(&["analyze", path(&rep)]).status.code(), Some(2));
    assert_eq!(
        run(&["analyze", "/nonexistent/code.json"]).status.code(),
        Some(1)
    );
}

#[test]
fn analyze_budget_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let code = dir.path().join("c.json");
    std::fs::write(&code, r#"{"field":"7","gen":[["1,2,3","3,1,1","2,5,1"]]}"#).unwrap();
    assert_eq!(
        run(&["analyze", path(&code), "--budget", "3"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn analyze_round_trip_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let code = dir.path().join("code.json");
    run(&[
        "build",
        "thm-s0",
        "--field",
        "5",
        "--n",
        "4",
        "--r",
        "2",
        "--a",
        "2",
        "--b",
        "1",
        "--out",
        path(&code),
    ]);
    let first = stdout(&run(&["analyze", path(&code)]));
    let second = stdout(&run(&["analyze", path(&code)]));
    assert_eq!(first, second);
    let a: Value = serde_json::from_str(&first).unwrap();
    assert_eq!(a["mds"], "proven");
    assert_eq!(a["df_upper"], 12);
}

#[test]
fn dual_reports_degrees() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    std::fs::write(&spec, r#"{"field":"5","r":0,"s":0,"points":[[1,1],[1,2]]}"#).unwrap();
    let v: Value = serde_json::from_str(&stdout(&run(&["dual", path(&spec)]))).unwrap();
    assert_eq!(v["h"], serde_json::json!([["4", "1"]]));
    assert_eq!(v["report"]["orthogonal"], true);

    let code = dir.path().join("code.json");
    run(&[
        "build",
        "thm-sr",
        "--field",
        "5",
        "--n",
        "4",
        "--r",
        "2",
        "--a",
        "1",
        "--out",
        path(&code),
    ]);
    let v: Value = serde_json::from_str(&stdout(&run(&["dual", path(&code)]))).unwrap();
    assert_eq!(v["report"]["dual_degree"], 2);
    assert_eq!(v["report"]["degrees_match"], true);

    std::fs::write(&spec, r#"{"field":"5","r":1,"s":0,"points":[[1,1],[1,2]]}"#).unwrap();
    let o = run(&["dual", path(&spec)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no rows"));
}

#[test]
fn sweep_writes_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let code = dir.path().join("code.json");
    run(&[
        "build",
        "thm-s0",
        "--field",
        "5",
        "--n",
        "3",
        "--r",
        "1",
        "--a",
        "2",
        "--b",
        "1",
        "--out",
        path(&code),
    ]);
    let stem = dir.path().join("sweep");
    let o = run(&["sweep", path(&code), "--out", path(&stem)]);
    assert!(o.status.success());
    let csv = std::fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    let json = read_json(&dir.path().join("sweep.json"));
    assert_eq!(csv.lines().count(), 7);
    assert_eq!(json["rows"].as_array().unwrap().len(), 6);
    assert_eq!(json["total"], 6);
    assert!(csv.contains("1:1,1,6,6,6,proven"));

    let again = stdout(&run(&["sweep", path(&code)]));
    assert_eq!(again, csv);
}
