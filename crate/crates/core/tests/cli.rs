use std::path::Path;
use std::process::{Command, Output};

fn sspwl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sspwl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_p4(dir: &Path) -> String {
    let p = dir.join("p4.json");
    std::fs::write(&p, r#"{"n": 4, "edges": [[1,2],[2,3],[3,4]]}"#).unwrap();
    p.to_string_lossy().into_owned()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn check_path_example_is_weak_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_p4(dir.path());
    let out = sspwl(&["check", "--graph", &g, "--weights", "0.5,1,1.5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["weak"], true);
    assert_eq!(v["property"], "SSPWL");
    let x = &v["witness"];
    let c = [
        x[0][2].as_f64().unwrap(),
        x[0][3].as_f64().unwrap(),
        x[1][3].as_f64().unwrap(),
    ];
    let k = c[2] / -1.0;
    for (got, want) in c.iter().zip([3.0, 4.0, -1.0]) {
        assert!((got / k - want).abs() < 1e-9);
    }
    assert_eq!(v["psi"].as_array().unwrap().len(), 3);
}

#[test]
fn aac_of_the_four_cycle() {
    let out = sspwl(&["aac", "--family", "c4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!((v["value"].as_f64().unwrap() - 2.0).abs() <= 1e-3);
    assert_eq!(v["weak"], true);
}

#[test]
fn empty_region_is_header_only() {
    let out = sspwl(&["region", "--family", "paw", "--count", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "lambda2,lambda3,weak,curve_residual\n"
    );
}

#[test]
fn outputs_are_deterministic() {
    let a = sspwl(&["region", "--family", "c4", "--count", "200", "--seed", "5"]);
    let b = sspwl(&["region", "--family", "c4", "--count", "200", "--seed", "5"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout.iter().filter(|&&c| c == b'\n').count(), 201);
    let c = sspwl(&["region", "--family", "c4", "--count", "200"]);
    let d = sspwl(&["region", "--family", "c4", "--count", "200"]);
    assert_eq!(c.stdout, d.stdout);
    let e = sspwl(&["realize", "--family", "k4", "--target", "3.9,4,4.1"]);
    let f = sspwl(&["realize", "--family", "k4", "--target", "3.9,4,4.1"]);
    assert_eq!(e.status.code(), Some(0));
    assert_eq!(e.stdout, f.stdout);
}

#[test]
fn out_file_and_boundary_script() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("curves.csv");
    let out = sspwl(&[
        "boundary",
        "--family",
        "p4",
        "--count",
        "60",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("curve_id,lambda2,lambda3\n"));
    assert!(text.contains("p4_in,") && text.contains("p4_out,"));
    let script = std::fs::read_to_string(dir.path().join("curves.gp")).unwrap();
    assert!(script.contains("curves.csv") && script.contains("region.csv"));
}

#[test]
fn transfer_and_jacobian_reports() {
    let out = sspwl(&[
        "transfer",
        "--family",
        "kne",
        "--weights",
        "3,1,3,1,1",
        "--supergraph-family",
        "k4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["residual"].as_f64().unwrap() <= 1e-10);
    assert_eq!(v["result"]["edges"].as_array().unwrap().len(), 6);
    let out = sspwl(&["jacobian", "--family", "star", "--weights", "1,2,3"]);
    let v = json(&out);
    assert!((v["det"].as_f64().unwrap() + 48.0).abs() < 1e-9);
}

#[test]
fn matrix_csv_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("a.csv");
    std::fs::write(&m, "4,0,-3,-1\n0,4,-3,-1\n-3,-3,7,-1\n-1,-1,-1,3\n").unwrap();
    let out = sspwl(&["check", "--matrix", m.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["strong"], true);
    let adj = dir.path().join("c4.csv");
    std::fs::write(&adj, "0,1,0,1\n1,0,1,0\n0,1,0,1\n1,0,1,0\n").unwrap();
    let out = sspwl(&[
        "check",
        "--matrix",
        adj.to_str().unwrap(),
        "--property",
        "ssp",
    ]);
    assert_eq!(json(&out)["strong"], false);
    let out = sspwl(&[
        "jacobian",
        "--matrix",
        adj.to_str().unwrap(),
        "--property",
        "nssp",
    ]);
    assert_eq!(json(&out)["full_rank"], false);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_p4(dir.path());
    // validation: wrong weight count, missing file, unknown family
    assert_eq!(
        sspwl(&["check", "--graph", &g, "--weights", "1,2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        sspwl(&["check", "--graph", "missing.json", "--weights", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(sspwl(&["region", "--family", "k5"]).status.code(), Some(2));
    assert_eq!(sspwl(&["frobnicate"]).status.code(), Some(2));
    // numerical: a spectrum the star cannot realize
    assert_eq!(
        sspwl(&["realize", "--family", "star", "--target", "1,2,5"])
            .status
            .code(),
        Some(3)
    );
    // indeterminate: a retained singular value within a factor 10 of the tolerance
    let out = sspwl(&[
        "check",
        "--graph",
        &g,
        "--weights",
        "0.5,1,1.5",
        "--tol",
        "0.5",
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(json(&out)["indeterminate"], true);
}

#[test]
fn selftest_reports_every_criterion() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("selftest.json");
    let out = sspwl(&["selftest", "--out", report.to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 13);
    let failed: Vec<&str> = lines
        .iter()
        .copied()
        .filter(|l| l.starts_with("FAIL"))
        .collect();
    assert_eq!(failed.len(), 1);
    assert!(failed[0].starts_with("FAIL  5"));
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 13);
}
