use std::process::Command;

use treewass_core::rational::{int, qpow};

fn treewass(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_treewass")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn fixture() -> String {
    concat!(env!("CARGO_MANIFEST_DIR"), "/../core/fixtures/figure1.json").to_string()
}

#[test]
fn w1_on_the_figure_fixture() {
    let (code, out, _) = treewass(&["w1", &fixture(), "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passed"], true);
    let provenance: Vec<&str> = v["records"].as_array().unwrap().iter().map(|r| r["provenance"].as_str().unwrap()).collect();
    assert_eq!(provenance, ["flow", "potential", "lp"]);
    assert!(v["records"].as_array().unwrap().iter().all(|r| r["w1_exact"] == "12"));
    assert_eq!(v["duality"], serde_json::json!({"primal": "12", "dual": "12", "certificate": true}));
}

#[test]
fn w1_reports_bad_input() {
    let dir = std::env::temp_dir().join(format!("treewass-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, "{\n  \"vertices\": [\"a\"],\n  \"edges\": [[\"a\", \"b\"]],\n  \"mu\": {}, \"nu\": {}\n}").unwrap();
    let (code, _, err) = treewass(&["w1", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains('b'), "{err}");
    std::fs::write(&path, "{\n  \"vertices\": [\n").unwrap();
    let (code, _, err) = treewass(&["w1", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line"), "{err}");
}

#[test]
fn radial_instance_round_trip() {
    let dir = std::env::temp_dir().join(format!("treewass-radial-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ball.json");
    let (code, out, _) =
        treewass(&["w1", "--profile", "ball:r=1", "--q", "2", "--d", "2", "--save-instance", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    let first = out.lines().next().unwrap().split_whitespace().nth(1).unwrap().to_string();
    let (code, again, _) = treewass(&["w1", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(again.lines().all(|l| !l.starts_with("flow") || l.contains(&first)));
    assert!(out.contains("lp"));
}

#[test]
fn asym_json() {
    let (code, out, _) = treewass(&["asym", "--family", "ball", "--d", "2", "--q", "3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["A"], "4/3");
    assert_eq!(v["B"], "1");
    assert_eq!(v["exact_for_large_n"], false);
}

#[test]
fn sweep_csv_is_deterministic() {
    let args = ["sweep", "--family", "srw", "--alpha", "1/2,0", "--d", "1..2", "--q", "2,3", "--n", "0..12"];
    let (code, a, _) = treewass(&args);
    let (_, b, _) = treewass(&args);
    assert_eq!(code, 0);
    assert_eq!(a, b);
    let mut lines = a.lines();
    assert_eq!(lines.next(), Some("family,alpha,d,q,n,w1_exact,w1_decimal,asym,residual"));
    assert_eq!(lines.count(), 2 * 2 * 2 * 13);
}

#[test]
fn sweep_ball_matches_closed_form() {
    let (code, out, _) = treewass(&["sweep", "--family", "ball", "--d", "1", "--q", "3", "--n", "0..30"]);
    assert_eq!(code, 0);
    for line in out.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let n: i64 = f[4].parse().unwrap();
        let w = treewass_core::rational::parse_rational(f[5]).unwrap();
        let exact = int(2) / (int(4) - int(2) * qpow(3, -n)) * int(2 * n + 1);
        assert_eq!(w, exact, "n={n}");
    }
}

#[test]
fn series_csv() {
    let (code, out, _) = treewass(&["series", "--family", "srw", "--alpha", "1/2", "--q", "3", "--order", "40", "--emit", "csv"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n,gamma,G,G1");
    assert_eq!(lines.len(), 42);
    assert_eq!(lines[2], "1,1/2,7/8,1/8");
}

#[test]
fn verify_ineq_table() {
    let (code, out, _) = treewass(&["verify-ineq", "--grid", "alpha=0,1/4,1/2,9/10", "d=1..6", "q=2..10"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 1 + 4 * 6 * 9);
    assert!(out.lines().skip(1).all(|l| l.contains(",pass,")));
}

#[test]
fn verify_suites() {
    for suite in ["duality", "triple", "series", "inequalities", "oeis"] {
        let (code, out, err) = treewass(&["verify", suite, "--seed", "7"]);
        assert_eq!(code, 0, "{suite}: {err}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["passed"], true);
    }
}

#[test]
fn bad_arguments_exit_nonzero() {
    assert_eq!(treewass(&["asym", "--family", "torus", "--d", "1", "--q", "2"]).0, 2);
    assert_eq!(treewass(&["asym", "--family", "srw", "--d", "1", "--q", "1"]).0, 2);
    assert_eq!(treewass(&["sweep", "--family", "srw", "--n", "0..5000"]).0, 2);
}
