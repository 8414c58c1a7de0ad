use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_resolvent-bounds"))
        .args(args)
        .output()
        .expect("binary launches")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn xnorm_closed_form_boundary_case() {
    let out = run(&["xnorm", "--n", "3", "--r", "1", "--beta", "2"]);
    assert!(out.status.success());
    let report = stdout_json(&out);
    let want = 1.0 / (std::f64::consts::PI / 12.0).tan();
    for key in ["norm_char_eq", "norm_oracle"] {
        let got = report[key].as_f64().unwrap();
        assert!((got - want).abs() < 1e-9 * want, "{key} = {got}");
    }
    assert_eq!(report["root_census"]["predicted_count"].as_u64(), Some(6));
    assert_eq!(report["root_census"]["found_trig"].as_array().unwrap().len(), 6);
}

#[test]
fn xnorm_degenerate_weight_reports_unit_norm() {
    let out = run(&["xnorm", "--n", "5", "--r", "0.5", "--beta", "0.75"]);
    assert!(out.status.success());
    let report = stdout_json(&out);
    assert_eq!(report["norm_char_eq"].as_f64(), Some(1.0));
    assert!(report["root_census"].is_null());
    assert!(report["rel_gap"].as_f64().unwrap() < 1e-8);
}

#[test]
fn xnorm_rejects_zero_radius() {
    let out = run(&["xnorm", "--n", "3", "--r", "0", "--beta", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("radius"));
}

#[test]
fn bound_closed_form_reciprocal_power() {
    let out = run(&[
        "bound",
        "--method",
        "theorem3",
        "--zeta",
        "0",
        "--spectrum",
        r#"[{"re":-0.5,"im":0,"mult":4}]"#,
    ]);
    assert!(out.status.success());
    let report = stdout_json(&out);
    assert_eq!(report["bound_value"].as_f64(), Some(16.0));
}

#[test]
fn bound_ingredients_reconstruct_value() {
    let out = run(&[
        "bound",
        "--method",
        "theorem1",
        "--zeta",
        "0.9",
        "--spectrum",
        r#"[{"re":0.2,"im":0.1,"mult":2},{"re":-0.4,"im":0,"mult":1}]"#,
    ]);
    assert!(out.status.success());
    let report = stdout_json(&out);
    let r = report["r"].as_f64().unwrap();
    let d1 = report["d1"].as_f64().unwrap();
    let deg = report["deg"].as_u64().unwrap() as i32;
    let xnorm = report["xnorm"].as_f64().unwrap();
    let value = report["bound_value"].as_f64().unwrap();
    let rebuilt = xnorm / (d1 * r.powi(deg));
    assert!((rebuilt - value).abs() < 1e-12 * value);
}

#[test]
fn bound_prop2_requires_unimodular_spectrum() {
    let out = run(&[
        "bound",
        "--method",
        "prop2",
        "--zeta",
        "2",
        "--spectrum",
        r#"[{"re":0.5,"im":0,"mult":1}]"#,
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unimodular"));
}

#[test]
fn bound_reads_spectrum_from_file() {
    let path = std::env::temp_dir().join("resolvent_bounds_cli_spectrum.json");
    std::fs::write(&path, r#"[{"re":1,"im":0,"mult":1},{"re":-1,"im":0,"mult":1}]"#).unwrap();
    let out = run(&[
        "bound",
        "--method",
        "prop2",
        "--zeta",
        "2",
        "--spectrum-file",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["bound_value"].as_f64(), Some(1.0));
}

#[test]
fn audit_is_deterministic_per_seed() {
    let args = ["audit", "--n", "3", "--trials", "60", "--seed", "7"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(stdout_json(&first)["violations"].as_u64(), Some(0));
}

#[test]
fn sweep_boundary_radius_matches_closed_form() {
    let out = run(&["sweep", "--n-min", "1", "--n-max", "6", "--r", "1", "--beta", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("n,r,beta,norm,method,limit,predicted_roots,found_roots")
    );
    for (i, line) in lines.enumerate() {
        let cells: Vec<&str> = line.split(',').collect();
        let n = (i + 1) as f64;
        assert_eq!(cells[0], format!("{}", i + 1));
        let norm: f64 = cells[3].parse().unwrap();
        let want = 1.0 / (std::f64::consts::PI / (4.0 * n)).tan();
        assert!((norm - want).abs() < 1e-9 * want, "n = {n}");
        assert_eq!(cells[5], "", "no finite-size limit at r = 1");
        assert_eq!(cells[6], cells[7], "predicted vs found at n = {n}");
    }
}

#[test]
fn sweep_lemma_cases_predict_their_scans() {
    let out = run(&["sweep", "--lemma-cases"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for line in text.lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells[6], cells[7], "row {line}");
    }
}

#[test]
fn roots_census_accounts_for_every_eigenvalue() {
    let out = run(&["roots", "--n", "5", "--r", "0.5", "--beta", "1.6"]);
    assert!(out.status.success());
    let census = stdout_json(&out);
    let trig = census["found_trig"].as_array().unwrap().len();
    let plus = census["found_cosh_plus"].as_array().unwrap().len();
    let minus = census["found_cosh_minus"].as_array().unwrap().len();
    assert_eq!(census["predicted_count"].as_u64(), Some(trig as u64));
    assert_eq!(trig / 2 + plus + minus, 5);
    assert_eq!(census["lambda_squares"].as_array().unwrap().len(), 5);
}

#[test]
fn certify_boundary_family_passes() {
    let out = run(&["certify", "--family", "boundary"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 36);
    assert!(rows.iter().all(|row| row.ends_with(",pass")));
}
