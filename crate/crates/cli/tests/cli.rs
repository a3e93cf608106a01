//! End-to-end tests of the polebound binary: exit statuses, output formats,
//! determinism, and the negative-control verification path.

use std::process::{Command, Output};

fn polebound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polebound"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn coeffs_both_routes_agree_for_tan() {
    let out = polebound(&["coeffs", "--family", "tan", "--count", "3", "--method", "both"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "p,value,value_direct,abs_diff");
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 4);
        let diff: f64 = fields[3].parse().unwrap();
        assert!(diff <= 1e-12, "{line}");
    }
    // first row is T_1 = 1
    assert!(text.lines().nth(1).unwrap().starts_with("1,1.0000000000000000e0"));
}

#[test]
fn coeffs_cosec_matches_symbolic() {
    let out = polebound(&["coeffs", "--family", "cosec", "--count", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let row2: Vec<&str> = text.lines().nth(2).unwrap().split(',').collect();
    let d2: f64 = row2[1].parse().unwrap();
    let want = 2.0 * std::f64::consts::PI.powi(2) / 3.0 - 5.0;
    assert!((d2 - want).abs() < 1e-13);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(
        polebound(&["coeffs", "--family", "tan", "--count", "21"]).status.code(),
        Some(2)
    );
    assert_eq!(
        polebound(&["coeffs", "--family", "nope", "--count", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(polebound(&["crossover", "--m", "40"]).status.code(), Some(2));
    assert_eq!(
        polebound(&["coeffs", "--family", "tan", "--count", "3", "--precision", "18"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        polebound(&["coeffs", "--family", "tan", "--count", "3", "--precision", "5"])
            .status
            .code(),
        Some(2)
    );
    // domain violation names the valid interval
    let out = polebound(&[
        "table", "--family", "tan", "--order", "0", "--side", "upper", "--xmin", "-1.5",
        "--xmax", "0.5", "--samples", "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("(-1, 1)"), "{err}");
}

#[test]
fn table_upper_bounds_dominate_reference() {
    let out = polebound(&[
        "table", "--family", "tan", "--order", "0", "--side", "upper", "--xmin", "-0.5",
        "--xmax", "0.5", "--samples", "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 4);
    for line in text.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        let bound: f64 = fields[1].parse().unwrap();
        let reference: f64 = fields[2].parse().unwrap();
        assert!(bound >= reference);
    }
}

#[test]
fn table_sec_lower_order_one() {
    let out = polebound(&[
        "table", "--family", "sec", "--order", "1", "--side", "lower", "--sharpened",
        "--xmin", "-0.8", "--xmax", "0.8", "--samples", "9",
    ]);
    assert_eq!(out.status.code(), Some(0));
    for line in stdout(&out).lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        let bound: f64 = fields[1].parse().unwrap();
        let reference: f64 = fields[2].parse().unwrap();
        assert!(bound <= reference + 1e-13);
    }
}

#[test]
fn table_cot_is_exact_at_origin() {
    let out = polebound(&[
        "table", "--family", "cot", "--order", "2", "--side", "lower", "--xmin", "-0.5",
        "--xmax", "0.5", "--samples", "3",
    ]);
    let text = stdout(&out);
    let mid: Vec<&str> = text.lines().nth(2).unwrap().split(',').collect();
    assert_eq!(mid[0].parse::<f64>().unwrap(), 0.0);
    assert_eq!(mid[1].parse::<f64>().unwrap(), 0.0);
    assert_eq!(mid[2].parse::<f64>().unwrap(), 0.0);
}

#[test]
fn verify_full_default_run_exits_0() {
    let out = polebound(&["verify"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.starts_with("check,family,passed,worst_margin,detail"));
    assert!(text.lines().skip(1).all(|l| l.split(',').nth(2) == Some("true")));
    // per-family summaries on stderr
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("tan:") && err.contains("global:"));
}

#[test]
fn verify_corrupted_table_exits_1() {
    let out = polebound(&["verify", "--inject-corruption", "--families", "tan", "--orders", "0..2", "--samples", "101"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.lines().any(|l| l.contains("oracle-equivalence") && l.contains("false")));
}

#[test]
fn verify_filtered_run_is_quick_and_passes() {
    let start = std::time::Instant::now();
    let out = polebound(&["verify", "--families", "tan", "--orders", "0..2", "--samples", "100"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(start.elapsed().as_secs_f64() < 1.0, "took {:?}", start.elapsed());
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        vec!["coeffs", "--family", "sec", "--count", "6", "--method", "both"],
        vec![
            "table", "--family", "tan", "--order", "3", "--side", "lower", "--sharpened",
            "--xmin", "-0.9", "--xmax", "0.9", "--samples", "25", "--format", "json",
        ],
        vec!["verify", "--families", "cot", "--orders", "0..2", "--samples", "51"],
        vec!["bessel", "--p", "1", "--r", "3.0", "--order", "2"],
    ] {
        let a = polebound(&args);
        let b = polebound(&args);
        assert_eq!(a.stdout, b.stdout, "args: {args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn crossover_winners_at_m40() {
    let out = polebound(&["crossover", "--m", "40", "--x", "0.2", "--x", "0.5", "--x", "0.05"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let winners: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').next_back().unwrap())
        .collect();
    assert_eq!(winners, ["taylor", "laurent", "taylor"]);
}

#[test]
fn bessel_upper_is_exact_at_origin_and_collapses_at_the_rim() {
    let out = polebound(&["bessel", "--p", "0", "--r", "2.0", "--order", "2", "--x", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let upper: f64 = row[3].parse().unwrap();
    assert!((upper - 1.0).abs() <= 1e-13); // 1/(2^0 Gamma(1)) = 1

    let out = polebound(&[
        "bessel", "--p", "1", "--r", "3.0", "--order", "1", "--x", "3.0", "--x", "-3.0",
    ]);
    for line in stdout(&out).lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let lo: f64 = f[1].parse().unwrap();
        let hi: f64 = f[3].parse().unwrap();
        assert!((lo - hi).abs() <= 1e-14);
    }
}

#[test]
fn bessel_sweep_brackets_reference() {
    // p = 2.5 with r = 0.9 j_{3.5,1} ~ 6.289
    let out = polebound(&[
        "bessel", "--p", "2.5", "--r", "6.289", "--order", "3", "--xmin", "-6.289", "--xmax",
        "6.289", "--samples", "101",
    ]);
    assert_eq!(out.status.code(), Some(0));
    for line in stdout(&out).lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let lo: f64 = f[1].parse().unwrap();
        let reference: f64 = f[2].parse().unwrap();
        let hi: f64 = f[3].parse().unwrap();
        assert!(lo - 1e-12 <= reference && reference <= hi + 1e-12, "{line}");
    }
}

#[test]
fn shifted_table_validates_and_reports_columns() {
    let out = polebound(&["shifted", "--r", "0.5", "--count", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("p,recursive,direct,abs_diff,validated"));
    for line in text.lines().skip(1) {
        assert!(line.ends_with("true"));
    }
    // first row is T~_1(1/2) = 2 pi
    let first: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let v: f64 = first[1].parse().unwrap();
    assert!((v - 2.0 * std::f64::consts::PI).abs() < 1e-12);
}

#[test]
fn json_output_has_stable_keys_and_parses_minimally() {
    let out = polebound(&[
        "coeffs", "--family", "tan", "--count", "2", "--format", "json", "--precision", "8",
    ]);
    let text = stdout(&out);
    assert!(text.starts_with("[\n"));
    assert!(text.trim_end().ends_with(']'));
    assert!(text.contains("{\"p\": 1, \"value\": 1.0000000e0},"));
    assert!(text.contains("{\"p\": 2, \"value\": 2.8986813e-1}"));
}

#[test]
fn out_flag_writes_the_same_bytes_to_a_file() {
    let dir = std::env::temp_dir().join("polebound-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("coeffs.csv");
    let direct = polebound(&["coeffs", "--family", "cot", "--count", "4"]);
    let to_file = polebound(&[
        "coeffs", "--family", "cot", "--count", "4", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(to_file.status.code(), Some(0));
    assert!(to_file.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
    std::fs::remove_file(&path).unwrap();
}
