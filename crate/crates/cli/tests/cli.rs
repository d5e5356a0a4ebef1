use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minlength"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn temp_file(contents: &str) -> tempfile::NamedTempFile {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(contents.as_bytes()).unwrap();
    file
}

#[test]
fn correction_json_keys() {
    let out = run(&[
        "correction",
        "--n",
        "1",
        "--eta",
        "0.5",
        "--xi",
        "1e-6",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    for key in [
        "p4_term",
        "anticommutator_term",
        "softcore_term",
        "log_term",
        "total",
    ] {
        assert!(v[key].is_number(), "missing {key}");
    }
    let sum: f64 = [
        "p4_term",
        "anticommutator_term",
        "softcore_term",
        "log_term",
    ]
    .iter()
    .map(|k| v[k].as_f64().unwrap())
    .sum();
    assert!((sum / v["total"].as_f64().unwrap() - 1.0).abs() < 1e-10);
}

#[test]
fn correction_zero_deformation() {
    let out = run(&[
        "correction",
        "--n",
        "1",
        "--beta-t",
        "0",
        "--beta-prime-t",
        "0",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let total = header.iter().position(|&h| h == "total").unwrap();
    assert_eq!(row[total], "0");
}

#[test]
fn correction_usage_errors() {
    assert_eq!(code(&run(&["correction", "--n", "2", "--eta", "2"])), 2);
    assert_eq!(
        code(&run(&[
            "correction",
            "--n",
            "2",
            "--eta",
            "2",
            "--xi",
            "1e-6"
        ])),
        2
    );
    assert_eq!(code(&run(&["correction", "--n", "1"])), 2);
    let mixed = run(&[
        "correction",
        "--n",
        "1",
        "--eta",
        "0.5",
        "--xi",
        "1e-6",
        "--beta-t",
        "1e-9",
    ]);
    assert_eq!(code(&mixed), 2);
    assert_eq!(
        code(&run(&[
            "correction",
            "--n",
            "21",
            "--eta",
            "0.5",
            "--xi",
            "1e-6"
        ])),
        2
    );
    let bad_beta = run(&[
        "correction",
        "--n",
        "1",
        "--beta-t",
        "1e-9",
        "--beta-prime-t",
        "3e-9",
    ]);
    assert_eq!(code(&bad_beta), 2);
}

#[test]
fn sweep_three_points() {
    let out = run(&["sweep", "--points", "3"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "eta,xi,delta_x_min_m");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("0.333333333333,"));
    assert!(lines[3].starts_with("1,"));
}

#[test]
fn sweep_full_curve_is_monotone() {
    let out = run(&["sweep", "--points", "1000", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let values: Vec<f64> = stdout(&out)
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    assert_eq!(values.len(), 1000);
    assert!(values.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn sweep_is_deterministic() {
    let a = run(&["sweep", "--points", "50", "--format", "json"]);
    let b = run(&["sweep", "--points", "50", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn sweep_dataset_errors() {
    let out = run(&["sweep", "--dataset", "missing.txt"]);
    assert_eq!(code(&out), 1);
    assert!(!out.stderr.is_empty());
    let bad = temp_file("l1s_khz = \"many\"\n");
    assert_eq!(
        code(&run(&["sweep", "--dataset", bad.path().to_str().unwrap()])),
        1
    );
    assert_eq!(code(&run(&["sweep", "--points", "1"])), 2);
}

#[test]
fn sweep_vacuous_budget_warns() {
    let data = temp_file(
        "l1s_khz = 8172840\nl1s_unc_khz = 22\nl2s_khz = 1045009.4\nl2s_unc_khz = 6.5\n\
         delta2_theor_khz = 187300\ndelta2_theor_unc_khz = 0.05\n",
    );
    let out = run(&[
        "sweep",
        "--points",
        "4",
        "--dataset",
        data.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("vacuous"));
    assert_eq!(stdout(&out).lines().count(), 5);
}

#[test]
fn constants_file_scales_bound() {
    let base = run(&[
        "sweep",
        "--points",
        "2",
        "--format",
        "json",
        "--precision",
        "17",
    ]);
    let constants =
        temp_file("bohr_radius_m = 5.29177210903e-11\ncoulomb_unit_hz = 2.6318735682008e16\n");
    let scaled = run(&[
        "sweep",
        "--points",
        "2",
        "--format",
        "json",
        "--precision",
        "17",
        "--constants",
        constants.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&scaled), 0);
    let a: Value = serde_json::from_str(&stdout(&base)).unwrap();
    let b: Value = serde_json::from_str(&stdout(&scaled)).unwrap();
    let ratio = b[0]["delta_x_min_m"].as_f64().unwrap() / a[0]["delta_x_min_m"].as_f64().unwrap();
    assert!((ratio - 0.5).abs() < 1e-12, "{ratio}");
}

#[test]
fn oracle_check_small_deformation_passes() {
    let out = run(&[
        "oracle-check",
        "--n",
        "1..5",
        "--beta",
        "1e-8",
        "--tol",
        "1e-4",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().count(), 16);
}

#[test]
fn oracle_check_forced_failure() {
    let out = run(&["oracle-check", "--tol", "1e-30"]);
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).starts_with("n,beta_t,eta,"));
}

#[test]
fn oracle_check_json_array() {
    let out = run(&[
        "oracle-check",
        "--n",
        "1..2",
        "--beta",
        "1e-8",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let cells = v.as_array().unwrap();
    assert_eq!(cells.len(), 6);
    assert!(cells
        .iter()
        .all(|c| c["rel_dev"].is_number() && c["pass"] == Value::Bool(true)));
}

#[test]
fn oracle_check_usage_errors() {
    assert_eq!(code(&run(&["oracle-check", "--tol", "0"])), 2);
    assert_eq!(code(&run(&["oracle-check", "--n", "0..3"])), 2);
    assert_eq!(code(&run(&["oracle-check", "--n", "abc"])), 2);
    assert_eq!(code(&run(&["oracle-check", "--eta", "0.2"])), 2);
}

#[test]
fn specfun_values() {
    let out = run(&["specfun", "bessel-y", "--order", "0", "--x", "1.0"]);
    assert_eq!(code(&out), 0);
    let value = stdout(&out)
        .lines()
        .nth(1)
        .unwrap()
        .rsplit(',')
        .next()
        .unwrap()
        .to_string();
    assert!(value.starts_with("0.088256964"), "{value}");

    let a = run(&["specfun", "y0-deriv", "--order", "0", "--x", "2.5"]);
    let b = run(&["specfun", "bessel-y", "--order", "0", "--x", "2.5"]);
    let last = |o: &Output| {
        stdout(o)
            .lines()
            .nth(1)
            .unwrap()
            .rsplit(',')
            .next()
            .unwrap()
            .to_string()
    };
    assert_eq!(last(&a), last(&b));
}

#[test]
fn specfun_errors() {
    assert_eq!(
        code(&run(&["specfun", "struve-h", "--order", "2", "--x", "1"])),
        2
    );
    assert_eq!(
        code(&run(&["specfun", "gamma", "--order", "0", "--x", "1"])),
        2
    );
    assert_eq!(
        code(&run(&["specfun", "bessel-y", "--order", "0", "--x", "-1"])),
        2
    );
    assert_eq!(
        code(&run(&["specfun", "bessel-y", "--order", "0", "--x", "60"])),
        1
    );
}

#[test]
fn precision_bounds() {
    assert_eq!(
        code(&run(&["--precision", "5", "sweep", "--points", "2"])),
        2
    );
    assert_eq!(
        code(&run(&["--precision", "18", "sweep", "--points", "2"])),
        2
    );
    let out = run(&["--precision", "6", "sweep", "--points", "2"]);
    assert!(stdout(&out)
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("0.333333,"));
}
