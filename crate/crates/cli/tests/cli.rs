use assert_cmd::Command;
use serde_json::Value;

fn bin() -> Command {
    Command::cargo_bin("sincbinom").unwrap()
}

fn run_json(args: &[&str]) -> Value {
    let out = bin().args(args).assert().success().get_output().stdout.clone();
    serde_json::from_slice(&out).unwrap()
}

fn re_im(v: &Value) -> (f64, f64) {
    (v["re"].as_f64().unwrap(), v["im"].as_f64().unwrap())
}

#[test]
fn eval_examples() {
    let v = run_json(&["eval", "--w", "4", "--z", "2"]);
    assert_eq!(re_im(&v["value"]), (6.0, 0.0));
    assert_eq!(v["method"], "gamma-ratio");

    let v = run_json(&["eval", "--w", "1+1i", "--z", "0", "--method", "sinc-series"]);
    let (re, im) = re_im(&v["value"]);
    assert!((re - 1.0).abs() < 1e-12 && im.abs() < 1e-12);
    assert_eq!(v["method"], "sinc-series");

    let v = run_json(&["eval", "--w", "3", "--z", "0.5", "--method", "finite-sum"]);
    let (re, _) = re_im(&v["value"]);
    assert!((re - 32.0 / (5.0 * std::f64::consts::PI)).abs() < 1e-13);
    assert_eq!(v["terms_used"], 4);
}

#[test]
fn eval_accepts_negative_and_pure_imaginary_arguments() {
    let v = run_json(&["eval", "--w", "-i", "--z", "-0.5"]);
    assert!(v["value"]["re"].as_f64().unwrap().is_finite());
    let v = run_json(&["eval", "--w", "i", "--z", "1"]);
    assert_eq!(re_im(&v["value"]), (0.0, 1.0));
}

#[test]
fn eval_csv_round_trips_floats() {
    let out = bin()
        .args(["eval", "--w", "0.3+0.7i", "--z", "2.1-0.4i", "--format", "csv"])
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    let text = String::from_utf8(out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "re,im,abs_error_estimate,terms_used,method");
    let fields: Vec<&str> = lines.next().unwrap().split(',').collect();
    let json = run_json(&["eval", "--w", "0.3+0.7i", "--z", "2.1-0.4i"]);
    let (re, im) = re_im(&json["value"]);
    assert_eq!(fields[0].parse::<f64>().unwrap(), re);
    assert_eq!(fields[1].parse::<f64>().unwrap(), im);
}

#[test]
fn usage_and_domain_errors_exit_1() {
    let a = bin().args(["eval", "--w", "1+2j", "--z", "1"]).assert().code(1);
    let err = String::from_utf8(a.get_output().stderr.clone()).unwrap();
    assert!(err.contains("1+2j"), "{err}");
    bin().args(["eval", "--w", "-1", "--z", "0.5"]).assert().code(1);
    bin().args(["eval", "--w", "1", "--z", "0.5", "--method", "bogus"]).assert().code(1);
    bin().args(["eval", "--w", "0.5", "--z", "0.5", "--method", "finite-sum"]).assert().code(1);
    bin().args(["frobnicate"]).assert().code(1);
    bin().args(["table", "--x-min", "2", "--x-max", "1"]).assert().code(1);
    bin().args(["table", "--step", "0"]).assert().code(1);
    bin().args(["verify", "--identity", "nope", "--w", "1", "--z", "0.5"]).assert().code(1);
    bin().args(["verify", "--identity", "cot", "--w", "1"]).assert().code(1);
    bin().args(["integrate", "--w", "1", "--kernel", "sech"]).assert().code(1);
    bin().args(["--help"]).assert().code(0);
}

#[test]
fn no_convergence_exits_2() {
    bin()
        .args(["eval", "--w", "-0.9+0.3i", "--z", "0.5", "--method", "sinc-series", "--max-terms", "64"])
        .assert()
        .code(2);
}

#[test]
fn failed_checks_exit_3() {
    // a tiny term budget turns every infinite sum into a failed report
    let a = bin()
        .args(["battery", "--samples", "1", "--max-terms", "8"])
        .assert()
        .code(3);
    let reports: Value = serde_json::from_slice(&a.get_output().stdout).unwrap();
    assert_eq!(reports.as_array().unwrap().len(), 7);
}

#[test]
fn table_matches_lattice_values() {
    let out = bin().args(["table", "--w", "1+i"]).assert().success().get_output().stdout.clone();
    let text = String::from_utf8(out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "x,re,im,abs_err");
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|f| f.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 201);
    let at = |x: f64| rows.iter().find(|r| r[0] == x).unwrap_or_else(|| panic!("no row at {x}"));
    assert_eq!((at(0.0)[1], at(0.0)[2]), (1.0, 0.0));
    assert!((at(1.0)[1] - 1.0).abs() < 1e-14 && (at(1.0)[2] - 1.0).abs() < 1e-14);
    assert!(at(-2.0)[1].abs() < 1e-10 && at(-2.0)[2].abs() < 1e-10);
    assert!(at(-1.0)[1].abs() < 1e-10 && at(-1.0)[2].abs() < 1e-10);
    // C(1+i, 2) = (1+i) i / 2
    assert!((at(2.0)[1] + 0.5).abs() < 1e-14 && (at(2.0)[2] - 0.5).abs() < 1e-14);
    assert!(rows.windows(2).all(|p| p[0][0] < p[1][0]));
}

#[test]
fn integrate_examples() {
    let v = run_json(&["integrate", "--w", "2", "--kernel", "sinc-shift", "--a", "0.5"]);
    let exact = 16.0 / (3.0 * std::f64::consts::PI);
    assert!((v["series"]["value"]["re"].as_f64().unwrap() - exact).abs() < 1e-12);
    assert!((v["quadrature"]["value"]["re"].as_f64().unwrap() - exact).abs() < 1e-7);
    assert!(v["residual"].as_f64().unwrap() < 1e-7);

    // C(1, i) + C(1, -i) = sinh(π)/π, so the correction term is e^{-π}/2
    let v = run_json(&["integrate", "--w", "1", "--kernel", "rational-square", "--alpha", "1"]);
    let exact = 1.5 - 0.5 * (-std::f64::consts::PI).exp();
    assert!((v["series"]["value"]["re"].as_f64().unwrap() - exact).abs() < 1e-12);
    assert!((v["quadrature"]["value"]["re"].as_f64().unwrap() - exact).abs() < 1e-7);

    let v = run_json(&["integrate", "--w", "1i", "--kernel", "sech", "--alpha", "1"]);
    // α 2^{iα} Γ(iα/2 + 1/2) / (√π Γ(iα/2 + 1)) at α = 1
    let (re, im) = re_im(&v["series"]["value"]);
    assert!((re - 0.750_871_601_336_4).abs() < 1e-4 && (im - 0.141_665_625_560_1).abs() < 1e-4);
    assert!(v["residual"].as_f64().unwrap() < 1e-4);
}

#[test]
fn verify_examples() {
    let v = run_json(&["verify", "--identity", "sinc-representation", "--w", "6", "--z", "4"]);
    assert_eq!(v["pass"], true);
    assert!((v["lhs"]["re"].as_f64().unwrap() - 15.0).abs() < 1e-9);
    assert!((v["rhs"]["re"].as_f64().unwrap() - 15.0).abs() < 1e-9);
    assert_eq!(v["identity_id"], "SincRepresentation");

    let v = run_json(&["verify", "--identity", "cot", "--w", "2", "--z", "0.25"]);
    assert_eq!(v["pass"], true);
    assert!(v["abs_residual"].as_f64().unwrap() < 1e-8);

    let v = run_json(&["verify", "--identity", "sech", "--alpha", "1-0.5i"]);
    assert_eq!(v["pass"], true);
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(
        keys,
        ["abs_residual", "diagnostics", "identity_id", "lhs", "pass", "rel_residual", "rhs", "tolerance"]
    );
}

#[test]
fn battery_is_byte_identical_across_runs_and_threads() {
    let run = |threads: &str| {
        bin()
            .args(["battery", "--samples", "2", "--seed", "7", "--threads", threads])
            .assert()
            .success()
            .get_output()
            .stdout
            .clone()
    };
    let a = run("1");
    assert_eq!(a, run("1"));
    assert_eq!(a, run("3"));
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 14);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("sincbinom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("eval.json");
    bin()
        .args(["eval", "--w", "4", "--z", "2", "--out", path.to_str().unwrap()])
        .assert()
        .success()
        .stdout("");
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(re_im(&v["value"]), (6.0, 0.0));
    std::fs::remove_dir_all(&dir).unwrap();
}
