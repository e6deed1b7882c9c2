//! End-to-end tests of the `cib` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const BOUNDS: &[&str] = &["bounds", "--m-a", "1e6mp", "--d", "1e6lp", "--r", "1e8lp"];
const SWEEP: &[&str] = &[
    "sweep", "--sweep", "R", "--from", "1e8lp", "--to", "1e10lp", "--points", "5", "--log", "--m-a", "1e6mp", "--d", "1e6lp",
];
const SIMULATE: &[&str] = &[
    "simulate", "--model", "displacement", "--t-max", "auto", "--steps", "8", "--m-a", "1e8mp", "--d", "1e6lp", "--r", "1e9lp",
];
const CAUSAL: &[&str] = &["causal", "--t-a", "1.5", "--t-b", "0.6", "--r", "1", "--units", "planck"];

fn cib(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cib")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = cib(args);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

fn error_object(args: &[&str], code: i32) -> Value {
    let out = cib(args);
    assert_eq!(out.status.code(), Some(code));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_slice(&out.stderr).expect("stderr is a JSON error object");
    assert_eq!(v["error"]["code"], code);
    assert!(v["error"]["kind"].is_string());
    assert!(v["error"]["message"].is_string());
    v
}

fn csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    (header, rows)
}

fn column(header: &[String], name: &str) -> usize {
    header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"))
}

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Compare against the stored file; `CIB_BLESS=1` rewrites it.
fn check_golden(name: &str, args: &[&str]) {
    let first = stdout(args);
    assert_eq!(first, stdout(args), "{name}: output differs between runs");
    let path = golden_path(name);
    if std::env::var_os("CIB_BLESS").is_some() {
        std::fs::write(&path, &first).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(first, expected, "{name}: output differs from golden file");
}

#[test]
fn golden_bounds() {
    check_golden("bounds.json", BOUNDS);
}

#[test]
fn golden_sweep() {
    check_golden("sweep.csv", SWEEP);
}

#[test]
fn golden_simulate() {
    check_golden("simulate.csv", SIMULATE);
}

#[test]
fn golden_causal() {
    check_golden("causal.json", CAUSAL);
}

#[test]
fn out_flag_writes_identical_bytes() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    for (i, args) in [BOUNDS, SWEEP, SIMULATE, CAUSAL].into_iter().enumerate() {
        let path = dir.join(format!("out_{i}"));
        let mut with_out: Vec<&str> = args.to_vec();
        let p = path.to_str().unwrap();
        with_out.extend(["--out", p]);
        let out = cib(&with_out);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
        assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout(args));
    }
}

#[test]
fn bounds_examples() {
    let r = &json(BOUNDS)["results"];
    assert_eq!(r["r_max_displacement"]["planck"], 5e11);
    assert_eq!(r["flags"]["displacement_backreaction_free"], true);

    let r = &json(&["bounds", "--m-a", "1mp", "--m-b", "1mp", "--d", "10lp", "--r", "1000lp", "--model", "phase"])["results"];
    assert_eq!(r["flags"]["phase_backreaction_free"], false);
    assert!(r.get("tb_displacement").is_none());
}

#[test]
fn every_numeric_field_has_provenance() {
    let v = json(BOUNDS);
    let results = v["results"].as_object().unwrap();
    let mut count = 0;
    for (name, field) in results {
        if name == "flags" {
            continue;
        }
        assert!(field["planck"].is_number(), "{name}");
        assert!(field["si"].is_number(), "{name}");
        assert!(!field["provenance"].as_str().unwrap().is_empty(), "{name}");
        count += 1;
    }
    assert_eq!(count, 13);
    let c = json(CAUSAL);
    for key in ["one_way", "round_trip"] {
        assert!(!c["results"][key]["provenance"].as_str().unwrap().is_empty());
    }
}

#[test]
fn input_echo_reproduces_results() {
    let v = json(&["bounds", "--m-a", "2.5e-3kg", "--d", "1e-6m", "--r", "0.01m"]);
    let params = v["input"]["parameters"].as_array().unwrap();
    let m_a = params.iter().find(|p| p["flag"] == "--m-a").unwrap();
    assert_eq!(m_a["input"], "2.5e-3kg");
    assert_eq!(m_a["si"], 2.5e-3);
    // re-run from the echoed Planck values
    let planck = |flag: &str| {
        let p = params.iter().find(|p| p["flag"] == flag).unwrap();
        format!("{}", p["planck"].as_f64().unwrap())
    };
    let again = json(&[
        "bounds", "--units", "planck", "--m-a", &planck("--m-a"), "--m-b", &planck("--m-b"), "--d", &planck("--d"), "--r", &planck("--r"),
    ]);
    assert_eq!(v["results"], again["results"]);
}

#[test]
fn planck_and_si_inputs_agree() {
    let a = json(&["bounds", "--m-a", "1e6mp", "--d", "1e6lp", "--r", "1e8lp"]);
    let b = json(&["bounds", "--units", "planck", "--m-a", "1e6", "--d", "1e6", "--r", "1e8"]);
    assert_eq!(a["results"], b["results"]);
}

#[test]
fn invalid_inputs_exit_2() {
    let v = error_object(&["bounds", "--m-a", "-1mp", "--d", "1lp", "--r", "1e3lp"], 2);
    assert!(v["error"]["message"].as_str().unwrap().contains("nonpositive mass"));
    error_object(&["bounds", "--d", "1lp", "--r", "1e3lp"], 2);
    error_object(&["bounds", "--m-a", "1kg", "--d", "1s", "--r", "1e3lp"], 2);
    error_object(&["bounds", "--m-a", "1mp", "--d", "1lp", "--r", "1e3lp", "--coupling", "coulomb", "--q-a", "1C", "--q-b", "1C"], 2);
    error_object(&["sweep", "--sweep", "R", "--from", "1e9lp", "--to", "1e8lp", "--points", "3", "--m-a", "1e6mp", "--d", "1e6lp"], 2);
    error_object(&["sweep", "--sweep", "R", "--from", "1e8lp", "--to", "1e9lp", "--points", "1", "--m-a", "1e6mp", "--d", "1e6lp"], 2);
    error_object(&["sweep", "--sweep", "q", "--from", "1", "--to", "2", "--points", "3", "--m-a", "1e6mp", "--d", "1e6lp"], 2);
    error_object(&["causal", "--t-a", "1", "--t-b", "1", "--r", "0", "--units", "planck"], 2);
    error_object(&["simulate", "--model", "phase", "--t-max", "-1tp", "--steps", "4", "--m-a", "1mp", "--d", "1lp", "--r", "1e3lp"], 2);
    error_object(&["nonsense"], 2);
}

#[test]
fn solver_failure_exits_3() {
    let v = error_object(
        &["simulate", "--model", "displacement", "--t-max", "auto", "--steps", "4", "--m-a", "1e-30mp", "--d", "1lp", "--r", "1e3lp"],
        3,
    );
    assert_eq!(v["error"]["kind"], "no_convergence");
}

#[test]
fn help_and_version_exit_0() {
    assert!(stdout(&["--help"]).contains("simulate"));
    assert!(stdout(&["--version"]).contains(env!("CARGO_PKG_VERSION")));
}

#[test]
fn causal_examples() {
    let run = |a: &str, b: &str| {
        let v = json(&["causal", "--t-a", a, "--t-b", b, "--r", "1", "--units", "planck"]);
        let r = &v["results"];
        (r["one_way"]["ok"].as_bool().unwrap(), r["round_trip"]["ok"].as_bool().unwrap(), r["margin"].as_f64().unwrap())
    };
    let (ow, rt, _) = run("0.6", "0.6");
    assert!(ow && !rt);
    let (ow, rt, margin) = run("1.5", "0.6");
    assert!(ow && rt);
    assert!((margin - 0.1).abs() < 1e-12);
    let (ow, rt, _) = run("0.4", "0.4");
    assert!(!ow && !rt);
    let events = json(CAUSAL)["results"]["events"].as_array().unwrap().len();
    assert_eq!(events, 5);
}

#[test]
fn eta_sweep_peaks_at_two_thirds() {
    let text = stdout(&["sweep", "--sweep", "eta", "--from", "0.001", "--to", "0.999", "--points", "999", "--m-a", "1e6mp", "--d", "1e6lp"]);
    let (header, rows) = csv(&text);
    assert_eq!(rows.len(), 999);
    let (ie, ita) = (column(&header, "eta"), column(&header, "ta_lower_bound"));
    let best = rows
        .iter()
        .max_by(|a, b| a[ita].parse::<f64>().unwrap().total_cmp(&b[ita].parse::<f64>().unwrap()))
        .unwrap();
    let eta: f64 = best[ie].parse().unwrap();
    let nearest = rows
        .iter()
        .map(|r| r[ie].parse::<f64>().unwrap())
        .min_by(|a, b| (a - 2.0 / 3.0).abs().total_cmp(&(b - 2.0 / 3.0).abs()))
        .unwrap();
    assert_eq!(eta, nearest);
}

#[test]
fn r_sweep_scaling_exponents() {
    let (header, rows) = csv(&stdout(SWEEP));
    assert_eq!(header[0], "r");
    assert_eq!(rows.len(), 5);
    let get = |row: &Vec<String>, name: &str| row[column(&header, name)].parse::<f64>().unwrap();
    for w in rows.windows(2) {
        let ratio = get(&w[1], "r") / get(&w[0], "r");
        let expo = |name: &str| (get(&w[1], name) / get(&w[0], name)).ln() / ratio.ln();
        assert!((expo("round_trip_ta_tb_min") - 1.0).abs() < 1e-12);
        assert!((expo("tb_displacement") - 1.5).abs() < 1e-12);
        assert!((expo("tb_phase_approx") - 2.0).abs() < 1e-12);
        assert!(expo("ta_min_round_trip").abs() < 1e-12);
    }
    assert_eq!(rows[0][0], "1.0000000000000000e8");
    assert_eq!(rows[4][0], "1.0000000000000000e10");
}

#[test]
fn two_point_sweep_matches_bounds() {
    let (header, rows) = csv(&stdout(&[
        "sweep", "--sweep", "m_A", "--from", "1e6mp", "--to", "1e7mp", "--points", "2", "--m-a", "1mp", "--d", "1e6lp", "--r", "1e8lp",
    ]));
    for (row, m_a) in rows.iter().zip(["1e6mp", "1e7mp"]) {
        let v = json(&["bounds", "--m-a", m_a, "--d", "1e6lp", "--r", "1e8lp"]);
        let results = &v["results"];
        for (i, name) in header.iter().enumerate().skip(1) {
            if let Some(flag) = results["flags"].get(name) {
                assert_eq!(row[i], flag.to_string(), "{name}");
            } else {
                let expected = results[name]["planck"].as_f64().unwrap();
                assert_eq!(row[i].parse::<f64>().unwrap(), expected, "{name}");
            }
        }
    }
}

#[test]
fn simulate_examples() {
    let base = ["--m-a", "1e8mp", "--d", "1e6lp", "--r", "1e9lp"];
    let with = |extra: &[&str]| {
        let mut a: Vec<&str> = extra.to_vec();
        a.extend(base);
        stdout(&a)
    };
    // phase model at the exact measurement time
    let (header, rows) = csv(&with(&["simulate", "--model", "phase", "--t-max", "auto", "--steps", "16"]));
    assert_eq!(header, ["t", "delta_phi", "overlap_magnitude"]);
    let last: f64 = rows.last().unwrap()[2].parse().unwrap();
    assert!(last <= 1e-9);

    // zero duration: one row, unit overlap
    let (header, rows) = csv(&with(&["simulate", "--model", "displacement", "--t-max", "0", "--steps", "5"]));
    assert_eq!(header, ["t", "mean_x_L", "mean_x_R", "sigma_x", "overlap_magnitude"]);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][4].parse::<f64>().unwrap(), 1.0);

    // doubling steps reproduces shared sample times exactly
    let coarse = with(&["simulate", "--model", "displacement", "--t-max", "1e12tp", "--steps", "8"]);
    let fine = with(&["simulate", "--model", "displacement", "--t-max", "1e12tp", "--steps", "16"]);
    let (_, c) = csv(&coarse);
    let (_, f) = csv(&fine);
    for (i, row) in c.iter().enumerate() {
        assert_eq!(row, &f[2 * i]);
    }

    // overlap non-increasing
    let (_, rows) = csv(&with(&["simulate", "--model", "displacement", "--t-max", "auto", "--steps", "50"]));
    let ov: Vec<f64> = rows.iter().map(|r| r[4].parse().unwrap()).collect();
    assert!(ov.windows(2).all(|w| w[1] <= w[0]));
    assert!(*ov.last().unwrap() <= 0.01 * (1.0 + 1e-6));
}
