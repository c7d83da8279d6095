use std::f64::consts::PI;
use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_nonstatic-phase");

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(BIN).args(args).current_dir(dir).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run_in(&std::env::temp_dir(), args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn table(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    (header, lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect())
}

fn col(t: &(Vec<String>, Vec<Vec<f64>>), name: &str) -> Vec<f64> {
    let i = t.0.iter().position(|h| h == name).unwrap();
    t.1.iter().map(|r| r[i]).collect()
}

#[test]
fn config_echo_reproduces_output() {
    let dir = tempfile::tempdir().unwrap();
    for (cmd, extra) in [
        ("phases", vec!["--A", "3", "--B", "0.4", "--n", "2,7", "--phi", "-0.3"]),
        ("density", vec!["--steps", "20", "--nq", "64"]),
        ("sweep-phi", vec!["--steps", "50"]),
        ("rates", vec!["--format", "json"]),
    ] {
        let first = dir.path().join(format!("{cmd}-1.out"));
        let second = dir.path().join(format!("{cmd}-2.out"));
        let mut args = vec![cmd, "--out", first.to_str().unwrap()];
        args.extend(&extra);
        assert!(run_in(dir.path(), &args).status.success());
        let echo = dir.path().join(format!("{cmd}-1.out.config.json"));
        let again = run_in(dir.path(), &[cmd, "--config", echo.to_str().unwrap(), "--out", second.to_str().unwrap()]);
        assert!(again.status.success(), "{}", String::from_utf8_lossy(&again.stderr));
        assert_eq!(std::fs::read(&first).unwrap(), std::fs::read(&second).unwrap(), "{cmd}");
        assert!(!std::fs::read_to_string(&echo).unwrap().contains("out"));
    }
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, r#"{"A": 0.1, "B": 10.0, "omega": 1.0}"#).unwrap();
    let out = run_in(dir.path(), &["measure", "--config", cfg.to_str().unwrap()]);
    let t = table(&String::from_utf8(out.stdout).unwrap());
    assert!((col(&t, "D_F")[0] - 3.5).abs() < 0.005);
    let out = run_in(dir.path(), &["measure", "--config", cfg.to_str().unwrap(), "--B", "20"]);
    let t = table(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(col(&t, "B")[0], 20.0);

    std::fs::write(&cfg, r#"{"A": 1.0, "unknown": 3}"#).unwrap();
    assert!(!run_in(dir.path(), &["measure", "--config", cfg.to_str().unwrap()]).status.success());
}

#[test]
fn csv_format() {
    let text = stdout(&["phases", "--steps", "4"]);
    assert!(!text.contains('\r'));
    assert_eq!(text.lines().next().unwrap(), "t,gamma_G,gamma_D,gamma_total,first_part,second_part,hannay,D_F_constant");
    let cell = text.lines().nth(2).unwrap().split(',').nth(1).unwrap();
    let mantissa = cell.trim_start_matches('-').split('e').next().unwrap();
    assert_eq!(mantissa.replace('.', "").len(), 12, "{cell}");
    assert_eq!(stdout(&["rates"]).lines().next().unwrap(), "t,dgamma_G,dgamma_D,dgamma_total");
    assert_eq!(stdout(&["sweep-phi", "--steps", "2"]).lines().next().unwrap(), "phi,t,gamma_G");
    assert_eq!(stdout(&["measure"]).lines().next().unwrap(), "A,B,C,D_F");
}

#[test]
fn static_density_slices_identical() {
    let t = table(&stdout(&["density", "--A", "1", "--B", "1", "--n", "5", "--steps", "10", "--nq", "101"]));
    let rho = col(&t, "density");
    for slice in rho.chunks(101) {
        assert_eq!(slice, &rho[..101]);
    }
}

#[test]
fn nonstatic_density_is_periodic() {
    // default: A = 2.5, B = 0.5, n = 5, ω = 1, two periods in 200 steps
    let t = table(&stdout(&["density", "--nq", "101"]));
    let rho = col(&t, "density");
    let slices: Vec<&[f64]> = rho.chunks(101).collect();
    assert_eq!(slices.len(), 201);
    for i in 0..=100 {
        for (a, b) in slices[i].iter().zip(slices[i + 100]) {
            assert!((a - b).abs() <= 1e-10 * a.abs().max(1e-3), "slice {i}: {a} vs {b}");
        }
    }
    assert!(slices[0] != slices[50]);
}

#[test]
fn density_rejects_bad_requests() {
    let dir = std::env::temp_dir();
    let empty = run_in(&dir, &["density", "--steps", "2", "--t-max", "0"]);
    assert_eq!(empty.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&empty.stderr).contains("domain"));
    assert!(!run_in(&dir, &["density", "--n", "1,2"]).status.success());
    assert!(!run_in(&dir, &["density", "--A", "0.5", "--B", "0.5"]).status.success());
    assert!(!run_in(&dir, &["density", "--phi", "1.6"]).status.success());
}

#[test]
fn phases_columns_and_measure() {
    let t = table(&stdout(&["phases", "--A", "0.1", "--B", "10.0", "--n", "10", "--omega", "1"]));
    assert!(col(&t, "D_F_constant").iter().all(|d| (d - 3.5).abs() < 0.005));
    let (g, d, total) = (col(&t, "gamma_G"), col(&t, "gamma_D"), col(&t, "gamma_total"));
    let (first, second) = (col(&t, "first_part"), col(&t, "second_part"));
    for i in 0..g.len() {
        assert!((first[i] + d[i]).abs() <= 1e-11 * d[i].abs().max(1.0));
        assert!((second[i] - total[i]).abs() <= 1e-9 * total[i].abs().max(1.0));
    }

    let multi = table(&stdout(&["phases", "--n", "0,3", "--steps", "10"]));
    assert_eq!(multi.0[0], "n");
    let n = col(&multi, "n");
    assert_eq!(n.iter().filter(|&&x| x == 0.0).count(), 11);
    assert_eq!(n.iter().filter(|&&x| x == 3.0).count(), 11);
    // affinity in n
    let g = col(&multi, "gamma_G");
    for i in 0..11 {
        assert!((g[11 + i] - 7.0 * g[i]).abs() <= 1e-10 * g[11 + i].abs().max(1.0));
    }
}

#[test]
fn static_rates_have_no_geometric_part() {
    let t = table(&stdout(&["rates", "--A", "1", "--B", "1", "--n", "4"]));
    assert!(col(&t, "dgamma_G").iter().all(|&x| x == 0.0));
    assert!(col(&t, "dgamma_D").iter().all(|&x| (x + 2.25).abs() < 1e-12));
}

#[test]
fn sweep_phi_curves() {
    let t = table(&stdout(&["sweep-phi"]));
    let phi = col(&t, "phi");
    let mut distinct: Vec<f64> = phi.clone();
    distinct.dedup();
    assert_eq!(distinct.len(), 7);
    for w in distinct.windows(2) {
        assert!((w[1] - w[0] - 0.15 * PI).abs() < 1e-10);
    }
    assert!(distinct.iter().all(|&p| (-PI / 2.0..PI / 2.0).contains(&p)));
    let (times, gamma) = (col(&t, "t"), col(&t, "gamma_G"));
    for i in 0..phi.len() {
        if times[i] == 0.0 {
            assert_eq!(gamma[i], 0.0);
        }
    }

    let zero = table(&stdout(&["sweep-phi", "--phi-list", "0"]));
    let phases = table(&stdout(&["phases", "--A", "2.5", "--B", "0.5", "--n", "0", "--omega", "0.5", "--steps", "400"]));
    assert_eq!(col(&zero, "gamma_G"), col(&phases, "gamma_G"));

    assert!(!run_in(&std::env::temp_dir(), &["sweep-phi", "--phi-list", "0,1.6"]).status.success());
}

#[test]
fn json_output_parses() {
    let text = stdout(&["measure", "--ladder", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["columns"][3], "D_F");
    assert_eq!(v["rows"].as_array().unwrap().len(), 14);
}

#[test]
fn validate_static_suite_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["validate", "--suite", "static"]);
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("validation-report.json")).unwrap()).unwrap();
    assert_eq!(report["passed"], true);
    for run in report["runs"].as_array().unwrap() {
        for check in run["report"]["checks"].as_array().unwrap() {
            for key in ["name", "residual", "tolerance", "passed"] {
                assert!(check.get(key).is_some());
            }
        }
    }
}

#[test]
fn validate_custom_suite_and_controls() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["validate", "--suite", "custom", "--A", "3", "--B", "0.5", "--n", "0,4", "--out", "r.json"];
    assert!(run_in(dir.path(), &args).status.success());
    let mut bad = args.to_vec();
    bad.push("--corrupt-c");
    let out = run_in(dir.path(), &bad);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    let checks = report["runs"][0]["report"]["checks"].as_array().unwrap();
    let constraint = checks.iter().find(|c| c["name"] == "constraint").unwrap();
    assert_eq!(constraint["passed"], false);
}

#[test]
fn thread_cap_does_not_change_output() {
    let dir = std::env::temp_dir();
    let args = ["density", "--steps", "30", "--nq", "50"];
    let free = run_in(&dir, &args);
    let capped = Command::new(BIN).args(args).env("NONSTATIC_PHASE_THREADS", "1").output().unwrap();
    assert!(capped.status.success());
    assert_eq!(free.stdout, capped.stdout);
    let broken = Command::new(BIN).args(args).env("NONSTATIC_PHASE_THREADS", "many").output().unwrap();
    assert!(!broken.status.success());
}
