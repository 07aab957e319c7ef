use std::fs;
use std::process::{Command, Output};

use pimbound::bounds::BoundCertificate;
use pimbound::caseanalysis::{Outcome, Verdict};
use pimbound::charlattice::OrbitScanReport;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pimbound"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn assert_usage_error(o: &Output, kind: &str) {
    assert_eq!(o.status.code(), Some(2), "stderr: {}", stderr(o));
    let err = stderr(o);
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.starts_with(&format!("error: {kind}: ")), "{err}");
}

#[test]
fn orbit_size_is_printed() {
    // Under S3 the class of the first fundamental weight mod 3 has three images.
    let o = run(&["orbit", "A", "2", "--q", "4", "--beta", "1,0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "3");
}

#[test]
fn u4_suite_reports_no_solution() {
    let o = run(&["verify", "u4", "--primes", "3,5,7", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let verdicts: Vec<Verdict> = serde_json::from_value(v[0]["verdicts"].clone()).unwrap();
    assert_eq!(verdicts.len(), 3);
    assert!(verdicts.iter().all(|v| v.outcome == Outcome::NoSolution));
    assert_eq!(verdicts.iter().map(|v| v.parameter).collect::<Vec<_>>(), [3, 5, 7]);
}

#[test]
fn certificate_json_round_trips() {
    let o = run(&["bound", "A", "5", "--q", "3", "--weight", "1,0,0,0,0", "--json"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let cert: BoundCertificate = serde_json::from_str(&text).unwrap();
    assert_eq!(cert.weight.coeffs, vec![1, 0, 0, 0, 0]);
    assert!(cert.bound >= 1);
    let again: Value = serde_json::to_value(&cert).unwrap();
    assert_eq!(again, serde_json::from_str::<Value>(&text).unwrap());
}

#[test]
fn strict_d4_reports_the_divisibility_gap() {
    let o = run(&["verify", "d4", "--primes", "3", "--strict"]);
    assert_eq!(o.status.code(), Some(1));
    let last = stdout(&o).lines().last().unwrap().to_string();
    let failures: Value = serde_json::from_str(&last).unwrap();
    assert!(failures[0]["detail"].as_str().unwrap().contains("mod 13"));

    // Without --strict only the conclusion counts, and it holds.
    let o = run(&["verify", "d4", "--primes", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("warn"));
}

#[test]
fn usage_errors_exit_two() {
    assert_usage_error(&run(&["info", "A", "2", "--q", "3", "--frobnicate"]), "usage");
    assert_usage_error(&run(&["info", "G", "2", "--q", "3", "--suzuki-ree", "1"]), "usage");
    assert_usage_error(&run(&["info", "A", "2"]), "usage");
    assert_usage_error(&run(&["bound", "A", "2", "--q", "3", "--weight", "1"]), "usage");
    assert_usage_error(&run(&["verify", "everything"]), "usage");
}

#[test]
fn configuration_errors_exit_two() {
    assert_usage_error(&run(&["info", "A", "2", "--q", "6"]), "group");
    assert_usage_error(&run(&["info", "H", "2", "--q", "3"]), "group");
    assert_usage_error(&run(&["bound", "A", "2", "--q", "3", "--weight", "3,0"]), "bound");
    assert_usage_error(&run(&["orbit-scan", "A", "3", "--q", "3", "--twist", "2"]), "lattice");
    assert_usage_error(&run(&["orbit-scan", "E", "8", "--q", "9", "--budget", "1000"]), "budget");
    assert_usage_error(&run(&["verify", "ree", "--f", "0"]), "case-analysis");
}

#[test]
fn help_exits_zero() {
    let o = run(&["--help"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("verify"));
}

#[test]
fn cache_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["orbit-scan", "C", "3", "--q", "4", "--json"];
    let fresh = stdout(&run(&args));

    let mut cached = args.to_vec();
    cached.extend(["--cache-dir", cache]);
    let first = stdout(&run(&cached));
    let entries: Vec<_> = fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(entries.len(), 1);
    let second = stdout(&run(&cached));
    assert_eq!(fresh, first);
    assert_eq!(fresh, second);

    // A damaged entry is recomputed.
    let path = entries[0].as_ref().unwrap().path();
    fs::write(&path, "{ not json").unwrap();
    assert_eq!(stdout(&run(&cached)), fresh);

    let r: OrbitScanReport = serde_json::from_str(&fresh).unwrap();
    assert_eq!(r.total, 27);
    assert_eq!(r.min_nontrivial_orbit, Some(6));
}

#[test]
fn verify_output_is_deterministic() {
    for suite in ["ree", "u4", "orbits"] {
        let a = run(&["verify", suite, "--json"]);
        let b = run(&["verify", suite, "--json"]);
        assert!(a.status.success(), "{suite}");
        assert_eq!(a.stdout, b.stdout, "{suite}");
    }
}

#[test]
fn export_tables_is_json() {
    let o = run(&["export-tables"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["datasets"].as_array().unwrap().len(), 3);
    assert!(!v["known_minima"].as_array().unwrap().is_empty());
    // E8 is the one family irreducible at every prime.
    let e8: Vec<_> = v["irreducibility"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["family"] == "E8")
        .collect();
    assert_eq!(e8.len(), 4);
    assert!(e8.iter().all(|c| c["irreducible"] == true));
}

#[test]
fn classify_small_groups() {
    let o = run(&["classify", "A", "1", "--q", "5", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["answer"], "yes");
    let o = run(&["classify", "D", "4", "--q", "2", "--twist", "3", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["answer"], "no");
}

#[test]
fn info_reports_the_order() {
    let o = run(&["info", "G", "2", "--suzuki-ree", "1", "--json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["order_p_part"], "27t^6");
    assert_eq!(v["restricted_weights"], "27");
}
