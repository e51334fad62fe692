use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

struct Run {
    code: i32,
    stderr: String,
    raw: Option<String>,
    report: Option<Value>,
}

fn eql(args: &[&str], tag: &str) -> Run {
    let out = std::env::temp_dir().join(format!("eql-cli-{}-{tag}.json", std::process::id()));
    std::fs::remove_file(&out).ok();
    let output = Command::new(env!("CARGO_BIN_EXE_eql")).args(args).arg("--out").arg(&out).output().expect("binary runs");
    let raw = std::fs::read_to_string(&out).ok();
    let report = raw.as_deref().map(|s| serde_json::from_str(s).expect("report is JSON"));
    std::fs::remove_file(&out).ok();
    Run { code: output.status.code().unwrap_or(-1), stderr: String::from_utf8_lossy(&output.stderr).into_owned(), raw, report }
}

fn run(command: &str, input: &str, order: &str, field: &str, tag: &str) -> Run {
    let path = fixture(input);
    eql(&[command, "--input", path.to_str().unwrap(), "--order", order, "--field", field], tag)
}

fn verdict(report: &Value, name: &str) -> Option<bool> {
    report["verdicts"].as_array()?.iter().find(|v| v["name"] == name)?["passed"].as_bool()
}

#[test]
fn transfer_report_layout() {
    let r = run("transfer", "massey.json", "4", "rationals", "massey");
    assert_eq!(r.code, 0, "{}", r.stderr);
    let report = r.report.unwrap();
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["command"], "transfer");
    assert_eq!(report["input"]["file"], "massey.json");
    assert_eq!(report["arity"], 4);
    for name in ["retract", "stasheff", "morphism"] {
        assert_eq!(verdict(&report, name), Some(true), "{name}");
    }
    let m3 = report["products"].as_array().unwrap().iter().find(|m| m["arity"] == 3).unwrap();
    assert!(m3["entries"].as_array().is_some_and(|e| !e.is_empty()));
}

#[test]
fn syntax_errors_carry_a_location() {
    let r = run("transfer", "malformed.json", "3", "rationals", "malformed");
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line"), "{}", r.stderr);
    assert!(r.report.is_none());
}

#[test]
fn bad_fields_are_rejected() {
    for field in ["f4", "f37", "reals", "fp:1"] {
        let r = run("transfer", "massey.json", "3", field, &format!("field-{field}"));
        assert_eq!(r.code, 2, "{field}");
    }
    let r = run("transfer", "massey.json", "3", "fp:7", "fp7");
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.report.unwrap()["field"], "F7");
}

#[test]
fn missing_input_and_wrong_kind() {
    let r = run("transfer", "does_not_exist.json", "3", "rationals", "missing");
    assert_eq!(r.code, 2);
    let r = run("transfer", "a2_wall.json", "3", "rationals", "kind");
    assert_eq!(r.code, 2, "{}", r.stderr);
    let r = run("moduli", "massey.json", "3", "f2", "kind2");
    assert_eq!(r.code, 2, "{}", r.stderr);
}

#[test]
fn potential_validation() {
    assert_eq!(run("potential", "cy3_exterior.json", "1", "rationals", "order1").code, 2);
    assert_eq!(run("potential", "cy3_exterior.json", "3", "f5", "charp").code, 2);
}

#[test]
fn potential_of_cy3_fixture() {
    let r = run("potential", "cy3_exterior.json", "3", "rationals", "cy3");
    assert_eq!(r.code, 0, "{}", r.stderr);
    let report = r.report.unwrap();
    let terms = report["potential"]["series"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    for name in ["pairing_nondegenerate", "cyclic", "jacobian_identity"] {
        assert_eq!(verdict(&report, name), Some(true), "{name}");
    }
}

#[test]
fn broken_pairing_fails_with_witness() {
    let r = run("potential", "broken_pairing.json", "3", "rationals", "broken");
    assert_eq!(r.code, 3);
    let report = r.report.expect("report written on failure");
    assert_eq!(verdict(&report, "cyclic"), Some(false));
    assert_eq!(verdict(&report, "jacobian_identity"), Some(false));
}

#[test]
fn oversize_enumeration_is_infeasible() {
    let r = run("moduli", "oversize.json", "2", "f2", "oversize");
    assert_eq!(r.code, 4);
    assert!(r.stderr.contains("infeasible"), "{}", r.stderr);
    let report = r.report.expect("partial report");
    assert_eq!(report["infeasible"]["estimate"], "281474976710656");
    assert_eq!(verdict(&report, "feasible"), Some(false));
}

#[test]
fn moduli_over_rationals_samples_the_critical_locus() {
    let r = run("moduli", "cy3_loops.json", "3", "rationals", "loops");
    assert_eq!(r.code, 0, "{}", r.stderr);
    let report = r.report.unwrap();
    assert_eq!(verdict(&report, "crit_equals_mc"), Some(true));
    assert!(report["stability"].get("skipped").is_some());
}

#[test]
fn wall_crossing_matches_golden_files() {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for (input, p) in [("a2_wall", 2), ("a2_wall", 3), ("a2_wall_other", 2), ("a2_wall_other", 3)] {
        let r = run("moduli", &format!("{input}.json"), "2", &format!("f{p}"), &format!("{input}-{p}"));
        assert_eq!(r.code, 0, "{}", r.stderr);
        let report = r.report.unwrap();
        let expected: Value = serde_json::from_str(&std::fs::read_to_string(golden.join(format!("{input}_f{p}.json"))).unwrap()).unwrap();
        for section in ["sigma_classes", "sigma_plus_classes", "wall_crossing"] {
            assert_eq!(report[section], expected[section], "{input} over F{p}: {section}");
        }
    }
}

#[test]
fn ncdef_reports_levels_and_equivalence() {
    let r = run("ncdef", "a2_quiver.json", "3", "f2", "a2");
    assert_eq!(r.code, 0, "{}", r.stderr);
    let report = r.report.unwrap();
    let dims: Vec<u64> = report["levels"].as_array().unwrap().iter().map(|l| l["endo_dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![2, 3, 3, 3]);
    assert_eq!(report["stabilized_at"], 1);
    assert_eq!(verdict(&report, "hull"), Some(true));
    assert_eq!(verdict(&report, "equivalence"), Some(true));

    let r = run("ncdef", "semisimple.json", "2", "rationals", "ss");
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.report.unwrap()["equivalence"].get("skipped").is_some());
}

#[test]
fn every_command_is_reproducible() {
    let cases = [
        ("transfer", "random_exterior.json", "5", "rationals"),
        ("potential", "cy3_exterior.json", "3", "rationals"),
        ("moduli", "cy3_loops.json", "3", "rationals"),
        ("moduli", "a2_wall.json", "2", "f2"),
        ("ncdef", "commutator.json", "2", "f2"),
    ];
    for (i, (cmd, input, order, field)) in cases.iter().enumerate() {
        let path = fixture(input);
        let args = [*cmd, "--input", path.to_str().unwrap(), "--order", order, "--field", field, "--seed", "42"];
        let a = eql(&args, &format!("rep{i}a"));
        let b = eql(&args, &format!("rep{i}b"));
        assert_eq!(a.code, 0, "{cmd}: {}", a.stderr);
        assert!(a.raw.is_some() && a.raw == b.raw, "{cmd} {input}");
        assert_eq!(a.report.as_ref().unwrap()["seed"], 42);
    }
}

#[test]
fn seeds_change_random_fixtures() {
    let path = fixture("random_exterior.json");
    let base = ["transfer", "--input", path.to_str().unwrap(), "--order", "3"];
    let a = eql(&[&base[..], &["--seed", "1"]].concat(), "seed1");
    let b = eql(&[&base[..], &["--seed", "2"]].concat(), "seed2");
    assert_ne!(a.report.unwrap()["products"], b.report.unwrap()["products"]);
}
