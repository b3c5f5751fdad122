use std::path::Path;
use std::process::Command;

use g2real::field::{PrimeField, QuadraticEtale};
use g2real::reality::{verify_sl3_witness, verify_su_witness, Verdict};
use g2real::Matrix;
use g2real_cli::config::default_q;
use g2real_cli::scenarios::run;
use g2real_cli::{CliError, Kind, RunReport, Scenario, ScenarioConfig, Status};
use serde_json::Value;

fn config(scenario: Scenario, q: u64, trials: u64, seed: u64) -> ScenarioConfig {
    let mut cfg = ScenarioConfig::new(scenario);
    cfg.q = q;
    cfg.trials = trials;
    cfg.seed = seed;
    cfg
}

fn counterexample(kind: Kind) -> ScenarioConfig {
    let mut cfg = ScenarioConfig::new(Scenario::Counterexample);
    cfg.kind = Some(kind);
    cfg.q = default_q(Scenario::Counterexample, Some(kind));
    cfg
}

fn schema_errors(report: &RunReport) -> Vec<String> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/run_report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema).expect("schema compiles");
    let instance: Value = serde_json::from_str(&report.to_json()).unwrap();
    let errors = match compiled.validate(&instance) {
        Ok(()) => Vec::new(),
        Err(errs) => errs.map(|e| format!("{}: {e}", e.instance_path)).collect(),
    };
    errors
}

fn g2real() -> Command {
    Command::new(env!("CARGO_BIN_EXE_g2real"))
}

fn exit_code(args: &[&str]) -> i32 {
    g2real().args(args).output().expect("binary runs").status.code().expect("exit code")
}

#[test]
fn same_seed_gives_identical_reports() {
    let cfg = config(Scenario::Cdk, 5, 15, 11);
    let a = run(&cfg).unwrap();
    let b = run(&cfg).unwrap();
    assert_eq!(a.canonical_json(), b.canonical_json());
    let other = run(&config(Scenario::Cdk, 5, 15, 12)).unwrap();
    assert_ne!(a.canonical_json(), other.canonical_json());
}

#[test]
fn reports_round_trip_and_match_the_schema() {
    let reports = [
        run(&config(Scenario::Cdk, 5, 10, 1)).unwrap(),
        run(&counterexample(Kind::Sl3)).unwrap(),
        run(&counterexample(Kind::Su)).unwrap(),
        run(&config(Scenario::Norms, 7, 0, 0)).unwrap(),
        run(&config(Scenario::Companion, 5, 5, 0)).unwrap(),
    ];
    for r in &reports {
        assert_eq!(r.status, Status::Pass, "{}", r.render());
        assert_eq!(RunReport::from_json(&r.to_json()).unwrap(), *r);
        assert_eq!(schema_errors(r), Vec::<String>::new(), "{}", r.scenario);
    }
    let mut axioms = ScenarioConfig::new(Scenario::Axioms);
    axioms.field = g2real::FieldSpec::Q;
    axioms.samples = 20;
    let r = run(&axioms).unwrap();
    assert_eq!(schema_errors(&r), Vec::<String>::new());
}

#[test]
fn truncated_json_names_a_path() {
    let text = run(&config(Scenario::Cdk, 5, 3, 0)).unwrap().to_json();
    let cut = &text[..text.len() / 2];
    match RunReport::from_json(cut) {
        Err(CliError::Schema { path, .. }) => assert!(path.starts_with("elements"), "{path}"),
        other => panic!("expected a schema error, got {other:?}"),
    }
}

#[test]
fn wrong_types_name_the_offending_field() {
    let text = run(&config(Scenario::Norms, 5, 0, 0)).unwrap().to_json();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["checks"][1]["passed"] = Value::String("one".into());
    match RunReport::from_json(&v.to_string()) {
        Err(CliError::Schema { path, .. }) => assert_eq!(path, "checks[1].passed"),
        other => panic!("expected a schema error, got {other:?}"),
    }
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["status"] = Value::String("fail".into());
    assert!(matches!(RunReport::from_json(&v.to_string()), Err(CliError::Schema { .. })));
}

#[test]
fn unknown_verdicts_render_a_budget_note() {
    let mut r = run(&config(Scenario::Cdk, 5, 2, 0)).unwrap();
    assert!(!r.render().contains("budget of"));
    r.elements[0].report.verdict = Verdict::Unknown;
    r.status = r.derived_status();
    assert_eq!(r.status, Status::Unknown);
    let r = RunReport::from_json(&r.to_json()).unwrap();
    assert!(r.render().contains("search budget of 100000000 candidates was exhausted"));
}

#[test]
fn emitted_witnesses_reverify() {
    let k = PrimeField::new(5).unwrap();
    let l = QuadraticEtale::finite_extension(k.clone()).unwrap();
    let r = run(&config(Scenario::Cdk, 5, 25, 4)).unwrap();
    let mut checked = 0;
    for e in &r.elements {
        let w = e.report.witness.as_ref().expect("every sampled element has a witness");
        if e.label.starts_with("sl3") {
            verify_sl3_witness(&k, &Matrix::parse(&k, &e.matrix).unwrap(), w).unwrap();
        } else {
            verify_su_witness(&l, &[1, 1, 1], &Matrix::parse(&l, &e.matrix).unwrap(), w).unwrap();
        }
        checked += 1;
    }
    assert_eq!(checked, 50);

    let r = run(&counterexample(Kind::Sl3)).unwrap();
    let k7 = PrimeField::new(7).unwrap();
    let a = r.elements.iter().find(|e| e.label == "A").unwrap();
    verify_sl3_witness(&k7, &Matrix::parse(&k7, &a.matrix).unwrap(), a.report.witness.as_ref().unwrap()).unwrap();
    // the same witness does not verify for B
    let b = r.elements.iter().find(|e| e.label == "B").unwrap();
    assert!(verify_sl3_witness(&k7, &Matrix::parse(&k7, &b.matrix).unwrap(), a.report.witness.as_ref().unwrap()).is_err());
}

#[test]
fn config_files_reject_unknown_keys() {
    let ok = ScenarioConfig::parse("scenario = cdk\nq = 7 # comment\ntrials = 3\n").unwrap();
    assert_eq!((ok.q, ok.trials), (7, 3));
    for bad in ["scenario = cdk\nqq = 7", "q = 7", "scenario = cdk\ntrials = many", "scenario = cdk\nq"] {
        assert!(matches!(ScenarioConfig::parse(bad), Err(CliError::Usage(_))), "{bad:?}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(exit_code(&["norms", "--q", "5"]), 0);
    assert_eq!(exit_code(&["cdk", "--q", "7", "--trials", "0"]), 0);
    assert_eq!(exit_code(&["axioms", "--field", "2"]), 2);
    assert_eq!(exit_code(&["counterexample", "sl3", "--q", "5"]), 2);
    assert_eq!(exit_code(&["counterexample", "su", "--q", "7"]), 2);
    assert_eq!(exit_code(&["cdk", "--bogus"]), 2);
    // the oracle cannot finish within one candidate
    assert_eq!(exit_code(&["counterexample", "sl3", "--q", "7", "--budget", "1"]), 3);
}

#[test]
fn config_file_and_report_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "scenario = norms\nq = 7\n").unwrap();
    let json = dir.path().join("out.json");
    let status = g2real().arg("--config").arg(&cfg).arg("norms").arg("--json").arg(&json).output().unwrap().status;
    assert_eq!(status.code(), Some(0));
    let report = RunReport::from_json(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report.inputs.q, 7);

    let out = g2real().arg("report").arg(&json).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("|L1/N(E1)| = 1"));

    let text = std::fs::read_to_string(&json).unwrap();
    std::fs::write(&json, &text[..text.len() - 40]).unwrap();
    let out = g2real().arg("report").arg(&json).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("schema violation at"));

    std::fs::write(&cfg, "scenario = norms\nverbose = true\n").unwrap();
    assert_eq!(g2real().arg("--config").arg(&cfg).output().unwrap().status.code(), Some(2));
    // a config for another scenario is refused
    std::fs::write(&cfg, "scenario = cdk\n").unwrap();
    assert_eq!(g2real().arg("--config").arg(&cfg).arg("norms").output().unwrap().status.code(), Some(2));
}
