use std::process::Command;

use phaseprobe::app::run;
use serde_json::Value;

fn ok(args: &[&str]) -> String {
    let mut full = vec!["phaseprobe"];
    full.extend_from_slice(args);
    let out = run(full);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    out.stdout
}

fn code(args: &[&str]) -> (i32, String) {
    let mut full = vec!["phaseprobe"];
    full.extend_from_slice(args);
    let out = run(full);
    (out.code, out.stderr)
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).unwrap()
}

fn schema() -> jsonschema::Validator {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../docs/report.schema.json"
    ))
    .unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

#[test]
fn figure2_unitary_exact_is_point_mass_on_11() {
    let v = json(&[
        "run",
        "--builtin",
        "figure2",
        "--model",
        "unitary",
        "--exact",
        "--format",
        "json",
    ]);
    assert_eq!(
        v["results"][0]["frequencies"],
        serde_json::json!([0.0, 0.0, 0.0, 1.0])
    );
    assert_eq!(v["bitstrings"][3], "11");
    let text = ok(&[
        "run",
        "--builtin",
        "figure2",
        "--model",
        "unitary",
        "--exact",
    ]);
    assert!(text.contains("|11>          1.0000"));
}

#[test]
fn figure2_both_models_monte_carlo() {
    let v = json(&[
        "run",
        "--builtin",
        "figure2",
        "--model",
        "both",
        "--trials",
        "100000",
        "--seed",
        "7",
        "--format",
        "json",
    ]);
    assert_eq!(
        v["results"][0]["counts"],
        serde_json::json!([0, 0, 0, 100000])
    );
    for c in v["results"][1]["counts"].as_array().unwrap() {
        assert!((c.as_f64().unwrap() - 25_000.0).abs() <= 410.0);
    }
    let tv = v["total_variation"].as_f64().unwrap();
    assert!((tv - 0.75).abs() <= 0.01, "{tv}");
    assert_eq!(v["seed"], 7);
    assert_eq!(v["trials"], 100000);
    assert_eq!(v["mode"], "monte_carlo");
}

#[test]
fn figure3_collapse_frequencies() {
    let v = json(&[
        "run",
        "--builtin",
        "figure3",
        "--model",
        "collapse",
        "--trials",
        "100000",
        "--seed",
        "7",
        "--format",
        "json",
    ]);
    let f = v["results"][0]["frequencies"][0].as_f64().unwrap();
    assert!((f - 0.5).abs() <= 0.005);
}

#[test]
fn grover_examples() {
    let v = json(&[
        "grover", "--qubits", "2", "--marked", "11", "--format", "json",
    ]);
    assert_eq!(v["success_probability"], 1.0);
    assert_eq!(v["iterations"], 1);
    let v = json(&[
        "grover",
        "--qubits",
        "3",
        "--marked",
        "101",
        "--iterations",
        "2",
        "--format",
        "json",
    ]);
    assert!((v["success_probability"].as_f64().unwrap() - 0.9453).abs() < 1e-4);
    let v = json(&[
        "grover",
        "--qubits",
        "2",
        "--marked",
        "11",
        "--iterations",
        "0",
        "--format",
        "json",
    ]);
    assert_eq!(v["success_probability"], 0.25);
    let v = json(&[
        "grover",
        "--qubits",
        "4",
        "--marked",
        "0110",
        "--diffusion",
        "hadamard",
        "--format",
        "json",
    ]);
    assert_eq!(v["iterations"], 3);
    let csv = ok(&[
        "grover", "--qubits", "1", "--marked", "1", "--format", "csv",
    ]);
    assert!(csv.starts_with("outcome,bitstring,count,frequency\n0,0,,"));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["grover", "--qubits", "2", "--marked", "111"]).0, 2);
    assert_eq!(code(&["grover", "--qubits", "2", "--marked", "1x"]).0, 2);
    assert_eq!(code(&["run", "--builtin", "figure2", "--trials", "5"]).0, 2);
    assert_eq!(
        code(&[
            "run",
            "--builtin",
            "figure2",
            "--exact",
            "--trials",
            "5",
            "--seed",
            "1"
        ])
        .0,
        2
    );
    assert_eq!(code(&["run", "--builtin", "figure9"]).0, 2);
    assert_eq!(
        code(&["run", "--builtin", "figure2", "--model", "maybe"]).0,
        2
    );
    assert_eq!(code(&["run"]).0, 2);
    assert_eq!(code(&["frobnicate"]).0, 2);
    assert_eq!(
        code(&[
            "run",
            "--builtin",
            "figure2",
            "--trials",
            "5",
            "--seed",
            "1",
            "--threads",
            "0"
        ])
        .0,
        2
    );
    let (c, err) = code(&["run", "/definitely/not/here.qc"]);
    assert_eq!(c, 1);
    assert!(err.contains("/definitely/not/here.qc"));
    let help = run(["phaseprobe", "--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("grover"));
}

#[test]
fn parse_errors_report_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.qc");
    std::fs::write(&path, "qubits 2\n\ncpf 111\n").unwrap();
    let (c, err) = code(&["run", path.to_str().unwrap()]);
    assert_eq!(c, 1);
    assert!(err.contains("bad.qc:3:5:"), "{err}");
    assert!(err.contains("bitstring length 3"), "{err}");
}

#[test]
fn missing_measure_needs_exact_mode() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("open.qc");
    std::fs::write(&path, "qubits 1\nh 0\n").unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(code(&["run", p, "--trials", "10", "--seed", "1"]).0, 1);
    let v = json(&["run", p, "--format", "json"]);
    assert_eq!(v["results"][1]["model"], "collapse");
}

#[test]
fn branch_limit_errors_are_reported() {
    let (c, err) = code(&[
        "run",
        "--builtin",
        "figure2",
        "--model",
        "collapse",
        "--branch-limit",
        "2",
    ]);
    assert_eq!(c, 1);
    assert!(err.contains("Monte Carlo"), "{err}");
}

#[test]
fn circuit_files_match_builtins() {
    let root = concat!(env!("CARGO_MANIFEST_DIR"), "/../../circuits");
    for (file, name) in [
        ("figure1", "figure1"),
        ("figure2", "figure2"),
        ("figure2-diffuse", "figure2"),
        ("figure3", "figure3"),
    ] {
        let from_file = json(&["run", &format!("{root}/{file}.qc"), "--format", "json"]);
        let builtin = json(&["run", "--builtin", name, "--format", "json"]);
        assert_eq!(from_file["results"], builtin["results"], "{file}");
    }
}

#[test]
fn demo_is_run_builtin() {
    let args = [
        "--model", "collapse", "--trials", "2000", "--seed", "3", "--format", "csv",
    ];
    let mut a = vec!["demo", "figure3"];
    a.extend(args);
    let mut b = vec!["run", "--builtin", "figure3"];
    b.extend(args);
    assert_eq!(ok(&a), ok(&b));
}

#[test]
fn output_is_independent_of_thread_count() {
    let base = [
        "run",
        "--builtin",
        "figure2",
        "--model",
        "collapse",
        "--trials",
        "50000",
        "--seed",
        "11",
        "--format",
        "csv",
    ];
    let reference = ok(&base);
    for threads in ["1", "2", "7"] {
        let mut args = base.to_vec();
        args.extend(["--threads", threads]);
        assert_eq!(ok(&args), reference);
    }
}

#[test]
fn json_reports_validate_against_schema() {
    let validator = schema();
    for args in [
        vec!["run", "--builtin", "figure2", "--format", "json"],
        vec![
            "run",
            "--builtin",
            "figure3",
            "--model",
            "unitary",
            "--format",
            "json",
        ],
        vec![
            "run",
            "--builtin",
            "figure2",
            "--trials",
            "100",
            "--seed",
            "1",
            "--format",
            "json",
        ],
        vec![
            "grover", "--qubits", "3", "--marked", "101", "--format", "json",
        ],
    ] {
        let v = json(&args);
        let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
    }
    let mut broken = json(&["run", "--builtin", "figure2", "--format", "json"]);
    broken["mode"] = "guess".into();
    assert!(!validator.is_valid(&broken));
}

#[test]
fn binary_output_is_byte_identical_across_processes() {
    let exe = env!("CARGO_BIN_EXE_phaseprobe");
    let invoke = |threads: &str| {
        Command::new(exe)
            .args([
                "run",
                "--builtin",
                "figure2",
                "--model",
                "collapse",
                "--trials",
                "100000",
                "--seed",
                "7",
                "--format",
                "csv",
                "--threads",
                threads,
            ])
            .output()
            .unwrap()
    };
    let a = invoke("1");
    let b = invoke("4");
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}
