use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_steenrod"))
        .args(args)
        .env_remove("STEENROD_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

const CASES: &[(&str, &[&str])] = &[
    ("product_sq2_sq2.txt", &["product", "-p", "2", "Sq(2)", "Sq(2)"]),
    ("product_sq2_sq2.json", &["product", "-p", "2", "Sq(2)", "Sq(2)", "--format", "json"]),
    ("product_p1_p1_p3.txt", &["product", "-p", "3", "P(1)", "P(1)"]),
    ("convert_sq0_1.txt", &["convert", "-p", "2", "--to", "admissible", "Sq(0,1)"]),
    ("basis_admissible_p2_n7.txt", &["basis", "--kind", "admissible", "-p", "2", "-n", "7"]),
    ("basis_admissible_p2_n7.json", &["basis", "--kind", "admissible", "-p", "2", "-n", "7", "--format", "json"]),
    ("basis_dual_p3_i1_n1.txt", &["basis", "--kind", "dual", "-p", "3", "-i", "1", "-n", "1"]),
    ("excess_b_p1.txt", &["excess", "-p", "3", "--word", "b P1"]),
    (
        "verify_theta_n_seed7.jsonl",
        &["verify", "--family", "theta-n", "-p", "2", "--seed", "7", "--format", "json", "--max-degree", "8", "--samples", "5"],
    ),
];

#[test]
fn outputs_match_golden_files() {
    for (file, args) in CASES {
        let out = run(args);
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(String::from_utf8_lossy(&out.stdout), golden(file), "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    for (_, args) in CASES {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}

#[test]
fn filtration_zero_is_everything() {
    let out = run(&["basis", "--kind", "filtration", "-p", "2", "-i", "0", "-n", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["count"], 2);
    let milnor = run(&["basis", "--kind", "milnor", "-p", "2", "-n", "3", "--format", "json"]);
    let w: serde_json::Value = serde_json::from_slice(&milnor.stdout).unwrap();
    assert_eq!(v["entries"], w["entries"]);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["product", "-p", "2", "Sq(1,", "Sq(2)"]).status.code(), Some(2));
    assert_eq!(run(&["product", "-p", "2", "Sq(2)"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--family", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["--cap", "10", "product", "-p", "2", "Sq(8)", "Sq(4)"]).status.code(), Some(3));
    assert_eq!(run(&["verify", "--family", "e3", "-p", "2", "-i", "0..0"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "--family", "ses", "-p", "3", "--cap", "16"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "--family", "a5", "-p", "2", "--max-degree", "24"]).status.code(), Some(0));
}

#[test]
fn parse_errors_report_the_position() {
    let out = run(&["product", "-p", "2", "Sq(1,", "Sq(2)"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 5"));
}

#[test]
fn verify_json_ends_with_a_summary() {
    let out = run(&["verify", "--family", "e3", "-p", "2", "-i", "0..1", "--max-degree", "6", "--format", "json"]);
    let text = String::from_utf8_lossy(&out.stdout);
    let last: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(last["summary"]["failed"], 0);
    assert_eq!(last["summary"]["checked"].as_u64().unwrap() as usize, text.lines().count() - 1);
}

#[test]
fn notes_are_reported_without_failing() {
    // from s = 3 on, the top quotients at p = 3 are two-dimensional
    let out = run(&["verify", "--family", "induced-filt2", "-p", "3", "-i", "0..4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    let notes: Vec<&str> = text.lines().filter(|l| l.contains("witness")).collect();
    assert!(!notes.is_empty(), "{text}");
    assert!(notes[0].contains("\"s\":3"), "{text}");
}

#[test]
fn convert_round_trips() {
    let out = run(&["convert", "-p", "3", "--to", "admissible", "Q(0,1) P(1)"]);
    let adm = String::from_utf8_lossy(&out.stdout).trim().to_string();
    let back = run(&["convert", "-p", "3", "--to", "milnor", &adm]);
    assert_eq!(String::from_utf8_lossy(&back.stdout).trim(), "Q(0,1) P(1)");
}
