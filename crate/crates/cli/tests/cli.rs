#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::path::PathBuf;
use std::process::Command;

use coalg::classify::listing;
use coalg_cli::commands;
use coalg_cli::{CliError, Workspace};
use proptest::prelude::*;
use rand::Rng;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../workspaces")
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn corpus() -> Vec<(String, PathBuf)> {
    let mut out: Vec<(String, PathBuf)> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .map(|p| (p.file_stem().unwrap().to_string_lossy().into_owned(), p))
        .collect();
    out.sort();
    out
}

fn coalg(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_coalg")).args(args).env_remove("COALG_TRUNCATE").output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn ws_path(name: &str) -> String {
    corpus_dir().join(format!("{name}.json")).to_string_lossy().into_owned()
}

#[test]
fn single_vertex_document() {
    let ws = Workspace::parse(r#"{"quiver":{"vertices":["1"],"arrows":[]},"coalgebra":{"kind":"full"}}"#).unwrap();
    assert_eq!(ws.quiver.vertex_count(), 1);
    assert_eq!(ws.truncation, 6);
    assert_eq!(ws.cell_bound, 12);
    assert!(ws.subcoalgebras.is_empty());
}

#[test]
fn two_loop_powers_workspace_has_three_presentations() {
    let ws = Workspace::parse(&std::fs::read_to_string(ws_path("two_loop_powers")).unwrap()).unwrap();
    assert_eq!(ws.subcoalgebras.len(), 2);
    assert_eq!(listing(ws.get("A").unwrap(), 3), ["e(x)", "a", "aa", "aaa"]);
    assert_eq!(listing(ws.get("B").unwrap(), 3), ["e(x)", "b", "bb", "bbb"]);
    assert!(matches!(ws.get("D"), Err(CliError::Input(_))));
}

#[test]
fn paths_are_written_source_to_target() {
    let doc = r#"{
        "quiver": {"vertices": ["1", "2", "3"],
                   "arrows": [{"id": "alpha", "src": "1", "tgt": "2"}, {"id": "beta", "src": "2", "tgt": "3"}]},
        "coalgebra": {"kind": "monomial", "paths": [["alpha"], ["beta"], ["alpha", "beta"]]}
    }"#;
    let ws = Workspace::parse(doc).unwrap();
    assert_eq!(listing(&ws.coalgebra, 2), ["e(1)", "e(2)", "e(3)", "alpha", "beta", "beta.alpha"]);
    let back = ws.to_json();
    assert!(back.contains("\"alpha\",\n        \"beta\""), "{back}");
    assert_eq!(Workspace::parse(&back).unwrap(), ws);
}

#[test]
fn schema_errors_carry_location() {
    let cases = [
        (r#"{"quiver":{"vertices":["1"],"arrows":[]}}"#, "coalgebra"),
        (r#"{"quiver":{"vertices":["1"],"arrows":[]},"coalgebra":{"kind":"bogus"}}"#, "coalgebra"),
        (r#"{"quiver":{"vertices":["1"],"arrows":[{"id":"a","src":"1"}]},"coalgebra":{"kind":"full"}}"#, "quiver.arrows[0]"),
        (r#"{"quiver":{"vertices":["1"],"arrows":[]},"coalgebra":{"kind":"full"},"extra":1}"#, "extra"),
        ("{\n  \"quiver\": [", "line 2"),
    ];
    for (doc, needle) in cases {
        match Workspace::parse(doc) {
            Err(CliError::Input(msg)) => assert!(msg.contains(needle), "{msg} lacks {needle}"),
            other => panic!("{doc}: {other:?}"),
        }
    }
}

#[test]
fn validation_errors_name_the_presentation() {
    let two_loops = r#""quiver":{"vertices":["x"],"arrows":[{"id":"a","src":"x","tgt":"x"},{"id":"b","src":"x","tgt":"x"}]}"#;
    let cases = [
        (format!(r#"{{{two_loops},"coalgebra":{{"kind":"monomial","paths":[["a","b"]]}}}}"#), "coalgebra: not subpath closed"),
        (
            format!(
                r#"{{{two_loops},"coalgebra":{{"kind":"monomial","paths":[["a"]]}},"subcoalgebras":{{"B":{{"kind":"monomial","paths":[["b"]]}}}}}}"#
            ),
            "subcoalgebras.B: path b is not in the coalgebra",
        ),
        (format!(r#"{{{two_loops},"coalgebra":{{"kind":"monomial","paths":[["c"]]}}}}"#), "paths[0]: unknown arrow c"),
        (
            format!(
                r#"{{{two_loops},"coalgebra":{{"kind":"pattern","automaton":{{"states":["P"],"accepting":["Q"],"transitions":[]}}}}}}"#
            ),
            "unknown automaton state Q",
        ),
    ];
    for (doc, needle) in cases {
        match Workspace::parse(&doc) {
            Err(CliError::Input(msg)) => assert!(msg.contains(needle), "{msg} lacks {needle}"),
            other => panic!("{doc}: {other:?}"),
        }
    }
}

#[test]
fn exit_codes() {
    let (code, out, _) = coalg(&["wedge", &ws_path("two_loop_powers"), "--left", "A", "--right", "B"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("A∧B = C up to truncation 6"));
    let (code, _, err) = coalg(&["wedge", &ws_path("two_loop_powers"), "--left", "A", "--right", "Z"]);
    assert_eq!(code, 1);
    assert!(err.contains("unknown subcoalgebra Z"), "{err}");
    let (code, _, err) = coalg(&["filtration", &ws_path("two_loop_powers"), "--max", "6"]);
    assert_eq!(code, 1);
    assert!(err.contains("too small"), "{err}");
    let (code, _, _) = coalg(&["classify", "/nonexistent.json"]);
    assert_eq!(code, 1);
    let (code, _, _) = coalg(&["wedge", &ws_path("two_loop_powers"), "--left", "A", "--right", "B", "--dot", "-"]);
    assert_eq!(code, 1);
}

#[test]
fn consistency_violations_exit_with_two() {
    let err = CliError::from(coalg::Error::Consistency("x".to_string()));
    assert_eq!(err.exit_code(), 2);
    assert_eq!(CliError::Input("x".to_string()).exit_code(), 1);
}

#[test]
fn truncation_flag_and_environment() {
    let (_, out, _) = coalg(&["classify", &ws_path("two_loop_powers"), "--truncate", "3"]);
    assert!(out.contains("truncation N=3"), "{out}");
    let out = Command::new(env!("CARGO_BIN_EXE_coalg"))
        .args(["classify", &ws_path("two_loop_powers")])
        .env("COALG_TRUNCATE", "4")
        .output()
        .unwrap();
    assert!(String::from_utf8(out.stdout).unwrap().contains("truncation N=4"));
    let out = Command::new(env!("CARGO_BIN_EXE_coalg"))
        .args(["classify", &ws_path("two_loop_powers"), "--truncate", "5"])
        .env("COALG_TRUNCATE", "4")
        .output()
        .unwrap();
    assert!(String::from_utf8(out.stdout).unwrap().contains("truncation N=5"));
}

#[test]
fn classify_two_loop_powers() {
    let (code, out, _) = coalg(&["classify", &ws_path("two_loop_powers")]);
    assert_eq!(code, 0);
    assert!(out.contains("semiprime   yes (square-rule, N=6)"), "{out}");
    assert!(out.contains("prime       no (wedge-pair, verified at N=6)"), "{out}");
    assert!(out.contains("string      yes (string-conditions)"), "{out}");
}

#[test]
fn localize_a3_at_the_ends() {
    let (code, out, _) = coalg(&["localize", &ws_path("a3_full"), "--keep", "1,3", "--dot", "-"]);
    assert_eq!(code, 0);
    assert!(out.contains("  1 -> 3  beta.alpha\n"), "{out}");
    assert!(out.contains("\"1\" -> \"3\" [label=\"beta.alpha\"];"), "{out}");
    assert!(out.contains("by cell degree 2, 1"), "{out}");
}

#[test]
fn verdict_json_shape() {
    let ws = Workspace::parse(&std::fs::read_to_string(ws_path("two_loop_powers")).unwrap()).unwrap();
    let json: serde_json::Value = serde_json::from_str(&commands::classify(&ws).unwrap().json.unwrap()).unwrap();
    assert_eq!(json["semiprime"]["verdict"], "yes");
    assert_eq!(json["semiprime"]["rule"], "square-rule");
    assert_eq!(json["semiprime"]["truncation"], 6);
    assert!(json["semiprime"]["witness"].is_null());
    let w = &json["prime"]["witness"];
    assert_eq!(w["kind"], "pair");
    assert_eq!(w["a"]["paths"].as_array().unwrap().len(), 6);
    assert_eq!(json["prime"]["truncation"], 6);
}

/// Regenerate with `UPDATE_GOLDEN=1 cargo test -p coalg-cli --test cli`.
#[test]
fn analyze_matches_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for (name, path) in corpus() {
        let ws = Workspace::parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let outcome = commands::analyze(&ws).unwrap();
        assert!(outcome.violations.is_empty(), "{name}: {:?}", outcome.violations);
        let json = outcome.json.unwrap();
        let golden = golden_dir().join(format!("{name}.analyze.json"));
        if update {
            std::fs::write(&golden, &json).unwrap();
        }
        let expected = std::fs::read_to_string(&golden).unwrap_or_else(|_| panic!("missing {}", golden.display()));
        assert_eq!(json, expected, "{name} differs from its golden file");
    }
}

fn random_workspace(seed: u64) -> Workspace {
    let mut rng = common::rng(seed);
    let q = common::random_quiver(&mut rng, 4, 5);
    let n = common::affordable(&q, 4, 200);
    let coalgebra = common::random_monomial(&mut rng, &q, n);
    let mut subcoalgebras = std::collections::BTreeMap::new();
    for k in 0..rng.gen_range(0..=2) {
        subcoalgebras.insert(format!("S{k}"), common::random_sub(&mut rng, &coalgebra, n));
    }
    Workspace { quiver: q, coalgebra, subcoalgebras, truncation: n, cell_bound: rng.gen_range(1..=12) }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn emit_then_parse_round_trips(seed in any::<u64>()) {
        let ws = random_workspace(seed);
        let text = ws.to_json();
        let back = Workspace::parse(&text).unwrap();
        prop_assert_eq!(&back, &ws);
        prop_assert_eq!(back.to_json(), text);
    }
}
