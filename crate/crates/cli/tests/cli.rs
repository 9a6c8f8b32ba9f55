//! End-to-end runs of the `netgram` binary against the fixture files.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use netgram::report::catalog;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_netgram"))
        .args(args)
        .current_dir(fixtures())
        .env_remove("NETGRAM_MAX_ENUM")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let path = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn printed_codes(out: &Output) -> Vec<String> {
    stdout(out)
        .lines()
        .filter_map(|l| l.split('\t').next())
        .filter(|c| !c.is_empty())
        .map(str::to_owned)
        .collect()
}

#[test]
fn definite_fixtures_pass() {
    for file in ["n_edge.net", "empty.net", "n_sigma.net", "glued_pair.net"] {
        let out = run(&["check", file, "--level=definite"]);
        assert_eq!(code(&out), 0, "{file}: {}", stdout(&out));
        assert_eq!(
            code(&run(&["check", file, "--level=semi-definite", "--oracle"])),
            0,
            "{file}"
        );
    }
}

#[test]
fn bad_hook_gluing_is_reported() {
    let out = run(&["check", "n_edge_badhook.net", "--level=axioms"]);
    assert_eq!(code(&out), 1);
    let codes = printed_codes(&out);
    assert!(codes.contains(&"N3.H".to_owned()), "{codes:?}");
    for c in &codes {
        assert!(catalog::describe(c).is_some(), "{c} is not in the catalog");
    }
}

#[test]
fn structured_output_is_json() {
    let out = run(&["--format=structured", "check", "n_edge_badhook.net"]);
    assert_eq!(code(&out), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let codes: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|r| r["violations"].as_array().unwrap())
        .map(|x| x["code"].as_str().unwrap())
        .collect();
    assert!(codes.contains(&"N3.H"));
    assert!(codes.iter().all(|c| catalog::describe(c).is_some()));
}

#[test]
fn parse_errors_are_fatal() {
    let bad = scratch("bad.net", "network x\n  hook h at=nowhere\nend\n");
    let out = run(&["check", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(code(&run(&["check", "no_such_file.net"])), 2);
}

#[test]
fn hom_check_identity() {
    assert_eq!(code(&run(&["hom", "check", "id_nedge.hom"])), 0);
    assert_eq!(code(&run(&["hom", "check", "fold.hom", "unfold.hom"])), 0);
}

#[test]
fn compose_prints_a_checkable_composite() {
    let out = run(&["hom", "compose", "fold.hom", "unfold.hom"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains(": n_edge_x4 -> n_edge\n"), "{text}");
    let path = scratch("composite.hom", &text);
    assert_eq!(code(&run(&["hom", "check", path.to_str().unwrap()])), 0);
}

#[test]
fn compose_rejects_mismatched_endpoints() {
    assert_eq!(code(&run(&["hom", "compose", "unfold.hom", "fold.hom"])), 2);
}

#[test]
fn invert_needs_a_bijection() {
    assert_eq!(code(&run(&["hom", "invert", "fold.hom"])), 2);
    let out = run(&["hom", "invert", "id_nedge.hom"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("map e e"));
}

#[test]
fn subnet_of_tau_is_tau() {
    let out = run(&["subnet", "n_edge.net", "tau"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let body: Vec<&str> = text.lines().filter(|l| l.starts_with("  ")).collect();
    assert_eq!(body, ["  symbol tau"]);
    assert_eq!(code(&run(&["subnet", "n_edge.net", "nope"])), 2);
}

#[test]
fn restrict_to_an_extracted_subnetwork() {
    let fold = std::fs::read_to_string(fixtures().join("fold.hom")).unwrap();
    let start = fold.find("network n_edge_x2").unwrap();
    let end = start + fold[start..].find("\nend\n").unwrap() + 5;
    let x2 = scratch("n_edge_x2_only.net", &fold[start..end]);
    let sub = run(&["subnet", x2.to_str().unwrap(), "e_0"]);
    assert_eq!(code(&sub), 0);
    let path = scratch("fold_sub.net", &stdout(&sub));
    let out = run(&["hom", "restrict", "fold.hom", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("map e_0 e"));
    assert_eq!(code(&run(&["hom", "restrict", "fold.hom", "n_edge.net"])), 2);
}

#[test]
fn induce_reproduces_the_glued_pair() {
    let out = run(&["induce", "glued_pair.net", "k1:k2"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("glue s1 s2"), "{}", stdout(&out));
    assert_eq!(code(&run(&["induce", "glued_pair.net", "k1"])), 2);
}

#[test]
fn certificate_confirms_identity() {
    let out = run(&["certificate", "id_nedge.hom"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("definite: confirmed"));
}

#[test]
fn laws_run_is_deterministic() {
    let a = run(&["laws", "--cases=100", "--seed=7"]);
    assert_eq!(code(&a), 0, "{}", stdout(&a));
    assert!(stdout(&a).lines().any(|l| l.starts_with("L23\t100\t")));
    let b = run(&["laws", "--cases=100", "--seed=7"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn mutated_checkers_are_caught() {
    for m in ["definite-without-4b", "certificate-without-b"] {
        let out = run(&["laws", "--cases=300", &format!("--mutate={m}")]);
        assert_eq!(code(&out), 1, "{m}: {}", stdout(&out));
        assert!(stdout(&out).contains("counterexample"), "{m}");
    }
}
