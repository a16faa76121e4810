use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn endoca(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_endoca"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn classify_prints_the_known_lists() {
    let o = endoca(&["eca", "classify", "--predicate", "additive"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "0,60,90,102,150,170,204,240\n");
    let o = endoca(&["eca", "classify", "--predicate", "boolean-hom"]);
    assert_eq!(stdout(&o), "170,204,240\n");
    let o = endoca(&["eca", "classify", "--predicate", "no-such-thing"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn hom_count_agrees_with_list() {
    for (dom, cod) in [("Z2^3", "Z2"), ("Bool^2", "Bool"), ("Z4^2", "Z4"), ("Set2^2", "Set2")] {
        let count = endoca(&["hom", "count", dom, cod]);
        let list = endoca(&["hom", "list", dom, cod]);
        assert_eq!(code(&count), 0, "{dom}");
        let n: usize = stdout(&count).trim().parse().unwrap();
        assert_eq!(stdout(&list).lines().count(), n, "{dom} -> {cod}");
    }
    let power = endoca(&["hom", "count", "Z2", "Z2", "--power", "3"]);
    assert_eq!(stdout(&power), "8\n");
}

#[test]
fn identity_rule_keeps_every_row() {
    let o = endoca(&["eca", "run", "204", "--steps", "5", "--init", "0110100"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 6);
    assert!(out.lines().all(|r| r == "0110100"));
}

#[test]
fn rule_90_on_a_ring() {
    let o = endoca(&["eca", "run", "90", "--period", "5", "--steps", "2", "--init", "00100"]);
    assert_eq!(stdout(&o), "00100\n01010\n10001\n");
    let o = endoca(&["eca", "run", "90", "--period", "4", "--steps", "1", "--init", "00100"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn algebra_files_are_checked() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "z3.alg", "algebra Z3f\nsize 3\nop + 2\n0 1 2 1 2 0 2 0 1\n");
    let o = endoca(&["algebra", "check", &good, "--entropic"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("valid\nentropic: true"));

    // table too short, value out of range, missing size
    for (name, text) in [
        ("short.alg", "algebra X\nsize 2\nop * 2\n0 1 1\n"),
        ("range.alg", "algebra X\nsize 2\nop * 2\n0 1 1 2\n"),
        ("nosize.alg", "algebra X\nop * 2\n0 1 1 0\n"),
    ] {
        let p = write(dir.path(), name, text);
        let o = endoca(&["algebra", "check", &p]);
        assert_eq!(code(&o), 2, "{name}");
        assert!(!o.stderr.is_empty());
    }

    let o = endoca(&["algebra", "check", "Bool", "--entropic"]);
    let out = stdout(&o);
    assert!(out.contains("entropic: false"));
    assert!(out.contains("witness: "));
}

#[test]
fn group_files_are_checked() {
    let dir = tempfile::tempdir().unwrap();
    let c3 = write(dir.path(), "c3.group", "group C3\norder 3\n0 1 2\n1 2 0\n2 0 1\n");
    let o = endoca(&["group", "check", &c3]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "group C3: order 3\nvalid\n");
    // row 0 repeats a value
    let bad = write(dir.path(), "bad.group", "group B\norder 2\n0 0\n1 0\n");
    assert_eq!(code(&endoca(&["group", "check", &bad])), 2);
}

#[test]
fn ca_file_commands() {
    let dir = tempfile::tempdir().unwrap();
    let left = write(
        dir.path(),
        "left.ca",
        "ca left\ngroup Z\nalphabet Z2\nmemory -1\nrule 0 1\n",
    );
    let right = write(
        dir.path(),
        "right.ca",
        "ca right\ngroup Z\nalphabet Z2\nmemory 1\nrule 0 1\n",
    );
    let o = endoca(&["ca", "compose", &left, &right]);
    assert_eq!(code(&o), 0);
    let composed = stdout(&o);
    assert!(composed.contains("memory 0\n"), "{composed}");
    assert!(composed.contains("rule 0 1\n"), "{composed}");

    let padded = write(
        dir.path(),
        "padded.ca",
        "ca padded\ngroup Z\nalphabet Z2\nmemory -1 0 1\nrule 0 0 1 1 0 0 1 1\n",
    );
    let o = endoca(&["ca", "minimize", &padded]);
    assert_eq!(stdout(&o), "ca padded\ngroup Z\nalphabet Z2\nmemory 0\nrule 0 1\n");

    let o = endoca(&["ca", "is-endo", &padded]);
    assert_eq!(stdout(&o), "endomorphic: true\n");
    let r110: Vec<String> = (0..8).map(|t| ((110 >> t) & 1).to_string()).collect();
    let r110 = write(
        dir.path(),
        "r110.ca",
        &format!("ca r110\ngroup Z\nalphabet Z2\nmemory -1 0 1\nrule {}\n", r110.join(" ")),
    );
    let o = endoca(&["ca", "is-endo", &r110]);
    assert!(stdout(&o).starts_with("endomorphic: false\nviolation: "));

    let o = endoca(&["ca", "apply", &left, "--config", "1 0 0 0", "--steps", "2"]);
    assert_eq!(stdout(&o), "1 0 0 0\n0 1 0 0\n0 0 1 0\n");
}

#[test]
fn ca_files_resolve_local_group_and_alphabet() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "K.group", "group K\norder 4\n0 1 2 3\n1 0 3 2\n2 3 0 1\n3 2 1 0\n");
    write(dir.path(), "B.alg", "algebra B\nsize 2\nop x 2\n0 1 1 0\n");
    let sum = write(
        dir.path(),
        "sum.ca",
        "ca sum\ngroup K\nalphabet B\nmemory 1 2\nrule 0 1 1 0\n",
    );
    let o = endoca(&["ca", "is-endo", &sum]);
    assert_eq!(stdout(&o), "endomorphic: true\n");
    let o = endoca(&["ca", "apply", &sum, "--config", "1 0 0 0"]);
    assert_eq!(code(&o), 0);
    // y(g) = x(g+1) xor x(g+2) in the Klein group
    assert_eq!(stdout(&o).lines().nth(1), Some("0 1 1 0"));
}

#[test]
fn malformed_ca_file_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.ca", "ca bad\ngroup Z\nalphabet Z2\nmemory -1 0 1\nrule 0 1 0\n");
    let o = endoca(&["ca", "minimize", &bad]);
    assert_eq!(code(&o), 2);
    let unknown = write(dir.path(), "u.ca", "ca u\ngroup Nope\nalphabet Z2\nmemory 0\nrule 0 1\n");
    assert_eq!(code(&endoca(&["ca", "minimize", &unknown])), 2);
}

#[test]
fn endoca_count_and_list() {
    let o = endoca(&["endoca", "count", "Z2", "--memory", "-1 0 1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().next(), Some("8"));
    let o = endoca(&["endoca", "list", "Bool", "--memory", "-1 0 1"]);
    let out = stdout(&o);
    for rule in ["rule 170", "rule 204", "rule 240"] {
        assert!(out.contains(rule), "{out}");
    }
    assert_eq!(out.lines().count(), 4);
}

#[test]
fn caps_exit_with_three() {
    let o = endoca(&["--cap-domain", "16", "hom", "count", "Set3^3", "Set3"]);
    assert_eq!(code(&o), 3, "{}", String::from_utf8_lossy(&o.stderr));
    let o = endoca(&["--cap-domain", "8", "endoca", "list", "Z3", "--memory", "-1 0 1"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn verify_suites() {
    let o = endoca(&["verify", "boolean-count"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.lines().all(|l| l.starts_with("CHECK ") && l.contains(" PASS ")), "{out}");
    assert_eq!(code(&endoca(&["verify", "no-such-suite"])), 2);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["verify", "th-ca-s"][..],
        &["hom", "list", "Z3^2", "Z3"],
        &["eca", "run", "30", "--steps", "8", "--init", "0001000100"],
    ] {
        let a = endoca(args);
        let b = endoca(args);
        assert_eq!(code(&a), 0, "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn bad_arguments_exit_with_two() {
    assert_eq!(code(&endoca(&[])), 2);
    assert_eq!(code(&endoca(&["eca", "run", "300", "--init", "010"])), 2);
    assert_eq!(code(&endoca(&["eca", "run", "30", "--init", "01x"])), 2);
    assert_eq!(code(&endoca(&["hom", "count", "Nope", "Z2"])), 2);
}
