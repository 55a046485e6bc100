use std::path::Path;
use std::process::{Command, Output};

fn kuratowski(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kuratowski"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn corpus_file(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/corpus")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

#[test]
fn enumerate_prints_counts() {
    let o = kuratowski(&["enumerate", "--ops", "kcf"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "nontrivial=78 total=82 longest=ckckfckckc\n");
}

#[test]
fn enumerate_writes_log() {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("kc.log");
    let o = kuratowski(&["enumerate", "--ops", "kc", "--log", log.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "nontrivial=14 total=14 longest=ckckckc\n");
    let text = std::fs::read_to_string(log).unwrap();
    assert!(text.lines().any(|l| l == "kk\tk"));
}

#[test]
fn witness_figure1() {
    let o = kuratowski(&["witness", "figure1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "table1: 14/14 rows PASS; orbit{c,p}=14 PASS\n");
}

#[test]
fn witness_ln() {
    let o = kuratowski(&["witness", "Ln", "--n", "6"]);
    assert_eq!(stdout(&o), "orbit{q}=6 PASS\n");
}

#[test]
fn orbit_of_a_file_with_dot() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("orbit.dot");
    let o = kuratowski(&[
        "orbit",
        "--dfa",
        &corpus_file("figure1.json"),
        "--ops",
        "pc",
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("orbit size: 14\n"));
    let graph = std::fs::read_to_string(dot).unwrap();
    assert_eq!(graph.matches(" -> ").count(), 28);
}

#[test]
fn orbit_cap_is_a_failure() {
    let o = kuratowski(&["orbit", "--dfa", &corpus_file("figure1.json"), "--ops", "pc", "--cap", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("orbit cap exceeded"));
}

#[test]
fn verify_reports_pass_and_fail() {
    let args = ["--trials", "100", "--maxlen", "5", "--alphabet", "2", "--seed", "7"];
    let pass = kuratowski(&[&["verify", "--identity", "ps=f"][..], &args].concat());
    assert!(pass.status.success());
    assert_eq!(stdout(&pass), "IDENTITY ps=f trials=108 result=PASS\n");
    let fail = kuratowski(&[&["verify", "--identity", "p=s"][..], &args].concat());
    assert_eq!(fail.status.code(), Some(1));
    assert!(stdout(&fail).starts_with("IDENTITY p=s trials=108 result=FAIL counterexample={"));
    let incl = kuratowski(&[&["verify", "--identity", "t=k", "--inclusion"][..], &args].concat());
    assert!(incl.status.success(), "{}", stdout(&incl));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["enumerate", "--ops", "kz"][..],
        &["enumerate", "--ops", "kq"],
        &["verify", "--identity", "psf"],
        &["verify", "--identity", "p=p", "--maxlen", "40"],
        &["witness", "figure9"],
        &["orbit", "--dfa", "/nonexistent.json", "--ops", "k"],
        &["frobnicate"],
    ] {
        let o = kuratowski(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--identity", "kp=pk", "--seed", "3"];
    assert_eq!(kuratowski(&args).stdout, kuratowski(&args).stdout);
}

#[test]
fn crosscheck_small_set() {
    let o = kuratowski(&["crosscheck", "--ops", "kc", "--trials", "10"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("result=PASS"));
}
