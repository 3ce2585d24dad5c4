use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn jnorm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jnorm")).args(args).output().unwrap()
}

fn jnorm_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_jnorm"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn records(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn verify_ok_holds() {
    let o = jnorm(&["verify", "ok", "--bound", "25"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("all hold"));
}

#[test]
fn verify_q_holds_and_a_false_sentence_exits_1() {
    assert_eq!(jnorm(&["verify", "q", "--bound", "10"]).status.code(), Some(0));
    let o = jnorm(&["verify", "sentence", "(forall (x K) (imp (nu x) (mu x 1 0)))", "--output", "records"]);
    assert_eq!(o.status.code(), Some(1));
    let recs = records(&o);
    assert_eq!(recs[1]["holds"], false);
    assert_eq!(recs[1]["counterexample"][0]["value"], "1");
}

#[test]
fn verify_over_the_infinitesimal_field() {
    let o = jnorm(&["--field", "rat-eps", "verify", "ok", "--bound", "6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn non_product_is_refused() {
    let o = jnorm(&["mult-check", "--x", "2", "--y", "2", "--z", "5"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("= false") && text.contains("no matching run"), "{text}");
}

#[test]
fn product_comes_with_a_certificate() {
    let o = jnorm(&["--output", "records", "mult-check", "--x", "2", "--y", "3", "--z", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let v = &records(&o)[1];
    assert_eq!(v["holds"], true);
    assert_eq!(v["witness"]["radius"], "50000");
    assert_eq!(v["witness"]["mgi"], serde_json::json!(["4", "5", "20"]));
    assert_eq!(v["witness"]["lengths"][4], "125/128");
}

#[test]
fn small_table_is_consistent() {
    let o = jnorm(&["mult-check", "--table", "2", "--output", "records"]);
    assert_eq!(o.status.code(), Some(0));
    let recs = records(&o);
    assert_eq!(recs.len(), 1 + 9 + 1);
    assert!(recs[1..10].iter().all(|r| r["consistent"] == true && r["refuted"] == 4));
    assert_eq!(recs[10]["consistent"], true);
}

#[test]
fn north_west_norm_exceeds_one() {
    let o = jnorm(&["norm", "--vec", "(-1,1)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("norm = 235929600/235601173"));
    let o = jnorm(&["norm", "--vec", "(-1,1)", "--output", "records"]);
    let v = &records(&o)[1];
    assert_eq!(v["in_unit_disc"], false);
    assert_eq!(v["facet"]["kind"], "chain-1");
}

#[test]
fn norms_in_other_fields_and_dimensions() {
    let o = jnorm(&["--field", "rat-eps", "--output", "records", "norm", "--vec", "(-1+e, 1)"]);
    let v = &records(&o)[1];
    assert_eq!(v["standard_part"], "235929600/235601173");
    let o = jnorm(&["--dimension", "4", "--output", "records", "norm", "--vec", "(1,1,-2,0)"]);
    assert_eq!(records(&o)[1]["norm"], "4");
    let o = jnorm(&["--dimension", "inf", "--output", "records", "norm", "--vec", "(0,0,0,0,0,3)"]);
    assert_eq!(records(&o)[1]["sphere_point"], "extreme +b4");
}

#[test]
fn usage_and_input_errors_exit_2() {
    let o = jnorm(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
    assert_eq!(jnorm(&[]).status.code(), Some(2));
    assert_eq!(jnorm(&["norm", "--vec", "(1,1,1)"]).status.code(), Some(2));
    assert_eq!(jnorm(&["norm", "--vec", "(1/0,1)"]).status.code(), Some(2));
    assert_eq!(jnorm(&["norm", "--vec", "(e,1)"]).status.code(), Some(2));
    assert_eq!(jnorm(&["--p", "2", "--q", "4", "constants"]).status.code(), Some(2));
    assert_eq!(jnorm(&["--dimension", "1", "norm", "--vec", "(1,1)"]).status.code(), Some(2));
    assert_eq!(jnorm(&["translate", "(forall x (= x y))"]).status.code(), Some(2));
    assert_eq!(jnorm(&["mult-check", "--x", "1"]).status.code(), Some(2));
    assert_eq!(jnorm(&["--help"]).status.code(), Some(0));
}

#[test]
fn constants_table() {
    let o = jnorm(&["--output", "records", "constants", "--stages", "1"]);
    let recs = records(&o);
    assert_eq!(recs[0]["format"], "jnorm-records");
    assert_eq!(recs[0]["version"], 1);
    assert_eq!(recs[1]["a"], "13/40");
    assert_eq!(recs[2]["b"], serde_json::json!(["469/40960", "1123/102400", "2147/204800", "3007/409600"]));
    assert_eq!(recs[2]["key"], "100");
}

#[test]
fn vertices_and_facets() {
    let recs = records(&jnorm(&["--output", "records", "vertices", "--count", "2"]));
    assert_eq!(recs[3]["x"], "-4055509/4096000");
    assert_eq!(recs[4]["x"], "-7013/10368");
    let recs = records(&jnorm(&["--output", "records", "facets", "--count", "3"]));
    assert_eq!(recs.len(), 1 + 3 + 2);
    assert_eq!(recs[1]["gradient"], Value::Null);
    assert_eq!(recs[5]["kind"], "north-east");
}

#[test]
fn translate_and_expand() {
    let o = jnorm(&["translate", "--builtin", "4"]);
    assert_eq!(stdout(&o).trim(), "(forall (x K) (imp (nu x) (= (plus x 0) x)))");
    let piped = jnorm_stdin(&["translate"], "(forall x (= (plus x 0) x))");
    assert_eq!(stdout(&piped), stdout(&o));
    let o = jnorm(&["expand", "--free", "x", "(nu x)"]);
    let golden = include_str!("../../jnorm/tests/golden/nu_x.ns");
    assert_eq!(stdout(&o).trim(), golden.trim());
}

#[test]
fn records_are_deterministic() {
    for args in [
        &["--output", "records", "constants", "--stages", "3"][..],
        &["--output", "records", "mult-check", "--table", "1"],
        &["--output", "records", "verify", "q", "--bound", "6"],
        &["--output", "records", "facets", "--count", "5"],
    ] {
        let (a, b) = (jnorm(args), jnorm(args));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.is_empty());
    }
}
