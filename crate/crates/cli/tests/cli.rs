use std::path::PathBuf;
use std::process::{Command, Output};

fn engel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_engel"))
        .args(args)
        .output()
        .expect("running the engel binary")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn temp_file(name: &str, body: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("engel-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn unknown_names_exit_2() {
    let o = engel(&["check", "--claim", "CHK-08", "--group", "Nope"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown group"));
    assert_eq!(engel(&["check", "--claim", "CHK-99", "--group", "S3"]).status.code(), Some(2));
    assert_eq!(engel(&["check-all", "--groups", "S3", "--claims", "CHK-99"]).status.code(), Some(2));
    assert_eq!(engel(&["check-all", "--groups", "Nope"]).status.code(), Some(2));
}

#[test]
fn listings() {
    let groups = stdout(&engel(&["list-groups"]));
    assert!(groups.lines().count() >= 30);
    assert!(groups.lines().any(|l| l == "S3\t6"));
    assert!(groups.lines().any(|l| l == "A5\t60"));
    let claims = stdout(&engel(&["list-claims"]));
    assert_eq!(claims.lines().count(), 19);
    assert!(claims.starts_with("CHK-01\t"));
}

#[test]
fn single_check_text_and_json() {
    let o = engel(&["check", "--claim", "CHK-08", "--group", "S3"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("CHK-08  S3  pass"));
    let o = engel(&["check", "--claim", "CHK-08", "--group", "S3", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(v["ms"], 0);
}

#[test]
fn check_all_selection() {
    let o = engel(&["check-all", "--groups", "S3,Q8", "--claims", "CHK-02,CHK-06", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0]["claim"], "CHK-02");
    let o = engel(&["check-all", "--groups", ""]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("0 results"));
}

#[test]
fn collect_prints_normal_form() {
    let o = engel(&["collect", "--rank", "2", "--class", "2", "--word", "a b a b^-1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "a^2 [b,a]\n[2, 0, 1]\n");
    assert_eq!(engel(&["collect", "--rank", "9", "--class", "2", "--word", "a"]).status.code(), Some(2));
}

#[test]
fn symbolic_check_verifies() {
    let o = engel(&["theorem2-sym", "--instance-len", "1", "--conj-len", "1"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("verified\n"));
    assert!(out.contains("infinite infinite infinite infinite 1"));
    let capped = engel(&["theorem2-sym", "--instance-len", "4", "--conj-len", "3", "--cap", "10"]);
    assert_eq!(capped.status.code(), Some(2));
}

#[test]
fn engel_sets_and_radicals() {
    let o = engel(&["engel-set", "--side", "left", "--n", "3", "--group", "S3"]);
    assert!(stdout(&o).starts_with("L_3(S3) has 3 of 6 elements"));
    let o = engel(&["engel-set", "--side", "right", "--n", "1", "--group", "Q8"]);
    assert!(stdout(&o).starts_with("R_1(Q8) has 2 of 8 elements"));
    let baer = stdout(&engel(&["radical", "--kind", "baer", "--group", "S4"]));
    let fitting = stdout(&engel(&["radical", "--kind", "fitting", "--group", "S4"]));
    assert!(baer.starts_with("order 4  normal true  class 1"));
    assert_eq!(baer, fitting);
}

#[test]
fn eval_expr_matches_conjugation() {
    let conj = stdout(&engel(&["eval-expr", "--group", "S3", "--base", "a", "--expr", "b", "--env", "b=b"]));
    let word = stdout(&engel(&["eval-expr", "--group", "S3", "--base", "b^-1 a b", "--expr", "1"]));
    assert_eq!(conj, word);
    let bad = engel(&["eval-expr", "--group", "S3", "--base", "a", "--expr", "z"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn load_files() {
    let perms = temp_file("s3.perm", "# S3\na = (1,2,3)\nb = (1,2)\n");
    let o = engel(&["load", "--perms", perms.to_str().unwrap(), "--name", "T", "--check"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("T: order 6, abelian false, class not nilpotent"));
    assert!(out.contains("19 results: 17 pass, 0 fail, 2 info"));

    let table = temp_file("c2.cayley", "2\n0 1\n1 0\n");
    let o = engel(&["load", "--cayley", table.to_str().unwrap(), "--name", "Two"]);
    assert!(stdout(&o).starts_with("Two: order 2, abelian true, class 1"));

    let bad = temp_file("bad.cayley", "2\n0 1\n1 1\n");
    let o = engel(&["load", "--cayley", bad.to_str().unwrap(), "--name", "X"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Latin square"));
    for p in [perms, table, bad] {
        std::fs::remove_file(p).unwrap();
    }
}
