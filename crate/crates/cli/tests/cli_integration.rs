//! Drives the installed binary end to end: instance files, exit codes,
//! stable text output, and byte-identical machine reruns.

use std::path::PathBuf;
use std::process::Command;

use tempfile::TempDir;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_bowtie"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf8 stdout"),
        String::from_utf8(out.stderr).expect("utf8 stderr"),
    )
}

fn write_file(dir: &TempDir, name: &str, content: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, content).expect("write instance file");
    path
}

const Z6_FILE: &str = "\
ring R1 = zmod 6; ideal J of R1 = {0, 3}
hom f : R1 -> R1 = identity
module M over R1 = regular
modhom phi : M -> M via f = identity
submodule F of M = {0, 2, 4}
";

const Z30_FILE: &str = "\
ring R = zmod 30
module M over R = regular
submodule F of M = {0}
";

#[test]
fn check_reports_the_least_violation_and_exits_one() {
    let dir = TempDir::new().unwrap();
    let file = write_file(&dir, "z30.bt", Z30_FILE);
    let (code, stdout, _) = run(&["check", file.to_str().unwrap(), "F"]);
    assert_eq!(code, 1, "a refuted classification exits 1");
    let expected = "\
submodule F of M (Z30): members {0}, proper: yes
  residual ideal: {0}
  prime: no, witness a=2 m=15
  2-absorbing: no, witness a=2 b=3 m=5
  primary: no, witness a=2 m=15
  radical of residual ideal: {0}
  radical (intersection of containing primes): {0}
";
    assert_eq!(stdout, expected);
}

#[test]
fn check_machine_document_carries_the_witness() {
    let dir = TempDir::new().unwrap();
    let file = write_file(&dir, "z30.bt", Z30_FILE);
    let (code, stdout, _) = run(&["check", file.to_str().unwrap(), "F", "--format", "machine"]);
    assert_eq!(code, 1);
    let doc: serde_json::Value = serde_json::from_str(&stdout).expect("machine output is JSON");
    assert_eq!(doc["command"], "check");
    assert_eq!(doc["holds"], false);
    assert_eq!(doc["kind"], "submodule");
    let two = doc["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["predicate"] == "2-absorbing")
        .expect("2-absorbing check present");
    assert_eq!(two["holds"], false);
    assert_eq!(two["witness"]["indices"], serde_json::json!([2, 3, 5]));
}

#[test]
fn check_passes_on_a_two_absorbing_submodule() {
    let dir = TempDir::new().unwrap();
    let file = write_file(&dir, "z6.bt", Z6_FILE);
    let (code, stdout, _) = run(&["check", file.to_str().unwrap(), "F"]);
    assert_eq!(code, 0, "every classification holds: {stdout}");
    assert!(stdout.contains("2-absorbing: yes"));
}

#[test]
fn amalgamate_prints_the_duplication_shape() {
    let dir = TempDir::new().unwrap();
    let file = write_file(&dir, "z6.bt", Z6_FILE);
    let (code, stdout, _) = run(&[
        "amalgamate",
        file.to_str().unwrap(),
        "--map",
        "f",
        "--ideal",
        "J",
        "--module-map",
        "phi",
        "--submodule",
        "F",
    ]);
    assert_eq!(code, 0);
    let expected = "\
ring pair Z6 bowtie {0,3}: |R1| = 6, |R2| = 6, |J| = 2, size 12
module pair Z6 bowtie {0,3}: |M| = 6, |N| = 6, |JN| = 2, size 12
target phi(Z6)+{0,3}: ring size 6, module size 6
projection kernel: size 2, members {(0,0), (3,0)}
submodule F: members {0, 2, 4}
  base 2-absorbing: yes
  lift: size 6 = |F| 3 x |JN| 2, members {(0,0), (0,3), (2,2), (2,5), (4,1), (4,4)}
  lift 2-absorbing: yes
";
    assert_eq!(stdout, expected);
}

#[test]
fn enumerate_lists_the_submodule_lattice() {
    let dir = TempDir::new().unwrap();
    let file = write_file(&dir, "z6.bt", Z6_FILE);
    let (code, stdout, _) = run(&["enumerate", file.to_str().unwrap(), "M"]);
    assert_eq!(code, 0);
    let expected = "\
module M = Z6: size 6 over Z6, submodules: 4
size  prime  2-absorbing  primary  members
1     no     yes          no       {0}
2     yes    yes          yes      {0, 3}
3     yes    yes          yes      {0, 2, 4}
6     -      -            -        {0, 1, 2, 3, 4, 5}
";
    assert_eq!(stdout, expected);
}

#[test]
fn localize_inverts_the_two_part_of_z12() {
    let dir = TempDir::new().unwrap();
    let file = write_file(
        &dir,
        "z12.bt",
        "ring R = zmod 12\nmultset S of R = {1, 2, 4, 8}\nmodule M over R = regular\n",
    );
    let (code, stdout, _) = run(&[
        "localize",
        file.to_str().unwrap(),
        "--set",
        "S",
        "--module",
        "M",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with(
        "ring Z12 localized at S {1, 2, 4, 8}: size 3, collapsed: no\n  kernel of the fraction map: {0, 3, 6, 9}\n"
    ));
    assert!(stdout.contains("module M localized: size 3"));
}

#[test]
fn verify_family_machine_reports_are_byte_identical() {
    let args = [
        "verify",
        "--family",
        "products",
        "--statements",
        "T3_4a,C3_10_1,C3_10_2",
        "--format",
        "machine",
    ];
    let (code_a, first, _) = run(&args);
    let (code_b, second, _) = run(&args);
    let mut with_jobs: Vec<&str> = args.to_vec();
    with_jobs.extend(["--jobs", "3"]);
    let (code_c, third, _) = run(&with_jobs);
    assert_eq!((code_a, code_b, code_c), (0, 0, 0));
    assert_eq!(first, second, "same inputs, same bytes");
    assert_eq!(first, third, "worker count does not leak into the report");
}

#[test]
fn verify_file_instance_confirms_statements() {
    let dir = TempDir::new().unwrap();
    let file = write_file(&dir, "z6.bt", Z6_FILE);
    let (code, stdout, _) = run(&[
        "verify",
        "--file",
        file.to_str().unwrap(),
        "--map",
        "f",
        "--ideal",
        "J",
        "--module-map",
        "phi",
        "--statements",
        "T3_4a,T3_4b,C3_5,P2_1",
    ]);
    assert_eq!(code, 0, "all statements hold: {stdout}");
    assert!(stdout.contains("0 counterexamples"));
    for id in ["T3_4a", "T3_4b", "C3_5", "P2_1"] {
        assert!(stdout.contains(id), "missing {id} row in:\n{stdout}");
    }
}

#[test]
fn verify_rejects_unknown_statement_ids() {
    let dir = TempDir::new().unwrap();
    let file = write_file(&dir, "z6.bt", Z6_FILE);
    let (code, _, stderr) = run(&[
        "verify",
        "--file",
        file.to_str().unwrap(),
        "--map",
        "f",
        "--ideal",
        "J",
        "--module-map",
        "phi",
        "--statements",
        "T9_9",
    ]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown statement id"));
}

#[test]
fn parse_errors_name_the_line_and_exit_two() {
    let dir = TempDir::new().unwrap();
    let file = write_file(
        &dir,
        "bad.bt",
        "ring R = zmod 6\nideal J of R2 = {0, 3}\n",
    );
    let (code, _, stderr) = run(&["check", file.to_str().unwrap(), "J"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("line 2"), "stderr was: {stderr}");
    assert!(stderr.contains("R2"), "stderr was: {stderr}");
}

#[test]
fn invalid_carriers_exit_two_with_binding_context() {
    let dir = TempDir::new().unwrap();
    // {0, 4} is not closed under addition in Z6.
    let file = write_file(
        &dir,
        "bad.bt",
        "ring R = zmod 6\nideal J of R = {0, 4}\n",
    );
    let (code, _, stderr) = run(&["check", file.to_str().unwrap(), "J"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("line 2, binding J"), "stderr was: {stderr}");
}

#[test]
fn missing_file_exits_two() {
    let (code, _, stderr) = run(&["check", "/nonexistent/path.bt", "F"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("cannot read"));
}

#[test]
fn examples_suite_matches_its_frozen_outcomes() {
    let (code, stdout, _) = run(&["examples"]);
    assert_eq!(code, 0, "all examples match: {stdout}");
    assert!(stdout.contains("suite: 3/3 examples as frozen"));
    assert!(stdout.contains("a=2 b=3 m=5"));
}

#[test]
fn examples_z30_suite_refutes_every_lift() {
    let (code, stdout, _) = run(&["examples", "--suite", "z30", "--budget", "16000000000"]);
    assert_eq!(code, 0, "every gluing matched: {stdout}");
    assert_eq!(
        stdout.matches("[as expected]").count(),
        8,
        "one line per divisor of 30:\n{stdout}"
    );
}

#[test]
fn quotient_and_product_constructors_compose() {
    let dir = TempDir::new().unwrap();
    let file = write_file(
        &dir,
        "mixed.bt",
        "\
ring A = zmod 4
ring B = zmod 6
ring P = product [A, B]
ideal K of B = {0, 3}
ring Q = quotient B by K
module MA over A = regular
module MB over B = regular
module PM = product [MA, MB]
",
    );
    let (code, stdout, _) = run(&["check", file.to_str().unwrap(), "P"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("size 24"), "product ring carrier: {stdout}");
    let (code, stdout, _) = run(&["check", file.to_str().unwrap(), "Q"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("size 3"), "quotient carrier: {stdout}");
    let (code, stdout, _) = run(&["enumerate", file.to_str().unwrap(), "PM"]);
    assert_eq!(code, 0);
    assert!(
        stdout.contains("submodules: 12"),
        "product lattice is the product of the ideal lattices: {stdout}"
    );
}
