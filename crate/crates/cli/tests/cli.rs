use std::process::{Command, Output};

use dtl_core::json::polynomial_from_json;
use dtl_core::parse::parse_polynomial;

fn dtl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dtl"))
        .args(args)
        .env_remove("DTL_TERM_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

const GOLDEN: &str =
    "z[0,5]^2*z[0,7]^2 - 3*z[0,5]^2*z[1,7]*z[2,7] - 3*z[0,7]^2*z[1,5]*z[2,5] + 9*z[1,5]*z[1,7]*z[2,5]*z[2,7]";

#[test]
fn tensor_worked_example() {
    for extra in [&[][..], &["--naive"][..]] {
        let mut args = vec!["tensor", "x0^2 - 3*x1*x2", "y5*y7"];
        args.extend_from_slice(extra);
        let o = dtl(&args);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o).trim_end(), GOLDEN);
    }
}

#[test]
fn json_output_matches_text() {
    let text = dtl(&["tensor", "x0*x1 + 2*x2^2", "y0^2 - y1*y2"]);
    let json = dtl(&["--format", "json", "tensor", "x0*x1 + 2*x2^2", "y0^2 - y1*y2"]);
    assert_eq!(json.status.code(), Some(0));
    let from_text = parse_polynomial(stdout(&text).trim_end()).unwrap();
    let from_json = polynomial_from_json(stdout(&json).trim_end()).unwrap();
    assert_eq!(from_text.to_string(), from_json.to_string());
    assert_eq!(from_json.degree(), 4);
}

#[test]
fn psi_on_explicit_slots() {
    let o = dtl(&["psi", "--x", "x1", "--x", "x2", "--y", "y0*y1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim_end(), "z[1,0]*z[2,1]");

    let o = dtl(&["psi", "--x", "x1", "--x", "x2", "--y", "y0"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn cycle_tensor_reports_degrees() {
    let o = dtl(&["cycle-tensor", "2*[x0]", "3*[y0*y1]"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("6*[z[0,0]*z[0,1]]\n"), "{out}");
    assert!(out.contains("degrees: left 2, right 6, output 12"), "{out}");
}

#[test]
fn reduced_pairing_of_degree_zero_cycles() {
    let o = dtl(&["cycle-tensor", "--reduced", "[x0] - [x1]", "[y0] - [y1]"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("degrees: left 0, right 0, output 0"));
}

#[test]
fn parse_errors_point_at_the_input() {
    let o = dtl(&["tensor", "3x0", "y0"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("explicit '*'"), "{err}");
    assert!(err.contains("  3x0\n   ^"), "{err}");

    let o = dtl(&["tensor", "x0^2 + x1", "y0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    assert_eq!(dtl(&["chern", "0", "1"]).status.code(), Some(3));
    assert_eq!(dtl(&["verify", "--suite", "nope"]).status.code(), Some(64));
    assert_eq!(dtl(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(dtl(&["--help"]).status.code(), Some(0));
    assert_eq!(dtl(&["--version"]).status.code(), Some(0));
    assert_eq!(dtl(&["obstruction", "--n", "1"]).status.code(), Some(3));
}

#[test]
fn term_cap_flag_and_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_dtl"))
        .args(["tensor", "x0^2 - 3*x1*x2", "y5*y7"])
        .env("DTL_TERM_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4));

    // the flag wins over the environment
    let o = Command::new(env!("CARGO_BIN_EXE_dtl"))
        .args(["--term-cap", "100", "tensor", "x0^2 - 3*x1*x2", "y5*y7"])
        .env("DTL_TERM_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--trials", "20", "--seed", "7"];
    let a = dtl(&args);
    let b = dtl(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("seed 7, 20 trials, degree <= 3"));
}

#[test]
fn verify_exits_one_on_a_counterexample() {
    let o = dtl(&["verify", "--suite", "biadditivity-left", "--trials", "10"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("biadditivity-left: 9/10 passed, 1 failed"), "{out}");
    assert!(out.contains("first counterexample (trial 5)"), "{out}");

    let o = dtl(&["verify", "--suite", "linear-lemma", "--trials", "20"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn chern_closed_form_and_check() {
    let o = dtl(&["chern", "2", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim_end(), "c1(L)^2 + c1(E)*c1(L) + c2(E)");

    let o = dtl(&["chern", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("15/15 cases agree\n"));
}

#[test]
fn obstruction_forces_a_non_member() {
    let o = dtl(&["obstruction"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("l1*l2: lhs 0 = rhs 2b"), "{out}");

    let o = dtl(&["obstruction", "--ab", "0", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn small_hand_checked_values() {
    let cases: &[(&[&str], &str)] = &[
        (&["tensor", "x0", "y0"], "z[0,0]"),
        (&["tensor", "x0*x1", "y0*y1"], "z[0,0]*z[0,1]*z[1,0]*z[1,1]"),
        (
            &["psi", "--x", "x0^2 - 3*x1*x2", "--x", "x0^2 - 3*x1*x2", "--y", "y5*y7", "--y", "y5*y7"],
            GOLDEN,
        ),
        (&["cycle-tensor", "2*[x0]", "3*[y1]"], "6*[z[0,1]]\ndegrees: left 2, right 3, output 6"),
        (
            &["cycle-tensor", "1*[x0] + -1*[x1]", "1*[y0*y1]"],
            "1*[z[0,0]*z[0,1]] + -1*[z[1,0]*z[1,1]]\ndegrees: left 0, right 2, output 0",
        ),
    ];
    for (args, want) in cases {
        let o = dtl(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        assert_eq!(stdout(&o).trim_end(), *want, "{args:?}");
    }
}
