use std::fs;
use std::path::PathBuf;

use tempfile::TempDir;
use vp_cli::{run_command, EXIT_CHECK_FAILED, EXIT_INPUT, EXIT_OK};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("vpspace").chain(args.iter().copied());
    let code = run_command(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn spec_file(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, body).unwrap();
    path
}

const E1_CES2: &str =
    r#"{"weights":{"kind":"identity"},"exponents":{"kind":"const","p":2},"x":[1]}"#;

#[test]
fn norms_of_e1_in_ces2() {
    let dir = TempDir::new().unwrap();
    let f = spec_file(&dir, "e1.json", E1_CES2);
    let f = f.to_str().unwrap();

    let (code, out, _) = run(&["luxemburg", "-i", f, "--tol", "1e-8"]);
    assert_eq!(code, EXIT_OK);
    assert!(
        out.starts_with("1.28254983 residual<1e-8 iterations="),
        "{out}"
    );

    let (code, out, _) = run(&["amemiya", "-i", f, "--tol", "1e-8"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("2.56509966 residual<1e-8"), "{out}");

    let (_, out, _) = run(&["modular", "-i", f]);
    assert!(out.starts_with("1.64493407 ± "), "{out}");

    let (_, out, _) = run(&["--raw", "modular", "-i", f]);
    let value: f64 = out.split_whitespace().next().unwrap().parse().unwrap();
    assert!((value - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-12);
}

#[test]
fn zero_sequence_is_exact() {
    let dir = TempDir::new().unwrap();
    let f = spec_file(
        &dir,
        "zero.json",
        r#"{"weights":{"kind":"rate","r":3},"exponents":{"kind":"const","p":2},"x":[0,0,0]}"#,
    );
    let (code, out, _) = run(&["modular", "-i", f.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "0 ± 0\n"));
    let (_, out, _) = run(&["luxemburg", "-i", f.to_str().unwrap()]);
    assert!(out.starts_with("0 residual"), "{out}");
}

#[test]
fn means_and_classification() {
    let dir = TempDir::new().unwrap();
    let f = spec_file(
        &dir,
        "ones.json",
        r#"{"weights":{"kind":"rate","r":2},"exponents":{"kind":"const","p":2},"x":[1,1,1,1,1]}"#,
    );
    let f = f.to_str().unwrap();
    let (code, out, _) = run(&["mean", "-i", f, "-k", "5"]);
    assert_eq!(code, EXIT_OK);
    let last = out.lines().last().unwrap();
    assert!(
        last.starts_with("k=5 t=1.00000000 ± ") && last.ends_with("window=[3,5]"),
        "{last}"
    );

    let (code, out, _) = run(&["classify", "-i", f, "--horizon", "100"]);
    assert_eq!(code, EXIT_OK);
    assert!(
        out.contains("trend=mixed") || out.contains("trend=decreasing"),
        "{out}"
    );
    assert!(out.contains("finite-horizon"));
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let bad = spec_file(
        &dir,
        "bad.json",
        r#"{"weights":{"kind":"rate","r":0.5},"exponents":{"kind":"const","p":2},"x":[1]}"#,
    );
    let (code, _, err) = run(&["modular", "-i", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("rate must be ≥ 1"), "{err}");

    let p1 = spec_file(
        &dir,
        "p1.json",
        r#"{"weights":{"kind":"identity"},"exponents":{"kind":"const","p":1},"x":[1]}"#,
    );
    let (code, _, err) = run(&["modular", "-i", p1.to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("p_k > 1 required"), "{err}");

    let jump = spec_file(
        &dir,
        "jump.json",
        r#"{"weights":{"kind":"table","values":[1,2.5],"tail_slope":0.5},"exponents":{"kind":"const","p":2},"x":[1]}"#,
    );
    let (code, _, err) = run(&["modular", "-i", jump.to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("λ_{k+1} ≤ λ_k + 1"), "{err}");

    let no_x = spec_file(
        &dir,
        "nox.json",
        r#"{"weights":{"kind":"identity"},"exponents":{"kind":"const","p":2}}"#,
    );
    let (code, _, err) = run(&["luxemburg", "-i", no_x.to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("missing field: x"), "{err}");

    let broken = spec_file(&dir, "broken.json", "{\n \"weights\": [\n");
    let (code, _, err) = run(&["modular", "-i", broken.to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("line"), "{err}");

    assert_eq!(run(&["modular", "-i", "/nonexistent/x.json"]).0, EXIT_INPUT);
    assert_eq!(run(&["frobnicate"]).0, EXIT_INPUT);
    assert_eq!(run(&["modular", "--bogus"]).0, EXIT_INPUT);
    assert_eq!(
        run(&["banach-saks", "--p", "2", "--n", "3", "--lambda", "step:2"]).0,
        EXIT_INPUT
    );
    assert_eq!(run(&["verify", "--check", "no_such_check"]).0, EXIT_INPUT);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("banach-saks"));
}

#[test]
fn banach_saks_reports_each_n() {
    let (code, out, _) = run(&[
        "banach-saks",
        "--p",
        "2",
        "--n",
        "4",
        "--family",
        "disjoint",
        "--lambda",
        "rate:2",
    ]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("cuts: 1 2 4 8"));
    assert!(
        out.contains("n=4 lhs=2.00000000 ± 0 rhs=4.47213595"),
        "{out}"
    );

    // Normalized basis under λ_k = k: the computed block sums exceed the
    // bound from n = 7 on, and the command says so.
    let (code, out, _) = run(&["banach-saks", "--p", "2", "--n", "8"]);
    assert_eq!(code, EXIT_CHECK_FAILED);
    assert!(out.contains("n=6 lhs=5.03065042"), "{out}");
    assert!(
        out.contains("2 of 9 bounds violated (first at n=7)"),
        "{out}"
    );
}

#[test]
fn verify_subset_and_formats() {
    let (code, out, _) = run(&[
        "verify",
        "--samples",
        "10",
        "--check",
        "scalar_inequalities",
        "--check",
        "cesaro_reduction",
    ]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(
        lines[0],
        "check,samples,violations,worst_margin,tolerance,pass"
    );
    assert_eq!(lines.len(), 4, "{out}");
    assert!(lines[1].starts_with("cesaro_reduction/ces2,10,0,"));
    assert!(lines.iter().skip(1).all(|l| l.ends_with(",true")));

    let (code, out, _) = run(&[
        "verify",
        "--samples",
        "5",
        "--check",
        "norm_sandwich/ces3",
        "--format",
        "text",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(
        out.contains("norm_sandwich/ces3") && out.contains("PASS"),
        "{out}"
    );
    assert!(out.ends_with("1 checks, 0 failed\n"));
}
