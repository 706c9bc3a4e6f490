use std::fs;
use std::path::PathBuf;

use microforms_cli::{run, Outcome, EXIT_INPUT, EXIT_OK, EXIT_VERIFY};
use tempfile::TempDir;

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path: PathBuf = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("microforms").chain(args.iter().copied()))
}

#[test]
fn algebra_info_lists_basis() {
    let dir = TempDir::new().unwrap();
    let d2 = write(&dir, "d2.json", r#"{"vars": 2, "bounds": [2, 2], "products": [[1, 2]]}"#);
    let out = cli(&["algebra", "info", &d2]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(out.stdout.contains("dim 3"), "{}", out.stdout);
    assert!(out.stdout.contains("1, x1, x2"), "{}", out.stdout);
    assert!(out.stdout.contains("nilpotency index 2"), "{}", out.stdout);

    let second = write(&dir, "second.json", r#"{"vars": 1, "bounds": [3]}"#);
    let out = cli(&["algebra", "info", &second]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(out.stdout.contains("dim 3"), "{}", out.stdout);
    assert!(out.stdout.contains("1, x, x^2"), "{}", out.stdout);
}

#[test]
fn algebra_info_rejects_unbounded_presentations() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", r#"{"vars": 2, "products": [[1, 2]]}"#);
    assert_eq!(cli(&["algebra", "info", &bad]).code, EXIT_INPUT);
    let missing = dir.path().join("missing.json");
    assert_eq!(cli(&["algebra", "info", missing.to_str().unwrap()]).code, EXIT_INPUT);
}

#[test]
fn derivative_of_x_dy_is_one() {
    let dir = TempDir::new().unwrap();
    let form = write(&dir, "form.json", r#"{"dim": 2, "degree": 1, "components": {"2": ["x1"]}}"#);
    let cube = write(&dir, "cube.json", r#"{"base": [0, 0], "edges": [[1, 0], [0, 1]]}"#);
    let out = cli(&["d", &form, "--cube", &cube]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert_eq!(out.stdout, "1.0000000000000000e0\n");

    let full = cli(&["d", &form, "--cube", &cube, "--full"]);
    assert_eq!(full.code, EXIT_OK);
    assert!(full.stdout.starts_with("1.0000000000000000e0\n"));
    assert!(full.stdout.contains("d1*d2: 1.0000000000000000e0"), "{}", full.stdout);
    assert!(full.stdout.contains("residual 0.0000000000000000e0"), "{}", full.stdout);
}

#[test]
fn derivative_of_closed_form_vanishes() {
    let dir = TempDir::new().unwrap();
    let form = write(&dir, "form.json", r#"{"dim": 2, "degree": 1, "components": {"1": ["x2"], "2": ["x1"]}}"#);
    let cube = write(&dir, "cube.json", r#"{"base": [0.5, -1], "edges": [[1, 2], [3, -1]]}"#);
    let out = cli(&["d", &form, "--cube", &cube]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert_eq!(out.stdout.trim().parse::<f64>().unwrap(), 0.0);
}

#[test]
fn derivative_rejects_mismatched_cube() {
    let dir = TempDir::new().unwrap();
    let form = write(&dir, "form.json", r#"{"dim": 2, "degree": 1, "components": {"2": ["x1"]}}"#);
    let cube = write(&dir, "cube.json", r#"{"base": [0, 0], "edges": [[1, 0]]}"#);
    let out = cli(&["d", &form, "--cube", &cube]);
    assert_eq!(out.code, EXIT_INPUT);
    assert!(!out.stderr.is_empty());
}

#[test]
fn eval_gives_taylor_coefficients() {
    let dir = TempDir::new().unwrap();
    let alg = write(&dir, "alg.json", r#"{"vars": 1, "bounds": [3]}"#);
    let exprs = write(&dir, "f.txt", "x1^3\n");
    let point = write(&dir, "p.json", r#"[{"coeffs": {"0": 2, "1": 1}}]"#);
    let out = cli(&["eval", &exprs, "--algebra", &alg, "--point", &point]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let v: serde_json::Value = serde_json::from_str(out.stdout.trim()).unwrap();
    let coeff = |k: &str| v["coeffs"][k].as_f64();
    assert_eq!(coeff("0"), Some(8.0));
    assert_eq!(coeff("1"), Some(12.0));
    assert_eq!(coeff("2"), Some(6.0));
}

#[test]
fn verify_exit_codes() {
    let out = cli(&["verify", "--samples", "5", "--laws", "ring_laws,sign_identity"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert_eq!(out.stdout.lines().count(), 2);

    let strict = cli(&["verify", "--samples", "5", "--laws", "ring_laws", "--tolerance", "0"]);
    assert_eq!(strict.code, EXIT_VERIFY);

    assert_eq!(cli(&["verify", "--laws", "no_such_law"]).code, EXIT_INPUT);
    assert_eq!(cli(&["verify", "--samples", "0"]).code, EXIT_INPUT);
    assert_eq!(cli(&["verify", "--tolerance", "-1"]).code, EXIT_INPUT);
}

#[test]
fn verify_is_deterministic_and_writes_output() {
    let args = ["verify", "--seed", "7", "--samples", "10", "--laws", "exterior_derivative,dd_zero"];
    let first = cli(&args);
    assert_eq!(first, cli(&args));
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("report.jsonl");
    let mut with_output = args.to_vec();
    with_output.extend(["--output", path.to_str().unwrap()]);
    let out = cli(&with_output);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.is_empty());
    assert_eq!(fs::read_to_string(&path).unwrap(), first.stdout);
}

#[test]
fn help_exits_cleanly() {
    let out = cli(&["--help"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("verify"));
    assert_eq!(cli(&["frobnicate"]).code, EXIT_INPUT);
}
