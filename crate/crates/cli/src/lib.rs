//! Command-line front end for the `microforms` kernel.
//!
//! [`run`] does all the work and returns the exit code together with what
//! would be written to standard output and standard error, so the binary is
//! a thin wrapper and tests can drive commands in-process.
//!
//! Exit codes: 0 success, 1 verification failure, 2 bad input, 3 a failed
//! homogeneity check while computing a derivative.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use microforms::expr::parse_expression;
use microforms::forms::{classical_to_microcube, derivative_report, ClassicalForm, FormError, Microcube};
use microforms::oracle::{law_names, run_suite};
use microforms::prolongation::{prolong_map, WeilPoint};
use microforms::weil::{exponent_key, ElementDoc, InfinitesimalPresentation, WeilAlgebra, WeilElement};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_HOMOGENEITY: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "microforms", version, about = "Weil-algebra arithmetic and microcube differential forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Inspect a Weil algebra given by a presentation document
    Algebra {
        #[command(subcommand)]
        action: AlgebraAction,
    },
    /// Evaluate expressions (one per line) at a point with Weil-algebra coordinates
    Eval {
        exprs: PathBuf,
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        point: PathBuf,
    },
    /// Exterior derivative of a form at a microcube
    D {
        form: PathBuf,
        #[arg(long)]
        cube: PathBuf,
        /// Also print the boundary sum and its homogeneity residual
        #[arg(long)]
        full: bool,
    },
    /// Run the randomized law checks, one JSON line per law
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = 1e-8)]
        tolerance: f64,
        /// Comma-separated law names; all laws when omitted
        #[arg(long, value_delimiter = ',')]
        laws: Option<Vec<String>>,
        /// Write the report here instead of standard output
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum AlgebraAction {
    /// Dimension, ordered basis and nilpotency index
    Info { file: PathBuf },
}

/// Result of one invocation.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(code: i32, message: impl std::fmt::Display) -> Self {
        Self { code, stdout: String::new(), stderr: format!("error: {message}\n") }
    }
}

/// Runs the command line `args` (program name first).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: text }
            } else {
                Outcome::ok(text)
            };
        }
    };
    match cli.command {
        Command::Algebra { action: AlgebraAction::Info { file } } => algebra_info(&file),
        Command::Eval { exprs, algebra, point } => eval(&exprs, &algebra, &point),
        Command::D { form, cube, full } => derivative(&form, &cube, full),
        Command::Verify { seed, samples, tolerance, laws, output } => {
            verify(seed, samples as usize, tolerance, laws, output.as_deref())
        }
    }
}

fn read(path: &Path) -> Result<String, Outcome> {
    fs::read_to_string(path).map_err(|e| Outcome::fail(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn input_error(path: &Path, e: impl std::fmt::Display) -> Outcome {
    Outcome::fail(EXIT_INPUT, format!("{}: {e}", path.display()))
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn algebra_info(file: &Path) -> Outcome {
    let run = || -> Result<Outcome, Outcome> {
        let pres = InfinitesimalPresentation::from_json(&read(file)?).map_err(|e| input_error(file, e))?;
        let alg = WeilAlgebra::shared(&pres);
        Ok(Outcome::ok(format!("{alg}\nnilpotency index {}\n", alg.nilpotency_index())))
    };
    run().unwrap_or_else(|e| e)
}

/// A coordinate is a number (a constant) or an element document.
#[derive(serde::Deserialize)]
#[serde(untagged)]
enum Coordinate {
    Constant(f64),
    Element(ElementDoc),
}

fn element_line(e: &WeilElement) -> String {
    let terms: Vec<String> = e
        .algebra()
        .basis()
        .iter()
        .zip(e.coeffs())
        .filter(|(_, &c)| c != 0.0)
        .map(|(m, &c)| format!("\"{}\":{}", exponent_key(m), num(c)))
        .collect();
    format!("{{\"coeffs\":{{{}}}}}", terms.join(","))
}

fn eval(exprs: &Path, algebra: &Path, point: &Path) -> Outcome {
    let run = || -> Result<Outcome, Outcome> {
        let pres = InfinitesimalPresentation::from_json(&read(algebra)?).map_err(|e| input_error(algebra, e))?;
        let alg = WeilAlgebra::shared(&pres);
        let coords: Vec<Coordinate> = serde_json::from_str(&read(point)?).map_err(|e| input_error(point, e))?;
        let coords = coords
            .iter()
            .map(|c| match c {
                Coordinate::Constant(v) => Ok(WeilElement::constant(&alg, *v)),
                Coordinate::Element(doc) => WeilElement::from_doc(&alg, doc),
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| input_error(point, e))?;
        let p = WeilPoint::new(&alg, coords).map_err(|e| input_error(point, e))?;
        let text = read(exprs)?;
        let fs = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(parse_expression)
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| input_error(exprs, e))?;
        let values = prolong_map(&fs, &p).map_err(|e| input_error(exprs, e))?;
        let mut out = String::new();
        for c in values.coords() {
            writeln!(out, "{}", element_line(c)).expect("write to string");
        }
        Ok(Outcome::ok(out))
    };
    run().unwrap_or_else(|e| e)
}

fn derivative(form: &Path, cube: &Path, full: bool) -> Outcome {
    let run = || -> Result<Outcome, Outcome> {
        let omega = ClassicalForm::from_json(&read(form)?).map_err(|e| input_error(form, e))?;
        let gamma = Microcube::from_json(&read(cube)?).map_err(|e| input_error(cube, e))?;
        let report = match derivative_report(&classical_to_microcube(&omega), &gamma) {
            Ok(r) => r,
            Err(e @ FormError::NotHomogeneous { .. }) => return Err(Outcome::fail(EXIT_HOMOGENEITY, e)),
            Err(e) => return Err(Outcome::fail(EXIT_INPUT, e)),
        };
        let values: Vec<String> = report.value.iter().map(|c| num(c.augmentation())).collect();
        let mut out = format!("{}\n", values.join(" "));
        if full {
            let sum = report.face_sum.real_coeffs().expect("real cube");
            let rows: BTreeMap<String, &Vec<f64>> = sum
                .iter()
                .enumerate()
                .map(|(mask, v)| (monomial(mask, gamma.degree()), v))
                .collect();
            for (name, v) in rows {
                let v: Vec<String> = v.iter().map(|&c| num(c)).collect();
                writeln!(out, "{name}: {}", v.join(" ")).expect("write to string");
            }
            writeln!(out, "residual {}", num(report.residual)).expect("write to string");
        }
        Ok(Outcome::ok(out))
    };
    run().unwrap_or_else(|e| e)
}

fn monomial(mask: usize, n: usize) -> String {
    let vars: Vec<String> = (0..n).filter(|k| mask >> k & 1 == 1).map(|k| format!("d{}", k + 1)).collect();
    if vars.is_empty() { "1".to_string() } else { vars.join("*") }
}

fn verify(seed: u64, samples: usize, tolerance: f64, laws: Option<Vec<String>>, output: Option<&Path>) -> Outcome {
    if !(tolerance >= 0.0) {
        return Outcome::fail(EXIT_INPUT, format!("tolerance must be a nonnegative number, got {tolerance}"));
    }
    let names: Vec<String> = match laws {
        Some(l) => l.into_iter().map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
        None => law_names().into_iter().map(str::to_string).collect(),
    };
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let reports = match run_suite(&refs, seed, samples, tolerance) {
        Ok(r) => r,
        Err(e) => return Outcome::fail(EXIT_INPUT, format!("{e}; known laws: {}", law_names().join(", "))),
    };
    let mut text = String::new();
    for r in &reports {
        writeln!(text, "{}", r.to_json_line()).expect("write to string");
    }
    let code = if reports.iter().all(|r| r.pass) { EXIT_OK } else { EXIT_VERIFY };
    match output {
        Some(path) => match fs::write(path, &text) {
            Ok(()) => Outcome { code, ..Outcome::default() },
            Err(e) => Outcome::fail(EXIT_INPUT, format!("{}: {e}", path.display())),
        },
        None => Outcome { code, stdout: text, stderr: String::new() },
    }
}
