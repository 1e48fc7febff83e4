//! `fieq` — check fuzzy implications against the iterative functional
//! equation `I(I(y,x), I(x,y)) = I(x,y)`, run the per-theorem suite, and
//! enumerate implications on small finite chains exactly.
//!
//! Exit codes: 0 holds/consistent, 1 a check failed (witness printed),
//! 2 invalid input.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use fieq_core::algebra::{self, theorem_suite};
use fieq_core::defaults;
use fieq_core::expr::ImplicationExpr;
use fieq_core::finite_lattice;
use fieq_core::grid;
use fieq_core::implications::{self, Implication};
use fieq_core::report::EquationReportJson;
use fieq_core::{CheckReport, FieqError};

#[derive(Parser)]
#[command(name = "fieq", version, about = "Fuzzy implication functional-equation laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check one equation or property of an implication expression.
    Check {
        /// Implication expression, e.g. `named:LK`, `r(tnorm:product)`,
        /// `nabla(named:RC, named:RC)`.
        expr: String,
        #[arg(long = "eq", value_enum)]
        equation: Equation,
        /// Grid resolution (points are i/n for 0 ≤ i ≤ n).
        #[arg(long = "grid")]
        grid_n: Option<usize>,
        /// Residual tolerance; defaults to 1e-9, or 1e-6 once the expression
        /// contains a bisection-backed node.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Detect applicable theorems, predict the equation verdict, and compare
    /// against the observed sweep.
    Suite {
        expr: String,
        #[arg(long = "grid")]
        grid_n: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive enumeration on the finite chain L_n (n ≤ 3).
    Enumerate {
        n: usize,
        #[arg(long, value_enum)]
        what: What,
        /// Write the matrix lines here; the JSON summary always goes to
        /// stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Equation {
    Axioms,
    Ie,
    Np,
    Op,
    Ip,
    Ep,
    #[value(name = "np-range")]
    NpRange,
}

impl Equation {
    fn name(self) -> &'static str {
        match self {
            Equation::Axioms => "axioms",
            Equation::Ie => "ie",
            Equation::Np => "np",
            Equation::Op => "op",
            Equation::Ip => "ip",
            Equation::Ep => "ep",
            Equation::NpRange => "np-range",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum What {
    All,
    Idempotents,
    #[value(name = "op-theorem")]
    OpTheorem,
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("fieq: {err}");
            ExitCode::from(2)
        }
    }
}

fn run() -> Result<ExitCode, FieqError> {
    match Cli::parse().command {
        Command::Check { expr, equation, grid_n, tol, format, out } => {
            cmd_check(&expr, equation, grid_n, tol, format, out)
        }
        Command::Suite { expr, grid_n, tol, format, out } => {
            cmd_suite(&expr, grid_n, tol, format, out)
        }
        Command::Enumerate { n, what, out } => cmd_enumerate(n, what, out),
    }
}

fn build(expr: &str) -> Result<Implication<f64>, FieqError> {
    ImplicationExpr::parse(expr)?.build::<f64>()
}

fn pick_tol(i: &Implication<f64>, tol: Option<f64>) -> f64 {
    tol.unwrap_or(if i.bisection_backed() {
        defaults::TOL_BISECTION
    } else {
        defaults::TOL_CLOSED_FORM
    })
}

fn emit(out: Option<PathBuf>, content: &str) -> Result<(), FieqError> {
    match out {
        Some(path) => fs::write(path, content).map_err(FieqError::from),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn cmd_check(
    expr: &str,
    equation: Equation,
    grid_n: Option<usize>,
    tol: Option<f64>,
    format: Format,
    out: Option<PathBuf>,
) -> Result<ExitCode, FieqError> {
    let implication = build(expr)?;
    let grid_n = grid_n.unwrap_or(match equation {
        Equation::Ep => defaults::GRID_3VAR,
        _ => defaults::GRID_2VAR,
    });
    let tol = pick_tol(&implication, tol);

    if format == Format::Csv {
        if equation != Equation::Ie {
            return Err(FieqError::Parse(
                "csv output is the residual grid and is only available with --eq ie".into(),
            ));
        }
        let report = algebra::check_ie(&implication, grid_n, tol)?;
        emit(out, &ie_residual_csv(&implication, grid_n))?;
        eprintln!(
            "{}: {} (max residual {} at ({}, {}))",
            implication.name(),
            report.verdict.as_str(),
            report.max_residual,
            report.worst_point[0],
            report.worst_point[1]
        );
        return Ok(exit_for(report.passed()));
    }

    let report = match equation {
        Equation::Axioms => implications::check_axioms(&implication, grid_n, tol)?,
        Equation::Ie => algebra::check_ie(&implication, grid_n, tol)?,
        Equation::Np => implications::has_np(&implication, grid_n, tol)?,
        Equation::Op => implications::has_op(&implication, grid_n, tol)?,
        Equation::Ip => implications::has_ip(&implication, grid_n, tol)?,
        Equation::Ep => implications::has_ep(&implication, grid_n, tol)?,
        Equation::NpRange => implications::has_np_on_range(&implication, grid_n, tol)?,
    };

    let rendered = match format {
        Format::Json => {
            let mut s = serde_json::to_string(&EquationReportJson::new(
                implication.name(),
                equation.name(),
                &report,
            ))
            .expect("report serialization");
            s.push('\n');
            s
        }
        Format::Text => check_text(implication.name(), equation.name(), &report),
        Format::Csv => unreachable!(),
    };
    emit(out, &rendered)?;
    Ok(exit_for(report.passed()))
}

fn exit_for(passed: bool) -> ExitCode {
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn check_text(name: &str, equation: &str, report: &CheckReport<f64>) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "implication: {name}");
    let _ = writeln!(s, "equation: {equation}");
    let _ = writeln!(s, "verdict: {}", report.verdict.as_str());
    let _ = writeln!(s, "max_residual: {}", report.max_residual);
    let point: Vec<String> = report.worst_point.iter().map(|c| c.to_string()).collect();
    let _ = writeln!(s, "worst_point: ({})", point.join(", "));
    let _ = writeln!(s, "lhs: {}", report.worst_lhs);
    let _ = writeln!(s, "rhs: {}", report.worst_rhs);
    let _ = writeln!(s, "samples: {}", report.samples);
    let _ = writeln!(s, "grid_n: {}", report.grid_n);
    let _ = writeln!(s, "tol: {}", report.tol);
    if let Some(w) = report.witness() {
        let point: Vec<String> = w.point.iter().map(|c| c.to_string()).collect();
        let _ = writeln!(
            s,
            "witness: point ({}) lhs {} rhs {} residual {}",
            point.join(", "),
            w.lhs,
            w.rhs,
            w.residual
        );
    }
    s
}

/// Residual grid, row-major over `G_n²`: header plus `(n+1)²` data rows.
fn ie_residual_csv(i: &Implication<f64>, grid_n: usize) -> String {
    let g: Vec<f64> = grid::points(grid_n);
    let mut s = String::with_capacity((grid_n + 1) * (grid_n + 1) * 24);
    s.push_str("x,y,residual\n");
    for &x in &g {
        for &y in &g {
            let (r, _, _) = algebra::ie_residual(i, x, y);
            let _ = writeln!(s, "{x},{y},{r}");
        }
    }
    s
}

fn cmd_suite(
    expr: &str,
    grid_n: Option<usize>,
    tol: Option<f64>,
    format: Format,
    out: Option<PathBuf>,
) -> Result<ExitCode, FieqError> {
    if format == Format::Csv {
        return Err(FieqError::Parse("suite output is text or json".into()));
    }
    let implication = build(expr)?;
    let grid_n = grid_n.unwrap_or(defaults::GRID_2VAR);
    let tol = pick_tol(&implication, tol);
    let report = theorem_suite(&implication, grid_n, tol)?;

    let rendered = match format {
        Format::Json => {
            let mut s = serde_json::to_string(&report.to_json()).expect("suite serialization");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "implication: {}", report.implication);
            let _ = writeln!(s, "grid_n: {} tol: {}", report.grid_n, report.tol);
            let p = &report.profile;
            let _ = writeln!(
                s,
                "properties: axioms={} np={} op={} ip={} ep={} np-range={} ie={}",
                p.axioms.verdict.as_str(),
                p.np.verdict.as_str(),
                p.op.verdict.as_str(),
                p.ip.verdict.as_str(),
                p.ep.verdict.as_str(),
                p.np_on_range.verdict.as_str(),
                p.ie.verdict.as_str()
            );
            if report.no_theorem_applies() {
                let _ = writeln!(s, "no theorem applies");
            }
            for c in &report.checks {
                let _ = writeln!(
                    s,
                    "theorem {}: {} -> predicted {}, observed {}: {}",
                    c.theorem,
                    c.hypothesis,
                    match c.predicted {
                        algebra::IePrediction::Satisfies => "satisfies-ie",
                        algebra::IePrediction::Violates => "violates-ie",
                    },
                    c.observed.as_str(),
                    if c.consistent { "CONSISTENT" } else { "INCONSISTENT" }
                );
            }
            let _ = writeln!(
                s,
                "overall: {}",
                if report.consistent() { "CONSISTENT" } else { "INCONSISTENT" }
            );
            s
        }
        Format::Csv => unreachable!(),
    };
    emit(out, &rendered)?;
    Ok(exit_for(report.consistent()))
}

fn cmd_enumerate(n: usize, what: What, out: Option<PathBuf>) -> Result<ExitCode, FieqError> {
    match what {
        What::All | What::Idempotents => {
            let list = match what {
                What::All => finite_lattice::enumerate_implications(n)?,
                _ => finite_lattice::idempotents(n)?,
            };
            let mut lines = String::new();
            for a in &list {
                let _ = writeln!(lines, "{}", a.digits());
            }
            let summary = finite_lattice::summary(n)?;
            let summary_json =
                serde_json::to_string(&summary).expect("summary serialization");
            match out {
                Some(path) => {
                    fs::write(path, lines)?;
                    println!("{summary_json}");
                }
                None => {
                    print!("{lines}");
                    println!("{summary_json}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        What::OpTheorem => {
            let report = finite_lattice::verify_op_np_theorem(n)?;
            let rendered = format!(
                "{{\"n\":{},\"verdict\":\"{}\",\"op_implications_checked\":{}}}\n",
                n,
                report.verdict.as_str(),
                report.samples
            );
            emit(out, &rendered)?;
            Ok(exit_for(report.passed()))
        }
    }
}
