//! Check verdicts, reports, and witnesses, plus their JSON/CSV renderings.

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::Real;

/// Outcome of a verification operation.
///
/// `Holds` is reserved for claims established exactly (finite chains,
/// symbolic certificates) or defined to hold at grid resolution by the
/// operation's contract; a continuous sweep that merely found no violation
/// reports `ConsistentAtResolution`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "holds")]
    Holds,
    #[serde(rename = "fails")]
    Fails,
    #[serde(rename = "consistent-at-resolution")]
    ConsistentAtResolution,
}

impl Verdict {
    /// True unless the check found a violation.
    pub fn passed(self) -> bool {
        !matches!(self, Verdict::Fails)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::ConsistentAtResolution => "consistent-at-resolution",
        }
    }
}

/// A sample point demonstrating a violation: `residual = |lhs − rhs| > tol`.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness<F: Real = f64> {
    pub point: Vec<F>,
    pub lhs: F,
    pub rhs: F,
    pub residual: F,
}

/// Result of one verification sweep.
///
/// `worst_point` always attains `max_residual`; ties are broken towards the
/// lexicographically smallest coordinates. `worst_lhs`/`worst_rhs` are the
/// two compared values at that point.
#[derive(Debug, Clone)]
pub struct CheckReport<F: Real = f64> {
    pub verdict: Verdict,
    pub max_residual: F,
    pub worst_point: Vec<F>,
    pub worst_lhs: F,
    pub worst_rhs: F,
    pub samples: usize,
    pub grid_n: usize,
    pub tol: F,
}

impl<F: Real> CheckReport<F> {
    /// Builds a report, deriving `fails` from `max_residual > tol` and using
    /// `pass` for the non-failing verdict.
    #[allow(clippy::too_many_arguments)]
    pub fn from_scan(
        pass: Verdict,
        max_residual: F,
        worst_point: Vec<F>,
        worst_lhs: F,
        worst_rhs: F,
        samples: usize,
        grid_n: usize,
        tol: F,
    ) -> Self {
        let verdict = if max_residual > tol { Verdict::Fails } else { pass };
        CheckReport {
            verdict,
            max_residual,
            worst_point,
            worst_lhs,
            worst_rhs,
            samples,
            grid_n,
            tol,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }

    /// The failing point, when there is one.
    pub fn witness(&self) -> Option<Witness<F>> {
        (self.verdict == Verdict::Fails).then(|| Witness {
            point: self.worst_point.clone(),
            lhs: self.worst_lhs,
            rhs: self.worst_rhs,
            residual: self.max_residual,
        })
    }
}

/// JSON shape of an equation/property check, matching the report schema
/// `{implication, equation, verdict, max_residual, worst_point, lhs, rhs,
/// grid_n, tol}`.
#[derive(Debug, Serialize)]
pub struct EquationReportJson {
    pub implication: String,
    pub equation: String,
    pub verdict: Verdict,
    pub max_residual: f64,
    pub worst_point: Vec<f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub samples: usize,
    pub grid_n: usize,
    pub tol: f64,
}

impl EquationReportJson {
    pub fn new<F: Real>(implication: &str, equation: &str, report: &CheckReport<F>) -> Self {
        EquationReportJson {
            implication: implication.to_string(),
            equation: equation.to_string(),
            verdict: report.verdict,
            max_residual: to_f64(report.max_residual),
            worst_point: report.worst_point.iter().map(|&c| to_f64(c)).collect(),
            lhs: to_f64(report.worst_lhs),
            rhs: to_f64(report.worst_rhs),
            samples: report.samples,
            grid_n: report.grid_n,
            tol: to_f64(report.tol),
        }
    }
}

pub(crate) fn to_f64<F: Real>(v: F) -> f64 {
    ToPrimitive::to_f64(&v).unwrap_or(f64::NAN)
}
