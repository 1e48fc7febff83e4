//! The fuzzy implication abstraction, the axiom checker, and the property
//! predicates (left neutrality, ordering, identity, exchange, and left
//! neutrality restricted to the range).
//!
//! An [`Implication`] is an immutable evaluator on `[0,1]²` plus provenance
//! describing how it was built. Nothing is assumed of the evaluator: the
//! boundary conditions and monotonicities are established by
//! [`check_axioms`], never by construction.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra;
use crate::connectives::{BinaryFn, Negation, TConorm, TNorm, UnitValue};
use crate::constructors::{FGenerator, GGenerator};
use crate::error::{FieqError, Result};
use crate::grid::{self, Fold};
use crate::report::{to_f64, CheckReport, Verdict};
use crate::{defaults, real, Real};

/// How an implication came to be.
#[derive(Clone)]
pub enum Provenance<F: Real = f64> {
    /// Registry entry or ad hoc evaluator.
    Named,
    /// Residuum of a t-norm.
    Residual(TNorm<F>),
    /// `S(N(x), y)`.
    SN(TConorm<F>, Negation<F>),
    /// `S(N(x), T(x,y))`.
    Ql(TNorm<F>, TConorm<F>, Negation<F>),
    /// `f⁻¹(x · f(y))` for a decreasing generator.
    FGenerated(FGenerator<F>),
    /// `g⁽⁻¹⁾(g(y)/x)` for an increasing generator.
    GGenerated(GGenerator<F>),
    /// `(I ▽ J)(x,y) = I(J(y,x), J(x,y))`.
    Nabla(Box<Implication<F>>, Box<Implication<F>>),
}

impl<F: Real> fmt::Debug for Provenance<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Named => write!(f, "Named"),
            Provenance::Residual(t) => write!(f, "Residual({})", t.name()),
            Provenance::SN(s, n) => write!(f, "SN({}, {})", s.name(), n.name()),
            Provenance::Ql(t, s, n) => write!(f, "Ql({}, {}, {})", t.name(), s.name(), n.name()),
            Provenance::FGenerated(g) => write!(f, "FGenerated({})", g.name()),
            Provenance::GGenerated(g) => write!(f, "GGenerated({})", g.name()),
            Provenance::Nabla(i, j) => write!(f, "Nabla({}, {})", i.name(), j.name()),
        }
    }
}

/// An evaluable map `[0,1]² → [0,1]` with a name and provenance.
#[derive(Clone)]
pub struct Implication<F: Real = f64> {
    name: String,
    eval: BinaryFn<F>,
    provenance: Provenance<F>,
    bisection_backed: bool,
}

impl<F: Real> fmt::Debug for Implication<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Implication")
            .field("name", &self.name)
            .field("provenance", &self.provenance)
            .finish()
    }
}

impl<F: Real> Implication<F> {
    /// Wraps a raw evaluator. It earns the name "implication" only once
    /// [`check_axioms`] says so.
    pub fn from_fn(
        name: impl Into<String>,
        eval: impl Fn(F, F) -> F + Send + Sync + 'static,
    ) -> Self {
        Implication {
            name: name.into(),
            eval: Arc::new(eval),
            provenance: Provenance::Named,
            bisection_backed: false,
        }
    }

    pub(crate) fn with_provenance(
        name: impl Into<String>,
        provenance: Provenance<F>,
        bisection_backed: bool,
        eval: BinaryFn<F>,
    ) -> Self {
        Implication { name: name.into(), eval, provenance, bisection_backed }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn provenance(&self) -> &Provenance<F> {
        &self.provenance
    }

    /// True when evaluation goes through an inner bisection loop, which
    /// widens the sensible residual tolerance to [`defaults::TOL_BISECTION`].
    pub fn bisection_backed(&self) -> bool {
        self.bisection_backed
    }

    /// Raw evaluation; callers are responsible for staying inside `[0,1]²`.
    pub fn eval(&self, x: F, y: F) -> F {
        (self.eval)(x, y)
    }

    /// Domain-checked evaluation.
    pub fn evaluate(&self, x: F, y: F) -> Result<UnitValue<F>> {
        let x = UnitValue::new(x)?;
        let y = UnitValue::new(y)?;
        UnitValue::new(self.eval(x.get(), y.get()))
    }
}

/// Identifiers of the built-in named implications.
pub const NAMED_IDS: [&str; 10] = ["LK", "GD", "RC", "KD", "GG", "RS", "WB", "YG", "FD", "DP"];

/// Looks up one of the classical named implications.
pub fn named<F: Real>(id: &str) -> Result<Implication<F>> {
    let make = |id: &str, eval: BinaryFn<F>| {
        Implication::with_provenance(format!("named:{id}"), Provenance::Named, false, eval)
    };
    match id {
        // Łukasiewicz: min(1, 1-x+y)
        "LK" => Ok(make(id, Arc::new(|x: F, y: F| (F::one() - x + y).min(F::one())))),
        // Gödel: 1 if x ≤ y, else y
        "GD" => Ok(make(id, Arc::new(|x: F, y: F| if x <= y { F::one() } else { y }))),
        // Reichenbach: 1-x+xy
        "RC" => Ok(make(id, Arc::new(|x: F, y: F| F::one() - x + x * y))),
        // Kleene-Dienes: max(1-x, y)
        "KD" => Ok(make(id, Arc::new(|x: F, y: F| (F::one() - x).max(y)))),
        // Goguen: 1 if x ≤ y, else y/x
        "GG" => Ok(make(id, Arc::new(|x: F, y: F| if x <= y { F::one() } else { y / x }))),
        // Rescher: 1 if x ≤ y, else 0
        "RS" => Ok(make(id, Arc::new(|x: F, y: F| if x <= y { F::one() } else { F::zero() }))),
        // Weber: 1 if x < 1, else y
        "WB" => Ok(make(id, Arc::new(|x: F, y: F| if x < F::one() { F::one() } else { y }))),
        // Yager: y^x, with 0^0 = 1
        "YG" => Ok(make(id, Arc::new(|x: F, y: F| y.powf(x)))),
        // Fodor: 1 if x ≤ y, else max(1-x, y)
        "FD" => Ok(make(
            id,
            Arc::new(|x: F, y: F| if x <= y { F::one() } else { (F::one() - x).max(y) }),
        )),
        // The drastic-sum form: y if x = 1, 1-x if y = 0, else 1
        "DP" => Ok(make(
            id,
            Arc::new(|x: F, y: F| {
                if x == F::one() {
                    y
                } else if y == F::zero() {
                    F::one() - x
                } else {
                    F::one()
                }
            }),
        )),
        _ => Err(FieqError::UnknownName { kind: "implication", name: id.to_string() }),
    }
}

/// All built-in named implications, in registry order.
pub fn registry<F: Real>() -> Vec<Implication<F>> {
    NAMED_IDS.iter().map(|id| named(id).unwrap()).collect()
}

/// Checks (I1) first-argument antitonicity, (I2) second-argument isotonicity
/// (both over adjacent grid pairs), and the (I3) corner values.
pub fn check_axioms<F: Real>(i: &Implication<F>, grid_n: usize, tol: F) -> Result<CheckReport<F>> {
    crate::connectives::validate_params(grid_n, tol)?;
    let g = grid::points::<F>(grid_n);
    let n1 = grid_n + 1;
    let mut fold = Fold::new();

    // (I3) corners.
    let corners = [
        (F::zero(), F::zero(), F::one()),
        (F::one(), F::one(), F::one()),
        (F::one(), F::zero(), F::zero()),
    ];
    let (r, idx) = grid::scan_max(corners.len(), |k| {
        let (x, y, want) = corners[k];
        (i.eval(x, y) - want).abs()
    });
    let (x, y, want) = corners[idx];
    fold.push(r, vec![x, y], i.eval(x, y), want, corners.len());

    // (I1): I(·,y) decreasing, so any increase across an adjacent pair is a
    // violation.
    let pair_len = grid_n * n1;
    let (r, idx) = grid::scan_max(pair_len, |idx| {
        let (a, j) = (idx / n1, idx % n1);
        (i.eval(g[a + 1], g[j]) - i.eval(g[a], g[j])).max(F::zero())
    });
    let (a, j) = (idx / n1, idx % n1);
    fold.push(r, vec![g[a], g[j]], i.eval(g[a], g[j]), i.eval(g[a + 1], g[j]), pair_len);

    // (I2): I(x,·) increasing.
    let (r, idx) = grid::scan_max(pair_len, |idx| {
        let (a, j) = (idx / grid_n, idx % grid_n);
        (i.eval(g[a], g[j]) - i.eval(g[a], g[j + 1])).max(F::zero())
    });
    let (a, j) = (idx / grid_n, idx % grid_n);
    fold.push(r, vec![g[a], g[j]], i.eval(g[a], g[j]), i.eval(g[a], g[j + 1]), pair_len);

    let samples = fold.samples;
    let (max_residual, point, lhs, rhs) = fold.finish();
    Ok(CheckReport::from_scan(Verdict::Holds, max_residual, point, lhs, rhs, samples, grid_n, tol))
}

/// Left neutrality: `I(1,y) = y` on the grid.
pub fn has_np<F: Real>(i: &Implication<F>, grid_n: usize, tol: F) -> Result<CheckReport<F>> {
    crate::connectives::validate_params(grid_n, tol)?;
    let g = grid::points::<F>(grid_n);
    let (r, idx) = grid::scan_max(grid_n + 1, |k| (i.eval(F::one(), g[k]) - g[k]).abs());
    Ok(CheckReport::from_scan(
        Verdict::Holds,
        r,
        vec![F::one(), g[idx]],
        i.eval(F::one(), g[idx]),
        g[idx],
        grid_n + 1,
        grid_n,
        tol,
    ))
}

/// Ordering property: `x ≤ y ⟺ I(x,y) = 1`, resolved float-safely as
/// `x ≤ y ⟹ I ≥ 1−tol` and `x > y ⟹ I < 1−tol`.
pub fn has_op<F: Real>(i: &Implication<F>, grid_n: usize, tol: F) -> Result<CheckReport<F>> {
    crate::connectives::validate_params(grid_n, tol)?;
    let g = grid::points::<F>(grid_n);
    let n1 = grid_n + 1;
    let two = real::<F>(2.0);
    let threshold = F::one() - tol;
    let (r, idx) = grid::scan_max(n1 * n1, |idx| {
        let (a, b) = grid::unravel2(idx, grid_n);
        let v = i.eval(g[a], g[b]);
        if g[a] <= g[b] {
            F::one() - v
        } else if v >= threshold {
            v - threshold + two * tol
        } else {
            F::zero()
        }
    });
    let (a, b) = grid::unravel2(idx, grid_n);
    let v = i.eval(g[a], g[b]);
    let want = if g[a] <= g[b] { F::one() } else { F::zero() };
    Ok(CheckReport::from_scan(
        Verdict::Holds,
        r,
        vec![g[a], g[b]],
        v,
        want,
        n1 * n1,
        grid_n,
        tol,
    ))
}

/// Identity principle: `I(x,x) = 1` on the grid.
pub fn has_ip<F: Real>(i: &Implication<F>, grid_n: usize, tol: F) -> Result<CheckReport<F>> {
    crate::connectives::validate_params(grid_n, tol)?;
    let g = grid::points::<F>(grid_n);
    let (r, idx) = grid::scan_max(grid_n + 1, |k| (i.eval(g[k], g[k]) - F::one()).abs());
    Ok(CheckReport::from_scan(
        Verdict::Holds,
        r,
        vec![g[idx], g[idx]],
        i.eval(g[idx], g[idx]),
        F::one(),
        grid_n + 1,
        grid_n,
        tol,
    ))
}

/// Exchange principle: `I(x, I(y,z)) = I(y, I(x,z))` swept over `G_n³`.
/// Callers normally pass the smaller three-variable grid.
pub fn has_ep<F: Real>(i: &Implication<F>, grid_n: usize, tol: F) -> Result<CheckReport<F>> {
    crate::connectives::validate_params(grid_n, tol)?;
    let g = grid::points::<F>(grid_n);
    let n1 = grid_n + 1;
    let (r, idx) = grid::scan_max(n1 * n1 * n1, |idx| {
        let (a, b, c) = grid::unravel3(idx, grid_n);
        (i.eval(g[a], i.eval(g[b], g[c])) - i.eval(g[b], i.eval(g[a], g[c]))).abs()
    });
    let (a, b, c) = grid::unravel3(idx, grid_n);
    Ok(CheckReport::from_scan(
        Verdict::Holds,
        r,
        vec![g[a], g[b], g[c]],
        i.eval(g[a], i.eval(g[b], g[c])),
        i.eval(g[b], i.eval(g[a], g[c])),
        n1 * n1 * n1,
        grid_n,
        tol,
    ))
}

/// Left neutrality restricted to the range: for every grid value
/// `α = I(x,y)`, checks `I(1,α) = α`. The range is sampled as the image of
/// the evaluation grid.
pub fn has_np_on_range<F: Real>(
    i: &Implication<F>,
    grid_n: usize,
    tol: F,
) -> Result<CheckReport<F>> {
    crate::connectives::validate_params(grid_n, tol)?;
    let g = grid::points::<F>(grid_n);
    let n1 = grid_n + 1;
    let (r, idx) = grid::scan_max(n1 * n1, |idx| {
        let (a, b) = grid::unravel2(idx, grid_n);
        let alpha = i.eval(g[a], g[b]);
        (i.eval(F::one(), alpha) - alpha).abs()
    });
    let (a, b) = grid::unravel2(idx, grid_n);
    let alpha = i.eval(g[a], g[b]);
    Ok(CheckReport::from_scan(
        Verdict::Holds,
        r,
        vec![g[a], g[b]],
        i.eval(F::one(), alpha),
        alpha,
        n1 * n1,
        grid_n,
        tol,
    ))
}

/// Every property check of one implication, bundled for reporting.
#[derive(Debug, Clone)]
pub struct PropertyProfile<F: Real = f64> {
    pub name: String,
    pub axioms: CheckReport<F>,
    pub np: CheckReport<F>,
    pub op: CheckReport<F>,
    pub ip: CheckReport<F>,
    pub ep: CheckReport<F>,
    pub np_on_range: CheckReport<F>,
    pub ie: CheckReport<F>,
}

/// Runs every property predicate plus the functional-equation check. The
/// three-variable exchange sweep is capped at [`defaults::GRID_3VAR`].
pub fn property_profile<F: Real>(
    i: &Implication<F>,
    grid_n: usize,
    tol: F,
) -> Result<PropertyProfile<F>> {
    Ok(PropertyProfile {
        name: i.name().to_string(),
        axioms: check_axioms(i, grid_n, tol)?,
        np: has_np(i, grid_n, tol)?,
        op: has_op(i, grid_n, tol)?,
        ip: has_ip(i, grid_n, tol)?,
        ep: has_ep(i, grid_n.min(defaults::GRID_3VAR), tol)?,
        np_on_range: has_np_on_range(i, grid_n, tol)?,
        ie: algebra::check_ie(i, grid_n, tol)?,
    })
}

#[derive(Debug, Serialize)]
pub struct AxiomsJson {
    pub verdict: Verdict,
    pub max_residual: f64,
    pub worst_point: Vec<f64>,
}

#[derive(Debug, Serialize)]
pub struct WitnessJson {
    pub property: String,
    pub point: Vec<f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

/// JSON shape of the property report:
/// `{name, axioms, np, op, ip, ep, np_on_range, ie, witnesses}`.
#[derive(Debug, Serialize)]
pub struct PropertyReportJson {
    pub name: String,
    pub axioms: AxiomsJson,
    pub np: Verdict,
    pub op: Verdict,
    pub ip: Verdict,
    pub ep: Verdict,
    pub np_on_range: Verdict,
    pub ie: Verdict,
    pub witnesses: Vec<WitnessJson>,
}

impl<F: Real> PropertyProfile<F> {
    pub fn to_json(&self) -> PropertyReportJson {
        let mut witnesses = Vec::new();
        let mut collect = |property: &str, report: &CheckReport<F>| {
            if let Some(w) = report.witness() {
                witnesses.push(WitnessJson {
                    property: property.to_string(),
                    point: w.point.iter().map(|&c| to_f64(c)).collect(),
                    lhs: to_f64(w.lhs),
                    rhs: to_f64(w.rhs),
                    residual: to_f64(w.residual),
                });
            }
        };
        collect("axioms", &self.axioms);
        collect("np", &self.np);
        collect("op", &self.op);
        collect("ip", &self.ip);
        collect("ep", &self.ep);
        collect("np-range", &self.np_on_range);
        collect("ie", &self.ie);
        PropertyReportJson {
            name: self.name.clone(),
            axioms: AxiomsJson {
                verdict: self.axioms.verdict,
                max_residual: to_f64(self.axioms.max_residual),
                worst_point: self.axioms.worst_point.iter().map(|&c| to_f64(c)).collect(),
            },
            np: self.np.verdict,
            op: self.op.verdict,
            ip: self.ip.verdict,
            ep: self.ep.verdict,
            np_on_range: self.np_on_range.verdict,
            ie: self.ie.verdict,
            witnesses,
        }
    }
}

#[cfg(test)]
pub(crate) fn half_rescher<F: Real>() -> Implication<F> {
    Implication::from_fn("half_rescher", |x: F, y: F| {
        if x <= y {
            F::one()
        } else {
            y * real::<F>(0.5)
        }
    })
}
