//! The `▽` composition, the functional-equation residual check, refinement
//! counterexample search, semigroup spot-checks, and the per-theorem
//! verification suite.
//!
//! The equation under study is `I(I(y,x), I(x,y)) = I(x,y)`; an implication
//! satisfies it exactly when it is idempotent for `▽`.

use serde::Serialize;

use crate::connectives::satisfies_lem;
use crate::constructors::GGenerator;
use crate::error::{FieqError, Result};
use crate::grid;
use crate::implications::{
    check_axioms, has_ip, has_np_on_range, has_op, property_profile, Implication,
    PropertyProfile, PropertyReportJson, Provenance,
};
use crate::report::{to_f64, CheckReport, Verdict, Witness};
use crate::{defaults, real, Real};

/// Composes `(I ▽ J)(x,y) = I(J(y,x), J(x,y))` after checking that both
/// operands pass the implication axioms.
pub fn nabla<F: Real>(i: &Implication<F>, j: &Implication<F>) -> Result<Implication<F>> {
    for operand in [i, j] {
        let tol = operand_tol(operand);
        let report = check_axioms(operand, defaults::GRID_2VAR, tol)?;
        if !report.passed() {
            return Err(FieqError::Construction {
                what: format!("nabla operand `{}`", operand.name()),
                detail: format!(
                    "axioms fail with residual {} at {:?}",
                    report.max_residual, report.worst_point
                ),
            });
        }
    }
    Ok(compose_nabla(i, j))
}

fn operand_tol<F: Real>(i: &Implication<F>) -> F {
    if i.bisection_backed() {
        real::<F>(defaults::TOL_BISECTION)
    } else {
        real::<F>(defaults::TOL_CLOSED_FORM)
    }
}

pub(crate) fn compose_nabla<F: Real>(i: &Implication<F>, j: &Implication<F>) -> Implication<F> {
    let name = format!("nabla({},{})", i.name(), j.name());
    let provenance = Provenance::Nabla(Box::new(i.clone()), Box::new(j.clone()));
    let bisection = i.bisection_backed() || j.bisection_backed();
    let (i2, j2) = (i.clone(), j.clone());
    Implication::with_provenance(
        name,
        provenance,
        bisection,
        std::sync::Arc::new(move |x: F, y: F| i2.eval(j2.eval(y, x), j2.eval(x, y))),
    )
}

/// Residual of the equation at one point: `(|lhs − rhs|, lhs, rhs)` with
/// `lhs = I(I(y,x), I(x,y))` and `rhs = I(x,y)`.
pub fn ie_residual<F: Real>(i: &Implication<F>, x: F, y: F) -> (F, F, F) {
    let rhs = i.eval(x, y);
    let lhs = i.eval(i.eval(y, x), rhs);
    ((lhs - rhs).abs(), lhs, rhs)
}

/// Sweeps the residual of `I(I(y,x), I(x,y)) = I(x,y)` over `G_n²`.
///
/// A clean sweep reports `ConsistentAtResolution` — a grid cannot prove the
/// equation on the continuum; `Holds` belongs to the exact finite-chain
/// checks.
pub fn check_ie<F: Real>(i: &Implication<F>, grid_n: usize, tol: F) -> Result<CheckReport<F>> {
    crate::connectives::validate_params(grid_n, tol)?;
    let g = grid::points::<F>(grid_n);
    let n1 = grid_n + 1;
    let (r, idx) = grid::scan_max(n1 * n1, |idx| {
        let (a, b) = grid::unravel2(idx, grid_n);
        ie_residual(i, g[a], g[b]).0
    });
    let (a, b) = grid::unravel2(idx, grid_n);
    let (_, lhs, rhs) = ie_residual(i, g[a], g[b]);
    Ok(CheckReport::from_scan(
        Verdict::ConsistentAtResolution,
        r,
        vec![g[a], g[b]],
        lhs,
        rhs,
        n1 * n1,
        grid_n,
        tol,
    ))
}

/// Hunts for a functional-equation violation: a coarse scan followed by
/// `refine_depth` rounds of local mesh halving in a shrinking window around
/// the incumbent. Returns the best witness when its residual exceeds `tol`.
pub fn find_counterexample<F: Real>(
    i: &Implication<F>,
    coarse_n: usize,
    refine_depth: usize,
    tol: F,
) -> Result<Option<Witness<F>>> {
    crate::connectives::validate_params(coarse_n, tol)?;
    let g = grid::points::<F>(coarse_n);
    let n1 = coarse_n + 1;
    let (mut best, idx) = grid::scan_max(n1 * n1, |idx| {
        let (a, b) = grid::unravel2(idx, coarse_n);
        ie_residual(i, g[a], g[b]).0
    });
    let (a, b) = grid::unravel2(idx, coarse_n);
    let (mut cx, mut cy) = (g[a], g[b]);

    let local = 16usize;
    let mut w = F::one() / F::from_usize(coarse_n).unwrap();
    for _ in 0..refine_depth {
        let lo_x = (cx - w).max(F::zero());
        let hi_x = (cx + w).min(F::one());
        let lo_y = (cy - w).max(F::zero());
        let hi_y = (cy + w).min(F::one());
        let step = F::from_usize(local).unwrap();
        let point = |k: usize, lo: F, hi: F| lo + (hi - lo) * F::from_usize(k).unwrap() / step;
        let m1 = local + 1;
        let (r, idx) = grid::scan_max(m1 * m1, |idx| {
            let (p, q) = (idx / m1, idx % m1);
            ie_residual(i, point(p, lo_x, hi_x), point(q, lo_y, hi_y)).0
        });
        if r > best {
            best = r;
            let (p, q) = (idx / m1, idx % m1);
            cx = point(p, lo_x, hi_x);
            cy = point(q, lo_y, hi_y);
        }
        w = w * real::<F>(0.5);
    }

    if best > tol {
        let (residual, lhs, rhs) = ie_residual(i, cx, cy);
        Ok(Some(Witness { point: vec![cx, cy], lhs, rhs, residual }))
    } else {
        Ok(None)
    }
}

/// Closure spot-check: the composition of two implications must again pass
/// the implication axioms.
pub fn check_nabla_closure<F: Real>(
    i: &Implication<F>,
    j: &Implication<F>,
    grid_n: usize,
    tol: F,
) -> Result<CheckReport<F>> {
    check_axioms(&compose_nabla(i, j), grid_n, tol)
}

/// Associativity spot-check: `(I▽J)▽K` against `I▽(J▽K)` on `G_n²`.
pub fn check_associativity<F: Real>(
    i: &Implication<F>,
    j: &Implication<F>,
    k: &Implication<F>,
    grid_n: usize,
    tol: F,
) -> Result<CheckReport<F>> {
    crate::connectives::validate_params(grid_n, tol)?;
    let left = compose_nabla(&compose_nabla(i, j), k);
    let right = compose_nabla(i, &compose_nabla(j, k));
    let g = grid::points::<F>(grid_n);
    let n1 = grid_n + 1;
    let (r, idx) = grid::scan_max(n1 * n1, |idx| {
        let (a, b) = grid::unravel2(idx, grid_n);
        (left.eval(g[a], g[b]) - right.eval(g[a], g[b])).abs()
    });
    let (a, b) = grid::unravel2(idx, grid_n);
    Ok(CheckReport::from_scan(
        Verdict::ConsistentAtResolution,
        r,
        vec![g[a], g[b]],
        left.eval(g[a], g[b]),
        right.eval(g[a], g[b]),
        n1 * n1,
        grid_n,
        tol,
    ))
}

/// Predicted outcome of the functional-equation check under a theorem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IePrediction {
    #[serde(rename = "satisfies-ie")]
    Satisfies,
    #[serde(rename = "violates-ie")]
    Violates,
}

/// One applicable theorem: its hypothesis, prediction, and the observation.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremCheck {
    pub theorem: &'static str,
    pub hypothesis: String,
    pub predicted: IePrediction,
    pub observed: Verdict,
    pub consistent: bool,
}

/// Predicted-vs-observed report across every theorem whose hypotheses the
/// implication satisfies.
#[derive(Debug, Clone)]
pub struct TheoremSuiteReport<F: Real = f64> {
    pub implication: String,
    pub grid_n: usize,
    pub tol: F,
    pub profile: PropertyProfile<F>,
    pub checks: Vec<TheoremCheck>,
}

impl<F: Real> TheoremSuiteReport<F> {
    /// True when every applicable prediction matches the observation
    /// (vacuously true when no theorem applies).
    pub fn consistent(&self) -> bool {
        self.checks.iter().all(|c| c.consistent)
    }

    pub fn no_theorem_applies(&self) -> bool {
        self.checks.is_empty()
    }

    pub fn to_json(&self) -> SuiteReportJson {
        SuiteReportJson {
            implication: self.implication.clone(),
            grid_n: self.grid_n,
            tol: to_f64(self.tol),
            properties: self.profile.to_json(),
            theorems: self.checks.clone(),
            consistent: self.consistent(),
            no_theorem_applies: self.no_theorem_applies(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SuiteReportJson {
    pub implication: String,
    pub grid_n: usize,
    pub tol: f64,
    pub properties: PropertyReportJson,
    pub theorems: Vec<TheoremCheck>,
    pub consistent: bool,
    pub no_theorem_applies: bool,
}

fn is_linear_generator<F: Real>(g: &GGenerator<F>, grid_n: usize, tol: F) -> bool {
    let g_one = g.g_one();
    if g_one.is_infinite() {
        return false;
    }
    let pts = grid::points::<F>(grid_n);
    let scale = tol * (F::one() + g_one);
    pts.iter().all(|&x| (g.eval(x) - g_one * x).abs() <= scale)
}

/// Detects which theorems apply to `i` (from provenance plus property
/// predicates), predicts the equation verdict each implies, runs the
/// residual check, and reports predictions against observations.
pub fn theorem_suite<F: Real>(
    i: &Implication<F>,
    grid_n: usize,
    tol: F,
) -> Result<TheoremSuiteReport<F>> {
    let profile = property_profile(i, grid_n, tol)?;
    let observed = profile.ie.verdict;
    let mut checks = Vec::new();
    let mut push = |theorem: &'static str, hypothesis: String, predicted: IePrediction| {
        let consistent = match predicted {
            IePrediction::Satisfies => observed.passed(),
            IePrediction::Violates => !observed.passed(),
        };
        checks.push(TheoremCheck { theorem, hypothesis, predicted, observed, consistent });
    };

    // Ordering property makes the equation equivalent to left neutrality on
    // the range, whichever way that falls.
    if has_op(i, grid_n, tol)?.passed() {
        let np_range = has_np_on_range(i, grid_n, tol)?.passed();
        push(
            "op-ie-iff-np-on-range",
            format!(
                "ordering property holds and left neutrality on the range {}",
                if np_range { "holds" } else { "fails" }
            ),
            if np_range { IePrediction::Satisfies } else { IePrediction::Violates },
        );
    }

    match i.provenance() {
        Provenance::Named | Provenance::Nabla(_, _) => {}
        Provenance::Residual(t) => {
            push(
                "residual-family-satisfies-ie",
                format!("residuum of t-norm `{}`", t.name()),
                IePrediction::Satisfies,
            );
        }
        Provenance::SN(s, n) => {
            if s.name() == "max" {
                push(
                    "sn-max-satisfies-ie",
                    "t-conorm is max".to_string(),
                    IePrediction::Satisfies,
                );
            }
            if s.name() == "drastic" {
                push(
                    "sn-drastic-satisfies-ie",
                    "t-conorm is the drastic sum".to_string(),
                    IePrediction::Satisfies,
                );
            }
            if satisfies_lem(s, n, grid_n, tol)?.passed() {
                push(
                    "sn-lem-satisfies-ie",
                    format!("pair ({}, {}) satisfies the excluded middle", s.name(), n.name()),
                    IePrediction::Satisfies,
                );
            }
        }
        Provenance::Ql(t, s, n) => {
            if profile.axioms.passed() {
                if s.flags.positive {
                    push(
                        "ql-positive-tconorm-satisfies-ie",
                        format!("QL-implication from positive t-conorm `{}`", s.name()),
                        IePrediction::Satisfies,
                    );
                }
                if t.name() == "min" && satisfies_lem(s, n, grid_n, tol)?.passed() {
                    push(
                        "ql-min-satisfies-ie",
                        "QL-implication with minimum t-norm".to_string(),
                        IePrediction::Satisfies,
                    );
                }
                if s.name() == "drastic" && n.flags.non_vanishing && t.flags.positive {
                    push(
                        "ql-drastic-positive-tnorm-satisfies-ie",
                        format!(
                            "drastic sum, non-vanishing `{}`, positive t-norm `{}`",
                            n.name(),
                            t.name()
                        ),
                        IePrediction::Satisfies,
                    );
                }
                if has_ip(i, grid_n, tol)?.passed() {
                    push(
                        "ql-ip-satisfies-ie",
                        "QL-implication with the identity principle".to_string(),
                        IePrediction::Satisfies,
                    );
                }
            }
        }
        Provenance::FGenerated(f) => {
            push(
                "f-family-violates-ie",
                format!("f-generated from `{}`", f.name()),
                IePrediction::Violates,
            );
        }
        Provenance::GGenerated(g) => {
            if has_ip(i, grid_n, tol)?.passed() {
                push(
                    "g-ip-satisfies-ie",
                    format!("g-generated from `{}` with the identity principle", g.name()),
                    IePrediction::Satisfies,
                );
            }
            let linear = is_linear_generator(g, grid_n, tol);
            push(
                "g-linear-iff-ie",
                format!(
                    "g-generated from `{}`, which is {}",
                    g.name(),
                    if linear { "linear" } else { "not linear" }
                ),
                if linear { IePrediction::Satisfies } else { IePrediction::Violates },
            );
        }
    }

    Ok(TheoremSuiteReport {
        implication: i.name().to_string(),
        grid_n,
        tol,
        profile,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectives::{Negation, TConorm, TNorm};
    use crate::constructors::{f_implication, g_implication, r_implication, FGenerator};
    use crate::implications::named;

    const TOL: f64 = 1e-9;

    fn imp(id: &str) -> Implication<f64> {
        named(id).unwrap()
    }

    #[test]
    fn nabla_examples() {
        let rc = imp("RC");
        let composed = nabla(&rc, &rc).unwrap();
        assert_eq!(composed.eval(0.5, 0.5), 0.8125);
        assert_eq!(rc.eval(0.75, 0.75), 0.8125);

        let lk = imp("LK");
        let sq = nabla(&lk, &lk).unwrap();
        let g: Vec<f64> = grid::points(64);
        for &x in &g {
            for &y in &g {
                assert_eq!(sq.eval(x, y), lk.eval(x, y), "({x},{y})");
            }
        }

        for (a, b) in [("RC", "GD"), ("RS", "WB"), ("KD", "YG")] {
            let composed = nabla(&imp(a), &imp(b)).unwrap();
            assert_eq!(composed.eval(1.0, 0.0), 0.0);
        }
    }

    #[test]
    fn nabla_rejects_non_implication() {
        let junk = Implication::from_fn("xy", |x: f64, y: f64| x * y);
        assert!(nabla(&junk, &imp("LK")).is_err());
        assert!(nabla(&imp("LK"), &junk).is_err());
    }

    #[test]
    fn ie_examples() {
        let report = check_ie(&imp("LK"), 128, TOL).unwrap();
        assert_eq!(report.verdict, Verdict::ConsistentAtResolution);
        assert_eq!(report.max_residual, 0.0);

        let report = check_ie(&imp("RC"), 128, TOL).unwrap();
        assert_eq!(report.verdict, Verdict::Fails);
        assert_eq!(report.worst_point, vec![0.5, 0.5]);
        assert_eq!(report.worst_lhs, 0.8125);
        assert_eq!(report.worst_rhs, 0.75);
        assert_eq!(report.max_residual, 0.0625);

        let report = check_ie(&imp("YG"), 128, TOL).unwrap();
        assert_eq!(report.verdict, Verdict::Fails);
        // lhs = (√.5)^(√.5) = exp(√.5 · ln(√.5)); rhs = √.5.
        let expected = (0.5f64.sqrt() * 0.5f64.sqrt().ln()).exp() - 0.5f64.sqrt();
        let (r, _, _) = super::ie_residual(&imp("YG"), 0.5, 0.5);
        assert!((r - expected.abs()).abs() < 1e-12);
        assert!(report.max_residual >= r);
    }

    // The composition with itself and the equation's left side are the same
    // expression; their evaluations must agree bit for bit.
    #[test]
    fn nabla_square_is_ie_lhs_bitwise() {
        let g: Vec<f64> = grid::points(64);
        for id in ["RC", "LK", "YG", "GD"] {
            let i = imp(id);
            let sq = compose_nabla(&i, &i);
            for &x in &g {
                for &y in &g {
                    let (_, lhs, _) = super::ie_residual(&i, x, y);
                    assert_eq!(sq.eval(x, y).to_bits(), lhs.to_bits(), "{id} ({x},{y})");
                }
            }
        }
    }

    #[test]
    fn counterexample_search() {
        let neglog = FGenerator::<f64>::builtin("neglog").unwrap();
        let yager = f_implication(&neglog).unwrap();
        let w = find_counterexample(&yager, 16, 5, 1e-3).unwrap().unwrap();
        assert!(w.residual >= 0.05, "residual {}", w.residual);

        let pow2 = crate::constructors::GGenerator::<f64>::builtin("pow2").unwrap();
        let i = g_implication(&pow2).unwrap();
        let w = find_counterexample(&i, 16, 5, 1e-3).unwrap().unwrap();
        assert!(w.residual >= 0.1, "residual {}", w.residual);
        // I(.5,.5) = .5/√.5 = √.5 and the square root climbs once more:
        // lhs = (√.5)^(1/2) = 0.5^0.25.
        let (r, lhs, rhs) = super::ie_residual(&i, 0.5, 0.5);
        assert!((lhs - 0.5f64.powf(0.25)).abs() < 1e-12);
        assert!((rhs - 0.5f64.sqrt()).abs() < 1e-12);
        assert!((r - 0.1338).abs() < 1e-4);

        let gg = imp("GG");
        assert!(find_counterexample(&gg, 16, 5, 1e-3).unwrap().is_none());
    }

    #[test]
    fn closure_spot_checks() {
        for (a, b) in [("LK", "KD"), ("RC", "GD"), ("RS", "RS")] {
            let report = check_nabla_closure(&imp(a), &imp(b), 64, TOL).unwrap();
            assert!(report.passed(), "({a},{b}): {report:?}");
        }
    }

    #[test]
    fn associativity_is_exact_for_samples() {
        for (a, b, c) in [("LK", "KD", "GD"), ("RC", "RC", "RC"), ("RS", "WB", "GG")] {
            let report = check_associativity(&imp(a), &imp(b), &imp(c), 64, TOL).unwrap();
            assert!(report.passed(), "({a},{b},{c})");
            assert_eq!(report.max_residual, 0.0, "({a},{b},{c})");
        }
    }

    #[test]
    fn suite_r_implication() {
        let product = TNorm::<f64>::builtin("product").unwrap();
        let i = r_implication(&product, 1e-10).unwrap();
        let report = theorem_suite(&i, 64, TOL).unwrap();
        assert!(report.consistent());
        assert!(report.checks.iter().any(|c| c.theorem == "residual-family-satisfies-ie"));
        assert!(report.checks.iter().any(|c| c.theorem == "op-ie-iff-np-on-range"));
    }

    #[test]
    fn suite_f_generated() {
        let neglog = FGenerator::<f64>::builtin("neglog").unwrap();
        let i = f_implication(&neglog).unwrap();
        let report = theorem_suite(&i, 64, TOL).unwrap();
        assert!(report.consistent());
        let row = report.checks.iter().find(|c| c.theorem == "f-family-violates-ie").unwrap();
        assert_eq!(row.predicted, IePrediction::Violates);
        assert_eq!(row.observed, Verdict::Fails);
    }

    #[test]
    fn suite_sn_max() {
        let max = TConorm::<f64>::builtin("max").unwrap();
        let std_neg = Negation::<f64>::builtin("standard").unwrap();
        let i = crate::constructors::sn_implication(&max, &std_neg).unwrap();
        let report = theorem_suite(&i, 64, TOL).unwrap();
        assert!(report.consistent());
        assert!(report.checks.iter().any(|c| c.theorem == "sn-max-satisfies-ie"));
    }

    #[test]
    fn suite_sn_probsum_has_no_theorem() {
        let prob = TConorm::<f64>::builtin("prob_sum").unwrap();
        let std_neg = Negation::<f64>::builtin("standard").unwrap();
        let i = crate::constructors::sn_implication(&prob, &std_neg).unwrap();
        let report = theorem_suite(&i, 64, TOL).unwrap();
        assert!(report.no_theorem_applies());
        assert!(report.consistent()); // vacuously
        assert_eq!(report.profile.ie.verdict, Verdict::Fails);
    }

    #[test]
    fn suite_g_linear_vs_nonlinear() {
        let linear = crate::constructors::GGenerator::<f64>::builtin("linear").unwrap();
        let i = g_implication(&linear).unwrap();
        let report = theorem_suite(&i, 64, TOL).unwrap();
        assert!(report.consistent());
        let row = report.checks.iter().find(|c| c.theorem == "g-linear-iff-ie").unwrap();
        assert_eq!(row.predicted, IePrediction::Satisfies);

        let pow2 = crate::constructors::GGenerator::<f64>::builtin("pow2").unwrap();
        let i = g_implication(&pow2).unwrap();
        let report = theorem_suite(&i, 64, TOL).unwrap();
        assert!(report.consistent());
        let row = report.checks.iter().find(|c| c.theorem == "g-linear-iff-ie").unwrap();
        assert_eq!(row.predicted, IePrediction::Violates);
        assert_eq!(row.observed, Verdict::Fails);
    }
}
