//! Implication constructors: residual (R-), (S,N)-, QL-, f-generated, and
//! g-generated families.
//!
//! Generators carry an explicit inverse when one is known; otherwise the
//! inverse falls back to bisection on the monotone branch. The two infinity
//! conventions of the generated families (`0·∞ = 0` for f, `∞·g(y) = ∞` for
//! g) contradict each other as global rules, so each is encoded only at its
//! own evaluation site.

use std::fmt;
use std::sync::Arc;

use crate::connectives::{
    verify_negation, verify_tconorm, verify_tnorm, Negation, TConorm, TNorm, UnaryFn, UnitValue,
};
use crate::error::{FieqError, Result};
use crate::grid;
use crate::implications::{check_axioms, Implication, Provenance};
use crate::numeric;
use crate::report::{to_f64, CheckReport};
use crate::{defaults, real, Real};

/// Tolerance for construction-time validation, scaled so that closed forms
/// validate under both `f64` and `f32` arithmetic.
fn construction_tol<F: Real>() -> F {
    real::<F>(defaults::TOL_CLOSED_FORM).max(F::epsilon() * real::<F>(64.0))
}

#[derive(Clone)]
enum Inverse<F: Real> {
    Closed(UnaryFn<F>),
    Bisection,
}

/// Strictly decreasing continuous `f: [0,1] → [0,∞]` with `f(1) = 0`.
#[derive(Clone)]
pub struct FGenerator<F: Real = f64> {
    name: String,
    eval: UnaryFn<F>,
    inverse: Inverse<F>,
    f_zero: F,
}

/// Strictly increasing continuous `g: [0,1] → [0,∞]` with `g(0) = 0`.
#[derive(Clone)]
pub struct GGenerator<F: Real = f64> {
    name: String,
    eval: UnaryFn<F>,
    inverse: Inverse<F>,
    g_one: F,
}

impl<F: Real> fmt::Debug for FGenerator<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FGenerator({}, f(0)={})", self.name, self.f_zero)
    }
}

impl<F: Real> fmt::Debug for GGenerator<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GGenerator({}, g(1)={})", self.name, self.g_one)
    }
}

const GENERATOR_CHECK_GRID: usize = 128;

impl<F: Real> FGenerator<F> {
    /// Validates monotonicity and the `f(1) = 0` endpoint on a grid. Pass
    /// `inverse = None` to invert by bisection.
    pub fn new(
        name: impl Into<String>,
        eval: impl Fn(F) -> F + Send + Sync + 'static,
        inverse: Option<Box<dyn Fn(F) -> F + Send + Sync>>,
    ) -> Result<Self> {
        let name = name.into();
        let g = grid::points::<F>(GENERATOR_CHECK_GRID);
        for w in g.windows(2) {
            // Negated form so a NaN evaluation also fails the check.
            #[allow(clippy::neg_cmp_op_on_partial_ord)]
            if !(eval(w[1]) < eval(w[0])) {
                return Err(FieqError::Construction {
                    what: format!("f-generator `{name}`"),
                    detail: format!("not strictly decreasing near x={}", w[0]),
                });
            }
        }
        if eval(F::one()).abs() > construction_tol::<F>() {
            return Err(FieqError::Construction {
                what: format!("f-generator `{name}`"),
                detail: format!("f(1) = {} instead of 0", eval(F::one())),
            });
        }
        let f_zero = eval(F::zero());
        Ok(FGenerator {
            name,
            eval: Arc::new(eval),
            inverse: match inverse {
                Some(h) => Inverse::Closed(Arc::from(h)),
                None => Inverse::Bisection,
            },
            f_zero,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, x: F) -> F {
        (self.eval)(x)
    }

    /// `f(0)`, possibly `∞`.
    pub fn f_zero(&self) -> F {
        self.f_zero
    }

    pub fn has_closed_inverse(&self) -> bool {
        matches!(self.inverse, Inverse::Closed(_))
    }

    /// Inverse on `[0, f(0)]`, clamped into `[0,1]`; `∞` maps to 0.
    pub fn inverse(&self, v: F) -> F {
        if v <= F::zero() {
            return F::one();
        }
        if v >= self.f_zero {
            return F::zero();
        }
        match &self.inverse {
            Inverse::Closed(h) => h(v).max(F::zero()).min(F::one()),
            Inverse::Bisection => {
                let f = &self.eval;
                numeric::invert_decreasing(|x| f(x), v, real::<F>(defaults::INVERSE_TOL))
            }
        }
    }

    pub fn builtin_ids() -> &'static [&'static str] {
        &["one_minus", "neglog", "reciprocal"]
    }

    pub fn builtin(id: &str) -> Result<Self> {
        match id {
            "one_minus" => FGenerator::new(
                "one_minus",
                |x: F| F::one() - x,
                Some(Box::new(|v: F| F::one() - v)),
            ),
            "neglog" => FGenerator::new(
                "neglog",
                |x: F| if x == F::zero() { F::infinity() } else { -x.ln() },
                Some(Box::new(|v: F| (-v).exp())),
            ),
            "reciprocal" => FGenerator::new(
                "reciprocal",
                |x: F| if x == F::zero() { F::infinity() } else { (F::one() - x) / x },
                Some(Box::new(|v: F| F::one() / (F::one() + v))),
            ),
            _ => Err(FieqError::UnknownName { kind: "f-generator", name: id.to_string() }),
        }
    }

    pub fn builtins() -> Vec<Self> {
        Self::builtin_ids().iter().map(|id| Self::builtin(id).unwrap()).collect()
    }
}

impl<F: Real> GGenerator<F> {
    pub fn new(
        name: impl Into<String>,
        eval: impl Fn(F) -> F + Send + Sync + 'static,
        inverse: Option<Box<dyn Fn(F) -> F + Send + Sync>>,
    ) -> Result<Self> {
        let name = name.into();
        let g = grid::points::<F>(GENERATOR_CHECK_GRID);
        for w in g.windows(2) {
            #[allow(clippy::neg_cmp_op_on_partial_ord)]
            if !(eval(w[1]) > eval(w[0])) {
                return Err(FieqError::Construction {
                    what: format!("g-generator `{name}`"),
                    detail: format!("not strictly increasing near x={}", w[0]),
                });
            }
        }
        if eval(F::zero()).abs() > construction_tol::<F>() {
            return Err(FieqError::Construction {
                what: format!("g-generator `{name}`"),
                detail: format!("g(0) = {} instead of 0", eval(F::zero())),
            });
        }
        let g_one = eval(F::one());
        Ok(GGenerator {
            name,
            eval: Arc::new(eval),
            inverse: match inverse {
                Some(h) => Inverse::Closed(Arc::from(h)),
                None => Inverse::Bisection,
            },
            g_one,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, x: F) -> F {
        (self.eval)(x)
    }

    /// `g(1)`, possibly `∞`.
    pub fn g_one(&self) -> F {
        self.g_one
    }

    pub fn has_closed_inverse(&self) -> bool {
        matches!(self.inverse, Inverse::Closed(_))
    }

    /// Pseudo-inverse without domain checking: the true inverse on
    /// `[0, g(1)]`, and 1 above `g(1)`.
    pub(crate) fn pseudo_raw(&self, v: F) -> F {
        if v <= F::zero() {
            return F::zero();
        }
        if v >= self.g_one {
            return F::one();
        }
        match &self.inverse {
            Inverse::Closed(h) => h(v).max(F::zero()).min(F::one()),
            Inverse::Bisection => {
                let g = &self.eval;
                numeric::invert_increasing(|x| g(x), v, real::<F>(defaults::INVERSE_TOL))
            }
        }
    }

    pub fn builtin_ids() -> &'static [&'static str] {
        &["linear", "linear3", "pow2", "sqrt", "mobius", "tanpi2"]
    }

    pub fn builtin(id: &str) -> Result<Self> {
        match id {
            "linear" => GGenerator::new("linear", |x: F| x, Some(Box::new(|v: F| v))),
            "linear3" => GGenerator::new(
                "linear3",
                |x: F| real::<F>(3.0) * x,
                Some(Box::new(|v: F| v / real::<F>(3.0))),
            ),
            "pow2" => {
                GGenerator::new("pow2", |x: F| x * x, Some(Box::new(|v: F| v.sqrt())))
            }
            "sqrt" => GGenerator::new("sqrt", |x: F| x.sqrt(), Some(Box::new(|v: F| v * v))),
            "mobius" => GGenerator::new(
                "mobius",
                |x: F| x / (real::<F>(2.0) - x),
                Some(Box::new(|v: F| real::<F>(2.0) * v / (F::one() + v))),
            ),
            "tanpi2" => GGenerator::new(
                "tanpi2",
                |x: F| {
                    if x >= F::one() {
                        F::infinity()
                    } else {
                        (x * real::<F>(std::f64::consts::FRAC_PI_2)).tan()
                    }
                },
                Some(Box::new(|v: F| v.atan() / real::<F>(std::f64::consts::FRAC_PI_2))),
            ),
            _ => Err(FieqError::UnknownName { kind: "g-generator", name: id.to_string() }),
        }
    }

    pub fn builtins() -> Vec<Self> {
        Self::builtin_ids().iter().map(|id| Self::builtin(id).unwrap()).collect()
    }
}

/// Pseudo-inverse of a g-generator: `g⁻¹(v)` for `v ∈ [0, g(1)]`, and 1
/// beyond. Negative arguments are a domain error.
pub fn pseudo_inverse<F: Real>(g: &GGenerator<F>, v: F) -> Result<UnitValue<F>> {
    if v < F::zero() || v.is_nan() {
        return Err(FieqError::Domain(to_f64(v)));
    }
    UnitValue::new(g.pseudo_raw(v))
}

/// Rescales a bounded generator to `g₁(x) = g(x)/g(1)`, which generates the
/// same implication pointwise.
pub fn normalize_g<F: Real>(g: &GGenerator<F>) -> Result<GGenerator<F>> {
    let g_one = g.g_one();
    if g_one.is_infinite() {
        return Err(FieqError::UnboundedGenerator(g.name().to_string()));
    }
    let inner = g.clone();
    let inverse: Option<Box<dyn Fn(F) -> F + Send + Sync>> = match &g.inverse {
        Inverse::Closed(h) => {
            let h = h.clone();
            Some(Box::new(move |v: F| h(v * g_one)))
        }
        Inverse::Bisection => None,
    };
    GGenerator::new(format!("{}_norm", g.name()), move |x: F| inner.eval(x) / g_one, inverse)
}

fn require<F: Real>(report: CheckReport<F>, what: String) -> Result<CheckReport<F>> {
    if report.passed() {
        Ok(report)
    } else {
        Err(FieqError::Construction {
            what,
            detail: format!(
                "residual {} at {:?} (grid {})",
                report.max_residual, report.worst_point, report.grid_n
            ),
        })
    }
}

/// Residuum of a t-norm: `I_T(x,y) = sup{t : T(x,t) ≤ y}`.
///
/// `T(x,·)` is increasing, so the set is a down-set and the supremum is
/// found by bisection to `sup_tol`. For the registered min, product, and
/// Łukasiewicz t-norms the known closed forms (Gödel, Goguen, Łukasiewicz)
/// are substituted; everything else, including the drastic t-norm, takes the
/// numeric route.
pub fn r_implication<F: Real>(t: &TNorm<F>, sup_tol: F) -> Result<Implication<F>> {
    let closed: Option<BinaryClosure<F>> = match t.name() {
        "min" => Some(Box::new(|x: F, y: F| if x <= y { F::one() } else { y })),
        "product" => Some(Box::new(|x: F, y: F| if x <= y { F::one() } else { y / x })),
        "lukasiewicz" => Some(Box::new(|x: F, y: F| (F::one() - x + y).min(F::one()))),
        _ => None,
    };
    build_residual(t, sup_tol, closed)
}

/// The residuum computed by bisection even when a closed form is known;
/// kept separate so the two routes can be checked against each other.
pub fn r_implication_numeric<F: Real>(t: &TNorm<F>, sup_tol: F) -> Result<Implication<F>> {
    build_residual(t, sup_tol, None)
}

type BinaryClosure<F> = Box<dyn Fn(F, F) -> F + Send + Sync>;

fn build_residual<F: Real>(
    t: &TNorm<F>,
    sup_tol: F,
    closed: Option<BinaryClosure<F>>,
) -> Result<Implication<F>> {
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(sup_tol > F::zero()) {
        return Err(FieqError::InvalidTolerance(to_f64(sup_tol)));
    }
    require(
        verify_tnorm(t, defaults::GRID_2VAR, construction_tol::<F>())?,
        format!("t-norm `{}`", t.name()),
    )?;
    let name = format!("r(tnorm:{})", t.name());
    let provenance = Provenance::Residual(t.clone());
    match closed {
        Some(f) => {
            // The substituted closed form must agree with the supremum
            // definition; this guards against a descriptor that reuses a
            // registry name with different semantics.
            let probe: Vec<F> = grid::points(4);
            for &x in &probe {
                for &y in &probe {
                    let direct = numeric::sup_of_downset(|s| t.eval(x, s), y, sup_tol);
                    if (f(x, y) - direct).abs() > sup_tol + sup_tol {
                        return Err(FieqError::Construction {
                            what: format!("residuum of `{}`", t.name()),
                            detail: format!(
                                "closed form disagrees with the supremum at ({x},{y})"
                            ),
                        });
                    }
                }
            }
            Ok(Implication::with_provenance(name, provenance, false, Arc::from(f)))
        }
        None => {
            let t = t.clone();
            Ok(Implication::with_provenance(
                name,
                provenance,
                true,
                Arc::new(move |x: F, y: F| {
                    numeric::sup_of_downset(|s| t.eval(x, s), y, sup_tol)
                }),
            ))
        }
    }
}

/// `(S,N)`-implication: `I(x,y) = S(N(x), y)`.
pub fn sn_implication<F: Real>(s: &TConorm<F>, n: &Negation<F>) -> Result<Implication<F>> {
    let tol = construction_tol::<F>();
    require(verify_tconorm(s, defaults::GRID_2VAR, tol)?, format!("t-conorm `{}`", s.name()))?;
    require(verify_negation(n, defaults::GRID_2VAR, tol)?, format!("negation `{}`", n.name()))?;
    let name = format!("sn(tconorm:{},neg:{})", s.name(), n.name());
    let provenance = Provenance::SN(s.clone(), n.clone());
    let (s, n) = (s.clone(), n.clone());
    Ok(Implication::with_provenance(
        name,
        provenance,
        false,
        Arc::new(move |x: F, y: F| s.eval(n.eval(x), y)),
    ))
}

/// QL-operation: `I(x,y) = S(N(x), T(x,y))`, returned together with its
/// axiom report. The operation is a QL-implication only when the report
/// passes; failing (I1) is an outcome, not an error.
pub fn ql_operation<F: Real>(
    t: &TNorm<F>,
    s: &TConorm<F>,
    n: &Negation<F>,
) -> Result<(Implication<F>, CheckReport<F>)> {
    let tol = construction_tol::<F>();
    require(verify_tnorm(t, defaults::GRID_2VAR, tol)?, format!("t-norm `{}`", t.name()))?;
    require(verify_tconorm(s, defaults::GRID_2VAR, tol)?, format!("t-conorm `{}`", s.name()))?;
    require(verify_negation(n, defaults::GRID_2VAR, tol)?, format!("negation `{}`", n.name()))?;
    let name = format!("ql(tnorm:{},tconorm:{},neg:{})", t.name(), s.name(), n.name());
    let provenance = Provenance::Ql(t.clone(), s.clone(), n.clone());
    let (t2, s2, n2) = (t.clone(), s.clone(), n.clone());
    let candidate = Implication::with_provenance(
        name,
        provenance,
        false,
        Arc::new(move |x: F, y: F| s2.eval(n2.eval(x), t2.eval(x, y))),
    );
    let report = check_axioms(&candidate, defaults::GRID_2VAR, tol)?;
    Ok((candidate, report))
}

/// f-generated implication: `I(x,y) = f⁻¹(x · f(y))` with the convention
/// `0 · ∞ = 0`, so `I(0,y) = f⁻¹(0) = 1`.
pub fn f_implication<F: Real>(f: &FGenerator<F>) -> Result<Implication<F>> {
    let name = format!("f(gen:{})", f.name());
    let provenance = Provenance::FGenerated(f.clone());
    let bisection = !f.has_closed_inverse();
    let f = f.clone();
    Ok(Implication::with_provenance(
        name,
        provenance,
        bisection,
        Arc::new(move |x: F, y: F| {
            // 0 · ∞ = 0 holds only here.
            let arg = if x == F::zero() { F::zero() } else { x * f.eval(y) };
            f.inverse(arg)
        }),
    ))
}

/// g-generated implication: `I(x,y) = g⁽⁻¹⁾((1/x) · g(y))` with the
/// conventions `1/0 = ∞` and `∞ · 0 = ∞`, so `I(0,y) = 1` for every `y`.
pub fn g_implication<F: Real>(g: &GGenerator<F>) -> Result<Implication<F>> {
    let name = format!("g(gen:{})", g.name());
    let provenance = Provenance::GGenerated(g.clone());
    let bisection = !g.has_closed_inverse();
    let g = g.clone();
    Ok(Implication::with_provenance(
        name,
        provenance,
        bisection,
        Arc::new(move |x: F, y: F| {
            // 1/0 = ∞ and ∞ · g(y) = ∞ hold only here.
            let arg = if x == F::zero() { F::infinity() } else { g.eval(y) / x };
            g.pseudo_raw(arg)
        }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::implications::named;
    use crate::report::Verdict;

    const SUP_TOL: f64 = 1e-10;

    #[test]
    fn residuals_of_builtin_tnorms() {
        let min = TNorm::<f64>::builtin("min").unwrap();
        let godel = r_implication(&min, SUP_TOL).unwrap();
        assert_eq!(godel.eval(0.8, 0.3), 0.3);
        assert!(!godel.bisection_backed());

        let product = TNorm::<f64>::builtin("product").unwrap();
        let goguen = r_implication(&product, SUP_TOL).unwrap();
        assert_eq!(goguen.eval(0.8, 0.2), 0.25);

        for t in TNorm::<f64>::builtins() {
            let i = r_implication(&t, SUP_TOL).unwrap();
            assert!((i.eval(0.0, 0.0) - 1.0).abs() <= SUP_TOL, "{}", t.name());
        }
    }

    #[test]
    fn numeric_residual_matches_closed_forms_coarse() {
        let g: Vec<f64> = grid::points(16);
        for (id, closed) in [("min", "GD"), ("product", "GG"), ("lukasiewicz", "LK")] {
            let t = TNorm::<f64>::builtin(id).unwrap();
            let numeric = r_implication_numeric(&t, SUP_TOL).unwrap();
            assert!(numeric.bisection_backed());
            let reference = named::<f64>(closed).unwrap();
            for &x in &g {
                for &y in &g {
                    let diff = (numeric.eval(x, y) - reference.eval(x, y)).abs();
                    assert!(diff <= SUP_TOL, "{id} at ({x},{y}): diff {diff}");
                }
            }
        }
    }

    #[test]
    fn residual_of_drastic_is_weber() {
        let t = TNorm::<f64>::builtin("drastic").unwrap();
        let i = r_implication(&t, SUP_TOL).unwrap();
        let wb = named::<f64>("WB").unwrap();
        let g: Vec<f64> = grid::points(32);
        for &x in &g {
            for &y in &g {
                assert!((i.eval(x, y) - wb.eval(x, y)).abs() <= SUP_TOL, "({x},{y})");
            }
        }
    }

    #[test]
    fn residual_rejects_non_tnorm() {
        let fake = TNorm::new(
            "bad",
            crate::connectives::TNormFlags {
                closed_form: true,
                left_continuous: true,
                positive: false,
            },
            |x: f64, y: f64| x + y - x * y,
        );
        assert!(r_implication(&fake, SUP_TOL).is_err());
    }

    // A valid t-norm wearing the registry name `min` must not silently get
    // the Gödel closed form.
    #[test]
    fn residual_rejects_name_spoofing() {
        let spoof = TNorm::new(
            "min",
            crate::connectives::TNormFlags {
                closed_form: true,
                left_continuous: true,
                positive: true,
            },
            |x: f64, y: f64| x * y,
        );
        let err = r_implication(&spoof, SUP_TOL).unwrap_err();
        assert!(err.to_string().contains("disagrees with the supremum"), "{err}");
    }

    #[test]
    fn sn_examples() {
        let max = TConorm::<f64>::builtin("max").unwrap();
        let std_neg = Negation::<f64>::builtin("standard").unwrap();
        let kd = sn_implication(&max, &std_neg).unwrap();
        assert_eq!(kd.eval(0.6, 0.2), 0.4);

        let prob = TConorm::<f64>::builtin("prob_sum").unwrap();
        let rc = sn_implication(&prob, &std_neg).unwrap();
        assert_eq!(rc.eval(0.5, 0.5), 0.75);

        let sd = TConorm::<f64>::builtin("drastic").unwrap();
        let dp = sn_implication(&sd, &std_neg).unwrap();
        assert_eq!(dp.eval(0.4, 0.0), 0.6); // N(x) branch at y = 0
    }

    #[test]
    fn ql_min_luk_standard_is_lukasiewicz() {
        let t = TNorm::<f64>::builtin("min").unwrap();
        let s = TConorm::<f64>::builtin("lukasiewicz").unwrap();
        let n = Negation::<f64>::builtin("standard").unwrap();
        let (i, report) = ql_operation(&t, &s, &n).unwrap();
        assert!(report.passed());
        let lk = named::<f64>("LK").unwrap();
        let g: Vec<f64> = grid::points(64);
        for &x in &g {
            for &y in &g {
                assert!((i.eval(x, y) - lk.eval(x, y)).abs() <= 1e-15, "({x},{y})");
            }
        }
    }

    #[test]
    fn ql_product_probsum_is_not_an_implication() {
        let t = TNorm::<f64>::builtin("product").unwrap();
        let s = TConorm::<f64>::builtin("prob_sum").unwrap();
        let n = Negation::<f64>::builtin("standard").unwrap();
        let (i, report) = ql_operation(&t, &s, &n).unwrap();
        assert_eq!(report.verdict, Verdict::Fails);
        // 1-x+x²y: corner values are fine, (I1) is what breaks.
        assert!((i.eval(0.5, 1.0) - 0.75).abs() < 1e-15);
        assert!((i.eval(0.9, 1.0) - 0.91).abs() < 1e-15);
        assert_eq!(i.eval(0.0, 0.0), 1.0);
    }

    #[test]
    fn f_generated_closed_forms() {
        let one_minus = FGenerator::<f64>::builtin("one_minus").unwrap();
        let rc = f_implication(&one_minus).unwrap();
        assert_eq!(rc.eval(0.5, 0.5), 0.75);

        let neglog = FGenerator::<f64>::builtin("neglog").unwrap();
        let yg = f_implication(&neglog).unwrap();
        assert!((yg.eval(0.5, 0.5) - 0.5f64.powf(0.5)).abs() < 1e-15);
        assert_eq!(yg.eval(0.0, 0.0), 1.0); // 0 · ∞ = 0 convention
    }

    #[test]
    fn g_generated_closed_forms() {
        let linear = GGenerator::<f64>::builtin("linear").unwrap();
        let goguen = g_implication(&linear).unwrap();
        assert_eq!(goguen.eval(0.8, 0.2), 0.25);

        let pow2 = GGenerator::<f64>::builtin("pow2").unwrap();
        let i = g_implication(&pow2).unwrap();
        assert_eq!(i.eval(0.25, 0.5), 1.0); // y/√x = 1 clamps at the boundary
        assert!((i.eval(0.5, 0.25) - 0.25 / 0.5f64.sqrt()).abs() < 1e-15);

        for g in GGenerator::<f64>::builtins() {
            let i = g_implication(&g).unwrap();
            assert_eq!(i.eval(0.0, 0.0), 1.0, "{}: g⁽⁻¹⁾(∞) = 1", g.name());
        }
    }

    #[test]
    fn pseudo_inverse_cases() {
        let pow2 = GGenerator::<f64>::builtin("pow2").unwrap();
        assert_eq!(pseudo_inverse(&pow2, 0.25).unwrap().get(), 0.5);
        assert_eq!(pseudo_inverse(&pow2, 4.0).unwrap().get(), 1.0);
        assert_eq!(pseudo_inverse(&pow2, 0.0).unwrap().get(), 0.0);
        assert!(pseudo_inverse(&pow2, -1.0).is_err());
        let tan = GGenerator::<f64>::builtin("tanpi2").unwrap();
        assert_eq!(pseudo_inverse(&tan, f64::INFINITY).unwrap().get(), 1.0);
    }

    #[test]
    fn normalize_examples() {
        let linear3 = GGenerator::<f64>::builtin("linear3").unwrap();
        let n = normalize_g(&linear3).unwrap();
        assert!((n.eval(0.7) - 0.7).abs() < 1e-15);
        assert_eq!(n.g_one(), 1.0);

        let pow2 = GGenerator::<f64>::builtin("pow2").unwrap();
        let n = normalize_g(&pow2).unwrap();
        let g: Vec<f64> = grid::points(32);
        for &x in &g {
            assert!((n.eval(x) - pow2.eval(x)).abs() < 1e-15);
        }

        let tan = GGenerator::<f64>::builtin("tanpi2").unwrap();
        assert!(matches!(normalize_g(&tan), Err(FieqError::UnboundedGenerator(_))));
    }

    #[test]
    fn normalized_generator_preserves_implication() {
        let linear3 = GGenerator::<f64>::builtin("linear3").unwrap();
        let a = g_implication(&linear3).unwrap();
        let b = g_implication(&normalize_g(&linear3).unwrap()).unwrap();
        let g: Vec<f64> = grid::points(64);
        for &x in &g {
            for &y in &g {
                assert!((a.eval(x, y) - b.eval(x, y)).abs() <= 1e-12, "({x},{y})");
            }
        }
    }

    #[test]
    fn bisection_inverse_route_agrees_with_closed() {
        let closed = GGenerator::<f64>::builtin("pow2").unwrap();
        let numeric = GGenerator::<f64>::new("pow2_numeric", |x: f64| x * x, None).unwrap();
        assert!(!numeric.has_closed_inverse());
        let a = g_implication(&closed).unwrap();
        let b = g_implication(&numeric).unwrap();
        assert!(b.bisection_backed());
        let g: Vec<f64> = grid::points(32);
        for &x in &g {
            for &y in &g {
                assert!((a.eval(x, y) - b.eval(x, y)).abs() <= 1e-6, "({x},{y})");
            }
        }
    }

    #[test]
    fn generator_validation_rejects_wrong_monotonicity() {
        assert!(FGenerator::<f64>::new("increasing", |x| x, None).is_err());
        assert!(FGenerator::<f64>::new("wrong_endpoint", |x| 2.0 - x, None).is_err());
        assert!(GGenerator::<f64>::new("decreasing", |x| 1.0 - x, None).is_err());
        assert!(GGenerator::<f64>::new("offset", |x| x + 0.5, None).is_err());
    }

    #[test]
    fn generated_families_have_left_neutrality() {
        let g: Vec<f64> = grid::points(128);
        for f in FGenerator::<f64>::builtins() {
            let i = f_implication(&f).unwrap();
            for &y in &g {
                assert!((i.eval(1.0, y) - y).abs() <= 1e-9, "f {} at {y}", f.name());
            }
        }
        for gg in GGenerator::<f64>::builtins() {
            let i = g_implication(&gg).unwrap();
            for &y in &g {
                assert!((i.eval(1.0, y) - y).abs() <= 1e-9, "g {} at {y}", gg.name());
            }
        }
    }

    #[test]
    fn scaling_leaves_g_implication_unchanged() {
        for (c, name) in [(3.0, "c3"), (0.25, "c025")] {
            let scaled = GGenerator::<f64>::new(
                name,
                move |x: f64| c * x * x,
                Some(Box::new(move |v: f64| (v / c).sqrt())),
            )
            .unwrap();
            let base = GGenerator::<f64>::builtin("pow2").unwrap();
            let a = g_implication(&base).unwrap();
            let b = g_implication(&scaled).unwrap();
            let g: Vec<f64> = grid::points(64);
            for &x in &g {
                for &y in &g {
                    assert!((a.eval(x, y) - b.eval(x, y)).abs() <= 1e-12, "c={c} ({x},{y})");
                }
            }
        }
    }
}
