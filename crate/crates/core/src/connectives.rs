//! Truth degrees and the underlying connectives: t-norms, t-conorms, and
//! fuzzy negations, with grid verification of their defining axioms.
//!
//! Connective descriptors are immutable evaluators plus metadata flags; the
//! axioms are never assumed, only checked by the `verify_*` operations.

use std::fmt;
use std::sync::Arc;

use crate::error::{FieqError, Result};
use crate::grid::{self, Fold};
use crate::report::{to_f64, CheckReport, Verdict};
use crate::{defaults, real, Real};

/// A truth degree in `[0,1]`. Construction outside the interval is rejected.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct UnitValue<F: Real = f64>(F);

impl<F: Real> UnitValue<F> {
    pub fn new(value: F) -> Result<Self> {
        if value >= F::zero() && value <= F::one() {
            Ok(UnitValue(value))
        } else {
            Err(FieqError::Domain(to_f64(value)))
        }
    }

    pub fn get(self) -> F {
        self.0
    }
}

pub type BinaryFn<F> = Arc<dyn Fn(F, F) -> F + Send + Sync>;
pub type UnaryFn<F> = Arc<dyn Fn(F) -> F + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TNormFlags {
    pub closed_form: bool,
    pub left_continuous: bool,
    /// `T(x,y) = 0` forces `x = 0` or `y = 0` (certified at registration).
    pub positive: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TConormFlags {
    pub closed_form: bool,
    /// `S(x,y) = 1` forces `x = 1` or `y = 1` (certified at registration).
    pub positive: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NegationFlags {
    pub strong: bool,
    /// `N(x) > 0` for all `x < 1`.
    pub non_vanishing: bool,
}

/// A candidate triangular norm: evaluator plus metadata. Whether it really
/// is one is decided by [`verify_tnorm`].
#[derive(Clone)]
pub struct TNorm<F: Real = f64> {
    name: String,
    eval: BinaryFn<F>,
    pub flags: TNormFlags,
}

#[derive(Clone)]
pub struct TConorm<F: Real = f64> {
    name: String,
    eval: BinaryFn<F>,
    pub flags: TConormFlags,
}

#[derive(Clone)]
pub struct Negation<F: Real = f64> {
    name: String,
    eval: UnaryFn<F>,
    pub flags: NegationFlags,
}

macro_rules! descriptor_impl {
    ($ty:ident) => {
        impl<F: Real> fmt::Debug for $ty<F> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.debug_struct(stringify!($ty))
                    .field("name", &self.name)
                    .field("flags", &self.flags)
                    .finish()
            }
        }

        impl<F: Real> $ty<F> {
            pub fn name(&self) -> &str {
                &self.name
            }
        }
    };
}

descriptor_impl!(TNorm);
descriptor_impl!(TConorm);
descriptor_impl!(Negation);

impl<F: Real> TNorm<F> {
    pub fn new(
        name: impl Into<String>,
        flags: TNormFlags,
        eval: impl Fn(F, F) -> F + Send + Sync + 'static,
    ) -> Self {
        TNorm { name: name.into(), eval: Arc::new(eval), flags }
    }

    pub fn eval(&self, x: F, y: F) -> F {
        (self.eval)(x, y)
    }

    pub fn builtin_ids() -> &'static [&'static str] {
        &["min", "product", "lukasiewicz", "drastic"]
    }

    /// Looks up a registered t-norm by identifier.
    pub fn builtin(id: &str) -> Result<Self> {
        let closed = |positive, left_continuous| TNormFlags {
            closed_form: true,
            left_continuous,
            positive,
        };
        match id {
            "min" => Ok(TNorm::new("min", closed(true, true), |x: F, y: F| x.min(y))),
            "product" => Ok(TNorm::new("product", closed(true, true), |x: F, y: F| x * y)),
            "lukasiewicz" | "LK" => Ok(TNorm::new(
                "lukasiewicz",
                closed(false, true),
                |x: F, y: F| (x + y - F::one()).max(F::zero()),
            )),
            "drastic" | "TD" => Ok(TNorm::new("drastic", closed(false, false), |x: F, y: F| {
                if x == F::one() {
                    y
                } else if y == F::one() {
                    x
                } else {
                    F::zero()
                }
            })),
            _ => Err(FieqError::UnknownName { kind: "tnorm", name: id.to_string() }),
        }
    }

    pub fn builtins() -> Vec<Self> {
        Self::builtin_ids().iter().map(|id| Self::builtin(id).unwrap()).collect()
    }
}

impl<F: Real> TConorm<F> {
    pub fn new(
        name: impl Into<String>,
        flags: TConormFlags,
        eval: impl Fn(F, F) -> F + Send + Sync + 'static,
    ) -> Self {
        TConorm { name: name.into(), eval: Arc::new(eval), flags }
    }

    pub fn eval(&self, x: F, y: F) -> F {
        (self.eval)(x, y)
    }

    pub fn builtin_ids() -> &'static [&'static str] {
        &["max", "prob_sum", "lukasiewicz", "drastic"]
    }

    /// Looks up a registered t-conorm by identifier. `LK` and `SD` are
    /// accepted as aliases for the Łukasiewicz and drastic sums.
    pub fn builtin(id: &str) -> Result<Self> {
        let flags = |positive| TConormFlags { closed_form: true, positive };
        match id {
            "max" => Ok(TConorm::new("max", flags(true), |x: F, y: F| x.max(y))),
            // Positivity certificate: x + y - xy = 1 - (1-x)(1-y), which is 1
            // only when (1-x)(1-y) = 0.
            "prob_sum" => Ok(TConorm::new("prob_sum", flags(true), |x: F, y: F| x + y - x * y)),
            "lukasiewicz" | "LK" => Ok(TConorm::new(
                "lukasiewicz",
                flags(false),
                |x: F, y: F| (x + y).min(F::one()),
            )),
            "drastic" | "SD" => Ok(TConorm::new("drastic", flags(false), |x: F, y: F| {
                if x == F::zero() {
                    y
                } else if y == F::zero() {
                    x
                } else {
                    F::one()
                }
            })),
            _ => Err(FieqError::UnknownName { kind: "tconorm", name: id.to_string() }),
        }
    }

    pub fn builtins() -> Vec<Self> {
        Self::builtin_ids().iter().map(|id| Self::builtin(id).unwrap()).collect()
    }
}

impl<F: Real> Negation<F> {
    pub fn new(
        name: impl Into<String>,
        flags: NegationFlags,
        eval: impl Fn(F) -> F + Send + Sync + 'static,
    ) -> Self {
        Negation { name: name.into(), eval: Arc::new(eval), flags }
    }

    pub fn eval(&self, x: F) -> F {
        (self.eval)(x)
    }

    pub fn builtin_ids() -> &'static [&'static str] {
        &["standard", "ND1", "ND2"]
    }

    /// Looks up a registered negation: `standard` is `1-x`; `ND1` is 1 at 0
    /// and 0 elsewhere; `ND2` is 1 below 1 and 0 at 1.
    pub fn builtin(id: &str) -> Result<Self> {
        match id {
            "standard" => Ok(Negation::new(
                "standard",
                NegationFlags { strong: true, non_vanishing: true },
                |x: F| F::one() - x,
            )),
            "ND1" => Ok(Negation::new(
                "ND1",
                NegationFlags { strong: false, non_vanishing: false },
                |x: F| if x == F::zero() { F::one() } else { F::zero() },
            )),
            "ND2" => Ok(Negation::new(
                "ND2",
                NegationFlags { strong: false, non_vanishing: true },
                |x: F| if x < F::one() { F::one() } else { F::zero() },
            )),
            _ => Err(FieqError::UnknownName { kind: "negation", name: id.to_string() }),
        }
    }

    pub fn builtins() -> Vec<Self> {
        Self::builtin_ids().iter().map(|id| Self::builtin(id).unwrap()).collect()
    }
}

pub(crate) fn validate_params<F: Real>(grid_n: usize, tol: F) -> Result<()> {
    if grid_n < 2 {
        return Err(FieqError::InvalidGrid(grid_n));
    }
    // Negated form so that a NaN tolerance is rejected too.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(tol > F::zero()) {
        return Err(FieqError::InvalidTolerance(to_f64(tol)));
    }
    Ok(())
}

/// Checks commutativity, monotonicity, neutral element 1, and associativity
/// of `t` on the grid. Associativity sweeps a coarser grid capped at
/// [`defaults::GRID_3VAR`] to keep the three-variable budget flat.
pub fn verify_tnorm<F: Real>(t: &TNorm<F>, grid_n: usize, tol: F) -> Result<CheckReport<F>> {
    verify_binary(t.name(), |x, y| t.eval(x, y), F::one(), grid_n, tol)
}

/// Dual of [`verify_tnorm`]: neutral element 0.
pub fn verify_tconorm<F: Real>(s: &TConorm<F>, grid_n: usize, tol: F) -> Result<CheckReport<F>> {
    verify_binary(s.name(), |x, y| s.eval(x, y), F::zero(), grid_n, tol)
}

fn verify_binary<F: Real>(
    _name: &str,
    op: impl Fn(F, F) -> F + Sync,
    neutral: F,
    grid_n: usize,
    tol: F,
) -> Result<CheckReport<F>> {
    validate_params(grid_n, tol)?;
    let g = grid::points::<F>(grid_n);
    let n1 = grid_n + 1;
    let mut fold = Fold::new();

    // Neutral element: op(x, e) = x.
    let (r, i) = grid::scan_max(n1, |i| (op(g[i], neutral) - g[i]).abs());
    fold.push(r, vec![g[i], neutral], op(g[i], neutral), g[i], n1);

    // Commutativity.
    let (r, idx) = grid::scan_max(n1 * n1, |idx| {
        let (i, j) = grid::unravel2(idx, grid_n);
        (op(g[i], g[j]) - op(g[j], g[i])).abs()
    });
    let (i, j) = grid::unravel2(idx, grid_n);
    fold.push(r, vec![g[i], g[j]], op(g[i], g[j]), op(g[j], g[i]), n1 * n1);

    // Monotone increasing in each argument, over adjacent grid pairs.
    let pair_len = grid_n * n1;
    let (r, idx) = grid::scan_max(pair_len, |idx| {
        let (i, j) = (idx / n1, idx % n1);
        (op(g[i], g[j]) - op(g[i + 1], g[j])).max(F::zero())
    });
    let (i, j) = (idx / n1, idx % n1);
    fold.push(r, vec![g[i], g[j]], op(g[i], g[j]), op(g[i + 1], g[j]), pair_len);

    let (r, idx) = grid::scan_max(pair_len, |idx| {
        let (i, j) = (idx / grid_n, idx % grid_n);
        (op(g[i], g[j]) - op(g[i], g[j + 1])).max(F::zero())
    });
    let (i, j) = (idx / grid_n, idx % grid_n);
    fold.push(r, vec![g[i], g[j]], op(g[i], g[j]), op(g[i], g[j + 1]), pair_len);

    // Associativity on the coarser three-variable grid.
    let m = grid_n.min(defaults::GRID_3VAR);
    let gm = grid::points::<F>(m);
    let m1 = m + 1;
    let (r, idx) = grid::scan_max(m1 * m1 * m1, |idx| {
        let (i, j, k) = grid::unravel3(idx, m);
        (op(op(gm[i], gm[j]), gm[k]) - op(gm[i], op(gm[j], gm[k]))).abs()
    });
    let (i, j, k) = grid::unravel3(idx, m);
    fold.push(
        r,
        vec![gm[i], gm[j], gm[k]],
        op(op(gm[i], gm[j]), gm[k]),
        op(gm[i], op(gm[j], gm[k])),
        m1 * m1 * m1,
    );

    let samples = fold.samples;
    let (max_residual, point, lhs, rhs) = fold.finish();
    Ok(CheckReport::from_scan(Verdict::Holds, max_residual, point, lhs, rhs, samples, grid_n, tol))
}

/// Checks that `n` is decreasing on the grid with `N(0) = 1` and `N(1) = 0`.
pub fn verify_negation<F: Real>(n: &Negation<F>, grid_n: usize, tol: F) -> Result<CheckReport<F>> {
    validate_params(grid_n, tol)?;
    let g = grid::points::<F>(grid_n);
    let mut fold = Fold::new();

    let corners = [(F::zero(), F::one()), (F::one(), F::zero())];
    let (r, idx) = grid::scan_max(corners.len(), |i| (n.eval(corners[i].0) - corners[i].1).abs());
    let (at, want) = corners[idx];
    fold.push(r, vec![at], n.eval(at), want, corners.len());

    // Decreasing over adjacent pairs.
    let (r, idx) = grid::scan_max(grid_n, |i| (n.eval(g[i + 1]) - n.eval(g[i])).max(F::zero()));
    fold.push(r, vec![g[idx]], n.eval(g[idx]), n.eval(g[idx + 1]), grid_n);

    let samples = fold.samples;
    let (max_residual, point, lhs, rhs) = fold.finish();
    Ok(CheckReport::from_scan(Verdict::Holds, max_residual, point, lhs, rhs, samples, grid_n, tol))
}

/// Semi-decidable positivity check: scans interior grid points for
/// `S(x,y) ≥ 1 − tol` with `x < 1` and `y < 1`.
///
/// A finite grid can only falsify positivity. When no interior point reaches
/// 1 the verdict is `Holds` if the descriptor carries a symbolic positivity
/// certificate (`flags.positive`), else `ConsistentAtResolution`.
pub fn is_positive_tconorm<F: Real>(
    s: &TConorm<F>,
    grid_n: usize,
    tol: F,
) -> Result<CheckReport<F>> {
    validate_params(grid_n, tol)?;
    let g = grid::points::<F>(grid_n);
    let two = real::<F>(2.0);
    let threshold = F::one() - tol;
    // Interior points only: indices below grid_n in both coordinates. The
    // residual is an exceedance score: > tol exactly when S(x,y) ≥ 1 − tol.
    let (r, idx) = grid::scan_max(grid_n * grid_n, |idx| {
        let (i, j) = (idx / grid_n, idx % grid_n);
        let v = s.eval(g[i], g[j]);
        if v >= threshold {
            v - threshold + two * tol
        } else {
            F::zero()
        }
    });
    let (i, j) = (idx / grid_n, idx % grid_n);
    let pass = if s.flags.positive { Verdict::Holds } else { Verdict::ConsistentAtResolution };
    Ok(CheckReport::from_scan(
        pass,
        r,
        vec![g[i], g[j]],
        s.eval(g[i], g[j]),
        F::one(),
        grid_n * grid_n,
        grid_n,
        tol,
    ))
}

/// Law of the excluded middle for the pair `(S, N)`: `S(N(x), x) = 1` on the
/// grid.
pub fn satisfies_lem<F: Real>(
    s: &TConorm<F>,
    n: &Negation<F>,
    grid_n: usize,
    tol: F,
) -> Result<CheckReport<F>> {
    validate_params(grid_n, tol)?;
    let g = grid::points::<F>(grid_n);
    let (r, idx) = grid::scan_max(grid_n + 1, |i| (s.eval(n.eval(g[i]), g[i]) - F::one()).abs());
    Ok(CheckReport::from_scan(
        Verdict::Holds,
        r,
        vec![g[idx]],
        s.eval(n.eval(g[idx]), g[idx]),
        F::one(),
        grid_n + 1,
        grid_n,
        tol,
    ))
}
