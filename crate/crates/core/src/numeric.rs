//! Bisection kernels for monotone functions on `[0,1]`.
//!
//! Strict monotonicity plus continuity make plain interval halving exact up
//! to the requested width, so nothing fancier is used anywhere in the crate.

use crate::{real, Real};

/// Inverts a continuous strictly increasing `f: [0,1] → [0,∞]` at `target`.
///
/// Returns the `x` with `f(x) = target` to within `tol`. Targets at or below
/// `f(0)` map to 0, targets at or above `f(1)` map to 1 (this covers the
/// infinite target of an unbounded function).
pub fn invert_increasing<F: Real>(f: impl Fn(F) -> F, target: F, tol: F) -> F {
    if target.is_infinite() {
        return F::one();
    }
    if target <= f(F::zero()) {
        return F::zero();
    }
    if target >= f(F::one()) {
        return F::one();
    }
    let half = real::<F>(0.5);
    let mut lo = F::zero();
    let mut hi = F::one();
    while hi - lo > tol {
        let mid = (lo + hi) * half;
        if f(mid) <= target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo + hi) * half
}

/// Inverts a continuous strictly decreasing `f: [0,1] → [0,∞]` at `target`.
///
/// Targets at or above `f(0)` (including `∞`) map to 0, targets at or below
/// `f(1)` map to 1.
pub fn invert_decreasing<F: Real>(f: impl Fn(F) -> F, target: F, tol: F) -> F {
    if target.is_infinite() {
        return F::zero();
    }
    if target >= f(F::zero()) {
        return F::zero();
    }
    if target <= f(F::one()) {
        return F::one();
    }
    let half = real::<F>(0.5);
    let mut lo = F::zero();
    let mut hi = F::one();
    while hi - lo > tol {
        let mid = (lo + hi) * half;
        if f(mid) <= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo + hi) * half
}

/// Supremum of the down-set `{t ∈ [0,1] : g(t) ≤ bound}` for increasing `g`.
///
/// The set is an interval starting at 0 because `g` is increasing, so the
/// supremum is bracketed by invariant `g(lo) ≤ bound < g(hi)`. The returned
/// value underestimates the supremum by less than `tol`.
pub fn sup_of_downset<F: Real>(g: impl Fn(F) -> F, bound: F, tol: F) -> F {
    if g(F::one()) <= bound {
        return F::one();
    }
    let half = real::<F>(0.5);
    let mut lo = F::zero();
    let mut hi = F::one();
    while hi - lo > tol {
        let mid = (lo + hi) * half;
        if g(mid) <= bound {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}
