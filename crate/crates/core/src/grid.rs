//! Grid sampling and deterministic residual scans.
//!
//! Every check in the crate reduces to "max residual over an indexed set of
//! sample points". The scan partitions the index range across worker threads
//! and merges chunk results in index order, replacing the incumbent only on
//! a strictly larger residual, so parallel and serial runs pick the same
//! maximum and the same (lexicographically smallest) worst point bit for bit.

use std::env;
use std::thread;

use crate::Real;

/// The uniform grid `G_n = {i/n : 0 ≤ i ≤ n}`.
pub fn points<F: Real>(n: usize) -> Vec<F> {
    let denom = F::from_usize(n).unwrap();
    (0..=n)
        .map(|i| F::from_usize(i).unwrap() / denom)
        .collect()
}

/// Worker count: `FIEQ_THREADS` when set, otherwise available parallelism
/// capped at 8. Values are clamped to `[1, 64]`.
pub fn thread_budget() -> usize {
    match env::var("FIEQ_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        Some(n) => n.clamp(1, 64),
        None => thread::available_parallelism().map_or(1, |n| n.get()).min(8),
    }
}

/// Sweeps `residual(idx)` for `idx ∈ 0..len` and returns the maximum residual
/// together with the smallest index attaining it.
///
/// `len = 0` is not meaningful; callers always scan at least one point.
pub fn scan_max<F: Real>(len: usize, residual: impl Fn(usize) -> F + Sync) -> (F, usize) {
    assert!(len > 0, "scan over empty index range");
    let workers = thread_budget();
    if workers <= 1 || len < 4096 {
        return scan_serial(0, len, &residual);
    }
    let chunk = len.div_ceil(workers);
    let mut best: Option<(F, usize)> = None;
    thread::scope(|scope| {
        let residual = &residual;
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let start = w * chunk;
                let end = ((w + 1) * chunk).min(len);
                scope.spawn(move || {
                    if start < end {
                        Some(scan_serial(start, end, residual))
                    } else {
                        None
                    }
                })
            })
            .collect();
        // Chunks are merged in index order; strict improvement keeps the
        // earliest maximizer, matching the serial scan exactly.
        for handle in handles {
            if let Some((res, idx)) = handle.join().expect("scan worker panicked") {
                match best {
                    Some((b, _)) if res <= b => {}
                    _ => best = Some((res, idx)),
                }
            }
        }
    });
    best.expect("non-empty scan produced no result")
}

fn scan_serial<F: Real>(start: usize, end: usize, residual: &impl Fn(usize) -> F) -> (F, usize) {
    let mut max = residual(start);
    let mut at = start;
    for idx in start + 1..end {
        let r = residual(idx);
        if r > max {
            max = r;
            at = idx;
        }
    }
    (max, at)
}

/// Folds sub-scan results into one worst case, keeping the first sub-scan's
/// candidate on ties so multi-part checks stay deterministic.
pub(crate) struct Fold<F: Real> {
    best: Option<(F, Vec<F>, F, F)>,
    pub samples: usize,
}

impl<F: Real> Fold<F> {
    pub fn new() -> Self {
        Fold { best: None, samples: 0 }
    }

    pub fn push(&mut self, residual: F, point: Vec<F>, lhs: F, rhs: F, samples: usize) {
        self.samples += samples;
        match &self.best {
            Some((incumbent, _, _, _)) if residual <= *incumbent => {}
            _ => self.best = Some((residual, point, lhs, rhs)),
        }
    }

    /// `(max_residual, worst_point, lhs, rhs)`; panics if nothing was pushed.
    pub fn finish(self) -> (F, Vec<F>, F, F) {
        self.best.expect("fold over zero sub-scans")
    }
}

/// Splits a flat index into `(i, j)` over an `(n+1)×(n+1)` grid, row-major.
pub fn unravel2(idx: usize, n: usize) -> (usize, usize) {
    let w = n + 1;
    (idx / w, idx % w)
}

/// Splits a flat index into `(i, j, k)` over an `(n+1)³` grid, row-major.
pub fn unravel3(idx: usize, n: usize) -> (usize, usize, usize) {
    let w = n + 1;
    (idx / (w * w), (idx / w) % w, idx % w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints_are_exact() {
        let g: Vec<f64> = points(128);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[128], 1.0);
        assert_eq!(g[64], 0.5);
    }

    #[test]
    fn scan_finds_first_maximizer() {
        // Two equal maxima; the earlier index must win.
        let vals = [0.0, 3.0, 1.0, 3.0, 2.0];
        let (max, at) = scan_max(vals.len(), |i| vals[i]);
        assert_eq!(max, 3.0);
        assert_eq!(at, 1);
    }

    #[test]
    fn parallel_scan_matches_serial() {
        let f = |i: usize| ((i as f64 * 0.37).sin() * 1000.0).abs();
        let (serial_max, serial_at) = scan_serial(0, 100_000, &f);
        let (par_max, par_at) = scan_max(100_000, f);
        assert_eq!(serial_max.to_bits(), par_max.to_bits());
        assert_eq!(serial_at, par_at);
    }
}
