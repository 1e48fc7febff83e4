//! Exact, exhaustive verification on the finite chains `L_n = {0, 1/n, …, 1}`.
//!
//! Implications on a chain are `(n+1)×(n+1)` tables of chain indices, the
//! `▽` composition is integer table lookup (the chain is closed under it),
//! and every check here is integer-exact — this module is the brute-force
//! oracle behind the continuous grid checks. The enumeration budget is
//! `n ≤ 3`; beyond that the pruned search is no longer guaranteed to finish
//! at desk scale.

use serde::Serialize;

use crate::error::{FieqError, Result};
use crate::report::{CheckReport, Verdict};

/// Largest chain resolution the exhaustive operations accept.
pub const MAX_CHAIN: usize = 3;

/// A fuzzy implication on `L_n`, stored row-major: `table[i*(n+1)+j]` is the
/// chain index of `I(i/n, j/n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteImplication {
    n: usize,
    table: Vec<u8>,
}

impl FiniteImplication {
    /// Validates the exact invariants: rows antitone in `i`, columns isotone
    /// in `j`, and the corner values `I(0,0) = I(1,1) = 1`, `I(1,0) = 0`.
    pub fn from_table(n: usize, table: Vec<u8>) -> Result<Self> {
        let w = n + 1;
        if table.len() != w * w {
            return Err(FieqError::Construction {
                what: "finite implication table".into(),
                detail: format!("expected {} entries, got {}", w * w, table.len()),
            });
        }
        let detail = Self::violation(n, &table);
        match detail {
            None => Ok(FiniteImplication { n, table }),
            Some(detail) => Err(FieqError::Construction {
                what: "finite implication table".into(),
                detail,
            }),
        }
    }

    fn violation(n: usize, table: &[u8]) -> Option<String> {
        let w = n + 1;
        let at = |i: usize, j: usize| table[i * w + j];
        let top = n as u8;
        if at(0, 0) != top || at(n, n) != top || at(n, 0) != 0 {
            return Some("corner values violated".into());
        }
        for i in 0..w {
            for j in 0..w {
                if at(i, j) > top {
                    return Some(format!("entry ({i},{j}) outside the chain"));
                }
                if i + 1 < w && at(i + 1, j) > at(i, j) {
                    return Some(format!("row antitonicity violated at ({i},{j})"));
                }
                if j + 1 < w && at(i, j) > at(i, j + 1) {
                    return Some(format!("column isotonicity violated at ({i},{j})"));
                }
            }
        }
        None
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.table[i * (self.n + 1) + j]
    }

    pub fn table(&self) -> &[u8] {
        &self.table
    }

    /// Row-major digit string, e.g. `221122012` for one table on `L_2`.
    pub fn digits(&self) -> String {
        self.table.iter().map(|&v| char::from(b'0' + v)).collect()
    }

    /// Parses the row-major digit serialization back into a table.
    pub fn parse(n: usize, line: &str) -> Result<Self> {
        let table: Vec<u8> = line
            .trim()
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or_else(|| FieqError::Parse(format!("bad digit `{c}`")))
            })
            .collect::<Result<_>>()?;
        Self::from_table(n, table)
    }
}

fn check_budget(n: usize) -> Result<()> {
    if n == 0 {
        return Err(FieqError::InvalidGrid(0));
    }
    if n > MAX_CHAIN {
        return Err(FieqError::Budget(n, MAX_CHAIN));
    }
    Ok(())
}

/// Enumerates every fuzzy implication on `L_n`, exactly once each, in
/// lexicographic order of the row-major serialization.
///
/// Row 0 is forced to all-`n` and the last column to `n`; the remaining rows
/// are generated top-down as nondecreasing tuples bounded pointwise by the
/// previous row, which prunes the search to the valid tables only.
pub fn enumerate_implications(n: usize) -> Result<Vec<FiniteImplication>> {
    check_budget(n)?;
    let w = n + 1;
    let top = n as u8;
    let mut out = Vec::new();
    let mut rows: Vec<Vec<u8>> = vec![vec![top; w]];
    fill_rows(n, &mut rows, &mut out);
    Ok(out)
}

fn fill_rows(n: usize, rows: &mut Vec<Vec<u8>>, out: &mut Vec<FiniteImplication>) {
    let w = n + 1;
    let level = rows.len();
    if level == w {
        let table: Vec<u8> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        out.push(FiniteImplication { n, table });
        return;
    }
    let last = level == n;
    let prev = rows[level - 1].clone();
    let mut row = vec![0u8; w];
    fill_row_elems(n, last, &prev, &mut row, 0, rows, out);
}

fn fill_row_elems(
    n: usize,
    last: bool,
    prev: &[u8],
    row: &mut Vec<u8>,
    j: usize,
    rows: &mut Vec<Vec<u8>>,
    out: &mut Vec<FiniteImplication>,
) {
    let w = n + 1;
    if j == w {
        rows.push(row.clone());
        fill_rows(n, rows, out);
        rows.pop();
        return;
    }
    let floor = if j == 0 { 0 } else { row[j - 1] };
    // The last column is pinned to n by antitonicity from I(1,1) = 1; the
    // final row additionally pins I(1,0) = 0.
    let (lo, hi) = if j == n {
        (n as u8, prev[j])
    } else if last && j == 0 {
        (0, 0)
    } else {
        (floor, prev[j])
    };
    let lo = lo.max(floor);
    for v in lo..=hi {
        row[j] = v;
        fill_row_elems(n, last, prev, row, j + 1, rows, out);
    }
}

/// Exact `▽` on tables: `(A ▽ B)[i][j] = A[B[j][i]][B[i][j]]`.
pub fn nabla_finite(a: &FiniteImplication, b: &FiniteImplication) -> Result<FiniteImplication> {
    if a.n != b.n {
        return Err(FieqError::MismatchedResolution(a.n, b.n));
    }
    let w = a.n + 1;
    let mut table = vec![0u8; w * w];
    for i in 0..w {
        for j in 0..w {
            let u = b.get(j, i) as usize;
            let v = b.get(i, j) as usize;
            table[i * w + j] = a.get(u, v);
        }
    }
    // Closure is a theorem; an invalid composed table must surface as an
    // error, not be repaired.
    FiniteImplication::from_table(a.n, table)
}

/// All `▽`-idempotents on `L_n` — exactly the solutions of the functional
/// equation there.
pub fn idempotents(n: usize) -> Result<Vec<FiniteImplication>> {
    let all = enumerate_implications(n)?;
    let mut out = Vec::new();
    for a in all {
        if nabla_finite(&a, &a)? == a {
            out.push(a);
        }
    }
    Ok(out)
}

/// Counts emitted alongside enumeration artifacts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EnumerationSummary {
    pub n: usize,
    pub total: usize,
    pub idempotent_count: usize,
}

pub fn summary(n: usize) -> Result<EnumerationSummary> {
    let total = enumerate_implications(n)?.len();
    let idempotent_count = idempotents(n)?.len();
    Ok(EnumerationSummary { n, total, idempotent_count })
}

fn has_exact_op(a: &FiniteImplication) -> bool {
    let n = a.n;
    let top = n as u8;
    (0..=n).all(|i| (0..=n).all(|j| (a.get(i, j) == top) == (i <= j)))
}

fn has_exact_np_on_values(a: &FiniteImplication) -> bool {
    let n = a.n;
    a.table.iter().all(|&v| a.get(n, v as usize) == v)
}

/// Exact equivalence check on `L_n`: for every implication with the exact
/// ordering property, `▽`-idempotency must coincide with exact left
/// neutrality on the table's value set.
///
/// The report is integer-exact: `Holds` means no counterexample exists on
/// `L_n`; a failure carries residual 1 and flags `(idempotent, np-on-values)`
/// as its lhs/rhs, with the offending table in `samples`' position left to
/// the caller to re-derive (the check re-runs cheaply).
pub fn verify_op_np_theorem(n: usize) -> Result<CheckReport<f64>> {
    let all = enumerate_implications(n)?;
    let mut checked = 0usize;
    for a in &all {
        if !has_exact_op(a) {
            continue;
        }
        checked += 1;
        let idem = nabla_finite(a, a)? == *a;
        let np = has_exact_np_on_values(a);
        if idem != np {
            return Ok(CheckReport {
                verdict: Verdict::Fails,
                max_residual: 1.0,
                worst_point: vec![0.0, 0.0],
                worst_lhs: if idem { 1.0 } else { 0.0 },
                worst_rhs: if np { 1.0 } else { 0.0 },
                samples: checked,
                grid_n: n,
                tol: 0.0,
            });
        }
    }
    Ok(CheckReport {
        verdict: Verdict::Holds,
        max_residual: 0.0,
        worst_point: vec![0.0, 0.0],
        worst_lhs: 0.0,
        worst_rhs: 0.0,
        samples: checked,
        grid_n: n,
        tol: 0.0,
    })
}

fn tnorm_table_violation(n: usize, t: &[u8]) -> Option<String> {
    let w = n + 1;
    if t.len() != w * w {
        return Some(format!("expected {} entries, got {}", w * w, t.len()));
    }
    let at = |i: usize, j: usize| t[i * w + j] as usize;
    for i in 0..w {
        if at(i, n) != i {
            return Some(format!("neutral element violated at ({i},{n})"));
        }
        for j in 0..w {
            if at(i, j) > n {
                return Some(format!("entry ({i},{j}) outside the chain"));
            }
            if at(i, j) != at(j, i) {
                return Some(format!("commutativity violated at ({i},{j})"));
            }
            if j + 1 < w && at(i, j) > at(i, j + 1) {
                return Some(format!("monotonicity violated at ({i},{j})"));
            }
            for k in 0..w {
                if at(at(i, j), k) != at(i, at(j, k)) {
                    return Some(format!("associativity violated at ({i},{j},{k})"));
                }
            }
        }
    }
    None
}

/// Exact residuum of a t-norm table: `entry[i][j] = max{k : T[i][k] ≤ j}`.
/// The table is verified to be a t-norm on `L_n` first.
pub fn residuum_finite(n: usize, t_table: &[u8]) -> Result<FiniteImplication> {
    check_budget(n)?;
    if let Some(detail) = tnorm_table_violation(n, t_table) {
        return Err(FieqError::Construction { what: "t-norm table".into(), detail });
    }
    let w = n + 1;
    let at = |i: usize, k: usize| t_table[i * w + k];
    let mut table = vec![0u8; w * w];
    for i in 0..w {
        for j in 0..w {
            // T(i,·) is nondecreasing and T(i,0) = 0 ≤ j, so the set is a
            // nonempty down-set of indices.
            let mut best = 0u8;
            for k in 0..w {
                if at(i, k) <= j as u8 {
                    best = k as u8;
                }
            }
            table[i * w + j] = best;
        }
    }
    FiniteImplication::from_table(n, table)
}

/// Every t-norm table on `L_n`, in lexicographic order of the free interior
/// entries. Borders are forced by the neutral element and monotonicity; the
/// interior is brute-forced and filtered by the exact axioms.
pub fn enumerate_tnorm_tables(n: usize) -> Result<Vec<Vec<u8>>> {
    check_budget(n)?;
    let w = n + 1;
    let mut free = Vec::new();
    for i in 1..n {
        for j in i..n {
            free.push((i, j));
        }
    }
    let mut out = Vec::new();
    let mut assignment = vec![0u8; free.len()];
    loop {
        let mut table = vec![0u8; w * w];
        for i in 0..w {
            table[i * w + n] = i as u8;
            table[n * w + i] = i as u8;
        }
        for (&(i, j), &v) in free.iter().zip(assignment.iter()) {
            table[i * w + j] = v;
            table[j * w + i] = v;
        }
        if tnorm_table_violation(n, &table).is_none() {
            out.push(table);
        }
        // Odometer over the free entries.
        let mut pos = free.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            if assignment[pos] < n as u8 {
                assignment[pos] += 1;
                break;
            }
            assignment[pos] = 0;
        }
    }
}
