//! Exact linear programming over the rationals.
//!
//! A two-phase primal simplex on the tableau, with Bland's anti-cycling rule,
//! solves `maximize c·x subject to A x ≥ b` with free variables (split into
//! differences of nonnegatives internally). Infeasibility comes back with a
//! Farkas certificate `y ≥ 0, yᵀA = 0, yᵀb > 0`, so emptiness claims are
//! independently checkable. A small Fourier–Motzkin eliminator handles exact
//! coordinate projections of low-dimensional systems.

use crate::num::{q0, q1, Q};
use num_traits::{Signed, Zero};
use std::collections::BTreeSet;

/// Outcome of an exact LP solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpResult {
    /// Optimal point and objective value.
    Optimal { x: Vec<Q>, value: Q },
    /// The objective is unbounded over a nonempty feasible set.
    Unbounded,
    /// The constraints are inconsistent; `farkas` satisfies
    /// `farkas ≥ 0`, `farkasᵀ A = 0`, `farkasᵀ b > 0`.
    Infeasible { farkas: Vec<Q> },
}

/// Maximize `c·x` subject to `a[i]·x ≥ b[i]` for all rows, `x` free.
pub fn maximize(c: &[Q], a: &[Vec<Q>], b: &[Q]) -> LpResult {
    let n = c.len();
    let m = a.len();
    assert_eq!(b.len(), m, "row/rhs count mismatch");
    assert!(a.iter().all(|row| row.len() == n), "row arity mismatch");

    // Standard form: columns are x⁺ (n), x⁻ (n), slack (m), artificial (m).
    // Row i (after a sign flip σ_i making the rhs nonnegative):
    //   σ_i a_i · x⁺ − σ_i a_i · x⁻ − σ_i s_i + art_i = σ_i b_i.
    let ncols = 2 * n + 2 * m;
    let mut tab: Vec<Vec<Q>> = Vec::with_capacity(m);
    let mut sigma: Vec<Q> = Vec::with_capacity(m);
    for i in 0..m {
        let s = if b[i].is_negative() { -q1() } else { q1() };
        let mut row = vec![q0(); ncols + 1];
        for j in 0..n {
            row[j] = &s * &a[i][j];
            row[n + j] = -(&s * &a[i][j]);
        }
        row[2 * n + i] = -s.clone();
        row[2 * n + m + i] = q1();
        row[ncols] = &s * &b[i];
        tab.push(row);
        sigma.push(s);
    }
    let mut basis: Vec<usize> = (0..m).map(|i| 2 * n + m + i).collect();

    // Phase 1: minimize the sum of artificials.
    let mut cost1 = vec![q0(); ncols];
    for j in 0..m {
        cost1[2 * n + m + j] = q1();
    }
    let mut obj = reduced_cost_row(&tab, &basis, &cost1, ncols);
    run_simplex(&mut tab, &mut basis, &mut obj, ncols, None);
    let phase1_value = -obj[ncols].clone();
    if phase1_value.is_positive() {
        // Simplex multipliers from artificial reduced costs: y_i = 1 − rc_i.
        // The original-row certificate is z_i = σ_i y_i ≥ 0.
        let farkas: Vec<Q> = (0..m)
            .map(|i| &sigma[i] * &(q1() - obj[2 * n + m + i].clone()))
            .collect();
        debug_assert!(farkas.iter().all(|z| !z.is_negative()));
        debug_assert!({
            let mut comb = vec![q0(); n];
            for (i, z) in farkas.iter().enumerate() {
                for j in 0..n {
                    comb[j] += z * &a[i][j];
                }
            }
            comb.iter().all(|v| v.is_zero())
        });
        return LpResult::Infeasible { farkas };
    }

    // Drive any zero-level artificials out of the basis.
    for row in 0..m {
        if basis[row] >= 2 * n + m {
            let pivot_col = (0..2 * n + m).find(|&j| !tab[row][j].is_zero());
            match pivot_col {
                Some(col) => pivot(&mut tab, &mut basis, &mut obj, row, col, ncols),
                None => { /* redundant constraint row; harmless to keep */ }
            }
        }
    }

    // Phase 2: maximize c·x == minimize (−c)·(x⁺ − x⁻), artificials banned.
    let mut cost2 = vec![q0(); ncols];
    for j in 0..n {
        cost2[j] = -c[j].clone();
        cost2[n + j] = c[j].clone();
    }
    let mut obj2 = reduced_cost_row(&tab, &basis, &cost2, ncols);
    let banned = 2 * n + m;
    let outcome = run_simplex(&mut tab, &mut basis, &mut obj2, ncols, Some(banned));
    if let Simplex::Unbounded = outcome {
        return LpResult::Unbounded;
    }
    let mut x = vec![q0(); n];
    for (row, &bcol) in basis.iter().enumerate() {
        if bcol < n {
            x[bcol] += tab[row][ncols].clone();
        } else if bcol < 2 * n {
            x[bcol - n] -= tab[row][ncols].clone();
        }
    }
    let value = c.iter().zip(&x).fold(q0(), |acc, (ci, xi)| acc + ci * xi);
    LpResult::Optimal { x, value }
}

/// Minimize `c·x` subject to `a[i]·x ≥ b[i]`.
pub fn minimize(c: &[Q], a: &[Vec<Q>], b: &[Q]) -> LpResult {
    let neg: Vec<Q> = c.iter().map(|v| -v.clone()).collect();
    match maximize(&neg, a, b) {
        LpResult::Optimal { x, value } => LpResult::Optimal { x, value: -value },
        other => other,
    }
}

/// Find any point of `{x : a[i]·x ≥ b[i]}`, or a Farkas certificate that the
/// system is empty.
pub fn feasible_point(a: &[Vec<Q>], b: &[Q]) -> Result<Vec<Q>, Vec<Q>> {
    let n = a.first().map_or(0, |r| r.len());
    match maximize(&vec![q0(); n], a, b) {
        LpResult::Optimal { x, .. } => Ok(x),
        LpResult::Infeasible { farkas } => Err(farkas),
        LpResult::Unbounded => unreachable!("constant objective cannot be unbounded"),
    }
}

/// True iff `row·x ≥ rhs` holds everywhere on `{A x ≥ b}` (vacuously true
/// when the system is empty).
pub fn inequality_implied(a: &[Vec<Q>], b: &[Q], row: &[Q], rhs: &Q) -> bool {
    match minimize(row, a, b) {
        LpResult::Optimal { value, .. } => value >= *rhs,
        LpResult::Unbounded => false,
        LpResult::Infeasible { .. } => true,
    }
}

enum Simplex {
    Optimal,
    Unbounded,
}

/// Reduced-cost row for the given basis: `obj[j] = cost[j] − Σ_i cost[B_i] T_ij`
/// and `obj[ncols] = −(current objective value)`.
fn reduced_cost_row(tab: &[Vec<Q>], basis: &[usize], cost: &[Q], ncols: usize) -> Vec<Q> {
    let mut obj = vec![q0(); ncols + 1];
    obj[..ncols].clone_from_slice(cost);
    for (row, &bcol) in basis.iter().enumerate() {
        let cb = cost[bcol].clone();
        if cb.is_zero() {
            continue;
        }
        for j in 0..=ncols {
            let sub = &cb * &tab[row][j];
            obj[j] -= sub;
        }
    }
    obj
}

/// Run Bland-rule simplex to optimality (minimization of the cost encoded in
/// `obj`). Columns ≥ `ban_from` (if given) are never entered.
fn run_simplex(
    tab: &mut Vec<Vec<Q>>,
    basis: &mut [usize],
    obj: &mut Vec<Q>,
    ncols: usize,
    ban_from: Option<usize>,
) -> Simplex {
    let limit = ban_from.unwrap_or(ncols);
    loop {
        // Bland: entering column = smallest index with negative reduced cost.
        let Some(col) = (0..limit).find(|&j| obj[j].is_negative()) else {
            return Simplex::Optimal;
        };
        // Ratio test; Bland tie-break on smallest basis column.
        let mut leave: Option<(usize, Q)> = None;
        for (row, trow) in tab.iter().enumerate() {
            if !trow[col].is_positive() {
                continue;
            }
            let ratio = &trow[ncols] / &trow[col];
            match &leave {
                None => leave = Some((row, ratio)),
                Some((brow, bratio)) => {
                    if ratio < *bratio
                        || (ratio == *bratio && basis[row] < basis[*brow])
                    {
                        leave = Some((row, ratio));
                    }
                }
            }
        }
        let Some((row, _)) = leave else {
            return Simplex::Unbounded;
        };
        pivot(tab, basis, obj, row, col, ncols);
    }
}

fn pivot(
    tab: &mut [Vec<Q>],
    basis: &mut [usize],
    obj: &mut [Q],
    row: usize,
    col: usize,
    ncols: usize,
) {
    let pv = tab[row][col].clone();
    for j in 0..=ncols {
        tab[row][j] /= pv.clone();
    }
    for r in 0..tab.len() {
        if r == row || tab[r][col].is_zero() {
            continue;
        }
        let f = tab[r][col].clone();
        for j in 0..=ncols {
            let sub = &f * &tab[row][j];
            tab[r][j] -= sub;
        }
    }
    if !obj[col].is_zero() {
        let f = obj[col].clone();
        for j in 0..=ncols {
            let sub = &f * &tab[row][j];
            obj[j] -= sub;
        }
    }
    basis[row] = col;
}

/// Canonical scaling of an inequality `row·x ≥ rhs`: divide by the absolute
/// value of the first nonzero coefficient (or of the rhs for zero rows), so
/// duplicate constraints compare equal.
pub fn normalize_ineq(row: &[Q], rhs: &Q) -> (Vec<Q>, Q) {
    let scale = row
        .iter()
        .find(|v| !v.is_zero())
        .map(|v| v.abs())
        .unwrap_or_else(|| if rhs.is_zero() { q1() } else { rhs.abs() });
    (
        row.iter().map(|v| v / &scale).collect(),
        rhs / &scale,
    )
}

/// Eliminate variable `k` from `{A x ≥ b}` by Fourier–Motzkin; the result is
/// the exact projection onto the remaining coordinates (column `k` dropped).
/// Rows are normalized and deduplicated; trivially true rows are removed.
pub fn fm_eliminate(a: &[Vec<Q>], b: &[Q], k: usize) -> (Vec<Vec<Q>>, Vec<Q>) {
    let n = a.first().map_or(0, |r| r.len());
    assert!(k < n, "eliminating a variable that does not exist");
    assert!(n <= 12, "Fourier–Motzkin limited to small dimension");
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let mut zero = Vec::new();
    for (row, rhs) in a.iter().zip(b) {
        if row[k].is_positive() {
            pos.push((row, rhs));
        } else if row[k].is_negative() {
            neg.push((row, rhs));
        } else {
            zero.push((row, rhs));
        }
    }
    let mut seen = BTreeSet::new();
    let mut out_a = Vec::new();
    let mut out_b = Vec::new();
    let mut push = |row: Vec<Q>, rhs: Q| {
        // Drop 0 ≥ nonpositive (always true); keep 0 ≥ positive (witnesses
        // emptiness downstream).
        if row.iter().all(|v| v.is_zero()) && !rhs.is_positive() {
            return;
        }
        let (nr, nrhs) = normalize_ineq(&row, &rhs);
        if seen.insert((nr.clone(), nrhs.clone())) {
            out_a.push(nr);
            out_b.push(nrhs);
        }
    };
    for (row, rhs) in &zero {
        let dropped: Vec<Q> = row
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, v)| v.clone())
            .collect();
        push(dropped, (*rhs).clone());
    }
    for (pr, pb) in &pos {
        for (nr, nb) in &neg {
            let alpha = nr[k].abs();
            let beta = pr[k].clone();
            let mut row = Vec::with_capacity(n - 1);
            for j in 0..n {
                if j == k {
                    continue;
                }
                row.push(&alpha * &pr[j] + &beta * &nr[j]);
            }
            let rhs = &alpha * *pb + &beta * *nb;
            push(row, rhs);
        }
    }
    (out_a, out_b)
}

/// Project `{A x ≥ b}` onto the coordinates in `keep` (in the given order) by
/// eliminating all others.
pub fn fm_project(a: &[Vec<Q>], b: &[Q], keep: &[usize]) -> (Vec<Vec<Q>>, Vec<Q>) {
    let n = a.first().map_or(0, |r| r.len());
    let keep_set: BTreeSet<usize> = keep.iter().copied().collect();
    assert_eq!(keep_set.len(), keep.len(), "duplicate indices in keep");
    // Eliminate from the highest index down so earlier positions stay stable.
    let mut cur_a: Vec<Vec<Q>> = a.to_vec();
    let mut cur_b: Vec<Q> = b.to_vec();
    let mut live: Vec<usize> = (0..n).collect();
    for victim in (0..n).rev() {
        if keep_set.contains(&victim) {
            continue;
        }
        let pos = live.iter().position(|&v| v == victim).expect("live var");
        let (na, nb) = fm_eliminate(&cur_a, &cur_b, pos);
        cur_a = na;
        cur_b = nb;
        live.remove(pos);
    }
    // Reorder columns from ascending `live` order to the requested order.
    let perm: Vec<usize> = keep
        .iter()
        .map(|&want| live.iter().position(|&v| v == want).expect("kept var"))
        .collect();
    let reordered: Vec<Vec<Q>> = cur_a
        .iter()
        .map(|row| perm.iter().map(|&p| row[p].clone()).collect())
        .collect();
    (reordered, cur_b)
}

/// Drop rows of `{A x ≥ b}` implied by the remaining rows (exact facet
/// pruning; keeps the first of any equivalent pair).
pub fn remove_redundant(a: &[Vec<Q>], b: &[Q]) -> (Vec<Vec<Q>>, Vec<Q>) {
    let mut rows: Vec<(Vec<Q>, Q)> = a
        .iter()
        .zip(b)
        .map(|(r, v)| {
            let (nr, nv) = normalize_ineq(r, v);
            (nr, nv)
        })
        .collect();
    // Dedup first.
    let mut seen = BTreeSet::new();
    rows.retain(|(r, v)| seen.insert((r.clone(), v.clone())));
    let mut keep = vec![true; rows.len()];
    for i in 0..rows.len() {
        let rest_a: Vec<Vec<Q>> = rows
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i && keep[j])
            .map(|(_, (r, _))| r.clone())
            .collect();
        let rest_b: Vec<Q> = rows
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i && keep[j])
            .map(|(_, (_, v))| v.clone())
            .collect();
        if inequality_implied(&rest_a, &rest_b, &rows[i].0, &rows[i].1) {
            keep[i] = false;
        }
    }
    let mut out_a = Vec::new();
    let mut out_b = Vec::new();
    for (i, (r, v)) in rows.into_iter().enumerate() {
        if keep[i] {
            out_a.push(r);
            out_b.push(v);
        }
    }
    (out_a, out_b)
}
