//! Exact linear algebra: dense rational matrices, integer matrices with
//! Smith normal form, and small symbolic matrices whose entries are Laurent
//! polynomials or rational functions.
//!
//! Everything here is desk-scale (dimensions ≤ ~30 for rational matrices,
//! ≤ 8 for symbolic ones), so the implementations favour clarity and
//! exactness over asymptotics: Gaussian elimination with full fraction
//! arithmetic, Gauss–Jordan inverses, and a textbook Smith reduction.

use crate::laurent::{LaurentPoly, RatFn};
use crate::num::{q0, q1, qi, Q};
use num_traits::Zero;

/// Dense matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Q>,
}

impl QMat {
    /// Build from nested rows (all the same length).
    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        QMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Build from nested integer rows.
    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| qi(v)).collect())
                .collect(),
        )
    }

    /// Zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat {
            rows,
            cols,
            data: vec![q0(); rows * cols],
        }
    }

    /// Identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = q1();
        }
        m
    }

    /// Entry accessor.
    pub fn at(&self, r: usize, c: usize) -> &Q {
        &self.data[r * self.cols + c]
    }

    /// Mutable entry accessor.
    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Q {
        &mut self.data[r * self.cols + c]
    }

    /// Row as a slice.
    pub fn row(&self, r: usize) -> &[Q] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Matrix product.
    pub fn mul(&self, rhs: &QMat) -> QMat {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = QMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let add = a * rhs.at(k, j);
                    *out.at_mut(i, j) += add;
                }
            }
        }
        out
    }

    /// Matrix–vector product.
    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(q0(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Transpose.
    pub fn transpose(&self) -> QMat {
        let mut out = QMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out
    }

    /// Determinant by Gaussian elimination (square only).
    pub fn det(&self) -> Q {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = q1();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m.at(r, col).is_zero());
            let Some(p) = pivot else {
                return q0();
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pv = m.at(col, col).clone();
            det *= pv.clone();
            for r in col + 1..n {
                let factor = m.at(r, col).clone() / pv.clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let sub = factor.clone() * m.at(col, c).clone();
                    *m.at_mut(r, c) -= sub;
                }
            }
        }
        det
    }

    /// Inverse via Gauss–Jordan; `None` when singular.
    pub fn inverse(&self) -> Option<QMat> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = QMat::identity(n);
        for col in 0..n {
            let p = (col..n).find(|&r| !m.at(r, col).is_zero())?;
            if p != col {
                m.swap_rows(p, col);
                inv.swap_rows(p, col);
            }
            let pv = m.at(col, col).clone();
            for c in 0..n {
                *m.at_mut(col, c) /= pv.clone();
                *inv.at_mut(col, c) /= pv.clone();
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = m.at(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let s1 = factor.clone() * m.at(col, c).clone();
                    *m.at_mut(r, c) -= s1;
                    let s2 = factor.clone() * inv.at(col, c).clone();
                    *inv.at_mut(r, c) -= s2;
                }
            }
        }
        Some(inv)
    }

    /// Solve `A x = b`; `None` when inconsistent or rank-deficient with no
    /// solution. Returns one solution (free variables set to zero).
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(self.rows, b.len(), "solve shape mismatch");
        let mut aug = QMat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, self.cols) = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        // Inconsistent iff a pivot lands in the augmented column.
        if pivots.iter().any(|&c| c == self.cols) {
            return None;
        }
        let mut x = vec![q0(); self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = r.at(row, self.cols).clone();
        }
        Some(x)
    }

    /// Reduced row echelon form; returns the matrix and pivot columns.
    pub fn rref(&self) -> (QMat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(p, row);
            let pv = m.at(row, col).clone();
            for c in 0..m.cols {
                *m.at_mut(row, c) /= pv.clone();
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.at(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in 0..m.cols {
                    let sub = factor.clone() * m.at(row, c).clone();
                    *m.at_mut(r, c) -= sub;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    /// Rank.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Nested-row view (for serialization and tests).
    pub fn to_rows(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// True iff every entry is an integer.
    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|q| q.is_integer())
    }

    /// Convert to integer rows (panics unless `is_integral`).
    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|q| crate::num::q_to_i64(q))
                    .collect()
            })
            .collect()
    }
}

/// Determinant of an integer matrix (exact, via rational elimination).
pub fn imat_det(m: &[Vec<i64>]) -> i64 {
    crate::num::q_to_i64(&QMat::from_i64(m).det())
}

/// True iff the integer matrix is square with determinant ±1.
pub fn imat_is_unimodular(m: &[Vec<i64>]) -> bool {
    if m.is_empty() {
        return true;
    }
    if m.len() != m[0].len() {
        return false;
    }
    imat_det(m).abs() == 1
}

/// Integer matrix product.
pub fn imat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let (n, k) = (a.len(), b.len());
    let m = b.first().map_or(0, |r| r.len());
    assert!(a.iter().all(|r| r.len() == k), "shape mismatch");
    let mut out = vec![vec![0i64; m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l] == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += a[i][l] * b[l][j];
            }
        }
    }
    out
}

/// Identity integer matrix.
pub fn imat_identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// Inverse of a unimodular integer matrix, as an integer matrix.
pub fn imat_inverse_unimodular(m: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let inv = QMat::from_i64(m).inverse()?;
    if !inv.is_integral() {
        return None;
    }
    Some(inv.to_i64_rows())
}

/// Smith normal form: returns `(u, s, v)` with `u · a · v = s`, where `u`
/// and `v` are unimodular and `s` is diagonal with each diagonal entry
/// dividing the next. Used to decide whether integer cokernels have torsion.
pub fn smith_normal_form(a: &[Vec<i64>]) -> (Vec<Vec<i64>>, Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut s: Vec<Vec<i64>> = a.to_vec();
    let mut u = imat_identity(rows);
    let mut v = imat_identity(cols);

    let mut t = 0;
    while t < rows.min(cols) {
        // Find a nonzero pivot in the remaining block.
        let mut pivot = None;
        'scan: for i in t..rows {
            for j in t..cols {
                if s[i][j] != 0 {
                    pivot = Some((i, j));
                    break 'scan;
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        s.swap(t, pi);
        u.swap(t, pi);
        for row in s.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }

        // Clear row and column t with Euclidean steps until entries vanish.
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if s[i][t] == 0 {
                    continue;
                }
                if s[i][t] % s[t][t] == 0 {
                    let f = s[i][t] / s[t][t];
                    for j in 0..cols {
                        s[i][j] -= f * s[t][j];
                    }
                    for j in 0..rows {
                        u[i][j] -= f * u[t][j];
                    }
                } else {
                    // Swap to bring the smaller remainder into the pivot.
                    let f = s[i][t] / s[t][t];
                    for j in 0..cols {
                        s[i][j] -= f * s[t][j];
                    }
                    for j in 0..rows {
                        u[i][j] -= f * u[t][j];
                    }
                    s.swap(t, i);
                    u.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if s[t][j] == 0 {
                    continue;
                }
                if s[t][j] % s[t][t] == 0 {
                    let f = s[t][j] / s[t][t];
                    for row in s.iter_mut() {
                        row[j] -= f * row[t];
                    }
                    for row in v.iter_mut() {
                        row[j] -= f * row[t];
                    }
                } else {
                    let f = s[t][j] / s[t][t];
                    for row in s.iter_mut() {
                        row[j] -= f * row[t];
                    }
                    for row in v.iter_mut() {
                        row[j] -= f * row[t];
                    }
                    for row in s.iter_mut() {
                        row.swap(t, j);
                    }
                    for row in v.iter_mut() {
                        row.swap(t, j);
                    }
                    dirty = true;
                }
            }
            let row_clear = (t + 1..rows).all(|i| s[i][t] == 0);
            let col_clear = (t + 1..cols).all(|j| s[t][j] == 0);
            if row_clear && col_clear && !dirty {
                break;
            }
        }
        t += 1;
    }

    // Enforce the divisibility chain d_t | d_{t+1}.
    let k = rows.min(cols);
    loop {
        let mut fixed = true;
        for i in 0..k.saturating_sub(1) {
            let (a_, b_) = (s[i][i], s[i + 1][i + 1]);
            if a_ != 0 && b_ % a_ != 0 {
                fixed = false;
                // Add column i+1 to column i, then re-reduce the 2x2 block by
                // rerunning the elimination from position i.
                for row in s.iter_mut() {
                    row[i] += row[i + 1];
                }
                for row in v.iter_mut() {
                    row[i] += row[i + 1];
                }
                // Local Euclidean clean-up.
                loop {
                    if s[i + 1][i] == 0 {
                        break;
                    }
                    if s[i][i] != 0 && s[i + 1][i] % s[i][i] == 0 {
                        let f = s[i + 1][i] / s[i][i];
                        for j in 0..cols {
                            s[i + 1][j] -= f * s[i][j];
                        }
                        for j in 0..rows {
                            u[i + 1][j] -= f * u[i][j];
                        }
                    } else if s[i][i] != 0 {
                        let f = s[i + 1][i] / s[i][i];
                        for j in 0..cols {
                            s[i + 1][j] -= f * s[i][j];
                        }
                        for j in 0..rows {
                            u[i + 1][j] -= f * u[i][j];
                        }
                        s.swap(i, i + 1);
                        u.swap(i, i + 1);
                    } else {
                        s.swap(i, i + 1);
                        u.swap(i, i + 1);
                    }
                }
                loop {
                    if s[i][i + 1] == 0 {
                        break;
                    }
                    if s[i][i] != 0 && s[i][i + 1] % s[i][i] == 0 {
                        let f = s[i][i + 1] / s[i][i];
                        for row in s.iter_mut() {
                            row[i + 1] -= f * row[i];
                        }
                        for row in v.iter_mut() {
                            row[i + 1] -= f * row[i];
                        }
                    } else if s[i][i] != 0 {
                        let f = s[i][i + 1] / s[i][i];
                        for row in s.iter_mut() {
                            row[i + 1] -= f * row[i];
                        }
                        for row in v.iter_mut() {
                            row[i + 1] -= f * row[i];
                        }
                        for row in s.iter_mut() {
                            row.swap(i, i + 1);
                        }
                        for row in v.iter_mut() {
                            row.swap(i, i + 1);
                        }
                    } else {
                        for row in s.iter_mut() {
                            row.swap(i, i + 1);
                        }
                        for row in v.iter_mut() {
                            row.swap(i, i + 1);
                        }
                    }
                }
            }
        }
        if fixed {
            break;
        }
    }

    // Normalize signs on the diagonal.
    for i in 0..k {
        if s[i][i] < 0 {
            for row in s.iter_mut() {
                row[i] = -row[i];
            }
            for row in v.iter_mut() {
                row[i] = -row[i];
            }
        }
    }
    (u, s, v)
}

/// Matrix with Laurent-polynomial entries (symbolic group elements before
/// any inversion is needed).
pub type LMat = Vec<Vec<LaurentPoly>>;

/// Identity matrix over Laurent polynomials in `nvars` variables.
pub fn lmat_identity(n: usize, nvars: usize) -> LMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        LaurentPoly::one(nvars)
                    } else {
                        LaurentPoly::zero(nvars)
                    }
                })
                .collect()
        })
        .collect()
}

/// Product of Laurent-entry matrices.
pub fn lmat_mul(a: &LMat, b: &LMat) -> LMat {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    assert!(a.iter().all(|r| r.len() == k), "shape mismatch");
    let nvars = a
        .first()
        .and_then(|r| r.first())
        .map_or(0, |p| p.nvars());
    let mut out = vec![vec![LaurentPoly::zero(nvars); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if b[l][j].is_zero() {
                    continue;
                }
                out[i][j] = &out[i][j] + &(&a[i][l] * &b[l][j]);
            }
        }
    }
    out
}

/// Determinant of a square Laurent-entry matrix by cofactor expansion along
/// the sparsest row (the carrier matrices are very sparse, and dimensions
/// stay ≤ 7).
pub fn lmat_det(m: &LMat) -> LaurentPoly {
    let n = m.len();
    let nvars = m
        .first()
        .and_then(|r| r.first())
        .map_or(0, |p| p.nvars());
    assert!(m.iter().all(|r| r.len() == n), "non-square determinant");
    if n == 0 {
        return LaurentPoly::one(nvars);
    }
    det_rec(m, &(0..n).collect::<Vec<_>>(), &(0..n).collect::<Vec<_>>(), nvars)
}

/// Determinant of the submatrix on the given rows and columns.
pub fn lmat_submatrix_det(
    m: &LMat,
    rows: &[usize],
    cols: &[usize],
) -> LaurentPoly {
    assert_eq!(rows.len(), cols.len(), "non-square minor");
    let nvars = m
        .first()
        .and_then(|r| r.first())
        .map_or(0, |p| p.nvars());
    det_rec(m, rows, cols, nvars)
}

fn det_rec(m: &LMat, rows: &[usize], cols: &[usize], nvars: usize) -> LaurentPoly {
    let n = rows.len();
    if n == 0 {
        return LaurentPoly::one(nvars);
    }
    if n == 1 {
        return m[rows[0]][cols[0]].clone();
    }
    // Expand along the row with the fewest nonzero entries.
    let (best_idx, _) = rows
        .iter()
        .enumerate()
        .map(|(idx, &r)| (idx, cols.iter().filter(|&&c| !m[r][c].is_zero()).count()))
        .min_by_key(|&(_, cnt)| cnt)
        .expect("nonempty");
    let r = rows[best_idx];
    let sub_rows: Vec<usize> = rows
        .iter()
        .copied()
        .filter(|&x| x != r)
        .collect();
    let mut acc = LaurentPoly::zero(nvars);
    for (cj, &c) in cols.iter().enumerate() {
        if m[r][c].is_zero() {
            continue;
        }
        let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = det_rec(m, &sub_rows, &sub_cols, nvars);
        let term = &m[r][c] * &minor;
        if (best_idx + cj) % 2 == 0 {
            acc = &acc + &term;
        } else {
            acc = &acc - &term;
        }
    }
    acc
}

/// Matrix with rational-function entries (needed once a group element gets
/// inverted, e.g. inside the twist).
pub type RMat = Vec<Vec<RatFn>>;

/// Lift a Laurent-entry matrix to rational-function entries.
pub fn lmat_to_rmat(m: &LMat) -> RMat {
    m.iter()
        .map(|row| row.iter().map(|p| RatFn::from_poly(p.clone())).collect())
        .collect()
}

/// Identity over rational functions.
pub fn rmat_identity(n: usize, nvars: usize) -> RMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        RatFn::one(nvars)
                    } else {
                        RatFn::zero(nvars)
                    }
                })
                .collect()
        })
        .collect()
}

/// Product over rational functions.
pub fn rmat_mul(a: &RMat, b: &RMat) -> RMat {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    assert!(a.iter().all(|r| r.len() == k), "shape mismatch");
    let nvars = a
        .first()
        .and_then(|r| r.first())
        .map_or(0, |p| p.nvars());
    let mut out = vec![vec![RatFn::zero(nvars); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if b[l][j].is_zero() {
                    continue;
                }
                out[i][j] = out[i][j].add(&a[i][l].mul(&b[l][j]));
            }
        }
    }
    out
}

/// Transpose.
pub fn rmat_transpose(m: &RMat) -> RMat {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols)
        .map(|j| (0..rows).map(|i| m[i][j].clone()).collect())
        .collect()
}

/// Inverse over the rational-function field via Gauss–Jordan; `None` when
/// singular as a symbolic matrix.
pub fn rmat_inverse(m: &RMat) -> Option<RMat> {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "inverse of non-square matrix");
    let nvars = m
        .first()
        .and_then(|r| r.first())
        .map_or(0, |p| p.nvars());
    let mut a: RMat = m.to_vec();
    let mut inv = rmat_identity(n, nvars);
    for col in 0..n {
        // Prefer the structurally simplest nonzero pivot (fewest numerator
        // terms) to keep intermediate expressions small.
        let p = (col..n)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| a[r][col].num.num_terms() + a[r][col].den.num_terms())?;
        a.swap(p, col);
        inv.swap(p, col);
        let pv = a[col][col].clone();
        for c in 0..n {
            a[col][c] = a[col][c].div(&pv);
            inv[col][c] = inv[col][c].div(&pv);
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in 0..n {
                let s1 = factor.mul(&a[col][c]);
                a[r][c] = a[r][c].sub(&s1);
                let s2 = factor.mul(&inv[col][c]);
                inv[r][c] = inv[r][c].sub(&s2);
            }
        }
    }
    Some(inv)
}

/// Multiply a rational constant matrix into a Laurent-entry matrix.
pub fn qmat_lmat_mul(a: &QMat, b: &LMat) -> LMat {
    let n = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    let nvars = b
        .first()
        .and_then(|r| r.first())
        .map_or(0, |p| p.nvars());
    assert_eq!(a.cols, n, "dimension mismatch");
    (0..a.rows)
        .map(|i| {
            (0..cols)
                .map(|j| {
                    let mut acc = LaurentPoly::zero(nvars);
                    for (k, row) in b.iter().enumerate() {
                        let c = a.at(i, k);
                        if !c.is_zero() {
                            acc = &acc + &row[j].scale(c);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Multiply a Laurent-entry matrix by a rational constant matrix.
pub fn lmat_qmat_mul(a: &LMat, b: &QMat) -> LMat {
    let inner = a.first().map_or(0, |r| r.len());
    let nvars = a
        .first()
        .and_then(|r| r.first())
        .map_or(0, |p| p.nvars());
    assert_eq!(inner, b.rows, "dimension mismatch");
    a.iter()
        .map(|row| {
            (0..b.cols)
                .map(|j| {
                    let mut acc = LaurentPoly::zero(nvars);
                    for (k, p) in row.iter().enumerate() {
                        let c = b.at(k, j);
                        if !c.is_zero() {
                            acc = &acc + &p.scale(c);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Constant matrix viewed over the rational-function field in `nvars`
/// variables.
pub fn qmat_to_rmat(a: &QMat, nvars: usize) -> RMat {
    (0..a.rows)
        .map(|i| {
            (0..a.cols)
                .map(|j| RatFn::from_poly(LaurentPoly::constant(nvars, a.at(i, j).clone())))
                .collect()
        })
        .collect()
}

/// Determinant of the submatrix on the given rows and columns over the
/// rational-function field (Gaussian elimination with pivot search; exact).
pub fn rmat_submatrix_det(m: &RMat, rows: &[usize], cols: &[usize]) -> RatFn {
    assert_eq!(rows.len(), cols.len(), "non-square minor");
    let n = rows.len();
    let nvars = m
        .first()
        .and_then(|r| r.first())
        .map_or(0, |p| p.nvars());
    if n == 0 {
        return RatFn::one(nvars);
    }
    let mut a: Vec<Vec<RatFn>> = rows
        .iter()
        .map(|&r| cols.iter().map(|&c| m[r][c].clone()).collect())
        .collect();
    let mut det = RatFn::one(nvars);
    for col in 0..n {
        let Some(p) = (col..n)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| a[r][col].num.num_terms() + a[r][col].den.num_terms())
        else {
            return RatFn::zero(nvars);
        };
        if p != col {
            a.swap(p, col);
            det = det.neg();
        }
        let pv = a[col][col].clone();
        det = det.mul(&pv);
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].div(&pv);
            for c in col..n {
                let s = factor.mul(&a[col][c]);
                a[r][c] = a[r][c].sub(&s);
            }
        }
    }
    det
}

/// Evaluate a Laurent-entry matrix at a rational point.
pub fn lmat_eval(m: &LMat, point: &[Q]) -> QMat {
    QMat::from_rows(
        m.iter()
            .map(|row| row.iter().map(|p| p.eval(point)).collect())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::qr;

    #[test]
    fn qmat_inverse_and_det() {
        let m = QMat::from_i64(&[vec![2, 1], vec![1, 1]]);
        assert_eq!(m.det(), qi(1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), QMat::identity(2));
        let singular = QMat::from_i64(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(singular.det(), qi(0));
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn qmat_solve_consistent_and_inconsistent() {
        let m = QMat::from_i64(&[vec![1, 2], vec![3, 4]]);
        let x = m.solve(&[qi(5), qi(11)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![qi(5), qi(11)]);
        let sing = QMat::from_i64(&[vec![1, 1], vec![1, 1]]);
        assert!(sing.solve(&[qi(0), qi(1)]).is_none());
        // Underdetermined but consistent.
        let wide = QMat::from_i64(&[vec![1, 1, 1]]);
        let y = wide.solve(&[qi(3)]).unwrap();
        assert_eq!(wide.mul_vec(&y), vec![qi(3)]);
    }

    #[test]
    fn rational_entries_stay_exact() {
        let m = QMat::from_rows(vec![
            vec![qr(1, 3), qr(1, 5)],
            vec![qr(1, 7), qr(1, 11)],
        ]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), QMat::identity(2));
    }

    #[test]
    fn smith_form_diagonalizes_with_divisibility() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]];
        let (u, s, v) = smith_normal_form(&a);
        assert!(imat_is_unimodular(&u));
        assert!(imat_is_unimodular(&v));
        assert_eq!(imat_mul(&imat_mul(&u, &a), &v), s);
        let d: Vec<i64> = (0..3).map(|i| s[i][i]).collect();
        for i in 0..2 {
            assert!(d[i] == 0 || d[i + 1] % d[i] == 0, "chain broken: {d:?}");
        }
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_eq!(s[i][j], 0);
                }
            }
        }
    }

    #[test]
    fn smith_form_detects_torsion_free_cokernel() {
        // Identity-like full-rank map: all invariant factors 1.
        let a = vec![vec![1, 0], vec![0, 1], vec![3, 5]];
        let (_, s, _) = smith_normal_form(&a);
        assert_eq!(s[0][0], 1);
        assert_eq!(s[1][1], 1);
        // A map with torsion: invariant factor 2 shows up.
        let b = vec![vec![2, 0], vec![0, 2]];
        let (_, s2, _) = smith_normal_form(&b);
        assert_eq!(s2[0][0], 2);
        assert_eq!(s2[1][1], 2);
    }

    #[test]
    fn lmat_product_and_det() {
        // [[1, t], [0, 1]] · [[1, 0], [t, 1]] = [[1+t^2, t], [t, 1]].
        let t = LaurentPoly::var(1, 0);
        let one = LaurentPoly::one(1);
        let zero = LaurentPoly::zero(1);
        let a = vec![vec![one.clone(), t.clone()], vec![zero.clone(), one.clone()]];
        let b = vec![vec![one.clone(), zero.clone()], vec![t.clone(), one.clone()]];
        let p = lmat_mul(&a, &b);
        assert_eq!(p[0][1], t);
        assert_eq!(p[1][0], t);
        let d = lmat_det(&p);
        assert!(d.is_one());
        let minor = lmat_submatrix_det(&p, &[0], &[0]);
        assert_eq!(minor.num_terms(), 2);
    }

    #[test]
    fn rmat_inverse_round_trips() {
        let t = LaurentPoly::var(1, 0);
        let one = LaurentPoly::one(1);
        let m = lmat_to_rmat(&vec![
            vec![&one + &t, t.clone()],
            vec![t.clone(), one.clone()],
        ]);
        let inv = rmat_inverse(&m).unwrap();
        let prod = rmat_mul(&m, &inv);
        for i in 0..2 {
            for j in 0..2 {
                let expect = if i == j { RatFn::one(1) } else { RatFn::zero(1) };
                assert_eq!(prod[i][j].sub(&expect).is_zero(), true);
            }
        }
    }
}
