//! The constant Poisson structure π₋∞ of the partial tropicalization:
//! exact bracket coefficients computed from cluster-variable degrees, the
//! closed-form brackets of the special (initial seed) chart, and the
//! triangular normalization producing Darboux coordinates with explicit
//! Casimirs.
//!
//! Coordinates on the partially tropicalized cell are the tropical
//! moduli λ_j (one per seed index j ∈ [−r,−1] ∪ [1,m], i_set order) and
//! the angles φ_k (one per word position k ∈ [1,m]).  The λλ and φφ
//! blocks of the bracket vanish identically; all content sits in the
//! (r+m)×m block {λ_j, φ_k}, which is an exact rational matrix.
//!
//! Every bracket coefficient here is the *imaginary part* of a value in
//! √−1·ℚ; storing imaginary parts keeps the whole module in exact
//! rational arithmetic.

use crate::cartan::{bilinear_weights, weyl_act, CartanDatum};
use crate::cluster::Seed;
use crate::error::{CrystalError, Result};
use crate::linalg::{imat_det, imat_inverse_unimodular};
use crate::num::{q0, q1, qi, qr, Q};

/// Index bookkeeping shared by the λ-side objects: the seed index set
/// [−r..−1, 1..m] in i_set order.
fn index_set(r: usize, m: usize) -> Vec<i64> {
    let mut set: Vec<i64> = (-(r as i64)..0).collect();
    set.extend(1..=m as i64);
    set
}

fn index_pos(r: usize, j: i64) -> usize {
    if j < 0 {
        (r as i64 + j) as usize
    } else {
        r + j as usize - 1
    }
}

/// The {λ, φ} block of π₋∞ on a chart: rows over the λ-indices
/// [−r..−1, 1..m], columns over the angle positions [1..m], exact
/// rational entries.  The λλ and φφ blocks are identically zero, recorded
/// structurally rather than as stored zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PTBracketMatrix {
    rank: usize,
    index_set: Vec<i64>,
    entries: Vec<Vec<Q>>,
    diagonal_blocks_zero: bool,
}

impl PTBracketMatrix {
    /// λ-row indices, in i_set order.
    pub fn index_set(&self) -> &[i64] {
        &self.index_set
    }

    /// Number of angle columns (the word length m).
    pub fn ncols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    /// All rows in i_set order.
    pub fn entries(&self) -> &[Vec<Q>] {
        &self.entries
    }

    /// {λ_j, φ_k} for a λ-index j and a 1-based angle position k.
    pub fn entry(&self, j: i64, k: usize) -> &Q {
        &self.entries[index_pos(self.rank, j)][k - 1]
    }

    /// Structural flag: {λ_i,λ_j} = {φ_i,φ_j} = 0 identically.
    pub fn diagonal_blocks_zero(&self) -> bool {
        self.diagonal_blocks_zero
    }
}

/// Imaginary parts of the log-canonical coefficients c_{z_i,z_j} and
/// c_{z_i,z̄_j} on the initial seed chart, as two (r+m)×(r+m) matrices in
/// i_set order.  With Δ_{ij} = (deg₁ᵢ, deg₁ⱼ) − (deg₂ᵢ, deg₂ⱼ) built
/// from the bidegrees of the seed variables:
///
/// * Im c_{z_i,z̄_j} = ½·Δ_{ij} for every pair,
/// * Im c_{z_i,z_j} = −½·Δ_{ij} for i before j, extended antisymmetrically
///   with zero diagonal.
///
/// Charts other than the initial seed (nonempty mutation history) are
/// outside the closed formula's scope.
pub fn c_coefficients(seed: &Seed) -> Result<(Vec<Vec<Q>>, Vec<Vec<Q>>)> {
    if !seed.history().is_empty() {
        return Err(CrystalError::ChartUnsupported(
            "log-canonical coefficients are computed on the initial seed chart".into(),
        ));
    }
    let datum = seed.datum();
    let idx = seed.index_set().to_vec();
    let n = idx.len();
    let half = qr(1, 2);
    let degs: Vec<&(Vec<i64>, Vec<i64>)> = idx.iter().map(|&k| seed.degree(k)).collect();
    let mut zz = vec![vec![q0(); n]; n];
    let mut zzbar = vec![vec![q0(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let delta = bilinear_weights(datum, &degs[i].0, &degs[j].0)
                - bilinear_weights(datum, &degs[i].1, &degs[j].1);
            zzbar[i][j] = half.clone() * delta.clone();
            zz[i][j] = match i.cmp(&j) {
                std::cmp::Ordering::Less => -half.clone() * delta,
                std::cmp::Ordering::Equal => q0(),
                std::cmp::Ordering::Greater => half.clone() * delta,
            };
        }
    }
    Ok((zz, zzbar))
}

/// π₋∞ on the initial seed chart from the log-canonical coefficients:
/// {λ_i, φ_j} = Im c_{z_i,z_j} − Im c_{z_i,z̄_j}, restricted to the angle
/// columns (word positions).
pub fn pt_bracket_matrix(seed: &Seed) -> Result<PTBracketMatrix> {
    let (zz, zzbar) = c_coefficients(seed)?;
    let r = seed.datum().rank;
    let m = seed.word().len();
    let entries: Vec<Vec<Q>> = (0..r + m)
        .map(|i| {
            (0..m)
                .map(|k| zz[i][r + k].clone() - zzbar[i][r + k].clone())
                .collect()
        })
        .collect();
    Ok(PTBracketMatrix {
        rank: r,
        index_set: index_set(r, m),
        entries,
        diagonal_blocks_zero: true,
    })
}

/// The closed form of π₋∞ on the initial seed chart of a reduced word:
///
///   {λ_j, φ_k} = (ω_{i_j}, ω_{i_k}) − (ω_{i_j}, s_{i_{j+1}}···s_{i_k} ω_{i_k})
///
/// for j < k, and 0 for j ≥ k.  For a frozen row j = −i the weight is
/// ω_i and the reflection product runs over all positions 1..k.  Rows at
/// the last occurrence of each letter come out identically zero — those
/// λ's are the Casimirs.
pub fn special_chart_brackets(datum: &CartanDatum, word: &[usize]) -> Result<PTBracketMatrix> {
    let r = datum.rank;
    let m = word.len();
    let idx = index_set(r, m);
    let mut entries = vec![vec![q0(); m]; r + m];
    for (row, &j) in idx.iter().enumerate() {
        let (letter, start) = if j < 0 {
            ((-j) as usize, 0usize)
        } else {
            (word[j as usize - 1], j as usize)
        };
        let mut omega_j = vec![0i64; r];
        omega_j[letter - 1] = 1;
        for k in (start + 1)..=m {
            let mut omega_k = vec![0i64; r];
            omega_k[word[k - 1] - 1] = 1;
            let acted = weyl_act(datum, &word[start..k], &omega_k)?;
            entries[row][k - 1] = bilinear_weights(datum, &omega_j, &omega_k)
                - bilinear_weights(datum, &omega_j, &acted);
        }
    }
    Ok(PTBracketMatrix {
        rank: r,
        index_set: idx,
        entries,
        diagonal_blocks_zero: true,
    })
}

/// The triangular data normalizing π₋∞ to canonical form on the initial
/// seed chart of `word`:
///
/// * `x` — the diagonal of X = diag(d_{|i_1|}, …, d_{|i_m|});
/// * `y` — Y = X·B, upper-triangular unimodular with nonnegative entries
///   and unit diagonal, where B[j][k] = {λ_{j⁻}, φ_k} and j⁻ is the
///   previous occurrence of the letter i_j (or the frozen index −i_j);
/// * `c_phi` — Y⁻¹, the unimodular change on the angle side;
/// * `n` — the m×(r+m) integer matrix of the new action coordinates over
///   the λ's in i_set order: x_j = d_{|i_j|}·(λ_{j⁻} − λ_{last(i_j)}).
///
/// In the coordinates x_j and υ_l = Σ_k c_phi[k][l]·φ_k the bracket is
/// exactly {x_j, υ_l} = δ_{jl}, and the r Casimir rows (returned by
/// [`DarbouxChange::casimir_rows`]) complete the canonical block form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DarbouxChange {
    x: Vec<i64>,
    y: Vec<Vec<i64>>,
    c_phi: Vec<Vec<i64>>,
    n: Vec<Vec<i64>>,
    casimirs: Vec<Vec<i64>>,
}

impl DarbouxChange {
    pub fn x_diag(&self) -> &[i64] {
        &self.x
    }

    pub fn y(&self) -> &[Vec<i64>] {
        &self.y
    }

    pub fn c_phi(&self) -> &[Vec<i64>] {
        &self.c_phi
    }

    /// Rows of the action coordinates x_j over the λ-coordinates.
    pub fn n_shift(&self) -> &[Vec<i64>] {
        &self.n
    }

    /// Rows of the Casimir coordinates x_{−j} = ⟨X_j, hw^PT⟩ =
    /// −d_j·λ_{last(j*)} over the λ-coordinates: these Poisson-commute
    /// with every angle.
    pub fn casimir_rows(&self) -> &[Vec<i64>] {
        &self.casimirs
    }
}

/// Factor the special-chart brackets as B = X⁻¹·Y per the normalization
/// theorem and assemble the full Darboux change.  Panics if the computed
/// Y fails integrality, triangularity, nonnegativity, or unimodularity —
/// each of those is a theorem, so a failure signals an implementation
/// inconsistency rather than bad input.
pub fn triangular_normalization(datum: &CartanDatum, word: &[usize]) -> Result<DarbouxChange> {
    let r = datum.rank;
    let m = word.len();
    let special = special_chart_brackets(datum, word)?;
    let prev = |j: usize| -> i64 {
        (1..j)
            .rev()
            .find(|&l| word[l - 1] == word[j - 1])
            .map_or(-(word[j - 1] as i64), |l| l as i64)
    };
    let last = |i: usize| -> usize {
        (1..=m)
            .rev()
            .find(|&l| word[l - 1] == i)
            .expect("every letter occurs in a reduced word of w0")
    };
    let x: Vec<i64> = word.iter().map(|&i| datum.symmetrizer[i - 1]).collect();
    let mut y = vec![vec![0i64; m]; m];
    for j in 1..=m {
        for k in 1..=m {
            let v = qi(x[j - 1]) * special.entry(prev(j), k).clone();
            assert!(
                v.is_integer(),
                "X·B must be integral on a special chart (position {j}, {k})"
            );
            y[j - 1][k - 1] = crate::num::q_to_i64(&v);
            if k < j {
                assert_eq!(y[j - 1][k - 1], 0, "Y must be upper triangular");
            }
            if k == j {
                assert_eq!(y[j - 1][k - 1], 1, "Y must have unit diagonal");
            }
            assert!(y[j - 1][k - 1] >= 0, "Y must have nonnegative entries");
        }
    }
    assert_eq!(imat_det(&y).abs(), 1, "Y must be unimodular");
    let c_phi = imat_inverse_unimodular(&y).expect("unimodular Y has an integer inverse");
    let dynkin = crate::cartan::dynkin_involution(datum);
    let n: Vec<Vec<i64>> = (1..=m)
        .map(|j| {
            let mut row = vec![0i64; r + m];
            let d = x[j - 1];
            row[index_pos(r, prev(j))] += d;
            row[index_pos(r, last(word[j - 1]) as i64)] -= d;
            row
        })
        .collect();
    let casimirs: Vec<Vec<i64>> = (1..=r)
        .map(|i| {
            let mut row = vec![0i64; r + m];
            row[index_pos(r, last(dynkin[i - 1] + 1) as i64)] = -datum.symmetrizer[i - 1];
            row
        })
        .collect();
    Ok(DarbouxChange {
        x,
        y,
        c_phi,
        n,
        casimirs,
    })
}

/// The Darboux change for a seed's chart, verified: the transformed
/// bracket matrix is checked to be exactly canonical ({x_j, υ_l} = δ_{jl}
/// and Casimir rows zero) before returning.  Charts reached by mutation
/// are not covered by the closed formulas and are rejected.
pub fn darboux_coordinates(seed: &Seed) -> Result<DarbouxChange> {
    if !seed.history().is_empty() {
        return Err(CrystalError::ChartUnsupported(
            "Darboux normalization is computed on the initial seed chart".into(),
        ));
    }
    let datum = seed.datum();
    let word = seed.word().to_vec();
    let change = triangular_normalization(datum, &word)?;
    let bracket = pt_bracket_matrix(seed)?;
    let m = word.len();
    let r = datum.rank;
    // {x_j, υ_l} = Σ_{p,k} n[j][p]·{λ_p, φ_k}·c_phi[k][l] must be δ_{jl};
    // the same contraction with the Casimir rows must vanish.
    for (rows, want_identity) in [(change.n_shift(), true), (change.casimir_rows(), false)] {
        for (j, row) in rows.iter().enumerate() {
            for l in 0..m {
                let mut v = q0();
                for p in 0..r + m {
                    for k in 0..m {
                        v = v + qi(row[p]) * bracket.entries()[p][k].clone()
                            * qi(change.c_phi()[k][l]);
                    }
                }
                let want = if want_identity && j == l { q1() } else { q0() };
                assert_eq!(v, want, "canonical bracket failed at ({j}, {l})");
            }
        }
    }
    Ok(change)
}
