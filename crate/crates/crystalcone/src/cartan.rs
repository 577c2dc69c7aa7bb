//! Cartan matrices, symmetrizers, Weyl-group arithmetic, weights and
//! coweights, the invariant bilinear form, and the duality comparison map.
//!
//! Conventions (fixed once, used by every module):
//! - `cartan[i][j] = ⟨α_j, α_i∨⟩`, so the simple root `α_j` has ω-basis
//!   coordinates equal to **column** `j` of the Cartan matrix.
//! - The symmetrizer `d` is the minimal positive integer vector with
//!   `A·diag(d)` symmetric; with our matrices that puts `d = 1` on long
//!   roots (the invariant form then gives long roots squared length 2).
//! - Weights are integer vectors in the fundamental-weight basis ω_i;
//!   coweights are integer vectors in the fundamental-coweight basis ω_i∨
//!   (the basis of the cocharacter lattice dual to the simple roots).
//! - Reflection words act with the rightmost letter first, i.e. the word
//!   (i_1, …, i_k) denotes the group element s_{i_1}···s_{i_k}.

use crate::error::{CrystalError, Result};
use crate::linalg::QMat;
use crate::num::{q_to_i64, Q};
use num_traits::Zero;

/// Weight in the fundamental-weight basis (ω-coordinates).
pub type Weight = Vec<i64>;

/// Coweight in the fundamental-coweight basis (dual to the simple roots).
pub type Coweight = Vec<i64>;

/// A word in simple-reflection letters `1..=rank`. Reducedness is a property
/// checked by [`is_reduced`], not an invariant of the type.
pub type WeylWord = Vec<usize>;

/// Cartan matrix, symmetrizer, and cached derived data for one finite type.
#[derive(Clone, Debug)]
pub struct CartanDatum {
    /// Family letter: one of A, B, C, D, G.
    pub family: char,
    /// Rank r.
    pub rank: usize,
    /// Cartan matrix with `cartan[i][j] = ⟨α_j, α_i∨⟩`.
    pub cartan: Vec<Vec<i64>>,
    /// Minimal positive integer diagonal `d` with `A·diag(d)` symmetric.
    pub symmetrizer: Vec<i64>,
    gram: QMat,
    cartan_inv: QMat,
}

impl CartanDatum {
    fn from_matrix(family: char, cartan: Vec<Vec<i64>>) -> Result<Self> {
        let rank = cartan.len();
        let symmetrizer = minimal_symmetrizer(&cartan).ok_or_else(|| {
            CrystalError::UnsupportedType(format!(
                "matrix for {family}{rank} admits no positive symmetrizer"
            ))
        })?;
        // Gram matrix of the fundamental weights: (ω_i, ω_j) = ((AD)^{-1})_{ij},
        // normalized so long roots have squared length 2.
        let a = QMat::from_i64(&cartan);
        let mut ad = a.clone();
        for i in 0..rank {
            for j in 0..rank {
                *ad.at_mut(i, j) *= crate::num::qi(symmetrizer[j]);
            }
        }
        let gram = ad
            .inverse()
            .ok_or_else(|| CrystalError::UnsupportedType(format!("{family}{rank} is degenerate")))?;
        let cartan_inv = a
            .inverse()
            .expect("Cartan matrix invertible whenever AD is");
        Ok(CartanDatum {
            family,
            rank,
            cartan,
            symmetrizer,
            gram,
            cartan_inv,
        })
    }

    /// ω-coordinates of the simple root `α_i` (1-based `i`): column `i` of A.
    pub fn simple_root(&self, i: usize) -> Weight {
        assert!((1..=self.rank).contains(&i));
        (0..self.rank).map(|j| self.cartan[j][i - 1]).collect()
    }

    /// The Weyl vector ρ = Σ ω_i.
    pub fn rho(&self) -> Weight {
        vec![1; self.rank]
    }

    /// True iff every ω-coordinate of `γ` is ≥ 0.
    pub fn is_dominant(&self, gamma: &[i64]) -> bool {
        gamma.iter().all(|&c| c >= 0)
    }
}

/// Minimal positive integer `d` with `A·diag(d)` symmetric, found by
/// propagating the ratio constraints `A_ij d_j = A_ji d_i` along the Dynkin
/// graph and clearing denominators. `None` if the constraints conflict.
fn minimal_symmetrizer(a: &[Vec<i64>]) -> Option<Vec<i64>> {
    let n = a.len();
    let mut d: Vec<Option<Q>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(crate::num::q1());
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let di = d[i].clone().unwrap();
            for j in 0..n {
                if i == j || a[i][j] == 0 {
                    continue;
                }
                if a[j][i] == 0 {
                    return None;
                }
                // A_ij d_j = A_ji d_i.
                let dj = &di * &crate::num::qr(a[j][i], a[i][j]);
                if dj <= crate::num::q0() {
                    return None;
                }
                match &d[j] {
                    Some(existing) => {
                        if *existing != dj {
                            return None;
                        }
                    }
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                    }
                }
            }
        }
    }
    // Clear denominators to the minimal integer vector.
    let vals: Vec<Q> = d.into_iter().map(|v| v.unwrap()).collect();
    let lcm_den = vals.iter().fold(num_bigint::BigInt::from(1), |acc, v| {
        num_integer::lcm(acc, v.denom().clone())
    });
    let ints: Vec<num_bigint::BigInt> = vals
        .iter()
        .map(|v| v.numer() * &lcm_den / v.denom())
        .collect();
    let gcd = ints
        .iter()
        .fold(num_bigint::BigInt::from(0), |acc, v| num_integer::gcd(acc, v.clone()));
    let out: Vec<i64> = ints
        .iter()
        .map(|v| {
            let reduced = v / &gcd;
            i64::try_from(&reduced).expect("symmetrizer fits i64")
        })
        .collect();
    // Verify the result actually symmetrizes.
    for i in 0..n {
        for j in 0..n {
            if a[i][j] * out[j] != a[j][i] * out[i] {
                return None;
            }
        }
    }
    Some(out)
}

/// Build the Cartan datum for a finite family/rank pair.
pub fn build_cartan(family: char, rank: usize) -> Result<CartanDatum> {
    let bad = || {
        CrystalError::UnsupportedType(format!(
            "no supported type {family}{rank}; supported: A_n (n≥1), B_n/C_n (n≥2), D_n (n≥3), G_2"
        ))
    };
    let mut a = vec![vec![0i64; rank]; rank];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let chain = |a: &mut Vec<Vec<i64>>, lo: usize, hi: usize| {
        for i in lo..hi {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
    };
    match (family, rank) {
        ('A', r) if r >= 1 => chain(&mut a, 0, rank - 1),
        ('C', r) if r >= 2 => {
            // Bourbaki numbering: the unique long root last.
            chain(&mut a, 0, rank - 1);
            a[rank - 2][rank - 1] = -2;
        }
        ('B', r) if r >= 2 => {
            // Bourbaki numbering: the unique short root last.
            chain(&mut a, 0, rank - 1);
            a[rank - 1][rank - 2] = -2;
        }
        ('D', r) if r >= 3 => {
            chain(&mut a, 0, rank - 3);
            a[rank - 3][rank - 1] = -1;
            a[rank - 1][rank - 3] = -1;
        }
        ('G', 2) => {
            // Bourbaki numbering: α_1 short, α_2 long.
            a[0][1] = -3;
            a[1][0] = -1;
        }
        _ => return Err(bad()),
    }
    CartanDatum::from_matrix(family, a)
}

/// The Langlands-dual datum: transposed Cartan matrix, recomputed minimal
/// symmetrizer, and the matching family letter (A↔A, B↔C, D↔D, G↔G).
pub fn dual_datum(datum: &CartanDatum) -> CartanDatum {
    let n = datum.rank;
    let mut t = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            t[i][j] = datum.cartan[j][i];
        }
    }
    let family = match datum.family {
        'B' => 'C',
        'C' => 'B',
        other => other,
    };
    CartanDatum::from_matrix(family, t).expect("transpose of a valid datum is valid")
}

/// Apply one simple reflection (1-based `i`) to a weight in ω-coordinates:
/// `s_i(γ) = γ − γ_i α_i`.
pub fn simple_reflect(datum: &CartanDatum, i: usize, gamma: &[i64]) -> Result<Weight> {
    if !(1..=datum.rank).contains(&i) {
        return Err(CrystalError::BadIndex(format!(
            "reflection index {i} out of range 1..={}",
            datum.rank
        )));
    }
    let gi = gamma[i - 1];
    Ok(gamma
        .iter()
        .enumerate()
        .map(|(j, &g)| g - gi * datum.cartan[j][i - 1])
        .collect())
}

/// Apply a reflection word to a weight; the word (i_1,…,i_k) denotes
/// s_{i_1}···s_{i_k}, so the rightmost letter acts first.
pub fn weyl_act(datum: &CartanDatum, word: &[usize], gamma: &[i64]) -> Result<Weight> {
    let mut g = gamma.to_vec();
    for &i in word.iter().rev() {
        g = simple_reflect(datum, i, &g)?;
    }
    Ok(g)
}

/// Integer matrix of the word's action on ω-coordinates (γ ↦ M·γ).
pub fn word_matrix(datum: &CartanDatum, word: &[usize]) -> Result<Vec<Vec<i64>>> {
    let r = datum.rank;
    let mut cols = Vec::with_capacity(r);
    for i in 0..r {
        let mut e = vec![0i64; r];
        e[i] = 1;
        cols.push(weyl_act(datum, word, &e)?);
    }
    let mut m = vec![vec![0i64; r]; r];
    for (j, col) in cols.iter().enumerate() {
        for i in 0..r {
            m[i][j] = col[i];
        }
    }
    Ok(m)
}

/// α-basis coordinates of a weight given in ω-coordinates (rational).
pub(crate) fn omega_to_alpha(datum: &CartanDatum, gamma: &[i64]) -> Vec<Q> {
    let v: Vec<Q> = gamma.iter().map(|&c| crate::num::qi(c)).collect();
    datum.cartan_inv.mul_vec(&v)
}

/// True iff the weight is a positive root-lattice element in α-coordinates
/// (all coordinates ≥ 0, at least one > 0).
fn is_positive_in_alpha(coords: &[Q]) -> bool {
    coords.iter().all(|c| *c >= crate::num::q0()) && coords.iter().any(|c| !c.is_zero())
}

/// Length of the Weyl element represented by the (not necessarily reduced)
/// word, computed from the inversion count of its matrix.
pub fn word_length(datum: &CartanDatum, word: &[usize]) -> Result<usize> {
    let roots = positive_roots(datum)?;
    let m = word_matrix(datum, word)?;
    let mut inv = 0;
    for root in &roots {
        let image: Vec<i64> = (0..datum.rank)
            .map(|i| {
                (0..datum.rank)
                    .map(|j| m[i][j] * root.root_omega[j])
                    .sum()
            })
            .collect();
        let alpha = omega_to_alpha(datum, &image);
        if !is_positive_in_alpha(&alpha) {
            inv += 1;
        }
    }
    Ok(inv)
}

/// True iff the word is reduced (its length equals the element's length).
pub fn is_reduced(datum: &CartanDatum, word: &[usize]) -> Result<bool> {
    Ok(word_length(datum, word)? == word.len())
}

/// The lexicographically least reduced word for the longest element w0,
/// built greedily: at each step append the smallest letter that lengthens
/// the element (equivalently, whose simple root stays positive).
pub fn longest_word(datum: &CartanDatum) -> WeylWord {
    let r = datum.rank;
    // Track the element as its ω-coordinate matrix, extended on the right.
    let mut m: Vec<Vec<i64>> = (0..r)
        .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut word = Vec::new();
    'outer: loop {
        for i in 1..=r {
            // w(α_i) in ω-coordinates = M · (column i of A).
            let image: Vec<i64> = (0..r)
                .map(|row| {
                    (0..r)
                        .map(|k| m[row][k] * datum.cartan[k][i - 1])
                        .sum()
                })
                .collect();
            let alpha = omega_to_alpha(datum, &image);
            if is_positive_in_alpha(&alpha) {
                word.push(i);
                // m ← m · S_i  (append the reflection on the right).
                let mut next = vec![vec![0i64; r]; r];
                for row in 0..r {
                    for col in 0..r {
                        // S_i columns: e_col − δ_{col,i−1}·α_i.
                        next[row][col] = m[row][col]
                            - if col == i - 1 {
                                (0..r)
                                    .map(|k| m[row][k] * datum.cartan[k][i - 1])
                                    .sum::<i64>()
                            } else {
                                0
                            };
                    }
                }
                m = next;
                continue 'outer;
            }
        }
        return word;
    }
}

/// The invariant bilinear form on weights, normalized so long roots have
/// squared length 2: `(γ, δ) = γᵀ (A·diag(d))^{-1} δ` in ω-coordinates.
pub fn bilinear_weights(datum: &CartanDatum, gamma: &[i64], delta: &[i64]) -> Q {
    let gv: Vec<Q> = gamma.iter().map(|&c| crate::num::qi(c)).collect();
    let dv: Vec<Q> = delta.iter().map(|&c| crate::num::qi(c)).collect();
    let gd = datum.gram.mul_vec(&dv);
    gv.iter().zip(&gd).fold(crate::num::q0(), |acc, (a, b)| acc + a * b)
}

/// The comparison map of the duality: the linear extension of
/// `α_i∨ ↦ d_i α_i`. In the fundamental bases (coweights in, weights out)
/// its matrix is exactly `diag(d)`, i.e. `ω_i∨ ↦ d_i ω_i`.
pub fn comparison_psi(datum: &CartanDatum, x: &[i64]) -> Weight {
    assert_eq!(x.len(), datum.rank);
    x.iter()
        .zip(&datum.symmetrizer)
        .map(|(&c, &d)| c * d)
        .collect()
}

/// A positive root with its coordinates in several bases, plus its coroot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosRoot {
    /// ω-basis coordinates of the root.
    pub root_omega: Weight,
    /// α-basis coordinates of the root (all ≥ 0).
    pub root_alpha: Vec<i64>,
    /// Coroot in the simple-coroot basis: α∨ = Σ c_k α_k∨.
    pub coroot_simple: Vec<i64>,
    /// Coroot in the fundamental-coweight basis (the `Coweight` convention).
    pub coroot: Coweight,
}

/// All positive roots, generated as the closure of the simple roots under
/// simple reflections. The count always equals ℓ(w0).
pub fn positive_roots(datum: &CartanDatum) -> Result<Vec<PosRoot>> {
    let r = datum.rank;
    // Work in α-coordinates; s_i(β) = β − (row i of A · β) e_i.
    let mut seen: Vec<Vec<i64>> = (0..r)
        .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut frontier = seen.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for beta in &frontier {
            for i in 0..r {
                let pairing: i64 = (0..r).map(|j| datum.cartan[i][j] * beta[j]).sum();
                let mut image = beta.clone();
                image[i] -= pairing;
                if image.iter().all(|&c| c >= 0)
                    && image.iter().any(|&c| c > 0)
                    && !seen.contains(&image)
                {
                    seen.push(image.clone());
                    next.push(image);
                }
            }
        }
        frontier = next;
    }
    seen.sort();
    let mut out = Vec::with_capacity(seen.len());
    for alpha in seen {
        // Root in ω-coordinates: A · α-coords.
        let root_omega: Weight = (0..r)
            .map(|i| (0..r).map(|j| datum.cartan[i][j] * alpha[j]).sum())
            .collect();
        // Squared length (α, α) = Σ_{k,l} c_k c_l A_{kl}/d_k.
        let mut len2 = crate::num::q0();
        for k in 0..r {
            for l in 0..r {
                len2 += crate::num::qr(alpha[k] * datum.cartan[k][l] * alpha[l], datum.symmetrizer[k]);
            }
        }
        // α∨ = (2/(α,α)) Σ_k (c_k/d_k) α_k∨.
        let coroot_simple: Vec<i64> = (0..r)
            .map(|k| {
                let v = crate::num::qr(2 * alpha[k], datum.symmetrizer[k]) / len2.clone();
                q_to_i64(&v)
            })
            .collect();
        // Fundamental-coweight coordinates: ⟨α_i, α∨⟩ = Σ_j c_j∨ A[j][i].
        let coroot: Coweight = (0..r)
            .map(|i| (0..r).map(|j| coroot_simple[j] * datum.cartan[j][i]).sum())
            .collect();
        out.push(PosRoot {
            root_omega,
            root_alpha: alpha,
            coroot_simple,
            coroot,
        });
    }
    Ok(out)
}

/// The involution `i ↦ i*` defined by `w0(ω_i) = −ω_{i*}`, returned as a
/// 0-based index map.
pub fn dynkin_involution(datum: &CartanDatum) -> Vec<usize> {
    let w0 = longest_word(datum);
    let m = word_matrix(datum, &w0).expect("longest word is valid");
    let r = datum.rank;
    (0..r)
        .map(|i| {
            let j = (0..r)
                .find(|&j| m[j][i] == -1 && (0..r).all(|k| k == j || m[k][i] == 0))
                .expect("w0 permutes fundamental weights up to sign");
            j
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{qi, qr};
    use rand::{Rng, SeedableRng};

    #[test]
    fn cartan_matrices_match_conventions() {
        let a2 = build_cartan('A', 2).unwrap();
        assert_eq!(a2.cartan, vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(a2.symmetrizer, vec![1, 1]);
        let a1 = build_cartan('A', 1).unwrap();
        assert_eq!(a1.cartan, vec![vec![2]]);
        let c2 = build_cartan('C', 2).unwrap();
        assert_eq!(c2.cartan, vec![vec![2, -2], vec![-1, 2]]);
        assert_eq!(c2.symmetrizer, vec![2, 1]);
        let b2 = build_cartan('B', 2).unwrap();
        assert_eq!(b2.cartan, vec![vec![2, -1], vec![-2, 2]]);
        assert_eq!(b2.symmetrizer, vec![1, 2]);
        let g2 = build_cartan('G', 2).unwrap();
        assert_eq!(g2.cartan, vec![vec![2, -3], vec![-1, 2]]);
        assert_eq!(g2.symmetrizer, vec![3, 1]);
        let c3 = build_cartan('C', 3).unwrap();
        assert_eq!(
            c3.cartan,
            vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]]
        );
        assert_eq!(c3.symmetrizer, vec![2, 2, 1]);
        let b3 = build_cartan('B', 3).unwrap();
        assert_eq!(
            b3.cartan,
            vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]]
        );
        assert_eq!(b3.symmetrizer, vec![1, 1, 2]);
        assert!(build_cartan('E', 8).is_err());
        assert!(build_cartan('B', 1).is_err());
    }

    #[test]
    fn symmetrizer_is_minimal_and_symmetrizes() {
        for (f, r) in [
            ('A', 1),
            ('A', 3),
            ('B', 2),
            ('B', 3),
            ('C', 2),
            ('C', 3),
            ('D', 3),
            ('D', 4),
            ('G', 2),
        ] {
            let d = build_cartan(f, r).unwrap();
            for i in 0..r {
                for j in 0..r {
                    assert_eq!(
                        d.cartan[i][j] * d.symmetrizer[j],
                        d.cartan[j][i] * d.symmetrizer[i],
                        "{f}{r} not symmetrized at ({i},{j})"
                    );
                }
            }
            let gcd = d.symmetrizer.iter().fold(0i64, |acc, &v| {
                num_integer::gcd(acc, v)
            });
            assert_eq!(gcd, 1, "{f}{r} symmetrizer not minimal");
        }
    }

    #[test]
    fn reflections_match_hand_values() {
        let a1 = build_cartan('A', 1).unwrap();
        assert_eq!(weyl_act(&a1, &[1], &[1]).unwrap(), vec![-1]);
        let a2 = build_cartan('A', 2).unwrap();
        assert_eq!(weyl_act(&a2, &[2], &[0, 1]).unwrap(), vec![1, -1]);
        assert_eq!(weyl_act(&a2, &[], &[3, 5]).unwrap(), vec![3, 5]);
        assert!(weyl_act(&a2, &[3], &[0, 0]).is_err());
    }

    #[test]
    fn reflections_are_involutions() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for (f, r) in [('A', 3), ('C', 2), ('G', 2), ('B', 3)] {
            let d = build_cartan(f, r).unwrap();
            for _ in 0..50 {
                let gamma: Vec<i64> = (0..r).map(|_| rng.gen_range(-5..=5)).collect();
                let i = rng.gen_range(1..=r);
                let twice = weyl_act(&d, &[i, i], &gamma).unwrap();
                assert_eq!(twice, gamma);
            }
        }
    }

    #[test]
    fn longest_words_are_canonical() {
        let cases = [
            ('A', 1, vec![1]),
            ('A', 2, vec![1, 2, 1]),
            ('A', 3, vec![1, 2, 1, 3, 2, 1]),
            ('C', 2, vec![1, 2, 1, 2]),
            ('B', 2, vec![1, 2, 1, 2]),
            ('G', 2, vec![1, 2, 1, 2, 1, 2]),
        ];
        for (f, r, expect) in cases {
            let d = build_cartan(f, r).unwrap();
            let w0 = longest_word(&d);
            assert_eq!(w0, expect, "{f}{r}");
            assert_eq!(w0.len(), positive_roots(&d).unwrap().len());
            assert!(is_reduced(&d, &w0).unwrap());
            // w0 sends every simple root negative.
            for i in 1..=r {
                let img = weyl_act(&d, &w0, &d.simple_root(i)).unwrap();
                let alpha = omega_to_alpha(&d, &img);
                assert!(!is_positive_in_alpha(&alpha));
            }
        }
    }

    #[test]
    fn non_reduced_words_are_detected() {
        let a2 = build_cartan('A', 2).unwrap();
        assert!(!is_reduced(&a2, &[1, 1]).unwrap());
        assert!(is_reduced(&a2, &[1, 2]).unwrap());
        assert!(is_reduced(&a2, &[2, 1, 2]).unwrap());
        assert!(!is_reduced(&a2, &[1, 2, 1, 2]).unwrap());
    }

    #[test]
    fn bilinear_form_values() {
        let a1 = build_cartan('A', 1).unwrap();
        assert_eq!(bilinear_weights(&a1, &[1], &[1]), qr(1, 2));
        let a2 = build_cartan('A', 2).unwrap();
        assert_eq!(bilinear_weights(&a2, &[1, 0], &[0, 1]), qr(1, 3));
        assert_eq!(bilinear_weights(&a2, &[1, 0], &[1, 0]), qr(2, 3));
        // Long roots squared length 2, short per the symmetrizer.
        let c2 = build_cartan('C', 2).unwrap();
        let a1r = c2.simple_root(1);
        let a2r = c2.simple_root(2);
        assert_eq!(bilinear_weights(&c2, &a1r, &a1r), qi(1));
        assert_eq!(bilinear_weights(&c2, &a2r, &a2r), qi(2));
        // (ω_i, α_j) = δ_ij/d_i.
        assert_eq!(bilinear_weights(&c2, &[1, 0], &a1r), qr(1, 2));
        assert_eq!(bilinear_weights(&c2, &[0, 1], &a2r), qi(1));
        assert_eq!(bilinear_weights(&c2, &[1, 0], &a2r), qi(0));
    }

    #[test]
    fn bilinear_form_is_weyl_invariant() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for (f, r) in [('A', 3), ('C', 2), ('G', 2)] {
            let d = build_cartan(f, r).unwrap();
            for _ in 0..70 {
                let g: Vec<i64> = (0..r).map(|_| rng.gen_range(-4..=4)).collect();
                let h: Vec<i64> = (0..r).map(|_| rng.gen_range(-4..=4)).collect();
                let wlen = rng.gen_range(0..6);
                let w: Vec<usize> = (0..wlen).map(|_| rng.gen_range(1..=r)).collect();
                let wg = weyl_act(&d, &w, &g).unwrap();
                let wh = weyl_act(&d, &w, &h).unwrap();
                assert_eq!(bilinear_weights(&d, &wg, &wh), bilinear_weights(&d, &g, &h));
            }
        }
    }

    #[test]
    fn comparison_psi_sends_coroots_to_scaled_roots() {
        // α_i∨ has fundamental-coweight coordinates = row i of A; its image
        // must be d_i α_i in ω-coordinates.
        for (f, r) in [('A', 1), ('A', 2), ('C', 2), ('G', 2)] {
            let d = build_cartan(f, r).unwrap();
            for i in 0..r {
                let coroot_coords: Vec<i64> = (0..r).map(|j| d.cartan[i][j]).collect();
                let image = comparison_psi(&d, &coroot_coords);
                let expect: Vec<i64> = (0..r)
                    .map(|j| d.symmetrizer[i] * d.cartan[j][i])
                    .collect();
                assert_eq!(image, expect, "{f}{r} root {i}");
            }
        }
    }

    #[test]
    fn positive_root_systems() {
        let a2 = build_cartan('A', 2).unwrap();
        let roots = positive_roots(&a2).unwrap();
        assert_eq!(roots.len(), 3);
        let alphas: Vec<Vec<i64>> = roots.iter().map(|r| r.root_alpha.clone()).collect();
        assert!(alphas.contains(&vec![1, 0]));
        assert!(alphas.contains(&vec![0, 1]));
        assert!(alphas.contains(&vec![1, 1]));
        let c2 = build_cartan('C', 2).unwrap();
        assert_eq!(positive_roots(&c2).unwrap().len(), 4);
        let g2 = build_cartan('G', 2).unwrap();
        assert_eq!(positive_roots(&g2).unwrap().len(), 6);
        let b3 = build_cartan('B', 3).unwrap();
        assert_eq!(positive_roots(&b3).unwrap().len(), 9);
    }

    #[test]
    fn coroots_pair_correctly() {
        // ⟨α, α∨⟩ = 2 for every positive root, in every type.
        for (f, r) in [('A', 3), ('B', 2), ('C', 3), ('G', 2), ('D', 4)] {
            let d = build_cartan(f, r).unwrap();
            for root in positive_roots(&d).unwrap() {
                let pair: i64 = root
                    .root_omega
                    .iter()
                    .zip(&root.coroot_simple)
                    .map(|(a, b)| a * b)
                    .sum();
                assert_eq!(pair, 2, "{f}{r} root {:?}", root.root_alpha);
            }
        }
        // Hand values: in C2 the short root α_1+α_2 has the long coroot
        // α_1∨ + 2α_2∨, while in B2 the short α_1+α_2 gives 2α_1∨ + α_2∨.
        let c2 = build_cartan('C', 2).unwrap();
        let sum_root = positive_roots(&c2)
            .unwrap()
            .into_iter()
            .find(|r| r.root_alpha == vec![1, 1])
            .unwrap();
        assert_eq!(sum_root.coroot_simple, vec![1, 2]);
        let b2 = build_cartan('B', 2).unwrap();
        let sum_root = positive_roots(&b2)
            .unwrap()
            .into_iter()
            .find(|r| r.root_alpha == vec![1, 1])
            .unwrap();
        assert_eq!(sum_root.coroot_simple, vec![2, 1]);
    }

    #[test]
    fn dynkin_involution_matches_known_types() {
        let a2 = build_cartan('A', 2).unwrap();
        assert_eq!(dynkin_involution(&a2), vec![1, 0]);
        let a3 = build_cartan('A', 3).unwrap();
        assert_eq!(dynkin_involution(&a3), vec![2, 1, 0]);
        let a1 = build_cartan('A', 1).unwrap();
        assert_eq!(dynkin_involution(&a1), vec![0]);
        let c2 = build_cartan('C', 2).unwrap();
        assert_eq!(dynkin_involution(&c2), vec![0, 1]);
        let g2 = build_cartan('G', 2).unwrap();
        assert_eq!(dynkin_involution(&g2), vec![0, 1]);
    }

    #[test]
    fn dual_datum_transposes_and_relabels() {
        let c2 = build_cartan('C', 2).unwrap();
        let dual = dual_datum(&c2);
        assert_eq!(dual.family, 'B');
        assert_eq!(dual.cartan, build_cartan('B', 2).unwrap().cartan);
        assert_eq!(dual.symmetrizer, vec![1, 2]);
        let a2 = build_cartan('A', 2).unwrap();
        assert_eq!(dual_datum(&a2).cartan, a2.cartan);
        let g2 = build_cartan('G', 2).unwrap();
        let gdual = dual_datum(&g2);
        assert_eq!(gdual.cartan, vec![vec![2, -1], vec![-3, 2]]);
        assert_eq!(gdual.symmetrizer, vec![1, 3]);
        let c3 = build_cartan('C', 3).unwrap();
        assert_eq!(dual_datum(&c3).cartan, build_cartan('B', 3).unwrap().cartan);
    }

    #[test]
    fn word_length_counts_inversions() {
        let a2 = build_cartan('A', 2).unwrap();
        assert_eq!(word_length(&a2, &[]).unwrap(), 0);
        assert_eq!(word_length(&a2, &[1]).unwrap(), 1);
        assert_eq!(word_length(&a2, &[1, 2, 1]).unwrap(), 3);
        assert_eq!(word_length(&a2, &[1, 2, 1, 2]).unwrap(), 2);
    }
}
