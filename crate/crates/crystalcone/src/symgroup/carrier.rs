//! Matrix carriers: faithful representations in which the minor calculus runs.
//!
//! Every generalized minor Δ_{uω_i, vω_i} is computed as an honest determinant
//! inside one fixed representation per Cartan datum.  The representation is
//! chosen with a *weight-sorted* ordered basis so that for each fundamental
//! weight ω_i the extremal weight space of Λ^{k_i} V with weight ω_i is spanned
//! by e_1 ∧ … ∧ e_{k_i}; then Δ_{ω_i}(g) is the leading principal k_i × k_i
//! minor of g, and Δ_{uω_i, vω_i}(g) = Δ_{ω_i}(ū^{-1} g v̄) for any reduced
//! lifts ū, v̄ of the Weyl group elements.
//!
//! Supported carriers:
//!   * A_n — the defining representation of SL(n+1);
//!   * C2  — the defining 4-dimensional symplectic representation;
//!   * B2  — the 4-dimensional spin representation (Spin(5) ≅ Sp(4), so the
//!           matrices are the C2 ones with the two generator indices swapped);
//!   * G2  — the 7-dimensional fundamental representation (both letter
//!           orders, so Langlands-dual data are covered).
//!
//! The table is keyed off the Cartan *matrix*, not the family letter, so dual
//! data resolve to the right carrier automatically.  B_n, C_n (n ≥ 3) and D_n
//! have no carrier here and report `UnsupportedType`.

use crate::cartan::{CartanDatum, Weight};
use crate::error::{CrystalError, Result};
use crate::laurent::LaurentPoly;
use crate::linalg::{LMat, QMat};
use crate::num::{q0, q1, q_pow, qi, Q};

/// A representation carrier: generator matrices plus the bookkeeping needed
/// to read generalized minors off leading principal minors.
#[derive(Clone, Debug)]
pub struct RepCarrier {
    pub datum: CartanDatum,
    /// Dimension of the underlying representation.
    pub dim: usize,
    /// Raising generators; `e[i]` represents the simple root α_{i+1}.
    pub e: Vec<QMat>,
    /// Lowering generators, `[e_i, f_i] = h_i`.
    pub f: Vec<QMat>,
    /// Coroot generators `h_i = [e_i, f_i]` (diagonal in this basis).
    pub h: Vec<QMat>,
    /// `minor_size[i]`: Δ_{ω_{i+1}} is the leading principal minor of this size.
    pub minor_size: Vec<usize>,
    /// Weight of basis vector `k` in fundamental-weight coordinates.
    pub weights: Vec<Weight>,
    /// Diagonal of the conjugator J realizing the positive inverse-transpose
    /// twist θ(g) = J (g^{-1})^T J^{-1}, fixed by J E_i^T J^{-1} = -F_i.
    theta_j: Vec<Q>,
}

/// Sparse matrix description: (row, col, value), 1-based indices.
type Entries = &'static [(usize, usize, i64)];

fn from_entries(dim: usize, entries: Entries) -> QMat {
    let mut m = QMat::zeros(dim, dim);
    for &(r, c, v) in entries {
        *m.at_mut(r - 1, c - 1) = qi(v);
    }
    m
}

fn commutator(a: &QMat, b: &QMat) -> QMat {
    let ab = a.mul(b);
    let ba = b.mul(a);
    let mut out = QMat::zeros(a.rows, a.cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            *out.at_mut(i, j) = ab.at(i, j).clone() - ba.at(i, j).clone();
        }
    }
    out
}

fn is_zero_mat(m: &QMat) -> bool {
    (0..m.rows).all(|i| (0..m.cols).all(|j| m.at(i, j) == &q0()))
}

fn scale_mat(m: &QMat, c: &Q) -> QMat {
    let mut out = m.clone();
    for i in 0..m.rows {
        for j in 0..m.cols {
            *out.at_mut(i, j) = m.at(i, j).clone() * c.clone();
        }
    }
    out
}

fn mat_eq(a: &QMat, b: &QMat) -> bool {
    a.rows == b.rows
        && a.cols == b.cols
        && (0..a.rows).all(|i| (0..a.cols).all(|j| a.at(i, j) == b.at(i, j)))
}

/// The defining representation of SL(r+1).
fn build_type_a(datum: &CartanDatum) -> (Vec<QMat>, Vec<QMat>) {
    let r = datum.rank;
    let dim = r + 1;
    let mut es = Vec::with_capacity(r);
    let mut fs = Vec::with_capacity(r);
    for i in 1..=r {
        let mut e = QMat::zeros(dim, dim);
        *e.at_mut(i - 1, i) = q1();
        let mut f = QMat::zeros(dim, dim);
        *f.at_mut(i, i - 1) = q1();
        es.push(e);
        fs.push(f);
    }
    (es, fs)
}

/// Generator tables for the rank-2 carriers, keyed by Cartan matrix.
///
/// `SP4`: defining representation of Sp(4) for the matrix [[2,-2],[-1,2]]
/// (Bourbaki C2: α_1 short).  `SPIN5` is the same module viewed through
/// Spin(5) ≅ Sp(4), i.e. the generator indices swapped, matching
/// [[2,-1],[-2,2]] (Bourbaki B2: α_1 long).  `G2_SHORT_FIRST` is the 7-dim
/// fundamental representation for [[2,-3],[-1,2]] (Bourbaki G2), and
/// `G2_LONG_FIRST` its index swap for the dual matrix [[2,-1],[-3,2]].
struct Rank2Table {
    cartan: [[i64; 2]; 2],
    dim: usize,
    e1: Entries,
    f1: Entries,
    e2: Entries,
    f2: Entries,
}

const SP4: Rank2Table = Rank2Table {
    cartan: [[2, -2], [-1, 2]],
    dim: 4,
    e1: &[(1, 2, 1), (3, 4, -1)],
    f1: &[(2, 1, 1), (4, 3, -1)],
    e2: &[(2, 3, 1)],
    f2: &[(3, 2, 1)],
};

const SPIN5: Rank2Table = Rank2Table {
    cartan: [[2, -1], [-2, 2]],
    dim: 4,
    e1: &[(2, 3, 1)],
    f1: &[(3, 2, 1)],
    e2: &[(1, 2, 1), (3, 4, -1)],
    f2: &[(2, 1, 1), (4, 3, -1)],
};

const G2_SHORT_FIRST: Rank2Table = Rank2Table {
    cartan: [[2, -3], [-1, 2]],
    dim: 7,
    e1: &[(1, 2, 1), (3, 4, 2), (4, 5, 1), (6, 7, 1)],
    f1: &[(2, 1, 1), (4, 3, 1), (5, 4, 2), (7, 6, 1)],
    e2: &[(2, 3, 1), (5, 6, 1)],
    f2: &[(3, 2, 1), (6, 5, 1)],
};

const G2_LONG_FIRST: Rank2Table = Rank2Table {
    cartan: [[2, -1], [-3, 2]],
    dim: 7,
    e1: &[(2, 3, 1), (5, 6, 1)],
    f1: &[(3, 2, 1), (6, 5, 1)],
    e2: &[(1, 2, 1), (3, 4, 2), (4, 5, 1), (6, 7, 1)],
    f2: &[(2, 1, 1), (4, 3, 1), (5, 4, 2), (7, 6, 1)],
};

fn rank2_table(cartan: &[Vec<i64>]) -> Option<&'static Rank2Table> {
    for table in [&SP4, &SPIN5, &G2_SHORT_FIRST, &G2_LONG_FIRST] {
        if cartan[0][0] == table.cartan[0][0]
            && cartan[0][1] == table.cartan[0][1]
            && cartan[1][0] == table.cartan[1][0]
            && cartan[1][1] == table.cartan[1][1]
        {
            return Some(table);
        }
    }
    None
}

/// Build the carrier for a Cartan datum.
///
/// Errors with `UnsupportedType` when no carrier is available (B_n and C_n
/// for n ≥ 3, and D_n).
pub fn rep_carrier(datum: &CartanDatum) -> Result<RepCarrier> {
    let r = datum.rank;
    let (es, fs, dim) = if datum.family == 'A' {
        let (es, fs) = build_type_a(datum);
        (es, fs, r + 1)
    } else if r == 2 {
        match rank2_table(&datum.cartan) {
            Some(table) => {
                let es = vec![
                    from_entries(table.dim, table.e1),
                    from_entries(table.dim, table.e2),
                ];
                let fs = vec![
                    from_entries(table.dim, table.f1),
                    from_entries(table.dim, table.f2),
                ];
                (es, fs, table.dim)
            }
            None => {
                return Err(CrystalError::UnsupportedType(format!(
                    "no carrier for rank-2 Cartan matrix {:?}",
                    datum.cartan
                )))
            }
        }
    } else {
        return Err(CrystalError::UnsupportedType(format!(
            "no matrix carrier for type {}{}",
            datum.family, datum.rank
        )));
    };

    let hs: Vec<QMat> = (0..r).map(|i| commutator(&es[i], &fs[i])).collect();

    // Basis weights from the coroot eigenvalues; everything off-diagonal in
    // h_i would be a table bug, caught by the relation checks below.
    let weights: Vec<Weight> = (0..dim)
        .map(|k| {
            (0..r)
                .map(|i| {
                    let v = hs[i].at(k, k);
                    assert!(v.is_integer(), "coroot eigenvalue not integral");
                    v.to_integer().try_into().expect("eigenvalue overflows i64")
                })
                .collect()
        })
        .collect();

    // Defining relations of the presentation on this module.
    for i in 0..r {
        for j in 0..r {
            let he = commutator(&hs[i], &es[j]);
            let expect = scale_mat(&es[j], &qi(datum.cartan[i][j]));
            assert!(mat_eq(&he, &expect), "[h,e] relation fails at ({i},{j})");
            let hf = commutator(&hs[i], &fs[j]);
            let expect = scale_mat(&fs[j], &qi(-datum.cartan[i][j]));
            assert!(mat_eq(&hf, &expect), "[h,f] relation fails at ({i},{j})");
            if i != j {
                let ef = commutator(&es[i], &fs[j]);
                assert!(is_zero_mat(&ef), "[e_i,f_j] nonzero at ({i},{j})");
            }
        }
    }

    // Leading-wedge weights pin the minor sizes: Δ_{ω_i} is the leading
    // principal minor of the smallest order k whose top wedge has weight
    // ω_i.  (Larger prefixes can revisit a fundamental weight — in the
    // symplectic carriers Λ^{d-1} ≅ Λ^1 — so only the first hit counts.)
    let mut minor_size = vec![0usize; r];
    let mut prefix = vec![0i64; r];
    for (k, w) in weights.iter().enumerate() {
        for i in 0..r {
            prefix[i] += w[i];
        }
        for i in 0..r {
            let omega: Vec<i64> = (0..r).map(|j| i64::from(j == i)).collect();
            if prefix == omega && minor_size[i] == 0 {
                minor_size[i] = k + 1;
            }
        }
    }
    for (i, &k) in minor_size.iter().enumerate() {
        assert!(k > 0, "no extremal prefix found for ω_{}", i + 1);
    }

    let theta_j = build_theta_diagonal(datum, dim, &es, &fs, &weights);

    Ok(RepCarrier {
        datum: datum.clone(),
        dim,
        e: es,
        f: fs,
        h: hs,
        minor_size,
        weights,
        theta_j,
    })
}

/// Diagonal J with J E_i^T J^{-1} = -F_i for every i (so that
/// θ(g) = J (g^{-1})^T J^{-1} satisfies θ(x_i(t)) = y_i(t), θ(h) = h^{-1}).
///
/// J = C·S where S_k = (-1)^{ht(μ_1 - μ_k)} produces the sign and the
/// positive diagonal C fixes the coefficient mismatch between E_i^T and F_i
/// (C = identity for A-type; nontrivial for G2).  C is propagated over the
/// edges of the crystal-like graph given by nonzero generator entries.
fn build_theta_diagonal(
    datum: &CartanDatum,
    dim: usize,
    es: &[QMat],
    fs: &[QMat],
    weights: &[Weight],
) -> Vec<Q> {
    let r = datum.rank;
    // Heights: μ_1 - μ_k expanded over simple roots (integral by construction).
    let heights: Vec<i64> = (0..dim)
        .map(|k| {
            let diff: Vec<i64> = (0..r).map(|i| weights[0][i] - weights[k][i]).collect();
            let alpha = crate::cartan::omega_to_alpha(datum, &diff);
            let mut h = q0();
            for a in alpha {
                h += a;
            }
            assert!(h.is_integer(), "height not integral");
            i64::try_from(h.to_integer()).expect("height overflows i64")
        })
        .collect();

    // Propagate C over constraints c_l / c_k = F_i[l][k] / E_i[k][l].
    let mut c: Vec<Option<Q>> = vec![None; dim];
    c[0] = Some(q1());
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..r {
            for k in 0..dim {
                for l in 0..dim {
                    let ev = es[i].at(k, l);
                    if ev == &q0() {
                        continue;
                    }
                    let fv = fs[i].at(l, k);
                    assert!(fv != &q0(), "lowering entry missing opposite a raising one");
                    let ratio = fv.clone() / ev.clone();
                    match (c[k].clone(), c[l].clone()) {
                        (Some(ck), None) => {
                            c[l] = Some(ck * ratio);
                            changed = true;
                        }
                        (None, Some(cl)) => {
                            c[k] = Some(cl / ratio);
                            changed = true;
                        }
                        (Some(ck), Some(cl)) => {
                            assert_eq!(cl, ck * ratio, "inconsistent twist conjugator");
                        }
                        (None, None) => {}
                    }
                }
            }
        }
    }
    let c: Vec<Q> = c
        .into_iter()
        .map(|v| v.expect("carrier graph not connected"))
        .collect();

    (0..dim)
        .map(|k| {
            let sign = if heights[k] % 2 == 0 { q1() } else { -q1() };
            c[k].clone() * sign
        })
        .collect()
}

impl RepCarrier {
    /// exp(t·gen) for a nilpotent generator, with `t` an arbitrary Laurent
    /// polynomial; terminates because the generators are nilpotent.
    fn one_param(&self, gen: &QMat, t: &LaurentPoly) -> LMat {
        let nvars = t.nvars();
        let mut out = crate::linalg::lmat_identity(self.dim, nvars);
        let mut power = QMat::identity(self.dim);
        let mut tpow = LaurentPoly::one(nvars);
        let mut factorial = q1();
        for k in 1..=self.dim {
            power = power.mul(gen);
            if is_zero_mat(&power) {
                break;
            }
            factorial = factorial * qi(k as i64);
            tpow = &tpow * t;
            for i in 0..self.dim {
                for j in 0..self.dim {
                    let v = power.at(i, j);
                    if v != &q0() {
                        let term = tpow.scale(&(v.clone() / factorial.clone()));
                        out[i][j] = &out[i][j] + &term;
                    }
                }
            }
        }
        out
    }

    /// x_i(t) = exp(t E_i). `i` is 1-based.
    pub fn elem_x(&self, i: usize, t: &LaurentPoly) -> Result<LMat> {
        let gen = self
            .e
            .get(i.wrapping_sub(1))
            .ok_or_else(|| CrystalError::BadIndex(format!("generator index {i}")))?;
        Ok(self.one_param(gen, t))
    }

    /// y_i(t) = exp(t F_i). `i` is 1-based.
    pub fn elem_y(&self, i: usize, t: &LaurentPoly) -> Result<LMat> {
        let gen = self
            .f
            .get(i.wrapping_sub(1))
            .ok_or_else(|| CrystalError::BadIndex(format!("generator index {i}")))?;
        Ok(self.one_param(gen, t))
    }

    /// exp(c·gen) over the rationals.
    fn constant_exp(&self, gen: &QMat, cval: &Q) -> QMat {
        let mut out = QMat::identity(self.dim);
        let mut power = QMat::identity(self.dim);
        let mut factorial = q1();
        let mut cpow = q1();
        for k in 1..=self.dim {
            power = power.mul(gen);
            if is_zero_mat(&power) {
                break;
            }
            factorial = factorial * qi(k as i64);
            cpow = cpow * cval.clone();
            for i in 0..self.dim {
                for j in 0..self.dim {
                    let v = power.at(i, j).clone() * cpow.clone() / factorial.clone();
                    *out.at_mut(i, j) = out.at(i, j).clone() + v;
                }
            }
        }
        out
    }

    /// The standard lift s̄_i = x_i(-1) y_i(1) x_i(-1).
    pub fn sbar(&self, i: usize) -> Result<QMat> {
        let e = self
            .e
            .get(i.wrapping_sub(1))
            .ok_or_else(|| CrystalError::BadIndex(format!("generator index {i}")))?;
        let f = &self.f[i - 1];
        let xm = self.constant_exp(e, &(-q1()));
        let y1 = self.constant_exp(f, &q1());
        Ok(xm.mul(&y1).mul(&xm))
    }

    /// Lift of a Weyl word, leftmost letter applied first in the product:
    /// (i_1, …, i_k) ↦ s̄_{i_1} ⋯ s̄_{i_k}.
    pub fn lift_word(&self, word: &[usize]) -> Result<QMat> {
        let mut out = QMat::identity(self.dim);
        for &i in word {
            out = out.mul(&self.sbar(i)?);
        }
        Ok(out)
    }

    /// Diagonal torus matrix from monomial values of the fundamental
    /// characters: `fw[i]` is the value of h^{ω_{i+1}} as (coeff, exponents).
    /// Entry k is then Π_i fw[i]^{⟨μ_k, α_i∨⟩}.
    pub fn torus_from_fw_monomials(&self, fw: &[(Q, Vec<i64>)], nvars: usize) -> LMat {
        let r = self.datum.rank;
        assert_eq!(fw.len(), r);
        let mut out = crate::linalg::lmat_identity(self.dim, nvars);
        for k in 0..self.dim {
            let mut coeff = q1();
            let mut exps = vec![0i64; nvars];
            for i in 0..r {
                let pow = self.weights[k][i];
                coeff = coeff * q_pow(&fw[i].0, pow);
                for (slot, e) in exps.iter_mut().zip(&fw[i].1) {
                    *slot += e * pow;
                }
            }
            out[k][k] = LaurentPoly::monomial(exps, coeff);
        }
        out
    }

    /// Numeric companion of [`Self::torus_from_fw_monomials`]: the diagonal
    /// torus matrix with character values `h^{ω_{i+1}} = vals[i]`.
    pub fn torus_from_fw_values(&self, vals: &[Q]) -> QMat {
        let r = self.datum.rank;
        assert_eq!(vals.len(), r, "one value per fundamental weight");
        let mut out = QMat::identity(self.dim);
        for k in 0..self.dim {
            let mut v = q1();
            for (i, val) in vals.iter().enumerate() {
                v = v * q_pow(val, self.weights[k][i]);
            }
            *out.at_mut(k, k) = v;
        }
        out
    }

    /// Apply θ(g) = J (g^{-1})^T J^{-1} given g's inverse-transpose.
    pub(crate) fn conjugate_by_j(&self, m: &crate::linalg::RMat) -> crate::linalg::RMat {
        let dim = self.dim;
        let mut out = m.clone();
        for i in 0..dim {
            for j in 0..dim {
                let scale = self.theta_j[i].clone() / self.theta_j[j].clone();
                out[i][j] = out[i][j].mul(&crate::laurent::RatFn::from_poly(
                    LaurentPoly::constant(out[i][j].nvars(), scale),
                ));
            }
        }
        out
    }

    /// The diagonal of J (exposed for tests).
    pub fn theta_diagonal(&self) -> &[Q] {
        &self.theta_j
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::build_cartan;

    fn check_relations(datum: &CartanDatum) {
        // rep_carrier itself asserts the Serre-presentation relations; the
        // test exercises the θ identity J E_i^T J^{-1} = -F_i on top.
        let c = rep_carrier(datum).unwrap();
        for i in 0..datum.rank {
            let et = c.e[i].transpose();
            for k in 0..c.dim {
                for l in 0..c.dim {
                    let lhs = c.theta_j[k].clone() * et.at(k, l).clone()
                        / c.theta_j[l].clone();
                    let rhs = -c.f[i].at(k, l).clone();
                    assert_eq!(lhs, rhs, "θ identity fails at i={i} ({k},{l})");
                }
            }
        }
    }

    #[test]
    fn carriers_satisfy_relations() {
        for (f, r) in [('A', 1), ('A', 2), ('A', 3), ('C', 2), ('B', 2), ('G', 2)] {
            check_relations(&build_cartan(f, r).unwrap());
        }
        // The dual of G2 uses the letter-swapped table.
        let g2 = build_cartan('G', 2).unwrap();
        check_relations(&crate::cartan::dual_datum(&g2));
    }

    #[test]
    fn minor_sizes_match_extremal_prefixes() {
        let a3 = rep_carrier(&build_cartan('A', 3).unwrap()).unwrap();
        assert_eq!(a3.minor_size, vec![1, 2, 3]);
        let c2 = rep_carrier(&build_cartan('C', 2).unwrap()).unwrap();
        assert_eq!(c2.minor_size, vec![1, 2]);
        assert_eq!(c2.dim, 4);
        let b2 = rep_carrier(&build_cartan('B', 2).unwrap()).unwrap();
        assert_eq!(b2.minor_size, vec![2, 1]);
        let g2 = rep_carrier(&build_cartan('G', 2).unwrap()).unwrap();
        assert_eq!(g2.minor_size, vec![1, 2]);
        assert_eq!(g2.dim, 7);
    }

    #[test]
    fn unsupported_types_are_rejected() {
        assert!(matches!(
            rep_carrier(&build_cartan('B', 3).unwrap()),
            Err(CrystalError::UnsupportedType(_))
        ));
        assert!(matches!(
            rep_carrier(&build_cartan('C', 3).unwrap()),
            Err(CrystalError::UnsupportedType(_))
        ));
        assert!(matches!(
            rep_carrier(&build_cartan('D', 4).unwrap()),
            Err(CrystalError::UnsupportedType(_))
        ));
    }

    #[test]
    fn sl2_lift_is_the_rotation() {
        let a1 = rep_carrier(&build_cartan('A', 1).unwrap()).unwrap();
        let s = a1.sbar(1).unwrap();
        assert_eq!(
            s.to_rows(),
            QMat::from_i64(&[vec![0, -1], vec![1, 0]]).to_rows()
        );
        // s̄_i^4 = identity in SL2.
        let s4 = s.mul(&s).mul(&s).mul(&s);
        assert!(mat_eq(&s4, &QMat::identity(2)));
    }

    #[test]
    fn lifts_satisfy_braid_relations() {
        // A2: s̄_1 s̄_2 s̄_1 = s̄_2 s̄_1 s̄_2.
        let a2 = rep_carrier(&build_cartan('A', 2).unwrap()).unwrap();
        let left = a2.lift_word(&[1, 2, 1]).unwrap();
        let right = a2.lift_word(&[2, 1, 2]).unwrap();
        assert!(mat_eq(&left, &right));
        // C2: the braid relation has length 4.
        let c2 = rep_carrier(&build_cartan('C', 2).unwrap()).unwrap();
        let left = c2.lift_word(&[1, 2, 1, 2]).unwrap();
        let right = c2.lift_word(&[2, 1, 2, 1]).unwrap();
        assert!(mat_eq(&left, &right));
        // G2: length 6.
        let g2 = rep_carrier(&build_cartan('G', 2).unwrap()).unwrap();
        let left = g2.lift_word(&[1, 2, 1, 2, 1, 2]).unwrap();
        let right = g2.lift_word(&[2, 1, 2, 1, 2, 1]).unwrap();
        assert!(mat_eq(&left, &right));
    }

    #[test]
    fn one_parameter_subgroups_multiply_correctly() {
        // x_i(s) x_i(t) = x_i(s+t), checked symbolically in two variables.
        let g2 = rep_carrier(&build_cartan('G', 2).unwrap()).unwrap();
        let s = LaurentPoly::var(2, 0);
        let t = LaurentPoly::var(2, 1);
        let sum = &s + &t;
        for i in 1..=2 {
            let xs = g2.elem_x(i, &s).unwrap();
            let xt = g2.elem_x(i, &t).unwrap();
            let prod = crate::linalg::lmat_mul(&xs, &xt);
            let direct = g2.elem_x(i, &sum).unwrap();
            assert_eq!(prod, direct, "x_{i} additivity");
            let ys = g2.elem_y(i, &s).unwrap();
            let yt = g2.elem_y(i, &t).unwrap();
            let prod = crate::linalg::lmat_mul(&ys, &yt);
            let direct = g2.elem_y(i, &sum).unwrap();
            assert_eq!(prod, direct, "y_{i} additivity");
        }
    }

    #[test]
    fn torus_matrix_acts_by_weights() {
        let c2 = rep_carrier(&build_cartan('C', 2).unwrap()).unwrap();
        // h with h^{ω_1} = a, h^{ω_2} = b (two variables).
        let fw = vec![
            (q1(), vec![1, 0]),
            (q1(), vec![0, 1]),
        ];
        let h = c2.torus_from_fw_monomials(&fw, 2);
        for k in 0..c2.dim {
            let expect = LaurentPoly::monomial(c2.weights[k].clone(), q1());
            assert_eq!(h[k][k], expect);
        }
    }
}
