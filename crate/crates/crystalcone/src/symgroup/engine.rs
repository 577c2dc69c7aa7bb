//! The chart engine: everything one reduced word for the longest element
//! pins down on the open double Bruhat cell.
//!
//! Fix a Cartan datum and a reduced word **i** = (i_1, …, i_m) for w0.  The
//! cluster labels k ∈ [−r, −1] ∪ [1, m], the prefix minors
//! Δ_k = Δ_{u_kω_{|i_k|}, ω_{|i_k|}} (u_k = s_{i_1}⋯s_{i_k}), and the chart
//! label set L = [−r, −1] ∪ e(**i**) (non-last positions) are all attached
//! to **i** itself.  Points, however, are parametrized through the slice of
//! the *reversed* word: the equivalence between the twisted chart and the
//! factorization parametrization passes through the transpose
//! anti-automorphism, which reverses the order of the one-parameter factors.
//! (For palindromic words, e.g. the standard rank ≤ 2 ones in type A, both
//! orders give monomial coordinates; beyond those only the reversed order
//! does.)  Concretely the engine constructs, exactly and once:
//!
//!   * the word-order product Y(t) = y_{i_1}(t_1) ⋯ y_{i_m}(t_m) and its
//!     frozen minors Δ_{w0ω_i, ω_i}(Y) — positive monomials — used by the
//!     factorization chart;
//!   * the reversed product Y′(t) = y_{i_m}(t_1) ⋯ y_{i_1}(t_m), its frozen
//!     minors lm′_i := Δ_{w0ω_i, ω_i}(Y′), and the normalized slice
//!     ℓ(t) = h′·Y′(t) with h′^{ω_j} = lm′_{j*}, so that every frozen minor
//!     of ℓ equals 1 (j* is the Dynkin involution index);
//!   * the twisted slice ζ(ℓ(t)), whose entries are again Laurent;
//!   * the transition polynomials z̄_k = Δ_k(ℓ), subtraction-free, with
//!     z̄ at the last occurrence of each letter equal to 1;
//!   * the chart monomials ž_k(t) = h″(t)^{−γ1_k}·Δ_k(ζℓ(t)), where
//!     h″^{ω_j} = lm′_j and γ1_k = u_kω_{|i_k|}; these are monomials with
//!     positive coefficients and are the shared coordinate readouts of both
//!     reduced charts;
//!   * the unimodular *chamber matrix* M of ž-exponents over the chart label
//!     set, together with its inverse — the monomial change of variables
//!     t ↔ ž.
//!
//! Both reduced charts share the coordinate monomials and differ in which
//! group element they parametrize:
//!
//!   * **plain**: x = h·η(t) with η = h″^{-1}·ζℓ, so that
//!     Δ_{uγ,γ}(x) = h^{uγ}·[chart body], bodies expanded in ž-variables;
//!   * **twisted**: x = ζ(h̃·η(t)).  Because the twist obeys
//!     ζ(h·x) = τ(h)·ζ(x) with τ(h)^γ = h^{−w0γ}, the twisted point is the
//!     *torus multiple* τ(h̃)τ(h″^{-1})·ℓ(t), so its minors need only ℓ.
//!
//! The parametrization is an internal device: the chart itself is determined
//! by its coordinate functions (the prefix minors of **i**, composed with
//! the twist for the twisted chart), which is what all downstream readouts
//! (tropical cones, polytopes, potentials in other charts) consume.

use crate::cartan::{
    dynkin_involution, is_reduced, positive_roots, weyl_act, CartanDatum, Weight,
};
use crate::error::{CrystalError, Result};
use crate::laurent::LaurentPoly;
use crate::linalg::{
    imat_inverse_unimodular, imat_is_unimodular, lmat_identity, lmat_mul, lmat_qmat_mul,
    lmat_submatrix_det, lmat_to_rmat, qmat_lmat_mul, rmat_inverse, rmat_mul, rmat_transpose, LMat,
    QMat,
};
use crate::num::{q1, q_pow, q_sign, Q};

use super::carrier::{rep_carrier, RepCarrier};

/// One term of a function expanded in a reduced chart: a torus character
/// (stored as a weight in fundamental-weight coordinates) times a Laurent
/// body in the m chart variables, ordered by the chart label set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartTerm {
    /// Character exponent γ of the torus prefactor h^γ (fundamental-weight
    /// coordinates; the torus is the h of the plain chart or the h̃ of the
    /// twisted chart).
    pub torus_weight: Weight,
    /// Laurent polynomial in the chart variables.
    pub body: LaurentPoly,
}

/// Chart data attached to one reduced word for the longest element.
#[derive(Clone, Debug)]
pub struct Engine {
    datum: CartanDatum,
    carrier: RepCarrier,
    word: Vec<usize>,
    involution: Vec<usize>,
    r: usize,
    m: usize,
    /// Chart labels: [−r, −1] then the non-last word positions, ascending.
    l_set: Vec<i64>,
    /// Cluster labels: [−r, −1] then [1, m].
    i_set: Vec<i64>,
    /// 1-based position of the last occurrence of each letter.
    last_pos: Vec<usize>,
    /// γ1_k = u_kω_{|i_k|} per cluster label (i_set order).
    gamma1: Vec<Weight>,
    /// Word-order product Y(t) = y_{i_1}(t_1) ⋯ y_{i_m}(t_m).
    y: LMat,
    /// Δ_{w0ω_i, ω_i}(Y) of the word-order product — positive monomials.
    y_minors: Vec<(Q, Vec<i64>)>,
    /// Normalized slice ℓ(t) of the reversed product (frozen minors = 1).
    ell: LMat,
    /// ζ(ℓ(t)); entries are Laurent polynomials.
    zeta_ell: LMat,
    /// lm′_i = Δ_{w0ω_i, ω_i}(Y′) of the reversed product — the h″ data.
    slice_minors: Vec<(Q, Vec<i64>)>,
    /// z̄_k = Δ_k(ℓ), i_set order; subtraction-free.
    zbar: Vec<LaurentPoly>,
    /// ž_k = h″^{−γ1_k}·Δ_k(ζℓ) as monomials, i_set order.
    zcheck: Vec<(Q, Vec<i64>)>,
    /// ž-exponent rows over l_set — unimodular.
    chamber: Vec<Vec<i64>>,
    chamber_coeffs: Vec<Q>,
    chamber_inv: Vec<Vec<i64>>,
    /// t_j as a monomial in the chart variables.
    subst: Vec<(Q, Vec<i64>)>,
    /// Carrier lift data reused by the minor helpers.
    w0bar_inv: QMat,
    sbar: Vec<QMat>,
}

/// Character monomial Π_j fw[j]^{γ_j} for monomial values fw of the
/// fundamental characters.
fn char_monomial(fw: &[(Q, Vec<i64>)], gamma: &[i64], nvars: usize) -> (Q, Vec<i64>) {
    let mut coeff = q1();
    let mut exps = vec![0i64; nvars];
    for (j, &g) in gamma.iter().enumerate() {
        coeff = coeff * q_pow(&fw[j].0, g);
        for (slot, &x) in exps.iter_mut().zip(&fw[j].1) {
            *slot += x * g;
        }
    }
    (coeff, exps)
}

impl Engine {
    /// Build the chart data for a reduced word for the longest element.
    /// Errors: `BadIndex` for letters out of range, `NotReduced` unless the
    /// word is a reduced expression of w0, `UnsupportedType` when the datum
    /// has no bundled carrier, `NotDecomposable` if the symbolic twist of the
    /// slice fails (which a valid construction never triggers).
    pub fn new(datum: &CartanDatum, word: &[usize]) -> Result<Engine> {
        let r = datum.rank;
        if !is_reduced(datum, word)? {
            return Err(CrystalError::NotReduced(format!("{word:?}")));
        }
        let n_pos = positive_roots(datum)?.len();
        if word.len() != n_pos {
            return Err(CrystalError::NotReduced(format!(
                "length-{} word does not express the longest element (length {n_pos})",
                word.len()
            )));
        }
        let carrier = rep_carrier(datum)?;
        let m = word.len();
        let involution = dynkin_involution(datum);

        let w0bar = carrier.lift_word(word)?;
        let w0bar_inv = w0bar.inverse().expect("Weyl lifts are invertible");
        let mut sbar = Vec::with_capacity(r);
        for i in 1..=r {
            sbar.push(carrier.sbar(i)?);
        }

        let leading = |mat: &LMat, i: usize| -> LaurentPoly {
            let k = carrier.minor_size[i - 1];
            let idx: Vec<usize> = (0..k).collect();
            lmat_submatrix_det(mat, &idx, &idx)
        };

        // A one-parameter product (lower unitriangular, so every leading
        // principal minor of it is 1) and its frozen minors Δ_{w0ω_i, ω_i},
        // which are positive monomials in t.
        let product_with_minors =
            |letters: &[usize]| -> Result<(LMat, Vec<(Q, Vec<i64>)>)> {
                let mut y = lmat_identity(carrier.dim, m);
                for (j, &letter) in letters.iter().enumerate() {
                    y = lmat_mul(&y, &carrier.elem_y(letter, &LaurentPoly::var(m, j))?);
                }
                let shifted = qmat_lmat_mul(&w0bar_inv, &y);
                let mut minors: Vec<(Q, Vec<i64>)> = Vec::with_capacity(r);
                for i in 1..=r {
                    let p = leading(&shifted, i);
                    let (e, c) = p
                        .as_monomial()
                        .expect("frozen minor of a y-product must be a monomial");
                    assert!(
                        q_sign(c) > 0,
                        "frozen minor of a y-product must have a positive coefficient"
                    );
                    minors.push((c.clone(), e.clone()));
                }
                Ok((y, minors))
            };

        let (y, y_minors) = product_with_minors(word)?;
        let reversed: Vec<usize> = word.iter().rev().copied().collect();
        let (y_rev, slice_minors) = product_with_minors(&reversed)?;

        // ℓ = h′·Y′ with h′^{ω_j} = lm′_{j*}: then
        // Δ_{w0ω_i, ω_i}(ℓ) = h′^{w0ω_i}·lm′_i = lm′_i^{-1}·lm′_i = 1.
        let fw_star: Vec<(Q, Vec<i64>)> = (0..r)
            .map(|j| slice_minors[involution[j]].clone())
            .collect();
        let hprime = carrier.torus_from_fw_monomials(&fw_star, m);
        let ell = lmat_mul(&hprime, &y_rev);
        let shifted_ell = qmat_lmat_mul(&w0bar_inv, &ell);
        for i in 1..=r {
            assert!(
                leading(&shifted_ell, i).is_one(),
                "slice normalization must make every frozen minor 1"
            );
        }

        // Cluster labels, their weights γ1_k, and last positions.
        let mut i_set: Vec<i64> = (-(r as i64)..=-1).collect();
        i_set.extend(1..=m as i64);
        let mut gamma1: Vec<Weight> = Vec::with_capacity(r + m);
        for &k in &i_set {
            if k < 0 {
                let i = (-k) as usize;
                let mut e = vec![0i64; r];
                e[i - 1] = 1;
                gamma1.push(e);
            } else {
                let kk = k as usize;
                let mut e = vec![0i64; r];
                e[word[kk - 1] - 1] = 1;
                gamma1.push(weyl_act(datum, &word[..kk], &e)?);
            }
        }
        let mut last_pos = vec![0usize; r];
        for (j, &letter) in word.iter().enumerate() {
            last_pos[letter - 1] = j + 1;
        }
        assert!(
            last_pos.iter().all(|&p| p > 0),
            "every letter appears in a reduced word for w0"
        );

        // Prefix lift inverses ū_k^{-1} = s̄_{i_k}^{-1}·ū_{k-1}^{-1}.
        let mut prefix_inv: Vec<QMat> = Vec::with_capacity(m + 1);
        prefix_inv.push(QMat::identity(carrier.dim));
        for &letter in word {
            let s_inv = sbar[letter - 1]
                .inverse()
                .expect("Weyl lifts are invertible");
            let prev = prefix_inv.last().unwrap();
            prefix_inv.push(s_inv.mul(prev));
        }
        let identity = QMat::identity(carrier.dim);
        let pre_of = |k: i64| -> (&QMat, usize) {
            if k < 0 {
                (&identity, (-k) as usize)
            } else {
                (&prefix_inv[k as usize], word[k as usize - 1])
            }
        };

        // Cluster coordinates of the slice: z̄_k = Δ_k(ℓ).
        let mut zbar: Vec<LaurentPoly> = Vec::with_capacity(r + m);
        for &k in &i_set {
            let (pre, i) = pre_of(k);
            let p = leading(&qmat_lmat_mul(pre, &ell), i);
            assert!(
                p.is_subtraction_free(),
                "cluster coordinates of the slice must be subtraction-free"
            );
            zbar.push(p);
        }
        for i in 1..=r {
            assert!(
                zbar[r + last_pos[i - 1] - 1].is_one(),
                "the frozen cluster coordinate is 1 on the slice"
            );
            let (c, e) = &slice_minors[involution[i - 1]];
            assert_eq!(
                zbar[r - i],
                LaurentPoly::monomial(e.clone(), c.clone()),
                "Δ_{{ω_i,ω_i}}(ℓ) must equal the dual frozen minor"
            );
        }

        // ζ(ℓ) = θ([w̄0^{-1}ℓ]_{≥0}) — Laurent entries.
        let shifted_rm = lmat_to_rmat(&shifted_ell);
        let (_, d, u) = super::gauss_decompose(&shifted_rm)?;
        let du = rmat_mul(&d, &u);
        let du_inv = rmat_inverse(&du).ok_or_else(|| {
            CrystalError::NotDecomposable("singular upper Gauss factor of the shifted slice".into())
        })?;
        let zeta_rm = carrier.conjugate_by_j(&rmat_transpose(&du_inv));
        let zeta_ell: LMat = zeta_rm
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        x.as_laurent()
                            .expect("the twisted slice has Laurent entries")
                    })
                    .collect()
            })
            .collect();

        // Chart monomials ž_k = h″^{−γ1_k}·Δ_k(ζℓ), h″^{ω_j} = lm′_j.
        let mut zcheck: Vec<(Q, Vec<i64>)> = Vec::with_capacity(r + m);
        for (pos, &k) in i_set.iter().enumerate() {
            let (pre, i) = pre_of(k);
            let raw = leading(&qmat_lmat_mul(pre, &zeta_ell), i);
            let neg: Vec<i64> = gamma1[pos].iter().map(|x| -x).collect();
            let (hc, he) = char_monomial(&slice_minors, &neg, m);
            let scaled = raw.mul_monomial(&he, &hc);
            let (e, c) = scaled
                .as_monomial()
                .expect("chart coordinates must be monomials in t");
            assert!(
                q_sign(c) > 0,
                "chart coordinates must have positive coefficients"
            );
            zcheck.push((c.clone(), e.clone()));
        }
        for i in 1..=r {
            let (c, e) = &zcheck[r + last_pos[i - 1] - 1];
            assert!(
                *c == q1() && e.iter().all(|&x| x == 0),
                "the frozen chart coordinate is 1"
            );
            let (c2, e2) = &zcheck[r - i];
            let (lc, le) = &slice_minors[i - 1];
            assert!(
                c2.clone() * lc.clone() == q1() && e2.iter().zip(le).all(|(a, b)| a + b == 0),
                "ž at label −i must be the inverse frozen minor"
            );
        }

        // Chamber matrix over the chart label set; unimodular by the
        // chamber-ansatz transition being a bijection on monomials.
        let mut l_set: Vec<i64> = (-(r as i64)..=-1).collect();
        for k in 1..=m {
            if last_pos[word[k - 1] - 1] != k {
                l_set.push(k as i64);
            }
        }
        assert_eq!(l_set.len(), m, "chart variable count must be m");
        let ipos = |k: i64| -> usize {
            if k < 0 {
                (r as i64 + k) as usize
            } else {
                r + k as usize - 1
            }
        };
        let chamber: Vec<Vec<i64>> = l_set.iter().map(|&k| zcheck[ipos(k)].1.clone()).collect();
        let chamber_coeffs: Vec<Q> = l_set.iter().map(|&k| zcheck[ipos(k)].0.clone()).collect();
        assert!(
            imat_is_unimodular(&chamber),
            "the chamber matrix must be unimodular"
        );
        let chamber_inv = imat_inverse_unimodular(&chamber).expect("unimodular");
        let subst: Vec<(Q, Vec<i64>)> = (0..m)
            .map(|j| {
                let mut coeff = q1();
                for (k, c) in chamber_coeffs.iter().enumerate() {
                    coeff = coeff * q_pow(c, -chamber_inv[j][k]);
                }
                (coeff, chamber_inv[j].clone())
            })
            .collect();
        // Round trip: substituting t(ž) into each ž-monomial returns the
        // matching chart variable.
        for (p, &k) in l_set.iter().enumerate() {
            let mono = LaurentPoly::monomial(zcheck[ipos(k)].1.clone(), zcheck[ipos(k)].0.clone());
            assert_eq!(
                mono.subst_monomials(m, &subst),
                LaurentPoly::var(m, p),
                "chart substitution must invert the chamber matrix"
            );
        }

        Ok(Engine {
            datum: datum.clone(),
            carrier,
            word: word.to_vec(),
            involution,
            r,
            m,
            l_set,
            i_set,
            last_pos,
            gamma1,
            y,
            y_minors,
            ell,
            zeta_ell,
            slice_minors,
            zbar,
            zcheck,
            chamber,
            chamber_coeffs,
            chamber_inv,
            subst,
            w0bar_inv,
            sbar,
        })
    }

    fn ipos(&self, k: i64) -> usize {
        if k < 0 {
            (self.r as i64 + k) as usize
        } else {
            self.r + k as usize - 1
        }
    }

    /// Position of a label in the chart variable order (l_set).  Panics on
    /// labels of frozen-last positions, which are not chart variables.
    pub fn chart_pos(&self, k: i64) -> usize {
        self.l_set
            .iter()
            .position(|&x| x == k)
            .expect("label is a chart variable")
    }

    /// Position of a label in the cluster variable order (i_set).
    pub fn unreduced_pos(&self, k: i64) -> usize {
        self.ipos(k)
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn carrier(&self) -> &RepCarrier {
        &self.carrier
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// The Dynkin involution i ↦ i* as a 0-based index map.
    pub fn involution(&self) -> &[usize] {
        &self.involution
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    /// Number of chart variables (= length of the word).
    pub fn nvars(&self) -> usize {
        self.m
    }

    pub fn l_set(&self) -> &[i64] {
        &self.l_set
    }

    pub fn i_set(&self) -> &[i64] {
        &self.i_set
    }

    /// 1-based position of the last occurrence of letter `i`.
    pub fn last_position(&self, i: usize) -> usize {
        self.last_pos[i - 1]
    }

    /// γ1_k = u_kω_{|i_k|} for a cluster label.
    pub fn gamma1(&self, k: i64) -> &Weight {
        &self.gamma1[self.ipos(k)]
    }

    pub fn y_product(&self) -> &LMat {
        &self.y
    }

    pub fn ell(&self) -> &LMat {
        &self.ell
    }

    pub fn zeta_ell(&self) -> &LMat {
        &self.zeta_ell
    }

    /// lm′_i = Δ_{w0ω_i, ω_i} of the reversed product, as
    /// (coefficient, t-exponents).  This is the h″ normalization data of the
    /// chart parametrization.
    pub fn slice_minor(&self, i: usize) -> &(Q, Vec<i64>) {
        &self.slice_minors[i - 1]
    }

    /// Δ_{w0ω_i, ω_i} of the word-order product Y(t), as
    /// (coefficient, t-exponents) — the frozen minor of the factorization
    /// chart.
    pub fn y_minor(&self, i: usize) -> &(Q, Vec<i64>) {
        &self.y_minors[i - 1]
    }

    /// z̄_k = Δ_k(ℓ) in the t-variables.
    pub fn zbar(&self, k: i64) -> &LaurentPoly {
        &self.zbar[self.ipos(k)]
    }

    /// ž_k as a (coefficient, t-exponents) monomial.
    pub fn zcheck(&self, k: i64) -> &(Q, Vec<i64>) {
        &self.zcheck[self.ipos(k)]
    }

    /// Chamber matrix: row p holds the t-exponents of ž at label l_set[p].
    pub fn chamber(&self) -> &[Vec<i64>] {
        &self.chamber
    }

    pub fn chamber_inverse(&self) -> &[Vec<i64>] {
        &self.chamber_inv
    }

    /// Express a Laurent polynomial in t through the chart variables.
    pub fn substitute(&self, f: &LaurentPoly) -> LaurentPoly {
        f.subst_monomials(self.m, &self.subst)
    }

    /// Δ_{w0ω_i, s_iω_i}(mat) — the A-minor.
    fn minor_a(&self, mat: &LMat, i: usize) -> LaurentPoly {
        let p = lmat_qmat_mul(&qmat_lmat_mul(&self.w0bar_inv, mat), &self.sbar[i - 1]);
        let k = self.carrier.minor_size[i - 1];
        let idx: Vec<usize> = (0..k).collect();
        lmat_submatrix_det(&p, &idx, &idx)
    }

    /// Δ_{w0 s_iω_i, ω_i}(mat) — the B-minor, via (w0 s_i)¯ = w̄0·s̄_i^{-1}.
    fn minor_b(&self, mat: &LMat, i: usize) -> LaurentPoly {
        let pre = self.sbar[i - 1].mul(&self.w0bar_inv);
        let p = qmat_lmat_mul(&pre, mat);
        let k = self.carrier.minor_size[i - 1];
        let idx: Vec<usize> = (0..k).collect();
        lmat_submatrix_det(&p, &idx, &idx)
    }

    /// h″^γ as a t-monomial, where h″^{ω_j} = lm′_j.
    fn h2_monomial(&self, gamma: &[i64]) -> (Q, Vec<i64>) {
        char_monomial(&self.slice_minors, gamma, self.m)
    }

    /// The potential in a reduced chart, term by term.  Each index i
    /// contributes an A-term and a B-term; denominators are already folded
    /// in (the frozen minors of both parametrized points are torus
    /// characters times 1):
    ///
    ///   * plain (x = h·η):  {0, [h″^{−w0ω_i}·Δ_A(ζℓ)]∘}  and
    ///     {α_{i*}, [h″^{−w0 s_iω_i}·Δ_B(ζℓ)]∘};
    ///   * twisted (x = ζ(h̃·η)):  {0, [Δ_A(ℓ)]∘}  and
    ///     {α_i, [h″^{−α_i}·Δ_B(ℓ)]∘},
    ///
    /// where [·]∘ is the monomial substitution t ↦ t(ž).
    pub fn reduced_potential(&self, twisted: bool) -> Result<Vec<ChartTerm>> {
        let r = self.r;
        let mut out = Vec::with_capacity(2 * r);
        for i in 1..=r {
            let (a_body, b_weight, b_body) = if twisted {
                let a = self.substitute(&self.minor_a(&self.ell, i));
                let alpha = self.datum.simple_root(i);
                let neg_alpha: Vec<i64> = alpha.iter().map(|x| -x).collect();
                let (hc, he) = self.h2_monomial(&neg_alpha);
                let b = self.substitute(&self.minor_b(&self.ell, i).mul_monomial(&he, &hc));
                (a, alpha, b)
            } else {
                let istar = self.involution[i - 1] + 1;
                // −w0·ω_i = ω_{i*}.
                let mut womega = vec![0i64; r];
                womega[istar - 1] = 1;
                let (hc, he) = self.h2_monomial(&womega);
                let a =
                    self.substitute(&self.minor_a(&self.zeta_ell, i).mul_monomial(&he, &hc));
                let mut e_i = vec![0i64; r];
                e_i[i - 1] = 1;
                let si_om = weyl_act(&self.datum, &[i], &e_i).expect("index in range");
                let w0si = weyl_act(&self.datum, &self.word, &si_om).expect("word valid");
                let neg: Vec<i64> = w0si.iter().map(|x| -x).collect();
                let (hc, he) = self.h2_monomial(&neg);
                let b =
                    self.substitute(&self.minor_b(&self.zeta_ell, i).mul_monomial(&he, &hc));
                (a, self.datum.simple_root(istar), b)
            };
            for (torus_weight, body) in [(vec![0i64; r], a_body), (b_weight, b_body)] {
                if !body.is_subtraction_free() {
                    return Err(CrystalError::PositivityViolation(format!(
                        "reduced-chart potential term for index {i}"
                    )));
                }
                out.push(ChartTerm { torus_weight, body });
            }
        }
        Ok(out)
    }

    /// The r frozen minors Δ_{w0ω_i, ω_i} in a reduced chart: plain
    /// h^{w0ω_i}·1, twisted h̃^{−ω_i}·ž_{−i}^{-1}.
    pub fn hw_terms(&self, twisted: bool) -> Vec<ChartTerm> {
        (1..=self.r)
            .map(|i| {
                if twisted {
                    let mut w = vec![0i64; self.r];
                    w[i - 1] = -1;
                    let mut e = vec![0i64; self.m];
                    e[self.chart_pos(-(i as i64))] = -1;
                    ChartTerm {
                        torus_weight: w,
                        body: LaurentPoly::monomial(e, q1()),
                    }
                } else {
                    let mut e_i = vec![0i64; self.r];
                    e_i[i - 1] = 1;
                    ChartTerm {
                        torus_weight: weyl_act(&self.datum, &self.word, &e_i)
                            .expect("word valid"),
                        body: LaurentPoly::one(self.m),
                    }
                }
            })
            .collect()
    }

    /// The r weight minors Δ_{ω_i, ω_i} in a reduced chart: plain
    /// h^{ω_i}·ž_{−i}, twisted h̃^{ω_{i*}}·1.
    pub fn wt_terms(&self, twisted: bool) -> Vec<ChartTerm> {
        (1..=self.r)
            .map(|i| {
                if twisted {
                    let istar = self.involution[i - 1] + 1;
                    let mut w = vec![0i64; self.r];
                    w[istar - 1] = 1;
                    ChartTerm {
                        torus_weight: w,
                        body: LaurentPoly::one(self.m),
                    }
                } else {
                    let mut w = vec![0i64; self.r];
                    w[i - 1] = 1;
                    ChartTerm {
                        torus_weight: w,
                        body: LaurentPoly::var(self.m, self.chart_pos(-(i as i64))),
                    }
                }
            })
            .collect()
    }

    /// The slice potential terms Δ_{w0ω_i, s_iω_i}(ℓ) expressed in chart
    /// variables (these are exactly the h̃-free terms of the twisted chart).
    pub fn string_terms(&self) -> Result<Vec<LaurentPoly>> {
        (1..=self.r)
            .map(|i| {
                let p = self.substitute(&self.minor_a(&self.ell, i));
                if p.is_subtraction_free() {
                    Ok(p)
                } else {
                    Err(CrystalError::PositivityViolation(format!(
                        "slice potential term for index {i}"
                    )))
                }
            })
            .collect()
    }

    /// The slice potential Σ_i Δ_{w0ω_i, s_iω_i}(ℓ(t)) in the t-variables.
    pub fn string_potential_t(&self) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::zero(self.m);
        for i in 1..=self.r {
            let p = self.minor_a(&self.ell, i);
            if !p.is_subtraction_free() {
                return Err(CrystalError::PositivityViolation(format!(
                    "slice potential term for index {i}"
                )));
            }
            acc = &acc + &p;
        }
        Ok(acc)
    }

    /// Torus-character exponents over the unreduced cluster ring: writing
    /// γ = Σ_j c_j·w0ω_j (c = coordinates of w0γ) and h^{w0ω_j} = z at the
    /// last occurrence of j gives h^γ as a monomial in the frozen variables.
    fn unreduced_torus_exps(&self, gamma: &[i64]) -> Vec<i64> {
        let w0gamma = weyl_act(&self.datum, &self.word, gamma).expect("word valid");
        let mut exps = vec![0i64; self.r + self.m];
        for (j, &c) in w0gamma.iter().enumerate() {
            exps[self.ipos(self.last_pos[j] as i64)] += c;
        }
        exps
    }

    /// Φ_BK in the unreduced cluster chart, variables
    /// (z_{−r} … z_{−1}, z_1 … z_m), as (numerator, monomial denominator)
    /// with denominator Π_j z_{last(j)}.  Uses the chart lift
    /// ẑ_k = z_k·h^{−γ1_k}, h^{w0ω_j} = z_{last(j)}.
    pub fn cluster_potential(&self) -> Result<(LaurentPoly, LaurentPoly)> {
        let plain = self.reduced_potential(false)?;
        let n = self.r + self.m;
        let images: Vec<(Q, Vec<i64>)> = self
            .l_set
            .iter()
            .map(|&k| {
                let neg: Vec<i64> = self.gamma1(k).iter().map(|x| -x).collect();
                let mut e = self.unreduced_torus_exps(&neg);
                e[self.ipos(k)] += 1;
                (q1(), e)
            })
            .collect();
        let mut total = LaurentPoly::zero(n);
        for term in &plain {
            let h_exps = self.unreduced_torus_exps(&term.torus_weight);
            let lifted = term
                .body
                .subst_monomials(n, &images)
                .mul_monomial(&h_exps, &q1());
            total = &total + &lifted;
        }
        let mut den_exps = vec![0i64; n];
        for i in 1..=self.r {
            den_exps[self.ipos(self.last_pos[i - 1] as i64)] += 1;
        }
        let num = total.mul_monomial(&den_exps, &q1());
        if !num.is_subtraction_free() {
            return Err(CrystalError::PositivityViolation(
                "cluster-chart numerator".into(),
            ));
        }
        Ok((num, LaurentPoly::monomial(den_exps, q1())))
    }

    /// Φ_BK in the factorization chart, variables (a_1 … a_r, t_1 … t_m)
    /// with h^{ω_j} = a_j on the left of the y-product, as
    /// (numerator, monomial denominator).
    pub fn factorization_potential(&self) -> Result<(LaurentPoly, LaurentPoly)> {
        let r = self.r;
        let n = r + self.m;
        let shift: Vec<(Q, Vec<i64>)> = (0..self.m)
            .map(|j| {
                let mut e = vec![0i64; n];
                e[r + j] = 1;
                (q1(), e)
            })
            .collect();
        let a_char = |gamma: &[i64]| -> Vec<i64> {
            let mut e = vec![0i64; n];
            for (j, &g) in gamma.iter().enumerate() {
                e[j] = g;
            }
            e
        };
        let mut numerators = Vec::with_capacity(r);
        let mut denominators = Vec::with_capacity(r);
        for i in 1..=r {
            let mut e_i = vec![0i64; r];
            e_i[i - 1] = 1;
            let w0om = weyl_act(&self.datum, &self.word, &e_i).expect("word valid");
            let si_om = weyl_act(&self.datum, &[i], &e_i).expect("index in range");
            let w0si_om = weyl_act(&self.datum, &self.word, &si_om).expect("word valid");

            let da = self
                .minor_a(&self.y, i)
                .subst_monomials(n, &shift)
                .mul_monomial(&a_char(&w0om), &q1());
            let db = self
                .minor_b(&self.y, i)
                .subst_monomials(n, &shift)
                .mul_monomial(&a_char(&w0si_om), &q1());
            numerators.push(&da + &db);
            let (lc, le) = &self.y_minors[i - 1];
            denominators.push(
                LaurentPoly::monomial(le.clone(), lc.clone())
                    .subst_monomials(n, &shift)
                    .mul_monomial(&a_char(&w0om), &q1()),
            );
        }
        let mut den = LaurentPoly::one(n);
        for d in &denominators {
            den = &den * d;
        }
        let mut num = LaurentPoly::zero(n);
        for i in 0..r {
            let mut t = numerators[i].clone();
            for (j, d) in denominators.iter().enumerate() {
                if j != i {
                    t = &t * d;
                }
            }
            num = &num + &t;
        }
        if !num.is_subtraction_free() {
            return Err(CrystalError::PositivityViolation(
                "factorization-chart numerator".into(),
            ));
        }
        assert!(den.is_monomial(), "denominator is a product of monomials");
        Ok((num, den))
    }

    /// The chart transition: the plain coordinates of x expressed in the
    /// twisted coordinates of x (equivalently, with the roles swapped — the
    /// map is its own inverse because the twist is an involution).  Since
    /// x = ζ(h̃·η(ť)) equals the torus multiple τ(h̃)τ(h″^{-1})·ℓ(ť) and the
    /// torus characters cancel exactly against h(x)^{γ1_k}, the transition
    /// is ẑ_k = [z̄_k(t)]∘  (subtraction-free, one polynomial per chart
    /// label).  The accompanying torus rule is h^{ω_j} = h̃^{ω_{j*}}·ž_{−j*}.
    pub fn transition(&self) -> Vec<LaurentPoly> {
        self.l_set
            .iter()
            .map(|&k| self.substitute(&self.zbar[self.ipos(k)]))
            .collect()
    }
}
