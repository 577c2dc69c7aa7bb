//! String polytopes as highest-weight fibers in potential cones: exact
//! lattice-point enumeration with per-weight bookkeeping, and exact
//! rational volumes of the fibers.
//!
//! The weight-multiplicity counting runs on the Langlands dual cell: the
//! lattice points of the dual group's potential cone, fibered over the
//! tropical highest-weight map, count weight spaces of the requested
//! group's irreducible V_λ.  [`count_dim`]/[`count_weight`] perform that
//! dual swap internally; [`counting_chart`] builds the chart for the datum
//! it is handed, without swapping.
//!
//! The counting chart uses *root-character* coordinates on the torus
//! block (coordinate i is the tropical value on the character h^{α_i}),
//! so its integer points realize the full weight lattice of the dual
//! group's counting partner and fundamental weights get their correct
//! multiplicities; fundamental-weight coordinates would only reach the
//! root lattice.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::cartan::{dual_datum, CartanDatum, Weight};
use crate::error::{CrystalError, Result};
use crate::laurent::LaurentPoly;
use crate::linalg::{smith_normal_form, QMat};
use crate::lp;
use crate::num::{q0, q1, qi, Q};
use crate::symgroup::Engine;
use crate::tropical::{tropicalize, ConeH};

fn q_floor_i64(q: &Q) -> i64 {
    q.floor()
        .to_integer()
        .to_i64()
        .expect("coordinate bound fits in i64")
}

fn q_ceil_i64(q: &Q) -> i64 {
    q.ceil()
        .to_integer()
        .to_i64()
        .expect("coordinate bound fits in i64")
}

/// The plain reduced chart of the given datum's cell with the torus block
/// in root-character coordinates, as counting data: the potential cone
/// over (torus block | chart block), the tropical highest-weight rows
/// (literal projections onto the torus block), and the tropical weight
/// rows ν_i = x_{H,i} + Σ_j A[j][i]·x̌_{−j}.  Row i of either map is the
/// covector of the value on the simple-root character α_i, so fibers of
/// integral weights have integral equations.
pub fn counting_chart(
    datum: &CartanDatum,
    word: &[usize],
) -> Result<(ConeH, Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    let engine = Engine::new(datum, word)?;
    let r = engine.rank();
    let m = engine.nvars();
    let n = r + m;
    let shift: Vec<(Q, Vec<i64>)> = (0..m)
        .map(|j| {
            let mut e = vec![0i64; n];
            e[r + j] = 1;
            (q1(), e)
        })
        .collect();
    let mut total = LaurentPoly::zero(n);
    for term in engine.reduced_potential(false)? {
        let mut h = vec![0i64; n];
        if term.torus_weight.iter().any(|&v| v != 0) {
            let i = (1..=r)
                .find(|&i| datum.simple_root(i) == term.torus_weight)
                .expect("potential torus characters are simple roots");
            h[i - 1] = 1;
        }
        total = &total + &term.body.subst_monomials(n, &shift).mul_monomial(&h, &q1());
    }
    let cone = ConeH::from_potential(&tropicalize(&total, &LaurentPoly::one(n))?);

    let mut hw = Vec::with_capacity(r);
    let mut wt = Vec::with_capacity(r);
    for i in 0..r {
        let mut row = vec![0i64; n];
        row[i] = 1;
        hw.push(row.clone());
        for j in 0..r {
            row[r + engine.chart_pos(-(j as i64 + 1))] += datum.cartan[j][i];
        }
        wt.push(row);
    }
    Ok((cone, hw, wt))
}

/// A bounded rational polytope: a cone (or any H-form region) together
/// with fiber equations, cached per-coordinate bounds, and optional weight
/// covectors for per-weight lattice counts.
#[derive(Clone, Debug)]
pub struct Polytope {
    region: ConeH,
    weight_rows: Vec<Vec<i64>>,
    bounds: Vec<(Q, Q)>,
    empty: bool,
    bounded: bool,
}

impl Polytope {
    /// Wrap a region, computing feasibility and per-coordinate rational
    /// bounds eagerly (each by one exact LP).
    pub fn from_region(region: ConeH) -> Polytope {
        let n = region.ambient_dim();
        let (a, b) = region.lp_rows();
        if lp::feasible_point(&a, &b).is_err() {
            return Polytope {
                region,
                weight_rows: Vec::new(),
                bounds: Vec::new(),
                empty: true,
                bounded: true,
            };
        }
        let mut bounds = Vec::with_capacity(n);
        let mut bounded = true;
        'coords: for j in 0..n {
            let mut obj = vec![q0(); n];
            obj[j] = q1();
            let lo = match lp::minimize(&obj, &a, &b) {
                lp::LpResult::Optimal { value, .. } => value,
                _ => {
                    bounded = false;
                    break 'coords;
                }
            };
            let hi = match lp::maximize(&obj, &a, &b) {
                lp::LpResult::Optimal { value, .. } => value,
                _ => {
                    bounded = false;
                    break 'coords;
                }
            };
            bounds.push((lo, hi));
        }
        if !bounded {
            bounds.clear();
        }
        Polytope {
            region,
            weight_rows: Vec::new(),
            bounds,
            empty: false,
            bounded,
        }
    }

    /// Attach weight covectors: enumeration will tally each lattice point
    /// under the weight (⟨row_1, x⟩, …, ⟨row_r, x⟩).
    pub fn with_weight_rows(mut self, rows: Vec<Vec<i64>>) -> Polytope {
        self.weight_rows = rows;
        self
    }

    pub fn region(&self) -> &ConeH {
        &self.region
    }

    pub fn is_empty(&self) -> bool {
        self.empty
    }

    pub fn is_bounded(&self) -> bool {
        self.bounded
    }

    /// Cached per-coordinate [min, max]; empty when the polytope is empty
    /// or unbounded.
    pub fn bounds(&self) -> &[(Q, Q)] {
        &self.bounds
    }

    /// Farkas certificate of emptiness (None when nonempty).
    pub fn emptiness_certificate(&self) -> Option<Vec<Q>> {
        self.region.emptiness_certificate()
    }

    /// A relative-interior point with inequality slack > δ, if any.
    pub fn interior_point(&self, delta: &Q) -> Option<Vec<Q>> {
        self.region.interior_point(delta)
    }

    /// Dimension of the solution space of the equation system — an upper
    /// bound for the polytope's affine dimension, and exactly it when a
    /// relative-interior point exists.
    pub fn span_dim(&self) -> usize {
        let eqs = self.region.equations();
        if eqs.is_empty() {
            return self.region.ambient_dim();
        }
        let rows: Vec<Vec<i64>> = eqs.iter().map(|(n, _)| n.clone()).collect();
        let (_, s, _) = smith_normal_form(&rows);
        let rank = (0..rows.len().min(self.region.ambient_dim()))
            .take_while(|&i| s[i][i] != 0)
            .count();
        self.region.ambient_dim() - rank
    }
}

/// The fiber of the tropical highest-weight map over λ: the region cut out
/// of `cone` by the equations ⟨hw_row_i, x⟩ = λ_i.
pub fn hw_fiber(cone: &ConeH, hw_rows: &[Vec<i64>], lambda: &[i64]) -> Polytope {
    assert_eq!(hw_rows.len(), lambda.len(), "one equation per component");
    let mut region = cone.clone();
    for (row, &li) in hw_rows.iter().zip(lambda) {
        region.add_equation(row.clone(), qi(-li));
    }
    Polytope::from_region(region)
}

/// The lattice points of a polytope, with per-weight counts when weight
/// covectors are attached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePointSet {
    points: Vec<Vec<i64>>,
    counts_by_weight: BTreeMap<Weight, u64>,
}

impl LatticePointSet {
    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn counts_by_weight(&self) -> &BTreeMap<Weight, u64> {
        &self.counts_by_weight
    }

    pub fn count_of(&self, nu: &[i64]) -> u64 {
        self.counts_by_weight.get(nu).copied().unwrap_or(0)
    }
}

/// Lexicographic bounding-box recursion: fix coordinates left to right,
/// re-bounding the next coordinate by exact LPs on the restricted system.
fn enumerate_from(
    a: &mut Vec<Vec<Q>>,
    b: &mut Vec<Q>,
    n: usize,
    prefix: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    let d = prefix.len();
    if d == n {
        out.push(prefix.clone());
        return;
    }
    let mut obj = vec![q0(); n];
    obj[d] = q1();
    let lo = match lp::minimize(&obj, a, b) {
        lp::LpResult::Optimal { value, .. } => value,
        lp::LpResult::Infeasible { .. } => return,
        lp::LpResult::Unbounded => unreachable!("restriction of a bounded polytope"),
    };
    let hi = match lp::maximize(&obj, a, b) {
        lp::LpResult::Optimal { value, .. } => value,
        lp::LpResult::Infeasible { .. } => return,
        lp::LpResult::Unbounded => unreachable!("restriction of a bounded polytope"),
    };
    for v in q_ceil_i64(&lo)..=q_floor_i64(&hi) {
        let mut fix_lo = vec![q0(); n];
        fix_lo[d] = q1();
        let mut fix_hi = vec![q0(); n];
        fix_hi[d] = qi(-1);
        a.push(fix_lo);
        b.push(qi(v));
        a.push(fix_hi);
        b.push(qi(-v));
        prefix.push(v);
        enumerate_from(a, b, n, prefix, out);
        prefix.pop();
        a.truncate(a.len() - 2);
        b.truncate(b.len() - 2);
    }
}

/// Enumerate all lattice points, exactly.  The first coordinate's range is
/// partitioned across threads; the result is sorted, so the outcome is
/// deterministic.  Errors with `Unbounded` when the polytope is not
/// bounded (a contract violation upstream).
pub fn enumerate_lattice_points(poly: &Polytope) -> Result<LatticePointSet> {
    if poly.empty {
        return Ok(LatticePointSet {
            points: Vec::new(),
            counts_by_weight: BTreeMap::new(),
        });
    }
    if !poly.bounded {
        return Err(CrystalError::Unbounded(
            "lattice enumeration needs a bounded polytope".into(),
        ));
    }
    let n = poly.region.ambient_dim();
    let (base_a, base_b) = poly.region.lp_rows();
    let mut points = if n == 0 {
        vec![Vec::new()]
    } else {
        let (lo, hi) = &poly.bounds[0];
        let first_coord: Vec<i64> = (q_ceil_i64(lo)..=q_floor_i64(hi)).collect();
        first_coord
            .into_par_iter()
            .map(|v| {
                let mut a = base_a.clone();
                let mut b = base_b.clone();
                let mut fix_lo = vec![q0(); n];
                fix_lo[0] = q1();
                let mut fix_hi = vec![q0(); n];
                fix_hi[0] = qi(-1);
                a.push(fix_lo);
                b.push(qi(v));
                a.push(fix_hi);
                b.push(qi(-v));
                let mut out = Vec::new();
                enumerate_from(&mut a, &mut b, n, &mut vec![v], &mut out);
                out
            })
            .reduce(Vec::new, |mut acc, mut part| {
                acc.append(&mut part);
                acc
            })
    };
    points.sort();
    let mut counts_by_weight = BTreeMap::new();
    if !poly.weight_rows.is_empty() {
        for point in &points {
            let nu: Weight = poly
                .weight_rows
                .iter()
                .map(|row| row.iter().zip(point).map(|(&a, &x)| a * x).sum())
                .collect();
            *counts_by_weight.entry(nu).or_insert(0u64) += 1;
        }
    }
    Ok(LatticePointSet {
        points,
        counts_by_weight,
    })
}

/// The hw-fiber of the dual counting chart over λ, with weight covectors
/// attached — the polytope whose lattice points realize the weight spaces
/// of the requested datum's V_λ.
pub fn counting_fiber(datum: &CartanDatum, word: &[usize], lambda: &[i64]) -> Result<Polytope> {
    let dual = dual_datum(datum);
    let (cone, hw, wt) = counting_chart(&dual, word)?;
    Ok(hw_fiber(&cone, &hw, lambda).with_weight_rows(wt))
}

/// dim V_λ for the requested datum, counted as lattice points of the dual
/// counting fiber.  Non-dominant λ give 0 (the fiber is empty).
pub fn count_dim(datum: &CartanDatum, word: &[usize], lambda: &[i64]) -> Result<u64> {
    Ok(enumerate_lattice_points(&counting_fiber(datum, word, lambda)?)?.len() as u64)
}

/// The multiplicity of the weight ν in V_λ for the requested datum.
pub fn count_weight(
    datum: &CartanDatum,
    word: &[usize],
    lambda: &[i64],
    nu: &[i64],
) -> Result<u64> {
    Ok(enumerate_lattice_points(&counting_fiber(datum, word, lambda)?)?.count_of(nu))
}

/// The full weight-multiplicity table of V_λ from one enumeration.
pub fn weight_table(
    datum: &CartanDatum,
    word: &[usize],
    lambda: &[i64],
) -> Result<BTreeMap<Weight, u64>> {
    Ok(enumerate_lattice_points(&counting_fiber(datum, word, lambda)?)?.counts_by_weight)
}

/// A rational particular solution of the equation system ⟨n, x⟩ + c = 0.
pub(crate) fn particular_solution(eqs: &[(Vec<i64>, Q)], n: usize) -> Vec<Q> {
    let rows: Vec<Vec<Q>> = eqs
        .iter()
        .map(|(nv, c)| {
            let mut row: Vec<Q> = nv.iter().map(|&v| qi(v)).collect();
            row.push(-c.clone());
            row
        })
        .collect();
    let (rref, pivots) = QMat::from_rows(rows).rref();
    assert!(
        !pivots.contains(&n),
        "inconsistent equations on a nonempty region"
    );
    let mut x0 = vec![q0(); n];
    for (ri, &pc) in pivots.iter().enumerate() {
        x0[pc] = rref.at(ri, n).clone();
    }
    x0
}

/// An integral basis of the solution lattice of the homogeneous system
/// (the kernel of the equation normals), as column vectors.
pub(crate) fn kernel_lattice_basis(eqs: &[(Vec<i64>, Q)], n: usize) -> Vec<Vec<i64>> {
    if eqs.is_empty() {
        return (0..n)
            .map(|j| {
                let mut col = vec![0i64; n];
                col[j] = 1;
                col
            })
            .collect();
    }
    let rows: Vec<Vec<i64>> = eqs.iter().map(|(nv, _)| nv.clone()).collect();
    let (_, s, v) = smith_normal_form(&rows);
    let rank = (0..rows.len().min(n)).take_while(|&i| s[i][i] != 0).count();
    (rank..n)
        .map(|j| (0..n).map(|k| v[k][j]).collect())
        .collect()
}

/// Exact Lebesgue volume of {y : a·y ≥ b} in dimension d, assumed bounded.
/// Slices along y_0 between consecutive vertex heights; each slice volume
/// is a polynomial in the height of degree < d on such an interval, so d
/// interior samples and Lagrange interpolation integrate it exactly.
fn volume_rec(a: &[Vec<Q>], b: &[Q], d: usize) -> Q {
    if d == 0 {
        return if b.iter().all(|v| *v <= q0()) {
            q1()
        } else {
            q0()
        };
    }
    // Vertex heights: solutions of d-subsets of tight constraints.
    let mut heights: Vec<Q> = Vec::new();
    let m = a.len();
    let mut choice: Vec<usize> = Vec::with_capacity(d);
    fn combos(
        start: usize,
        m: usize,
        d: usize,
        choice: &mut Vec<usize>,
        a: &[Vec<Q>],
        b: &[Q],
        heights: &mut Vec<Q>,
    ) {
        if choice.len() == d {
            let rows: Vec<Vec<Q>> = choice.iter().map(|&i| a[i].clone()).collect();
            let rhs: Vec<Q> = choice.iter().map(|&i| b[i].clone()).collect();
            if let Some(y) = QMat::from_rows(rows).solve(&rhs) {
                let feasible = a
                    .iter()
                    .zip(b)
                    .all(|(row, bi)| {
                        row.iter()
                            .zip(&y)
                            .fold(q0(), |acc, (c, yi)| acc + c.clone() * yi.clone())
                            >= *bi
                    });
                if feasible && !heights.contains(&y[0]) {
                    heights.push(y[0].clone());
                }
            }
            return;
        }
        for i in start..m {
            choice.push(i);
            combos(i + 1, m, d, choice, a, b, heights);
            choice.pop();
        }
    }
    combos(0, m, d, &mut choice, a, b, &mut heights);
    heights.sort();
    if heights.len() < 2 {
        return q0();
    }
    let mut total = q0();
    for w in heights.windows(2) {
        let (s, t) = (&w[0], &w[1]);
        let width = t.clone() - s.clone();
        // d interior samples for a degree-(d−1) slice polynomial.
        let samples: Vec<Q> = (1..=d)
            .map(|j| s.clone() + qi(j as i64) * width.clone() / qi(d as i64 + 1))
            .collect();
        let values: Vec<Q> = samples
            .iter()
            .map(|h| {
                let a_slice: Vec<Vec<Q>> = a.iter().map(|row| row[1..].to_vec()).collect();
                let b_slice: Vec<Q> = a
                    .iter()
                    .zip(b)
                    .map(|(row, bi)| bi.clone() - row[0].clone() * h.clone())
                    .collect();
                volume_rec(&a_slice, &b_slice, d - 1)
            })
            .collect();
        let coeffs = lagrange_coefficients(&samples, &values);
        // ∫_s^t Σ c_k h^k dh, exactly.
        let mut s_pow = s.clone();
        let mut t_pow = t.clone();
        for (k, c) in coeffs.iter().enumerate() {
            s_pow = if k == 0 { s.clone() } else { s_pow * s.clone() };
            t_pow = if k == 0 { t.clone() } else { t_pow * t.clone() };
            total = total + c.clone() * (t_pow.clone() - s_pow.clone()) / qi(k as i64 + 1);
        }
    }
    total
}

/// Coefficients (constant first) of the interpolating polynomial through
/// the given points, by Lagrange's formula over exact rationals.
fn lagrange_coefficients(xs: &[Q], ys: &[Q]) -> Vec<Q> {
    let n = xs.len();
    let mut coeffs = vec![q0(); n];
    for i in 0..n {
        // Numerator polynomial Π_{j≠i} (h − x_j), times y_i / Π (x_i − x_j).
        let mut num = vec![q0(); n];
        num[0] = q1();
        let mut deg = 0;
        let mut denom = q1();
        for j in 0..n {
            if j == i {
                continue;
            }
            denom = denom * (xs[i].clone() - xs[j].clone());
            // Multiply num by (h − x_j), in place from the top degree down.
            for k in (0..=deg).rev() {
                let c = num[k].clone();
                num[k + 1] = num[k + 1].clone() + c.clone();
                num[k] = -xs[j].clone() * c;
            }
            deg += 1;
        }
        let scale = ys[i].clone() / denom;
        for k in 0..=deg {
            coeffs[k] = coeffs[k].clone() + num[k].clone() * scale.clone();
        }
    }
    coeffs
}

/// Exact rational volume of the polytope, measured in the integral affine
/// lattice of its equation subspace (so a lattice segment of n steps has
/// volume n, a lattice unit square 1, …).  Empty polytopes have volume 0;
/// polytopes that are not full-dimensional in that subspace get the honest
/// degenerate answer 0.
pub fn polytope_volume(poly: &Polytope) -> Result<Q> {
    if poly.empty {
        return Ok(q0());
    }
    if !poly.bounded {
        return Err(CrystalError::Unbounded(
            "volume needs a bounded polytope".into(),
        ));
    }
    let n = poly.region.ambient_dim();
    let eqs = poly.region.equations();
    let x0 = if eqs.is_empty() {
        vec![q0(); n]
    } else {
        particular_solution(eqs, n)
    };
    let basis = kernel_lattice_basis(eqs, n);
    let d = basis.len();
    if d == 0 {
        return Ok(q1());
    }
    // Substitute x = x0 + B·y into the halfspaces.
    let count = poly.region.halfspaces().len();
    let mut a = Vec::with_capacity(count);
    let mut b = Vec::with_capacity(count);
    for (nv, c) in poly.region.halfspaces() {
        let row: Vec<Q> = basis
            .iter()
            .map(|col| qi(nv.iter().zip(col).map(|(&u, &v)| u * v).sum::<i64>()))
            .collect();
        let anchor = nv
            .iter()
            .zip(&x0)
            .fold(q0(), |acc, (&u, xi)| acc + qi(u) * xi.clone());
        a.push(row);
        b.push(-c.clone() - anchor);
    }
    Ok(volume_rec(&a, &b, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{build_cartan, simple_reflect};
    use crate::cluster::{mutate, seed_from_word};
    use crate::reps::{freudenthal, weyl_dim};
    use crate::tropical::{
        bk_cone, bk_cone_in_seed_chart, hw_trop, trop_chart_change, wt_trop, ChartKind,
    };
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rank_one_fibers_are_the_classical_strings() {
        let datum = build_cartan('A', 1).unwrap();
        let (cone, hw, wt) = counting_chart(&datum, &[1]).unwrap();
        let mut normals: Vec<Vec<i64>> =
            cone.halfspaces().iter().map(|(n, _)| n.clone()).collect();
        normals.sort();
        assert_eq!(normals, vec![vec![0, -1], vec![1, 1]]);
        assert_eq!(hw, vec![vec![1, 0]]);
        assert_eq!(wt, vec![vec![1, 2]]);

        for n in 0..=6i64 {
            assert_eq!(count_dim(&datum, &[1], &[n]).unwrap(), (n + 1) as u64);
            assert_eq!(weyl_dim(&datum, &[n]).unwrap(), (n + 1) as u64);
            let table = weight_table(&datum, &[1], &[n]).unwrap();
            for k in 0..=n {
                assert_eq!(table.get(&vec![n - 2 * k]).copied(), Some(1));
            }
            assert_eq!(table.len(), (n + 1) as usize);
        }
        assert_eq!(
            count_weight(&datum, &[1], &[4], &[6]).unwrap(),
            0,
            "outside the weight string"
        );

        // λ = 0: exactly the origin.
        let fiber = counting_fiber(&datum, &[1], &[0]).unwrap();
        let points = enumerate_lattice_points(&fiber).unwrap();
        assert_eq!(points.points(), &[vec![0, 0]]);

        // λ = 2: the three chart points of the sl2 string.
        let fiber = counting_fiber(&datum, &[1], &[2]).unwrap();
        let points = enumerate_lattice_points(&fiber).unwrap();
        assert_eq!(
            points.points(),
            &[vec![2, -2], vec![2, -1], vec![2, 0]]
        );
    }

    #[test]
    fn non_dominant_fibers_are_empty_with_certificates() {
        let a1 = build_cartan('A', 1).unwrap();
        let fiber = counting_fiber(&a1, &[1], &[-1]).unwrap();
        assert!(fiber.is_empty());
        let farkas = fiber.emptiness_certificate().expect("empty fiber");
        assert!(fiber.region().verify_farkas(&farkas));
        assert_eq!(count_dim(&a1, &[1], &[-1]).unwrap(), 0);

        let a2 = build_cartan('A', 2).unwrap();
        for lambda in [[-1, 2], [0, -1], [-3, -3]] {
            let fiber = counting_fiber(&a2, &[1, 2, 1], &lambda).unwrap();
            assert!(fiber.is_empty(), "λ = {lambda:?} is not dominant");
            let farkas = fiber.emptiness_certificate().expect("empty fiber");
            assert!(fiber.region().verify_farkas(&farkas));
        }
        for lambda in [[0, 0], [1, 0], [2, 3]] {
            let fiber = counting_fiber(&a2, &[1, 2, 1], &lambda).unwrap();
            assert!(!fiber.is_empty(), "λ = {lambda:?} is dominant");
            assert!(fiber.emptiness_certificate().is_none());
        }
    }

    /// Full multiplicity tables against the independent oracle, for both
    /// reduced words of a rank-2 datum.
    fn check_tables(family: char, rank: usize, words: &[Vec<usize>], lambdas: &[Vec<i64>]) {
        let datum = build_cartan(family, rank).unwrap();
        for lambda in lambdas {
            let oracle = freudenthal(&datum, lambda).unwrap();
            for word in words {
                let table = weight_table(&datum, word, lambda).unwrap();
                assert_eq!(
                    table, oracle.mults,
                    "{family}{rank}, word {word:?}, λ = {lambda:?}"
                );
                assert_eq!(
                    count_dim(&datum, word, lambda).unwrap(),
                    weyl_dim(&datum, lambda).unwrap()
                );
            }
        }
    }

    #[test]
    fn rank_two_tables_match_the_oracle_for_both_words() {
        check_tables(
            'A',
            2,
            &[vec![1, 2, 1], vec![2, 1, 2]],
            &[
                vec![0, 0],
                vec![1, 0],
                vec![0, 1],
                vec![1, 1],
                vec![2, 1],
                vec![3, 0],
                vec![2, 2],
            ],
        );
        assert_eq!(
            count_dim(&build_cartan('A', 2).unwrap(), &[1, 2, 1], &[1, 0]).unwrap(),
            3
        );
    }

    #[test]
    fn non_simply_laced_tables_match_the_oracle() {
        check_tables(
            'C',
            2,
            &[vec![1, 2, 1, 2], vec![2, 1, 2, 1]],
            &[vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 0]],
        );
        check_tables('B', 2, &[vec![1, 2, 1, 2]], &[vec![1, 0], vec![0, 1]]);
        check_tables('G', 2, &[vec![1, 2, 1, 2, 1, 2]], &[vec![1, 0]]);
    }

    #[test]
    fn weight_counts_are_weyl_symmetric() {
        let datum = build_cartan('A', 2).unwrap();
        let table = weight_table(&datum, &[1, 2, 1], &[2, 1]).unwrap();
        assert!(!table.is_empty());
        for (nu, &m) in &table {
            for i in 1..=2 {
                let refl = simple_reflect(&datum, i, nu).unwrap();
                assert_eq!(table.get(&refl).copied(), Some(m), "ν = {nu:?}, s_{i}");
            }
        }
    }

    #[test]
    fn adjoint_fiber_is_full_dimensional_in_its_span() {
        let datum = build_cartan('A', 2).unwrap();
        let fiber = counting_fiber(&datum, &[1, 2, 1], &[1, 1]).unwrap();
        assert!(fiber.is_bounded());
        assert!(!fiber.is_empty());
        assert_eq!(fiber.span_dim(), 3);
        let inner = fiber.interior_point(&q0()).expect("relative interior");
        assert!(fiber.region().contains_margin(&inner, &q0()));
        assert_eq!(enumerate_lattice_points(&fiber).unwrap().len(), 8);
        assert_eq!(
            enumerate_lattice_points(&fiber).unwrap().count_of(&[0, 0]),
            2
        );
    }

    #[test]
    fn segment_volumes_count_lattice_lengths() {
        let datum = build_cartan('A', 1).unwrap();
        for n in 0..=5i64 {
            let fiber = counting_fiber(&datum, &[1], &[n]).unwrap();
            assert_eq!(polytope_volume(&fiber).unwrap(), qi(n));
        }
    }

    #[test]
    fn adjoint_string_volumes_scale_cubically() {
        let datum = build_cartan('A', 2).unwrap();
        let word = [1usize, 2, 1];
        let base = polytope_volume(&counting_fiber(&datum, &word, &[1, 1]).unwrap()).unwrap();
        assert_eq!(base, qi(1));
        for k in 2..=3i64 {
            let fiber = counting_fiber(&datum, &word, &[k, k]).unwrap();
            assert_eq!(polytope_volume(&fiber).unwrap(), qi(k * k * k) * base.clone());
        }
        // Leading Ehrhart behavior: the third finite difference of the
        // cubic count sequence dim V_{kρ} = (k+1)³ recovers 3!·volume.
        let counts: Vec<i64> = (0..=3i64)
            .map(|k| count_dim(&datum, &word, &[k, k]).unwrap() as i64)
            .collect();
        assert_eq!(counts, vec![1, 8, 27, 64]);
        let d3 = counts[3] - 3 * counts[2] + 3 * counts[1] - counts[0];
        assert_eq!(qi(d3), qi(6) * base);
    }

    #[test]
    fn enumeration_is_deterministic_across_runs() {
        let datum = build_cartan('A', 2).unwrap();
        let fiber = counting_fiber(&datum, &[1, 2, 1], &[2, 2]).unwrap();
        let first = enumerate_lattice_points(&fiber).unwrap();
        let second = enumerate_lattice_points(&fiber).unwrap();
        assert_eq!(first, second);
        assert_eq!(first.len(), 27);
        let total: u64 = first.counts_by_weight().values().sum();
        assert_eq!(total, first.len() as u64);
    }

    /// Fibers of the cluster-chart cone transport bijectively through a
    /// mutation: the tropical chart change has integer unimodular pieces
    /// fixing the frozen coordinates, so for every integral λ the fiber's
    /// lattice points, their count, and their weight tallies all agree
    /// between the initial chart and the mutated one.
    #[test]
    fn counts_survive_chart_mutation_on_random_fibers() {
        let mut cases = 0usize;
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        for (family, rank, word, muts, hi) in [
            ('A', 2usize, vec![1usize, 2, 1], vec![1i64], 2i64),
            ('A', 3, vec![1, 2, 1, 3, 2, 1], vec![1, 2, 3], 1),
        ] {
            let datum = build_cartan(family, rank).unwrap();
            let seed = seed_from_word(&datum, &word).unwrap();
            let cone0 = bk_cone(&datum, &word, ChartKind::Cluster).unwrap();
            let hw = hw_trop(&datum, &word, ChartKind::Cluster).unwrap();
            let wt = wt_trop(&datum, &word, ChartKind::Cluster).unwrap();
            for &k in &muts {
                let mutated = mutate(&seed, k).unwrap();
                let cone1 = bk_cone_in_seed_chart(&mutated).unwrap();
                let map = trop_chart_change(&seed, &mutated).unwrap();
                for _ in 0..7 {
                    let lambda: Vec<i64> = (0..rank).map(|_| rng.gen_range(0..=hi)).collect();
                    let fiber0 = hw_fiber(&cone0, &hw, &lambda).with_weight_rows(wt.clone());
                    let fiber1 = hw_fiber(&cone1, &hw, &lambda).with_weight_rows(wt.clone());
                    let pts0 = enumerate_lattice_points(&fiber0).unwrap();
                    let pts1 = enumerate_lattice_points(&fiber1).unwrap();
                    assert_eq!(
                        pts0.len(),
                        pts1.len(),
                        "{family}{rank} μ_{k} λ = {lambda:?}"
                    );
                    assert_eq!(pts0.counts_by_weight(), pts1.counts_by_weight());
                    let mut mapped: Vec<Vec<i64>> = pts0
                        .points()
                        .iter()
                        .map(|p| {
                            let x: Vec<Q> = p.iter().map(|&v| qi(v)).collect();
                            map.apply(&x)
                                .expect("fiber point lies in some chamber")
                                .iter()
                                .map(|q| {
                                    assert!(q.is_integer(), "integer pieces map ℤ to ℤ");
                                    q.to_integer().to_i64().unwrap()
                                })
                                .collect()
                        })
                        .collect();
                    mapped.sort();
                    assert_eq!(&mapped, pts1.points());
                    cases += 1;
                }
            }
        }
        assert!(cases >= 20, "exercised {cases} fiber transports");
    }
}
