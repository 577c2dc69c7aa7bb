//! Integral-affine width certificates for string polytopes.  A
//! unimodular affine embedding of the dilated standard simplex
//! ℓ·conv{0, e_1, …, e_m} into the polytope certifies the Gromov-width
//! lower bound, whose group-theoretic value is min⟨λ, α∨⟩ over positive
//! coroots.  All sizes are reported in units where the unit simplex has
//! width 1 (the 2π factor is left to presentation layers).

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::cartan::{positive_roots, CartanDatum};
use crate::error::{CrystalError, Result};
use crate::linalg::imat_det;
use crate::lp;
use crate::num::{q0, qi, Q};
use crate::polytopes::{kernel_lattice_basis, particular_solution, Polytope};

/// min over positive coroots of ⟨λ, α∨⟩, the width the certificates aim
/// for.  With λ = Σ λ_i ω_i and α∨ = Σ c_k α_k∨ the pairing is Σ λ_k c_k.
pub fn lambda_bound(datum: &CartanDatum, lambda: &[i64]) -> Result<Q> {
    assert_eq!(lambda.len(), datum.rank, "weight arity");
    if !datum.is_dominant(lambda) {
        return Err(CrystalError::NotDominant(format!(
            "the width bound is defined for dominant weights, got {lambda:?}"
        )));
    }
    let best = positive_roots(datum)?
        .iter()
        .map(|root| {
            lambda
                .iter()
                .zip(&root.coroot_simple)
                .map(|(&l, &c)| l * c)
                .sum::<i64>()
        })
        .min()
        .expect("every positive rank has a positive root");
    Ok(qi(best))
}

/// Vertices {0, ℓe_1, …, ℓe_m} of the dilated standard simplex.
pub fn simplex_vertices(m: usize, ell: &Q) -> Vec<Vec<Q>> {
    assert!(*ell > q0(), "simplex size must be positive");
    let mut vertices = vec![vec![q0(); m]];
    for i in 0..m {
        let mut v = vec![q0(); m];
        v[i] = ell.clone();
        vertices.push(v);
    }
    vertices
}

/// An embedding certificate: y ↦ A·y + b sends the size-ℓ standard
/// simplex into the target polytope's affine slice, with A unimodular so
/// the embedding respects the integral-affine structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WidthCertificate {
    /// Row-major m×m integer matrix with determinant ±1.
    pub matrix: Vec<Vec<i64>>,
    /// Translation part of the affine embedding.
    pub translation: Vec<Q>,
    /// Simplex size; the certified width lower bound.
    pub ell: Q,
    /// Fingerprint of the target polytope's sliced inequality system.
    pub target: String,
}

impl WidthCertificate {
    /// The conformal dilate: the same matrix embeds the size-kℓ simplex
    /// into the k-fold dilate of the target (translation scales along).
    pub fn scaled(&self, k: i64) -> WidthCertificate {
        assert!(k > 0, "conformal scaling factor must be positive");
        WidthCertificate {
            matrix: self.matrix.clone(),
            translation: self.translation.iter().map(|v| v.clone() * qi(k)).collect(),
            ell: self.ell.clone() * qi(k),
            target: self.target.clone(),
        }
    }
}

/// Search result: either a certificate meeting the requested size, or
/// the best embedding found (possibly none) with not-found status —
/// the search is sound but incomplete, so not-found is never a refutation.
#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Found(WidthCertificate),
    NotFound(Option<WidthCertificate>),
}

impl SearchOutcome {
    pub fn found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn certificate(&self) -> Option<&WidthCertificate> {
        match self {
            SearchOutcome::Found(c) => Some(c),
            SearchOutcome::NotFound(c) => c.as_ref(),
        }
    }
}

/// Verdict of an exact certificate check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateCheck {
    Valid,
    SizeMismatch,
    NonPositive,
    NotUnimodular,
    Violation { vertex: usize, facet: usize },
}

impl CertificateCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, CertificateCheck::Valid)
    }
}

/// The polytope restricted to the affine span of its equations, in the
/// integral basis of the equations' kernel lattice: rows ⟨a, y⟩ ≥ rhs.
struct SliceSystem {
    dim: usize,
    rows: Vec<(Vec<i64>, Q)>,
}

impl SliceSystem {
    fn fingerprint(&self) -> String {
        // FNV-1a over the printed rows: a stable id for the certificate.
        let mut h: u64 = 0xcbf29ce484222325;
        for byte in format!("{:?}", self.rows).bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        format!("{}d-{}rows-{:016x}", self.dim, self.rows.len(), h)
    }
}

fn slice_system(poly: &Polytope) -> SliceSystem {
    let region = poly.region();
    let n = region.ambient_dim();
    let x0 = particular_solution(region.equations(), n);
    let basis = kernel_lattice_basis(region.equations(), n);
    let rows = region
        .halfspaces()
        .iter()
        .map(|(nrm, c)| {
            let a: Vec<i64> = basis
                .iter()
                .map(|bvec| nrm.iter().zip(bvec).map(|(&u, &v)| u * v).sum())
                .collect();
            let shift = nrm
                .iter()
                .zip(&x0)
                .fold(q0(), |acc, (&u, v)| acc + qi(u) * v.clone());
            (a, -c.clone() - shift)
        })
        .collect();
    SliceSystem {
        dim: basis.len(),
        rows,
    }
}

/// Maximize ℓ over translations b such that b and b + ℓ·col_i all satisfy
/// the slice system; `None` when the system is infeasible.  With a single
/// column this computes the segment width in that direction.
fn best_fit(slice: &SliceSystem, cols: &[Vec<i64>]) -> Option<(Q, Vec<Q>)> {
    let d = slice.dim;
    let mut a = Vec::with_capacity(slice.rows.len() * (cols.len() + 1) + 1);
    let mut b = Vec::with_capacity(slice.rows.len() * (cols.len() + 1) + 1);
    for (row, rhs) in &slice.rows {
        let qrow: Vec<Q> = row.iter().map(|&v| qi(v)).collect();
        let mut r0 = qrow.clone();
        r0.push(q0());
        a.push(r0);
        b.push(rhs.clone());
        for col in cols {
            let coeff: i64 = row.iter().zip(col).map(|(&u, &v)| u * v).sum();
            let mut ri = qrow.clone();
            ri.push(qi(coeff));
            a.push(ri);
            b.push(rhs.clone());
        }
    }
    let mut objective = vec![q0(); d + 1];
    objective[d] = qi(1);
    a.push(objective.clone());
    b.push(q0());
    match lp::maximize(&objective, &a, &b) {
        lp::LpResult::Optimal { x, value } => Some((value, x[..d].to_vec())),
        lp::LpResult::Infeasible { .. } => None,
        lp::LpResult::Unbounded => unreachable!("the target polytope is bounded"),
    }
}

/// All signed permutation matrices of size d, as column lists, in a
/// deterministic lexicographic order.
fn signed_permutations(d: usize) -> Vec<Vec<Vec<i64>>> {
    fn perms(rest: &mut Vec<usize>, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(acc.clone());
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            acc.push(v);
            perms(rest, acc, out);
            acc.pop();
            rest.insert(i, v);
        }
    }
    let mut orders = Vec::new();
    perms(&mut (0..d).collect(), &mut Vec::new(), &mut orders);
    let mut set = BTreeSet::new();
    for order in &orders {
        for signs in 0..(1u32 << d) {
            let cols: Vec<Vec<i64>> = (0..d)
                .map(|i| {
                    let mut col = vec![0i64; d];
                    col[order[i]] = if signs >> i & 1 == 1 { -1 } else { 1 };
                    col
                })
                .collect();
            set.insert(cols);
        }
    }
    set.into_iter().collect()
}

/// Products of a signed permutation with one elementary shear, on either
/// side, excluding the plain signed permutations themselves.
fn shear_products(d: usize, perms: &[Vec<Vec<i64>>]) -> Vec<Vec<Vec<i64>>> {
    let plain: BTreeSet<&Vec<Vec<i64>>> = perms.iter().collect();
    let mut set = BTreeSet::new();
    for p in perms {
        for i in 0..d {
            for j in 0..d {
                if i == j {
                    continue;
                }
                for s in [1i64, -1] {
                    // P·E_{ij}(s): column j gains s times column i.
                    let mut right = p.clone();
                    for k in 0..d {
                        right[j][k] += s * p[i][k];
                    }
                    if !plain.contains(&right) {
                        set.insert(right);
                    }
                    // E_{ij}(s)·P: every column's entry i gains s times
                    // its entry j.
                    let mut left = p.clone();
                    for col in &mut left {
                        col[i] += s * col[j];
                    }
                    if !plain.contains(&left) {
                        set.insert(left);
                    }
                }
            }
        }
    }
    set.into_iter().collect()
}

fn det_of_columns(cols: &[Vec<i64>]) -> i64 {
    let d = cols.len();
    let rows: Vec<Vec<i64>> = (0..d).map(|r| (0..d).map(|c| cols[c][r]).collect()).collect();
    imat_det(&rows)
}

/// Evaluate a candidate phase in parallel; deterministic because results
/// are collected in candidate order before the scan.
fn evaluate_phase(
    slice: &SliceSystem,
    candidates: &[Vec<Vec<i64>>],
    target: &Q,
    best: &mut Option<(Q, Vec<Q>, Vec<Vec<i64>>)>,
) -> Option<(Q, Vec<Q>, Vec<Vec<i64>>)> {
    let fits: Vec<Option<(Q, Vec<Q>)>> = candidates
        .par_iter()
        .map(|cols| best_fit(slice, cols))
        .collect();
    for (cols, fit) in candidates.iter().zip(fits) {
        let Some((ell, b)) = fit else { continue };
        if ell >= *target {
            return Some((ell, b, cols.clone()));
        }
        let improves = match best {
            Some((cur, _, _)) => ell > *cur,
            None => true,
        };
        if improves {
            *best = Some((ell, b, cols.clone()));
        }
    }
    None
}

fn certificate(slice: &SliceSystem, ell: Q, b: Vec<Q>, cols: &[Vec<i64>]) -> WidthCertificate {
    let d = slice.dim;
    let matrix: Vec<Vec<i64>> = (0..d).map(|r| (0..d).map(|c| cols[c][r]).collect()).collect();
    WidthCertificate {
        matrix,
        translation: b,
        ell,
        target: slice.fingerprint(),
    }
}

/// Per-direction segment widths for every nonzero integer vector in the
/// entry box, keyed by the lexicographically positive representative.
fn direction_widths(slice: &SliceSystem, bound: i64) -> BTreeMap<Vec<i64>, Q> {
    let dirs = enumerate_box(slice.dim, bound)
        .into_iter()
        .filter(|u| u.iter().any(|&v| v != 0))
        .filter(|u| u.iter().find(|&&v| v != 0).is_some_and(|&v| v > 0))
        .collect::<Vec<_>>();
    let widths: Vec<Q> = dirs
        .par_iter()
        .map(|u| {
            best_fit(slice, std::slice::from_ref(u))
                .map(|(w, _)| w)
                .unwrap_or_else(q0)
        })
        .collect();
    dirs.into_iter().zip(widths).collect()
}

fn canonical_direction(u: &[i64]) -> Vec<i64> {
    match u.iter().find(|&&v| v != 0) {
        Some(&v) if v < 0 => u.iter().map(|&w| -w).collect(),
        _ => u.to_vec(),
    }
}

fn enumerate_box(d: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        let mut next = Vec::with_capacity(out.len() * (2 * bound as usize + 1));
        for prefix in &out {
            for v in -bound..=bound {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Rank of the columns over ℚ, for pruning dependent partial choices.
fn column_rank(cols: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<Q>> = cols.iter().map(|c| c.iter().map(|&v| qi(v)).collect()).collect();
    let mut rank = 0;
    let width = m.first().map_or(0, Vec::len);
    for col in 0..width {
        if let Some(p) = (rank..m.len()).find(|&r| m[r][col] != q0()) {
            m.swap(rank, p);
            let pivot = m[rank][col].clone();
            for r in rank + 1..m.len() {
                let f = m[r][col].clone() / pivot.clone();
                for c in col..width {
                    let sub = f.clone() * m[rank][c].clone();
                    m[r][c] -= sub;
                }
            }
            rank += 1;
        }
    }
    rank
}

/// Tuple cap for the brute phase; beyond it the phase truncates (the
/// search stays sound, merely more incomplete).
const BRUTE_CAP: usize = 2_000_000;

/// Search for a unimodular simplex embedding of size ≥ `ell_target`,
/// trying signed permutations, then one-shear products, then integer
/// matrices with entries in [−entry_bound, entry_bound] and det ±1
/// (pruned by per-direction segment widths).  Candidates are processed
/// in parallel with a deterministic first-success rule.
pub fn search_embedding(
    poly: &Polytope,
    ell_target: &Q,
    entry_bound: i64,
) -> Result<SearchOutcome> {
    if !poly.is_bounded() {
        return Err(CrystalError::Unbounded(
            "width search needs a bounded target polytope".into(),
        ));
    }
    let slice = slice_system(poly);
    let d = slice.dim;
    if d > 4 {
        return Err(CrystalError::UnsupportedType(format!(
            "the width search is desk-scale (dimension ≤ 4), got {d}"
        )));
    }
    if poly.is_empty() || d == 0 || entry_bound < 1 {
        return Ok(SearchOutcome::NotFound(None));
    }

    let mut best: Option<(Q, Vec<Q>, Vec<Vec<i64>>)> = None;
    let perms = signed_permutations(d);
    if let Some((ell, b, cols)) = evaluate_phase(&slice, &perms, ell_target, &mut best) {
        return Ok(SearchOutcome::Found(certificate(&slice, ell, b, &cols)));
    }
    let shears = shear_products(d, &perms);
    if let Some((ell, b, cols)) = evaluate_phase(&slice, &shears, ell_target, &mut best) {
        return Ok(SearchOutcome::Found(certificate(&slice, ell, b, &cols)));
    }

    // Brute phase: only directions wide enough to matter can be columns
    // of a candidate that reaches the target or improves the best.
    let widths = direction_widths(&slice, entry_bound);
    let floor = best.as_ref().map(|(l, _, _)| l.clone()).unwrap_or_else(q0);
    let allowed: Vec<Vec<i64>> = enumerate_box(d, entry_bound)
        .into_iter()
        .filter(|u| u.iter().any(|&v| v != 0))
        .filter(|u| {
            let w = &widths[&canonical_direction(u)];
            *w >= *ell_target || *w > floor
        })
        .collect();
    let tried: BTreeSet<Vec<Vec<i64>>> = perms.into_iter().chain(shears).collect();
    let mut tuples: Vec<Vec<Vec<i64>>> = Vec::new();
    let mut assemble = |cols: &mut Vec<Vec<i64>>, tuples: &mut Vec<Vec<Vec<i64>>>| {};
    // Recursive assembly with rank pruning, lexicographic order.
    fn assemble_columns(
        allowed: &[Vec<i64>],
        d: usize,
        cols: &mut Vec<Vec<i64>>,
        tried: &BTreeSet<Vec<Vec<i64>>>,
        out: &mut Vec<Vec<Vec<i64>>>,
    ) {
        if out.len() >= BRUTE_CAP {
            return;
        }
        if cols.len() == d {
            if det_of_columns(cols).abs() == 1 && !tried.contains(cols) {
                out.push(cols.clone());
            }
            return;
        }
        for u in allowed {
            cols.push(u.clone());
            if column_rank(cols) == cols.len() {
                assemble_columns(allowed, d, cols, tried, out);
            }
            cols.pop();
        }
    }
    assemble_columns(&allowed, d, &mut Vec::new(), &tried, &mut tuples);
    if let Some((ell, b, cols)) = evaluate_phase(&slice, &tuples, ell_target, &mut best) {
        return Ok(SearchOutcome::Found(certificate(&slice, ell, b, &cols)));
    }

    Ok(SearchOutcome::NotFound(best.map(|(ell, b, cols)| {
        certificate(&slice, ell, b, &cols)
    })))
}

/// A sound upper bound on the best LP value over *every* candidate matrix
/// within the entry bound: the best over signed permutations and shears,
/// improved only by matrices all of whose columns have segment width
/// above that value — any other candidate is dominated by a column's
/// width.  Exact whenever the pruned enumeration completes.
pub fn width_upper_bound(poly: &Polytope, entry_bound: i64) -> Result<Q> {
    if !poly.is_bounded() {
        return Err(CrystalError::Unbounded(
            "width bounds need a bounded target polytope".into(),
        ));
    }
    let slice = slice_system(poly);
    let d = slice.dim;
    if poly.is_empty() || d == 0 || entry_bound < 1 {
        return Ok(q0());
    }
    let mut best: Option<(Q, Vec<Q>, Vec<Vec<i64>>)> = None;
    let unreachable_target = {
        // No candidate stops the scan early, so the phase returns the max.
        let widths = direction_widths(&slice, 1);
        widths.values().fold(q0(), |a, b| if a > *b { a } else { b.clone() }) + qi(1)
    };
    let perms = signed_permutations(d);
    evaluate_phase(&slice, &perms, &unreachable_target, &mut best);
    let shears = shear_products(d, &perms);
    evaluate_phase(&slice, &shears, &unreachable_target, &mut best);
    let floor = best.as_ref().map(|(l, _, _)| l.clone()).unwrap_or_else(q0);

    let widths = direction_widths(&slice, entry_bound);
    let allowed: Vec<Vec<i64>> = enumerate_box(d, entry_bound)
        .into_iter()
        .filter(|u| u.iter().any(|&v| v != 0))
        .filter(|u| widths[&canonical_direction(u)] > floor)
        .collect();
    if allowed.is_empty() {
        return Ok(floor);
    }
    let widest = allowed
        .iter()
        .map(|u| widths[&canonical_direction(u)].clone())
        .fold(q0(), |a, b| if a > b { a } else { b });
    let tried = BTreeSet::new();
    let mut tuples = Vec::new();
    fn assemble_columns(
        allowed: &[Vec<i64>],
        d: usize,
        cols: &mut Vec<Vec<i64>>,
        tried: &BTreeSet<Vec<Vec<i64>>>,
        out: &mut Vec<Vec<Vec<i64>>>,
    ) {
        if out.len() >= BRUTE_CAP {
            return;
        }
        if cols.len() == d {
            if det_of_columns(cols).abs() == 1 && !tried.contains(cols) {
                out.push(cols.clone());
            }
            return;
        }
        for u in allowed {
            cols.push(u.clone());
            if column_rank(cols) == cols.len() {
                assemble_columns(allowed, d, cols, tried, out);
            }
            cols.pop();
        }
    }
    assemble_columns(&allowed, d, &mut Vec::new(), &tried, &mut tuples);
    if tuples.len() >= BRUTE_CAP {
        // Truncated: fall back to the widest column, still a sound bound.
        return Ok(if widest > floor { widest } else { floor });
    }
    evaluate_phase(&slice, &tuples, &unreachable_target, &mut best);
    Ok(best.map(|(l, _, _)| l).unwrap_or_else(q0))
}

/// Exact rational check of a certificate against a polytope: shape, det
/// ±1, positivity, and every simplex vertex against every sliced facet
/// with the requested margin (0 = closed containment).
pub fn check_certificate(cert: &WidthCertificate, poly: &Polytope, margin: &Q) -> CertificateCheck {
    let slice = slice_system(poly);
    let d = slice.dim;
    if cert.matrix.len() != d
        || cert.matrix.iter().any(|row| row.len() != d)
        || cert.translation.len() != d
    {
        return CertificateCheck::SizeMismatch;
    }
    if cert.ell <= q0() {
        return CertificateCheck::NonPositive;
    }
    if d > 0 && imat_det(&cert.matrix).abs() != 1 {
        return CertificateCheck::NotUnimodular;
    }
    let vertices: Vec<Vec<Q>> = simplex_vertices(d, &cert.ell)
        .into_iter()
        .map(|v| {
            (0..d)
                .map(|r| {
                    cert.matrix[r]
                        .iter()
                        .zip(&v)
                        .fold(cert.translation[r].clone(), |acc, (&a, y)| {
                            acc + qi(a) * y.clone()
                        })
                })
                .collect()
        })
        .collect();
    for (vi, v) in vertices.iter().enumerate() {
        for (fi, (row, rhs)) in slice.rows.iter().enumerate() {
            let lhs = row
                .iter()
                .zip(v)
                .fold(q0(), |acc, (&a, y)| acc + qi(a) * y.clone());
            if lhs < rhs.clone() + margin.clone() {
                return CertificateCheck::Violation {
                    vertex: vi,
                    facet: fi,
                };
            }
        }
    }
    CertificateCheck::Valid
}

/// Closed-containment validity (margin 0).
pub fn verify_certificate(cert: &WidthCertificate, poly: &Polytope) -> bool {
    check_certificate(cert, poly, &q0()).is_valid()
}
