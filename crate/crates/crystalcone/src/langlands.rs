//! Comparison maps between a cell's tropical charts and the Langlands
//! dual cell's: the monomial comparison z∨_k ↦ z_k^{d_{|i_k|}}, its
//! tropicalization as an integer diagonal map, LP-certified isomorphism
//! of the real potential cones, and compatibility with the twist between
//! plain and twisted reduced charts.
//!
//! The dual cell lives over the transposed Cartan matrix with the same
//! reduced word, so both charts share an ambient ℝ^{r+m} (torus block in
//! fundamental-weight character coordinates, chart block in the engine's
//! label order) and the comparison acts block-diagonally.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cartan::{dual_datum, CartanDatum};
use crate::error::{CrystalError, Result};
use crate::lp;
use crate::num::{q0, qi, Q};
use crate::symgroup::Engine;
use crate::tropical::{tropicalize, ConeH, TropicalForm};

/// The tropicalized comparison map Ψ^t between a cell's reduced-chart
/// coordinates and the Langlands dual cell's: an integer diagonal acting
/// as ψ_h = diag(d_1, …, d_r) on the torus block and as d_{|i_k|} on the
/// chart coordinate with label k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonMap {
    h_diag: Vec<i64>,
    chart_diag: Vec<i64>,
}

impl ComparisonMap {
    /// Diagonal of ψ_h on the torus factor (the symmetrizer).
    pub fn h_block(&self) -> &[i64] {
        &self.h_diag
    }

    /// Diagonal on the chart coordinates, in the engine's label order.
    pub fn chart_diag(&self) -> &[i64] {
        &self.chart_diag
    }

    pub fn ambient(&self) -> usize {
        self.h_diag.len() + self.chart_diag.len()
    }

    /// The full diagonal, torus block first.
    pub fn diagonal(&self) -> Vec<i64> {
        let mut d = self.h_diag.clone();
        d.extend_from_slice(&self.chart_diag);
        d
    }

    pub fn det(&self) -> i64 {
        self.diagonal().iter().product()
    }

    /// Ψ^t is integral both ways exactly when every symmetrizer entry is
    /// 1 (the simply-laced case); otherwise the inverse is only rational.
    pub fn integral_inverse(&self) -> bool {
        self.diagonal().iter().all(|&d| d == 1)
    }

    pub fn apply(&self, x: &[Q]) -> Vec<Q> {
        self.diagonal()
            .iter()
            .zip(x)
            .map(|(&d, v)| qi(d) * v.clone())
            .collect()
    }

    pub fn apply_i(&self, x: &[i64]) -> Vec<i64> {
        self.diagonal().iter().zip(x).map(|(&d, v)| d * v).collect()
    }

    pub fn apply_inverse(&self, y: &[Q]) -> Vec<Q> {
        self.diagonal()
            .iter()
            .zip(y)
            .map(|(&d, v)| v.clone() / qi(d))
            .collect()
    }
}

fn label_letter(word: &[usize], k: i64) -> usize {
    if k < 0 {
        (-k) as usize
    } else {
        word[k as usize - 1]
    }
}

/// Ψ^t for the given cell: torus diagonal = the symmetrizer, chart
/// diagonal = d of each chart label's letter.  It maps the cell's
/// reduced-chart tropical points onto the dual cell's.
pub fn comparison_trop(datum: &CartanDatum, word: &[usize]) -> Result<ComparisonMap> {
    let engine = Engine::new(datum, word)?;
    let chart_diag = engine
        .l_set()
        .iter()
        .map(|&k| datum.symmetrizer[label_letter(word, k) - 1])
        .collect();
    Ok(ComparisonMap {
        h_diag: datum.symmetrizer.clone(),
        chart_diag,
    })
}

/// One failed facet implication in a cone-isomorphism check.  `witness`
/// is a point of the source system whose image violates the target facet.
#[derive(Clone, Debug)]
pub struct IsoViolation {
    pub forward: bool,
    pub facet: usize,
    pub witness: Vec<Q>,
}

/// Outcome of the double-inclusion check Ψ(C) ⊆ C∨ and Ψ⁻¹(C∨) ⊆ C, one
/// exact LP per facet in each direction.
#[derive(Clone, Debug)]
pub struct ConeIsoReport {
    pub facets_forward: usize,
    pub facets_backward: usize,
    pub violations: Vec<IsoViolation>,
}

impl ConeIsoReport {
    pub fn is_isomorphism(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check one pulled-back facet row against a source system; `None` means
/// implied, otherwise a concrete violating point of the source.  When the
/// violation is an unbounded direction (the generic case over a cone), a
/// witness is recovered by forcing the violation into a feasibility LP.
fn facet_violation(a: &[Vec<Q>], b: &[Q], row: &[Q], rhs: &Q) -> Option<Vec<Q>> {
    match lp::minimize(row, a, b) {
        lp::LpResult::Optimal { x, value } => {
            if value >= *rhs {
                None
            } else {
                Some(x)
            }
        }
        lp::LpResult::Unbounded => {
            let mut aug_a = a.to_vec();
            let mut aug_b = b.to_vec();
            aug_a.push(row.iter().map(|v| -v.clone()).collect());
            aug_b.push(qi(1) - rhs.clone());
            let w = lp::feasible_point(&aug_a, &aug_b)
                .expect("an unbounded violation reaches any finite level");
            Some(w)
        }
        // An empty source cone implies everything vacuously.
        lp::LpResult::Infeasible { .. } => None,
    }
}

fn facet_rows(cone: &ConeH) -> Vec<(Vec<Q>, Q)> {
    let mut rows: Vec<(Vec<Q>, Q)> = cone
        .halfspaces()
        .iter()
        .map(|(n, c)| (n.iter().map(|&v| qi(v)).collect(), -c.clone()))
        .collect();
    for (n, c) in cone.equations() {
        let qrow: Vec<Q> = n.iter().map(|&v| qi(v)).collect();
        rows.push((qrow.clone(), -c.clone()));
        rows.push((qrow.iter().map(|v| -v.clone()).collect(), c.clone()));
    }
    rows
}

/// Certify that Ψ^t restricts to a bijection of the two real cones:
/// every facet of the target is implied by the transformed source system,
/// in both directions, each implication an exact LP.  A false result
/// carries the violating facet and (when finite) a witness point.
pub fn verify_real_cone_isomorphism(
    cone_g: &ConeH,
    cone_g_dual: &ConeH,
    map: &ComparisonMap,
) -> ConeIsoReport {
    let diag = map.diagonal();
    let (a_g, b_g) = cone_g.lp_rows();
    let (a_d, b_d) = cone_g_dual.lp_rows();
    let mut violations = Vec::new();

    // Forward: x ∈ C ⟹ Ψx ∈ C∨, i.e. ⟨n∨, Ψx⟩ = ⟨Ψᵀn∨, x⟩ ≥ −c∨ on C.
    let dual_facets = facet_rows(cone_g_dual);
    for (i, (n, rhs)) in dual_facets.iter().enumerate() {
        let pulled: Vec<Q> = n
            .iter()
            .zip(&diag)
            .map(|(v, &d)| v.clone() * qi(d))
            .collect();
        if let Some(witness) = facet_violation(&a_g, &b_g, &pulled, rhs) {
            violations.push(IsoViolation {
                forward: true,
                facet: i,
                witness,
            });
        }
    }

    // Backward: y ∈ C∨ ⟹ Ψ⁻¹y ∈ C, i.e. ⟨(Ψ⁻¹)ᵀn, y⟩ ≥ −c on C∨.
    let primal_facets = facet_rows(cone_g);
    for (i, (n, rhs)) in primal_facets.iter().enumerate() {
        let pulled: Vec<Q> = n.iter().zip(&diag).map(|(v, &d)| v.clone() / qi(d)).collect();
        if let Some(witness) = facet_violation(&a_d, &b_d, &pulled, rhs) {
            violations.push(IsoViolation {
                forward: false,
                facet: i,
                witness,
            });
        }
    }

    ConeIsoReport {
        facets_forward: dual_facets.len(),
        facets_backward: primal_facets.len(),
        violations,
    }
}

/// Deterministically sample `count` distinct integral points of a
/// full-dimensional cone: scale an interior point until a small integer
/// box around it fits inside, then draw distinct offsets.
pub fn sample_integral_points(
    cone: &ConeH,
    count: usize,
    rng_seed: u64,
) -> Result<Vec<Vec<i64>>> {
    let n = cone.ambient_dim();
    let x0 = cone.interior_point(&qi(1)).ok_or_else(|| {
        CrystalError::NotFound("cone has no interior to sample".into())
    })?;
    let mut scale = num_bigint::BigInt::from(1);
    for v in &x0 {
        scale = num_integer::lcm(scale, v.denom().clone());
    }
    let z0: Vec<Q> = x0.iter().map(|v| v.clone() * Q::from(scale.clone())).collect();
    let slack = cone
        .halfspaces()
        .iter()
        .map(|(nv, c)| {
            nv.iter()
                .zip(&z0)
                .fold(c.clone(), |acc, (&a, x)| acc + qi(a) * x.clone())
        })
        .min()
        .expect("a potential cone has at least one halfspace");
    let box_radius: i64 = 2;
    let reach = cone
        .halfspaces()
        .iter()
        .map(|(nv, _)| nv.iter().map(|v| v.abs()).sum::<i64>())
        .max()
        .unwrap_or(0)
        * box_radius;
    // Smallest integer s with s·slack > reach, so the whole box stays in.
    let mut s = 1i64;
    while qi(s) * slack.clone() <= qi(reach) {
        s += 1;
    }
    let base: Vec<i64> = z0
        .iter()
        .map(|v| {
            let w = v.clone() * qi(s);
            assert!(w.is_integer());
            crate::num::q_to_i64(&w)
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let point: Vec<i64> = base
            .iter()
            .map(|&b| b + rng.gen_range(-box_radius..=box_radius))
            .collect();
        if seen.insert(point.clone()) {
            debug_assert!(cone.contains(&point.iter().map(|&v| qi(v)).collect::<Vec<Q>>()));
            out.push(point);
        }
    }
    Ok(out)
}

/// The tropicalized twist between the plain and twisted reduced charts
/// of one cell: chart coordinates transform by the tropicalization of
/// the (subtraction-free) transition polynomials, torus coordinates by
/// x′_{H,j} = x_{H,j*} + ⟨monomial of ž_{−j*}, x̌⟩.  The twist is an
/// involution, so the same data maps either chart to the other.
#[derive(Clone, Debug)]
pub struct TropTwist {
    rank: usize,
    involution: Vec<usize>,
    torus_monomials: Vec<Vec<i64>>,
    chart_forms: Vec<TropicalForm>,
}

impl TropTwist {
    pub fn ambient(&self) -> usize {
        self.rank + self.chart_forms.len()
    }

    pub fn apply(&self, x: &[Q]) -> Vec<Q> {
        let r = self.rank;
        let chart = &x[r..];
        let mut out = Vec::with_capacity(x.len());
        for j in 0..r {
            let mono = &self.torus_monomials[j];
            let shift = mono
                .iter()
                .zip(chart)
                .fold(q0(), |acc, (&e, v)| acc + qi(e) * v.clone());
            out.push(x[self.involution[j]].clone() + shift);
        }
        for form in &self.chart_forms {
            out.push(form.eval(chart));
        }
        out
    }
}

/// Build the tropical twist of a cell's reduced charts.
pub fn trop_twist(datum: &CartanDatum, word: &[usize]) -> Result<TropTwist> {
    let engine = Engine::new(datum, word)?;
    let r = engine.rank();
    let m = engine.nvars();
    let involution = engine.involution().to_vec();
    let chart_forms = engine
        .transition()
        .iter()
        .map(|p| tropicalize(p, &crate::laurent::LaurentPoly::one(m)))
        .collect::<Result<Vec<_>>>()?;
    let torus_monomials = (0..r)
        .map(|j| {
            let star = involution[j] + 1;
            let zcheck = engine.zcheck(-(star as i64));
            let in_chart = engine.substitute(&crate::laurent::LaurentPoly::monomial(
                zcheck.1.clone(),
                zcheck.0.clone(),
            ));
            let (exps, _) = in_chart
                .as_monomial()
                .expect("ž is a chart monomial");
            exps.clone()
        })
        .collect();
    Ok(TropTwist {
        rank: r,
        involution,
        torus_monomials,
        chart_forms,
    })
}

/// Sampled check of the twist-comparison square: ζ∨^t ∘ Ψ^t = Ψ^t ∘ ζ^t
/// at `samples` random rational points.  Both sides are tropicalizations
/// of one subtraction-free identity, so pointwise equality everywhere is
/// the expected outcome; any violating point makes this return false.
pub fn verify_twist_compat(
    datum: &CartanDatum,
    word: &[usize],
    map: &ComparisonMap,
    samples: usize,
    rng_seed: u64,
) -> Result<bool> {
    let dual = dual_datum(datum);
    let twist = trop_twist(datum, word)?;
    let twist_dual = trop_twist(&dual, word)?;
    let n = map.ambient();
    assert_eq!(twist.ambient(), n, "comparison and twist share one chart");
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    for _ in 0..samples {
        let x: Vec<Q> = (0..n)
            .map(|_| {
                qi(rng.gen_range(-60i64..=60)) / qi(rng.gen_range(1i64..=7))
            })
            .collect();
        let lhs = twist_dual.apply(&map.apply(&x));
        let rhs = map.apply(&twist.apply(&x));
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}
