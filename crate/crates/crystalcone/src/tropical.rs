//! Tropicalization of subtraction-free chart expressions.
//!
//! A subtraction-free Laurent expression f = num/den with monomial
//! denominator tropicalizes to the piecewise-linear form
//! f^t(x) = min_γ ⟨γ, x⟩ − ⟨offset, x⟩ over the numerator exponents γ.  The
//! module builds the potential cones {Φ^t ≥ 0} of the four positive charts
//! of the open double Bruhat cell, string cones, the tropicalized
//! highest-weight and weight maps (exact integer matrices), and the
//! chamber-wise linear chart changes between mutation-equivalent cluster
//! charts.  All cone queries (membership, emptiness with certificates,
//! δ-interior points) run on the exact rational LP solver.

use crate::cartan::weyl_act;
use crate::cluster::{mutate, seed_from_word, Seed};
use crate::error::{CrystalError, Result};
use crate::laurent::LaurentPoly;
use crate::linalg::{imat_identity, imat_mul};
use crate::lp;
use crate::num::{q0, q1, qi, q_sign, Q};
use crate::symgroup::Engine;

/// Σ a_i·x_i for an integer covector against a rational point.
fn dot_iq(a: &[i64], x: &[Q]) -> Q {
    a.iter()
        .zip(x)
        .fold(q0(), |acc, (&ai, xi)| acc + qi(ai) * xi.clone())
}

/// The tropicalization of a subtraction-free Laurent expression with a
/// monomial denominator: x ↦ min over `covectors` of ⟨γ, x⟩, minus
/// ⟨offset, x⟩.  Positively homogeneous of degree one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalForm {
    nvars: usize,
    covectors: Vec<Vec<i64>>,
    offset: Vec<i64>,
}

impl TropicalForm {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Numerator exponent vectors, in the deterministic (lexicographic)
    /// order of the underlying polynomial.
    pub fn covectors(&self) -> &[Vec<i64>] {
        &self.covectors
    }

    /// Denominator exponent vector.
    pub fn offset(&self) -> &[i64] {
        &self.offset
    }

    /// Value min_γ ⟨γ, x⟩ − ⟨offset, x⟩ at a rational point.
    pub fn eval(&self, x: &[Q]) -> Q {
        assert_eq!(x.len(), self.nvars, "point has the ambient arity");
        let mut best: Option<Q> = None;
        for gamma in &self.covectors {
            let v = dot_iq(gamma, x);
            best = Some(match best {
                Some(b) if b <= v => b,
                _ => v,
            });
        }
        best.expect("a tropical form has at least one covector") - dot_iq(&self.offset, x)
    }

    /// The integer normals γ − offset, one per covector; the superlevel set
    /// {f^t ≥ 0} is exactly {x : ⟨n, x⟩ ≥ 0 for each normal n}.
    pub fn halfspace_normals(&self) -> Vec<Vec<i64>> {
        self.covectors
            .iter()
            .map(|g| {
                g.iter()
                    .zip(&self.offset)
                    .map(|(&a, &b)| a - b)
                    .collect()
            })
            .collect()
    }
}

/// Tropicalize num/den.  The numerator must be nonzero with positive
/// coefficients only; the denominator must be a monomial with positive
/// coefficient (tropicalization is insensitive to the coefficients
/// themselves, but their positivity is what makes the min-plus image
/// independent of the presentation).
pub fn tropicalize(num: &LaurentPoly, den: &LaurentPoly) -> Result<TropicalForm> {
    assert_eq!(num.nvars(), den.nvars(), "operands share the variable ring");
    if num.is_zero() || !num.is_subtraction_free() {
        return Err(CrystalError::PositivityViolation(
            "tropicalization needs a nonzero numerator with positive coefficients".into(),
        ));
    }
    let Some((den_exps, den_coeff)) = den.as_monomial() else {
        return Err(CrystalError::ChartUnsupported(
            "tropicalization needs a monomial denominator".into(),
        ));
    };
    if q_sign(den_coeff) <= 0 {
        return Err(CrystalError::PositivityViolation(
            "tropicalization needs a positive denominator coefficient".into(),
        ));
    }
    Ok(TropicalForm {
        nvars: num.nvars(),
        covectors: num.terms().map(|(e, _)| e.clone()).collect(),
        offset: den_exps.clone(),
    })
}

/// A rational polyhedron in H-representation: the points satisfying
/// ⟨n, x⟩ + c ≥ 0 for every halfspace (n, c) and ⟨n, x⟩ + c = 0 for every
/// equation.  Exact duplicates are skipped on insertion; no other
/// redundancy removal happens implicitly.
#[derive(Clone, Debug)]
pub struct ConeH {
    ambient: usize,
    halfspaces: Vec<(Vec<i64>, Q)>,
    equations: Vec<(Vec<i64>, Q)>,
}

impl ConeH {
    /// The whole ambient space (no constraints).
    pub fn universe(ambient: usize) -> Self {
        ConeH {
            ambient,
            halfspaces: Vec::new(),
            equations: Vec::new(),
        }
    }

    /// The superlevel cone {f^t ≥ 0} of a tropical form: one homogeneous
    /// halfspace per covector.
    pub fn from_potential(form: &TropicalForm) -> Self {
        let mut cone = ConeH::universe(form.nvars());
        for n in form.halfspace_normals() {
            cone.add_halfspace(n, q0());
        }
        cone
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn halfspaces(&self) -> &[(Vec<i64>, Q)] {
        &self.halfspaces
    }

    pub fn equations(&self) -> &[(Vec<i64>, Q)] {
        &self.equations
    }

    /// Add ⟨n, x⟩ + c ≥ 0, skipping an exact duplicate.
    pub fn add_halfspace(&mut self, n: Vec<i64>, c: Q) {
        assert_eq!(n.len(), self.ambient, "normal has the ambient arity");
        let row = (n, c);
        if !self.halfspaces.contains(&row) {
            self.halfspaces.push(row);
        }
    }

    /// Add ⟨n, x⟩ + c = 0, skipping an exact duplicate.
    pub fn add_equation(&mut self, n: Vec<i64>, c: Q) {
        assert_eq!(n.len(), self.ambient, "normal has the ambient arity");
        let row = (n, c);
        if !self.equations.contains(&row) {
            self.equations.push(row);
        }
    }

    /// Exact membership (closed region: inequalities weak, equations exact).
    pub fn contains(&self, x: &[Q]) -> bool {
        assert_eq!(x.len(), self.ambient, "point has the ambient arity");
        self.halfspaces
            .iter()
            .all(|(n, c)| dot_iq(n, x) + c.clone() >= q0())
            && self
                .equations
                .iter()
                .all(|(n, c)| dot_iq(n, x) + c.clone() == q0())
    }

    /// Membership in the δ-interior: every inequality holds with slack
    /// strictly greater than δ, equations exactly.  δ = 0 tests the
    /// topological interior relative to the equation subspace.
    pub fn contains_margin(&self, x: &[Q], delta: &Q) -> bool {
        assert_eq!(x.len(), self.ambient, "point has the ambient arity");
        self.halfspaces
            .iter()
            .all(|(n, c)| dot_iq(n, x) + c.clone() > delta.clone())
            && self
                .equations
                .iter()
                .all(|(n, c)| dot_iq(n, x) + c.clone() == q0())
    }

    /// The closed δ-shift: every inequality offset decreased by δ, so the
    /// region is {x : ⟨n, x⟩ + c ≥ δ}.  Equations are kept as they are.
    pub fn delta_shift(&self, delta: &Q) -> ConeH {
        ConeH {
            ambient: self.ambient,
            halfspaces: self
                .halfspaces
                .iter()
                .map(|(n, c)| (n.clone(), c.clone() - delta.clone()))
                .collect(),
            equations: self.equations.clone(),
        }
    }

    /// The constraint list as LP data: rows a·x ≥ b (each equation
    /// contributes two opposite rows).
    pub fn lp_rows(&self) -> (Vec<Vec<Q>>, Vec<Q>) {
        let mut a = Vec::with_capacity(self.halfspaces.len() + 2 * self.equations.len());
        let mut b = Vec::with_capacity(a.capacity());
        for (n, c) in &self.halfspaces {
            a.push(n.iter().map(|&v| qi(v)).collect());
            b.push(-c.clone());
        }
        for (n, c) in &self.equations {
            a.push(n.iter().map(|&v| qi(v)).collect());
            b.push(-c.clone());
            a.push(n.iter().map(|&v| qi(-v)).collect());
            b.push(c.clone());
        }
        (a, b)
    }

    /// Some point of the region, or None when it is empty.
    pub fn feasible_point(&self) -> Option<Vec<Q>> {
        let (a, b) = self.lp_rows();
        lp::feasible_point(&a, &b).ok()
    }

    /// A Farkas certificate of emptiness — a vector y ≥ 0 with yᵀA = 0 and
    /// yᵀb > 0 against the rows of [`Self::lp_rows`] — or None when the
    /// region is nonempty.
    pub fn emptiness_certificate(&self) -> Option<Vec<Q>> {
        let (a, b) = self.lp_rows();
        lp::feasible_point(&a, &b).err()
    }

    /// Check a Farkas certificate against this region's LP rows: y ≥ 0,
    /// yᵀA = 0, yᵀb > 0.  A valid certificate proves emptiness.
    pub fn verify_farkas(&self, y: &[Q]) -> bool {
        let (a, b) = self.lp_rows();
        if y.len() != a.len() || y.iter().any(|v| v < &q0()) {
            return false;
        }
        for j in 0..self.ambient {
            let mut s = q0();
            for (yi, row) in y.iter().zip(&a) {
                s = s + yi.clone() * row[j].clone();
            }
            if s != q0() {
                return false;
            }
        }
        let mut s = q0();
        for (yi, bi) in y.iter().zip(&b) {
            s = s + yi.clone() * bi.clone();
        }
        s > q0()
    }

    /// A point of the δ-interior (all inequality slacks strictly above δ,
    /// equations exact), or None when that set is empty.  Found by
    /// maximizing the least slack margin s, capped at δ + 1.
    pub fn interior_point(&self, delta: &Q) -> Option<Vec<Q>> {
        let n = self.ambient;
        let mut a: Vec<Vec<Q>> = Vec::new();
        let mut b: Vec<Q> = Vec::new();
        // ⟨nv, x⟩ − s ≥ δ − c  per halfspace.
        for (nv, c) in &self.halfspaces {
            let mut row: Vec<Q> = nv.iter().map(|&v| qi(v)).collect();
            row.push(qi(-1));
            a.push(row);
            b.push(delta.clone() - c.clone());
        }
        // Equations, without the margin variable.
        for (nv, c) in &self.equations {
            let mut row: Vec<Q> = nv.iter().map(|&v| qi(v)).collect();
            row.push(q0());
            a.push(row);
            b.push(-c.clone());
            let mut row: Vec<Q> = nv.iter().map(|&v| qi(-v)).collect();
            row.push(q0());
            a.push(row);
            b.push(c.clone());
        }
        // s ≤ δ + 1 keeps the program bounded on cones.
        let mut cap = vec![q0(); n];
        cap.push(qi(-1));
        a.push(cap);
        b.push(-(delta.clone() + q1()));
        let mut objective = vec![q0(); n];
        objective.push(q1());
        match lp::maximize(&objective, &a, &b) {
            lp::LpResult::Optimal { x, value } if value > *delta => Some(x[..n].to_vec()),
            _ => None,
        }
    }
}

/// The four positive charts of the open double Bruhat cell whose potential
/// tropicalizes.  Cluster: the cluster variables of the initial seed, in
/// index order [−r..−1, 1..m].  Factorization: the left torus
/// (a_1, …, a_r) followed by the one-parameter times (t_1, …, t_m).
/// ReducedPlain / ReducedTwisted: the torus block (h^{ω_1}, …, h^{ω_r})
/// followed by the m chart variables of the (plain or twisted) reduced
/// slice chart.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChartKind {
    Cluster,
    Factorization,
    ReducedPlain,
    ReducedTwisted,
}

/// Assemble the potential of a reduced slice chart as one Laurent
/// polynomial over (torus block | chart block): each chart term h^γ·body
/// becomes the monomial with torus exponents γ times the body shifted into
/// the chart block.
fn assemble_reduced(engine: &Engine, twisted: bool) -> Result<(LaurentPoly, LaurentPoly)> {
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
    for term in engine.reduced_potential(twisted)? {
        let mut h = vec![0i64; n];
        h[..r].copy_from_slice(&term.torus_weight);
        total = &total + &term.body.subst_monomials(n, &shift).mul_monomial(&h, &q1());
    }
    Ok((total, LaurentPoly::one(n)))
}

/// The potential of the cell in the requested chart, as a subtraction-free
/// numerator over a monomial denominator.  Variable order per
/// [`ChartKind`].
pub fn bk_potential(
    datum: &crate::cartan::CartanDatum,
    word: &[usize],
    kind: ChartKind,
) -> Result<(LaurentPoly, LaurentPoly)> {
    let engine = Engine::new(datum, word)?;
    match kind {
        ChartKind::Cluster => engine.cluster_potential(),
        ChartKind::Factorization => engine.factorization_potential(),
        ChartKind::ReducedPlain => assemble_reduced(&engine, false),
        ChartKind::ReducedTwisted => assemble_reduced(&engine, true),
    }
}

/// The cone {Φ^t ≥ 0} of the potential in the requested chart: one
/// homogeneous halfspace per numerator monomial, shifted by the monomial
/// denominator.
pub fn bk_cone(
    datum: &crate::cartan::CartanDatum,
    word: &[usize],
    kind: ChartKind,
) -> Result<ConeH> {
    let (num, den) = bk_potential(datum, word, kind)?;
    Ok(ConeH::from_potential(&tropicalize(&num, &den)?))
}

/// The string cone of a reduced word: the superlevel cone of the
/// tropicalized slice potential Φ_L in the m chart variables (a monomial —
/// hence unimodular — change away from the string parameters), with
/// implied halfspaces removed so the facet description is minimal.
pub fn string_cone(datum: &crate::cartan::CartanDatum, word: &[usize]) -> Result<ConeH> {
    let engine = Engine::new(datum, word)?;
    let m = engine.nvars();
    let mut total = LaurentPoly::zero(m);
    for part in engine.string_terms()? {
        total = &total + &part;
    }
    let form = tropicalize(&total, &LaurentPoly::one(m))?;
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for n in form.halfspace_normals() {
        if !rows.contains(&n) {
            rows.push(n);
        }
    }
    // Drop every halfspace implied by the remaining ones, keeping the
    // normals integral.
    let mut keep = vec![true; rows.len()];
    for i in 0..rows.len() {
        keep[i] = false;
        let rest: Vec<Vec<Q>> = rows
            .iter()
            .enumerate()
            .filter(|&(j, _)| keep[j])
            .map(|(_, r)| r.iter().map(|&v| qi(v)).collect())
            .collect();
        let row: Vec<Q> = rows[i].iter().map(|&v| qi(v)).collect();
        if !lp::inequality_implied(&rest, &vec![q0(); rest.len()], &row, &q0()) {
            keep[i] = true;
        }
    }
    let mut cone = ConeH::universe(m);
    for (row, kept) in rows.into_iter().zip(keep) {
        if kept {
            cone.add_halfspace(row, q0());
        }
    }
    Ok(cone)
}

/// Covector of a chart term whose body is a Laurent monomial:
/// (torus weight | body exponents) over the chart's r + m variables.
fn chart_term_covector(
    term: &crate::symgroup::ChartTerm,
    r: usize,
    m: usize,
) -> Result<Vec<i64>> {
    let Some((exps, _)) = term.body.as_monomial() else {
        return Err(CrystalError::ChartUnsupported(
            "frozen minor is not a monomial in this chart".into(),
        ));
    };
    let mut row = vec![0i64; r + m];
    row[..r].copy_from_slice(&term.torus_weight);
    row[r..].copy_from_slice(exps);
    Ok(row)
}

/// The tropicalized highest-weight map of a chart as an r × ambient integer
/// matrix: row i is the covector of x ↦ ⟨ω_i, hw^t(x)⟩.  Since
/// hw(g)^{ω_i} = Δ_{w0ω_{i*}, ω_{i*}}(g)^{−1} and those frozen minors are
/// Laurent monomials in every chart here, each row is minus a monomial
/// exponent vector.
pub fn hw_trop(
    datum: &crate::cartan::CartanDatum,
    word: &[usize],
    kind: ChartKind,
) -> Result<Vec<Vec<i64>>> {
    let engine = Engine::new(datum, word)?;
    let r = engine.rank();
    let m = engine.nvars();
    let inv = engine.involution().to_vec();
    let mut rows = Vec::with_capacity(r);
    match kind {
        ChartKind::Cluster => {
            for i in 0..r {
                let star = inv[i] + 1;
                let mut row = vec![0i64; r + m];
                row[engine.unreduced_pos(engine.last_position(star) as i64)] = -1;
                rows.push(row);
            }
        }
        ChartKind::Factorization => {
            for i in 0..r {
                let star = inv[i] + 1;
                let mut e_star = vec![0i64; r];
                e_star[star - 1] = 1;
                let w0om = weyl_act(datum, word, &e_star)?;
                let (_, exps) = engine.y_minor(star);
                let mut row = vec![0i64; r + m];
                for (slot, &v) in row[..r].iter_mut().zip(&w0om) {
                    *slot = -v;
                }
                for (slot, &v) in row[r..].iter_mut().zip(exps) {
                    *slot = -v;
                }
                rows.push(row);
            }
        }
        ChartKind::ReducedPlain | ChartKind::ReducedTwisted => {
            let terms = engine.hw_terms(kind == ChartKind::ReducedTwisted);
            for i in 0..r {
                let row = chart_term_covector(&terms[inv[i]], r, m)?;
                rows.push(row.into_iter().map(|v| -v).collect());
            }
        }
    }
    Ok(rows)
}

/// The tropicalized weight map of a chart as an r × ambient integer
/// matrix: row i is the covector of x ↦ ⟨ω_i, wt^t(x)⟩, read off the
/// monomial principal minors Δ_{ω_i, ω_i}.
pub fn wt_trop(
    datum: &crate::cartan::CartanDatum,
    word: &[usize],
    kind: ChartKind,
) -> Result<Vec<Vec<i64>>> {
    let engine = Engine::new(datum, word)?;
    let r = engine.rank();
    let m = engine.nvars();
    let mut rows = Vec::with_capacity(r);
    match kind {
        ChartKind::Cluster => {
            for i in 0..r {
                let mut row = vec![0i64; r + m];
                row[engine.unreduced_pos(-(i as i64 + 1))] = 1;
                rows.push(row);
            }
        }
        ChartKind::Factorization => {
            for i in 0..r {
                let mut row = vec![0i64; r + m];
                row[i] = 1;
                rows.push(row);
            }
        }
        ChartKind::ReducedPlain | ChartKind::ReducedTwisted => {
            let terms = engine.wt_terms(kind == ChartKind::ReducedTwisted);
            for term in terms.iter().take(r) {
                rows.push(chart_term_covector(term, r, m)?);
            }
        }
    }
    Ok(rows)
}

/// One linear piece of a piecewise-linear map: on `domain`, x ↦ M·x + o.
#[derive(Clone, Debug)]
pub struct PLPiece {
    pub domain: ConeH,
    pub matrix: Vec<Vec<i64>>,
    pub offset: Vec<i64>,
}

impl PLPiece {
    fn apply(&self, x: &[Q]) -> Vec<Q> {
        self.matrix
            .iter()
            .zip(&self.offset)
            .map(|(row, &o)| dot_iq(row, x) + qi(o))
            .collect()
    }
}

/// A piecewise-linear map given by chamber pieces.  Pieces constructed by
/// chart changes agree on shared chamber walls, so evaluating with closed
/// domains is unambiguous; walls carry no independent data of their own.
#[derive(Clone, Debug)]
pub struct PLMap {
    dim_in: usize,
    dim_out: usize,
    pieces: Vec<PLPiece>,
}

impl PLMap {
    pub fn identity(n: usize) -> Self {
        PLMap {
            dim_in: n,
            dim_out: n,
            pieces: vec![PLPiece {
                domain: ConeH::universe(n),
                matrix: imat_identity(n),
                offset: vec![0; n],
            }],
        }
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn pieces(&self) -> &[PLPiece] {
        &self.pieces
    }

    /// Evaluate at a point: the image under the first piece whose chamber
    /// contains it, or None outside every chamber.
    pub fn apply(&self, x: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(x.len(), self.dim_in, "point has the source arity");
        self.pieces
            .iter()
            .find(|p| p.domain.contains(x))
            .map(|p| p.apply(x))
    }

    /// The composite `next` ∘ `self`, chamber by chamber: each pair of
    /// pieces meets on the pullback of the outer chamber, and empty
    /// combinations are dropped (by exact LP feasibility).
    pub fn then(&self, next: &PLMap) -> PLMap {
        assert_eq!(self.dim_out, next.dim_in, "composable arities");
        let mut pieces = Vec::new();
        for f in &self.pieces {
            for g in &next.pieces {
                let mut domain = f.domain.clone();
                for (n, c) in g.domain.halfspaces() {
                    let pulled: Vec<i64> = (0..self.dim_in)
                        .map(|j| f.matrix.iter().zip(n).map(|(row, &ni)| ni * row[j]).sum())
                        .collect();
                    let shift = dot_iq(n, &f.offset.iter().map(|&v| qi(v)).collect::<Vec<_>>());
                    domain.add_halfspace(pulled, shift + c.clone());
                }
                for (n, c) in g.domain.equations() {
                    let pulled: Vec<i64> = (0..self.dim_in)
                        .map(|j| f.matrix.iter().zip(n).map(|(row, &ni)| ni * row[j]).sum())
                        .collect();
                    let shift = dot_iq(n, &f.offset.iter().map(|&v| qi(v)).collect::<Vec<_>>());
                    domain.add_equation(pulled, shift + c.clone());
                }
                if domain.feasible_point().is_none() {
                    continue;
                }
                let matrix = imat_mul(&g.matrix, &f.matrix);
                let offset: Vec<i64> = g
                    .matrix
                    .iter()
                    .zip(&g.offset)
                    .map(|(row, &og)| {
                        row.iter().zip(&f.offset).map(|(&a, &b)| a * b).sum::<i64>() + og
                    })
                    .collect();
                pieces.push(PLPiece {
                    domain,
                    matrix,
                    offset,
                });
            }
        }
        PLMap {
            dim_in: self.dim_in,
            dim_out: next.dim_out,
            pieces,
        }
    }
}

/// The tropicalized one-step chart change at an exchangeable index: the
/// coordinate at k becomes min(⟨a⁺, x⟩, ⟨a⁻, x⟩) − x_k, all others are
/// unchanged.  Two unimodular pieces split by the exchange hyperplane
/// ⟨a⁺ − a⁻, x⟩ = 0.
fn step_map(seed: &Seed, k: i64) -> Result<PLMap> {
    let n = seed.nvars();
    let pos = seed
        .index_set()
        .iter()
        .position(|&l| l == k)
        .expect("exchangeable index is in the seed");
    let (a_plus, a_minus) = seed.exchange_exponents(k)?;
    let piece = |active: &[i64], other: &[i64]| -> PLPiece {
        let mut matrix = imat_identity(n);
        matrix[pos] = active.to_vec();
        matrix[pos][pos] -= 1;
        let mut domain = ConeH::universe(n);
        // The piece applies where its monomial attains the minimum.
        let gap: Vec<i64> = other.iter().zip(active).map(|(&o, &a)| o - a).collect();
        if gap.iter().any(|&v| v != 0) {
            domain.add_halfspace(gap, q0());
        }
        PLPiece {
            domain,
            matrix,
            offset: vec![0; n],
        }
    };
    let mut pieces = vec![piece(&a_plus, &a_minus)];
    if a_plus != a_minus {
        pieces.push(piece(&a_minus, &a_plus));
    }
    Ok(PLMap {
        dim_in: n,
        dim_out: n,
        pieces,
    })
}

/// The tropicalized change of coordinates between two mutation-equivalent
/// cluster charts, as a chamber-wise unimodular piecewise-linear map from
/// the chart of `from` to the chart of `to`.  The mutation path is read
/// off the seeds' histories (shared prefix cancelled; mutation is an
/// involution, so the leftover of `from` is walked backwards).
pub fn trop_chart_change(from: &Seed, to: &Seed) -> Result<PLMap> {
    if from.datum().family != to.datum().family
        || from.datum().rank != to.datum().rank
        || from.word() != to.word()
    {
        return Err(CrystalError::ChartUnsupported(
            "seeds do not chart the same cell".into(),
        ));
    }
    let prefix = from
        .history()
        .iter()
        .zip(to.history())
        .take_while(|(a, b)| a == b)
        .count();
    let mut path: Vec<i64> = from.history()[prefix..].iter().rev().copied().collect();
    path.extend_from_slice(&to.history()[prefix..]);

    let mut map = PLMap::identity(from.nvars());
    let mut cur = from.clone();
    for &k in &path {
        map = map.then(&step_map(&cur, k)?);
        cur = mutate(&cur, k)?;
    }
    assert_eq!(
        cur.matrix(),
        to.matrix(),
        "replayed path lands on the target exchange matrix"
    );
    for &k in to.index_set() {
        assert_eq!(
            cur.label(k),
            to.label(k),
            "replayed path lands on the target cluster"
        );
    }
    Ok(map)
}

/// Substitute the inverse exchange z_pos ← E / z_pos into a Laurent
/// polynomial, where E (independent of z_pos) is the exchange binomial.
/// Negative powers of E are cleared by exact division — the potential
/// times its frozen denominator lies in the upper cluster algebra, so the
/// division succeeds on every mutation path.
fn substitute_exchange(poly: &LaurentPoly, pos: usize, binomial: &LaurentPoly) -> LaurentPoly {
    let n = poly.nvars();
    let mut dmin = i64::MAX;
    for (exps, _) in poly.terms() {
        dmin = dmin.min(exps[pos]);
    }
    if dmin == i64::MAX {
        return LaurentPoly::zero(n);
    }
    let mut bracket = LaurentPoly::zero(n);
    for (exps, coeff) in poly.terms() {
        let d = exps[pos];
        let mut flipped = exps.clone();
        flipped[pos] = -d;
        let term = LaurentPoly::monomial(flipped, coeff.clone());
        let power = binomial.pow((d - dmin) as u32);
        bracket = &bracket + &(&term * &power);
    }
    if dmin >= 0 {
        &bracket * &binomial.pow(dmin as u32)
    } else {
        bracket
            .divide_exact(&binomial.pow((-dmin) as u32))
            .expect("potential stays Laurent under mutation")
    }
}

/// The potential cone computed in the cluster chart of a mutated seed: the
/// initial-chart potential is pushed through the seed's mutation history by
/// inverse exchange substitutions (each one an exact Laurent computation),
/// then tropicalized.
pub fn bk_cone_in_seed_chart(seed: &Seed) -> Result<ConeH> {
    let engine = Engine::new(seed.datum(), seed.word())?;
    let (mut num, den) = engine.cluster_potential()?;
    let mut cur = seed_from_word(seed.datum(), seed.word())?;
    for &k in seed.history() {
        let pos = cur
            .index_set()
            .iter()
            .position(|&l| l == k)
            .expect("history indices are in the seed");
        let (den_exps, _) = den.as_monomial().expect("frozen denominator is a monomial");
        assert_eq!(
            den_exps[pos], 0,
            "frozen denominator never involves an exchangeable variable"
        );
        let (a_plus, a_minus) = cur.exchange_exponents(k)?;
        let binomial = &LaurentPoly::monomial(a_plus, q1())
            + &LaurentPoly::monomial(a_minus, q1());
        num = substitute_exchange(&num, pos, &binomial);
        cur = mutate(&cur, k)?;
    }
    if !num.is_subtraction_free() {
        return Err(CrystalError::PositivityViolation(
            "mutated-chart numerator".into(),
        ));
    }
    Ok(ConeH::from_potential(&tropicalize(&num, &den)?))
}
