//! Representation-theoretic oracles: the Weyl dimension formula and
//! Freudenthal's multiplicity recursion.
//!
//! These are deliberately independent of the polytope pipeline — they share
//! only the Cartan data — so that lattice-point counts can be checked against
//! them as ground truth.

use crate::cartan::{bilinear_weights, positive_roots, simple_reflect, CartanDatum, Weight};
use crate::error::{CrystalError, Result};
use crate::num::{q0, q_to_i64, qi, Q};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// Full weight-multiplicity table of one irreducible highest-weight module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    /// The highest weight.
    pub lambda: Weight,
    /// Multiplicity of every weight with nonzero multiplicity.
    pub mults: BTreeMap<Weight, u64>,
}

impl CharacterTable {
    /// Sum of all multiplicities (= the module's dimension).
    pub fn total(&self) -> u64 {
        self.mults.values().sum()
    }
}

/// Dimension of the irreducible module with highest weight λ:
/// `∏_{α>0} ⟨λ+ρ, α∨⟩ / ⟨ρ, α∨⟩`, evaluated exactly.
pub fn weyl_dim(datum: &CartanDatum, lambda: &[i64]) -> Result<u64> {
    if !datum.is_dominant(lambda) {
        return Err(CrystalError::NotDominant(format!(
            "highest weight {lambda:?} has a negative fundamental coordinate"
        )));
    }
    let mut num = 1i128;
    let mut den = 1i128;
    for root in positive_roots(datum)? {
        let pair_l: i64 = lambda
            .iter()
            .zip(&root.coroot_simple)
            .map(|(a, b)| a * b)
            .sum();
        let pair_rho: i64 = root.coroot_simple.iter().sum();
        num *= i128::from(pair_l + pair_rho);
        den *= i128::from(pair_rho);
    }
    debug_assert_eq!(num % den, 0, "Weyl dimension must be integral");
    Ok(u64::try_from(num / den).expect("dimension fits u64 at desk scale"))
}

/// The dominant Weyl-chamber representative of a weight, found by repeatedly
/// reflecting at a negative coordinate (the standard dominance algorithm).
fn dominant_rep(datum: &CartanDatum, gamma: &[i64]) -> Weight {
    let mut g = gamma.to_vec();
    loop {
        match g.iter().position(|&c| c < 0) {
            Some(i) => g = simple_reflect(datum, i + 1, &g).expect("index in range"),
            None => return g,
        }
    }
}

/// True iff λ − μ is a nonnegative integer combination of simple roots.
fn below_in_root_order(datum: &CartanDatum, lambda: &[i64], mu: &[i64]) -> bool {
    let r = datum.rank;
    let diff: Vec<Q> = (0..r).map(|i| qi(lambda[i] - mu[i])).collect();
    // Convert to α-coordinates via A^{-1}: reuse the solve on the Cartan.
    let a = crate::linalg::QMat::from_i64(&datum.cartan);
    match a.solve(&diff) {
        Some(coords) => coords.iter().all(|c| c.is_integer() && *c >= q0()),
        None => false,
    }
}

/// Freudenthal's recursion: the complete weight multiplicity table of V_λ.
///
/// Multiplicities are computed on dominant weights in decreasing order
/// (height of λ−μ increasing) via
/// `((λ+ρ,λ+ρ) − (μ+ρ,μ+ρ)) m_μ = 2 Σ_{α>0} Σ_{k≥1} m_{μ+kα} (μ+kα, α)`
/// and spread over Weyl orbits, where the form is the invariant bilinear
/// form on weights.
pub fn freudenthal(datum: &CartanDatum, lambda: &[i64]) -> Result<CharacterTable> {
    if !datum.is_dominant(lambda) {
        return Err(CrystalError::NotDominant(format!(
            "highest weight {lambda:?} has a negative fundamental coordinate"
        )));
    }
    let r = datum.rank;
    let roots = positive_roots(datum)?;
    let rho = datum.rho();

    // Enumerate the full weight support: breadth-first subtraction of simple
    // roots from λ, keeping weights whose dominant representative is ≤ λ.
    let mut support: BTreeSet<Weight> = BTreeSet::new();
    let mut queue: VecDeque<Weight> = VecDeque::new();
    support.insert(lambda.to_vec());
    queue.push_back(lambda.to_vec());
    while let Some(mu) = queue.pop_front() {
        for i in 1..=r {
            let alpha = datum.simple_root(i);
            let next: Weight = mu.iter().zip(&alpha).map(|(a, b)| a - b).collect();
            if support.contains(&next) {
                continue;
            }
            let dom = dominant_rep(datum, &next);
            if below_in_root_order(datum, lambda, &dom) {
                support.insert(next.clone());
                queue.push_back(next);
            }
        }
    }

    // Dominant weights ordered by increasing height of λ−μ, so every m_{μ+kα}
    // needed by the recursion is already known.
    let height = |mu: &Weight| -> i64 {
        // Height in the root lattice: Σ α-coordinates of λ−μ, scaled by r! to
        // stay integral; only the ordering matters.
        let diff: Vec<Q> = (0..r).map(|i| qi(lambda[i] - mu[i])).collect();
        let coords = crate::linalg::QMat::from_i64(&datum.cartan)
            .solve(&diff)
            .expect("support weight lies under λ");
        let total: Q = coords.iter().fold(q0(), |acc, c| acc + c);
        q_to_i64(&(total * qi(720)))
    };
    let mut dominants: Vec<Weight> = support
        .iter()
        .filter(|mu| datum.is_dominant(mu))
        .cloned()
        .collect();
    dominants.sort_by_key(height);

    let lam_rho: Weight = lambda.iter().zip(&rho).map(|(a, b)| a + b).collect();
    let norm_top = bilinear_weights(datum, &lam_rho, &lam_rho);

    let mut mult: BTreeMap<Weight, u64> = BTreeMap::new();
    for mu in &dominants {
        if mu == lambda {
            mult.insert(mu.clone(), 1);
            continue;
        }
        let mut rhs = q0();
        for root in &roots {
            let mut k = 1i64;
            loop {
                let shifted: Weight = (0..r)
                    .map(|i| mu[i] + k * root.root_omega[i])
                    .collect();
                if !support.contains(&shifted) {
                    break;
                }
                let m = mult
                    .get(&dominant_rep(datum, &shifted))
                    .copied()
                    .unwrap_or(0);
                if m > 0 {
                    rhs += qi(m as i64) * bilinear_weights(datum, &shifted, &root.root_omega);
                }
                k += 1;
            }
        }
        let mu_rho: Weight = mu.iter().zip(&rho).map(|(a, b)| a + b).collect();
        let denom = norm_top.clone() - bilinear_weights(datum, &mu_rho, &mu_rho);
        debug_assert!(denom > q0(), "Freudenthal denominator must be positive");
        let value = qi(2) * rhs / denom;
        let m = q_to_i64(&value);
        debug_assert!(m >= 0);
        if m > 0 {
            mult.insert(mu.clone(), m as u64);
        }
    }

    // Spread multiplicities over Weyl orbits.
    let mut mults: BTreeMap<Weight, u64> = BTreeMap::new();
    for mu in &support {
        let m = mult.get(&dominant_rep(datum, mu)).copied().unwrap_or(0);
        if m > 0 {
            mults.insert(mu.clone(), m);
        }
    }
    Ok(CharacterTable {
        lambda: lambda.to_vec(),
        mults,
    })
}
