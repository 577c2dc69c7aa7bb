//! Exact computations on double Bruhat cells: cluster seeds, tropical cones
//! and string polytopes, lattice-point counts against character formulas,
//! constant Poisson structures with Darboux normal forms, dual-group
//! comparison maps, symplectic-ball certificates, and numeric convergence
//! checks for the underlying bracket degenerations.
//!
//! Module map:
//! - [`num`], [`laurent`], [`linalg`], [`lp`]: exact arithmetic substrate
//!   (rationals, sparse Laurent polynomials, matrices, simplex / projection).
//! - [`cartan`]: Cartan data, Weyl group action, longest words, pairings.
//! - [`reps`]: Weyl dimension formula and Freudenthal multiplicities, used as
//!   independent counting oracles.
//! - [`symgroup`]: faithful matrix carriers for the supported types,
//!   generalized minors, factorization charts, potentials, and the twist.
//! - [`cluster`]: seeds from double reduced words, mutation, dual seeds.
//! - [`tropical`]: tropicalization of subtraction-free maps, cone assembly,
//!   highest-weight/weight tropicalizations, chart changes.
//! - [`polytopes`]: weight-fiber polytopes, lattice point enumeration,
//!   exact volumes.
//! - [`poisson`]: constant-bracket matrices in the degenerate limit and
//!   their Darboux normalization.
//! - [`langlands`]: comparison of the two dual cone families.
//! - [`gromov`]: embedded-cube certificates for symplectic width bounds.
//! - [`analytic`]: floating-point bracket evaluation at finite scale and
//!   convergence fits toward the constant limit.
//! - [`cli`]: the `crystalcone` command-line front end.
//!
//! Everything outside [`analytic`] is computed over exact rationals.

pub mod num;
pub mod error;
pub mod laurent;
pub mod linalg;
pub mod lp;
pub mod cartan;
pub mod reps;
pub mod symgroup;
pub mod cluster;
pub mod langlands;
pub mod poisson;
pub mod polytopes;
pub mod tropical;

pub use error::{CrystalError, Result};
