//! Exact-arithmetic engine for the combinatorics of divisor complements:
//! the group of realizations of boundaries with its polytope decomposition,
//! lattice-point and Ehrhart machinery, multiplier-ideal strata of line
//! arrangements and point configurations, and the finite-abelian-cover
//! calculus with congruence-cover Hodge quasi-polynomials.

pub mod covers;
mod error;
pub mod ehrhart;
pub mod geometry;
pub mod lattice;
pub mod matrix;
pub mod parabolic;
pub mod polytope;
pub mod quasipoly;
pub mod rat;
pub mod strata;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
