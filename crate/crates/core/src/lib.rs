//! Singularity invariants of monomial ideals computed exactly on Newton
//! polyhedra: Kiselman numbers, weighted log canonical thresholds, mixed
//! Monge-Ampère masses and mixed Hilbert-Samuel multiplicities, together with
//! a harness that checks the inequalities relating them.

pub mod error;
pub mod geometry;
pub mod invariants;
pub mod monomial;
pub mod rational;
pub mod verification;

pub use error::{Error, Result};
pub use geometry::{build_polyhedron, HalfSpace, NewtonPolyhedron};
pub use monomial::{dbar_ideal, derivative_ideal, ExponentVector, MonomialIdeal, OrderingMatrix};
pub use rational::{Extended, RatVector, Rational};
