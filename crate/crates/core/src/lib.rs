//! Exact enumeration of complete simplicial fans over a fixed set of rays.
//!
//! Given an integer fan matrix `V` this crate
//!
//! * enumerates every complete simplicial fan whose rays are the columns of
//!   `V` by a combinatorial facet-matching search ([`fan_search`]),
//! * enumerates the projective ones algebraically, through the Gröbner fan of
//!   the toric ideal of `V` ([`toric`], [`groebner_fan`]),
//! * decides projectivity of each fan through its nef cone in the Gale dual
//!   picture ([`secondary`]).
//!
//! All arithmetic is exact.

pub mod error;
pub mod fan_search;
pub mod groebner_fan;
pub mod linalg;
pub mod plot;
pub mod polyhedra;
pub mod report;
pub mod secondary;
pub mod toric;

pub use error::{Axiom, Error, Result};
