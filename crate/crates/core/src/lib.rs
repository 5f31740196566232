//! Average search probability of discrete-time quantum walks on regular
//! graphs.
//!
//! A walk with an oracle marking one vertex `a` runs on the arc space of a
//! k-regular graph. This crate computes the long-run average probability of
//! finding the marked vertex three independent ways:
//!
//! * direct simulation of the walk ([`walk`]),
//! * a spectral resolution of the walk operator through a small Hermitian
//!   matrix attached to the deleted graph ([`spectral`]),
//! * a closed form in the spectrum of the vertex-deleted graph, with lower
//!   bounds and limit criteria phrased in intersection arrays ([`drg`]).
//!
//! The three routes agree on every supported input, which is what the
//! acceptance suite checks.

pub mod drg;
pub mod error;
pub mod graph;
pub mod spectral;
pub mod walk;

pub use error::{Error, Result};
pub use graph::{Graph, IntersectionArray, Partition, QuotientMatrix};
