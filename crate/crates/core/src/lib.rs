//! Exact computation of generalized weights and dimension/length
//! profiles for linear codes, demi-matroids and demi-polymatroids, the
//! Galois-connection machinery tying the two tables together, and
//! brute-force verification of the associated duality identities on
//! desk-scale instances.
//!
//! Everything is integer-exact: there are no tolerances anywhere. All
//! values are immutable after construction and all operations are pure,
//! so instances can be shared across threads freely.

pub mod algebra;
pub mod checks;
pub mod demimatroid;
pub mod demipolymatroid;
pub mod error;
pub mod galois;
pub mod generate;
pub mod hamming;
pub mod io;
pub mod metric_codes;
pub mod poset;
pub mod report;
pub mod rng;

pub use error::{Caps, Error, Result};
