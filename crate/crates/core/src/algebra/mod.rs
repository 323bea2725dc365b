//! Exact linear algebra over GF(p^e) (q <= 16) and over chain rings
//! Z/p^s: matrices, canonical subspace and submodule forms, enumeration,
//! and non-degenerate bilinear pairings with their annihilators.

pub mod bilinear;
pub mod matrix;
pub mod ring;
pub mod submodule;
pub mod subspace;

pub use bilinear::BilinearForm;
pub use matrix::{Echelon, Matrix, Pivot};
pub use ring::{Ring, RingKind};
pub use submodule::{enumerate_submodules, Submodule};
pub use subspace::{
    count_all_subspaces, enumerate_subcodes, enumerate_subspaces, gaussian_binomial, Subspace,
    SubspaceLattice,
};
