//! Exact module computations behind prime-to-p embedding problems over
//! cyclic `p`-group covers.
//!
//! A cover with group `G = Z/p^a` acts on the finite module `P_m`; solutions
//! of an embedding problem with abelian kernel `H` of order prime to `p`
//! correspond to `G`-submodules of `P_m` isomorphic to `H`. This crate
//! computes the submodule side: the decomposition of `P_m` into
//! indecomposables over `Z/l^c`, the resulting existence criteria, the exact
//! number of submodules of a given type, and a brute-force enumerator that
//! checks all of them.

pub mod cyclotomic;
pub mod error;
pub mod gmodule;
pub mod matrix;
pub mod modarith;
pub mod oracle;
pub mod pm_builder;
pub mod solvability;

pub use error::{Error, Result};
