//! Exact construction of the irreducible representations of wreath products
//! `G ~ S_n` in a Gelfand-Tsetlin basis, together with the Boolean-lattice
//! and generalized Johnson scheme constructions built on the same
//! Young-Jucys-Murphy machinery.

pub mod combinatorics;
pub mod error;
pub mod exec;
pub mod group;
pub mod gz_rep;
pub mod johnson;
pub mod linalg;
pub mod matrix;
pub mod report;
pub mod scalar;
pub mod wreath;

pub use error::{Error, Result};
pub use group::GroupTable;
pub use scalar::{Cyc, Scalar, ScalarKind, Q};
