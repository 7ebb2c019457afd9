//! Combinatorics and exact linear algebra for simple matroids and their
//! Orlik–Solomon algebras.
//!
//! Points are 0-based inside the library and 1-based in every printed or
//! parsed form.

pub mod catalog;
pub mod complex;
pub mod error;
pub mod exterior;
pub mod field;
pub mod formality;
pub mod format;
pub mod lc;
pub mod linalg;
pub mod matroid;
mod memo;
pub mod os;
mod poset;
pub mod realization;
pub mod report;
pub mod subset;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use matroid::{FlatLattice, Matroid, Presentation};
pub use realization::Realization;
pub use subset::{LinearOrder, Subset};
