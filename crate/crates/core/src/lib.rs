//! Computational tools for depth questions about mod-p cohomology rings of
//! p-groups: exact F_p linear algebra, graded-commutative algebras, Dickson
//! invariants, Steenrod powers on polynomial algebras, p-group subgroup
//! families, polarised systems of parameters and degree-truncated depth
//! diagnostics.

pub mod cohmodel;
pub mod depth;
pub mod dickson;
pub mod error;
pub mod fixtures;
pub mod fplinalg;
pub mod graded;
pub mod pgroup;
pub mod polarise;
pub mod steenrod;
pub mod verdict;

pub use error::{Error, Result};
