//! Computational group theory for c-sections of maximal subgroups.

pub mod action;
pub mod csection;
pub mod error;
pub mod group;
pub mod groupspec;
pub mod iso;
pub mod lattice;
pub mod matrix;
pub mod named;
pub mod perm;
pub mod report;
pub mod scan;
pub mod search;
pub mod series;
pub mod table;
pub mod verify;

pub use error::{GroupError, Result};
pub use group::{PermGroup, Subgroup};
pub use perm::Permutation;
