//! Finite group toolkit for deciding the stably free cancellation property
//! of integral group rings.
//!
//! Groups are modelled as permutation groups. On top of that the crate
//! provides exact character tables, real representation data, a catalog of
//! standard group families, a small group-specification language and a rule
//! engine that classifies a group as having or failing the property.

// Index loops read better than iterator chains in the matrix code.
#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod chartab;
pub mod error;
pub mod groupspec;
pub mod perm;
pub mod permgroup;
pub mod repclass;
pub mod sfc;

pub use error::{Error, ParseError, Result};
pub use perm::Permutation;
pub use permgroup::{NormalSubgroup, PermutationGroup, DEFAULT_ORDER_CAP};
