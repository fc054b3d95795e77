//! Finite set families under `(d,s,t)`-conditional intersection: shifting and
//! stability, the duality between unstable subfamilies, named extremal
//! constructions with their bounds, and exhaustive maximum-family search.
//!
//! Elements are `1..=n` with `n <= 64`; a member is an [`ElementSet`] bitmask
//! and a [`SetFamily`] keeps its members sorted and distinct.

pub mod canon;
pub mod cli;
pub mod constructions;
pub mod duality;
mod error;
pub mod family;
pub mod predicates;
pub mod search;
mod set;
pub mod text;

pub use error::{Error, Result};
pub use family::{SetFamily, ShiftPair};
pub use predicates::ConditionParams;
pub use set::{intersection_size, union_size, ElementSet};
