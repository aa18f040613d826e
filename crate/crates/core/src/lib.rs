//! Exact computations with ideals of polynomial rings in infinitely many
//! indexed variables that are invariant under permutations of the indices.

pub mod chains;
pub mod error;
pub mod gb;
pub mod poly;
pub mod reduce;
pub mod symorder;
pub mod toric;

pub use error::{Error, ParseError, Result};
