//! Exact computations with finite-dimensional Lie superalgebras whose even
//! part is reductive.

pub mod catalog;
pub mod dercoh;
pub mod error;
pub mod exactla;
pub mod liealg;
pub mod parallel;
pub mod repn;
pub mod rootsys;
pub mod structure;

pub use error::{Error, Result};
