//! ν-domains, ν-Grassmannians and the action of `GL(m|n)` on them, with
//! exact arithmetic throughout.

pub mod action;
pub mod atlas;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod nulie;
pub mod poly;
pub mod report;
pub mod superalgebra;
pub mod supermatrix;

pub use error::{Error, Result};
