//! Exact computations for polynomial Poisson algebras over prime fields:
//! bracket constructions, Poisson centers, Gorenstein tests for
//! skew-symmetric centers and log-ozone groups.

pub mod catalog;
pub mod cli;
pub mod center;
pub mod deriv;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod io;
pub mod linalg;
pub mod loz;
pub mod poly;
pub mod structure;
pub mod unipoly;

pub use error::{Error, Result};
