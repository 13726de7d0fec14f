//! Volumes of the cut polytope and its relaxations (metric, rooted metric,
//! elliptope) over graphs: exact rational volumes, closed forms for sparse
//! graph families, log-space elliptope volumes and Monte Carlo estimates.

pub mod cli;
pub mod elliptope;
pub mod error;
pub mod estimate;
pub mod exactvol;
pub mod graphs;
pub mod lp;
pub mod polytope;
pub mod rational;
pub mod report;

pub use error::{Error, Result};
