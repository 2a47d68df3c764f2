//! Exact symbolic verification of Jacobi, Poisson, holomorphic and
//! generalized complex/contact structures on coordinate charts.

pub mod algebroid;
pub mod complexgeom;
pub mod error;
pub mod expr;
pub mod format;
pub mod genstruct;
pub mod jacobi;
pub mod corpus;
pub mod correspondences;
pub mod report;
pub mod tensor;

pub use error::{Error, Result};
pub use expr::{parse, Chart, Gaussian, ScalarExpr};
