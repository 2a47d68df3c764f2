//! Exact scalar expressions on coordinate charts.

mod chart;
mod coeff;
mod parse;
mod poly;
mod scalar;

pub use chart::Chart;
pub use coeff::Gaussian;
pub use parse::parse;
pub use poly::{Mono, Poly, Var};
pub use scalar::{Display, ScalarExpr};
