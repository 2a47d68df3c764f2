//! Multivectors, differential forms and (1,1)-tensors with Schouten and
//! Cartan calculus.

mod alt;
mod endo;
mod fields;
mod matrix;
mod poisson;

pub use alt::increasing_tuples;
pub use endo::{Tensor11, TorsionTable};
pub use fields::{apply_vector, gradient, pair, vector_bracket, DiffForm, Multivector};
pub use matrix::Matrix;
pub(crate) use poisson::form_bracket_dense;
pub use poisson::{form_bracket_pi, is_poisson, is_poisson_nijenhuis, pi_phi, pn_compatible, PnCompatibility};

use crate::error::{Error, Result};
use crate::expr::Chart;
use std::sync::Arc;

pub(crate) fn same_chart(a: &Arc<Chart>, b: &Arc<Chart>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::ChartMismatch(format!(
            "[{}] vs [{}]",
            a.names().join(","),
            b.names().join(",")
        )))
    }
}
