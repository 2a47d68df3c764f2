//! Generalized complex structures on `TM + T*M` and generalized contact
//! structures on the omni-Lie algebroid `DL + J^1 L`.

mod omni;
mod tangent;

pub use omni::{dorfman_jacobi, omni_pairing, GenBlockMap, OmniSection};
pub use tangent::{dorfman, tangent_pairing, GenBlockT, TangentSection};

/// Outcome of a generalized complex or contact test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedReport {
    pub squares_to_minus_one: bool,
    pub skew: bool,
    pub integrable: bool,
    pub failures: Vec<String>,
}

impl GeneralizedReport {
    pub fn holds(&self) -> bool {
        self.squares_to_minus_one && self.skew && self.integrable
    }
}
