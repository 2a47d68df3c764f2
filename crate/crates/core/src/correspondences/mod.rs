//! Poissonization, restriction along homogeneity fields, the circle-bundle
//! construction and example generators.

pub mod examples;
mod holo;
mod real;

pub use examples::{Constants, darboux_example, heisenberg_constants, lie_poisson, sl2_constants, DarbouxExample, LiePoisson};
pub use holo::{
    check_holomorphic_jacobi_equivalences, circle_bundle_structures, holomorphic_poissonize, holomorphic_transcribe,
    is_holomorphic_biderivation, CircleBundle,
};
pub use real::{poissonize, poissonize_endo, restrict_endo, restrict_homogeneous};

use crate::error::{Error, Result};
use crate::expr::{Chart, ScalarExpr, Var};
use crate::tensor::Multivector;
use std::sync::Arc;

/// A bivector `pi` with `L_eta pi = -pi` on a chart with a fiber coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousPoisson {
    pub pi: Multivector,
    pub eta: Multivector,
    /// Index of the radial fiber coordinate.
    pub fiber: usize,
}

impl HomogeneousPoisson {
    pub fn new(pi: Multivector, eta: Multivector, fiber: usize) -> Result<Self> {
        if !pi.lie_derivative(&eta)?.add(&pi)?.is_zero() {
            return Err(Error::NotHomogeneous("L_eta pi != -pi".into()));
        }
        Ok(HomogeneousPoisson { pi, eta, fiber })
    }

    pub fn chart(&self) -> &Arc<Chart> {
        self.pi.chart()
    }
}

/// Variable map for inserting a coordinate at index `s`.
pub(crate) fn lift_var(s: usize) -> impl Fn(Var) -> Var {
    let s = s as u32;
    move |v| {
        let shift = |k: u32| if k >= s { k + 1 } else { k };
        match v {
            Var::Coord(k) => Var::Coord(shift(k)),
            Var::Sin(k) => Var::Sin(shift(k)),
            Var::Cos(k) => Var::Cos(shift(k)),
        }
    }
}

/// Variable map for deleting coordinate `s`; callers ensure it is unused.
pub(crate) fn drop_var(s: usize) -> impl Fn(Var) -> Var {
    let s = s as u32;
    move |v| {
        let shift = |k: u32| if k > s { k - 1 } else { k };
        match v {
            Var::Coord(k) => Var::Coord(shift(k)),
            Var::Sin(k) => Var::Sin(shift(k)),
            Var::Cos(k) => Var::Cos(shift(k)),
        }
    }
}

pub(crate) fn lift_index(s: usize) -> impl Fn(usize) -> Option<usize> {
    move |k| Some(if k >= s { k + 1 } else { k })
}

/// `1`, the coordinates and their pairwise products.
pub(crate) fn test_functions(coords: &[ScalarExpr]) -> Vec<ScalarExpr> {
    let mut out = vec![ScalarExpr::one()];
    out.extend(coords.iter().cloned());
    for a in 0..coords.len() {
        for b in a..coords.len() {
            out.push(coords[a].mul(&coords[b]));
        }
    }
    out
}
