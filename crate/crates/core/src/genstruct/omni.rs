use super::tangent::generalized_test;
use super::GeneralizedReport;
use crate::error::{Error, Result};
use crate::expr::{Chart, ScalarExpr};
use crate::jacobi::{dl_bracket, jet_lie, jet_pairing, DlSection, EndoDL, JetSection, MultiDerivation};
use crate::tensor::{same_chart, Matrix};
use std::sync::Arc;

/// A section `(D, t)` of `DL + J^1 L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmniSection {
    pub delta: DlSection,
    pub theta: JetSection,
}

impl OmniSection {
    fn dense(&self) -> Vec<ScalarExpr> {
        let mut v = self.delta.to_dense();
        v.extend(self.theta.to_dense());
        v
    }

    fn from_dense(v: &[ScalarExpr]) -> Self {
        let h = v.len() / 2;
        OmniSection { delta: DlSection::from_dense(&v[..h]), theta: JetSection::from_dense(&v[h..]) }
    }

    pub fn is_zero(&self) -> bool {
        self.delta.is_zero() && self.theta.is_zero()
    }
}

/// `<<(D, r), (N, s)>> = <s, D> + <r, N>`.
pub fn omni_pairing(a: &OmniSection, b: &OmniSection) -> ScalarExpr {
    jet_pairing(&b.theta, &a.delta).add(&jet_pairing(&a.theta, &b.delta))
}

/// Dorfman-Jacobi bracket `([D, N], L_D s - L_N r + j^1 <r, N>)`.
pub fn dorfman_jacobi(a: &OmniSection, b: &OmniSection) -> OmniSection {
    let n = a.delta.x.len();
    let t = jet_lie(&a.delta, &b.theta)
        .sub(&jet_lie(&b.delta, &a.theta))
        .add(&JetSection::prolong(&jet_pairing(&a.theta, &b.delta), n));
    OmniSection { delta: dl_bracket(&a.delta, &b.delta), theta: t }
}

/// The block map `(phi, J^sharp; omega^flat, -phi^dagger)` on `DL + J^1 L`;
/// `omega` is an antisymmetric matrix on the frame `d_i, 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenBlockMap {
    pub phi: EndoDL,
    pub j: MultiDerivation,
    pub omega: Matrix,
}

impl GenBlockMap {
    pub fn new(phi: EndoDL, j: MultiDerivation, omega: Matrix) -> Result<Self> {
        same_chart(phi.chart(), j.chart())?;
        let n = phi.dim();
        if j.degree() != 2 {
            return Err(Error::DegreeMismatch("block map needs a bi-derivation".into()));
        }
        if omega.rows() != n + 1 || omega.cols() != n + 1 || omega.antisymmetry_defect().is_some() {
            return Err(Error::Invalid("omega must be an antisymmetric (n+1)-square matrix".into()));
        }
        Ok(GenBlockMap { phi, j, omega })
    }

    /// The `omega = 0` block map `(phi, J^sharp; 0, -phi^dagger)`.
    pub fn from_pair(phi: EndoDL, j: MultiDerivation) -> Result<Self> {
        let n = phi.dim();
        GenBlockMap::new(phi, j, Matrix::zeros(n + 1, n + 1))
    }

    pub fn chart(&self) -> &Arc<Chart> {
        self.phi.chart()
    }

    pub fn matrix(&self) -> Matrix {
        let h = self.phi.dim() + 1;
        let m = self.phi.matrix();
        let jm = self.j.jet_matrix();
        Matrix::from_fn(2 * h, 2 * h, |a, b| match (a < h, b < h) {
            (true, true) => m.get(a, b).clone(),
            (true, false) => jm.get(b - h, a).clone(),
            (false, true) => self.omega.get(b, a - h).clone(),
            (false, false) => m.get(b - h, a - h).neg(),
        })
    }

    pub fn apply(&self, s: &OmniSection) -> OmniSection {
        OmniSection::from_dense(&self.matrix().mul_vec(&s.dense()))
    }

    /// Square, skewness, and integrability on the generators
    /// `(d_i, 0), (1, 0), (0, j^1 x^i), (0, j^1 1)`.
    pub fn is_generalized_contact(&self) -> GeneralizedReport {
        let n = self.phi.dim();
        let h = n + 1;
        let mut gens = Vec::new();
        for a in 0..h {
            let mut v = vec![ScalarExpr::zero(); 2 * h];
            v[a] = ScalarExpr::one();
            gens.push(v);
        }
        for a in 0..h {
            let l = if a < n { ScalarExpr::coord(a) } else { ScalarExpr::one() };
            let mut v = vec![ScalarExpr::zero(); h];
            v.extend(JetSection::prolong(&l, n).to_dense());
            gens.push(v);
        }
        generalized_test(
            &self.matrix(),
            h,
            &|a, b| dorfman_jacobi(&OmniSection::from_dense(a), &OmniSection::from_dense(b)).dense(),
            &gens,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    #[test]
    fn skew_symmetrised_bracket_anomaly() {
        let c = Arc::new(Chart::real(&["x"]).unwrap());
        let x = parse("x", &c).unwrap();
        let a = OmniSection {
            delta: DlSection::new(vec![x.clone()], ScalarExpr::one()),
            theta: JetSection::new(vec![ScalarExpr::one()], x.clone()),
        };
        let aa = dorfman_jacobi(&a, &a);
        assert!(aa.delta.is_zero());
        let half = omni_pairing(&a, &a).scale(&crate::expr::Gaussian::from_ratio(1, 2));
        assert_eq!(aa.theta, JetSection::prolong(&half, 1));
    }

    #[test]
    fn contact_plane_block_map() {
        // Jacobi-Nijenhuis pair on R^1 with phi^2 = -1 on DL: (0, -1; 1, 0)
        let c = Arc::new(Chart::real(&["t"]).unwrap());
        let n = crate::tensor::Tensor11::zero(&c);
        let phi = EndoDL::from_blocks(&n, &[ScalarExpr::int(-1)], &[ScalarExpr::one()], &ScalarExpr::zero()).unwrap();
        let j = MultiDerivation::zero(&c, 2);
        let g = GenBlockMap::from_pair(phi, j).unwrap();
        let r = g.is_generalized_contact();
        assert!(r.squares_to_minus_one && r.skew && r.integrable, "{:?}", r.failures);
    }
}
