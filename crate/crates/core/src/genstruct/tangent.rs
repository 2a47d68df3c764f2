use super::GeneralizedReport;
use crate::error::Result;
use crate::expr::{Chart, ScalarExpr};
use crate::jacobi::lie_one_form;
use crate::tensor::{gradient, pair, same_chart, vector_bracket, DiffForm, Matrix, Multivector, Tensor11};
use std::sync::Arc;

/// A section `(xi, rho)` of `TM + T*M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentSection {
    pub xi: Vec<ScalarExpr>,
    pub rho: Vec<ScalarExpr>,
}

impl TangentSection {
    fn dense(&self) -> Vec<ScalarExpr> {
        let mut v = self.xi.clone();
        v.extend(self.rho.iter().cloned());
        v
    }

    fn from_dense(v: &[ScalarExpr], n: usize) -> Self {
        TangentSection { xi: v[..n].to_vec(), rho: v[n..].to_vec() }
    }

    pub fn is_zero(&self) -> bool {
        self.xi.iter().chain(&self.rho).all(|x| x.is_zero())
    }
}

/// `<<(xi, rho), (zeta, sigma)>> = sigma(xi) + rho(zeta)`.
pub fn tangent_pairing(a: &TangentSection, b: &TangentSection) -> ScalarExpr {
    pair(&b.rho, &a.xi).add(&pair(&a.rho, &b.xi))
}

/// Dorfman bracket `([xi, zeta], L_xi sigma - L_zeta rho + d(rho(zeta)))`.
pub fn dorfman(a: &TangentSection, b: &TangentSection) -> TangentSection {
    let n = a.xi.len();
    let l1 = lie_one_form(&a.xi, &b.rho);
    let l2 = lie_one_form(&b.xi, &a.rho);
    let d = gradient(&pair(&a.rho, &b.xi), n);
    TangentSection {
        xi: vector_bracket(&a.xi, &b.xi),
        rho: (0..n).map(|k| l1[k].sub(&l2[k]).add(&d[k])).collect(),
    }
}

/// The block map `(phi, pi^sharp; omega^flat, -phi^*)` on `TM + T*M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenBlockT {
    pub phi: Tensor11,
    pub pi: Multivector,
    pub omega: DiffForm,
}

impl GenBlockT {
    pub fn new(phi: Tensor11, pi: Multivector, omega: DiffForm) -> Result<Self> {
        same_chart(phi.chart(), pi.chart())?;
        same_chart(phi.chart(), omega.chart())?;
        if pi.degree() != 2 || omega.degree() != 2 {
            return Err(crate::Error::DegreeMismatch("block map needs a bivector and a two-form".into()));
        }
        Ok(GenBlockT { phi, pi, omega })
    }

    pub fn chart(&self) -> &Arc<Chart> {
        self.phi.chart()
    }

    /// Matrix on dense `(xi, rho)`.
    pub fn matrix(&self) -> Matrix {
        let n = self.phi.dim();
        let f = self.phi.matrix();
        let p = self.pi.bivector_matrix();
        let w = self.omega.two_form_matrix();
        Matrix::from_fn(2 * n, 2 * n, |a, b| match (a < n, b < n) {
            (true, true) => f.get(a, b).clone(),
            (true, false) => p.get(b - n, a).clone(),
            (false, true) => w.get(b, a - n).clone(),
            (false, false) => f.get(b - n, a - n).neg(),
        })
    }

    pub fn apply(&self, s: &TangentSection) -> TangentSection {
        TangentSection::from_dense(&self.matrix().mul_vec(&s.dense()), self.phi.dim())
    }

    /// Tests square, skewness for the pairing, and vanishing of
    /// `[[Ja, Jb]] - [[a, b]] - J[[Ja, b]] - J[[a, Jb]]` on the frame
    /// `(d_i, 0), (0, dx^i)`.
    pub fn is_generalized_complex(&self) -> GeneralizedReport {
        let n = self.phi.dim();
        let m = self.matrix();
        generalized_test(&m, n, &|a, b| {
            let (a, b) = (TangentSection::from_dense(a, n), TangentSection::from_dense(b, n));
            dorfman(&a, &b).dense()
        }, &frame_sections(n))
    }

    /// `L_eta pi = -pi`, `L_eta phi = 0`, `L_eta omega = omega`.
    pub fn is_homogeneous(&self, eta: &Multivector) -> Result<Vec<String>> {
        let mut failures = Vec::new();
        if !self.pi.lie_derivative(eta)?.add(&self.pi)?.is_zero() {
            failures.push("L_eta pi != -pi".to_string());
        }
        if !self.phi.lie_derivative(eta)?.is_zero() {
            failures.push("L_eta phi != 0".to_string());
        }
        if !self.omega.lie_derivative(eta)?.sub(&self.omega)?.is_zero() {
            failures.push("L_eta omega != omega".to_string());
        }
        Ok(failures)
    }
}

fn frame_sections(n: usize) -> Vec<Vec<ScalarExpr>> {
    (0..2 * n)
        .map(|a| (0..2 * n).map(|k| if k == a { ScalarExpr::one() } else { ScalarExpr::zero() }).collect())
        .collect()
}

/// Shared by the tangent and omni cases: `m` acts on dense sections whose
/// first half pairs with the second half.
pub(crate) fn generalized_test(
    m: &Matrix,
    half: usize,
    bracket: &dyn Fn(&[ScalarExpr], &[ScalarExpr]) -> Vec<ScalarExpr>,
    generators: &[Vec<ScalarExpr>],
) -> GeneralizedReport {
    let size = 2 * half;
    let mut failures = Vec::new();
    let sq = m.mul(m).unwrap().add(&Matrix::identity(size));
    let squares_to_minus_one = sq.is_zero();
    if let Some((a, b)) = sq.first_difference(&Matrix::zeros(size, size)) {
        failures.push(format!("square differs from -1 at ({a}, {b})"));
    }
    // skew for <<a, b>> = a^T G b with G = [[0, 1], [1, 0]]: G m antisymmetric
    let gm = Matrix::from_fn(size, size, |a, b| {
        let r = if a < half { a + half } else { a - half };
        m.get(r, b).clone()
    });
    let skew = gm.antisymmetry_defect().is_none();
    if let Some((a, b)) = gm.antisymmetry_defect() {
        failures.push(format!("not skew for the pairing at ({a}, {b})"));
    }
    let mut integrable = true;
    let images: Vec<Vec<ScalarExpr>> = generators.iter().map(|g| m.mul_vec(g)).collect();
    'outer: for (i, a) in generators.iter().enumerate() {
        for (j, b) in generators.iter().enumerate() {
            let t1 = bracket(&images[i], &images[j]);
            let t2 = bracket(a, b);
            let t3 = m.mul_vec(&bracket(&images[i], b));
            let t4 = m.mul_vec(&bracket(a, &images[j]));
            let bad = (0..size).any(|k| !t1[k].sub(&t2[k]).sub(&t3[k]).sub(&t4[k]).is_zero());
            if bad {
                integrable = false;
                failures.push(format!("integrability fails on generator pair ({i}, {j})"));
                break 'outer;
            }
        }
    }
    GeneralizedReport { squares_to_minus_one, skew, integrable, failures }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_structure_block_is_generalized_complex() {
        let c = Arc::new(Chart::real(&["x", "y"]).unwrap());
        let j = Tensor11::standard_complex(&c, &[(0, 1)]);
        let g = GenBlockT::new(j, Multivector::zero(&c, 2), DiffForm::zero(&c, 2)).unwrap();
        assert!(g.is_generalized_complex().holds());
    }

    #[test]
    fn symplectic_block_is_generalized_complex() {
        // J = (0, -omega^-1; omega, 0) for omega = dx^dy
        let c = Arc::new(Chart::real(&["x", "y"]).unwrap());
        let omega = DiffForm::basis(&c, &[0, 1]);
        let pi = Multivector::basis(&c, &[0, 1]);
        let g = GenBlockT::new(Tensor11::zero(&c), pi.clone(), omega.clone()).unwrap();
        let r = g.is_generalized_complex();
        let g2 = GenBlockT::new(Tensor11::zero(&c), pi.neg(), omega).unwrap();
        let r2 = g2.is_generalized_complex();
        assert!(r.holds() ^ r2.holds());
    }

    #[test]
    fn dorfman_on_exact_pairs() {
        let c = Arc::new(Chart::real(&["x", "y"]).unwrap());
        let x = ScalarExpr::coord(0);
        let a = TangentSection { xi: vec![ScalarExpr::zero(), x.clone()], rho: vec![x.clone(), ScalarExpr::zero()] };
        // [[a, a]] = (0, d <a, a>/2)
        let b = dorfman(&a, &a);
        let half = tangent_pairing(&a, &a).scale(&crate::expr::Gaussian::from_ratio(1, 2));
        assert_eq!(b.rho, gradient(&half, c.dim()));
        assert!(b.xi.iter().all(|v| v.is_zero()));
    }
}
