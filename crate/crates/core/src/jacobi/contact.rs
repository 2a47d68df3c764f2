//! Jacobi structures of contact forms.

use super::multider::MultiDerivation;
use crate::error::{Error, Result};
use crate::expr::ScalarExpr;
use crate::tensor::{DiffForm, Matrix, Multivector};

/// Sign relating `Lambda^sharp` to the inverse of `X -> i_X d theta + theta(X) theta`
/// on `ker theta`, fixed so that the result is Jacobi for the pair convention
/// used by `MultiDerivation`.
const LAMBDA_SIGN: i64 = 1;

fn check_contact(theta: &DiffForm) -> Result<Matrix> {
    if theta.degree() != 1 {
        return Err(Error::DegreeMismatch("contact form must be a one-form".into()));
    }
    let dim = theta.dim();
    if dim % 2 == 0 {
        return Err(Error::EvenDimension);
    }
    let dtheta = theta.d();
    let mut top = theta.clone();
    for _ in 0..dim / 2 {
        top = top.wedge(&dtheta)?;
    }
    if top.is_zero() {
        return Err(Error::Degenerate("theta ^ (d theta)^n vanishes identically".into()));
    }
    let w = if dim == 1 { Matrix::zeros(1, 1) } else { dtheta.two_form_matrix() };
    let t = theta.components();
    // b[j][i] = w[i][j] + t_i t_j, so that (b X)_j = (i_X d theta + theta(X) theta)_j
    Ok(Matrix::from_fn(dim, dim, |j, i| w.get(i, j).add(&t[i].mul(&t[j]))))
}

/// Reeb field: `theta(E) = 1`, `i_E d theta = 0`.
pub fn reeb_field(theta: &DiffForm) -> Result<Multivector> {
    let b = check_contact(theta)?;
    let binv = b.inverse()?;
    Ok(Multivector::vector(theta.chart(), &binv.mul_vec(&theta.components())))
}

/// The Jacobi pair `(Lambda, E)` of a contact form: `E` is the Reeb field
/// and `Lambda^sharp` inverts `d theta` on `ker theta`.
pub fn contact_to_jacobi(theta: &DiffForm) -> Result<MultiDerivation> {
    let b = check_contact(theta)?;
    let binv = b.inverse()?;
    let n = theta.dim();
    let t = theta.components();
    let e = binv.mul_vec(&t);
    let sign = ScalarExpr::int(LAMBDA_SIGN);
    let rows: Vec<Vec<ScalarExpr>> = (0..n)
        .map(|i| {
            let a: Vec<ScalarExpr> = (0..n)
                .map(|k| {
                    let d = if k == i { ScalarExpr::one() } else { ScalarExpr::zero() };
                    d.sub(&e[i].mul(&t[k]))
                })
                .collect();
            binv.mul_vec(&a).iter().map(|v| v.mul(&sign)).collect()
        })
        .collect();
    let lm = Matrix::from_fn(n, n, |i, j| rows[i][j].clone());
    if let Some((i, j)) = lm.antisymmetry_defect() {
        return Err(Error::Invalid(format!("contact bivector not skew at ({i}, {j})")));
    }
    MultiDerivation::new(
        Multivector::from_bivector_matrix(theta.chart(), &lm),
        Multivector::vector(theta.chart(), &e),
    )
}

/// Recovers the contact form of a nondegenerate Jacobi pair:
/// `theta(E) = 1` and `theta o Lambda^sharp = 0`.
pub fn jacobi_to_contact(j: &MultiDerivation) -> Result<DiffForm> {
    if j.degree() != 2 {
        return Err(Error::DegreeMismatch("contact recovery needs a bi-derivation".into()));
    }
    let n = j.dim();
    let m = j.jet_matrix();
    let inv = m
        .inverse()
        .map_err(|_| Error::Degenerate("Jacobi structure is not of contact type".into()))?;
    let mut rhs = vec![ScalarExpr::zero(); n + 1];
    rhs[n] = ScalarExpr::int(-1);
    let sol = inv.mul_vec(&rhs);
    if !sol[n].is_zero() {
        return Err(Error::Degenerate("Jacobi structure is not of contact type".into()));
    }
    Ok(DiffForm::from_components(j.chart(), &sol[..n]))
}
