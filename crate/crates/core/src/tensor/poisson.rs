//! Poisson bivectors and their compatibility with (1,1)-tensors.

use super::endo::Tensor11;
use super::fields::{gradient, DiffForm, Multivector};
use super::same_chart;
use crate::error::{Error, Result};
use crate::expr::ScalarExpr;

pub fn is_poisson(pi: &Multivector) -> Result<bool> {
    if pi.degree() != 2 {
        return Err(Error::DegreeMismatch("Poisson test needs a bivector".into()));
    }
    Ok(pi.schouten(pi)?.is_zero())
}

/// `pi_phi(a, b) = pi(phi^* a, b)`, defined when `pi^sharp phi^* = phi pi^sharp`.
pub fn pi_phi(pi: &Multivector, phi: &Tensor11) -> Result<Multivector> {
    same_chart(pi.chart(), phi.chart())?;
    if pi.degree() != 2 {
        return Err(Error::DegreeMismatch("pi_phi needs a bivector".into()));
    }
    let m = phi.matrix().mul(&pi.bivector_matrix())?;
    if let Some((i, j)) = m.antisymmetry_defect() {
        return Err(Error::Incompatible(format!(
            "pi^sharp o phi^* != phi o pi^sharp at (d{}, d{})",
            pi.chart().name(i),
            pi.chart().name(j)
        )));
    }
    Ok(Multivector::from_bivector_matrix(pi.chart(), &m))
}

/// `[a, b]_pi = L_{pi^sharp a} b - L_{pi^sharp b} a - d pi(a, b)`.
pub fn form_bracket_pi(pi: &Multivector, a: &DiffForm, b: &DiffForm) -> Result<DiffForm> {
    same_chart(pi.chart(), a.chart())?;
    same_chart(pi.chart(), b.chart())?;
    if a.degree() != 1 || b.degree() != 1 {
        return Err(Error::DegreeMismatch("form bracket needs one-forms".into()));
    }
    let (ad, bd) = (a.components(), b.components());
    Ok(form_bracket_dense(pi, &ad, &bd))
}

pub(crate) fn form_bracket_dense(pi: &Multivector, a: &[ScalarExpr], b: &[ScalarExpr]) -> DiffForm {
    let c = pi.chart();
    let pa = pi.sharp(a);
    let pb = pi.sharp(b);
    let fa = DiffForm::from_components(c, a);
    let fb = DiffForm::from_components(c, b);
    let val = pi.eval_dense(&[a, b]);
    let t = fb
        .lie_derivative_dense(&pa)
        .sub(&fa.lie_derivative_dense(&pb))
        .unwrap();
    t.sub(&DiffForm::from_components(c, &gradient(&val, c.dim()))).unwrap()
}

/// Outcome of the Poisson-Nijenhuis compatibility test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PnCompatibility {
    pub sharp_commutes: bool,
    pub concomitant_vanishes: bool,
    pub failures: Vec<String>,
}

impl PnCompatibility {
    pub fn holds(&self) -> bool {
        self.sharp_commutes && self.concomitant_vanishes
    }
}

/// Tests `pi^sharp phi^* = phi pi^sharp` and
/// `phi^*[a,b]_pi = [phi^* a, b]_pi + [a, phi^* b]_pi - [a, b]_{pi_phi}` on
/// coordinate one-forms.
pub fn pn_compatible(pi: &Multivector, phi: &Tensor11) -> Result<PnCompatibility> {
    let pp = match pi_phi(pi, phi) {
        Ok(p) => p,
        Err(Error::Incompatible(msg)) => {
            return Ok(PnCompatibility {
                sharp_commutes: false,
                concomitant_vanishes: false,
                failures: vec![msg],
            })
        }
        Err(e) => return Err(e),
    };
    let n = pi.dim();
    let basis = |i: usize| -> Vec<ScalarExpr> {
        (0..n).map(|k| if k == i { ScalarExpr::one() } else { ScalarExpr::zero() }).collect()
    };
    let mut failures = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let (ea, eb) = (basis(a), basis(b));
            let lhs = phi.dual_dense(&form_bracket_dense(pi, &ea, &eb).components());
            let r1 = form_bracket_dense(pi, &phi.dual_dense(&ea), &eb).components();
            let r2 = form_bracket_dense(pi, &ea, &phi.dual_dense(&eb)).components();
            let r3 = form_bracket_dense(&pp, &ea, &eb).components();
            let bad = (0..n).any(|k| !lhs[k].sub(&r1[k]).sub(&r2[k]).add(&r3[k]).is_zero());
            if bad {
                failures.push(format!(
                    "concomitant nonzero on (dx^{}, dx^{})",
                    pi.chart().name(a),
                    pi.chart().name(b)
                ));
            }
        }
    }
    Ok(PnCompatibility { sharp_commutes: true, concomitant_vanishes: failures.is_empty(), failures })
}

/// Poisson, compatible, and torsion-free.
pub fn is_poisson_nijenhuis(pi: &Multivector, phi: &Tensor11) -> Result<bool> {
    Ok(is_poisson(pi)? && pn_compatible(pi, phi)?.holds() && phi.is_nijenhuis())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse, Chart};
    use std::sync::Arc;

    #[test]
    fn exact_forms_bracket_to_exact_forms() {
        let c = Arc::new(Chart::real(&["x", "y", "z"]).unwrap());
        let pi = Multivector::from_entries(&c, 2, &[(vec![0, 1], parse("z", &c).unwrap())]).unwrap();
        let f = parse("x*y", &c).unwrap();
        let g = parse("x + y^2", &c).unwrap();
        let lhs = form_bracket_pi(&pi, &DiffForm::exact(&c, &f), &DiffForm::exact(&c, &g)).unwrap();
        let rhs = DiffForm::exact(&c, &pi.eval_functions(&[f, g]));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn degenerate_projector_is_incompatible() {
        let c = Arc::new(Chart::real(&["x", "y"]).unwrap());
        let pi = Multivector::basis(&c, &[0, 1]);
        let mut m = crate::tensor::Matrix::zeros(2, 2);
        m.set(0, 0, ScalarExpr::one());
        let phi = Tensor11::new(&c, m).unwrap();
        assert!(matches!(pi_phi(&pi, &phi), Err(Error::Incompatible(_))));
        assert!(!pn_compatible(&pi, &phi).unwrap().holds());
    }

    #[test]
    fn identity_is_compatible_with_any_poisson_structure() {
        let c = Arc::new(Chart::real(&["x", "y"]).unwrap());
        let pi = Multivector::from_entries(&c, 2, &[(vec![0, 1], parse("x^2+y", &c).unwrap())]).unwrap();
        assert!(is_poisson_nijenhuis(&pi, &Tensor11::identity(&c)).unwrap());
    }
}
