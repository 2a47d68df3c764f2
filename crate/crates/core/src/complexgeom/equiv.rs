//! Three-way characterizations of (homogeneous) holomorphic Poisson
//! structures, each condition evaluated on its own.

use super::{is_holomorphic, ComplexChart};
use crate::error::{Error, Result};
use crate::expr::Gaussian;
use crate::genstruct::GenBlockT;
use crate::report::{EquivalenceReport, Verdict};
use crate::tensor::{is_poisson, pi_phi, pn_compatible, same_chart, DiffForm, Multivector};

/// `Pi = pi_j + i pi`.
pub fn holomorphic_bivector(pi: &Multivector, cc: &ComplexChart) -> Result<Multivector> {
    let pj = pi_phi(pi, cc.j())?;
    pj.add(&pi.scale(&Gaussian::i()))
}

/// `H = (eta - i j eta) / 2`.
pub fn holomorphic_vector(eta: &Multivector, cc: &ComplexChart) -> Result<Multivector> {
    let jeta = cc.j().apply(eta)?;
    let h = eta.sub(&jeta.scale(&Gaussian::i()))?;
    Ok(h.scale(&Gaussian::from_ratio(1, 2)))
}

fn check_vector(eta: &Multivector, cc: &ComplexChart) -> Result<()> {
    same_chart(eta.chart(), cc.chart())?;
    if eta.degree() != 1 {
        return Err(Error::DegreeMismatch("homogeneity field must be a vector field".into()));
    }
    Ok(())
}

fn check_bivector(pi: &Multivector, cc: &ComplexChart) -> Result<()> {
    same_chart(pi.chart(), cc.chart())?;
    if pi.degree() != 2 {
        return Err(Error::DegreeMismatch("expected a bivector".into()));
    }
    if !pi.entries().all(|(_, v)| v.is_real()) {
        return Err(Error::Invalid("pi must be real".into()));
    }
    Ok(())
}

/// Condition (1) failures; `None` when `pi_j` is undefined.
fn holomorphic_poisson_failures(pi: &Multivector, cc: &ComplexChart) -> Result<(Vec<String>, Option<Multivector>)> {
    let big = match holomorphic_bivector(pi, cc) {
        Ok(p) => p,
        Err(Error::Incompatible(msg)) => return Ok((vec![format!("pi_j undefined: {msg}")], None)),
        Err(e) => return Err(e),
    };
    let mut failures = is_holomorphic(&big, cc)?.failures;
    if !big.schouten(&big)?.is_zero() {
        failures.push("[Pi, Pi] != 0".to_string());
    }
    Ok((failures, Some(big)))
}

fn pn_failures(pi: &Multivector, cc: &ComplexChart) -> Result<Vec<String>> {
    let mut failures = Vec::new();
    if !is_poisson(pi)? {
        failures.push("[pi, pi] != 0".to_string());
    }
    failures.extend(pn_compatible(pi, cc.j())?.failures);
    if !cc.j().is_nijenhuis() {
        failures.push("N_j != 0".to_string());
    }
    Ok(failures)
}

fn block(pi: &Multivector, cc: &ComplexChart) -> Result<GenBlockT> {
    GenBlockT::new(cc.j().clone(), pi.clone(), DiffForm::zero(cc.chart(), 2))
}

/// (1) `Pi = pi_j + i pi` is holomorphic Poisson; (2) `(pi, j)` is
/// Poisson-Nijenhuis; (3) `(j, pi^sharp; 0, -j^*)` is generalized complex.
pub fn check_hp_equivalences(pi: &Multivector, cc: &ComplexChart) -> Result<EquivalenceReport> {
    check_bivector(pi, cc)?;
    let (f1, _) = holomorphic_poisson_failures(pi, cc)?;
    let f2 = pn_failures(pi, cc)?;
    let f3 = block(pi, cc)?.is_generalized_complex().failures;
    Ok(EquivalenceReport {
        verdicts: vec![
            Verdict::new("holomorphic Poisson", f1),
            Verdict::new("Poisson-Nijenhuis", f2),
            Verdict::new("generalized complex", f3),
        ],
        extras: Vec::new(),
    })
}

/// Homogeneous version with `H = (eta - i j eta)/2`. When the first condition
/// holds, also records `L_{j eta} pi_j = pi` and `L_{j eta} pi = -pi_j`.
pub fn check_homogeneous_equivalences(pi: &Multivector, cc: &ComplexChart, eta: &Multivector) -> Result<EquivalenceReport> {
    check_bivector(pi, cc)?;
    check_vector(eta, cc)?;
    let (mut f1, big) = holomorphic_poisson_failures(pi, cc)?;
    let h = holomorphic_vector(eta, cc)?;
    f1.extend(is_holomorphic(&h, cc)?.failures.into_iter().map(|f| format!("H: {f}")));
    if let Some(big) = &big {
        if !big.lie_derivative(&h)?.add(big)?.is_zero() {
            f1.push("L_H Pi != -Pi".to_string());
        }
    }

    let mut f2 = pn_failures(pi, cc)?;
    if !pi.lie_derivative(eta)?.add(pi)?.is_zero() {
        f2.push("L_eta pi != -pi".to_string());
    }
    if !cc.j().lie_derivative(eta)?.is_zero() {
        f2.push("L_eta j != 0".to_string());
    }

    let b = block(pi, cc)?;
    let mut f3 = b.is_generalized_complex().failures;
    f3.extend(b.is_homogeneous(eta)?);

    let mut extras = Vec::new();
    if f1.is_empty() {
        let pj = pi_phi(pi, cc.j())?;
        let jeta = cc.j().apply(eta)?;
        extras.push(("L_{j eta} pi_j = pi".to_string(), pj.lie_derivative(&jeta)?.sub(pi)?.is_zero()));
        extras.push(("L_{j eta} pi = -pi_j".to_string(), pi.lie_derivative(&jeta)?.add(&pj)?.is_zero()));
    }
    Ok(EquivalenceReport {
        verdicts: vec![
            Verdict::new("homogeneous holomorphic Poisson", f1),
            Verdict::new("homogeneous Poisson-Nijenhuis", f2),
            Verdict::new("homogeneous generalized complex", f3),
        ],
        extras,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse, Chart, ScalarExpr};
    use std::sync::Arc;

    fn cotangent() -> (Arc<Chart>, ComplexChart) {
        let c = Arc::new(Chart::real(&["x", "y", "m", "q"]).unwrap());
        let cc = ComplexChart::standard(&c, &[(0, 1), (2, 3)]).unwrap();
        (c, cc)
    }

    fn dz(c: &Arc<Chart>, a: usize, b: usize) -> Multivector {
        let mut v = vec![ScalarExpr::zero(); c.dim()];
        v[a] = ScalarExpr::ratio(1, 2);
        v[b] = parse("-i/2", c).unwrap();
        Multivector::vector(c, &v)
    }

    #[test]
    fn canonical_complex_symplectic_structure() {
        let (c, cc) = cotangent();
        let big = dz(&c, 0, 1).wedge(&dz(&c, 2, 3)).unwrap();
        let pi = big.im();
        assert_eq!(holomorphic_bivector(&pi, &cc).unwrap(), big);
        let r = check_hp_equivalences(&pi, &cc).unwrap();
        assert!(r.agree() && r.all_hold(), "{r:?}");
        // H = p d/dp, eta = 2 Re H
        let h = dz(&c, 2, 3).mul_fn(&parse("m + i*q", &c).unwrap());
        let eta = h.re().scale(&Gaussian::from_int(2));
        assert_eq!(holomorphic_vector(&eta, &cc).unwrap(), h);
        let r = check_homogeneous_equivalences(&pi, &cc, &eta).unwrap();
        assert!(r.agree() && r.all_hold(), "{r:?}");
        assert!(r.extras.len() == 2 && r.extras.iter().all(|e| e.1));
        let r = check_homogeneous_equivalences(&pi, &cc, &Multivector::zero(&c, 1)).unwrap();
        assert!(r.agree() && !r.all_hold());
    }

    #[test]
    fn zero_bivector() {
        let (c, cc) = cotangent();
        let r = check_hp_equivalences(&Multivector::zero(&c, 2), &cc).unwrap();
        assert!(r.agree() && r.all_hold());
    }

    #[test]
    fn plane_bivector_is_not_of_type_two_zero() {
        // in complex dimension one every real bivector fails to commute with j
        let c = Arc::new(Chart::real(&["x", "y"]).unwrap());
        let cc = ComplexChart::standard(&c, &[(0, 1)]).unwrap();
        let r = check_hp_equivalences(&Multivector::basis(&c, &[0, 1]), &cc).unwrap();
        assert!(r.agree() && !r.all_hold());
    }

    #[test]
    fn antiholomorphic_coefficient() {
        let (c, cc) = cotangent();
        let big = dz(&c, 0, 1).wedge(&dz(&c, 2, 3)).unwrap().mul_fn(&parse("x - i*y", &c).unwrap());
        let r = check_hp_equivalences(&big.im(), &cc).unwrap();
        assert!(r.agree() && !r.all_hold(), "{r:?}");
        assert!(r.verdicts.iter().all(|v| !v.failures.is_empty()));
    }
}
