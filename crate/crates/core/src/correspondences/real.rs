use super::{drop_var, lift_index, lift_var, test_functions, HomogeneousPoisson};
use crate::error::{Error, Result};
use crate::expr::ScalarExpr;
use crate::jacobi::{extract_pair, is_jacobi, EndoDL, MultiDerivation};
use crate::tensor::{Matrix, Multivector, Tensor11};
use std::sync::Arc;

fn euler(chart: &Arc<crate::expr::Chart>, s: usize) -> Multivector {
    let mut v = vec![ScalarExpr::zero(); chart.dim()];
    v[s] = ScalarExpr::coord(s);
    Multivector::vector(chart, &v)
}

/// Extends the chart by a radial coordinate `s` (appended last) and returns
/// `pi = s^{-1} Lambda + E ^ d_s`, checked against
/// `{s f, s g} = s J(f, g)` on polynomial generators.
pub fn poissonize(j: &MultiDerivation) -> Result<HomogeneousPoisson> {
    if j.degree() != 2 {
        return Err(Error::DegreeMismatch("Poissonization needs a bi-derivation".into()));
    }
    let base = j.chart();
    let n = base.dim();
    let chart = Arc::new(base.extend(&base.fresh_name("s"), false)?);
    let s = ScalarExpr::coord(n);
    let lambda = j.lambda().embed(&chart)?;
    let e = j.e().embed(&chart)?;
    let pi = lambda.mul_fn(&s.recip()?).add(&e.wedge(&Multivector::basis(&chart, &[n]))?)?;

    let coords: Vec<ScalarExpr> = (0..n).map(ScalarExpr::coord).collect();
    let fs = test_functions(&coords);
    for (a, f) in fs.iter().enumerate() {
        for g in &fs[a + 1..] {
            let lhs = pi.eval_functions(&[s.mul(f), s.mul(g)]);
            let rhs = s.mul(&j.apply(&[f.clone(), g.clone()])?);
            if lhs != rhs {
                return Err(Error::Invalid(format!(
                    "defining identity fails on ({}, {})",
                    f.display(base),
                    g.display(base)
                )));
            }
        }
    }
    HomogeneousPoisson::new(pi, euler(&chart, n), n)
}

/// The bi-derivation `J(f, g) = s^{-1} pi(d(s f), d(s g))` on the chart
/// without coordinate `s`, and whether it is Jacobi.
pub fn restrict_homogeneous(pi: &Multivector, s: usize) -> Result<(MultiDerivation, bool)> {
    let chart = pi.chart();
    if pi.degree() != 2 {
        return Err(Error::DegreeMismatch("restriction needs a bivector".into()));
    }
    if s >= chart.dim() || chart.is_angle(s) {
        return Err(Error::InvalidChart("fiber coordinate must be a non-angle coordinate".into()));
    }
    HomogeneousPoisson::new(pi.clone(), euler(chart, s), s)?;
    let base = Arc::new(chart.remove(s));
    let sv = ScalarExpr::coord(s);
    let sinv = sv.recip()?;
    let up = lift_var(s);
    let down = drop_var(s);
    let eval = |args: &[ScalarExpr]| -> Result<ScalarExpr> {
        let lifted: Vec<ScalarExpr> = args.iter().map(|f| f.map_vars(&up).mul(&sv)).collect();
        let v = pi.eval_functions(&lifted).mul(&sinv);
        if v.mentions(s) {
            return Err(Error::Invalid(format!("restricted bracket depends on {}", chart.name(s))));
        }
        Ok(v.map_vars(&down))
    };
    let j = extract_pair(&base, 2, &eval)?;
    let flag = is_jacobi(&j)?;
    Ok((j, flag))
}

/// The homogeneous `(1,1)`-tensor on the chart extended by `s` (appended last)
/// that maps the lift `X + f s d_s` of `(X, f)` to the lift of `phi(X, f)`.
pub fn poissonize_endo(phi: &EndoDL) -> Result<Tensor11> {
    let base = phi.chart();
    let n = base.dim();
    let chart = Arc::new(base.extend(&base.fresh_name("s"), false)?);
    let s = ScalarExpr::coord(n);
    let m = phi.matrix();
    let sinv = s.recip()?;
    let t = Matrix::from_fn(n + 1, n + 1, |a, b| match (a < n, b < n) {
        (true, true) => m.get(a, b).clone(),
        (true, false) => m.get(a, n).mul(&sinv),
        (false, true) => m.get(n, b).mul(&s),
        (false, false) => m.get(n, n).clone(),
    });
    let out = Tensor11::new(&chart, t)?;
    if !out.lie_derivative(&euler(&chart, n))?.is_zero() {
        return Err(Error::Invalid("lifted tensor is not homogeneous".into()));
    }
    Ok(out)
}

/// Inverse of `poissonize_endo` along fiber coordinate `s`.
pub fn restrict_endo(phi: &Tensor11, s: usize) -> Result<EndoDL> {
    let chart = phi.chart();
    if s >= chart.dim() || chart.is_angle(s) {
        return Err(Error::InvalidChart("fiber coordinate must be a non-angle coordinate".into()));
    }
    if !phi.lie_derivative(&euler(chart, s))?.is_zero() {
        return Err(Error::NotHomogeneous("L_eta phi != 0".into()));
    }
    let base = Arc::new(chart.remove(s));
    let n = base.dim();
    let sv = ScalarExpr::coord(s);
    let sinv = sv.recip()?;
    let up = lift_index(s);
    let down = drop_var(s);
    let idx = |a: usize| if a < n { up(a).unwrap() } else { s };
    let bad = std::cell::Cell::new(false);
    let m = Matrix::from_fn(n + 1, n + 1, |a, b| {
        let v = phi.get(idx(a), idx(b));
        let v = match (a < n, b < n) {
            (true, false) => v.mul(&sv),
            (false, true) => v.mul(&sinv),
            _ => v.clone(),
        };
        if v.mentions(s) {
            bad.set(true);
        }
        v.map_vars(&down)
    });
    if bad.get() {
        return Err(Error::Invalid(format!("restricted endomorphism depends on {}", chart.name(s))));
    }
    EndoDL::from_matrix(&base, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse, Chart};
    use crate::jacobi::contact_to_jacobi;
    use crate::tensor::{is_poisson, DiffForm};

    fn plane() -> Arc<Chart> {
        Arc::new(Chart::real(&["x", "y"]).unwrap())
    }

    #[test]
    fn zero_and_symplectic_pairs() {
        let c = plane();
        let hp = poissonize(&MultiDerivation::zero(&c, 2)).unwrap();
        assert!(hp.pi.is_zero());
        let j = MultiDerivation::new(Multivector::basis(&c, &[0, 1]), Multivector::zero(&c, 1)).unwrap();
        let hp = poissonize(&j).unwrap();
        assert_eq!(hp.pi.get(&[0, 1]), parse("1/s", hp.chart()).unwrap());
        let (back, flag) = restrict_homogeneous(&hp.pi, 2).unwrap();
        assert_eq!(back, j);
        assert!(flag);
    }

    #[test]
    fn contact_pair_poissonizes_to_a_symplectic_bivector() {
        let c = Arc::new(Chart::real(&["t", "p", "q"]).unwrap());
        let theta = DiffForm::from_components(&c, &[ScalarExpr::one(), ScalarExpr::zero(), parse("-p", &c).unwrap()]);
        let j = contact_to_jacobi(&theta).unwrap();
        let hp = poissonize(&j).unwrap();
        assert!(is_poisson(&hp.pi).unwrap());
        assert!(!hp.pi.wedge(&hp.pi).unwrap().is_zero());
    }

    #[test]
    fn non_poisson_restriction_is_flagged() {
        let c = Arc::new(Chart::real(&["x", "y", "z", "s"]).unwrap());
        let pi = Multivector::from_entries(
            &c,
            2,
            &[(vec![0, 1], parse("1/s", &c).unwrap()), (vec![2, 3], ScalarExpr::one())],
        )
        .unwrap();
        assert!(!is_poisson(&pi).unwrap());
        let (j, flag) = restrict_homogeneous(&pi, 3).unwrap();
        assert!(!flag);
        assert!(!j.is_zero());
        let bad = Multivector::basis(&c, &[0, 1]);
        assert!(matches!(restrict_homogeneous(&bad, 3), Err(Error::NotHomogeneous(_))));
    }

    #[test]
    fn endomorphism_roundtrip() {
        let c = plane();
        let id = poissonize_endo(&EndoDL::identity(&c)).unwrap();
        assert_eq!(id, Tensor11::identity(id.chart()));
        let n = Tensor11::new(&c, Matrix::from_fn(2, 2, |a, b| ScalarExpr::int((a + 2 * b) as i64))).unwrap();
        let phi = EndoDL::from_blocks(&n, &[parse("x", &c).unwrap(), ScalarExpr::zero()], &[ScalarExpr::one(), parse("y^2", &c).unwrap()], &ScalarExpr::int(3)).unwrap();
        let lifted = poissonize_endo(&phi).unwrap();
        assert_eq!(restrict_endo(&lifted, 2).unwrap(), phi);
    }
}
