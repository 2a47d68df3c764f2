use super::{restrict_endo, restrict_homogeneous, test_functions};
use crate::complexgeom::{is_holomorphic, ComplexChart};
use crate::error::{Error, Result};
use crate::expr::{Chart, ScalarExpr, Var};
use crate::genstruct::GenBlockMap;
use crate::jacobi::{is_jacobi, is_jacobi_nijenhuis, j_phi, EndoDL, MultiDerivation};
use crate::report::{EquivalenceReport, Verdict};
use crate::tensor::{same_chart, Multivector};
use std::sync::Arc;

/// Rewrites a multi-derivation given in holomorphic coordinates (chart
/// coordinate `k` standing for the `k`-th holomorphic coordinate of `cc`) as
/// a complex multi-derivation on the real chart of `cc`.
pub fn holomorphic_transcribe(d: &MultiDerivation, cc: &ComplexChart) -> Result<MultiDerivation> {
    let zs = cc.holomorphic_coordinates();
    if zs.len() != d.dim() || cc.complex_dim() != d.dim() {
        return Err(Error::DimensionMismatch("holomorphic chart size".into()));
    }
    let chart = cc.chart();
    let frame: Vec<Multivector> = cc.frame10().iter().map(|v| Multivector::vector(chart, v)).collect();
    let sub = |f: &ScalarExpr| -> Result<ScalarExpr> {
        f.substitute(&|v| match v {
            Var::Coord(k) => zs[k as usize].clone(),
            _ => ScalarExpr::zero(),
        })
    };
    let move_mv = |m: &Multivector| -> Result<Multivector> {
        let mut out = Multivector::zero(chart, m.degree());
        for (idx, v) in m.entries() {
            if v.numerator().terms().any(|(mo, _)| mo.0.iter().any(|(var, _)| !matches!(var, Var::Coord(_)))) {
                return Err(Error::Invalid("trigonometric coefficient in holomorphic coordinates".into()));
            }
            let mut t = Multivector::scalar(chart, sub(v)?);
            for &i in idx {
                t = t.wedge(&frame[i])?;
            }
            out = out.add(&t)?;
        }
        Ok(out)
    };
    MultiDerivation::new(move_mv(d.lambda())?, move_mv(d.e())?)
}

/// Type and Cauchy-Riemann failures of `(Lambda, E)`.
pub fn is_holomorphic_biderivation(j: &MultiDerivation, cc: &ComplexChart) -> Result<Vec<String>> {
    same_chart(j.chart(), cc.chart())?;
    let mut failures: Vec<String> = is_holomorphic(j.lambda(), cc)?.failures.into_iter().map(|f| format!("Lambda: {f}")).collect();
    if j.e().degree() > 0 {
        failures.extend(is_holomorphic(j.e(), cc)?.failures.into_iter().map(|f| format!("E: {f}")));
    } else if !j.e().is_zero() {
        let e = j.e().as_scalar().unwrap_or_else(ScalarExpr::zero);
        if !cc.is_holomorphic_function(&e) {
            failures.push("E: not holomorphic".to_string());
        }
    }
    Ok(failures)
}

/// `(extended chart, Pi, H)` without holomorphy checks.
fn poissonize_raw(j: &MultiDerivation, cc: &ComplexChart) -> Result<(ComplexChart, Multivector, Multivector)> {
    same_chart(j.chart(), cc.chart())?;
    if j.degree() != 2 {
        return Err(Error::DegreeMismatch("Poissonization needs a bi-derivation".into()));
    }
    let base = cc.chart();
    let rho = base.fresh_name("rho");
    let psi = base.extend(&rho, false)?.fresh_name("psi");
    let ext = cc.with_polar_fiber(&rho, &psi)?;
    let chart = ext.chart().clone();
    let n = base.dim();
    let r = ScalarExpr::coord(n);
    let w = ext.holomorphic_coordinates().last().unwrap().clone();
    // 1/w = conj(w)/rho^2
    let winv = w.conj().mul(&r.pow(-2)?);
    let h = Multivector::vector(&chart, ext.frame10().last().unwrap());
    let dw = h.mul_fn(&winv);
    let big = j.lambda().embed(&chart)?.mul_fn(&winv).add(&j.e().embed(&chart)?.wedge(&dw)?)?;
    Ok((ext, big, h))
}

/// The homogeneous bivector `Pi = w^{-1} Lambda + E ^ d_w` on the `C^*`
/// extension in polar coordinates `w = rho e^{i psi}`, and `H = w d_w`.
/// Checks `Pi(d(w f), d(w g)) = w J(f, g)` on holomorphic generators,
/// `L_H Pi = -Pi` and holomorphy of `Pi`.
pub fn holomorphic_poissonize(j: &MultiDerivation, cc: &ComplexChart) -> Result<(ComplexChart, Multivector, Multivector)> {
    let failures = is_holomorphic_biderivation(j, cc)?;
    if !failures.is_empty() {
        return Err(Error::NotHolomorphic(failures.join("; ")));
    }
    let (ext, big, h) = poissonize_raw(j, cc)?;
    let w = ext.holomorphic_coordinates().last().unwrap().clone();
    let fs = test_functions(cc.holomorphic_coordinates());
    for (a, f) in fs.iter().enumerate() {
        for g in &fs[a + 1..] {
            let lhs = big.eval_functions(&[w.mul(f), w.mul(g)]);
            let rhs = w.mul(&j.apply(&[f.clone(), g.clone()])?);
            if lhs != rhs {
                return Err(Error::Invalid("defining identity fails on holomorphic generators".into()));
            }
        }
    }
    if !big.lie_derivative(&h)?.add(&big)?.is_zero() {
        return Err(Error::Invalid("L_H Pi != -Pi".into()));
    }
    if !is_holomorphic(&big, &ext)?.holds() {
        return Err(Error::Invalid("Poissonization is not holomorphic".into()));
    }
    Ok((ext, big, h))
}

/// Output of the circle-bundle construction: bi-derivations `J^` and `J^'`
/// from the imaginary and real parts of `Pi` and the endomorphism `j^`, on
/// the base chart extended by the angle `psi`.
#[derive(Clone, Debug)]
pub struct CircleBundle {
    pub ext: ComplexChart,
    pub big_pi: Multivector,
    pub j_hat: MultiDerivation,
    pub j_hat_prime: MultiDerivation,
    pub endo: EndoDL,
}

impl CircleBundle {
    pub fn chart(&self) -> &Arc<Chart> {
        self.j_hat.chart()
    }
}

pub fn circle_bundle_structures(j: &MultiDerivation, cc: &ComplexChart) -> Result<CircleBundle> {
    let (ext, big, _) = poissonize_raw(j, cc)?;
    let s = cc.chart().dim();
    let (j_hat, _) = restrict_homogeneous(&big.im(), s)?;
    let (j_hat_prime, _) = restrict_homogeneous(&big.re(), s)?;
    let endo = restrict_endo(ext.j(), s)?;
    same_chart(j_hat.chart(), endo.chart())?;
    Ok(CircleBundle { ext, big_pi: big, j_hat, j_hat_prime, endo })
}

fn twisted_matches(cb: &CircleBundle) -> Result<Option<String>> {
    match j_phi(&cb.j_hat, &cb.endo) {
        Ok(jp) if jp == cb.j_hat_prime => Ok(None),
        Ok(_) => Ok(Some("J^' != J^_j^".to_string())),
        Err(Error::Incompatible(msg)) => Ok(Some(format!("J^_j^ undefined: {msg}"))),
        Err(e) => Err(e),
    }
}

/// (1) `J` holomorphic Jacobi; (2) `(J^, j^)` Jacobi-Nijenhuis with
/// `J^' = J^_j^`; (3) `(j^, J^sharp; 0, -j^dagger)` generalized contact with
/// `J^' = J^_j^`.
pub fn check_holomorphic_jacobi_equivalences(j: &MultiDerivation, cc: &ComplexChart) -> Result<EquivalenceReport> {
    let mut f1 = is_holomorphic_biderivation(j, cc)?;
    if !is_jacobi(j)? {
        f1.push("[J, J] != 0".to_string());
    }
    let cb = circle_bundle_structures(j, cc)?;
    let twist = twisted_matches(&cb)?;
    let mut f2 = is_jacobi_nijenhuis(&cb.j_hat, &cb.endo)?.failures;
    f2.extend(twist.clone());
    let mut f3 = GenBlockMap::from_pair(cb.endo.clone(), cb.j_hat.clone())?.is_generalized_contact().failures;
    f3.extend(twist);
    Ok(EquivalenceReport {
        verdicts: vec![
            Verdict::new("holomorphic Jacobi", f1),
            Verdict::new("Jacobi-Nijenhuis", f2),
            Verdict::new("generalized contact", f3),
        ],
        extras: Vec::new(),
    })
}
