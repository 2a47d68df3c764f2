//! Complex structure on the gauge algebroid of a holomorphic line bundle.

use super::jets::{DlSection, EndoDL};
use crate::complexgeom::{is_complex_structure, p01};
use crate::error::{Error, Result};
use crate::expr::ScalarExpr;
use crate::tensor::{same_chart, DiffForm, Tensor11};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeReport {
    pub squares_to_minus_one: bool,
    pub torsion_free: bool,
    pub symbol_intertwines: bool,
    pub acts_by_i: bool,
    pub failures: Vec<String>,
}

impl GaugeReport {
    pub fn holds(&self) -> bool {
        self.squares_to_minus_one && self.torsion_free && self.symbol_intertwines && self.acts_by_i
    }
}

/// Builds `j_DE` on complex-linear derivations `X + f` of the trivial line
/// bundle whose holomorphic structure is `dbar s = ds^{0,1} + A s`, with `A`
/// a `(0,1)`-form:
/// `j_DE (X, f) = (j X, i f - 2 i A(X^{0,1}))`.
pub fn gauge_complex_structure(j: &Tensor11, a: &DiffForm) -> Result<(EndoDL, GaugeReport)> {
    same_chart(j.chart(), a.chart())?;
    if a.degree() != 1 {
        return Err(Error::DegreeMismatch("connection coefficient must be a one-form".into()));
    }
    if !is_complex_structure(j)?.holds() {
        return Err(Error::Invalid("j is not an integrable complex structure".into()));
    }
    let n = j.dim();
    let comps = a.components();
    let ja = j.dual_dense(&comps);
    let mi = ScalarExpr::i().neg();
    if (0..n).any(|k| ja[k] != comps[k].mul(&mi)) {
        return Err(Error::Invalid("connection coefficient is not of type (0,1)".into()));
    }
    let proj = p01(j);
    let c = ScalarExpr::i().mul(&ScalarExpr::int(-2));
    let gamma: Vec<ScalarExpr> = (0..n)
        .map(|k| {
            let mut s = ScalarExpr::zero();
            for (i, ai) in comps.iter().enumerate() {
                s = s.add(&ai.mul(proj.get(i, k)));
            }
            s.mul(&c)
        })
        .collect();
    let phi = EndoDL::from_blocks(j, &vec![ScalarExpr::zero(); n], &gamma, &ScalarExpr::i())?;

    let mut failures = Vec::new();
    let squares_to_minus_one = phi.squares_to_minus_one();
    if !squares_to_minus_one {
        failures.push("j_DE^2 != -1".to_string());
    }
    let torsion = phi.torsion();
    for ((p, q), v) in &torsion {
        let chart = j.chart();
        let parts: Vec<String> = v.x.iter().chain([&v.f]).map(|e| e.display(chart).to_string()).collect();
        failures.push(format!("torsion on frame pair ({p},{q}): ({})", parts.join(", ")));
    }
    // symbol of j_DE(X, f) is j X for every frame element
    let symbol_intertwines = (0..=n).all(|b| {
        let img = phi.apply(&DlSection::frame(n, b));
        let expect = if b < n { j.column(b) } else { vec![ScalarExpr::zero(); n] };
        img.x == expect
    });
    if !symbol_intertwines {
        failures.push("symbol does not intertwine j_DE and j".to_string());
    }
    let unit = phi.apply(&DlSection::frame(n, n));
    let acts_by_i = unit.x.iter().all(|v| v.is_zero()) && unit.f == ScalarExpr::i();
    if !acts_by_i {
        failures.push("j_DE does not act on endomorphisms by i".to_string());
    }
    let report = GaugeReport { squares_to_minus_one, torsion_free: torsion.is_empty(), symbol_intertwines, acts_by_i, failures };
    Ok((phi, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse, Chart};
    use std::sync::Arc;

    fn dzbar(c: &Arc<Chart>, x: usize, y: usize, coeff: &ScalarExpr) -> DiffForm {
        let mut v = vec![ScalarExpr::zero(); c.dim()];
        v[x] = coeff.clone();
        v[y] = coeff.mul(&ScalarExpr::i().neg());
        DiffForm::from_components(c, &v)
    }

    #[test]
    fn trivial_connection_on_the_plane() {
        let c = Arc::new(Chart::real(&["x", "y"]).unwrap());
        let j = Tensor11::standard_complex(&c, &[(0, 1)]);
        let (phi, r) = gauge_complex_structure(&j, &DiffForm::zero(&c, 1)).unwrap();
        assert!(r.holds(), "{:?}", r.failures);
        assert_eq!(phi.g(), ScalarExpr::i());
    }

    #[test]
    fn polynomial_coefficient_on_the_plane() {
        let c = Arc::new(Chart::real(&["x", "y"]).unwrap());
        let j = Tensor11::standard_complex(&c, &[(0, 1)]);
        let a = dzbar(&c, 0, 1, &parse("x^2 + i*x*y", &c).unwrap());
        let (_, r) = gauge_complex_structure(&j, &a).unwrap();
        assert!(r.holds(), "{:?}", r.failures);
    }

    #[test]
    fn curved_connection_has_torsion() {
        let c = Arc::new(Chart::real(&["x", "y", "u", "v"]).unwrap());
        let j = Tensor11::standard_complex(&c, &[(0, 1), (2, 3)]);
        let a = dzbar(&c, 2, 3, &parse("x - i*y", &c).unwrap());
        let (_, r) = gauge_complex_structure(&j, &a).unwrap();
        assert!(r.squares_to_minus_one && !r.torsion_free);
        // a closed coefficient is flat
        let flat = dzbar(&c, 2, 3, &parse("x + i*y", &c).unwrap());
        assert!(gauge_complex_structure(&j, &flat).unwrap().1.holds());
    }

    #[test]
    fn wrong_type_is_rejected() {
        let c = Arc::new(Chart::real(&["x", "y"]).unwrap());
        let j = Tensor11::standard_complex(&c, &[(0, 1)]);
        let dz = DiffForm::from_components(&c, &[ScalarExpr::one(), ScalarExpr::i()]);
        assert!(matches!(gauge_complex_structure(&j, &dz), Err(Error::Invalid(_))));
    }
}
