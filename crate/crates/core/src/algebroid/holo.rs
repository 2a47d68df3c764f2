//! Real and imaginary algebroids of a holomorphic cotangent algebroid, and
//! the flat connection of a holomorphic Jacobi structure on its line bundle.

use super::AlgebroidData;
use crate::complexgeom::{is_holomorphic, ComplexChart};
use crate::correspondences::{is_holomorphic_biderivation, test_functions};
use crate::error::{Error, Result};
use crate::expr::ScalarExpr;
use crate::jacobi::{dl_bracket, is_jacobi, j_sharp, jet_bracket, DlSection, JetSection, MultiDerivation};
use crate::tensor::{apply_vector, form_bracket_dense, pair, same_chart, Matrix, Multivector};

fn two_re(v: &[ScalarExpr]) -> Vec<ScalarExpr> {
    v.iter().map(|x| x.add(&x.conj())).collect()
}

/// `(A_Re, (A_Re)_{j_A})` for the holomorphic cotangent algebroid of a
/// holomorphic Poisson bivector `Pi`.
///
/// A real one-form `w` stands for the holomorphic section `w - i j^* w`,
/// with anchor `2 Re(Pi^sharp(w - i j^* w))`. Brackets are computed on the
/// holomorphic coframe and extended by the Leibniz rule; the real part of
/// the resulting `(1,0)`-form is the real representative. Multiplication by
/// `i` corresponds to `j^*` on real forms, which is the endomorphism used
/// for the imaginary algebroid.
pub fn holomorphic_cotangent_real_imaginary(
    big_pi: &Multivector,
    cc: &ComplexChart,
) -> Result<(AlgebroidData, AlgebroidData)> {
    same_chart(big_pi.chart(), cc.chart())?;
    if big_pi.degree() != 2 {
        return Err(Error::DegreeMismatch("holomorphic cotangent algebroid needs a bivector".into()));
    }
    let rep = is_holomorphic(big_pi, cc)?;
    if !rep.holds() {
        return Err(Error::NotHolomorphic(rep.failures.join("; ")));
    }
    if !big_pi.schouten(big_pi)?.is_zero() {
        return Err(Error::Invalid("[Pi, Pi] != 0".into()));
    }
    let chart = cc.chart();
    let dim = chart.dim();
    let j = cc.j();
    let i = ScalarExpr::i();
    let rho = |k: &[ScalarExpr]| two_re(&big_pi.sharp(k));
    let theta = cc.coframe();
    let rho_theta: Vec<Vec<ScalarExpr>> = theta.iter().map(|t| rho(t)).collect();
    let n = theta.len();
    let mut hol = vec![vec![Vec::new(); n]; n];
    for k in 0..n {
        for l in 0..n {
            hol[k][l] = form_bracket_dense(big_pi, &theta[k], &theta[l]).components();
        }
    }
    // Holomorphic representatives of dx^a and their coframe coefficients.
    let h: Vec<Vec<ScalarExpr>> = (0..dim)
        .map(|a| {
            let mut e = vec![ScalarExpr::zero(); dim];
            e[a] = ScalarExpr::one();
            let je = j.dual_dense(&e);
            e.iter().zip(&je).map(|(x, y)| x.sub(&y.mul(&i))).collect()
        })
        .collect();
    let g: Vec<Vec<ScalarExpr>> = h
        .iter()
        .map(|ha| cc.frame10().iter().map(|e| pair(ha, e)).collect())
        .collect();
    let anchor: Vec<Vec<ScalarExpr>> = h.iter().map(|ha| rho(ha)).collect();
    let mut c = vec![vec![vec![ScalarExpr::zero(); dim]; dim]; dim];
    for a in 0..dim {
        for b in a + 1..dim {
            let mut kappa = vec![ScalarExpr::zero(); dim];
            let mut add = |coef: ScalarExpr, form: &[ScalarExpr]| {
                if coef.is_zero() {
                    return;
                }
                for (x, f) in kappa.iter_mut().zip(form) {
                    if !f.is_zero() {
                        *x = x.add(&coef.mul(f));
                    }
                }
            };
            for k in 0..n {
                for l in 0..n {
                    add(g[a][k].mul(&g[b][l]), &hol[k][l]);
                    add(g[a][k].mul(&apply_vector(&rho_theta[k], &g[b][l])), &theta[l]);
                    add(g[b][l].mul(&apply_vector(&rho_theta[l], &g[a][k])).neg(), &theta[k]);
                }
            }
            let re: Vec<ScalarExpr> = kappa.iter().map(|x| x.re()).collect();
            c[b][a] = re.iter().map(|x| x.neg()).collect();
            c[a][b] = re;
        }
    }
    let labels = chart.names().iter().map(|s| format!("d{}", s)).collect();
    let real = AlgebroidData::new(chart, labels, anchor, c)?;
    // j_A(dx^a) = j^* dx^a, as a matrix acting on frame coefficients.
    let phi = Matrix::from_fn(dim, dim, |k, a| j.get(a, k).clone());
    let imaginary = real.deform(&phi)?;
    Ok((real, imaginary))
}

fn validate_holomorphic_jacobi(j: &MultiDerivation, cc: &ComplexChart) -> Result<()> {
    if j.degree() != 2 {
        return Err(Error::DegreeMismatch("flat connection needs a bi-derivation".into()));
    }
    let failures = is_holomorphic_biderivation(j, cc)?;
    if !failures.is_empty() {
        return Err(Error::NotHolomorphic(failures.join("; ")));
    }
    if !is_jacobi(j)? {
        return Err(Error::Invalid("[J, J] != 0".into()));
    }
    Ok(())
}

fn connection(j: &MultiDerivation, theta: &JetSection) -> Result<DlSection> {
    let d = j_sharp(j, theta)?;
    Ok(DlSection::new(two_re(&d.x), d.f))
}

/// `nabla_theta`: the derivation `J^sharp theta` of type `(1,0)` turned into
/// the complex-linear derivation `(2 Re X, f)` of the underlying real bundle,
/// which agrees with it on holomorphic sections.
pub fn jacobi_flat_connection(j: &MultiDerivation, cc: &ComplexChart, theta: &JetSection) -> Result<DlSection> {
    same_chart(j.chart(), cc.chart())?;
    validate_holomorphic_jacobi(j, cc)?;
    if theta.alpha.len() != j.dim() {
        return Err(Error::DimensionMismatch("jet length differs from chart dimension".into()));
    }
    connection(j, theta)
}

/// Outcome of [`check_flat_connection`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatConnectionReport {
    /// `sigma(nabla_theta)` is real and equals `2 Re sigma(J^sharp theta)`.
    pub symbol: bool,
    /// `nabla_theta` and `J^sharp theta` agree on holomorphic test sections.
    pub agrees_on_holomorphic: bool,
    /// `[nabla_{j^1 l1}, nabla_{j^1 l2}] - nabla_{[j^1 l1, j^1 l2]_J}` kills
    /// holomorphic test sections.
    pub flat: bool,
    pub failures: Vec<String>,
}

impl FlatConnectionReport {
    pub fn holds(&self) -> bool {
        self.symbol && self.agrees_on_holomorphic && self.flat
    }
}

/// Checks the connection on the given jets and on first jets of the
/// holomorphic test sections `1, z^a, z^a z^b`.
pub fn check_flat_connection(
    j: &MultiDerivation,
    cc: &ComplexChart,
    jets: &[JetSection],
) -> Result<FlatConnectionReport> {
    same_chart(j.chart(), cc.chart())?;
    validate_holomorphic_jacobi(j, cc)?;
    let n = j.dim();
    let tests = test_functions(cc.holomorphic_coordinates());
    let mut failures = Vec::new();
    let mut symbol = true;
    let mut agrees_on_holomorphic = true;
    let prolonged: Vec<JetSection> = tests.iter().map(|l| JetSection::prolong(l, n)).collect();
    for (t, theta) in jets.iter().chain(&prolonged).enumerate() {
        let nab = connection(j, theta)?;
        let raw = j_sharp(j, theta)?;
        let expected = two_re(&raw.x);
        if nab.x.iter().zip(&expected).any(|(a, b)| !a.sub(b).is_zero()) || nab.x.iter().any(|x| !x.is_real()) {
            symbol = false;
            failures.push(format!("symbol mismatch for jet #{t}"));
        }
        for (s, mu) in tests.iter().enumerate() {
            if !nab.apply(mu).sub(&raw.apply(mu)).is_zero() {
                agrees_on_holomorphic = false;
                failures.push(format!("jet #{t} acts differently on test section #{s}"));
            }
        }
    }
    let mut flat = true;
    for a in 0..prolonged.len() {
        for b in a + 1..prolonged.len() {
            let lhs = dl_bracket(&connection(j, &prolonged[a])?, &connection(j, &prolonged[b])?);
            let rhs = connection(j, &jet_bracket(j, &prolonged[a], &prolonged[b])?)?;
            let d = lhs.sub(&rhs);
            for (s, mu) in tests.iter().enumerate() {
                let v = d.apply(mu);
                if !v.is_zero() {
                    flat = false;
                    failures.push(format!(
                        "curvature on (j1 l{a}, j1 l{b}) applied to test section #{s} is {}",
                        v.display(cc.chart())
                    ));
                }
            }
        }
    }
    Ok(FlatConnectionReport { symbol, agrees_on_holomorphic, flat, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::cotangent_algebroid;
    use crate::correspondences::darboux_example;
    use crate::expr::{parse, Chart, Gaussian};
    use crate::tensor::{pi_phi, Tensor11};
    use std::sync::Arc;

    fn c2() -> ComplexChart {
        let c = Arc::new(Chart::real(&["x", "y", "m", "q"]).unwrap());
        ComplexChart::standard(&c, &[(0, 1), (2, 3)]).unwrap()
    }

    fn wedge(cc: &ComplexChart, f: &ScalarExpr) -> Multivector {
        let c = cc.chart();
        let a = Multivector::vector(c, &cc.frame10()[0]);
        let b = Multivector::vector(c, &cc.frame10()[1]);
        a.wedge(&b).unwrap().mul_fn(f)
    }

    fn parts(big_pi: &Multivector, j: &Tensor11) -> (Multivector, Multivector) {
        let pi = big_pi.im();
        let pj = pi_phi(&pi, j).unwrap();
        (pj.scale(&Gaussian::from_int(4)), pi.scale(&Gaussian::from_int(4)))
    }

    #[test]
    fn zero_bivector_gives_abelian_pair() {
        let cc = c2();
        let (re, im) = holomorphic_cotangent_real_imaginary(&Multivector::zero(cc.chart(), 2), &cc).unwrap();
        assert!(re.to_text().is_empty());
        assert!(im.to_text().is_empty());
    }

    #[test]
    fn canonical_bivector_real_part() {
        let cc = c2();
        let big_pi = wedge(&cc, &ScalarExpr::one());
        let (re, im) = holomorphic_cotangent_real_imaginary(&big_pi, &cc).unwrap();
        let (pj4, pi4) = parts(&big_pi, cc.j());
        assert_eq!(re.first_difference(&cotangent_algebroid(&pj4).unwrap()), None);
        assert!(re.check_axioms().holds());
        assert!(im.check_axioms().holds());
        assert_eq!(im.first_difference(&cotangent_algebroid(&pi4.neg()).unwrap()), None);
    }

    #[test]
    fn quadratic_bivector() {
        let cc = c2();
        let c = cc.chart().clone();
        let z = parse("x + i*y", &c).unwrap();
        let big_pi = wedge(&cc, &z.mul(&z));
        let (re, im) = holomorphic_cotangent_real_imaginary(&big_pi, &cc).unwrap();
        let (pj4, pi4) = parts(&big_pi, cc.j());
        assert_eq!(re.first_difference(&cotangent_algebroid(&pj4).unwrap()), None);
        assert_eq!(im.first_difference(&cotangent_algebroid(&pi4.neg()).unwrap()), None);
    }

    #[test]
    fn non_holomorphic_input_is_rejected() {
        let cc = c2();
        let c = cc.chart().clone();
        let big_pi = wedge(&cc, &parse("x", &c).unwrap());
        assert!(matches!(
            holomorphic_cotangent_real_imaginary(&big_pi, &cc),
            Err(Error::NotHolomorphic(_))
        ));
    }

    #[test]
    fn zero_jacobi_gives_zero_connection() {
        let cc = c2();
        let j = MultiDerivation::zero(cc.chart(), 2);
        let theta = JetSection::prolong(&parse("x*m", cc.chart()).unwrap(), 4);
        assert!(jacobi_flat_connection(&j, &cc, &theta).unwrap().is_zero());
        assert!(check_flat_connection(&j, &cc, &[]).unwrap().holds());
    }

    #[test]
    fn darboux_line_connection_is_flat() {
        let ex = darboux_example(0).unwrap();
        let c = ex.base.chart().clone();
        let jets = [
            JetSection::new(vec![parse("r*s", &c).unwrap(), parse("1 - r", &c).unwrap()], parse("s^2", &c).unwrap()),
            JetSection::new(vec![ScalarExpr::i(), ScalarExpr::zero()], parse("r", &c).unwrap()),
        ];
        let rep = check_flat_connection(&ex.jacobi, &ex.base, &jets).unwrap();
        assert!(rep.holds(), "{:?}", rep.failures);
    }

    #[test]
    fn non_jacobi_input_is_rejected() {
        let cc = c2();
        let big = wedge(&cc, &ScalarExpr::one());
        let z = parse("x + i*y", cc.chart()).unwrap();
        let e = Multivector::vector(cc.chart(), &cc.frame10()[0]).mul_fn(&z);
        let j = MultiDerivation::new(big, e).unwrap();
        assert!(!is_jacobi(&j).unwrap());
        let theta = JetSection::prolong(&ScalarExpr::one(), 4);
        assert!(jacobi_flat_connection(&j, &cc, &theta).is_err());
    }
}
