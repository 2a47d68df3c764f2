use super::holomorphic_transcribe;
use crate::complexgeom::{holomorphic_bivector, holomorphic_vector, ComplexChart};
use crate::error::{Error, Result};
use crate::expr::{Chart, Gaussian, ScalarExpr};
use crate::jacobi::{contact_to_jacobi, MultiDerivation};
use crate::tensor::{DiffForm, Multivector};
use std::sync::Arc;

/// Structure constants `c[i][j][k] = c^k_{ij}`.
pub type Constants = Vec<Vec<Vec<Gaussian>>>;

fn constants(d: usize, entries: &[(usize, usize, usize, i64)]) -> Constants {
    let mut c = vec![vec![vec![Gaussian::zero(); d]; d]; d];
    for &(i, j, k, v) in entries {
        c[i][j][k] = Gaussian::from_int(v);
        c[j][i][k] = Gaussian::from_int(-v);
    }
    c
}

/// `sl(2)` in the basis `(h, e, f)`: `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
pub fn sl2_constants() -> Constants {
    constants(3, &[(0, 1, 1, 2), (0, 2, 2, -2), (1, 2, 0, 1)])
}

/// Heisenberg algebra: `[x, y] = z`.
pub fn heisenberg_constants() -> Constants {
    constants(3, &[(0, 1, 2, 1)])
}

/// Holomorphic Lie-Poisson structure on the dual of a complex Lie algebra.
#[derive(Clone, Debug)]
pub struct LiePoisson {
    pub cc: ComplexChart,
    /// `Pi = 1/2 c^k_{ij} xi_k d_i ^ d_j`.
    pub big_pi: Multivector,
    /// Holomorphic Euler field `xi_k d_k`.
    pub h: Multivector,
    /// `pi = Im Pi`.
    pub pi: Multivector,
    /// `eta = 2 Re H`.
    pub eta: Multivector,
}

/// Builds `(Pi, H)` on `g^*` with complex coordinates `xi_k = a_k + i b_k`.
pub fn lie_poisson(c: &Constants) -> Result<LiePoisson> {
    let d = c.len();
    if c.iter().any(|r| r.len() != d || r.iter().any(|v| v.len() != d)) {
        return Err(Error::DimensionMismatch("structure constants must be d x d x d".into()));
    }
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                if !(&c[i][j][k] + &c[j][i][k]).is_zero() {
                    return Err(Error::Invalid(format!("constants not antisymmetric at ({i},{j})")));
                }
            }
        }
    }
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                for l in 0..d {
                    let mut s = Gaussian::zero();
                    for m in 0..d {
                        s = &s + &(&c[i][j][m] * &c[m][k][l]);
                        s = &s + &(&c[j][k][m] * &c[m][i][l]);
                        s = &s + &(&c[k][i][m] * &c[m][j][l]);
                    }
                    if !s.is_zero() {
                        return Err(Error::Invalid(format!("Jacobi identity fails for ({i},{j},{k})")));
                    }
                }
            }
        }
    }
    let mut names = Vec::new();
    for k in 1..=d {
        names.push(format!("a{k}"));
        names.push(format!("b{k}"));
    }
    let chart = Arc::new(Chart::real(&names)?);
    let pairs: Vec<(usize, usize)> = (0..d).map(|k| (2 * k, 2 * k + 1)).collect();
    let cc = ComplexChart::standard(&chart, &pairs)?;
    let xi = cc.holomorphic_coordinates().to_vec();
    let frame: Vec<Multivector> = cc.frame10().iter().map(|v| Multivector::vector(&chart, v)).collect();
    let mut big = Multivector::zero(&chart, 2);
    for i in 0..d {
        for j in i + 1..d {
            let mut coeff = ScalarExpr::zero();
            for (k, x) in xi.iter().enumerate() {
                coeff = coeff.add(&x.mul(&ScalarExpr::constant(c[i][j][k].clone())));
            }
            if !coeff.is_zero() {
                big = big.add(&frame[i].wedge(&frame[j])?.mul_fn(&coeff))?;
            }
        }
    }
    let mut h = Multivector::zero(&chart, 1);
    for (k, x) in xi.iter().enumerate() {
        h = h.add(&frame[k].mul_fn(x))?;
    }
    let pi = big.im();
    let eta = h.re().scale(&Gaussian::from_int(2));
    debug_assert_eq!(holomorphic_bivector(&pi, &cc)?, big);
    debug_assert_eq!(holomorphic_vector(&eta, &cc)?, h);
    Ok(LiePoisson { cc, big_pi: big, h, pi, eta })
}

/// Data of the complex contact Darboux chart `theta = dt - P_k dz^k` on
/// `C^{2n+1}` and its `C^*` and circle extensions.
#[derive(Clone, Debug)]
pub struct DarbouxExample {
    pub n: usize,
    /// `C^{2n+1}` with real coordinates `r, s, x^k, y^k, m_k, q_k`.
    pub base: ComplexChart,
    pub theta: DiffForm,
    pub theta_r: DiffForm,
    pub theta_s: DiffForm,
    /// Holomorphic contact Jacobi pair of `theta`.
    pub jacobi: MultiDerivation,
    /// Base extended by `rho, psi` with `w = rho e^{i psi}`.
    pub ext: ComplexChart,
    pub omega: DiffForm,
    pub h: Multivector,
    pub eta: Multivector,
    /// Base extended by the angle `psi`.
    pub circle: Arc<Chart>,
    /// `cos(psi) theta_r - sin(psi) theta_s`.
    pub vartheta: DiffForm,
    /// `-sin(psi) theta_r - cos(psi) theta_s`.
    pub vartheta_j: DiffForm,
}

fn names(n: usize) -> (Vec<String>, Vec<String>) {
    let suffix = |k: usize| if n == 1 { String::new() } else { k.to_string() };
    let mut real = vec!["r".to_string(), "s".to_string()];
    let mut holo = vec!["t".to_string()];
    for k in 1..=n {
        real.push(format!("x{}", suffix(k)));
        real.push(format!("y{}", suffix(k)));
        holo.push(format!("z{}", suffix(k)));
    }
    for k in 1..=n {
        real.push(format!("m{}", suffix(k)));
        real.push(format!("q{}", suffix(k)));
        holo.push(format!("P{}", suffix(k)));
    }
    (real, holo)
}

pub fn darboux_example(n: usize) -> Result<DarbouxExample> {
    let (real, holo) = names(n);
    let chart = Arc::new(Chart::real(&real)?);
    let dim = chart.dim();
    let pairs: Vec<(usize, usize)> = (0..=2 * n).map(|a| (2 * a, 2 * a + 1)).collect();
    let base = ComplexChart::standard(&chart, &pairs)?;
    let zs = base.holomorphic_coordinates().to_vec();
    let coord = ScalarExpr::coord;
    let (xi, yi, mi, qi) = (|k: usize| 2 + 2 * k, |k: usize| 3 + 2 * k, |k: usize| 2 + 2 * n + 2 * k, |k: usize| 3 + 2 * n + 2 * k);

    let mut theta = DiffForm::exact(&chart, &zs[0]);
    for k in 0..n {
        theta = theta.sub(&DiffForm::exact(&chart, &zs[1 + k]).mul_fn(&zs[1 + n + k]))?;
    }
    let mut tr = vec![ScalarExpr::zero(); dim];
    let mut ts = vec![ScalarExpr::zero(); dim];
    tr[0] = ScalarExpr::one();
    ts[1] = ScalarExpr::one();
    for k in 0..n {
        tr[xi(k)] = coord(mi(k)).neg();
        tr[yi(k)] = coord(qi(k));
        ts[yi(k)] = coord(mi(k)).neg();
        ts[xi(k)] = coord(qi(k)).neg();
    }
    let theta_r = DiffForm::from_components(&chart, &tr);
    let theta_s = DiffForm::from_components(&chart, &ts);

    let hchart = Arc::new(Chart::real(&holo)?);
    let mut hc = vec![ScalarExpr::zero(); 2 * n + 1];
    hc[0] = ScalarExpr::one();
    for k in 0..n {
        hc[1 + k] = coord(1 + n + k).neg();
    }
    let jc = contact_to_jacobi(&DiffForm::from_components(&hchart, &hc))?;
    let jacobi = holomorphic_transcribe(&jc, &base)?;

    let ext = base.with_polar_fiber("rho", "psi")?;
    let echart = ext.chart().clone();
    let w = ext.holomorphic_coordinates().last().unwrap().clone();
    let omega = theta.embed(&echart)?.mul_fn(&w).d();
    let h = Multivector::vector(&echart, ext.frame10().last().unwrap());
    let mut ev = vec![ScalarExpr::zero(); dim + 2];
    ev[dim] = coord(dim);
    let eta = Multivector::vector(&echart, &ev);

    let circle = Arc::new(chart.extend("psi", true)?);
    let (c, s) = (ScalarExpr::cos(dim), ScalarExpr::sin(dim));
    let (r, q) = (theta_r.embed(&circle)?, theta_s.embed(&circle)?);
    let vartheta = r.mul_fn(&c).sub(&q.mul_fn(&s))?;
    let vartheta_j = r.mul_fn(&s).add(&q.mul_fn(&c))?.neg();
    Ok(DarbouxExample { n, base, theta, theta_r, theta_s, jacobi, ext, omega, h, eta, circle, vartheta, vartheta_j })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexgeom::is_holomorphic;
    use crate::tensor::is_poisson;

    #[test]
    fn abelian_algebra_has_zero_bracket() {
        let lp = lie_poisson(&constants(2, &[])).unwrap();
        assert!(lp.big_pi.is_zero());
    }

    #[test]
    fn broken_constants_are_rejected() {
        let mut c = sl2_constants();
        c[1][2][0] = Gaussian::from_int(2);
        assert!(lie_poisson(&c).is_err());
        // antisymmetric but not Jacobi
        let bad = constants(3, &[(0, 1, 1, 1), (1, 2, 2, 1), (0, 2, 0, 1)]);
        assert!(matches!(lie_poisson(&bad), Err(Error::Invalid(_))));
    }

    #[test]
    fn lie_poisson_fixtures_are_homogeneous_holomorphic_poisson() {
        for c in [sl2_constants(), heisenberg_constants()] {
            let lp = lie_poisson(&c).unwrap();
            assert!(is_holomorphic(&lp.big_pi, &lp.cc).unwrap().holds());
            assert!(is_poisson(&lp.big_pi).unwrap());
            assert!(lp.big_pi.lie_derivative(&lp.h).unwrap().add(&lp.big_pi).unwrap().is_zero());
        }
    }

    #[test]
    fn darboux_n0_is_dt() {
        let ex = darboux_example(0).unwrap();
        let c = ex.base.chart();
        assert_eq!(ex.theta_r, DiffForm::basis(c, &[0]));
        assert_eq!(ex.theta_s, DiffForm::basis(c, &[1]));
    }
}
