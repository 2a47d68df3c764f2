//! Complex structures, type decomposition and holomorphy.

mod equiv;

pub use equiv::{check_homogeneous_equivalences, check_hp_equivalences, holomorphic_bivector, holomorphic_vector};

use crate::error::{Error, Result};
use crate::expr::{Chart, Gaussian, ScalarExpr};
use crate::tensor::{apply_vector, increasing_tuples, DiffForm, Matrix, Multivector, Tensor11};
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexStructureReport {
    pub squares_to_minus_one: bool,
    pub torsion_free: bool,
}

impl ComplexStructureReport {
    pub fn holds(&self) -> bool {
        self.squares_to_minus_one && self.torsion_free
    }
}

/// `j^2 = -1` and `N_j = 0`.
pub fn is_complex_structure(j: &Tensor11) -> Result<ComplexStructureReport> {
    if j.dim() % 2 == 1 {
        return Err(Error::OddDimension);
    }
    let sq = j.compose(j)?.add(&Tensor11::identity(j.chart()))?;
    Ok(ComplexStructureReport { squares_to_minus_one: sq.is_zero(), torsion_free: j.is_nijenhuis() })
}

/// `(1 - i j)/2`, the projection onto `T^{1,0}`.
pub fn p10(j: &Tensor11) -> Tensor11 {
    let half = Gaussian::from_ratio(1, 2);
    let mi = &Gaussian::i() * &Gaussian::from_ratio(-1, 2);
    Tensor11::identity(j.chart()).scale(&half).add(&j.scale(&mi)).unwrap()
}

/// `(1 + i j)/2`, the projection onto `T^{0,1}`.
pub fn p01(j: &Tensor11) -> Tensor11 {
    let half = Gaussian::from_ratio(1, 2);
    let pi = &Gaussian::i() * &half;
    Tensor11::identity(j.chart()).scale(&half).add(&j.scale(&pi)).unwrap()
}

/// The `(p, q)` component of a complex multivector.
pub fn type_project(t: &Multivector, j: &Tensor11, p: usize, q: usize) -> Result<Multivector> {
    crate::tensor::same_chart(t.chart(), j.chart())?;
    let k = t.degree();
    if p + q != k {
        return Err(Error::DegreeMismatch(format!("type ({p},{q}) of a {k}-vector")));
    }
    let chart = t.chart();
    let (a, b) = (p10(j), p01(j));
    let cols10: Vec<Multivector> = (0..t.dim()).map(|i| Multivector::vector(chart, &a.column(i))).collect();
    let cols01: Vec<Multivector> = (0..t.dim()).map(|i| Multivector::vector(chart, &b.column(i))).collect();
    let mut out = Multivector::zero(chart, k);
    let choices = increasing_tuples(k, p);
    for (idx, v) in t.entries() {
        for sel in &choices {
            let mut w = Multivector::scalar(chart, v.clone());
            for (m, &i) in idx.iter().enumerate() {
                let f = if sel.contains(&m) { &cols10[i] } else { &cols01[i] };
                w = w.wedge(f)?;
                if w.is_zero() {
                    break;
                }
            }
            out = out.add(&w)?;
        }
    }
    Ok(out)
}

/// A chart with an integrable complex structure and a closed holomorphic
/// coframe `theta^a` (`j^* theta^a = i theta^a`). The dual frame `e_a` of
/// `T^{1,0}` is computed once.
#[derive(Clone, Debug)]
pub struct ComplexChart {
    j: Tensor11,
    coframe: Vec<Vec<ScalarExpr>>,
    frame10: Vec<Vec<ScalarExpr>>,
    functions: Vec<ScalarExpr>,
}

impl ComplexChart {
    pub fn new(j: Tensor11, coframe: &[DiffForm]) -> Result<Self> {
        let rep = is_complex_structure(&j)?;
        if !rep.holds() {
            return Err(Error::Invalid("j is not an integrable complex structure".into()));
        }
        let dim = j.dim();
        let n = dim / 2;
        if coframe.len() != n {
            return Err(Error::DimensionMismatch(format!("{} coframe forms for complex dimension {n}", coframe.len())));
        }
        let mut rows = Vec::new();
        for th in coframe {
            crate::tensor::same_chart(th.chart(), j.chart())?;
            if th.degree() != 1 {
                return Err(Error::DegreeMismatch("coframe entries must be one-forms".into()));
            }
            if !th.d().is_zero() {
                return Err(Error::Invalid("coframe form is not closed".into()));
            }
            let c = th.components();
            let jc = j.dual_dense(&c);
            if (0..dim).any(|k| jc[k] != c[k].mul(&ScalarExpr::i())) {
                return Err(Error::Invalid("coframe form is not of type (1,0)".into()));
            }
            rows.push(c);
        }
        let mut all = rows.clone();
        all.extend(rows.iter().map(|r| r.iter().map(|v| v.conj()).collect::<Vec<_>>()));
        let a = Matrix::from_fn(dim, dim, |r, c| all[r][c].clone());
        let b = a.inverse().map_err(|_| Error::Degenerate("coframe is not independent".into()))?;
        let frame10 = (0..n).map(|c| (0..dim).map(|r| b.get(r, c).clone()).collect()).collect();
        Ok(ComplexChart { j, coframe: rows, frame10, functions: Vec::new() })
    }

    /// Standard structure with holomorphic coordinates `x^a + i y^a` on the
    /// given index pairs, which must cover every coordinate once.
    pub fn standard(chart: &Arc<Chart>, pairs: &[(usize, usize)]) -> Result<Self> {
        if chart.dim() % 2 == 1 {
            return Err(Error::OddDimension);
        }
        let mut seen = vec![false; chart.dim()];
        for &(x, y) in pairs {
            for k in [x, y] {
                if k >= chart.dim() || seen[k] {
                    return Err(Error::Invalid("holomorphic pairs must cover each coordinate once".into()));
                }
                seen[k] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Invalid("holomorphic pairs must cover each coordinate once".into()));
        }
        let j = Tensor11::standard_complex(chart, pairs);
        let coframe: Vec<DiffForm> = pairs
            .iter()
            .map(|&(x, y)| {
                let mut v = vec![ScalarExpr::zero(); chart.dim()];
                v[x] = ScalarExpr::one();
                v[y] = ScalarExpr::i();
                DiffForm::from_components(chart, &v)
            })
            .collect();
        let functions = pairs.iter().map(|&(x, y)| ScalarExpr::coord(x).add(&ScalarExpr::coord(y).mul(&ScalarExpr::i()))).collect();
        ComplexChart::new(j, &coframe)?.with_coordinates(functions)
    }

    /// Records holomorphic coordinate functions, used to test identities on
    /// holomorphic generators.
    pub fn with_coordinates(mut self, functions: Vec<ScalarExpr>) -> Result<Self> {
        if let Some(k) = functions.iter().position(|f| !self.is_holomorphic_function(f)) {
            return Err(Error::NotHolomorphic(format!("coordinate function {k}")));
        }
        self.functions = functions;
        Ok(self)
    }

    /// Holomorphic coordinate functions, possibly empty.
    pub fn holomorphic_coordinates(&self) -> &[ScalarExpr] {
        &self.functions
    }

    /// Adds a `C^*` factor in polar coordinates `w = rho e^{i psi}` with
    /// holomorphic coordinate `log w`; `psi` is an angle coordinate.
    pub fn with_polar_fiber(&self, rho: &str, psi: &str) -> Result<ComplexChart> {
        let base = self.chart();
        let chart = Arc::new(base.extend(rho, false)?.extend(psi, true)?);
        let n = base.dim();
        let (r, p) = (n, n + 1);
        let mut m = Matrix::zeros(n + 2, n + 2);
        for a in 0..n {
            for b in 0..n {
                m.set(a, b, self.j.get(a, b).clone());
            }
        }
        let rho_e = ScalarExpr::coord(r);
        m.set(p, r, rho_e.recip()?);
        m.set(r, p, rho_e.neg());
        let j = Tensor11::new(&chart, m)?;
        let mut coframe: Vec<DiffForm> = self
            .coframe
            .iter()
            .map(|c| DiffForm::from_components(base, c).embed(&chart))
            .collect::<Result<_>>()?;
        let mut v = vec![ScalarExpr::zero(); n + 2];
        v[r] = rho_e.recip()?;
        v[p] = ScalarExpr::i();
        coframe.push(DiffForm::from_components(&chart, &v));
        let mut functions = self.functions.clone();
        functions.push(rho_e.mul(&ScalarExpr::cos(p).add(&ScalarExpr::sin(p).mul(&ScalarExpr::i()))));
        ComplexChart::new(j, &coframe)?.with_coordinates(functions)
    }

    pub fn chart(&self) -> &Arc<Chart> {
        self.j.chart()
    }

    pub fn j(&self) -> &Tensor11 {
        &self.j
    }

    pub fn complex_dim(&self) -> usize {
        self.coframe.len()
    }

    pub fn coframe(&self) -> &[Vec<ScalarExpr>] {
        &self.coframe
    }

    pub fn frame10(&self) -> &[Vec<ScalarExpr>] {
        &self.frame10
    }

    pub fn frame01(&self) -> Vec<Vec<ScalarExpr>> {
        self.frame10.iter().map(|v| v.iter().map(|x| x.conj()).collect()).collect()
    }

    /// `e-bar_a(f) = 0` for every `a`.
    pub fn is_holomorphic_function(&self, f: &ScalarExpr) -> bool {
        self.frame01().iter().all(|e| apply_vector(e, f).is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HolomorphyReport {
    pub pure_type: bool,
    pub cauchy_riemann: bool,
    pub failures: Vec<String>,
}

impl HolomorphyReport {
    pub fn holds(&self) -> bool {
        self.pure_type && self.cauchy_riemann
    }
}

/// Pure type `(k, 0)` and Cauchy-Riemann equations for the components
/// `T(theta^A)` in the holomorphic coframe.
pub fn is_holomorphic(t: &Multivector, cc: &ComplexChart) -> Result<HolomorphyReport> {
    crate::tensor::same_chart(t.chart(), cc.chart())?;
    let k = t.degree();
    let mut failures = Vec::new();
    let proj = type_project(t, cc.j(), k, 0)?;
    let pure_type = proj == *t;
    if !pure_type {
        failures.push(format!("not of pure type ({k},0)"));
    }
    let bars = cc.frame01();
    let mut cauchy_riemann = true;
    for idx in increasing_tuples(cc.complex_dim(), k) {
        let forms: Vec<&[ScalarExpr]> = idx.iter().map(|&a| cc.coframe[a].as_slice()).collect();
        let comp = t.eval_dense(&forms);
        for (b, e) in bars.iter().enumerate() {
            if !apply_vector(e, &comp).is_zero() {
                cauchy_riemann = false;
                failures.push(format!("component {:?} fails Cauchy-Riemann along conj(e_{b})", idx));
            }
        }
    }
    Ok(HolomorphyReport { pure_type, cauchy_riemann, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn c2() -> (Arc<Chart>, ComplexChart) {
        let c = Arc::new(Chart::real(&["x", "y", "m", "q"]).unwrap());
        let cc = ComplexChart::standard(&c, &[(0, 1), (2, 3)]).unwrap();
        (c, cc)
    }

    #[test]
    fn odd_dimension_is_rejected() {
        let c = Arc::new(Chart::real(&["x", "y", "z"]).unwrap());
        assert_eq!(is_complex_structure(&Tensor11::identity(&c)), Err(Error::OddDimension));
    }

    #[test]
    fn holomorphic_coordinate_vector() {
        let (c, cc) = c2();
        // d/dz = (d_x - i d_y)/2
        let dz = Multivector::vector(&c, &[ScalarExpr::ratio(1, 2), parse("-i/2", &c).unwrap(), ScalarExpr::zero(), ScalarExpr::zero()]);
        assert!(is_holomorphic(&dz, &cc).unwrap().holds());
        let dx = Multivector::basis(&c, &[0]);
        assert!(!is_holomorphic(&dx, &cc).unwrap().pure_type);
        let zbar = parse("x - i*y", &c).unwrap();
        let bad = dz.mul_fn(&zbar);
        let r = is_holomorphic(&bad, &cc).unwrap();
        assert!(r.pure_type && !r.cauchy_riemann);
    }

    #[test]
    fn projections_sum_to_identity() {
        let (c, cc) = c2();
        let t = Multivector::from_entries(&c, 2, &[(vec![0, 2], parse("x*q", &c).unwrap()), (vec![1, 3], ScalarExpr::one())]).unwrap();
        let mut sum = Multivector::zero(&c, 2);
        for p in 0..=2 {
            sum = sum.add(&type_project(&t, cc.j(), p, 2 - p).unwrap()).unwrap();
        }
        assert_eq!(sum, t);
    }

    #[test]
    fn polar_fiber_coframe() {
        let (_, cc) = c2();
        let ext = cc.with_polar_fiber("rho", "psi").unwrap();
        let c = ext.chart().clone();
        // w = rho e^{i psi} is holomorphic, rho alone is not
        let w = parse("rho*cos(psi) + i*rho*sin(psi)", &c).unwrap();
        assert!(ext.is_holomorphic_function(&w));
        assert!(!ext.is_holomorphic_function(&ScalarExpr::coord(4)));
    }
}
