//! (1,1)-tensors and their Nijenhuis torsion.

use super::fields::{apply_vector, vector_bracket, DiffForm, Multivector};
use super::{same_chart, Matrix};
use crate::error::{Error, Result};
use crate::expr::{Chart, Gaussian, ScalarExpr};
use std::collections::BTreeMap;
use std::sync::Arc;

/// An endomorphism of the tangent bundle; `matrix[i][j] = dx^i(phi d_j)`,
/// so column `j` is the image of `d_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor11 {
    chart: Arc<Chart>,
    m: Matrix,
}

/// Vector-valued skew table: `(a, b) -> T(d_a, d_b)` for `a < b`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TorsionTable {
    pub entries: BTreeMap<(usize, usize), Vec<ScalarExpr>>,
}

impl TorsionTable {
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn first(&self) -> Option<(usize, usize)> {
        self.entries.keys().next().copied()
    }
}

impl Tensor11 {
    pub fn new(chart: &Arc<Chart>, m: Matrix) -> Result<Self> {
        if m.rows() != chart.dim() || m.cols() != chart.dim() {
            return Err(Error::DimensionMismatch("(1,1)-tensor size differs from chart".into()));
        }
        Ok(Tensor11 { chart: chart.clone(), m })
    }

    pub fn identity(chart: &Arc<Chart>) -> Self {
        Tensor11 { chart: chart.clone(), m: Matrix::identity(chart.dim()) }
    }

    pub fn zero(chart: &Arc<Chart>) -> Self {
        Tensor11 { chart: chart.clone(), m: Matrix::zeros(chart.dim(), chart.dim()) }
    }

    /// The standard complex structure `j d_x = d_y`, `j d_y = -d_x` on the
    /// given coordinate pairs.
    pub fn standard_complex(chart: &Arc<Chart>, pairs: &[(usize, usize)]) -> Self {
        let mut m = Matrix::zeros(chart.dim(), chart.dim());
        for &(x, y) in pairs {
            m.set(y, x, ScalarExpr::one());
            m.set(x, y, ScalarExpr::int(-1));
        }
        Tensor11 { chart: chart.clone(), m }
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn get(&self, i: usize, j: usize) -> &ScalarExpr {
        self.m.get(i, j)
    }

    pub fn apply_dense(&self, x: &[ScalarExpr]) -> Vec<ScalarExpr> {
        self.m.mul_vec(x)
    }

    pub fn apply(&self, x: &Multivector) -> Result<Multivector> {
        same_chart(&self.chart, x.chart())?;
        Ok(Multivector::vector(&self.chart, &self.apply_dense(&x.components())))
    }

    /// Dual action `phi^* a = a o phi` on a dense covector.
    pub fn dual_dense(&self, a: &[ScalarExpr]) -> Vec<ScalarExpr> {
        self.m.transpose().mul_vec(a)
    }

    pub fn dual(&self, a: &DiffForm) -> Result<DiffForm> {
        same_chart(&self.chart, a.chart())?;
        Ok(DiffForm::from_components(&self.chart, &self.dual_dense(&a.components())))
    }

    pub fn compose(&self, o: &Tensor11) -> Result<Tensor11> {
        same_chart(&self.chart, &o.chart)?;
        Ok(Tensor11 { chart: self.chart.clone(), m: self.m.mul(&o.m)? })
    }

    pub fn add(&self, o: &Tensor11) -> Result<Tensor11> {
        same_chart(&self.chart, &o.chart)?;
        Ok(Tensor11 { chart: self.chart.clone(), m: self.m.add(&o.m) })
    }

    pub fn scale(&self, c: &Gaussian) -> Tensor11 {
        Tensor11 { chart: self.chart.clone(), m: self.m.scale(c) }
    }

    pub fn conj(&self) -> Tensor11 {
        Tensor11 { chart: self.chart.clone(), m: self.m.map(|v| v.conj()) }
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    /// `(L_X phi)(Y) = [X, phi Y] - phi [X, Y]`.
    pub fn lie_derivative(&self, x: &Multivector) -> Result<Tensor11> {
        same_chart(&self.chart, x.chart())?;
        let xs = x.components();
        let n = self.dim();
        let dx: Vec<Vec<ScalarExpr>> = xs.iter().map(|xi| (0..n).map(|j| xi.diff(j)).collect()).collect();
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let mut v = apply_vector(&xs, self.m.get(i, j));
                for k in 0..n {
                    let a = self.m.get(k, j);
                    if !a.is_zero() && !dx[i][k].is_zero() {
                        v = v.sub(&a.mul(&dx[i][k]));
                    }
                    let b = self.m.get(i, k);
                    if !b.is_zero() && !dx[k][j].is_zero() {
                        v = v.add(&b.mul(&dx[k][j]));
                    }
                }
                out.set(i, j, v);
            }
        }
        Ok(Tensor11 { chart: self.chart.clone(), m: out })
    }

    /// Column `j` as a dense vector.
    pub fn column(&self, j: usize) -> Vec<ScalarExpr> {
        (0..self.dim()).map(|i| self.m.get(i, j).clone()).collect()
    }

    /// Nijenhuis torsion on the coordinate frame:
    /// `N(a, b) = [phi a, phi b] + phi^2 [a, b] - phi [phi a, b] - phi [a, phi b]`.
    pub fn nijenhuis(&self) -> TorsionTable {
        let n = self.dim();
        let cols: Vec<Vec<ScalarExpr>> = (0..n).map(|j| self.column(j)).collect();
        let mut out = TorsionTable::default();
        for a in 0..n {
            for b in a + 1..n {
                let ea: Vec<ScalarExpr> = (0..n).map(|i| if i == a { ScalarExpr::one() } else { ScalarExpr::zero() }).collect();
                let eb: Vec<ScalarExpr> = (0..n).map(|i| if i == b { ScalarExpr::one() } else { ScalarExpr::zero() }).collect();
                let t1 = vector_bracket(&cols[a], &cols[b]);
                let t2 = self.apply_dense(&vector_bracket(&cols[a], &eb));
                let t3 = self.apply_dense(&vector_bracket(&ea, &cols[b]));
                let v: Vec<ScalarExpr> = (0..n).map(|i| t1[i].sub(&t2[i]).sub(&t3[i])).collect();
                if v.iter().any(|x| !x.is_zero()) {
                    out.entries.insert((a, b), v);
                }
            }
        }
        out
    }

    pub fn is_nijenhuis(&self) -> bool {
        self.nijenhuis().is_zero()
    }

    /// Moves to a chart along an index map (see `Multivector::reindex`).
    pub fn reindex(
        &self,
        chart: &Arc<Chart>,
        f: &dyn Fn(usize) -> Option<usize>,
        vars: &dyn Fn(crate::expr::Var) -> crate::expr::Var,
    ) -> Result<Tensor11> {
        let n = chart.dim();
        let mut m = Matrix::zeros(n, n);
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let v = self.m.get(i, j);
                if v.is_zero() {
                    continue;
                }
                match (f(i), f(j)) {
                    (Some(a), Some(b)) => m.set(a, b, v.map_vars(vars)),
                    _ => return Err(Error::ChartMismatch("component along a dropped coordinate".into())),
                }
            }
        }
        Ok(Tensor11 { chart: chart.clone(), m })
    }

    /// Moves to an extension chart; new coordinates map to zero.
    pub fn embed(&self, chart: &Arc<Chart>) -> Result<Tensor11> {
        if chart.dim() < self.dim() || chart.names()[..self.dim()] != self.chart.names()[..] {
            return Err(Error::ChartMismatch("target chart does not extend source".into()));
        }
        self.reindex(chart, &|i| Some(i), &|v| v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    #[test]
    fn standard_complex_structure_squares_to_minus_one() {
        let c = Arc::new(Chart::real(&["x", "y"]).unwrap());
        let j = Tensor11::standard_complex(&c, &[(0, 1)]);
        let j2 = j.compose(&j).unwrap();
        assert_eq!(j2, Tensor11::identity(&c).scale(&Gaussian::from_int(-1)));
        assert!(j.is_nijenhuis());
    }

    #[test]
    fn nonintegrable_almost_complex_structure() {
        // On R^4 this deformation of the standard structure has torsion.
        let c = Arc::new(Chart::real(&["x1", "y1", "x2", "y2"]).unwrap());
        let j = Tensor11::standard_complex(&c, &[(0, 1), (2, 3)]);
        let mut m = j.matrix().clone();
        let x2 = parse("x2", &c).unwrap();
        m.set(2, 0, x2.clone());
        m.set(3, 1, x2.neg());
        m.set(2, 1, ScalarExpr::zero());
        let phi = Tensor11::new(&c, m).unwrap();
        assert!(!phi.is_nijenhuis());
    }
}
