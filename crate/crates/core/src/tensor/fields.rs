//! Multivector fields and differential forms.

use super::alt::{increasing_tuples, Alt};
use super::same_chart;
use crate::error::{Error, Result};
use crate::expr::{Chart, Gaussian, ScalarExpr};
use std::sync::Arc;

/// A multivector field `sum P^I d_I` with increasing multi-indices `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multivector {
    chart: Arc<Chart>,
    alt: Alt,
}

/// A differential form `sum w_I dx^I` with increasing multi-indices `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffForm {
    chart: Arc<Chart>,
    alt: Alt,
}

macro_rules! common {
    ($t:ident) => {
        impl $t {
            pub fn zero(chart: &Arc<Chart>, degree: usize) -> Self {
                $t { chart: chart.clone(), alt: Alt::zero(chart.dim(), degree) }
            }

            pub fn scalar(chart: &Arc<Chart>, f: ScalarExpr) -> Self {
                let mut out = $t::zero(chart, 0);
                out.alt.add_at(&[], &f);
                out
            }

            /// Builds from `(index tuple, value)` pairs in any index order;
            /// repeated indices are rejected.
            pub fn from_entries(
                chart: &Arc<Chart>,
                degree: usize,
                entries: &[(Vec<usize>, ScalarExpr)],
            ) -> Result<Self> {
                let mut out = $t::zero(chart, degree);
                for (idx, v) in entries {
                    if idx.len() != degree {
                        return Err(Error::DegreeMismatch(format!(
                            "entry {:?} in a degree-{} table",
                            idx, degree
                        )));
                    }
                    if idx.iter().any(|&i| i >= chart.dim()) {
                        return Err(Error::DimensionMismatch(format!("index {:?} out of range", idx)));
                    }
                    let mut s = idx.clone();
                    s.sort();
                    if s.windows(2).any(|w| w[0] == w[1]) {
                        return Err(Error::Invalid(format!("repeated index in {:?}", idx)));
                    }
                    out.alt.add_at(idx, v);
                }
                Ok(out)
            }

            /// Degree-one object with dense components.
            pub fn from_components(chart: &Arc<Chart>, comps: &[ScalarExpr]) -> Self {
                assert_eq!(comps.len(), chart.dim(), "component count must equal chart dimension");
                let mut out = $t::zero(chart, 1);
                for (i, v) in comps.iter().enumerate() {
                    out.alt.add_at(&[i], v);
                }
                out
            }

            /// The basis element with multi-index `idx`.
            pub fn basis(chart: &Arc<Chart>, idx: &[usize]) -> Self {
                let mut out = $t::zero(chart, idx.len());
                out.alt.add_at(idx, &ScalarExpr::one());
                out
            }

            pub fn chart(&self) -> &Arc<Chart> {
                &self.chart
            }

            pub fn dim(&self) -> usize {
                self.alt.dim
            }

            pub fn degree(&self) -> usize {
                self.alt.degree
            }

            /// Component at any index order (sign-adjusted).
            pub fn get(&self, idx: &[usize]) -> ScalarExpr {
                self.alt.get(idx)
            }

            /// Nonzero components at increasing indices.
            pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &ScalarExpr)> {
                self.alt.comps.iter()
            }

            /// Dense components of a degree-one object.
            pub fn components(&self) -> Vec<ScalarExpr> {
                assert_eq!(self.degree(), 1, "components() needs degree one");
                (0..self.dim()).map(|i| self.alt.get(&[i])).collect()
            }

            pub fn is_zero(&self) -> bool {
                self.alt.is_zero()
            }

            pub fn add(&self, o: &Self) -> Result<Self> {
                same_chart(&self.chart, &o.chart)?;
                if self.degree() != o.degree() {
                    return Err(Error::DegreeMismatch(format!(
                        "adding degrees {} and {}",
                        self.degree(),
                        o.degree()
                    )));
                }
                Ok($t { chart: self.chart.clone(), alt: self.alt.add(&o.alt) })
            }

            pub fn sub(&self, o: &Self) -> Result<Self> {
                self.add(&o.neg())
            }

            pub fn neg(&self) -> Self {
                self.scale(&Gaussian::from_int(-1))
            }

            pub fn scale(&self, c: &Gaussian) -> Self {
                $t { chart: self.chart.clone(), alt: self.alt.scale(c) }
            }

            pub fn mul_fn(&self, f: &ScalarExpr) -> Self {
                $t { chart: self.chart.clone(), alt: self.alt.mul_fn(f) }
            }

            pub fn map(&self, f: impl Fn(&ScalarExpr) -> ScalarExpr) -> Self {
                $t { chart: self.chart.clone(), alt: self.alt.map(f) }
            }

            pub fn conj(&self) -> Self {
                self.map(|v| v.conj())
            }

            pub fn re(&self) -> Self {
                self.map(|v| v.re())
            }

            pub fn im(&self) -> Self {
                self.map(|v| v.im())
            }

            pub fn wedge(&self, o: &Self) -> Result<Self> {
                same_chart(&self.chart, &o.chart)?;
                Ok($t { chart: self.chart.clone(), alt: self.alt.wedge(&o.alt) })
            }

            /// Partial derivative of each coefficient along coordinate `k`.
            pub fn diff_coeffs(&self, k: usize) -> Self {
                $t { chart: self.chart.clone(), alt: self.alt.diff(k) }
            }

            /// Moves to `chart`, whose leading coordinates must be ours.
            pub fn embed(&self, chart: &Arc<Chart>) -> Result<Self> {
                if chart.dim() < self.dim() || chart.names()[..self.dim()] != self.chart.names()[..] {
                    return Err(Error::ChartMismatch("target chart does not extend source".into()));
                }
                let alt = self.alt.map_index(chart.dim(), &|i| Some(i)).unwrap();
                Ok($t { chart: chart.clone(), alt })
            }

            /// Moves to `chart` along an index map; `None` from `f` means the
            /// component has no image, which is an error unless it is zero.
            pub fn reindex(&self, chart: &Arc<Chart>, f: &dyn Fn(usize) -> Option<usize>, vars: &dyn Fn(crate::expr::Var) -> crate::expr::Var) -> Result<Self> {
                let alt = self
                    .alt
                    .map_index(chart.dim(), f)
                    .ok_or_else(|| Error::ChartMismatch("component along a dropped coordinate".into()))?;
                Ok($t { chart: chart.clone(), alt: alt.map(|v| v.map_vars(vars)) })
            }

            pub(crate) fn from_alt(chart: &Arc<Chart>, alt: Alt) -> Self {
                $t { chart: chart.clone(), alt }
            }

            /// Canonical multiline text listing nonzero components.
            pub fn to_text(&self) -> String {
                let mut s = String::new();
                for (idx, v) in self.entries() {
                    let key: Vec<&str> = idx.iter().map(|&i| self.chart.name(i)).collect();
                    s.push_str(&format!("{} = {}\n", key.join(","), v.display(&self.chart)));
                }
                s
            }
        }
    };
}

common!(Multivector);
common!(DiffForm);

/// Lie bracket of vector fields given as dense components.
pub fn vector_bracket(x: &[ScalarExpr], y: &[ScalarExpr]) -> Vec<ScalarExpr> {
    let n = x.len();
    (0..n)
        .map(|k| apply_vector(x, &y[k]).sub(&apply_vector(y, &x[k])))
        .collect()
}

/// `X(f)` for dense `X`.
pub fn apply_vector(x: &[ScalarExpr], f: &ScalarExpr) -> ScalarExpr {
    let mut acc = ScalarExpr::zero();
    for (i, xi) in x.iter().enumerate() {
        if !xi.is_zero() {
            let d = f.diff(i);
            if !d.is_zero() {
                acc = acc.add(&xi.mul(&d));
            }
        }
    }
    acc
}

/// Dense differential of a function.
pub fn gradient(f: &ScalarExpr, dim: usize) -> Vec<ScalarExpr> {
    (0..dim).map(|i| f.diff(i)).collect()
}

/// Pairing of a dense covector and vector.
pub fn pair(a: &[ScalarExpr], x: &[ScalarExpr]) -> ScalarExpr {
    let mut acc = ScalarExpr::zero();
    for (u, v) in a.iter().zip(x) {
        if !u.is_zero() && !v.is_zero() {
            acc = acc.add(&u.mul(v));
        }
    }
    acc
}

impl Multivector {
    pub fn vector(chart: &Arc<Chart>, comps: &[ScalarExpr]) -> Self {
        Multivector::from_components(chart, comps)
    }

    pub fn as_scalar(&self) -> Option<ScalarExpr> {
        (self.degree() == 0).then(|| self.alt.get(&[]))
    }

    /// Schouten-Nijenhuis bracket. With `d_i` as odd variables `xi_i`,
    /// `[P,Q] = sum_i dP/dxi_i (right) ^ d_i Q - (-1)^((p-1)(q-1)) dQ/dxi_i (right) ^ d_i P`.
    /// It restricts to the Lie bracket on vector fields and to `X(f)` on
    /// a vector field and a function.
    pub fn schouten(&self, o: &Multivector) -> Result<Multivector> {
        same_chart(&self.chart, &o.chart)?;
        let p = self.degree() as i64;
        let q = o.degree() as i64;
        let deg = (p + q - 1).max(0) as usize;
        let sign_odd = ((p - 1) * (q - 1)).rem_euclid(2) == 1;
        let mut acc = Alt::zero(self.dim(), deg);
        if p + q == 0 {
            return Ok(Multivector::from_alt(&self.chart, acc));
        }
        for i in 0..self.dim() {
            if p > 0 {
                let rp = self.alt.right_deriv(i);
                if !rp.is_zero() {
                    let dq = o.alt.diff(i);
                    if !dq.is_zero() {
                        acc = acc.add(&rp.wedge(&dq));
                    }
                }
            }
            if q > 0 {
                let rq = o.alt.right_deriv(i);
                if !rq.is_zero() {
                    let dp = self.alt.diff(i);
                    if !dp.is_zero() {
                        let t = rq.wedge(&dp);
                        acc = if sign_odd { acc.add(&t) } else { acc.sub(&t) };
                    }
                }
            }
        }
        Ok(Multivector::from_alt(&self.chart, acc))
    }

    /// `L_X P = [X, P]`.
    pub fn lie_derivative(&self, x: &Multivector) -> Result<Multivector> {
        if x.degree() != 1 {
            return Err(Error::DegreeMismatch("Lie derivative along a non-vector".into()));
        }
        x.schouten(self)
    }

    /// `P(a_1, ..., a_k)` on one-forms.
    pub fn eval(&self, forms: &[&DiffForm]) -> Result<ScalarExpr> {
        if forms.len() != self.degree() {
            return Err(Error::DegreeMismatch(format!(
                "{}-vector evaluated on {} forms",
                self.degree(),
                forms.len()
            )));
        }
        let dense: Vec<Vec<ScalarExpr>> = forms
            .iter()
            .map(|f| {
                same_chart(&self.chart, &f.chart)?;
                if f.degree() != 1 {
                    return Err(Error::DegreeMismatch("argument is not a one-form".into()));
                }
                Ok(f.components())
            })
            .collect::<Result<_>>()?;
        Ok(self.eval_dense(&dense.iter().map(|v| v.as_slice()).collect::<Vec<_>>()))
    }

    pub fn eval_dense(&self, covectors: &[&[ScalarExpr]]) -> ScalarExpr {
        self.alt.eval(covectors)
    }

    /// Contraction `P(a, -)` of the first slot with a dense covector.
    pub fn contract(&self, a: &[ScalarExpr]) -> Multivector {
        Multivector::from_alt(&self.chart, self.alt.contract_first(a))
    }

    /// `X(f)` for a vector field.
    pub fn apply(&self, f: &ScalarExpr) -> ScalarExpr {
        apply_vector(&self.components(), f)
    }

    /// `pi(df_1, ..., df_k)`.
    pub fn eval_functions(&self, fs: &[ScalarExpr]) -> ScalarExpr {
        let grads: Vec<Vec<ScalarExpr>> = fs.iter().map(|f| gradient(f, self.dim())).collect();
        self.eval_dense(&grads.iter().map(|v| v.as_slice()).collect::<Vec<_>>())
    }

    /// Antisymmetric matrix `M[i][j] = P(dx^i, dx^j)` of a bivector.
    pub fn bivector_matrix(&self) -> super::Matrix {
        assert_eq!(self.degree(), 2, "bivector_matrix needs a bivector");
        super::Matrix::from_fn(self.dim(), self.dim(), |i, j| self.alt.get(&[i, j]))
    }

    pub fn from_bivector_matrix(chart: &Arc<Chart>, m: &super::Matrix) -> Self {
        let mut out = Multivector::zero(chart, 2);
        for idx in increasing_tuples(chart.dim(), 2) {
            out.alt.add_at(&idx, m.get(idx[0], idx[1]));
        }
        out
    }

    /// `pi^sharp(a) = pi(a, -)` as dense components.
    pub fn sharp(&self, a: &[ScalarExpr]) -> Vec<ScalarExpr> {
        self.contract(a).components()
    }
}

impl DiffForm {
    /// `df` of a function.
    pub fn exact(chart: &Arc<Chart>, f: &ScalarExpr) -> Self {
        DiffForm::from_components(chart, &gradient(f, chart.dim()))
    }

    pub fn as_scalar(&self) -> Option<ScalarExpr> {
        (self.degree() == 0).then(|| self.alt.get(&[]))
    }

    /// Exterior derivative.
    pub fn d(&self) -> DiffForm {
        let mut acc = Alt::zero(self.dim(), self.degree() + 1);
        for i in 0..self.dim() {
            let di = self.alt.diff(i);
            if di.is_zero() {
                continue;
            }
            let mut e = Alt::zero(self.dim(), 1);
            e.add_at(&[i], &ScalarExpr::one());
            acc = acc.add(&e.wedge(&di));
        }
        DiffForm::from_alt(&self.chart, acc)
    }

    /// Interior product `i_X w` with a dense vector.
    pub fn interior_dense(&self, x: &[ScalarExpr]) -> DiffForm {
        if self.degree() == 0 {
            return DiffForm::zero(&self.chart, 0);
        }
        DiffForm::from_alt(&self.chart, self.alt.contract_first(x))
    }

    pub fn interior(&self, x: &Multivector) -> Result<DiffForm> {
        same_chart(&self.chart, x.chart())?;
        if x.degree() != 1 {
            return Err(Error::DegreeMismatch("interior product with a non-vector".into()));
        }
        Ok(self.interior_dense(&x.components()))
    }

    /// Cartan formula `L_X w = i_X dw + d i_X w`.
    pub fn lie_derivative_dense(&self, x: &[ScalarExpr]) -> DiffForm {
        let a = self.d().interior_dense(x);
        if self.degree() == 0 {
            return a;
        }
        DiffForm::from_alt(&self.chart, a.alt.add(&self.interior_dense(x).d().alt))
    }

    pub fn lie_derivative(&self, x: &Multivector) -> Result<DiffForm> {
        same_chart(&self.chart, x.chart())?;
        if x.degree() != 1 {
            return Err(Error::DegreeMismatch("Lie derivative along a non-vector".into()));
        }
        Ok(self.lie_derivative_dense(&x.components()))
    }

    /// `w(X_1, ..., X_k)` on dense vectors.
    pub fn eval_dense(&self, vectors: &[&[ScalarExpr]]) -> ScalarExpr {
        self.alt.eval(vectors)
    }

    pub fn eval(&self, vectors: &[&Multivector]) -> Result<ScalarExpr> {
        if vectors.len() != self.degree() {
            return Err(Error::DegreeMismatch("wrong number of vector arguments".into()));
        }
        let dense: Vec<Vec<ScalarExpr>> = vectors
            .iter()
            .map(|v| {
                same_chart(&self.chart, v.chart())?;
                Ok(v.components())
            })
            .collect::<Result<_>>()?;
        Ok(self.eval_dense(&dense.iter().map(|v| v.as_slice()).collect::<Vec<_>>()))
    }

    /// Antisymmetric matrix `W[i][j] = w(d_i, d_j)` of a two-form.
    pub fn two_form_matrix(&self) -> super::Matrix {
        assert_eq!(self.degree(), 2, "two_form_matrix needs a two-form");
        super::Matrix::from_fn(self.dim(), self.dim(), |i, j| self.alt.get(&[i, j]))
    }
}
