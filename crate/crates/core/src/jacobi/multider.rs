//! First-order multi-derivations of the trivial line bundle.

use crate::error::{Error, Result};
use crate::expr::{Chart, Gaussian, ScalarExpr, Var};
use crate::tensor::{gradient, increasing_tuples, Matrix, Multivector};
use std::sync::Arc;

/// A `k`-ary first-order multi-derivation `D = (Lambda, E)` acting on
/// functions by
///
/// `D(f_1..f_k) = Lambda(df_1..df_k) + sum_i (-1)^(k-i) f_i E(df_1..^df_i..df_k)`.
///
/// For `k = 1` this is `D(f) = X(f) + f e` with `Lambda = X` and `E = e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiDerivation {
    lambda: Multivector,
    e: Multivector,
}

fn sign(k: usize, i: usize) -> bool {
    // true when (-1)^(k-i) = -1, with i counted from 1
    (k - i) % 2 == 1
}

impl MultiDerivation {
    pub fn new(lambda: Multivector, e: Multivector) -> Result<Self> {
        crate::tensor::same_chart(lambda.chart(), e.chart())?;
        if lambda.degree() == 0 || e.degree() + 1 != lambda.degree() {
            return Err(Error::DegreeMismatch(format!(
                "pair of degrees ({}, {})",
                lambda.degree(),
                e.degree()
            )));
        }
        Ok(MultiDerivation { lambda, e })
    }

    pub fn zero(chart: &Arc<Chart>, k: usize) -> Self {
        assert!(k >= 1, "multi-derivations have at least one argument");
        MultiDerivation { lambda: Multivector::zero(chart, k), e: Multivector::zero(chart, k - 1) }
    }

    /// The derivation `(X, f)`: `u -> X(u) + f u`.
    pub fn derivation(x: &Multivector, f: &ScalarExpr) -> Result<Self> {
        MultiDerivation::new(x.clone(), Multivector::scalar(x.chart(), f.clone()))
    }

    /// The identity derivation.
    pub fn identity(chart: &Arc<Chart>) -> Self {
        MultiDerivation::derivation(&Multivector::zero(chart, 1), &ScalarExpr::one()).unwrap()
    }

    pub fn chart(&self) -> &Arc<Chart> {
        self.lambda.chart()
    }

    pub fn dim(&self) -> usize {
        self.lambda.dim()
    }

    pub fn degree(&self) -> usize {
        self.lambda.degree()
    }

    pub fn lambda(&self) -> &Multivector {
        &self.lambda
    }

    pub fn e(&self) -> &Multivector {
        &self.e
    }

    pub fn is_zero(&self) -> bool {
        self.lambda.is_zero() && self.e.is_zero()
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        MultiDerivation::new(self.lambda.add(&o.lambda)?, self.e.add(&o.e)?)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        MultiDerivation::new(self.lambda.sub(&o.lambda)?, self.e.sub(&o.e)?)
    }

    pub fn scale(&self, c: &Gaussian) -> Self {
        MultiDerivation { lambda: self.lambda.scale(c), e: self.e.scale(c) }
    }

    pub fn neg(&self) -> Self {
        self.scale(&Gaussian::from_int(-1))
    }

    pub fn map(&self, f: impl Fn(&ScalarExpr) -> ScalarExpr + Copy) -> Self {
        MultiDerivation { lambda: self.lambda.map(f), e: self.e.map(f) }
    }

    pub fn conj(&self) -> Self {
        self.map(|v| v.conj())
    }

    pub fn embed(&self, chart: &Arc<Chart>) -> Result<Self> {
        Ok(MultiDerivation { lambda: self.lambda.embed(chart)?, e: self.e.embed(chart)? })
    }

    pub fn reindex(
        &self,
        chart: &Arc<Chart>,
        f: &dyn Fn(usize) -> Option<usize>,
        vars: &dyn Fn(Var) -> Var,
    ) -> Result<Self> {
        Ok(MultiDerivation {
            lambda: self.lambda.reindex(chart, f, vars)?,
            e: self.e.reindex(chart, f, vars)?,
        })
    }

    /// Evaluation on functions.
    pub fn apply(&self, fs: &[ScalarExpr]) -> Result<ScalarExpr> {
        if fs.len() != self.degree() {
            return Err(Error::DegreeMismatch(format!(
                "{}-ary multi-derivation applied to {} functions",
                self.degree(),
                fs.len()
            )));
        }
        let jets: Vec<Vec<ScalarExpr>> = fs.iter().map(|f| jet_of(f, self.dim())).collect();
        Ok(self.apply_jets_dense(&jets))
    }

    /// Evaluation on dense jets `(a_0..a_{n-1}, u)`.
    pub fn apply_jets_dense(&self, jets: &[Vec<ScalarExpr>]) -> ScalarExpr {
        let n = self.dim();
        let k = self.degree();
        assert_eq!(jets.len(), k);
        let forms: Vec<&[ScalarExpr]> = jets.iter().map(|j| &j[..n]).collect();
        let mut acc = self.lambda.eval_dense(&forms);
        if self.e.is_zero() {
            return acc;
        }
        for i in 0..k {
            let u = &jets[i][n];
            if u.is_zero() {
                continue;
            }
            let rest: Vec<&[ScalarExpr]> = (0..k).filter(|&m| m != i).map(|m| forms[m]).collect();
            let t = u.mul(&self.e.eval_dense(&rest));
            acc = if sign(k, i + 1) { acc.sub(&t) } else { acc.add(&t) };
        }
        acc
    }

    /// For `k = 2`, the antisymmetric matrix of `D` on the jet frame
    /// `(dx^0, 0), .., (dx^{n-1}, 0), (0, 1)`: `[[Lambda, E], [-E^T, 0]]`.
    pub fn jet_matrix(&self) -> Matrix {
        assert_eq!(self.degree(), 2, "jet_matrix needs a bi-derivation");
        let n = self.dim();
        Matrix::from_fn(n + 1, n + 1, |a, b| {
            if a < n && b < n {
                self.lambda.get(&[a, b])
            } else if a < n && b == n {
                self.e.get(&[a])
            } else if a == n && b < n {
                self.e.get(&[b]).neg()
            } else {
                ScalarExpr::zero()
            }
        })
    }

    /// Inverse of `jet_matrix`; the matrix must be antisymmetric.
    pub fn from_jet_matrix(chart: &Arc<Chart>, m: &Matrix) -> Result<Self> {
        let n = chart.dim();
        if m.rows() != n + 1 || m.cols() != n + 1 {
            return Err(Error::DimensionMismatch("jet matrix size".into()));
        }
        if let Some((a, b)) = m.antisymmetry_defect() {
            return Err(Error::Incompatible(format!("jet matrix not antisymmetric at ({a}, {b})")));
        }
        let lambda = Multivector::from_bivector_matrix(chart, &Matrix::from_fn(n, n, |a, b| m.get(a, b).clone()));
        let e = Multivector::vector(chart, &(0..n).map(|a| m.get(a, n).clone()).collect::<Vec<_>>());
        MultiDerivation::new(lambda, e)
    }

    /// Canonical text of both components.
    pub fn to_text(&self) -> String {
        format!("Lambda:\n{}E:\n{}", self.lambda.to_text(), self.e.to_text())
    }
}

/// Dense jet `(df, f)`.
pub fn jet_of(f: &ScalarExpr, n: usize) -> Vec<ScalarExpr> {
    let mut v = gradient(f, n);
    v.push(f.clone());
    v
}

/// Recovers `(Lambda, E)` of a `k`-ary operator from its values on
/// coordinate functions and the constant `1`, then checks the result on
/// products of coordinates.
pub fn extract_pair(
    chart: &Arc<Chart>,
    k: usize,
    eval: &dyn Fn(&[ScalarExpr]) -> Result<ScalarExpr>,
) -> Result<MultiDerivation> {
    extract_pair_with(chart, k, eval, true)
}

pub(crate) fn extract_pair_with(
    chart: &Arc<Chart>,
    k: usize,
    eval: &dyn Fn(&[ScalarExpr]) -> Result<ScalarExpr>,
    validate: bool,
) -> Result<MultiDerivation> {
    if k == 0 {
        return Err(Error::DegreeMismatch("extraction needs at least one argument".into()));
    }
    let n = chart.dim();
    let x = |i: usize| ScalarExpr::coord(i);
    let mut e = Multivector::zero(chart, k - 1);
    let mut e_entries = Vec::new();
    for idx in increasing_tuples(n, k - 1) {
        let mut args: Vec<ScalarExpr> = idx.iter().map(|&i| x(i)).collect();
        args.push(ScalarExpr::one());
        let v = eval(&args)?;
        if !v.is_zero() {
            e_entries.push((idx, v));
        }
    }
    if !e_entries.is_empty() {
        e = Multivector::from_entries(chart, k - 1, &e_entries)?;
    }
    let mut l_entries = Vec::new();
    for idx in increasing_tuples(n, k) {
        let args: Vec<ScalarExpr> = idx.iter().map(|&i| x(i)).collect();
        let mut v = eval(&args)?;
        for (i, &c) in idx.iter().enumerate() {
            let rest: Vec<usize> = idx.iter().enumerate().filter(|&(m, _)| m != i).map(|(_, &a)| a).collect();
            let t = x(c).mul(&e.get(&rest));
            v = if sign(k, i + 1) { v.add(&t) } else { v.sub(&t) };
        }
        if !v.is_zero() {
            l_entries.push((idx, v));
        }
    }
    let lambda = Multivector::from_entries(chart, k, &l_entries)?;
    let d = MultiDerivation::new(lambda, e)?;
    if validate {
        for idx in increasing_tuples(n, k) {
            for b in 0..n {
                let mut args: Vec<ScalarExpr> = idx.iter().map(|&i| x(i)).collect();
                args[0] = args[0].mul(&x(b));
                let want = eval(&args)?;
                let got = d.apply(&args)?;
                if want != got {
                    let names: Vec<&str> = idx.iter().map(|&i| chart.name(i)).collect();
                    return Err(Error::NotFirstOrder(format!(
                        "values at ({}) with first slot times {} disagree with the extracted pair",
                        names.join(","),
                        chart.name(b)
                    )));
                }
            }
        }
    }
    Ok(d)
}

/// Sign and split of every `(p, q)` unshuffle of `0..p+q`.
pub fn unshuffles(p: usize, q: usize) -> Vec<(bool, Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for first in increasing_tuples(p + q, p) {
        let rest: Vec<usize> = (0..p + q).filter(|i| !first.contains(i)).collect();
        let mut inversions = 0;
        for &a in &first {
            inversions += rest.iter().filter(|&&b| b < a).count();
        }
        out.push((inversions % 2 == 1, first, rest));
    }
    out
}

/// `(D1 o D2)(l_1..l_{a+b-1}) = sum_tau sgn(tau) D1(D2(l_tau(1..b)), l_tau(b+1..))`.
pub fn gerstenhaber_eval(d1: &MultiDerivation, d2: &MultiDerivation, args: &[ScalarExpr]) -> Result<ScalarExpr> {
    let a = d1.degree();
    let b = d2.degree();
    if args.len() != a + b - 1 {
        return Err(Error::DegreeMismatch("wrong number of arguments for composition".into()));
    }
    let mut acc = ScalarExpr::zero();
    for (neg, first, rest) in unshuffles(b, a - 1) {
        let inner_args: Vec<ScalarExpr> = first.iter().map(|&i| args[i].clone()).collect();
        let inner = d2.apply(&inner_args)?;
        if inner.is_zero() {
            continue;
        }
        let mut outer_args = vec![inner];
        outer_args.extend(rest.iter().map(|&i| args[i].clone()));
        let v = d1.apply(&outer_args)?;
        acc = if neg { acc.sub(&v) } else { acc.add(&v) };
    }
    Ok(acc)
}

/// Schouten-Jacobi bracket `[D1, D2] = (-1)^(k1 k2) D1 o D2 - D2 o D1`
/// with `D_i` of arity `k_i + 1`.
pub fn schouten_jacobi(d1: &MultiDerivation, d2: &MultiDerivation) -> Result<MultiDerivation> {
    crate::tensor::same_chart(d1.chart(), d2.chart())?;
    let k1 = d1.degree() - 1;
    let k2 = d2.degree() - 1;
    let neg = (k1 * k2) % 2 == 1;
    let eval = |args: &[ScalarExpr]| -> Result<ScalarExpr> {
        let a = gerstenhaber_eval(d1, d2, args)?;
        let b = gerstenhaber_eval(d2, d1, args)?;
        Ok(if neg { a.neg().sub(&b) } else { a.sub(&b) })
    };
    extract_pair(d1.chart(), k1 + k2 + 1, &eval)
}

/// `[J, J] = 0` for a bi-derivation.
pub fn is_jacobi(j: &MultiDerivation) -> Result<bool> {
    if j.degree() != 2 {
        return Err(Error::DegreeMismatch("Jacobi test needs a bi-derivation".into()));
    }
    Ok(schouten_jacobi(j, j)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn plane() -> Arc<Chart> {
        Arc::new(Chart::real(&["x", "y"]).unwrap())
    }

    #[test]
    fn symplectic_pair_on_coordinates() {
        let c = plane();
        let j = MultiDerivation::new(Multivector::basis(&c, &[0, 1]), Multivector::zero(&c, 1)).unwrap();
        assert!(j.apply(&[ScalarExpr::coord(0), ScalarExpr::coord(1)]).unwrap().is_one());
    }

    #[test]
    fn identity_derivation() {
        let c = plane();
        let f = parse("x^2 + 3*y", &c).unwrap();
        assert_eq!(MultiDerivation::identity(&c).apply(&[f.clone()]).unwrap(), f);
    }

    #[test]
    fn extraction_roundtrip() {
        let c = plane();
        let j = MultiDerivation::new(
            Multivector::from_entries(&c, 2, &[(vec![0, 1], parse("x*y", &c).unwrap())]).unwrap(),
            Multivector::vector(&c, &[parse("y", &c).unwrap(), ScalarExpr::int(2)]),
        )
        .unwrap();
        let got = extract_pair(&c, 2, &|a| j.apply(a)).unwrap();
        assert_eq!(got, j);
    }

    #[test]
    fn second_order_operator_is_rejected() {
        let c = plane();
        let eval = |a: &[ScalarExpr]| Ok(a[0].diff(0).diff(0));
        assert!(matches!(extract_pair(&c, 1, &eval), Err(Error::NotFirstOrder(_))));
    }

    #[test]
    fn plane_jacobi_pair() {
        let c = plane();
        let j = MultiDerivation::new(Multivector::basis(&c, &[0, 1]), Multivector::basis(&c, &[0])).unwrap();
        assert!(is_jacobi(&j).unwrap());
    }

    #[test]
    fn space_pair_is_not_jacobi() {
        let c = Arc::new(Chart::real(&["x", "y", "z"]).unwrap());
        let j = MultiDerivation::new(Multivector::basis(&c, &[0, 1]), Multivector::basis(&c, &[2])).unwrap();
        assert!(!is_jacobi(&j).unwrap());
    }

    #[test]
    fn derivation_bracket_is_commutator() {
        let c = plane();
        let d1 = MultiDerivation::derivation(&Multivector::basis(&c, &[0]), &ScalarExpr::coord(1)).unwrap();
        let d2 = MultiDerivation::derivation(&Multivector::vector(&c, &[ScalarExpr::coord(0), ScalarExpr::zero()]), &ScalarExpr::zero()).unwrap();
        let b = schouten_jacobi(&d1, &d2).unwrap();
        // [d_x + y, x d_x] = d_x
        assert_eq!(b, MultiDerivation::derivation(&Multivector::basis(&c, &[0]), &ScalarExpr::zero()).unwrap());
    }
}
