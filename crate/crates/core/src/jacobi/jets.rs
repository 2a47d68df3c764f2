//! First jets, derivations and endomorphisms of the gauge algebroid.

use super::multider::{is_jacobi, jet_of, MultiDerivation};
use crate::error::{Error, Result};
use crate::expr::{Chart, Gaussian, ScalarExpr};
use crate::tensor::{apply_vector, gradient, pair, same_chart, vector_bracket, Matrix, Tensor11};
use std::collections::BTreeMap;
use std::sync::Arc;

/// A section `(a, u)` of the first jet bundle of the trivial line bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetSection {
    pub alpha: Vec<ScalarExpr>,
    pub u: ScalarExpr,
}

/// A derivation `(X, f)`: `u -> X(u) + f u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DlSection {
    pub x: Vec<ScalarExpr>,
    pub f: ScalarExpr,
}

fn dense_split(v: &[ScalarExpr]) -> (Vec<ScalarExpr>, ScalarExpr) {
    let n = v.len() - 1;
    (v[..n].to_vec(), v[n].clone())
}

fn vsub(a: &[ScalarExpr], b: &[ScalarExpr]) -> Vec<ScalarExpr> {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

fn vadd(a: &[ScalarExpr], b: &[ScalarExpr]) -> Vec<ScalarExpr> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

fn vscale(a: &[ScalarExpr], f: &ScalarExpr) -> Vec<ScalarExpr> {
    a.iter().map(|x| x.mul(f)).collect()
}

/// `(L_X a)_j = X(a_j) + sum_i a_i d_j X^i`.
pub(crate) fn lie_one_form(x: &[ScalarExpr], a: &[ScalarExpr]) -> Vec<ScalarExpr> {
    let n = x.len();
    (0..n)
        .map(|j| {
            let mut v = apply_vector(x, &a[j]);
            for i in 0..n {
                if !a[i].is_zero() {
                    let d = x[i].diff(j);
                    if !d.is_zero() {
                        v = v.add(&a[i].mul(&d));
                    }
                }
            }
            v
        })
        .collect()
}

impl JetSection {
    pub fn new(alpha: Vec<ScalarExpr>, u: ScalarExpr) -> Self {
        JetSection { alpha, u }
    }

    /// `j^1 l = (dl, l)`.
    pub fn prolong(l: &ScalarExpr, n: usize) -> Self {
        JetSection { alpha: gradient(l, n), u: l.clone() }
    }

    pub fn from_dense(v: &[ScalarExpr]) -> Self {
        let (alpha, u) = dense_split(v);
        JetSection { alpha, u }
    }

    pub fn to_dense(&self) -> Vec<ScalarExpr> {
        let mut v = self.alpha.clone();
        v.push(self.u.clone());
        v
    }

    /// Frame element `a` of `(dx^0, 0), .., (dx^{n-1}, 0), (0, 1)`.
    pub fn frame(n: usize, a: usize) -> Self {
        let mut v = vec![ScalarExpr::zero(); n + 1];
        v[a] = ScalarExpr::one();
        JetSection::from_dense(&v)
    }

    pub fn sub(&self, o: &Self) -> Self {
        JetSection { alpha: vsub(&self.alpha, &o.alpha), u: self.u.sub(&o.u) }
    }

    pub fn add(&self, o: &Self) -> Self {
        JetSection { alpha: vadd(&self.alpha, &o.alpha), u: self.u.add(&o.u) }
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.alpha.iter().all(|a| a.is_zero())
    }
}

impl DlSection {
    pub fn new(x: Vec<ScalarExpr>, f: ScalarExpr) -> Self {
        DlSection { x, f }
    }

    pub fn from_dense(v: &[ScalarExpr]) -> Self {
        let (x, f) = dense_split(v);
        DlSection { x, f }
    }

    pub fn to_dense(&self) -> Vec<ScalarExpr> {
        let mut v = self.x.clone();
        v.push(self.f.clone());
        v
    }

    /// Frame element `a` of `d_0, .., d_{n-1}, 1`.
    pub fn frame(n: usize, a: usize) -> Self {
        let mut v = vec![ScalarExpr::zero(); n + 1];
        v[a] = ScalarExpr::one();
        DlSection::from_dense(&v)
    }

    pub fn apply(&self, l: &ScalarExpr) -> ScalarExpr {
        apply_vector(&self.x, l).add(&self.f.mul(l))
    }

    pub fn sub(&self, o: &Self) -> Self {
        DlSection { x: vsub(&self.x, &o.x), f: self.f.sub(&o.f) }
    }

    pub fn add(&self, o: &Self) -> Self {
        DlSection { x: vadd(&self.x, &o.x), f: self.f.add(&o.f) }
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero() && self.x.iter().all(|a| a.is_zero())
    }

    pub fn as_derivation(&self, chart: &Arc<Chart>) -> Result<MultiDerivation> {
        MultiDerivation::derivation(&crate::tensor::Multivector::vector(chart, &self.x), &self.f)
    }
}

/// `<(a, u), (X, f)> = a(X) + u f`.
pub fn jet_pairing(t: &JetSection, d: &DlSection) -> ScalarExpr {
    pair(&t.alpha, &d.x).add(&t.u.mul(&d.f))
}

/// `J^sharp(a, u) = (Lambda^sharp a - u E, E(a))`, characterised by
/// `<J^sharp t, j^1 v> = J(t, j^1 v)`.
pub fn j_sharp(j: &MultiDerivation, t: &JetSection) -> Result<DlSection> {
    if j.degree() != 2 {
        return Err(Error::DegreeMismatch("sharp map needs a bi-derivation".into()));
    }
    let m = j.jet_matrix().transpose();
    Ok(DlSection::from_dense(&m.mul_vec(&t.to_dense())))
}

/// Value `J(t_1, t_2)` on jets.
pub fn j_on_jets(j: &MultiDerivation, t1: &JetSection, t2: &JetSection) -> ScalarExpr {
    j.apply_jets_dense(&[t1.to_dense(), t2.to_dense()])
}

/// Lie derivative of a jet along a derivation, fixed by
/// `L_D j^1 l = j^1 (D l)` and the Leibniz rule along the symbol:
/// `L_(X,f)(a, u) = (L_X a + f a + u df, X(u) + f u)`.
pub fn jet_lie(d: &DlSection, t: &JetSection) -> JetSection {
    let n = d.x.len();
    let la = lie_one_form(&d.x, &t.alpha);
    let fa = vscale(&t.alpha, &d.f);
    let udf = vscale(&gradient(&d.f, n), &t.u);
    JetSection {
        alpha: vadd(&vadd(&la, &fa), &udf),
        u: d.apply(&t.u),
    }
}

/// `[t1, t2]_J = L_{J# t1} t2 - L_{J# t2} t1 - j^1 J(t1, t2)`.
pub fn jet_bracket(j: &MultiDerivation, t1: &JetSection, t2: &JetSection) -> Result<JetSection> {
    let n = j.dim();
    let a = jet_lie(&j_sharp(j, t1)?, t2);
    let b = jet_lie(&j_sharp(j, t2)?, t1);
    let c = JetSection::prolong(&j_on_jets(j, t1, t2), n);
    Ok(a.sub(&b).sub(&c))
}

/// Commutator bracket `([X, Y], X(g) - Y(f))`.
pub fn dl_bracket(a: &DlSection, b: &DlSection) -> DlSection {
    DlSection {
        x: vector_bracket(&a.x, &b.x),
        f: apply_vector(&a.x, &b.f).sub(&apply_vector(&b.x, &a.f)),
    }
}

/// An endomorphism of derivations with blocks `(N, Y; gamma, g)`:
/// `(X, f) -> (N X + f Y, gamma(X) + g f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoDL {
    chart: Arc<Chart>,
    m: Matrix,
}

impl EndoDL {
    pub fn from_blocks(n_block: &Tensor11, y: &[ScalarExpr], gamma: &[ScalarExpr], g: &ScalarExpr) -> Result<Self> {
        let n = n_block.dim();
        if y.len() != n || gamma.len() != n {
            return Err(Error::DimensionMismatch("block sizes".into()));
        }
        let m = Matrix::from_fn(n + 1, n + 1, |a, b| match (a < n, b < n) {
            (true, true) => n_block.get(a, b).clone(),
            (true, false) => y[a].clone(),
            (false, true) => gamma[b].clone(),
            (false, false) => g.clone(),
        });
        Ok(EndoDL { chart: n_block.chart().clone(), m })
    }

    pub fn from_matrix(chart: &Arc<Chart>, m: Matrix) -> Result<Self> {
        if m.rows() != chart.dim() + 1 || m.cols() != chart.dim() + 1 {
            return Err(Error::DimensionMismatch("EndoDL matrix size".into()));
        }
        Ok(EndoDL { chart: chart.clone(), m })
    }

    pub fn identity(chart: &Arc<Chart>) -> Self {
        EndoDL { chart: chart.clone(), m: Matrix::identity(chart.dim() + 1) }
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn n_block(&self) -> Tensor11 {
        let n = self.dim();
        Tensor11::new(&self.chart, Matrix::from_fn(n, n, |a, b| self.m.get(a, b).clone())).unwrap()
    }

    pub fn y(&self) -> Vec<ScalarExpr> {
        let n = self.dim();
        (0..n).map(|a| self.m.get(a, n).clone()).collect()
    }

    pub fn gamma(&self) -> Vec<ScalarExpr> {
        let n = self.dim();
        (0..n).map(|b| self.m.get(n, b).clone()).collect()
    }

    pub fn g(&self) -> ScalarExpr {
        let n = self.dim();
        self.m.get(n, n).clone()
    }

    pub fn apply(&self, d: &DlSection) -> DlSection {
        DlSection::from_dense(&self.m.mul_vec(&d.to_dense()))
    }

    /// `phi^dagger (a, u) = (N^T a + u gamma, a(Y) + g u)`.
    pub fn adjoint(&self, t: &JetSection) -> JetSection {
        JetSection::from_dense(&self.m.transpose().mul_vec(&t.to_dense()))
    }

    pub fn compose(&self, o: &EndoDL) -> Result<EndoDL> {
        same_chart(&self.chart, &o.chart)?;
        Ok(EndoDL { chart: self.chart.clone(), m: self.m.mul(&o.m)? })
    }

    pub fn scale(&self, c: &Gaussian) -> EndoDL {
        EndoDL { chart: self.chart.clone(), m: self.m.scale(c) }
    }

    /// Whether `phi^2 = -1`.
    pub fn squares_to_minus_one(&self) -> bool {
        let sq = self.m.mul(&self.m).unwrap();
        sq.add(&Matrix::identity(self.dim() + 1)).is_zero()
    }

    /// Torsion for the commutator bracket on the frame `d_i, 1`.
    pub fn torsion(&self) -> BTreeMap<(usize, usize), DlSection> {
        let n = self.dim();
        let mut out = BTreeMap::new();
        let frame: Vec<DlSection> = (0..=n).map(|a| DlSection::frame(n, a)).collect();
        let images: Vec<DlSection> = frame.iter().map(|e| self.apply(e)).collect();
        for a in 0..=n {
            for b in a + 1..=n {
                let t1 = dl_bracket(&images[a], &images[b]);
                let t2 = self.apply(&dl_bracket(&images[a], &frame[b]));
                let t3 = self.apply(&dl_bracket(&frame[a], &images[b]));
                let v = t1.sub(&t2).sub(&t3);
                if !v.is_zero() {
                    out.insert((a, b), v);
                }
            }
        }
        out
    }

    pub fn reindex(
        &self,
        chart: &Arc<Chart>,
        f: &dyn Fn(usize) -> Option<usize>,
        vars: &dyn Fn(crate::expr::Var) -> crate::expr::Var,
    ) -> Result<EndoDL> {
        let (n_old, n_new) = (self.dim(), chart.dim());
        let g = |a: usize| if a == n_old { Some(n_new) } else { f(a) };
        let mut m = Matrix::zeros(n_new + 1, n_new + 1);
        for a in 0..=n_old {
            for b in 0..=n_old {
                let v = self.m.get(a, b);
                if v.is_zero() {
                    continue;
                }
                match (g(a), g(b)) {
                    (Some(x), Some(y)) => m.set(x, y, v.map_vars(vars)),
                    _ => return Err(Error::ChartMismatch("component along a dropped coordinate".into())),
                }
            }
        }
        Ok(EndoDL { chart: chart.clone(), m })
    }

    /// Canonical text: rows and columns named by coordinates and `1`.
    pub fn to_text(&self) -> String {
        let n = self.dim();
        let name = |a: usize| if a == n { "1".to_string() } else { self.chart.name(a).to_string() };
        let mut s = String::new();
        for a in 0..=n {
            for b in 0..=n {
                let v = self.m.get(a, b);
                if !v.is_zero() {
                    s.push_str(&format!("{},{} = {}\n", name(a), name(b), v.display(&self.chart)));
                }
            }
        }
        s
    }
}

/// `J_phi = J(phi -, -)`; undefined unless `J^sharp phi^dagger = phi J^sharp`.
pub fn j_phi(j: &MultiDerivation, phi: &EndoDL) -> Result<MultiDerivation> {
    same_chart(j.chart(), phi.chart())?;
    let m = phi.matrix().mul(&j.jet_matrix())?;
    if let Some((a, b)) = m.antisymmetry_defect() {
        let n = j.dim();
        let name = |x: usize| if x == n { "1".to_string() } else { j.chart().name(x).to_string() };
        return Err(Error::Incompatible(format!(
            "J^sharp o phi^dagger != phi o J^sharp at ({}, {}); J_phi is undefined",
            name(a),
            name(b)
        )));
    }
    MultiDerivation::from_jet_matrix(j.chart(), &m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiNijenhuisReport {
    pub jacobi: bool,
    pub sharp_commutes: bool,
    pub concomitant_vanishes: bool,
    pub torsion_free: bool,
    pub failures: Vec<String>,
}

impl JacobiNijenhuisReport {
    pub fn holds(&self) -> bool {
        self.jacobi && self.sharp_commutes && self.concomitant_vanishes && self.torsion_free
    }
}

/// Jacobi-Nijenhuis test: `J` Jacobi, `J^sharp phi^dagger = phi J^sharp`,
/// the bracket concomitant vanishing on the jet frame, and zero torsion.
pub fn is_jacobi_nijenhuis(j: &MultiDerivation, phi: &EndoDL) -> Result<JacobiNijenhuisReport> {
    same_chart(j.chart(), phi.chart())?;
    let n = j.dim();
    let mut failures = Vec::new();
    let jacobi = is_jacobi(j)?;
    if !jacobi {
        failures.push("J is not Jacobi".into());
    }
    let torsion = phi.torsion();
    let torsion_free = torsion.is_empty();
    if let Some(&(a, b)) = torsion.keys().next() {
        failures.push(format!("torsion of phi nonzero on frame pair ({a}, {b})"));
    }
    let jp = match j_phi(j, phi) {
        Ok(jp) => jp,
        Err(Error::Incompatible(msg)) => {
            failures.push(msg);
            return Ok(JacobiNijenhuisReport {
                jacobi,
                sharp_commutes: false,
                concomitant_vanishes: false,
                torsion_free,
                failures,
            });
        }
        Err(e) => return Err(e),
    };
    let mut concomitant_vanishes = true;
    for a in 0..=n {
        for b in a + 1..=n {
            let (ea, eb) = (JetSection::frame(n, a), JetSection::frame(n, b));
            let lhs = phi.adjoint(&jet_bracket(j, &ea, &eb)?);
            let r1 = jet_bracket(j, &phi.adjoint(&ea), &eb)?;
            let r2 = jet_bracket(j, &ea, &phi.adjoint(&eb))?;
            let r3 = jet_bracket(&jp, &ea, &eb)?;
            if !lhs.sub(&r1).sub(&r2).add(&r3).is_zero() {
                concomitant_vanishes = false;
                failures.push(format!("bracket concomitant nonzero on jet frame pair ({a}, {b})"));
            }
        }
    }
    Ok(JacobiNijenhuisReport { jacobi, sharp_commutes: true, concomitant_vanishes, torsion_free, failures })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiHamiltonianReport {
    pub first: bool,
    pub second: bool,
    pub sum: bool,
}

impl BiHamiltonianReport {
    pub fn holds(&self) -> bool {
        self.first && self.second && self.sum
    }
}

/// `J`, `J'` and `J + J'` all Jacobi.
pub fn bi_hamiltonian_check(j: &MultiDerivation, j2: &MultiDerivation) -> Result<BiHamiltonianReport> {
    Ok(BiHamiltonianReport { first: is_jacobi(j)?, second: is_jacobi(j2)?, sum: is_jacobi(&j.add(j2)?)? })
}

/// Jet `(dl, l)` as dense vector; re-exported for convenience.
pub fn prolong_dense(l: &ScalarExpr, n: usize) -> Vec<ScalarExpr> {
    jet_of(l, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::tensor::Multivector;

    fn contact3() -> (Arc<Chart>, MultiDerivation) {
        let c = Arc::new(Chart::real(&["x", "y"]).unwrap());
        let j = MultiDerivation::new(
            Multivector::from_entries(&c, 2, &[(vec![0, 1], parse("1 + x", &c).unwrap())]).unwrap(),
            Multivector::vector(&c, &[ScalarExpr::zero(), ScalarExpr::zero()]),
        )
        .unwrap();
        (c, j)
    }

    #[test]
    fn sharp_satisfies_its_defining_pairing() {
        let (c, j) = contact3();
        let j = j.add(&MultiDerivation::new(Multivector::zero(&c, 2), Multivector::basis(&c, &[1])).unwrap()).unwrap();
        let u = parse("x^2*y", &c).unwrap();
        let v = parse("x + y^2", &c).unwrap();
        let s = j_sharp(&j, &JetSection::prolong(&u, 2)).unwrap();
        let lhs = jet_pairing(&JetSection::prolong(&v, 2), &s);
        assert_eq!(lhs, j.apply(&[u, v]).unwrap());
    }

    #[test]
    fn jet_lie_commutes_with_prolongation() {
        let c = Arc::new(Chart::real(&["x", "y"]).unwrap());
        let d = DlSection::new(vec![parse("y", &c).unwrap(), parse("x^2", &c).unwrap()], parse("x*y", &c).unwrap());
        let l = parse("x + y^3", &c).unwrap();
        assert_eq!(jet_lie(&d, &JetSection::prolong(&l, 2)), JetSection::prolong(&d.apply(&l), 2));
    }

    #[test]
    fn jet_bracket_prolongs_the_jacobi_bracket() {
        let c = Arc::new(Chart::real(&["x", "y"]).unwrap());
        let j = MultiDerivation::new(Multivector::basis(&c, &[0, 1]), Multivector::basis(&c, &[0])).unwrap();
        let u = parse("x*y", &c).unwrap();
        let v = parse("y^2 + x", &c).unwrap();
        let lhs = jet_bracket(&j, &JetSection::prolong(&u, 2), &JetSection::prolong(&v, 2)).unwrap();
        assert_eq!(lhs, JetSection::prolong(&j.apply(&[u, v]).unwrap(), 2));
    }

    #[test]
    fn identity_endomorphism_is_jacobi_nijenhuis() {
        let (c, j) = contact3();
        let r = is_jacobi_nijenhuis(&j, &EndoDL::identity(&c)).unwrap();
        assert!(r.holds(), "{:?}", r.failures);
    }

    #[test]
    fn adjoint_is_dual() {
        let c = Arc::new(Chart::real(&["x"]).unwrap());
        let x = ScalarExpr::coord(0);
        let n = Tensor11::new(&c, Matrix::from_fn(1, 1, |_, _| x.clone())).unwrap();
        let phi = EndoDL::from_blocks(&n, &[ScalarExpr::int(2)], &[ScalarExpr::int(3)], &x).unwrap();
        let t = JetSection::new(vec![parse("x^2", &c).unwrap()], ScalarExpr::int(5));
        let d = DlSection::new(vec![ScalarExpr::int(7)], parse("x+1", &c).unwrap());
        assert_eq!(jet_pairing(&t, &phi.apply(&d)), jet_pairing(&phi.adjoint(&t), &d));
    }
}
