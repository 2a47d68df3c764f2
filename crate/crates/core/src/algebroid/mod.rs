//! Lie algebroids on explicit frames: anchors, structure functions and
//! axiom checks, with the cotangent and jet algebroids of Poisson and
//! Jacobi structures.

mod holo;

pub use holo::{
    check_flat_connection, holomorphic_cotangent_real_imaginary, jacobi_flat_connection, FlatConnectionReport,
};

use crate::error::{Error, Result};
use crate::expr::{Chart, ScalarExpr};
use crate::jacobi::{j_sharp, jet_bracket, JetSection, MultiDerivation};
use crate::tensor::{apply_vector, gradient, same_chart, vector_bracket, Matrix, Multivector};
use std::sync::Arc;

/// A Lie algebroid candidate of rank `r` over a chart, given on a frame
/// `e_0, .., e_{r-1}` by anchor columns `rho(e_a)` and structure functions
/// `[e_a, e_b] = sum_k c[a][b][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebroidData {
    chart: Arc<Chart>,
    labels: Vec<String>,
    anchor: Vec<Vec<ScalarExpr>>,
    c: Vec<Vec<Vec<ScalarExpr>>>,
}

/// Outcome of [`AlgebroidData::check_axioms`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub anchor_morphism: bool,
    pub jacobi: bool,
    /// Jacobi identity on one triple with a function-weighted entry.
    pub weighted_jacobi: bool,
    pub failures: Vec<String>,
}

impl AxiomReport {
    pub fn holds(&self) -> bool {
        self.anchor_morphism && self.jacobi && self.weighted_jacobi
    }
}

fn vadd(a: &[ScalarExpr], b: &[ScalarExpr]) -> Vec<ScalarExpr> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

fn vsub(a: &[ScalarExpr], b: &[ScalarExpr]) -> Vec<ScalarExpr> {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

fn unit(r: usize, a: usize) -> Vec<ScalarExpr> {
    let mut v = vec![ScalarExpr::zero(); r];
    v[a] = ScalarExpr::one();
    v
}

fn first_nonzero(v: &[ScalarExpr]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

impl AlgebroidData {
    pub fn new(
        chart: &Arc<Chart>,
        labels: Vec<String>,
        anchor: Vec<Vec<ScalarExpr>>,
        c: Vec<Vec<Vec<ScalarExpr>>>,
    ) -> Result<Self> {
        let r = anchor.len();
        if labels.len() != r {
            return Err(Error::DimensionMismatch(format!("{} labels for rank {}", labels.len(), r)));
        }
        if anchor.iter().any(|x| x.len() != chart.dim()) {
            return Err(Error::DimensionMismatch("anchor column length differs from chart dimension".into()));
        }
        if c.len() != r || c.iter().any(|row| row.len() != r || row.iter().any(|v| v.len() != r)) {
            return Err(Error::DimensionMismatch("structure table is not rank x rank x rank".into()));
        }
        for a in 0..r {
            for b in a..r {
                let s = vadd(&c[a][b], &c[b][a]);
                if let Some(k) = first_nonzero(&s) {
                    return Err(Error::Invalid(format!(
                        "structure functions not antisymmetric: c[{}][{}][{}] + c[{}][{}][{}] = {}",
                        labels[a],
                        labels[b],
                        labels[k],
                        labels[b],
                        labels[a],
                        labels[k],
                        s[k].display(chart)
                    )));
                }
            }
        }
        Ok(AlgebroidData { chart: chart.clone(), labels, anchor, c })
    }

    /// Tangent algebroid: frame `d_i`, identity anchor, vanishing brackets.
    pub fn tangent(chart: &Arc<Chart>) -> Self {
        let n = chart.dim();
        AlgebroidData {
            chart: chart.clone(),
            labels: chart.names().iter().map(|s| format!("d{}", s)).collect(),
            anchor: (0..n).map(|a| unit(n, a)).collect(),
            c: vec![vec![vec![ScalarExpr::zero(); n]; n]; n],
        }
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn rank(&self) -> usize {
        self.anchor.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn anchor_column(&self, a: usize) -> &[ScalarExpr] {
        &self.anchor[a]
    }

    /// Coefficients of `[e_a, e_b]` in the frame.
    pub fn structure(&self, a: usize, b: usize) -> &[ScalarExpr] {
        &self.c[a][b]
    }

    /// Anchor of a section with frame coefficients `s`.
    pub fn anchor_of(&self, s: &[ScalarExpr]) -> Vec<ScalarExpr> {
        let mut out = vec![ScalarExpr::zero(); self.chart.dim()];
        for (a, sa) in s.iter().enumerate() {
            if !sa.is_zero() {
                out = vadd(&out, &self.anchor[a].iter().map(|x| x.mul(sa)).collect::<Vec<_>>());
            }
        }
        out
    }

    /// Leibniz extension of the frame bracket:
    /// `[s, t]^k = s^a t^b c_ab^k + rho(s)(t^k) - rho(t)(s^k)`.
    pub fn bracket(&self, s: &[ScalarExpr], t: &[ScalarExpr]) -> Vec<ScalarExpr> {
        let r = self.rank();
        let mut out = vec![ScalarExpr::zero(); r];
        for a in 0..r {
            if s[a].is_zero() {
                continue;
            }
            for b in 0..r {
                if t[b].is_zero() {
                    continue;
                }
                let w = s[a].mul(&t[b]);
                for k in 0..r {
                    if !self.c[a][b][k].is_zero() {
                        out[k] = out[k].add(&w.mul(&self.c[a][b][k]));
                    }
                }
            }
        }
        let rs = self.anchor_of(s);
        let rt = self.anchor_of(t);
        for k in 0..r {
            out[k] = out[k].add(&apply_vector(&rs, &t[k])).sub(&apply_vector(&rt, &s[k]));
        }
        out
    }

    fn jacobiator(&self, s: &[ScalarExpr], t: &[ScalarExpr], u: &[ScalarExpr]) -> Vec<ScalarExpr> {
        let a = self.bracket(&self.bracket(s, t), u);
        let b = self.bracket(&self.bracket(t, u), s);
        let c = self.bracket(&self.bracket(u, s), t);
        vadd(&vadd(&a, &b), &c)
    }

    /// Anchor-morphism property and Jacobi identity on frame triples, plus
    /// one triple whose last entry is weighted by the first coordinate.
    pub fn check_axioms(&self) -> AxiomReport {
        let r = self.rank();
        let n = self.chart.dim();
        let mut failures = Vec::new();
        let mut anchor_morphism = true;
        for a in 0..r {
            for b in a + 1..r {
                let lhs = self.anchor_of(&self.c[a][b]);
                let rhs = vector_bracket(&self.anchor[a], &self.anchor[b]);
                let d = vsub(&lhs, &rhs);
                if let Some(i) = first_nonzero(&d) {
                    anchor_morphism = false;
                    failures.push(format!(
                        "rho[{}, {}] - [rho {}, rho {}] has d{} component {}",
                        self.labels[a],
                        self.labels[b],
                        self.labels[a],
                        self.labels[b],
                        self.chart.name(i),
                        d[i].display(&self.chart)
                    ));
                }
            }
        }
        let mut jacobi = true;
        for a in 0..r {
            for b in a + 1..r {
                for c in b + 1..r {
                    let j = self.jacobiator(&unit(r, a), &unit(r, b), &unit(r, c));
                    if let Some(k) = first_nonzero(&j) {
                        jacobi = false;
                        failures.push(format!(
                            "Jacobiator({}, {}, {}) has {} component {}",
                            self.labels[a],
                            self.labels[b],
                            self.labels[c],
                            self.labels[k],
                            j[k].display(&self.chart)
                        ));
                    }
                }
            }
        }
        let mut weighted_jacobi = true;
        if r >= 2 && n >= 1 {
            let x0 = ScalarExpr::coord(0);
            let mut u = unit(r, r - 1);
            u[r - 1] = x0.clone();
            let (s, t) = (unit(r, 0), unit(r, if r >= 3 { 1 } else { 0 }));
            let j = self.jacobiator(&s, &t, &u);
            if let Some(k) = first_nonzero(&j) {
                weighted_jacobi = false;
                failures.push(format!(
                    "Jacobiator({}, {}, {} {}) has {} component {}",
                    self.labels[0],
                    self.labels[if r >= 3 { 1 } else { 0 }],
                    self.chart.name(0),
                    self.labels[r - 1],
                    self.labels[k],
                    j[k].display(&self.chart)
                ));
            }
        }
        AxiomReport { anchor_morphism, jacobi, weighted_jacobi, failures }
    }

    fn apply_endo(phi: &Matrix, s: &[ScalarExpr]) -> Vec<ScalarExpr> {
        phi.mul_vec(s)
    }

    fn check_endo(&self, phi: &Matrix) -> Result<()> {
        if phi.rows() != self.rank() || phi.cols() != self.rank() {
            return Err(Error::DimensionMismatch(format!(
                "endomorphism is {}x{}, algebroid has rank {}",
                phi.rows(),
                phi.cols(),
                self.rank()
            )));
        }
        Ok(())
    }

    /// Torsion `[phi s, phi t] - phi[phi s, t] - phi[s, phi t] + phi^2 [s, t]`
    /// on frame pairs, for `phi` acting on frame coefficients by `phi * s`.
    /// Returns the pairs with nonzero torsion.
    pub fn torsion(&self, phi: &Matrix) -> Result<Vec<(usize, usize)>> {
        self.check_endo(phi)?;
        let r = self.rank();
        let mut out = Vec::new();
        for a in 0..r {
            for b in a + 1..r {
                let (s, t) = (unit(r, a), unit(r, b));
                let (ps, pt) = (Self::apply_endo(phi, &s), Self::apply_endo(phi, &t));
                let mut v = self.bracket(&ps, &pt);
                v = vsub(&v, &Self::apply_endo(phi, &self.bracket(&ps, &t)));
                v = vsub(&v, &Self::apply_endo(phi, &self.bracket(&s, &pt)));
                let st = self.bracket(&s, &t);
                v = vadd(&v, &Self::apply_endo(phi, &Self::apply_endo(phi, &st)));
                if first_nonzero(&v).is_some() {
                    out.push((a, b));
                }
            }
        }
        Ok(out)
    }

    /// Deformed algebroid with anchor `rho o phi` and bracket
    /// `[s, t]_phi = [phi s, t] + [s, phi t] - phi[s, t]`.
    pub fn deform(&self, phi: &Matrix) -> Result<AlgebroidData> {
        self.check_endo(phi)?;
        let r = self.rank();
        let anchor = (0..r)
            .map(|a| self.anchor_of(&Self::apply_endo(phi, &unit(r, a))))
            .collect();
        let mut c = vec![vec![vec![ScalarExpr::zero(); r]; r]; r];
        for a in 0..r {
            for b in a + 1..r {
                let (s, t) = (unit(r, a), unit(r, b));
                let v = vadd(
                    &self.bracket(&Self::apply_endo(phi, &s), &t),
                    &self.bracket(&s, &Self::apply_endo(phi, &t)),
                );
                let v = vsub(&v, &Self::apply_endo(phi, &self.bracket(&s, &t)));
                c[b][a] = v.iter().map(|x| x.neg()).collect();
                c[a][b] = v;
            }
        }
        AlgebroidData::new(&self.chart, self.labels.clone(), anchor, c)
    }

    /// First entry where two algebroids on the same frame differ.
    pub fn first_difference(&self, o: &AlgebroidData) -> Option<String> {
        if same_chart(&self.chart, &o.chart).is_err() {
            return Some("different charts".into());
        }
        if self.rank() != o.rank() {
            return Some(format!("ranks {} and {}", self.rank(), o.rank()));
        }
        let r = self.rank();
        for a in 0..r {
            let d = vsub(&self.anchor[a], &o.anchor[a]);
            if let Some(i) = first_nonzero(&d) {
                return Some(format!(
                    "anchor of {} differs in d{} by {}",
                    self.labels[a],
                    self.chart.name(i),
                    d[i].display(&self.chart)
                ));
            }
        }
        for a in 0..r {
            for b in a + 1..r {
                let d = vsub(&self.c[a][b], &o.c[a][b]);
                if let Some(k) = first_nonzero(&d) {
                    return Some(format!(
                        "[{}, {}] differs in {} by {}",
                        self.labels[a],
                        self.labels[b],
                        self.labels[k],
                        d[k].display(&self.chart)
                    ));
                }
            }
        }
        None
    }

    pub fn same_as(&self, o: &AlgebroidData) -> bool {
        self.first_difference(o).is_none()
    }

    /// Nonzero anchor entries and structure functions, one per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let r = self.rank();
        for a in 0..r {
            for (i, v) in self.anchor[a].iter().enumerate() {
                if !v.is_zero() {
                    s.push_str(&format!(
                        "rho({}) d{} = {}\n",
                        self.labels[a],
                        self.chart.name(i),
                        v.display(&self.chart)
                    ));
                }
            }
        }
        for a in 0..r {
            for b in a + 1..r {
                for k in 0..r {
                    let v = &self.c[a][b][k];
                    if !v.is_zero() {
                        s.push_str(&format!(
                            "[{}, {}] {} = {}\n",
                            self.labels[a],
                            self.labels[b],
                            self.labels[k],
                            v.display(&self.chart)
                        ));
                    }
                }
            }
        }
        s
    }
}

/// Cotangent algebroid of a bivector: frame `dx^i`, anchor `pi^sharp`,
/// `[dx^a, dx^b]_pi = d pi(dx^a, dx^b)`.
pub fn cotangent_algebroid(pi: &Multivector) -> Result<AlgebroidData> {
    if pi.degree() != 2 {
        return Err(Error::DegreeMismatch("cotangent algebroid needs a bivector".into()));
    }
    let chart = pi.chart();
    let n = chart.dim();
    let m = pi.bivector_matrix();
    let anchor = (0..n).map(|a| pi.sharp(&unit(n, a))).collect();
    let mut c = vec![vec![vec![ScalarExpr::zero(); n]; n]; n];
    for a in 0..n {
        for b in 0..n {
            if a != b {
                c[a][b] = gradient(m.get(a, b), n);
            }
        }
    }
    let labels = chart.names().iter().map(|s| format!("d{}", s)).collect();
    AlgebroidData::new(chart, labels, anchor, c)
}

/// Jet algebroid of a bi-derivation: frame `(dx^i, 0)` followed by
/// `j^1 1 = (0, 1)`, anchor the symbol of `J^sharp`, bracket `[-,-]_J`.
pub fn jet_algebroid(j: &MultiDerivation) -> Result<AlgebroidData> {
    if j.degree() != 2 {
        return Err(Error::DegreeMismatch("jet algebroid needs a bi-derivation".into()));
    }
    let chart = j.chart();
    let n = chart.dim();
    let r = n + 1;
    let frame: Vec<JetSection> = (0..r).map(|a| JetSection::frame(n, a)).collect();
    let anchor = frame
        .iter()
        .map(|t| j_sharp(j, t).map(|d| d.x))
        .collect::<Result<Vec<_>>>()?;
    let mut c = vec![vec![vec![ScalarExpr::zero(); r]; r]; r];
    for a in 0..r {
        for b in a + 1..r {
            let v = jet_bracket(j, &frame[a], &frame[b])?.to_dense();
            c[b][a] = v.iter().map(|x| x.neg()).collect();
            c[a][b] = v;
        }
    }
    let mut labels: Vec<String> = chart.names().iter().map(|s| format!("d{}", s)).collect();
    labels.push("j1".into());
    AlgebroidData::new(chart, labels, anchor, c)
}
