//! Sparse multivariate polynomials over the Gaussian rationals.
//!
//! Besides chart coordinates the ring has, for every angle coordinate,
//! two extra variables standing for its sine and cosine. Polynomials are
//! kept reduced modulo `sin^2 + cos^2 - 1` by eliminating `sin^2`, which
//! gives a unique normal form (sine degree at most one per angle).

use super::coeff::Gaussian;
use std::cmp::Ordering;
use std::collections::BTreeMap;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    Coord(u32),
    Sin(u32),
    Cos(u32),
}

impl Var {
    pub fn coord(&self) -> u32 {
        match *self {
            Var::Coord(k) | Var::Sin(k) | Var::Cos(k) => k,
        }
    }
}

/// A monomial: sorted `(variable, exponent)` pairs with positive exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono(pub Vec<(Var, u32)>);

impl Mono {
    pub fn one() -> Self {
        Mono(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Mono(vec![(v, 1)])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut out = Vec::with_capacity(self.0.len() + o.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < o.0.len() {
            let (a, ea) = self.0[i];
            let (b, eb) = o.0[j];
            match a.cmp(&b) {
                Ordering::Less => {
                    out.push((a, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&o.0[j..]);
        Mono(out)
    }

    /// `self / o` if `o` divides `self`.
    pub fn div(&self, o: &Mono) -> Option<Mono> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(a, ea) in &self.0 {
            if j < o.0.len() && o.0[j].0 < a {
                return None;
            }
            if j < o.0.len() && o.0[j].0 == a {
                let eb = o.0[j].1;
                j += 1;
                if eb > ea {
                    return None;
                }
                if ea > eb {
                    out.push((a, ea - eb));
                }
            } else {
                out.push((a, ea));
            }
        }
        if j < o.0.len() {
            return None;
        }
        Some(Mono(out))
    }

    pub fn with_exp(&self, v: Var, e: u32) -> Mono {
        let mut out: Vec<(Var, u32)> = self.0.iter().copied().filter(|&(w, _)| w != v).collect();
        if e > 0 {
            out.push((v, e));
            out.sort_by(|a, b| a.0.cmp(&b.0));
        }
        Mono(out)
    }

    /// Greatest common divisor of two monomials.
    pub fn gcd(&self, o: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .filter_map(|&(v, e)| {
                    let f = o.exp(v);
                    (f > 0).then(|| (v, e.min(f)))
                })
                .collect(),
        )
    }
}

/// Graded lexicographic order; variables earlier in `Var` order are more
/// significant.
impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        let d = self.degree().cmp(&o.degree());
        if d != Ordering::Equal {
            return d;
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), o.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(a, ea)), Some(&(b, eb))) => {
                    if a != b {
                        return if a < b { Ordering::Greater } else { Ordering::Less };
                    }
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct Poly {
    terms: BTreeMap<Mono, Gaussian>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Gaussian) -> Self {
        Poly::term(Mono::one(), c)
    }

    pub fn one() -> Self {
        Poly::constant(Gaussian::one())
    }

    pub fn term(m: Mono, c: Gaussian) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// The polynomial consisting of one variable; trig variables are reduced.
    pub fn var(v: Var) -> Self {
        Poly::term(Mono::var(v), Gaussian::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Gaussian)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Gaussian> {
        match self.terms.len() {
            0 => Some(Gaussian::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<(&Mono, &Gaussian)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Mono, c: Gaussian) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                let s = &*x + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &Gaussian) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul_mono(&self, mo: &Mono, k: &Gaussian) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.mul(mo), c * k)).collect(),
        }
    }

    /// Product without trig reduction.
    pub fn mul_raw(&self, o: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    /// Product followed by trig reduction.
    pub fn mul(&self, o: &Poly) -> Poly {
        self.mul_raw(o).reduce_trig()
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Eliminates `sin^2` using `sin^2 = 1 - cos^2`.
    pub fn reduce_trig(self) -> Poly {
        if !self
            .terms
            .keys()
            .any(|m| m.0.iter().any(|&(v, e)| matches!(v, Var::Sin(_)) && e >= 2))
        {
            return self;
        }
        let mut out = Poly::zero();
        let mut work: Vec<(Mono, Gaussian)> = self.terms.into_iter().collect();
        while let Some((m, c)) = work.pop() {
            let hit = m
                .0
                .iter()
                .find(|&&(v, e)| matches!(v, Var::Sin(_)) && e >= 2)
                .copied();
            match hit {
                None => out.add_term(m, c),
                Some((v, e)) => {
                    let k = v.coord();
                    let base = m.with_exp(v, e - 2);
                    let cos = Var::Cos(k);
                    let with_cos = base.with_exp(cos, base.exp(cos) + 2);
                    work.push((base, c.clone()));
                    work.push((with_cos, -&c));
                }
            }
        }
        out
    }

    /// Partial derivative with respect to chart coordinate `k`.
    pub fn diff(&self, k: u32) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            for &(v, e) in &m.0 {
                if v.coord() != k {
                    continue;
                }
                let ce = c.scale(&num_rational::BigRational::from_integer(e.into()));
                let lowered = m.with_exp(v, e - 1);
                match v {
                    Var::Coord(_) => out.add_term(lowered, ce),
                    Var::Sin(_) => {
                        let cv = Var::Cos(k);
                        out.add_term(lowered.with_exp(cv, lowered.exp(cv) + 1), ce);
                    }
                    Var::Cos(_) => {
                        let sv = Var::Sin(k);
                        out.add_term(lowered.with_exp(sv, lowered.exp(sv) + 1), -&ce);
                    }
                }
            }
        }
        out.reduce_trig()
    }

    pub fn conj(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.conj())).collect(),
        }
    }

    /// Greatest monomial dividing every term.
    pub fn mono_content(&self) -> Mono {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Mono::one();
        };
        it.fold(first.clone(), |g, m| g.gcd(m))
    }

    pub fn div_mono(&self, mo: &Mono) -> Option<Poly> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(m.div(mo)?, c.clone());
        }
        Some(Poly { terms })
    }

    /// Exact quotient `self / d` in the polynomial ring, if it exists.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (lm, lc) = d.leading()?;
        let lc_inv = lc.inv()?;
        let mut r = self.clone();
        let mut q = Poly::zero();
        while let Some((m, c)) = r.leading() {
            let qm = m.div(lm)?;
            let qc = c * &lc_inv;
            r = r.sub(&d.mul_mono(&qm, &qc));
            q.add_term(qm, qc);
        }
        Some(q)
    }

    pub fn map_vars(&self, f: &dyn Fn(Var) -> Var) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut v: Vec<(Var, u32)> = m.0.iter().map(|&(x, e)| (f(x), e)).collect();
            v.sort_by(|a, b| a.0.cmp(&b.0));
            let mut merged: Vec<(Var, u32)> = Vec::with_capacity(v.len());
            for (x, e) in v {
                match merged.last_mut() {
                    Some(last) if last.0 == x => last.1 += e,
                    _ => merged.push((x, e)),
                }
            }
            out.add_term(Mono(merged), c.clone());
        }
        out.reduce_trig()
    }

    /// Whether any variable attached to coordinate `k` occurs.
    pub fn mentions(&self, k: u32) -> bool {
        self.terms.keys().any(|m| m.0.iter().any(|&(v, _)| v.coord() == k))
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.is_real())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly {
        Poly::var(Var::Coord(0))
    }
    fn y() -> Poly {
        Poly::var(Var::Coord(1))
    }

    #[test]
    fn pythagoras_reduces_to_one() {
        let s = Poly::var(Var::Sin(2));
        let c = Poly::var(Var::Cos(2));
        assert_eq!(s.mul(&s).add(&c.mul(&c)), Poly::one());
    }

    #[test]
    fn exact_division() {
        let a = x().add(&y());
        let b = x().sub(&y());
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.add(&Poly::one()).div_exact(&a), None);
    }

    #[test]
    fn derivative_of_sine_and_cosine() {
        let s = Poly::var(Var::Sin(0));
        let c = Poly::var(Var::Cos(0));
        assert_eq!(s.diff(0), c);
        assert_eq!(c.diff(0), s.neg());
    }

    #[test]
    fn grlex_order() {
        let m_x2 = Mono(vec![(Var::Coord(0), 2)]);
        let m_xy = Mono(vec![(Var::Coord(0), 1), (Var::Coord(1), 1)]);
        let m_y2 = Mono(vec![(Var::Coord(1), 2)]);
        let m_x = Mono(vec![(Var::Coord(0), 1)]);
        assert!(m_x2 > m_xy && m_xy > m_y2 && m_y2 > m_x);
    }
}
