//! Rational functions over a chart.
//!
//! A `ScalarExpr` is a numerator polynomial over a denominator kept as a
//! list of normalized factors. Every denominator factor is either a single
//! variable or a monic polynomial without monomial content. Common factors
//! are cancelled by exact division, so polynomial expressions always have
//! a unique representation. Zero testing is exact in all cases because the
//! numerator is kept in trig normal form.

use super::chart::Chart;
use super::coeff::Gaussian;
use super::poly::{Mono, Poly, Var};
use crate::error::{Error, Result};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, Eq)]
pub struct ScalarExpr {
    num: Poly,
    den: Vec<(Poly, u32)>,
}

/// Splits a nonzero polynomial into a constant and normalized factors.
fn factor_denominator(p: &Poly) -> (Gaussian, Vec<(Poly, u32)>) {
    let content = p.mono_content();
    let rest = p.div_mono(&content).expect("content divides");
    let mut factors: Vec<(Poly, u32)> = content
        .0
        .iter()
        .map(|&(v, e)| (Poly::var(v), e))
        .collect();
    let coef = match rest.as_constant() {
        Some(c) => c,
        None => {
            let lc = rest.leading().unwrap().1.clone();
            let monic = rest.scale(&lc.inv().unwrap());
            factors.push((monic, 1));
            lc
        }
    };
    (coef, factors)
}

fn merge_factors(a: &[(Poly, u32)], b: &[(Poly, u32)], lcm: bool) -> Vec<(Poly, u32)> {
    let mut out: Vec<(Poly, u32)> = a.to_vec();
    for (f, e) in b {
        match out.iter_mut().find(|(g, _)| g == f) {
            Some(slot) => slot.1 = if lcm { slot.1.max(*e) } else { slot.1 + e },
            None => out.push((f.clone(), *e)),
        }
    }
    out.sort();
    out
}

fn product(factors: &[(Poly, u32)]) -> Poly {
    factors
        .iter()
        .fold(Poly::one(), |acc, (f, e)| acc.mul(&f.pow(*e)))
}

/// Product of `l / d` where `d` divides `l` factorwise.
fn cofactor(l: &[(Poly, u32)], d: &[(Poly, u32)]) -> Poly {
    let mut acc = Poly::one();
    for (f, e) in l {
        let have = d.iter().find(|(g, _)| g == f).map(|p| p.1).unwrap_or(0);
        acc = acc.mul(&f.pow(e - have));
    }
    acc
}

impl ScalarExpr {
    pub fn zero() -> Self {
        ScalarExpr { num: Poly::zero(), den: Vec::new() }
    }

    pub fn one() -> Self {
        ScalarExpr::constant(Gaussian::one())
    }

    pub fn i() -> Self {
        ScalarExpr::constant(Gaussian::i())
    }

    pub fn int(n: i64) -> Self {
        ScalarExpr::constant(Gaussian::from_int(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        ScalarExpr::constant(Gaussian::from_ratio(n, d))
    }

    pub fn constant(c: Gaussian) -> Self {
        ScalarExpr::from_poly(Poly::constant(c))
    }

    pub fn from_poly(p: Poly) -> Self {
        ScalarExpr { num: p.reduce_trig(), den: Vec::new() }
    }

    /// Coordinate function number `k`.
    pub fn coord(k: usize) -> Self {
        ScalarExpr::from_poly(Poly::var(Var::Coord(k as u32)))
    }

    pub fn sin(k: usize) -> Self {
        ScalarExpr::from_poly(Poly::var(Var::Sin(k as u32)))
    }

    pub fn cos(k: usize) -> Self {
        ScalarExpr::from_poly(Poly::var(Var::Cos(k as u32)))
    }

    /// Builds `num / prod(den)`, normalizing and cancelling.
    pub fn from_fraction(num: Poly, den: &[(Poly, u32)]) -> Result<Self> {
        let mut coef = Gaussian::one();
        let mut factors = Vec::new();
        for (f, e) in den {
            let f = f.clone().reduce_trig();
            if f.is_zero() {
                return Err(Error::DivisionByZero);
            }
            let (c, fs) = factor_denominator(&f);
            for _ in 0..*e {
                coef = &coef * &c;
            }
            let fs: Vec<(Poly, u32)> = fs.into_iter().map(|(g, k)| (g, k * e)).collect();
            factors = merge_factors(&factors, &fs, false);
        }
        let mut out = ScalarExpr {
            num: num.reduce_trig().scale(&coef.inv().unwrap()),
            den: factors,
        };
        out.cancel();
        Ok(out)
    }

    fn cancel(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        for (f, e) in self.den.iter_mut() {
            while *e > 0 {
                match self.num.div_exact(f) {
                    Some(q) => {
                        self.num = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|(_, e)| *e > 0);
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> Poly {
        product(&self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_constant(&self) -> Option<Gaussian> {
        if self.den.is_empty() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn neg(&self) -> Self {
        ScalarExpr { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn scale(&self, c: &Gaussian) -> Self {
        if c.is_zero() {
            return ScalarExpr::zero();
        }
        ScalarExpr { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let mut out = ScalarExpr { num: self.num.add(&o.num), den: self.den.clone() };
            out.cancel();
            return out;
        }
        let l = merge_factors(&self.den, &o.den, true);
        let num = self
            .num
            .mul(&cofactor(&l, &self.den))
            .add(&o.num.mul(&cofactor(&l, &o.den)));
        let mut out = ScalarExpr { num, den: l };
        out.cancel();
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return ScalarExpr::zero();
        }
        let mut out = ScalarExpr {
            num: self.num.mul(&o.num),
            den: merge_factors(&self.den, &o.den, false),
        };
        if !self.den.is_empty() || !o.den.is_empty() {
            out.cancel();
        }
        out
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        ScalarExpr::from_fraction(product(&self.den), &[(self.num.clone(), 1)])
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.recip()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut out = ScalarExpr::one();
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        Ok(out)
    }

    /// Partial derivative along coordinate `k`.
    pub fn diff(&self, k: usize) -> Self {
        let k32 = k as u32;
        let mut out = ScalarExpr { num: self.num.diff(k32), den: self.den.clone() };
        out.cancel();
        for (f, e) in &self.den {
            let df = f.diff(k32);
            if df.is_zero() {
                continue;
            }
            let extra = merge_factors(&self.den, &[(f.clone(), 1)], false);
            let scale = Gaussian::from_int(-(*e as i64));
            let mut term = ScalarExpr { num: self.num.mul(&df).scale(&scale), den: extra };
            term.cancel();
            out = out.add(&term);
        }
        out
    }

    /// Complex conjugation; coordinates and trig variables are real.
    pub fn conj(&self) -> Self {
        let mut den: Vec<(Poly, u32)> = self.den.iter().map(|(f, e)| (f.conj(), *e)).collect();
        den.sort();
        ScalarExpr { num: self.num.conj(), den }
    }

    pub fn re(&self) -> Self {
        self.add(&self.conj()).scale(&Gaussian::from_ratio(1, 2))
    }

    pub fn im(&self) -> Self {
        let minus_half_i = &Gaussian::i() * &Gaussian::from_ratio(-1, 2);
        self.sub(&self.conj()).scale(&minus_half_i)
    }

    /// Whether the value is real (invariant under conjugation).
    pub fn is_real(&self) -> bool {
        self.sub(&self.conj()).is_zero()
    }

    pub fn mentions(&self, k: usize) -> bool {
        self.num.mentions(k as u32) || self.den.iter().any(|(f, _)| f.mentions(k as u32))
    }

    /// Renames variables; used when moving between charts.
    pub fn map_vars(&self, f: &dyn Fn(Var) -> Var) -> Self {
        let den: Vec<(Poly, u32)> = self.den.iter().map(|(g, e)| (g.map_vars(f), *e)).collect();
        ScalarExpr::from_fraction(self.num.map_vars(f), &den).expect("renaming keeps nonzero")
    }

    /// Replaces every variable by an expression.
    pub fn substitute(&self, f: &dyn Fn(Var) -> ScalarExpr) -> Result<Self> {
        let eval = |p: &Poly| {
            let mut acc = ScalarExpr::zero();
            for (m, c) in p.terms() {
                let mut t = ScalarExpr::constant(c.clone());
                for &(v, e) in &m.0 {
                    t = t.mul(&f(v).pow(e as i64)?);
                }
                acc = acc.add(&t);
            }
            Ok::<_, Error>(acc)
        };
        let mut out = eval(&self.num)?;
        for (g, e) in &self.den {
            out = out.div(&eval(g)?.pow(*e as i64)?)?;
        }
        Ok(out)
    }

    /// Canonical text, readable back by the parser.
    pub fn display<'a>(&'a self, chart: &'a Chart) -> Display<'a> {
        Display { e: self, chart }
    }
}

impl PartialEq for ScalarExpr {
    fn eq(&self, o: &Self) -> bool {
        if self.den == o.den {
            return self.num == o.num;
        }
        self.sub(o).is_zero()
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&ScalarExpr> for &ScalarExpr {
            type Output = ScalarExpr;
            fn $m(self, o: &ScalarExpr) -> ScalarExpr {
                ScalarExpr::$m(self, o)
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Neg for &ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        ScalarExpr::neg(self)
    }
}


fn var_name(v: Var, chart: &Chart) -> String {
    let k = v.coord() as usize;
    let n = if k < chart.dim() { chart.name(k).to_string() } else { format!("_{k}") };
    match v {
        Var::Coord(_) => n,
        Var::Sin(_) => format!("sin({n})"),
        Var::Cos(_) => format!("cos({n})"),
    }
}

fn mono_string(m: &Mono, chart: &Chart) -> String {
    m.0.iter()
        .map(|&(v, e)| {
            if e == 1 {
                var_name(v, chart)
            } else {
                format!("{}^{}", var_name(v, chart), e)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

pub(crate) fn poly_string(p: &Poly, chart: &Chart) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (k, (m, c)) in p.terms().rev().enumerate() {
        let term = if m.is_one() {
            c.to_string()
        } else if c.is_one() {
            mono_string(m, chart)
        } else if (-c).is_one() {
            format!("-{}", mono_string(m, chart))
        } else {
            format!("{}*{}", c, mono_string(m, chart))
        };
        if k == 0 {
            s.push_str(&term);
        } else if let Some(rest) = term.strip_prefix('-') {
            s.push_str(" - ");
            s.push_str(rest);
        } else {
            s.push_str(" + ");
            s.push_str(&term);
        }
    }
    s
}

pub struct Display<'a> {
    e: &'a ScalarExpr,
    chart: &'a Chart,
}

impl fmt::Display for Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = poly_string(&self.e.num, self.chart);
        if self.e.den.is_empty() {
            return write!(f, "{num}");
        }
        let den = self
            .e
            .den
            .iter()
            .map(|(g, e)| {
                let b = if g.len() > 1 {
                    format!("({})", poly_string(g, self.chart))
                } else {
                    poly_string(g, self.chart)
                };
                if *e == 1 {
                    b
                } else {
                    format!("{b}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*");
        write!(f, "({num})/({den})")
    }
}
