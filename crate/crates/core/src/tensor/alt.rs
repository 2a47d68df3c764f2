//! Alternating component tables indexed by strictly increasing tuples.

use crate::expr::{Gaussian, ScalarExpr};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Alt {
    pub dim: usize,
    pub degree: usize,
    pub comps: BTreeMap<Vec<usize>, ScalarExpr>,
}

/// Sorts `idx` in place; returns the permutation sign, or `None` on a
/// repeated index.
pub(crate) fn sort_sign(idx: &mut [usize]) -> Option<i64> {
    let mut sign = 1;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

/// All strictly increasing `k`-tuples from `0..n`.
pub fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, 0, &mut Vec::new(), &mut out);
    out
}

impl Alt {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Alt { dim, degree, comps: BTreeMap::new() }
    }

    pub fn get(&self, idx: &[usize]) -> ScalarExpr {
        let mut s = idx.to_vec();
        match sort_sign(&mut s) {
            None => ScalarExpr::zero(),
            Some(sign) => match self.comps.get(&s) {
                Some(v) if sign < 0 => v.neg(),
                Some(v) => v.clone(),
                None => ScalarExpr::zero(),
            },
        }
    }

    /// Adds `v` at an arbitrary-order index.
    pub fn add_at(&mut self, idx: &[usize], v: &ScalarExpr) {
        if v.is_zero() {
            return;
        }
        let mut s = idx.to_vec();
        let Some(sign) = sort_sign(&mut s) else { return };
        let v = if sign < 0 { v.neg() } else { v.clone() };
        match self.comps.get_mut(&s) {
            Some(x) => {
                let y = x.add(&v);
                if y.is_zero() {
                    self.comps.remove(&s);
                } else {
                    *x = y;
                }
            }
            None => {
                self.comps.insert(s, v);
            }
        }
    }

    pub fn add(&self, o: &Alt) -> Alt {
        let mut out = self.clone();
        for (k, v) in &o.comps {
            out.add_at(k, v);
        }
        out
    }

    pub fn sub(&self, o: &Alt) -> Alt {
        let mut out = self.clone();
        for (k, v) in &o.comps {
            out.add_at(k, &v.neg());
        }
        out
    }

    pub fn map(&self, f: impl Fn(&ScalarExpr) -> ScalarExpr) -> Alt {
        let mut out = Alt::zero(self.dim, self.degree);
        for (k, v) in &self.comps {
            out.add_at(k, &f(v));
        }
        out
    }

    pub fn scale(&self, c: &Gaussian) -> Alt {
        self.map(|v| v.scale(c))
    }

    pub fn mul_fn(&self, f: &ScalarExpr) -> Alt {
        self.map(|v| v.mul(f))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn wedge(&self, o: &Alt) -> Alt {
        let mut out = Alt::zero(self.dim, self.degree + o.degree);
        for (i, a) in &self.comps {
            for (j, b) in &o.comps {
                if i.iter().any(|x| j.contains(x)) {
                    continue;
                }
                let mut idx = i.clone();
                idx.extend_from_slice(j);
                out.add_at(&idx, &a.mul(b));
            }
        }
        out
    }

    /// Partial derivative of every coefficient.
    pub fn diff(&self, k: usize) -> Alt {
        self.map(|v| v.diff(k))
    }

    /// Right derivative in the odd variable number `i`: removes `i` from
    /// each index, with sign `(-1)^(number of later indices)`.
    pub fn right_deriv(&self, i: usize) -> Alt {
        let mut out = Alt::zero(self.dim, self.degree.saturating_sub(1));
        for (idx, v) in &self.comps {
            if let Some(m) = idx.iter().position(|&x| x == i) {
                let mut rest = idx.clone();
                rest.remove(m);
                let later = idx.len() - 1 - m;
                let v = if later % 2 == 1 { v.neg() } else { v.clone() };
                out.add_at(&rest, &v);
            }
        }
        out
    }

    /// Left derivative in the odd variable number `i`.
    pub fn left_deriv(&self, i: usize) -> Alt {
        let mut out = Alt::zero(self.dim, self.degree.saturating_sub(1));
        for (idx, v) in &self.comps {
            if let Some(m) = idx.iter().position(|&x| x == i) {
                let mut rest = idx.clone();
                rest.remove(m);
                let v = if m % 2 == 1 { v.neg() } else { v.clone() };
                out.add_at(&rest, &v);
            }
        }
        out
    }

    /// Contraction of the first slot with a dense covector/vector.
    pub fn contract_first(&self, v: &[ScalarExpr]) -> Alt {
        let mut out = Alt::zero(self.dim, self.degree.saturating_sub(1));
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            out = out.add(&self.left_deriv(i).mul_fn(x));
        }
        out
    }

    /// Full evaluation on `degree` dense arguments.
    pub fn eval(&self, args: &[&[ScalarExpr]]) -> ScalarExpr {
        assert_eq!(args.len(), self.degree, "wrong number of arguments");
        let mut acc = ScalarExpr::zero();
        for (idx, v) in &self.comps {
            let det = det_minor(args, idx);
            if !det.is_zero() {
                acc = acc.add(&v.mul(&det));
            }
        }
        acc
    }

    pub fn map_index(&self, dim: usize, f: &dyn Fn(usize) -> Option<usize>) -> Option<Alt> {
        let mut out = Alt::zero(dim, self.degree);
        for (idx, v) in &self.comps {
            let mapped: Option<Vec<usize>> = idx.iter().map(|&i| f(i)).collect();
            out.add_at(&mapped?, v);
        }
        Some(out)
    }
}

/// `det[args[a][idx[b]]]`.
fn det_minor(args: &[&[ScalarExpr]], idx: &[usize]) -> ScalarExpr {
    let k = idx.len();
    if k == 0 {
        return ScalarExpr::one();
    }
    if k == 1 {
        return args[0][idx[0]].clone();
    }
    let mut acc = ScalarExpr::zero();
    for b in 0..k {
        let a0 = &args[0][idx[b]];
        if a0.is_zero() {
            continue;
        }
        let mut rest = idx.to_vec();
        rest.remove(b);
        let minor = det_minor(&args[1..], &rest);
        let t = a0.mul(&minor);
        acc = if b % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
    }
    acc
}
