//! Seeded random structures and the property suites run over them.
//!
//! Every generator draws from a `ChaCha8Rng`, so a seed fixes the whole
//! corpus. Each suite returns the number of cases and a description of
//! every case that violated the property under test.

use crate::algebroid::{cotangent_algebroid, jet_algebroid};
use crate::complexgeom::{check_homogeneous_equivalences, check_hp_equivalences, ComplexChart};
use crate::correspondences::{check_holomorphic_jacobi_equivalences, poissonize, restrict_homogeneous};
use crate::error::Result;
use crate::expr::{Chart, ScalarExpr};
use crate::jacobi::{gerstenhaber_eval, is_jacobi, schouten_jacobi, MultiDerivation};
use crate::report::EquivalenceReport;
use crate::tensor::{increasing_tuples, is_poisson, Multivector};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::sync::Arc;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Outcome of a property suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    /// Case counts per generator class, for checking the corpus mix.
    pub classes: BTreeMap<String, usize>,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport { name: name.to_string(), cases: 0, classes: BTreeMap::new(), failures: Vec::new() }
    }

    fn count(&mut self, class: &str) {
        self.cases += 1;
        *self.classes.entry(class.to_string()).or_default() += 1;
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn real_chart(dim: usize) -> Arc<Chart> {
    let names: Vec<String> = ["x", "y", "z", "u", "v", "w"][..dim].iter().map(|s| s.to_string()).collect();
    Arc::new(Chart::real(&names).expect("fixed names"))
}

/// Chart `x1, y1, .., xn, yn` with the standard complex structure.
pub fn complex_chart(n: usize) -> ComplexChart {
    let names: Vec<String> = (1..=n).flat_map(|k| [format!("x{k}"), format!("y{k}")]).collect();
    let chart = Arc::new(Chart::real(&names).expect("fixed names"));
    let pairs: Vec<(usize, usize)> = (0..n).map(|k| (2 * k, 2 * k + 1)).collect();
    ComplexChart::standard(&chart, &pairs).expect("standard structure")
}

/// Monomials of degree at most `max_deg` in `vars`, including `1`.
fn monomials(vars: &[ScalarExpr], max_deg: u32) -> Vec<ScalarExpr> {
    let mut out = vec![ScalarExpr::one()];
    let mut layer = vec![(ScalarExpr::one(), 0usize)];
    for _ in 0..max_deg {
        let mut next = Vec::new();
        for (m, start) in &layer {
            for (k, v) in vars.iter().enumerate().skip(*start) {
                next.push((m.mul(v), k));
            }
        }
        out.extend(next.iter().map(|(m, _)| m.clone()));
        layer = next;
    }
    out
}

/// Sparse polynomial with integer coefficients in `[-3, 3]`.
pub fn random_poly<R: Rng>(rng: &mut R, vars: &[ScalarExpr], max_deg: u32, density: f64) -> ScalarExpr {
    let mut acc = ScalarExpr::zero();
    for m in monomials(vars, max_deg) {
        if rng.gen_bool(density) {
            let c = *[-3i64, -2, -1, 1, 2, 3].choose(rng).unwrap();
            acc = acc.add(&m.mul(&ScalarExpr::int(c)));
        }
    }
    acc
}

fn coords(chart: &Arc<Chart>) -> Vec<ScalarExpr> {
    (0..chart.dim()).map(ScalarExpr::coord).collect()
}

pub fn random_multivector<R: Rng>(rng: &mut R, chart: &Arc<Chart>, degree: usize, max_deg: u32) -> Multivector {
    let vars = coords(chart);
    let entries: Vec<(Vec<usize>, ScalarExpr)> = increasing_tuples(chart.dim(), degree)
        .into_iter()
        .map(|idx| (idx, random_poly(rng, &vars, max_deg, 0.35)))
        .collect();
    Multivector::from_entries(chart, degree, &entries).expect("valid entries")
}

pub fn random_multiderivation<R: Rng>(rng: &mut R, chart: &Arc<Chart>, degree: usize, max_deg: u32) -> MultiDerivation {
    let lambda = random_multivector(rng, chart, degree, max_deg);
    let e = random_multivector(rng, chart, degree - 1, max_deg);
    MultiDerivation::new(lambda, e).expect("matching degrees")
}

/// A bivector that is Poisson by construction about half the time:
/// `f d_a ^ d_b`, linear structures of semidirect products, constants,
/// or an unconstrained random bivector.
pub fn random_bivector_case<R: Rng>(rng: &mut R, chart: &Arc<Chart>) -> (String, Multivector) {
    let n = chart.dim();
    let vars = coords(chart);
    if n < 2 {
        return ("zero".into(), Multivector::zero(chart, 2));
    }
    match rng.gen_range(0..5) {
        0 => {
            let mut ab = [rng.gen_range(0..n), rng.gen_range(0..n - 1)];
            if ab[1] >= ab[0] {
                ab[1] += 1;
            }
            let f = random_poly(rng, &vars, 2, 0.4);
            let pi = Multivector::basis(chart, &ab).mul_fn(&f);
            ("rank-two".into(), pi)
        }
        1 if n == 3 => {
            // dual of [e3, e1] = a e1 + b e2, [e3, e2] = c e1 + d e2, [e1, e2] = 0
            let m: Vec<i64> = (0..4).map(|_| rng.gen_range(-2..=2)).collect();
            let x = &vars;
            let c31 = x[0].mul(&ScalarExpr::int(m[0])).add(&x[1].mul(&ScalarExpr::int(m[1])));
            let c32 = x[0].mul(&ScalarExpr::int(m[2])).add(&x[1].mul(&ScalarExpr::int(m[3])));
            let entries = vec![(vec![2, 0], c31), (vec![2, 1], c32)];
            ("linear".into(), Multivector::from_entries(chart, 2, &entries).unwrap())
        }
        1 | 2 => {
            let vars: Vec<ScalarExpr> = Vec::new();
            let entries: Vec<(Vec<usize>, ScalarExpr)> = increasing_tuples(n, 2)
                .into_iter()
                .map(|idx| (idx, random_poly(rng, &vars, 0, 0.8)))
                .collect();
            ("constant".into(), Multivector::from_entries(chart, 2, &entries).unwrap())
        }
        _ => ("random".into(), random_multivector(rng, chart, 2, 2)),
    }
}

/// A bi-derivation that is Jacobi by construction about half the time:
/// `(pi, 0)` with `pi` Poisson by construction, `(f d_a ^ d_b, d_a)` with
/// `f` free of `x^a`, or an unconstrained random pair.
pub fn random_pair_case<R: Rng>(rng: &mut R, chart: &Arc<Chart>) -> (String, MultiDerivation) {
    let n = chart.dim();
    match rng.gen_range(0..3) {
        0 => {
            let (class, pi) = random_bivector_case(rng, chart);
            let j = MultiDerivation::new(pi, Multivector::zero(chart, 1)).unwrap();
            (format!("E=0/{class}"), j)
        }
        1 if n >= 2 => {
            let a = rng.gen_range(0..n);
            let b = (a + 1 + rng.gen_range(0..n - 1)) % n;
            let others: Vec<ScalarExpr> = (0..n).filter(|&k| k != a).map(ScalarExpr::coord).collect();
            let f = random_poly(rng, &others, 2, 0.4);
            let mut idx = vec![a, b];
            let sign = if a < b { 1 } else { -1 };
            idx.sort();
            let lambda = Multivector::basis(chart, &idx).mul_fn(&f.mul(&ScalarExpr::int(sign)));
            let e = Multivector::basis(chart, &[a]);
            ("transversal".into(), MultiDerivation::new(lambda, e).unwrap())
        }
        _ => ("random".into(), random_multiderivation(rng, chart, 2, 2)),
    }
}

fn frame_bivector(cc: &ComplexChart, a: usize, b: usize, f: &ScalarExpr) -> Multivector {
    let c = cc.chart();
    let ea = Multivector::vector(c, &cc.frame10()[a]);
    let eb = Multivector::vector(c, &cc.frame10()[b]);
    ea.wedge(&eb).unwrap().mul_fn(f)
}

fn mixed_bivector(cc: &ComplexChart, a: usize, b: usize, f: &ScalarExpr) -> Multivector {
    let c = cc.chart();
    let ea = Multivector::vector(c, &cc.frame10()[a]);
    let eb = Multivector::vector(c, &cc.frame01()[b]);
    ea.wedge(&eb).unwrap().mul_fn(f)
}

fn nonzero_poly<R: Rng>(rng: &mut R, vars: &[ScalarExpr], max_deg: u32) -> ScalarExpr {
    loop {
        let p = random_poly(rng, vars, max_deg, 0.4);
        if !p.is_zero() {
            return p;
        }
    }
}

fn sum(terms: Vec<Multivector>, cc: &ComplexChart, degree: usize) -> Multivector {
    terms
        .into_iter()
        .fold(Multivector::zero(cc.chart(), degree), |acc, t| acc.add(&t).unwrap())
}

/// Classes cycled through by the theorem corpora.
pub const CLASSES: [&str; 4] = ["valid", "type-broken", "CR-broken", "Jacobi-broken"];

/// A complex bivector `Pi` of the given class on `C^1..C^3`; the real input
/// for the checkers is `Im Pi`.
pub fn holomorphic_poisson_case<R: Rng>(rng: &mut R, class: &str) -> (ComplexChart, Multivector) {
    let n = match class {
        "Jacobi-broken" => 3,
        _ => rng.gen_range(1..=3),
    };
    let cc = complex_chart(n);
    let z = cc.holomorphic_coordinates().to_vec();
    let zbar: Vec<ScalarExpr> = z.iter().map(|v| v.conj()).collect();
    let big = match (class, n) {
        ("valid", 1) => Multivector::zero(cc.chart(), 2),
        ("valid", 2) => frame_bivector(&cc, 0, 1, &random_poly(rng, &z, 2, 0.4)),
        ("valid", _) => {
            // f(z1) e1 ^ e2 + g(z1) e1 ^ e3 is Poisson: it only moves z2, z3
            let f = random_poly(rng, &z[..1], 2, 0.5);
            let g = random_poly(rng, &z[..1], 2, 0.5);
            frame_bivector(&cc, 0, 1, &f).add(&frame_bivector(&cc, 0, 2, &g)).unwrap()
        }
        ("type-broken", _) => {
            let base = if n >= 2 { frame_bivector(&cc, 0, 1, &random_poly(rng, &z, 1, 0.5)) } else { Multivector::zero(cc.chart(), 2) };
            let b = rng.gen_range(0..n);
            base.add(&mixed_bivector(&cc, 0, b, &nonzero_poly(rng, &z, 1))).unwrap()
        }
        ("CR-broken", 1) => {
            let zb = nonzero_poly(rng, &zbar, 1);
            mixed_bivector(&cc, 0, 0, &zb)
        }
        ("CR-broken", _) => {
            let k = rng.gen_range(0..n);
            let f = random_poly(rng, &z, 1, 0.4).add(&zbar[k].mul(&ScalarExpr::int(rng.gen_range(1..=3))));
            frame_bivector(&cc, 0, 1, &f)
        }
        _ => {
            // e1 ^ e2 + z2 e2 ^ e3 + c z3 e1 ^ e3 fails Jacobi for every c
            let f = z[2].mul(&ScalarExpr::int(rng.gen_range(-2..=2)));
            let terms = vec![
                frame_bivector(&cc, 0, 1, &ScalarExpr::one()),
                frame_bivector(&cc, 1, 2, &z[1]),
                frame_bivector(&cc, 0, 2, &f),
            ];
            sum(terms, &cc, 2)
        }
    };
    (cc, big)
}

/// A complex bivector with linear coefficients and the real Euler field
/// `eta` of the chart. Classes add "homogeneity-broken" (quadratic terms).
pub fn homogeneous_case<R: Rng>(rng: &mut R, class: &str) -> (ComplexChart, Multivector, Multivector) {
    let n = if class == "Jacobi-broken" { 3 } else { rng.gen_range(2..=3) };
    let cc = complex_chart(n);
    let z = cc.holomorphic_coordinates().to_vec();
    let lin = |rng: &mut R, vars: &[ScalarExpr]| -> ScalarExpr {
        let mut p = ScalarExpr::zero();
        for v in vars {
            if rng.gen_bool(0.6) {
                p = p.add(&v.mul(&ScalarExpr::int(rng.gen_range(-2..=2))));
            }
        }
        p
    };
    let big = match class {
        "valid" if n == 2 => {
            // [e1, e2] = a e1 + b e2
            let a = rng.gen_range(-2..=2);
            let b = rng.gen_range(-2..=2);
            let f = z[0].mul(&ScalarExpr::int(a)).add(&z[1].mul(&ScalarExpr::int(b)));
            frame_bivector(&cc, 0, 1, &f)
        }
        "valid" => {
            // [e3, e1], [e3, e2] in span(e1, e2), [e1, e2] = 0
            let f = lin(rng, &z[..2]);
            let g = lin(rng, &z[..2]);
            frame_bivector(&cc, 2, 0, &f).add(&frame_bivector(&cc, 2, 1, &g)).unwrap()
        }
        "type-broken" => {
            let f = lin(rng, &z);
            frame_bivector(&cc, 0, 1, &f).add(&mixed_bivector(&cc, 0, 1, &z[0])).unwrap()
        }
        "CR-broken" => {
            let f = lin(rng, &z).add(&z[1].conj());
            frame_bivector(&cc, 0, 1, &f)
        }
        "homogeneity-broken" => {
            let f = nonzero_poly(rng, &z[..1], 1).mul(&z[0]).mul(&z[0]);
            frame_bivector(&cc, 0, 1, &f)
        }
        _ => {
            // z3 e1 ^ e2 + z2 e2 ^ e3 + c z3 e1 ^ e3 fails Jacobi for every c
            let c = ScalarExpr::int(rng.gen_range(-2..=2));
            let terms = vec![
                frame_bivector(&cc, 0, 1, &z[2]),
                frame_bivector(&cc, 1, 2, &z[1]),
                frame_bivector(&cc, 0, 2, &z[2].mul(&c)),
            ];
            sum(terms, &cc, 2)
        }
    };
    let mut eta = vec![ScalarExpr::zero(); 2 * n];
    for (k, e) in eta.iter_mut().enumerate() {
        *e = ScalarExpr::coord(k);
    }
    let eta = Multivector::vector(cc.chart(), &eta);
    (cc, big, eta)
}

/// A complex bi-derivation on `C` or `C^2`.
pub fn holomorphic_jacobi_case<R: Rng>(rng: &mut R, class: &str) -> (ComplexChart, MultiDerivation) {
    let n = if class == "Jacobi-broken" { 2 } else { rng.gen_range(1..=2) };
    let cc = complex_chart(n);
    let c = cc.chart().clone();
    let z = cc.holomorphic_coordinates().to_vec();
    let vec10 = |a: usize, f: &ScalarExpr| Multivector::vector(&c, &cc.frame10()[a]).mul_fn(f);
    let vec01 = |a: usize, f: &ScalarExpr| Multivector::vector(&c, &cc.frame01()[a]).mul_fn(f);
    let zero2 = Multivector::zero(&c, 2);
    let (lambda, e) = match (class, n) {
        ("valid", 1) => (zero2, vec10(0, &random_poly(rng, &z, 2, 0.5))),
        ("valid", _) => {
            if rng.gen_bool(0.5) {
                (frame_bivector(&cc, 0, 1, &random_poly(rng, &z, 2, 0.4)), Multivector::zero(&c, 1))
            } else {
                let f = random_poly(rng, &z[..1], 2, 0.5);
                (frame_bivector(&cc, 0, 1, &f), vec10(1, &ScalarExpr::one()))
            }
        }
        ("type-broken", _) => {
            let e = vec10(0, &random_poly(rng, &z, 1, 0.4)).add(&vec01(0, &nonzero_poly(rng, &z, 1))).unwrap();
            (zero2, e)
        }
        ("CR-broken", _) => {
            let f = random_poly(rng, &z, 1, 0.4).add(&z[0].conj());
            (zero2, vec10(0, &f))
        }
        _ => {
            // [E, Lambda] != 0 for E = z1 e1
            let f = random_poly(rng, &z, 1, 0.4).add(&ScalarExpr::one());
            (frame_bivector(&cc, 0, 1, &f), vec10(0, &z[0]))
        }
    };
    (cc, MultiDerivation::new(lambda, e).unwrap())
}

fn describe(rep: &EquivalenceReport) -> String {
    rep.verdicts
        .iter()
        .map(|v| format!("{}={}", v.label, v.holds))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Verdict agreement of the three holomorphic Poisson characterizations.
pub fn hp_equivalence_suite(seed: u64, cases: usize) -> Result<SuiteReport> {
    let mut rng = rng(seed);
    let mut rep = SuiteReport::new("hP-equivalences");
    for k in 0..cases {
        let class = CLASSES[k % CLASSES.len()];
        let (cc, big) = holomorphic_poisson_case(&mut rng, class);
        let r = check_hp_equivalences(&big.im(), &cc)?;
        rep.count(&format!("{class}/{}", r.all_hold()));
        if !r.agree() {
            rep.failures.push(format!("case {k} ({class}): {}", describe(&r)));
        }
    }
    Ok(rep)
}

/// Verdict agreement of the three homogeneous characterizations.
pub fn homogeneous_equivalence_suite(seed: u64, cases: usize) -> Result<SuiteReport> {
    let mut rng = rng(seed);
    let mut rep = SuiteReport::new("hhP-equivalences");
    let classes = ["valid", "type-broken", "CR-broken", "Jacobi-broken", "homogeneity-broken"];
    for k in 0..cases {
        let class = classes[k % classes.len()];
        let (cc, big, eta) = homogeneous_case(&mut rng, class);
        let r = check_homogeneous_equivalences(&big.im(), &cc, &eta)?;
        rep.count(&format!("{class}/{}", r.all_hold()));
        if !r.agree() {
            rep.failures.push(format!("case {k} ({class}): {}", describe(&r)));
        }
    }
    Ok(rep)
}

/// Verdict agreement of the three holomorphic Jacobi characterizations.
pub fn hj_equivalence_suite(seed: u64, cases: usize) -> Result<SuiteReport> {
    let mut rng = rng(seed);
    let mut rep = SuiteReport::new("hJ-equivalences");
    for k in 0..cases {
        let class = CLASSES[k % CLASSES.len()];
        let (cc, j) = holomorphic_jacobi_case(&mut rng, class);
        let r = check_holomorphic_jacobi_equivalences(&j, &cc)?;
        rep.count(&format!("{class}/{}", r.all_hold()));
        if !r.agree() {
            rep.failures.push(format!("case {k} ({class}): {}", describe(&r)));
        }
    }
    Ok(rep)
}

/// Random arguments for the first-order test: `1`, coordinates and
/// quadratic monomials.
fn random_args<R: Rng>(rng: &mut R, chart: &Arc<Chart>, k: usize) -> Vec<ScalarExpr> {
    let pool = monomials(&coords(chart), 2);
    (0..k).map(|_| pool.choose(rng).unwrap().clone()).collect()
}

fn sj_sign(d1: &MultiDerivation, d2: &MultiDerivation) -> bool {
    ((d1.degree() - 1) * (d2.degree() - 1)) % 2 == 1
}

/// Graded skew-symmetry, graded Jacobi identity, and agreement of the
/// extracted bracket with direct Gerstenhaber evaluation on monomials.
pub fn schouten_jacobi_suite(seed: u64, pairs: usize, triples: usize) -> Result<SuiteReport> {
    let mut rng = rng(seed);
    let mut rep = SuiteReport::new("schouten-jacobi");
    for k in 0..pairs {
        let chart = real_chart(rng.gen_range(1..=3));
        let (a, b) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let d1 = random_multiderivation(&mut rng, &chart, a, 2);
        let d2 = random_multiderivation(&mut rng, &chart, b, 2);
        rep.count(&format!("pair/{a}{b}"));
        let br = schouten_jacobi(&d1, &d2)?;
        let rev = schouten_jacobi(&d2, &d1)?;
        let skew = if sj_sign(&d1, &d2) { br.sub(&rev)? } else { br.add(&rev)? };
        if !skew.is_zero() {
            rep.failures.push(format!("pair {k}: graded skew-symmetry fails"));
        }
        let args = random_args(&mut rng, &chart, a + b - 1);
        let g12 = gerstenhaber_eval(&d1, &d2, &args)?;
        let g21 = gerstenhaber_eval(&d2, &d1, &args)?;
        let direct = if sj_sign(&d1, &d2) { g12.neg().sub(&g21) } else { g12.sub(&g21) };
        if br.apply(&args)? != direct {
            rep.failures.push(format!("pair {k}: extracted bracket differs from Gerstenhaber evaluation"));
        }
    }
    for k in 0..triples {
        let chart = real_chart(rng.gen_range(1..=3));
        let ds: Vec<MultiDerivation> = (0..3)
            .map(|_| {
                let d = rng.gen_range(1..=2);
                random_multiderivation(&mut rng, &chart, d, 1)
            })
            .collect();
        rep.count("triple");
        let lhs = schouten_jacobi(&ds[0], &schouten_jacobi(&ds[1], &ds[2])?)?;
        let r1 = schouten_jacobi(&schouten_jacobi(&ds[0], &ds[1])?, &ds[2])?;
        let r2 = schouten_jacobi(&ds[1], &schouten_jacobi(&ds[0], &ds[2])?)?;
        let rhs = if sj_sign(&ds[0], &ds[1]) { r1.sub(&r2)? } else { r1.add(&r2)? };
        if !lhs.sub(&rhs)?.is_zero() {
            rep.failures.push(format!("triple {k}: graded Jacobi identity fails"));
        }
    }
    Ok(rep)
}

/// Roundtrip `restrict(poissonize(J)) = J` and `J Jacobi <=> pi Poisson`.
pub fn poissonization_suite(seed: u64, cases: usize) -> Result<SuiteReport> {
    let mut rng = rng(seed);
    let mut rep = SuiteReport::new("poissonization");
    for k in 0..cases {
        let chart = real_chart(rng.gen_range(1..=3));
        let (class, j) = random_pair_case(&mut rng, &chart);
        let hp = poissonize(&j)?;
        let (back, flag) = restrict_homogeneous(&hp.pi, hp.fiber)?;
        let jac = is_jacobi(&j)?;
        let poi = is_poisson(&hp.pi)?;
        rep.count(&format!("jacobi={jac}"));
        if !back.sub(&j)?.is_zero() {
            rep.failures.push(format!("case {k} ({class}): roundtrip changes the pair"));
        }
        if jac != poi || flag != jac {
            rep.failures.push(format!("case {k} ({class}): is_jacobi={jac}, is_poisson={poi}, flag={flag}"));
        }
    }
    Ok(rep)
}

/// `check_axioms` of cotangent and jet algebroids against the Poisson and
/// Jacobi predicates.
pub fn algebroid_suite(seed: u64, cases: usize) -> Result<SuiteReport> {
    let mut rng = rng(seed);
    let mut rep = SuiteReport::new("algebroid-axioms");
    for k in 0..cases {
        let chart = real_chart(rng.gen_range(1..=3));
        let (class, pi) = random_bivector_case(&mut rng, &chart);
        let poi = is_poisson(&pi)?;
        let ok = cotangent_algebroid(&pi)?.check_axioms().holds();
        rep.count(&format!("cotangent/poisson={poi}"));
        if ok != poi {
            rep.failures.push(format!("cotangent case {k} ({class}): axioms={ok}, poisson={poi}"));
        }
    }
    for k in 0..cases {
        let chart = real_chart(rng.gen_range(1..=3));
        let (class, j) = random_pair_case(&mut rng, &chart);
        let jac = is_jacobi(&j)?;
        let ok = jet_algebroid(&j)?.check_axioms().holds();
        rep.count(&format!("jet/jacobi={jac}"));
        if ok != jac {
            rep.failures.push(format!("jet case {k} ({class}): axioms={ok}, jacobi={jac}"));
        }
    }
    Ok(rep)
}
