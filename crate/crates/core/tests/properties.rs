use holojac::algebroid::cotangent_algebroid;
use holojac::complexgeom::{is_complex_structure, p01, p10, ComplexChart};
use holojac::correspondences::{poissonize, restrict_homogeneous};
use holojac::format::{ChartDecl, Document, Value, MAIN};
use holojac::jacobi::{contact_to_jacobi, is_jacobi, jacobi_to_contact, schouten_jacobi, MultiDerivation};
use holojac::tensor::{increasing_tuples, is_poisson, DiffForm, Matrix, Multivector, Tensor11};
use holojac::{parse, Chart, Gaussian, ScalarExpr};
use proptest::prelude::*;
use std::sync::Arc;

const NAMES: [&str; 3] = ["x", "y", "z"];

fn chart(dim: usize) -> Arc<Chart> {
    Arc::new(Chart::real(&NAMES[..dim]).unwrap())
}

/// `1`, `x_i`, `x_i x_j`.
fn monomials(dim: usize) -> Vec<ScalarExpr> {
    let mut out = vec![ScalarExpr::one()];
    for i in 0..dim {
        out.push(ScalarExpr::coord(i));
    }
    for i in 0..dim {
        for j in i..dim {
            out.push(ScalarExpr::coord(i).mul(&ScalarExpr::coord(j)));
        }
    }
    out
}

fn poly(dim: usize) -> impl Strategy<Value = ScalarExpr> {
    let m = monomials(dim);
    prop::collection::vec(-2i64..=2, m.len()).prop_map(move |cs| {
        cs.iter().zip(&m).fold(ScalarExpr::zero(), |acc, (c, x)| acc.add(&x.scale(&Gaussian::from_int(*c))))
    })
}

fn sparse_poly(dim: usize) -> impl Strategy<Value = ScalarExpr> {
    prop::option::weighted(0.5, poly(dim)).prop_map(|p| p.unwrap_or_else(ScalarExpr::zero))
}

fn multivector(dim: usize, degree: usize) -> impl Strategy<Value = Multivector> {
    let idx = increasing_tuples(dim, degree);
    prop::collection::vec(sparse_poly(dim), idx.len()).prop_map(move |vs| {
        let c = chart(dim);
        let entries: Vec<(Vec<usize>, ScalarExpr)> = idx.iter().cloned().zip(vs).collect();
        Multivector::from_entries(&c, degree, &entries).unwrap()
    })
}

fn form(dim: usize, degree: usize) -> impl Strategy<Value = DiffForm> {
    let idx = increasing_tuples(dim, degree);
    prop::collection::vec(sparse_poly(dim), idx.len()).prop_map(move |vs| {
        let c = chart(dim);
        let entries: Vec<(Vec<usize>, ScalarExpr)> = idx.iter().cloned().zip(vs).collect();
        DiffForm::from_entries(&c, degree, &entries).unwrap()
    })
}

fn pair(dim: usize) -> impl Strategy<Value = MultiDerivation> {
    (multivector(dim, 2), multivector(dim, 1)).prop_map(|(l, e)| MultiDerivation::new(l, e).unwrap())
}

fn multider(dim: usize, degree: usize) -> impl Strategy<Value = MultiDerivation> {
    (multivector(dim, degree), multivector(dim, degree - 1)).prop_map(|(l, e)| MultiDerivation::new(l, e).unwrap())
}

fn sign(odd: bool) -> Gaussian {
    Gaussian::from_int(if odd { -1 } else { 1 })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, ..ProptestConfig::default() })]

    #[test]
    fn every_bivector_in_two_dimensions_is_poisson(pi in multivector(2, 2)) {
        prop_assert!(is_poisson(&pi).unwrap());
    }

    #[test]
    fn schouten_bracket_is_graded_skew(
        (p, q) in (1usize..=2, 1usize..=2).prop_flat_map(|(a, b)| (multivector(3, a), multivector(3, b)))
    ) {
        let s = sign((p.degree() - 1) * (q.degree() - 1) % 2 == 1);
        let lhs = p.schouten(&q).unwrap();
        let rhs = q.schouten(&p).unwrap().scale(&s);
        prop_assert!(lhs.add(&rhs).unwrap().is_zero());
    }

    #[test]
    fn schouten_bracket_satisfies_graded_jacobi(
        (p, q, r) in (multivector(2, 1), multivector(2, 2), multivector(2, 1))
    ) {
        // [P,[Q,R]] = [[P,Q],R] + (-1)^{(p-1)(q-1)} [Q,[P,R]]
        let s = sign((p.degree() - 1) * (q.degree() - 1) % 2 == 1);
        let lhs = p.schouten(&q.schouten(&r).unwrap()).unwrap();
        let a = p.schouten(&q).unwrap().schouten(&r).unwrap();
        let b = q.schouten(&p.schouten(&r).unwrap()).unwrap().scale(&s);
        prop_assert!(lhs.sub(&a.add(&b).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn exterior_derivative_squares_to_zero(w in form(3, 1)) {
        prop_assert!(w.d().d().is_zero());
    }

    #[test]
    fn cartan_formula(w in form(3, 1), x in multivector(3, 1)) {
        let lhs = w.lie_derivative(&x).unwrap();
        let rhs = w.d().interior(&x).unwrap().add(&w.interior(&x).unwrap().d()).unwrap();
        prop_assert!(lhs.sub(&rhs).unwrap().is_zero());
    }

    #[test]
    fn constant_endomorphisms_have_no_torsion(
        entries in prop::collection::vec(-3i64..=3, 9)
    ) {
        let c = chart(3);
        let m = Matrix::from_fn(3, 3, |a, b| ScalarExpr::int(entries[3 * a + b]));
        prop_assert!(Tensor11::new(&c, m).unwrap().is_nijenhuis());
    }

    #[test]
    fn type_projectors_are_complete_and_orthogonal(a in -3i64..=3, b in -3i64..=3, c in -3i64..=3) {
        // j conjugated by a unimodular constant change of frame
        let ch = Arc::new(Chart::real(&["x", "y", "u", "v"]).unwrap());
        let std = Tensor11::standard_complex(&ch, &[(0, 1), (2, 3)]);
        let mut g = Matrix::identity(4);
        g.set(0, 2, ScalarExpr::int(a));
        g.set(1, 3, ScalarExpr::int(b));
        g.set(0, 3, ScalarExpr::int(c));
        let gi = g.inverse().unwrap();
        let j = Tensor11::new(&ch, g.mul(std.matrix()).unwrap().mul(&gi).unwrap()).unwrap();
        prop_assert!(is_complex_structure(&j).unwrap().holds());
        let (p, q) = (p10(&j), p01(&j));
        let (sum, id) = (p.add(&q).unwrap(), Tensor11::identity(&ch));
        prop_assert_eq!(sum.matrix(), id.matrix());
        prop_assert!(p.compose(&q).unwrap().is_zero());
        let (pp, qq) = (p.compose(&p).unwrap(), q.compose(&q).unwrap());
        prop_assert_eq!(pp.matrix(), p.matrix());
        prop_assert_eq!(qq.matrix(), q.matrix());
    }

    #[test]
    fn poissonization_roundtrip((dim, j) in (1usize..=3).prop_flat_map(|d| (Just(d), pair(d)))) {
        let hp = poissonize(&j).unwrap();
        prop_assert_eq!(hp.chart().dim(), dim + 1);
        let (back, flag) = restrict_homogeneous(&hp.pi, hp.fiber).unwrap();
        prop_assert!(back.sub(&j).unwrap().is_zero());
        let jac = is_jacobi(&j).unwrap();
        prop_assert_eq!(jac, is_poisson(&hp.pi).unwrap());
        prop_assert_eq!(jac, flag);
    }

    #[test]
    fn schouten_jacobi_is_graded_skew(
        (d1, d2) in (1usize..=2, 1usize..=2).prop_flat_map(|(a, b)| (multider(2, a), multider(2, b)))
    ) {
        let s = sign((d1.degree() - 1) * (d2.degree() - 1) % 2 == 1);
        let a = schouten_jacobi(&d1, &d2).unwrap();
        let b = schouten_jacobi(&d2, &d1).unwrap().scale(&s);
        prop_assert!(a.add(&b).unwrap().is_zero());
    }

    #[test]
    fn cotangent_axioms_iff_poisson(pi in multivector(3, 2)) {
        let ok = cotangent_algebroid(&pi).unwrap().check_axioms().holds();
        prop_assert_eq!(ok, is_poisson(&pi).unwrap());
    }

    #[test]
    fn contact_jacobi_roundtrip(h in poly(2)) {
        // theta = dt - p dq + dH(q, p)
        let c = Arc::new(Chart::real(&["t", "q", "p"]).unwrap());
        let h = h.map_vars(&|v| match v {
            holojac::expr::Var::Coord(k) => holojac::expr::Var::Coord(k + 1),
            other => other,
        });
        let theta = DiffForm::from_components(&c, &[ScalarExpr::one(), parse("-p", &c).unwrap(), ScalarExpr::zero()])
            .add(&DiffForm::exact(&c, &h))
            .unwrap();
        let j = contact_to_jacobi(&theta).unwrap();
        prop_assert!(is_jacobi(&j).unwrap());
        prop_assert!(jacobi_to_contact(&j).unwrap().sub(&theta).unwrap().is_zero());
    }

    #[test]
    fn expressions_print_and_parse_back(num in poly(3), den in poly(3)) {
        let c = chart(3);
        let d = den.mul(&den).add(&ScalarExpr::one());
        let e = num.div(&d).unwrap().add(&num.mul(&ScalarExpr::i()));
        let text = e.display(&c).to_string();
        prop_assert_eq!(parse(&text, &c).unwrap(), e);
    }

    #[test]
    fn structure_files_roundtrip(pi in multivector(3, 2), w in form(3, 1), j in pair(3)) {
        let c = chart(3);
        let mut doc = Document::new();
        doc.add_chart(ChartDecl::real(MAIN, &c).unwrap());
        doc.push("pi", MAIN, Value::Multivector(pi.clone())).unwrap()
            .push("w", MAIN, Value::Form(w.clone())).unwrap()
            .push("J", MAIN, Value::MultiDerivation(j.clone())).unwrap();
        let text = doc.to_toml();
        let back = Document::parse(&text).unwrap();
        prop_assert_eq!(back.to_toml(), text);
        match (&back.objects[0].value, &back.objects[1].value, &back.objects[2].value) {
            (Value::Multivector(p2), Value::Form(w2), Value::MultiDerivation(j2)) => {
                prop_assert!(p2.sub(&pi).unwrap().is_zero());
                prop_assert!(w2.sub(&w).unwrap().is_zero());
                prop_assert!(j2.sub(&j).unwrap().is_zero());
            }
            _ => prop_assert!(false, "kinds changed"),
        }
    }
}

#[test]
fn standard_chart_projectors_on_c1() {
    let c = Arc::new(Chart::real(&["x", "y"]).unwrap());
    let cc = ComplexChart::standard(&c, &[(0, 1)]).unwrap();
    let p = p10(cc.j());
    let e = cc.frame10()[0].clone();
    assert_eq!(p.apply_dense(&e), e);
}
