use holojac::correspondences::{check_holomorphic_jacobi_equivalences, circle_bundle_structures, darboux_example};
use holojac::jacobi::{is_jacobi, j_phi, jacobi_to_contact, schouten_jacobi, DlSection, MultiDerivation};
use holojac::tensor::DiffForm;
use holojac::{parse, Gaussian, ScalarExpr};

fn form(c: &std::sync::Arc<holojac::Chart>, comps: &[&str]) -> DiffForm {
    let v: Vec<ScalarExpr> = comps.iter().map(|e| parse(e, c).unwrap()).collect();
    DiffForm::from_components(c, &v)
}

#[test]
fn contact_form_in_real_coordinates() {
    let ex = darboux_example(1).unwrap();
    let c = ex.base.chart();
    // dt - P dz with t = r + i s, z = x + i y, P = m + i q
    let expected = form(c, &["1", "i", "-(m + i*q)", "-i*(m + i*q)", "0", "0"]);
    assert!(ex.theta.sub(&expected).unwrap().is_zero());
    assert!(ex.theta.sub(&ex.theta_r.add(&ex.theta_s.mul_fn(&ScalarExpr::i())).unwrap()).unwrap().is_zero());
}

#[test]
fn printed_real_and_imaginary_parts() {
    let ex = darboux_example(1).unwrap();
    let c = ex.base.chart();
    assert!(ex.theta_r.sub(&form(c, &["1", "0", "-m", "q", "0", "0"])).unwrap().is_zero());
    assert!(ex.theta_s.sub(&form(c, &["0", "1", "-q", "-m", "0", "0"])).unwrap().is_zero());
}

#[test]
fn symplectic_form_matches_printed_expression() {
    let ex = darboux_example(1).unwrap();
    let c = ex.ext.chart().clone();
    let w = ex.ext.holomorphic_coordinates().last().unwrap().clone();
    let dw = DiffForm::exact(&c, &w);
    let dp = DiffForm::exact(&c, &parse("m + i*q", &c).unwrap());
    let dz = DiffForm::exact(&c, &parse("x + i*y", &c).unwrap());
    let theta = ex.theta.embed(&c).unwrap();
    let printed = dw.wedge(&theta).unwrap().sub(&dp.wedge(&dz).unwrap().mul_fn(&w)).unwrap();
    assert!(ex.omega.sub(&printed).unwrap().is_zero());
    assert!(ex.omega.d().is_zero());
    assert!(ex.omega.lie_derivative(&ex.h).unwrap().sub(&ex.omega).unwrap().is_zero());
}

#[test]
fn circle_bundle_contact_forms() {
    let ex = darboux_example(1).unwrap();
    for t in [&ex.vartheta, &ex.vartheta_j] {
        assert!(!t.wedge(&t.d()).unwrap().is_zero());
    }
    let cb = circle_bundle_structures(&ex.jacobi, &ex.base).unwrap();
    assert_eq!(cb.chart().as_ref(), ex.circle.as_ref());
    let four = Gaussian::from_int(4);
    let from_prime = jacobi_to_contact(&cb.j_hat_prime).unwrap();
    let from_hat = jacobi_to_contact(&cb.j_hat).unwrap();
    assert!(from_prime.sub(&ex.vartheta.scale(&four)).unwrap().is_zero());
    assert!(from_hat.sub(&ex.vartheta_j.scale(&four)).unwrap().is_zero());
}

#[test]
fn bi_hamiltonian_pair_on_the_circle_bundle() {
    let ex = darboux_example(1).unwrap();
    let cb = circle_bundle_structures(&ex.jacobi, &ex.base).unwrap();
    let jj = j_phi(&cb.j_hat, &cb.endo).unwrap();
    assert!(jj.sub(&cb.j_hat_prime).unwrap().is_zero());
    for s in [&cb.j_hat, &jj, &cb.j_hat.add(&jj).unwrap()] {
        assert!(is_jacobi(s).unwrap());
    }
    let dim = cb.chart().dim();
    let unit = cb.endo.apply(&DlSection::frame(dim, dim));
    let one: MultiDerivation = unit.as_derivation(cb.chart()).unwrap();
    assert!(schouten_jacobi(&one, &jj).unwrap().sub(&cb.j_hat).unwrap().is_zero());
    assert!(schouten_jacobi(&one, &cb.j_hat).unwrap().add(&jj).unwrap().is_zero());
}

#[test]
fn theorem_verdicts_on_the_darboux_chart() {
    let ex = darboux_example(1).unwrap();
    let rep = check_holomorphic_jacobi_equivalences(&ex.jacobi, &ex.base).unwrap();
    assert!(rep.all_hold(), "{:?}", rep);
}

#[test]
fn flat_line_example() {
    let ex = darboux_example(0).unwrap();
    let cb = circle_bundle_structures(&ex.jacobi, &ex.base).unwrap();
    assert!(is_jacobi(&cb.j_hat).unwrap());
    let four = Gaussian::from_int(4);
    assert!(jacobi_to_contact(&cb.j_hat_prime).unwrap().sub(&ex.vartheta.scale(&four)).unwrap().is_zero());
}

fn top_power(t: &DiffForm, k: usize) -> DiffForm {
    let dt = t.d();
    (0..k).fold(t.clone(), |acc, _| acc.wedge(&dt).unwrap())
}

#[test]
fn circle_bundle_forms_are_maximally_nondegenerate() {
    let ex = darboux_example(1).unwrap();
    for t in [&ex.vartheta, &ex.vartheta_j] {
        let top = top_power(t, 3);
        assert_eq!(top.degree(), ex.circle.dim());
        assert!(!top.is_zero());
    }
}

#[test]
fn two_pair_darboux_chart() {
    let ex = darboux_example(2).unwrap();
    assert_eq!(ex.base.chart().dim(), 10);
    // theta = dt - P1 dz1 - P2 dz2 is a holomorphic contact form of complex dimension 5
    assert!(!top_power(&ex.theta, 2).is_zero());
    assert!(ex.theta.sub(&ex.theta_r.add(&ex.theta_s.mul_fn(&ScalarExpr::i())).unwrap()).unwrap().is_zero());
    let rep = check_holomorphic_jacobi_equivalences(&ex.jacobi, &ex.base).unwrap();
    assert!(rep.all_hold(), "{:?}", rep);
}
