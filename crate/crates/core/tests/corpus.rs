use holojac::corpus::{
    algebroid_suite, homogeneous_equivalence_suite, hj_equivalence_suite, hp_equivalence_suite, poissonization_suite,
    schouten_jacobi_suite, SuiteReport,
};

fn assert_mixed(rep: &SuiteReport, expected: &[&str]) {
    assert!(rep.passed(), "{}: {:?}", rep.name, rep.failures);
    for k in expected {
        assert!(rep.classes.contains_key(*k), "{} lacks {k}: {:?}", rep.name, rep.classes);
    }
}

#[test]
fn suites_are_deterministic_in_the_seed() {
    assert_eq!(algebroid_suite(11, 6).unwrap(), algebroid_suite(11, 6).unwrap());
    assert_eq!(hp_equivalence_suite(3, 8).unwrap(), hp_equivalence_suite(3, 8).unwrap());
}

#[test]
fn holomorphic_poisson_corpus_has_both_verdicts() {
    let rep = hp_equivalence_suite(7, 12).unwrap();
    assert_eq!(rep.cases, 12);
    assert_mixed(&rep, &["valid/true", "type-broken/false", "CR-broken/false", "Jacobi-broken/false"]);
}

#[test]
fn homogeneous_corpus_has_both_verdicts() {
    let rep = homogeneous_equivalence_suite(7, 10).unwrap();
    assert_mixed(&rep, &["valid/true", "homogeneity-broken/false"]);
}

#[test]
fn holomorphic_jacobi_corpus_has_both_verdicts() {
    let rep = hj_equivalence_suite(7, 8).unwrap();
    assert_mixed(&rep, &["valid/true", "CR-broken/false"]);
}

#[test]
fn real_corpora_pass() {
    assert!(schouten_jacobi_suite(1, 10, 4).unwrap().passed());
    let p = poissonization_suite(1, 16).unwrap();
    assert_mixed(&p, &["jacobi=true", "jacobi=false"]);
    let a = algebroid_suite(1, 12).unwrap();
    assert_mixed(&a, &["cotangent/poisson=true", "cotangent/poisson=false", "jet/jacobi=true", "jet/jacobi=false"]);
}

#[test]
fn zero_structures_satisfy_every_characterization() {
    use holojac::complexgeom::check_hp_equivalences;
    use holojac::corpus::complex_chart;
    use holojac::correspondences::check_holomorphic_jacobi_equivalences;
    use holojac::jacobi::MultiDerivation;
    use holojac::tensor::Multivector;
    for n in 1..=2 {
        let cc = complex_chart(n);
        let hp = check_hp_equivalences(&Multivector::zero(cc.chart(), 2), &cc).unwrap();
        assert!(hp.all_hold(), "{hp:?}");
        let hj = check_holomorphic_jacobi_equivalences(&MultiDerivation::zero(cc.chart(), 2), &cc).unwrap();
        assert!(hj.all_hold(), "{hj:?}");
    }
}
