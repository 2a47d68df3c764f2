//! Acceptance criteria, one line each. Run with `--nocapture` to see the
//! table; the test fails if any criterion fails.

use holojac::algebroid::{cotangent_algebroid, holomorphic_cotangent_real_imaginary};
use holojac::complexgeom::{is_holomorphic, ComplexChart};
use holojac::corpus::{self, SuiteReport};
use holojac::correspondences::{circle_bundle_structures, darboux_example, heisenberg_constants, lie_poisson, sl2_constants};
use holojac::jacobi::{is_jacobi, j_phi, schouten_jacobi, DlSection};
use holojac::tensor::{is_poisson, pi_phi, DiffForm, Multivector};
use holojac::{parse, Chart, Gaussian, ScalarExpr};
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

const SEED: u64 = 2024;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn form(c: &Arc<Chart>, comps: &[&str]) -> DiffForm {
    let v: Vec<ScalarExpr> = comps.iter().map(|e| parse(e, c).unwrap()).collect();
    DiffForm::from_components(c, &v)
}

fn darboux_fixture() -> Outcome {
    let ex = darboux_example(1).map_err(|e| e.to_string())?;
    let c = ex.base.chart().clone();
    let theta = form(&c, &["1", "i", "-(m + i*q)", "-i*(m + i*q)", "0", "0"]);
    ensure(ex.theta == theta, "theta != dt - P dz")?;
    let tr = form(&c, &["1", "0", "-m", "q", "0", "0"]);
    let ts = form(&c, &["0", "1", "-q", "-m", "0", "0"]);
    ensure(ex.theta_r == tr && ex.theta_s == ts, "theta_r, theta_s differ from the printed forms")?;

    let e = ex.ext.chart().clone();
    let w = ex.ext.holomorphic_coordinates().last().unwrap().clone();
    let dw = DiffForm::exact(&e, &w);
    let dp = DiffForm::exact(&e, &parse("m + i*q", &e).unwrap());
    let dz = DiffForm::exact(&e, &parse("x + i*y", &e).unwrap());
    let printed = dw.wedge(&theta.embed(&e).unwrap()).unwrap().sub(&dp.wedge(&dz).unwrap().mul_fn(&w)).unwrap();
    ensure(ex.omega.sub(&printed).unwrap().is_zero(), "Omega differs from dw ^ theta - w dP ^ dz")?;
    ensure(ex.omega.d().is_zero(), "d Omega != 0")?;
    ensure(ex.omega.lie_derivative(&ex.h).unwrap().sub(&ex.omega).unwrap().is_zero(), "L_H Omega != Omega")?;

    let cc = ex.circle.clone();
    let (r, s) = (tr.embed(&cc).unwrap(), ts.embed(&cc).unwrap());
    let cos = parse("cos(psi)", &cc).unwrap();
    let sin = parse("sin(psi)", &cc).unwrap();
    let vt = r.mul_fn(&cos).sub(&s.mul_fn(&sin)).unwrap();
    let vtj = r.mul_fn(&sin).neg().sub(&s.mul_fn(&cos)).unwrap();
    ensure(ex.vartheta.sub(&vt).unwrap().is_zero(), "vartheta != cos psi theta_r - sin psi theta_s")?;
    ensure(ex.vartheta_j.sub(&vtj).unwrap().is_zero(), "vartheta_j != -sin psi theta_r - cos psi theta_s")?;
    for (name, t) in [("vartheta", &ex.vartheta), ("vartheta_j", &ex.vartheta_j)] {
        ensure(!t.wedge(&t.d()).unwrap().is_zero(), format!("{name} ^ d {name} = 0"))?;
    }
    Ok("theta, Omega, vartheta, vartheta_j exact; contact, closed, L_H Omega = Omega".into())
}

fn bi_hamiltonian() -> Outcome {
    let ex = darboux_example(1).map_err(|e| e.to_string())?;
    let cb = circle_bundle_structures(&ex.jacobi, &ex.base).map_err(|e| e.to_string())?;
    let jj = j_phi(&cb.j_hat, &cb.endo).map_err(|e| e.to_string())?;
    let sum = cb.j_hat.add(&jj).unwrap();
    for (name, s) in [("J_hat", &cb.j_hat), ("J_hat_j", &jj), ("J_hat + J_hat_j", &sum)] {
        ensure(is_jacobi(s).unwrap(), format!("{name} is not Jacobi"))?;
    }
    let dim = cb.chart().dim();
    let one = cb.endo.apply(&DlSection::frame(dim, dim)).as_derivation(cb.chart()).unwrap();
    ensure(schouten_jacobi(&one, &jj).unwrap().sub(&cb.j_hat).unwrap().is_zero(), "[j_hat 1, J_hat_j] != J_hat")?;
    ensure(schouten_jacobi(&one, &cb.j_hat).unwrap().add(&jj).unwrap().is_zero(), "[j_hat 1, J_hat] != -J_hat_j")?;
    Ok("three Jacobi structures, both bracket identities".into())
}

fn suite_summary(r: &SuiteReport) -> String {
    format!("{} {} cases", r.name, r.cases)
}

fn suite_ok(r: SuiteReport, min_cases: usize) -> Result<SuiteReport, String> {
    ensure(r.cases >= min_cases, format!("{}: only {} cases", r.name, r.cases))?;
    ensure(r.failures.is_empty(), format!("{}: {}", r.name, r.failures.join("; ")))?;
    Ok(r)
}

/// Every generator class occurs, and both verdicts occur.
fn mixed(r: &SuiteReport, classes: &[&str]) -> Result<(), String> {
    for c in classes {
        ensure(r.classes.keys().any(|k| k.starts_with(&format!("{c}/"))), format!("{}: no {c} cases", r.name))?;
    }
    for v in ["true", "false"] {
        ensure(r.classes.keys().any(|k| k.ends_with(&format!("/{v}"))), format!("{}: no {v} verdicts", r.name))?;
    }
    Ok(())
}

fn equivalences() -> Outcome {
    let base = ["valid", "type-broken", "CR-broken", "Jacobi-broken"];
    let hp = suite_ok(corpus::hp_equivalence_suite(SEED, 24).map_err(|e| e.to_string())?, 20)?;
    let hhp = suite_ok(corpus::homogeneous_equivalence_suite(SEED, 25).map_err(|e| e.to_string())?, 20)?;
    let hj = suite_ok(corpus::hj_equivalence_suite(SEED, 24).map_err(|e| e.to_string())?, 20)?;
    for r in [&hp, &hhp, &hj] {
        mixed(r, &base)?;
    }
    Ok(format!("{}, {}, {}; zero disagreements", suite_summary(&hp), suite_summary(&hhp), suite_summary(&hj)))
}

fn schouten_jacobi_algebra() -> Outcome {
    let r = suite_ok(corpus::schouten_jacobi_suite(SEED, 50, 50).map_err(|e| e.to_string())?, 100)?;
    Ok(format!("{} (50 pairs + 50 triples), all identities exact", suite_summary(&r)))
}

fn poissonization() -> Outcome {
    let r = suite_ok(corpus::poissonization_suite(SEED, 50).map_err(|e| e.to_string())?, 50)?;
    ensure(r.classes.contains_key("jacobi=true") && r.classes.contains_key("jacobi=false"), "corpus lacks one verdict")?;
    Ok(format!("{}, roundtrip exact, Jacobi iff Poisson", suite_summary(&r)))
}

/// Both halves are compared with the stated tables; when the imaginary half
/// differs, the report says which sign it matches.
fn real_cotangent() -> Outcome {
    let c = Arc::new(Chart::real(&["x", "y", "m", "q"]).unwrap());
    let cc = ComplexChart::standard(&c, &[(0, 1), (2, 3)]).unwrap();
    let e = |k: usize| Multivector::vector(&c, &cc.frame10()[k]);
    let four = Gaussian::from_int(4);
    let mut bad = Vec::new();
    for (name, f) in [("d_z ^ d_p", "1"), ("z^2 d_z ^ d_p", "(x + i*y)^2")] {
        let big = e(0).wedge(&e(1)).unwrap().mul_fn(&parse(f, &c).unwrap());
        let (re, im) = holomorphic_cotangent_real_imaginary(&big, &cc).map_err(|e| e.to_string())?;
        let pi = big.im();
        let pj4 = pi_phi(&pi, cc.j()).unwrap().scale(&four);
        let pi4 = pi.scale(&four);
        if let Some(d) = re.first_difference(&cotangent_algebroid(&pj4).unwrap()) {
            bad.push(format!("{name}: real part != (T*M)_(4 pi_j): {d}"));
        }
        if let Some(d) = im.first_difference(&cotangent_algebroid(&pi4).unwrap()) {
            let neg = im.same_as(&cotangent_algebroid(&pi4.neg()).unwrap());
            bad.push(format!(
                "{name}: imaginary part != (T*M)_(4 pi): {d}{}",
                if neg { "; it equals (T*M)_(-4 pi) exactly" } else { "" }
            ));
        }
    }
    if bad.is_empty() {
        Ok("real and imaginary tables equal (T*M)_(4 pi_j), (T*M)_(4 pi)".into())
    } else {
        Err(bad.join(" | "))
    }
}

fn algebroid_axioms() -> Outcome {
    let r = suite_ok(corpus::algebroid_suite(SEED, 20).map_err(|e| e.to_string())?, 40)?;
    for k in ["cotangent/poisson=true", "cotangent/poisson=false", "jet/jacobi=true", "jet/jacobi=false"] {
        ensure(r.classes.contains_key(k), format!("corpus has no {k} case"))?;
    }
    Ok(format!("{} (20 cotangent + 20 jet), axioms iff Poisson/Jacobi", suite_summary(&r)))
}

fn lie_poisson_fixtures() -> Outcome {
    for (name, c) in [("sl(2,C)", sl2_constants()), ("Heisenberg", heisenberg_constants())] {
        let lp = lie_poisson(&c).map_err(|e| e.to_string())?;
        ensure(is_holomorphic(&lp.big_pi, &lp.cc).unwrap().holds(), format!("{name}: Pi not holomorphic"))?;
        ensure(is_poisson(&lp.big_pi).unwrap(), format!("{name}: [Pi, Pi] != 0"))?;
        let l = lp.big_pi.lie_derivative(&lp.h).unwrap().add(&lp.big_pi).unwrap();
        ensure(l.is_zero(), format!("{name}: L_H Pi != -Pi"))?;
    }
    Ok("sl(2,C) and Heisenberg: holomorphic, Poisson, L_H Pi = -Pi".into())
}

fn run(args: &[&str]) -> (Option<i32>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_holojac")).args(args).output().expect("binary runs");
    (out.status.code(), out.stdout)
}

fn read_dir(d: &std::path::Path) -> Vec<(String, Vec<u8>)> {
    let mut v: Vec<(String, Vec<u8>)> = std::fs::read_dir(d)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap())
        })
        .collect();
    v.sort();
    v
}

fn cli_determinism() -> Outcome {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let s = |p: &std::path::Path| p.to_str().unwrap().to_string();
    ensure(run(&["examples", &s(a.path())]).0 == Some(0), "examples exits nonzero")?;
    ensure(run(&["examples", &s(b.path())]).0 == Some(0), "examples exits nonzero")?;
    let (ga, gb) = (read_dir(a.path()), read_dir(b.path()));
    ensure(ga.len() >= 2 && ga == gb, "gallery differs between runs")?;
    ensure(run(&["examples", &s(a.path())]).0 == Some(0) && read_dir(a.path()) == ga, "rewrite changes bytes")?;
    for name in ["darboux_n1.toml", "sl2_lie_poisson.toml"] {
        ensure(ga.iter().any(|(n, _)| n == name), format!("gallery lacks {name}"))?;
    }

    let f = |n: &str| s(&a.path().join(n));
    let pass = run(&["check", "is-jacobi", &f("contact_r3.toml")]);
    let fail = run(&["check", "is-jacobi", &f("nonjacobi_r3.toml")]);
    let broken = a.path().join("broken.toml");
    std::fs::write(&broken, "[chart]\ncoords = [\"x\"\n").unwrap();
    let parse_err = run(&["check", "is-jacobi", &s(&broken)]);
    ensure(pass.0 == Some(0), format!("pass case exited {:?}", pass.0))?;
    ensure(fail.0 == Some(1), format!("fail case exited {:?}", fail.0))?;
    ensure(String::from_utf8_lossy(&fail.1).contains("[J, J] Lambda[x,y,z]"), "fail case does not print the component")?;
    ensure(parse_err.0 == Some(2), format!("parse-error case exited {:?}", parse_err.0))?;
    let j1 = run(&["check", "hP-equivalences", &f("zero_pi.toml"), "--format", "json"]);
    let j2 = run(&["check", "hP-equivalences", &f("zero_pi.toml"), "--format", "json"]);
    ensure(j1.0 == Some(0) && j1.1 == j2.1, "structured output differs between runs")?;
    Ok(format!("{} gallery files byte-identical; exit codes 0/1/2", ga.len()))
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("Darboux fixture reproduction", darboux_fixture),
        ("bi-Hamiltonian circle-bundle check", bi_hamiltonian),
        ("theorem equivalence agreement", equivalences),
        ("Schouten-Jacobi algebra suite", schouten_jacobi_algebra),
        ("Poissonization roundtrip", poissonization),
        ("real/imaginary cotangent algebroids, factor 4", real_cotangent),
        ("algebroid axiom equivalences", algebroid_axioms),
        ("Lie-Poisson validators", lie_poisson_fixtures),
        ("CLI determinism and exit codes", cli_determinism),
    ];
    let mut failed = Vec::new();
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = f();
        let secs = t.elapsed().as_secs_f64();
        match &r {
            Ok(msg) => println!("criterion {} {name}: PASS ({secs:.1}s) {msg}", k + 1),
            Err(msg) => {
                println!("criterion {} {name}: FAIL ({secs:.1}s) {msg}", k + 1);
                failed.push(k + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
