//! The check registry: object selection and per-object evaluation.

use crate::report::{Line, Outcome};
use crate::CliError;
use holojac::algebroid::{check_flat_connection, cotangent_algebroid, holomorphic_cotangent_real_imaginary, jet_algebroid, AlgebroidData};
use holojac::complexgeom::{
    check_homogeneous_equivalences, check_hp_equivalences, holomorphic_bivector, is_complex_structure, is_holomorphic,
    ComplexChart,
};
use holojac::corpus::{self, SuiteReport};
use holojac::correspondences::{
    check_holomorphic_jacobi_equivalences, circle_bundle_structures, lie_poisson, poissonize, restrict_homogeneous,
};
use holojac::format::{Document, Object, Value};
use holojac::jacobi::{is_jacobi, is_jacobi_nijenhuis, j_phi, schouten_jacobi, DlSection, MultiDerivation};
use holojac::report::EquivalenceReport;
use holojac::tensor::{is_poisson, pi_phi, pn_compatible, DiffForm, Multivector, Tensor11};
use holojac::{Chart, Gaussian};

pub struct CheckInfo {
    pub name: &'static str,
    pub input: &'static str,
    pub summary: &'static str,
}

pub const CHECKS: &[CheckInfo] = &[
    CheckInfo { name: "is-poisson", input: "each bivector", summary: "[pi, pi] = 0" },
    CheckInfo { name: "is-jacobi", input: "each bi-derivation", summary: "[J, J]^SJ = 0" },
    CheckInfo { name: "is-nijenhuis", input: "each tensor11", summary: "vanishing Nijenhuis torsion" },
    CheckInfo { name: "is-complex-structure", input: "each tensor11", summary: "j^2 = -1 and N_j = 0" },
    CheckInfo { name: "is-contact", input: "each one-form", summary: "theta ^ (d theta)^n != 0" },
    CheckInfo { name: "is-holomorphic", input: "each multivector on a complex chart", summary: "pure type (k,0) with holomorphic coefficients" },
    CheckInfo { name: "pn-compatible", input: "one bivector, one tensor11", summary: "Poisson-Nijenhuis compatibility" },
    CheckInfo { name: "hP-equivalences", input: "each bivector on a complex chart", summary: "holomorphic Poisson / Poisson-Nijenhuis / generalized complex" },
    CheckInfo { name: "hhP-equivalences", input: "one bivector, one vector, complex chart", summary: "homogeneous versions of hP-equivalences" },
    CheckInfo { name: "hJ-equivalences", input: "each bi-derivation on a complex chart", summary: "holomorphic Jacobi / Poissonization / circle bundle" },
    CheckInfo { name: "jacobi-nijenhuis", input: "one bi-derivation, one endo-dl", summary: "Jacobi-Nijenhuis conditions" },
    CheckInfo { name: "generalized-complex", input: "each tangent genblock", summary: "generalized complex structure on TM + T*M" },
    CheckInfo { name: "generalized-contact", input: "each jacobi genblock", summary: "generalized contact structure on DL + J^1 L" },
    CheckInfo { name: "poissonization-roundtrip", input: "each bi-derivation", summary: "restrict(poissonize(J)) = J and Jacobi iff Poisson" },
    CheckInfo { name: "algebroid-axioms", input: "each algebroid", summary: "anchor morphism and Jacobi identity" },
    CheckInfo { name: "cotangent-algebroid", input: "each bivector", summary: "axioms of (T*M)_pi, agreeing with [pi, pi] = 0" },
    CheckInfo { name: "jet-algebroid", input: "each bi-derivation", summary: "axioms of J^1 L, agreeing with [J, J]^SJ = 0" },
    CheckInfo { name: "real-cotangent", input: "each bivector on a complex chart", summary: "real/imaginary algebroids of Pi against (T*M)_{4 pi_j}, (T*M)_{4 pi}" },
    CheckInfo { name: "flat-connection", input: "each bi-derivation on a complex chart", summary: "flat DL-connection of a holomorphic Jacobi structure" },
    CheckInfo { name: "bi-hamiltonian", input: "each bi-derivation on a complex chart", summary: "circle-bundle pair J_hat, J_hat_j and their brackets with j_hat 1" },
    CheckInfo { name: "lie-poisson", input: "each lie-algebra", summary: "holomorphic, Poisson, L_H Pi = -Pi" },
    CheckInfo { name: "suite-schouten", input: "none (seeded)", summary: "graded skew/Jacobi and evaluation oracle, 50 pairs + 50 triples" },
    CheckInfo { name: "suite-poissonization", input: "none (seeded)", summary: "Poissonization roundtrip on 50 pairs" },
    CheckInfo { name: "suite-equivalences", input: "none (seeded)", summary: "verdict agreement, 20 cases per theorem" },
    CheckInfo { name: "suite-algebroids", input: "none (seeded)", summary: "algebroid axioms vs Poisson/Jacobi, 20 cases each" },
];

pub fn lookup(name: &str) -> Option<&'static CheckInfo> {
    CHECKS.iter().find(|c| c.name == name)
}

pub(crate) type Eval = holojac::Result<(Vec<Line>, Vec<String>)>;
pub(crate) type Job = Box<dyn FnOnce() -> Eval + Send>;

pub(crate) fn is_suite(name: &str) -> bool {
    name.starts_with("suite-")
}

/// Suite outcomes for a seeded check.
pub(crate) fn suite_jobs(name: &str, seed: u64) -> Vec<(String, Job)> {
    let suites: Vec<(&str, Job)> = match name {
        "suite-schouten" => vec![("schouten-jacobi", Box::new(move || suite(corpus::schouten_jacobi_suite(seed, 50, 50))))],
        "suite-poissonization" => vec![("poissonization", Box::new(move || suite(corpus::poissonization_suite(seed, 50))))],
        "suite-equivalences" => vec![
            ("hP", Box::new(move || suite(corpus::hp_equivalence_suite(seed, 20)))),
            ("hhP", Box::new(move || suite(corpus::homogeneous_equivalence_suite(seed, 20)))),
            ("hJ", Box::new(move || suite(corpus::hj_equivalence_suite(seed, 20)))),
        ],
        "suite-algebroids" => vec![("algebroids", Box::new(move || suite(corpus::algebroid_suite(seed, 20))))],
        _ => Vec::new(),
    };
    suites.into_iter().map(|(s, j)| (format!("{s} (seed {seed})"), j)).collect()
}

fn suite(r: holojac::Result<SuiteReport>) -> Eval {
    let r = r?;
    let label = format!("no failures over {} cases", r.cases);
    let notes = r.classes.iter().map(|(k, v)| format!("class {k}: {v}")).collect();
    Ok((vec![Line::from_failures(&label, r.failures)], notes))
}

/// Jobs for one parsed file.
pub(crate) fn select(name: &str, doc: &Document, file: &str) -> Result<Vec<(String, Job)>, CliError> {
    let subject = |o: &Object| format!("{file}:{}", o.name);
    let mut jobs: Vec<(String, Job)> = Vec::new();
    let mut each = |pred: &dyn Fn(&Object) -> bool, what: &str, make: &dyn Fn(&Object) -> Job| -> Result<(), CliError> {
        let hits: Vec<&Object> = doc.objects.iter().filter(|o| pred(o)).collect();
        if hits.is_empty() {
            return Err(CliError::Input(format!("{file}: no {what} for `{name}`")));
        }
        for o in hits {
            jobs.push((subject(o), make(o)));
        }
        Ok(())
    };
    let cc_of = |o: &Object| doc.chart_of(o).and_then(|d| d.cc.clone());
    match name {
        "is-poisson" => each(&|o| bivector(o).is_some(), "bivector", &|o| {
            let pi = bivector(o).unwrap().clone();
            Box::new(move || run_is_poisson(&pi))
        })?,
        "is-jacobi" => each(&|o| biderivation(o).is_some(), "bi-derivation", &|o| {
            let j = biderivation(o).unwrap().clone();
            Box::new(move || run_is_jacobi(&j))
        })?,
        "is-nijenhuis" => each(&|o| tensor11(o).is_some(), "tensor11", &|o| {
            let t = tensor11(o).unwrap().clone();
            Box::new(move || run_is_nijenhuis(&t))
        })?,
        "is-complex-structure" => each(&|o| tensor11(o).is_some(), "tensor11", &|o| {
            let t = tensor11(o).unwrap().clone();
            Box::new(move || {
                let r = is_complex_structure(&t)?;
                Ok((vec![Line::new("j^2 = -1", r.squares_to_minus_one, vec![]), Line::new("N_j = 0", r.torsion_free, vec![])], vec![]))
            })
        })?,
        "is-contact" => each(&|o| matches!(&o.value, Value::Form(f) if f.degree() == 1), "one-form", &|o| {
            let Value::Form(f) = &o.value else { unreachable!() };
            let (f, m) = (f.clone(), cc_of(o).map(|cc| cc.complex_dim()));
            Box::new(move || run_is_contact(&f, m))
        })?,
        "is-holomorphic" => each(&|o| matches!(&o.value, Value::Multivector(_)) && cc_of(o).is_some(), "multivector on a complex chart", &|o| {
            let Value::Multivector(m) = &o.value else { unreachable!() };
            let (m, cc) = (m.clone(), cc_of(o).unwrap());
            Box::new(move || {
                let r = is_holomorphic(&m, &cc)?;
                Ok((split(&[("pure type (k,0)", r.pure_type), ("Cauchy-Riemann", r.cauchy_riemann)], r.failures), vec![]))
            })
        })?,
        "pn-compatible" => {
            let pi = one(doc, file, "bivector", &|o| bivector(o).is_some())?;
            let phi = one(doc, file, "tensor11", &|o| tensor11(o).is_some())?;
            same(file, pi, phi)?;
            let (p, t) = (bivector(pi).unwrap().clone(), tensor11(phi).unwrap().clone());
            jobs.push((format!("{file}:{}+{}", pi.name, phi.name), Box::new(move || {
                let r = pn_compatible(&p, &t)?;
                Ok((split(&[("pi^sharp o phi^* = phi o pi^sharp", r.sharp_commutes), ("concomitant vanishes", r.concomitant_vanishes)], r.failures), vec![]))
            })));
        }
        "hP-equivalences" => each(&|o| bivector(o).is_some() && cc_of(o).is_some(), "bivector on a complex chart", &|o| {
            let (pi, cc) = (bivector(o).unwrap().clone(), cc_of(o).unwrap());
            Box::new(move || equivalences(check_hp_equivalences(&pi, &cc)?))
        })?,
        "hhP-equivalences" => {
            let pi = one(doc, file, "bivector on a complex chart", &|o| bivector(o).is_some() && cc_of(o).is_some())?;
            let eta = one(doc, file, "vector on a complex chart", &|o| vector(o).is_some() && cc_of(o).is_some())?;
            same(file, pi, eta)?;
            let (p, e, cc) = (bivector(pi).unwrap().clone(), vector(eta).unwrap().clone(), cc_of(pi).unwrap());
            jobs.push((format!("{file}:{}+{}", pi.name, eta.name), Box::new(move || equivalences(check_homogeneous_equivalences(&p, &cc, &e)?))));
        }
        "hJ-equivalences" => each(&|o| biderivation(o).is_some() && cc_of(o).is_some(), "bi-derivation on a complex chart", &|o| {
            let (j, cc) = (biderivation(o).unwrap().clone(), cc_of(o).unwrap());
            Box::new(move || equivalences(check_holomorphic_jacobi_equivalences(&j, &cc)?))
        })?,
        "jacobi-nijenhuis" => {
            let jo = one(doc, file, "bi-derivation", &|o| biderivation(o).is_some())?;
            let po = one(doc, file, "endo-dl", &|o| matches!(o.value, Value::EndoDl(_)))?;
            same(file, jo, po)?;
            let j = biderivation(jo).unwrap().clone();
            let Value::EndoDl(phi) = &po.value else { unreachable!() };
            let phi = phi.clone();
            jobs.push((format!("{file}:{}+{}", jo.name, po.name), Box::new(move || {
                let r = is_jacobi_nijenhuis(&j, &phi)?;
                let conds = [
                    ("[J, J]^SJ = 0", r.jacobi),
                    ("J^sharp o phi^dagger = phi o J^sharp", r.sharp_commutes),
                    ("concomitant vanishes", r.concomitant_vanishes),
                    ("torsion of phi vanishes", r.torsion_free),
                ];
                Ok((split(&conds, r.failures), vec![]))
            })));
        }
        "generalized-complex" => each(&|o| matches!(o.value, Value::GenTangent(_)), "tangent genblock", &|o| {
            let Value::GenTangent(g) = &o.value else { unreachable!() };
            let g = g.clone();
            Box::new(move || {
                let r = g.is_generalized_complex();
                Ok((split(&[("J^2 = -1", r.squares_to_minus_one), ("skew for the pairing", r.skew), ("torsion vanishes", r.integrable)], r.failures), vec![]))
            })
        })?,
        "generalized-contact" => each(&|o| matches!(o.value, Value::GenJacobi(_)), "jacobi genblock", &|o| {
            let Value::GenJacobi(g) = &o.value else { unreachable!() };
            let g = g.clone();
            Box::new(move || {
                let r = g.is_generalized_contact();
                Ok((split(&[("K^2 = -1", r.squares_to_minus_one), ("skew for the pairing", r.skew), ("torsion vanishes", r.integrable)], r.failures), vec![]))
            })
        })?,
        "poissonization-roundtrip" => each(&|o| biderivation(o).is_some(), "bi-derivation", &|o| {
            let j = biderivation(o).unwrap().clone();
            Box::new(move || run_poissonization(&j))
        })?,
        "algebroid-axioms" => each(&|o| matches!(o.value, Value::Algebroid(_)), "algebroid", &|o| {
            let Value::Algebroid(a) = &o.value else { unreachable!() };
            let a = a.clone();
            Box::new(move || Ok((axioms(&a, None), vec![])))
        })?,
        "cotangent-algebroid" => each(&|o| bivector(o).is_some(), "bivector", &|o| {
            let pi = bivector(o).unwrap().clone();
            Box::new(move || Ok((axioms(&cotangent_algebroid(&pi)?, Some(("[pi, pi] = 0", is_poisson(&pi)?))), vec![])))
        })?,
        "jet-algebroid" => each(&|o| biderivation(o).is_some(), "bi-derivation", &|o| {
            let j = biderivation(o).unwrap().clone();
            Box::new(move || Ok((axioms(&jet_algebroid(&j)?, Some(("[J, J]^SJ = 0", is_jacobi(&j)?))), vec![])))
        })?,
        "real-cotangent" => each(&|o| bivector(o).is_some() && cc_of(o).is_some(), "bivector on a complex chart", &|o| {
            let (pi, cc) = (bivector(o).unwrap().clone(), cc_of(o).unwrap());
            Box::new(move || run_real_cotangent(&pi, &cc))
        })?,
        "flat-connection" => each(&|o| biderivation(o).is_some() && cc_of(o).is_some(), "bi-derivation on a complex chart", &|o| {
            let (j, cc) = (biderivation(o).unwrap().clone(), cc_of(o).unwrap());
            Box::new(move || {
                let r = check_flat_connection(&j, &cc, &[])?;
                let conds = [
                    ("symbol is 2 Re sigma(J^sharp)", r.symbol),
                    ("agrees with J^sharp on holomorphic sections", r.agrees_on_holomorphic),
                    ("flat", r.flat),
                ];
                Ok((split(&conds, r.failures), vec![]))
            })
        })?,
        "bi-hamiltonian" => each(&|o| biderivation(o).is_some() && cc_of(o).is_some(), "bi-derivation on a complex chart", &|o| {
            let (j, cc) = (biderivation(o).unwrap().clone(), cc_of(o).unwrap());
            Box::new(move || run_bi_hamiltonian(&j, &cc))
        })?,
        "lie-poisson" => each(&|o| matches!(o.value, Value::LieAlgebra { .. }), "lie-algebra", &|o| {
            let Value::LieAlgebra { constants, .. } = &o.value else { unreachable!() };
            let c = constants.clone();
            Box::new(move || {
                let lp = lie_poisson(&c)?;
                let h = is_holomorphic(&lp.big_pi, &lp.cc)?;
                let homog = lp.big_pi.lie_derivative(&lp.h)?.add(&lp.big_pi)?;
                Ok((
                    vec![
                        Line::from_failures("Pi holomorphic", h.failures),
                        Line::new("[Pi, Pi] = 0", is_poisson(&lp.big_pi)?, vec![]),
                        Line::new("L_H Pi = -Pi", homog.is_zero(), components("L_H Pi + Pi", &homog)),
                    ],
                    vec![],
                ))
            })
        })?,
        other => return Err(CliError::Usage(format!("unknown check `{other}` (see list-checks)"))),
    }
    Ok(jobs)
}

fn bivector(o: &Object) -> Option<&Multivector> {
    match &o.value {
        Value::Multivector(m) if m.degree() == 2 => Some(m),
        _ => None,
    }
}

fn vector(o: &Object) -> Option<&Multivector> {
    match &o.value {
        Value::Multivector(m) if m.degree() == 1 => Some(m),
        _ => None,
    }
}

fn biderivation(o: &Object) -> Option<&MultiDerivation> {
    match &o.value {
        Value::MultiDerivation(j) if j.degree() == 2 => Some(j),
        _ => None,
    }
}

fn tensor11(o: &Object) -> Option<&Tensor11> {
    match &o.value {
        Value::Tensor11(t) => Some(t),
        _ => None,
    }
}

fn one<'a>(doc: &'a Document, file: &str, what: &str, pred: &dyn Fn(&Object) -> bool) -> Result<&'a Object, CliError> {
    let hits: Vec<&Object> = doc.objects.iter().filter(|o| pred(o)).collect();
    match hits[..] {
        [o] => Ok(o),
        [] => Err(CliError::Input(format!("{file}: no {what}"))),
        _ => Err(CliError::Input(format!(
            "{file}: expected exactly one {what}, found {}",
            hits.iter().map(|o| format!("`{}`", o.name)).collect::<Vec<_>>().join(", ")
        ))),
    }
}

fn same(file: &str, a: &Object, b: &Object) -> Result<(), CliError> {
    if a.chart != b.chart {
        return Err(CliError::Input(format!(
            "{file}: chart mismatch: `{}` lives on `{}`, `{}` on `{}`",
            a.name,
            a.chart.as_deref().unwrap_or("-"),
            b.name,
            b.chart.as_deref().unwrap_or("-")
        )));
    }
    Ok(())
}

/// One line per condition; the shared failure list is attached to the first
/// failing condition.
fn split(conds: &[(&str, bool)], failures: Vec<String>) -> Vec<Line> {
    let first_bad = conds.iter().position(|c| !c.1);
    let mut failures = Some(failures);
    conds
        .iter()
        .enumerate()
        .map(|(k, (label, holds))| {
            let details = if Some(k) == first_bad { failures.take().unwrap_or_default() } else { Vec::new() };
            Line::new(label, *holds, details)
        })
        .collect()
}

const SHOWN: usize = 4;

fn index_names(chart: &Chart, idx: &[usize]) -> String {
    idx.iter().map(|&i| chart.name(i)).collect::<Vec<_>>().join(",")
}

/// Nonzero components as `label[x,y] = expr`, at most a few.
fn components(label: &str, m: &Multivector) -> Vec<String> {
    let c = m.chart();
    let mut out: Vec<String> =
        m.entries().take(SHOWN).map(|(i, v)| format!("{label}[{}] = {}", index_names(c, i), v.display(c))).collect();
    let total = m.entries().count();
    if total > SHOWN {
        out.push(format!("... {} more nonzero components", total - SHOWN));
    }
    out
}

fn run_is_poisson(pi: &Multivector) -> Eval {
    let s = pi.schouten(pi)?;
    Ok((vec![Line::new("[pi, pi] = 0", is_poisson(pi)?, components("[pi, pi]", &s))], vec![]))
}

fn run_is_jacobi(j: &MultiDerivation) -> Eval {
    let s = schouten_jacobi(j, j)?;
    let mut details = components("[J, J] Lambda", s.lambda());
    details.extend(components("[J, J] E", s.e()));
    Ok((vec![Line::new("[J, J]^SJ = 0", is_jacobi(j)?, details)], vec![]))
}

fn run_is_nijenhuis(t: &Tensor11) -> Eval {
    let c = t.chart();
    let tab = t.nijenhuis();
    let mut details = Vec::new();
    for ((a, b), v) in tab.entries.iter() {
        for (k, x) in v.iter().enumerate() {
            if !x.is_zero() && details.len() < SHOWN {
                details.push(format!("N(d_{}, d_{})^{} = {}", c.name(*a), c.name(*b), c.name(k), x.display(c)));
            }
        }
    }
    Ok((vec![Line::new("N = 0", tab.is_zero(), details)], vec![]))
}

/// On a complex chart of complex dimension `2n + 1` the power is taken in
/// the complex sense: `theta ^ (d theta)^n != 0`.
fn run_is_contact(theta: &DiffForm, complex_dim: Option<usize>) -> Eval {
    let (dim, what) = match complex_dim {
        Some(m) => (m, "complex dimension"),
        None => (theta.dim(), "dimension"),
    };
    if dim % 2 == 0 {
        return Ok((vec![Line::new(&format!("odd {what}"), false, vec![format!("{what} {dim}")])], vec![]));
    }
    let dt = theta.d();
    let mut vol = theta.clone();
    for _ in 0..dim / 2 {
        vol = vol.wedge(&dt)?;
    }
    Ok((vec![Line::new("theta ^ (d theta)^n != 0", !vol.is_zero(), vec![])], vec![]))
}

fn equivalences(r: EquivalenceReport) -> Eval {
    let agree = r.agree();
    let lines = r.verdicts.into_iter().map(|v| Line::from_failures(&v.label, v.failures)).collect();
    let mut notes = vec![format!("verdicts agree: {}", if agree { "yes" } else { "no" })];
    notes.extend(r.extras.into_iter().map(|(l, b)| format!("{l}: {}", if b { "holds" } else { "fails" })));
    Ok((lines, notes))
}

fn run_poissonization(j: &MultiDerivation) -> Eval {
    let hp = poissonize(j)?;
    let (back, flag) = restrict_homogeneous(&hp.pi, hp.fiber)?;
    let jac = is_jacobi(j)?;
    let poi = is_poisson(&hp.pi)?;
    let lines = vec![
        Line::new("restrict(poissonize(J)) = J", back.sub(j)?.is_zero(), vec![]),
        Line::new("[J, J]^SJ = 0 iff [pi, pi] = 0 on the cone", jac == poi && flag == jac, vec![]),
    ];
    let notes = vec![format!("J is Jacobi: {jac}"), format!("cone chart: [{}]", hp.chart().names().join(", "))];
    Ok((lines, notes))
}

fn axioms(a: &AlgebroidData, predicate: Option<(&str, bool)>) -> Vec<Line> {
    let r = a.check_axioms();
    let mut lines = split(
        &[("anchor is a morphism", r.anchor_morphism), ("Jacobi identity", r.jacobi), ("Jacobi identity with weights", r.weighted_jacobi)],
        r.failures.clone(),
    );
    if let Some((label, p)) = predicate {
        lines.push(Line::new(&format!("axioms hold iff {label}"), r.holds() == p, vec![]));
    }
    lines
}

fn run_real_cotangent(pi: &Multivector, cc: &ComplexChart) -> Eval {
    let big = holomorphic_bivector(pi, cc)?;
    let (re, im) = holomorphic_cotangent_real_imaginary(&big, cc)?;
    let four = Gaussian::from_int(4);
    let pj4 = pi_phi(pi, cc.j())?.scale(&four);
    let pi4 = pi.scale(&four);
    let d_re = re.first_difference(&cotangent_algebroid(&pj4)?);
    let d_im = im.first_difference(&cotangent_algebroid(&pi4)?);
    let mut notes = Vec::new();
    if d_im.is_some() && im.same_as(&cotangent_algebroid(&pi4.neg())?) {
        notes.push("imaginary part equals (T*M)_{-4 pi}".to_string());
    }
    let lines = vec![
        Line::new("real part = (T*M)_{4 pi_j}", d_re.is_none(), d_re.into_iter().collect()),
        Line::new("imaginary part = (T*M)_{4 pi}", d_im.is_none(), d_im.into_iter().collect()),
    ];
    Ok((lines, notes))
}

fn run_bi_hamiltonian(j: &MultiDerivation, cc: &ComplexChart) -> Eval {
    let cb = circle_bundle_structures(j, cc)?;
    let jj = j_phi(&cb.j_hat, &cb.endo)?;
    let dim = cb.chart().dim();
    let unit = cb.endo.apply(&DlSection::frame(dim, dim)).as_derivation(cb.chart())?;
    let b1 = schouten_jacobi(&unit, &jj)?.sub(&cb.j_hat)?;
    let b2 = schouten_jacobi(&unit, &cb.j_hat)?.add(&jj)?;
    Ok((
        vec![
            Line::new("[J_hat, J_hat]^SJ = 0", is_jacobi(&cb.j_hat)?, vec![]),
            Line::new("[J_hat_j, J_hat_j]^SJ = 0", is_jacobi(&jj)?, vec![]),
            Line::new("J_hat + J_hat_j is Jacobi", is_jacobi(&cb.j_hat.add(&jj)?)?, vec![]),
            Line::new("[j_hat 1, J_hat_j]^SJ = J_hat", b1.is_zero(), components("difference Lambda", b1.lambda())),
            Line::new("[j_hat 1, J_hat]^SJ = -J_hat_j", b2.is_zero(), components("difference Lambda", b2.lambda())),
        ],
        vec![format!("circle-bundle chart: [{}]", cb.chart().names().join(", "))],
    ))
}

/// Evaluates a job, turning library errors into a failing line.
pub(crate) fn outcome(subject: String, job: Job) -> Outcome {
    match job() {
        Ok((lines, notes)) => Outcome { subject, lines, notes },
        Err(e) => Outcome { subject, lines: vec![Line::new("evaluation", false, vec![e.to_string()])], notes: Vec::new() },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_names_are_unique() {
        let mut names: Vec<&str> = CHECKS.iter().map(|c| c.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), CHECKS.len());
    }

    #[test]
    fn every_registered_file_check_is_dispatched() {
        let doc = Document::parse("[chart]\ncoords = [\"x\"]\n").unwrap();
        for c in CHECKS.iter().filter(|c| !is_suite(c.name)) {
            match select(c.name, &doc, "f") {
                Err(CliError::Input(_)) => {}
                other => panic!("{}: {:?}", c.name, other.map(|v| v.len())),
            }
        }
    }

    #[test]
    fn split_attaches_failures_once() {
        let lines = split(&[("a", true), ("b", false), ("c", false)], vec!["why".into()]);
        assert!(lines[0].details.is_empty());
        assert_eq!(lines[1].details, vec!["why".to_string()]);
        assert!(lines[2].details.is_empty());
    }
}
