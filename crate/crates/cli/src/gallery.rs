//! The example gallery written by `holojac examples`.

use holojac::complexgeom::ComplexChart;
use holojac::correspondences::{darboux_example, heisenberg_constants, lie_poisson, sl2_constants, Constants};
use holojac::format::{ChartDecl, Document, Value, MAIN};
use holojac::jacobi::{contact_to_jacobi, MultiDerivation};
use holojac::tensor::{DiffForm, Multivector};
use holojac::{parse, Chart, Result, ScalarExpr};
use std::path::{Path, PathBuf};
use std::sync::Arc;

fn darboux() -> Result<Document> {
    let ex = darboux_example(1)?;
    let base = ChartDecl::complex("base", ex.base.chart(), &[("r", "s"), ("x", "y"), ("m", "q")])?;
    let ext = base.with_polar("ext", "rho", "psi")?;
    let circle = ChartDecl::real("circle", &ex.circle)?;
    let mut doc = Document::new();
    doc.add_chart(base).add_chart(ext).add_chart(circle);
    doc.push("theta", "base", Value::Form(ex.theta))?
        .push("theta_r", "base", Value::Form(ex.theta_r))?
        .push("theta_s", "base", Value::Form(ex.theta_s))?
        .push("J", "base", Value::MultiDerivation(ex.jacobi))?
        .push("Omega", "ext", Value::Form(ex.omega))?
        .push("H", "ext", Value::Multivector(ex.h))?
        .push("eta", "ext", Value::Multivector(ex.eta))?
        .push("vartheta", "circle", Value::Form(ex.vartheta))?
        .push("vartheta_j", "circle", Value::Form(ex.vartheta_j))?;
    Ok(doc)
}

fn lie(basis: &[&str], c: Constants) -> Result<Document> {
    let lp = lie_poisson(&c)?;
    let names = lp.cc.chart().names().to_vec();
    let pairs: Vec<(&str, &str)> = names.chunks(2).map(|p| (p[0].as_str(), p[1].as_str())).collect();
    let mut doc = Document::new();
    doc.add_chart(ChartDecl::complex(MAIN, lp.cc.chart(), &pairs)?);
    let basis = basis.iter().map(|s| s.to_string()).collect();
    doc.push("g", MAIN, Value::LieAlgebra { basis, constants: c })?
        .push("pi", MAIN, Value::Multivector(lp.pi))?
        .push("eta", MAIN, Value::Multivector(lp.eta))?;
    Ok(doc)
}

fn contact_r3() -> Result<Document> {
    let c = Arc::new(Chart::real(&["t", "q", "p"])?);
    let theta = DiffForm::from_components(&c, &[ScalarExpr::one(), parse("-p", &c)?, ScalarExpr::zero()]);
    let j = contact_to_jacobi(&theta)?;
    let mut doc = Document::new();
    doc.add_chart(ChartDecl::real(MAIN, &c)?);
    doc.push("theta", MAIN, Value::Form(theta))?.push("J", MAIN, Value::MultiDerivation(j))?;
    Ok(doc)
}

/// `(d_x ^ d_y, d_z)`: `[Lambda, Lambda] = 0` but `E ^ Lambda != 0`.
fn nonjacobi_r3() -> Result<Document> {
    let c = Arc::new(Chart::real(&["x", "y", "z"])?);
    let j = MultiDerivation::new(Multivector::basis(&c, &[0, 1]), Multivector::basis(&c, &[2]))?;
    let mut doc = Document::new();
    doc.add_chart(ChartDecl::real(MAIN, &c)?);
    doc.push("J", MAIN, Value::MultiDerivation(j))?;
    Ok(doc)
}

fn c2(names: [&str; 4]) -> Result<(ChartDecl, ComplexChart)> {
    let c = Chart::real(&names)?;
    let decl = ChartDecl::complex(MAIN, &c, &[(names[0], names[1]), (names[2], names[3])])?;
    let cc = decl.cc.clone().expect("complex declaration");
    Ok((decl, cc))
}

fn zero_pi() -> Result<Document> {
    let (decl, cc) = c2(["x", "y", "u", "v"])?;
    let mut doc = Document::new();
    let pi = Multivector::zero(cc.chart(), 2);
    doc.add_chart(decl);
    doc.push("pi", MAIN, Value::Multivector(pi))?;
    Ok(doc)
}

/// Real part `pi = Im Pi` of `Pi = f d_z ^ d_p` on `C^2`.
fn cotangent(f: &str) -> Result<Document> {
    let (decl, cc) = c2(["x", "y", "m", "q"])?;
    let c = cc.chart().clone();
    let e = |k: usize| Multivector::vector(&c, &cc.frame10()[k]);
    let big = e(0).wedge(&e(1))?.mul_fn(&parse(f, &c)?);
    let mut doc = Document::new();
    doc.add_chart(decl);
    doc.push("pi", MAIN, Value::Multivector(big.im()))?;
    Ok(doc)
}

/// File names and contents, in a fixed order.
pub fn gallery() -> Result<Vec<(&'static str, String)>> {
    Ok(vec![
        ("contact_r3.toml", contact_r3()?.to_toml()),
        ("cotangent_c2.toml", cotangent("1")?.to_toml()),
        ("cotangent_quadratic_c2.toml", cotangent("(x + i*y)^2")?.to_toml()),
        ("darboux_n1.toml", darboux()?.to_toml()),
        ("heisenberg_lie_poisson.toml", lie(&["x", "y", "z"], heisenberg_constants())?.to_toml()),
        ("nonjacobi_r3.toml", nonjacobi_r3()?.to_toml()),
        ("sl2_lie_poisson.toml", lie(&["h", "e", "f"], sl2_constants())?.to_toml()),
        ("zero_pi.toml", zero_pi()?.to_toml()),
    ])
}

/// Writes the gallery into `dir`, creating it if needed.
pub fn emit_examples(dir: &Path) -> std::result::Result<Vec<PathBuf>, crate::CliError> {
    let files = gallery().map_err(|e| crate::CliError::Input(format!("building examples: {e}")))?;
    std::fs::create_dir_all(dir).map_err(|e| crate::CliError::Io(format!("{}: {e}", dir.display())))?;
    let mut out = Vec::new();
    for (name, text) in files {
        let p = dir.join(name);
        std::fs::write(&p, text).map_err(|e| crate::CliError::Io(format!("{}: {e}", p.display())))?;
        out.push(p);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_parses_back_to_itself() {
        for (name, text) in gallery().unwrap() {
            let doc = Document::parse(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(doc.to_toml(), text, "{name}");
        }
    }

    #[test]
    fn darboux_fixture_mentions_the_circle_forms() {
        let text = darboux().unwrap().to_toml();
        assert!(text.contains("name = \"vartheta_j\""));
        assert!(text.contains("cos(psi)"));
        assert!(text.contains("polar = [\"rho\", \"psi\"]"));
    }
}
