use holojac_cli::{run_check, CheckRequest, CliError, OutputFormat, CHECKS};
use std::path::{Path, PathBuf};
use std::process::Command;

fn bin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_holojac")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn req(check: &str, inputs: Vec<PathBuf>) -> CheckRequest {
    CheckRequest { check: check.into(), inputs, format: OutputFormat::Text, seed: 0 }
}

const PN: &str = r#"
[chart]
coords = ["x", "y", "u", "v"]

[[object]]
name = "pi"
kind = "bivector"
[object.components]
"x,u" = "1"
"y,u" = "0"
"v,y" = "1"

[[object]]
name = "j"
kind = "tensor11"
[object.entries]
"y,x" = "1"
"x,y" = "-1"
"v,u" = "1"
"u,v" = "-1"
"#;

#[test]
fn list_checks_names_every_check() {
    let (code, out, _) = bin(&["list-checks"]);
    assert_eq!(code, 0);
    for c in CHECKS {
        assert!(out.contains(c.name), "{}", c.name);
    }
}

#[test]
fn unknown_check_and_missing_files_are_usage_errors() {
    let (code, _, err) = bin(&["check", "no-such-check", "a.toml"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown check"));
    assert_eq!(bin(&["check", "is-poisson"]).0, 2);
    assert_eq!(bin(&["frobnicate"]).0, 2);
    assert_eq!(bin(&["check", "is-poisson", "/nonexistent/file.toml"]).0, 2);
    assert!(matches!(run_check(&req("suite-algebroids", vec!["x.toml".into()])), Err(CliError::Usage(_))));
}

#[test]
fn parse_errors_carry_the_file_and_location() {
    let d = tempfile::tempdir().unwrap();
    let p = write(d.path(), "bad.toml", "[chart]\ncoords = [\"x\"]\n[[object]]\nname = \"p\"\nkind = \"vector\"\n[object.components]\nx = \"1 + * x\"\n");
    let (code, _, err) = bin(&["check", "is-holomorphic", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("bad.toml") && err.contains("object `p`, components `x`"), "{err}");
}

#[test]
fn multi_input_checks_need_one_object_per_kind_on_one_chart() {
    let d = tempfile::tempdir().unwrap();
    let p = write(d.path(), "pn.toml", PN);
    let r = run_check(&req("pn-compatible", vec![p.clone()])).unwrap();
    assert_eq!(r.outcomes.len(), 1);
    assert!(r.outcomes[0].subject.ends_with("pn.toml:pi+j"));

    let two = format!("{PN}\n[[object]]\nname = \"pi2\"\nkind = \"bivector\"\n");
    let p2 = write(d.path(), "two.toml", &two);
    assert!(matches!(run_check(&req("pn-compatible", vec![p2])), Err(CliError::Input(m)) if m.contains("exactly one")));

    let mismatch = r#"
[charts.a]
coords = ["x", "y"]
[charts.b]
coords = ["x", "y"]
[[object]]
name = "pi"
kind = "bivector"
chart = "a"
[[object]]
name = "j"
kind = "tensor11"
chart = "b"
"#;
    let p3 = write(d.path(), "mismatch.toml", mismatch);
    assert!(matches!(run_check(&req("pn-compatible", vec![p3])), Err(CliError::Input(m)) if m.contains("chart mismatch")));
}

#[test]
fn outcomes_follow_request_order() {
    let d = tempfile::tempdir().unwrap();
    let files: Vec<PathBuf> = (0..6)
        .map(|k| {
            let text = format!("[chart]\ncoords = [\"x\", \"y\", \"z\"]\n[[object]]\nname = \"p{k}\"\nkind = \"bivector\"\n[object.components]\n\"x,y\" = \"z^{k}\"\n\"y,z\" = \"x\"\n");
            write(d.path(), &format!("f{k}.toml"), &text)
        })
        .collect();
    let r = run_check(&req("is-poisson", files)).unwrap();
    let subjects: Vec<String> = r.outcomes.iter().map(|o| o.subject.rsplit(':').next().unwrap().to_string()).collect();
    assert_eq!(subjects, ["p0", "p1", "p2", "p3", "p4", "p5"]);
}

#[test]
fn text_and_json_reports_are_stable() {
    let d = tempfile::tempdir().unwrap();
    let p = write(d.path(), "pn.toml", PN);
    let path = p.to_str().unwrap();
    let a = bin(&["check", "is-poisson", path, "--format", "json"]);
    let b = bin(&["check", "is-poisson", path, "--format", "json", "--timing"]);
    assert_eq!(a.0, 0);
    assert_eq!(a.1, b.1);
    assert!(b.2.contains("pn.toml:pi"), "timing goes to stderr");
    let v: serde_json::Value = serde_json::from_str(&a.1).unwrap();
    assert_eq!(v["check"], "is-poisson");
    assert_eq!(v["passed"], true);
}

#[test]
fn seeded_suites_are_reproducible() {
    let a = bin(&["check", "suite-algebroids", "--seed", "5", "--format", "json"]);
    let b = bin(&["check", "suite-algebroids", "--seed", "5", "--format", "json"]);
    assert_eq!(a.0, 0, "{}", a.1);
    assert_eq!(a.1, b.1);
    assert!(a.1.contains("\"seed\": 5"));
}

#[test]
fn gallery_checks() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(bin(&["examples", d.path().to_str().unwrap()]).0, 0);
    let f = |n: &str| d.path().join(n).to_str().unwrap().to_string();
    let cases: [(&str, &str, i32); 8] = [
        ("hJ-equivalences", "darboux_n1.toml", 0),
        ("is-contact", "darboux_n1.toml", 0),
        ("flat-connection", "darboux_n1.toml", 0),
        ("hhP-equivalences", "heisenberg_lie_poisson.toml", 0),
        ("lie-poisson", "sl2_lie_poisson.toml", 0),
        ("jet-algebroid", "contact_r3.toml", 0),
        ("poissonization-roundtrip", "nonjacobi_r3.toml", 0),
        ("jet-algebroid", "nonjacobi_r3.toml", 1),
    ];
    for (check, file, expected) in cases {
        let (code, out, err) = bin(&["check", check, &f(file)]);
        assert_eq!(code, expected, "{check} {file}\n{out}{err}");
    }
}
