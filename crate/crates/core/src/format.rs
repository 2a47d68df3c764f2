//! Structure-definition files.
//!
//! A file is a TOML document with chart declarations and a list of named
//! objects. Component tables map comma-separated coordinate names to
//! expression strings, e.g. `"x,y" = "x*z"`. The extra name `1` stands for
//! the unit section in tables over `DL`. Writing a file goes through a
//! sorted table, so the same document always prints the same bytes.
//!
//! ```toml
//! [chart]                       # or [charts.<name>] for several charts
//! coords = ["x", "y", "u", "v"]
//! angles = []                   # optional
//! complex = [["x", "y"], ["u", "v"]]  # optional, holomorphic x + i y, ...
//! polar = ["rho", "psi"]        # optional extra C* factor rho e^{i psi}
//!
//! [[object]]
//! name = "pi"
//! kind = "bivector"
//! [object.components]
//! "x,u" = "1"
//! ```

use crate::algebroid::AlgebroidData;
use crate::complexgeom::ComplexChart;
use crate::correspondences::examples::Constants;
use crate::error::{Error, Result};
use crate::expr::{parse, Chart, Gaussian, ScalarExpr};
use crate::genstruct::{GenBlockMap, GenBlockT};
use crate::jacobi::{EndoDL, MultiDerivation};
use crate::tensor::{DiffForm, Matrix, Multivector, Tensor11};
use std::sync::Arc;
use toml::{Table, Value as Toml};

/// Chart name used by the single-chart `[chart]` shorthand.
pub const MAIN: &str = "main";

#[derive(Clone, Debug)]
pub struct ChartDecl {
    pub name: String,
    pub coords: Vec<String>,
    pub angles: Vec<String>,
    pub complex: Vec<(String, String)>,
    pub polar: Option<(String, String)>,
    pub chart: Arc<Chart>,
    pub cc: Option<ComplexChart>,
}

impl ChartDecl {
    pub fn build(
        name: &str,
        coords: Vec<String>,
        angles: Vec<String>,
        complex: Vec<(String, String)>,
        polar: Option<(String, String)>,
    ) -> Result<Self> {
        let base = Arc::new(Chart::new(&coords, &angles)?);
        let idx = |s: &str| {
            base.index_of(s)
                .ok_or_else(|| Error::Format(format!("chart `{name}`: `{s}` is not a coordinate")))
        };
        let pairs = complex.iter().map(|(x, y)| Ok((idx(x)?, idx(y)?))).collect::<Result<Vec<_>>>()?;
        let (chart, cc) = match (&polar, pairs.is_empty()) {
            (None, true) => (base, None),
            (None, false) => {
                let cc = ComplexChart::standard(&base, &pairs)?;
                (cc.chart().clone(), Some(cc))
            }
            (Some(_), true) => {
                return Err(Error::Format(format!("chart `{name}`: `polar` needs a `complex` declaration")))
            }
            (Some((rho, psi)), false) => {
                let cc = ComplexChart::standard(&base, &pairs)?.with_polar_fiber(rho, psi)?;
                (cc.chart().clone(), Some(cc))
            }
        };
        Ok(ChartDecl { name: name.to_string(), coords, angles, complex, polar, chart, cc })
    }

    /// Declaration of a plain chart.
    pub fn real(name: &str, chart: &Chart) -> Result<Self> {
        let coords = chart.names().to_vec();
        let angles = chart.angle_names().iter().map(|s| s.to_string()).collect();
        ChartDecl::build(name, coords, angles, Vec::new(), None)
    }

    /// Declaration with holomorphic coordinates `x + i y` on the named pairs.
    pub fn complex(name: &str, chart: &Chart, pairs: &[(&str, &str)]) -> Result<Self> {
        let coords = chart.names().to_vec();
        let angles = chart.angle_names().iter().map(|s| s.to_string()).collect();
        let pairs = pairs.iter().map(|(x, y)| (x.to_string(), y.to_string())).collect();
        ChartDecl::build(name, coords, angles, pairs, None)
    }

    /// Adds a polar `C^*` factor to a complex declaration.
    pub fn with_polar(&self, name: &str, rho: &str, psi: &str) -> Result<Self> {
        ChartDecl::build(
            name,
            self.coords.clone(),
            self.angles.clone(),
            self.complex.clone(),
            Some((rho.to_string(), psi.to_string())),
        )
    }

    fn to_table(&self) -> Table {
        let strs = |v: &[String]| Toml::Array(v.iter().map(|s| Toml::String(s.clone())).collect());
        let mut t = Table::new();
        t.insert("coords".into(), strs(&self.coords));
        if !self.angles.is_empty() {
            t.insert("angles".into(), strs(&self.angles));
        }
        if !self.complex.is_empty() {
            let pairs = self.complex.iter().map(|(x, y)| strs(&[x.clone(), y.clone()])).collect();
            t.insert("complex".into(), Toml::Array(pairs));
        }
        if let Some((r, p)) = &self.polar {
            t.insert("polar".into(), strs(&[r.clone(), p.clone()]));
        }
        t
    }
}

/// The payload of a named object.
#[derive(Clone, Debug)]
pub enum Value {
    Function(ScalarExpr),
    Multivector(Multivector),
    Form(DiffForm),
    Tensor11(Tensor11),
    MultiDerivation(MultiDerivation),
    EndoDl(EndoDL),
    GenTangent(GenBlockT),
    GenJacobi(GenBlockMap),
    Algebroid(AlgebroidData),
    LieAlgebra { basis: Vec<String>, constants: Constants },
}

impl Value {
    /// The `kind` string written to files.
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Function(_) => "function",
            Value::Multivector(m) if m.degree() == 1 => "vector",
            Value::Multivector(m) if m.degree() == 2 => "bivector",
            Value::Multivector(_) => "multivector",
            Value::Form(_) => "form",
            Value::Tensor11(_) => "tensor11",
            Value::MultiDerivation(_) => "multiderivation",
            Value::EndoDl(_) => "endo-dl",
            Value::GenTangent(_) | Value::GenJacobi(_) => "genblock",
            Value::Algebroid(_) => "algebroid",
            Value::LieAlgebra { .. } => "lie-algebra",
        }
    }

    fn chart(&self) -> Option<&Arc<Chart>> {
        match self {
            Value::Function(_) | Value::LieAlgebra { .. } => None,
            Value::Multivector(m) => Some(m.chart()),
            Value::Form(f) => Some(f.chart()),
            Value::Tensor11(t) => Some(t.chart()),
            Value::MultiDerivation(d) => Some(d.chart()),
            Value::EndoDl(e) => Some(e.chart()),
            Value::GenTangent(g) => Some(g.chart()),
            Value::GenJacobi(g) => Some(g.chart()),
            Value::Algebroid(a) => Some(a.chart()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Object {
    pub name: String,
    /// `None` only for chart-free objects (Lie algebras).
    pub chart: Option<String>,
    pub value: Value,
}

#[derive(Clone, Debug, Default)]
pub struct Document {
    pub charts: Vec<ChartDecl>,
    pub objects: Vec<Object>,
}

fn ferr(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

/// Context for error messages: `object `pi`, components`.
struct Ctx<'a> {
    object: &'a str,
}

impl Ctx<'_> {
    fn err(&self, what: &str, msg: impl std::fmt::Display) -> Error {
        ferr(format!("object `{}`, {}: {}", self.object, what, msg))
    }
}

fn names_with_unit(chart: &Chart) -> Vec<String> {
    let mut v = chart.names().to_vec();
    v.push("1".into());
    v
}

fn parse_key(key: &str, names: &[String], ctx: &Ctx, what: &str) -> Result<Vec<usize>> {
    if key.trim().is_empty() {
        return Ok(Vec::new());
    }
    key.split(',')
        .map(|s| {
            let s = s.trim();
            names
                .iter()
                .position(|n| n == s)
                .ok_or_else(|| ctx.err(what, format!("unknown index `{s}` in key `{key}`")))
        })
        .collect()
}

fn expr_text(v: &Toml, ctx: &Ctx, what: &str) -> Result<String> {
    match v {
        Toml::String(s) => Ok(s.clone()),
        Toml::Integer(n) => Ok(n.to_string()),
        _ => Err(ctx.err(what, "expected an expression string")),
    }
}

fn parse_expr(v: &Toml, chart: &Chart, ctx: &Ctx, what: &str) -> Result<ScalarExpr> {
    let s = expr_text(v, ctx, what)?;
    parse(&s, chart).map_err(|e| ctx.err(what, format!("`{s}`: {e}")))
}

fn sub_table<'a>(t: &'a Table, key: &str, ctx: &Ctx) -> Result<Option<&'a Table>> {
    match t.get(key) {
        None => Ok(None),
        Some(Toml::Table(s)) => Ok(Some(s)),
        Some(_) => Err(ctx.err(key, "expected a table")),
    }
}

/// `(indices, expression)` entries of a component table.
fn entries(t: Option<&Table>, names: &[String], chart: &Chart, ctx: &Ctx, what: &str) -> Result<Vec<(Vec<usize>, ScalarExpr)>> {
    let mut out = Vec::new();
    for (k, v) in t.into_iter().flatten() {
        let idx = parse_key(k, names, ctx, what)?;
        let e = parse_expr(v, chart, ctx, &format!("{what} `{k}`"))?;
        out.push((idx, e));
    }
    Ok(out)
}

fn square(t: Option<&Table>, names: &[String], chart: &Chart, ctx: &Ctx, what: &str, antisym: bool) -> Result<Matrix> {
    let n = names.len();
    let mut m = Matrix::zeros(n, n);
    for (idx, e) in entries(t, names, chart, ctx, what)? {
        let [a, b] = idx[..] else {
            return Err(ctx.err(what, "keys need two indices"));
        };
        if antisym {
            if a == b {
                return Err(ctx.err(what, "diagonal entry in an antisymmetric table"));
            }
            m.set(b, a, m.get(b, a).sub(&e));
        }
        m.set(a, b, m.get(a, b).add(&e));
    }
    Ok(m)
}

fn alternating<T>(
    t: Option<&Table>,
    chart: &Arc<Chart>,
    degree: usize,
    ctx: &Ctx,
    what: &str,
    build: fn(&Arc<Chart>, usize, &[(Vec<usize>, ScalarExpr)]) -> Result<T>,
) -> Result<T> {
    let e = entries(t, chart.names(), chart, ctx, what)?;
    build(chart, degree, &e).map_err(|e| ctx.err(what, e))
}

fn get_str<'a>(t: &'a Table, key: &str, ctx: &Ctx) -> Result<Option<&'a str>> {
    match t.get(key) {
        None => Ok(None),
        Some(Toml::String(s)) => Ok(Some(s)),
        Some(_) => Err(ctx.err(key, "expected a string")),
    }
}

fn get_degree(t: &Table, ctx: &Ctx) -> Result<Option<usize>> {
    match t.get("degree") {
        None => Ok(None),
        Some(Toml::Integer(d)) if *d >= 0 => Ok(Some(*d as usize)),
        Some(_) => Err(ctx.err("degree", "expected a nonnegative integer")),
    }
}

fn get_strings(t: &Table, key: &str, ctx: &Ctx) -> Result<Vec<String>> {
    match t.get(key) {
        None => Ok(Vec::new()),
        Some(Toml::Array(a)) => a
            .iter()
            .map(|v| v.as_str().map(str::to_string).ok_or_else(|| ctx.err(key, "expected strings")))
            .collect(),
        Some(_) => Err(ctx.err(key, "expected an array of strings")),
    }
}

fn parse_chart(name: &str, t: &Toml) -> Result<ChartDecl> {
    let ctx = Ctx { object: name };
    let err = |m: &str| ferr(format!("chart `{name}`: {m}"));
    let Toml::Table(t) = t else { return Err(err("expected a table")) };
    for k in t.keys() {
        if !["coords", "angles", "complex", "polar"].contains(&k.as_str()) {
            return Err(err(&format!("unknown key `{k}`")));
        }
    }
    let coords = get_strings(t, "coords", &ctx).map_err(|_| err("`coords` must be an array of strings"))?;
    if coords.is_empty() {
        return Err(err("missing `coords`"));
    }
    let angles = get_strings(t, "angles", &ctx).map_err(|_| err("`angles` must be an array of strings"))?;
    let mut complex = Vec::new();
    if let Some(v) = t.get("complex") {
        let bad = || err("`complex` must be an array of coordinate pairs");
        for p in v.as_array().ok_or_else(bad)? {
            match p.as_array().map(|a| a.iter().map(|s| s.as_str()).collect::<Vec<_>>()).as_deref() {
                Some([Some(x), Some(y)]) => complex.push((x.to_string(), y.to_string())),
                _ => return Err(bad()),
            }
        }
    }
    let polar = match t.get("polar") {
        None => None,
        Some(v) => match v.as_array().map(|a| a.iter().map(|s| s.as_str()).collect::<Vec<_>>()).as_deref() {
            Some([Some(r), Some(p)]) => Some((r.to_string(), p.to_string())),
            _ => return Err(err("`polar` must be a pair of new coordinate names")),
        },
    };
    ChartDecl::build(name, coords, angles, complex, polar).map_err(|e| match e {
        Error::Format(m) => Error::Format(m),
        e => err(&e.to_string()),
    })
}

fn parse_object(doc: &Document, t: &Toml, pos: usize) -> Result<Object> {
    let Toml::Table(t) = t else {
        return Err(ferr(format!("object #{}: expected a table", pos + 1)));
    };
    let name = match t.get("name") {
        Some(Toml::String(s)) => s.clone(),
        _ => return Err(ferr(format!("object #{}: missing `name`", pos + 1))),
    };
    let ctx = Ctx { object: &name };
    let kind = get_str(t, "kind", &ctx)?.ok_or_else(|| ctx.err("kind", "missing"))?;
    if kind == "lie-algebra" {
        return Ok(Object { name: name.clone(), chart: None, value: parse_lie(t, &ctx)? });
    }
    let chart_name = match get_str(t, "chart", &ctx)? {
        Some(c) => c.to_string(),
        None if doc.charts.len() == 1 => doc.charts[0].name.clone(),
        None => return Err(ctx.err("chart", "required when several charts are declared")),
    };
    let decl = doc
        .charts
        .iter()
        .find(|c| c.name == chart_name)
        .ok_or_else(|| ctx.err("chart", format!("undeclared chart `{chart_name}`")))?;
    let chart = &decl.chart;
    let ext = names_with_unit(chart);
    let comps = sub_table(t, "components", &ctx)?;
    let value = match kind {
        "function" => {
            let v = t.get("value").ok_or_else(|| ctx.err("value", "missing"))?;
            Value::Function(parse_expr(v, chart, &ctx, "value")?)
        }
        "vector" | "bivector" | "multivector" | "form" => {
            let degree = match (kind, get_degree(t, &ctx)?) {
                ("vector", None | Some(1)) => 1,
                ("bivector", None | Some(2)) => 2,
                ("vector" | "bivector", Some(_)) => return Err(ctx.err("degree", format!("conflicts with kind `{kind}`"))),
                (_, Some(d)) => d,
                (_, None) => return Err(ctx.err("degree", "missing")),
            };
            if kind == "form" {
                Value::Form(alternating(comps, chart, degree, &ctx, "components", DiffForm::from_entries)?)
            } else {
                Value::Multivector(alternating(comps, chart, degree, &ctx, "components", Multivector::from_entries)?)
            }
        }
        "tensor11" => {
            let m = square(sub_table(t, "entries", &ctx)?, chart.names(), chart, &ctx, "entries", false)?;
            Value::Tensor11(Tensor11::new(chart, m).map_err(|e| ctx.err("entries", e))?)
        }
        "endo-dl" => {
            let m = square(sub_table(t, "entries", &ctx)?, &ext, chart, &ctx, "entries", false)?;
            Value::EndoDl(EndoDL::from_matrix(chart, m).map_err(|e| ctx.err("entries", e))?)
        }
        "multiderivation" => {
            let k = get_degree(t, &ctx)?.ok_or_else(|| ctx.err("degree", "missing"))?;
            if k == 0 {
                return Err(ctx.err("degree", "must be at least one"));
            }
            let lambda = alternating(sub_table(t, "lambda", &ctx)?, chart, k, &ctx, "lambda", Multivector::from_entries)?;
            let e = alternating(sub_table(t, "e", &ctx)?, chart, k - 1, &ctx, "e", Multivector::from_entries)?;
            Value::MultiDerivation(MultiDerivation::new(lambda, e).map_err(|e| ctx.err("lambda", e))?)
        }
        "genblock" => match get_str(t, "bundle", &ctx)?.unwrap_or("tangent") {
            "tangent" => {
                let phi = square(sub_table(t, "phi", &ctx)?, chart.names(), chart, &ctx, "phi", false)?;
                let phi = Tensor11::new(chart, phi).map_err(|e| ctx.err("phi", e))?;
                let pi = alternating(sub_table(t, "pi", &ctx)?, chart, 2, &ctx, "pi", Multivector::from_entries)?;
                let omega = alternating(sub_table(t, "omega", &ctx)?, chart, 2, &ctx, "omega", DiffForm::from_entries)?;
                Value::GenTangent(GenBlockT::new(phi, pi, omega).map_err(|e| ctx.err("phi", e))?)
            }
            "jacobi" => {
                let phi = square(sub_table(t, "phi", &ctx)?, &ext, chart, &ctx, "phi", false)?;
                let phi = EndoDL::from_matrix(chart, phi).map_err(|e| ctx.err("phi", e))?;
                let pi = square(sub_table(t, "pi", &ctx)?, &ext, chart, &ctx, "pi", true)?;
                let j = MultiDerivation::from_jet_matrix(chart, &pi).map_err(|e| ctx.err("pi", e))?;
                let omega = square(sub_table(t, "omega", &ctx)?, &ext, chart, &ctx, "omega", true)?;
                Value::GenJacobi(GenBlockMap::new(phi, j, omega).map_err(|e| ctx.err("omega", e))?)
            }
            other => return Err(ctx.err("bundle", format!("unknown bundle `{other}` (tangent | jacobi)"))),
        },
        "algebroid" => {
            let labels = get_strings(t, "labels", &ctx)?;
            let r = labels.len();
            if r == 0 {
                return Err(ctx.err("labels", "missing"));
            }
            if let Some(l) = labels.iter().find(|l| chart.index_of(l).is_some()) {
                return Err(ctx.err("labels", format!("label `{l}` clashes with a coordinate")));
            }
            let mut anchor = vec![vec![ScalarExpr::zero(); chart.dim()]; r];
            let mut keys = labels.clone();
            keys.extend(chart.names().iter().cloned());
            for (idx, e) in entries(sub_table(t, "anchor", &ctx)?, &keys, chart, &ctx, "anchor")? {
                match idx[..] {
                    [a, i] if a < r && i >= r => anchor[a][i - r] = anchor[a][i - r].add(&e),
                    _ => return Err(ctx.err("anchor", "keys are `label,coordinate`")),
                }
            }
            let mut c = vec![vec![vec![ScalarExpr::zero(); r]; r]; r];
            for (idx, e) in entries(sub_table(t, "brackets", &ctx)?, &labels, chart, &ctx, "brackets")? {
                let [a, b, k] = idx[..] else {
                    return Err(ctx.err("brackets", "keys are `label,label,label`"));
                };
                if a == b {
                    return Err(ctx.err("brackets", "a section bracketed with itself"));
                }
                c[a][b][k] = c[a][b][k].add(&e);
                c[b][a][k] = c[b][a][k].sub(&e);
            }
            Value::Algebroid(AlgebroidData::new(chart, labels, anchor, c).map_err(|e| ctx.err("brackets", e))?)
        }
        other => return Err(ctx.err("kind", format!("unknown kind `{other}`"))),
    };
    Ok(Object { name, chart: Some(chart_name), value })
}

fn parse_lie(t: &Table, ctx: &Ctx) -> Result<Value> {
    let basis = get_strings(t, "basis", ctx)?;
    let d = basis.len();
    if d == 0 {
        return Err(ctx.err("basis", "missing"));
    }
    let empty = Chart::real(&[] as &[&str])?;
    let mut c = vec![vec![vec![Gaussian::zero(); d]; d]; d];
    for (k, v) in sub_table(t, "constants", ctx)?.into_iter().flatten() {
        let idx = parse_key(k, &basis, ctx, "constants")?;
        let [a, b, m] = idx[..] else {
            return Err(ctx.err("constants", "keys are `a,b,c` for [a, b] = ... c"));
        };
        let val = parse_expr(v, &empty, ctx, &format!("constants `{k}`"))?
            .as_constant()
            .ok_or_else(|| ctx.err("constants", "structure constants must be numbers"))?;
        c[a][b][m] = &c[a][b][m] + &val;
        c[b][a][m] = &c[b][a][m] - &val;
    }
    Ok(Value::LieAlgebra { basis, constants: c })
}

impl Document {
    pub fn new() -> Self {
        Document::default()
    }

    pub fn parse(text: &str) -> Result<Document> {
        let top: Table = text.parse().map_err(|e: toml::de::Error| ferr(e.to_string().trim_end().to_string()))?;
        let mut doc = Document::new();
        for k in top.keys() {
            if !["chart", "charts", "object"].contains(&k.as_str()) {
                return Err(ferr(format!("unknown top-level key `{k}`")));
            }
        }
        match (top.get("chart"), top.get("charts")) {
            (Some(_), Some(_)) => return Err(ferr("use either [chart] or [charts.<name>], not both")),
            (Some(c), None) => doc.charts.push(parse_chart(MAIN, c)?),
            (None, Some(Toml::Table(cs))) => {
                for (name, c) in cs {
                    doc.charts.push(parse_chart(name, c)?);
                }
            }
            (None, Some(_)) => return Err(ferr("`charts` must be a table of charts")),
            (None, None) => {}
        }
        match top.get("object") {
            None => {}
            Some(Toml::Array(objs)) => {
                for (pos, o) in objs.iter().enumerate() {
                    let obj = parse_object(&doc, o, pos)?;
                    if doc.objects.iter().any(|x| x.name == obj.name) {
                        return Err(ferr(format!("duplicate object name `{}`", obj.name)));
                    }
                    doc.objects.push(obj);
                }
            }
            Some(_) => return Err(ferr("`object` must be an array of tables ([[object]])")),
        }
        Ok(doc)
    }

    pub fn add_chart(&mut self, decl: ChartDecl) -> &mut Self {
        self.charts.push(decl);
        self
    }

    /// Appends an object on the named chart; the value must live on that
    /// chart (or be chart-free).
    pub fn push(&mut self, name: &str, chart: &str, value: Value) -> Result<&mut Self> {
        let chart = match value.chart() {
            None if matches!(value, Value::LieAlgebra { .. }) => None,
            c => {
                let decl = self.chart(chart).ok_or_else(|| ferr(format!("undeclared chart `{chart}`")))?;
                if let Some(c) = c {
                    if c.as_ref() != decl.chart.as_ref() {
                        return Err(Error::ChartMismatch(format!("object `{name}` does not live on chart `{chart}`")));
                    }
                }
                Some(decl.name.clone())
            }
        };
        self.objects.push(Object { name: name.to_string(), chart, value });
        Ok(self)
    }

    pub fn chart(&self, name: &str) -> Option<&ChartDecl> {
        self.charts.iter().find(|c| c.name == name)
    }

    pub fn object(&self, name: &str) -> Option<&Object> {
        self.objects.iter().find(|o| o.name == name)
    }

    /// Chart declaration of an object, if it has one.
    pub fn chart_of(&self, o: &Object) -> Option<&ChartDecl> {
        o.chart.as_deref().and_then(|c| self.chart(c))
    }

    /// Canonical text.
    pub fn to_toml(&self) -> String {
        let mut top = Table::new();
        if self.charts.len() == 1 && self.charts[0].name == MAIN {
            top.insert("chart".into(), Toml::Table(self.charts[0].to_table()));
        } else if !self.charts.is_empty() {
            let cs = self.charts.iter().map(|c| (c.name.clone(), Toml::Table(c.to_table()))).collect();
            top.insert("charts".into(), Toml::Table(cs));
        }
        if !self.objects.is_empty() {
            let objs = self.objects.iter().map(|o| Toml::Table(self.object_table(o))).collect();
            top.insert("object".into(), Toml::Array(objs));
        }
        toml::to_string(&top).expect("tables of strings always serialize")
    }

    fn object_table(&self, o: &Object) -> Table {
        let mut t = Table::new();
        t.insert("name".into(), Toml::String(o.name.clone()));
        t.insert("kind".into(), Toml::String(o.value.kind().into()));
        let decl = self.chart_of(o);
        if let (Some(c), true) = (&o.chart, self.charts.len() > 1) {
            t.insert("chart".into(), Toml::String(c.clone()));
        }
        let chart = decl.map(|d| d.chart.clone()).unwrap_or_else(|| Arc::new(Chart::real(&[] as &[&str]).unwrap()));
        let names = chart.names().to_vec();
        let ext = names_with_unit(&chart);
        let s = |e: &ScalarExpr| Toml::String(e.display(&chart).to_string());
        let key = |idx: &[usize], names: &[String]| idx.iter().map(|&i| names[i].as_str()).collect::<Vec<_>>().join(",");
        let alt = |it: &mut dyn Iterator<Item = (&Vec<usize>, &ScalarExpr)>| {
            Toml::Table(it.map(|(i, v)| (key(i, &names), s(v))).collect())
        };
        let mat = |m: &Matrix, names: &[String], upper: bool| {
            let mut out = Table::new();
            for a in 0..m.rows() {
                for b in 0..m.cols() {
                    let v = m.get(a, b);
                    if !v.is_zero() && (!upper || a < b) {
                        out.insert(key(&[a, b], names), s(v));
                    }
                }
            }
            Toml::Table(out)
        };
        match &o.value {
            Value::Function(f) => {
                t.insert("value".into(), s(f));
            }
            Value::Multivector(m) => {
                if m.degree() > 2 || m.degree() == 0 {
                    t.insert("degree".into(), Toml::Integer(m.degree() as i64));
                }
                t.insert("components".into(), alt(&mut m.entries()));
            }
            Value::Form(f) => {
                t.insert("degree".into(), Toml::Integer(f.degree() as i64));
                t.insert("components".into(), alt(&mut f.entries()));
            }
            Value::Tensor11(m) => {
                t.insert("entries".into(), mat(m.matrix(), &names, false));
            }
            Value::EndoDl(e) => {
                t.insert("entries".into(), mat(e.matrix(), &ext, false));
            }
            Value::MultiDerivation(d) => {
                t.insert("degree".into(), Toml::Integer(d.degree() as i64));
                t.insert("lambda".into(), alt(&mut d.lambda().entries()));
                t.insert("e".into(), alt(&mut d.e().entries()));
            }
            Value::GenTangent(g) => {
                t.insert("bundle".into(), Toml::String("tangent".into()));
                t.insert("phi".into(), mat(g.phi.matrix(), &names, false));
                t.insert("pi".into(), alt(&mut g.pi.entries()));
                t.insert("omega".into(), alt(&mut g.omega.entries()));
            }
            Value::GenJacobi(g) => {
                t.insert("bundle".into(), Toml::String("jacobi".into()));
                t.insert("phi".into(), mat(g.phi.matrix(), &ext, false));
                t.insert("pi".into(), mat(&g.j.jet_matrix(), &ext, true));
                t.insert("omega".into(), mat(&g.omega, &ext, true));
            }
            Value::Algebroid(a) => {
                let labels = a.labels().to_vec();
                t.insert("labels".into(), Toml::Array(labels.iter().map(|l| Toml::String(l.clone())).collect()));
                let mut anchor = Table::new();
                let mut brackets = Table::new();
                for (x, la) in labels.iter().enumerate() {
                    for (i, v) in a.anchor_column(x).iter().enumerate() {
                        if !v.is_zero() {
                            anchor.insert(format!("{la},{}", names[i]), s(v));
                        }
                    }
                    for y in x + 1..labels.len() {
                        for (k, v) in a.structure(x, y).iter().enumerate() {
                            if !v.is_zero() {
                                brackets.insert(key(&[x, y, k], &labels), s(v));
                            }
                        }
                    }
                }
                t.insert("anchor".into(), Toml::Table(anchor));
                t.insert("brackets".into(), Toml::Table(brackets));
            }
            Value::LieAlgebra { basis, constants } => {
                t.insert("basis".into(), Toml::Array(basis.iter().map(|l| Toml::String(l.clone())).collect()));
                let mut out = Table::new();
                for a in 0..basis.len() {
                    for b in a + 1..basis.len() {
                        for (k, v) in constants[a][b].iter().enumerate() {
                            if !v.is_zero() {
                                out.insert(key(&[a, b, k], basis), Toml::String(v.to_string()));
                            }
                        }
                    }
                }
                t.insert("constants".into(), Toml::Table(out));
            }
        }
        t
    }
}
