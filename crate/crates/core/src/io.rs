//! Line-oriented file formats and report rendering.
//!
//! ```text
//! type: wdigraph
//! generators: s t
//! order: s t 3
//! vertex: a
//! vertex: b
//! edge: a b s solid      # directed a -> b, label s
//! ```
//!
//! ```text
//! type: wgraph
//! generators: s t
//! order: s t 3
//! vertex: x labels:
//! vertex: y labels: s,t
//! mu: y x 1
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::arith::{parse_rational, RatFun};
use crate::compare::{InvariantReport, IsoCertificate, IsoOutcome, SideInvariants, TheoremOutcome, TheoremReport};
use crate::coxeter::{CoxeterMatrix, GenSet, Order};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::wdigraph::{Edge, EdgeKind, SubsetTable, WDigraph};
use crate::wgraph::WGraph;

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Either parsed document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Digraph(WDigraph),
    WGraph(WGraph),
}

struct Header {
    kind: String,
    cm: CoxeterMatrix,
    /// Remaining `(line number, key, value)` records after the header.
    body: Vec<(usize, String, String)>,
}

fn records(text: &str) -> Result<Vec<(usize, String, String)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once(':').ok_or_else(|| perr(line, "expected `key: value`"))?;
        out.push((line, key.trim().to_string(), value.trim().to_string()));
    }
    Ok(out)
}

fn parse_header(text: &str) -> Result<Header> {
    let mut recs = records(text)?.into_iter().peekable();
    let Some((line, key, kind)) = recs.next() else {
        return Err(perr(1, "empty document"));
    };
    if key != "type" {
        return Err(perr(line, "first record must be `type:`"));
    }
    if kind != "wdigraph" && kind != "wgraph" {
        return Err(perr(line, format!("unknown type `{kind}`")));
    }
    let (line, key, gens) = recs.next().ok_or_else(|| perr(line + 1, "missing `generators:`"))?;
    if key != "generators" {
        return Err(perr(line, "second record must be `generators:`"));
    }
    let names: Vec<&str> = gens.split_whitespace().collect();
    for (i, g) in names.iter().enumerate() {
        if names[..i].contains(g) {
            return Err(perr(line, format!("duplicate generator `{g}`")));
        }
        if g.contains(',') {
            return Err(perr(line, format!("generator name `{g}` contains a comma")));
        }
    }
    let mut cm = CoxeterMatrix::new(names.iter().copied());
    let mut seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut last_line = line;
    while let Some((line, key, _)) = recs.peek() {
        if key != "order" {
            break;
        }
        let line = *line;
        let (_, _, value) = recs.next().expect("peeked");
        last_line = line;
        let parts: Vec<&str> = value.split_whitespace().collect();
        let [r, s, n] = parts[..] else {
            return Err(perr(line, "expected `order: r s n`"));
        };
        let i = cm.index_of(r).map_err(|e| perr(line, e.to_string()))?;
        let j = cm.index_of(s).map_err(|e| perr(line, e.to_string()))?;
        if i == j {
            return Err(perr(line, "order of a generator with itself is fixed at 1"));
        }
        let order = match n {
            "inf" => Order::Infinite,
            _ => match n.parse::<u32>() {
                Ok(k) if k >= 2 => Order::Finite(k),
                _ => return Err(perr(line, format!("order must be an integer >= 2 or `inf`, got `{n}`"))),
            },
        };
        if seen.insert((i.min(j), i.max(j)), line).is_some() {
            return Err(perr(line, format!("duplicate order entry for {r} {s}")));
        }
        cm.set_order(r, s, order).expect("indices checked");
    }
    for (i, j) in cm.pairs() {
        if !seen.contains_key(&(i, j)) {
            return Err(perr(last_line, format!("missing order entry for {} {}", cm.name(i), cm.name(j))));
        }
    }
    Ok(Header { kind, cm, body: recs.collect() })
}

fn vertex_name(line: usize, name: &str, existing: &[String]) -> Result<String> {
    if name.is_empty() || name.contains(char::is_whitespace) {
        return Err(perr(line, format!("bad vertex name `{name}`")));
    }
    if existing.iter().any(|v| v == name) {
        return Err(perr(line, format!("duplicate vertex `{name}`")));
    }
    Ok(name.to_string())
}

fn lookup(line: usize, name: &str, vertices: &[String]) -> Result<usize> {
    vertices.iter().position(|v| v == name).ok_or_else(|| perr(line, format!("unknown vertex `{name}`")))
}

fn gen_index(line: usize, cm: &CoxeterMatrix, name: &str) -> Result<usize> {
    cm.index_of(name).map_err(|_| perr(line, format!("unknown generator `{name}`")))
}

fn build_digraph(h: Header) -> Result<WDigraph> {
    let mut vertices: Vec<String> = Vec::new();
    let mut edges: Vec<Edge> = Vec::new();
    for (line, key, value) in h.body {
        match key.as_str() {
            "vertex" => vertices.push(vertex_name(line, &value, &vertices)?),
            "edge" => {
                let parts: Vec<&str> = value.split_whitespace().collect();
                let [a, b, g, kind] = parts[..] else {
                    return Err(perr(line, "expected `edge: src dst generator solid|dashed`"));
                };
                let src = lookup(line, a, &vertices)?;
                let dst = lookup(line, b, &vertices)?;
                let gen = gen_index(line, &h.cm, g)?;
                let kind = match kind {
                    "solid" => EdgeKind::Solid,
                    "dashed" => EdgeKind::Dashed,
                    _ => return Err(perr(line, format!("edge kind must be solid or dashed, got `{kind}`"))),
                };
                if src == dst {
                    return Err(perr(line, "loop edge"));
                }
                if edges.iter().any(|e| e.gen == gen && ((e.src, e.dst) == (src, dst) || (e.src, e.dst) == (dst, src)))
                {
                    return Err(perr(line, "duplicate edge"));
                }
                edges.push(Edge { src, dst, gen, kind });
            }
            other => return Err(perr(line, format!("unexpected record `{other}` in a wdigraph"))),
        }
    }
    Ok(WDigraph::new(h.cm, vertices, edges))
}

fn build_wgraph(h: Header) -> Result<WGraph> {
    let mut vertices: Vec<String> = Vec::new();
    let mut labels: Vec<GenSet> = Vec::new();
    let mut weights: Vec<(usize, String, String, String)> = Vec::new();
    for (line, key, value) in h.body {
        match key.as_str() {
            "vertex" => {
                let (name, rest) = match value.split_once(char::is_whitespace) {
                    Some((n, r)) => (n, r.trim()),
                    None => (value.as_str(), ""),
                };
                let list = rest
                    .strip_prefix("labels:")
                    .ok_or_else(|| perr(line, "expected `vertex: name labels: s,t`"))?
                    .trim();
                let mut set = GenSet::EMPTY;
                for g in list.split(',').map(str::trim).filter(|g| !g.is_empty()) {
                    set.insert(gen_index(line, &h.cm, g)?);
                }
                vertices.push(vertex_name(line, name, &vertices)?);
                labels.push(set);
            }
            "mu" => {
                let parts: Vec<&str> = value.split_whitespace().collect();
                let [x, y, w] = parts[..] else {
                    return Err(perr(line, "expected `mu: x y value`"));
                };
                weights.push((line, x.into(), y.into(), w.into()));
            }
            other => return Err(perr(line, format!("unexpected record `{other}` in a wgraph"))),
        }
    }
    let mut p = WGraph::new(h.cm, vertices, labels);
    let mut seen = BTreeMap::new();
    for (line, x, y, w) in weights {
        let xi = lookup(line, &x, &p.vertices)?;
        let yi = lookup(line, &y, &p.vertices)?;
        let q = parse_rational(&w).ok_or_else(|| perr(line, format!("malformed rational `{w}`")))?;
        if seen.insert((xi, yi), line).is_some() {
            return Err(perr(line, format!("duplicate weight for {x} {y}")));
        }
        p.set_mu(xi, yi, q);
    }
    Ok(p)
}

pub fn parse_document(text: &str) -> Result<Document> {
    let h = parse_header(text)?;
    if h.kind == "wdigraph" {
        build_digraph(h).map(Document::Digraph)
    } else {
        build_wgraph(h).map(Document::WGraph)
    }
}

pub fn parse_digraph(text: &str) -> Result<WDigraph> {
    match parse_document(text)? {
        Document::Digraph(g) => Ok(g),
        Document::WGraph(_) => Err(perr(1, "expected `type: wdigraph`")),
    }
}

pub fn parse_wgraph(text: &str) -> Result<WGraph> {
    match parse_document(text)? {
        Document::WGraph(p) => Ok(p),
        Document::Digraph(_) => Err(perr(1, "expected `type: wgraph`")),
    }
}

/// Reads only the Coxeter header of a document of either type.
pub fn parse_coxeter_header(text: &str) -> Result<CoxeterMatrix> {
    Ok(parse_header(text)?.cm)
}

fn emit_header(out: &mut String, kind: &str, cm: &CoxeterMatrix) {
    writeln!(out, "type: {kind}").unwrap();
    writeln!(out, "generators: {}", cm.generators().join(" ")).unwrap();
    for (i, j) in cm.pairs() {
        if let Some(o) = cm.order(i, j) {
            writeln!(out, "order: {} {} {}", cm.name(i), cm.name(j), o).unwrap();
        }
    }
}

pub fn emit_digraph(g: &WDigraph) -> String {
    let mut out = String::new();
    emit_header(&mut out, "wdigraph", &g.cm);
    for v in &g.vertices {
        writeln!(out, "vertex: {v}").unwrap();
    }
    for e in &g.edges {
        writeln!(out, "edge: {} {} {} {}", g.vertices[e.src], g.vertices[e.dst], g.cm.name(e.gen), e.kind.as_str())
            .unwrap();
    }
    out
}

pub fn emit_wgraph(p: &WGraph) -> String {
    let mut out = String::new();
    emit_header(&mut out, "wgraph", &p.cm);
    for (v, l) in p.vertices.iter().zip(&p.labels) {
        let names: Vec<&str> = l.indices().map(|i| p.cm.name(i)).collect();
        let list = names.join(",");
        if list.is_empty() {
            writeln!(out, "vertex: {v} labels:").unwrap();
        } else {
            writeln!(out, "vertex: {v} labels: {list}").unwrap();
        }
    }
    for ((x, y), w) in p.weights() {
        let w = if w.is_integer() { w.numer().to_string() } else { format!("{}/{}", w.numer(), w.denom()) };
        writeln!(out, "mu: {} {} {}", p.vertices[x], p.vertices[y], w).unwrap();
    }
    out
}

pub fn emit_document(d: &Document) -> String {
    match d {
        Document::Digraph(g) => emit_digraph(g),
        Document::WGraph(p) => emit_wgraph(p),
    }
}

/// Search results as one stream of documents, each preceded by a comment.
pub fn emit_search(cm: &CoxeterMatrix, found: &[WDigraph]) -> String {
    let mut out = String::new();
    let mut head = format!("# search over S = {{{}}}", cm.generators().join(","));
    for (i, j) in cm.pairs() {
        if let Some(o) = cm.order(i, j) {
            write!(head, ", n({},{}) = {o}", cm.name(i), cm.name(j)).unwrap();
        }
    }
    writeln!(out, "{head}: {} digraphs", found.len()).unwrap();
    for (i, g) in found.iter().enumerate() {
        writeln!(out, "# digraph {i}, {} vertices", g.vertex_count()).unwrap();
        out.push_str(&emit_digraph(g));
    }
    out
}

/// Text block for a certificate; entries use the rational function syntax.
pub fn emit_certificate(cert: &IsoCertificate) -> String {
    let mut out = String::new();
    let m = &cert.matrix;
    writeln!(out, "certificate: {} {}", m.rows(), m.cols()).unwrap();
    writeln!(out, "seed: {}", cert.seed).unwrap();
    let cs: Vec<String> = cert.coefficients.iter().map(ToString::to_string).collect();
    writeln!(out, "coefficients: {}", cs.join(" ")).unwrap();
    writeln!(out, "det: {}", cert.det).unwrap();
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
        writeln!(out, "row: {}", row.join(" ; ")).unwrap();
    }
    out
}

pub fn parse_certificate(text: &str) -> Result<IsoCertificate> {
    let recs = records(text)?;
    let mut it = recs.into_iter();
    let mut next = |want: &str| -> Result<(usize, String)> {
        let (line, key, value) = it.next().ok_or_else(|| perr(0, format!("missing `{want}:`")))?;
        if key != want {
            return Err(perr(line, format!("expected `{want}:`, found `{key}:`")));
        }
        Ok((line, value))
    };
    let (line, shape) = next("certificate")?;
    let dims: Vec<usize> = shape
        .split_whitespace()
        .map(str::parse)
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| perr(line, "bad shape"))?;
    let [rows, cols] = dims[..] else {
        return Err(perr(line, "expected `certificate: rows cols`"));
    };
    let (line, seed) = next("seed")?;
    let seed = seed.parse().map_err(|_| perr(line, "bad seed"))?;
    let (line, cs) = next("coefficients")?;
    let coefficients = cs
        .split_whitespace()
        .map(str::parse)
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| perr(line, "bad coefficient"))?;
    let (line, det) = next("det")?;
    let det: RatFun = det.parse().map_err(|e: Error| perr(line, e.to_string()))?;
    let mut data = Vec::new();
    for _ in 0..rows {
        let (line, row) = next("row")?;
        let entries: Vec<RatFun> = if cols == 0 {
            Vec::new()
        } else {
            row.split(';').map(|s| s.parse()).collect::<Result<_>>().map_err(|e| perr(line, e.to_string()))?
        };
        if entries.len() != cols {
            return Err(perr(line, "wrong number of entries"));
        }
        data.push(entries);
    }
    let matrix = if rows == 0 { Matrix::zeros(0, cols) } else { Matrix::from_rows(data)? };
    Ok(IsoCertificate { matrix, det, seed, coefficients })
}

/// Output format for reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// A rendered-agnostic report: ordered scalar fields, an `N` table, and
/// violations. Text and JSON renderings are both deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Report {
    pub kind: String,
    pub fields: Vec<(String, String)>,
    pub table: Vec<(String, usize)>,
    pub violations: Vec<String>,
}

impl Report {
    pub fn new(kind: impl Into<String>) -> Self {
        Report { kind: kind.into(), ..Default::default() }
    }

    pub fn field(&mut self, k: impl Into<String>, v: impl ToString) -> &mut Self {
        self.fields.push((k.into(), v.to_string()));
        self
    }

    pub fn with_table(&mut self, cm: &CoxeterMatrix, t: &SubsetTable) -> &mut Self {
        self.table = t.sorted().into_iter().map(|(j, n)| (cm.format_set(j), n)).collect();
        self
    }
}

pub fn emit_report(report: &Report, format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "report {}", report.kind).unwrap();
            for (k, v) in &report.fields {
                writeln!(out, "{k} {v}").unwrap();
            }
            for (j, n) in &report.table {
                writeln!(out, "N {j} {n}").unwrap();
            }
            writeln!(out, "violations {}", report.violations.len()).unwrap();
            for v in &report.violations {
                writeln!(out, "violation {v}").unwrap();
            }
            out
        }
        Format::Json => {
            let fields: serde_json::Map<String, Value> =
                report.fields.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
            let table: Vec<Value> = report.table.iter().map(|(j, n)| json!({"subset": j, "count": n})).collect();
            let v = json!({
                "kind": report.kind,
                "fields": fields,
                "N": table,
                "violations": report.violations,
            });
            let mut s = serde_json::to_string_pretty(&v).expect("json values serialize");
            s.push('\n');
            s
        }
    }
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "n/a".to_string(), |x| x.to_string())
}

pub fn side_report(cm: &CoxeterMatrix, s: &SideInvariants) -> Report {
    let mut r = Report::new(s.kind);
    r.field("dimension", s.dimension)
        .field("components", opt(s.components))
        .field("acyclic_components", opt(s.acyclic_components))
        .field("sources", opt(s.sources))
        .field("ind_linalg", s.ind_linalg)
        .field("sgn_linalg", s.sgn_linalg)
        .field("ind_comb", opt(s.ind_comb))
        .field("sgn_comb", opt(s.sgn_comb));
    for (j, d) in &s.sgn_by_subset {
        r.field(format!("sgn_restricted {}", cm.format_set(*j)), d);
    }
    for (w, t) in &s.traces {
        r.field(format!("trace {}", w.render(cm)), t);
    }
    r.with_table(cm, &s.counts);
    r
}

/// Two side reports plus the mismatch list, concatenated.
pub fn compare_report(rep: &InvariantReport) -> Report {
    let mut r = Report::new("compare");
    for (side, s) in ["a", "b"].iter().zip(&rep.sides) {
        let sr = side_report(&rep.cm, s);
        r.field(format!("{side}.kind"), s.kind);
        for (k, v) in sr.fields {
            r.field(format!("{side}.{k}"), v);
        }
        for (j, n) in sr.table {
            r.field(format!("{side}.N {j}"), n);
        }
    }
    r.field("isomorphism_excluded", !rep.agrees());
    r.violations = rep.mismatches.clone();
    r
}

pub fn iso_report(outcome: &IsoOutcome) -> String {
    match outcome {
        IsoOutcome::Certificate(c) => format!("result: isomorphic\n{}", emit_certificate(c)),
        IsoOutcome::NotIsomorphic(reason) => format!("result: not-isomorphic\nreason: {reason}\n"),
        IsoOutcome::Inconclusive { tries } => format!("result: inconclusive\ntries: {tries}\n"),
    }
}

pub fn theorem_report(r: &TheoremReport) -> Report {
    let mut out = Report::new("theorem");
    for c in &r.checks {
        let status = if c.passed { "pass" } else { "FAIL" };
        out.field(format!("[{status}] {}", c.name), &c.detail);
    }
    out.violations = r.failures().map(|c| format!("{}: {}", c.name, c.detail)).collect();
    out
}

pub fn theorem_outcome_text(o: &TheoremOutcome) -> String {
    match o {
        TheoremOutcome::Rejected(inv) => {
            let mut s = String::from("result: rejected (invariants differ, modules are not isomorphic)\n");
            s.push_str(&emit_report(&compare_report(inv), Format::Text));
            s
        }
        TheoremOutcome::NoCertificate(iso) => format!("result: no certificate\n{}", iso_report(iso)),
        TheoremOutcome::Checked { cert, report } => {
            let mut s = String::new();
            s.push_str(&emit_certificate(cert));
            s.push_str(&emit_report(&theorem_report(report), Format::Text));
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational;
    use crate::builders::{build_a1, build_a1_wgraph, build_dihedral_regular};

    const A1: &str = "type: wdigraph\ngenerators: s\nvertex: a\nvertex: b\nedge: a b s solid   # a -> b\n";

    #[test]
    fn parse_minimal_digraph() {
        assert_eq!(parse_digraph(A1).unwrap(), build_a1(EdgeKind::Solid));
    }

    #[test]
    fn unknown_generator_reports_line() {
        let text = "type: wdigraph\ngenerators: s\nvertex: a\nvertex: b\nedge: a b x solid\n";
        assert_eq!(parse_digraph(text), Err(Error::Parse { line: 5, msg: "unknown generator `x`".into() }));
    }

    #[test]
    fn header_errors() {
        let missing = "type: wdigraph\ngenerators: s t\nvertex: a\n";
        assert!(matches!(parse_digraph(missing), Err(Error::Parse { .. })));
        let dup = "type: wdigraph\ngenerators: s t\norder: s t 3\norder: t s 3\n";
        assert!(matches!(parse_digraph(dup), Err(Error::Parse { line: 4, .. })));
        let low = "type: wdigraph\ngenerators: s t\norder: s t 1\n";
        assert!(matches!(parse_digraph(low), Err(Error::Parse { line: 3, .. })));
        let inf = "type: wdigraph\ngenerators: s t\norder: s t inf\n";
        assert_eq!(parse_coxeter_header(inf).unwrap().order(0, 1), Some(Order::Infinite));
        let dup_vertex = "type: wdigraph\ngenerators: s\nvertex: a\nvertex: a\n";
        assert!(matches!(parse_digraph(dup_vertex), Err(Error::Parse { line: 4, .. })));
    }

    #[test]
    fn parse_wgraph_file() {
        let text = "type: wgraph\ngenerators: s\nvertex: x labels:\nvertex: y labels: s\nmu: y x 1\n";
        assert_eq!(parse_wgraph(text).unwrap(), build_a1_wgraph(rational(1, 1)));
        let selfw = format!("{text}mu: x x 1\n");
        let p = parse_wgraph(&selfw).unwrap();
        assert_eq!(p.mu(0, 0), rational(1, 1));
        assert_eq!(crate::wgraph::wgraph_action(&p), crate::wgraph::wgraph_action(&build_a1_wgraph(rational(1, 1))));
        let bad = format!("{text}mu: x y 1/x\n");
        assert_eq!(parse_wgraph(&bad).unwrap_err(), Error::Parse { line: 6, msg: "malformed rational `1/x`".into() });
    }

    #[test]
    fn emit_reparses() {
        let g = build_dihedral_regular(4).unwrap();
        assert_eq!(parse_digraph(&emit_digraph(&g)).unwrap(), g);
        let mut p = build_a1_wgraph(rational(-3, 4));
        p.set_mu(0, 0, rational(2, 1));
        assert_eq!(parse_wgraph(&emit_wgraph(&p)).unwrap(), p);
    }

    #[test]
    fn certificate_round_trip() {
        use crate::compare::{find_iso, Structure};
        let a: Structure = build_a1(EdgeKind::Dashed).into();
        let b: Structure = build_a1_wgraph(rational(1, 2)).into();
        let IsoOutcome::Certificate(c) = find_iso(&a, &b, 9, 10).unwrap() else { panic!() };
        assert_eq!(parse_certificate(&emit_certificate(&c)).unwrap(), c);
    }

    #[test]
    fn report_rendering() {
        let g = build_a1(EdgeKind::Solid);
        let inv = crate::compare::side_invariants(&g.clone().into(), 2).unwrap();
        let text = emit_report(&side_report(&g.cm, &inv), Format::Text);
        assert!(text.contains("\nN {} 1\nN {s} 1\n"));
        let json = emit_report(&side_report(&g.cm, &inv), Format::Json);
        assert_eq!(json, emit_report(&side_report(&g.cm, &inv), Format::Json));
        let v: Value = serde_json::from_str(&json).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["N", "fields", "kind", "violations"]);

        let rep = crate::compare::invariant_report(
            &g.clone().into(),
            &WGraph::new(CoxeterMatrix::a1(), vec!["x".into()], vec![GenSet::EMPTY]).into(),
            2,
        )
        .unwrap();
        let v: Value = serde_json::from_str(&emit_report(&compare_report(&rep), Format::Json)).unwrap();
        assert!(!v["violations"].as_array().unwrap().is_empty());
    }
}
