//! Input parsing, command dispatch and report rendering for the
//! `artin-sigma` binary.

use std::collections::BTreeMap;

use num_rational::Rational64;
use serde_json::{json, Map, Value};
use thiserror::Error;

use artin_sigma::chain::{default_fields, kernel_homology_report, CoefficientField};
use artin_sigma::character::{living_analysis, parse_rational, spherical_link, validate_quotient};
use artin_sigma::sigma::{
    classify_group, fibring_report, sigma1_decide_with, sigma2_decide_with, DecideOptions, Decision, Sigma2Variant,
    Verdict,
};
use artin_sigma::{ChainError, Character, CharacterError, LabeledGraph, SigmaError};

/// Largest accepted scan bound.
pub const MAX_BOUND: i64 = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("schema error in `{field}`: {message}")]
    Schema { field: String, message: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Schema { .. } => 2,
            CliError::Precondition(_) => 3,
            CliError::Internal(_) => 4,
        }
    }

    fn schema(field: &str, message: impl Into<String>) -> Self {
        CliError::Schema { field: field.into(), message: message.into() }
    }
}

impl From<ChainError> for CliError {
    fn from(e: ChainError) -> Self {
        match e {
            ChainError::BoundaryNonZero(_) => CliError::Internal(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<SigmaError> for CliError {
    fn from(e: SigmaError) -> Self {
        match e {
            SigmaError::Chain(c) => c.into(),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<CharacterError> for CliError {
    fn from(e: CharacterError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Classify,
    Liv,
    Sigma1,
    Sigma2,
    Homology,
    Fibring,
    Scan,
}

impl Command {
    pub const ALL: [&'static str; 7] = ["classify", "liv", "sigma1", "sigma2", "homology", "fibring", "scan"];

    pub fn parse(s: &str) -> Result<Self, CliError> {
        Ok(match s {
            "classify" => Command::Classify,
            "liv" => Command::Liv,
            "sigma1" => Command::Sigma1,
            "sigma2" => Command::Sigma2,
            "homology" => Command::Homology,
            "fibring" => Command::Fibring,
            "scan" => Command::Scan,
            _ => return Err(CliError::schema("command", format!("unknown command {s}; expected one of {:?}", Self::ALL))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSpec {
    pub orders: Vec<u64>,
    /// Residues per vertex; absent vertices map to the identity.
    pub phi: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct JobSpec {
    pub graph: LabeledGraph,
    pub characters: Vec<Character>,
    pub quotient: Option<QuotientSpec>,
    pub fields: Vec<CoefficientField>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    pub assume_kpi1: bool,
    pub bound: Option<i64>,
}

/// Parses the canonical JSON document, or the inline syntax
/// `a-b:3,b-c:4[;a=1,b=2,c=2]` when the text does not start with `{`.
pub fn parse_input(text: &str) -> Result<JobSpec, CliError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_inline(text)
    }
}

fn parse_json(text: &str) -> Result<JobSpec, CliError> {
    let doc: Value = serde_json::from_str(text)
        .map_err(|e| CliError::Parse { line: e.line(), column: e.column(), message: e.to_string() })?;
    let obj = doc.as_object().ok_or_else(|| CliError::schema("<root>", "expected an object"))?;
    for key in obj.keys() {
        if !["vertices", "edges", "character", "characters", "quotient", "fields"].contains(&key.as_str()) {
            return Err(CliError::schema(key, "unknown field"));
        }
    }
    let vertices: Vec<String> = obj
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::schema("vertices", "expected an array of ids"))?
        .iter()
        .map(|v| v.as_str().map(String::from).ok_or_else(|| CliError::schema("vertices", "ids must be strings")))
        .collect::<Result<_, _>>()?;
    let mut notes = Vec::new();
    let mut edges = Vec::new();
    let raw_edges = match obj.get("edges") {
        None => Vec::new(),
        Some(e) => e.as_array().ok_or_else(|| CliError::schema("edges", "expected an array"))?.clone(),
    };
    for e in &raw_edges {
        let triple = e.as_array().filter(|a| a.len() == 3).ok_or_else(|| CliError::schema("edges", "each edge is [u, v, label]"))?;
        let name = |x: &Value| x.as_str().map(String::from).ok_or_else(|| CliError::schema("edges", "endpoints must be ids"));
        let (u, v) = (name(&triple[0])?, name(&triple[1])?);
        match label_of(&triple[2])? {
            Some(l) => edges.push((u, v, l)),
            None => notes.push(format!("edge {u}-{v} labelled inf dropped")),
        }
    }
    let graph = build_graph(&vertices, &edges)?;
    let mut characters = Vec::new();
    if let Some(c) = obj.get("character") {
        characters.push(character_from_json(&graph, c, "character")?);
    }
    if let Some(list) = obj.get("characters") {
        let list = list.as_array().ok_or_else(|| CliError::schema("characters", "expected an array"))?;
        for c in list {
            characters.push(character_from_json(&graph, c, "characters")?);
        }
    }
    let quotient = obj.get("quotient").map(|q| quotient_from_json(&graph, q)).transpose()?;
    let fields = match obj.get("fields") {
        None => Vec::new(),
        Some(f) => f
            .as_array()
            .ok_or_else(|| CliError::schema("fields", "expected an array"))?
            .iter()
            .map(|x| x.as_str().ok_or_else(|| CliError::schema("fields", "names must be strings")).and_then(parse_field))
            .collect::<Result<_, _>>()?,
    };
    Ok(JobSpec { graph, characters, quotient, fields, notes })
}

fn label_of(v: &Value) -> Result<Option<u32>, CliError> {
    let bad = || CliError::schema("edges", format!("label {v} is not an integer at least 2 or \"inf\""));
    let n = match v {
        Value::String(s) if s == "inf" => return Ok(None),
        Value::String(s) => s.parse::<u64>().map_err(|_| bad())?,
        Value::Number(n) => n.as_u64().ok_or_else(bad)?,
        _ => return Err(bad()),
    };
    if n < 2 || n > u32::MAX as u64 {
        return Err(bad());
    }
    Ok(Some(n as u32))
}

fn build_graph(vertices: &[String], edges: &[(String, String, u32)]) -> Result<LabeledGraph, CliError> {
    let refs: Vec<(&str, &str, u32)> = edges.iter().map(|(u, v, l)| (u.as_str(), v.as_str(), *l)).collect();
    let names: Vec<&str> = vertices.iter().map(String::as_str).collect();
    LabeledGraph::build(&names, &refs).map_err(|e| CliError::schema("edges", e.to_string()))
}

fn rational_of(v: &Value, field: &str) -> Result<Rational64, CliError> {
    let bad = || CliError::schema(field, format!("value {v} is not a rational number"));
    match v {
        Value::String(s) => parse_rational(s).ok_or_else(bad),
        Value::Number(n) => n.as_i64().map(Rational64::from_integer).ok_or_else(bad),
        _ => Err(bad()),
    }
}

fn character_from_json(g: &LabeledGraph, v: &Value, field: &str) -> Result<Character, CliError> {
    let obj = v.as_object().ok_or_else(|| CliError::schema(field, "expected an object {id: value}"))?;
    let mut values = vec![None; g.vertex_count()];
    for (k, x) in obj {
        let i = g.index_of(k).ok_or_else(|| CliError::schema(field, format!("unknown vertex {k}")))?;
        values[i] = Some(rational_of(x, field)?);
    }
    let values: Vec<Rational64> = values
        .into_iter()
        .enumerate()
        .map(|(i, x)| x.ok_or_else(|| CliError::schema(field, format!("no value for vertex {}", g.name(i)))))
        .collect::<Result<_, _>>()?;
    Character::new(g, values).map_err(|e| CliError::schema(field, e.to_string()))
}

fn quotient_from_json(g: &LabeledGraph, v: &Value) -> Result<QuotientSpec, CliError> {
    let orders: Vec<u64> = v
        .get("orders")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::schema("quotient.orders", "expected an array"))?
        .iter()
        .map(|x| x.as_u64().filter(|&m| m >= 1).ok_or_else(|| CliError::schema("quotient.orders", "orders are positive integers")))
        .collect::<Result<_, _>>()?;
    let mut phi = vec![vec![0i64; orders.len()]; g.vertex_count()];
    if let Some(map) = v.get("phi") {
        let map = map.as_object().ok_or_else(|| CliError::schema("quotient.phi", "expected an object {id: [residues]}"))?;
        for (k, row) in map {
            let i = g.index_of(k).ok_or_else(|| CliError::schema("quotient.phi", format!("unknown vertex {k}")))?;
            let row: Vec<i64> = row
                .as_array()
                .ok_or_else(|| CliError::schema("quotient.phi", "residues must be an array"))?
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| CliError::schema("quotient.phi", "residues are integers")))
                .collect::<Result<_, _>>()?;
            if row.len() != orders.len() {
                return Err(CliError::schema("quotient.phi", format!("vertex {k} needs {} residues", orders.len())));
            }
            phi[i] = row;
        }
    }
    Ok(QuotientSpec { orders, phi })
}

/// `Q`, `F2`, `F_3` and the like.
pub fn parse_field(s: &str) -> Result<CoefficientField, CliError> {
    let t = s.trim();
    if t == "Q" {
        return Ok(CoefficientField::Rationals);
    }
    let digits = t.strip_prefix("F_").or_else(|| t.strip_prefix('F'));
    match digits.and_then(|d| d.parse::<u64>().ok()) {
        Some(p) if artin_sigma::algebra::primes::is_prime(p) => Ok(CoefficientField::Prime(p)),
        _ => Err(CliError::schema("fields", format!("unknown field {s}; use Q or Fp with p prime"))),
    }
}

fn parse_inline(text: &str) -> Result<JobSpec, CliError> {
    let (graph_part, char_part) = match text.split_once(';') {
        Some((a, b)) => (a, Some(b)),
        None => (text, None),
    };
    let mut vertices: Vec<String> = Vec::new();
    let add = |v: &str, vertices: &mut Vec<String>| {
        if !vertices.iter().any(|x| x == v) {
            vertices.push(v.to_string());
        }
    };
    let mut edges = Vec::new();
    let mut notes = Vec::new();
    for (i, tok) in graph_part.split(',').map(str::trim).enumerate().filter(|(_, t)| !t.is_empty()) {
        let bad = |m: &str| CliError::Parse { line: 1, column: i + 1, message: format!("token `{tok}`: {m}") };
        match tok.split_once(':') {
            None if !tok.contains('-') => add(tok, &mut vertices),
            None => return Err(bad("expected u-v:label")),
            Some((pair, label)) => {
                let (u, v) = pair.split_once('-').ok_or_else(|| bad("expected u-v:label"))?;
                let (u, v) = (u.trim(), v.trim());
                if u.is_empty() || v.is_empty() {
                    return Err(bad("empty vertex id"));
                }
                add(u, &mut vertices);
                add(v, &mut vertices);
                match label_of(&Value::String(label.trim().to_string()))? {
                    Some(l) => edges.push((u.to_string(), v.to_string(), l)),
                    None => notes.push(format!("edge {u}-{v} labelled inf dropped")),
                }
            }
        }
    }
    let graph = build_graph(&vertices, &edges)?;
    let mut characters = Vec::new();
    if let Some(c) = char_part {
        characters.push(parse_inline_character(&graph, c)?);
    }
    Ok(JobSpec { graph, characters, quotient: None, fields: Vec::new(), notes })
}

/// `a=1,b=-1/2`; every vertex must be named.
pub fn parse_inline_character(g: &LabeledGraph, text: &str) -> Result<Character, CliError> {
    let mut obj = Map::new();
    for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (k, v) = tok
            .split_once('=')
            .ok_or_else(|| CliError::schema("character", format!("token `{tok}` is not id=value")))?;
        obj.insert(k.trim().to_string(), Value::String(v.trim().to_string()));
    }
    character_from_json(g, &Value::Object(obj), "character")
}

/// Runs a command and returns its report document.
pub fn run_command(spec: &JobSpec, command: Command, opts: &RunOptions) -> Result<Value, CliError> {
    let g = &spec.graph;
    let decide = DecideOptions { assume_kpi1: opts.assume_kpi1, fields: spec.fields.clone() };
    let mut report = Map::new();
    report.insert("command".into(), json!(command_name(command)));
    report.insert("vertices".into(), json!(g.names()));
    if opts.assume_kpi1 {
        report.insert("assume_kpi1".into(), json!(true));
    }
    if !spec.notes.is_empty() {
        report.insert("input_notes".into(), json!(spec.notes));
    }
    let need_chars = || -> Result<&[Character], CliError> {
        if spec.characters.is_empty() {
            Err(CliError::Precondition(format!("command {} needs a character", command_name(command))))
        } else {
            Ok(&spec.characters)
        }
    };
    let body = match command {
        Command::Classify => json!(classify_group(g)),
        Command::Liv => per_character(need_chars()?, |chi| {
            let liv = living_analysis(g, chi);
            let links: BTreeMap<String, Value> = liv
                .dead_vertices
                .iter()
                .map(|&v| {
                    let s = spherical_link(g, &liv, v);
                    (g.name(v).to_string(), json!({ "nonempty": s.nonempty, "connected": s.connected, "components": s.components() }))
                })
                .collect();
            Ok(json!({ "character": character_strings(chi), "living": liv, "spherical_links": links }))
        })?,
        Command::Sigma1 => per_character(need_chars()?, |chi| {
            let d = sigma1_decide_with(g, chi, &decide)?;
            Ok(json!({ "character": character_strings(chi), "sigma1": decision_json(&d, opts) }))
        })?,
        Command::Sigma2 => per_character(need_chars()?, |chi| {
            let a = sigma2_decide_with(g, chi, &decide, Sigma2Variant::Homotopical)?;
            let b = sigma2_decide_with(g, chi, &decide, Sigma2Variant::Homological)?;
            Ok(json!({
                "character": character_strings(chi),
                "sigma2": decision_json(&a, opts),
                "sigma2_homological": decision_json(&b, opts),
            }))
        })?,
        Command::Homology => per_character(need_chars()?, |chi| {
            if !chi.is_discrete() {
                return Err(CliError::Precondition(
                    "homology needs a discrete (integer-valued) character; rescale it to integers".into(),
                ));
            }
            let quotient = match &spec.quotient {
                None => None,
                Some(q) => Some(validate_quotient(g, chi, &q.orders, &q.phi)?.0),
            };
            let r = kernel_homology_report(g, chi, &spec.fields, quotient.as_ref())?;
            Ok(json!({ "character": character_strings(chi), "homology": r }))
        })?,
        Command::Fibring => per_character(need_chars()?, |chi| {
            if !chi.is_discrete() {
                return Err(CliError::Precondition(
                    "fibring needs a discrete (integer-valued) character; rescale it to integers".into(),
                ));
            }
            let r = fibring_report(g, chi)?;
            let mut v = json!(r);
            for key in ["sigma1", "sigma1_negated", "sigma2", "sigma2_negated", "sigma2_homological", "sigma2_homological_negated"] {
                let d: &Decision = match key {
                    "sigma1" => &r.sigma1,
                    "sigma1_negated" => &r.sigma1_negated,
                    "sigma2" => &r.sigma2,
                    "sigma2_negated" => &r.sigma2_negated,
                    "sigma2_homological" => &r.sigma2_homological,
                    _ => &r.sigma2_homological_negated,
                };
                v[key] = decision_json(d, opts);
            }
            Ok(v)
        })?,
        Command::Scan => scan(g, &decide, opts)?,
    };
    report.insert("result".into(), body);
    Ok(Value::Object(report))
}

fn command_name(c: Command) -> &'static str {
    Command::ALL[c as usize]
}

fn per_character(chars: &[Character], mut f: impl FnMut(&Character) -> Result<Value, CliError>) -> Result<Value, CliError> {
    let out: Vec<Value> = chars.iter().map(&mut f).collect::<Result<_, _>>()?;
    Ok(if out.len() == 1 { out.into_iter().next().unwrap() } else { Value::Array(out) })
}

fn character_strings(chi: &Character) -> Vec<String> {
    chi.values().iter().map(|x| x.to_string()).collect()
}

fn decision_json(d: &Decision, opts: &RunOptions) -> Value {
    let mut v = json!({
        "verdict": d.verdict.to_string(),
        "provenance": d.provenance.tag(),
        "conditional_on_kpi1": d.conditional_on_kpi1,
        "certificate": d.certificate,
        "notes": d.notes,
    });
    if opts.assume_kpi1 {
        v["provenance_assumption"] = json!("K(pi,1) assumed by flag");
    }
    v
}

/// Primitive integer characters in `[-B, B]^V`, constant on odd classes.
pub fn scan_characters(g: &LabeledGraph, bound: i64) -> Vec<Character> {
    let core = g.collapse_to_even_core();
    let k = core.class_count();
    let width = (2 * bound + 1) as u64;
    let total = width.pow(k as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let class_vals: Vec<i64> = (0..k)
            .map(|_| {
                let x = (c % width) as i64 - bound;
                c /= width;
                x
            })
            .collect();
        let g_all = class_vals.iter().fold(0i64, |a, &b| num_integer::gcd(a, b));
        if g_all != 1 {
            continue;
        }
        let vals: Vec<i64> = g.vertices().map(|v| class_vals[core.class_of[v]]).collect();
        out.push(Character::from_integers(g, &vals).expect("constant on odd classes"));
    }
    out
}

fn scan(g: &LabeledGraph, decide: &DecideOptions, opts: &RunOptions) -> Result<Value, CliError> {
    let bound = opts.bound.unwrap_or(1);
    if !(1..=MAX_BOUND).contains(&bound) {
        return Err(CliError::schema("bound", format!("scan bound must lie in 1..={MAX_BOUND}")));
    }
    let mut rows = Vec::new();
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for chi in scan_characters(g, bound) {
        let s1 = sigma1_decide_with(g, &chi, decide)?;
        let s2 = sigma2_decide_with(g, &chi, decide, Sigma2Variant::Homotopical)?;
        *counts.entry(format!("sigma1 {}", s1.verdict)).or_default() += 1;
        *counts.entry(format!("sigma2 {}", s2.verdict)).or_default() += 1;
        rows.push(json!({
            "character": character_strings(&chi),
            "sigma1": s1.verdict.to_string(),
            "sigma1_provenance": s1.provenance.tag(),
            "sigma2": s2.verdict.to_string(),
            "sigma2_provenance": s2.provenance.tag(),
            "conditional_on_kpi1": s1.conditional_on_kpi1 || s2.conditional_on_kpi1,
        }));
    }
    let all_in = |key: &str| rows.iter().all(|r| r[key] == json!(Verdict::Yes.to_string()));
    Ok(json!({
        "bound": bound,
        "classes": rows.len(),
        "counts": counts,
        "all_in_sigma1": all_in("sigma1"),
        "all_in_sigma2": all_in("sigma2"),
        "fields": default_fields(g).iter().map(|f| f.name()).collect::<Vec<_>>(),
        "characters": rows,
        "assume_kpi1": opts.assume_kpi1,
    }))
}

/// Line-oriented rendering: one `path: value` line per leaf.
pub fn render_text(report: &Value) -> String {
    let mut out = String::new();
    flatten("", report, &mut out);
    out
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&p, x, out);
            }
        }
        Value::Array(a) if !a.is_empty() && a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        _ => {
            out.push_str(prefix);
            out.push_str(": ");
            out.push_str(&match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            });
            out.push('\n');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIRST: &str = r#"{
        "vertices": ["a1", "a2", "a3", "b1", "b2", "c1"],
        "edges": [["a1", "a2", 3], ["a1", "a3", 3], ["a2", "a3", 2], ["a3", "b1", 4], ["b1", "b2", 5], ["b2", "c1", 4]],
        "character": {"a1": "1", "a2": "1", "a3": "1", "b1": "1", "b2": "1", "c1": "1"}
    }"#;

    #[test]
    fn parses_first_example() {
        let spec = parse_input(FIRST).unwrap();
        assert_eq!(spec.graph.vertex_count(), 6);
        assert_eq!(spec.graph.edge_count(), 6);
        assert_eq!(spec.characters.len(), 1);
    }

    #[test]
    fn label_one_is_schema_error() {
        let doc = r#"{"vertices": ["a", "b"], "edges": [["a", "b", 1]]}"#;
        let e = parse_input(doc).unwrap_err();
        assert!(matches!(&e, CliError::Schema { field, .. } if field == "edges"));
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn non_rational_character_is_schema_error() {
        let doc = r#"{"vertices": ["a"], "edges": [], "character": {"a": "x1"}}"#;
        assert!(matches!(parse_input(doc), Err(CliError::Schema { field, .. }) if field == "character"));
    }

    #[test]
    fn malformed_json_reports_position() {
        let e = parse_input("{\n  \"vertices\": [,]\n}").unwrap_err();
        assert!(matches!(e, CliError::Parse { line: 2, .. }));
    }

    #[test]
    fn inf_edges_dropped() {
        let doc = r#"{"vertices": ["a", "b"], "edges": [["a", "b", "inf"]]}"#;
        let spec = parse_input(doc).unwrap();
        assert_eq!(spec.graph.edge_count(), 0);
        assert_eq!(spec.notes.len(), 1);
    }

    #[test]
    fn inline_syntax() {
        let spec = parse_input("a-b:3,b-c:4,d;a=1,b=1,c=-1,d=0").unwrap();
        assert_eq!(spec.graph.vertex_count(), 4);
        assert_eq!(spec.graph.label(1, 2), Some(4));
        assert_eq!(spec.characters.len(), 1);
        assert!(parse_input("a-b").is_err());
    }

    #[test]
    fn field_names() {
        assert_eq!(parse_field("Q").unwrap(), CoefficientField::Rationals);
        assert_eq!(parse_field("F3").unwrap(), CoefficientField::Prime(3));
        assert_eq!(parse_field("F_5").unwrap(), CoefficientField::Prime(5));
        assert!(parse_field("F4").is_err());
    }

    #[test]
    fn scan_counts_classes() {
        // One odd class: characters +-1 only after primitivity.
        let g = LabeledGraph::build(&["a", "b"], &[("a", "b", 3)]).unwrap();
        assert_eq!(scan_characters(&g, 2).len(), 2);
        // Two free values in [-1, 1]^2 minus zero: 8 primitive vectors.
        let h = LabeledGraph::build(&["a", "b"], &[("a", "b", 4)]).unwrap();
        assert_eq!(scan_characters(&h, 1).len(), 8);
    }

    #[test]
    fn reports_are_deterministic() {
        let spec = parse_input(FIRST).unwrap();
        let a = run_command(&spec, Command::Sigma2, &RunOptions::default()).unwrap();
        let b = run_command(&spec, Command::Sigma2, &RunOptions::default()).unwrap();
        assert_eq!(render_text(&a), render_text(&b));
        assert_eq!(a["result"]["sigma2"]["verdict"], "yes");
    }

    #[test]
    fn missing_character_is_precondition() {
        let spec = parse_input("a-b:3").unwrap();
        let e = run_command(&spec, Command::Sigma1, &RunOptions::default()).unwrap_err();
        assert_eq!(e.exit_code(), 3);
        assert!(run_command(&spec, Command::Classify, &RunOptions::default()).is_ok());
    }

    #[test]
    fn homology_refuses_rational_character() {
        let spec = parse_input("a-b:3;a=1/2,b=1/2").unwrap();
        let e = run_command(&spec, Command::Homology, &RunOptions::default()).unwrap_err();
        assert_eq!(e.exit_code(), 3);
        assert!(e.to_string().contains("discrete"));
    }
}
