//! Text and JSON formats: ordinals, finite sets, rational vectors, norm
//! results, family dumps, explicit tree files, step-function files and the
//! tables consumed by the ℓ¹ certificate.

use std::collections::BTreeMap;

use schreier_core::finset::FinSet;
use schreier_core::indices::{Interval, StepFn};
use schreier_core::norms::{CoeffVec, NormResult, Rational, TsirelsonWitness, Witness};
use schreier_core::ordinal::Ordinal;
use schreier_core::trees::{parse_node, ExplicitTree, Node, SetPairs, WellFoundedTree};
use schreier_core::FamilySpec;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{what}: {msg}")]
pub struct FormatError {
    pub what: &'static str,
    pub msg: String,
}

fn err(what: &'static str, msg: impl Into<String>) -> FormatError {
    FormatError { what, msg: msg.into() }
}

pub fn parse_ordinal(s: &str) -> Result<Ordinal, FormatError> {
    s.trim().parse().map_err(|e| err("ordinal", format!("{s:?}: {e}")))
}

/// `[[exponent, coefficient], …]` with exponents rendered the same way.
pub fn ordinal_json(o: &Ordinal) -> Value {
    Value::Array(
        o.terms()
            .iter()
            .map(|t| json!([ordinal_json(&t.exponent), t.coefficient]))
            .collect(),
    )
}

pub fn ordinal_from_json(v: &Value) -> Result<Ordinal, FormatError> {
    let terms = v.as_array().ok_or_else(|| err("ordinal JSON", "expected an array"))?;
    let mut pairs = Vec::with_capacity(terms.len());
    for t in terms {
        let (e, k) = match t.as_array().map(Vec::as_slice) {
            Some([e, k]) => (e, k),
            _ => return Err(err("ordinal JSON", "expected [exponent, coefficient]")),
        };
        let k = k.as_u64().ok_or_else(|| err("ordinal JSON", "coefficient must be a natural"))?;
        pairs.push((ordinal_from_json(e)?, k));
    }
    Ordinal::from_terms(pairs).map_err(|e| err("ordinal JSON", e.to_string()))
}

/// A set literal such as `[3,5,9]` or `[]`.
pub fn parse_finset(s: &str) -> Result<FinSet, FormatError> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| err("set", format!("{s:?} is not of the form [a,b,…]")))?;
    let mut items = Vec::new();
    for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        items.push(part.parse::<u32>().map_err(|_| err("set", format!("bad element {part:?}")))?);
    }
    FinSet::new(items).map_err(|e| err("set", e.to_string()))
}

pub fn finset_json(f: &FinSet) -> Value {
    json!(f.as_slice())
}

pub fn parse_rational(s: &str) -> Result<Rational, FormatError> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<num_bigint::BigInt>()
            .map_err(|_| err("rational", format!("bad number {s:?}")))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q == num_bigint::BigInt::from(0) {
                return Err(err("rational", "zero denominator"));
            }
            Ok(Rational::new(parse_int(p)?, q))
        }
        None => Ok(Rational::from(parse_int(s)?)),
    }
}

pub fn rational_json(r: &Rational) -> Value {
    Value::String(r.to_string())
}

/// `index:coeff(,index:coeff)*`; the empty string is the zero vector.
pub fn parse_vector(s: &str) -> Result<CoeffVec, FormatError> {
    let mut entries = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (i, c) = part
            .split_once(':')
            .ok_or_else(|| err("vector", format!("entry {part:?} is not index:coeff")))?;
        let i = i
            .trim()
            .parse::<u32>()
            .map_err(|_| err("vector", format!("bad index {i:?}")))?;
        entries.push((i, parse_rational(c)?));
    }
    CoeffVec::new(entries).map_err(|e| err("vector", e.to_string()))
}

/// Reads a vector file: either a JSON object of index → `"p/q"` strings or
/// a vector literal.
pub fn parse_vector_file(text: &str) -> Result<CoeffVec, FormatError> {
    let t = text.trim();
    if !t.starts_with('{') {
        return parse_vector(&t.split_whitespace().collect::<Vec<_>>().join(""));
    }
    let v: Value = serde_json::from_str(t).map_err(|e| err("vector JSON", e.to_string()))?;
    let obj = v.as_object().ok_or_else(|| err("vector JSON", "expected an object"))?;
    let mut entries = Vec::with_capacity(obj.len());
    for (k, c) in obj {
        let i = k.parse::<u32>().map_err(|_| err("vector JSON", format!("bad index {k:?}")))?;
        let c = c.as_str().ok_or_else(|| err("vector JSON", "coefficients must be strings"))?;
        entries.push((i, parse_rational(c)?));
    }
    CoeffVec::new(entries).map_err(|e| err("vector JSON", e.to_string()))
}

pub fn coeffvec_json(x: &CoeffVec) -> Value {
    let m: serde_json::Map<String, Value> = x.iter().map(|(i, c)| (i.to_string(), rational_json(c))).collect();
    Value::Object(m)
}

pub fn tsirelson_witness_json(w: &TsirelsonWitness) -> Value {
    match w {
        TsirelsonWitness::Base(f) => json!({ "base": finset_json(f) }),
        TsirelsonWitness::Split { bounds, parts } => json!({
            "split": {
                "bounds": bounds,
                "parts": parts.iter().map(tsirelson_witness_json).collect::<Vec<_>>(),
            }
        }),
    }
}

pub fn norm_result_json(r: &NormResult) -> Value {
    let witness = match &r.witness {
        Witness::Set(f) => finset_json(f),
        Witness::Tsirelson(w) => tsirelson_witness_json(w),
    };
    json!({
        "value": rational_json(&r.value),
        "witness": witness,
        "iterations": r.iterations,
    })
}

/// One member per line as a JSON array, in lexicographic order.
pub fn family_dump(members: &[FinSet]) -> String {
    let mut sorted: Vec<&FinSet> = members.iter().collect();
    sorted.sort_by(|a, b| a.as_slice().cmp(b.as_slice()));
    let mut out = String::new();
    for f in sorted {
        out.push_str(&finset_json(f).to_string());
        out.push('\n');
    }
    out
}

pub fn parse_family_dump(text: &str) -> Result<FamilySpec, FormatError> {
    let mut members = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        members.push(parse_finset(line).map_err(|e| err("family dump", format!("line {}: {e}", n + 1)))?);
    }
    Ok(FamilySpec::explicit(members))
}

/// One node per line over `+`/`-`; blank lines are ignored and the root is
/// implicit. The nodes must be prefix closed.
pub fn parse_tree_file(text: &str) -> Result<ExplicitTree, FormatError> {
    let mut nodes: Vec<Node> = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        nodes.push(parse_node(line).ok_or_else(|| err("tree file", format!("line {}: bad node {line:?}", n + 1)))?);
    }
    ExplicitTree::new(nodes).map_err(|e| err("tree file", e.to_string()))
}

/// Tuples of labels, one per line, comma separated.
pub fn parse_wf_tree_file(text: &str) -> Result<WellFoundedTree<u64>, FormatError> {
    let mut nodes = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tuple = line
            .split(',')
            .map(|p| p.trim().parse::<u64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| err("tuple file", format!("line {}: bad label", n + 1)))?;
        nodes.push(tuple);
    }
    WellFoundedTree::new(nodes).map_err(|e| err("tuple file", e.to_string()))
}

/// Lines `[a,b] -> p/q`, with `[`/`(` and `]`/`)` choosing closed or open
/// ends and ordinal endpoints. The space is `[0, top]` where `top` is the
/// largest point covered.
pub fn parse_step_fn(text: &str) -> Result<StepFn, FormatError> {
    let mut pieces = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let at = |m: String| err("step function", format!("line {}: {m}", n + 1));
        let (iv, val) = line.split_once("->").ok_or_else(|| at("expected `interval -> value`".into()))?;
        let iv = iv.trim();
        let (left, right) = (iv.chars().next(), iv.chars().last());
        let body = iv.get(1..iv.len().saturating_sub(1)).unwrap_or("");
        let (a, b) = split_top_level(body).ok_or_else(|| at(format!("bad interval {iv:?}")))?;
        let a = parse_ordinal(a).map_err(|e| at(e.to_string()))?;
        let b = parse_ordinal(b).map_err(|e| at(e.to_string()))?;
        let interval = match (left, right) {
            (Some('['), Some(']')) => Interval::closed(a, b),
            (Some('['), Some(')')) => Interval::half_open(a, b),
            (Some('('), Some(']')) => Interval::open_closed(a, b),
            (Some('('), Some(')')) => Interval::open(a, b),
            _ => return Err(at(format!("bad brackets in {iv:?}"))),
        };
        let v = parse_rational(val).map_err(|e| at(e.to_string()))?;
        pieces.push((interval, v));
    }
    let end = pieces
        .iter()
        .map(|(i, _)| i.end.clone())
        .max()
        .ok_or_else(|| err("step function", "no pieces"))?;
    let top = end
        .predecessor()
        .map_err(|_| err("step function", "the space must have a largest point"))?;
    StepFn::new(top, pieces).map_err(|e| err("step function", e.to_string()))
}

/// Splits `a,b` at the single comma outside parentheses.
fn split_top_level(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

pub fn interval_json(i: &Interval) -> Value {
    Value::String(i.to_string())
}

/// `{"functions": [["p/q", …], …]}`: one row of values per function, all
/// rows over the same points.
pub fn parse_function_rows(text: &str) -> Result<Vec<Vec<Rational>>, FormatError> {
    let v: Value = serde_json::from_str(text).map_err(|e| err("function table", e.to_string()))?;
    let rows = v
        .get("functions")
        .and_then(Value::as_array)
        .ok_or_else(|| err("function table", "expected {\"functions\": [[…], …]}"))?;
    rows.iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| err("function table", "rows must be arrays"))?
                .iter()
                .map(|c| match c {
                    Value::String(s) => parse_rational(s),
                    Value::Number(n) => parse_rational(&n.to_string()),
                    _ => Err(err("function table", "values must be rational strings")),
                })
                .collect()
        })
        .collect()
}

/// `{"points": n, "pairs": [[[a, …], [b, …]], …]}` with 0-based points.
pub fn parse_set_pairs(text: &str) -> Result<SetPairs, FormatError> {
    let v: Value = serde_json::from_str(text).map_err(|e| err("set pairs", e.to_string()))?;
    let points = v
        .get("points")
        .and_then(Value::as_u64)
        .ok_or_else(|| err("set pairs", "missing \"points\""))? as usize;
    let raw = v
        .get("pairs")
        .and_then(Value::as_array)
        .ok_or_else(|| err("set pairs", "missing \"pairs\""))?;
    let side = |s: &Value| -> Result<std::collections::BTreeSet<usize>, FormatError> {
        s.as_array()
            .ok_or_else(|| err("set pairs", "sides must be arrays"))?
            .iter()
            .map(|p| match p.as_u64() {
                Some(p) if (p as usize) < points => Ok(p as usize),
                _ => Err(err("set pairs", "points must be naturals below \"points\"")),
            })
            .collect()
    };
    let mut pairs = Vec::with_capacity(raw.len());
    for p in raw {
        match p.as_array().map(Vec::as_slice) {
            Some([a, b]) => pairs.push((side(a)?, side(b)?)),
            _ => return Err(err("set pairs", "each pair is [A, B]")),
        }
    }
    Ok(SetPairs { points, pairs })
}

pub fn set_pairs_json(p: &SetPairs) -> Value {
    json!({
        "points": p.points,
        "pairs": p.pairs.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
    })
}

/// Parses `key=value` lines; `#` starts a comment.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, FormatError> {
    let mut out = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| err("config", format!("line {}: expected key=value", n + 1)))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use schreier_core::ordinal::ord;

    #[test]
    fn ordinal_json_round_trip() {
        for s in ["0", "5", "w", "w^(2)*3+w*2+5", "w^(w)", "w^(w+1)*2+7"] {
            let o = ord(s);
            assert_eq!(ordinal_from_json(&ordinal_json(&o)).unwrap(), o);
            assert_eq!(o.to_string(), s);
        }
        assert_eq!(ordinal_json(&ord("w+2")).to_string(), "[[[[[],1]],1],[[],2]]");
    }

    #[test]
    fn vectors_and_rationals() {
        let x = parse_vector("3:1, 4:-2/4,5:7").unwrap();
        assert_eq!(coeffvec_json(&x).to_string(), r#"{"3":"1","4":"-1/2","5":"7"}"#);
        assert_eq!(parse_vector_file(r#"{"3":"1","4":"-1/2","5":"7"}"#).unwrap(), x);
        assert!(parse_vector("").unwrap().is_empty());
        assert!(parse_vector("0:1").is_err());
        assert!(parse_vector("3:1,3:2").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn sets_and_dumps() {
        assert_eq!(parse_finset("[9,3, 5]").unwrap().as_slice(), &[3, 5, 9]);
        assert!(parse_finset("[0]").is_err());
        let text = "[]\n[1]\n[2]\n[2,3]\n";
        let FamilySpec::Explicit(ms) = parse_family_dump(text).unwrap() else {
            unreachable!()
        };
        assert_eq!(family_dump(&ms.into_iter().collect::<Vec<_>>()), text);
    }

    #[test]
    fn step_functions() {
        let f = parse_step_fn("[0,w) -> 0\n[w,w] -> 1\n").unwrap();
        assert_eq!(f.space().top, ord("w"));
        assert!(parse_step_fn("[0,w) -> 0\n").is_err());
        assert!(parse_step_fn("[0,3] -> 0\n(3,w^(2)] -> 1/2\n").is_ok());
        assert!(parse_step_fn("[0,3] -> 0\n[3,5] -> 1\n").is_err());
    }

    #[test]
    fn tree_files() {
        assert!(parse_tree_file("-\n--\n-+\n").is_ok());
        assert!(parse_tree_file("--+\n").is_err());
        assert_eq!(parse_wf_tree_file("1\n1,2\n1,3\n").unwrap().order(), 2);
    }
}
