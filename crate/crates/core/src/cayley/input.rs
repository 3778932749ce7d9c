//! Problem files.
//!
//! Text form:
//!
//! ```text
//! # comments run to the end of the line
//! 2                 # n
//! 0 0 ; 1 1         # A_0, points separated by ';'
//! 0 0 ; 1 2         # A_1
//! 0 0 ; 2 0         # A_2
//! implicit          # optional: full | u-resultant | implicit | custom b p ; b p ...
//! ```
//!
//! JSON form: `{"n": 2, "supports": [[[0,0],[1,1]], ...], "projection": "implicit"}`
//! where `projection` is optional and may also be `{"custom": [[b, p], ...]}`.
//! Coordinates are JSON integers or decimal strings.

use std::collections::BTreeSet;
use std::str::FromStr;

use serde_json::Value;

use super::{ProjectionSpec, SupportFamily};
use crate::error::{Error, Result};
use crate::exactlin::Int;

/// A parsed problem before validation of the family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemInput {
    pub n: usize,
    pub supports: Vec<Vec<Vec<Int>>>,
    pub projection: ProjectionSpec,
}

impl ProblemInput {
    pub fn family(&self) -> Result<SupportFamily> {
        SupportFamily::new(self.n, self.supports.clone(), &self.projection)
    }

    /// Same problem with another projection.
    pub fn with_projection(mut self, projection: ProjectionSpec) -> Self {
        self.projection = projection;
        self
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for s in &self.supports {
            let pts: Vec<String> = s
                .iter()
                .map(|p| p.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
                .collect();
            out.push_str(&pts.join(" ; "));
            out.push('\n');
        }
        out.push_str(&match &self.projection {
            ProjectionSpec::Full => "full".to_string(),
            ProjectionSpec::UResultant => "u-resultant".to_string(),
            ProjectionSpec::Implicit => "implicit".to_string(),
            ProjectionSpec::Custom(pairs) => {
                let p: Vec<String> = pairs.iter().map(|(b, i)| format!("{b} {i}")).collect();
                format!("custom {}", p.join(" ; "))
            }
        });
        out.push('\n');
        out
    }
}

/// Parses either form, choosing JSON when the input starts with `{`.
pub fn parse_input(src: &str) -> Result<ProblemInput> {
    if src.trim_start().starts_with('{') {
        parse_json(src)
    } else {
        parse_text(src)
    }
}

fn parse_int(tok: &str, line: usize) -> Result<Int> {
    Int::from_str(tok).map_err(|_| Error::parse(line, format!("not an integer: {tok:?}")))
}

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| Error::parse(line, format!("not a nonnegative integer: {tok:?}")))
}

pub fn parse_text(src: &str) -> Result<ProblemInput> {
    let mut lines = src
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (ln, first) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
    let n = parse_usize(first, ln)?;
    if n == 0 {
        return Err(Error::parse(ln, "n must be at least 1"));
    }
    let mut supports = Vec::with_capacity(n + 1);
    let mut last = ln;
    for i in 0..=n {
        let (ln, l) = lines
            .next()
            .ok_or_else(|| Error::parse(last, format!("expected {} supports, found {i}", n + 1)))?;
        supports.push(parse_support(l, n, ln)?);
        last = ln;
    }
    let projection = match lines.next() {
        None => ProjectionSpec::Full,
        Some((ln, l)) => parse_projection(l, ln)?,
    };
    if let Some((ln, _)) = lines.next() {
        return Err(Error::parse(ln, "unexpected trailing content"));
    }
    Ok(ProblemInput {
        n,
        supports,
        projection,
    })
}

fn parse_support(l: &str, n: usize, ln: usize) -> Result<Vec<Vec<Int>>> {
    let mut pts = Vec::new();
    for chunk in l.split(';') {
        let toks: Vec<&str> = chunk.split_whitespace().collect();
        if toks.is_empty() {
            return Err(Error::parse(ln, "empty point"));
        }
        if toks.len() != n {
            return Err(Error::parse(ln, format!("point has {} coordinates, expected {n}", toks.len())));
        }
        pts.push(toks.iter().map(|t| parse_int(t, ln)).collect::<Result<Vec<_>>>()?);
    }
    check_distinct(&pts, ln)?;
    Ok(pts)
}

fn check_distinct(pts: &[Vec<Int>], ln: usize) -> Result<()> {
    let distinct: BTreeSet<&Vec<Int>> = pts.iter().collect();
    if distinct.len() != pts.len() {
        return Err(Error::parse(ln, "repeated point in support"));
    }
    Ok(())
}

/// Parses a projection in the text-file syntax, e.g. `implicit` or
/// `custom 0 1 ; 2 0`.
pub fn parse_projection_spec(s: &str) -> Result<ProjectionSpec> {
    parse_projection(s.trim(), 1).map_err(|e| match e {
        Error::Parse { msg, .. } => Error::InvalidArgument(msg),
        other => other,
    })
}

fn parse_projection(l: &str, ln: usize) -> Result<ProjectionSpec> {
    let (head, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
    let spec = match head {
        "full" => ProjectionSpec::Full,
        "u-resultant" | "u-res" => ProjectionSpec::UResultant,
        "implicit" | "implicitization" => ProjectionSpec::Implicit,
        "custom" => {
            let mut pairs = Vec::new();
            for chunk in rest.split(';') {
                let t: Vec<&str> = chunk.split_whitespace().collect();
                if t.len() != 2 {
                    return Err(Error::parse(ln, "custom projection expects 'block point' pairs"));
                }
                pairs.push((parse_usize(t[0], ln)?, parse_usize(t[1], ln)?));
            }
            return Ok(ProjectionSpec::Custom(pairs));
        }
        other => return Err(Error::parse(ln, format!("unknown projection {other:?}"))),
    };
    if !rest.trim().is_empty() {
        return Err(Error::parse(ln, format!("unexpected text after {head:?}")));
    }
    Ok(spec)
}

pub fn parse_json(src: &str) -> Result<ProblemInput> {
    let v: Value = serde_json::from_str(src).map_err(|e| Error::parse(e.line(), e.to_string()))?;
    let bad = |msg: &str| Error::parse(1, msg.to_string());
    let n = v
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("missing nonnegative integer field \"n\""))? as usize;
    if n == 0 {
        return Err(bad("n must be at least 1"));
    }
    let sups = v
        .get("supports")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing array field \"supports\""))?;
    if sups.len() != n + 1 {
        return Err(bad(&format!("expected {} supports, found {}", n + 1, sups.len())));
    }
    let mut supports = Vec::with_capacity(n + 1);
    for s in sups {
        let pts = s.as_array().ok_or_else(|| bad("support must be an array of points"))?;
        let mut out = Vec::with_capacity(pts.len());
        for p in pts {
            let coords = p.as_array().ok_or_else(|| bad("point must be an array"))?;
            if coords.len() != n {
                return Err(bad(&format!("point has {} coordinates, expected {n}", coords.len())));
            }
            out.push(coords.iter().map(json_int).collect::<Result<Vec<_>>>()?);
        }
        if out.is_empty() {
            return Err(bad("empty support"));
        }
        check_distinct(&out, 1)?;
        supports.push(out);
    }
    let projection = match v.get("projection") {
        None | Some(Value::Null) => ProjectionSpec::Full,
        Some(p) => serde_json::from_value(p.clone()).map_err(|e| bad(&format!("projection: {e}")))?,
    };
    Ok(ProblemInput {
        n,
        supports,
        projection,
    })
}

fn json_int(v: &Value) -> Result<Int> {
    match v {
        Value::Number(x) => {
            if let Some(i) = x.as_i64() {
                Ok(Int::from(i))
            } else if let Some(u) = x.as_u64() {
                Ok(Int::from(u))
            } else {
                Err(Error::parse(1, format!("not an integer: {x}")))
            }
        }
        Value::String(s) => parse_int(s, 1),
        other => Err(Error::parse(1, format!("not an integer: {other}"))),
    }
}
