//! Text formats for quivers and posets, and JSON/DOT/TSV emission.
//!
//! Quiver and poset files share one line format: `#` starts a comment,
//! blank lines are ignored, the first data line is `n <count>` and every
//! further data line is a pair of 1-based vertex indices (`<source> <target>`
//! for quivers, `<lower> <upper>` for poset covers).

use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::cluster::{ClusterPoset, ClusterVariable, Precluster};
use crate::error::{Error, Result};
use crate::linalg::Field;
use crate::poset::FinitePoset;
use crate::quiver::Quiver;
use crate::rep::Representation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
    Tsv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "dot" => Ok(Format::Dot),
            "tsv" => Ok(Format::Tsv),
            other => Err(Error::UnsupportedFormat(other.to_string())),
        }
    }
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Dot => "dot",
            Format::Tsv => "tsv",
        }
    }
}

struct Header {
    count: usize,
    pairs: Vec<(usize, usize, usize)>, // (line, a, b)
}

fn parse_pairs(text: &str) -> Result<Header> {
    let mut count = None;
    let mut pairs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let data = raw.split('#').next().unwrap_or("");
        let tokens: Vec<(usize, &str)> = tokenize(data);
        if tokens.is_empty() {
            continue;
        }
        let err = |column: usize, reason: String| Error::Parse {
            line,
            column,
            reason,
        };
        let number = |(col, tok): (usize, &str)| -> Result<usize> {
            tok.parse::<usize>().map_err(|_| {
                err(
                    col,
                    format!("expected a nonnegative integer, found '{tok}'"),
                )
            })
        };
        match count {
            None => {
                if tokens[0].1 != "n" {
                    return Err(err(tokens[0].0, "expected header 'n <count>'".into()));
                }
                if tokens.len() != 2 {
                    let col = tokens.get(2).map_or(tokens[0].0, |t| t.0);
                    return Err(err(col, "header takes exactly one count".into()));
                }
                count = Some(number(tokens[1])?);
            }
            Some(n) => {
                if tokens.len() != 2 {
                    let col = tokens.get(2).map_or(tokens[0].0, |t| t.0);
                    return Err(err(
                        col,
                        format!("expected two vertices, found {} fields", tokens.len()),
                    ));
                }
                let a = number(tokens[0])?;
                let b = number(tokens[1])?;
                for (tok, v) in [(tokens[0], a), (tokens[1], b)] {
                    if v == 0 || v > n {
                        return Err(err(tok.0, format!("vertex {v} out of range 1..={n}")));
                    }
                }
                pairs.push((line, a, b));
            }
        }
    }
    match count {
        Some(count) => Ok(Header { count, pairs }),
        None => Err(Error::Parse {
            line: text.lines().count().max(1),
            column: 1,
            reason: "missing header 'n <count>'".into(),
        }),
    }
}

// (1-based column, token)
fn tokenize(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in s.char_indices() {
        if ch.is_whitespace() {
            if let Some(st) = start.take() {
                out.push((s[..st].chars().count() + 1, &s[st..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(st) = start {
        out.push((s[..st].chars().count() + 1, &s[st..]));
    }
    out
}

pub fn parse_quiver(text: &str) -> Result<Quiver> {
    let h = parse_pairs(text)?;
    Quiver::new(h.count, h.pairs.iter().map(|&(_, a, b)| (a, b)))
}

pub fn emit_quiver(quiver: &Quiver) -> String {
    let mut s = format!("n {}\n", quiver.vertex_count());
    for a in quiver.arrows() {
        let _ = writeln!(s, "{} {}", a.source, a.target);
    }
    s
}

/// Parses a poset given by cover (or any generating) pairs.
pub fn parse_poset(text: &str) -> Result<FinitePoset> {
    let h = parse_pairs(text)?;
    let covers: Vec<(usize, usize)> = h.pairs.iter().map(|&(_, a, b)| (a - 1, b - 1)).collect();
    FinitePoset::from_covers(h.count, &covers)
}

pub fn emit_poset(poset: &FinitePoset) -> String {
    let mut s = format!("n {}\n", poset.size());
    for (a, b) in poset.hasse() {
        let _ = writeln!(s, "{} {}", a + 1, b + 1);
    }
    s
}

/// DOT label of a precluster, e.g. `(1,1), -e2`; the empty set is `{}`.
pub fn precluster_label(p: &Precluster) -> String {
    if p.is_empty() {
        "{}".to_string()
    } else {
        p.to_string()
    }
}

pub fn variable_tsv(p: &Precluster) -> String {
    p.vars()
        .iter()
        .map(ClusterVariable::to_string)
        .collect::<Vec<_>>()
        .join("\t")
}

/// Poset JSON: `{"elements": [...], "hasse": [[lower, upper], ...]}` with
/// 0-based element indices.
pub fn poset_json(elements: &[Precluster], hasse: &[(usize, usize)]) -> Value {
    json!({
        "elements": elements,
        "hasse": hasse.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
    })
}

pub fn poset_dot(name: &str, labels: &[String], hasse: &[(usize, usize)]) -> String {
    let mut s = format!("digraph {} {{\n  rankdir=BT;\n", dot_id(name));
    for (i, label) in labels.iter().enumerate() {
        let _ = writeln!(s, "  n{i} [label=\"{}\"];", label.replace('"', "\\\""));
    }
    for (a, b) in hasse {
        let _ = writeln!(s, "  n{a} -> n{b};");
    }
    s.push_str("}\n");
    s
}

fn dot_id(name: &str) -> String {
    let cleaned: String = name
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect();
    if cleaned.is_empty() {
        "G".into()
    } else {
        cleaned
    }
}

pub fn poset_tsv(labels: &[String], hasse: &[(usize, usize)]) -> String {
    let mut s = String::new();
    for (i, label) in labels.iter().enumerate() {
        let _ = writeln!(s, "node\t{i}\t{label}");
    }
    for (a, b) in hasse {
        let _ = writeln!(s, "cover\t{a}\t{b}");
    }
    s
}

pub fn cluster_poset_labels(p: &ClusterPoset) -> Vec<String> {
    p.clusters.iter().map(|c| precluster_label(c)).collect()
}

/// `{"dims": [...], "arrows": [{"source", "target", "matrix": [[..], ..]}]}`
/// with matrix rows of `"p/q"` strings.
pub fn representation_json<F: Field>(quiver: &Quiver, rep: &Representation<F>) -> Value {
    let arrows: Vec<Value> = quiver
        .arrows()
        .iter()
        .zip(rep.maps())
        .map(|(a, m)| {
            let rows: Vec<Vec<String>> = (0..m.rows())
                .map(|r| m.row(r).iter().map(Field::render).collect())
                .collect();
            json!({ "source": a.source, "target": a.target, "matrix": rows })
        })
        .collect();
    json!({ "dims": rep.dims(), "arrows": arrows })
}

/// Parses `-e3`, `e3`-style negatives or a comma-separated root `1,1`.
pub fn parse_variable(s: &str) -> Result<ClusterVariable> {
    let t = s.trim();
    let bad = |reason: &str| Error::Parse {
        line: 1,
        column: 1,
        reason: format!("cannot read cluster variable '{t}': {reason}"),
    };
    if let Some(rest) = t.strip_prefix("-e") {
        let vertex = rest.parse().map_err(|_| bad("expected -e<vertex>"))?;
        return Ok(ClusterVariable::neg(vertex));
    }
    let inner = t.trim_start_matches('(').trim_end_matches(')');
    let dim = inner
        .split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| bad("expected comma-separated integers"))?;
    Ok(ClusterVariable::root(dim))
}
