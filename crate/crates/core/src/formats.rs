//! Text file formats.
//!
//! Vector sets:
//! ```text
//! p=3 d=2
//! 1,0
//! 2,2
//! ```
//! Graphs: a header `p=<p> t=<t> policy=<policy> n=<n>` followed by one
//! adjacency row per vertex as a hex bitset (see [`BitSet::to_hex`]).
//!
//! Hypergraphs: a `parts=<n_1>,…,<n_l>` line followed by one edge per line
//! as `v_1,…,v_l;<weight>` with the weight written `num/den` or as an
//! integer. In all formats blank lines and lines starting with `#` are
//! skipped.

use std::fmt::Write as _;

use thiserror::Error;

use crate::bitset::BitSet;
use crate::container::{EdgeMeasure, PartiteHypergraph};
use crate::gf::{FVector, FieldSpec};
use crate::graph::{BitGraph, OrthoGraph, VertexPolicy};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing header")]
    MissingHeader,
    #[error("{0}")]
    Invalid(String),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

/// Non-empty, non-comment lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses `key=value` pairs separated by whitespace, in the given order.
fn header_fields<'a>(line: usize, text: &'a str, keys: &[&str]) -> Result<Vec<&'a str>, FormatError> {
    let pairs: Vec<&str> = text.split_whitespace().collect();
    if pairs.len() != keys.len() {
        return Err(syntax(line, format!("expected header fields {}", keys.join(", "))));
    }
    pairs
        .iter()
        .zip(keys)
        .map(|(pair, key)| match pair.split_once('=') {
            Some((k, v)) if k == *key => Ok(v),
            _ => Err(syntax(line, format!("expected `{key}=`"))),
        })
        .collect()
}

fn number<T: std::str::FromStr>(line: usize, s: &str, what: &str) -> Result<T, FormatError> {
    s.trim().parse().map_err(|_| syntax(line, format!("bad {what} `{s}`")))
}

pub fn write_vector_set(field: FieldSpec, d: usize, vectors: &[FVector]) -> String {
    let mut out = format!("p={} d={}\n", field.p(), d);
    for v in vectors {
        let coords: Vec<String> = v.coords().iter().map(u32::to_string).collect();
        out.push_str(&coords.join(","));
        out.push('\n');
    }
    out
}

pub fn parse_vector_set(text: &str) -> Result<(FieldSpec, usize, Vec<FVector>), FormatError> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or(FormatError::MissingHeader)?;
    let fields = header_fields(line, header, &["p", "d"])?;
    let p: u64 = number(line, fields[0], "prime")?;
    let d: usize = number(line, fields[1], "dimension")?;
    let field = FieldSpec::new(p).map_err(|e| syntax(line, e.to_string()))?;
    let mut vectors = Vec::new();
    for (line, text) in lines {
        let coords = text
            .split(',')
            .map(|c| number::<u32>(line, c, "coordinate"))
            .collect::<Result<Vec<_>, _>>()?;
        if coords.len() != d {
            return Err(syntax(line, format!("expected {d} coordinates, found {}", coords.len())));
        }
        vectors.push(FVector::new(field, coords).map_err(|e| syntax(line, e.to_string()))?);
    }
    Ok((field, d, vectors))
}

pub fn write_graph(g: &OrthoGraph) -> String {
    let mut out = format!(
        "p={} t={} policy={} n={}\n",
        g.field().p(),
        g.t(),
        g.policy().as_str(),
        g.n()
    );
    for row in g.graph().rows() {
        out.push_str(&row.to_hex());
        out.push('\n');
    }
    out
}

pub fn parse_graph(text: &str) -> Result<OrthoGraph, FormatError> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or(FormatError::MissingHeader)?;
    let fields = header_fields(line, header, &["p", "t", "policy", "n"])?;
    let p: u64 = number(line, fields[0], "prime")?;
    let t: usize = number(line, fields[1], "dimension")?;
    let policy = VertexPolicy::parse(fields[2]).ok_or_else(|| syntax(line, format!("unknown policy `{}`", fields[2])))?;
    let n: usize = number(line, fields[3], "vertex count")?;
    let field = FieldSpec::new(p).map_err(|e| syntax(line, e.to_string()))?;
    let mut rows = Vec::with_capacity(n);
    for (line, text) in lines {
        rows.push(BitSet::from_hex(n, text).ok_or_else(|| syntax(line, "bad adjacency row"))?);
    }
    if rows.len() != n {
        return Err(FormatError::Invalid(format!("expected {n} rows, found {}", rows.len())));
    }
    let graph = BitGraph::from_rows(rows)
        .ok_or_else(|| FormatError::Invalid("adjacency must be symmetric with an empty diagonal".into()))?;
    OrthoGraph::from_parts(field, t, policy, graph).map_err(|e| FormatError::Invalid(format!("{e} (header n={n})")))
}

pub fn write_hypergraph(h: &PartiteHypergraph, nu: &EdgeMeasure) -> String {
    let sizes: Vec<String> = h.part_sizes().iter().map(usize::to_string).collect();
    let mut out = format!("parts={}\n", sizes.join(","));
    for (edge, w) in h.edges().iter().zip(nu.weights()) {
        let vs: Vec<String> = edge.iter().map(u32::to_string).collect();
        let _ = writeln!(out, "{};{}", vs.join(","), rational::format(w));
    }
    out
}

pub fn parse_hypergraph(text: &str) -> Result<(PartiteHypergraph, EdgeMeasure), FormatError> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or(FormatError::MissingHeader)?;
    let sizes = header
        .strip_prefix("parts=")
        .ok_or_else(|| syntax(line, "expected `parts=`"))?
        .split(',')
        .map(|s| number::<usize>(line, s, "part size"))
        .collect::<Result<Vec<_>, _>>()?;
    let mut edges = Vec::new();
    let mut weights: Vec<Rational> = Vec::new();
    for (line, text) in lines {
        let (vs, w) = text.split_once(';').ok_or_else(|| syntax(line, "expected `vertices;weight`"))?;
        let edge = vs
            .split(',')
            .map(|v| number::<u32>(line, v, "vertex"))
            .collect::<Result<Vec<_>, _>>()?;
        let weight = rational::parse(w).ok_or_else(|| syntax(line, format!("bad weight `{w}`")))?;
        edges.push(edge);
        weights.push(weight);
    }
    let h = PartiteHypergraph::new(sizes, edges).map_err(|e| FormatError::Invalid(e.to_string()))?;
    let nu = EdgeMeasure::new(&h, weights).map_err(|e| FormatError::Invalid(e.to_string()))?;
    Ok((h, nu))
}

/// Parses `0,1;2;` style tuples: parts separated by `;`, members by `,`.
/// Empty parts are allowed.
pub fn parse_index_tuple(text: &str) -> Result<Vec<Vec<usize>>, FormatError> {
    text.split(';')
        .map(|part| {
            let part = part.trim();
            if part.is_empty() {
                return Ok(Vec::new());
            }
            part.split(',')
                .map(|v| v.trim().parse().map_err(|_| FormatError::Invalid(format!("bad index `{v}`"))))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_ortho_graph;

    #[test]
    fn vector_set_round_trip() {
        let f = FieldSpec::new(3).unwrap();
        let vs = vec![
            FVector::new(f, vec![1, 0]).unwrap(),
            FVector::new(f, vec![2, 2]).unwrap(),
        ];
        let text = write_vector_set(f, 2, &vs);
        assert_eq!(text, "p=3 d=2\n1,0\n2,2\n");
        assert_eq!(parse_vector_set(&text).unwrap(), (f, 2, vs));
        assert_eq!(parse_vector_set("p=3 d=1\n"), Ok((f, 1, vec![])));
    }

    #[test]
    fn vector_set_errors() {
        assert!(matches!(parse_vector_set(""), Err(FormatError::MissingHeader)));
        assert!(matches!(parse_vector_set("p=4 d=1\n1\n"), Err(FormatError::Syntax { line: 1, .. })));
        assert!(matches!(parse_vector_set("p=3 d=2\n1,0,0\n"), Err(FormatError::Syntax { line: 2, .. })));
        assert!(matches!(parse_vector_set("p=3 d=1\n# c\n3\n"), Err(FormatError::Syntax { line: 3, .. })));
    }

    #[test]
    fn graph_round_trip() {
        let g = build_ortho_graph(FieldSpec::new(3).unwrap(), 2, VertexPolicy::AllNonzero, 4096).unwrap();
        let text = write_graph(&g);
        assert!(text.starts_with("p=3 t=2 policy=all-nonzero n=8\n"));
        assert_eq!(parse_graph(&text).unwrap(), g);
        let broken = text.replacen("n=8", "n=7", 1);
        assert!(parse_graph(&broken).is_err());
    }

    #[test]
    fn hypergraph_round_trip() {
        let text = "# base case\nparts=3\n0;1/3\n1;2/3\n";
        let (h, nu) = parse_hypergraph(text).unwrap();
        assert_eq!(h.part_sizes(), &[3]);
        assert_eq!(nu.weights()[1], rational::rat(2, 3));
        let again = write_hypergraph(&h, &nu);
        assert_eq!(parse_hypergraph(&again).unwrap(), (h, nu));
        assert!(parse_hypergraph("parts=2\n0;x\n").is_err());
        assert!(parse_hypergraph("parts=2\n5;1\n").is_err());
    }

    #[test]
    fn index_tuples() {
        assert_eq!(parse_index_tuple("0,1;2;").unwrap(), vec![vec![0, 1], vec![2], vec![]]);
        assert_eq!(parse_index_tuple("3").unwrap(), vec![vec![3]]);
        assert!(parse_index_tuple("a").is_err());
    }
}
