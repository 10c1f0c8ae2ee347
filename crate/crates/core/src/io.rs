//! Text formats: whitespace edge lists, graph6, and DOT export.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

const GRAPH6_HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Edgelist,
    Graph6,
}

/// A graph read from text, with the label each dense vertex id came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub labels: Vec<String>,
    pub format: Format,
}

/// Picks graph6 when the first content line is a single token made of
/// graph6 characters, edge list otherwise.
pub fn detect_format(text: &str) -> Format {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'));
    match first {
        Some(line) => {
            let body = line.strip_prefix(GRAPH6_HEADER).unwrap_or(line);
            if !body.is_empty() && body.bytes().all(|b| (63..=126).contains(&b)) {
                Format::Graph6
            } else {
                Format::Edgelist
            }
        }
        None => Format::Edgelist,
    }
}

/// Parses a single graph in the given format, or autodetects when `format` is `None`.
pub fn parse_graph(text: &str, format: Option<Format>) -> Result<ParsedGraph> {
    match format.unwrap_or_else(|| detect_format(text)) {
        Format::Edgelist => parse_edge_list(text),
        Format::Graph6 => {
            let mut lines = text
                .lines()
                .enumerate()
                .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
            let (idx, line) = lines
                .next()
                .ok_or_else(|| Error::input("no graph6 line in input"))?;
            if let Some((extra, _)) = lines.next() {
                return Err(Error::Parse {
                    line: extra + 1,
                    column: 1,
                    message: "expected a single graph".into(),
                });
            }
            let graph = decode_graph6(line.trim()).map_err(|e| match e {
                Error::Parse { column, message, .. } => Error::Parse {
                    line: idx + 1,
                    column,
                    message,
                },
                other => other,
            })?;
            let labels = (0..graph.n()).map(|v| v.to_string()).collect();
            Ok(ParsedGraph {
                graph,
                labels,
                format: Format::Graph6,
            })
        }
    }
}

/// One edge per line as two whitespace-separated labels. `#` starts a
/// comment; blank lines are skipped. Labels are compacted to dense ids in
/// order of first appearance.
pub fn parse_edge_list(text: &str) -> Result<ParsedGraph> {
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut pairs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let tokens: Vec<(usize, &str)> = tokens_with_columns(line);
        if tokens.is_empty() {
            continue;
        }
        if tokens.len() != 2 {
            let column = tokens.get(2).map(|t| t.0).unwrap_or(line.len() + 1);
            return Err(Error::Parse {
                line: lineno + 1,
                column,
                message: format!("expected two vertex labels, found {}", tokens.len()),
            });
        }
        if tokens[0].1 == tokens[1].1 {
            return Err(Error::Parse {
                line: lineno + 1,
                column: tokens[1].0,
                message: format!("self-loop at vertex {}", tokens[0].1),
            });
        }
        let mut id = |label: &str| -> Result<usize> {
            if let Some(&i) = ids.get(label) {
                return Ok(i);
            }
            if labels.len() == MAX_VERTICES {
                return Err(Error::capability(format!(
                    "more than {MAX_VERTICES} distinct vertices"
                )));
            }
            ids.insert(label.to_string(), labels.len());
            labels.push(label.to_string());
            Ok(labels.len() - 1)
        };
        let a = id(tokens[0].1)?;
        let b = id(tokens[1].1)?;
        pairs.push((a, b));
    }
    let graph = Graph::from_edges(labels.len(), &pairs)?;
    Ok(ParsedGraph {
        graph,
        labels,
        format: Format::Edgelist,
    })
}

fn tokens_with_columns(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

/// Writes the graph as `u v` lines using dense ids.
pub fn write_edge_list(g: &Graph) -> String {
    let mut s = String::new();
    for e in g.edges() {
        let _ = writeln!(s, "{} {}", e.u, e.v);
    }
    s
}

/// Standard graph6 encoding (upper triangle column by column, six bits per
/// byte, offset 63).
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Decodes one graph6 string (optionally prefixed with `>>graph6<<`).
/// Errors carry the 1-based byte column.
pub fn decode_graph6(s: &str) -> Result<Graph> {
    let (offset, body) = match s.strip_prefix(GRAPH6_HEADER) {
        Some(rest) => (GRAPH6_HEADER.len(), rest),
        None => (0, s),
    };
    let bytes = body.as_bytes();
    let perr = |i: usize, message: String| Error::Parse {
        line: 1,
        column: offset + i + 1,
        message,
    };
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(perr(i, format!("byte {b:#x} is not a graph6 character")));
        }
    }
    let (n, start) = match bytes.first() {
        None => return Err(perr(0, "empty graph6 string".into())),
        Some(&126) => {
            if bytes.get(1) == Some(&126) {
                return Err(Error::capability("graph6 orders above 258047 are not supported"));
            }
            if bytes.len() < 4 {
                return Err(perr(bytes.len(), "truncated graph6 order".into()));
            }
            let n = bytes[1..4]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, 4)
        }
        Some(&b) => ((b - 63) as usize, 1),
    };
    if n > MAX_VERTICES {
        return Err(Error::capability(format!(
            "graph6 order {n} exceeds {MAX_VERTICES} vertices"
        )));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = start + nbits.div_ceil(6);
    if bytes.len() != expected {
        return Err(perr(
            bytes.len().min(expected),
            format!("expected {expected} bytes for order {n}, found {}", bytes.len()),
        ));
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            let byte = bytes[start + k / 6] - 63;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                g.add_edge(u, v)?;
            }
            k += 1;
        }
    }
    if nbits % 6 != 0 {
        let last = bytes[expected - 1] - 63;
        if last & ((1u8 << (6 - nbits % 6)) - 1) != 0 {
            return Err(perr(expected - 1, "nonzero padding bits".into()));
        }
    }
    Ok(g)
}

/// DOT rendering of a graph, labelled by `labels` when given.
pub fn graph_to_dot(g: &Graph, labels: Option<&[String]>) -> String {
    let name = |v: usize| labels.map(|l| l[v].clone()).unwrap_or_else(|| v.to_string());
    let mut s = String::from("graph G {\n");
    for v in 0..g.n() {
        let _ = writeln!(s, "  \"{}\";", name(v));
    }
    for e in g.edges() {
        let _ = writeln!(s, "  \"{}\" -- \"{}\";", name(e.u), name(e.v));
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn k4_encodes_to_c_tilde() {
        let k4 = named::complete(4).unwrap();
        assert_eq!(encode_graph6(&k4), "C~");
        assert_eq!(decode_graph6("C~").unwrap(), k4);
    }

    #[test]
    fn known_graph6_strings() {
        // P3 = 0-1-2: bits (0,1)=1 (0,2)=0 (1,2)=1 -> 101000 = 40 -> 'g'
        assert_eq!(encode_graph6(&named::path(3).unwrap()), "Bg");
        assert_eq!(encode_graph6(&Graph::empty(0).unwrap()), "?");
        assert_eq!(encode_graph6(&named::complete(2).unwrap()), "A_");
        let big = named::cycle(63).unwrap();
        let s = encode_graph6(&big);
        assert!(s.starts_with("~??~"));
        assert_eq!(decode_graph6(&s).unwrap(), big);
    }

    #[test]
    fn graph6_errors() {
        assert!(matches!(decode_graph6("C~~"), Err(Error::Parse { .. })));
        assert!(matches!(decode_graph6("C"), Err(Error::Parse { .. })));
        assert!(matches!(decode_graph6("C~ "), Err(Error::Parse { column: 3, .. })));
        // order 3 uses 3 bits; the low three padding bits must be clear
        assert!(matches!(decode_graph6("B@"), Err(Error::Parse { .. })));
        assert_eq!(decode_graph6(">>graph6<<C~").unwrap().edge_count(), 6);
    }

    #[test]
    fn edge_list_parsing() {
        let text = "# a triangle\na b\n\nb c  # trailing\nc a\n";
        let p = parse_graph(text, None).unwrap();
        assert_eq!(p.format, Format::Edgelist);
        assert_eq!(p.labels, vec!["a", "b", "c"]);
        assert!(p.graph.is_triangle());

        let err = parse_edge_list("0 1\n1 2 3\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                column: 5,
                message: "expected two vertex labels, found 3".into()
            }
        );
        assert!(matches!(parse_edge_list("0 1\n4\n"), Err(Error::Parse { line: 2, column: 2, .. })));
        assert!(matches!(parse_edge_list("x x\n"), Err(Error::Parse { line: 1, column: 3, .. })));
    }

    #[test]
    fn autodetects_graph6() {
        assert_eq!(detect_format("# comment\nC~\n"), Format::Graph6);
        assert_eq!(detect_format("0 1\n"), Format::Edgelist);
        let p = parse_graph("C~\n", None).unwrap();
        assert_eq!(p.format, Format::Graph6);
        assert_eq!(p.graph.edge_count(), 6);
        assert!(parse_graph("C~\nC~\n", Some(Format::Graph6)).is_err());
    }
}
