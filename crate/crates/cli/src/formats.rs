//! Instance file formats.
//!
//! Graphs use the DIMACS edge format:
//!
//! ```text
//! c optional comments
//! p edge <n> <m>
//! e <u> <v>        (m lines, 1-based vertices)
//! ```
//!
//! Set systems use a two-number header followed by one line per set:
//!
//! ```text
//! <n_ground> <m>
//! <elements of set 1, 1-based, space separated>
//! ...
//! ```

use std::fmt::Write;

use thiserror::Error;

use subsetfpt_core::{ElementSet, Graph, SetSystem, MAX_ELEMENTS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("missing `p edge <n> <m>` line")]
    MissingHeader,

    #[error("line {line}: malformed header `{content}`")]
    MalformedHeader { line: usize, content: String },

    #[error("line {line}: malformed line `{content}`")]
    MalformedLine { line: usize, content: String },

    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },

    #[error("line {line}: element {element} out of range 1..={n}")]
    ElementOutOfRange { line: usize, element: usize, n: usize },

    #[error("expected {expected} set lines, found {found}")]
    WrongLineCount { expected: usize, found: usize },

    #[error("{what} of {n} exceeds the supported maximum of {MAX_ELEMENTS}")]
    Capacity { what: &'static str, n: usize },

    #[error("a set system needs at least one set")]
    NoSets,
}

/// A parsed graph plus what normalization threw away.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub dropped_duplicates: usize,
    pub dropped_self_loops: usize,
}

fn numbers<const N: usize>(fields: &[&str]) -> Option<[usize; N]> {
    if fields.len() != N {
        return None;
    }
    let mut out = [0; N];
    for (slot, f) in out.iter_mut().zip(fields) {
        *slot = f.parse().ok()?;
    }
    Some(out)
}

pub fn parse_graph(text: &str) -> Result<ParsedGraph, ParseError> {
    let mut n = None;
    let mut adj: Vec<ElementSet> = Vec::new();
    let mut dropped_duplicates = 0;
    let mut dropped_self_loops = 0;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        let fields: Vec<&str> = content.split_whitespace().collect();
        match fields.first() {
            None | Some(&"c") => continue,
            Some(&"p") => {
                let header = (fields.len() == 4 && fields[1] == "edge")
                    .then(|| numbers::<2>(&fields[2..]))
                    .flatten();
                let Some([nv, _]) = header.filter(|_| n.is_none()) else {
                    return Err(ParseError::MalformedHeader { line, content: content.into() });
                };
                if nv > MAX_ELEMENTS {
                    return Err(ParseError::Capacity { what: "vertex count", n: nv });
                }
                n = Some(nv);
                adj = vec![ElementSet::EMPTY; nv];
            }
            Some(&"e") => {
                let nv = n.ok_or(ParseError::MissingHeader)?;
                let [u, v] = numbers::<2>(&fields[1..])
                    .ok_or_else(|| ParseError::MalformedLine { line, content: content.into() })?;
                for vertex in [u, v] {
                    if vertex == 0 || vertex > nv {
                        return Err(ParseError::VertexOutOfRange { line, vertex, n: nv });
                    }
                }
                let (u, v) = (u - 1, v - 1);
                if u == v {
                    dropped_self_loops += 1;
                } else if adj[u].contains(v) {
                    dropped_duplicates += 1;
                } else {
                    adj[u].insert(v);
                    adj[v].insert(u);
                }
            }
            Some(_) => return Err(ParseError::MalformedLine { line, content: content.into() }),
        }
    }

    let n = n.ok_or(ParseError::MissingHeader)?;
    let edges = (0..n).flat_map(|u| adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)));
    let graph = Graph::new(n, edges).expect("edges validated while parsing");
    Ok(ParsedGraph {
        graph,
        dropped_duplicates,
        dropped_self_loops,
    })
}

pub fn render_graph(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n_vertices(), g.n_edges());
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

pub fn parse_setsystem(text: &str) -> Result<SetSystem, ParseError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(ParseError::MalformedHeader {
        line: 1,
        content: String::new(),
    })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [n_ground, m] = numbers::<2>(&fields).ok_or_else(|| ParseError::MalformedHeader {
        line: 1,
        content: header.trim().into(),
    })?;
    if n_ground > MAX_ELEMENTS {
        return Err(ParseError::Capacity { what: "ground set size", n: n_ground });
    }
    if m > MAX_ELEMENTS {
        return Err(ParseError::Capacity { what: "set count", n: m });
    }
    if m == 0 {
        return Err(ParseError::NoSets);
    }

    let body: Vec<(usize, &str)> = lines.map(|(i, l)| (i + 1, l)).collect();
    // trailing blank lines past the m-th are tolerated
    let extra = body.iter().skip(m).filter(|(_, l)| !l.trim().is_empty()).count();
    if body.len() < m || extra > 0 {
        return Err(ParseError::WrongLineCount {
            expected: m,
            found: body.len().min(m) + extra,
        });
    }

    let mut sets = Vec::with_capacity(m);
    for &(line, content) in &body[..m] {
        let mut set = ElementSet::EMPTY;
        for field in content.split_whitespace() {
            let element: usize = field
                .parse()
                .map_err(|_| ParseError::MalformedLine { line, content: content.trim().into() })?;
            if element == 0 || element > n_ground {
                return Err(ParseError::ElementOutOfRange { line, element, n: n_ground });
            }
            set.insert(element - 1);
        }
        sets.push(set);
    }
    Ok(SetSystem::new(n_ground, sets).expect("set system validated while parsing"))
}

pub fn render_setsystem(sys: &SetSystem) -> String {
    let mut out = format!("{} {}\n", sys.n_ground(), sys.n_sets());
    for s in sys.sets() {
        let line: Vec<String> = s.iter().map(|x| (x + 1).to_string()).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimacs_examples() {
        let tri = parse_graph("p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!(tri.graph, Graph::complete(3));
        let path = parse_graph("c a path\np edge 3 2\ne 1 2\ne 2 3\n").unwrap();
        assert_eq!(path.graph, Graph::path(3));
        assert_eq!(
            parse_graph("p edge 2 1\ne 1 3\n"),
            Err(ParseError::VertexOutOfRange { line: 2, vertex: 3, n: 2 })
        );
    }

    #[test]
    fn dimacs_normalizes_multigraphs() {
        let g = parse_graph("p edge 3 4\ne 1 2\ne 2 1\ne 3 3\ne 2 3\n").unwrap();
        assert_eq!(g.graph, Graph::path(3));
        assert_eq!((g.dropped_duplicates, g.dropped_self_loops), (1, 1));
    }

    #[test]
    fn dimacs_errors() {
        assert_eq!(parse_graph("c nothing\n"), Err(ParseError::MissingHeader));
        assert_eq!(parse_graph("e 1 2\np edge 2 1\n"), Err(ParseError::MissingHeader));
        assert!(matches!(parse_graph("p col 3 0\n"), Err(ParseError::MalformedHeader { .. })));
        assert!(matches!(
            parse_graph("p edge 3 0\np edge 3 0\n"),
            Err(ParseError::MalformedHeader { line: 2, .. })
        ));
        assert!(matches!(parse_graph("p edge 3 1\ne 1\n"), Err(ParseError::MalformedLine { .. })));
        assert!(matches!(parse_graph("p edge 3 1\nx 1 2\n"), Err(ParseError::MalformedLine { .. })));
        assert!(matches!(parse_graph("p edge 65 0\n"), Err(ParseError::Capacity { .. })));
    }

    #[test]
    fn setsystem_examples() {
        let two = parse_setsystem("4 2\n1 2\n3 4\n").unwrap();
        assert_eq!(two.sets(), &[ElementSet::from_bits(0b0011), ElementSet::from_bits(0b1100)]);
        let one = parse_setsystem("2 1\n1 2\n").unwrap();
        assert!(one.covers(ElementSet::singleton(0)));
        assert_eq!(
            parse_setsystem("3 1\n4\n"),
            Err(ParseError::ElementOutOfRange { line: 2, element: 4, n: 3 })
        );
    }

    #[test]
    fn setsystem_line_counts() {
        assert_eq!(
            parse_setsystem("3 2\n1\n"),
            Err(ParseError::WrongLineCount { expected: 2, found: 1 })
        );
        assert_eq!(
            parse_setsystem("3 1\n1\n2\n"),
            Err(ParseError::WrongLineCount { expected: 1, found: 2 })
        );
        // an empty set is a blank line
        let sys = parse_setsystem("3 2\n1 2 3\n\n").unwrap();
        assert_eq!(sys.sets()[1], ElementSet::EMPTY);
        assert_eq!(parse_setsystem("3 0\n"), Err(ParseError::NoSets));
    }
}
