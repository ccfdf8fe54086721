//! Text formats and deterministic corpus generators.

mod graph6;
mod lists;
mod rotation;

pub mod generators;

pub use graph6::{emit_graph6, parse_graph6};
pub use lists::{emit_coloring, emit_lists, parse_coloring, parse_lists, Palette};
pub use rotation::{emit_rotation, parse_rotation};

use thiserror::Error;

use crate::graph::{EmbeddedGraph, Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("malformed graph6: {0}")]
    MalformedGraph6(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("declared genus {declared} but the rotation has genus {computed}")]
    GenusMismatch { declared: usize, computed: usize },
    #[error("line {line}: unknown vertex {vertex}")]
    UnknownVertex { line: usize, vertex: usize },
    #[error("parameter {name}={value} is too small (minimum {min})")]
    ParameterTooSmall {
        name: &'static str,
        value: usize,
        min: usize,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A named graph, embedded or not, with the generator call that made it.
///
/// For embedded entries `graph` is the graph of the embedding; otherwise it
/// is kept normalized so that graph6 round-trips compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub graph: Graph,
    pub embedding: Option<EmbeddedGraph>,
    pub provenance: String,
}

impl CorpusEntry {
    pub fn abstract_graph(name: impl Into<String>, graph: &Graph, provenance: impl Into<String>) -> Self {
        CorpusEntry {
            name: name.into(),
            graph: graph.normalized(),
            embedding: None,
            provenance: provenance.into(),
        }
    }

    pub fn embedded(name: impl Into<String>, e: EmbeddedGraph, provenance: impl Into<String>) -> Self {
        CorpusEntry {
            name: name.into(),
            graph: e.graph().clone(),
            embedding: Some(e),
            provenance: provenance.into(),
        }
    }

    /// ```text
    /// name grid-4x4
    /// provenance grid m=4 n=4 diagonals=false
    /// rotation
    /// n 16 genus 1
    /// ...
    /// ```
    /// Abstract entries end with a `graph6 <string>` line instead.
    pub fn emit(&self) -> String {
        let mut out = format!("name {}\nprovenance {}\n", self.name, self.provenance);
        match &self.embedding {
            Some(e) => {
                out.push_str("rotation\n");
                out.push_str(&emit_rotation(e));
            }
            None => {
                out.push_str("graph6 ");
                out.push_str(&emit_graph6(&self.graph));
                out.push('\n');
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<CorpusEntry, FormatError> {
        let mut lines = text.lines();
        let mut field = |key: &str, line: usize| {
            lines
                .next()
                .and_then(|l| l.strip_prefix(key))
                .and_then(|l| l.strip_prefix(' '))
                .map(str::to_string)
                .ok_or(FormatError::Parse {
                    line,
                    message: format!("expected `{key} <value>`"),
                })
        };
        let name = field("name", 1)?;
        let provenance = field("provenance", 2)?;
        let rest: Vec<&str> = lines.collect();
        match rest.first() {
            Some(&"rotation") => {
                let body = rest[1..].join("\n");
                let e = parse_rotation(&body).map_err(|err| shift_lines(err, 3))?;
                Ok(CorpusEntry::embedded(name, e, provenance))
            }
            Some(l) if l.starts_with("graph6 ") && rest.len() == 1 => {
                let g = parse_graph6(&l["graph6 ".len()..])?;
                Ok(CorpusEntry::abstract_graph(name, &g, provenance))
            }
            _ => Err(FormatError::Parse {
                line: 3,
                message: "expected `rotation` or a single `graph6 <string>` line".into(),
            }),
        }
    }
}

fn shift_lines(err: FormatError, by: usize) -> FormatError {
    match err {
        FormatError::Parse { line, message } => FormatError::Parse {
            line: line + by,
            message,
        },
        FormatError::UnknownVertex { line, vertex } => FormatError::UnknownVertex {
            line: line + by,
            vertex,
        },
        other => other,
    }
}

/// Reads either a rotation file or a graph6 string, deciding by the first
/// meaningful line.
pub fn parse_graph_input(text: &str) -> Result<(Graph, Option<EmbeddedGraph>), FormatError> {
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("");
    if first.starts_with("n ") || first == "n" {
        let e = parse_rotation(text)?;
        Ok((e.graph().clone(), Some(e)))
    } else {
        Ok((parse_graph6(first)?, None))
    }
}

#[cfg(test)]
mod tests {
    use super::generators::{gen_torus_grid, k4_planar};
    use super::*;

    #[test]
    fn entry_round_trip() {
        for entry in [
            gen_torus_grid(3, 4, true).unwrap(),
            k4_planar(),
            CorpusEntry::abstract_graph("k5", &Graph::complete(5), "complete n=5"),
        ] {
            let text = entry.emit();
            let back = CorpusEntry::parse(&text).unwrap();
            assert_eq!(back, entry);
            assert_eq!(back.emit(), text);
        }
    }

    #[test]
    fn entry_errors() {
        assert!(CorpusEntry::parse("").is_err());
        assert!(CorpusEntry::parse("name a\nprovenance b\n").is_err());
        assert!(matches!(
            CorpusEntry::parse("name a\nprovenance b\nrotation\nn 2\n0: 1\n1: 7\n"),
            Err(FormatError::UnknownVertex { line: 6, vertex: 7 })
        ));
    }

    #[test]
    fn graph_input_detection() {
        let (g, e) = parse_graph_input("C~\n").unwrap();
        assert_eq!(g.edge_count(), 6);
        assert!(e.is_none());
        let (g, e) = parse_graph_input(&emit_rotation(k4_planar().embedding.as_ref().unwrap())).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert_eq!(e.unwrap().genus(), 0);
    }
}
