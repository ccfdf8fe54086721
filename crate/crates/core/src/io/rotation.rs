//! Line-oriented rotation files:
//!
//! ```text
//! n 4 genus 0
//! 0: 1 2 3
//! 1: 0 3 2
//! 2: 0 1 3
//! 3: 0 2 1
//! ```
//!
//! The header gives the vertex count and optionally the genus the embedding
//! is expected to have; each vertex line lists its neighbors in cyclic order.
//! Blank lines and `#` comments are ignored.

use std::fmt::Write as _;

use super::FormatError;
use crate::graph::EmbeddedGraph;

pub fn parse_rotation(text: &str) -> Result<EmbeddedGraph, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(FormatError::Parse {
        line: 1,
        message: "missing `n <count>` header".into(),
    })?;
    let words: Vec<&str> = header.split_whitespace().collect();
    let parse_num = |w: &str, line: usize| {
        w.parse::<usize>().map_err(|_| FormatError::Parse {
            line,
            message: format!("expected a number, found `{w}`"),
        })
    };
    let (n, declared) = match words.as_slice() {
        ["n", count] => (parse_num(count, hline)?, None),
        ["n", count, "genus", g] => (parse_num(count, hline)?, Some(parse_num(g, hline)?)),
        _ => {
            return Err(FormatError::Parse {
                line: hline,
                message: "header must read `n <count> [genus <g>]`".into(),
            })
        }
    };
    let mut rotation: Vec<Option<Vec<usize>>> = vec![None; n];
    for (line, content) in lines {
        let (head, rest) = content.split_once(':').ok_or(FormatError::Parse {
            line,
            message: "expected `<vertex>: <neighbors>`".into(),
        })?;
        let v = parse_num(head.trim(), line)?;
        if v >= n {
            return Err(FormatError::UnknownVertex { line, vertex: v });
        }
        if rotation[v].is_some() {
            return Err(FormatError::Parse {
                line,
                message: format!("vertex {v} listed twice"),
            });
        }
        let mut nbrs = Vec::new();
        for w in rest.split_whitespace() {
            let u = parse_num(w, line)?;
            if u >= n {
                return Err(FormatError::UnknownVertex { line, vertex: u });
            }
            nbrs.push(u);
        }
        rotation[v] = Some(nbrs);
    }
    let rotation = rotation
        .into_iter()
        .enumerate()
        .map(|(v, r)| {
            r.ok_or(FormatError::Parse {
                line: hline,
                message: format!("no rotation line for vertex {v}"),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let embedded = EmbeddedGraph::from_rotation(rotation)?;
    if let Some(g) = declared {
        if g != embedded.genus() {
            return Err(FormatError::GenusMismatch {
                declared: g,
                computed: embedded.genus(),
            });
        }
    }
    Ok(embedded)
}

/// Header with the computed genus, then one line per vertex in ascending
/// order.
pub fn emit_rotation(e: &EmbeddedGraph) -> String {
    let mut out = format!("n {} genus {}\n", e.vertex_count(), e.genus());
    for (v, rot) in e.rotation().iter().enumerate() {
        write!(out, "{v}:").unwrap();
        for u in rot {
            write!(out, " {u}").unwrap();
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphError;

    const K4: &str = "n 4\n0: 1 2 3\n1: 0 3 2\n2: 0 1 3\n3: 0 2 1\n";

    #[test]
    fn parses_k4() {
        let e = parse_rotation(K4).unwrap();
        assert_eq!(e.genus(), 0);
        assert_eq!(
            emit_rotation(&e),
            "n 4 genus 0\n0: 1 2 3\n1: 0 3 2\n2: 0 1 3\n3: 0 2 1\n"
        );
    }

    #[test]
    fn genus_mismatch() {
        let text = K4.replacen("n 4", "n 4 genus 1", 1);
        assert_eq!(
            parse_rotation(&text),
            Err(FormatError::GenusMismatch {
                declared: 1,
                computed: 0
            })
        );
    }

    #[test]
    fn comments_and_order() {
        let text = "# K4\nn 4 genus 0\n\n3: 0 2 1 # last\n0: 1 2 3\n1: 0 3 2\n2: 0 1 3\n";
        assert_eq!(parse_rotation(text).unwrap(), parse_rotation(K4).unwrap());
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_rotation(""), Err(FormatError::Parse { line: 1, .. })));
        assert!(matches!(
            parse_rotation("n 2\n0: 1\n1: 0 5\n"),
            Err(FormatError::UnknownVertex { line: 3, vertex: 5 })
        ));
        assert!(matches!(
            parse_rotation("n 2\n0: 1\n0: 1\n"),
            Err(FormatError::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_rotation("n 2\n0: 1\n"),
            Err(FormatError::Parse { .. })
        ));
        assert_eq!(
            parse_rotation("n 2\n0: 1\n1:\n"),
            Err(FormatError::Graph(GraphError::AsymmetricAdjacency(0, 1)))
        );
        assert!(matches!(
            parse_rotation("graph 4\n"),
            Err(FormatError::Parse { line: 1, .. })
        ));
    }
}
