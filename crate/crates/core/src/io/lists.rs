//! List and coloring files. Colors are arbitrary whitespace-free tokens; a
//! [`Palette`] maps them to color ids in order of first appearance.
//!
//! ```text
//! 0: a b c        # list file
//! d 1             # coloring file header (optional, defaults to 1)
//! 0: a
//! ```

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use super::FormatError;
use crate::coloring::{Color, DefectiveColoring, ListAssignment};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Palette {
    tokens: Vec<String>,
    ids: HashMap<String, Color>,
}

impl Palette {
    pub fn new() -> Self {
        Palette::default()
    }

    /// Tokens `"0"`, `"1"`, ... mapped to the ids of the same value.
    pub fn numeric(size: usize) -> Self {
        let mut p = Palette::new();
        for c in 0..size {
            p.intern(&c.to_string());
        }
        p
    }

    pub fn intern(&mut self, token: &str) -> Color {
        if let Some(&id) = self.ids.get(token) {
            return id;
        }
        let id = self.tokens.len() as Color;
        self.tokens.push(token.to_string());
        self.ids.insert(token.to_string(), id);
        id
    }

    pub fn token(&self, id: Color) -> &str {
        &self.tokens[id as usize]
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// `id token` per line.
    pub fn emit(&self) -> String {
        self.tokens
            .iter()
            .enumerate()
            .map(|(id, t)| format!("{id} {t}\n"))
            .collect()
    }
}

/// `(line, vertex, tokens)` for vertex lines, `(line, words)` for the rest.
type VertexLine<'a> = (usize, usize, Vec<&'a str>);
type OtherLine<'a> = (usize, Vec<&'a str>);

fn vertex_lines(text: &str, n: usize) -> Result<(Vec<VertexLine<'_>>, Vec<OtherLine<'_>>), FormatError> {
    let mut body = Vec::new();
    let mut headers = Vec::new();
    let mut seen = vec![false; n];
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((head, rest)) = content.split_once(':') else {
            headers.push((line, content.split_whitespace().collect()));
            continue;
        };
        let v: usize = head.trim().parse().map_err(|_| FormatError::Parse {
            line,
            message: format!("expected a vertex number, found `{}`", head.trim()),
        })?;
        if v >= n {
            return Err(FormatError::UnknownVertex { line, vertex: v });
        }
        if seen[v] {
            return Err(FormatError::Parse {
                line,
                message: format!("vertex {v} listed twice"),
            });
        }
        seen[v] = true;
        body.push((line, v, rest.split_whitespace().collect()));
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        return Err(FormatError::Parse {
            line: text.lines().count().max(1),
            message: format!("no entry for vertex {v}"),
        });
    }
    Ok((body, headers))
}

/// Lists for vertices `0..n`; every vertex needs exactly one line.
pub fn parse_lists(text: &str, n: usize, palette: &mut Palette) -> Result<ListAssignment, FormatError> {
    let (body, headers) = vertex_lines(text, n)?;
    if let Some((line, _)) = headers.first() {
        return Err(FormatError::Parse {
            line: *line,
            message: "expected `<vertex>: <colors>`".into(),
        });
    }
    let mut lists = vec![BTreeSet::new(); n];
    for (line, v, tokens) in body {
        for t in tokens {
            if !lists[v].insert(palette.intern(t)) {
                return Err(FormatError::Parse {
                    line,
                    message: format!("color `{t}` repeated in the list of vertex {v}"),
                });
            }
        }
    }
    Ok(ListAssignment::new(lists))
}

/// Tokens are written in token order (numerically when they are numbers),
/// not id order, so the output does not depend on how ids were assigned.
pub fn emit_lists(lists: &ListAssignment, palette: &Palette) -> String {
    let mut out = String::new();
    for (v, list) in lists.lists().iter().enumerate() {
        let mut tokens: Vec<&str> = list.iter().map(|&c| palette.token(c)).collect();
        tokens.sort_by_key(|t| (t.parse::<u64>().ok().is_none(), t.parse::<u64>().ok(), *t));
        write!(out, "{v}:").unwrap();
        for t in tokens {
            write!(out, " {t}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// One color token per vertex. Colors outside a vertex's list are accepted
/// here; `verify_coloring` is what rejects them.
pub fn parse_coloring(
    text: &str,
    n: usize,
    palette: &mut Palette,
) -> Result<DefectiveColoring, FormatError> {
    let (body, headers) = vertex_lines(text, n)?;
    let mut impropriety = 1;
    for (line, words) in headers {
        match words.as_slice() {
            ["d", d] => {
                impropriety = d.parse().map_err(|_| FormatError::Parse {
                    line,
                    message: format!("bad impropriety `{d}`"),
                })?
            }
            _ => {
                return Err(FormatError::Parse {
                    line,
                    message: "expected `d <int>` or `<vertex>: <color>`".into(),
                })
            }
        }
    }
    let mut colors = vec![0; n];
    for (line, v, tokens) in body {
        match tokens.as_slice() {
            [t] => colors[v] = palette.intern(t),
            _ => {
                return Err(FormatError::Parse {
                    line,
                    message: format!("vertex {v} needs exactly one color"),
                })
            }
        }
    }
    Ok(DefectiveColoring {
        colors,
        impropriety,
    })
}

pub fn emit_coloring(phi: &DefectiveColoring, palette: &Palette) -> String {
    let mut out = format!("d {}\n", phi.impropriety);
    for (v, &c) in phi.colors.iter().enumerate() {
        writeln!(out, "{v}: {}", palette.token(c)).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify_coloring;
    use crate::graph::Graph;

    #[test]
    fn three_tokens_per_vertex() {
        let text: String = (0..4).map(|v| format!("{v}: a b c\n")).collect();
        let mut p = Palette::new();
        let lists = parse_lists(&text, 4, &mut p).unwrap();
        assert_eq!(lists.min_size(), 3);
        assert_eq!(p.len(), 3);
        assert_eq!(emit_lists(&lists, &p), text);
        assert_eq!(p.emit(), "0 a\n1 b\n2 c\n");
    }

    #[test]
    fn unknown_vertex() {
        let mut text: String = (0..10).map(|v| format!("{v}: a b c\n")).collect();
        text.push_str("99: a b c\n");
        assert_eq!(
            parse_lists(&text, 10, &mut Palette::new()),
            Err(FormatError::UnknownVertex {
                line: 11,
                vertex: 99
            })
        );
    }

    #[test]
    fn emit_ignores_id_order() {
        let text = "0: 1 3\n1: 0 2\n2: 0 3 10\n";
        let mut p = Palette::new();
        let lists = parse_lists(text, 3, &mut p).unwrap();
        assert_eq!(emit_lists(&lists, &p), text);
    }

    #[test]
    fn missing_and_repeated() {
        assert!(parse_lists("0: a\n", 2, &mut Palette::new()).is_err());
        assert!(parse_lists("0: a a\n", 1, &mut Palette::new()).is_err());
        assert!(parse_lists("0: a\n0: b\n", 1, &mut Palette::new()).is_err());
        assert!(parse_lists("zero: a\n", 1, &mut Palette::new()).is_err());
        assert!(parse_lists("d 1\n0: a\n", 1, &mut Palette::new()).is_err());
    }

    #[test]
    fn off_list_coloring_parses_but_fails_verification() {
        let mut p = Palette::new();
        let lists = parse_lists("0: a b\n1: a b\n", 2, &mut p).unwrap();
        let phi = parse_coloring("0: a\n1: z\n", 2, &mut p).unwrap();
        assert_eq!(phi.impropriety, 1);
        let verdict = verify_coloring(&Graph::path(2), &lists, &phi, 1);
        assert!(!verdict.is_ok());
        assert_eq!(emit_coloring(&phi, &p), "d 1\n0: a\n1: z\n");
    }

    #[test]
    fn coloring_header() {
        let mut p = Palette::new();
        let phi = parse_coloring("d 2\n0: x\n", 1, &mut p).unwrap();
        assert_eq!(phi.impropriety, 2);
        assert!(parse_coloring("0: x y\n", 1, &mut p).is_err());
        assert!(parse_coloring("k 2\n0: x\n", 1, &mut p).is_err());
    }
}
