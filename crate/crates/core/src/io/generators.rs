//! Deterministic graph families used as test corpora.

use super::{CorpusEntry, FormatError};
use crate::graph::{EmbeddedGraph, Graph, Vertex};

/// `C_m x C_n` on the torus. Vertex `(i, j)` gets id `i * n + j`; the
/// rotation at each vertex is N, E, S, W. With `diagonals`, every quad gets
/// the edge from its south-west corner `(i+1, j)` to its north-east corner
/// `(i, j+1)`, and the rotation becomes N, NE, E, S, SW, W.
pub fn gen_torus_grid(m: usize, n: usize, diagonals: bool) -> Result<CorpusEntry, FormatError> {
    for (name, value) in [("m", m), ("n", n)] {
        if value < 3 {
            return Err(FormatError::ParameterTooSmall { name, value, min: 3 });
        }
    }
    let id = |i: usize, j: usize| (i % m) * n + (j % n);
    let rotation = (0..m * n)
        .map(|v| {
            let (i, j) = (v / n + m, v % n + n);
            let (north, east, south, west) = (id(i - 1, j), id(i, j + 1), id(i + 1, j), id(i, j - 1));
            if diagonals {
                vec![north, id(i - 1, j + 1), east, south, id(i + 1, j - 1), west]
            } else {
                vec![north, east, south, west]
            }
        })
        .collect();
    let e = EmbeddedGraph::from_rotation(rotation)?;
    let suffix = if diagonals { "-diag" } else { "" };
    Ok(CorpusEntry::embedded(
        format!("grid-{m}x{n}{suffix}"),
        e,
        format!("grid m={m} n={n} diagonals={diagonals}"),
    ))
}

/// Replaces every edge by a path with `k` inner vertices. Original vertices
/// keep their ids; inner vertices are numbered after them, edge by edge in
/// sorted edge order, from the smaller endpoint towards the larger. An
/// embedding carries over with each neighbor replaced by the first inner
/// vertex on the way to it. `k = 0` returns a copy.
pub fn gen_subdivision(entry: &CorpusEntry, k: usize) -> CorpusEntry {
    let g = &entry.graph;
    let n = g.vertex_count();
    let mut adj: Vec<Vec<Vertex>> = match &entry.embedding {
        Some(e) => e.rotation().to_vec(),
        None => g.adjacency().to_vec(),
    };
    if k > 0 {
        let mut next = n;
        for (u, v) in g.edges() {
            let inner: Vec<Vertex> = (next..next + k).collect();
            next += k;
            let path: Vec<Vertex> = std::iter::once(u)
                .chain(inner.iter().copied())
                .chain(std::iter::once(v))
                .collect();
            for w in path.windows(3) {
                adj.push(vec![w[0], w[2]]);
            }
            for x in adj[u].iter_mut().filter(|x| **x == v) {
                *x = inner[0];
            }
            for x in adj[v].iter_mut().filter(|x| **x == u) {
                *x = inner[k - 1];
            }
        }
    }
    let name = format!("subdiv{k}-{}", entry.name);
    let provenance = format!("subdivision k={k} of ({})", entry.provenance);
    match entry.embedding {
        Some(_) => CorpusEntry::embedded(
            name,
            EmbeddedGraph::from_rotation(adj).expect("subdivision of an embedding is an embedding"),
            provenance,
        ),
        None => CorpusEntry::abstract_graph(
            name,
            &Graph::from_adjacency(adj).expect("subdivision of a simple graph is simple"),
            provenance,
        ),
    }
}

pub fn k4_planar() -> CorpusEntry {
    let e = EmbeddedGraph::from_rotation(vec![
        vec![1, 2, 3],
        vec![0, 3, 2],
        vec![0, 1, 3],
        vec![0, 2, 1],
    ])
    .expect("planar K4");
    CorpusEntry::embedded("k4", e, "k4 planar")
}

/// K5 on the torus, face degrees 4, 6, 3, 3, 4.
pub fn k5_torus() -> CorpusEntry {
    let e = EmbeddedGraph::from_rotation(vec![
        vec![1, 2, 3, 4],
        vec![0, 2, 3, 4],
        vec![0, 1, 4, 3],
        vec![0, 2, 1, 4],
        vec![0, 3, 1, 2],
    ])
    .expect("toroidal K5");
    CorpusEntry::embedded("k5", e, "k5 torus")
}

/// Hub 0 joined to the rim cycle 1..=n, embedded in the plane.
pub fn wheel(n: usize) -> CorpusEntry {
    assert!(n >= 3, "wheel rim needs three vertices");
    let rim = |i: usize| (i + n - 1) % n + 1;
    let mut rotation = vec![(1..=n).collect::<Vec<_>>()];
    for v in 1..=n {
        rotation.push(vec![0, rim(v - 1), rim(v + 1)]);
    }
    let e = EmbeddedGraph::from_rotation(rotation).expect("planar wheel");
    CorpusEntry::embedded(format!("wheel-{n}"), e, format!("wheel n={n}"))
}

pub fn cycle(n: usize) -> CorpusEntry {
    let e = EmbeddedGraph::from_rotation(Graph::cycle(n).adjacency().to_vec()).expect("cycle");
    CorpusEntry::embedded(format!("cycle-{n}"), e, format!("cycle n={n}"))
}

pub fn path(n: usize) -> CorpusEntry {
    let e = EmbeddedGraph::from_rotation(Graph::path(n).adjacency().to_vec()).expect("path");
    CorpusEntry::embedded(format!("path-{n}"), e, format!("path n={n}"))
}

/// Center 0 with `n` leaves.
pub fn star(n: usize) -> CorpusEntry {
    let mut rotation = vec![(1..=n).collect::<Vec<_>>()];
    rotation.extend((0..n).map(|_| vec![0]));
    let e = EmbeddedGraph::from_rotation(rotation).expect("star");
    CorpusEntry::embedded(format!("star-{n}"), e, format!("star n={n}"))
}

fn grids() -> impl Iterator<Item = CorpusEntry> {
    (3..=8).flat_map(|m| {
        (3..=8).flat_map(move |n| {
            [false, true]
                .into_iter()
                .map(move |d| gen_torus_grid(m, n, d).expect("sizes are at least 3"))
        })
    })
}

/// Every grid with `m, n` in 3..=8, with and without diagonals, their 1- and
/// 2-subdivisions, and the K4 and K5 embeddings.
pub fn embedding_corpus() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for grid in grids() {
        out.push(gen_subdivision(&grid, 1));
        out.push(gen_subdivision(&grid, 2));
        out.push(grid);
    }
    out.push(k4_planar());
    out.push(k5_torus());
    out
}

/// Graphs built to lie in the class: 2- and 3-subdivisions (all cycle
/// lengths are multiples of 3 or 4 and at least 9) plus small cycles, paths
/// and stars.
pub fn in_class_corpus() -> Vec<CorpusEntry> {
    let mut out: Vec<CorpusEntry> = grids().map(|g| gen_subdivision(&g, 2)).collect();
    for m in 3..=5 {
        for d in [false, true] {
            out.push(gen_subdivision(&gen_torus_grid(m, m, d).expect("m >= 3"), 3));
        }
    }
    for base in [k4_planar(), k5_torus()] {
        out.push(gen_subdivision(&base, 2));
        out.push(gen_subdivision(&base, 3));
    }
    for n in 4..=8 {
        out.push(gen_subdivision(&wheel(n), 2));
    }
    out.extend((1..=12).map(path));
    out.extend((3..=12).filter(|&n| n != 6).map(cycle));
    out.extend((3..=11).map(star));
    out.push(gen_subdivision(&cycle(3), 2));
    out.push(gen_subdivision(&cycle(4), 2));
    out.push(gen_subdivision(&star(3), 2));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{CycleFinder, TriangleMode};
    use crate::structures::class_membership;

    fn counts(e: &CorpusEntry) -> (usize, usize, usize, usize) {
        let e = e.embedding.as_ref().unwrap();
        (e.vertex_count(), e.edge_count(), e.face_count(), e.genus())
    }

    #[test]
    fn grids() {
        assert_eq!(counts(&gen_torus_grid(4, 4, false).unwrap()), (16, 32, 16, 1));
        assert_eq!(counts(&gen_torus_grid(3, 3, false).unwrap()), (9, 18, 9, 1));
        assert_eq!(counts(&gen_torus_grid(3, 4, true).unwrap()), (12, 36, 24, 1));
        assert_eq!(
            gen_torus_grid(2, 3, false),
            Err(FormatError::ParameterTooSmall {
                name: "m",
                value: 2,
                min: 3
            })
        );
    }

    #[test]
    fn diagonals_make_triangles_only() {
        let e = gen_torus_grid(5, 4, true).unwrap().embedding.unwrap();
        assert!(e.faces().faces().iter().all(|f| f.degree() == 3));
    }

    #[test]
    fn subdivisions() {
        let s = gen_subdivision(&k4_planar(), 2);
        assert_eq!(s.graph.vertex_count(), 16);
        assert_eq!(s.graph.edge_count(), 18);
        let finder = CycleFinder::with_cap(9);
        assert!(!finder.has_cycle_of_length(&s.graph, 8).unwrap());
        assert!(finder.has_cycle_of_length(&s.graph, 9).unwrap());
        let r = class_membership(s.embedding.as_ref().unwrap(), TriangleMode::Cycles);
        assert!(r.in_class);
        assert_eq!(r.qualifying_l, vec![5, 7]);

        let c6 = gen_subdivision(&cycle(3), 1);
        assert_eq!(c6.graph.vertex_count(), 6);
        assert!(c6.graph.is_connected());
        assert!(c6.graph.vertices().all(|v| c6.graph.degree(v) == 2));

        let t = gen_subdivision(&gen_torus_grid(3, 3, true).unwrap(), 2);
        let e = t.embedding.as_ref().unwrap();
        assert_eq!(e.genus(), 1);
        assert!(class_membership(e, TriangleMode::Cycles).in_class);

        let abs = CorpusEntry::abstract_graph("k4", &Graph::complete(4), "complete n=4");
        let s = gen_subdivision(&abs, 1);
        assert!(s.embedding.is_none());
        assert_eq!(s.graph.vertex_count(), 10);
    }

    #[test]
    fn small_embeddings() {
        assert_eq!(counts(&k5_torus()).3, 1);
        assert_eq!(counts(&k4_planar()).3, 0);
        assert_eq!(counts(&wheel(5)), (6, 10, 6, 0));
        assert_eq!(counts(&star(4)).3, 0);
        assert_eq!(counts(&path(1)).3, 0);
        let mut degrees: Vec<usize> = k5_torus()
            .embedding
            .unwrap()
            .faces()
            .faces()
            .iter()
            .map(|f| f.degree())
            .collect();
        degrees.sort();
        assert_eq!(degrees, vec![3, 3, 4, 4, 6]);
    }

    #[test]
    fn corpora() {
        assert_eq!(embedding_corpus().len(), 3 * 72 + 2);
        let in_class = in_class_corpus();
        assert!(in_class.len() >= 100);
        for entry in &in_class {
            let r = class_membership(entry.embedding.as_ref().unwrap(), TriangleMode::Cycles);
            assert!(r.in_class, "{}", entry.name);
        }
    }
}
