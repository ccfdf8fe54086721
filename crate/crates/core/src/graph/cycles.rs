use std::collections::VecDeque;

use super::{EmbeddedGraph, Graph, GraphError, Vertex};

pub const DEFAULT_CYCLE_CAP: usize = 8;

/// Exact-length cycle search by DFS, pruned by the BFS distance back to the
/// start vertex.
#[derive(Debug, Clone, Copy)]
pub struct CycleFinder {
    cap: usize,
}

impl Default for CycleFinder {
    fn default() -> Self {
        CycleFinder {
            cap: DEFAULT_CYCLE_CAP,
        }
    }
}

impl CycleFinder {
    pub fn with_cap(cap: usize) -> Self {
        CycleFinder { cap }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// True iff `g` has a simple cycle on exactly `k` vertices.
    pub fn has_cycle_of_length(&self, g: &Graph, k: usize) -> Result<bool, GraphError> {
        if k < 3 {
            return Err(GraphError::LengthTooSmall(k));
        }
        if k > self.cap {
            return Err(GraphError::CapExceeded(k, self.cap));
        }
        Ok(self.find_cycle(g, k).is_some())
    }

    /// A `k`-cycle as a vertex sequence starting from its smallest vertex.
    pub fn find_cycle(&self, g: &Graph, k: usize) -> Option<Vec<Vertex>> {
        if k < 3 || k > g.vertex_count() {
            return None;
        }
        let n = g.vertex_count();
        let mut dist = vec![usize::MAX; n];
        let mut on_path = vec![false; n];
        for start in 0..n {
            if g.degree(start) < 2 {
                continue;
            }
            // distances back to `start` using only vertices >= start
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                if dist[v] >= k {
                    continue;
                }
                for &u in g.neighbors(v) {
                    if u > start && dist[u] == usize::MAX {
                        dist[u] = dist[v] + 1;
                        queue.push_back(u);
                    }
                }
            }
            let mut path = vec![start];
            on_path[start] = true;
            let found = extend(g, k, start, &dist, &mut path, &mut on_path);
            on_path[start] = false;
            if found {
                return Some(path);
            }
        }
        None
    }
}

fn extend(
    g: &Graph,
    k: usize,
    start: Vertex,
    dist: &[usize],
    path: &mut Vec<Vertex>,
    on_path: &mut [bool],
) -> bool {
    let last = *path.last().unwrap();
    if path.len() == k {
        return g.neighbors(last).contains(&start);
    }
    for &u in g.neighbors(last) {
        if u <= start || on_path[u] {
            continue;
        }
        // edges still to walk from u back to start: k - len(path with u) + 1
        if dist[u] == usize::MAX || dist[u] > k - path.len() {
            continue;
        }
        path.push(u);
        on_path[u] = true;
        if extend(g, k, start, dist, path, on_path) {
            return true;
        }
        on_path[u] = false;
        path.pop();
    }
    false
}

/// Which reading of "adjacent triangles" to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TriangleMode {
    /// Two 3-cycles sharing an edge.
    #[default]
    Cycles,
    /// Two 3-faces of the embedding sharing an edge.
    Faces,
}

impl std::str::FromStr for TriangleMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cycles" => Ok(TriangleMode::Cycles),
            "faces" => Ok(TriangleMode::Faces),
            other => Err(format!("unknown triangle mode `{other}`")),
        }
    }
}

/// Checks for two triangles sharing an edge.
///
/// In `Faces` mode the two faces must bound different vertex triples: the two
/// sides of a lone planar triangle are not counted as adjacent triangles.
pub fn adjacent_triangles_present(
    g: &Graph,
    embedding: Option<&EmbeddedGraph>,
    mode: TriangleMode,
) -> Result<bool, GraphError> {
    match mode {
        TriangleMode::Cycles => Ok(g.edges().into_iter().any(|(u, v)| {
            g.neighbors(u)
                .iter()
                .filter(|&&w| g.has_edge(v, w))
                .nth(1)
                .is_some()
        })),
        TriangleMode::Faces => {
            let e = embedding.ok_or(GraphError::EmbeddingRequired)?;
            let faces = e.faces();
            let triple = |f: usize| {
                let mut vs = faces.face(f).vertices();
                vs.sort_unstable();
                vs
            };
            Ok(faces.adjacency().keys().any(|&(f, h)| {
                f != h && faces.degree(f) == 3 && faces.degree(h) == 3 && triple(f) != triple(h)
            }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus_grid(m: usize, n: usize) -> Graph {
        let id = |i: usize, j: usize| (i % m) * n + (j % n);
        let mut edges = Vec::new();
        for i in 0..m {
            for j in 0..n {
                edges.push((id(i, j), id(i, j + 1)));
                edges.push((id(i, j), id(i + 1, j)));
            }
        }
        Graph::from_edges(m * n, &edges).unwrap()
    }

    #[test]
    fn grid_has_six_cycles_but_no_triangles() {
        let g = torus_grid(4, 4);
        let f = CycleFinder::default();
        assert!(f.has_cycle_of_length(&g, 6).unwrap());
        assert!(!f.has_cycle_of_length(&g, 3).unwrap());
        assert!(!f.has_cycle_of_length(&g, 5).unwrap());
        let c = f.find_cycle(&g, 6).unwrap();
        assert_eq!(c.len(), 6);
        for i in 0..6 {
            assert!(g.has_edge(c[i], c[(i + 1) % 6]));
        }
    }

    #[test]
    fn k4_has_triangles() {
        let f = CycleFinder::default();
        assert!(f.has_cycle_of_length(&Graph::complete(4), 3).unwrap());
        assert!(f.has_cycle_of_length(&Graph::complete(4), 4).unwrap());
        assert!(!f.has_cycle_of_length(&Graph::complete(4), 5).unwrap());
    }

    #[test]
    fn cap_and_floor() {
        let f = CycleFinder::default();
        let g = Graph::cycle(9);
        assert_eq!(
            f.has_cycle_of_length(&g, 9),
            Err(GraphError::CapExceeded(9, 8))
        );
        assert_eq!(f.has_cycle_of_length(&g, 2), Err(GraphError::LengthTooSmall(2)));
        assert!(CycleFinder::with_cap(9).has_cycle_of_length(&g, 9).unwrap());
    }

    #[test]
    fn adjacent_triangles_by_cycles() {
        let k4 = Graph::complete(4);
        assert!(adjacent_triangles_present(&k4, None, TriangleMode::Cycles).unwrap());
        let c3 = Graph::cycle(3);
        assert!(!adjacent_triangles_present(&c3, None, TriangleMode::Cycles).unwrap());
        // C3 x C3: row and column triangles meet only at vertices
        assert!(!adjacent_triangles_present(&torus_grid(3, 3), None, TriangleMode::Cycles).unwrap());
        assert_eq!(
            adjacent_triangles_present(&k4, None, TriangleMode::Faces),
            Err(GraphError::EmbeddingRequired)
        );
    }

    #[test]
    fn lone_triangle_faces_are_not_adjacent_triangles() {
        let e = EmbeddedGraph::from_rotation(vec![vec![1, 2], vec![2, 0], vec![0, 1]]).unwrap();
        assert_eq!(e.face_count(), 2);
        assert!(!adjacent_triangles_present(e.graph(), Some(&e), TriangleMode::Faces).unwrap());
    }
}
