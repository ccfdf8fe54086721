//! Simple undirected graphs, rotation-system embeddings, and cycle queries.

mod cycles;
mod embedding;

pub use cycles::{adjacent_triangles_present, CycleFinder, TriangleMode, DEFAULT_CYCLE_CAP};
pub use embedding::{Dart, EmbeddedGraph, Face, FaceSet};

use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(Vertex),
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("vertex {0} lists neighbor {1} more than once")]
    RepeatedNeighbor(Vertex, Vertex),
    #[error("adjacency is not symmetric: {0} lists {1} but not conversely")]
    AsymmetricAdjacency(Vertex, Vertex),
    #[error("rotation at vertex {0} is not a permutation of its incident edges")]
    NonPermutationRotation(Vertex),
    #[error("embedded graphs must be connected and non-empty")]
    Disconnected,
    #[error("face tracing gave V - E + F = {0}, which is not of the form 2 - 2g")]
    BadEulerCharacteristic(i64),
    #[error("cycle length {0} exceeds the configured cap {1}")]
    CapExceeded(usize, usize),
    #[error("cycle length {0} is below 3")]
    LengthTooSmall(usize),
    #[error("face-based triangle mode needs an embedding")]
    EmbeddingRequired,
}

/// Finite simple undirected graph stored as ordered adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    /// Graph with `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    /// Builds a graph from per-vertex neighbor lists, rejecting loops, repeats
    /// and asymmetric entries. Neighbor order is preserved.
    pub fn from_adjacency(adj: Vec<Vec<Vertex>>) -> Result<Self, GraphError> {
        let n = adj.len();
        for (v, nbrs) in adj.iter().enumerate() {
            let mut seen = vec![false; n];
            for &u in nbrs {
                if u >= n {
                    return Err(GraphError::VertexOutOfRange(u));
                }
                if u == v {
                    return Err(GraphError::SelfLoop(v));
                }
                if seen[u] {
                    return Err(GraphError::RepeatedNeighbor(v, u));
                }
                seen[u] = true;
            }
        }
        for (v, nbrs) in adj.iter().enumerate() {
            for &u in nbrs {
                if !adj[u].contains(&v) {
                    return Err(GraphError::AsymmetricAdjacency(v, u));
                }
            }
        }
        Ok(Graph { adj })
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange(u));
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange(v));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Graph::from_adjacency(adj)
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n).map(|v| (0..n).filter(|&u| u != v).collect()).collect();
        Graph { adj }
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least three vertices");
        let adj = (0..n).map(|v| vec![(v + n - 1) % n, (v + 1) % n]).collect();
        Graph { adj }
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges).expect("path edges are simple")
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    /// δ(G); zero for the empty graph.
    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].contains(&v)
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out: Vec<_> = self
            .adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.adj.len()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &u in &self.adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == n
    }

    /// Induced subgraph on the vertices with `keep[v] == true`; also returns
    /// the original id of each new vertex.
    pub fn induced_subgraph(&self, keep: &[bool]) -> (Graph, Vec<Vertex>) {
        let mut new_id = vec![usize::MAX; self.vertex_count()];
        let mut original = Vec::new();
        for v in self.vertices().filter(|&v| keep[v]) {
            new_id[v] = original.len();
            original.push(v);
        }
        let adj = original
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter(|&&u| keep[u])
                    .map(|&u| new_id[u])
                    .collect()
            })
            .collect();
        (Graph { adj }, original)
    }

    /// Copy with every neighbor list sorted ascending.
    pub fn normalized(&self) -> Graph {
        let mut adj = self.adj.clone();
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        Graph { adj }
    }

    pub(crate) fn adjacency(&self) -> &[Vec<Vertex>] {
        &self.adj
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_repeats_and_asymmetry() {
        assert_eq!(
            Graph::from_adjacency(vec![vec![0]]),
            Err(GraphError::SelfLoop(0))
        );
        assert_eq!(
            Graph::from_adjacency(vec![vec![1, 1], vec![0]]),
            Err(GraphError::RepeatedNeighbor(0, 1))
        );
        assert_eq!(
            Graph::from_adjacency(vec![vec![1], vec![]]),
            Err(GraphError::AsymmetricAdjacency(0, 1))
        );
        assert_eq!(
            Graph::from_edges(2, &[(0, 1), (1, 0)]),
            Err(GraphError::RepeatedNeighbor(0, 1))
        );
    }

    #[test]
    fn basic_counts() {
        let k4 = Graph::complete(4);
        assert_eq!(k4.edge_count(), 6);
        assert_eq!(k4.min_degree(), 3);
        assert_eq!(k4.edges().len(), 6);
        let p = Graph::path(3);
        assert_eq!(p.min_degree(), 1);
        assert!(p.is_connected());
        assert!(!Graph::empty(2).is_connected());
    }

    #[test]
    fn induced_subgraph_relabels() {
        let c5 = Graph::cycle(5);
        let (h, orig) = c5.induced_subgraph(&[true, false, true, true, true]);
        assert_eq!(orig, vec![0, 2, 3, 4]);
        assert_eq!(h.edge_count(), 3);
        assert!(h.has_edge(0, 3));
    }
}
