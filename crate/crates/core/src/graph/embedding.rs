use std::collections::BTreeMap;

use super::{Graph, GraphError, Vertex};

/// A directed half-edge `tail -> head`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart {
    pub tail: Vertex,
    pub head: Vertex,
}

/// One closed boundary walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<Dart>,
}

impl Face {
    /// Number of edge-sides on the walk; a cut-edge contributes twice.
    pub fn degree(&self) -> usize {
        self.darts.len()
    }

    /// Boundary vertices in walk order (repeats kept).
    pub fn vertices(&self) -> Vec<Vertex> {
        self.darts.iter().map(|d| d.tail).collect()
    }
}

/// Traced faces of an embedding.
///
/// Face identities follow the tracing order: darts are visited in order of
/// (tail, rotation position) and each unvisited dart opens a new face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceSet {
    faces: Vec<Face>,
    face_of_dart: Vec<usize>,
    dart_offset: Vec<usize>,
    /// `(f, g)` with `f <= g` mapped to the number of edges with `f` on one
    /// side and `g` on the other.
    adjacency: BTreeMap<(usize, usize), usize>,
}

impl FaceSet {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: usize) -> &Face {
        &self.faces[f]
    }

    pub fn degree(&self, f: usize) -> usize {
        self.faces[f].degree()
    }

    pub fn degree_sum(&self) -> usize {
        self.faces.iter().map(Face::degree).sum()
    }

    /// Face lying to the left of the dart `tail -> rotation[tail][index]`.
    pub fn face_of_dart(&self, tail: Vertex, index: usize) -> usize {
        self.face_of_dart[self.dart_offset[tail] + index]
    }

    pub fn adjacency(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.adjacency
    }

    /// Shared-edge multiplicity between two faces (order-insensitive).
    pub fn multiplicity(&self, f: usize, g: usize) -> usize {
        let key = if f <= g { (f, g) } else { (g, f) };
        self.adjacency.get(&key).copied().unwrap_or(0)
    }

    /// Faces adjacent to `f` with their shared-edge multiplicity, ascending.
    /// Includes `f` itself when some edge has `f` on both sides.
    pub fn neighbors_of(&self, f: usize) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = self
            .adjacency
            .iter()
            .filter_map(|(&(a, b), &m)| {
                if a == f {
                    Some((b, m))
                } else if b == f {
                    Some((a, m))
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }
}

/// A graph together with a rotation system (cyclic neighbor order at each
/// vertex).
///
/// Faces are traced with the successor convention: after arriving at `w`
/// along `u -> w`, the walk leaves along `w -> x` where `x` follows `u` in the
/// rotation at `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddedGraph {
    graph: Graph,
    rotation: Vec<Vec<Vertex>>,
    faces: FaceSet,
    genus: usize,
}

impl EmbeddedGraph {
    /// Validates the rotation against the graph and computes faces and genus.
    pub fn new(graph: Graph, rotation: Vec<Vec<Vertex>>) -> Result<Self, GraphError> {
        let n = graph.vertex_count();
        if n == 0 || !graph.is_connected() {
            return Err(GraphError::Disconnected);
        }
        if rotation.len() != n {
            return Err(GraphError::NonPermutationRotation(rotation.len().min(n)));
        }
        for v in 0..n {
            let rot = &rotation[v];
            if rot.len() != graph.degree(v) {
                return Err(GraphError::NonPermutationRotation(v));
            }
            let mut sorted = rot.clone();
            sorted.sort_unstable();
            sorted.dedup();
            let mut nbrs = graph.neighbors(v).to_vec();
            nbrs.sort_unstable();
            if sorted != nbrs {
                return Err(GraphError::NonPermutationRotation(v));
            }
        }
        let faces = trace(&rotation);
        let chi = n as i64 - graph.edge_count() as i64 + faces.len() as i64;
        if chi > 2 || (2 - chi) % 2 != 0 {
            return Err(GraphError::BadEulerCharacteristic(chi));
        }
        let genus = ((2 - chi) / 2) as usize;
        Ok(EmbeddedGraph {
            graph,
            rotation,
            faces,
            genus,
        })
    }

    /// Builds an embedding straight from rotation lists; the graph is the one
    /// the rotations describe.
    pub fn from_rotation(rotation: Vec<Vec<Vertex>>) -> Result<Self, GraphError> {
        let graph = Graph::from_adjacency(rotation.clone())?;
        EmbeddedGraph::new(graph, rotation)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rotation(&self) -> &[Vec<Vertex>] {
        &self.rotation
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn faces(&self) -> &FaceSet {
        &self.faces
    }

    /// Re-traces the faces from the rotation system.
    pub fn trace_faces(&self) -> FaceSet {
        trace(&self.rotation)
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Faces at the corners around `v`, one entry per outgoing dart, in
    /// rotation order. A face meeting `v` several times appears several times.
    pub fn corner_faces(&self, v: Vertex) -> Vec<usize> {
        (0..self.rotation[v].len())
            .map(|i| self.faces.face_of_dart(v, i))
            .collect()
    }

    /// The two faces on either side of edge `uv` (`u -> v` side first).
    pub fn edge_sides(&self, u: Vertex, v: Vertex) -> Option<(usize, usize)> {
        let i = self.rotation[u].iter().position(|&x| x == v)?;
        let j = self.rotation[v].iter().position(|&x| x == u)?;
        Some((self.faces.face_of_dart(u, i), self.faces.face_of_dart(v, j)))
    }
}

fn trace(rotation: &[Vec<Vertex>]) -> FaceSet {
    let n = rotation.len();
    let mut dart_offset = Vec::with_capacity(n + 1);
    let mut total = 0;
    for rot in rotation {
        dart_offset.push(total);
        total += rot.len();
    }
    dart_offset.push(total);

    // position[dart] of the reverse dart's index in its tail's rotation
    let mut reverse_index = vec![0usize; total];
    for (v, rot) in rotation.iter().enumerate() {
        for (i, &u) in rot.iter().enumerate() {
            let j = rotation[u]
                .iter()
                .position(|&x| x == v)
                .expect("rotation is symmetric");
            reverse_index[dart_offset[v] + i] = j;
        }
    }

    let mut face_of_dart = vec![usize::MAX; total];
    let mut faces = Vec::new();
    for v in 0..n {
        for i in 0..rotation[v].len() {
            if face_of_dart[dart_offset[v] + i] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut darts = Vec::new();
            let (mut tail, mut idx) = (v, i);
            while face_of_dart[dart_offset[tail] + idx] == usize::MAX {
                face_of_dart[dart_offset[tail] + idx] = id;
                let head = rotation[tail][idx];
                darts.push(Dart { tail, head });
                let back = reverse_index[dart_offset[tail] + idx];
                idx = (back + 1) % rotation[head].len();
                tail = head;
            }
            faces.push(Face { darts });
        }
    }
    if total == 0 && n == 1 {
        // the lone vertex of K1 bounds a single empty face
        faces.push(Face { darts: Vec::new() });
    }

    let mut adjacency = BTreeMap::new();
    for (v, rot) in rotation.iter().enumerate() {
        for (i, &u) in rot.iter().enumerate() {
            if v < u {
                let j = reverse_index[dart_offset[v] + i];
                let f = face_of_dart[dart_offset[v] + i];
                let g = face_of_dart[dart_offset[u] + j];
                *adjacency.entry((f.min(g), f.max(g))).or_insert(0) += 1;
            }
        }
    }

    FaceSet {
        faces,
        face_of_dart,
        dart_offset,
        adjacency,
    }
}
