//! Class membership, the four reducible configurations, and the local face
//! observations the discharging argument relies on.

use std::collections::BTreeSet;
use std::fmt;

use crate::graph::{
    adjacent_triangles_present, CycleFinder, EmbeddedGraph, FaceSet, Graph, TriangleMode, Vertex,
};

/// Membership report for the family of toroidal graphs with no adjacent
/// triangles, no 6-cycles, and no 5-cycles or no 7-cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassReport {
    pub in_class: bool,
    pub genus: usize,
    pub genus_ok: bool,
    pub min_degree: usize,
    pub adjacent_triangles: bool,
    pub has_5_cycle: bool,
    pub has_6_cycle: bool,
    pub has_7_cycle: bool,
    /// Lengths `l` in {5, 7} for which the graph has no `l`-cycle.
    pub qualifying_l: Vec<usize>,
}

pub fn class_membership(g: &EmbeddedGraph, triangle_mode: TriangleMode) -> ClassReport {
    let graph = g.graph();
    let finder = CycleFinder::default();
    let has = |k| finder.find_cycle(graph, k).is_some();
    let (has_5_cycle, has_6_cycle, has_7_cycle) = (has(5), has(6), has(7));
    let adjacent_triangles = adjacent_triangles_present(graph, Some(g), triangle_mode)
        .expect("embedding supplied");
    let qualifying_l = [(5, has_5_cycle), (7, has_7_cycle)]
        .into_iter()
        .filter(|&(_, present)| !present)
        .map(|(l, _)| l)
        .collect::<Vec<_>>();
    let genus_ok = g.genus() <= 1;
    ClassReport {
        in_class: genus_ok && !adjacent_triangles && !has_6_cycle && !qualifying_l.is_empty(),
        genus: g.genus(),
        genus_ok,
        min_degree: graph.min_degree(),
        adjacent_triangles,
        has_5_cycle,
        has_6_cycle,
        has_7_cycle,
        qualifying_l,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConfigKind {
    /// A vertex of degree at most 2.
    SmallVertex,
    /// Two adjacent 3-vertices.
    AdjacentThrees,
    /// Triangle `x y z` with degrees (3, 4, 4).
    Face344,
    /// 4-cycle `x y z u` with degrees (3, 4, 3, 4).
    Face3434,
}

impl ConfigKind {
    pub fn label(self) -> &'static str {
        match self {
            ConfigKind::SmallVertex => "small-vertex",
            ConfigKind::AdjacentThrees => "adjacent-threes",
            ConfigKind::Face344 => "face-344",
            ConfigKind::Face3434 => "face-3434",
        }
    }
}

/// A reducible configuration with its witness vertices.
///
/// Witness order: `[v]`, `[u, v]`, `[x, y, z]` or `[x, y, z, u]` where `x`
/// (and `z` for the 4-cycle) are the 3-vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    pub kind: ConfigKind,
    pub witness: Vec<Vertex>,
    /// Face of the embedding bounded by the witness, when there is one.
    pub face_id: Option<usize>,
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind.label())?;
        for v in &self.witness {
            write!(f, " {v}")?;
        }
        if let Some(id) = self.face_id {
            write!(f, " face={id}")?;
        }
        Ok(())
    }
}

impl Configuration {
    /// Re-checks the degree/adjacency pattern of the witness in `g`.
    pub fn holds_in(&self, g: &Graph) -> bool {
        let w = &self.witness;
        let d = |v: Vertex| g.degree(v);
        let distinct = w.iter().collect::<BTreeSet<_>>().len() == w.len();
        distinct
            && match self.kind {
                ConfigKind::SmallVertex => w.len() == 1 && d(w[0]) <= 2,
                ConfigKind::AdjacentThrees => {
                    w.len() == 2 && d(w[0]) == 3 && d(w[1]) == 3 && g.has_edge(w[0], w[1])
                }
                ConfigKind::Face344 => {
                    w.len() == 3
                        && d(w[0]) == 3
                        && d(w[1]) == 4
                        && d(w[2]) == 4
                        && g.has_edge(w[0], w[1])
                        && g.has_edge(w[1], w[2])
                        && g.has_edge(w[2], w[0])
                }
                ConfigKind::Face3434 => {
                    w.len() == 4
                        && d(w[0]) == 3
                        && d(w[1]) == 4
                        && d(w[2]) == 3
                        && d(w[3]) == 4
                        && (0..4).all(|i| g.has_edge(w[i], w[(i + 1) % 4]))
                }
            }
    }
}

/// Read-only adjacency access shared by the full graph and the shrinking view
/// used during reduction.
pub(crate) trait Adjacency {
    fn size(&self) -> usize;
    fn alive(&self, v: Vertex) -> bool;
    fn deg(&self, v: Vertex) -> usize;
    fn for_each_neighbor(&self, v: Vertex, f: &mut dyn FnMut(Vertex));
    fn adjacent(&self, u: Vertex, v: Vertex) -> bool;
}

impl Adjacency for Graph {
    fn size(&self) -> usize {
        self.vertex_count()
    }
    fn alive(&self, _: Vertex) -> bool {
        true
    }
    fn deg(&self, v: Vertex) -> usize {
        self.degree(v)
    }
    fn for_each_neighbor(&self, v: Vertex, f: &mut dyn FnMut(Vertex)) {
        self.neighbors(v).iter().for_each(|&u| f(u));
    }
    fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.has_edge(u, v)
    }
}

fn sorted_neighbors(g: &dyn Adjacency, v: Vertex) -> Vec<Vertex> {
    let mut out = Vec::with_capacity(g.deg(v));
    g.for_each_neighbor(v, &mut |u| out.push(u));
    out.sort_unstable();
    out
}

pub(crate) fn scan_small_vertex(g: &dyn Adjacency) -> Option<Configuration> {
    (0..g.size())
        .find(|&v| g.alive(v) && g.deg(v) <= 2)
        .map(|v| config(ConfigKind::SmallVertex, vec![v]))
}

/// Scans the kinds after the small vertex, in order, lowest ids first.
pub(crate) fn scan_larger_kinds(g: &dyn Adjacency) -> Option<Configuration> {
    let threes: Vec<Vertex> = (0..g.size()).filter(|&v| g.alive(v) && g.deg(v) == 3).collect();
    for &u in &threes {
        if let Some(v) = sorted_neighbors(g, u).into_iter().find(|&v| v > u && g.deg(v) == 3) {
            return Some(config(ConfigKind::AdjacentThrees, vec![u, v]));
        }
    }
    for &x in &threes {
        let fours: Vec<Vertex> = sorted_neighbors(g, x)
            .into_iter()
            .filter(|&v| g.deg(v) == 4)
            .collect();
        for (i, &y) in fours.iter().enumerate() {
            for &z in &fours[i + 1..] {
                if g.adjacent(y, z) {
                    return Some(config(ConfigKind::Face344, vec![x, y, z]));
                }
            }
        }
    }
    for &x in &threes {
        let fours: Vec<Vertex> = sorted_neighbors(g, x)
            .into_iter()
            .filter(|&v| g.deg(v) == 4)
            .collect();
        for (i, &y) in fours.iter().enumerate() {
            for &u in &fours[i + 1..] {
                let z = sorted_neighbors(g, y)
                    .into_iter()
                    .find(|&z| z > x && g.deg(z) == 3 && g.adjacent(z, u));
                if let Some(z) = z {
                    return Some(config(ConfigKind::Face3434, vec![x, y, z, u]));
                }
            }
        }
    }
    None
}

fn config(kind: ConfigKind, witness: Vec<Vertex>) -> Configuration {
    Configuration {
        kind,
        witness,
        face_id: None,
    }
}

/// First reducible configuration in scan order (small vertex, adjacent
/// 3-vertices, (3,4,4)-triangle, (3,4,3,4)-quadrilateral), lowest vertex ids
/// first within a kind. Patterns are detected on cycles; the embedding is only
/// consulted to report the bounding face.
pub fn find_reducible_configuration(
    g: &Graph,
    embedding: Option<&EmbeddedGraph>,
) -> Option<Configuration> {
    let mut found = scan_small_vertex(g).or_else(|| scan_larger_kinds(g))?;
    if let Some(e) = embedding {
        found.face_id = bounding_face(e.faces(), &found.witness);
    }
    Some(found)
}

/// Every occurrence of every configuration kind, in scan order.
pub fn find_all_configurations(
    g: &Graph,
    embedding: Option<&EmbeddedGraph>,
) -> Vec<Configuration> {
    let mut out = Vec::new();
    for v in g.vertices().filter(|&v| g.degree(v) <= 2) {
        out.push(config(ConfigKind::SmallVertex, vec![v]));
    }
    let threes: Vec<Vertex> = g.vertices().filter(|&v| g.degree(v) == 3).collect();
    for &u in &threes {
        for v in sorted_neighbors(g, u) {
            if v > u && g.degree(v) == 3 {
                out.push(config(ConfigKind::AdjacentThrees, vec![u, v]));
            }
        }
    }
    for &x in &threes {
        let fours: Vec<Vertex> = sorted_neighbors(g, x)
            .into_iter()
            .filter(|&v| g.degree(v) == 4)
            .collect();
        for (i, &y) in fours.iter().enumerate() {
            for &z in &fours[i + 1..] {
                if g.has_edge(y, z) {
                    out.push(config(ConfigKind::Face344, vec![x, y, z]));
                }
            }
        }
    }
    for &x in &threes {
        let fours: Vec<Vertex> = sorted_neighbors(g, x)
            .into_iter()
            .filter(|&v| g.degree(v) == 4)
            .collect();
        for (i, &y) in fours.iter().enumerate() {
            for &u in &fours[i + 1..] {
                for z in sorted_neighbors(g, y) {
                    if z > x && g.degree(z) == 3 && g.has_edge(z, u) {
                        out.push(config(ConfigKind::Face3434, vec![x, y, z, u]));
                    }
                }
            }
        }
    }
    if let Some(e) = embedding {
        for c in &mut out {
            c.face_id = bounding_face(e.faces(), &c.witness);
        }
    }
    out
}

/// The face whose boundary walk is the witness cycle, in either direction.
fn bounding_face(faces: &FaceSet, witness: &[Vertex]) -> Option<usize> {
    if witness.len() < 3 {
        return None;
    }
    let same_cycle = |walk: &[Vertex]| {
        let n = walk.len();
        (0..n).any(|s| {
            (0..n).all(|i| walk[(s + i) % n] == witness[i])
                || (0..n).all(|i| walk[(s + n - i) % n] == witness[i])
        })
    };
    faces
        .faces()
        .iter()
        .position(|f| f.degree() == witness.len() && same_cycle(&f.vertices()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    /// No 5-cycles and no 6-cycles.
    One,
    /// No 6-cycles and no 7-cycles.
    Two,
}

impl Case {
    pub fn number(self) -> u8 {
        match self {
            Case::One => 1,
            Case::Two => 2,
        }
    }

    pub fn from_number(n: u8) -> Option<Case> {
        match n {
            1 => Some(Case::One),
            2 => Some(Case::Two),
            _ => None,
        }
    }
}

/// What broke an observation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ObservationWitness {
    /// A face whose degree is forbidden.
    Face { face: usize, degree: usize },
    /// An edge with two faces on its sides that may not meet there.
    SharedEdge {
        edge: (Vertex, Vertex),
        faces: (usize, usize),
    },
    /// A face sharing too many edges with faces of a given degree.
    TooManyNeighbors {
        face: usize,
        neighbor_degree: usize,
        count: usize,
    },
}

impl fmt::Display for ObservationWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObservationWitness::Face { face, degree } => {
                write!(f, "face {face} has degree {degree}")
            }
            ObservationWitness::SharedEdge { edge, faces } => write!(
                f,
                "edge {}-{} separates faces {} and {}",
                edge.0, edge.1, faces.0, faces.1
            ),
            ObservationWitness::TooManyNeighbors {
                face,
                neighbor_degree,
                count,
            } => write!(
                f,
                "face {face} shares {count} edges with {neighbor_degree}-faces"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObservationCheck {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<ObservationWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObservationReport {
    pub case: Case,
    pub checks: Vec<ObservationCheck>,
}

impl ObservationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Checks the local face structure forced by the cycle restrictions of each
/// case. Face adjacency is counted per shared edge, and an edge with the same
/// face on both sides makes that face adjacent to itself.
///
/// Case 1: no 5- or 6-faces and no two 4⁻-faces sharing an edge.
/// Case 2: no 6- or 7-faces, no 3-face next to a 3-face, no 4-face next to a
/// 4-face; no 5-face next to a 3- or 4-face; every 3-face shares at most one
/// edge with 4-faces and vice versa.
pub fn verify_observations(g: &EmbeddedGraph, case: Case) -> ObservationReport {
    let faces = g.faces();
    let sides = edge_sides(g);
    let forbidden_degree = |bad: &[usize]| {
        (0..faces.len())
            .find(|&f| bad.contains(&faces.degree(f)))
            .map(|f| ObservationWitness::Face {
                face: f,
                degree: faces.degree(f),
            })
    };
    let bad_edge = |pred: &dyn Fn(usize, usize) -> bool| {
        sides.iter().find_map(|&(edge, f, h)| {
            let (a, b) = (faces.degree(f), faces.degree(h));
            (pred(a, b) || pred(b, a)).then_some(ObservationWitness::SharedEdge {
                edge,
                faces: (f, h),
            })
        })
    };
    let check = |name, witness: Option<ObservationWitness>| ObservationCheck {
        name,
        passed: witness.is_none(),
        witness,
    };

    let checks = match case {
        Case::One => {
            let witness = forbidden_degree(&[5, 6]).or_else(|| bad_edge(&|a, b| a <= 4 && b <= 4));
            vec![check("no-5-6-faces-no-adjacent-small-faces", witness)]
        }
        Case::Two => {
            let first = forbidden_degree(&[6, 7])
                .or_else(|| bad_edge(&|a, b| (a == 3 && b == 3) || (a == 4 && b == 4)));
            let second = bad_edge(&|a, b| a == 5 && (b == 3 || b == 4));
            let third = (0..faces.len()).find_map(|f| {
                let other = match faces.degree(f) {
                    3 => 4,
                    4 => 3,
                    _ => return None,
                };
                let count: usize = faces
                    .neighbors_of(f)
                    .into_iter()
                    .filter(|&(h, _)| faces.degree(h) == other)
                    .map(|(_, m)| m)
                    .sum();
                (count > 1).then_some(ObservationWitness::TooManyNeighbors {
                    face: f,
                    neighbor_degree: other,
                    count,
                })
            });
            vec![
                check("no-6-7-faces-no-adjacent-3-or-4-faces", first),
                check("no-5-face-next-to-3-or-4-face", second),
                check("3-and-4-faces-share-at-most-one-edge", third),
            ]
        }
    };
    ObservationReport { case, checks }
}

fn edge_sides(g: &EmbeddedGraph) -> Vec<((Vertex, Vertex), usize, usize)> {
    g.graph()
        .edges()
        .into_iter()
        .map(|(u, v)| {
            let (f, h) = g.edge_sides(u, v).expect("edge of the embedded graph");
            ((u, v), f, h)
        })
        .collect()
}

/// Small-face incidence counts at one vertex, with multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct IncidenceCounts {
    /// Incident 3- or 4-faces.
    pub r_v: usize,
    /// Incident 4⁻-faces. Faces of degree 1 or 2 only occur in K1 and K2
    /// and are not counted.
    pub r1: usize,
    /// Incident 5-faces.
    pub r2: usize,
}

pub fn incidence_counts(g: &EmbeddedGraph, v: Vertex) -> IncidenceCounts {
    let faces = g.faces();
    let mut counts = IncidenceCounts::default();
    for f in g.corner_faces(v) {
        match faces.degree(f) {
            3 | 4 => {
                counts.r_v += 1;
                counts.r1 += 1;
            }
            5 => counts.r2 += 1,
            _ => {}
        }
    }
    counts
}

/// Whether the incidence bounds of the given case hold at a vertex of degree
/// `k`: case 1 needs `r_v <= floor(k/2)`; case 2 needs `r1 <= floor(2k/3)`
/// and `3 * ceil(r1/2) + r2 <= k + 1`.
pub fn incidence_bounds_hold(case: Case, k: usize, c: IncidenceCounts) -> bool {
    match case {
        Case::One => c.r_v <= k / 2,
        Case::Two => c.r1 <= 2 * k / 3 && 3 * c.r1.div_ceil(2) + c.r2 <= k + 1,
    }
}
