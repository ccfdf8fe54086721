//! List colorings with bounded impropriety: verification, an exhaustive
//! oracle, and the constructive reduction for 3-lists with impropriety 1.

mod oracle;
mod reduction;

pub use oracle::{oracle_solve, Oracle, OracleOutcome, DEFAULT_BUDGET};
pub use reduction::{
    extend_configuration, reduce_and_color, ReductionOutcome, ReductionPlan, ReductionStep,
    ReductionTrace, StuckReport,
};

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::index::sample;
use rand::Rng;
use thiserror::Error;

use crate::graph::{Graph, Vertex};

pub type Color = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("list of vertex {vertex} has {size} colors, need at least {needed}")]
    ListTooSmall {
        vertex: Vertex,
        size: usize,
        needed: usize,
    },
    #[error("list assignment covers {got} vertices, graph has {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("search budget of {0} expansions exhausted")]
    BudgetExceeded(u64),
    #[error("residual list of vertex {vertex} has {size} colors, the extension needs {needed}")]
    GuaranteeViolated {
        vertex: Vertex,
        size: usize,
        needed: usize,
    },
}

/// Per-vertex color lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ListAssignment {
    lists: Vec<BTreeSet<Color>>,
}

impl ListAssignment {
    pub fn new(lists: Vec<BTreeSet<Color>>) -> Self {
        ListAssignment { lists }
    }

    /// The same list at every vertex.
    pub fn constant(n: usize, colors: &[Color]) -> Self {
        let list: BTreeSet<Color> = colors.iter().copied().collect();
        ListAssignment {
            lists: vec![list; n],
        }
    }

    /// `size` distinct colors per vertex drawn uniformly from `0..palette`.
    pub fn random<R: Rng + ?Sized>(n: usize, size: usize, palette: usize, rng: &mut R) -> Self {
        assert!(size <= palette, "palette smaller than list size");
        let lists = (0..n)
            .map(|_| {
                sample(rng, palette, size)
                    .into_iter()
                    .map(|c| c as Color)
                    .collect()
            })
            .collect();
        ListAssignment { lists }
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn list(&self, v: Vertex) -> &BTreeSet<Color> {
        &self.lists[v]
    }

    pub fn lists(&self) -> &[BTreeSet<Color>] {
        &self.lists
    }

    /// Smallest list size (the floor `m`); zero when there are no vertices.
    pub fn min_size(&self) -> usize {
        self.lists.iter().map(BTreeSet::len).min().unwrap_or(0)
    }

    pub(crate) fn require(&self, n: usize, needed: usize) -> Result<(), ColoringError> {
        if self.lists.len() != n {
            return Err(ColoringError::SizeMismatch {
                expected: n,
                got: self.lists.len(),
            });
        }
        match self.lists.iter().position(|l| l.len() < needed) {
            Some(v) => Err(ColoringError::ListTooSmall {
                vertex: v,
                size: self.lists[v].len(),
                needed,
            }),
            None => Ok(()),
        }
    }
}

/// A color per vertex together with the impropriety it was built for.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DefectiveColoring {
    pub colors: Vec<Color>,
    pub impropriety: usize,
}

impl DefectiveColoring {
    pub fn color(&self, v: Vertex) -> Color {
        self.colors[v]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// The coloring does not cover exactly the vertex set.
    Length { expected: usize, got: usize },
    OffList { vertex: Vertex, color: Color },
    /// More than `d` neighbors share the vertex's color.
    Defect { vertex: Vertex, same: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Length { expected, got } => {
                write!(f, "coloring has {got} entries for {expected} vertices")
            }
            Violation::OffList { vertex, color } => {
                write!(f, "vertex {vertex} uses color {color} outside its list")
            }
            Violation::Defect { vertex, same } => {
                write!(f, "vertex {vertex} has {same} same-colored neighbors")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Verdict {
    pub violations: Vec<Violation>,
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks list membership and that every vertex has at most `d` neighbors of
/// its own color. Reports every violation.
pub fn verify_coloring(
    g: &Graph,
    lists: &ListAssignment,
    phi: &DefectiveColoring,
    d: usize,
) -> Verdict {
    let n = g.vertex_count();
    let mut violations = Vec::new();
    if phi.colors.len() != n || lists.len() != n {
        violations.push(Violation::Length {
            expected: n,
            got: phi.colors.len().min(lists.len()),
        });
        return Verdict { violations };
    }
    for v in g.vertices() {
        let c = phi.colors[v];
        if !lists.list(v).contains(&c) {
            violations.push(Violation::OffList {
                vertex: v,
                color: c,
            });
        }
    }
    for v in g.vertices() {
        let c = phi.colors[v];
        let same = g.neighbors(v).iter().filter(|&&u| phi.colors[u] == c).count();
        if same > d {
            violations.push(Violation::Defect { vertex: v, same });
        }
    }
    Verdict { violations }
}
