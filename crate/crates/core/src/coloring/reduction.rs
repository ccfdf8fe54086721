//! Constructive (L,1)-coloring for 3-lists: peel reducible configurations
//! until the graph is empty, then color the peeled pieces back in reverse.
//!
//! When a piece is put back, every vertex outside it that is already colored
//! is a neighbor in the graph the piece was found in. Each witness vertex
//! keeps only the colors none of those neighbors use (its residual list), so
//! no defect crosses the boundary of the piece.

use std::collections::{BTreeMap, BTreeSet};

use super::{Color, ColoringError, DefectiveColoring, ListAssignment};
use crate::graph::{Graph, Vertex};
use crate::structures::{
    scan_larger_kinds, Adjacency, ConfigKind, Configuration,
};

/// One peeled configuration and, after replay, the residual lists its
/// witness vertices were colored from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub config: Configuration,
    pub deleted: Vec<Vertex>,
    pub residual: Vec<(Vertex, BTreeSet<Color>)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
}

/// No configuration exists in the nonempty remainder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StuckReport {
    pub remaining: Vec<Vertex>,
    pub trace: ReductionTrace,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionOutcome {
    Colored {
        coloring: DefectiveColoring,
        trace: ReductionTrace,
    },
    Stuck(StuckReport),
}

/// The peeling order for a graph. It depends only on the graph, so one plan
/// serves every list assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionPlan {
    pub steps: Vec<Configuration>,
    /// Vertices left when no configuration was found; empty on success.
    pub remaining: Vec<Vertex>,
}

struct ShrinkingView<'a> {
    g: &'a Graph,
    alive: Vec<bool>,
    deg: Vec<usize>,
    small: BTreeSet<Vertex>,
}

impl<'a> ShrinkingView<'a> {
    fn new(g: &'a Graph) -> Self {
        let deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
        let small = g.vertices().filter(|&v| deg[v] <= 2).collect();
        ShrinkingView {
            g,
            alive: vec![true; g.vertex_count()],
            deg,
            small,
        }
    }

    fn remove(&mut self, vertices: &[Vertex]) {
        for &v in vertices {
            self.alive[v] = false;
            self.small.remove(&v);
        }
        for &v in vertices {
            for &u in self.g.neighbors(v) {
                if self.alive[u] {
                    self.deg[u] -= 1;
                    if self.deg[u] <= 2 {
                        self.small.insert(u);
                    }
                }
            }
        }
    }

    fn next(&self) -> Option<Configuration> {
        match self.small.first() {
            Some(&v) => Some(Configuration {
                kind: ConfigKind::SmallVertex,
                witness: vec![v],
                face_id: None,
            }),
            None => scan_larger_kinds(self),
        }
    }
}

impl Adjacency for ShrinkingView<'_> {
    fn size(&self) -> usize {
        self.g.vertex_count()
    }
    fn alive(&self, v: Vertex) -> bool {
        self.alive[v]
    }
    fn deg(&self, v: Vertex) -> usize {
        self.deg[v]
    }
    fn for_each_neighbor(&self, v: Vertex, f: &mut dyn FnMut(Vertex)) {
        for &u in self.g.neighbors(v) {
            if self.alive[u] {
                f(u);
            }
        }
    }
    fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.alive[u] && self.alive[v] && self.g.has_edge(u, v)
    }
}

impl ReductionPlan {
    /// Peels configurations in scan order; each step picks what
    /// `find_reducible_configuration` would report on the remaining graph.
    pub fn build(g: &Graph) -> ReductionPlan {
        let mut view = ShrinkingView::new(g);
        let mut steps = Vec::new();
        while let Some(config) = view.next() {
            view.remove(&config.witness);
            steps.push(config);
        }
        let remaining = g.vertices().filter(|&v| view.alive[v]).collect();
        ReductionPlan { steps, remaining }
    }

    pub fn is_complete(&self) -> bool {
        self.remaining.is_empty()
    }

    /// Colors `g` along this plan, which must have been built from `g`.
    pub fn color(&self, g: &Graph, lists: &ListAssignment) -> Result<ReductionOutcome, ColoringError> {
        lists.require(g.vertex_count(), 3)?;
        let mut steps: Vec<ReductionStep> = self
            .steps
            .iter()
            .map(|c| ReductionStep {
                config: c.clone(),
                deleted: c.witness.clone(),
                residual: Vec::new(),
            })
            .collect();
        if !self.is_complete() {
            return Ok(ReductionOutcome::Stuck(StuckReport {
                remaining: self.remaining.clone(),
                trace: ReductionTrace { steps },
            }));
        }
        let mut colors: Vec<Option<Color>> = vec![None; g.vertex_count()];
        for step in steps.iter_mut().rev() {
            let residual: BTreeMap<Vertex, BTreeSet<Color>> = step
                .deleted
                .iter()
                .map(|&w| {
                    let mut l = lists.list(w).clone();
                    for &u in g.neighbors(w) {
                        if let Some(c) = colors[u] {
                            l.remove(&c);
                        }
                    }
                    (w, l)
                })
                .collect();
            let chosen = extend_configuration(&step.config, &residual, g)?;
            for (w, c) in chosen {
                colors[w] = Some(c);
            }
            step.residual = residual.into_iter().collect();
        }
        Ok(ReductionOutcome::Colored {
            coloring: DefectiveColoring {
                colors: colors
                    .into_iter()
                    .map(|c| c.expect("every vertex is peeled exactly once"))
                    .collect(),
                impropriety: 1,
            },
            trace: ReductionTrace { steps },
        })
    }
}

/// Peels `g` down to nothing and colors it back with impropriety 1. Returns a
/// stuck report if some nonempty remainder has none of the four
/// configurations.
pub fn reduce_and_color(g: &Graph, lists: &ListAssignment) -> Result<ReductionOutcome, ColoringError> {
    lists.require(g.vertex_count(), 3)?;
    ReductionPlan::build(g).color(g, lists)
}

fn guarantee(
    residual: &BTreeMap<Vertex, BTreeSet<Color>>,
    v: Vertex,
    needed: usize,
) -> Result<&BTreeSet<Color>, ColoringError> {
    let list = residual.get(&v).ok_or(ColoringError::GuaranteeViolated {
        vertex: v,
        size: 0,
        needed,
    })?;
    if list.len() < needed {
        return Err(ColoringError::GuaranteeViolated {
            vertex: v,
            size: list.len(),
            needed,
        });
    }
    Ok(list)
}

fn least(set: &BTreeSet<Color>) -> Color {
    *set.first().expect("guaranteed nonempty")
}

/// Colors the witness of `config` from its residual lists so that every
/// witness vertex has at most one same-colored neighbor inside the witness.
/// Where a choice is free the smallest color is taken.
pub fn extend_configuration(
    config: &Configuration,
    residual: &BTreeMap<Vertex, BTreeSet<Color>>,
    g: &Graph,
) -> Result<BTreeMap<Vertex, Color>, ColoringError> {
    let w = &config.witness;
    let mut out = BTreeMap::new();
    match config.kind {
        ConfigKind::SmallVertex => {
            out.insert(w[0], least(guarantee(residual, w[0], 1)?));
        }
        ConfigKind::AdjacentThrees => {
            for &v in w {
                out.insert(v, least(guarantee(residual, v, 1)?));
            }
        }
        ConfigKind::Face344 => {
            let (x, y, z) = (w[0], w[1], w[2]);
            let lx = guarantee(residual, x, 2)?;
            let ly = guarantee(residual, y, 1)?;
            let lz = guarantee(residual, z, 1)?;
            if ly == lz {
                // y and z share a color, x avoids it
                let gamma = least(ly);
                let cx = *lx.iter().find(|&&c| c != gamma).expect("two colors at x");
                out.extend([(x, cx), (y, gamma), (z, gamma)]);
            } else {
                // y and z get different colors; x may then match either one
                let (first, lf, other, lo) = match ly.difference(lz).next() {
                    Some(_) => (y, ly, z, lz),
                    None => (z, lz, y, ly),
                };
                let alpha = *lf.difference(lo).next().expect("lists differ");
                out.extend([(first, alpha), (other, least(lo)), (x, least(lx))]);
            }
        }
        ConfigKind::Face3434 => {
            let (x, y, z, u) = (w[0], w[1], w[2], w[3]);
            let lists = [
                guarantee(residual, x, 2)?,
                guarantee(residual, y, 1)?,
                guarantee(residual, z, 2)?,
                guarantee(residual, u, 1)?,
            ];
            let local: Vec<(usize, usize)> = (0..4)
                .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                .filter(|&(i, j)| g.has_edge(w[i], w[j]))
                .collect();
            let choice = product_search(&lists, &local).ok_or(ColoringError::GuaranteeViolated {
                vertex: x,
                size: lists[0].len(),
                needed: 2,
            })?;
            for (i, c) in choice.into_iter().enumerate() {
                out.insert(w[i], c);
            }
        }
    }
    Ok(out)
}

/// Least (lexicographic, witness order) choice from the list product with
/// every vertex having at most one same-colored neighbor along `edges`.
fn product_search(lists: &[&BTreeSet<Color>; 4], edges: &[(usize, usize)]) -> Option<[Color; 4]> {
    let options: Vec<Vec<Color>> = lists.iter().map(|l| l.iter().copied().collect()).collect();
    let mut idx = [0usize; 4];
    loop {
        let pick = [
            options[0][idx[0]],
            options[1][idx[1]],
            options[2][idx[2]],
            options[3][idx[3]],
        ];
        let mut same = [0usize; 4];
        for &(i, j) in edges {
            if pick[i] == pick[j] {
                same[i] += 1;
                same[j] += 1;
            }
        }
        if same.iter().all(|&s| s <= 1) {
            return Some(pick);
        }
        // odometer, last position fastest
        let mut pos = 4;
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < options[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify_coloring;
    use crate::structures::find_reducible_configuration;

    fn set(colors: &[Color]) -> BTreeSet<Color> {
        colors.iter().copied().collect()
    }

    fn cfg(kind: ConfigKind, witness: &[Vertex]) -> Configuration {
        Configuration {
            kind,
            witness: witness.to_vec(),
            face_id: None,
        }
    }

    fn residual(entries: &[(Vertex, &[Color])]) -> BTreeMap<Vertex, BTreeSet<Color>> {
        entries.iter().map(|&(v, c)| (v, set(c))).collect()
    }

    #[test]
    fn face344_equal_lists() {
        let g = Graph::complete(3);
        let out = extend_configuration(
            &cfg(ConfigKind::Face344, &[0, 1, 2]),
            &residual(&[(0, &[1, 2]), (1, &[3]), (2, &[3])]),
            &g,
        )
        .unwrap();
        assert_eq!(out, BTreeMap::from([(0, 1), (1, 3), (2, 3)]));
    }

    #[test]
    fn face344_distinct_lists() {
        let g = Graph::complete(3);
        let out = extend_configuration(
            &cfg(ConfigKind::Face344, &[0, 1, 2]),
            &residual(&[(0, &[1, 2]), (1, &[1]), (2, &[2])]),
            &g,
        )
        .unwrap();
        assert_eq!(out, BTreeMap::from([(0, 1), (1, 1), (2, 2)]));
    }

    #[test]
    fn face344_nested_lists_swap_roles() {
        // L'(y) is inside L'(z): z takes the color y cannot have
        let g = Graph::complete(3);
        let out = extend_configuration(
            &cfg(ConfigKind::Face344, &[0, 1, 2]),
            &residual(&[(0, &[1, 2]), (1, &[1]), (2, &[1, 2])]),
            &g,
        )
        .unwrap();
        assert_ne!(out[&1], out[&2]);
        assert_eq!(out, BTreeMap::from([(0, 1), (1, 1), (2, 2)]));
    }

    #[test]
    fn face3434_exhaustive() {
        let g = Graph::cycle(4);
        let out = extend_configuration(
            &cfg(ConfigKind::Face3434, &[0, 1, 2, 3]),
            &residual(&[(0, &[1, 2]), (1, &[1]), (2, &[1, 2]), (3, &[1])]),
            &g,
        )
        .unwrap();
        assert_eq!(out, BTreeMap::from([(0, 2), (1, 1), (2, 2), (3, 1)]));
    }

    #[test]
    fn guarantee_violation_is_reported() {
        let g = Graph::complete(3);
        let err = extend_configuration(
            &cfg(ConfigKind::Face344, &[0, 1, 2]),
            &residual(&[(0, &[1]), (1, &[1]), (2, &[2])]),
            &g,
        )
        .unwrap_err();
        assert_eq!(
            err,
            ColoringError::GuaranteeViolated {
                vertex: 0,
                size: 1,
                needed: 2
            }
        );
        let err = extend_configuration(
            &cfg(ConfigKind::SmallVertex, &[0]),
            &residual(&[(0, &[])]),
            &g,
        )
        .unwrap_err();
        assert!(matches!(err, ColoringError::GuaranteeViolated { vertex: 0, .. }));
    }

    #[test]
    fn face3434_all_small_products_extend() {
        // every residual product meeting the size guarantees over 3 colors
        let g = Graph::cycle(4);
        let subsets: Vec<BTreeSet<Color>> = (1u32..8)
            .map(|mask| (0..3).filter(|b| mask & (1 << b) != 0).collect())
            .collect();
        let big: Vec<_> = subsets.iter().filter(|s| s.len() >= 2).collect();
        for lx in &big {
            for lz in &big {
                for ly in &subsets {
                    for lu in &subsets {
                        let mut r = BTreeMap::new();
                        r.insert(0, (*lx).clone());
                        r.insert(1, ly.clone());
                        r.insert(2, (*lz).clone());
                        r.insert(3, lu.clone());
                        let out = extend_configuration(
                            &cfg(ConfigKind::Face3434, &[0, 1, 2, 3]),
                            &r,
                            &g,
                        )
                        .unwrap();
                        for v in 0..4 {
                            assert!(r[&v].contains(&out[&v]));
                            let same = g.neighbors(v).iter().filter(|&&u| out[&u] == out[&v]).count();
                            assert!(same <= 1);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn tree_uses_only_small_vertices() {
        let g = Graph::from_edges(7, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]).unwrap();
        let lists = ListAssignment::constant(7, &[4, 5, 6]);
        match reduce_and_color(&g, &lists).unwrap() {
            ReductionOutcome::Colored { coloring, trace } => {
                assert!(verify_coloring(&g, &lists, &coloring, 1).is_ok());
                assert_eq!(trace.steps.len(), 7);
                assert!(trace.steps.iter().all(|s| s.config.kind == ConfigKind::SmallVertex));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn k7_is_stuck() {
        let g = Graph::complete(7);
        let lists = ListAssignment::constant(7, &[1, 2, 3]);
        match reduce_and_color(&g, &lists).unwrap() {
            ReductionOutcome::Stuck(report) => {
                assert_eq!(report.remaining, (0..7).collect::<Vec<_>>());
                assert!(report.trace.steps.is_empty());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn short_lists_rejected() {
        let g = Graph::path(3);
        let lists = ListAssignment::constant(3, &[1, 2]);
        assert_eq!(
            reduce_and_color(&g, &lists),
            Err(ColoringError::ListTooSmall {
                vertex: 0,
                size: 2,
                needed: 3
            })
        );
    }

    #[test]
    fn plan_matches_fresh_scans() {
        // each plan step is what a full scan of the remaining graph reports
        let g = Graph::from_edges(
            8,
            &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 5), (2, 6), (3, 7), (4, 5), (5, 6), (6, 7), (7, 4)],
        )
        .unwrap();
        let plan = ReductionPlan::build(&g);
        let mut keep = vec![true; 8];
        for step in &plan.steps {
            let (h, orig) = g.induced_subgraph(&keep);
            let fresh = find_reducible_configuration(&h, None).unwrap();
            let mapped: Vec<_> = fresh.witness.iter().map(|&v| orig[v]).collect();
            assert_eq!(fresh.kind, step.kind);
            assert_eq!(mapped, step.witness);
            for &v in &step.witness {
                keep[v] = false;
            }
        }
        assert!(plan.is_complete());
    }
}
