use super::{Color, ColoringError, DefectiveColoring, ListAssignment};
use crate::graph::{Graph, Vertex};

pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleOutcome {
    Satisfiable(DefectiveColoring),
    /// The whole search tree was exhausted.
    Unsatisfiable,
}

/// Exhaustive backtracking search for an `(L, d)`-coloring.
///
/// Vertices are assigned in smallest-last degeneracy order (ties by id) and
/// colors tried ascending, so the witness returned is the least satisfying
/// assignment in that order. Partial assignments are cut as soon as some
/// vertex has more than `d` same-colored neighbors.
#[derive(Debug, Clone, Copy)]
pub struct Oracle {
    budget: u64,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            budget: DEFAULT_BUDGET,
        }
    }
}

impl Oracle {
    pub fn with_budget(budget: u64) -> Self {
        Oracle { budget }
    }

    pub fn solve(
        &self,
        g: &Graph,
        lists: &ListAssignment,
        d: usize,
    ) -> Result<OracleOutcome, ColoringError> {
        lists.require(g.vertex_count(), 0)?;
        let order = degeneracy_order(g);
        let lists: Vec<Vec<Color>> = lists
            .lists()
            .iter()
            .map(|l| l.iter().copied().collect())
            .collect();
        let mut search = Search {
            g,
            lists: &lists,
            d,
            order: &order,
            colors: vec![None; g.vertex_count()],
            same: vec![0; g.vertex_count()],
            expansions: 0,
            budget: self.budget,
        };
        if search.descend(0)? {
            let colors = search.colors.into_iter().map(Option::unwrap).collect();
            Ok(OracleOutcome::Satisfiable(DefectiveColoring {
                colors,
                impropriety: d,
            }))
        } else {
            Ok(OracleOutcome::Unsatisfiable)
        }
    }
}

pub fn oracle_solve(
    g: &Graph,
    lists: &ListAssignment,
    d: usize,
) -> Result<OracleOutcome, ColoringError> {
    Oracle::default().solve(g, lists, d)
}

/// Repeatedly removes a minimum-degree vertex (lowest id on ties) and returns
/// the removal sequence reversed.
fn degeneracy_order(g: &Graph) -> Vec<Vertex> {
    let n = g.vertex_count();
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (deg[v], v))
            .unwrap();
        removed[v] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            if !removed[u] {
                deg[u] -= 1;
            }
        }
    }
    order.reverse();
    order
}

struct Search<'a> {
    g: &'a Graph,
    lists: &'a [Vec<Color>],
    d: usize,
    order: &'a [Vertex],
    colors: Vec<Option<Color>>,
    same: Vec<usize>,
    expansions: u64,
    budget: u64,
}

impl Search<'_> {
    fn descend(&mut self, depth: usize) -> Result<bool, ColoringError> {
        if depth == self.order.len() {
            return Ok(true);
        }
        let v = self.order[depth];
        for i in 0..self.lists[v].len() {
            let c = self.lists[v][i];
            self.expansions += 1;
            if self.expansions > self.budget {
                return Err(ColoringError::BudgetExceeded(self.budget));
            }
            let clashing: Vec<Vertex> = self
                .g
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&u| self.colors[u] == Some(c))
                .collect();
            if clashing.len() > self.d || clashing.iter().any(|&u| self.same[u] >= self.d) {
                continue;
            }
            self.colors[v] = Some(c);
            self.same[v] = clashing.len();
            for &u in &clashing {
                self.same[u] += 1;
            }
            if self.descend(depth + 1)? {
                return Ok(true);
            }
            for &u in &clashing {
                self.same[u] -= 1;
            }
            self.same[v] = 0;
            self.colors[v] = None;
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify_coloring;

    #[test]
    fn k7_three_colors_unsat() {
        let g = Graph::complete(7);
        let l = ListAssignment::constant(7, &[1, 2, 3]);
        assert_eq!(oracle_solve(&g, &l, 1), Ok(OracleOutcome::Unsatisfiable));
    }

    #[test]
    fn k5_three_colors_sat() {
        let g = Graph::complete(5);
        let l = ListAssignment::constant(5, &[1, 2, 3]);
        match oracle_solve(&g, &l, 1).unwrap() {
            OracleOutcome::Satisfiable(phi) => assert!(verify_coloring(&g, &l, &phi, 1).is_ok()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn c5_two_colors_sat() {
        let g = Graph::cycle(5);
        let l = ListAssignment::constant(5, &[1, 2]);
        match oracle_solve(&g, &l, 1).unwrap() {
            OracleOutcome::Satisfiable(phi) => assert!(verify_coloring(&g, &l, &phi, 1).is_ok()),
            other => panic!("{other:?}"),
        }
        // proper 2-coloring of an odd cycle does not exist
        assert_eq!(oracle_solve(&g, &l, 0), Ok(OracleOutcome::Unsatisfiable));
    }

    #[test]
    fn budget_is_enforced() {
        let g = Graph::complete(7);
        let l = ListAssignment::constant(7, &[1, 2, 3]);
        assert_eq!(
            Oracle::with_budget(10).solve(&g, &l, 1),
            Err(ColoringError::BudgetExceeded(10))
        );
    }

    #[test]
    fn empty_list_is_unsat() {
        let g = Graph::empty(2);
        let l = ListAssignment::new(vec![[1].into_iter().collect(), Default::default()]);
        assert_eq!(oracle_solve(&g, &l, 0), Ok(OracleOutcome::Unsatisfiable));
    }

    #[test]
    fn order_is_smallest_last() {
        // star: leaves 1 and 2 go first, then the center ties with leaf 3
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(degeneracy_order(&g), vec![3, 0, 2, 1]);
        assert_eq!(degeneracy_order(&Graph::complete(3)), vec![2, 1, 0]);
    }
}
