use std::fmt::Write as _;

use num_rational::Rational64;
use num_traits::Zero;
use thiserror::Error;

use super::{expected_total, fmt_rational, ChargeState, Element, Stage};
use crate::graph::EmbeddedGraph;
use crate::structures::Case;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuditError {
    #[error("audit needs final charges, got an initial state")]
    StageError,
}

/// Lower-bound templates for the final charge of a small face, one per
/// situation in the nonnegativity argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoundTemplate {
    /// Case 1, 3-face with a 5⁺-vertex and another 4⁺-vertex, bordered by
    /// three 7⁺-faces: `-1/2 + 1/3 + 1/6 + 3/42`.
    TriangleMixed,
    /// Case 1, 3-face with three 4⁺-vertices, bordered by three 7⁺-faces:
    /// `-1/2 + 3/6 + 3/42`.
    TriangleFours,
    /// Case 1, 4-face bordered by four 7⁺-faces that collects at least
    /// `1/3 + 1/6` from its vertices: `-1/3 + 1/3 + 1/6 + 4/42`.
    QuadCase1,
    /// Case 2, 5-face with three 4⁺-vertices next to an 8⁺-face:
    /// `-1/6 + 3/18 + 1/24`.
    PentagonCase2,
    /// Case 2, 4-face with two 4⁺-vertices bordered by three 8⁺-faces:
    /// `-1/3 + 2/6 + 3/24`.
    QuadCase2,
}

impl BoundTemplate {
    pub const ALL: [BoundTemplate; 5] = [
        BoundTemplate::TriangleMixed,
        BoundTemplate::TriangleFours,
        BoundTemplate::QuadCase1,
        BoundTemplate::PentagonCase2,
        BoundTemplate::QuadCase2,
    ];

    pub fn label(self) -> &'static str {
        match self {
            BoundTemplate::TriangleMixed => "triangle-mixed",
            BoundTemplate::TriangleFours => "triangle-fours",
            BoundTemplate::QuadCase1 => "quad-case1",
            BoundTemplate::PentagonCase2 => "pentagon-case2",
            BoundTemplate::QuadCase2 => "quad-case2",
        }
    }

    pub fn case(self) -> Case {
        match self {
            BoundTemplate::TriangleMixed | BoundTemplate::TriangleFours | BoundTemplate::QuadCase1 => {
                Case::One
            }
            BoundTemplate::PentagonCase2 | BoundTemplate::QuadCase2 => Case::Two,
        }
    }

    /// The summands: initial face charge, then received amounts.
    pub fn terms(self) -> Vec<Rational64> {
        let r = Rational64::new;
        match self {
            BoundTemplate::TriangleMixed => vec![r(-1, 2), r(1, 3), r(1, 6), r(3, 42)],
            BoundTemplate::TriangleFours => vec![r(-1, 2), r(3, 6), r(3, 42)],
            BoundTemplate::QuadCase1 => vec![r(-1, 3), r(1, 3), r(1, 6), r(4, 42)],
            BoundTemplate::PentagonCase2 => vec![r(-1, 6), r(3, 18), r(1, 24)],
            BoundTemplate::QuadCase2 => vec![r(-1, 3), r(2, 6), r(3, 24)],
        }
    }

    pub fn constant(self) -> Rational64 {
        self.terms().into_iter().fold(Rational64::zero(), |a, b| a + b)
    }
}

/// Every template with its exact value.
pub fn template_constants() -> Vec<(BoundTemplate, Rational64)> {
    BoundTemplate::ALL.iter().map(|&t| (t, t.constant())).collect()
}

/// Lower bounds on the final charge of a `k`-vertex (`k >= 6`) under the
/// case-2 rules: the first when at most `floor(k/2)` incident 4⁻-faces, the
/// second otherwise.
pub fn case2_vertex_bounds(k: usize) -> (Rational64, Rational64) {
    let k = k as i64;
    let few = Rational64::new(9 * k - 33 - 9 * (k / 4), 36);
    let many = Rational64::new(10 * k - 38 - 3 * (k / 2) - 6 * (k / 3), 36);
    (few, many)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplateCheck {
    pub face: usize,
    pub template: BoundTemplate,
    pub bound: Rational64,
    pub charge: Rational64,
}

impl TemplateCheck {
    pub fn met(&self) -> bool {
        self.charge >= self.bound
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub genus: usize,
    pub total: Rational64,
    pub expected_total: Rational64,
    pub charges: ChargeState,
    pub negatives: Vec<(Element, Rational64)>,
    /// Templates whose structural premises hold at some 3-, 4- or 5-face.
    pub templates: Vec<TemplateCheck>,
    /// 3-, 4- and 5-faces no template covers.
    pub uncovered: Vec<usize>,
}

impl AuditReport {
    pub fn conserved(&self) -> bool {
        self.total == self.expected_total
    }

    pub fn strictly_positive(&self) -> Vec<Element> {
        self.charges
            .elements()
            .filter(|(_, c)| *c > Rational64::zero())
            .map(|(e, _)| e)
            .collect()
    }

    /// Deterministic text: summary lines, then one line per element, then the
    /// negative elements, then template checks.
    pub fn emit(&self) -> String {
        let mut out = String::new();
        let yes_no = |b: bool| if b { "yes" } else { "no" };
        writeln!(out, "genus {}", self.genus).unwrap();
        writeln!(out, "total {}", fmt_rational(&self.total)).unwrap();
        writeln!(out, "expected {}", fmt_rational(&self.expected_total)).unwrap();
        writeln!(out, "conserved {}", yes_no(self.conserved())).unwrap();
        writeln!(out, "negatives {}", self.negatives.len()).unwrap();
        for (e, c) in self.charges.elements() {
            writeln!(out, "{} {}", e, fmt_rational(&c)).unwrap();
        }
        for (e, c) in &self.negatives {
            writeln!(out, "negative {} {}", e, fmt_rational(c)).unwrap();
        }
        for t in &self.templates {
            writeln!(
                out,
                "template face {} {} bound {} charge {} met {}",
                t.face,
                t.template.label(),
                fmt_rational(&t.bound),
                fmt_rational(&t.charge),
                yes_no(t.met())
            )
            .unwrap();
        }
        for f in &self.uncovered {
            writeln!(out, "uncovered face {f}").unwrap();
        }
        out
    }
}

/// Audits a final charge state. Template premises are evaluated for `case`
/// when given; nonnegativity is reported, never asserted.
pub fn audit(
    cs: &ChargeState,
    g: &EmbeddedGraph,
    case: Option<Case>,
) -> Result<AuditReport, AuditError> {
    if cs.stage != Stage::Final {
        return Err(AuditError::StageError);
    }
    let negatives = cs
        .elements()
        .filter(|(_, c)| *c < Rational64::zero())
        .collect();
    let mut templates = Vec::new();
    let mut uncovered = Vec::new();
    if let Some(case) = case {
        let faces = g.faces();
        for f in 0..faces.len() {
            let h = faces.degree(f);
            if !(3..=5).contains(&h) {
                continue;
            }
            let applicable = applicable_templates(g, f, case);
            if applicable.is_empty() {
                uncovered.push(f);
            }
            templates.extend(applicable.into_iter().map(|t| TemplateCheck {
                face: f,
                template: t,
                bound: t.constant(),
                charge: cs.face_charge[f],
            }));
        }
    }
    Ok(AuditReport {
        genus: g.genus(),
        total: cs.total(),
        expected_total: expected_total(g),
        charges: cs.clone(),
        negatives,
        templates,
        uncovered,
    })
}

fn applicable_templates(g: &EmbeddedGraph, f: usize, case: Case) -> Vec<BoundTemplate> {
    let faces = g.faces();
    let graph = g.graph();
    let degrees: Vec<usize> = faces
        .face(f)
        .vertices()
        .into_iter()
        .map(|v| graph.degree(v))
        .collect();
    let fours = degrees.iter().filter(|&&d| d >= 4).count();
    let fives = degrees.iter().filter(|&&d| d >= 5).count();
    let mixed = fives >= 1 && fours >= 2;
    let edges_to = |min_degree: usize| -> usize {
        faces
            .neighbors_of(f)
            .into_iter()
            .filter(|&(h, _)| h != f && faces.degree(h) >= min_degree)
            .map(|(_, m)| m)
            .sum()
    };
    let mut out = Vec::new();
    match (case, faces.degree(f)) {
        (Case::One, 3) => {
            if edges_to(7) == 3 {
                if mixed {
                    out.push(BoundTemplate::TriangleMixed);
                }
                if fours == 3 {
                    out.push(BoundTemplate::TriangleFours);
                }
            }
        }
        (Case::One, 4) => {
            if edges_to(7) == 4 && (mixed || fours >= 3) {
                out.push(BoundTemplate::QuadCase1);
            }
        }
        (Case::Two, 4) => {
            if fours >= 2 && edges_to(8) >= 3 {
                out.push(BoundTemplate::QuadCase2);
            }
        }
        (Case::Two, 5) => {
            if fours >= 3 && edges_to(8) >= 1 {
                out.push(BoundTemplate::PentagonCase2);
            }
        }
        _ => {}
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discharging::{apply_discharging, initial_charges, RuleSet};
    use crate::io::generators::gen_torus_grid;

    fn r(p: i64, q: i64) -> Rational64 {
        Rational64::new(p, q)
    }

    #[test]
    fn template_values() {
        assert_eq!(BoundTemplate::TriangleMixed.constant(), r(1, 14));
        assert_eq!(BoundTemplate::TriangleFours.constant(), r(1, 14));
        assert_eq!(BoundTemplate::QuadCase1.constant(), r(11, 42));
        assert_eq!(BoundTemplate::PentagonCase2.constant(), r(1, 24));
        assert_eq!(BoundTemplate::QuadCase2.constant(), r(1, 8));
        assert!(template_constants().iter().all(|(_, c)| *c > Rational64::zero()));
    }

    #[test]
    fn case2_vertex_bounds_nonnegative() {
        assert_eq!(case2_vertex_bounds(6), (r(12, 36), r(1, 36)));
        for k in 6..=500 {
            let (a, b) = case2_vertex_bounds(k);
            assert!(a >= Rational64::zero() && b >= Rational64::zero(), "k={k}");
        }
    }

    #[test]
    fn stage_checked() {
        let e = gen_torus_grid(4, 4, false).unwrap().embedding.unwrap();
        assert_eq!(
            audit(&initial_charges(&e), &e, None),
            Err(AuditError::StageError)
        );
    }

    #[test]
    fn grid_audit() {
        let e = gen_torus_grid(4, 4, false).unwrap().embedding.unwrap();
        let (fin, _) = apply_discharging(&e, &RuleSet::builtin(Case::One));
        let report = audit(&fin, &e, Some(Case::One)).unwrap();
        assert!(report.conserved());
        assert_eq!(report.total, Rational64::zero());
        assert_eq!(report.negatives.len(), 16);
        assert!(report
            .negatives
            .iter()
            .all(|(e, c)| matches!(e, Element::Vertex(_)) && *c == r(-1, 3)));
        // quads border quads, so no case-1 template premise holds
        assert!(report.templates.is_empty());
        assert_eq!(report.uncovered.len(), 16);
        let text = report.emit();
        assert!(text.starts_with("genus 1\ntotal 0/1\nexpected 0/1\nconserved yes\nnegatives 16\n"));
        assert!(text.contains("\nnegative vertex 15 -1/3\n"));
        assert!(text.contains("\nface 0 1/3\n"));
    }
}
