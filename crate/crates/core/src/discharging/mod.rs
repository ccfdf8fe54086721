//! Exact-rational charges on vertices and faces, rule-driven redistribution,
//! and the transfer ledger.
//!
//! Every vertex starts with `d(v)/3 - 1` and every face with `d(f)/6 - 1`, so
//! by Euler's formula the total is `2g - 2` on a genus-`g` embedding. Rules
//! only read the initial structure (degrees and incidences), never
//! intermediate charges, so the result does not depend on rule order.

mod audit;
mod rules;

pub use audit::{
    audit, case2_vertex_bounds, template_constants, AuditError, AuditReport, BoundTemplate,
    TemplateCheck,
};
pub use rules::{
    fmt_rational, Cond, Multiplicity, Rule, RuleError, RuleSet, Selector, SourceKind, TargetKind,
};

use std::fmt;

use num_rational::Rational64;
use num_traits::Zero;

use crate::graph::EmbeddedGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Vertex(usize),
    Face(usize),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vertex(v) => write!(f, "vertex {v}"),
            Element::Face(x) => write!(f, "face {x}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Initial,
    Final,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargeState {
    pub vertex_charge: Vec<Rational64>,
    pub face_charge: Vec<Rational64>,
    pub stage: Stage,
}

impl ChargeState {
    pub fn get(&self, e: Element) -> Rational64 {
        match e {
            Element::Vertex(v) => self.vertex_charge[v],
            Element::Face(f) => self.face_charge[f],
        }
    }

    fn get_mut(&mut self, e: Element) -> &mut Rational64 {
        match e {
            Element::Vertex(v) => &mut self.vertex_charge[v],
            Element::Face(f) => &mut self.face_charge[f],
        }
    }

    pub fn total(&self) -> Rational64 {
        self.vertex_charge
            .iter()
            .chain(&self.face_charge)
            .fold(Rational64::zero(), |acc, x| acc + x)
    }

    /// Vertices first, then faces, each ascending.
    pub fn elements(&self) -> impl Iterator<Item = (Element, Rational64)> + '_ {
        let vs = self
            .vertex_charge
            .iter()
            .enumerate()
            .map(|(v, &c)| (Element::Vertex(v), c));
        let fs = self
            .face_charge
            .iter()
            .enumerate()
            .map(|(f, &c)| (Element::Face(f), c));
        vs.chain(fs)
    }
}

/// `d(v)/3 - 1` on vertices and `d(f)/6 - 1` on faces.
pub fn initial_charges(g: &EmbeddedGraph) -> ChargeState {
    let graph = g.graph();
    let vertex_charge = graph
        .vertices()
        .map(|v| Rational64::new(graph.degree(v) as i64, 3) - 1)
        .collect();
    let face_charge = g
        .faces()
        .faces()
        .iter()
        .map(|f| Rational64::new(f.degree() as i64, 6) - 1)
        .collect();
    ChargeState {
        vertex_charge,
        face_charge,
        stage: Stage::Initial,
    }
}

/// `2g - 2`, the total every charge state must carry.
pub fn expected_total(g: &EmbeddedGraph) -> Rational64 {
    Rational64::from_integer(2 * g.genus() as i64 - 2)
}

/// One recorded payment: `count` units of `unit` from `source` to `target`
/// under rule number `rule` (0-based position in the rule set).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transfer {
    pub source: Element,
    pub target: Element,
    pub rule: usize,
    pub unit: Rational64,
    pub count: usize,
}

impl Transfer {
    pub fn amount(&self) -> Rational64 {
        self.unit * Rational64::from_integer(self.count as i64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TransferLedger {
    pub entries: Vec<Transfer>,
}

impl TransferLedger {
    /// Applies every entry to `initial`, yielding a final-stage state.
    pub fn replay(&self, initial: &ChargeState) -> ChargeState {
        let mut state = initial.clone();
        for t in &self.entries {
            let amount = t.amount();
            *state.get_mut(t.source) -= amount;
            *state.get_mut(t.target) += amount;
        }
        state.stage = Stage::Final;
        state
    }

    pub fn emit(&self) -> String {
        self.entries
            .iter()
            .map(|t| {
                format!(
                    "{} -> {} rule={} amount={}\n",
                    t.source,
                    t.target,
                    t.rule + 1,
                    fmt_rational(&t.amount())
                )
            })
            .collect()
    }
}

/// Runs every rule against the initial structure and returns the final
/// charges with the ledger of transfers.
///
/// Face-to-face rules never pay a face to itself (an edge with the same face
/// on both sides moves nothing).
pub fn apply_discharging(g: &EmbeddedGraph, rules: &RuleSet) -> (ChargeState, TransferLedger) {
    let graph = g.graph();
    let faces = g.faces();
    let mut ledger = TransferLedger::default();
    for (idx, rule) in rules.rules.iter().enumerate() {
        match rule.source {
            SourceKind::Vertex => {
                for v in graph.vertices() {
                    if !rule.source_sel.cond.matches(graph.degree(v)) {
                        continue;
                    }
                    let mut corners = g.corner_faces(v);
                    corners.sort_unstable();
                    let mut i = 0;
                    while i < corners.len() {
                        let f = corners[i];
                        let run = corners[i..].iter().take_while(|&&x| x == f).count();
                        i += run;
                        if !rule.target_sel.cond.matches(faces.degree(f)) {
                            continue;
                        }
                        let count = match rule.multiplicity {
                            Multiplicity::Once => 1,
                            _ => run,
                        };
                        ledger.entries.push(Transfer {
                            source: Element::Vertex(v),
                            target: Element::Face(f),
                            rule: idx,
                            unit: rule.amount,
                            count,
                        });
                    }
                }
            }
            SourceKind::Face => {
                for f in 0..faces.len() {
                    if !rule.source_sel.cond.matches(faces.degree(f)) {
                        continue;
                    }
                    for (h, shared) in faces.neighbors_of(f) {
                        if h == f || !rule.target_sel.cond.matches(faces.degree(h)) {
                            continue;
                        }
                        let count = match rule.multiplicity {
                            Multiplicity::Once => 1,
                            _ => shared,
                        };
                        ledger.entries.push(Transfer {
                            source: Element::Face(f),
                            target: Element::Face(h),
                            rule: idx,
                            unit: rule.amount,
                            count,
                        });
                    }
                }
            }
        }
    }
    let initial = initial_charges(g);
    let final_state = ledger.replay(&initial);
    (final_state, ledger)
}
