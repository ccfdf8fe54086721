use std::collections::BTreeSet;
use std::fmt;

use num_rational::Rational64;
use num_traits::Zero;
use thiserror::Error;

use crate::structures::Case;

/// Degree condition on a vertex (`k`) or a face (`d`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cond {
    Eq(usize),
    Ge(usize),
    Le(usize),
    In(BTreeSet<usize>),
}

impl Cond {
    pub fn matches(&self, degree: usize) -> bool {
        match self {
            Cond::Eq(n) => degree == *n,
            Cond::Ge(n) => degree >= *n,
            Cond::Le(n) => degree <= *n,
            Cond::In(set) => set.contains(&degree),
        }
    }

    fn finite_values(&self) -> Option<Vec<usize>> {
        match self {
            Cond::Eq(n) => Some(vec![*n]),
            Cond::Le(n) => Some((0..=*n).collect()),
            Cond::In(set) => Some(set.iter().copied().collect()),
            Cond::Ge(_) => None,
        }
    }

    /// Whether some degree satisfies both conditions.
    pub fn intersects(&self, other: &Cond) -> bool {
        match (self.finite_values(), other.finite_values()) {
            (Some(vals), _) => vals.into_iter().any(|d| other.matches(d)),
            (None, Some(vals)) => vals.into_iter().any(|d| self.matches(d)),
            (None, None) => true,
        }
    }
}

/// Condition together with the variable letter it was written with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selector {
    pub var: char,
    pub cond: Cond,
}

impl Selector {
    pub fn new(var: char, cond: Cond) -> Self {
        Selector { var, cond }
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.cond {
            Cond::Eq(n) => write!(f, "{}={}", self.var, n),
            Cond::Ge(n) => write!(f, "{}>={}", self.var, n),
            Cond::Le(n) => write!(f, "{}<={}", self.var, n),
            Cond::In(set) => {
                let items: Vec<String> = set.iter().map(|d| d.to_string()).collect();
                write!(f, "{} in {{{}}}", self.var, items.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceKind {
    Vertex,
    Face,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetKind {
    /// Faces incident with a vertex source.
    IncidentFace,
    /// Faces sharing an edge with a face source.
    AdjacentFace,
}

/// How often a matching (source, target) pair pays.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Multiplicity {
    /// Vertex to face: once for every time the vertex appears on the face
    /// boundary. Default for vertex rules.
    PerIncidence,
    /// Face to face: once for every shared edge. Default for face rules.
    PerEdge,
    /// Once per distinct (source, target) pair.
    Once,
}

impl Multiplicity {
    fn token(self) -> &'static str {
        match self {
            Multiplicity::PerIncidence => "per-incidence",
            Multiplicity::PerEdge => "per-edge",
            Multiplicity::Once => "once",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub source: SourceKind,
    pub source_sel: Selector,
    pub target: TargetKind,
    pub target_sel: Selector,
    pub amount: Rational64,
    pub multiplicity: Multiplicity,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let src = match self.source {
            SourceKind::Vertex => "vertex",
            SourceKind::Face => "face",
        };
        let tgt = match self.target {
            TargetKind::IncidentFace => "face",
            TargetKind::AdjacentFace => "adjface",
        };
        write!(
            f,
            "{} {} -> {} {}: {} {}",
            src,
            self.source_sel,
            tgt,
            self.target_sel,
            fmt_amount(&self.amount),
            self.multiplicity.token()
        )
    }
}

fn fmt_amount(r: &Rational64) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RuleSet {
    pub rules: Vec<Rule>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("rules on lines {first} and {second} have overlapping selectors")]
    OverlappingSelectors { first: usize, second: usize },
}

impl RuleSet {
    pub fn new(rules: Vec<Rule>) -> Result<Self, RuleError> {
        let set = RuleSet { rules };
        set.check_overlaps()?;
        Ok(set)
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Two rules overlap when they share source and target kinds and both
    /// selector pairs intersect. Reported with 1-based rule positions.
    fn check_overlaps(&self) -> Result<(), RuleError> {
        for (i, a) in self.rules.iter().enumerate() {
            for (j, b) in self.rules.iter().enumerate().skip(i + 1) {
                if a.source == b.source
                    && a.target == b.target
                    && a.source_sel.cond.intersects(&b.source_sel.cond)
                    && a.target_sel.cond.intersects(&b.target_sel.cond)
                {
                    return Err(RuleError::OverlappingSelectors {
                        first: i + 1,
                        second: j + 1,
                    });
                }
            }
        }
        Ok(())
    }

    /// One rule per line with explicit multiplicity.
    pub fn emit(&self) -> String {
        self.rules.iter().map(|r| format!("{r}\n")).collect()
    }

    pub fn parse(text: &str) -> Result<RuleSet, RuleError> {
        let mut rules = Vec::new();
        let mut lines = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let content = raw.split('#').next().unwrap_or("");
            if content.trim().is_empty() {
                continue;
            }
            let rule = Parser::new(content, idx + 1).rule()?;
            rules.push(rule);
            lines.push(idx + 1);
        }
        RuleSet::new(rules).map_err(|e| match e {
            RuleError::OverlappingSelectors { first, second } => RuleError::OverlappingSelectors {
                first: lines[first - 1],
                second: lines[second - 1],
            },
            other => other,
        })
    }

    /// The two built-in rule sets.
    ///
    /// Case 1: a 4-vertex sends 1/6 and a 5⁺-vertex 1/3 to each incident 3-
    /// or 4-face; a 7⁺-face sends 1/42 across each edge it shares with a
    /// 4⁻-face.
    ///
    /// Case 2: a 4-vertex sends 1/6 to incident 3- and 4-faces and 1/18 to
    /// incident 5-faces; a 5⁺-vertex sends 1/4, 1/6, 1/18 to incident 3-, 4-,
    /// 5-faces; an 8⁺-face sends 1/24 across each edge it shares with a
    /// 5⁻-face.
    pub fn builtin(case: Case) -> RuleSet {
        let text = match case {
            Case::One => CASE1,
            Case::Two => CASE2,
        };
        RuleSet::parse(text).expect("built-in rules are well formed")
    }
}

const CASE1: &str = "\
vertex k=4 -> face d in {3,4}: 1/6
vertex k>=5 -> face d in {3,4}: 1/3
face d>=7 -> adjface d<=4: 1/42 per-edge
";

const CASE2: &str = "\
vertex k=4 -> face d in {3,4}: 1/6
vertex k=4 -> face d=5: 1/18
vertex k>=5 -> face d=3: 1/4
vertex k>=5 -> face d=4: 1/6
vertex k>=5 -> face d=5: 1/18
face d>=8 -> adjface d<=5: 1/24 per-edge
";

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, line: usize) -> Self {
        Parser { text, pos: 0, line }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, RuleError> {
        Err(RuleError::Parse {
            line: self.line,
            column: self.text[..self.pos].chars().count() + 1,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), RuleError> {
        if self.eat(token) {
            Ok(())
        } else {
            self.error(format!("expected `{token}`"))
        }
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '-'))
            .unwrap_or(rest.len());
        self.pos += len;
        &rest[..len]
    }

    fn int(&mut self) -> Result<i64, RuleError> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        if len == 0 {
            return self.error("expected an integer");
        }
        match rest[..len].parse() {
            Ok(n) => {
                self.pos += len;
                Ok(n)
            }
            Err(_) => self.error("integer out of range"),
        }
    }

    fn degree(&mut self) -> Result<usize, RuleError> {
        let start = self.pos;
        let n = self.int()?;
        usize::try_from(n).or_else(|_| {
            self.pos = start;
            self.error("degree out of range")
        })
    }

    fn selector(&mut self) -> Result<Selector, RuleError> {
        self.skip_ws();
        let var = match self.text[self.pos..].chars().next() {
            Some(c @ ('k' | 'd')) => c,
            _ => return self.error("expected `k` or `d`"),
        };
        self.pos += 1;
        let cond = if self.eat(">=") {
            Cond::Ge(self.degree()?)
        } else if self.eat("<=") {
            Cond::Le(self.degree()?)
        } else if self.eat("=") {
            Cond::Eq(self.degree()?)
        } else if self.eat("in") {
            self.expect("{")?;
            let mut set = BTreeSet::new();
            set.insert(self.degree()?);
            while self.eat(",") {
                set.insert(self.degree()?);
            }
            self.expect("}")?;
            Cond::In(set)
        } else {
            return self.error("expected `=`, `>=`, `<=` or `in`");
        };
        Ok(Selector { var, cond })
    }

    fn rational(&mut self) -> Result<Rational64, RuleError> {
        let start = self.pos;
        let numer = self.int()?;
        let denom = if self.eat("/") { self.int()? } else { 1 };
        if denom.is_zero() {
            self.pos = start;
            return self.error("zero denominator");
        }
        let r = Rational64::new(numer, denom);
        if r <= Rational64::zero() {
            self.pos = start;
            return self.error("amounts must be positive");
        }
        Ok(r)
    }

    fn rule(&mut self) -> Result<Rule, RuleError> {
        let source = match self.word() {
            "vertex" => SourceKind::Vertex,
            "face" => SourceKind::Face,
            _ => {
                self.pos = 0;
                self.skip_ws();
                return self.error("expected `vertex` or `face`");
            }
        };
        let source_sel = self.selector()?;
        self.expect("->")?;
        let target_start = self.pos;
        let target = match self.word() {
            "face" => TargetKind::IncidentFace,
            "adjface" => TargetKind::AdjacentFace,
            _ => {
                self.pos = target_start;
                self.skip_ws();
                return self.error("expected `face` or `adjface`");
            }
        };
        match (source, target) {
            (SourceKind::Vertex, TargetKind::IncidentFace)
            | (SourceKind::Face, TargetKind::AdjacentFace) => {}
            (SourceKind::Vertex, TargetKind::AdjacentFace) => {
                self.pos = target_start;
                self.skip_ws();
                return self.error("vertex rules must target incident faces (`face`)");
            }
            (SourceKind::Face, TargetKind::IncidentFace) => {
                self.pos = target_start;
                self.skip_ws();
                return self.error("face rules must target adjacent faces (`adjface`)");
            }
        }
        let target_sel = self.selector()?;
        self.expect(":")?;
        let amount = self.rational()?;
        let policy_start = self.pos;
        let multiplicity = match self.word() {
            "" => match source {
                SourceKind::Vertex => Multiplicity::PerIncidence,
                SourceKind::Face => Multiplicity::PerEdge,
            },
            "per-edge" if source == SourceKind::Face => Multiplicity::PerEdge,
            "per-incidence" if source == SourceKind::Vertex => Multiplicity::PerIncidence,
            "once" => Multiplicity::Once,
            _ => {
                self.pos = policy_start;
                self.skip_ws();
                return self.error(match source {
                    SourceKind::Vertex => "expected `per-incidence` or `once`",
                    SourceKind::Face => "expected `per-edge` or `once`",
                });
            }
        };
        self.skip_ws();
        if self.pos != self.text.len() {
            return self.error("unexpected trailing input");
        }
        Ok(Rule {
            source,
            source_sel,
            target,
            target_sel,
            amount,
            multiplicity,
        })
    }
}

/// Amount as `p/q`, always with an explicit denominator.
pub fn fmt_rational(r: &Rational64) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational64 {
        Rational64::new(p, q)
    }

    #[test]
    fn parses_vertex_rule() {
        let set = RuleSet::parse("vertex k=4 -> face d in {3,4}: 1/6").unwrap();
        let rule = &set.rules[0];
        assert_eq!(rule.source, SourceKind::Vertex);
        assert_eq!(rule.source_sel.cond, Cond::Eq(4));
        assert_eq!(rule.target, TargetKind::IncidentFace);
        assert_eq!(rule.target_sel.cond, Cond::In([3, 4].into_iter().collect()));
        assert_eq!(rule.amount, r(1, 6));
        assert_eq!(rule.multiplicity, Multiplicity::PerIncidence);
    }

    #[test]
    fn parses_face_rule() {
        let set = RuleSet::parse("face d>=7 -> adjface d<=4: 1/42 per-edge").unwrap();
        let rule = &set.rules[0];
        assert_eq!(rule.source, SourceKind::Face);
        assert_eq!(rule.source_sel.cond, Cond::Ge(7));
        assert_eq!(rule.target_sel.cond, Cond::Le(4));
        assert_eq!(rule.amount, r(1, 42));
        assert_eq!(rule.multiplicity, Multiplicity::PerEdge);
        assert_eq!(rule, &RuleSet::builtin(Case::One).rules[2]);
        assert!(RuleSet::parse("face d>=7 -> adjface d<=4: 1/42 per-incidence").is_err());
        assert!(RuleSet::parse("vertex k=4 -> face d<=4: 1/42 per-edge").is_err());
        let once = RuleSet::parse("vertex k=4 -> face d<=4: 1/6 once").unwrap();
        assert_eq!(once.rules[0].multiplicity, Multiplicity::Once);
    }

    #[test]
    fn overlapping_selectors_are_rejected() {
        let text = "vertex k=4 -> face d=3: 2/6\nvertex k=4 -> face d=3: 1/6\n";
        assert_eq!(
            RuleSet::parse(text),
            Err(RuleError::OverlappingSelectors { first: 1, second: 2 })
        );
        let text = "# header\n\nvertex k>=4 -> face d in {3,5}: 1\nvertex k<=4 -> face d>=5: 1\n";
        assert_eq!(
            RuleSet::parse(text),
            Err(RuleError::OverlappingSelectors { first: 3, second: 4 })
        );
        // same selectors but different source kinds do not clash
        assert!(RuleSet::parse("vertex d=4 -> face d=3: 1\nface d=4 -> adjface d=3: 1").is_ok());
    }

    #[test]
    fn parse_errors_carry_position() {
        match RuleSet::parse("vertex k=4 -> face d=3 1/6") {
            Err(RuleError::Parse { line, column, .. }) => {
                assert_eq!(line, 1);
                assert_eq!(column, 24);
            }
            other => panic!("{other:?}"),
        }
        match RuleSet::parse("\nvertex k=4 -> adjface d=3: 1") {
            Err(RuleError::Parse { line, column, .. }) => assert_eq!((line, column), (2, 15)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            RuleSet::parse("vertex k=4 -> face d=3: 0"),
            Err(RuleError::Parse { .. })
        ));
        assert!(matches!(
            RuleSet::parse("vertex k=4 -> face d=3: 1/0"),
            Err(RuleError::Parse { .. })
        ));
        assert!(matches!(
            RuleSet::parse("edge k=4 -> face d=3: 1"),
            Err(RuleError::Parse { line: 1, column: 1, .. })
        ));
        assert!(matches!(
            RuleSet::parse("vertex k=4 -> face d=3: 1 sometimes"),
            Err(RuleError::Parse { column: 27, .. })
        ));
    }

    #[test]
    fn builtin_amounts() {
        let one = RuleSet::builtin(Case::One);
        assert_eq!(one.rules.len(), 3);
        let two = RuleSet::builtin(Case::Two);
        assert_eq!(two.rules.len(), 6);
        let amount = |set: &RuleSet, k: usize, l: usize| {
            set.rules
                .iter()
                .find(|r| {
                    r.source == SourceKind::Vertex
                        && r.source_sel.cond.matches(k)
                        && r.target_sel.cond.matches(l)
                })
                .map(|r| r.amount)
        };
        assert_eq!(amount(&one, 5, 3), Some(r(1, 3)));
        assert_eq!(amount(&one, 4, 4), Some(r(1, 6)));
        assert_eq!(amount(&one, 3, 3), None);
        assert_eq!(amount(&two, 5, 3), Some(r(1, 4)));
        assert_eq!(amount(&two, 9, 4), Some(r(1, 6)));
        assert_eq!(amount(&two, 4, 5), Some(r(1, 18)));
        assert_eq!(amount(&two, 4, 3), Some(r(1, 6)));
        assert_eq!(amount(&two, 6, 5), Some(r(1, 18)));
    }

    #[test]
    fn emitter_normalizes() {
        let set = RuleSet::parse("vertex k in {5, 4} -> face d=3: 2/6\nface d>=8->adjface d<=5:2").unwrap();
        assert_eq!(
            set.emit(),
            "vertex k in {4,5} -> face d=3: 1/3 per-incidence\nface d>=8 -> adjface d<=5: 2 per-edge\n"
        );
        assert_eq!(RuleSet::parse(&set.emit()).unwrap(), set);
    }
}
