//! Syntactic classification of formulas: positivity, geometric-implication
//! shape, and membership in the three mutually recursive classes Q, R, J
//! that govern which direction of the placeholder translation is
//! intuitionistically derivable.
//!
//! The classes are generated by:
//!
//! * Q: `bot` and atoms; closed under `∧ ∨ ∃ ∀`; `J → Q` whenever `J ∈ J`.
//! * R: `bot`; closed under `∧ ∨ ∀`; `J → R` whenever `J ∈ J`.
//! * J: `bot` and atoms; closed under `∧ ∨ ∃`; `R → J` whenever `R ∈ R`.
//!
//! All five flags are computed in a single bottom-up pass.

use crate::calculus::Theory;
use crate::syntax::Formula;
use crate::{Error, Result};

/// Membership flags for one formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassMembership {
    /// Built from atoms and `bot` using `∧ ∨ ∃` only.
    pub positive: bool,
    /// A positive formula, an implication between positive formulas, or a
    /// prenex universal closure of either.
    pub geometric_implication: bool,
    pub in_q: bool,
    pub in_r: bool,
    pub in_j: bool,
}

/// Classifies a formula. The formula may not mention the placeholder `E`.
pub fn classify(f: &Formula) -> Result<ClassMembership> {
    if f.contains_placeholder() {
        return Err(Error::input("classify: formula mentions the placeholder E"));
    }
    Ok(classify_inner(f))
}

fn classify_inner(f: &Formula) -> ClassMembership {
    match f {
        Formula::Placeholder => unreachable!("rejected above"),
        Formula::Falsum => ClassMembership {
            positive: true,
            geometric_implication: true,
            in_q: true,
            in_r: true,
            in_j: true,
        },
        Formula::Atom(..) => ClassMembership {
            positive: true,
            geometric_implication: true,
            in_q: true,
            in_r: false,
            in_j: true,
        },
        Formula::And(l, r) | Formula::Or(l, r) => {
            let (l, r) = (classify_inner(l), classify_inner(r));
            let positive = l.positive && r.positive;
            ClassMembership {
                positive,
                geometric_implication: positive,
                in_q: l.in_q && r.in_q,
                in_r: l.in_r && r.in_r,
                in_j: l.in_j && r.in_j,
            }
        }
        Formula::Imp(l, r) => {
            let (lc, rc) = (classify_inner(l), classify_inner(r));
            ClassMembership {
                positive: false,
                geometric_implication: lc.positive && rc.positive,
                in_q: lc.in_j && rc.in_q,
                in_r: lc.in_j && rc.in_r,
                in_j: lc.in_r && rc.in_j,
            }
        }
        Formula::Exists(_, b) => {
            let b = classify_inner(b);
            ClassMembership {
                positive: b.positive,
                geometric_implication: b.positive,
                in_q: b.in_q,
                in_r: false,
                in_j: b.in_j,
            }
        }
        Formula::ForAll(_, b) => {
            let b = classify_inner(b);
            ClassMembership {
                positive: false,
                // universal quantifiers may only be prefixed, so the body
                // must itself be a geometric implication
                geometric_implication: b.geometric_implication,
                in_q: b.in_q,
                in_r: b.in_r,
                in_j: false,
            }
        }
    }
}

/// What [`validate_theory`] should demand of every axiom.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoryRequirement {
    Geometric,
    InQ,
}

impl TheoryRequirement {
    fn satisfied_by(self, m: &ClassMembership) -> bool {
        match self {
            TheoryRequirement::Geometric => m.geometric_implication,
            TheoryRequirement::InQ => m.in_q,
        }
    }

    fn describe(self) -> &'static str {
        match self {
            TheoryRequirement::Geometric => "a geometric implication",
            TheoryRequirement::InQ => "in the class Q",
        }
    }
}

/// Axioms of a theory that fail a requirement, by index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoryReport {
    pub requirement: TheoryRequirement,
    pub failing: Vec<(usize, String)>,
}

impl TheoryReport {
    pub fn is_ok(&self) -> bool {
        self.failing.is_empty()
    }
}

/// Checks every axiom of the theory against the requirement and lists the
/// failures.
pub fn validate_theory(theory: &Theory, requirement: TheoryRequirement) -> Result<TheoryReport> {
    let mut failing = Vec::new();
    for (i, ax) in theory.axioms.iter().enumerate() {
        let m = classify(ax)?;
        if !requirement.satisfied_by(&m) {
            failing.push((i, format!("axiom {i} ({ax}) is not {}", requirement.describe())));
        }
    }
    Ok(TheoryReport { requirement, failing })
}
