//! Sequents, inference rules, derivation trees and the three-mode checker.
//!
//! The rule set is Gentzen's LK in Takeuti's sequence-based presentation:
//! antecedents and succedents are sequences, exchange is an explicit rule
//! swapping one adjacent pair, and the logical rules touch fixed positions
//! (leftmost antecedent formula for left rules, rightmost succedent formula
//! for right rules). Negation rules are omitted; instead `Γ, bot ⇒ Δ` is an
//! axiom scheme. Two derivable generalizations keep machine-built proofs
//! small: identity axioms apply to arbitrary formulas occurring on both
//! sides, weakening may insert at any position, and contraction may merge
//! any adjacent duplicate pair. Each of these is interderivable with the
//! book rules via exchanges, so checkable derivability is unchanged.
//!
//! Intuitionistic mode restricts every succedent to at most one formula;
//! minimal mode additionally drops the `bot` axiom scheme.

use crate::syntax::{well_formed, Formula, Term};
use crate::{Error, Result};
use std::collections::BTreeSet;
use std::fmt;

/// Proof mode: which sequents and axioms are admissible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Mode {
    Classical,
    Intuitionistic,
    Minimal,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Classical => "classical",
            Mode::Intuitionistic => "intuitionistic",
            Mode::Minimal => "minimal",
        }
    }

    pub fn parse(s: &str) -> Result<Mode> {
        match s {
            "classical" => Ok(Mode::Classical),
            "intuitionistic" => Ok(Mode::Intuitionistic),
            "minimal" => Ok(Mode::Minimal),
            other => Err(Error::input(format!("unknown mode {other}"))),
        }
    }

    fn single_succedent(self) -> bool {
        !matches!(self, Mode::Classical)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A sequent `Γ ⇒ Δ` with explicit formula order on both sides.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sequent {
    pub antecedent: Vec<Formula>,
    pub succedent: Vec<Formula>,
}

impl Sequent {
    pub fn new(antecedent: Vec<Formula>, succedent: Vec<Formula>) -> Sequent {
        Sequent { antecedent, succedent }
    }

    pub fn symbols(&self) -> usize {
        self.antecedent.iter().chain(self.succedent.iter()).map(Formula::symbols).sum()
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut vars = BTreeSet::new();
        for f in self.antecedent.iter().chain(self.succedent.iter()) {
            vars.extend(f.free_vars());
        }
        vars
    }

    pub fn all_var_names(&self) -> BTreeSet<String> {
        let mut vars = BTreeSet::new();
        for f in self.antecedent.iter().chain(self.succedent.iter()) {
            vars.extend(f.all_var_names());
        }
        vars
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.antecedent.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, " => ")?;
        for (i, d) in self.succedent.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// The rule applied at a derivation node. Quantifier rules carry their
/// witnessing term or eigenvariable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleTag {
    AxId,
    AxBot,
    AxTheory(usize),
    WeakL,
    WeakR,
    ContrL,
    ContrR,
    ExchL,
    ExchR,
    Cut,
    AndL,
    AndR,
    OrL,
    OrR,
    ImpL,
    ImpR,
    AllL(Term),
    AllR(String),
    ExL(String),
    ExR(Term),
}

impl RuleTag {
    /// Number of premises the rule consumes.
    pub fn arity(&self) -> usize {
        match self {
            RuleTag::AxId | RuleTag::AxBot | RuleTag::AxTheory(_) => 0,
            RuleTag::Cut | RuleTag::AndR | RuleTag::OrL | RuleTag::ImpL => 2,
            _ => 1,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            RuleTag::AxId => "axid",
            RuleTag::AxBot => "axbot",
            RuleTag::AxTheory(_) => "axtheory",
            RuleTag::WeakL => "weakl",
            RuleTag::WeakR => "weakr",
            RuleTag::ContrL => "contrl",
            RuleTag::ContrR => "contrr",
            RuleTag::ExchL => "exchl",
            RuleTag::ExchR => "exchr",
            RuleTag::Cut => "cut",
            RuleTag::AndL => "andl",
            RuleTag::AndR => "andr",
            RuleTag::OrL => "orl",
            RuleTag::OrR => "orr",
            RuleTag::ImpL => "impl",
            RuleTag::ImpR => "impr",
            RuleTag::AllL(_) => "alll",
            RuleTag::AllR(_) => "allr",
            RuleTag::ExL(_) => "exl",
            RuleTag::ExR(_) => "exr",
        }
    }
}

/// A finite tree of rule applications. Nothing about a `Derivation` is
/// trusted until [`check`] has validated every node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub conclusion: Sequent,
    pub rule: RuleTag,
    pub premises: Vec<Derivation>,
}

// Transformed derivations can be thousands of inferences tall; the default
// recursive drop glue would exhaust the stack on them.
impl Drop for Derivation {
    fn drop(&mut self) {
        let mut stack = std::mem::take(&mut self.premises);
        while let Some(mut node) = stack.pop() {
            stack.append(&mut node.premises);
        }
    }
}

impl Derivation {
    pub fn leaf(rule: RuleTag, conclusion: Sequent) -> Derivation {
        Derivation { conclusion, rule, premises: Vec::new() }
    }

    pub fn unary(rule: RuleTag, conclusion: Sequent, premise: Derivation) -> Derivation {
        Derivation { conclusion, rule, premises: vec![premise] }
    }

    pub fn binary(
        rule: RuleTag,
        conclusion: Sequent,
        left: Derivation,
        right: Derivation,
    ) -> Derivation {
        Derivation { conclusion, rule, premises: vec![left, right] }
    }

    pub fn inference_count(&self) -> usize {
        1 + self.premises.iter().map(Derivation::inference_count).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(Derivation::height).max().unwrap_or(0)
    }

    /// Every variable name mentioned anywhere in the tree, including
    /// eigenvariables and witness terms.
    pub fn all_var_names(&self) -> BTreeSet<String> {
        let mut vars = BTreeSet::new();
        self.collect_var_names(&mut vars);
        vars
    }

    fn collect_var_names(&self, vars: &mut BTreeSet<String>) {
        vars.extend(self.conclusion.all_var_names());
        match &self.rule {
            RuleTag::AllR(a) | RuleTag::ExL(a) => {
                vars.insert(a.clone());
            }
            RuleTag::AllL(t) | RuleTag::ExR(t) => {
                let mut free = BTreeSet::new();
                let mut bound = BTreeSet::new();
                collect_term_names(t, &mut free, &mut bound);
                vars.extend(free);
                vars.extend(bound);
            }
            _ => {}
        }
        for p in &self.premises {
            p.collect_var_names(vars);
        }
    }
}

fn collect_term_names(t: &Term, free: &mut BTreeSet<String>, bound: &mut BTreeSet<String>) {
    match t {
        Term::Free(n) => {
            free.insert(n.clone());
        }
        Term::Bound(n) => {
            bound.insert(n.clone());
        }
        Term::Const(_) => {}
        Term::App(_, args) => {
            for a in args {
                collect_term_names(a, free, bound);
            }
        }
    }
}

/// A named set of axiom sentences. `Γ ⇒ φ` with `φ` an axiom is an initial
/// sequent for derivability in the theory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theory {
    pub name: String,
    pub axioms: Vec<Formula>,
}

impl Theory {
    /// Builds a user theory: axioms must be well-formed sentences and may
    /// not mention the placeholder `E`.
    pub fn new(name: &str, axioms: Vec<Formula>) -> Result<Theory> {
        let theory = Theory::with_placeholder(name, axioms)?;
        for (i, ax) in theory.axioms.iter().enumerate() {
            if ax.contains_placeholder() {
                return Err(Error::input(format!(
                    "axiom {i} of theory {name} mentions the placeholder E"
                )));
            }
        }
        Ok(theory)
    }

    /// Like [`Theory::new`] but allows `E` in axioms. Translated theories
    /// need this; user input goes through [`Theory::new`].
    pub fn with_placeholder(name: &str, axioms: Vec<Formula>) -> Result<Theory> {
        if !crate::syntax::is_ident(name) {
            return Err(Error::input(format!("{name} is not a valid theory name")));
        }
        for (i, ax) in axioms.iter().enumerate() {
            well_formed(ax)
                .map_err(|e| Error::input(format!("axiom {i} of theory {name}: {e}")))?;
            if let Some(v) = ax.free_vars().into_iter().next() {
                return Err(Error::input(format!(
                    "axiom {i} of theory {name} is not a sentence: free variable {v}"
                )));
            }
        }
        Ok(Theory { name: name.to_string(), axioms })
    }

    pub fn empty() -> Theory {
        Theory { name: "empty".to_string(), axioms: Vec::new() }
    }
}

/// Exact size measures of a derivation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeReport {
    /// Number of rule applications (nodes).
    pub inference_count: usize,
    /// Total formula symbols over all node sequents.
    pub symbol_count: usize,
    /// Longest root-to-leaf path; a lone axiom has height 1.
    pub height: usize,
}

/// Computes the exact size measures of a derivation.
pub fn size(d: &Derivation) -> SizeReport {
    fn walk(d: &Derivation, inferences: &mut usize, symbols: &mut usize) {
        *inferences += 1;
        *symbols += d.conclusion.symbols();
        for p in &d.premises {
            walk(p, inferences, symbols);
        }
    }
    let mut inferences = 0;
    let mut symbols = 0;
    walk(d, &mut inferences, &mut symbols);
    SizeReport { inference_count: inferences, symbol_count: symbols, height: d.height() }
}

/// One rule violation, addressed by the child-index path from the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub path: Vec<usize>,
    pub rule: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "node ")?;
        if self.path.is_empty() {
            write!(f, "root")?;
        } else {
            for (i, p) in self.path.iter().enumerate() {
                if i > 0 {
                    write!(f, ".")?;
                }
                write!(f, "{p}")?;
            }
        }
        write!(f, " [{}]: {}", self.rule, self.message)
    }
}

/// Outcome of checking a derivation: all violations, not just the first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub violations: Vec<Violation>,
}

impl CheckReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            write!(f, "ok")
        } else {
            for (i, v) in self.violations.iter().enumerate() {
                if i > 0 {
                    writeln!(f)?;
                }
                write!(f, "{v}")?;
            }
            Ok(())
        }
    }
}

struct Checker<'a> {
    mode: Mode,
    theory: &'a Theory,
    violations: Vec<Violation>,
}

/// Validates every node of `d` against `mode` and `theory`. Violations are
/// data, not errors; an empty report means the derivation is accepted.
pub fn check(d: &Derivation, mode: Mode, theory: &Theory) -> CheckReport {
    let mut checker = Checker { mode, theory, violations: Vec::new() };
    let mut path = Vec::new();
    checker.node(d, &mut path);
    CheckReport { violations: checker.violations }
}

impl<'a> Checker<'a> {
    fn fail(&mut self, path: &[usize], rule: &RuleTag, msg: impl Into<String>) {
        self.violations.push(Violation {
            path: path.to_vec(),
            rule: rule.name().to_string(),
            message: msg.into(),
        });
    }

    fn node(&mut self, d: &Derivation, path: &mut Vec<usize>) {
        for (i, p) in d.premises.iter().enumerate() {
            path.push(i);
            self.node(p, path);
            path.pop();
        }

        let c = &d.conclusion;
        for f in c.antecedent.iter().chain(c.succedent.iter()) {
            if let Err(e) = well_formed(f) {
                self.fail(path, &d.rule, format!("ill-formed formula {f}: {e}"));
            }
        }
        if self.mode.single_succedent() && c.succedent.len() > 1 {
            self.fail(
                path,
                &d.rule,
                format!("succedent has {} formulas; {} mode allows at most one", c.succedent.len(), self.mode),
            );
        }

        if d.premises.len() != d.rule.arity() {
            self.fail(
                path,
                &d.rule,
                format!("rule takes {} premises, found {}", d.rule.arity(), d.premises.len()),
            );
            return;
        }

        match &d.rule {
            RuleTag::AxId => {
                let shared =
                    c.antecedent.iter().any(|f| c.succedent.iter().any(|g| g == f));
                if !shared {
                    self.fail(path, &d.rule, "no formula occurs on both sides");
                }
            }
            RuleTag::AxBot => {
                if self.mode == Mode::Minimal {
                    self.fail(path, &d.rule, "the bot axiom scheme is not available in minimal mode");
                }
                if !c.antecedent.contains(&Formula::Falsum) {
                    self.fail(path, &d.rule, "antecedent does not contain bot");
                }
            }
            RuleTag::AxTheory(i) => match self.theory.axioms.get(*i) {
                None => self.fail(
                    path,
                    &d.rule,
                    format!("theory {} has no axiom {i}", self.theory.name),
                ),
                Some(ax) => {
                    if c.succedent.len() != 1 || c.succedent[0] != *ax {
                        self.fail(
                            path,
                            &d.rule,
                            format!("succedent must be exactly axiom {i} of theory {}", self.theory.name),
                        );
                    }
                }
            },
            RuleTag::WeakL => {
                let p = &d.premises[0].conclusion;
                let ok = c.succedent == p.succedent
                    && c.antecedent.len() == p.antecedent.len() + 1
                    && (0..c.antecedent.len()).any(|i| {
                        let mut trimmed = c.antecedent.clone();
                        trimmed.remove(i);
                        trimmed == p.antecedent
                    });
                if !ok {
                    self.fail(path, &d.rule, "conclusion is not the premise with one antecedent formula inserted");
                }
            }
            RuleTag::WeakR => {
                let p = &d.premises[0].conclusion;
                let ok = c.antecedent == p.antecedent
                    && c.succedent.len() == p.succedent.len() + 1
                    && (0..c.succedent.len()).any(|i| {
                        let mut trimmed = c.succedent.clone();
                        trimmed.remove(i);
                        trimmed == p.succedent
                    });
                if !ok {
                    self.fail(path, &d.rule, "conclusion is not the premise with one succedent formula inserted");
                }
            }
            RuleTag::ContrL => {
                let p = &d.premises[0].conclusion;
                let ok = c.succedent == p.succedent
                    && p.antecedent.len() == c.antecedent.len() + 1
                    && (0..p.antecedent.len() - 1).any(|i| {
                        p.antecedent[i] == p.antecedent[i + 1] && {
                            let mut merged = p.antecedent.clone();
                            merged.remove(i);
                            merged == c.antecedent
                        }
                    });
                if !ok {
                    self.fail(path, &d.rule, "conclusion does not merge one adjacent duplicate antecedent pair");
                }
            }
            RuleTag::ContrR => {
                let p = &d.premises[0].conclusion;
                let ok = c.antecedent == p.antecedent
                    && p.succedent.len() == c.succedent.len() + 1
                    && (0..p.succedent.len() - 1).any(|i| {
                        p.succedent[i] == p.succedent[i + 1] && {
                            let mut merged = p.succedent.clone();
                            merged.remove(i);
                            merged == c.succedent
                        }
                    });
                if !ok {
                    self.fail(path, &d.rule, "conclusion does not merge one adjacent duplicate succedent pair");
                }
            }
            RuleTag::ExchL => {
                let p = &d.premises[0].conclusion;
                let ok = c.succedent == p.succedent
                    && c.antecedent.len() == p.antecedent.len()
                    && c.antecedent.len() >= 2
                    && (0..c.antecedent.len() - 1).any(|i| {
                        let mut swapped = p.antecedent.clone();
                        swapped.swap(i, i + 1);
                        swapped == c.antecedent
                    });
                if !ok {
                    self.fail(path, &d.rule, "conclusion is not the premise with one adjacent antecedent pair swapped");
                }
            }
            RuleTag::ExchR => {
                let p = &d.premises[0].conclusion;
                let ok = c.antecedent == p.antecedent
                    && c.succedent.len() == p.succedent.len()
                    && c.succedent.len() >= 2
                    && (0..c.succedent.len() - 1).any(|i| {
                        let mut swapped = p.succedent.clone();
                        swapped.swap(i, i + 1);
                        swapped == c.succedent
                    });
                if !ok {
                    self.fail(path, &d.rule, "conclusion is not the premise with one adjacent succedent pair swapped");
                }
            }
            RuleTag::Cut => {
                let p1 = &d.premises[0].conclusion;
                let p2 = &d.premises[1].conclusion;
                match (p1.succedent.last(), p2.antecedent.first()) {
                    (Some(cf1), Some(cf2)) if cf1 == cf2 => {
                        let mut ant = p1.antecedent.clone();
                        ant.extend(p2.antecedent[1..].iter().cloned());
                        let mut suc = p1.succedent[..p1.succedent.len() - 1].to_vec();
                        suc.extend(p2.succedent.iter().cloned());
                        if c.antecedent != ant || c.succedent != suc {
                            self.fail(path, &d.rule, "conclusion does not combine the premises of the cut");
                        }
                    }
                    _ => self.fail(path, &d.rule, "cut formula mismatch between the premises"),
                }
            }
            RuleTag::AndL => {
                let p = &d.premises[0].conclusion;
                let ok = match (c.antecedent.first(), p.antecedent.first()) {
                    (Some(Formula::And(l, r)), Some(first)) => {
                        (first == l.as_ref() || first == r.as_ref())
                            && c.antecedent[1..] == p.antecedent[1..]
                            && c.antecedent.len() == p.antecedent.len()
                            && c.succedent == p.succedent
                    }
                    _ => false,
                };
                if !ok {
                    self.fail(path, &d.rule, "leftmost antecedent formula is not a conjunction of the premise's leftmost formula");
                }
            }
            RuleTag::AndR => {
                let p1 = &d.premises[0].conclusion;
                let p2 = &d.premises[1].conclusion;
                let ok = match c.succedent.last() {
                    Some(Formula::And(l, r)) => {
                        let head = &c.succedent[..c.succedent.len() - 1];
                        p1.antecedent == c.antecedent
                            && p2.antecedent == c.antecedent
                            && p1.succedent.len() == c.succedent.len()
                            && p2.succedent.len() == c.succedent.len()
                            && &p1.succedent[..p1.succedent.len() - 1] == head
                            && &p2.succedent[..p2.succedent.len() - 1] == head
                            && p1.succedent.last() == Some(l.as_ref())
                            && p2.succedent.last() == Some(r.as_ref())
                    }
                    _ => false,
                };
                if !ok {
                    self.fail(path, &d.rule, "premises do not introduce the rightmost conjunction");
                }
            }
            RuleTag::OrL => {
                let p1 = &d.premises[0].conclusion;
                let p2 = &d.premises[1].conclusion;
                let ok = match c.antecedent.first() {
                    Some(Formula::Or(l, r)) => {
                        let rest = &c.antecedent[1..];
                        p1.succedent == c.succedent
                            && p2.succedent == c.succedent
                            && p1.antecedent.len() == c.antecedent.len()
                            && p2.antecedent.len() == c.antecedent.len()
                            && p1.antecedent.first() == Some(l.as_ref())
                            && p2.antecedent.first() == Some(r.as_ref())
                            && &p1.antecedent[1..] == rest
                            && &p2.antecedent[1..] == rest
                    }
                    _ => false,
                };
                if !ok {
                    self.fail(path, &d.rule, "premises do not introduce the leftmost disjunction");
                }
            }
            RuleTag::OrR => {
                let p = &d.premises[0].conclusion;
                let ok = match (c.succedent.last(), p.succedent.last()) {
                    (Some(Formula::Or(l, r)), Some(last)) => {
                        (last == l.as_ref() || last == r.as_ref())
                            && c.antecedent == p.antecedent
                            && c.succedent.len() == p.succedent.len()
                            && c.succedent[..c.succedent.len() - 1]
                                == p.succedent[..p.succedent.len() - 1]
                    }
                    _ => false,
                };
                if !ok {
                    self.fail(path, &d.rule, "rightmost succedent formula is not a disjunction of the premise's rightmost formula");
                }
            }
            RuleTag::ImpL => {
                let p1 = &d.premises[0].conclusion;
                let p2 = &d.premises[1].conclusion;
                let ok = match c.antecedent.first() {
                    Some(Formula::Imp(l, r)) => {
                        p1.succedent.last() == Some(l.as_ref())
                            && p2.antecedent.first() == Some(r.as_ref())
                            && {
                                let mut ant = p1.antecedent.clone();
                                ant.extend(p2.antecedent[1..].iter().cloned());
                                let mut suc = p1.succedent[..p1.succedent.len() - 1].to_vec();
                                suc.extend(p2.succedent.iter().cloned());
                                c.antecedent[1..] == ant[..] && c.succedent == suc
                            }
                    }
                    _ => false,
                };
                if !ok {
                    self.fail(path, &d.rule, "premises do not introduce the leftmost implication");
                }
            }
            RuleTag::ImpR => {
                let p = &d.premises[0].conclusion;
                let ok = match c.succedent.last() {
                    Some(Formula::Imp(l, r)) => {
                        p.antecedent.first() == Some(l.as_ref())
                            && p.succedent.last() == Some(r.as_ref())
                            && p.antecedent[1..] == c.antecedent[..]
                            && p.succedent[..p.succedent.len() - 1]
                                == c.succedent[..c.succedent.len() - 1]
                            && p.succedent.len() == c.succedent.len()
                    }
                    _ => false,
                };
                if !ok {
                    self.fail(path, &d.rule, "premise does not introduce the rightmost implication");
                }
            }
            RuleTag::AllL(t) => {
                let p = &d.premises[0].conclusion;
                if !t.is_closed_under(&[]) {
                    self.fail(path, &d.rule, format!("witness term {t} contains a bound variable"));
                }
                let ok = match c.antecedent.first() {
                    Some(q @ Formula::ForAll(..)) => {
                        p.antecedent.first() == q.instantiate(t).as_ref()
                            && p.antecedent[1..] == c.antecedent[1..]
                            && p.antecedent.len() == c.antecedent.len()
                            && p.succedent == c.succedent
                    }
                    _ => false,
                };
                if !ok {
                    self.fail(path, &d.rule, "premise is not the instance of the leftmost universal formula");
                }
            }
            RuleTag::AllR(a) => {
                let p = &d.premises[0].conclusion;
                let ok = match c.succedent.last() {
                    Some(q @ Formula::ForAll(..)) => {
                        p.succedent.last() == q.instantiate(&Term::Free(a.clone())).as_ref()
                            && p.antecedent == c.antecedent
                            && p.succedent.len() == c.succedent.len()
                            && p.succedent[..p.succedent.len() - 1]
                                == c.succedent[..c.succedent.len() - 1]
                    }
                    _ => false,
                };
                if !ok {
                    self.fail(path, &d.rule, "premise is not the eigenvariable instance of the rightmost universal formula");
                }
                if c.free_vars().contains(a) {
                    self.fail(path, &d.rule, format!("eigenvariable {a} occurs in the conclusion"));
                }
            }
            RuleTag::ExL(a) => {
                let p = &d.premises[0].conclusion;
                let ok = match c.antecedent.first() {
                    Some(q @ Formula::Exists(..)) => {
                        p.antecedent.first() == q.instantiate(&Term::Free(a.clone())).as_ref()
                            && p.antecedent[1..] == c.antecedent[1..]
                            && p.antecedent.len() == c.antecedent.len()
                            && p.succedent == c.succedent
                    }
                    _ => false,
                };
                if !ok {
                    self.fail(path, &d.rule, "premise is not the eigenvariable instance of the leftmost existential formula");
                }
                if c.free_vars().contains(a) {
                    self.fail(path, &d.rule, format!("eigenvariable {a} occurs in the conclusion"));
                }
            }
            RuleTag::ExR(t) => {
                let p = &d.premises[0].conclusion;
                if !t.is_closed_under(&[]) {
                    self.fail(path, &d.rule, format!("witness term {t} contains a bound variable"));
                }
                let ok = match c.succedent.last() {
                    Some(q @ Formula::Exists(..)) => {
                        p.succedent.last() == q.instantiate(t).as_ref()
                            && p.antecedent == c.antecedent
                            && p.succedent.len() == c.succedent.len()
                            && p.succedent[..p.succedent.len() - 1]
                                == c.succedent[..c.succedent.len() - 1]
                    }
                    _ => false,
                };
                if !ok {
                    self.fail(path, &d.rule, "premise is not a witness instance of the rightmost existential formula");
                }
            }
        }
    }
}

/// Stacks structural rules on top of `d` until its endsequent becomes
/// exactly `target`. Emits weakenings for missing formulas, merges surplus
/// duplicates with contractions, and reorders with adjacent exchanges. The
/// support of the current sequent must be contained in the target's.
pub(crate) fn restructure(d: Derivation, target: &Sequent) -> Result<Derivation> {
    let d = restructure_side(d, &target.antecedent, Side::Antecedent)?;
    restructure_side(d, &target.succedent, Side::Succedent)
}

#[derive(Clone, Copy, PartialEq)]
enum Side {
    Antecedent,
    Succedent,
}

fn side_of(s: &Sequent, side: Side) -> &Vec<Formula> {
    match side {
        Side::Antecedent => &s.antecedent,
        Side::Succedent => &s.succedent,
    }
}

fn count_of(list: &[Formula], f: &Formula) -> usize {
    list.iter().filter(|g| *g == f).count()
}

fn restructure_side(mut d: Derivation, target: &[Formula], side: Side) -> Result<Derivation> {
    let weak = if side == Side::Antecedent { RuleTag::WeakL } else { RuleTag::WeakR };
    let contr = if side == Side::Antecedent { RuleTag::ContrL } else { RuleTag::ContrR };
    let exch = if side == Side::Antecedent { RuleTag::ExchL } else { RuleTag::ExchR };

    let mk = |cur: &Sequent, list: Vec<Formula>| -> Sequent {
        match side {
            Side::Antecedent => Sequent::new(list, cur.succedent.clone()),
            Side::Succedent => Sequent::new(cur.antecedent.clone(), list),
        }
    };

    // support check: every current formula must survive into the target
    for f in side_of(&d.conclusion, side) {
        if count_of(target, f) == 0 {
            return Err(Error::input(format!(
                "restructure cannot remove formula {f}: it does not occur in the target"
            )));
        }
    }

    // contract surplus duplicates down to the target multiplicity
    loop {
        let cur = side_of(&d.conclusion, side).clone();
        let Some(surplus) = cur.iter().find(|f| count_of(&cur, f) > count_of(target, f)) else {
            break;
        };
        let surplus = surplus.clone();
        let positions: Vec<usize> =
            (0..cur.len()).filter(|&i| cur[i] == surplus).collect();
        // bring the second occurrence next to the first, then merge
        let (first, second) = (positions[0], positions[1]);
        let mut list = cur;
        for k in (first + 1..second).rev() {
            list.swap(k, k + 1);
            let step = mk(&d.conclusion, list.clone());
            d = Derivation::unary(exch.clone(), step, d);
        }
        list.remove(first);
        let step = mk(&d.conclusion, list);
        d = Derivation::unary(contr.clone(), step, d);
    }

    // insert missing formulas at their final target index; an order
    // preserving match of the current side into the target tells which
    // target positions are missing
    loop {
        let cur = side_of(&d.conclusion, side).clone();
        if cur.len() == target.len() {
            break;
        }
        let mut matched = vec![false; target.len()];
        let mut j = 0;
        for f in &cur {
            while j < target.len() && target[j] != *f {
                j += 1;
            }
            if j < target.len() {
                matched[j] = true;
                j += 1;
            }
        }
        // if the greedy subsequence match failed, fall back to matching by
        // multiplicity so that the missing multiset is still correct
        if matched.iter().filter(|m| **m).count() != cur.len() {
            matched = vec![false; target.len()];
            let mut cur_left = cur.clone();
            for (slot, t) in target.iter().enumerate() {
                if let Some(p) = cur_left.iter().position(|f| f == t) {
                    cur_left.remove(p);
                    matched[slot] = true;
                }
            }
        }
        let missing = matched.iter().position(|m| !m).ok_or_else(|| {
            Error::internal("restructure bookkeeping lost a formula".to_string())
        })?;
        let insert_at = matched[..missing].iter().filter(|m| **m).count();
        let mut list = cur;
        list.insert(insert_at.min(list.len()), target[missing].clone());
        let step = mk(&d.conclusion, list);
        d = Derivation::unary(weak.clone(), step, d);
    }

    // reorder by adjacent exchanges, selecting each target position in turn
    for i in 0..target.len() {
        let cur = side_of(&d.conclusion, side).clone();
        if cur[i] == target[i] {
            continue;
        }
        let j = (i..cur.len())
            .find(|&j| cur[j] == target[i])
            .ok_or_else(|| Error::internal("restructure reorder lost a formula".to_string()))?;
        let mut list = cur;
        for k in (i..j).rev() {
            list.swap(k, k + 1);
            let step = mk(&d.conclusion, list.clone());
            d = Derivation::unary(exch.clone(), step, d);
        }
    }

    Ok(d)
}

/// Extends a derivation of `Γ ⇒ Δ` to one of `Γ' ⇒ Δ'` where `Γ ⊆ Γ'` and
/// `Δ ⊆ Δ'` as multisets, inserting only weakenings and exchanges.
pub fn weaken_to(d: &Derivation, antecedent: &[Formula], succedent: &[Formula]) -> Result<Derivation> {
    for f in &d.conclusion.antecedent {
        if count_of(&d.conclusion.antecedent, f) > count_of(antecedent, f) {
            return Err(Error::input(format!(
                "weaken_to: formula {f} occurs more often in the current antecedent than in the target"
            )));
        }
    }
    for f in &d.conclusion.succedent {
        if count_of(&d.conclusion.succedent, f) > count_of(succedent, f) {
            return Err(Error::input(format!(
                "weaken_to: formula {f} occurs more often in the current succedent than in the target"
            )));
        }
    }
    restructure(d.clone(), &Sequent::new(antecedent.to_vec(), succedent.to_vec()))
}

/// Cuts a derivation of `Γ ⇒ Δ', φ` against one of `Γ', φ ⇒ Δ` (with the
/// cut formula rightmost in the second antecedent), concluding
/// `Γ, Γ' ⇒ Δ', Δ`.
pub fn cut(left: &Derivation, right: &Derivation) -> Result<Derivation> {
    let cf = left
        .conclusion
        .succedent
        .last()
        .ok_or_else(|| Error::input("cut: left premise has an empty succedent"))?;
    if right.conclusion.antecedent.last() != Some(cf) {
        return Err(Error::input(format!(
            "cut: cut formula {cf} must be the last antecedent formula of the right premise"
        )));
    }
    // move the cut formula to the front of the right premise
    let mut right = right.clone();
    let mut list = right.conclusion.antecedent.clone();
    for k in (0..list.len() - 1).rev() {
        list.swap(k, k + 1);
        let step = Sequent::new(list.clone(), right.conclusion.succedent.clone());
        right = Derivation::unary(RuleTag::ExchL, step, right);
    }
    Ok(raw_cut(left.clone(), right))
}

/// Core cut: left premise `Γ ⇒ Δ', φ`, right premise `φ, Π ⇒ Λ`.
/// The caller guarantees the positions; `check` verifies them later.
pub(crate) fn raw_cut(left: Derivation, right: Derivation) -> Derivation {
    let mut ant = left.conclusion.antecedent.clone();
    ant.extend(right.conclusion.antecedent[1..].iter().cloned());
    let mut suc = left.conclusion.succedent[..left.conclusion.succedent.len() - 1].to_vec();
    suc.extend(right.conclusion.succedent.iter().cloned());
    Derivation::binary(RuleTag::Cut, Sequent::new(ant, suc), left, right)
}
