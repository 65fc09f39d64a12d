//! Terms, formulas, signatures, the S-expression concrete syntax and
//! capture-safe substitution.
//!
//! Variables come in two syntactic kinds, as in Takeuti-style calculi: free
//! variables may occur anywhere in terms, bound variables only under a
//! quantifier that binds them. The formation rule for quantified formulas is
//! strict: a quantifier may not bind a name that is already quantified
//! inside its body, and within one formula a name may not be used both as a
//! free variable and as a quantifier variable. Substitution of a formula for
//! the placeholder constant `E` renames bound variables of the substituted
//! formula where this discipline would otherwise break.

use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Words that can never be used as identifiers in the concrete syntax.
pub const RESERVED_WORDS: &[&str] = &[
    "bot", "E", "atom", "and", "or", "imp", "forall", "exists", "node", "seq", "gamma", "delta",
    "theory",
];

/// First-order terms. Terms never contain quantifiers, so the only bound
/// variables inside a term are occurrences bound by an enclosing quantifier
/// of the formula the term sits in.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    /// A free variable.
    Free(String),
    /// An occurrence of a quantified variable.
    Bound(String),
    /// A constant symbol.
    Const(String),
    /// Application of a function symbol to argument terms.
    App(String, Vec<Term>),
}

impl Term {
    pub fn free(name: &str) -> Term {
        Term::Free(name.to_string())
    }

    pub fn cnst(name: &str) -> Term {
        Term::Const(name.to_string())
    }

    pub fn app(name: &str, args: Vec<Term>) -> Term {
        Term::App(name.to_string(), args)
    }

    /// Number of symbol occurrences in the term.
    pub fn symbols(&self) -> usize {
        match self {
            Term::Free(_) | Term::Bound(_) | Term::Const(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::symbols).sum::<usize>(),
        }
    }

    fn subst_free(&self, name: &str, replacement: &Term) -> Term {
        match self {
            Term::Free(n) if n == name => replacement.clone(),
            Term::App(f, args) => Term::App(
                f.clone(),
                args.iter().map(|a| a.subst_free(name, replacement)).collect(),
            ),
            other => other.clone(),
        }
    }

    fn subst_bound(&self, name: &str, replacement: &Term) -> Term {
        match self {
            Term::Bound(n) if n == name => replacement.clone(),
            Term::App(f, args) => Term::App(
                f.clone(),
                args.iter().map(|a| a.subst_bound(name, replacement)).collect(),
            ),
            other => other.clone(),
        }
    }

    fn collect_names(&self, free: &mut BTreeSet<String>, bound: &mut BTreeSet<String>) {
        match self {
            Term::Free(n) => {
                free.insert(n.clone());
            }
            Term::Bound(n) => {
                bound.insert(n.clone());
            }
            Term::Const(_) => {}
            Term::App(_, args) => {
                for a in args {
                    a.collect_names(free, bound);
                }
            }
        }
    }

    /// Terms may only contain free variables and constants at variable
    /// positions; a stray bound variable means the term escaped its binder.
    pub fn is_closed_under(&self, scope: &[String]) -> bool {
        match self {
            Term::Free(_) | Term::Const(_) => true,
            Term::Bound(n) => scope.iter().any(|s| s == n),
            Term::App(_, args) => args.iter().all(|a| a.is_closed_under(scope)),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Free(n) | Term::Bound(n) | Term::Const(n) => write!(f, "{n}"),
            Term::App(g, args) => {
                write!(f, "({g}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// First-order formulas over a signature, with falsum `bot` and the
/// placeholder constant `E` as distinguished nullary atoms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String, Vec<Term>),
    Falsum,
    Placeholder,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    ForAll(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    pub fn atom(pred: &str, terms: Vec<Term>) -> Formula {
        Formula::Atom(pred.to_string(), terms)
    }

    /// Nullary atom.
    pub fn atom0(pred: &str) -> Formula {
        Formula::Atom(pred.to_string(), Vec::new())
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn imp(l: Formula, r: Formula) -> Formula {
        Formula::Imp(Box::new(l), Box::new(r))
    }

    pub fn forall(var: &str, body: Formula) -> Formula {
        Formula::ForAll(var.to_string(), Box::new(body))
    }

    pub fn exists(var: &str, body: Formula) -> Formula {
        Formula::Exists(var.to_string(), Box::new(body))
    }

    /// `¬φ`, which abbreviates `φ → bot`.
    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Formula {
        Formula::imp(self, Formula::Falsum)
    }

    /// `φ → E`, negation with the placeholder as target.
    pub fn neg_e(self) -> Formula {
        Formula::imp(self, Formula::Placeholder)
    }

    /// Number of symbol occurrences: every connective, quantifier,
    /// predicate, function, constant and variable occurrence counts 1.
    pub fn symbols(&self) -> usize {
        match self {
            Formula::Falsum | Formula::Placeholder => 1,
            Formula::Atom(_, ts) => 1 + ts.iter().map(Term::symbols).sum::<usize>(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                1 + l.symbols() + r.symbols()
            }
            Formula::ForAll(_, b) | Formula::Exists(_, b) => 1 + b.symbols(),
        }
    }

    pub fn contains_placeholder(&self) -> bool {
        match self {
            Formula::Placeholder => true,
            Formula::Falsum | Formula::Atom(..) => false,
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                l.contains_placeholder() || r.contains_placeholder()
            }
            Formula::ForAll(_, b) | Formula::Exists(_, b) => b.contains_placeholder(),
        }
    }

    pub fn contains_falsum(&self) -> bool {
        match self {
            Formula::Falsum => true,
            Formula::Placeholder | Formula::Atom(..) => false,
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                l.contains_falsum() || r.contains_falsum()
            }
            Formula::ForAll(_, b) | Formula::Exists(_, b) => b.contains_falsum(),
        }
    }

    /// Names of free variables occurring in the formula.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut free = BTreeSet::new();
        let mut bound = BTreeSet::new();
        self.collect_names(&mut free, &mut bound);
        free
    }

    /// Names bound by quantifiers anywhere in the formula.
    pub fn binder_names(&self) -> BTreeSet<String> {
        let mut names = BTreeSet::new();
        self.collect_binders(&mut names);
        names
    }

    /// Every variable-ish name occurring anywhere (free, bound or binder).
    pub fn all_var_names(&self) -> BTreeSet<String> {
        let mut free = BTreeSet::new();
        let mut bound = BTreeSet::new();
        self.collect_names(&mut free, &mut bound);
        self.collect_binders(&mut bound);
        free.extend(bound);
        free
    }

    fn collect_names(&self, free: &mut BTreeSet<String>, bound: &mut BTreeSet<String>) {
        match self {
            Formula::Falsum | Formula::Placeholder => {}
            Formula::Atom(_, ts) => {
                for t in ts {
                    t.collect_names(free, bound);
                }
            }
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                l.collect_names(free, bound);
                r.collect_names(free, bound);
            }
            Formula::ForAll(_, b) | Formula::Exists(_, b) => b.collect_names(free, bound),
        }
    }

    fn collect_binders(&self, names: &mut BTreeSet<String>) {
        match self {
            Formula::Falsum | Formula::Placeholder | Formula::Atom(..) => {}
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                l.collect_binders(names);
                r.collect_binders(names);
            }
            Formula::ForAll(x, b) | Formula::Exists(x, b) => {
                names.insert(x.clone());
                b.collect_binders(names);
            }
        }
    }

    /// Replaces every occurrence of the free variable `name` by `t`.
    /// No capture is possible because terms contain no binders.
    pub fn subst_free(&self, name: &str, t: &Term) -> Formula {
        match self {
            Formula::Falsum => Formula::Falsum,
            Formula::Placeholder => Formula::Placeholder,
            Formula::Atom(p, ts) => {
                Formula::Atom(p.clone(), ts.iter().map(|s| s.subst_free(name, t)).collect())
            }
            Formula::And(l, r) => Formula::and(l.subst_free(name, t), r.subst_free(name, t)),
            Formula::Or(l, r) => Formula::or(l.subst_free(name, t), r.subst_free(name, t)),
            Formula::Imp(l, r) => Formula::imp(l.subst_free(name, t), r.subst_free(name, t)),
            Formula::ForAll(x, b) => Formula::forall(x, b.subst_free(name, t)),
            Formula::Exists(x, b) => Formula::exists(x, b.subst_free(name, t)),
        }
    }

    /// Replaces every occurrence of the bound variable `name` by `t`.
    /// Used to instantiate a quantifier body; callers pass the body of a
    /// well-formed quantified formula, where `name` is never re-bound.
    pub(crate) fn subst_bound(&self, name: &str, t: &Term) -> Formula {
        match self {
            Formula::Falsum => Formula::Falsum,
            Formula::Placeholder => Formula::Placeholder,
            Formula::Atom(p, ts) => {
                Formula::Atom(p.clone(), ts.iter().map(|s| s.subst_bound(name, t)).collect())
            }
            Formula::And(l, r) => Formula::and(l.subst_bound(name, t), r.subst_bound(name, t)),
            Formula::Or(l, r) => Formula::or(l.subst_bound(name, t), r.subst_bound(name, t)),
            Formula::Imp(l, r) => Formula::imp(l.subst_bound(name, t), r.subst_bound(name, t)),
            Formula::ForAll(x, b) => Formula::forall(x, b.subst_bound(name, t)),
            Formula::Exists(x, b) => Formula::exists(x, b.subst_bound(name, t)),
        }
    }

    /// For `∀x φ` or `∃x φ`, the instance `φ[x := t]`.
    pub fn instantiate(&self, t: &Term) -> Option<Formula> {
        match self {
            Formula::ForAll(x, b) | Formula::Exists(x, b) => Some(b.subst_bound(x, t)),
            _ => None,
        }
    }

    /// Raw replacement of every `E` by `repl`, with no renaming. Callers
    /// must have arranged that binder names of `repl` cannot clash with
    /// binders enclosing an `E` occurrence.
    pub(crate) fn subst_placeholder_raw(&self, repl: &Formula) -> Formula {
        match self {
            Formula::Placeholder => repl.clone(),
            Formula::Falsum => Formula::Falsum,
            Formula::Atom(p, ts) => Formula::Atom(p.clone(), ts.clone()),
            Formula::And(l, r) => {
                Formula::and(l.subst_placeholder_raw(repl), r.subst_placeholder_raw(repl))
            }
            Formula::Or(l, r) => {
                Formula::or(l.subst_placeholder_raw(repl), r.subst_placeholder_raw(repl))
            }
            Formula::Imp(l, r) => {
                Formula::imp(l.subst_placeholder_raw(repl), r.subst_placeholder_raw(repl))
            }
            Formula::ForAll(x, b) => Formula::forall(x, b.subst_placeholder_raw(repl)),
            Formula::Exists(x, b) => Formula::exists(x, b.subst_placeholder_raw(repl)),
        }
    }

    fn binders_enclosing_placeholder(&self, scope: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Placeholder => out.extend(scope.iter().cloned()),
            Formula::Falsum | Formula::Atom(..) => {}
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                l.binders_enclosing_placeholder(scope, out);
                r.binders_enclosing_placeholder(scope, out);
            }
            Formula::ForAll(x, b) | Formula::Exists(x, b) => {
                scope.push(x.clone());
                b.binders_enclosing_placeholder(scope, out);
                scope.pop();
            }
        }
    }

    /// Renames the quantifier variable `from` to `to` throughout (binders
    /// and occurrences). Only sound when `to` is fresh for the formula.
    fn rename_binder(&self, from: &str, to: &str) -> Formula {
        match self {
            Formula::Falsum => Formula::Falsum,
            Formula::Placeholder => Formula::Placeholder,
            Formula::Atom(p, ts) => Formula::Atom(
                p.clone(),
                ts.iter().map(|t| t.subst_bound(from, &Term::Bound(to.to_string()))).collect(),
            ),
            Formula::And(l, r) => Formula::and(l.rename_binder(from, to), r.rename_binder(from, to)),
            Formula::Or(l, r) => Formula::or(l.rename_binder(from, to), r.rename_binder(from, to)),
            Formula::Imp(l, r) => Formula::imp(l.rename_binder(from, to), r.rename_binder(from, to)),
            Formula::ForAll(x, b) => {
                let x = if x == from { to } else { x };
                Formula::forall(x, b.rename_binder(from, to))
            }
            Formula::Exists(x, b) => {
                let x = if x == from { to } else { x };
                Formula::exists(x, b.rename_binder(from, to))
            }
        }
    }

    /// Canonically renames quantifier variables (preorder numbering) so that
    /// formulas can be compared up to bound-variable names. Comparison only;
    /// the canonical names live outside every namespace users can write.
    pub fn canonical(&self) -> Formula {
        fn walk(f: &Formula, next: &mut usize, env: &mut Vec<(String, String)>) -> Formula {
            match f {
                Formula::Falsum => Formula::Falsum,
                Formula::Placeholder => Formula::Placeholder,
                Formula::Atom(p, ts) => {
                    let ts = ts
                        .iter()
                        .map(|t| {
                            let mut t = t.clone();
                            // innermost binding wins
                            for (from, to) in env.iter().rev() {
                                t = t.subst_bound(from, &Term::Bound(to.clone()));
                            }
                            t
                        })
                        .collect();
                    Formula::Atom(p.clone(), ts)
                }
                Formula::And(l, r) => Formula::and(walk(l, next, env), walk(r, next, env)),
                Formula::Or(l, r) => Formula::or(walk(l, next, env), walk(r, next, env)),
                Formula::Imp(l, r) => Formula::imp(walk(l, next, env), walk(r, next, env)),
                Formula::ForAll(x, b) => {
                    let fresh = format!("_b{next}");
                    *next += 1;
                    env.push((x.clone(), fresh.clone()));
                    let b = walk(b, next, env);
                    env.pop();
                    Formula::ForAll(fresh, Box::new(b))
                }
                Formula::Exists(x, b) => {
                    let fresh = format!("_b{next}");
                    *next += 1;
                    env.push((x.clone(), fresh.clone()));
                    let b = walk(b, next, env);
                    env.pop();
                    Formula::Exists(fresh, Box::new(b))
                }
            }
        }
        walk(self, &mut 0, &mut Vec::new())
    }

    /// Structural equality after canonical bound-variable renaming.
    pub fn alpha_eq(&self, other: &Formula) -> bool {
        self.canonical() == other.canonical()
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Falsum => write!(f, "bot"),
            Formula::Placeholder => write!(f, "E"),
            Formula::Atom(p, ts) => {
                write!(f, "(atom {p}")?;
                for t in ts {
                    write!(f, " {t}")?;
                }
                write!(f, ")")
            }
            Formula::And(l, r) => write!(f, "(and {l} {r})"),
            Formula::Or(l, r) => write!(f, "(or {l} {r})"),
            Formula::Imp(l, r) => write!(f, "(imp {l} {r})"),
            Formula::ForAll(x, b) => write!(f, "(forall {x} {b})"),
            Formula::Exists(x, b) => write!(f, "(exists {x} {b})"),
        }
    }
}

/// Prints the canonical concrete syntax of a formula.
pub fn print_formula(f: &Formula) -> String {
    f.to_string()
}

/// Checks the Takeuti-style formation discipline:
///
/// * every bound-variable occurrence sits under a quantifier binding it;
/// * no quantifier re-binds a name already bound in its scope chain;
/// * no name is used both as a free variable and as a quantifier variable.
pub fn well_formed(f: &Formula) -> Result<()> {
    fn walk(f: &Formula, scope: &mut Vec<String>) -> Result<()> {
        match f {
            Formula::Falsum | Formula::Placeholder => Ok(()),
            Formula::Atom(_, ts) => {
                for t in ts {
                    if !t.is_closed_under(scope) {
                        return Err(Error::input(format!(
                            "bound variable escapes its quantifier in term {t}"
                        )));
                    }
                }
                Ok(())
            }
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                walk(l, scope)?;
                walk(r, scope)
            }
            Formula::ForAll(x, b) | Formula::Exists(x, b) => {
                if scope.iter().any(|s| s == x) {
                    return Err(Error::input(format!("quantifier re-binds variable {x}")));
                }
                if b.binder_names().contains(x) {
                    return Err(Error::input(format!(
                        "quantifier variable {x} is quantified again inside its own scope"
                    )));
                }
                scope.push(x.clone());
                let r = walk(b, scope);
                scope.pop();
                r
            }
        }
    }
    walk(f, &mut Vec::new())?;
    let free = f.free_vars();
    let binders = f.binder_names();
    if let Some(clash) = free.intersection(&binders).next() {
        return Err(Error::input(format!(
            "name {clash} is used both as a free variable and as a quantifier variable"
        )));
    }
    Ok(())
}

/// Replaces every occurrence of the free variable `name` in `f` by `t`.
pub fn subst_term(f: &Formula, name: &str, t: &Term) -> Formula {
    f.subst_free(name, t)
}

/// Substitutes `psi` for every occurrence of the placeholder `E` in `f`.
///
/// Bound variables of `psi` that would end up re-bound under one of `f`'s
/// quantifiers enclosing an `E`, or that collide with a free variable of
/// `f`, are first renamed to fresh reserved names, so the result is again
/// well-formed.
pub fn subst_placeholder(f: &Formula, psi: &Formula) -> Formula {
    if !f.contains_placeholder() || *psi == Formula::Placeholder {
        return f.clone();
    }
    let psi = rename_for_insertion(f, psi);
    f.subst_placeholder_raw(&psi)
}

/// The renamed copy of `psi` that [`subst_placeholder`] would insert into
/// `f`. Exposed crate-internally so derivation-level substitution can fix a
/// single replacement formula for a whole tree.
pub(crate) fn rename_for_insertion(context: &Formula, psi: &Formula) -> Formula {
    let mut enclosing = BTreeSet::new();
    context.binders_enclosing_placeholder(&mut Vec::new(), &mut enclosing);
    let context_free = context.free_vars();
    rename_binders_avoiding(psi, &enclosing, &context_free, &context.all_var_names())
}

/// Renames those binders of `psi` that appear in `enclosing` or in
/// `free_clashes`, choosing fresh reserved bound names that avoid
/// `also_avoid` and everything in `psi` itself.
pub(crate) fn rename_binders_avoiding(
    psi: &Formula,
    enclosing: &BTreeSet<String>,
    free_clashes: &BTreeSet<String>,
    also_avoid: &BTreeSet<String>,
) -> Formula {
    let mut avoid: BTreeSet<String> = also_avoid.clone();
    avoid.extend(psi.all_var_names());
    let mut result = psi.clone();
    for binder in psi.binder_names() {
        if enclosing.contains(&binder) || free_clashes.contains(&binder) {
            let fresh = fresh_bound_var(&avoid);
            avoid.insert(fresh.clone());
            result = result.rename_binder(&binder, &fresh);
        }
    }
    result
}

/// Smallest-index free variable `v0, v1, …` not in `avoid`.
pub fn fresh_free_var(avoid: &BTreeSet<String>) -> String {
    for k in 0.. {
        let name = format!("v{k}");
        if !avoid.contains(&name) {
            return name;
        }
    }
    unreachable!()
}

/// Smallest-index bound variable `u0, u1, …` not in `avoid`.
pub fn fresh_bound_var(avoid: &BTreeSet<String>) -> String {
    for k in 0.. {
        let name = format!("u{k}");
        if !avoid.contains(&name) {
            return name;
        }
    }
    unreachable!()
}

/// Symbol declarations. `E` and `bot` are reserved and cannot be declared;
/// symbols not declared are inferred on first use with a consistent arity
/// within one parse.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    consts: BTreeSet<String>,
    funs: BTreeMap<String, usize>,
    preds: BTreeMap<String, usize>,
}

impl Signature {
    pub fn new() -> Signature {
        Signature::default()
    }

    fn check_name(&self, name: &str) -> Result<()> {
        if RESERVED_WORDS.contains(&name) {
            return Err(Error::input(format!("{name} is a reserved word")));
        }
        if !is_ident(name) {
            return Err(Error::input(format!("{name} is not a valid identifier")));
        }
        if is_reserved_var(name) {
            return Err(Error::input(format!(
                "{name} lies in the reserved fresh-variable namespace"
            )));
        }
        if self.consts.contains(name) || self.funs.contains_key(name) || self.preds.contains_key(name)
        {
            return Err(Error::input(format!("{name} is already declared")));
        }
        Ok(())
    }

    pub fn declare_const(&mut self, name: &str) -> Result<()> {
        self.check_name(name)?;
        self.consts.insert(name.to_string());
        Ok(())
    }

    pub fn declare_fun(&mut self, name: &str, arity: usize) -> Result<()> {
        self.check_name(name)?;
        if arity == 0 {
            return Err(Error::input("0-ary functions must be declared as constants"));
        }
        self.funs.insert(name.to_string(), arity);
        Ok(())
    }

    pub fn declare_pred(&mut self, name: &str, arity: usize) -> Result<()> {
        self.check_name(name)?;
        self.preds.insert(name.to_string(), arity);
        Ok(())
    }

    pub fn is_const(&self, name: &str) -> bool {
        self.consts.contains(name)
    }

    pub fn fun_arity(&self, name: &str) -> Option<usize> {
        self.funs.get(name).copied()
    }

    pub fn pred_arity(&self, name: &str) -> Option<usize> {
        self.preds.get(name).copied()
    }

    /// Loads declarations in the line-based format:
    /// `const NAME` / `fun NAME ARITY` / `pred NAME ARITY`.
    pub fn parse(src: &str) -> Result<Signature> {
        let mut sig = Signature::new();
        for (lineno, line) in src.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let bad = |msg: &str| Error::input(format!("signature line {}: {msg}", lineno + 1));
            match fields.as_slice() {
                ["const", name] => sig.declare_const(name).map_err(|e| bad(&e.to_string()))?,
                ["fun", name, arity] => {
                    let arity: usize =
                        arity.parse().map_err(|_| bad("arity must be a number"))?;
                    sig.declare_fun(name, arity).map_err(|e| bad(&e.to_string()))?;
                }
                ["pred", name, arity] => {
                    let arity: usize =
                        arity.parse().map_err(|_| bad("arity must be a number"))?;
                    sig.declare_pred(name, arity).map_err(|e| bad(&e.to_string()))?;
                }
                _ => return Err(bad("expected `const NAME`, `fun NAME ARITY` or `pred NAME ARITY`")),
            }
        }
        Ok(sig)
    }
}

pub(crate) fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Names of the shape `v<digits>` / `u<digits>` are generated fresh names.
/// They parse fine (our own output files contain them) but cannot be
/// declared as signature symbols.
pub(crate) fn is_reserved_var(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some('v') | Some('u')) && {
        let rest: String = chars.collect();
        !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Tok<'a> {
    LParen,
    RParen,
    Word(&'a str),
}

pub(crate) struct Lexer<'a> {
    src: &'a str,
    pub(crate) toks: Vec<(usize, Tok<'a>)>,
    pub(crate) pos: usize,
}

impl<'a> Lexer<'a> {
    pub(crate) fn new(src: &'a str) -> Result<Lexer<'a>> {
        let bytes = src.as_bytes();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            if c.is_ascii_whitespace() {
                i += 1;
            } else if c == '(' {
                toks.push((i, Tok::LParen));
                i += 1;
            } else if c == ')' {
                toks.push((i, Tok::RParen));
                i += 1;
            } else if c.is_ascii_alphanumeric() || c == '_' {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((start, Tok::Word(&src[start..i])));
            } else {
                return Err(Error::parse(i, format!("unexpected character {c:?}")));
            }
        }
        Ok(Lexer { src, toks, pos: 0 })
    }

    pub(crate) fn peek(&self) -> Option<(usize, Tok<'a>)> {
        self.toks.get(self.pos).copied()
    }

    pub(crate) fn next(&mut self) -> Option<(usize, Tok<'a>)> {
        let t = self.toks.get(self.pos).copied();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn eof_pos(&self) -> usize {
        self.src.len()
    }

    pub(crate) fn expect_lparen(&mut self) -> Result<usize> {
        match self.next() {
            Some((p, Tok::LParen)) => Ok(p),
            Some((p, _)) => Err(Error::parse(p, "expected `(`")),
            None => Err(Error::parse(self.eof_pos(), "unexpected end of input")),
        }
    }

    pub(crate) fn expect_rparen(&mut self) -> Result<()> {
        match self.next() {
            Some((_, Tok::RParen)) => Ok(()),
            Some((p, _)) => Err(Error::parse(p, "expected `)`")),
            None => Err(Error::parse(self.eof_pos(), "unexpected end of input")),
        }
    }

    pub(crate) fn expect_word(&mut self) -> Result<(usize, &'a str)> {
        match self.next() {
            Some((p, Tok::Word(w))) => Ok((p, w)),
            Some((p, _)) => Err(Error::parse(p, "expected an identifier")),
            None => Err(Error::parse(self.eof_pos(), "unexpected end of input")),
        }
    }
}

/// Arities picked up for symbols the signature does not declare. Shared
/// across all formulas of one parse so a file cannot use a symbol at two
/// different arities.
#[derive(Debug, Default)]
pub(crate) struct Inferred {
    consts: BTreeSet<String>,
    funs: BTreeMap<String, usize>,
    preds: BTreeMap<String, usize>,
}

pub(crate) struct FormulaParser<'s> {
    pub(crate) sig: &'s Signature,
    pub(crate) inferred: Inferred,
    /// Unbound bare identifiers become constants instead of free variables
    /// (used for theory files, whose axioms must be sentences).
    pub(crate) closed_context: bool,
    scope: Vec<String>,
}

impl<'s> FormulaParser<'s> {
    pub(crate) fn new(sig: &'s Signature, closed_context: bool) -> Self {
        FormulaParser { sig, inferred: Inferred::default(), closed_context, scope: Vec::new() }
    }

    /// The declared signature extended by everything inferred during this
    /// parse, for reuse when reading companion files.
    pub(crate) fn into_signature(self) -> Result<Signature> {
        let mut sig = self.sig.clone();
        for c in &self.inferred.consts {
            sig.declare_const(c)?;
        }
        for (f, a) in &self.inferred.funs {
            sig.declare_fun(f, *a)?;
        }
        for (p, a) in &self.inferred.preds {
            sig.declare_pred(p, *a)?;
        }
        Ok(sig)
    }

    fn word_is_reserved(w: &str) -> bool {
        RESERVED_WORDS.contains(&w)
    }

    fn check_sym_word(&self, pos: usize, w: &str) -> Result<()> {
        if Self::word_is_reserved(w) {
            return Err(Error::parse(pos, format!("reserved word {w} cannot be a symbol")));
        }
        if !is_ident(w) {
            return Err(Error::parse(pos, format!("{w} is not a valid identifier")));
        }
        Ok(())
    }

    fn pred_arity(&mut self, pos: usize, name: &str, used: usize) -> Result<()> {
        if self.sig.is_const(name) || self.sig.fun_arity(name).is_some() {
            return Err(Error::parse(
                pos,
                format!("{name} is declared as a term symbol, not a predicate"),
            ));
        }
        let known = self.sig.pred_arity(name).or_else(|| self.inferred.preds.get(name).copied());
        match known {
            Some(a) if a != used => Err(Error::parse(
                pos,
                format!("predicate {name} used with {used} arguments, expected {a}"),
            )),
            Some(_) => Ok(()),
            None => {
                self.inferred.preds.insert(name.to_string(), used);
                Ok(())
            }
        }
    }

    fn fun_arity(&mut self, pos: usize, name: &str, used: usize) -> Result<()> {
        if self.sig.is_const(name) || self.sig.pred_arity(name).is_some() {
            return Err(Error::parse(pos, format!("{name} cannot be used as a function symbol")));
        }
        let known = self.sig.fun_arity(name).or_else(|| self.inferred.funs.get(name).copied());
        match known {
            Some(a) if a != used => Err(Error::parse(
                pos,
                format!("function {name} used with {used} arguments, expected {a}"),
            )),
            Some(_) => Ok(()),
            None => {
                self.inferred.funs.insert(name.to_string(), used);
                Ok(())
            }
        }
    }

    pub(crate) fn parse_term(&mut self, lex: &mut Lexer<'_>) -> Result<Term> {
        match lex.next() {
            Some((pos, Tok::Word(w))) => {
                self.check_sym_word(pos, w)?;
                if self.scope.iter().any(|s| s == w) {
                    Ok(Term::Bound(w.to_string()))
                } else if self.sig.is_const(w) || self.inferred.consts.contains(w) {
                    Ok(Term::Const(w.to_string()))
                } else if self.sig.fun_arity(w).is_some() || self.inferred.funs.contains_key(w) {
                    Err(Error::parse(pos, format!("function {w} needs arguments")))
                } else if self.sig.pred_arity(w).is_some() || self.inferred.preds.contains_key(w) {
                    Err(Error::parse(pos, format!("predicate {w} cannot appear in a term")))
                } else if self.closed_context {
                    self.inferred.consts.insert(w.to_string());
                    Ok(Term::Const(w.to_string()))
                } else {
                    Ok(Term::Free(w.to_string()))
                }
            }
            Some((_, Tok::LParen)) => {
                let (fpos, f) = lex.expect_word()?;
                self.check_sym_word(fpos, f)?;
                let mut args = Vec::new();
                loop {
                    match lex.peek() {
                        Some((_, Tok::RParen)) => {
                            lex.next();
                            break;
                        }
                        Some(_) => args.push(self.parse_term(lex)?),
                        None => {
                            return Err(Error::parse(lex.eof_pos(), "unexpected end of input"))
                        }
                    }
                }
                if args.is_empty() {
                    return Err(Error::parse(fpos, format!("function {f} needs arguments")));
                }
                self.fun_arity(fpos, f, args.len())?;
                Ok(Term::App(f.to_string(), args))
            }
            Some((pos, Tok::RParen)) => Err(Error::parse(pos, "expected a term")),
            None => Err(Error::parse(lex.eof_pos(), "unexpected end of input")),
        }
    }

    pub(crate) fn parse_formula(&mut self, lex: &mut Lexer<'_>) -> Result<Formula> {
        match lex.next() {
            Some((_, Tok::Word("bot"))) => Ok(Formula::Falsum),
            Some((_, Tok::Word("E"))) => Ok(Formula::Placeholder),
            Some((pos, Tok::Word(w))) => {
                Err(Error::parse(pos, format!("expected a formula, found {w}")))
            }
            Some((_, Tok::LParen)) => {
                let (hpos, head) = lex.expect_word()?;
                match head {
                    "atom" => {
                        let (ppos, pred) = lex.expect_word()?;
                        self.check_sym_word(ppos, pred)?;
                        let mut terms = Vec::new();
                        loop {
                            match lex.peek() {
                                Some((_, Tok::RParen)) => {
                                    lex.next();
                                    break;
                                }
                                Some(_) => terms.push(self.parse_term(lex)?),
                                None => {
                                    return Err(Error::parse(
                                        lex.eof_pos(),
                                        "unexpected end of input",
                                    ))
                                }
                            }
                        }
                        self.pred_arity(ppos, pred, terms.len())?;
                        Ok(Formula::Atom(pred.to_string(), terms))
                    }
                    "and" | "or" | "imp" => {
                        let l = self.parse_formula(lex)?;
                        let r = self.parse_formula(lex)?;
                        lex.expect_rparen()?;
                        Ok(match head {
                            "and" => Formula::and(l, r),
                            "or" => Formula::or(l, r),
                            _ => Formula::imp(l, r),
                        })
                    }
                    "forall" | "exists" => {
                        let (vpos, var) = lex.expect_word()?;
                        self.check_sym_word(vpos, var)?;
                        if self.sig.is_const(var)
                            || self.sig.fun_arity(var).is_some()
                            || self.sig.pred_arity(var).is_some()
                            || self.inferred.consts.contains(var)
                        {
                            return Err(Error::parse(
                                vpos,
                                format!("{var} is a declared symbol and cannot be quantified"),
                            ));
                        }
                        if self.scope.iter().any(|s| s == var) {
                            return Err(Error::parse(
                                vpos,
                                format!("quantifier re-binds variable {var}"),
                            ));
                        }
                        self.scope.push(var.to_string());
                        let body = self.parse_formula(lex);
                        self.scope.pop();
                        let body = body?;
                        lex.expect_rparen()?;
                        Ok(if head == "forall" {
                            Formula::forall(var, body)
                        } else {
                            Formula::exists(var, body)
                        })
                    }
                    other => Err(Error::parse(hpos, format!("unknown connective {other}"))),
                }
            }
            Some((pos, Tok::RParen)) => Err(Error::parse(pos, "expected a formula")),
            None => Err(Error::parse(lex.eof_pos(), "unexpected end of input")),
        }
    }
}

/// Parses one formula in the S-expression grammar. Symbols declared in
/// `sig` are checked against their declared arities; undeclared symbols are
/// inferred with a consistent arity. The parsed formula is validated
/// against the formation discipline.
pub fn parse_formula(src: &str, sig: &Signature) -> Result<Formula> {
    let mut lex = Lexer::new(src)?;
    let mut parser = FormulaParser::new(sig, false);
    let f = parser.parse_formula(&mut lex)?;
    if let Some((pos, _)) = lex.peek() {
        return Err(Error::parse(pos, "trailing input after formula"));
    }
    well_formed(&f).map_err(|e| Error::parse(0, e.to_string()))?;
    Ok(f)
}
