//! Substitution at the level of whole derivations: renaming a free
//! variable throughout a tree, and replacing the placeholder `E` by an
//! arbitrary formula with eigenvariable repair.
//!
//! Replacing `E` by a formula `ψ` can break the eigenvariable condition of
//! a quantifier inference whenever `ψ` mentions the eigenvariable. The
//! repair renames the eigenvariable of *every* universal-right and
//! existential-left inference to a fresh variable before substituting, one
//! fresh name per inference in a deterministic traversal order, so outputs
//! are reproducible byte for byte and the tree shape never changes.

use crate::calculus::{Derivation, RuleTag, Sequent, Theory};
use crate::syntax::{
    fresh_free_var, rename_binders_avoiding, Formula, Term,
};
use crate::{Error, Result};
use std::collections::BTreeSet;

fn rename_term(t: &Term, from: &str, to: &str) -> Term {
    match t {
        Term::Free(n) if n == from => Term::Free(to.to_string()),
        Term::App(f, args) => {
            Term::App(f.clone(), args.iter().map(|a| rename_term(a, from, to)).collect())
        }
        other => other.clone(),
    }
}

fn rename_formula(f: &Formula, from: &str, to: &str) -> Formula {
    f.subst_free(from, &Term::Free(to.to_string()))
}

fn rename_node(d: &Derivation, from: &str, to: &str) -> Derivation {
    let conclusion = Sequent::new(
        d.conclusion.antecedent.iter().map(|f| rename_formula(f, from, to)).collect(),
        d.conclusion.succedent.iter().map(|f| rename_formula(f, from, to)).collect(),
    );
    let rule = match &d.rule {
        RuleTag::AllL(t) => RuleTag::AllL(rename_term(t, from, to)),
        RuleTag::ExR(t) => RuleTag::ExR(rename_term(t, from, to)),
        RuleTag::AllR(a) if a == from => RuleTag::AllR(to.to_string()),
        RuleTag::ExL(a) if a == from => RuleTag::ExL(to.to_string()),
        other => other.clone(),
    };
    Derivation {
        conclusion,
        rule,
        premises: d.premises.iter().map(|p| rename_node(p, from, to)).collect(),
    }
}

/// Replaces the free variable `from` by the free variable `to` throughout
/// the derivation. `to` must not occur anywhere in the derivation; under
/// that hypothesis the result derives the renamed endsequent in the same
/// mode and theory, with identical tree shape.
pub fn subst_var_deriv(d: &Derivation, from: &str, to: &str) -> Result<Derivation> {
    if from == to {
        return Ok(d.clone());
    }
    if d.all_var_names().contains(to) {
        return Err(Error::input(format!(
            "subst_var_deriv: replacement variable {to} already occurs in the derivation"
        )));
    }
    Ok(rename_node(d, from, to))
}

struct PlaceholderSubst {
    replacement: Formula,
    fresh: FreshVars,
}

struct FreshVars {
    avoid: BTreeSet<String>,
}

impl FreshVars {
    fn next(&mut self) -> String {
        let name = fresh_free_var(&self.avoid);
        self.avoid.insert(name.clone());
        name
    }
}

impl PlaceholderSubst {
    fn formula(&self, f: &Formula) -> Formula {
        f.subst_placeholder_raw(&self.replacement)
    }

    fn sequent(&self, s: &Sequent) -> Sequent {
        Sequent::new(
            s.antecedent.iter().map(|f| self.formula(f)).collect(),
            s.succedent.iter().map(|f| self.formula(f)).collect(),
        )
    }

    fn node(&mut self, d: &Derivation) -> Derivation {
        match &d.rule {
            // eigenvariable inferences: rename the eigenvariable of the
            // subderivation to a fresh variable first, then substitute
            RuleTag::AllR(a) | RuleTag::ExL(a) => {
                let fresh = self.fresh.next();
                let renamed = rename_node(&d.premises[0], a, &fresh);
                let premise = self.node(&renamed);
                let rule = match &d.rule {
                    RuleTag::AllR(_) => RuleTag::AllR(fresh),
                    _ => RuleTag::ExL(fresh),
                };
                Derivation::unary(rule, self.sequent(&d.conclusion), premise)
            }
            rule => Derivation {
                conclusion: self.sequent(&d.conclusion),
                rule: rule.clone(),
                premises: self.premises(d),
            },
        }
    }

    fn premises(&mut self, d: &Derivation) -> Vec<Derivation> {
        d.premises.iter().map(|p| self.node(p)).collect()
    }
}

/// Substitutes `psi` for every occurrence of the placeholder `E` in a
/// derivation over a theory whose axioms do not mention `E`. Eigenvariables
/// are renamed to fresh variables so the result checks in the same mode
/// and theory; the inference count is unchanged.
pub fn subst_placeholder_deriv(
    d: &Derivation,
    psi: &Formula,
    theory: &Theory,
) -> Result<Derivation> {
    for ax in &theory.axioms {
        if ax.contains_placeholder() {
            return Err(Error::input(
                "subst_placeholder_deriv: theory axioms may not mention the placeholder",
            ));
        }
    }
    if *psi == Formula::Placeholder {
        return Ok(d.clone());
    }

    // One replacement formula for the whole tree: rename binders of psi
    // away from every binder occurring anywhere in the derivation, so the
    // per-node substitution can never produce an ill-formed formula.
    let mut tree_binders = BTreeSet::new();
    let mut tree_names = BTreeSet::new();
    collect_tree_names(d, &mut tree_binders, &mut tree_names);
    let replacement =
        rename_binders_avoiding(psi, &tree_binders, &tree_names, &tree_names);

    let mut avoid = tree_names;
    avoid.extend(psi.all_var_names());
    avoid.extend(replacement.all_var_names());
    let mut subst =
        PlaceholderSubst { replacement, fresh: FreshVars { avoid } };
    Ok(subst.node(d))
}

fn collect_tree_names(d: &Derivation, binders: &mut BTreeSet<String>, names: &mut BTreeSet<String>) {
    for f in d.conclusion.antecedent.iter().chain(d.conclusion.succedent.iter()) {
        binders.extend(f.binder_names());
        names.extend(f.all_var_names());
    }
    match &d.rule {
        RuleTag::AllR(a) | RuleTag::ExL(a) => {
            names.insert(a.clone());
        }
        _ => {}
    }
    for p in &d.premises {
        collect_tree_names(p, binders, names);
    }
}
