//! Small derivation builders shared by the lemma library and the
//! derivation-level translation. Each builder computes its conclusion
//! sequent explicitly; nothing here is trusted, the checker re-validates
//! all of it in the test suites.

use crate::calculus::{raw_cut, Derivation, RuleTag, Sequent};
use crate::syntax::{Formula, Term};

/// `f ⇒ f`.
pub(crate) fn axid(f: &Formula) -> Derivation {
    Derivation::leaf(RuleTag::AxId, Sequent::new(vec![f.clone()], vec![f.clone()]))
}

/// An identity leaf with extra context, `ant ⇒ suc`; some formula must
/// occur on both sides for this to check.
pub(crate) fn axid_in(ant: Vec<Formula>, suc: Vec<Formula>) -> Derivation {
    debug_assert!(ant.iter().any(|f| suc.contains(f)));
    Derivation::leaf(RuleTag::AxId, Sequent::new(ant, suc))
}

/// ImpL: from `Γ₁ ⇒ Δ₁, C` and `D, Γ₂ ⇒ Δ₂` conclude
/// `C→D, Γ₁, Γ₂ ⇒ Δ₁, Δ₂`. The implication is reconstructed from the
/// premises.
pub(crate) fn imp_left(left: Derivation, right: Derivation) -> Derivation {
    let c = left.conclusion.succedent.last().expect("imp_left: empty left succedent").clone();
    let d = right.conclusion.antecedent.first().expect("imp_left: empty right antecedent").clone();
    let imp = Formula::imp(c, d);
    let mut ant = vec![imp];
    ant.extend(left.conclusion.antecedent.iter().cloned());
    ant.extend(right.conclusion.antecedent[1..].iter().cloned());
    let mut suc = left.conclusion.succedent[..left.conclusion.succedent.len() - 1].to_vec();
    suc.extend(right.conclusion.succedent.iter().cloned());
    Derivation::binary(RuleTag::ImpL, Sequent::new(ant, suc), left, right)
}

/// ImpR: from `C, Γ ⇒ Δ, D` conclude `Γ ⇒ Δ, C→D`.
pub(crate) fn imp_right(premise: Derivation) -> Derivation {
    let c = premise.conclusion.antecedent.first().expect("imp_right: empty antecedent").clone();
    let d = premise.conclusion.succedent.last().expect("imp_right: empty succedent").clone();
    let ant = premise.conclusion.antecedent[1..].to_vec();
    let mut suc = premise.conclusion.succedent[..premise.conclusion.succedent.len() - 1].to_vec();
    suc.push(Formula::imp(c, d));
    Derivation::unary(RuleTag::ImpR, Sequent::new(ant, suc), premise)
}

/// Folds ImpR until the antecedent is empty, producing the
/// right-associated implication chain of the antecedent in reverse order.
pub(crate) fn fold_imp_rights(mut d: Derivation) -> Derivation {
    while !d.conclusion.antecedent.is_empty() {
        d = imp_right(d);
    }
    d
}

/// AndL on the leftmost antecedent formula: the premise's leftmost formula
/// becomes one conjunct; `other` is the missing one.
pub(crate) fn and_left(premise: Derivation, other: Formula, premise_is_left_conjunct: bool) -> Derivation {
    let first = premise.conclusion.antecedent.first().expect("and_left: empty antecedent").clone();
    let conj = if premise_is_left_conjunct {
        Formula::and(first, other)
    } else {
        Formula::and(other, first)
    };
    let mut ant = vec![conj];
    ant.extend(premise.conclusion.antecedent[1..].iter().cloned());
    let suc = premise.conclusion.succedent.clone();
    Derivation::unary(RuleTag::AndL, Sequent::new(ant, suc), premise)
}

/// AndR: shared contexts, rightmost succedent formulas conjoined.
pub(crate) fn and_right(left: Derivation, right: Derivation) -> Derivation {
    let l = left.conclusion.succedent.last().expect("and_right: empty succedent").clone();
    let r = right.conclusion.succedent.last().expect("and_right: empty succedent").clone();
    let ant = left.conclusion.antecedent.clone();
    let mut suc = left.conclusion.succedent[..left.conclusion.succedent.len() - 1].to_vec();
    suc.push(Formula::and(l, r));
    Derivation::binary(RuleTag::AndR, Sequent::new(ant, suc), left, right)
}

/// OrL: shared contexts, leftmost antecedent formulas joined.
pub(crate) fn or_left(left: Derivation, right: Derivation) -> Derivation {
    let l = left.conclusion.antecedent.first().expect("or_left: empty antecedent").clone();
    let r = right.conclusion.antecedent.first().expect("or_left: empty antecedent").clone();
    let mut ant = vec![Formula::or(l, r)];
    ant.extend(left.conclusion.antecedent[1..].iter().cloned());
    let suc = left.conclusion.succedent.clone();
    Derivation::binary(RuleTag::OrL, Sequent::new(ant, suc), left, right)
}

/// OrR on the rightmost succedent formula.
pub(crate) fn or_right(premise: Derivation, other: Formula, premise_is_left_disjunct: bool) -> Derivation {
    let last = premise.conclusion.succedent.last().expect("or_right: empty succedent").clone();
    let disj = if premise_is_left_disjunct {
        Formula::or(last, other)
    } else {
        Formula::or(other, last)
    };
    let ant = premise.conclusion.antecedent.clone();
    let mut suc = premise.conclusion.succedent[..premise.conclusion.succedent.len() - 1].to_vec();
    suc.push(disj);
    Derivation::unary(RuleTag::OrR, Sequent::new(ant, suc), premise)
}

/// AllL: generalizes the premise's leftmost formula, which must be
/// `quantified` instantiated with `witness`.
pub(crate) fn all_left(premise: Derivation, quantified: Formula, witness: Term) -> Derivation {
    debug_assert_eq!(
        premise.conclusion.antecedent.first(),
        quantified.instantiate(&witness).as_ref()
    );
    let mut ant = vec![quantified];
    ant.extend(premise.conclusion.antecedent[1..].iter().cloned());
    let suc = premise.conclusion.succedent.clone();
    Derivation::unary(RuleTag::AllL(witness), Sequent::new(ant, suc), premise)
}

/// AllR with the given eigenvariable; the premise's rightmost succedent
/// formula must be the eigenvariable instance of `quantified`.
pub(crate) fn all_right(premise: Derivation, quantified: Formula, eigen: &str) -> Derivation {
    debug_assert_eq!(
        premise.conclusion.succedent.last(),
        quantified.instantiate(&Term::Free(eigen.to_string())).as_ref()
    );
    let ant = premise.conclusion.antecedent.clone();
    let mut suc = premise.conclusion.succedent[..premise.conclusion.succedent.len() - 1].to_vec();
    suc.push(quantified);
    Derivation::unary(RuleTag::AllR(eigen.to_string()), Sequent::new(ant, suc), premise)
}

/// ExL with the given eigenvariable.
pub(crate) fn ex_left(premise: Derivation, quantified: Formula, eigen: &str) -> Derivation {
    debug_assert_eq!(
        premise.conclusion.antecedent.first(),
        quantified.instantiate(&Term::Free(eigen.to_string())).as_ref()
    );
    let mut ant = vec![quantified];
    ant.extend(premise.conclusion.antecedent[1..].iter().cloned());
    let suc = premise.conclusion.succedent.clone();
    Derivation::unary(RuleTag::ExL(eigen.to_string()), Sequent::new(ant, suc), premise)
}

/// ExR with the given witness term.
pub(crate) fn ex_right(premise: Derivation, quantified: Formula, witness: Term) -> Derivation {
    debug_assert_eq!(
        premise.conclusion.succedent.last(),
        quantified.instantiate(&witness).as_ref()
    );
    let ant = premise.conclusion.antecedent.clone();
    let mut suc = premise.conclusion.succedent[..premise.conclusion.succedent.len() - 1].to_vec();
    suc.push(quantified);
    Derivation::unary(RuleTag::ExR(witness), Sequent::new(ant, suc), premise)
}

/// Inserts `f` into the antecedent at `index` by one weakening.
pub(crate) fn weak_left_at(premise: Derivation, f: Formula, index: usize) -> Derivation {
    let mut ant = premise.conclusion.antecedent.clone();
    ant.insert(index, f);
    let suc = premise.conclusion.succedent.clone();
    Derivation::unary(RuleTag::WeakL, Sequent::new(ant, suc), premise)
}

/// Inserts `f` into the succedent at `index` by one weakening.
pub(crate) fn weak_right_at(premise: Derivation, f: Formula, index: usize) -> Derivation {
    let ant = premise.conclusion.antecedent.clone();
    let mut suc = premise.conclusion.succedent.clone();
    suc.insert(index, f);
    Derivation::unary(RuleTag::WeakR, Sequent::new(ant, suc), premise)
}

/// Swaps the adjacent antecedent pair at `i`, `i+1`.
pub(crate) fn exch_ant(premise: Derivation, i: usize) -> Derivation {
    let mut ant = premise.conclusion.antecedent.clone();
    ant.swap(i, i + 1);
    let suc = premise.conclusion.succedent.clone();
    Derivation::unary(RuleTag::ExchL, Sequent::new(ant, suc), premise)
}

/// Bubbles the antecedent formula at `from` to the front.
pub(crate) fn ant_to_front(mut d: Derivation, from: usize) -> Derivation {
    for i in (0..from).rev() {
        d = exch_ant(d, i);
    }
    d
}

/// Cut where the left succedent's last formula equals the right
/// antecedent's first formula.
pub(crate) fn chain(left: Derivation, right: Derivation) -> Derivation {
    debug_assert_eq!(
        left.conclusion.succedent.last(),
        right.conclusion.antecedent.first(),
        "chain: cut formula mismatch"
    );
    raw_cut(left, right)
}

/// `¬_Eφ, φ ⇒ E`: modus ponens against the placeholder negation.
pub(crate) fn clash_e(f: &Formula) -> Derivation {
    imp_left(axid(f), axid(&Formula::Placeholder))
}

/// `φ ⇒ ¬_E¬_Eφ`.
pub(crate) fn double_neg_intro(f: &Formula) -> Derivation {
    // clash_e(f) is (φ→E), φ ⇒ E and ImpR moves the leftmost formula
    imp_right(clash_e(f))
}

/// From a derivation of `X ⇒ Y` build `¬_EY ⇒ ¬_EX`.
pub(crate) fn contrapose_e(d: Derivation) -> Derivation {
    debug_assert_eq!(d.conclusion.antecedent.len(), 1);
    debug_assert_eq!(d.conclusion.succedent.len(), 1);
    // ImpL gives (Y -> E), X => E ; swap, then ImpR
    let step = imp_left(d, axid(&Formula::Placeholder));
    imp_right(exch_ant(step, 0))
}

/// Derives `from ⇒ to` for alpha-equivalent formulas by walking their
/// common structure; equal subformulas short-circuit to identity leaves.
/// Returns `None` when the formulas are not alpha-equivalent.
pub(crate) fn alpha_conversion(from: &Formula, to: &Formula) -> Option<Derivation> {
    use crate::syntax::fresh_free_var;
    if from == to {
        return Some(axid(from));
    }
    match (from, to) {
        (Formula::And(l, r), Formula::And(l2, r2)) => {
            let dl = and_left(alpha_conversion(l, l2)?, r.as_ref().clone(), true);
            let dr = and_left(alpha_conversion(r, r2)?, l.as_ref().clone(), false);
            Some(and_right(dl, dr))
        }
        (Formula::Or(l, r), Formula::Or(l2, r2)) => {
            let dl = or_right(alpha_conversion(l, l2)?, r2.as_ref().clone(), true);
            let dr = or_right(alpha_conversion(r, r2)?, l2.as_ref().clone(), false);
            Some(or_left(dl, dr))
        }
        (Formula::Imp(l, r), Formula::Imp(l2, r2)) => {
            // l2, l→r ⇒ r2 by ImpL over the two conversions
            let step = imp_left(alpha_conversion(l2, l)?, alpha_conversion(r, r2)?);
            Some(imp_right(exch_ant(step, 0)))
        }
        (Formula::ForAll(..), Formula::ForAll(..)) => {
            let mut avoid = from.all_var_names();
            avoid.extend(to.all_var_names());
            let fresh = fresh_free_var(&avoid);
            let witness = Term::Free(fresh.clone());
            let inst_from = from.instantiate(&witness)?;
            let inst_to = to.instantiate(&witness)?;
            let step = all_left(alpha_conversion(&inst_from, &inst_to)?, from.clone(), witness);
            Some(all_right(step, to.clone(), &fresh))
        }
        (Formula::Exists(..), Formula::Exists(..)) => {
            let mut avoid = from.all_var_names();
            avoid.extend(to.all_var_names());
            let fresh = fresh_free_var(&avoid);
            let witness = Term::Free(fresh.clone());
            let inst_from = from.instantiate(&witness)?;
            let inst_to = to.instantiate(&witness)?;
            let step =
                ex_right(alpha_conversion(&inst_from, &inst_to)?, to.clone(), witness);
            Some(ex_left(step, from.clone(), &fresh))
        }
        _ => None,
    }
}

/// From `⇒ X → Y` to `X ⇒ Y`.
pub(crate) fn apply_imp(d: Derivation) -> Derivation {
    let Some(Formula::Imp(x, y)) = d.conclusion.succedent.last() else {
        panic!("apply_imp: succedent is not an implication")
    };
    let mp = exch_ant(imp_left(axid(x), axid(y)), 0);
    // X, X→Y ⇒ Y ; move the implication forward and cut
    chain(d, ant_to_front(mp, 1))
}

/// `¬_E¬_E¬_EY ⇒ ¬_EY`: the placeholder triple negation collapse.
pub(crate) fn triple_neg_collapse(y: &Formula) -> Derivation {
    // ImpL over Y ⇒ ¬_E¬_EY gives ¬_E¬_E¬_EY, Y ⇒ E
    let step = imp_left(double_neg_intro(y), axid(&Formula::Placeholder));
    // swap so Y is leftmost, then ImpR turns it into the succedent ¬_EY
    imp_right(exch_ant(step, 0))
}
