//! Derivation builders for the placeholder-negation lemma schemas and for
//! the three embedding families attached to the classes Q, R, J.
//!
//! Writing `n(φ)` for `φ → E` and `¬φ` for `φ → bot`, the ten schemas are
//!
//!  1. `φ → n(n(φ))`
//!  2. `(φ→ψ) → (n(n(φ)) → n(n(ψ)))`
//!  3. `n(¬(φ∧ψ)) → n(¬φ) ∧ n(¬ψ)`
//!  4. `n(n(φ)) ∧ n(n(ψ)) → n(n(φ∧ψ))`
//!  5. `n(¬(φ∨ψ)) → n(n(n(¬φ) ∨ n(¬ψ)))`
//!  6. `n(n(n(n(φ)) ∨ n(n(ψ)))) → n(n(φ∨ψ))`
//!  7. `n(¬(φ→ψ)) → (n(n(φ)) → n(¬ψ))`
//!  8. `(n(¬φ) → n(n(ψ))) → n(n(φ→ψ))`
//!  9. `n(¬∀xφ(x)) → ∀x n(¬φ(x))`
//! 10. `n(n(∃x n(n(φ(x))))) → n(n(∃xφ(x)))`
//!
//! Items 1–7, 9, 10 are built in minimal mode. Item 8 genuinely needs the
//! `bot` axiom scheme, so it is intuitionistic only.
//!
//! The embedding builders produce, for `φ ∈ Q`, `ψ ∈ R`, `θ ∈ J`,
//! intuitionistic derivations of `⇒ φ → φ^E`, `⇒ n(¬ψ) → ψ^E` and
//! `⇒ θ^E → n(n(θ))` by simultaneous recursion over the class structure.

use crate::calculus::{restructure, Derivation, Mode, RuleTag, Sequent};
use crate::classes::classify;
use crate::gadgets::{
    all_left, all_right, and_left, and_right, ant_to_front, apply_imp, axid, axid_in, chain,
    contrapose_e, double_neg_intro, exch_ant, ex_left, ex_right, fold_imp_rights, imp_left,
    imp_right, or_left, or_right, weak_left_at,
};
use crate::syntax::{fresh_free_var, well_formed, Formula, Term};
use crate::translation::{e_translate, stability};
use crate::{Error, Result};

/// Arguments for [`lemma`]. Item 1 takes one formula, items 2–8 take two,
/// items 9 and 10 take a quantifier template given as the bound variable
/// plus the body in which it occurs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LemmaArgs {
    One(Formula),
    Two(Formula, Formula),
    Template { var: String, body: Formula },
}

/// The mode in which a lemma item's output checks.
pub fn lemma_mode(id: u8) -> Mode {
    if id == 8 {
        Mode::Intuitionistic
    } else {
        Mode::Minimal
    }
}

/// Builds the derivation of lemma item `id` instantiated at `args`.
pub fn lemma(id: u8, args: &LemmaArgs) -> Result<Derivation> {
    let two = |args: &LemmaArgs| -> Result<(Formula, Formula)> {
        match args {
            LemmaArgs::Two(a, b) => {
                well_formed(a)?;
                well_formed(b)?;
                Ok((a.clone(), b.clone()))
            }
            _ => Err(Error::input(format!("lemma item {id} takes two formulas"))),
        }
    };
    let template = |args: &LemmaArgs| -> Result<(String, Formula)> {
        match args {
            LemmaArgs::Template { var, body } => {
                well_formed(&Formula::forall(var, body.clone()))?;
                Ok((var.clone(), body.clone()))
            }
            _ => Err(Error::input(format!("lemma item {id} takes a quantifier template"))),
        }
    };
    match id {
        1 => match args {
            LemmaArgs::One(f) => {
                well_formed(f)?;
                Ok(imp_right(double_neg_intro(f)))
            }
            _ => Err(Error::input("lemma item 1 takes one formula")),
        },
        2 => two(args).map(|(phi, psi)| lemma2(&phi, &psi)),
        3 => two(args).map(|(phi, psi)| lemma3(&phi, &psi)),
        4 => two(args).map(|(phi, psi)| lemma4(&phi, &psi)),
        5 => two(args).map(|(phi, psi)| lemma5(&phi, &psi)),
        6 => two(args).map(|(phi, psi)| lemma6(&phi, &psi)),
        7 => two(args).map(|(phi, psi)| lemma7(&phi, &psi)),
        8 => two(args).map(|(phi, psi)| lemma8(&phi, &psi)),
        9 => template(args).map(|(var, body)| lemma9(&var, &body)),
        10 => template(args).map(|(var, body)| lemma10(&var, &body)),
        other => Err(Error::input(format!("no lemma item {other}"))),
    }
}

fn placeholder() -> Formula {
    Formula::Placeholder
}

fn lemma2(phi: &Formula, psi: &Formula) -> Derivation {
    // ψ→E, φ→ψ, φ ⇒ E
    let a = imp_left(axid(phi), axid(psi));
    let b = imp_left(a, axid(&placeholder()));
    // abstract φ
    let c = imp_right(ant_to_front(b, 2));
    // (φ→E)→E, ψ→E, φ→ψ ⇒ E
    let d = imp_left(c, axid(&placeholder()));
    // reorder so folding yields (φ→ψ) → (n(n(φ)) → n(n(ψ)))
    fold_imp_rights(exch_ant(d, 0))
}

fn lemma3(phi: &Formula, psi: &Formula) -> Derivation {
    let half = |mine: &Formula, other: &Formula, mine_is_left: bool| {
        // φ∧ψ, ¬mine ⇒ bot
        let a = exch_ant(imp_left(axid(mine), axid(&Formula::Falsum)), 0);
        let b = and_left(a, other.clone(), mine_is_left);
        // ¬mine ⇒ ¬(φ∧ψ)
        let c = imp_right(b);
        // n(¬(φ∧ψ)), ¬mine ⇒ E
        let d = imp_left(c, axid(&placeholder()));
        imp_right(exch_ant(d, 0))
    };
    let conj = and_right(half(phi, psi, true), half(psi, phi, false));
    imp_right(conj)
}

fn lemma4(phi: &Formula, psi: &Formula) -> Derivation {
    let nn_phi = phi.clone().neg_e().neg_e();
    let nn_psi = psi.clone().neg_e().neg_e();
    // n(φ∧ψ), φ, ψ ⇒ E
    let both = and_right(
        axid_in(vec![phi.clone(), psi.clone()], vec![phi.clone()]),
        axid_in(vec![phi.clone(), psi.clone()], vec![psi.clone()]),
    );
    let a = imp_left(both, axid(&placeholder()));
    // abstract ψ, apply n(n(ψ))
    let b = imp_right(ant_to_front(a, 2));
    let c = imp_left(b, axid(&placeholder()));
    // abstract φ, apply n(n(φ))
    let d = imp_right(ant_to_front(c, 2));
    let e = imp_left(d, axid(&placeholder()));
    // n(n(φ)), n(n(ψ)), n(φ∧ψ) ⇒ E : merge the first two conjunctively
    let f = and_left(e, nn_psi, true);
    let g = exch_ant(f, 0);
    let h = and_left(g, nn_phi, false);
    let merged_ant = h.conclusion.antecedent[1..].to_vec();
    let merged = Derivation::unary(
        RuleTag::ContrL,
        Sequent::new(merged_ant, vec![placeholder()]),
        h,
    );
    // folding wants n(φ∧ψ) innermost
    fold_imp_rights(exch_ant(merged, 0))
}

fn lemma5(phi: &Formula, psi: &Formula) -> Derivation {
    let not_phi = phi.clone().neg();
    let not_psi = psi.clone().neg();
    // φ, ¬φ, ¬ψ ⇒ bot  and  ψ, ¬φ, ¬ψ ⇒ bot
    let s1 = weak_left_at(
        exch_ant(imp_left(axid(phi), axid(&Formula::Falsum)), 0),
        not_psi.clone(),
        2,
    );
    let s2 = weak_left_at(
        exch_ant(imp_left(axid(psi), axid(&Formula::Falsum)), 0),
        not_phi.clone(),
        1,
    );
    let s3 = or_left(s1, s2);
    // ¬φ, ¬ψ ⇒ ¬(φ∨ψ)
    let s4 = imp_right(s3);
    // H, ¬φ, ¬ψ ⇒ E   with H = n(¬(φ∨ψ))
    let s5 = imp_left(s4, axid(&placeholder()));
    // abstract ¬ψ and feed the right disjunct to K = n(n(¬φ) ∨ n(¬ψ))
    let s7 = imp_right(ant_to_front(s5, 2));
    let s8 = or_right(s7, not_phi.neg_e(), false);
    let s9 = imp_left(s8, axid(&placeholder()));
    // abstract ¬φ and feed the left disjunct to K again
    let s11 = imp_right(ant_to_front(s9, 2));
    let s12 = or_right(s11, not_psi.neg_e(), true);
    let s13 = imp_left(s12, axid(&placeholder()));
    // K, K, H ⇒ E : contract the duplicated assumption
    let s14 = Derivation::unary(
        RuleTag::ContrL,
        Sequent::new(s13.conclusion.antecedent[1..].to_vec(), vec![placeholder()]),
        s13,
    );
    fold_imp_rights(s14)
}

fn lemma6(phi: &Formula, psi: &Formula) -> Derivation {
    let branch = |mine: &Formula, other: &Formula, mine_is_left: bool| {
        // n(φ∨ψ), mine ⇒ E
        let a = or_right(axid(mine), other.clone(), mine_is_left);
        let b = imp_left(a, axid(&placeholder()));
        // n(n(mine)), n(φ∨ψ) ⇒ E
        let c = imp_right(exch_ant(b, 0));
        imp_left(c, axid(&placeholder()))
    };
    let f = or_left(branch(phi, psi, true), branch(psi, phi, false));
    // n(n(φ)) ∨ n(n(ψ)), n(φ∨ψ) ⇒ E ; abstract the disjunction
    let g = imp_right(f);
    let h = imp_left(g, axid(&placeholder()));
    fold_imp_rights(exch_ant(h, 0))
}

fn lemma7(phi: &Formula, psi: &Formula) -> Derivation {
    // ¬ψ, φ→ψ, φ ⇒ bot
    let a = imp_left(axid(phi), axid(psi));
    let b = imp_left(a, axid(&Formula::Falsum));
    // abstract φ→ψ
    let d = imp_right(ant_to_front(b, 1));
    // H, ¬ψ, φ ⇒ E  with H = n(¬(φ→ψ))
    let e = imp_left(d, axid(&placeholder()));
    // abstract φ, apply n(n(φ))
    let g = imp_right(ant_to_front(e, 2));
    let h = imp_left(g, axid(&placeholder()));
    // n(n(φ)), H, ¬ψ ⇒ E ~> ¬ψ, n(n(φ)), H ⇒ E
    fold_imp_rights(ant_to_front(h, 2))
}

fn lemma8(phi: &Formula, psi: &Formula) -> Derivation {
    let k = Formula::imp(phi.clone(), psi.clone()).neg_e();
    let h = Formula::imp(phi.clone().neg().neg_e(), psi.clone().neg_e().neg_e());
    // K ⇒ n(¬φ), through ex falso (the one genuinely intuitionistic move)
    let exfalso = Derivation::leaf(
        RuleTag::AxBot,
        Sequent::new(vec![Formula::Falsum], vec![psi.clone()]),
    );
    let a = imp_left(axid(phi), exfalso);
    let b = imp_right(exch_ant(a, 0));
    let c = imp_left(b, axid(&placeholder()));
    let u1 = imp_right(exch_ant(c, 0));
    // K ⇒ n(ψ)
    let a2 = imp_right(axid_in(vec![phi.clone(), psi.clone()], vec![psi.clone()]));
    let b2 = imp_left(a2, axid(&placeholder()));
    let u2 = imp_right(exch_ant(b2, 0));
    // K, H ⇒ n(n(ψ)) by modus ponens against H
    let mp = exch_ant(
        imp_left(axid(&phi.clone().neg().neg_e()), axid(&psi.clone().neg_e().neg_e())),
        0,
    );
    let u3 = chain(u1, mp);
    // n(n(ψ)), K ⇒ E
    let u4 = imp_left(u2, axid(&placeholder()));
    // K, H, K ⇒ E : contract the duplicated K
    let u5 = chain(u3, u4);
    let target = Sequent::new(vec![k, h], vec![placeholder()]);
    let u6 = restructure(u5, &target).expect("lemma 8 core restructuring");
    fold_imp_rights(u6)
}

fn lemma9(var: &str, body: &Formula) -> Derivation {
    let all = Formula::forall(var, body.clone());
    let all_n = Formula::forall(var, body.clone().neg().neg_e());
    let mut avoid = all.all_var_names();
    avoid.insert(var.to_string());
    let fresh = fresh_free_var(&avoid);
    let witness = Term::Free(fresh.clone());
    let instance = body.subst_bound(var, &witness);
    // ∀xφ, ¬φ(a) ⇒ bot
    let a = exch_ant(imp_left(axid(&instance), axid(&Formula::Falsum)), 0);
    let b = all_left(a, all, witness);
    // ¬φ(a) ⇒ ¬∀xφ
    let c = imp_right(b);
    // n(¬∀xφ), ¬φ(a) ⇒ E
    let d = imp_left(c, axid(&placeholder()));
    // ⇒ n(¬φ(a)), generalize, abstract
    let e = imp_right(exch_ant(d, 0));
    let f = all_right(e, all_n, &fresh);
    imp_right(f)
}

fn lemma10(var: &str, body: &Formula) -> Derivation {
    let ex = Formula::exists(var, body.clone());
    let ex_nn = Formula::exists(var, body.clone().neg_e().neg_e());
    let mut avoid = ex.all_var_names();
    avoid.insert(var.to_string());
    let fresh = fresh_free_var(&avoid);
    let witness = Term::Free(fresh.clone());
    let instance = body.subst_bound(var, &witness);
    // n(∃xφ), φ(a) ⇒ E
    let a = ex_right(axid(&instance), ex, witness);
    let b = imp_left(a, axid(&placeholder()));
    // ⇒ n(φ(a)), then n(n(φ(a))), n(∃xφ) ⇒ E
    let c = imp_right(exch_ant(b, 0));
    let d = imp_left(c, axid(&placeholder()));
    // pull the eigenvariable instance under the existential
    let e = ex_left(d, ex_nn, &fresh);
    // abstract, reapply, fold
    let f = imp_right(e);
    let g = imp_left(f, axid(&placeholder()));
    fold_imp_rights(exch_ant(g, 0))
}

/// Intuitionistic derivation of `⇒ φ → φ^E` for `φ ∈ Q`.
pub fn embed_q(f: &Formula) -> Result<Derivation> {
    let m = classify(f)?;
    if !m.in_q {
        return Err(Error::input(format!("embed_q: {f} is not in the class Q")));
    }
    Ok(imp_right(embed_q_inner(f)))
}

/// Intuitionistic derivation of `⇒ n(¬ψ) → ψ^E` for `ψ ∈ R`.
pub fn embed_r(f: &Formula) -> Result<Derivation> {
    let m = classify(f)?;
    if !m.in_r {
        return Err(Error::input(format!("embed_r: {f} is not in the class R")));
    }
    Ok(imp_right(embed_r_inner(f)))
}

/// Intuitionistic derivation of `⇒ θ^E → n(n(θ))` for `θ ∈ J`.
pub fn embed_j(f: &Formula) -> Result<Derivation> {
    let m = classify(f)?;
    if !m.in_j {
        return Err(Error::input(format!("embed_j: {f} is not in the class J")));
    }
    Ok(imp_right(embed_j_inner(f)))
}

fn translate(f: &Formula) -> Formula {
    e_translate(f).expect("class members are placeholder free")
}

/// `φ ⇒ φ^E` by recursion over the Q clauses.
fn embed_q_inner(f: &Formula) -> Derivation {
    match f {
        Formula::Falsum => Derivation::leaf(
            RuleTag::AxBot,
            Sequent::new(vec![Formula::Falsum], vec![placeholder()]),
        ),
        Formula::Atom(..) => double_neg_intro(f),
        Formula::And(l, r) => {
            let dl = and_left(embed_q_inner(l), r.as_ref().clone(), true);
            let dr = and_left(embed_q_inner(r), l.as_ref().clone(), false);
            and_right(dl, dr)
        }
        Formula::Or(l, r) => {
            let (le, re) = (translate(l), translate(r));
            let inner = Formula::or(le.clone(), re.clone());
            let dl = chain(or_right(embed_q_inner(l), re, true), double_neg_intro(&inner));
            let dr = chain(or_right(embed_q_inner(r), le, false), double_neg_intro(&inner));
            or_left(dl, dr)
        }
        Formula::Exists(x, b) => {
            let fresh = fresh_free_var(&f.all_var_names());
            let witness = Term::Free(fresh.clone());
            let instance = b.subst_bound(x, &witness);
            let ex_e = Formula::exists(x, translate(b));
            let i = ex_right(embed_q_inner(&instance), ex_e.clone(), witness);
            let i2 = chain(i, double_neg_intro(&ex_e));
            ex_left(i2, f.clone(), &fresh)
        }
        Formula::ForAll(x, b) => {
            let fresh = fresh_free_var(&f.all_var_names());
            let witness = Term::Free(fresh.clone());
            let instance = b.subst_bound(x, &witness);
            let all_e = Formula::forall(x, translate(b));
            let i = all_left(embed_q_inner(&instance), f.clone(), witness);
            all_right(i, all_e, &fresh)
        }
        Formula::Imp(j, q) => {
            // j^E ⇒ n(n(j)), then n(n(j)), j→q ⇒ n(n(q)), then collapse
            // n(n(q)) through q's own embedding and stability
            let dj = embed_j_inner(j);
            let a = imp_left(axid(j), axid(q));
            let b = imp_left(a, axid(&placeholder()));
            let c = imp_right(ant_to_front(b, 2));
            let d = imp_left(c, axid(&placeholder()));
            let e = imp_right(ant_to_front(d, 1));
            let mono = contrapose_e(contrapose_e(embed_q_inner(q)));
            let (collapse, _) = stability(q).expect("class members are placeholder free");
            let chained = chain(chain(chain(dj, e), mono), collapse);
            // j^E, j→q ⇒ q^E ; abstract j^E
            imp_right(chained)
        }
        Formula::Placeholder => unreachable!("class members are placeholder free"),
    }
}

/// `n(¬ψ) ⇒ ψ^E` by recursion over the R clauses.
fn embed_r_inner(f: &Formula) -> Derivation {
    match f {
        Formula::Falsum => {
            // ⇒ ¬bot, so n(¬bot) ⇒ E
            let nb = imp_right(axid(&Formula::Falsum));
            imp_left(nb, axid(&placeholder()))
        }
        Formula::And(l, r) => {
            let l3 = apply_imp(lemma3(l, r));
            let dl = and_left(embed_r_inner(l), r.as_ref().clone().neg().neg_e(), true);
            let dr = and_left(embed_r_inner(r), l.as_ref().clone().neg().neg_e(), false);
            chain(l3, and_right(dl, dr))
        }
        Formula::Or(l, r) => {
            let l5 = apply_imp(lemma5(l, r));
            let (le, re) = (translate(l), translate(r));
            let inner = or_left(
                or_right(embed_r_inner(l), re, true),
                or_right(embed_r_inner(r), le, false),
            );
            chain(l5, contrapose_e(contrapose_e(inner)))
        }
        Formula::ForAll(x, b) => {
            let l9 = apply_imp(lemma9(x, b));
            let all_n = Formula::forall(x, b.clone().neg().neg_e());
            let all_e = Formula::forall(x, translate(b));
            let mut avoid = f.all_var_names();
            avoid.insert(x.clone());
            let fresh = fresh_free_var(&avoid);
            let witness = Term::Free(fresh.clone());
            let instance = b.subst_bound(x, &witness);
            let lifted =
                all_right(all_left(embed_r_inner(&instance), all_n, witness), all_e, &fresh);
            chain(l9, lifted)
        }
        Formula::Imp(j, r) => {
            // n(n(j)) → n(¬r) ⇒ j^E → r^E, composed with lemma item 7
            let l7 = apply_imp(lemma7(j, r));
            let dj = embed_j_inner(j);
            let mp = exch_ant(
                imp_left(
                    axid(&j.as_ref().clone().neg_e().neg_e()),
                    axid(&r.as_ref().clone().neg().neg_e()),
                ),
                0,
            );
            let c1 = chain(dj, mp);
            let c2 = chain(c1, embed_r_inner(r));
            // j^E, n(n(j))→n(¬r) ⇒ r^E ; abstract j^E
            let c3 = imp_right(c2);
            chain(l7, c3)
        }
        Formula::Atom(..) | Formula::Exists(..) => {
            unreachable!("embed_r: {f} is not generated by an R clause")
        }
        Formula::Placeholder => unreachable!("class members are placeholder free"),
    }
}

/// `θ^E ⇒ n(n(θ))` by recursion over the J clauses.
fn embed_j_inner(f: &Formula) -> Derivation {
    match f {
        Formula::Falsum => {
            // E ⇒ (bot→E) → E : an identity behind one ImpR
            imp_right(axid_in(
                vec![Formula::Falsum.neg_e(), placeholder()],
                vec![placeholder()],
            ))
        }
        Formula::Atom(..) => axid(&translate(f)),
        Formula::And(l, r) => {
            let dl = and_left(embed_j_inner(l), translate(r), true);
            let dr = and_left(embed_j_inner(r), translate(l), false);
            chain(and_right(dl, dr), apply_imp(lemma4(l, r)))
        }
        Formula::Or(l, r) => {
            let inner = or_left(
                or_right(embed_j_inner(l), r.as_ref().clone().neg_e().neg_e(), true),
                or_right(embed_j_inner(r), l.as_ref().clone().neg_e().neg_e(), false),
            );
            chain(contrapose_e(contrapose_e(inner)), apply_imp(lemma6(l, r)))
        }
        Formula::Exists(x, b) => {
            let mut avoid = f.all_var_names();
            avoid.insert(x.clone());
            let fresh = fresh_free_var(&avoid);
            let witness = Term::Free(fresh.clone());
            let instance = b.subst_bound(x, &witness);
            let ex_nn = Formula::exists(x, b.clone().neg_e().neg_e());
            let ex_e = Formula::exists(x, translate(b));
            let inner =
                ex_left(ex_right(embed_j_inner(&instance), ex_nn, witness), ex_e, &fresh);
            chain(contrapose_e(contrapose_e(inner)), apply_imp(lemma10(x, b)))
        }
        Formula::Imp(r, j) => {
            // r^E→j^E ⇒ n(¬r) → n(n(j)), then lemma item 8
            let dr = embed_r_inner(r);
            let mp = exch_ant(imp_left(axid(&translate(r)), axid(&translate(j))), 0);
            let c1 = chain(dr, mp);
            let c2 = chain(c1, embed_j_inner(j));
            // n(¬r), r^E→j^E ⇒ n(n(j)) ; abstract n(¬r)
            let c3 = imp_right(c2);
            chain(c3, apply_imp(lemma8(r, j)))
        }
        Formula::ForAll(..) => unreachable!("embed_j: {f} is not generated by a J clause"),
        Formula::Placeholder => unreachable!("class members are placeholder free"),
    }
}
