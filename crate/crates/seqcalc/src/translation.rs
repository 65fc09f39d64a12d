//! The placeholder-based double-negation translation.
//!
//! `e_translate` maps formulas of the base language (no `E`) to formulas in
//! which `bot` never occurs: atoms get a double placeholder negation,
//! `bot` becomes `E`, conjunction, implication and universal
//! quantification are translated homomorphically, and disjunction and
//! existential quantification get a double placeholder negation on the
//! outside.
//!
//! `stability` builds, for every translated formula, minimal-mode
//! derivations collapsing and introducing its double placeholder negation.
//! `translate_derivation` lifts the translation to whole derivations: a
//! classical derivation in a theory `T` becomes a minimal-mode derivation
//! in the translated theory. The per-node invariant is that a classical
//! node `Γ ⇒ δ₁,…,δ_k` turns into a minimal derivation of
//! `Γ^E, δ₁^E→E, …, δ_k^E→E ⇒ E`; at the root the last placeholder
//! negation is removed with a stability derivation. Cuts translate to
//! cuts; nothing is ever cut-eliminated.

use crate::calculus::{check, raw_cut, Derivation, Mode, RuleTag, Sequent, Theory};
use crate::gadgets::{
    all_left, all_right, and_left, and_right, ant_to_front, axid, axid_in, chain,
    double_neg_intro, contrapose_e, exch_ant, ex_left, ex_right, imp_left, imp_right, or_left,
    or_right, triple_neg_collapse, weak_left_at,
};
use crate::syntax::{fresh_free_var, Formula, Term};
use crate::{Error, Result};
use std::collections::HashMap;

/// The formula translation. The input may not mention the placeholder.
pub fn e_translate(f: &Formula) -> Result<Formula> {
    if f.contains_placeholder() {
        return Err(Error::input("e_translate: formula mentions the placeholder E"));
    }
    Ok(e_translate_inner(f))
}

fn e_translate_inner(f: &Formula) -> Formula {
    match f {
        Formula::Falsum => Formula::Placeholder,
        Formula::Placeholder => unreachable!("rejected by e_translate"),
        Formula::Atom(..) => f.clone().neg_e().neg_e(),
        Formula::And(l, r) => Formula::and(e_translate_inner(l), e_translate_inner(r)),
        Formula::Imp(l, r) => Formula::imp(e_translate_inner(l), e_translate_inner(r)),
        Formula::Or(l, r) => {
            Formula::or(e_translate_inner(l), e_translate_inner(r)).neg_e().neg_e()
        }
        Formula::ForAll(x, b) => Formula::forall(x, e_translate_inner(b)),
        Formula::Exists(x, b) => Formula::exists(x, e_translate_inner(b)).neg_e().neg_e(),
    }
}

/// A theory together with the translations of its axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslatedTheory {
    pub base: Theory,
    pub translated_axioms: Vec<Formula>,
}

impl TranslatedTheory {
    pub fn new(base: &Theory) -> Result<TranslatedTheory> {
        let translated_axioms =
            base.axioms.iter().map(e_translate).collect::<Result<Vec<_>>>()?;
        Ok(TranslatedTheory { base: base.clone(), translated_axioms })
    }

    /// The translated theory as a checkable [`Theory`]. Its axioms mention
    /// `E`, so it is built through the placeholder-permitting constructor.
    pub fn as_theory(&self) -> Theory {
        Theory::with_placeholder(&format!("{}_E", self.base.name), self.translated_axioms.clone())
            .expect("translated axioms of a valid theory are valid")
    }
}

/// Minimal-mode derivations of `¬_E¬_E φ^E ⇒ φ^E` (collapse) and
/// `φ^E ⇒ ¬_E¬_E φ^E` (intro). `φ` may not mention the placeholder.
pub fn stability(f: &Formula) -> Result<(Derivation, Derivation)> {
    if f.contains_placeholder() {
        return Err(Error::input("stability: formula mentions the placeholder E"));
    }
    let mut cache = HashMap::new();
    let collapse = stability_collapse(f, &mut cache);
    let intro = double_neg_intro(&e_translate_inner(f));
    Ok((collapse, intro))
}

/// The collapse direction, memoized per subformula so repeated subterms
/// are built once per run.
fn stability_collapse(f: &Formula, cache: &mut HashMap<Formula, Derivation>) -> Derivation {
    if let Some(d) = cache.get(f) {
        return d.clone();
    }
    let d = match f {
        Formula::Placeholder => unreachable!("stability inputs are placeholder free"),
        // E itself: (E -> E) -> E  ⇒  E
        Formula::Falsum => imp_left(imp_right(axid(&Formula::Placeholder)), axid(&Formula::Placeholder)),
        // the translation starts with a placeholder negation, so the
        // triple negation collapse applies directly
        Formula::Atom(..) | Formula::Or(..) | Formula::Exists(..) => {
            let te = e_translate_inner(f);
            let Formula::Imp(inner, _) = &te else { unreachable!("translation shape") };
            triple_neg_collapse(inner.as_ref())
        }
        Formula::And(l, r) => {
            let (le, re) = (e_translate_inner(l), e_translate_inner(r));
            let pick = |mine: &Formula, other: &Formula, left: bool, sub: Derivation| {
                let select = and_left(axid(mine), other.clone(), left);
                let lifted = contrapose_e(contrapose_e(select));
                chain(lifted, sub)
            };
            let left_half = pick(&le, &re, true, stability_collapse(l, cache));
            let right_half = pick(&re, &le, false, stability_collapse(r, cache));
            and_right(left_half, right_half)
        }
        Formula::Imp(l, r) => {
            let (le, re) = (e_translate_inner(l), e_translate_inner(r));
            // ¬_E r^E, l^E→r^E, l^E ⇒ E
            let a = imp_left(imp_left(axid(&le), axid(&re)), axid(&Formula::Placeholder));
            // move the implication to the front and abstract it
            let b = imp_right(ant_to_front(a, 1));
            // ¬_E¬_E(l^E→r^E), ¬_E r^E, l^E ⇒ E
            let c = imp_left(b, axid(&Formula::Placeholder));
            // ⇒ ¬_E¬_E r^E, then collapse to r^E
            let d = imp_right(ant_to_front(c, 1));
            let e = chain(d, stability_collapse(r, cache));
            imp_right(exch_ant(e, 0))
        }
        Formula::ForAll(x, b) => {
            let be = e_translate_inner(b);
            let all_e = Formula::forall(x, be.clone());
            let fresh = fresh_free_var(&f.all_var_names());
            let witness = Term::Free(fresh.clone());
            let instance_e = be.subst_bound(x, &witness);
            let a = all_left(axid(&instance_e), all_e.clone(), witness.clone());
            let lifted = contrapose_e(contrapose_e(a));
            let instance = b.subst_bound(x, &witness);
            let collapsed = chain(lifted, stability_collapse(&instance, cache));
            all_right(collapsed, all_e, &fresh)
        }
    };
    cache.insert(f.clone(), d.clone());
    d
}

struct Translator<'a> {
    theory: &'a TranslatedTheory,
    collapse_cache: HashMap<Formula, Derivation>,
}

impl<'a> Translator<'a> {
    fn collapse(&mut self, f: &Formula) -> Derivation {
        stability_collapse(f, &mut self.collapse_cache)
    }

    /// `Γ^E, ¬_E Δ^E ⇒ E` for a classical node `Γ ⇒ Δ`.
    fn target_antecedent(&self, s: &Sequent) -> Vec<Formula> {
        let mut ant: Vec<Formula> =
            s.antecedent.iter().map(e_translate_inner).collect();
        ant.extend(s.succedent.iter().map(|d| e_translate_inner(d).neg_e()));
        ant
    }

    fn target_sequent(&self, s: &Sequent) -> Sequent {
        Sequent::new(self.target_antecedent(s), vec![Formula::Placeholder])
    }

    fn node(&mut self, d: &Derivation) -> Result<Derivation> {
        let target = self.target_sequent(&d.conclusion);
        let c = &d.conclusion;
        let out = match &d.rule {
            RuleTag::AxId => {
                let common = c
                    .antecedent
                    .iter()
                    .find(|f| c.succedent.contains(f))
                    .expect("checked derivation");
                let fe = e_translate_inner(common);
                let core = imp_left(axid(&fe), axid(&Formula::Placeholder));
                crate::calculus::restructure(core, &target)?
            }
            RuleTag::AxBot => {
                // bot^E = E sits in the antecedent, so this is an identity
                Derivation::leaf(RuleTag::AxId, target.clone())
            }
            RuleTag::AxTheory(i) => {
                let axiom_e = self.theory.translated_axioms[*i].clone();
                let gamma_e: Vec<Formula> =
                    c.antecedent.iter().map(e_translate_inner).collect();
                let leaf = Derivation::leaf(
                    RuleTag::AxTheory(*i),
                    Sequent::new(gamma_e, vec![axiom_e]),
                );
                let core = imp_left(leaf, axid(&Formula::Placeholder));
                crate::calculus::restructure(core, &target)?
            }
            RuleTag::WeakL => {
                let premise = &d.premises[0];
                let pos = insertion_point(&premise.conclusion.antecedent, &c.antecedent);
                let inner = self.node(premise)?;
                let f = e_translate_inner(&c.antecedent[pos]);
                weak_left_at(inner, f, pos)
            }
            RuleTag::WeakR => {
                let premise = &d.premises[0];
                let pos = insertion_point(&premise.conclusion.succedent, &c.succedent);
                let inner = self.node(premise)?;
                let f = e_translate_inner(&c.succedent[pos]).neg_e();
                weak_left_at(inner, f, c.antecedent.len() + pos)
            }
            RuleTag::ContrL | RuleTag::ContrR => {
                let premise = &d.premises[0];
                let inner = self.node(premise)?;
                Derivation::unary(RuleTag::ContrL, target.clone(), inner)
            }
            RuleTag::ExchL | RuleTag::ExchR => {
                let premise = &d.premises[0];
                let inner = self.node(premise)?;
                Derivation::unary(RuleTag::ExchL, target.clone(), inner)
            }
            RuleTag::Cut => {
                let p1 = &d.premises[0];
                let p2 = &d.premises[1];
                let i1 = self.node(p1)?;
                let i2 = self.node(p2)?;
                // premise 2 starts with the cut formula, abstract it
                let abstracted = imp_right(i2);
                let cut_pos = i1.conclusion.antecedent.len() - 1;
                let core = raw_cut(abstracted, ant_to_front(i1, cut_pos));
                crate::calculus::restructure(core, &target)?
            }
            RuleTag::AndL => {
                let premise = &d.premises[0];
                let Some(Formula::And(l, r)) = c.antecedent.first() else {
                    unreachable!("checked derivation")
                };
                let is_left = premise.conclusion.antecedent.first() == Some(l.as_ref());
                let other = e_translate_inner(if is_left { r } else { l });
                let inner = self.node(premise)?;
                and_left(inner, other, is_left)
            }
            RuleTag::AndR => {
                let p1 = &d.premises[0];
                let p2 = &d.premises[1];
                let i1 = self.node(p1)?;
                let i2 = self.node(p2)?;
                let m = i1.conclusion.antecedent.len() - 1;
                let Some(Formula::And(cf, df)) = c.succedent.last() else {
                    unreachable!("checked derivation")
                };
                let (ce, de) = (e_translate_inner(cf), e_translate_inner(df));
                // ¬_E(c^E ∧ d^E), c^E, d^E ⇒ E
                let both = and_right(
                    axid_in(vec![ce.clone(), de.clone()], vec![ce.clone()]),
                    axid_in(vec![ce.clone(), de.clone()], vec![de.clone()]),
                );
                let s1 = imp_left(both, axid(&Formula::Placeholder));
                let s3 = imp_right(ant_to_front(s1, 2));
                let s4 = raw_cut(s3, ant_to_front(i2, m));
                let s6 = imp_right(ant_to_front(s4, 1));
                let s7 = raw_cut(s6, ant_to_front(i1, m));
                crate::calculus::restructure(s7, &target)?
            }
            RuleTag::OrL => {
                let p1 = &d.premises[0];
                let p2 = &d.premises[1];
                let i1 = self.node(p1)?;
                let i2 = self.node(p2)?;
                let a = or_left(i1, i2);
                let b = imp_right(a);
                imp_left(b, axid(&Formula::Placeholder))
            }
            RuleTag::OrR => {
                let premise = &d.premises[0];
                let Some(Formula::Or(l, r)) = c.succedent.last() else {
                    unreachable!("checked derivation")
                };
                let is_left = premise.conclusion.succedent.last() == Some(l.as_ref());
                let (le, re) = (e_translate_inner(l), e_translate_inner(r));
                let inner_disj = Formula::or(le.clone(), re.clone());
                let i = self.node(premise)?;
                let m = i.conclusion.antecedent.len() - 1;
                let u = if is_left {
                    or_right(axid(&le), re.clone(), true)
                } else {
                    or_right(axid(&re), le.clone(), false)
                };
                let u2 = chain(u, double_neg_intro(&inner_disj));
                let u3 = imp_left(u2, axid(&Formula::Placeholder));
                let u5 = imp_right(exch_ant(u3, 0));
                let u6 = raw_cut(u5, ant_to_front(i, m));
                crate::calculus::restructure(u6, &target)?
            }
            RuleTag::ImpL => {
                let p1 = &d.premises[0];
                let p2 = &d.premises[1];
                let i1 = self.node(p1)?;
                let i2 = self.node(p2)?;
                let m1 = i1.conclusion.antecedent.len() - 1;
                let Some(Formula::Imp(cf, df)) = c.antecedent.first() else {
                    unreachable!("checked derivation")
                };
                let (ce, de) = (e_translate_inner(cf), e_translate_inner(df));
                let a = exch_ant(imp_left(axid(&ce), axid(&de)), 0);
                let b = raw_cut(a, i2);
                let cstep = imp_right(b);
                let dstep = raw_cut(cstep, ant_to_front(i1, m1));
                crate::calculus::restructure(dstep, &target)?
            }
            RuleTag::ImpR => {
                let premise = &d.premises[0];
                let Some(Formula::Imp(_, df)) = c.succedent.last() else {
                    unreachable!("checked derivation")
                };
                let i = self.node(premise)?;
                let last = i.conclusion.antecedent.len() - 1;
                let a = ant_to_front(i, last);
                let b = imp_right(a);
                let cstep = chain(b, self.collapse(df));
                let dstep = imp_right(cstep);
                let e = imp_left(dstep, axid(&Formula::Placeholder));
                crate::calculus::restructure(e, &target)?
            }
            RuleTag::AllL(t) => {
                let premise = &d.premises[0];
                let all_e = e_translate_inner(c.antecedent.first().expect("checked"));
                let inner = self.node(premise)?;
                all_left(inner, all_e, t.clone())
            }
            RuleTag::AllR(a) => {
                let premise = &d.premises[0];
                let Some(all @ Formula::ForAll(..)) = c.succedent.last() else {
                    unreachable!("checked derivation")
                };
                let all_e = e_translate_inner(all);
                let instance = all.instantiate(&Term::Free(a.clone())).expect("universal");
                let i = self.node(premise)?;
                let last = i.conclusion.antecedent.len() - 1;
                let s1 = ant_to_front(i, last);
                let s2 = imp_right(s1);
                let s3 = chain(s2, self.collapse(&instance));
                let s4 = all_right(s3, all_e, a);
                let s5 = imp_left(s4, axid(&Formula::Placeholder));
                crate::calculus::restructure(s5, &target)?
            }
            RuleTag::ExL(a) => {
                let premise = &d.premises[0];
                let Some(Formula::Exists(x, b)) = c.antecedent.first() else {
                    unreachable!("checked derivation")
                };
                let ex_e = Formula::exists(x, e_translate_inner(b));
                let inner = self.node(premise)?;
                let s1 = ex_left(inner, ex_e, a);
                let s2 = imp_right(s1);
                imp_left(s2, axid(&Formula::Placeholder))
            }
            RuleTag::ExR(t) => {
                let premise = &d.premises[0];
                let Some(Formula::Exists(x, b)) = c.succedent.last() else {
                    unreachable!("checked derivation")
                };
                let be = e_translate_inner(b);
                let ex_e = Formula::exists(x, be.clone());
                let instance_e = be.subst_bound(x, t);
                let i = self.node(premise)?;
                let m = i.conclusion.antecedent.len() - 1;
                let s1 = ex_right(axid(&instance_e), ex_e.clone(), t.clone());
                let s2 = chain(s1, double_neg_intro(&ex_e));
                let s3 = imp_left(s2, axid(&Formula::Placeholder));
                let s5 = imp_right(exch_ant(s3, 0));
                let s6 = raw_cut(s5, ant_to_front(i, m));
                crate::calculus::restructure(s6, &target)?
            }
        };
        debug_assert_eq!(out.conclusion, target, "translated node must hit its target shape");
        Ok(out)
    }
}

/// Index at which one extra formula was inserted into `smaller` to give
/// `larger`; the first point of difference always works.
fn insertion_point(smaller: &[Formula], larger: &[Formula]) -> usize {
    (0..larger.len())
        .find(|&i| smaller.get(i) != larger.get(i))
        .unwrap_or(smaller.len())
}

fn derivation_mentions_placeholder(d: &Derivation) -> bool {
    d.conclusion
        .antecedent
        .iter()
        .chain(d.conclusion.succedent.iter())
        .any(Formula::contains_placeholder)
        || d.premises.iter().any(derivation_mentions_placeholder)
}

/// Translates a checked classical derivation of `Γ ⇒ δ` in `theory` into a
/// minimal-mode derivation of `Γ^E ⇒ δ^E` in the translated theory.
pub fn translate_derivation(d: &Derivation, theory: &Theory) -> Result<Derivation> {
    if derivation_mentions_placeholder(d) {
        return Err(Error::input(
            "translate_derivation: the derivation mentions the placeholder E",
        ));
    }
    let report = check(d, Mode::Classical, theory);
    if !report.is_ok() {
        return Err(Error::input(format!(
            "translate_derivation: input fails the classical check:\n{report}"
        )));
    }
    if d.conclusion.succedent.len() != 1 {
        return Err(Error::input(format!(
            "translate_derivation: root succedent must be a single formula, found {}",
            d.conclusion.succedent.len()
        )));
    }
    let translated = TranslatedTheory::new(theory)?;
    let mut translator = Translator { theory: &translated, collapse_cache: HashMap::new() };
    let inv = translator.node(d)?;
    // Γ^E, δ^E→E ⇒ E  ~~>  Γ^E ⇒ δ^E
    let delta = &d.conclusion.succedent[0];
    let pos = inv.conclusion.antecedent.len() - 1;
    let abstracted = imp_right(ant_to_front(inv, pos));
    Ok(chain(abstracted, translator.collapse(delta)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{size, weaken_to};
    use crate::syntax::{parse_formula, subst_placeholder, Signature};

    fn parse(src: &str) -> Formula {
        parse_formula(src, &Signature::new()).unwrap()
    }

    #[test]
    fn translation_clauses() {
        assert_eq!(e_translate(&Formula::Falsum).unwrap(), Formula::Placeholder);
        let p = Formula::atom0("P");
        assert_eq!(e_translate(&p).unwrap(), p.clone().neg_e().neg_e());
        // P or bot
        let f = Formula::or(p.clone(), Formula::Falsum);
        let expected =
            Formula::or(p.clone().neg_e().neg_e(), Formula::Placeholder).neg_e().neg_e();
        assert_eq!(e_translate(&f).unwrap(), expected);
        // homomorphic clauses
        let g = parse("(forall x (imp (atom P x) (and (atom Q x) bot)))");
        let ge = e_translate(&g).unwrap();
        let Formula::ForAll(_, body) = &ge else { panic!("expected a universal") };
        assert!(matches!(body.as_ref(), Formula::Imp(..)));
        assert!(!ge.contains_falsum());
        assert!(e_translate(&Formula::Placeholder).is_err());
    }

    #[test]
    fn translation_output_never_contains_falsum() {
        for src in [
            "bot",
            "(imp bot (atom P))",
            "(forall x (or (atom P x) (imp (atom Q x) bot)))",
            "(exists y (and bot (atom R y)))",
        ] {
            assert!(!e_translate(&parse(src)).unwrap().contains_falsum(), "{src}");
        }
    }

    #[test]
    fn stability_checks_in_minimal_mode() {
        for src in [
            "bot",
            "(atom P)",
            "(and (atom P) (atom Q))",
            "(or (atom P) bot)",
            "(imp (atom P) (atom Q))",
            "(forall x (atom P x))",
            "(exists x (imp (atom P x) bot))",
            "(forall x (imp (atom P x) (exists y (atom R x y))))",
        ] {
            let f = parse(src);
            let fe = e_translate(&f).unwrap();
            let (collapse, intro) = stability(&f).unwrap();
            assert_eq!(
                collapse.conclusion,
                Sequent::new(vec![fe.clone().neg_e().neg_e()], vec![fe.clone()]),
                "{src}"
            );
            assert_eq!(
                intro.conclusion,
                Sequent::new(vec![fe.clone()], vec![fe.clone().neg_e().neg_e()]),
                "{src}"
            );
            for d in [&collapse, &intro] {
                assert!(
                    check(d, Mode::Minimal, &Theory::empty()).is_ok(),
                    "{src}: {}",
                    check(d, Mode::Minimal, &Theory::empty())
                );
            }
        }
    }

    #[test]
    fn stability_size_stays_linear() {
        // inference count of the collapse grows linearly in formula size
        let mut f = Formula::atom0("P");
        for i in 0..12 {
            f = Formula::and(f, Formula::atom0(&format!("Q{i}")));
        }
        let (collapse, _) = stability(&f).unwrap();
        let n = f.symbols();
        assert!(
            collapse.inference_count() <= 30 * n + 10,
            "collapse has {} inferences for {} symbols",
            collapse.inference_count(),
            n
        );
    }

    #[test]
    fn translate_identity_axiom() {
        let p = Formula::atom0("P");
        let d = Derivation::leaf(
            RuleTag::AxId,
            Sequent::new(vec![p.clone()], vec![p.clone()]),
        );
        let out = translate_derivation(&d, &Theory::empty()).unwrap();
        let pe = e_translate(&p).unwrap();
        assert_eq!(out.conclusion, Sequent::new(vec![pe.clone()], vec![pe]));
        assert!(check(&out, Mode::Minimal, &Theory::empty()).is_ok());
    }

    #[test]
    fn translate_bot_axiom_leaf() {
        // Gamma, bot => Q  translates into a derivation hinging on E => E
        let q = Formula::atom0("Q");
        let d = Derivation::leaf(
            RuleTag::AxBot,
            Sequent::new(vec![Formula::Falsum], vec![q.clone()]),
        );
        let out = translate_derivation(&d, &Theory::empty()).unwrap();
        assert!(check(&out, Mode::Minimal, &Theory::empty()).is_ok());
        assert_eq!(
            out.conclusion,
            Sequent::new(vec![Formula::Placeholder], vec![e_translate(&q).unwrap()])
        );
    }

    #[test]
    fn translate_excluded_middle() {
        // classical proof of => P or not P, through the right rules and a
        // right contraction
        let p = Formula::atom0("P");
        let lem = Formula::or(p.clone(), p.clone().neg());
        let d7 = crate::corpus::excluded_middle_proof(&p);
        assert!(check(&d7, Mode::Classical, &Theory::empty()).is_ok());
        assert!(!check(&d7, Mode::Intuitionistic, &Theory::empty()).is_ok());

        let out = translate_derivation(&d7, &Theory::empty()).unwrap();
        assert!(
            check(&out, Mode::Minimal, &Theory::empty()).is_ok(),
            "{}",
            check(&out, Mode::Minimal, &Theory::empty())
        );
        assert_eq!(
            out.conclusion,
            Sequent::new(vec![], vec![e_translate(&lem).unwrap()])
        );
    }

    #[test]
    fn translate_theory_axiom_use() {
        let ax = parse("(forall x (or (atom P x) (atom Q x)))");
        let theory = Theory::new("toy", vec![ax.clone()]).unwrap();
        let leaf = Derivation::leaf(
            RuleTag::AxTheory(0),
            Sequent::new(vec![Formula::atom0("R")], vec![ax.clone()]),
        );
        assert!(check(&leaf, Mode::Classical, &theory).is_ok());
        let out = translate_derivation(&leaf, &theory).unwrap();
        let te = TranslatedTheory::new(&theory).unwrap();
        assert!(check(&out, Mode::Minimal, &te.as_theory()).is_ok());
        assert!(!te.translated_axioms[0].contains_falsum());
    }

    #[test]
    fn translate_quantifier_rules() {
        // forall x P(x) => exists y P(y), classically
        let px = Formula::forall("x", Formula::atom("P", vec![Term::Bound("x".into())]));
        let ey = Formula::exists("y", Formula::atom("P", vec![Term::Bound("y".into())]));
        let pa = Formula::atom("P", vec![Term::free("a")]);
        let leaf = axid(&pa);
        let step1 = ex_right(leaf, ey.clone(), Term::free("a"));
        let step2 = all_left(step1, px.clone(), Term::free("a"));
        assert!(check(&step2, Mode::Minimal, &Theory::empty()).is_ok());
        let out = translate_derivation(&step2, &Theory::empty()).unwrap();
        assert!(
            check(&out, Mode::Minimal, &Theory::empty()).is_ok(),
            "{}",
            check(&out, Mode::Minimal, &Theory::empty())
        );
        assert_eq!(
            out.conclusion,
            Sequent::new(
                vec![e_translate(&px).unwrap()],
                vec![e_translate(&ey).unwrap()]
            )
        );
    }

    #[test]
    fn translated_size_is_controlled() {
        // output stays within a fixed multiple of input size times the
        // largest translated formula
        let p = Formula::atom0("P");
        let q = Formula::atom0("Q");
        let imp = Formula::imp(p.clone(), q.clone());
        let modus = imp_left(axid(&p), axid(&q));
        let reordered = weaken_to(&modus, &[imp.clone(), p.clone()], std::slice::from_ref(&q)).unwrap();
        let input_size = size(&reordered);
        let out = translate_derivation(&reordered, &Theory::empty()).unwrap();
        let out_size = size(&out);
        let max_translated = [p, q, imp]
            .iter()
            .map(|f| e_translate(f).unwrap().symbols())
            .max()
            .unwrap();
        assert!(out_size.symbol_count <= 60 * input_size.symbol_count * max_translated);
    }

    #[test]
    fn substituting_falsum_recovers_a_negative_translation() {
        // with bot put back for E, the translation of an atom collapses to
        // its double negation
        let p = Formula::atom0("P");
        let te = e_translate(&p).unwrap();
        let back = subst_placeholder(&te, &Formula::Falsum);
        assert_eq!(back, p.clone().neg().neg());
    }
}
