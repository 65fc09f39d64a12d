//! Shared test machinery: a random generator of *valid* derivations per
//! mode, guaranteed-breaking single-point mutations, and a size-bounded
//! exhaustive formula enumerator.
#![allow(dead_code)]

use rand::prelude::*;
use rand::rngs::StdRng;
use seqcalc::calculus::{Derivation, Mode, RuleTag, Sequent, Theory};
use seqcalc::syntax::{Formula, Term};

const FREE_VARS: [&str; 4] = ["a", "b", "c", "d"];

pub struct FormulaGen {
    pub allow_placeholder: bool,
    pub max_depth: usize,
}

impl FormulaGen {
    pub fn gen(&self, rng: &mut StdRng) -> Formula {
        self.gen_depth(rng, self.max_depth)
    }

    fn gen_term(&self, rng: &mut StdRng) -> Term {
        let name = FREE_VARS[rng.gen_range(0..FREE_VARS.len())];
        if rng.gen_bool(0.25) {
            Term::app("f", vec![Term::free(name)])
        } else {
            Term::free(name)
        }
    }

    fn gen_atom(&self, rng: &mut StdRng) -> Formula {
        match rng.gen_range(0..5) {
            0 => Formula::Falsum,
            1 if self.allow_placeholder => Formula::Placeholder,
            1 | 2 => Formula::atom0("P"),
            3 => Formula::atom0("Q"),
            _ => Formula::atom("R", vec![self.gen_term(rng)]),
        }
    }

    fn gen_depth(&self, rng: &mut StdRng, depth: usize) -> Formula {
        if depth == 0 || rng.gen_bool(0.3) {
            return self.gen_atom(rng);
        }
        match rng.gen_range(0..5) {
            0 => Formula::and(self.gen_depth(rng, depth - 1), self.gen_depth(rng, depth - 1)),
            1 => Formula::or(self.gen_depth(rng, depth - 1), self.gen_depth(rng, depth - 1)),
            2 => Formula::imp(self.gen_depth(rng, depth - 1), self.gen_depth(rng, depth - 1)),
            quant => {
                let body = self.gen_depth(rng, depth - 1);
                let (var, body) = quantify(rng, body);
                if quant == 3 {
                    Formula::ForAll(var, Box::new(body))
                } else {
                    Formula::Exists(var, Box::new(body))
                }
            }
        }
    }
}

/// Picks a fresh bound name for `body` and, when possible, substitutes one
/// of its free variables; otherwise the quantifier is vacuous.
pub fn quantify(rng: &mut StdRng, body: Formula) -> (String, Formula) {
    let binders = body.binder_names();
    let var = (0..)
        .map(|k| format!("x{k}"))
        .find(|v| !binders.contains(v))
        .unwrap();
    let frees: Vec<String> = body.free_vars().into_iter().collect();
    if frees.is_empty() || rng.gen_bool(0.2) {
        (var, body)
    } else {
        let chosen = &frees[rng.gen_range(0..frees.len())];
        let renamed = body.subst_free(chosen, &Term::Bound(var.clone()));
        (var, renamed)
    }
}

pub struct DerivationGen {
    pub mode: Mode,
    pub theory: Theory,
    pub formulas: FormulaGen,
    pub steps: usize,
}

impl DerivationGen {
    fn formula(&self, rng: &mut StdRng) -> Formula {
        self.formulas.gen(rng)
    }

    fn leaf(&self, rng: &mut StdRng) -> Derivation {
        let mut choices = vec!["axid", "axid", "axid"];
        if self.mode != Mode::Minimal {
            choices.push("axbot");
        }
        if !self.theory.axioms.is_empty() {
            choices.push("axtheory");
        }
        match choices[rng.gen_range(0..choices.len())] {
            "axid" => {
                let f = self.formula(rng);
                let mut ant = vec![f.clone()];
                for _ in 0..rng.gen_range(0..2) {
                    ant.insert(rng.gen_range(0..=ant.len()), self.formula(rng));
                }
                let mut suc = vec![f];
                if self.mode == Mode::Classical {
                    for _ in 0..rng.gen_range(0..2) {
                        suc.insert(rng.gen_range(0..=suc.len()), self.formula(rng));
                    }
                }
                Derivation::leaf(RuleTag::AxId, Sequent::new(ant, suc))
            }
            "axbot" => {
                let mut ant = vec![Formula::Falsum];
                for _ in 0..rng.gen_range(0..2) {
                    ant.insert(rng.gen_range(0..=ant.len()), self.formula(rng));
                }
                let suc_len = if self.mode == Mode::Classical {
                    rng.gen_range(0..3)
                } else {
                    rng.gen_range(0..2)
                };
                let suc = (0..suc_len).map(|_| self.formula(rng)).collect();
                Derivation::leaf(RuleTag::AxBot, Sequent::new(ant, suc))
            }
            _ => {
                let i = rng.gen_range(0..self.theory.axioms.len());
                let ant = (0..rng.gen_range(0..3)).map(|_| self.formula(rng)).collect();
                Derivation::leaf(
                    RuleTag::AxTheory(i),
                    Sequent::new(ant, vec![self.theory.axioms[i].clone()]),
                )
            }
        }
    }

    pub fn gen(&self, rng: &mut StdRng) -> Derivation {
        let mut d = self.leaf(rng);
        for _ in 0..self.steps {
            d = self.extend(rng, d);
        }
        d
    }

    fn extend(&self, rng: &mut StdRng, d: Derivation) -> Derivation {
        let ant = d.conclusion.antecedent.clone();
        let suc = d.conclusion.succedent.clone();
        let classical = self.mode == Mode::Classical;

        let mut options: Vec<&str> = vec!["weakl"];
        if classical || suc.is_empty() {
            options.push("weakr");
        }
        if ant.windows(2).any(|w| w[0] == w[1]) {
            options.push("contrl");
        }
        if ant.len() >= 2 {
            options.push("exchl");
        }
        if classical && suc.len() >= 2 {
            options.push("exchr");
            if suc.windows(2).any(|w| w[0] == w[1]) {
                options.push("contrr");
            }
        }
        if !ant.is_empty() {
            options.extend(["andl", "exl", "alll"]);
        }
        if !suc.is_empty() {
            options.extend(["orr", "impl2", "cut2", "exr", "allr"]);
            if !ant.is_empty() {
                options.extend(["impr", "orl2", "andr2"]);
            }
        }

        let choice = options[rng.gen_range(0..options.len())];
        match choice {
            "weakl" => {
                let f = self.formula(rng);
                let pos = rng.gen_range(0..=ant.len());
                let mut new_ant = ant;
                new_ant.insert(pos, f);
                Derivation::unary(RuleTag::WeakL, Sequent::new(new_ant, suc), d)
            }
            "weakr" => {
                let f = self.formula(rng);
                let pos = rng.gen_range(0..=suc.len());
                let mut new_suc = suc;
                new_suc.insert(pos, f);
                Derivation::unary(RuleTag::WeakR, Sequent::new(ant, new_suc), d)
            }
            "contrl" => {
                let i = (0..ant.len() - 1).find(|&i| ant[i] == ant[i + 1]).unwrap();
                let mut new_ant = ant;
                new_ant.remove(i);
                Derivation::unary(RuleTag::ContrL, Sequent::new(new_ant, suc), d)
            }
            "contrr" => {
                let i = (0..suc.len() - 1).find(|&i| suc[i] == suc[i + 1]).unwrap();
                let mut new_suc = suc;
                new_suc.remove(i);
                Derivation::unary(RuleTag::ContrR, Sequent::new(ant, new_suc), d)
            }
            "exchl" => {
                let i = rng.gen_range(0..ant.len() - 1);
                let mut new_ant = ant;
                new_ant.swap(i, i + 1);
                Derivation::unary(RuleTag::ExchL, Sequent::new(new_ant, suc), d)
            }
            "exchr" => {
                let i = rng.gen_range(0..suc.len() - 1);
                let mut new_suc = suc;
                new_suc.swap(i, i + 1);
                Derivation::unary(RuleTag::ExchR, Sequent::new(ant, new_suc), d)
            }
            "andl" => {
                let other = self.formula(rng);
                let premise_left = rng.gen_bool(0.5);
                let first = ant[0].clone();
                let conj = if premise_left {
                    Formula::and(first, other)
                } else {
                    Formula::and(other, first)
                };
                let mut new_ant = ant;
                new_ant[0] = conj;
                Derivation::unary(RuleTag::AndL, Sequent::new(new_ant, suc), d)
            }
            "orr" => {
                let other = self.formula(rng);
                let premise_left = rng.gen_bool(0.5);
                let last = suc.last().unwrap().clone();
                let disj = if premise_left {
                    Formula::or(last, other)
                } else {
                    Formula::or(other, last)
                };
                let mut new_suc = suc;
                *new_suc.last_mut().unwrap() = disj;
                Derivation::unary(RuleTag::OrR, Sequent::new(ant, new_suc), d)
            }
            "impr" => {
                let moved = ant[0].clone();
                let last = suc.last().unwrap().clone();
                let mut new_suc = suc;
                *new_suc.last_mut().unwrap() = Formula::imp(moved, last);
                Derivation::unary(RuleTag::ImpR, Sequent::new(ant[1..].to_vec(), new_suc), d)
            }
            "orl2" => {
                // second premise: an identity leaf sharing the context,
                // with its fresh disjunct drawn from the succedent
                let other = suc[rng.gen_range(0..suc.len())].clone();
                let mut right_ant = vec![other.clone()];
                right_ant.extend(ant[1..].iter().cloned());
                let right = Derivation::leaf(RuleTag::AxId, Sequent::new(right_ant, suc.clone()));
                let mut new_ant = ant;
                let first = new_ant[0].clone();
                new_ant[0] = Formula::or(first, other);
                Derivation::binary(RuleTag::OrL, Sequent::new(new_ant, suc), d, right)
            }
            "andr2" => {
                // second premise: an identity leaf whose new conjunct comes
                // from the shared antecedent
                let other = ant[rng.gen_range(0..ant.len())].clone();
                let mut right_suc = suc[..suc.len() - 1].to_vec();
                right_suc.push(other.clone());
                let right = Derivation::leaf(RuleTag::AxId, Sequent::new(ant.clone(), right_suc));
                let last = suc.last().unwrap().clone();
                let mut new_suc = suc;
                *new_suc.last_mut().unwrap() = Formula::and(last, other);
                Derivation::binary(RuleTag::AndR, Sequent::new(ant, new_suc), d, right)
            }
            "impl2" => {
                let dform = self.formula(rng);
                let right = Derivation::leaf(
                    RuleTag::AxId,
                    Sequent::new(vec![dform.clone()], vec![dform.clone()]),
                );
                let cform = suc.last().unwrap().clone();
                let mut new_ant = vec![Formula::imp(cform, dform.clone())];
                new_ant.extend(ant.iter().cloned());
                let mut new_suc = suc[..suc.len() - 1].to_vec();
                new_suc.push(dform);
                Derivation::binary(RuleTag::ImpL, Sequent::new(new_ant, new_suc), d, right)
            }
            "cut2" => {
                let cform = suc.last().unwrap().clone();
                let right = Derivation::leaf(
                    RuleTag::AxId,
                    Sequent::new(vec![cform.clone()], vec![cform]),
                );
                Derivation::binary(RuleTag::Cut, Sequent::new(ant, suc), d, right)
            }
            "exl" => {
                let first = ant[0].clone();
                let frees: Vec<String> = first
                    .free_vars()
                    .into_iter()
                    .filter(|v| {
                        // eigenvariable: absent from the rest of the sequent
                        let rest = Sequent::new(ant[1..].to_vec(), suc.clone()).free_vars();
                        !rest.contains(v)
                    })
                    .collect();
                let Some(var) = frees.first() else { return self.fallback_weak(rng, d) };
                let (x, body) = bind_var(&first, var);
                let mut new_ant = ant;
                new_ant[0] = Formula::Exists(x, Box::new(body));
                Derivation::unary(
                    RuleTag::ExL(var.clone()),
                    Sequent::new(new_ant, suc),
                    d,
                )
            }
            "allr" => {
                let last = suc.last().unwrap().clone();
                let frees: Vec<String> = last
                    .free_vars()
                    .into_iter()
                    .filter(|v| {
                        let rest = Sequent::new(ant.clone(), suc[..suc.len() - 1].to_vec())
                            .free_vars();
                        !rest.contains(v)
                    })
                    .collect();
                let Some(var) = frees.first() else { return self.fallback_weak(rng, d) };
                let (x, body) = bind_var(&last, var);
                let mut new_suc = suc;
                *new_suc.last_mut().unwrap() = Formula::ForAll(x, Box::new(body));
                Derivation::unary(
                    RuleTag::AllR(var.clone()),
                    Sequent::new(ant, new_suc),
                    d,
                )
            }
            "alll" => {
                let first = ant[0].clone();
                let frees: Vec<String> = first.free_vars().into_iter().collect();
                let Some(var) = frees.first() else { return self.fallback_weak(rng, d) };
                let (x, body) = bind_var(&first, var);
                let mut new_ant = ant;
                new_ant[0] = Formula::ForAll(x, Box::new(body));
                Derivation::unary(
                    RuleTag::AllL(Term::free(var)),
                    Sequent::new(new_ant, suc),
                    d,
                )
            }
            "exr" => {
                let last = suc.last().unwrap().clone();
                let frees: Vec<String> = last.free_vars().into_iter().collect();
                let Some(var) = frees.first() else { return self.fallback_weak(rng, d) };
                let (x, body) = bind_var(&last, var);
                let mut new_suc = suc;
                *new_suc.last_mut().unwrap() = Formula::Exists(x, Box::new(body));
                Derivation::unary(
                    RuleTag::ExR(Term::free(var)),
                    Sequent::new(ant, new_suc),
                    d,
                )
            }
            _ => self.fallback_weak(rng, d),
        }
    }

    fn fallback_weak(&self, rng: &mut StdRng, d: Derivation) -> Derivation {
        let f = self.formula(rng);
        let mut ant = d.conclusion.antecedent.clone();
        let pos = rng.gen_range(0..=ant.len());
        ant.insert(pos, f);
        let suc = d.conclusion.succedent.clone();
        Derivation::unary(RuleTag::WeakL, Sequent::new(ant, suc), d)
    }
}

/// Binds `var` in `f` with a fresh bound name, for building quantifier
/// rule conclusions.
fn bind_var(f: &Formula, var: &str) -> (String, Formula) {
    let binders = f.binder_names();
    let x = (0..)
        .map(|k| format!("x{k}"))
        .find(|v| !binders.contains(v))
        .unwrap();
    (x.clone(), f.subst_free(var, &Term::Bound(x)))
}

/// Single-point mutations that are invalid by construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    /// Swap a node's rule for one with a different premise arity.
    TagArity,
    /// Overwrite one formula of a non-root node with an atom that occurs
    /// nowhere else.
    Graffiti,
    /// Rotate the antecedent of a non-root node whose formulas are not all
    /// equal.
    Permute,
    /// Rename the eigenvariable annotation of a quantifier inference with
    /// a non-vacuous binder.
    EigenRename,
}

fn node_paths(d: &Derivation) -> Vec<Vec<usize>> {
    let mut paths = vec![Vec::new()];
    fn walk(d: &Derivation, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for (i, p) in d.premises.iter().enumerate() {
            prefix.push(i);
            out.push(prefix.clone());
            walk(p, prefix, out);
            prefix.pop();
        }
    }
    walk(d, &mut Vec::new(), &mut paths);
    paths
}

fn node_at<'a>(d: &'a Derivation, path: &[usize]) -> &'a Derivation {
    path.iter().fold(d, |n, &i| &n.premises[i])
}

fn replace_at(d: &Derivation, path: &[usize], new_node: Derivation) -> Derivation {
    if path.is_empty() {
        return new_node;
    }
    let mut clone = d.clone();
    clone.premises[path[0]] = replace_at(&d.premises[path[0]], &path[1..], new_node);
    clone
}

/// Applies a mutation if an applicable site exists.
pub fn mutate(rng: &mut StdRng, d: &Derivation, kind: Mutation) -> Option<Derivation> {
    let paths = node_paths(d);
    match kind {
        Mutation::TagArity => {
            let path = &paths[rng.gen_range(0..paths.len())];
            let node = node_at(d, path);
            let new_tag = match node.rule.arity() {
                0 => RuleTag::WeakL,
                1 => RuleTag::Cut,
                _ => RuleTag::WeakL,
            };
            let mut new_node = node.clone();
            new_node.rule = new_tag;
            Some(replace_at(d, path, new_node))
        }
        Mutation::Graffiti => {
            let candidates: Vec<&Vec<usize>> =
                paths.iter().filter(|p| !p.is_empty()).collect();
            if candidates.is_empty() {
                return None;
            }
            let path = candidates[rng.gen_range(0..candidates.len())];
            let node = node_at(d, path);
            let mut new_node = node.clone();
            let ant_len = new_node.conclusion.antecedent.len();
            let suc_len = new_node.conclusion.succedent.len();
            if ant_len + suc_len == 0 {
                return None;
            }
            let idx = rng.gen_range(0..ant_len + suc_len);
            let graffiti = Formula::atom0("Zmut");
            if idx < ant_len {
                new_node.conclusion.antecedent[idx] = graffiti;
            } else {
                new_node.conclusion.succedent[idx - ant_len] = graffiti;
            }
            Some(replace_at(d, path, new_node))
        }
        Mutation::Permute => {
            // a rotated premise can be genuinely re-derivable under rules
            // that insert, merge or swap on the left, so the permutation
            // targets premises of order-rigid parents and pairwise
            // distinct antecedents
            let candidates: Vec<&Vec<usize>> = paths
                .iter()
                .filter(|p| {
                    if p.is_empty() {
                        return false;
                    }
                    let parent = node_at(d, &p[..p.len() - 1]);
                    if matches!(parent.rule, RuleTag::WeakL | RuleTag::ContrL | RuleTag::ExchL) {
                        return false;
                    }
                    let ant = &node_at(d, p).conclusion.antecedent;
                    ant.len() >= 2
                        && ant
                            .iter()
                            .enumerate()
                            .all(|(i, f)| ant.iter().skip(i + 1).all(|g| g != f))
                })
                .collect();
            if candidates.is_empty() {
                return None;
            }
            let path = candidates[rng.gen_range(0..candidates.len())];
            let node = node_at(d, path);
            let mut new_node = node.clone();
            new_node.conclusion.antecedent.rotate_left(1);
            Some(replace_at(d, path, new_node))
        }
        Mutation::EigenRename => {
            let candidates: Vec<&Vec<usize>> = paths
                .iter()
                .filter(|p| {
                    let node = node_at(d, p);
                    match &node.rule {
                        RuleTag::AllR(_) => node
                            .conclusion
                            .succedent
                            .last()
                            .map(quantifier_is_binding)
                            .unwrap_or(false),
                        RuleTag::ExL(_) => node
                            .conclusion
                            .antecedent
                            .first()
                            .map(quantifier_is_binding)
                            .unwrap_or(false),
                        _ => false,
                    }
                })
                .collect();
            if candidates.is_empty() {
                return None;
            }
            let path = candidates[rng.gen_range(0..candidates.len())];
            let node = node_at(d, path);
            let mut new_node = node.clone();
            new_node.rule = match &node.rule {
                RuleTag::AllR(_) => RuleTag::AllR("zfresh".to_string()),
                RuleTag::ExL(_) => RuleTag::ExL("zfresh".to_string()),
                _ => unreachable!(),
            };
            Some(replace_at(d, path, new_node))
        }
    }
}

fn quantifier_is_binding(f: &Formula) -> bool {
    // renaming the eigenvariable only breaks the premise when the bound
    // variable actually occurs
    let one = f.instantiate(&Term::free("zfresh"));
    let two = f.instantiate(&Term::free("zother"));
    matches!((one, two), (Some(a), Some(b)) if a != b)
}

/// All formulas of symbol count at most `max_size` over the alphabet
/// `bot, P, Q, R(a)` with connectives and quantifiers, well formed by
/// construction.
pub fn enumerate_formulas(max_size: usize) -> Vec<Formula> {
    let mut by_size: Vec<Vec<Formula>> = vec![Vec::new(); max_size + 1];
    if max_size >= 1 {
        by_size[1] = vec![Formula::Falsum, Formula::atom0("P"), Formula::atom0("Q")];
    }
    if max_size >= 2 {
        by_size[2].push(Formula::atom("R", vec![Term::free("a")]));
    }
    for size in 2..=max_size {
        // quantifiers over bodies one symbol smaller
        let mut quantified = Vec::new();
        for body in &by_size[size - 1] {
            let binders = body.binder_names();
            let x = (0..)
                .map(|k| format!("x{k}"))
                .find(|v| !binders.contains(v))
                .unwrap();
            let bound_body = if body.free_vars().contains("a") {
                body.subst_free("a", &Term::Bound(x.clone()))
            } else {
                body.clone()
            };
            quantified.push(Formula::ForAll(x.clone(), Box::new(bound_body.clone())));
            quantified.push(Formula::Exists(x, Box::new(bound_body)));
        }
        by_size[size].extend(quantified);
        // binary connectives
        for left_size in 1..size.saturating_sub(1) {
            let right_size = size - 1 - left_size;
            if right_size == 0 || right_size >= by_size.len() {
                continue;
            }
            let pairs: Vec<(Formula, Formula)> = by_size[left_size]
                .iter()
                .flat_map(|l| by_size[right_size].iter().map(move |r| (l.clone(), r.clone())))
                .collect();
            for (l, r) in pairs {
                by_size[size].push(Formula::and(l.clone(), r.clone()));
                by_size[size].push(Formula::or(l.clone(), r.clone()));
                by_size[size].push(Formula::imp(l, r));
            }
        }
    }
    by_size.into_iter().flatten().collect()
}
