//! Built-in geometric theories, a corpus of classical sample proofs for
//! the transformation pipeline, and the scalable proof family used by the
//! growth benchmark.

use crate::calculus::{Derivation, RuleTag, Sequent, Theory};
use crate::gadgets::{
    all_left, all_right, and_left, and_right, apply_imp, axid, axid_in, chain, or_left, or_right,
};
use crate::syntax::{Formula, Signature, Term};
use crate::{Error, Result};

/// A named theory with the geometric goals exercised against it.
#[derive(Debug, Clone)]
pub struct TheoryCorpusEntry {
    pub name: String,
    pub theory: Theory,
    pub signature: Signature,
    pub sample_goals: Vec<Formula>,
}

/// One end-to-end test case: a classical derivation of a geometric goal.
#[derive(Debug, Clone)]
pub struct CorpusCase {
    pub name: String,
    pub theory: Theory,
    pub goal: Formula,
    pub proof: Derivation,
}

fn bound(name: &str) -> Term {
    Term::Bound(name.to_string())
}

fn free(name: &str) -> Term {
    Term::Free(name.to_string())
}

fn eq(l: Term, r: Term) -> Formula {
    Formula::atom("Eq", vec![l, r])
}

fn mul(l: Term, r: Term) -> Term {
    Term::app("mul", vec![l, r])
}

fn zero() -> Term {
    Term::cnst("zero")
}

fn one() -> Term {
    Term::cnst("one")
}

fn fields_theory() -> Theory {
    // invertibility of nonzero elements in its geometric form, a unit law,
    // commutativity and nontriviality
    let invertibility = Formula::forall(
        "x",
        Formula::or(
            eq(bound("x"), zero()),
            Formula::exists("y", eq(mul(bound("x"), bound("y")), one())),
        ),
    );
    let unit = Formula::forall("x", eq(mul(bound("x"), one()), bound("x")));
    let comm = Formula::forall(
        "x",
        Formula::forall("y", eq(mul(bound("x"), bound("y")), mul(bound("y"), bound("x")))),
    );
    let nontrivial = eq(one(), zero()).neg();
    Theory::new("fields", vec![invertibility, unit, comm, nontrivial]).expect("fields theory")
}

fn fields_signature() -> Signature {
    let mut sig = Signature::new();
    sig.declare_const("zero").unwrap();
    sig.declare_const("one").unwrap();
    sig.declare_fun("mul", 2).unwrap();
    sig.declare_fun("add", 2).unwrap();
    sig.declare_pred("Eq", 2).unwrap();
    sig
}

fn local_rings_theory() -> Theory {
    // one of x and 1-x is invertible
    let local = Formula::forall(
        "x",
        Formula::or(
            Formula::exists("y", eq(mul(bound("x"), bound("y")), one())),
            Formula::exists(
                "y",
                eq(mul(Term::app("sub", vec![one(), bound("x")]), bound("y")), one()),
            ),
        ),
    );
    let unit = Formula::forall("x", eq(mul(bound("x"), one()), bound("x")));
    let nontrivial = eq(zero(), one()).neg();
    Theory::new("local_rings", vec![local, unit, nontrivial]).expect("local rings theory")
}

fn local_rings_signature() -> Signature {
    let mut sig = Signature::new();
    sig.declare_const("zero").unwrap();
    sig.declare_const("one").unwrap();
    sig.declare_fun("mul", 2).unwrap();
    sig.declare_fun("add", 2).unwrap();
    sig.declare_fun("sub", 2).unwrap();
    sig.declare_pred("Eq", 2).unwrap();
    sig
}

fn robinson_theory() -> Theory {
    let suc = |t: Term| Term::app("suc", vec![t]);
    let zero_or_succ = Formula::forall(
        "x",
        Formula::or(
            eq(bound("x"), zero()),
            Formula::exists("y", eq(bound("x"), suc(bound("y")))),
        ),
    );
    let suc_inj = Formula::forall(
        "x",
        Formula::forall(
            "y",
            Formula::imp(
                eq(suc(bound("x")), suc(bound("y"))),
                eq(bound("x"), bound("y")),
            ),
        ),
    );
    let suc_nonzero = Formula::forall("x", eq(suc(bound("x")), zero()).neg());
    let add_zero = Formula::forall("x", eq(Term::app("add", vec![bound("x"), zero()]), bound("x")));
    let mul_zero = Formula::forall("x", eq(Term::app("mul", vec![bound("x"), zero()]), zero()));
    Theory::new(
        "robinson",
        vec![zero_or_succ, suc_inj, suc_nonzero, add_zero, mul_zero],
    )
    .expect("robinson theory")
}

fn robinson_signature() -> Signature {
    let mut sig = Signature::new();
    sig.declare_const("zero").unwrap();
    sig.declare_fun("suc", 1).unwrap();
    sig.declare_fun("add", 2).unwrap();
    sig.declare_fun("mul", 2).unwrap();
    sig.declare_pred("Eq", 2).unwrap();
    sig
}

fn lt(l: Term, r: Term) -> Formula {
    Formula::atom("Lt", vec![l, r])
}

fn dlo_theory() -> Theory {
    let density = Formula::forall(
        "x",
        Formula::forall(
            "y",
            Formula::imp(
                lt(bound("x"), bound("y")),
                Formula::exists(
                    "z",
                    Formula::and(lt(bound("x"), bound("z")), lt(bound("z"), bound("y"))),
                ),
            ),
        ),
    );
    let total = Formula::forall(
        "x",
        Formula::forall(
            "y",
            Formula::or(
                lt(bound("x"), bound("y")),
                Formula::or(
                    Formula::atom("Eq", vec![bound("x"), bound("y")]),
                    lt(bound("y"), bound("x")),
                ),
            ),
        ),
    );
    let irreflexive = Formula::forall("x", lt(bound("x"), bound("x")).neg());
    let transitive = Formula::forall(
        "x",
        Formula::forall(
            "y",
            Formula::forall(
                "z",
                Formula::imp(
                    Formula::and(lt(bound("x"), bound("y")), lt(bound("y"), bound("z"))),
                    lt(bound("x"), bound("z")),
                ),
            ),
        ),
    );
    let unbounded = Formula::forall("x", Formula::exists("y", lt(bound("x"), bound("y"))));
    Theory::new("dlo", vec![density, total, irreflexive, transitive, unbounded])
        .expect("dense linear order theory")
}

fn dlo_signature() -> Signature {
    let mut sig = Signature::new();
    sig.declare_pred("Lt", 2).unwrap();
    sig.declare_pred("Eq", 2).unwrap();
    sig
}

fn r2(l: Term, r: Term) -> Formula {
    Formula::atom("R", vec![l, r])
}

fn equiv_theory() -> Theory {
    let refl = Formula::forall("x", r2(bound("x"), bound("x")));
    let sym = Formula::forall(
        "x",
        Formula::forall("y", Formula::imp(r2(bound("x"), bound("y")), r2(bound("y"), bound("x")))),
    );
    let trans = Formula::forall(
        "x",
        Formula::forall(
            "y",
            Formula::forall(
                "z",
                Formula::imp(
                    Formula::and(r2(bound("x"), bound("y")), r2(bound("y"), bound("z"))),
                    r2(bound("x"), bound("z")),
                ),
            ),
        ),
    );
    Theory::new("equiv", vec![refl, sym, trans]).expect("equivalence theory")
}

fn equiv_signature() -> Signature {
    let mut sig = Signature::new();
    sig.declare_pred("R", 2).unwrap();
    sig
}

/// A classical derivation of `⇒ axioms[i][terms]`: the axiom leaf followed
/// by one universal instantiation per term, discharged by a cut.
pub fn instantiate_axiom(theory: &Theory, index: usize, terms: &[Term]) -> Result<Derivation> {
    let axiom = theory
        .axioms
        .get(index)
        .ok_or_else(|| Error::input(format!("theory {} has no axiom {index}", theory.name)))?;
    let leaf =
        Derivation::leaf(RuleTag::AxTheory(index), Sequent::new(vec![], vec![axiom.clone()]));
    if terms.is_empty() {
        return Ok(leaf);
    }
    let mut peeled = vec![axiom.clone()];
    for t in terms {
        let last = peeled.last().unwrap();
        let inst = last.instantiate(t).ok_or_else(|| {
            Error::input(format!("axiom {index} has fewer universal quantifiers than terms"))
        })?;
        peeled.push(inst);
    }
    let mut inst = axid(peeled.last().unwrap());
    for (k, t) in terms.iter().enumerate().rev() {
        inst = all_left(inst, peeled[k].clone(), t.clone());
    }
    Ok(chain(leaf, inst))
}

/// The proof family for the growth benchmark, indexed by `n ≥ 1`: a theory
/// with one seed disjunction and an implication chain, and a classical
/// derivation of the chain's end whose size grows linearly in `n`.
pub fn gen_family(name: &str, n: usize) -> Result<(Theory, Formula, Derivation)> {
    if name != "chain" {
        return Err(Error::input(format!("unknown generator family {name}")));
    }
    if n == 0 {
        return Err(Error::input("gen_family: n must be at least 1"));
    }
    let p = |i: usize, t: Term| Formula::atom(&format!("P{i}"), vec![t]);
    // axiom 0: ∀x (P1(x) ∨ P2(x)); axiom i: ∀x (Pi(x) → P(i+1)(x))
    let mut axioms = vec![Formula::forall(
        "x",
        Formula::or(p(1, bound("x")), p(2, bound("x"))),
    )];
    for i in 1..=n {
        axioms.push(Formula::forall(
            "x",
            Formula::imp(p(i, bound("x")), p(i + 1, bound("x"))),
        ));
    }
    let goal = Formula::forall("x", p(n + 1, bound("x")));
    let theory = Theory::new(&format!("chain{n}"), axioms)?;

    let a = free("a");
    // Pi(a) ⇒ P(n+1)(a) by chaining the implication axioms from i
    let chain_from = |start: usize| -> Result<Derivation> {
        if start == n + 1 {
            return Ok(axid(&p(n + 1, a.clone())));
        }
        let mut d = apply_imp(instantiate_axiom(&theory, start, std::slice::from_ref(&a))?);
        for i in start + 1..=n {
            let step = apply_imp(instantiate_axiom(&theory, i, std::slice::from_ref(&a))?);
            d = chain(d, step);
        }
        Ok(d)
    };
    let branch1 = chain_from(1)?;
    let branch2 = chain_from(2)?;
    let split = or_left(branch1, branch2);
    let seed = instantiate_axiom(&theory, 0, std::slice::from_ref(&a))?;
    let body = chain(seed, split);
    let proof = all_right(body, goal.clone(), "a");
    Ok((theory, goal, proof))
}

/// The built-in geometric theory corpus.
pub fn builtin_theories() -> Vec<TheoryCorpusEntry> {
    corpus_cases()
        .into_iter()
        .fold(Vec::<TheoryCorpusEntry>::new(), |mut entries, case| {
            if let Some(entry) = entries.iter_mut().find(|e| e.name == case.theory.name) {
                entry.sample_goals.push(case.goal);
            } else {
                let signature = match case.theory.name.as_str() {
                    "fields" => fields_signature(),
                    "local_rings" => local_rings_signature(),
                    "robinson" => robinson_signature(),
                    "dlo" => dlo_signature(),
                    "equiv" => equiv_signature(),
                    _ => Signature::new(),
                };
                entries.push(TheoryCorpusEntry {
                    name: case.theory.name.clone(),
                    theory: case.theory,
                    signature,
                    sample_goals: vec![case.goal],
                });
            }
            entries
        })
}

/// A classical proof of `⇒ goal` that detours through a two-formula
/// succedent and a right contraction: a disjunction proved by splitting
/// its own instance. Exercises the genuinely classical structural rules.
fn classical_detour_of_disjunction(
    theory: &Theory,
    axiom_index: usize,
) -> Result<(Formula, Derivation)> {
    let witness = free("a");
    let axiom = theory.axioms[axiom_index].clone();
    let Some(Formula::Or(l, r)) = axiom.instantiate(&witness) else {
        return Err(Error::input("classical detour needs a universal disjunction axiom"));
    };
    let (l, r) = (*l, *r);
    let disj = Formula::or(l.clone(), r.clone());
    let instance = instantiate_axiom(theory, axiom_index, &[witness])?;
    // A∨B ⇒ A, B
    let split = or_left(
        axid_in(vec![l.clone()], vec![l.clone(), r.clone()]),
        axid_in(vec![r.clone()], vec![l.clone(), r.clone()]),
    );
    let both = chain(instance, split); // ⇒ A, B
    let step1 = or_right(both, l.clone(), false); // ⇒ A, A∨B
    let step2 = Derivation::unary(
        RuleTag::ExchR,
        Sequent::new(vec![], vec![disj.clone(), l.clone()]),
        step1,
    );
    let step3 = or_right(step2, r.clone(), true); // ⇒ A∨B, A∨B
    let step4 = Derivation::unary(
        RuleTag::ContrR,
        Sequent::new(vec![], vec![disj.clone()]),
        step3,
    );
    let goal = axiom;
    let proof = all_right(step4, goal.clone(), "a");
    Ok((goal, proof))
}

/// A classical derivation of `⇒ φ ∨ ¬φ`: weakening in `bot` on the right,
/// both disjunction introductions and a right contraction. Rejected by the
/// single-succedent modes, so it witnesses essential classicality.
pub fn excluded_middle_proof(f: &Formula) -> Derivation {
    let lem = Formula::or(f.clone(), f.clone().neg());
    let d1 = axid(f);
    let d2 = crate::gadgets::weak_right_at(d1, Formula::Falsum, 1);
    let d3 = crate::gadgets::imp_right(d2); // ⇒ φ, φ→bot
    let d4 = or_right(d3, f.clone(), false); // ⇒ φ, φ∨¬φ
    let d5 = Derivation::unary(
        RuleTag::ExchR,
        Sequent::new(vec![], vec![lem.clone(), f.clone()]),
        d4,
    );
    let d6 = or_right(d5, f.clone().neg(), true); // ⇒ φ∨¬φ, φ∨¬φ
    Derivation::unary(RuleTag::ContrR, Sequent::new(vec![], vec![lem]), d6)
}

/// The two-axiom toy theory and its classical proof of `∀x P(x)`, which
/// eliminates the second disjunct through falsum.
pub fn toy_case() -> CorpusCase {
    let px = |t: Term| Formula::atom("P", vec![t]);
    let qx = |t: Term| Formula::atom("Q", vec![t]);
    let split_ax = Formula::forall("x", Formula::or(px(bound("x")), qx(bound("x"))));
    let no_q = Formula::forall("x", qx(bound("x")).neg());
    let theory = Theory::new("toy", vec![split_ax, no_q]).expect("toy theory");
    let goal = Formula::forall("x", px(bound("x")));

    let a = free("a");
    let seed = instantiate_axiom(&theory, 0, std::slice::from_ref(&a)).unwrap();
    let left = axid(&px(a.clone()));
    // Q(a) ⇒ P(a) through falsum
    let q_to_bot = apply_imp(instantiate_axiom(&theory, 1, std::slice::from_ref(&a)).unwrap());
    let bot_leaf = Derivation::leaf(
        RuleTag::AxBot,
        Sequent::new(vec![Formula::Falsum], vec![px(a.clone())]),
    );
    let right = chain(q_to_bot, bot_leaf);
    let body = chain(seed, or_left(left, right));
    let proof = all_right(body, goal.clone(), "a");
    CorpusCase { name: "toy_split".to_string(), theory, goal, proof }
}

/// All shipped end-to-end cases: classical derivations of geometric goals
/// over the built-in theories.
pub fn corpus_cases() -> Vec<CorpusCase> {
    let mut cases = Vec::new();
    let a = || free("a");
    let b = || free("b");

    // fields
    let fields = fields_theory();
    cases.push(CorpusCase {
        name: "fields_invertibility_axiom".into(),
        theory: fields.clone(),
        goal: fields.axioms[0].clone(),
        proof: Derivation::leaf(
            RuleTag::AxTheory(0),
            Sequent::new(vec![], vec![fields.axioms[0].clone()]),
        ),
    });
    {
        let instance = fields.axioms[0].instantiate(&one()).unwrap();
        cases.push(CorpusCase {
            name: "fields_invertibility_at_one".into(),
            theory: fields.clone(),
            goal: instance,
            proof: instantiate_axiom(&fields, 0, &[one()]).unwrap(),
        });
    }
    {
        // commuted disjunction: ∀x (∃y x·y=1 ∨ x=0)
        let eq_zero = eq(bound("x"), zero());
        let inv = Formula::exists("y", eq(mul(bound("x"), bound("y")), one()));
        let goal = Formula::forall("x", Formula::or(inv.clone(), eq_zero.clone()));
        let eq_zero_a = eq(a(), zero());
        let inv_a = Formula::exists("y", eq(mul(a(), bound("y")), one()));
        let seed = instantiate_axiom(&fields, 0, &[a()]).unwrap();
        let left = or_right(axid(&eq_zero_a), inv_a.clone(), false);
        let right = or_right(axid(&inv_a), eq_zero_a.clone(), true);
        let body = chain(seed, or_left(left, right));
        cases.push(CorpusCase {
            name: "fields_commuted_invertibility".into(),
            theory: fields.clone(),
            goal: goal.clone(),
            proof: all_right(body, goal, "a"),
        });
    }
    {
        let (goal, proof) =
            classical_detour_of_disjunction(&fields, 0).expect("fields detour");
        cases.push(CorpusCase {
            name: "fields_detour_contraction".into(),
            theory: fields.clone(),
            goal,
            proof,
        });
    }

    // local rings
    let local = local_rings_theory();
    cases.push(CorpusCase {
        name: "local_rings_localness_at_one".into(),
        theory: local.clone(),
        goal: local.axioms[0].instantiate(&one()).unwrap(),
        proof: instantiate_axiom(&local, 0, &[one()]).unwrap(),
    });
    {
        let (goal, proof) =
            classical_detour_of_disjunction(&local, 0).expect("local rings detour");
        cases.push(CorpusCase {
            name: "local_rings_detour_contraction".into(),
            theory: local.clone(),
            goal,
            proof,
        });
    }

    // robinson
    let robinson = robinson_theory();
    cases.push(CorpusCase {
        name: "robinson_zero_or_successor".into(),
        theory: robinson.clone(),
        goal: robinson.axioms[0].clone(),
        proof: Derivation::leaf(
            RuleTag::AxTheory(0),
            Sequent::new(vec![], vec![robinson.axioms[0].clone()]),
        ),
    });
    cases.push(CorpusCase {
        name: "robinson_one_is_not_zero".into(),
        theory: robinson.clone(),
        goal: robinson.axioms[2].instantiate(&zero()).unwrap(),
        proof: instantiate_axiom(&robinson, 2, &[zero()]).unwrap(),
    });

    // dense linear orders
    let dlo = dlo_theory();
    cases.push(CorpusCase {
        name: "dlo_density_axiom".into(),
        theory: dlo.clone(),
        goal: dlo.axioms[0].clone(),
        proof: Derivation::leaf(
            RuleTag::AxTheory(0),
            Sequent::new(vec![], vec![dlo.axioms[0].clone()]),
        ),
    });
    {
        // double density: between any two points there are two nested
        // intermediate points; the inner existential reuses the density
        // axiom's bound variable so the instances line up syntactically
        let inner = Formula::exists(
            "w",
            Formula::and(
                lt(bound("u"), bound("w")),
                Formula::exists(
                    "z",
                    Formula::and(lt(bound("w"), bound("z")), lt(bound("z"), bound("v"))),
                ),
            ),
        );
        let goal = Formula::forall(
            "u",
            Formula::forall("v", Formula::imp(lt(bound("u"), bound("v")), inner)),
        );
        // Lt(a,b) ⇒ ∃z (Lt(a,z) ∧ Lt(z,b))
        let first = apply_imp(instantiate_axiom(&dlo, 0, &[a(), b()]).unwrap());
        // Lt(a,c) ∧ Lt(c,b) ⇒ Lt(a,c) ∧ ∃z (Lt(c,z) ∧ Lt(z,b))
        let c = free("c");
        let second = apply_imp(instantiate_axiom(&dlo, 0, &[c.clone(), b()]).unwrap());
        let left_conj = and_left(axid(&lt(a(), c.clone())), lt(c.clone(), b()), true);
        let right_conj = and_left(second, lt(a(), c.clone()), false);
        let pair = and_right(left_conj, right_conj);
        // wrap into the nested existential of the goal
        let target_inner = Formula::exists(
            "w",
            Formula::and(
                lt(a(), bound("w")),
                Formula::exists(
                    "z",
                    Formula::and(lt(bound("w"), bound("z")), lt(bound("z"), b())),
                ),
            ),
        );
        let witnessed = crate::gadgets::ex_right(pair, target_inner.clone(), c.clone());
        let opened = crate::gadgets::ex_left(
            witnessed,
            Formula::exists(
                "z",
                Formula::and(lt(a(), bound("z")), lt(bound("z"), b())),
            ),
            "c",
        );
        let body = chain(first, opened);
        let folded = crate::gadgets::imp_right(body);
        let peeled_once = goal.instantiate(&a()).unwrap();
        let proof = all_right(all_right(folded, peeled_once, "b"), goal.clone(), "a");
        cases.push(CorpusCase {
            name: "dlo_double_density".into(),
            theory: dlo.clone(),
            goal,
            proof,
        });
    }

    // equivalence relations
    let equiv = equiv_theory();
    cases.push(CorpusCase {
        name: "equiv_reflexivity_axiom".into(),
        theory: equiv.clone(),
        goal: equiv.axioms[0].clone(),
        proof: Derivation::leaf(
            RuleTag::AxTheory(0),
            Sequent::new(vec![], vec![equiv.axioms[0].clone()]),
        ),
    });
    {
        // relatedness forces self-relatedness on the right: R(u,v) → R(v,v)
        let goal = Formula::forall(
            "u",
            Formula::forall(
                "v",
                Formula::imp(r2(bound("u"), bound("v")), r2(bound("v"), bound("v"))),
            ),
        );
        let sym = apply_imp(instantiate_axiom(&equiv, 1, &[a(), b()]).unwrap());
        let pair = and_right(sym, axid(&r2(a(), b())));
        let trans = apply_imp(instantiate_axiom(&equiv, 2, &[b(), a(), b()]).unwrap());
        let body = chain(pair, trans);
        let folded = crate::gadgets::imp_right(body);
        let peeled_once = goal.instantiate(&a()).unwrap();
        let proof = all_right(all_right(folded, peeled_once, "b"), goal.clone(), "a");
        cases.push(CorpusCase { name: "equiv_right_reflexive".into(), theory: equiv.clone(), goal, proof });
    }

    // the falsum-driven toy case
    cases.push(toy_case());

    cases
}
