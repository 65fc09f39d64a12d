//! The end-to-end transformation: a classical derivation of a geometric
//! implication in a theory with class-Q axioms becomes a checked
//! intuitionistic derivation of the same endsequent, without cut
//! elimination.
//!
//! The pipeline records every intermediate derivation:
//!
//! 1. `step1` — the placeholder translation of the input, a minimal-mode
//!    derivation of `⇒ φ^E` in the translated theory;
//! 2. `step2` — the same with every translated theory axiom discharged
//!    against the original theory through its class-Q embedding, an
//!    intuitionistic derivation of `⇒ φ^E` in the original theory;
//! 3. `step3` — the universal prefix stripped with fresh variables and the
//!    antecedent embedded, giving `ψ ⇒ θ^E` for the matrix `ψ → θ`;
//! 4. `step4` — composed with the class-J embedding, `ψ ⇒ (θ→E)→E`;
//! 5. `step5` — the placeholder instantiated at `θ` throughout, giving
//!    `ψ ⇒ (θ→θ)→θ`;
//!
//! after which modus ponens against `⇒ θ→θ`, an implication introduction
//! and the re-generalized universal prefix restore the original goal.

use crate::calculus::{check, size, Derivation, Mode, RuleTag, Sequent, SizeReport, Theory};
use crate::classes::{classify, validate_theory, TheoryRequirement};
use crate::combinators::{embed_j, embed_q};
use crate::gadgets::{
    all_left, all_right, alpha_conversion, apply_imp, axid, chain, imp_left, imp_right,
};
use crate::substitution::subst_placeholder_deriv;
use crate::syntax::{fresh_free_var, Formula, Term};
use crate::translation::{translate_derivation, TranslatedTheory};
use crate::{Error, Result};
use std::collections::BTreeSet;

/// Every artifact of one transformation, each independently checkable.
#[derive(Debug, Clone)]
pub struct PipelineTrace {
    pub input: Derivation,
    /// Minimal mode, translated theory: `⇒ φ^E`.
    pub step1: Derivation,
    /// Intuitionistic, original theory: `⇒ φ^E`.
    pub step2: Derivation,
    /// Intuitionistic: `ψ ⇒ θ^E` after stripping the universal prefix
    /// (empty antecedent when the matrix has no implication).
    pub step3: Derivation,
    /// Intuitionistic: `ψ ⇒ (θ→E)→E`.
    pub step4: Derivation,
    /// Intuitionistic: `ψ ⇒ (θ→θ)→θ`.
    pub step5: Derivation,
    /// Intuitionistic, original theory: `⇒ φ`.
    pub output: Derivation,
    /// Size reports for input, steps 1–5 and output, in order.
    pub sizes: Vec<(String, SizeReport)>,
}

pub const STEP_NAMES: [&str; 7] =
    ["input", "step1", "step2", "step3", "step4", "step5", "output"];

/// The matrix of a geometric implication after stripping its universal
/// prefix: an implication between positive formulas or a single positive
/// formula.
struct GoalShape {
    prefix: Vec<String>,
    antecedent: Option<Formula>,
    consequent: Formula,
}

fn decompose_goal(goal: &Formula) -> Result<GoalShape> {
    let mut prefix = Vec::new();
    let mut matrix = goal.clone();
    while let Formula::ForAll(x, b) = matrix {
        prefix.push(x.clone());
        matrix = b.as_ref().clone();
    }
    match matrix {
        Formula::Imp(l, r) => Ok(GoalShape {
            prefix,
            antecedent: Some(l.as_ref().clone()),
            consequent: r.as_ref().clone(),
        }),
        positive => Ok(GoalShape { prefix, antecedent: None, consequent: positive }),
    }
}

fn ensure(ok: bool, msg: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::input(msg.to_string()))
    }
}

fn recheck(d: &Derivation, mode: Mode, theory: &Theory, stage: &str) -> Result<()> {
    let report = check(d, mode, theory);
    if report.is_ok() {
        Ok(())
    } else {
        Err(Error::internal(format!(
            "{stage} failed its {mode} re-check; this is a transformation bug:\n{report}"
        )))
    }
}

/// Replaces every theory-axiom leaf of a derivation over the translated
/// theory by a derivation of the translated axiom from the original axiom
/// and its class-Q embedding.
fn discharge_translated_axioms(d: &Derivation, theory: &Theory) -> Result<Derivation> {
    match &d.rule {
        RuleTag::AxTheory(i) => {
            let axiom = theory
                .axioms
                .get(*i)
                .ok_or_else(|| Error::internal(format!("axiom index {i} out of range")))?;
            let use_axiom =
                Derivation::leaf(RuleTag::AxTheory(*i), Sequent::new(vec![], vec![axiom.clone()]));
            let embedded = chain(use_axiom, apply_imp(embed_q(axiom)?));
            crate::calculus::weaken_to(
                &embedded,
                &d.conclusion.antecedent,
                &d.conclusion.succedent,
            )
        }
        _ => {
            let premises = d
                .premises
                .iter()
                .map(|p| discharge_translated_axioms(p, theory))
                .collect::<Result<Vec<_>>>()?;
            Ok(Derivation { conclusion: d.conclusion.clone(), rule: d.rule.clone(), premises })
        }
    }
}

/// Transforms a classical derivation of `⇒ goal` in `theory` into an
/// intuitionistic one, recording all intermediate artifacts.
pub fn barr_transform(d: &Derivation, theory: &Theory, goal: &Formula) -> Result<PipelineTrace> {
    // preconditions
    let input_report = check(d, Mode::Classical, theory);
    ensure(
        input_report.is_ok(),
        &format!("barr_transform: input fails the classical check:\n{input_report}"),
    )?;
    ensure(
        d.conclusion == Sequent::new(vec![], vec![goal.clone()]),
        "barr_transform: the input must derive exactly `⇒ goal`",
    )?;
    let theory_report = validate_theory(theory, TheoryRequirement::InQ)?;
    if !theory_report.is_ok() {
        let mut msg = String::from("barr_transform: theory axioms outside the class Q:");
        for (_, line) in &theory_report.failing {
            msg.push_str("\n  ");
            msg.push_str(line);
        }
        return Err(Error::input(msg));
    }
    ensure(
        classify(goal)?.geometric_implication,
        "barr_transform: the goal is not a geometric implication",
    )?;

    let translated = TranslatedTheory::new(theory)?;
    let theory_e = translated.as_theory();

    // step 1: translate the whole derivation
    let step1 = translate_derivation(d, theory)?;
    recheck(&step1, Mode::Minimal, &theory_e, "step1")?;

    // step 2: discharge the translated axioms against the original theory
    let step2 = discharge_translated_axioms(&step1, theory)?;
    recheck(&step2, Mode::Intuitionistic, theory, "step2")?;

    // step 3: strip the universal prefix with fresh variables, then embed
    // the antecedent of the matrix
    let shape = decompose_goal(goal)?;
    let mut avoid: BTreeSet<String> = d.all_var_names();
    avoid.extend(goal.all_var_names());
    for ax in &theory.axioms {
        avoid.extend(ax.all_var_names());
    }
    let mut fresh_vars = Vec::new();
    for _ in 0..shape.prefix.len() {
        let v = fresh_free_var(&avoid);
        avoid.insert(v.clone());
        fresh_vars.push(v);
    }

    let goal_e = crate::translation::e_translate(goal)?;
    // peeled translated goal: goal_e, then each quantifier instantiated
    let mut peeled_e = vec![goal_e.clone()];
    for v in &fresh_vars {
        let last = peeled_e.last().unwrap();
        let inst = last
            .instantiate(&Term::Free(v.clone()))
            .ok_or_else(|| Error::internal("goal prefix shorter than expected"))?;
        peeled_e.push(inst);
    }
    let matrix_e = peeled_e.last().unwrap().clone();

    let stripped = if fresh_vars.is_empty() {
        step2.clone()
    } else {
        // φ^E ⇒ matrix, by a chain of universal instantiations
        let mut inst = axid(&matrix_e);
        for (k, v) in fresh_vars.iter().enumerate().rev() {
            inst = all_left(inst, peeled_e[k].clone(), Term::Free(v.clone()));
        }
        chain(step2.clone(), inst)
    };

    // instantiated matrix pieces of the original goal
    let subst_all = |f: &Formula| -> Formula {
        let mut out = f.clone();
        for (x, v) in shape.prefix.iter().zip(&fresh_vars) {
            out = out.subst_bound(x, &Term::Free(v.clone()));
        }
        out
    };
    let theta = subst_all(&shape.consequent);
    let psi = shape.antecedent.as_ref().map(&subst_all);

    let step3 = match &psi {
        Some(psi) => {
            // matrix_e is ψ^E → θ^E ; modus ponens against the embedding
            let Formula::Imp(psi_e, theta_e) = &matrix_e else {
                return Err(Error::internal("translated matrix lost its implication"));
            };
            let mp = imp_left(axid(psi_e), axid(theta_e));
            let applied = chain(stripped, mp);
            chain(apply_imp(embed_q(psi)?), applied)
        }
        None => stripped,
    };
    recheck(&step3, Mode::Intuitionistic, theory, "step3")?;

    // step 4: compose with the class-J embedding of θ
    let step4 = chain(step3.clone(), apply_imp(embed_j(&theta)?));
    recheck(&step4, Mode::Intuitionistic, theory, "step4")?;

    // step 5: substitute θ for the placeholder everywhere; the inserted
    // copies may carry renamed binders, so read them back from the root
    let step5 = subst_placeholder_deriv(&step4, &theta, theory)?;
    recheck(&step5, Mode::Intuitionistic, theory, "step5")?;

    // the root is now ψ ⇒ (θ → θ') → θ' with θ' an alpha-variant of θ
    let Some(Formula::Imp(theta_imp, theta_prime)) = step5.conclusion.succedent.last() else {
        return Err(Error::internal("step5 lost its implication shape"));
    };
    let theta_prime = theta_prime.as_ref().clone();
    let Formula::Imp(theta_orig, _) = theta_imp.as_ref() else {
        return Err(Error::internal("step5 lost its inner implication"));
    };
    let theta_orig = theta_orig.as_ref().clone();

    // finish: eliminate (θ→θ')→θ' against the alpha conversions between θ
    // and θ', reintroduce the implication and the universal prefix
    let conv_to = alpha_conversion(&theta_orig, &theta_prime)
        .ok_or_else(|| Error::internal("substitution broke alpha equivalence"))?;
    let conv_back = alpha_conversion(&theta_prime, &theta)
        .ok_or_else(|| Error::internal("substitution broke alpha equivalence"))?;
    let elim = imp_left(imp_right(conv_to), conv_back);
    let u1 = chain(step5.clone(), elim);
    let with_theta = match &psi {
        Some(_) => imp_right(u1),
        None => u1,
    };

    // re-generalize the universal prefix
    let mut peeled = vec![goal.clone()];
    for v in &fresh_vars {
        let last = peeled.last().unwrap();
        peeled.push(last.instantiate(&Term::Free(v.clone())).expect("prefix"));
    }
    let mut output = with_theta;
    for (k, v) in fresh_vars.iter().enumerate().rev() {
        output = all_right(output, peeled[k].clone(), v);
    }
    recheck(&output, Mode::Intuitionistic, theory, "output")?;
    if output.conclusion != d.conclusion {
        return Err(Error::internal(format!(
            "pipeline changed the endsequent: {} became {}",
            d.conclusion, output.conclusion
        )));
    }

    let sizes = [
        ("input", d),
        ("step1", &step1),
        ("step2", &step2),
        ("step3", &step3),
        ("step4", &step4),
        ("step5", &step5),
        ("output", &output),
    ]
    .into_iter()
    .map(|(name, deriv)| (name.to_string(), size(deriv)))
    .collect();

    Ok(PipelineTrace {
        input: d.clone(),
        step1,
        step2,
        step3,
        step4,
        step5,
        output,
        sizes,
    })
}

/// Least-squares fit of output size against input size over a family of
/// traces, plus per-step breakdown.
#[derive(Debug, Clone)]
pub struct GrowthFit {
    /// Log-log least-squares slope of output vs input symbol count.
    pub slope: f64,
    /// Largest output/input symbol ratio over the family.
    pub max_ratio: f64,
    /// Mean symbol ratio of each step against the input.
    pub per_step: Vec<(String, f64)>,
    /// The raw (input, output) symbol counts.
    pub points: Vec<(usize, usize)>,
}

/// Computes the growth fit from the per-trace size tables.
pub fn growth_fit_from_sizes(sizes: &[Vec<(String, SizeReport)>]) -> Result<GrowthFit> {
    if sizes.len() < 3 {
        return Err(Error::input(format!(
            "growth report needs at least 3 traces, got {}",
            sizes.len()
        )));
    }
    let lookup = |row: &Vec<(String, SizeReport)>, name: &str| -> Result<SizeReport> {
        row.iter()
            .find(|(n, _)| n == name)
            .map(|(_, r)| *r)
            .ok_or_else(|| Error::input(format!("trace sizes lack a `{name}` entry")))
    };
    let mut points = Vec::new();
    for row in sizes {
        let input = lookup(row, "input")?;
        let output = lookup(row, "output")?;
        points.push((input.symbol_count, output.symbol_count));
    }
    let xs: Vec<f64> = points.iter().map(|(i, _)| (*i as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|(_, o)| (*o as f64).ln()).collect();
    let n = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let var_x: f64 = xs.iter().map(|x| (x - mean_x).powi(2)).sum();
    if var_x <= 1e-12 {
        return Err(Error::input(
            "growth report: all inputs have the same size, the slope is undefined",
        ));
    }
    let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mean_x) * (y - mean_y)).sum();
    let slope = cov / var_x;
    let max_ratio = points
        .iter()
        .map(|(i, o)| *o as f64 / *i as f64)
        .fold(0.0f64, f64::max);

    let mut per_step = Vec::new();
    for name in STEP_NAMES.iter().skip(1) {
        let mut total = 0.0;
        for row in sizes {
            let input = lookup(row, "input")?;
            let step = lookup(row, name)?;
            total += step.symbol_count as f64 / input.symbol_count as f64;
        }
        per_step.push((name.to_string(), total / sizes.len() as f64));
    }

    Ok(GrowthFit { slope, max_ratio, per_step, points })
}

/// Growth fit over full traces; see [`growth_fit_from_sizes`].
pub fn growth_report(traces: &[PipelineTrace]) -> Result<GrowthFit> {
    let sizes: Vec<_> = traces.iter().map(|t| t.sizes.clone()).collect();
    growth_fit_from_sizes(&sizes)
}
