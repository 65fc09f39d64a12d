//! Acceptance suite: one test per shipped criterion, each printing a
//! PASS line with its measured numbers (run with `--nocapture` to see
//! them). Every tolerance is pinned here in code.

mod common;

use common::{enumerate_formulas, mutate, quantify, DerivationGen, FormulaGen, Mutation};
use rand::prelude::*;
use rand::rngs::StdRng;
use seqcalc::bench::{run_bench, BenchConfig};
use seqcalc::calculus::{check, size, Derivation, Mode, RuleTag, Sequent, Theory};
use seqcalc::classes::classify;
use seqcalc::combinators::{embed_j, embed_q, embed_r, lemma, lemma_mode, LemmaArgs};
use seqcalc::corpus::{builtin_theories, corpus_cases};
use seqcalc::pipeline::barr_transform;
use seqcalc::substitution::subst_placeholder_deriv;
use seqcalc::syntax::{subst_placeholder, Formula, Term};
use seqcalc::translation::e_translate;
use std::collections::BTreeSet;
use std::fs;
use std::time::Instant;

fn test_theory() -> Theory {
    let ax1 = Formula::forall("x0", Formula::atom("R", vec![Term::Bound("x0".into())]));
    let ax2 = Formula::or(Formula::atom0("P"), Formula::atom0("Q"));
    Theory::new("testbed", vec![ax1, ax2]).unwrap()
}

/// Criterion 1: 1,000 generated valid derivations per mode pass the
/// checker; 1,000 single-point mutations each produce at least one
/// violation; all inside 60 seconds.
#[test]
fn criterion1_kernel_soundness() {
    let start = Instant::now();
    let theory = test_theory();
    let mut rng = StdRng::seed_from_u64(0xC0FFEE);
    let mut pool: Vec<(Mode, Derivation)> = Vec::new();

    for mode in [Mode::Classical, Mode::Intuitionistic, Mode::Minimal] {
        for i in 0..1000 {
            let generator = DerivationGen {
                mode,
                theory: theory.clone(),
                formulas: FormulaGen { allow_placeholder: false, max_depth: 2 },
                steps: rng.gen_range(3..16),
            };
            let d = generator.gen(&mut rng);
            let report = check(&d, mode, &theory);
            assert!(report.is_ok(), "{mode} derivation {i} rejected:\n{report}");
            // mode monotonicity on the fly
            if mode == Mode::Minimal {
                assert!(check(&d, Mode::Intuitionistic, &theory).is_ok());
            }
            if mode == Mode::Intuitionistic {
                assert!(check(&d, Mode::Classical, &theory).is_ok());
            }
            if pool.len() < 600 || i % 7 == 0 {
                pool.push((mode, d));
            }
        }
    }

    let kinds = [
        Mutation::TagArity,
        Mutation::Graffiti,
        Mutation::Permute,
        Mutation::EigenRename,
    ];
    let mut mutated = 0;
    let mut attempts = 0;
    while mutated < 1000 {
        attempts += 1;
        assert!(attempts < 50_000, "mutation sites too scarce");
        let (mode, d) = &pool[rng.gen_range(0..pool.len())];
        let kind = kinds[rng.gen_range(0..kinds.len())];
        let Some(bad) = mutate(&mut rng, d, kind) else { continue };
        let report = check(&bad, *mode, &theory);
        assert!(
            !report.is_ok(),
            "mutation {kind:?} left the derivation valid:\n{}",
            seqcalc::sexp::print_derivation(&bad)
        );
        mutated += 1;
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "criterion 1 took {elapsed:?}");
    println!(
        "[PASS] criterion 1: 3000 valid derivations accepted, 1000 mutations rejected in {elapsed:?}"
    );
}

/// Criterion 2: lemma items 1-7, 9, 10 pass the minimal check on 50 random
/// instantiations each; item 8 passes intuitionistically and fails the
/// minimal check.
#[test]
fn criterion2_lemma_suite() {
    let mut rng = StdRng::seed_from_u64(0xBEEF);
    let formulas = FormulaGen { allow_placeholder: false, max_depth: 3 };
    let empty = Theory::empty();
    let mut item8_minimal_failures = 0;

    for id in 1u8..=10 {
        for i in 0..50 {
            let args = match id {
                1 => LemmaArgs::One(formulas.gen(&mut rng)),
                2..=8 => LemmaArgs::Two(formulas.gen(&mut rng), formulas.gen(&mut rng)),
                _ => {
                    let body = formulas.gen(&mut rng);
                    let (var, body) = quantify(&mut rng, body);
                    LemmaArgs::Template { var, body }
                }
            };
            let d = lemma(id, &args).unwrap_or_else(|e| panic!("item {id} instance {i}: {e}"));
            let mode = lemma_mode(id);
            let report = check(&d, mode, &empty);
            assert!(report.is_ok(), "item {id} instance {i} fails {mode}:\n{report}");
            if id == 8 && !check(&d, Mode::Minimal, &empty).is_ok() {
                item8_minimal_failures += 1;
            }
        }
    }
    assert!(
        item8_minimal_failures >= 1,
        "no item 8 instance witnessed the bot axiom"
    );
    println!(
        "[PASS] criterion 2: 10 x 50 lemma instances check in their modes; {item8_minimal_failures}/50 item-8 instances fail the minimal check"
    );
}

/// Criterion 3: the class embeddings re-check intuitionistically on every
/// class member enumerated exhaustively by symbol count over the small
/// signature, plus a random deeper sample.
#[test]
fn criterion3_embedding_suite() {
    let empty = Theory::empty();
    let formulas = enumerate_formulas(5);
    let (mut nq, mut nr, mut nj) = (0usize, 0usize, 0usize);
    for f in &formulas {
        let m = classify(f).unwrap();
        if m.in_q {
            let d = embed_q(f).unwrap();
            let report = check(&d, Mode::Intuitionistic, &empty);
            assert!(report.is_ok(), "embed_q({f}):\n{report}");
            assert_eq!(
                d.conclusion,
                Sequent::new(vec![], vec![Formula::imp(f.clone(), e_translate(f).unwrap())])
            );
            nq += 1;
        }
        if m.in_r {
            let d = embed_r(f).unwrap();
            let report = check(&d, Mode::Intuitionistic, &empty);
            assert!(report.is_ok(), "embed_r({f}):\n{report}");
            nr += 1;
        }
        if m.in_j {
            let d = embed_j(f).unwrap();
            let report = check(&d, Mode::Intuitionistic, &empty);
            assert!(report.is_ok(), "embed_j({f}):\n{report}");
            nj += 1;
        }
    }
    // deeper random members for the quantifier nesting the small bound
    // cannot reach
    let mut rng = StdRng::seed_from_u64(0xA11CE);
    let gen = FormulaGen { allow_placeholder: false, max_depth: 5 };
    let mut deep = 0;
    let mut tries = 0;
    while deep < 150 && tries < 20_000 {
        tries += 1;
        let f = gen.gen(&mut rng);
        let m = classify(&f).unwrap();
        if !m.in_q {
            continue;
        }
        let d = embed_q(&f).unwrap();
        let report = check(&d, Mode::Intuitionistic, &empty);
        assert!(report.is_ok(), "embed_q({f}):\n{report}");
        deep += 1;
    }
    println!(
        "[PASS] criterion 3: embeddings re-check on {} exhaustive formulas (Q:{nq} R:{nr} J:{nj}) plus {deep} deep random members",
        formulas.len()
    );
}

// An independently coded recognizer, following the inductive clauses
// literally with one function per class, for the classifier cross-check.
mod brute {
    use seqcalc::syntax::Formula;

    pub fn positive(f: &Formula) -> bool {
        match f {
            Formula::Falsum | Formula::Atom(..) => true,
            Formula::And(l, r) | Formula::Or(l, r) => positive(l) && positive(r),
            Formula::Exists(_, b) => positive(b),
            _ => false,
        }
    }

    pub fn geometric(f: &Formula) -> bool {
        // strip the universal prefix, then look at the matrix
        let mut matrix = f;
        while let Formula::ForAll(_, b) = matrix {
            matrix = b;
        }
        match matrix {
            Formula::Imp(l, r) => positive(l) && positive(r),
            other => positive(other),
        }
    }

    pub fn in_q(f: &Formula) -> bool {
        match f {
            Formula::Falsum | Formula::Atom(..) => true,
            Formula::And(l, r) | Formula::Or(l, r) => in_q(l) && in_q(r),
            Formula::Exists(_, b) | Formula::ForAll(_, b) => in_q(b),
            Formula::Imp(l, r) => in_j(l) && in_q(r),
            Formula::Placeholder => false,
        }
    }

    pub fn in_r(f: &Formula) -> bool {
        match f {
            Formula::Falsum => true,
            Formula::And(l, r) | Formula::Or(l, r) => in_r(l) && in_r(r),
            Formula::ForAll(_, b) => in_r(b),
            Formula::Imp(l, r) => in_j(l) && in_r(r),
            _ => false,
        }
    }

    pub fn in_j(f: &Formula) -> bool {
        match f {
            Formula::Falsum | Formula::Atom(..) => true,
            Formula::And(l, r) | Formula::Or(l, r) => in_j(l) && in_j(r),
            Formula::Exists(_, b) => in_j(b),
            Formula::Imp(l, r) => in_r(l) && in_j(r),
            _ => false,
        }
    }
}

/// Criterion 4: the one-pass classifier agrees with the brute-force
/// recognizer on an exhaustive small-formula universe and on 10,000 random
/// deeper formulas.
#[test]
fn criterion4_classifier_crosscheck() {
    let exhaustive = enumerate_formulas(6);
    for f in &exhaustive {
        let m = classify(f).unwrap();
        assert_eq!(m.positive, brute::positive(f), "positive: {f}");
        assert_eq!(m.geometric_implication, brute::geometric(f), "geometric: {f}");
        assert_eq!(m.in_q, brute::in_q(f), "Q: {f}");
        assert_eq!(m.in_r, brute::in_r(f), "R: {f}");
        assert_eq!(m.in_j, brute::in_j(f), "J: {f}");
    }
    let mut rng = StdRng::seed_from_u64(0xD15EA5E);
    let gen = FormulaGen { allow_placeholder: false, max_depth: 8 };
    for _ in 0..10_000 {
        let f = gen.gen(&mut rng);
        let m = classify(&f).unwrap();
        assert_eq!(m.positive, brute::positive(&f), "positive: {f}");
        assert_eq!(m.geometric_implication, brute::geometric(&f), "geometric: {f}");
        assert_eq!(m.in_q, brute::in_q(&f), "Q: {f}");
        assert_eq!(m.in_r, brute::in_r(&f), "R: {f}");
        assert_eq!(m.in_j, brute::in_j(&f), "J: {f}");
    }
    println!(
        "[PASS] criterion 4: classifier agrees with the brute-force recognizer on {} exhaustive and 10000 random formulas",
        exhaustive.len()
    );
}

/// Criterion 5: every shipped corpus case transforms into an
/// intuitionistic derivation with the identical endsequent.
#[test]
fn criterion5_end_to_end_conservativity() {
    let cases = corpus_cases();
    assert!(cases.len() >= 10, "corpus has only {} cases", cases.len());
    let theories: BTreeSet<&str> =
        cases.iter().map(|c| c.theory.name.as_str()).collect();
    let example_theories: BTreeSet<&str> = theories
        .iter()
        .copied()
        .filter(|n| ["fields", "local_rings", "robinson", "dlo", "equiv"].contains(n))
        .collect();
    assert!(
        example_theories.len() >= 4,
        "corpus spans only {example_theories:?}"
    );
    let entries = builtin_theories();
    assert!(entries.len() >= 4);

    for case in &cases {
        let trace = barr_transform(&case.proof, &case.theory, &case.goal)
            .unwrap_or_else(|e| panic!("{}: {e}", case.name));
        assert_eq!(
            trace.output.conclusion, case.proof.conclusion,
            "{}: endsequent changed",
            case.name
        );
        let report = check(&trace.output, Mode::Intuitionistic, &case.theory);
        assert!(report.is_ok(), "{}:\n{report}", case.name);
    }
    println!(
        "[PASS] criterion 5: {} corpus cases over {} theories transform with identical endsequents",
        cases.len(),
        theories.len()
    );
}

/// Criterion 6: over the chain family n = 2..50, the log-log slope of
/// output against input symbol count stays at or below 4.0, successive
/// ratios show no exponential trend, and the whole run finishes inside
/// five minutes.
#[test]
fn criterion6_no_speedup_growth() {
    let start = Instant::now();
    let dir = std::env::temp_dir().join(format!("seqcalc_acc6_{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    let cfg = BenchConfig {
        family: "chain".into(),
        n_min: 2,
        n_max: 50,
        output_dir: dir.clone(),
    };
    // transformed derivations are thousands of inferences tall and the
    // recursive walkers need more than the 2 MiB test-thread stack
    let outcome = std::thread::Builder::new()
        .stack_size(256 << 20)
        .spawn(move || run_bench(&cfg).unwrap())
        .unwrap()
        .join()
        .unwrap();
    let elapsed = start.elapsed();

    assert!(
        outcome.fit.slope <= 4.0,
        "log-log slope {} exceeds 4.0",
        outcome.fit.slope
    );

    // successive-ratio test: ratios of consecutive output sizes must not
    // themselves grow by more than 1.5x
    let outputs: Vec<f64> = outcome
        .rows
        .iter()
        .map(|r| {
            r.sizes.iter().find(|(k, _)| k == "output").unwrap().1.symbol_count as f64
        })
        .collect();
    let ratios: Vec<f64> = outputs.windows(2).map(|w| w[1] / w[0]).collect();
    for (i, pair) in ratios.windows(2).enumerate() {
        let acceleration = pair[1] / pair[0];
        assert!(
            acceleration <= 1.5,
            "ratio of ratios {acceleration} at step {i} suggests an exponential trend"
        );
    }

    assert!(elapsed.as_secs() < 300, "bench took {elapsed:?}");
    let _ = fs::remove_dir_all(&dir);
    println!(
        "[PASS] criterion 6: slope {:.3} <= 4.0, max acceleration {:.3} <= 1.5, wall time {elapsed:?}",
        outcome.fit.slope,
        ratios
            .windows(2)
            .map(|p| p[1] / p[0])
            .fold(0.0f64, f64::max)
    );
}

/// Criterion 7: placeholder substitution at the derivation level preserves
/// the inference count exactly and its outputs re-check, over 100
/// randomized cases including constructed eigenvariable clashes.
#[test]
fn criterion7_substitution_correctness() {
    let mut rng = StdRng::seed_from_u64(0x5EED);
    let empty = Theory::empty();
    let psi_gen = FormulaGen { allow_placeholder: false, max_depth: 3 };
    let mut clash_cases = 0;
    let mut total = 0;

    // constructed eigenvariable clashes: the substituted formula mentions
    // the eigenvariable of a quantifier inference
    for i in 0..12 {
        let eigen = format!("a{i}");
        let all_p = Formula::forall("x", Formula::atom("P", vec![Term::Bound("x".into())]));
        let goal = Formula::forall(
            "x",
            Formula::imp(
                Formula::Placeholder,
                Formula::atom("P", vec![Term::Bound("x".into())]),
            ),
        );
        let instance = Formula::atom("P", vec![Term::free(&eigen)]);
        let leaf = Derivation::leaf(
            RuleTag::AxId,
            Sequent::new(vec![instance.clone()], vec![instance.clone()]),
        );
        let step1 = Derivation::unary(
            RuleTag::AllL(Term::free(&eigen)),
            Sequent::new(vec![all_p.clone()], vec![instance.clone()]),
            leaf,
        );
        let step2 = Derivation::unary(
            RuleTag::WeakL,
            Sequent::new(vec![Formula::Placeholder, all_p.clone()], vec![instance.clone()]),
            step1,
        );
        let step3 = Derivation::unary(
            RuleTag::ImpR,
            Sequent::new(
                vec![all_p.clone()],
                vec![Formula::imp(Formula::Placeholder, instance.clone())],
            ),
            step2,
        );
        let d = Derivation::unary(
            RuleTag::AllR(eigen.clone()),
            Sequent::new(vec![all_p.clone()], vec![goal.clone()]),
            step3,
        );
        assert!(check(&d, Mode::Minimal, &empty).is_ok());
        let psi = Formula::and(
            Formula::atom("Q", vec![Term::free(&eigen)]),
            psi_gen.gen(&mut rng),
        );
        let out = subst_placeholder_deriv(&d, &psi, &empty).unwrap();
        assert_eq!(size(&out).inference_count, size(&d).inference_count, "case {i}");
        let report = check(&out, Mode::Minimal, &empty);
        assert!(report.is_ok(), "clash case {i}:\n{report}");
        clash_cases += 1;
        total += 1;
    }

    // randomized cases over derivations that may mention the placeholder
    while total < 100 {
        let mode = if total % 2 == 0 { Mode::Minimal } else { Mode::Classical };
        let generator = DerivationGen {
            mode,
            theory: empty.clone(),
            formulas: FormulaGen { allow_placeholder: true, max_depth: 2 },
            steps: rng.gen_range(4..14),
        };
        let d = generator.gen(&mut rng);
        let psi = psi_gen.gen(&mut rng);
        let out = subst_placeholder_deriv(&d, &psi, &empty).unwrap();
        assert_eq!(size(&out).inference_count, size(&d).inference_count);
        let report = check(&out, mode, &empty);
        assert!(report.is_ok(), "random case {total} in {mode}:\n{report}");
        // endsequent homomorphism, up to the renaming of inserted binders
        for (got, orig) in out
            .conclusion
            .antecedent
            .iter()
            .chain(out.conclusion.succedent.iter())
            .zip(d.conclusion.antecedent.iter().chain(d.conclusion.succedent.iter()))
        {
            assert!(
                got.alpha_eq(&subst_placeholder(orig, &psi)),
                "root mismatch: {got} vs {orig} under {psi}"
            );
        }
        total += 1;
    }
    println!(
        "[PASS] criterion 7: {total} substitutions preserved inference counts and re-checked ({clash_cases} constructed eigenvariable clashes)"
    );
}

/// Criterion 8: rerunning the bench with the same configuration produces
/// byte-identical artifacts.
#[test]
fn criterion8_bench_determinism() {
    let base = std::env::temp_dir().join(format!("seqcalc_acc8_{}", std::process::id()));
    let dir_a = base.join("a");
    let dir_b = base.join("b");
    let _ = fs::remove_dir_all(&base);
    for dir in [&dir_a, &dir_b] {
        let cfg = BenchConfig {
            family: "chain".into(),
            n_min: 2,
            n_max: 12,
            output_dir: dir.clone(),
        };
        run_bench(&cfg).unwrap();
    }
    for name in ["bench.tsv", "growth.tsv"] {
        let a = fs::read(dir_a.join(name)).unwrap();
        let b = fs::read(dir_b.join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between reruns");
        assert!(!a.is_empty());
    }
    let _ = fs::remove_dir_all(&base);
    println!("[PASS] criterion 8: bench artifacts are byte-identical across reruns");
}
