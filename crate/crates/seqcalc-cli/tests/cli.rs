//! End-to-end runs of the command line front end against real files.

use seqcalc::calculus::{check, Mode, RuleTag, Sequent, Theory};
use seqcalc::corpus;
use seqcalc::sexp::{parse_derivation, parse_theory, print_derivation, print_theory};
use seqcalc::syntax::Signature;
use seqcalc::Derivation;
use std::fs;
use std::path::PathBuf;

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("seqcalc_cli_{tag}_{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> i32 {
    let mut full = vec!["seqcalc"];
    full.extend_from_slice(args);
    seqcalc_cli::run(full)
}

#[test]
fn check_accepts_valid_and_flags_invalid() {
    let dir = temp_dir("check");
    let case = corpus::toy_case();
    let theory_path = dir.join("toy.sexp");
    let proof_path = dir.join("proof.sexp");
    fs::write(&theory_path, print_theory(&case.theory)).unwrap();
    fs::write(&proof_path, print_derivation(&case.proof)).unwrap();

    let code = run(&[
        "check",
        proof_path.to_str().unwrap(),
        "--mode",
        "classical",
        "--theory",
        theory_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);

    // break the proof: point the root at a different rule
    let mut broken = case.proof.clone();
    broken.rule = RuleTag::AxId;
    let broken_path = dir.join("broken.sexp");
    fs::write(&broken_path, print_derivation(&broken)).unwrap();
    let code = run(&[
        "check",
        broken_path.to_str().unwrap(),
        "--mode",
        "classical",
        "--theory",
        theory_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 1);

    // missing file is a usage error
    let code = run(&["check", dir.join("absent.sexp").to_str().unwrap()]);
    assert_eq!(code, 2);
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn transform_writes_a_complete_trace() {
    let dir = temp_dir("transform");
    let case = corpus::toy_case();
    let theory_path = dir.join("toy.sexp");
    let proof_path = dir.join("proof.sexp");
    fs::write(&theory_path, print_theory(&case.theory)).unwrap();
    fs::write(&proof_path, print_derivation(&case.proof)).unwrap();
    let trace_dir = dir.join("trace");

    let code = run(&[
        "transform",
        proof_path.to_str().unwrap(),
        theory_path.to_str().unwrap(),
        "--emit-trace",
        trace_dir.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);

    for name in ["step1", "step2", "step3", "step4", "step5", "output"] {
        assert!(trace_dir.join(format!("{name}.sexp")).exists(), "{name}");
    }
    let sizes = fs::read_to_string(trace_dir.join("sizes.tsv")).unwrap();
    assert!(sizes.starts_with("step\tinference_count\tsymbol_count\theight\n"));
    assert_eq!(sizes.lines().count(), 8); // header + 7 stages

    // the emitted output re-checks intuitionistically when read back
    let (theory, sig) =
        parse_theory(&fs::read_to_string(&theory_path).unwrap(), &Signature::new()).unwrap();
    let output: Derivation =
        parse_derivation(&fs::read_to_string(trace_dir.join("output.sexp")).unwrap(), &sig)
            .unwrap();
    assert!(check(&output, Mode::Intuitionistic, &theory).is_ok());
    assert_eq!(output.conclusion, Sequent::new(vec![], vec![case.goal.clone()]));
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn translate_round_trips_through_files() {
    let dir = temp_dir("translate");
    let case = corpus::toy_case();
    let theory_path = dir.join("toy.sexp");
    let proof_path = dir.join("proof.sexp");
    let out_path = dir.join("minimal.sexp");
    fs::write(&theory_path, print_theory(&case.theory)).unwrap();
    fs::write(&proof_path, print_derivation(&case.proof)).unwrap();

    let code = run(&[
        "translate",
        proof_path.to_str().unwrap(),
        theory_path.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);

    let (theory, sig) =
        parse_theory(&fs::read_to_string(&theory_path).unwrap(), &Signature::new()).unwrap();
    let translated =
        parse_derivation(&fs::read_to_string(&out_path).unwrap(), &sig).unwrap();
    let te = seqcalc::translation::TranslatedTheory::new(&theory).unwrap().as_theory();
    assert!(check(&translated, Mode::Minimal, &te).is_ok());
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn lemma_subcommand_emits_parseable_output() {
    // item 9 takes a quantified template
    let code = run(&["lemma", "9", "(forall x (atom P x))"]);
    assert_eq!(code, 0);
    // wrong arity is a usage error
    let code = run(&["lemma", "2", "(atom P)"]);
    assert_eq!(code, 2);
    let code = run(&["lemma", "42", "(atom P)"]);
    assert_eq!(code, 2);
}

#[test]
fn bench_is_deterministic_across_reruns() {
    let dir_a = temp_dir("bench_a");
    let dir_b = temp_dir("bench_b");
    for dir in [&dir_a, &dir_b] {
        let code = run(&[
            "bench",
            "--family",
            "chain",
            "--n-min",
            "2",
            "--n-max",
            "6",
            "--out",
            dir.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
    }
    for name in ["bench.tsv", "growth.tsv"] {
        let a = fs::read(dir_a.join(name)).unwrap();
        let b = fs::read(dir_b.join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between reruns");
    }
    let _ = fs::remove_dir_all(&dir_a);
    let _ = fs::remove_dir_all(&dir_b);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]), 2);
    assert_eq!(run(&["bench", "--n-min", "3", "--n-max", "1", "--out", "/tmp/x_seqcalc"]), 2);
}

#[test]
fn theory_and_empty_theory_checks() {
    let dir = temp_dir("empty_theory");
    // an axiom-free check: identity leaf in minimal mode
    let p = seqcalc::Formula::atom0("P");
    let leaf = Derivation::leaf(
        RuleTag::AxId,
        Sequent::new(vec![p.clone()], vec![p]),
    );
    let proof_path = dir.join("leaf.sexp");
    fs::write(&proof_path, print_derivation(&leaf)).unwrap();
    let code = run(&["check", proof_path.to_str().unwrap(), "--mode", "minimal"]);
    assert_eq!(code, 0);
    // the same file fails if it claims a theory axiom that does not exist
    let bogus = Derivation::leaf(
        RuleTag::AxTheory(0),
        Sequent::new(vec![], vec![seqcalc::Formula::atom0("P")]),
    );
    let bogus_path = dir.join("bogus.sexp");
    fs::write(&bogus_path, print_derivation(&bogus)).unwrap();
    let code = run(&["check", bogus_path.to_str().unwrap(), "--mode", "minimal"]);
    assert_eq!(code, 1);
    let _ = fs::remove_dir_all(&dir);
    let _ = check(&Derivation::leaf(RuleTag::AxId, Sequent::new(vec![], vec![])), Mode::Minimal, &Theory::empty());
}
