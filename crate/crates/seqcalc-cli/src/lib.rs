//! Command line front end for the seqcalc kernel.
//!
//! Exit codes: 0 on success, 1 when a checker reports violations (or an
//! input derivation fails a required check), 2 on usage or I/O errors.

use clap::{Parser, Subcommand};
use seqcalc::bench::{render_growth_tsv, run_bench, BenchConfig};
use seqcalc::calculus::{check, size, Derivation, Mode, Theory};
use seqcalc::classes::classify;
use seqcalc::combinators::{lemma, lemma_mode, LemmaArgs};
use seqcalc::pipeline::barr_transform;
use seqcalc::sexp::{parse_derivation, parse_theory, print_derivation};
use seqcalc::syntax::{parse_formula, Formula, Signature};
use seqcalc::translation::{translate_derivation, TranslatedTheory};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "seqcalc",
    about = "Sequent calculus proof checker and geometric conservativity transformer",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Check a derivation file against a mode and an optional theory.
    Check {
        /// Derivation file.
        proof: PathBuf,
        /// Proof mode to check against.
        #[arg(long, default_value = "classical")]
        mode: String,
        /// Theory file providing the axioms.
        #[arg(long)]
        theory: Option<PathBuf>,
        /// Signature file with symbol declarations.
        #[arg(long)]
        sig: Option<PathBuf>,
    },
    /// Classify a formula: positivity, geometric shape, class membership.
    Classify {
        /// Formula file.
        formula: PathBuf,
        #[arg(long)]
        sig: Option<PathBuf>,
    },
    /// Translate a classical derivation into minimal logic over the
    /// translated theory.
    Translate {
        proof: PathBuf,
        theory: PathBuf,
        /// Where to write the translated derivation.
        #[arg(long)]
        out: PathBuf,
        /// Also write the translated theory, for re-checking the output.
        #[arg(long)]
        theory_out: Option<PathBuf>,
        #[arg(long)]
        sig: Option<PathBuf>,
    },
    /// Emit the derivation for one lemma schema instance.
    Lemma {
        /// Item number, 1 through 10.
        id: u8,
        /// Instantiating formulas: one for item 1, two for items 2-8, one
        /// quantified formula serving as the template for items 9 and 10.
        formulas: Vec<String>,
        #[arg(long)]
        sig: Option<PathBuf>,
    },
    /// Transform a classical proof of a geometric implication into an
    /// intuitionistic one, writing every intermediate stage.
    Transform {
        proof: PathBuf,
        theory: PathBuf,
        /// Directory for step1..step5, output and the size table.
        #[arg(long)]
        emit_trace: PathBuf,
        #[arg(long)]
        sig: Option<PathBuf>,
    },
    /// Run the proof-growth benchmark over a generated family.
    Bench {
        #[arg(long, default_value = "chain")]
        family: String,
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        /// Directory for bench.tsv and growth.tsv.
        #[arg(long)]
        out: PathBuf,
    },
}

enum Failure {
    /// A checker rejected something: exit code 1.
    Violations(String),
    /// Usage or I/O problem: exit code 2.
    Usage(String),
}

impl From<seqcalc::Error> for Failure {
    fn from(e: seqcalc::Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_signature(sig: &Option<PathBuf>) -> Result<Signature, Failure> {
    match sig {
        None => Ok(Signature::new()),
        Some(path) => Ok(Signature::parse(&read(path)?)?),
    }
}

fn load_theory(
    path: &Path,
    sig: Signature,
) -> Result<(Theory, Signature), Failure> {
    Ok(parse_theory(&read(path)?, &sig)?)
}

fn load_derivation(path: &Path, sig: &Signature) -> Result<Derivation, Failure> {
    Ok(parse_derivation(&read(path)?, sig)?)
}

fn cmd_check(
    proof: &Path,
    mode: &str,
    theory: &Option<PathBuf>,
    sig: &Option<PathBuf>,
) -> CmdResult {
    let mode = Mode::parse(mode)?;
    let sig = load_signature(sig)?;
    let (theory, sig) = match theory {
        Some(path) => load_theory(path, sig)?,
        None => (Theory::empty(), sig),
    };
    let derivation = load_derivation(proof, &sig)?;
    let report = check(&derivation, mode, &theory);
    if report.is_ok() {
        Ok("ok\n".to_string())
    } else {
        Err(Failure::Violations(format!("{report}\n")))
    }
}

fn cmd_classify(formula: &Path, sig: &Option<PathBuf>) -> CmdResult {
    let sig = load_signature(sig)?;
    let f = parse_formula(read(formula)?.trim(), &sig)?;
    let m = classify(&f)?;
    let mut out = String::new();
    let _ = writeln!(out, "positive: {}", m.positive);
    let _ = writeln!(out, "geometric_implication: {}", m.geometric_implication);
    let _ = writeln!(out, "in_Q: {}", m.in_q);
    let _ = writeln!(out, "in_R: {}", m.in_r);
    let _ = writeln!(out, "in_J: {}", m.in_j);
    Ok(out)
}

fn sizes_tsv(rows: &[(&str, &Derivation)]) -> String {
    let mut out = String::from("step\tinference_count\tsymbol_count\theight\n");
    for (name, d) in rows {
        let report = size(d);
        let _ = writeln!(
            out,
            "{name}\t{}\t{}\t{}",
            report.inference_count, report.symbol_count, report.height
        );
    }
    out
}

fn cmd_translate(
    proof: &Path,
    theory: &Path,
    out_path: &Path,
    theory_out: &Option<PathBuf>,
    sig: &Option<PathBuf>,
) -> CmdResult {
    let sig = load_signature(sig)?;
    let (theory, sig) = load_theory(theory, sig)?;
    let derivation = load_derivation(proof, &sig)?;
    let input_report = check(&derivation, Mode::Classical, &theory);
    if !input_report.is_ok() {
        return Err(Failure::Violations(format!(
            "input fails the classical check:\n{input_report}\n"
        )));
    }
    let translated = translate_derivation(&derivation, &theory)?;
    let theory_e = TranslatedTheory::new(&theory)?.as_theory();
    let out_report = check(&translated, Mode::Minimal, &theory_e);
    if !out_report.is_ok() {
        return Err(Failure::Violations(format!(
            "translated derivation fails the minimal check:\n{out_report}\n"
        )));
    }
    write_file(out_path, &print_derivation(&translated))?;
    if let Some(path) = theory_out {
        write_file(path, &seqcalc::sexp::print_theory(&theory_e))?;
    }
    Ok(sizes_tsv(&[("input", &derivation), ("translated", &translated)]))
}

fn cmd_lemma(id: u8, formulas: &[String], sig: &Option<PathBuf>) -> CmdResult {
    let sig = load_signature(sig)?;
    let parsed: Vec<Formula> = formulas
        .iter()
        .map(|src| parse_formula(src, &sig))
        .collect::<Result<_, _>>()?;
    let args = match (id, parsed.as_slice()) {
        (1, [f]) => LemmaArgs::One(f.clone()),
        (2..=8, [f, g]) => LemmaArgs::Two(f.clone(), g.clone()),
        (9 | 10, [Formula::ForAll(var, body)]) | (9 | 10, [Formula::Exists(var, body)]) => {
            LemmaArgs::Template { var: var.clone(), body: body.as_ref().clone() }
        }
        _ => {
            return Err(Failure::Usage(format!(
                "lemma {id}: wrong number or shape of formulas (item 1 takes one formula, \
                 items 2-8 take two, items 9-10 take one quantified formula)"
            )))
        }
    };
    let derivation = lemma(id, &args)?;
    let mut out = String::new();
    let _ = writeln!(out, "; mode: {}", lemma_mode(id));
    out.push_str(&print_derivation(&derivation));
    Ok(out)
}

fn cmd_transform(
    proof: &Path,
    theory: &Path,
    trace_dir: &Path,
    sig: &Option<PathBuf>,
) -> CmdResult {
    let sig = load_signature(sig)?;
    let (theory, sig) = load_theory(theory, sig)?;
    let derivation = load_derivation(proof, &sig)?;
    let input_report = check(&derivation, Mode::Classical, &theory);
    if !input_report.is_ok() {
        return Err(Failure::Violations(format!(
            "input fails the classical check:\n{input_report}\n"
        )));
    }
    if derivation.conclusion.succedent.len() != 1 || !derivation.conclusion.antecedent.is_empty() {
        return Err(Failure::Usage(
            "transform: the input must derive a single-formula succedent from an empty antecedent"
                .to_string(),
        ));
    }
    let goal = derivation.conclusion.succedent[0].clone();
    let trace = barr_transform(&derivation, &theory, &goal)?;
    fs::create_dir_all(trace_dir)
        .map_err(|e| Failure::Usage(format!("{}: {e}", trace_dir.display())))?;
    let stages: [(&str, &Derivation); 6] = [
        ("step1", &trace.step1),
        ("step2", &trace.step2),
        ("step3", &trace.step3),
        ("step4", &trace.step4),
        ("step5", &trace.step5),
        ("output", &trace.output),
    ];
    for (name, d) in stages {
        write_file(&trace_dir.join(format!("{name}.sexp")), &print_derivation(d))?;
    }
    let table = sizes_tsv(&[
        ("input", &trace.input),
        ("step1", &trace.step1),
        ("step2", &trace.step2),
        ("step3", &trace.step3),
        ("step4", &trace.step4),
        ("step5", &trace.step5),
        ("output", &trace.output),
    ]);
    write_file(&trace_dir.join("sizes.tsv"), &table)?;
    Ok(table)
}

fn cmd_bench(family: &str, n_min: usize, n_max: usize, out_dir: &Path) -> CmdResult {
    let cfg = BenchConfig {
        family: family.to_string(),
        n_min,
        n_max,
        output_dir: out_dir.to_path_buf(),
    };
    let outcome = run_bench(&cfg)?;
    Ok(render_growth_tsv(&outcome.fit))
}

/// Runs the CLI on the given arguments, printing to stdout/stderr, and
/// returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version as "errors" with successful exit
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = match &cli.command {
        CliCommand::Check { proof, mode, theory, sig } => cmd_check(proof, mode, theory, sig),
        CliCommand::Classify { formula, sig } => cmd_classify(formula, sig),
        CliCommand::Translate { proof, theory, out, theory_out, sig } => {
            cmd_translate(proof, theory, out, theory_out, sig)
        }
        CliCommand::Lemma { id, formulas, sig } => cmd_lemma(*id, formulas, sig),
        CliCommand::Transform { proof, theory, emit_trace, sig } => {
            cmd_transform(proof, theory, emit_trace, sig)
        }
        CliCommand::Bench { family, n_min, n_max, out } => {
            cmd_bench(family, *n_min, *n_max, out)
        }
    };
    match result {
        Ok(output) => {
            print!("{output}");
            0
        }
        Err(Failure::Violations(msg)) => {
            eprint!("{msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}
