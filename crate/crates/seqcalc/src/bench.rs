//! The growth benchmark: generate a family of classical proofs, push each
//! one through the transformation, and record how the sizes evolve.
//!
//! All outputs are deterministic: the generator takes no randomness, fresh
//! variables are chosen by lowest unused index, and the TSV files are
//! written with fixed formatting, so a rerun with the same configuration
//! produces byte-identical artifacts.

use crate::calculus::SizeReport;
use crate::corpus::gen_family;
use crate::pipeline::{barr_transform, growth_fit_from_sizes, GrowthFit, STEP_NAMES};
use crate::sexp::{print_derivation, print_theory};
use crate::{Error, Result};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub family: String,
    pub n_min: usize,
    pub n_max: usize,
    pub output_dir: PathBuf,
}

impl BenchConfig {
    fn validate(&self) -> Result<()> {
        if self.n_min < 1 {
            return Err(Error::input("bench: n_min must be at least 1"));
        }
        if self.n_max < self.n_min {
            return Err(Error::input(format!(
                "bench: n_max ({}) must be at least n_min ({})",
                self.n_max, self.n_min
            )));
        }
        Ok(())
    }
}

/// Sizes of every pipeline stage for one family member.
#[derive(Debug, Clone)]
pub struct BenchRow {
    pub n: usize,
    pub sizes: Vec<(String, SizeReport)>,
}

#[derive(Debug, Clone)]
pub struct BenchOutcome {
    pub rows: Vec<BenchRow>,
    pub fit: GrowthFit,
    pub bench_tsv: PathBuf,
    pub growth_tsv: PathBuf,
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::input(format!("{}: {e}", path.display()))
}

/// Renders the per-n size table.
pub fn render_bench_tsv(rows: &[BenchRow]) -> String {
    let mut out = String::from("n");
    for name in STEP_NAMES {
        let _ = write!(out, "\t{name}_inferences\t{name}_symbols\t{name}_height");
    }
    out.push('\n');
    for row in rows {
        let _ = write!(out, "{}", row.n);
        for name in STEP_NAMES {
            let report = row
                .sizes
                .iter()
                .find(|(k, _)| k == name)
                .map(|(_, r)| *r)
                .expect("pipeline records every step");
            let _ = write!(
                out,
                "\t{}\t{}\t{}",
                report.inference_count, report.symbol_count, report.height
            );
        }
        out.push('\n');
    }
    out
}

/// Renders the growth fit as a two-column metric table.
pub fn render_growth_tsv(fit: &GrowthFit) -> String {
    let mut out = String::from("metric\tvalue\n");
    let _ = writeln!(out, "loglog_slope\t{:.6}", fit.slope);
    let _ = writeln!(out, "max_output_input_ratio\t{:.6}", fit.max_ratio);
    for (name, ratio) in &fit.per_step {
        let _ = writeln!(out, "mean_symbol_ratio_{name}\t{ratio:.6}");
    }
    out
}

/// Runs the bench: for each `n` in range, generate, transform (which
/// re-checks every stage), and record sizes; then write `bench.tsv` and
/// `growth.tsv` under the output directory.
///
/// If a transformation fails its internal re-check, the offending input
/// proof and theory are persisted next to the reports before the error
/// propagates.
pub fn run_bench(cfg: &BenchConfig) -> Result<BenchOutcome> {
    cfg.validate()?;
    fs::create_dir_all(&cfg.output_dir).map_err(|e| io_err(&cfg.output_dir, e))?;

    let mut rows = Vec::new();
    for n in cfg.n_min..=cfg.n_max {
        let (theory, goal, proof) = gen_family(&cfg.family, n)?;
        match barr_transform(&proof, &theory, &goal) {
            Ok(trace) => rows.push(BenchRow { n, sizes: trace.sizes }),
            Err(e) => {
                let proof_path = cfg.output_dir.join(format!("failed_{n}_proof.sexp"));
                let theory_path = cfg.output_dir.join(format!("failed_{n}_theory.sexp"));
                fs::write(&proof_path, print_derivation(&proof))
                    .map_err(|io| io_err(&proof_path, io))?;
                fs::write(&theory_path, print_theory(&theory))
                    .map_err(|io| io_err(&theory_path, io))?;
                return Err(e);
            }
        }
    }

    let sizes: Vec<_> = rows.iter().map(|r| r.sizes.clone()).collect();
    let fit = growth_fit_from_sizes(&sizes)?;

    let bench_tsv = cfg.output_dir.join("bench.tsv");
    fs::write(&bench_tsv, render_bench_tsv(&rows)).map_err(|e| io_err(&bench_tsv, e))?;
    let growth_tsv = cfg.output_dir.join("growth.tsv");
    fs::write(&growth_tsv, render_growth_tsv(&fit)).map_err(|e| io_err(&growth_tsv, e))?;

    Ok(BenchOutcome { rows, fit, bench_tsv, growth_tsv })
}
