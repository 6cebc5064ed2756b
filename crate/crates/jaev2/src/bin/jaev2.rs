//! Batch experiment CLI: random Hermitian matrices through the accurate
//! kernels and the LAPACK-style baseline, with per-run statistics as CSV.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use jaev2::errlab::worst_case_bounds;
use jaev2::experiment::{replay, run_experiment, Format, Kind, Mode, RunConfig};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    F32,
    F64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Complex,
    Real,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    /// Collect determinant-departure statistics for both algorithms.
    Compare,
    /// Additionally gate the measured relative errors against the a-priori
    /// envelope; exit nonzero on any violation among qualifying inputs.
    CheckBounds,
    /// Re-execute the inputs of a witness file with a full trace.
    Single,
}

#[derive(Parser, Debug)]
#[command(name = "jaev2", about = "Accuracy experiments for 2x2 Hermitian eigendecompositions")]
struct Args {
    /// Floating-point format of the kernels under test.
    #[arg(long, value_enum, default_value = "f64")]
    format: FormatArg,
    /// Complex Hermitian or real symmetric matrices.
    #[arg(long, value_enum, default_value = "complex")]
    kind: KindArg,
    /// Matrices per run.
    #[arg(long, default_value_t = 1 << 20)]
    count: u64,
    /// Number of runs (one CSV row each).
    #[arg(long, default_value_t = 33)]
    runs: u32,
    /// PRNG seed; every run derives its own counter-based streams.
    #[arg(long, default_value_t = 0x9e3779b97f4a7c15)]
    seed: u64,
    #[arg(long, value_enum, default_value = "compare")]
    mode: ModeArg,
    /// Write the per-run CSV here (witnesses go to <OUT>.witnesses.csv);
    /// stdout otherwise.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Witness file to replay (required by --mode single).
    #[arg(long)]
    replay: Option<PathBuf>,
    /// Seed from the operating system instead of --seed.
    #[arg(long)]
    os_entropy: bool,
    /// Print the intermediate chain of every witness input after the run.
    #[arg(long)]
    verbose_intermediates: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let mode = match args.mode {
        ModeArg::Compare => Mode::Compare,
        ModeArg::CheckBounds => Mode::CheckBounds,
        ModeArg::Single => Mode::Single,
    };

    if mode == Mode::Single {
        let Some(path) = &args.replay else {
            eprintln!("--mode single requires --replay <witness-file>");
            return ExitCode::from(2);
        };
        return match replay(path) {
            Ok(report) => {
                print!("{report}");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("{e}");
                ExitCode::from(2)
            }
        };
    }

    let cfg = RunConfig {
        format: match args.format {
            FormatArg::F32 => Format::F32,
            FormatArg::F64 => Format::F64,
        },
        kind: match args.kind {
            KindArg::Complex => Kind::Complex,
            KindArg::Real => Kind::Real,
        },
        count: args.count.max(1),
        runs: args.runs.max(1),
        seed: args.seed,
        mode,
        out: args.out.clone(),
        os_entropy: args.os_entropy,
        verbose_intermediates: args.verbose_intermediates,
    };

    let outcome = match run_experiment(&cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("experiment failed: {e}");
            return ExitCode::from(2);
        }
    };

    if cfg.out.is_none() {
        print!("{}", outcome.csv);
    }

    if args.verbose_intermediates {
        let dedup: std::collections::BTreeSet<[u64; 4]> = outcome
            .stats
            .iter()
            .flat_map(|s| {
                [
                    s.delta_j.min,
                    s.delta_j.max,
                    s.rho_cos.min,
                    s.rho_cos.max,
                    s.rho_re.min,
                    s.rho_re.max,
                    s.rho_im.min,
                    s.rho_im.max,
                ]
            })
            .flatten()
            .map(|w| w.input_bits)
            .collect();
        let mut report = String::new();
        for bits in dedup {
            match cfg.format {
                Format::F64 => jaev2::experiment::trace_block::<f64>(&mut report, &bits),
                Format::F32 => jaev2::experiment::trace_block::<f32>(&mut report, &bits),
            }
        }
        eprint!("{report}");
    }

    let quals: u64 = outcome.stats.iter().map(|s| s.n_qualifying).sum();
    let totals: u64 = outcome.stats.iter().map(|s| s.n_total).sum();
    eprintln!(
        "seed={} matrices={} qualifying={} rejected_draws={} violations={}",
        outcome.seed_used, totals, quals, outcome.total_rejected, outcome.total_violations
    );
    if mode == Mode::CheckBounds {
        let env = worst_case_bounds(2);
        eprintln!(
            "envelope: rho(cos) in (-{}, {}), rho(u21) in (-{}, {})",
            env.cos_lo_string(),
            env.cos_hi_string(),
            env.off_lo_string(),
            env.off_hi_string()
        );
        if outcome.total_violations > 0 {
            return ExitCode::from(1);
        }
    }
    ExitCode::SUCCESS
}
