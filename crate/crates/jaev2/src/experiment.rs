//! Batch experiment driver: seeded random Hermitian matrices, both the
//! accurate kernels and the LAPACK-style baseline, extended-precision error
//! measurement, per-run extremal statistics, and CSV emission.
//!
//! Reproducibility contract: a fixed configuration (seed included) produces
//! byte-identical CSV on any thread count. Matrices are generated in fixed
//! batches, each batch owning a counter-derived PRNG stream, and statistics
//! merge by an order-independent min/max reduction.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::PathBuf;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::errlab::{
    accumulate, delta_det, rho, worst_case_bounds, BoundConstants, RunStats, Sample,
};
use crate::evd::{evd2_with_trace, Herm2, Rot2};
use crate::float::Float;
use crate::laev2::{laev2_herm, laev2_to_rot};
use crate::xdprec::{oracle_evd2_trace, DD};

/// Matrices per PRNG stream; fixed so results do not depend on thread count.
const BATCH: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    F32,
    F64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Complex,
    Real,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Compare,
    CheckBounds,
    Single,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub format: Format,
    pub kind: Kind,
    /// Matrices per run.
    pub count: u64,
    pub runs: u32,
    pub seed: u64,
    pub mode: Mode,
    pub out: Option<PathBuf>,
    /// Draw the seed from the operating system instead of `seed`.
    pub os_entropy: bool,
    pub verbose_intermediates: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            format: Format::F64,
            kind: Kind::Complex,
            count: 1 << 20,
            runs: 33,
            seed: 0x9e3779b97f4a7c15,
            mode: Mode::Compare,
            out: None,
            os_entropy: false,
            verbose_intermediates: false,
        }
    }
}

/// Everything a finished experiment produced.
#[derive(Clone, Debug)]
pub struct ExperimentOutcome {
    pub stats: Vec<RunStats>,
    pub csv: String,
    pub witness_csv: String,
    pub total_violations: u64,
    pub total_rejected: u64,
    pub seed_used: u64,
}

/// One rejection-sampled entry: a uniformly random bit pattern, kept when its
/// magnitude lies in `[MIN_NORMAL, MAX/4]` (sign free, NaN/inf/subnormals and
/// zero discarded).
fn gen_entry<F: Float>(rng: &mut ChaCha8Rng, rejected: &mut u64) -> F {
    let top = F::MAX_FINITE.scalbn(-2);
    loop {
        let bits = if F::SIG_BITS == 52 {
            rng.next_u64()
        } else {
            u64::from(rng.next_u32())
        };
        let x = F::from_bits_u64(bits);
        let m = x.abs();
        if x.is_finite() && m >= F::MIN_NORMAL && m <= top {
            return x;
        }
        *rejected += 1;
    }
}

/// Draw one matrix: two values for the off-diagonal entry (one for real
/// matrices), then two for the diagonal.
fn gen_matrix<F: Float>(rng: &mut ChaCha8Rng, kind: Kind, rejected: &mut u64) -> Herm2<F> {
    let re = gen_entry::<F>(rng, rejected);
    let im = match kind {
        Kind::Complex => gen_entry::<F>(rng, rejected),
        Kind::Real => F::ZERO,
    };
    let a11 = gen_entry::<F>(rng, rejected);
    let a22 = gen_entry::<F>(rng, rejected);
    Herm2 {
        a11,
        a22,
        re_a21: re,
        im_a21: im,
    }
}

/// Run both algorithms and the extended-precision reference on one matrix.
pub fn measure<F: Float>(k: u64, a: &Herm2<F>, env: &BoundConstants) -> Sample {
    let (res, tr) = evd2_with_trace(a, false);
    let baseline = laev2_herm(a);
    let (bc, br, bi) = laev2_to_rot(&baseline);
    let (oracle, _) = oracle_evd2_trace(a);

    let delta_j = delta_det(&res.rot).to_f64();
    let delta_l = delta_det(&Rot2 {
        cos_phi: bc,
        cos_alpha_sin_phi: br,
        sin_alpha_sin_phi: bi,
    })
    .to_f64();

    let rho_cos = rho(oracle.cos_phi, res.rot.cos_phi);
    let rho_re = rho(oracle.u21_re, res.rot.cos_alpha_sin_phi);
    let rho_im = rho(oracle.u21_im, res.rot.sin_alpha_sin_phi);

    let qualifying = tr.high_accuracy();
    let violation = qualifying
        && !(env.contains_cos(&rho_cos) && env.contains_off(&rho_re) && env.contains_off(&rho_im));

    Sample {
        k,
        input_bits: [
            a.a11.to_bits_u64(),
            a.a22.to_bits_u64(),
            a.re_a21.to_bits_u64(),
            a.im_a21.to_bits_u64(),
        ],
        delta_j,
        delta_l,
        rho_cos,
        rho_re,
        rho_im,
        qualifying,
        violation,
    }
}

fn run_one<F: Float>(
    run_index: u32,
    count: u64,
    seed: u64,
    kind: Kind,
    env: &BoundConstants,
) -> (RunStats, u64) {
    let n_batches = count.div_ceil(BATCH);
    (0..n_batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream((u64::from(run_index) << 32) | b);
            let lo = b * BATCH;
            let hi = count.min(lo + BATCH);
            let mut stats = RunStats::default();
            let mut rejected = 0u64;
            for k in lo..hi {
                let a = gen_matrix::<F>(&mut rng, kind, &mut rejected);
                let s = measure(k, &a, env);
                accumulate(&mut stats, &s);
            }
            (stats, rejected)
        })
        .reduce(
            || (RunStats::default(), 0),
            |(sa, ra), (sb, rb)| (sa.merge(sb), ra + rb),
        )
}

/// CSV header, fixed schema.
pub const CSV_HEADER: &str = "run_index,delta_min_J,delta_max_J,delta_min_L,delta_max_L,\
rho_min_cos,rho_max_cos,rho_min_re,rho_max_re,rho_min_im,rho_max_im,\
n_total,n_qualifying,n_inf_rho";

const WITNESS_HEADER: &str =
    "run_index,stat,end,value,k,format,a11_bits,a22_bits,re_bits,im_bits";

fn csv_row(run_index: u32, s: &RunStats) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        run_index,
        s.delta_j.min_value(),
        s.delta_j.max_value(),
        s.delta_l.min_value(),
        s.delta_l.max_value(),
        s.rho_cos.min_value(),
        s.rho_cos.max_value(),
        s.rho_re.min_value(),
        s.rho_re.max_value(),
        s.rho_im.min_value(),
        s.rho_im.max_value(),
        s.n_total,
        s.n_qualifying,
        s.n_inf_rho
    )
}

fn witness_rows(out: &mut String, run_index: u32, s: &RunStats, format: Format) {
    let fmt_name = match format {
        Format::F32 => "f32",
        Format::F64 => "f64",
    };
    let mut emit = |stat: &str, end: &str, w: &crate::errlab::Witness| {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},0x{:016x},0x{:016x},0x{:016x},0x{:016x}",
            run_index,
            stat,
            end,
            w.value,
            w.k,
            fmt_name,
            w.input_bits[0],
            w.input_bits[1],
            w.input_bits[2],
            w.input_bits[3],
        );
    };
    for (name, e) in [
        ("delta_J", &s.delta_j),
        ("delta_L", &s.delta_l),
        ("rho_cos", &s.rho_cos),
        ("rho_re", &s.rho_re),
        ("rho_im", &s.rho_im),
    ] {
        if let Some(w) = e.min {
            emit(name, "min", &w);
        }
        if let Some(w) = e.max {
            emit(name, "max", &w);
        }
    }
}

/// Execute the configured batch experiment. Returns the statistics and the
/// CSV bodies; writes them to `out` (and `out` + `.witnesses.csv`) when a
/// path is configured. Arithmetic never fails; only I/O can.
pub fn run_experiment(cfg: &RunConfig) -> io::Result<ExperimentOutcome> {
    let seed_used = if cfg.os_entropy {
        let mut rng = rand::rngs::OsRng;
        rng.next_u64()
    } else {
        cfg.seed
    };
    let env = worst_case_bounds(2);

    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    let mut witness_csv = String::from(WITNESS_HEADER);
    witness_csv.push('\n');

    let mut stats = Vec::with_capacity(cfg.runs as usize);
    let mut total_violations = 0;
    let mut total_rejected = 0;
    for run_index in 1..=cfg.runs {
        let (s, rejected) = match cfg.format {
            Format::F64 => run_one::<f64>(run_index, cfg.count, seed_used, cfg.kind, &env),
            Format::F32 => run_one::<f32>(run_index, cfg.count, seed_used, cfg.kind, &env),
        };
        csv.push_str(&csv_row(run_index, &s));
        csv.push('\n');
        witness_rows(&mut witness_csv, run_index, &s, cfg.format);
        total_violations += s.n_violations;
        total_rejected += rejected;
        stats.push(s);
    }

    if let Some(path) = &cfg.out {
        fs::write(path, &csv)?;
        let mut wpath = path.as_os_str().to_owned();
        wpath.push(".witnesses.csv");
        fs::write(PathBuf::from(wpath), &witness_csv)?;
    }

    Ok(ExperimentOutcome {
        stats,
        csv,
        witness_csv,
        total_violations,
        total_rejected,
        seed_used,
    })
}

/// Replay error: malformed witness file or unreadable path.
#[derive(Debug)]
pub enum ReplayError {
    Io(io::Error),
    Parse { line: usize, reason: String },
}

impl std::fmt::Display for ReplayError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ReplayError::Io(e) => write!(f, "cannot read witness file: {e}"),
            ReplayError::Parse { line, reason } => {
                write!(f, "witness file line {line}: {reason}")
            }
        }
    }
}

impl std::error::Error for ReplayError {}

impl From<io::Error> for ReplayError {
    fn from(e: io::Error) -> Self {
        ReplayError::Io(e)
    }
}

/// Re-execute the inputs listed in a witness CSV and render the full
/// intermediate chain with the per-stage relative errors against the
/// extended-precision reference.
pub fn replay(path: &std::path::Path) -> Result<String, ReplayError> {
    let text = fs::read_to_string(path)?;
    let mut report = String::new();
    let mut seen: Vec<(String, [u64; 4])> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if idx == 0 && line.starts_with("run_index") {
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 10 {
            return Err(ReplayError::Parse {
                line: idx + 1,
                reason: format!("expected 10 comma-separated fields, got {}", fields.len()),
            });
        }
        let fmt_name = fields[5].trim().to_string();
        let parse_bits = |s: &str, line: usize| -> Result<u64, ReplayError> {
            let t = s.trim();
            let t = t.strip_prefix("0x").unwrap_or(t);
            u64::from_str_radix(t, 16).map_err(|e| ReplayError::Parse {
                line,
                reason: format!("bad bit pattern {s:?}: {e}"),
            })
        };
        let bits = [
            parse_bits(fields[6], idx + 1)?,
            parse_bits(fields[7], idx + 1)?,
            parse_bits(fields[8], idx + 1)?,
            parse_bits(fields[9], idx + 1)?,
        ];
        if seen.iter().any(|(f, b)| *f == fmt_name && *b == bits) {
            continue;
        }
        seen.push((fmt_name.clone(), bits));
        match fmt_name.as_str() {
            "f64" => trace_block::<f64>(&mut report, &bits),
            "f32" => trace_block::<f32>(&mut report, &bits),
            other => {
                return Err(ReplayError::Parse {
                    line: idx + 1,
                    reason: format!("unknown format {other:?} (expected f32 or f64)"),
                })
            }
        }
    }
    if seen.is_empty() {
        return Err(ReplayError::Parse {
            line: 1,
            reason: "no witness rows found".into(),
        });
    }
    Ok(report)
}

/// Render one input's full trace with per-stage deviation factors.
pub fn trace_block<F: Float>(out: &mut String, bits: &[u64; 4]) {
    let a = Herm2 {
        a11: F::from_bits_u64(bits[0]),
        a22: F::from_bits_u64(bits[1]),
        re_a21: F::from_bits_u64(bits[2]),
        im_a21: F::from_bits_u64(bits[3]),
    };
    let (res, tr) = evd2_with_trace(&a, true);
    let (oracle, otr) = oracle_evd2_trace(&a);
    let baseline = laev2_herm(&a);
    let env = worst_case_bounds(2);
    let s = measure(0, &a, &env);

    let _ = writeln!(
        out,
        "input a11={} a22={} a21={}{:+}i  (bits 0x{:016x} 0x{:016x} 0x{:016x} 0x{:016x})",
        a.a11, a.a22, a.re_a21, a.im_a21, bits[0], bits[1], bits[2], bits[3]
    );
    let _ = writeln!(
        out,
        "  zeta={} scale_lossy={} polar_exact={} qualifying={}",
        tr.zeta, tr.scale_inexact_underflow, tr.polar_exact, tr.inexact_underflow == false
    );
    let stage = |out: &mut String, name: &str, computed: f64, exactv: DD| {
        let r = rho::<F>(exactv, F::from_f64(computed));
        let _ = writeln!(
            out,
            "  {name:<10} computed={computed:<24e} reference={:<24e} rho={}",
            exactv.to_f64(),
            r.as_f64()
        );
    };
    stage(out, "abs_a21", tr.abs_a21.to_f64(), otr.abs_a21);
    stage(out, "cos_alpha", tr.cos_alpha.to_f64(), otr.cos_alpha);
    stage(out, "sin_alpha", tr.sin_alpha.to_f64(), otr.sin_alpha);
    stage(out, "a_diff", tr.a_diff.to_f64(), otr.a_diff);
    stage(out, "tan_2phi", tr.tan_2phi.to_f64(), otr.tan_2phi);
    stage(out, "tan_phi", tr.tan_phi.to_f64(), otr.tan_phi);
    stage(out, "sec2_phi", tr.sec2_phi.to_f64(), otr.sec2_phi);
    stage(out, "cos_phi", res.rot.cos_phi.to_f64(), oracle.cos_phi);
    stage(out, "sin_phi", tr.sin_phi.to_f64(), otr.sin_phi);
    stage(out, "u21_re", res.rot.cos_alpha_sin_phi.to_f64(), oracle.u21_re);
    stage(out, "u21_im", res.rot.sin_alpha_sin_phi.to_f64(), oracle.u21_im);
    stage(out, "lambda1'", res.lambda1_scaled.to_f64(), oracle.lambda1_scaled);
    stage(out, "lambda2'", res.lambda2_scaled.to_f64(), oracle.lambda2_scaled);
    let _ = writeln!(
        out,
        "  delta_J={} delta_L={} (baseline rt1={} rt2={} cs1={})",
        s.delta_j, s.delta_l, baseline.rt1, baseline.rt2, baseline.cs1
    );
    if let Some((l1, l2)) = res.backscaled {
        let _ = writeln!(out, "  backscaled lambda1={l1} lambda2={l2}");
    }
    let _ = writeln!(out);
}
