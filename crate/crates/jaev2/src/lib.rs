//! Accurate Jacobi rotations for 2x2 Hermitian matrices.
//!
//! The library computes the eigendecomposition `U* A U = diag(l1, l2)` of a
//! 2x2 Hermitian (or real symmetric) matrix with a unitary Jacobi rotation
//! whose elements carry provably small relative errors, by building the
//! rotation out of two correctly rounded primitives: `cr_hypot(x, y)` and
//! `cr_rsqrt(x)`. Both primitives are implemented here from scratch for
//! binary32 and binary64, with round-to-nearest-even decided exactly.
//!
//! What's in the box:
//!
//! - [`crmath`]: the correctly rounded scalars plus the small IEEE helper set
//!   (`fused_mul_add`, NaN-suppressing min/max, `exact_scale`, ...).
//! - [`evd`]: the rotation pipeline, stage by stage, with drivers
//!   [`evd::zjaev2`] / [`evd::cjaev2`] (complex) and [`evd::djasv2`] /
//!   [`evd::sjasv2`] (real symmetric).
//! - [`xdprec`]: double-double arithmetic and the extended-precision
//!   reference trajectory used as ground truth for error measurement.
//! - [`laev2`]: a self-contained port of the LAPACK 2x2 eigensolvers, the
//!   comparison baseline.
//! - [`errlab`]: relative-error metrics in units of machine precision, the
//!   determinant-departure measure, run statistics with replayable
//!   witnesses, and the a-priori bound-constant evaluator.
//! - [`experiment`]: the reproducible batch driver behind the `jaev2` binary.
//!
//! Start with the examples, one per capability:
//!
//! ```text
//! cargo run --release -p jaev2 --example basic_evd
//! cargo run --release -p jaev2 --example real_symmetric
//! cargo run --release -p jaev2 --example correct_rounding
//! cargo run --release -p jaev2 --example error_bounds
//! cargo run --release -p jaev2 --example compare_with_lapack
//! cargo run --release -p jaev2 --example trace_intermediates
//! cargo run --release -p jaev2 --example batch_experiment
//! ```
//!
//! Minimal use:
//!
//! ```
//! use jaev2::{Herm2, zjaev2};
//!
//! let a = Herm2::new(1.0, 1.0, 1.0, 0.0);
//! let r = zjaev2(&a, true);
//! assert_eq!(r.backscaled, Some((2.0, 0.0)));
//! ```

pub mod crmath;
pub mod errlab;
pub mod evd;
mod exact;
pub mod experiment;
pub mod float;
pub mod laev2;
pub mod xdprec;

pub use crmath::{cr_hypot, cr_rsqrt, fused_mul_add, max_num, min_num};
pub use errlab::{delta_det, rho, rotation_error_bounds, worst_case_bounds, RelErr, RunStats};
pub use evd::{
    cjaev2, djasv2, sjasv2, zjaev2, Evd2Result, Herm2, Intermediates, Rot2,
};
pub use experiment::{run_experiment, RunConfig};
pub use float::Float;
pub use laev2::{claev2_ref, dlaev2_ref, slaev2_ref, zlaev2_ref, Laev2Out};
pub use xdprec::{oracle_evd2, OracleEvd, DD};
