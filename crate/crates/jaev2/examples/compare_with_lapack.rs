//! Determinant-departure comparison on a random batch: the accurate
//! rotations against the LAPACK-style baseline, both measured in units of
//! machine precision with double-double arithmetic.
//!
//! ```bash
//! cargo run --release -p jaev2 --example compare_with_lapack
//! ```

use jaev2::errlab::delta_det;
use jaev2::evd::{zjaev2, Herm2, Rot2};
use jaev2::laev2::{laev2_to_rot, zlaev2_ref};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xdeadbeef);
    let mut gen = || loop {
        let x = f64::from_bits(rng.next_u64());
        if x.is_finite() && x.abs() >= f64::MIN_POSITIVE && x.abs() <= f64::MAX / 4.0 {
            return x;
        }
    };

    let n = 1 << 20;
    let (mut jmin, mut jmax) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut lmin, mut lmax) = (f64::INFINITY, f64::NEG_INFINITY);
    for _ in 0..n {
        let a = Herm2::new(gen(), gen(), gen(), gen());
        let r = zjaev2(&a, false);
        let dj = delta_det(&r.rot).to_f64();
        jmin = jmin.min(dj);
        jmax = jmax.max(dj);

        let out = zlaev2_ref(&a);
        let (c, re, im) = laev2_to_rot(&out);
        let dl = delta_det(&Rot2 {
            cos_phi: c,
            cos_alpha_sin_phi: re,
            sin_alpha_sin_phi: im,
        })
        .to_f64();
        lmin = lmin.min(dl);
        lmax = lmax.max(dl);
    }

    println!("determinant departure from unity over {n} random matrices, in eps units:");
    println!("  accurate rotation: [{jmin:+.4}, {jmax:+.4}]  worst |delta| = {:.4}", jmin.abs().max(jmax.abs()));
    println!("  baseline         : [{lmin:+.4}, {lmax:+.4}]  worst |delta| = {:.4}", lmin.abs().max(lmax.abs()));
    println!(
        "  worst-case ratio baseline/accurate = {:.2}",
        lmin.abs().max(lmax.abs()) / jmin.abs().max(jmax.abs())
    );
}
