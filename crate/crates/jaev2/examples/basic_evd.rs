//! Decompose a few complex Hermitian 2x2 matrices and print the rotation
//! and eigenvalues.
//!
//! ```bash
//! cargo run --release -p jaev2 --example basic_evd
//! ```

use jaev2::{cjaev2, zjaev2, Herm2};

fn show(label: &str, a: Herm2<f64>) {
    let r = zjaev2(&a, true);
    println!("{label}: A = [[{}, {}{:+}i], [{}{:+}i, {}]]", a.a11, a.re_a21, -a.im_a21, a.re_a21, a.im_a21, a.a22);
    println!(
        "  cos(phi) = {:.17}\n  u21      = {:.17} {:+.17}i",
        r.rot.cos_phi, r.rot.cos_alpha_sin_phi, r.rot.sin_alpha_sin_phi
    );
    println!(
        "  scaled eigenvalues = ({:e}, {:e}) * 2^{}",
        r.lambda1_scaled, r.lambda2_scaled, r.back_exponent
    );
    if let Some((l1, l2)) = r.backscaled {
        println!("  eigenvalues        = ({l1}, {l2})");
    }
    println!();
}

fn main() {
    show("diagonal", Herm2::new(2.0, 1.0, 0.0, 0.0));
    show("all ones", Herm2::new(1.0, 1.0, 1.0, 0.0));
    show("pure imaginary off-diagonal", Herm2::new(0.0, 0.0, 0.0, 1.0));
    show("generic", Herm2::new(1.5, -0.75, 0.25, -1.25));
    show(
        "wildly scaled (the kernel rescales internally)",
        Herm2::new(1e308, -2e-308, 3e150, 4e-150),
    );

    // Same decomposition in binary32.
    let r = cjaev2(&Herm2::new(1.0f32, 1.0, 1.0, 0.0), true);
    println!(
        "binary32 all-ones: cos(phi) = {:.9}, eigenvalues = {:?}",
        r.rot.cos_phi,
        r.backscaled.unwrap()
    );
}
