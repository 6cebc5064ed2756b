//! The real symmetric variants: same pipeline, zero imaginary part, and a
//! check that they are bit-identical to the complex kernels on the
//! embedding.
//!
//! ```bash
//! cargo run --release -p jaev2 --example real_symmetric
//! ```

use jaev2::{djasv2, sjasv2, zjaev2, Herm2};

fn main() {
    for (a11, a22, a21) in [(2.0, 1.0, 0.0), (1.0, 1.0, 1.0), (-3.5, 2.25, -0.125)] {
        let r = djasv2(a11, a22, a21, true);
        println!("[[{a11}, {a21}], [{a21}, {a22}]]:");
        println!(
            "  cos = {:.17}, sin = {:.17}, eigenvalues = {:?}",
            r.rot.cos_phi,
            r.rot.cos_alpha_sin_phi,
            r.backscaled.unwrap()
        );
        let z = zjaev2(&Herm2::symmetric(a11, a22, a21), true);
        assert_eq!(r, z, "real variant is the complex kernel on im = 0");
    }

    let s = sjasv2(1.0f32, 1.0, 1.0, true);
    println!(
        "binary32 [[1,1],[1,1]]: cos = {:.9}, eigenvalues = {:?}",
        s.rot.cos_phi,
        s.backscaled.unwrap()
    );
    println!("real == complex-on-embedding held bit-for-bit on all inputs above");
}
