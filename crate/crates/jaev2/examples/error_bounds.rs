//! Print the a-priori relative-error bound constants of the rotation
//! elements, per significand width and polar-exactness class, in units of
//! machine precision (rounded away from zero to eight decimals).
//!
//! ```bash
//! cargo run --release -p jaev2 --example error_bounds
//! ```

use jaev2::errlab::{rotation_error_bounds, worst_case_bounds};

fn main() {
    println!("p    beta   cos lower    cos upper    offdiag lower  offdiag upper");
    for beta in [2u8, 1] {
        for p in [23, 52, 112] {
            let b = rotation_error_bounds(p, beta).unwrap();
            println!(
                "{:<4} {:<6} {:<12} {:<12} {:<14} {}",
                p,
                beta,
                b.cos_lo_string(),
                b.cos_hi_string(),
                b.off_lo_string(),
                b.off_hi_string()
            );
        }
    }
    println!();
    for beta in [2u8, 1] {
        let w = worst_case_bounds(beta);
        println!(
            "worst case over p, beta={beta}:  cos in (1 - {}e, 1 + {}e),  offdiag in (1 - {}e, 1 + {}e)",
            w.cos_lo_string(),
            w.cos_hi_string(),
            w.off_lo_string(),
            w.off_hi_string()
        );
    }
    println!();
    println!("(beta = 1 applies when the off-diagonal entry is exactly real or");
    println!(" imaginary, so the polar step is exact; beta = 2 otherwise.)");
}
