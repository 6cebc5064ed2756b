//! The two correctly rounded primitives on display: exact cases, special
//! values, and a genuine round-to-nearest-even tie.
//!
//! ```bash
//! cargo run --release -p jaev2 --example correct_rounding
//! ```

use jaev2::{cr_hypot, cr_rsqrt};

fn main() {
    println!("cr_hypot(3, 4)            = {}", cr_hypot(3.0f64, 4.0));
    println!("cr_hypot(1, 1)            = {:.17}", cr_hypot(1.0f64, 1.0));
    println!("  bits: {:016x} (nearest f64 to sqrt(2))", cr_hypot(1.0f64, 1.0).to_bits());
    println!("cr_hypot(x, 0)            = |x|, e.g. {}", cr_hypot(-7.25f64, 0.0));
    println!("cr_hypot(MAX, MAX)        = {}", cr_hypot(f64::MAX, f64::MAX));
    println!("cr_hypot(inf, NaN)        = {}", cr_hypot(f64::INFINITY, f64::NAN));

    // A Pythagorean pair whose exact hypotenuse is 2^53 + 2^27 + 1: a
    // 54-bit odd integer, i.e. exactly halfway between two binary64 values.
    // Ties-to-even picks the neighbor with the even significand.
    let a = 134217729.0; // 2^27 + 1
    let b = 9007199388958720.0; // 2^53 + 2^27
    let h = cr_hypot(a, b);
    println!("tie: cr_hypot(2^27+1, 2^53+2^27) = {h} (exact value is {b} + 1, a midpoint)");
    assert_eq!(h, b);

    println!();
    println!("cr_rsqrt(4)               = {}", cr_rsqrt(4.0f64));
    println!("cr_rsqrt(2)               = {:.17}", cr_rsqrt(2.0f64));
    println!("cr_rsqrt(+0) / cr_rsqrt(-0) = {} / {}", cr_rsqrt(0.0f64), cr_rsqrt(-0.0f64));
    println!("cr_rsqrt(-1)              = {}", cr_rsqrt(-1.0f64));
    println!("cr_rsqrt(inf)             = {}", cr_rsqrt(f64::INFINITY));
    println!(
        "cr_rsqrt(smallest subnormal) = {:e} (exactly 2^537)",
        cr_rsqrt(f64::from_bits(1))
    );

    // binary32 versions share the machinery.
    println!();
    println!("cr_hypot(1f32, 1f32)      = {:.9}", cr_hypot(1.0f32, 1.0));
    println!("f32 tie: cr_hypot(2^24-1, 2^13) = {}", cr_hypot(16777215.0f32, 8192.0f32));
    println!("cr_rsqrt(2f32)            = {:.9}", cr_rsqrt(2.0f32));
}
