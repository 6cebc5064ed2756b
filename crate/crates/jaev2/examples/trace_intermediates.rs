//! Full intermediate chain of the pipeline for a few inputs, with each
//! stage's relative error against the extended-precision reference
//! trajectory (in units of machine precision).
//!
//! ```bash
//! cargo run --release -p jaev2 --example trace_intermediates
//! ```

use jaev2::experiment::trace_block;
use jaev2::Herm2;

fn main() {
    let cases = [
        Herm2::new(1.0f64, 1.0, 1.0, 0.0),
        Herm2::new(0.0, 0.0, 0.0, 1.0),
        Herm2::new(1.5, -0.75, 0.25, -1.25),
        // badly scaled: watch the qualifying flag flip off
        Herm2::new(f64::MAX, f64::from_bits(1), 1.0, 0.0),
    ];
    let mut report = String::new();
    for a in &cases {
        let bits = [
            a.a11.to_bits(),
            a.a22.to_bits(),
            a.re_a21.to_bits(),
            a.im_a21.to_bits(),
        ];
        trace_block::<f64>(&mut report, &bits);
    }
    print!("{report}");
}
