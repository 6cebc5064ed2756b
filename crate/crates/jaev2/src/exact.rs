//! Error-free transforms and exact floating-point expansion arithmetic.
//!
//! An expansion is a list of f64 terms whose exact (real) sum is the value
//! being represented. All transforms below are exact provided no term
//! overflows and products stay clear of the subnormal bottom; callers keep
//! operands in a pre-scaled band where that holds.

use core::cmp::Ordering;

use crate::float::Float;

/// `(s, e)` with `s = fl(a+b)` and `s + e = a + b` exactly (Knuth).
#[inline]
pub(crate) fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let ap = s - b;
    let bp = s - ap;
    let da = a - ap;
    let db = b - bp;
    (s, da + db)
}

/// Branch-free two_sum requiring `|a| >= |b|` or `a == 0`.
#[inline]
pub(crate) fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

/// `(p, e)` with `p = fl(a*b)` and `p + e = a*b` exactly (FMA form).
#[inline]
pub(crate) fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

/// Stack-allocated nonoverlapping expansion (components in increasing
/// magnitude order, exact sum preserved by construction).
struct Expansion {
    terms: [f64; 16],
    len: usize,
}

impl Expansion {
    fn new() -> Self {
        Expansion {
            terms: [0.0; 16],
            len: 0,
        }
    }

    /// Shewchuk's expansion growth: fold in one arbitrary f64.
    fn grow(&mut self, b: f64) {
        if b == 0.0 {
            return;
        }
        let mut q = b;
        for x in self.terms[..self.len].iter_mut() {
            let (s, err) = two_sum(q, *x);
            *x = err;
            q = s;
        }
        self.terms[self.len] = q;
        self.len += 1;
    }

    fn from_terms(terms: &[f64]) -> Self {
        let mut e = Expansion::new();
        for &t in terms {
            e.grow(t);
        }
        e
    }
}

/// Exact sign of the sum of `terms` (at most 16 of them).
pub(crate) fn expansion_sign(terms: &[f64]) -> Ordering {
    let e = Expansion::from_terms(terms);
    for &x in e.terms[..e.len].iter().rev() {
        if x > 0.0 {
            return Ordering::Greater;
        }
        if x < 0.0 {
            return Ordering::Less;
        }
    }
    Ordering::Equal
}

/// Compress an expansion to a normalized (hi, lo) pair. The pair carries the
/// leading ~106 bits of the exact sum; lower-order information is dropped.
pub(crate) fn compress_pair(terms: &[f64]) -> (f64, f64) {
    let e = Expansion::from_terms(terms);
    let mut hi = 0.0;
    let mut lo = 0.0;
    for &x in e.terms[..e.len].iter().rev() {
        if x == 0.0 {
            continue;
        }
        if hi == 0.0 {
            hi = x;
        } else {
            lo = x;
            break;
        }
    }
    quick_two_sum(hi, lo)
}

/// Correctly round a positive exact value `v * 2^sigma` into format `F`.
///
/// `approx` is a (hi, lo) estimate of `v` accurate to a few units in 2^-96;
/// `cmp_mid` must return the exact ordering of `v` against a rounding-boundary
/// midpoint handed to it as an exact (hi, lo) pair in the same scaled domain.
/// The candidate walk below converges because every comparison is exact; the
/// estimate only controls the starting point.
pub(crate) fn round_positive_scaled<F: Float>(
    approx: (f64, f64),
    sigma: i32,
    cmp_mid: impl Fn(f64, f64) -> Ordering,
) -> F {
    debug_assert!(approx.0 > 0.0);
    let mut c = F::from_f64(crate::float::scalbn64(approx.0, sigma));
    if c <= F::ZERO {
        c = F::TRUE_MIN;
    }
    if !c.is_finite() {
        c = F::MAX_FINITE;
    }

    for _ in 0..128 {
        // Midpoint between c and its upper neighbor, in the scaled domain.
        let (mh, ml) = upper_midpoint_scaled(c, sigma);
        match cmp_mid(mh, ml) {
            Ordering::Greater => {
                let next = c.next_up_pos();
                if !next.is_finite() {
                    // v > MAX + ulp/2: correct rounding overflows.
                    return F::INFINITY;
                }
                c = next;
                continue;
            }
            Ordering::Equal => {
                // Tie: pick the neighbor with an even significand. Adjacent
                // positive values have adjacent bit patterns, so parity of the
                // last bit decides; +inf (pattern after MAX) counts as even,
                // matching the IEEE overflow tie.
                let next = c.next_up_pos();
                return if c.to_bits_u64() & 1 == 0 { c } else { next };
            }
            Ordering::Less => {}
        }
        let (mh, ml) = lower_midpoint_scaled(c, sigma);
        match cmp_mid(mh, ml) {
            Ordering::Less => {
                c = c.next_down_pos();
                debug_assert!(c > F::ZERO, "value rounded below the format range");
            }
            Ordering::Equal => {
                let prev = c.next_down_pos();
                return if c.to_bits_u64() & 1 == 0 { c } else { prev };
            }
            Ordering::Greater => return c,
        }
    }
    unreachable!("rounding walk failed to converge");
}

/// `(c + next(c)) / 2 * 2^-sigma` as an exact (hi, lo) pair.
fn upper_midpoint_scaled<F: Float>(c: F, sigma: i32) -> (f64, f64) {
    let gap = if c == F::MAX_FINITE {
        // next(MAX) is inf; the grid step at the top keeps the binade's ulp.
        exp2i(F::MAX_EXP - 1 - F::SIG_BITS)
    } else {
        c.next_up_pos().to_f64() - c.to_f64()
    };
    midpoint_scaled(c, gap, sigma)
}

/// `(prev(c) + c) / 2 * 2^-sigma` as an exact (hi, lo) pair.
fn lower_midpoint_scaled<F: Float>(c: F, sigma: i32) -> (f64, f64) {
    let gap = c.to_f64() - c.next_down_pos().to_f64();
    midpoint_scaled(c, -gap, sigma)
}

fn midpoint_scaled<F: Float>(c: F, signed_gap: f64, sigma: i32) -> (f64, f64) {
    // Gaps between adjacent values are powers of two, so halving after the
    // exact 2^-sigma scale never rounds, even when c*2^-sigma sits where the
    // target format would have no representation for gap/2.
    let hi = crate::float::scalbn64(c.to_f64(), -sigma);
    let lo = crate::float::scalbn64(signed_gap, -sigma - 1);
    debug_assert!(hi.is_finite() && lo.is_finite() && lo != 0.0);
    (hi, lo)
}

/// Exact `2^k` as f64; `k` must be in the finite range.
#[inline]
pub(crate) fn exp2i(k: i32) -> f64 {
    crate::float::scalbn64(1.0, k)
}
