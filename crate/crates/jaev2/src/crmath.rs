//! Correctly rounded scalar primitives: `cr_hypot`, `cr_rsqrt`, and the
//! small set of IEEE-754 helpers the rotation kernels are written against.
//!
//! The two correctly rounded functions never consult the platform math
//! library. Each computes a double-double estimate of the exact result in a
//! power-of-two-scaled domain and then decides the final rounding by exact
//! expansion comparisons against the format's rounding boundaries, so the
//! returned value is the round-to-nearest-even of the infinitely precise
//! result for every input, ties included.

use crate::exact::{expansion_sign, round_positive_scaled, two_prod};
use crate::float::Float;
use crate::xdprec::DD;

/// Correctly rounded `sqrt(x^2 + y^2)`.
///
/// Follows the C Annex F special cases: infinite if either argument is
/// infinite (even when the other is NaN), NaN only for NaN-with-finite,
/// `|x|` when `y` is zero. Symmetric in arguments and signs, bit for bit.
pub fn cr_hypot<F: Float>(x: F, y: F) -> F {
    if x.is_infinite() || y.is_infinite() {
        return F::INFINITY;
    }
    if x.is_nan() || y.is_nan() {
        return F::NAN;
    }
    let (a, b) = if x.abs().to_f64() >= y.abs().to_f64() {
        (x.abs(), y.abs())
    } else {
        (y.abs(), x.abs())
    };
    let a64 = a.to_f64();
    let b64 = b.to_f64();
    if b64 == 0.0 {
        return a;
    }
    // With b <= a*2^-60 the exact result sits strictly between a and the
    // next upward midpoint, so it rounds to a in either format.
    let ea = a64.frexp_exp();
    if ea - b64.frexp_exp() > 61 {
        return a;
    }

    // Scaled domain: as in [0.5, 1), bs in (2^-62, 1); x^2+y^2 is then the
    // exact sum of the four expansion terms below.
    let asc = crate::float::scalbn64(a64, -ea);
    let bsc = crate::float::scalbn64(b64, -ea);
    let (p1, e1) = two_prod(asc, asc);
    let (p2, e2) = two_prod(bsc, bsc);

    let (sh, sl) = crate::exact::compress_pair(&[p1, e1, p2, e2]);
    let approx = DD { hi: sh, lo: sl }.sqrt();

    round_positive_scaled::<F>((approx.hi, approx.lo), ea, |mh, ml| {
        // Exact value v = sqrt(S) vs midpoint m: compare S against m^2.
        let (q1, f1) = two_prod(mh, mh);
        let (q2, f2) = two_prod(mh, ml);
        let (q3, f3) = two_prod(ml, ml);
        expansion_sign(&[
            p1,
            e1,
            p2,
            e2,
            -q1,
            -f1,
            -2.0 * q2,
            -2.0 * f2,
            -q3,
            -f3,
        ])
    })
}

/// Correctly rounded `1/sqrt(x)`.
///
/// `+0 -> +inf`, `-0 -> -inf`, negative or NaN input -> NaN, `+inf -> +0`.
pub fn cr_rsqrt<F: Float>(x: F) -> F {
    if x.is_nan() {
        return F::NAN;
    }
    let x64 = x.to_f64();
    if x64 == 0.0 {
        return if x.is_sign_negative() {
            -F::INFINITY
        } else {
            F::INFINITY
        };
    }
    if x64 < 0.0 {
        return F::NAN;
    }
    if x.is_infinite() {
        return F::ZERO;
    }

    // Write x = xs * 2^k with k even and xs in [0.25, 1); then
    // 1/sqrt(x) = (1/sqrt(xs)) * 2^(-k/2) with 1/sqrt(xs) in (1, 2].
    let e = x64.frexp_exp();
    let k = if e % 2 == 0 { e } else { e + 1 };
    let xs = crate::float::scalbn64(x64, -k);

    let approx = DD::ONE.div(DD::from_f64(xs).sqrt());

    round_positive_scaled::<F>((approx.hi, approx.lo), -k / 2, |mh, ml| {
        // v = 1/sqrt(xs) vs m: v > m iff 1 > m^2 * xs. An exact tie would
        // need xs = 1/m^2 with m a midpoint (odd significand times a power
        // of two), whose square cannot be a power of two; the Equal arm is
        // kept anyway since the comparison is exact.
        let (q1, f1) = two_prod(mh, mh);
        let (q2, f2) = two_prod(mh, ml);
        let (q3, f3) = two_prod(ml, ml);
        let mut terms = [0.0f64; 13];
        terms[0] = 1.0;
        for (i, t) in [q1, f1, 2.0 * q2, 2.0 * f2, q3, f3].into_iter().enumerate() {
            let (p, err) = two_prod(t, xs);
            terms[1 + 2 * i] = -p;
            terms[2 + 2 * i] = -err;
        }
        expansion_sign(&terms)
    })
}

/// Single rounding of `x*y + z` (IEEE fusedMultiplyAdd).
#[inline]
pub fn fused_mul_add<F: Float>(x: F, y: F, z: F) -> F {
    x.mul_add(y, z)
}

/// C `fmax` semantics: a single NaN argument is suppressed in favor of the
/// other; `-0 < +0` so results are bit-reproducible.
#[inline]
pub fn max_num<F: Float>(x: F, y: F) -> F {
    if x.is_nan() {
        return y;
    }
    if y.is_nan() {
        return x;
    }
    if x < y {
        y
    } else if y < x {
        x
    } else if x.is_sign_negative() {
        y
    } else {
        x
    }
}

/// C `fmin` counterpart of [`max_num`].
#[inline]
pub fn min_num<F: Float>(x: F, y: F) -> F {
    if x.is_nan() {
        return y;
    }
    if y.is_nan() {
        return x;
    }
    if x < y {
        x
    } else if y < x {
        y
    } else if x.is_sign_negative() {
        x
    } else {
        y
    }
}

/// IEEE copySign.
#[inline]
pub fn copy_sign<F: Float>(x: F, y: F) -> F {
    x.copysign(y)
}

/// IEEE abs (sign bit cleared, NaN payload untouched).
#[inline]
pub fn abs<F: Float>(x: F) -> F {
    x.abs()
}

/// `x * 2^k` with a single rounding; exact whenever the result is normal.
#[inline]
pub fn exact_scale<F: Float>(x: F, k: i32) -> F {
    x.scalbn(k)
}

/// frexp-convention exponent: `|x| = f * 2^e` with `f` in `[0.5, 1)`.
///
/// Calling this with zero (or a non-finite value) violates the contract;
/// callers clamp with `max_num(abs(x), TRUE_MIN)` first.
#[inline]
pub fn exponent_of<F: Float>(x: F) -> i32 {
    x.frexp_exp()
}
