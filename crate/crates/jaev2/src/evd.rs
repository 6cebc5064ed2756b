//! Eigendecomposition of a 2x2 Hermitian matrix by a single Jacobi rotation,
//! computed to high relative accuracy.
//!
//! The pipeline scales the input by a power of two so nothing overflows,
//! extracts the polar form of the off-diagonal entry with `cr_hypot`, forms
//! the rotation tangent through the double-angle formula, and recovers the
//! cosine with `cr_rsqrt`. Every stage is a pure function and is exposed on
//! its own so tests can pin each intermediate.

use crate::crmath::{
    abs, copy_sign, cr_hypot, cr_rsqrt, exact_scale, exponent_of, fused_mul_add, max_num, min_num,
};
use crate::float::Float;

/// 2x2 Hermitian matrix: real diagonal `(a11, a22)`, lower off-diagonal
/// `a21 = re_a21 + i*im_a21` (the upper entry is its conjugate).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Herm2<F> {
    pub a11: F,
    pub a22: F,
    pub re_a21: F,
    pub im_a21: F,
}

impl<F: Float> Herm2<F> {
    pub fn new(a11: F, a22: F, re_a21: F, im_a21: F) -> Self {
        Herm2 {
            a11,
            a22,
            re_a21,
            im_a21,
        }
    }

    /// Real symmetric matrix embedded with a zero imaginary part.
    pub fn symmetric(a11: F, a22: F, a21: F) -> Self {
        Herm2 {
            a11,
            a22,
            re_a21: a21,
            im_a21: F::ZERO,
        }
    }
}

/// Computed rotation: `cos(phi)` and the real/imaginary parts of
/// `e^{i alpha} sin(phi)` (the lower-left entry of the unitary factor).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rot2<F> {
    pub cos_phi: F,
    pub cos_alpha_sin_phi: F,
    pub sin_alpha_sin_phi: F,
}

/// Rotation plus eigenvalues scaled by `2^zeta`; `back_exponent` is the
/// power of two that undoes the scaling.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evd2Result<F> {
    pub rot: Rot2<F>,
    pub lambda1_scaled: F,
    pub lambda2_scaled: F,
    pub back_exponent: i32,
    /// Present when backscaling was requested; the values may overflow to
    /// infinity or round on underflow, by design.
    pub backscaled: Option<(F, F)>,
}

/// Every intermediate of the pipeline, for error attribution and replay.
#[derive(Clone, Copy, Debug)]
pub struct Intermediates<F> {
    pub zeta: i32,
    pub a_scaled: Herm2<F>,
    /// Some scaled entry became subnormal and lost bits.
    pub scale_inexact_underflow: bool,
    pub abs_a21: F,
    pub cos_alpha: F,
    pub sin_alpha: F,
    /// The off-diagonal was exactly real or imaginary, so the polar step was
    /// exact (the error analysis' beta = 1 case).
    pub polar_exact: bool,
    pub a_diff: F,
    pub o_twice: F,
    pub tan_2phi: F,
    pub tan_phi: F,
    pub sec2_phi: F,
    pub sin_phi: F,
    /// Some inexact intermediate underflowed; the relative-accuracy
    /// guarantees do not cover this input.
    pub inexact_underflow: bool,
}

impl<F: Float> Intermediates<F> {
    /// True when the relative-error guarantees of the rotation elements
    /// apply to this input (no inexact underflow anywhere in the trace).
    pub fn high_accuracy(&self) -> bool {
        !self.inexact_underflow
    }
}

/// Scaling exponent `zeta`: places the largest entry's exponent at
/// `MAX_EXP - 3` so neither `2|a21'|` nor the scaled eigenvalues can
/// overflow. Zero entries are clamped with the smallest subnormal before
/// exponent extraction. Exponent ties resolve to the first operand, matching
/// a `>=`-expanded max.
pub fn compute_zeta<F: Float>(a: &Herm2<F>) -> i32 {
    let eta = F::MAX_EXP - 3;
    let z11 = exponent_of(max_num(abs(a.a11), F::TRUE_MIN));
    let z22 = exponent_of(max_num(abs(a.a22), F::TRUE_MIN));
    let z21re = exponent_of(max_num(abs(a.re_a21), F::TRUE_MIN));
    let z21im = exponent_of(max_num(abs(a.im_a21), F::TRUE_MIN));
    let mut zmax = z11;
    if z22 > zmax {
        zmax = z22;
    }
    if z21re > zmax {
        zmax = z21re;
    }
    if z21im > zmax {
        zmax = z21im;
    }
    eta - zmax
}

/// Scale all entries by `2^zeta`. The scaling is exact unless an entry
/// underflows; the flag reports whether any entry became subnormal and lost
/// bits (exact subnormals and zeros are fine).
pub fn scale_matrix<F: Float>(a: &Herm2<F>, zeta: i32) -> (Herm2<F>, bool) {
    let scale_one = |x: F| -> (F, bool) {
        let y = exact_scale(x, zeta);
        let inexact = exact_scale(y, -zeta) != x;
        let lossy = inexact && (y.is_subnormal() || y == F::ZERO);
        (y, lossy)
    };
    let (a11, l1) = scale_one(a.a11);
    let (a22, l2) = scale_one(a.a22);
    let (re, l3) = scale_one(a.re_a21);
    let (im, l4) = scale_one(a.im_a21);
    (
        Herm2 {
            a11,
            a22,
            re_a21: re,
            im_a21: im,
        },
        l1 || l2 || l3 || l4,
    )
}

/// Polar form of the scaled off-diagonal: `|a21'|` by `cr_hypot`, the cosine
/// clamped into `[-1, 1]`, and the sine with its denominator clamped away
/// from zero so `a21' = 0` yields a signed zero sine.
pub fn polar_a21<F: Float>(a: &Herm2<F>) -> (F, F, F) {
    let re_abs = abs(a.re_a21);
    let im_abs = abs(a.im_a21);
    let abs_a21 = cr_hypot(re_abs, im_abs);
    let cos_alpha = copy_sign(min_num(re_abs / abs_a21, F::ONE), a.re_a21);
    let sin_alpha = a.im_a21 / max_num(abs_a21, F::TRUE_MIN);
    (abs_a21, cos_alpha, sin_alpha)
}

/// `tan(2 phi)`: the clamped quotient `2|a21'| / |a11' - a22'|`, signed by
/// the diagonal difference. A 0/0 becomes NaN, is filtered to zero by the
/// NaN-suppressing max, and then picks up the sign of the difference;
/// an overflowed quotient clamps to the largest finite value.
pub fn tangent_double_angle<F: Float>(o_twice: F, a_diff: F) -> F {
    let q = o_twice / abs(a_diff);
    copy_sign(min_num(max_num(q, F::ZERO), F::MAX_FINITE), a_diff)
}

/// Half-angle tangent `tan(2phi) / (1 + hypot(tan(2phi), 1))`; maps
/// `[-nu, nu]` into `[-1, 1]` monotonically (the denominator cannot
/// overflow under round-to-nearest).
pub fn tangent_half<F: Float>(tan_2phi: F) -> F {
    tan_2phi / (F::ONE + cr_hypot(tan_2phi, F::ONE))
}

/// `sec^2(phi) = fma(t, t, 1)`, `cos(phi) = cr_rsqrt(sec^2)`, `sin = t*cos`.
pub fn cosine_sine<F: Float>(tan_phi: F) -> (F, F, F) {
    let sec2 = fused_mul_add(tan_phi, tan_phi, F::ONE);
    let cos_phi = cr_rsqrt(sec2);
    let sin_phi = tan_phi * cos_phi;
    (sec2, cos_phi, sin_phi)
}

/// Scaled eigenvalues through the fused chains
/// `(t*(a22'*t + o) + a11') / sec2` and `(t*(a11'*t - o) + a22') / sec2`;
/// both are finite for every finite scaled input.
pub fn eigenvalues_scaled<F: Float>(a: &Herm2<F>, tan_phi: F, sec2_phi: F, o_twice: F) -> (F, F) {
    let l1 = fused_mul_add(tan_phi, fused_mul_add(a.a22, tan_phi, o_twice), a.a11) / sec2_phi;
    let l2 = fused_mul_add(tan_phi, fused_mul_add(a.a11, tan_phi, -o_twice), a.a22) / sec2_phi;
    (l1, l2)
}

/// Full pipeline with the intermediate record.
pub fn evd2_with_trace<F: Float>(
    a: &Herm2<F>,
    backscale: bool,
) -> (Evd2Result<F>, Intermediates<F>) {
    let zeta = compute_zeta(a);
    let (scaled, scale_lossy) = scale_matrix(a, zeta);

    let (abs_a21, cos_alpha, sin_alpha) = polar_a21(&scaled);
    let polar_exact = scaled.re_a21 == F::ZERO || scaled.im_a21 == F::ZERO;

    let o_twice = exact_scale(abs_a21, 1);
    let a_diff = scaled.a11 - scaled.a22;
    let tan_2phi = tangent_double_angle(o_twice, a_diff);
    let tan_phi = tangent_half(tan_2phi);
    let (sec2_phi, cos_phi, sin_phi) = cosine_sine(tan_phi);

    let u21_re = cos_alpha * sin_phi;
    let u21_im = sin_alpha * sin_phi;

    let (l1, l2) = eigenvalues_scaled(&scaled, tan_phi, sec2_phi, o_twice);
    let back_exponent = -zeta;
    let backscaled = backscale.then(|| {
        (
            exact_scale(l1, back_exponent),
            exact_scale(l2, back_exponent),
        )
    });

    // An intermediate that comes out subnormal is (conservatively) treated
    // as an inexact underflow; one that flushes all the way to zero while
    // its inputs are nonzero certainly is. Exact zeros keep qualifying.
    let subnormal_lossy = |x: F| x.is_subnormal();
    let flushed = |result: F, feeds_nonzero: bool| result == F::ZERO && feeds_nonzero;
    let inexact_underflow = scale_lossy
        || subnormal_lossy(cos_alpha)
        || subnormal_lossy(sin_alpha)
        || subnormal_lossy(a_diff)
        || subnormal_lossy(tan_2phi)
        || subnormal_lossy(tan_phi)
        || subnormal_lossy(sin_phi)
        || subnormal_lossy(u21_re)
        || subnormal_lossy(u21_im)
        || flushed(cos_alpha, scaled.re_a21 != F::ZERO)
        || flushed(sin_alpha, scaled.im_a21 != F::ZERO)
        || flushed(tan_2phi, o_twice != F::ZERO)
        || flushed(tan_phi, tan_2phi != F::ZERO)
        || flushed(sin_phi, tan_phi != F::ZERO)
        || flushed(u21_re, cos_alpha != F::ZERO && sin_phi != F::ZERO)
        || flushed(u21_im, sin_alpha != F::ZERO && sin_phi != F::ZERO);

    (
        Evd2Result {
            rot: Rot2 {
                cos_phi,
                cos_alpha_sin_phi: u21_re,
                sin_alpha_sin_phi: u21_im,
            },
            lambda1_scaled: l1,
            lambda2_scaled: l2,
            back_exponent,
            backscaled,
        },
        Intermediates {
            zeta,
            a_scaled: scaled,
            scale_inexact_underflow: scale_lossy,
            abs_a21,
            cos_alpha,
            sin_alpha,
            polar_exact,
            a_diff,
            o_twice,
            tan_2phi,
            tan_phi,
            sec2_phi,
            sin_phi,
            inexact_underflow,
        },
    )
}

/// EVD of a binary64 complex Hermitian matrix.
pub fn zjaev2(a: &Herm2<f64>, backscale: bool) -> Evd2Result<f64> {
    evd2_with_trace(a, backscale).0
}

/// EVD of a binary32 complex Hermitian matrix.
pub fn cjaev2(a: &Herm2<f32>, backscale: bool) -> Evd2Result<f32> {
    evd2_with_trace(a, backscale).0
}

/// EVD of a binary64 real symmetric matrix; bit-identical to [`zjaev2`] on
/// the embedding with a zero imaginary part.
pub fn djasv2(a11: f64, a22: f64, a21: f64, backscale: bool) -> Evd2Result<f64> {
    zjaev2(&Herm2::symmetric(a11, a22, a21), backscale)
}

/// Binary32 counterpart of [`djasv2`].
pub fn sjasv2(a11: f32, a22: f32, a21: f32, backscale: bool) -> Evd2Result<f32> {
    cjaev2(&Herm2::symmetric(a11, a22, a21), backscale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::float::Float;

    const RN64_INV_SQRT2: u64 = 0x3fe6a09e667f3bcd;
    const RN32_INV_SQRT2: u32 = 0x3f3504f3;
    const RN64_THIRD: u64 = 0x3fd5555555555555;

    fn inv_sqrt2_64() -> f64 {
        f64::from_bits(RN64_INV_SQRT2)
    }

    #[test]
    fn zeta_hand_traces() {
        // All-ones binary64 matrix: frexp(1.0) = 1, so zeta = 1021 - 1.
        let ones = Herm2::new(1.0f64, 1.0, 1.0, 0.0);
        assert_eq!(compute_zeta(&ones), 1020);
        // An entry at the largest finite value pins zeta at -3.
        let big = Herm2::new(f64::MAX, 1.0, 0.0, 0.0);
        assert_eq!(compute_zeta(&big), -3);
        // Zero matrix: everything clamps to the smallest subnormal.
        let zero = Herm2::new(0.0f64, 0.0, 0.0, 0.0);
        assert_eq!(compute_zeta(&zero), 1021 + 1073);
        // Equal exponents take the first operand; the value is unchanged.
        let tie = Herm2::new(1.5f64, 1.0, 1.25, 0.0);
        assert_eq!(compute_zeta(&tie), 1020);
        // f32: eta' = 125.
        let ones32 = Herm2::new(1.0f32, 1.0, 1.0, 0.0);
        assert_eq!(compute_zeta(&ones32), 124);
    }

    #[test]
    fn scale_matrix_exactness_and_flag() {
        let a = Herm2::new(2.0f64, 1.0, 0.0, 0.0);
        let (s, lossy) = scale_matrix(&a, 0);
        assert_eq!(s, a);
        assert!(!lossy);

        let ones = Herm2::new(1.0f64, 1.0, 1.0, 1.0);
        let (s, lossy) = scale_matrix(&ones, 1020);
        assert!(!lossy);
        assert_eq!(s.a11, 2f64.powi(1020));

        // Scaling the smallest subnormal down is inexact.
        let tiny = Herm2::new(<f64 as Float>::TRUE_MIN, 1.0, 0.0, 0.0);
        let (_, lossy) = scale_matrix(&tiny, -1);
        assert!(lossy);
    }

    #[test]
    fn polar_cases() {
        let real = Herm2::new(0.0f64, 0.0, 1.0, 0.0);
        assert_eq!(polar_a21(&real), (1.0, 1.0, 0.0));
        let imag = Herm2::new(0.0f64, 0.0, 0.0, 1.0);
        let (r, c, s) = polar_a21(&imag);
        assert_eq!((r, s), (1.0, 1.0));
        assert_eq!(c, 0.0);
        assert!(c.is_sign_positive());
        // 3-4-5 triple deep in the exponent range: all three parts exact.
        let k = 2f64.powi(-600);
        let t = Herm2::new(0.0f64, 0.0, 3.0 * k, 4.0 * k);
        assert_eq!(polar_a21(&t), (5.0 * k, 0.6, 0.8));
        // Zero off-diagonal: clamped denominator gives signed zero sine.
        let z = Herm2::new(1.0f64, 1.0, 0.0, -0.0);
        let (r, c, s) = polar_a21(&z);
        assert_eq!(r, 0.0);
        assert_eq!(c, 1.0);
        assert_eq!(s, 0.0);
        assert!(s.is_sign_negative());
    }

    #[test]
    fn tangent_double_angle_branches() {
        assert_eq!(tangent_double_angle(0.0f64, 5.0), 0.0);
        let neg = tangent_double_angle(0.0f64, -5.0);
        assert_eq!(neg, 0.0);
        assert!(neg.is_sign_negative());
        // Zero diagonal difference drives the tangent to the clamp.
        assert_eq!(tangent_double_angle(2.0f64, 0.0), f64::MAX);
        assert_eq!(tangent_double_angle(2.0f64, -0.0), -f64::MAX);
        // 0/0 is filtered to a signed zero.
        let z = tangent_double_angle(0.0f64, 0.0);
        assert_eq!(z, 0.0);
        assert!(z.is_sign_positive());
        assert_eq!(tangent_double_angle(6.0f64, 8.0), 0.75);
        assert_eq!(tangent_double_angle(6.0f64, -8.0), -0.75);
    }

    #[test]
    fn tangent_half_range_and_values() {
        assert_eq!(tangent_half(0.0f64), 0.0);
        assert_eq!(tangent_half(f64::MAX), 1.0);
        assert_eq!(tangent_half(-f64::MAX), -1.0);
        assert_eq!(tangent_half(f32::MAX), 1.0f32);
        // 3-4-5: tan(2phi) = 0.75 gives fl(0.75/2.25) = fl(1/3).
        assert_eq!(tangent_half(0.75f64).to_bits(), RN64_THIRD);
    }

    #[test]
    fn tangent_half_monotone_dense() {
        // Dense log-spaced sweep plus the clamp endpoints.
        let mut xs: Vec<f64> = vec![0.0, f64::MAX];
        let mut v = 1e-300f64;
        while v < 1e300 {
            xs.push(v);
            v *= 1.7;
        }
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut prev = -f64::INFINITY;
        for &x in &xs {
            let t = tangent_half(x);
            assert!(t >= prev, "not monotone at {x:e}");
            assert!((-1.0..=1.0).contains(&t));
            prev = t;
        }
    }

    #[test]
    fn cosine_sine_cases() {
        assert_eq!(cosine_sine(0.0f64), (1.0, 1.0, 0.0));
        let (sec2, c, s) = cosine_sine(1.0f64);
        assert_eq!(sec2, 2.0);
        assert_eq!(c, inv_sqrt2_64());
        assert_eq!(s, inv_sqrt2_64());
        let (_, c2, s2) = cosine_sine(-1.0f64);
        assert_eq!(c2, inv_sqrt2_64());
        assert_eq!(s2, -inv_sqrt2_64());
    }

    #[test]
    fn diagonal_matrix_is_identity_rotation() {
        let r = zjaev2(&Herm2::new(2.0, 1.0, 0.0, 0.0), true);
        assert_eq!(r.rot.cos_phi, 1.0);
        assert_eq!(r.rot.cos_alpha_sin_phi, 0.0);
        assert_eq!(r.rot.sin_alpha_sin_phi, 0.0);
        assert_eq!(r.backscaled, Some((2.0, 1.0)));
        let r32 = cjaev2(&Herm2::new(2.0f32, 1.0, 0.0, 0.0), true);
        assert_eq!(r32.backscaled, Some((2.0f32, 1.0)));
    }

    #[test]
    fn all_ones_matrix_full_trace() {
        let (r, t) = evd2_with_trace(&Herm2::new(1.0f64, 1.0, 1.0, 0.0), true);
        assert_eq!(t.zeta, 1020);
        assert_eq!(t.abs_a21, 2f64.powi(1020));
        assert_eq!(t.tan_2phi, f64::MAX);
        assert_eq!(t.tan_phi, 1.0);
        assert_eq!(t.sec2_phi, 2.0);
        assert_eq!(r.rot.cos_phi, inv_sqrt2_64());
        assert_eq!(r.rot.cos_alpha_sin_phi, inv_sqrt2_64());
        assert_eq!(r.rot.sin_alpha_sin_phi, 0.0);
        assert_eq!(r.lambda1_scaled, 2f64.powi(1021));
        assert_eq!(r.lambda2_scaled, 0.0);
        assert_eq!(r.backscaled, Some((2.0, 0.0)));
        assert!(t.high_accuracy());
    }

    #[test]
    fn pure_imaginary_offdiagonal_trace() {
        let (r, _) = evd2_with_trace(&Herm2::new(0.0f64, 0.0, 0.0, 1.0), true);
        assert_eq!(r.rot.cos_phi, inv_sqrt2_64());
        assert_eq!(r.rot.cos_alpha_sin_phi, 0.0);
        assert_eq!(r.rot.sin_alpha_sin_phi, inv_sqrt2_64());
        assert_eq!(r.backscaled, Some((1.0, -1.0)));
        let r32 = cjaev2(&Herm2::new(0.0f32, 0.0, 0.0, 1.0), true);
        assert_eq!(r32.rot.cos_phi, f32::from_bits(RN32_INV_SQRT2));
        assert_eq!(r32.backscaled, Some((1.0f32, -1.0)));
    }

    #[test]
    fn real_variant_is_the_embedding() {
        let cases = [
            (2.0f64, 1.0, 0.0),
            (1.0, 1.0, 1.0),
            (-3.5, 2.25, -0.125),
            (1e300, -1e-300, 7.25),
        ];
        for (a11, a22, a21) in cases {
            let d = djasv2(a11, a22, a21, true);
            let z = zjaev2(&Herm2::new(a11, a22, a21, 0.0), true);
            assert_eq!(d, z);
        }
        let s = sjasv2(1.0f32, 1.0, 1.0, true);
        assert_eq!(s.rot.cos_phi, f32::from_bits(RN32_INV_SQRT2));
        assert_eq!(s.backscaled, Some((2.0f32, 0.0)));
    }

    #[test]
    fn rotation_is_scaling_invariant() {
        let base = Herm2::new(1.5f64, -0.75, 0.25, -1.25);
        let (r0, t0) = evd2_with_trace(&base, false);
        for k in [-400, -1, 1, 37, 400] {
            let scaled = Herm2::new(
                exact_scale(base.a11, k),
                exact_scale(base.a22, k),
                exact_scale(base.re_a21, k),
                exact_scale(base.im_a21, k),
            );
            let (r, t) = evd2_with_trace(&scaled, false);
            assert_eq!(r.rot, r0.rot, "k={k}");
            assert_eq!(r.lambda1_scaled, r0.lambda1_scaled);
            assert_eq!(r.lambda2_scaled, r0.lambda2_scaled);
            assert_eq!(t.zeta, t0.zeta - k);
        }
    }

    #[test]
    fn permutation_swaps_eigenvalues() {
        // Swap the diagonal and conjugate the off-diagonal entry: the scaled
        // eigenvalues swap bit for bit and the off-diagonal rotation parts
        // flip signs as (-re, +im). Needs a11' != a22' (the exact tie keeps
        // the +nu tangent branch on both sides and degenerates).
        let cases = [
            Herm2::new(1.5f64, -0.75, 0.25, -1.25),
            Herm2::new(2.0, 1.0, 3.0, 4.0),
            Herm2::new(-1.0, 5.0, 1e-200, 2.0),
        ];
        for a in cases {
            let swapped = Herm2::new(a.a22, a.a11, a.re_a21, -a.im_a21);
            let ra = zjaev2(&a, false);
            let rs = zjaev2(&swapped, false);
            assert_eq!(rs.lambda1_scaled, ra.lambda2_scaled);
            assert_eq!(rs.lambda2_scaled, ra.lambda1_scaled);
            assert_eq!(rs.rot.cos_phi, ra.rot.cos_phi);
            assert_eq!(rs.rot.cos_alpha_sin_phi, -ra.rot.cos_alpha_sin_phi);
            assert_eq!(rs.rot.sin_alpha_sin_phi, ra.rot.sin_alpha_sin_phi);
        }
    }

    #[test]
    fn exact_zero_tangent_cases() {
        // o = 0 forces an exactly zero double-angle tangent.
        let (_, t) = evd2_with_trace(&Herm2::new(3.0f64, 2.0, 0.0, 0.0), false);
        assert_eq!(t.tan_2phi, 0.0);
        assert!(t.tan_2phi.is_sign_positive());
        // a_diff = -0 with o > 0 drives tan_phi to exactly -1.
        let (_, t) = evd2_with_trace(&Herm2::new(1.0f64, 1.0, 1.0, 1.0), false);
        assert_eq!(t.tan_phi, 1.0);
    }

    #[test]
    fn nonfinite_inputs_flow_through() {
        let r = zjaev2(&Herm2::new(f64::NAN, 1.0, 1.0, 1.0), false);
        assert!(r.lambda1_scaled.is_nan() || r.lambda2_scaled.is_nan());
    }
}
