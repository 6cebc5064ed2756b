//! Self-contained port of the LAPACK 2x2 Hermitian eigensolvers
//! (`DLAEV2`/`SLAEV2` and their complex wrappers `ZLAEV2`/`CLAEV2`), used as
//! the comparison baseline for the accurate rotation kernels.
//!
//! The real symmetric core is transcribed statement for statement from the
//! reference Fortran under round-to-nearest; the complex wrapper computes the
//! off-diagonal modulus with `cr_hypot` (the Fortran intrinsic `ABS` on a
//! complex value leaves the rounding to the vendor library).

use crate::crmath::cr_hypot;
use crate::evd::Herm2;
use crate::float::Float;

/// Eigenvalues `(rt1, rt2)` and the first eigenvector column `(cs1, sn1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Laev2Out<F> {
    pub rt1: F,
    pub rt2: F,
    pub cs1: F,
    pub sn1_re: F,
    pub sn1_im: F,
}

/// Real symmetric core for the matrix `[[a, b], [b, c]]`; returns
/// `(rt1, rt2, cs1, sn1)`.
pub fn laev2_sym<F: Float>(a: F, b: F, c: F) -> (F, F, F, F) {
    let zero = F::ZERO;
    let one = F::ONE;
    let two = one + one;
    let half = one / two;

    let sm = a + c;
    let df = a - c;
    let adf = df.abs();
    let tb = b + b;
    let ab = tb.abs();
    let (acmx, acmn) = if a.abs() > c.abs() { (a, c) } else { (c, a) };
    let rt = if adf > ab {
        let q = ab / adf;
        adf * (one + q * q).sqrt()
    } else if adf < ab {
        let q = adf / ab;
        ab * (one + q * q).sqrt()
    } else {
        // Includes the case ab = adf = 0.
        ab * two.sqrt()
    };

    let (rt1, rt2, sgn1) = if sm < zero {
        let rt1 = half * (sm - rt);
        // Order of execution matters for the smaller eigenvalue.
        let rt2 = (acmx / rt1) * acmn - (b / rt1) * b;
        (rt1, rt2, -1)
    } else if sm > zero {
        let rt1 = half * (sm + rt);
        let rt2 = (acmx / rt1) * acmn - (b / rt1) * b;
        (rt1, rt2, 1)
    } else {
        // Includes the case rt1 = rt2 = 0.
        (half * rt, -half * rt, 1)
    };

    let (cs, sgn2) = if df >= zero {
        (df + rt, 1)
    } else {
        (df - rt, -1)
    };
    let acs = cs.abs();
    let (mut cs1, mut sn1) = if acs > ab {
        let ct = -tb / cs;
        let sn1 = one / (one + ct * ct).sqrt();
        (ct * sn1, sn1)
    } else if ab == zero {
        (one, zero)
    } else {
        let tn = -cs / tb;
        let cs1 = one / (one + tn * tn).sqrt();
        (cs1, tn * cs1)
    };
    if sgn1 == sgn2 {
        let tn = cs1;
        cs1 = -sn1;
        sn1 = tn;
    }
    (rt1, rt2, cs1, sn1)
}

/// Complex Hermitian wrapper: rotate the off-diagonal onto the real axis,
/// run the symmetric core on its modulus, and re-apply the phase.
pub fn laev2_herm<F: Float>(a: &Herm2<F>) -> Laev2Out<F> {
    laev2_herm_with_modulus(a, cr_hypot(a.re_a21, a.im_a21))
}

/// [`laev2_herm`] with the off-diagonal modulus supplied by the caller.
///
/// The Fortran source leaves `ABS` on a complex value to the vendor math
/// library; passing that library's value here reproduces such a build bit
/// for bit, while the default wrapper uses the correctly rounded modulus.
pub fn laev2_herm_with_modulus<F: Float>(a: &Herm2<F>, ab: F) -> Laev2Out<F> {
    // The LAPACK routine takes the upper entry b = conj(a21); its phase
    // factor w = conj(b)/|b| is then a21/|a21|.
    let (w_re, w_im) = if ab == F::ZERO {
        (F::ONE, F::ZERO)
    } else {
        (a.re_a21 / ab, a.im_a21 / ab)
    };
    let (rt1, rt2, cs1, t) = laev2_sym(a.a11, ab, a.a22);
    // Fortran promotes the real t to complex before w*t; the promoted form
    // only differs in the signs of zero components, but those decide bit
    // compatibility with reference builds.
    Laev2Out {
        rt1,
        rt2,
        cs1,
        sn1_re: w_re * t - w_im * F::ZERO,
        sn1_im: w_re * F::ZERO + w_im * t,
    }
}

/// Binary64 real symmetric baseline (`DLAEV2`).
pub fn dlaev2_ref(a: f64, b: f64, c: f64) -> (f64, f64, f64, f64) {
    laev2_sym(a, b, c)
}

/// Binary32 real symmetric baseline (`SLAEV2`).
pub fn slaev2_ref(a: f32, b: f32, c: f32) -> (f32, f32, f32, f32) {
    laev2_sym(a, b, c)
}

/// Binary64 complex Hermitian baseline (`ZLAEV2`).
pub fn zlaev2_ref(a: &Herm2<f64>) -> Laev2Out<f64> {
    laev2_herm(a)
}

/// Binary32 complex Hermitian baseline (`CLAEV2`).
pub fn claev2_ref(a: &Herm2<f32>) -> Laev2Out<f32> {
    laev2_herm(a)
}

/// Extract the rotation triple `(cos, Re sin-part, Im sin-part)` so the
/// determinant-departure metric is computed identically for both algorithms.
pub fn laev2_to_rot<F: Float>(out: &Laev2Out<F>) -> (F, F, F) {
    (out.cs1, out.sn1_re, out.sn1_im)
}
