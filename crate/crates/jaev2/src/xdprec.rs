//! Double-double arithmetic (~106-bit effective significand) and the
//! extended-precision reference eigendecomposition built on it.
//!
//! The reference EVD runs the same scaled rotation pipeline as the f32/f64
//! kernels, branch for branch and clamp for clamp, but in `DD` arithmetic, so
//! its outputs track the infinitely precise trajectory of the algorithm to
//! within a few units in 2^-104 per operation. Downstream error measurement
//! treats them as exact.

use core::cmp::Ordering;

use crate::evd::{compute_zeta, Herm2};
use crate::exact::{quick_two_sum, two_prod, two_sum};
use crate::float::{scalbn64, Float};

/// Unevaluated sum `hi + lo` of two binary64 values, normalized so that
/// `hi = fl(hi + lo)`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DD {
    pub hi: f64,
    pub lo: f64,
}

impl DD {
    pub const ZERO: DD = DD { hi: 0.0, lo: 0.0 };
    pub const ONE: DD = DD { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn from_f64(x: f64) -> DD {
        DD { hi: x, lo: 0.0 }
    }

    /// Exact sum of two f64 values.
    #[inline]
    pub fn from_sum(a: f64, b: f64) -> DD {
        let (hi, lo) = two_sum(a, b);
        DD { hi, lo }
    }

    /// Exact product of two f64 values.
    #[inline]
    pub fn from_prod(a: f64, b: f64) -> DD {
        let (hi, lo) = two_prod(a, b);
        DD { hi, lo }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn is_nan(self) -> bool {
        self.hi.is_nan()
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.hi == 0.0 && self.lo == 0.0
    }

    #[inline]
    pub fn neg(self) -> DD {
        DD {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    #[inline]
    pub fn abs(self) -> DD {
        if self.hi.is_sign_negative() {
            self.neg()
        } else {
            self
        }
    }

    /// Apply the sign of `sign` (a plain f64, signed zeros included).
    #[inline]
    pub fn copysign_of(self, sign: f64) -> DD {
        if self.hi.is_sign_negative() == sign.is_sign_negative() {
            self
        } else {
            self.neg()
        }
    }

    /// `self * 2^k`; exact while both components stay in range.
    #[inline]
    pub fn scale2(self, k: i32) -> DD {
        DD {
            hi: scalbn64(self.hi, k),
            lo: scalbn64(self.lo, k),
        }
    }

    pub fn add(self, o: DD) -> DD {
        if !self.hi.is_finite() || !o.hi.is_finite() {
            return DD::from_f64(self.hi + o.hi);
        }
        if self.is_zero() && o.is_zero() {
            // Keep IEEE signed-zero semantics (-0 + -0 = -0).
            return DD::from_f64(self.hi + o.hi);
        }
        let (sh, se) = two_sum(self.hi, o.hi);
        let (th, te) = two_sum(self.lo, o.lo);
        let (sh, se) = quick_two_sum(sh, se + th);
        let (hi, lo) = quick_two_sum(sh, se + te);
        DD { hi, lo }
    }

    #[inline]
    pub fn sub(self, o: DD) -> DD {
        self.add(o.neg())
    }

    pub fn mul(self, o: DD) -> DD {
        if !self.hi.is_finite() || !o.hi.is_finite() {
            return DD::from_f64(self.hi * o.hi);
        }
        let (p, e) = two_prod(self.hi, o.hi);
        if p == 0.0 || !p.is_finite() {
            // Zero products keep the IEEE sign; sub-grid magnitudes flush.
            return DD::from_f64(p);
        }
        let t = self.hi.mul_add(o.lo, self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e + (t + self.lo * o.lo));
        DD { hi, lo }
    }

    pub fn div(self, o: DD) -> DD {
        if !self.hi.is_finite() || !o.hi.is_finite() || o.hi == 0.0 {
            return DD::from_f64(self.hi / o.hi);
        }
        let q1 = self.hi / o.hi;
        if q1 == 0.0 || !q1.is_finite() {
            return DD::from_f64(q1);
        }
        let r = self.sub(o.mul(DD::from_f64(q1)));
        let q2 = r.hi / o.hi;
        let r2 = r.sub(o.mul(DD::from_f64(q2)));
        let q3 = r2.hi / o.hi;
        let (sh, se) = quick_two_sum(q1, q2);
        let (hi, lo) = quick_two_sum(sh, se + q3);
        DD { hi, lo }
    }

    /// Square root; NaN-pair for negative input, which all callers propagate.
    pub fn sqrt(self) -> DD {
        if self.is_zero() {
            return self;
        }
        if self.hi < 0.0 || self.hi.is_nan() {
            return DD::from_f64(f64::NAN);
        }
        if self.hi.is_infinite() {
            return self;
        }
        let h = self.hi.sqrt();
        let (p, e) = two_prod(h, h);
        let d = ((self.hi - p) - e) + self.lo;
        let l = d / (h + h);
        let (hi, lo) = quick_two_sum(h, l);
        DD { hi, lo }
    }

    /// Total ordering of the represented values; `None` on NaN.
    pub fn cmp_value(self, o: DD) -> Option<Ordering> {
        if self.is_nan() || o.is_nan() {
            return None;
        }
        match self.hi.partial_cmp(&o.hi)? {
            Ordering::Equal => self.lo.partial_cmp(&o.lo),
            ord => Some(ord),
        }
    }
}

/// `max` with the NaN-suppressing semantics of C `fmax`, and `-0 < +0`.
pub(crate) fn dd_max_num(a: DD, b: DD) -> DD {
    if a.is_nan() {
        return b;
    }
    if b.is_nan() {
        return a;
    }
    match a.cmp_value(b) {
        Some(Ordering::Less) => b,
        Some(Ordering::Greater) => a,
        _ => {
            // Equal values: prefer the positively signed representative.
            if a.hi.is_sign_negative() {
                b
            } else {
                a
            }
        }
    }
}

/// `min` counterpart of [`dd_max_num`].
pub(crate) fn dd_min_num(a: DD, b: DD) -> DD {
    if a.is_nan() {
        return b;
    }
    if b.is_nan() {
        return a;
    }
    match a.cmp_value(b) {
        Some(Ordering::Less) => a,
        Some(Ordering::Greater) => b,
        _ => {
            if a.hi.is_sign_negative() {
                a
            } else {
                b
            }
        }
    }
}

/// `sqrt(a^2 + b^2)` in DD with internal power-of-two scaling so the squares
/// never overflow or lose bits to the subnormal range.
pub fn dd_hypot(a: DD, b: DD) -> DD {
    let (a, b) = (a.abs(), b.abs());
    if a.is_nan() || b.is_nan() {
        return DD::from_f64(f64::NAN);
    }
    if a.is_zero() {
        return b;
    }
    if b.is_zero() {
        return a;
    }
    let e = a.hi.max(b.hi).frexp_exp();
    let asc = a.scale2(-e);
    let bsc = b.scale2(-e);
    let s = asc.mul(asc).add(bsc.mul(bsc));
    s.sqrt().scale2(e)
}

/// Exact DD representation of `x * 2^k` whenever one exists; the low word is
/// dropped only when it falls below the subnormal bottom.
fn dd_scale_entry(x: f64, k: i32) -> DD {
    let hi = scalbn64(x, k);
    if scalbn64(hi, -k) == x {
        return DD::from_f64(hi);
    }
    let r = x - scalbn64(hi, -k);
    DD {
        hi,
        lo: scalbn64(r, k),
    }
}

/// Reference EVD outputs at DD precision (scaled eigenvalues, as in the
/// floating-point kernels).
#[derive(Clone, Copy, Debug)]
pub struct OracleEvd {
    pub cos_phi: DD,
    pub u21_re: DD,
    pub u21_im: DD,
    pub lambda1_scaled: DD,
    pub lambda2_scaled: DD,
    pub zeta: i32,
}

/// Per-stage values of the reference trajectory, for replay diagnostics.
#[derive(Clone, Copy, Debug)]
pub struct OracleTrace {
    pub abs_a21: DD,
    pub cos_alpha: DD,
    pub sin_alpha: DD,
    pub a_diff: DD,
    pub o_twice: DD,
    pub tan_2phi: DD,
    pub tan_phi: DD,
    pub sec2_phi: DD,
    pub sin_phi: DD,
}

/// Run the rotation pipeline in DD arithmetic, mirroring the f64/f32 kernel's
/// branches and clamps (including the format's own `nu` clamp and the
/// smallest-subnormal guard in the polar step).
pub fn oracle_evd2<F: Float>(a: &Herm2<F>) -> OracleEvd {
    oracle_evd2_trace(a).0
}

pub fn oracle_evd2_trace<F: Float>(a: &Herm2<F>) -> (OracleEvd, OracleTrace) {
    let mu_check = F::TRUE_MIN.to_f64();
    let nu = F::MAX_FINITE.to_f64();

    let zeta = compute_zeta(a);
    let a11 = dd_scale_entry(a.a11.to_f64(), zeta);
    let a22 = dd_scale_entry(a.a22.to_f64(), zeta);
    let re = dd_scale_entry(a.re_a21.to_f64(), zeta);
    let im = dd_scale_entry(a.im_a21.to_f64(), zeta);

    let abs21 = dd_hypot(re, im);
    let cos_alpha = dd_min_num(re.abs().div(abs21), DD::ONE).copysign_of(re.hi);
    let sin_alpha = im.div(dd_max_num(abs21, DD::from_f64(mu_check)));

    let o_twice = abs21.scale2(1);
    let a_diff = a11.sub(a22);
    let quot = o_twice.div(a_diff.abs());
    let tan_2phi = dd_min_num(dd_max_num(quot, DD::ZERO), DD::from_f64(nu)).copysign_of(a_diff.hi);

    let denom = DD::ONE.add(dd_hypot(tan_2phi, DD::ONE));
    let tan_phi = tan_2phi.div(denom);
    let sec2_phi = tan_phi.mul(tan_phi).add(DD::ONE);
    let cos_phi = DD::ONE.div(sec2_phi.sqrt());
    let sin_phi = tan_phi.mul(cos_phi);

    let u21_re = cos_alpha.mul(sin_phi);
    let u21_im = sin_alpha.mul(sin_phi);

    let lambda1 = tan_phi
        .mul(a22.mul(tan_phi).add(o_twice))
        .add(a11)
        .div(sec2_phi);
    let lambda2 = tan_phi
        .mul(a11.mul(tan_phi).sub(o_twice))
        .add(a22)
        .div(sec2_phi);

    (
        OracleEvd {
            cos_phi,
            u21_re,
            u21_im,
            lambda1_scaled: lambda1,
            lambda2_scaled: lambda2,
            zeta,
        },
        OracleTrace {
            abs_a21: abs21,
            cos_alpha,
            sin_alpha,
            a_diff,
            o_twice,
            tan_2phi,
            tan_phi,
            sec2_phi,
            sin_phi,
        },
    )
}

/// Closed-form eigenvalues of the (unscaled) input via the characteristic
/// polynomial, in listing order: the first value is the one the pipeline's
/// `lambda1` converges to (decided by the sign of `a11 - a22`, with the tie
/// going to `center + radius`).
pub fn eigenvalues_closed_form<F: Float>(a: &Herm2<F>) -> (DD, DD) {
    let a11 = a.a11.to_f64();
    let a22 = a.a22.to_f64();
    let center = DD::from_sum(a11, a22).scale2(-1);
    let half_diff = DD::from_sum(a11, -a22).scale2(-1);
    let radius = {
        let hd = half_diff.abs();
        let re = DD::from_f64(a.re_a21.to_f64()).abs();
        let im = DD::from_f64(a.im_a21.to_f64()).abs();
        let m = hd.hi.max(re.hi).max(im.hi);
        if m == 0.0 {
            DD::ZERO
        } else {
            let e = m.frexp_exp();
            let h = hd.scale2(-e);
            let r = re.scale2(-e);
            let i = im.scale2(-e);
            h.mul(h)
                .add(r.mul(r))
                .add(i.mul(i))
                .sqrt()
                .scale2(e)
        }
    };
    if half_diff.hi.is_sign_negative() && !half_diff.is_zero() {
        (center.sub(radius), center.add(radius))
    } else {
        (center.add(radius), center.sub(radius))
    }
}
