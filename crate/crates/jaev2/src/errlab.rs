//! Error measurement: relative errors in units of machine precision, the
//! determinant-departure metric, per-run extremal statistics with replayable
//! witnesses, and the evaluator for the a-priori relative-error bound
//! constants of the rotation elements.
//!
//! All metric arithmetic runs in double-double so the measurement itself adds
//! nothing visible at the scale being measured.

use core::cmp::Ordering;
use core::fmt;

use crate::evd::Rot2;
use crate::exact::{compress_pair, two_prod};
use crate::float::Float;
use crate::xdprec::DD;

/// Relative error in units of the format's machine precision, with the
/// zero-value convention: exact 0 pairs with computed 0 (error 0), and with
/// anything else as a signed infinity.
#[derive(Clone, Copy, Debug)]
pub struct RelErr {
    pub eps_units: DD,
    pub class: RhoClass,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RhoClass {
    Finite,
    PosInf,
    NegInf,
}

impl RelErr {
    pub fn is_finite(&self) -> bool {
        self.class == RhoClass::Finite
    }

    /// Finite value as f64 (the DD head); infinities map to +/-inf.
    pub fn as_f64(&self) -> f64 {
        match self.class {
            RhoClass::Finite => self.eps_units.to_f64(),
            RhoClass::PosInf => f64::INFINITY,
            RhoClass::NegInf => f64::NEG_INFINITY,
        }
    }
}

/// `rho(computed) = (computed - exact) / (exact * eps)` evaluated in DD,
/// where `eps` is the machine precision of `F`.
pub fn rho<F: Float>(exact: DD, computed: F) -> RelErr {
    let c = computed.to_f64();
    if exact.is_zero() {
        return if c == 0.0 {
            RelErr {
                eps_units: DD::ZERO,
                class: RhoClass::Finite,
            }
        } else if c < 0.0 {
            RelErr {
                eps_units: DD::ZERO,
                class: RhoClass::NegInf,
            }
        } else {
            RelErr {
                eps_units: DD::ZERO,
                class: RhoClass::PosInf,
            }
        };
    }
    let r = DD::from_f64(c)
        .sub(exact)
        .div(exact)
        .scale2(F::SIG_BITS + 1);
    if r.hi.is_finite() {
        RelErr {
            eps_units: r,
            class: RhoClass::Finite,
        }
    } else if r.hi < 0.0 {
        RelErr {
            eps_units: DD::ZERO,
            class: RhoClass::NegInf,
        }
    } else {
        RelErr {
            eps_units: DD::ZERO,
            class: RhoClass::PosInf,
        }
    }
}

/// Determinant departure from unity in units of machine precision:
/// `(cos^2 + re^2 + im^2 - 1) / eps`, with the squares and the sum carried
/// exactly before the final (exact) power-of-two division.
pub fn delta_det<F: Float>(rot: &Rot2<F>) -> DD {
    let c = rot.cos_phi.to_f64();
    let a = rot.cos_alpha_sin_phi.to_f64();
    let b = rot.sin_alpha_sin_phi.to_f64();
    let (c2, ce) = two_prod(c, c);
    let (a2, ae) = two_prod(a, a);
    let (b2, be) = two_prod(b, b);
    let (hi, lo) = compress_pair(&[c2, ce, a2, ae, b2, be, -1.0]);
    DD { hi, lo }.scale2(F::SIG_BITS + 1)
}

/// Input (as raw bit patterns) attaining an extremal statistic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Witness {
    pub value: f64,
    pub k: u64,
    pub input_bits: [u64; 4],
}

/// Running min/max with witness retention. Ties keep the smallest index, so
/// merging is commutative and associative and parallel runs reproduce the
/// serial result exactly.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Extreme {
    pub min: Option<Witness>,
    pub max: Option<Witness>,
}

impl Extreme {
    pub fn update(&mut self, value: f64, k: u64, input_bits: [u64; 4]) {
        if value.is_nan() {
            return;
        }
        let w = Witness {
            value,
            k,
            input_bits,
        };
        self.min = Some(match self.min {
            Some(cur) if cur.value < value || (cur.value == value && cur.k <= k) => cur,
            _ => w,
        });
        self.max = Some(match self.max {
            Some(cur) if cur.value > value || (cur.value == value && cur.k <= k) => cur,
            _ => w,
        });
    }

    pub fn merge(mut self, other: Extreme) -> Extreme {
        if let Some(w) = other.min {
            match self.min {
                Some(cur)
                    if cur.value < w.value || (cur.value == w.value && cur.k <= w.k) => {}
                _ => self.min = Some(w),
            }
        }
        if let Some(w) = other.max {
            match self.max {
                Some(cur)
                    if cur.value > w.value || (cur.value == w.value && cur.k <= w.k) => {}
                _ => self.max = Some(w),
            }
        }
        self
    }

    pub fn min_value(&self) -> f64 {
        self.min.map_or(f64::NAN, |w| w.value)
    }

    pub fn max_value(&self) -> f64 {
        self.max.map_or(f64::NAN, |w| w.value)
    }
}

/// One measured matrix, ready for accumulation.
#[derive(Clone, Copy, Debug)]
pub struct Sample {
    pub k: u64,
    pub input_bits: [u64; 4],
    pub delta_j: f64,
    pub delta_l: f64,
    pub rho_cos: RelErr,
    pub rho_re: RelErr,
    pub rho_im: RelErr,
    pub qualifying: bool,
    /// Envelope violation among qualifying inputs (set by the caller that
    /// knows which envelope is being checked).
    pub violation: bool,
}

/// Per-run extremal statistics.
#[derive(Clone, Copy, Debug, Default)]
pub struct RunStats {
    pub delta_j: Extreme,
    pub delta_l: Extreme,
    pub rho_cos: Extreme,
    pub rho_re: Extreme,
    pub rho_im: Extreme,
    /// Largest |delta_j| among qualifying inputs.
    pub abs_delta_j_qualifying: Extreme,
    pub n_total: u64,
    pub n_qualifying: u64,
    pub n_inf_rho: u64,
    pub n_violations: u64,
}

/// Fold one sample into the running statistics. Infinite relative errors are
/// counted separately and never enter the finite extremes.
pub fn accumulate(stats: &mut RunStats, s: &Sample) {
    stats.n_total += 1;
    if s.qualifying {
        stats.n_qualifying += 1;
        stats
            .abs_delta_j_qualifying
            .update(s.delta_j.abs(), s.k, s.input_bits);
    }
    if s.violation {
        stats.n_violations += 1;
    }
    stats.delta_j.update(s.delta_j, s.k, s.input_bits);
    stats.delta_l.update(s.delta_l, s.k, s.input_bits);
    for (slot, r) in [
        (&mut stats.rho_cos, &s.rho_cos),
        (&mut stats.rho_re, &s.rho_re),
        (&mut stats.rho_im, &s.rho_im),
    ] {
        if r.is_finite() {
            slot.update(r.eps_units.to_f64(), s.k, s.input_bits);
        } else {
            stats.n_inf_rho += 1;
        }
    }
}

impl RunStats {
    pub fn merge(mut self, other: RunStats) -> RunStats {
        self.delta_j = self.delta_j.merge(other.delta_j);
        self.delta_l = self.delta_l.merge(other.delta_l);
        self.rho_cos = self.rho_cos.merge(other.rho_cos);
        self.rho_re = self.rho_re.merge(other.rho_re);
        self.rho_im = self.rho_im.merge(other.rho_im);
        self.abs_delta_j_qualifying = self
            .abs_delta_j_qualifying
            .merge(other.abs_delta_j_qualifying);
        self.n_total += other.n_total;
        self.n_qualifying += other.n_qualifying;
        self.n_inf_rho += other.n_inf_rho;
        self.n_violations += other.n_violations;
        self
    }
}

/// Quantity of the form `1 + eta` with `eta` carried in DD, so differences
/// from one keep full relative accuracy down to 2^-113-scale perturbations.
#[derive(Clone, Copy, Debug)]
struct OnePlus {
    eta: DD,
}

impl OnePlus {
    const EXACT_ONE: OnePlus = OnePlus { eta: DD::ZERO };

    fn from_eta(eta: DD) -> OnePlus {
        OnePlus { eta }
    }

    fn mul(self, o: OnePlus) -> OnePlus {
        // (1+a)(1+b) = 1 + (a + b + ab)
        OnePlus {
            eta: self.eta.add(o.eta).add(self.eta.mul(o.eta)),
        }
    }

    fn div(self, o: OnePlus) -> OnePlus {
        // (1+a)/(1+b) = 1 + (a-b)/(1+b)
        OnePlus {
            eta: self.eta.sub(o.eta).div(DD::ONE.add(o.eta)),
        }
    }

    fn sqrt(self) -> OnePlus {
        // sqrt(1+a) = 1 + a/(1 + sqrt(1+a))
        let root = DD::ONE.add(self.eta).sqrt();
        OnePlus {
            eta: self.eta.div(DD::ONE.add(root)),
        }
    }

    fn powi(self, n: i32) -> OnePlus {
        let mut acc = OnePlus::EXACT_ONE;
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Unsupported significand width passed to the bound evaluator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnsupportedPrecision(pub i32);

impl fmt::Display for UnsupportedPrecision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unsupported significand width p = {}", self.0)
    }
}

impl std::error::Error for UnsupportedPrecision {}

/// A-priori bound constants for the rotation-element relative errors, in
/// units of machine precision, rounded away from zero to eight decimals.
///
/// `cos_lo`/`cos_hi` bound how far below/above one the cosine's relative
/// perturbation can sit; `off_lo`/`off_hi` do the same for both off-diagonal
/// parts. The `*_e8` fields are the away-rounded values times 10^8.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundConstants {
    pub p: i32,
    pub beta: u8,
    pub cos_lo_e8: i64,
    pub cos_hi_e8: i64,
    pub off_lo_e8: i64,
    pub off_hi_e8: i64,
}

impl BoundConstants {
    pub fn cos_lo_string(&self) -> String {
        e8_string(self.cos_lo_e8)
    }
    pub fn cos_hi_string(&self) -> String {
        e8_string(self.cos_hi_e8)
    }
    pub fn off_lo_string(&self) -> String {
        e8_string(self.off_lo_e8)
    }
    pub fn off_hi_string(&self) -> String {
        e8_string(self.off_hi_e8)
    }

    /// Envelope check for one measured relative error: strict containment in
    /// `(-lo, +hi)`, with infinities always outside.
    pub fn contains_cos(&self, r: &RelErr) -> bool {
        within(r, self.cos_lo_e8, self.cos_hi_e8)
    }
    pub fn contains_off(&self, r: &RelErr) -> bool {
        within(r, self.off_lo_e8, self.off_hi_e8)
    }
}

fn within(r: &RelErr, lo_e8: i64, hi_e8: i64) -> bool {
    if !r.is_finite() {
        return false;
    }
    let scaled = r.eps_units.mul(DD::from_f64(1e8));
    scaled.cmp_value(DD::from_f64(-(lo_e8 as f64))) == Some(Ordering::Greater)
        && scaled.cmp_value(DD::from_f64(hi_e8 as f64)) == Some(Ordering::Less)
}

fn e8_string(n: i64) -> String {
    format!("{}.{:08}", n / 100_000_000, n % 100_000_000)
}

/// Ceiling of a positive DD value scaled by 10^8 (rounding away from zero to
/// eight decimal places; exact multiples stay put).
fn away_e8(v: DD) -> i64 {
    let x = v.mul(DD::from_f64(1e8));
    debug_assert!(x.hi > 0.0 && x.hi < 9.0e15);
    let f0 = x.hi.floor();
    let frac = DD::from_sum(x.hi - f0, x.lo);
    let mut n = f0 as i64;
    match frac.cmp_value(DD::ZERO) {
        Some(Ordering::Greater) => {
            n += 1;
            if frac.cmp_value(DD::ONE) == Some(Ordering::Greater) {
                n += 1;
            }
        }
        _ => {}
    }
    n
}

/// Evaluate the relative-error bound chain for significand width `p` and
/// polar-exactness class `beta` (1 when the off-diagonal is exactly real or
/// imaginary, else 2).
///
/// The chain composes the per-stage perturbation envelopes of the pipeline:
/// the clamped quotient, the half-angle tangent, the fused secant, the
/// reciprocal square root, and the off-diagonal products, each as a
/// `(1 +/- eps)^k` factor in exact-difference form.
pub fn rotation_error_bounds(p: i32, beta: u8) -> Result<BoundConstants, UnsupportedPrecision> {
    if !(p == 23 || p == 52 || p == 112) {
        return Err(UnsupportedPrecision(p));
    }
    assert!(beta == 1 || beta == 2, "beta must be 1 or 2");
    let b = beta as i32;
    let eps = crate::exact::exp2i(-(p + 1));
    let plus = OnePlus::from_eta(DD::from_f64(eps));
    let minus = OnePlus::from_eta(DD::from_f64(-eps));

    // Quotient stage: (1-e)^b/(1+e) .. (1+e)^b/(1-e).
    // Half-angle tangent: (1-e)^(b+2)/(1+e)^(b+3) .. mirrored.
    let dt_m = minus.powi(b + 2).div(plus.powi(b + 3));
    let dt_p = plus.powi(b + 2).div(minus.powi(b + 3));

    // Secant radical: sqrt((dt^2+1)/2) = sqrt(1 + eta_t + eta_t^2/2).
    let radical = |dt: OnePlus| {
        OnePlus::from_eta(dt.eta.add(dt.eta.mul(dt.eta).scale2(-1))).sqrt()
    };
    let dr_m = radical(dt_m);
    let dr_p = radical(dt_p);
    let dq_m = dr_m.mul(minus.sqrt());
    let dq_p = dr_p.mul(plus.sqrt());

    // Cosine via the reciprocal square root.
    let dc_m = minus.div(dq_p);
    let dc_p = plus.div(dq_m);

    // Polar-phase factors are exact when beta = 1.
    let (da_m, da_p) = if beta == 1 {
        (OnePlus::EXACT_ONE, OnePlus::EXACT_ONE)
    } else {
        (minus.div(plus), plus.div(minus))
    };

    // Sine and the off-diagonal products.
    let ds_m = dt_m.mul(dc_m).mul(minus);
    let ds_p = dt_p.mul(dc_p).mul(plus);
    let d21_m = da_m.mul(ds_m).mul(minus.powi(b - 1));
    let d21_p = da_p.mul(ds_p).mul(plus.powi(b - 1));

    let in_eps = |eta: DD| eta.scale2(p + 1);
    Ok(BoundConstants {
        p,
        beta,
        cos_lo_e8: away_e8(in_eps(dc_m.eta.neg())),
        cos_hi_e8: away_e8(in_eps(dc_p.eta)),
        off_lo_e8: away_e8(in_eps(d21_m.eta.neg())),
        off_hi_e8: away_e8(in_eps(d21_p.eta)),
    })
}

/// Worst case of [`rotation_error_bounds`] over the three binary formats.
pub fn worst_case_bounds(beta: u8) -> BoundConstants {
    let mut worst = rotation_error_bounds(23, beta).unwrap();
    for p in [52, 112] {
        let b = rotation_error_bounds(p, beta).unwrap();
        worst.cos_lo_e8 = worst.cos_lo_e8.max(b.cos_lo_e8);
        worst.cos_hi_e8 = worst.cos_hi_e8.max(b.cos_hi_e8);
        worst.off_lo_e8 = worst.off_lo_e8.max(b.off_lo_e8);
        worst.off_hi_e8 = worst.off_hi_e8.max(b.off_hi_e8);
    }
    worst.p = 0; // marker: envelope over all supported widths
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evd::Rot2;

    #[test]
    fn rho_conventions() {
        let r = rho::<f64>(DD::ZERO, 0.0f64);
        assert!(r.is_finite());
        assert_eq!(r.eps_units.to_f64(), 0.0);
        assert_eq!(rho::<f64>(DD::ZERO, 1.0f64).class, RhoClass::PosInf);
        assert_eq!(rho::<f64>(DD::ZERO, -1.0f64).class, RhoClass::NegInf);
        let r = rho::<f64>(DD::ONE, 1.0f64);
        assert_eq!(r.eps_units.to_f64(), 0.0);
        // One ulp of 1.0 is two units of machine precision (eps = 2^-p-1).
        let r = rho::<f64>(DD::ONE, 1.0 + f64::EPSILON);
        assert_eq!(r.eps_units.to_f64(), 2.0);
        let r = rho::<f32>(DD::ONE, 1.0f32 + f32::EPSILON);
        assert_eq!(r.eps_units.to_f64(), 2.0);
    }

    #[test]
    fn delta_det_exact_cases() {
        let id = Rot2 {
            cos_phi: 1.0f64,
            cos_alpha_sin_phi: 0.0,
            sin_alpha_sin_phi: 0.0,
        };
        assert!(delta_det(&id).is_zero());
        // Frozen regression: c = rn(1/sqrt(2)), triple (c, c, 0); the exact
        // departure is (2c^2 - 1)/eps = 5545866846675497 / 2^52.
        let c = f64::from_bits(0x3fe6a09e667f3bcd);
        let rot = Rot2 {
            cos_phi: c,
            cos_alpha_sin_phi: c,
            sin_alpha_sin_phi: 0.0,
        };
        let d = delta_det(&rot);
        assert_eq!(d.hi, 5545866846675497.0 / 4503599627370496.0);
        assert_eq!(d.lo, 0.0);
        // An exactly unitary triple gives zero (only the trivial ones are
        // exactly representable: dyadic squares cannot sum to 1 otherwise).
        let flip = Rot2 {
            cos_phi: 0.0f64,
            cos_alpha_sin_phi: 0.0,
            sin_alpha_sin_phi: 1.0,
        };
        assert!(delta_det(&flip).is_zero());
    }

    #[test]
    fn extremes_and_merge() {
        let mut e = Extreme::default();
        e.update(1.0, 5, [0; 4]);
        assert_eq!(e.min_value(), 1.0);
        assert_eq!(e.max_value(), 1.0);
        e.update(3.0, 6, [1; 4]);
        assert_eq!(e.min_value(), 1.0);
        assert_eq!(e.max_value(), 3.0);
        // Ties keep the earlier index regardless of merge order.
        let mut a = Extreme::default();
        a.update(3.0, 9, [2; 4]);
        let left = a.merge(e);
        let right = e.merge(a);
        assert_eq!(left, right);
        assert_eq!(left.max.unwrap().k, 6);
    }

    #[test]
    fn accumulate_counts_infinite_rho() {
        let mut stats = RunStats::default();
        let inf = RelErr {
            eps_units: DD::ZERO,
            class: RhoClass::PosInf,
        };
        let fin = RelErr {
            eps_units: DD::ONE,
            class: RhoClass::Finite,
        };
        let s = Sample {
            k: 0,
            input_bits: [0; 4],
            delta_j: 1.0,
            delta_l: 2.0,
            rho_cos: fin,
            rho_re: inf,
            rho_im: fin,
            qualifying: true,
            violation: false,
        };
        accumulate(&mut stats, &s);
        assert_eq!(stats.n_inf_rho, 1);
        assert_eq!(stats.n_total, 1);
        assert_eq!(stats.n_qualifying, 1);
        assert!(stats.rho_re.min.is_none());
        assert_eq!(stats.rho_cos.max_value(), 1.0);
    }

    #[test]
    fn bound_constants_reproduce_the_published_worst_case() {
        let w = worst_case_bounds(2);
        assert_eq!(w.cos_lo_string(), "6.00000017");
        assert_eq!(w.cos_hi_string(), "6.00000000");
        assert_eq!(w.off_lo_string(), "19.00000000");
        assert_eq!(w.off_hi_string(), "19.00000950");
    }

    #[test]
    fn bound_constants_per_precision() {
        let b23 = rotation_error_bounds(23, 2).unwrap();
        assert_eq!(b23.cos_lo_string(), "6.00000017");
        assert_eq!(b23.cos_hi_string(), "5.99999984");
        assert_eq!(b23.off_lo_string(), "18.99999051");
        assert_eq!(b23.off_hi_string(), "19.00000950");
        let b52 = rotation_error_bounds(52, 2).unwrap();
        assert_eq!(b52.cos_lo_string(), "6.00000001");
        assert_eq!(b52.cos_hi_string(), "6.00000000");
        assert_eq!(b52.off_lo_string(), "19.00000000");
        assert_eq!(b52.off_hi_string(), "19.00000001");
        // Constants shrink monotonically as p grows.
        let b112 = rotation_error_bounds(112, 2).unwrap();
        assert!(b112.cos_lo_e8 <= b52.cos_lo_e8 && b52.cos_lo_e8 <= b23.cos_lo_e8);
        assert!(b112.off_hi_e8 <= b52.off_hi_e8 && b52.off_hi_e8 <= b23.off_hi_e8);
        assert_eq!(rotation_error_bounds(64, 2), Err(UnsupportedPrecision(64)));
    }

    #[test]
    fn beta_one_is_strictly_tighter() {
        for p in [23, 52, 112] {
            let b1 = rotation_error_bounds(p, 1).unwrap();
            let b2 = rotation_error_bounds(p, 2).unwrap();
            assert!(b1.cos_lo_e8 < b2.cos_lo_e8, "p={p}");
            assert!(b1.cos_hi_e8 < b2.cos_hi_e8, "p={p}");
            assert!(b1.off_lo_e8 < b2.off_lo_e8, "p={p}");
            assert!(b1.off_hi_e8 < b2.off_hi_e8, "p={p}");
        }
    }

    #[test]
    fn envelope_containment_is_strict() {
        let w = worst_case_bounds(2);
        let mk = |v: f64| RelErr {
            eps_units: DD::from_f64(v),
            class: RhoClass::Finite,
        };
        assert!(w.contains_cos(&mk(5.9)));
        assert!(w.contains_cos(&mk(-6.0)));
        assert!(w.contains_cos(&mk(-6.0000001)));
        assert!(!w.contains_cos(&mk(6.0))); // upper bound is exactly 6
        assert!(!w.contains_cos(&mk(-6.000001)));
        assert!(w.contains_off(&mk(19.0)));
        assert!(!w.contains_off(&mk(-19.0))); // lower bound is exactly -19
        assert!(!w.contains_off(&mk(19.0000095)));
        assert!(!w.contains_off(&RelErr {
            eps_units: DD::ZERO,
            class: RhoClass::PosInf,
        }));
    }
}
