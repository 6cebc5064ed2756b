//! Shared test support: an exact multiprecision rounding oracle for
//! `hypot` and `rsqrt` built on big-integer arithmetic, plus directed
//! hard-case generators.
//!
//! The oracle shares no code with the library's double-double/expansion
//! machinery: every rounding decision here reduces to comparisons of exact
//! dyadic rationals held in `BigUint`s (>= 120 bits wherever precision
//! matters), so agreement is meaningful evidence of correct rounding.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use jaev2::float::Float;

/// Positive finite float as an exact dyadic `mant * 2^exp`.
fn decompose(x: f64) -> (BigUint, i64) {
    assert!(x > 0.0 && x.is_finite());
    let bits = x.to_bits();
    let e = ((bits >> 52) & 0x7ff) as i64;
    let m = bits & ((1u64 << 52) - 1);
    if e == 0 {
        (BigUint::from(m), -1074)
    } else {
        (BigUint::from(m | (1u64 << 52)), e - 1075)
    }
}

/// Compare `a * 2^ea` against `b * 2^eb` exactly.
fn cmp_dyadic(a: &BigUint, ea: i64, b: &BigUint, eb: i64) -> std::cmp::Ordering {
    if ea >= eb {
        (a << (ea - eb) as u64).cmp(b)
    } else {
        a.cmp(&(b << (eb - ea) as u64))
    }
}

/// Exact `x^2 + y^2` of two positive finite floats, as a dyadic pair.
fn sum_of_squares(x: f64, y: f64) -> (BigUint, i64) {
    let (mx, ex) = decompose(x);
    let (my, ey) = decompose(y);
    let sx = &mx * &mx;
    let sy = &my * &my;
    let (gx, gy) = (2 * ex, 2 * ey);
    let g = gx.min(gy);
    (
        (sx << (gx - g) as u64) + (sy << (gy - g) as u64),
        g,
    )
}

/// Midpoint between a positive finite `c` and its neighbor in format `F`,
/// as an exact dyadic; `up` selects the upper neighbor.
fn midpoint<F: Float>(c: F, up: bool) -> (BigUint, i64) {
    let c64 = c.to_f64();
    let gap = if up {
        if c == F::MAX_FINITE {
            jaev2::float::scalbn64(1.0, F::MAX_EXP - 1 - F::SIG_BITS)
        } else {
            c.next_up_pos().to_f64() - c64
        }
    } else {
        c64 - c.next_down_pos().to_f64()
    };
    let (mc, ec) = decompose(c64);
    let (mg, eg) = decompose(gap);
    let eh = eg - 1; // half the gap, still a power of two
    let e = ec.min(eh);
    let base = mc << (ec - e) as u64;
    let half = mg << (eh - e) as u64;
    if up {
        (base + half, e)
    } else {
        (base - half, e)
    }
}

/// Walk the format grid around `start` until the exact value (characterized
/// by `cmp_to_mid`: ordering of the exact value against a midpoint) is
/// bracketed; resolve ties to even.
fn walk<F: Float>(
    start: F,
    cmp_to_mid: impl Fn(&BigUint, i64) -> std::cmp::Ordering,
) -> F {
    use std::cmp::Ordering::*;
    let mut c = start;
    if c <= F::ZERO {
        c = F::TRUE_MIN;
    }
    if !c.is_finite() {
        c = F::MAX_FINITE;
    }
    loop {
        let (num, e) = midpoint(c, true);
        match cmp_to_mid(&num, e) {
            Greater => {
                let next = c.next_up_pos();
                if !next.is_finite() {
                    return F::INFINITY;
                }
                c = next;
                continue;
            }
            Equal => {
                let next = c.next_up_pos();
                return if c.to_bits_u64() & 1 == 0 { c } else { next };
            }
            Less => {}
        }
        let (num, e) = midpoint(c, false);
        match cmp_to_mid(&num, e) {
            Less => c = c.next_down_pos(),
            Equal => {
                let prev = c.next_down_pos();
                return if c.to_bits_u64() & 1 == 0 { c } else { prev };
            }
            Greater => return c,
        }
    }
}

/// Round-to-nearest-even `sqrt(x^2 + y^2)` decided in exact integer
/// arithmetic. Handles the full special-value contract.
pub fn oracle_hypot<F: Float>(x: F, y: F) -> F {
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
    if b.to_f64() == 0.0 {
        return a;
    }
    let (s_num, s_exp) = sum_of_squares(a.to_f64(), b.to_f64());
    // start near the answer; correctness comes from the exact walk
    let start = F::from_f64(a.to_f64().hypot(b.to_f64()));
    walk::<F>(start, |m_num, m_exp| {
        // value = sqrt(S) vs m: compare S against m^2
        cmp_dyadic(&s_num, s_exp, &(m_num * m_num), 2 * m_exp)
    })
}

/// Round-to-nearest-even `1/sqrt(x)` decided in exact integer arithmetic.
pub fn oracle_rsqrt<F: Float>(x: F) -> F {
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
    let (mx, ex) = decompose(x64);
    let start = F::from_f64(1.0 / x64.sqrt());
    walk::<F>(start, |m_num, m_exp| {
        // value = 1/sqrt(x) vs m: value > m  iff  1 > m^2 * x
        let lhs = m_num * m_num * &mx;
        let k = 2 * m_exp + ex;
        let r = if k >= 0 {
            (lhs << k as u64).cmp(&BigUint::one())
        } else {
            lhs.cmp(&(BigUint::one() << (-k) as u64))
        };
        r.reverse()
    })
}

/// Deterministic 64-bit generator for test inputs (splitmix64).
pub struct TestRng(pub u64);

impl TestRng {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }
}

/// Scaled Pythagorean-triple legs `(m^2-n^2, 2mn) * 2^k`, whose exact
/// hypotenuse `(m^2+n^2) * 2^k` is representable or an exact midpoint.
pub fn pythagorean_cases_f64() -> Vec<(f64, f64, f64)> {
    let mut out = Vec::new();
    let base: [(u64, u64); 6] = [
        (2, 1),
        (4, 1),
        (8, 5),
        (64, 37),
        (4096, 1),
        (94906265, 2), // legs near 2^53
    ];
    for (m, n) in base {
        let leg1 = (m * m - n * n) as f64;
        let leg2 = (2 * m * n) as f64;
        let hyp = (m * m + n * n) as f64;
        for k in [-1060i32, -640, -320, -52, 0, 53, 512, 960] {
            let s = |v: f64| jaev2::float::scalbn64(v, k);
            if s(leg1) > 0.0 && s(leg2) > 0.0 && s(hyp).is_finite() {
                out.push((s(leg1), s(leg2), s(hyp)));
            }
        }
    }
    // The exact-midpoint pair: hypotenuse 2^53 + 2^27 + 1 (odd, 54 bits).
    let a = 134217729.0;
    let b = 9007199254740992.0 + 134217728.0;
    for k in [-600, 0, 700] {
        let s = |v: f64| jaev2::float::scalbn64(v, k);
        out.push((s(a), s(b), s(b)));
    }
    out
}

/// How many bits of agreement `value^2` has with the squared midpoint
/// nearest to `approx` on the `F` grid: the largest `k <= 120` with
/// `|S - m^2| <= m^2 * 2^-k`, measured exactly. Large `k` means the exact
/// result sits very close to a rounding boundary.
fn boundary_closeness_bits<F: Float>(s_num: &BigUint, s_exp: i64, approx: F) -> u32 {
    let mut best = 0;
    let c = if approx > F::ZERO && approx.is_finite() {
        approx
    } else {
        return 0;
    };
    for up in [false, true] {
        if !up && c == F::TRUE_MIN {
            continue;
        }
        let (mn, me) = midpoint(c, up);
        let m2n = &mn * &mn;
        let m2e = 2 * me;
        let e = s_exp.min(m2e);
        let sv = s_num << (s_exp - e) as u64;
        let mv = &m2n << (m2e - e) as u64;
        let diff = if sv >= mv { &sv - &mv } else { &mv - &sv };
        if diff.is_zero() {
            return 120;
        }
        let k = mv.bits().saturating_sub(diff.bits());
        best = best.max(k.min(120) as u32);
    }
    best
}

/// Hard hypot inputs found by search: random pairs ranked by the exact
/// closeness of `x^2+y^2` to a squared rounding boundary; the `count`
/// closest survivors of the trial budget are returned.
pub fn near_boundary_hypot_f64(count: usize) -> Vec<(f64, f64)> {
    let mut rng = TestRng(0x00c0ffee);
    let mut ranked: Vec<(u32, f64, f64)> = Vec::new();
    for _ in 0..6000 {
        let x = f64::from_bits((rng.next() >> 12) | 0x3ff0000000000000);
        let y = f64::from_bits((rng.next() >> 12) | 0x3fe0000000000000);
        let (s_num, s_exp) = sum_of_squares(x, y);
        let approx = x.hypot(y);
        let k = boundary_closeness_bits::<f64>(&s_num, s_exp, approx);
        ranked.push((k, x, y));
    }
    ranked.sort_by(|a, b| b.0.cmp(&a.0));
    ranked
        .into_iter()
        .take(count)
        .map(|(_, x, y)| (x, y))
        .collect()
}

/// f32 counterpart of [`near_boundary_hypot_f64`].
pub fn near_boundary_hypot_f32(count: usize) -> Vec<(f32, f32)> {
    let mut rng = TestRng(0xf32b0a7d);
    let mut ranked: Vec<(u32, f32, f32)> = Vec::new();
    for _ in 0..6000 {
        let x = f32::from_bits(((rng.next() as u32) >> 9) | 0x3f800000);
        let y = f32::from_bits(((rng.next() as u32) >> 9) | 0x3f000000);
        let (s_num, s_exp) = sum_of_squares(x as f64, y as f64);
        let approx = x.hypot(y);
        let k = boundary_closeness_bits::<f32>(&s_num, s_exp, approx);
        ranked.push((k, x, y));
    }
    ranked.sort_by(|a, b| b.0.cmp(&a.0));
    ranked
        .into_iter()
        .take(count)
        .map(|(_, x, y)| (x, y))
        .collect()
}

/// Hard rsqrt inputs found by search: for random midpoints m, scan a few
/// ulps around `1/m^2` and keep the x whose `m^2 x` is exactly closest to 1.
pub fn near_boundary_rsqrt_f64(count: usize) -> Vec<f64> {
    let mut rng = TestRng(0x5eedb0a7);
    let mut ranked: Vec<(u32, f64)> = Vec::new();
    for _ in 0..2000 {
        let r = f64::from_bits((rng.next() >> 12) | 0x3fe0000000000000);
        let m = r + 2f64.powi(-54); // midpoint above r, in [0.5, 1)
        let (mm, me) = decompose(m);
        let m2n = &mm * &mm;
        let m2e = 2 * me;
        let base = 1.0 / (m * m);
        for dk in -2i64..=2 {
            let x = f64::from_bits((base.to_bits() as i64 + dk) as u64);
            if !(x > 0.0 && x.is_finite()) {
                continue;
            }
            // closeness of m^2 x to 1, exactly
            let (xn, xe) = decompose(x);
            let prod = &m2n * &xn;
            let pe = m2e + xe;
            let one_shifted = BigUint::one() << (-pe) as u64; // pe < 0 here
            let diff = if prod >= one_shifted {
                &prod - &one_shifted
            } else {
                &one_shifted - &prod
            };
            let k = if diff.is_zero() {
                120
            } else {
                one_shifted.bits().saturating_sub(diff.bits()).min(120) as u32
            };
            ranked.push((k, x));
        }
    }
    ranked.sort_by(|a, b| b.0.cmp(&a.0));
    let mut out: Vec<f64> = ranked.into_iter().take(count).map(|(_, x)| x).collect();
    // Spread a few across distant binades (even shifts keep the hardness).
    let n = out.len();
    for i in 0..n.min(40) {
        let k = ((i as i32) % 40 - 20) * 24;
        out.push(jaev2::float::scalbn64(out[i], 2 * k));
    }
    out.retain(|x| *x > 0.0 && x.is_finite());
    out
}
