//! IEEE-754 binary32/binary64 abstraction used by the rotation kernels.
//!
//! Everything here assumes round-to-nearest, ties-to-even, and non-stop
//! arithmetic (NaN, infinities, signed zeros and subnormals flow through).

use core::fmt::{Debug, Display};
use core::ops::{Add, Div, Mul, Neg, Sub};

mod sealed {
    pub trait Sealed {}
    impl Sealed for f32 {}
    impl Sealed for f64 {}
}

/// An IEEE-754 binary interchange format (`f32` or `f64`).
pub trait Float:
    sealed::Sealed
    + Copy
    + PartialEq
    + PartialOrd
    + Debug
    + Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Count of non-implied significand bits (23 or 52).
    const SIG_BITS: i32;
    /// Maximum exponent in the frexp convention (FLT_MAX_EXP / DBL_MAX_EXP).
    const MAX_EXP: i32;
    /// Exponent of the smallest grid step, i.e. of the smallest subnormal.
    const MIN_ULP_EXP: i32;
    /// Machine precision 2^-(SIG_BITS+1), exact as an f64.
    const EPS_UNIT: f64;

    const ZERO: Self;
    const ONE: Self;
    /// Largest finite value.
    const MAX_FINITE: Self;
    /// Smallest positive normal value.
    const MIN_NORMAL: Self;
    /// Smallest positive subnormal value.
    const TRUE_MIN: Self;
    const INFINITY: Self;
    const NAN: Self;

    fn is_nan(self) -> bool;
    fn is_infinite(self) -> bool;
    fn is_finite(self) -> bool;
    fn is_subnormal(self) -> bool;
    fn is_sign_negative(self) -> bool;

    fn abs(self) -> Self;
    fn copysign(self, sign: Self) -> Self;
    /// Fused multiply-add: a single rounding of `self * a + b`.
    fn mul_add(self, a: Self, b: Self) -> Self;
    /// IEEE square root (correctly rounded as a basic operation).
    fn sqrt(self) -> Self;

    /// Widening conversion; exact for both formats.
    fn to_f64(self) -> f64;
    /// Round an f64 to this format (to nearest, ties to even).
    fn from_f64(x: f64) -> Self;

    /// Raw bits widened to u64 (f32 bits occupy the low word).
    fn to_bits_u64(self) -> u64;
    fn from_bits_u64(bits: u64) -> Self;

    /// `self * 2^n` with a single rounding; exact whenever the result is normal.
    fn scalbn(self, n: i32) -> Self;

    /// Exponent `e` with `|self| = f * 2^e`, `f` in `[0.5, 1)` (the C `frexp`
    /// convention). The caller must ensure `self` is finite and nonzero.
    fn frexp_exp(self) -> i32;

    /// Next representable value toward +inf; valid for nonnegative finite input.
    fn next_up_pos(self) -> Self {
        Self::from_bits_u64(self.to_bits_u64() + 1)
    }
    /// Previous representable value toward zero; valid for positive input.
    fn next_down_pos(self) -> Self {
        Self::from_bits_u64(self.to_bits_u64() - 1)
    }
}

impl Float for f64 {
    const SIG_BITS: i32 = 52;
    const MAX_EXP: i32 = 1024;
    const MIN_ULP_EXP: i32 = -1074;
    const EPS_UNIT: f64 = 1.1102230246251565e-16; // 2^-53

    const ZERO: Self = 0.0;
    const ONE: Self = 1.0;
    const MAX_FINITE: Self = f64::MAX;
    const MIN_NORMAL: Self = f64::MIN_POSITIVE;
    const TRUE_MIN: Self = f64::from_bits(1);
    const INFINITY: Self = f64::INFINITY;
    const NAN: Self = f64::NAN;

    #[inline]
    fn is_nan(self) -> bool {
        self != self
    }
    #[inline]
    fn is_infinite(self) -> bool {
        f64::is_infinite(self)
    }
    #[inline]
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
    #[inline]
    fn is_subnormal(self) -> bool {
        f64::is_subnormal(self)
    }
    #[inline]
    fn is_sign_negative(self) -> bool {
        f64::is_sign_negative(self)
    }

    #[inline]
    fn abs(self) -> Self {
        f64::abs(self)
    }
    #[inline]
    fn copysign(self, sign: Self) -> Self {
        f64::copysign(self, sign)
    }
    #[inline]
    fn mul_add(self, a: Self, b: Self) -> Self {
        f64::mul_add(self, a, b)
    }
    #[inline]
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }

    #[inline]
    fn to_f64(self) -> f64 {
        self
    }
    #[inline]
    fn from_f64(x: f64) -> Self {
        x
    }

    #[inline]
    fn to_bits_u64(self) -> u64 {
        self.to_bits()
    }
    #[inline]
    fn from_bits_u64(bits: u64) -> Self {
        f64::from_bits(bits)
    }

    fn scalbn(self, n: i32) -> Self {
        scalbn64(self, n)
    }

    #[inline]
    fn frexp_exp(self) -> i32 {
        debug_assert!(self.is_finite() && self != 0.0);
        let bits = self.to_bits();
        let e = ((bits >> 52) & 0x7ff) as i32;
        if e != 0 {
            e - 1022
        } else {
            // Subnormal: normalize by an exact scale-up first.
            let scaled = self * f64::from_bits(0x4350000000000000); // 2^54
            let eb = ((scaled.to_bits() >> 52) & 0x7ff) as i32;
            eb - 1022 - 54
        }
    }
}

impl Float for f32 {
    const SIG_BITS: i32 = 23;
    const MAX_EXP: i32 = 128;
    const MIN_ULP_EXP: i32 = -149;
    const EPS_UNIT: f64 = 5.9604644775390625e-8; // 2^-24

    const ZERO: Self = 0.0;
    const ONE: Self = 1.0;
    const MAX_FINITE: Self = f32::MAX;
    const MIN_NORMAL: Self = f32::MIN_POSITIVE;
    const TRUE_MIN: Self = f32::from_bits(1);
    const INFINITY: Self = f32::INFINITY;
    const NAN: Self = f32::NAN;

    #[inline]
    fn is_nan(self) -> bool {
        self != self
    }
    #[inline]
    fn is_infinite(self) -> bool {
        f32::is_infinite(self)
    }
    #[inline]
    fn is_finite(self) -> bool {
        f32::is_finite(self)
    }
    #[inline]
    fn is_subnormal(self) -> bool {
        f32::is_subnormal(self)
    }
    #[inline]
    fn is_sign_negative(self) -> bool {
        f32::is_sign_negative(self)
    }

    #[inline]
    fn abs(self) -> Self {
        f32::abs(self)
    }
    #[inline]
    fn copysign(self, sign: Self) -> Self {
        f32::copysign(self, sign)
    }
    #[inline]
    fn mul_add(self, a: Self, b: Self) -> Self {
        f32::mul_add(self, a, b)
    }
    #[inline]
    fn sqrt(self) -> Self {
        f32::sqrt(self)
    }

    #[inline]
    fn to_f64(self) -> f64 {
        self as f64
    }
    #[inline]
    fn from_f64(x: f64) -> Self {
        x as f32
    }

    #[inline]
    fn to_bits_u64(self) -> u64 {
        self.to_bits() as u64
    }
    #[inline]
    fn from_bits_u64(bits: u64) -> Self {
        f32::from_bits(bits as u32)
    }

    fn scalbn(self, n: i32) -> Self {
        scalbn32(self, n)
    }

    #[inline]
    fn frexp_exp(self) -> i32 {
        debug_assert!(self.is_finite() && self != 0.0);
        let bits = self.to_bits();
        let e = ((bits >> 23) & 0xff) as i32;
        if e != 0 {
            e - 126
        } else {
            let scaled = self * f32::from_bits(0x4c000000); // 2^25
            let eb = ((scaled.to_bits() >> 23) & 0xff) as i32;
            eb - 126 - 25
        }
    }
}

/// `x * 2^n` with a single rounding (musl-style ladder of exact
/// power-of-two multiplications, the last one carrying the rounding).
pub fn scalbn64(x: f64, mut n: i32) -> f64 {
    let x1p1023 = f64::from_bits(0x7fe0000000000000); // 2^1023
    let x1p_1022 = f64::from_bits(0x0010000000000000); // 2^-1022
    let x1p53 = f64::from_bits(0x4340000000000000); // 2^53
    let mut y = x;

    if n > 1023 {
        y *= x1p1023;
        n -= 1023;
        if n > 1023 {
            y *= x1p1023;
            n -= 1023;
            if n > 1023 {
                n = 1023;
            }
        }
    } else if n < -1022 {
        // keep the final n > -1022-53 so only the last multiply can round
        y *= x1p_1022 * x1p53;
        n += 1022 - 53;
        if n < -1022 {
            y *= x1p_1022 * x1p53;
            n += 1022 - 53;
            if n < -1022 {
                n = -1022;
            }
        }
    }
    y * f64::from_bits(((0x3ff + n as i64) as u64) << 52)
}

/// f32 counterpart of [`scalbn64`].
pub fn scalbn32(x: f32, mut n: i32) -> f32 {
    let x1p127 = f32::from_bits(0x7f000000); // 2^127
    let x1p_126 = f32::from_bits(0x00800000); // 2^-126
    let x1p24 = f32::from_bits(0x4b800000); // 2^24
    let mut y = x;

    if n > 127 {
        y *= x1p127;
        n -= 127;
        if n > 127 {
            y *= x1p127;
            n -= 127;
            if n > 127 {
                n = 127;
            }
        }
    } else if n < -126 {
        y *= x1p_126 * x1p24;
        n += 126 - 24;
        if n < -126 {
            y *= x1p_126 * x1p24;
            n += 126 - 24;
            if n < -126 {
                n = -126;
            }
        }
    }
    y * f32::from_bits(((0x7f + n) as u32) << 23)
}
