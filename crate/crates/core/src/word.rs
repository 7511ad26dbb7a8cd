//! Word-RAM primitives: configurable word size, most-significant-bit,
//! shifts with signed amounts, and two-word fixed-point numbers.
//!
//! A machine word here holds `b` bits with `8 <= b <= 64`. Values are stored
//! in `u64` regardless of `b`; callers that pick `b < 64` must keep every
//! word below `2^b`, which [`WordConfig::check`] verifies.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Number of bits per machine word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WordConfig {
    bits: u32,
}

impl Default for WordConfig {
    fn default() -> Self {
        WordConfig { bits: 64 }
    }
}

impl WordConfig {
    pub fn new(bits: u32) -> Result<Self> {
        if (8..=64).contains(&bits) && bits.is_power_of_two() {
            Ok(WordConfig { bits })
        } else {
            Err(Error::InvalidWordSize(bits))
        }
    }

    #[cfg(test)]
    pub(crate) const fn new_unchecked(bits: u32) -> Self {
        WordConfig { bits }
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.bits
    }

    /// `log2(b)`, the number of key bits resolved by one single-word bit-vector.
    #[inline]
    pub fn log_bits(self) -> u32 {
        self.bits.trailing_zeros()
    }

    /// All-ones mask of `b` bits.
    #[inline]
    pub fn mask(self) -> u64 {
        low_mask(self.bits)
    }

    /// Checks that a word fits in `b` bits.
    pub fn check(self, word: u64) -> Result<u64> {
        if word & !self.mask() == 0 {
            Ok(word)
        } else {
            Err(Error::PartTooWide { bits: self.bits })
        }
    }
}

/// Mask with the low `n` bits set; `n >= 64` gives all ones.
#[inline]
pub fn low_mask(n: u32) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// `x << n`, yielding 0 once every bit has been shifted out.
#[inline]
pub fn shl(x: u64, n: u32) -> u64 {
    if n >= 64 {
        0
    } else {
        x << n
    }
}

/// `x >> n`, yielding 0 once every bit has been shifted out.
#[inline]
pub fn shr(x: u64, n: u32) -> u64 {
    if n >= 64 {
        0
    } else {
        x >> n
    }
}

/// Index of the most significant set bit, `floor(log2 x)`.
///
/// ```
/// use approx_veb::word::msb;
/// assert_eq!(msb(13), Ok(3));
/// assert!(msb(0).is_err());
/// ```
#[inline]
pub fn msb(x: u64) -> Result<u32> {
    if x == 0 {
        Err(Error::MsbOfZero)
    } else {
        Ok(63 - x.leading_zeros())
    }
}

/// Right shift of the integer part of `int_part + frac_part / 2^b` by a
/// signed amount, truncated to `b` bits.
///
/// A negative amount shifts left, pulling the high bits of `frac_part` into
/// the low end. Equivalently this is
/// `floor((int_part * 2^b + frac_part) / 2^(b + amount)) mod 2^b`.
/// Amounts with `|amount| >= 2b` shift everything out and yield 0.
pub fn shift_signed(int_part: u64, frac_part: u64, amount: i32, cfg: WordConfig) -> u64 {
    let b = cfg.bits() as i32;
    let joined = ((int_part as u128) << b) | frac_part as u128;
    let total = b + amount;
    let shifted = if total >= 0 {
        if total >= 128 {
            0
        } else {
            joined >> total
        }
    } else if -total >= 128 {
        0
    } else {
        joined << (-total)
    };
    (shifted as u64) & cfg.mask()
}

/// A number `int_part + frac_part / 2^b` held in two words.
///
/// Ordering is lexicographic on `(int_part, frac_part)`, which matches the
/// order of the represented values for any fixed `b`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FixedPoint {
    pub int_part: u64,
    pub frac_part: u64,
}

impl FixedPoint {
    pub const ZERO: FixedPoint = FixedPoint {
        int_part: 0,
        frac_part: 0,
    };
    pub const ONE: FixedPoint = FixedPoint {
        int_part: 1,
        frac_part: 0,
    };

    pub const fn new(int_part: u64, frac_part: u64) -> Self {
        FixedPoint {
            int_part,
            frac_part,
        }
    }

    pub const fn from_int(int_part: u64) -> Self {
        FixedPoint {
            int_part,
            frac_part: 0,
        }
    }

    /// Checks that both parts fit in `b` bits.
    pub fn validate(self, cfg: WordConfig) -> Result<Self> {
        cfg.check(self.int_part)?;
        cfg.check(self.frac_part)?;
        Ok(self)
    }

    /// The value scaled by `2^b` as one `2b`-bit integer.
    pub fn to_scaled(self, cfg: WordConfig) -> u128 {
        ((self.int_part as u128) << cfg.bits()) | self.frac_part as u128
    }

    /// Inverse of [`FixedPoint::to_scaled`]; `None` if the integer part
    /// overflows `b` bits.
    pub fn from_scaled(scaled: u128, cfg: WordConfig) -> Option<Self> {
        let b = cfg.bits();
        let int = scaled >> b;
        if int > cfg.mask() as u128 {
            return None;
        }
        Some(FixedPoint::new(int as u64, (scaled as u64) & cfg.mask()))
    }

    /// Nearest representable value at or below a non-negative float.
    pub fn from_f64(value: f64, cfg: WordConfig) -> Option<Self> {
        if !value.is_finite() || value < 0.0 {
            return None;
        }
        let int = value.floor();
        if int >= 2f64.powi(cfg.bits() as i32) {
            return None;
        }
        let frac = ((value - int) * 2f64.powi(cfg.bits() as i32)).floor();
        let frac = (frac as u128).min(cfg.mask() as u128) as u64;
        Some(FixedPoint::new(int as u64, frac))
    }

    pub fn to_f64(self, cfg: WordConfig) -> f64 {
        self.int_part as f64 + self.frac_part as f64 / 2f64.powi(cfg.bits() as i32)
    }
}

/// Lexicographic comparison on `(int_part, frac_part)`.
pub fn fp_compare(x: FixedPoint, y: FixedPoint) -> Ordering {
    x.cmp(&y)
}

impl fmt::Display for FixedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.frac_part == 0 {
            write!(f, "{}", self.int_part)
        } else {
            write!(f, "{}+{}/2^b", self.int_part, self.frac_part)
        }
    }
}
