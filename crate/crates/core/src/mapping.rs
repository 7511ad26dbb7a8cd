//! Universe reductions from approximate keys to exact integer keys.
//!
//! Two maps are provided:
//!
//! * [`MultiplicativeMap`] sends `x = i + j/2^b` in `[1, U]` to the pair
//!   `<msb(x), next k bits below the msb>` packed into one integer, where
//!   `k = ceil(log2(1/epsilon))`. Keys whose ratio is at least `1 + epsilon`
//!   land on different integers, in order.
//! * [`AdditiveMap`] sends `x` in `[0, U]` to `floor(x / delta)`.
//!
//! Both maps are monotone, so an exact ordered multiset over the mapped keys
//! answers queries that are correct up to the chosen error.

use log::warn;

use crate::error::{Error, Result};
use crate::word::{msb, shift_signed, shl, shr, FixedPoint, WordConfig};

/// A key in a reduced universe `{0, .., reduced_size - 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MappedKey(pub u64);

impl MappedKey {
    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }
}

/// Common interface of the two universe reductions.
pub trait KeyMap {
    /// Maps an element of the approximate universe to an exact key.
    fn map(&self, x: FixedPoint) -> Result<MappedKey>;

    /// Every mapped key is strictly below this bound.
    fn reduced_universe_size(&self) -> u64;

    /// Smallest element mapping to `key`, if any element of the universe does.
    fn representative(&self, key: MappedKey) -> Option<FixedPoint>;

    /// Reverse direction of the reduction: an increasing embedding of exact
    /// integers into the approximate universe whose images are pairwise
    /// separated by the approximation error, so they map to distinct,
    /// ordered keys.
    fn embed(&self, value: u64) -> Result<FixedPoint>;

    /// Largest integer accepted by [`KeyMap::embed`].
    fn embed_limit(&self) -> u64;

    /// Largest element of the universe.
    fn universe_max(&self) -> FixedPoint;

    /// Smallest element of the universe.
    fn universe_min(&self) -> FixedPoint;

    fn word_config(&self) -> WordConfig;
}

/// `ceil(log2 x)` for `x >= 1`.
fn ceil_log2(x: FixedPoint) -> u32 {
    let l = msb(x.int_part).expect("universe checked >= 1");
    if x.frac_part == 0 && x.int_part.is_power_of_two() {
        l
    } else {
        l + 1
    }
}

/// Multiplicative `(1 + epsilon)` reduction over `[1, U]`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiplicativeMap {
    epsilon: f64,
    k: u32,
    universe_max: FixedPoint,
    reduced_size: u64,
    cfg: WordConfig,
}

impl MultiplicativeMap {
    /// Builds the map. `epsilon > 1` is clamped to 1 since it yields `k = 0`
    /// either way.
    pub fn new(epsilon: f64, universe_max: FixedPoint, cfg: WordConfig) -> Result<Self> {
        if epsilon.is_nan() || epsilon <= 0.0 {
            return Err(Error::InvalidEpsilon(epsilon));
        }
        let epsilon = if epsilon > 1.0 {
            warn!("epsilon {epsilon} > 1 clamped to 1");
            1.0
        } else {
            epsilon
        };
        let universe_max = universe_max.validate(cfg)?;
        if universe_max.int_part == 0 {
            return Err(Error::InvalidUniverse);
        }
        // smallest k with 2^-k <= epsilon; powers of two are exact in f64
        let mut k = 0u32;
        while 0.5f64.powi(k as i32) > epsilon {
            k += 1;
            if k >= cfg.bits() {
                return Err(Error::EpsilonTooSmall);
            }
        }
        let size = (1u128 << (k + 1)) * ceil_log2(universe_max) as u128 + 1;
        if size > u64::MAX as u128 {
            return Err(Error::UniverseTooLarge);
        }
        Ok(MultiplicativeMap {
            epsilon,
            k,
            universe_max,
            reduced_size: size as u64,
            cfg,
        })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Precision bits `k = ceil(log2(1/epsilon))`.
    pub fn precision_bits(&self) -> u32 {
        self.k
    }

    // Unchecked core of the map; x must satisfy 1 <= x.
    fn apply(&self, x: FixedPoint) -> u64 {
        let b = self.cfg.bits() as i32;
        let k = self.k as i32;
        let l = msb(x.int_part).expect("int part >= 1") as i32;
        let exponent = shl(l as u64, self.k);
        let mantissa = shift_signed(x.int_part, 0, l - k, self.cfg) ^ (1u64 << k);
        let frac_bits = shr(x.frac_part, (b + l - k) as u32);
        exponent | mantissa | frac_bits
    }

    // Separation stride for `embed`: consecutive embedded values sit `stride`
    // keys apart, which spans a ratio of at least 1 + 2^(1-k) > epsilon.
    fn stride(&self) -> u64 {
        1u64 << self.k.min(2)
    }
}

impl KeyMap for MultiplicativeMap {
    fn map(&self, x: FixedPoint) -> Result<MappedKey> {
        let x = x.validate(self.cfg)?;
        if x.int_part == 0 {
            return Err(Error::KeyBelowOne);
        }
        if x > self.universe_max {
            return Err(Error::KeyExceedsUniverse);
        }
        Ok(MappedKey(self.apply(x)))
    }

    fn reduced_universe_size(&self) -> u64 {
        self.reduced_size
    }

    fn representative(&self, key: MappedKey) -> Option<FixedPoint> {
        let b = self.cfg.bits();
        let l = shr(key.0, self.k);
        if l >= b as u64 {
            return None;
        }
        let l = l as u32;
        let y = key.0 & ((1u64 << self.k) - 1);
        // 2^l + y * 2^(l-k), scaled by 2^b
        let scaled = (1u128 << (l + b)) + ((y as u128) << (l + b - self.k));
        let x = FixedPoint::from_scaled(scaled, self.cfg)?;
        (x <= self.universe_max).then_some(x)
    }

    fn embed(&self, value: u64) -> Result<FixedPoint> {
        if value > self.embed_limit() {
            return Err(Error::KeyExceedsUniverse);
        }
        self.representative(MappedKey(value * self.stride()))
            .ok_or(Error::KeyExceedsUniverse)
    }

    fn embed_limit(&self) -> u64 {
        self.apply(self.universe_max) / self.stride()
    }

    fn universe_max(&self) -> FixedPoint {
        self.universe_max
    }

    fn universe_min(&self) -> FixedPoint {
        FixedPoint::ONE
    }

    fn word_config(&self) -> WordConfig {
        self.cfg
    }
}

/// Additive `delta` reduction over `[0, U]`.
#[derive(Clone, Debug, PartialEq)]
pub struct AdditiveMap {
    delta: FixedPoint,
    universe_max: FixedPoint,
    reduced_size: u64,
    cfg: WordConfig,
}

impl AdditiveMap {
    pub fn new(delta: FixedPoint, universe_max: FixedPoint, cfg: WordConfig) -> Result<Self> {
        let delta = delta.validate(cfg)?;
        let universe_max = universe_max.validate(cfg)?;
        if delta == FixedPoint::ZERO || delta > universe_max {
            return Err(Error::InvalidDelta);
        }
        let size = universe_max.to_scaled(cfg) / delta.to_scaled(cfg) + 1;
        if size > u64::MAX as u128 {
            return Err(Error::UniverseTooLarge);
        }
        Ok(AdditiveMap {
            delta,
            universe_max,
            reduced_size: size as u64,
            cfg,
        })
    }

    pub fn delta(&self) -> FixedPoint {
        self.delta
    }
}

impl KeyMap for AdditiveMap {
    fn map(&self, x: FixedPoint) -> Result<MappedKey> {
        let x = x.validate(self.cfg)?;
        if x > self.universe_max {
            return Err(Error::KeyExceedsUniverse);
        }
        let q = x.to_scaled(self.cfg) / self.delta.to_scaled(self.cfg);
        Ok(MappedKey(q as u64))
    }

    fn reduced_universe_size(&self) -> u64 {
        self.reduced_size
    }

    fn representative(&self, key: MappedKey) -> Option<FixedPoint> {
        let scaled = (key.0 as u128).checked_mul(self.delta.to_scaled(self.cfg))?;
        let x = FixedPoint::from_scaled(scaled, self.cfg)?;
        (x <= self.universe_max).then_some(x)
    }

    fn embed(&self, value: u64) -> Result<FixedPoint> {
        self.representative(MappedKey(value))
            .ok_or(Error::KeyExceedsUniverse)
    }

    fn embed_limit(&self) -> u64 {
        self.reduced_size - 1
    }

    fn universe_max(&self) -> FixedPoint {
        self.universe_max
    }

    fn universe_min(&self) -> FixedPoint {
        FixedPoint::ZERO
    }

    fn word_config(&self) -> WordConfig {
        self.cfg
    }
}
