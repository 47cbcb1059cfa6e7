//! Atomic helpers for problem data mutated inside functors.
//!
//! Non-idempotent functors must go through these (or the std atomics they
//! wrap); plain stores are only acceptable when repeating them is harmless.

use std::sync::atomic::{AtomicU32, AtomicU64, Ordering};

/// `min` into `cell`; returns the previous value.
#[inline]
pub fn atomic_min(cell: &AtomicU32, value: u32) -> u32 {
    cell.fetch_min(value, Ordering::Relaxed)
}

/// `+=` into `cell`; returns the previous value.
#[inline]
pub fn atomic_add(cell: &AtomicU32, value: u32) -> u32 {
    cell.fetch_add(value, Ordering::Relaxed)
}

/// Sets `cell` to `new` if it holds `current`; true on success.
#[inline]
pub fn compare_and_set(cell: &AtomicU32, current: u32, new: u32) -> bool {
    cell.compare_exchange(current, new, Ordering::Relaxed, Ordering::Relaxed)
        .is_ok()
}

/// An `f64` cell supporting atomic addition.
#[derive(Debug, Default)]
pub struct AtomicF64(AtomicU64);

impl AtomicF64 {
    pub fn new(v: f64) -> Self {
        Self(AtomicU64::new(v.to_bits()))
    }

    #[inline]
    pub fn load(&self) -> f64 {
        f64::from_bits(self.0.load(Ordering::Relaxed))
    }

    #[inline]
    pub fn store(&self, v: f64) {
        self.0.store(v.to_bits(), Ordering::Relaxed)
    }

    /// Adds `v`; returns the previous value.
    #[inline]
    pub fn fetch_add(&self, v: f64) -> f64 {
        let mut cur = self.0.load(Ordering::Relaxed);
        loop {
            let next = (f64::from_bits(cur) + v).to_bits();
            match self
                .0
                .compare_exchange_weak(cur, next, Ordering::Relaxed, Ordering::Relaxed)
            {
                Ok(prev) => return f64::from_bits(prev),
                Err(actual) => cur = actual,
            }
        }
    }
}

/// Fixed-point accumulator for non-negative reals below 16.
///
/// Integer addition is associative, so concurrent sums come out bit-identical
/// no matter how the additions interleave. Resolution is 2^-60.
#[derive(Debug, Default)]
pub struct FixedAccumulator(AtomicU64);

impl FixedAccumulator {
    const SCALE: f64 = (1u64 << 60) as f64;

    pub fn new() -> Self {
        Self(AtomicU64::new(0))
    }

    #[inline]
    pub fn quantize(v: f64) -> u64 {
        debug_assert!((0.0..16.0).contains(&v), "value {v} outside accumulator range");
        (v * Self::SCALE).round() as u64
    }

    #[inline]
    pub fn add(&self, v: f64) {
        self.0.fetch_add(Self::quantize(v), Ordering::Relaxed);
    }

    #[inline]
    pub fn get(&self) -> f64 {
        self.0.load(Ordering::Relaxed) as f64 / Self::SCALE
    }

    #[inline]
    pub fn reset(&self) {
        self.0.store(0, Ordering::Relaxed)
    }
}

/// Packs `(distance, predecessor)` so that a single `fetch_min` updates both:
/// shorter distances win, ties go to the smaller predecessor id.
#[inline]
pub fn pack_label(distance: u32, pred: u32) -> u64 {
    ((distance as u64) << 32) | pred as u64
}

#[inline]
pub fn unpack_label(packed: u64) -> (u32, u32) {
    ((packed >> 32) as u32, packed as u32)
}
