//! Degree windows for materializing degreewise-finite but unbounded complexes.

use std::fmt;

use crate::error::{Error, Result};

/// Degrees `lo..=hi` are materialized; homology is trusted on `lo+2..=hi-2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DegreeWindow {
    pub lo: i64,
    pub hi: i64,
}

impl DegreeWindow {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        let w = DegreeWindow { lo, hi };
        if lo > hi || w.safe_lo() > w.safe_hi() {
            return Err(Error::WindowTooSmall { lo, hi });
        }
        Ok(w)
    }

    pub fn safe_lo(&self) -> i64 {
        self.lo + 2
    }

    pub fn safe_hi(&self) -> i64 {
        self.hi - 2
    }

    pub fn safe_range(&self) -> (i64, i64) {
        (self.safe_lo(), self.safe_hi())
    }

    pub fn contains(&self, n: i64) -> bool {
        (self.lo..=self.hi).contains(&n)
    }

    pub fn is_safe(&self, n: i64) -> bool {
        (self.safe_lo()..=self.safe_hi()).contains(&n)
    }

    /// Exponents `k` with `base + k * step` inside the window, `step != 0`.
    pub(crate) fn exponents(&self, base: i64, step: i64) -> std::ops::RangeInclusive<i64> {
        debug_assert!(step != 0);
        let (a, b) = ((self.lo - base), (self.hi - base));
        let (a, b) = if step > 0 { (a, b) } else { (-b, -a) };
        let s = step.abs();
        a.div_euclid(s) + i64::from(a.rem_euclid(s) != 0)..=b.div_euclid(s)
    }
}

impl fmt::Display for DegreeWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}
