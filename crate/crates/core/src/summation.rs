//! Compensated accumulation and order-fixed parallel reduction.

use num_complex::Complex64;
use rayon::prelude::*;
use std::ops::RangeInclusive;

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Componentwise compensated sum of complex values.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ComplexSum {
    re: CompensatedSum,
    im: CompensatedSum,
}

impl ComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

impl Extend<Complex64> for ComplexSum {
    fn extend<I: IntoIterator<Item = Complex64>>(&mut self, iter: I) {
        for z in iter {
            self.add(z);
        }
    }
}

impl FromIterator<Complex64> for ComplexSum {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        let mut acc = Self::new();
        acc.extend(iter);
        acc
    }
}

/// Evaluates `f(c)` for every `c` in `range` on the rayon pool and returns the
/// results in ascending `c`. Callers fold the vector sequentially, which makes
/// floating results independent of the number of worker threads.
pub fn ordered_map<T, F>(range: RangeInclusive<u64>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    if range.is_empty() {
        return Vec::new();
    }
    // Denominator work grows like c^2, so interleave small chunks.
    range
        .collect::<Vec<_>>()
        .par_iter()
        .with_min_len(4)
        .map(|&c| f(c))
        .collect()
}
