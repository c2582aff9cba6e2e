//! Finite unions of disjoint closed real intervals.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Ordered union of disjoint closed intervals `[a_i, b_i]` with `a_i < b_i`
/// and `b_i < a_{i+1}`. Always holds at least one band; degenerate one-point
/// bands are rejected so downstream quadrature stays non-singular.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalUnion<T> {
    bands: Vec<(T, T)>,
}

impl<T: Scalar> IntervalUnion<T> {
    /// Canonical constructor: sorts the raw pairs and merges overlapping or
    /// touching intervals. Idempotent on already-normalized input.
    pub fn normalize(raw: &[(T, T)]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyInput);
        }
        for &(a, b) in raw {
            if !(a < b) || !a.is_finite() || !b.is_finite() {
                return Err(Error::InvalidBand {
                    a: a.to_f64().unwrap_or(f64::NAN),
                    b: b.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        let mut sorted = raw.to_vec();
        sorted.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        let mut bands: Vec<(T, T)> = Vec::with_capacity(sorted.len());
        for (a, b) in sorted {
            match bands.last_mut() {
                Some(last) if a <= last.1 => last.1 = last.1.max(b),
                _ => bands.push((a, b)),
            }
        }
        Ok(Self { bands })
    }

    pub fn bands(&self) -> &[(T, T)] {
        &self.bands
    }

    pub fn band_count(&self) -> usize {
        self.bands.len()
    }

    /// Open intervals between consecutive bands.
    pub fn gaps(&self) -> Vec<(T, T)> {
        self.bands.windows(2).map(|w| (w[0].1, w[1].0)).collect()
    }

    pub fn inf(&self) -> T {
        self.bands[0].0
    }

    pub fn sup(&self) -> T {
        self.bands[self.bands.len() - 1].1
    }

    pub fn diameter(&self) -> T {
        self.sup() - self.inf()
    }

    /// Total Lebesgue measure of the union.
    pub fn measure(&self) -> T {
        self.bands
            .iter()
            .fold(T::zero(), |acc, &(a, b)| acc + (b - a))
    }

    pub fn contains(&self, t: T) -> bool {
        self.bands.iter().any(|&(a, b)| t >= a && t <= b)
    }

    /// Index of the band whose open interior contains `t`.
    pub fn interior_band_of(&self, t: T) -> Option<usize> {
        self.bands.iter().position(|&(a, b)| t > a && t < b)
    }

    /// Lebesgue measure of `(x - delta, x + delta) ∩ E`.
    pub fn window_measure(&self, x: T, delta: T) -> T {
        let lo = x - delta;
        let hi = x + delta;
        let mut m = T::zero();
        for &(a, b) in &self.bands {
            let l = a.max(lo);
            let r = b.min(hi);
            if r > l {
                m += r - l;
            }
        }
        m
    }

    /// `|(x - delta, x + delta) ∩ E| / delta` for a single window.
    pub fn window_ratio(&self, x: T, delta: T) -> T {
        self.window_measure(x, delta) / delta
    }

    /// Lower estimate of the homogeneity constant: the infimum of the window
    /// ratio over a deterministic grid of centers `x ∈ E` and a geometric
    /// grid of `delta_samples` radii spanning `diam(E) · 2^-30 ..= diam(E)`.
    /// Values lie in `[0, 2]` and shrink (never grow) as the radius grid is
    /// refined.
    pub fn homogeneity_eta(&self, delta_samples: usize) -> T {
        let delta_samples = delta_samples.max(1);
        let diam = self.diameter();
        const CENTERS_PER_BAND: usize = 65;

        let mut eta = T::cst(2.0);
        for &(a, b) in &self.bands {
            for i in 0..CENTERS_PER_BAND {
                let frac = T::of_usize(i) / T::of_usize(CENTERS_PER_BAND - 1);
                let x = a + (b - a) * frac;
                for s in 0..delta_samples {
                    let theta = if delta_samples == 1 {
                        T::one()
                    } else {
                        T::of_usize(s) / T::of_usize(delta_samples - 1)
                    };
                    // geometric radii: diam * 2^(-30 (1 - theta))
                    let delta = diam * (T::cst(-30.0) * (T::one() - theta)).exp2();
                    eta = eta.min(self.window_ratio(x, delta));
                }
            }
        }
        eta
    }

    /// Affine image `s·E + t` (with `s > 0`), used by transport tests and
    /// by the band-frame normalizations.
    pub fn affine(&self, s: T, t: T) -> Result<Self> {
        if !(s > T::zero()) {
            return Err(Error::InvalidInput("affine scale must be positive".into()));
        }
        let bands: Vec<(T, T)> = self
            .bands
            .iter()
            .map(|&(a, b)| (s * a + t, s * b + t))
            .collect();
        Self::normalize(&bands)
    }
}
