//! Shared helpers for the integration suites.

#![allow(dead_code)]

use combforge_core::realset::IntervalUnion;

/// Deterministic 64-bit LCG; the suites must not depend on ambient entropy.
pub struct Lcg(pub u64);

impl Lcg {
    pub fn uniform(&mut self) -> f64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        ((self.0 >> 11) as f64) / ((1u64 << 53) as f64)
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    pub fn pick(&mut self, n: usize) -> usize {
        (self.uniform() * n as f64) as usize % n
    }
}

pub fn set(bands: &[(f64, f64)]) -> IntervalUnion<f64> {
    IntervalUnion::normalize(bands).unwrap()
}

/// Strict up-down sequence of the given length with swings in [0.2, 1.5].
pub fn random_updown(rng: &mut Lcg, len: usize) -> Vec<f64> {
    let mut c = vec![rng.range(-1.0, 1.0)];
    let mut dir = if rng.uniform() > 0.5 { 1.0 } else { -1.0 };
    for _ in 1..len {
        let prev = *c.last().unwrap();
        c.push(prev + dir * rng.range(0.2, 1.5));
        dir = -dir;
    }
    c
}

/// Random interval union with `k` bands inside [-2, 2], gaps at least 0.2.
pub fn random_set(rng: &mut Lcg, k: usize) -> IntervalUnion<f64> {
    loop {
        let mut pts: Vec<f64> = (0..2 * k).map(|_| rng.range(-2.0, 2.0)).collect();
        pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        if pts.windows(2).all(|w| w[1] - w[0] > 0.2) {
            let bands: Vec<(f64, f64)> = pts.chunks(2).map(|ch| (ch[0], ch[1])).collect();
            return set(&bands);
        }
    }
}
