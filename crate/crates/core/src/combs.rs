//! Comb regions with general upper semi-continuous height data, the
//! classical condition checkers (Widom, sector, discrete Muckenhoupt), the
//! example-comb generators, and branch-tracked evaluation of
//! `θ = arccos(P/L)`.
//!
//! A [`GeneralComb`] keeps finitely many point slits plus finitely many
//! constant-height plateau intervals; the infinite example combs enter as
//! depth-truncated generators.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::poly::{plus_minus_roots, RealPolynomial};
use crate::scalar::Scalar;

/// Comb with base `(a, b)`, point slits `(position, height)` and plateau
/// intervals `(left, right, height)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralComb<T> {
    base: (T, T),
    slits: Vec<(T, T)>,
    plateaus: Vec<(T, T, T)>,
}

impl<T: Scalar> GeneralComb<T> {
    pub fn new(base: (T, T), slits: &[(T, T)], plateaus: &[(T, T, T)]) -> Result<Self> {
        if !(base.0 < base.1) {
            return Err(Error::InvalidInput(
                "comb base must be a proper interval".into(),
            ));
        }
        let mut slits = slits.to_vec();
        slits.sort_by(|u, v| u.0.partial_cmp(&v.0).unwrap());
        for (j, &(x, h)) in slits.iter().enumerate() {
            if h < T::zero() || !h.is_finite() {
                return Err(Error::NegativeHeight(j));
            }
            if !(x > base.0 && x < base.1) {
                return Err(Error::InvalidInput(format!(
                    "slit position {x} outside the open base"
                )));
            }
        }
        let mut plateaus = plateaus.to_vec();
        plateaus.sort_by(|u, v| u.0.partial_cmp(&v.0).unwrap());
        for (j, &(a, b, h)) in plateaus.iter().enumerate() {
            if h < T::zero() || !h.is_finite() {
                return Err(Error::NegativeHeight(j));
            }
            if !(a < b) {
                return Err(Error::InvalidInput(
                    "plateau must have positive length".into(),
                ));
            }
            if j > 0 && plateaus[j - 1].1 > a {
                return Err(Error::InvalidInput(
                    "plateaus must be pairwise disjoint".into(),
                ));
            }
        }
        Ok(Self {
            base,
            slits,
            plateaus,
        })
    }

    pub fn base(&self) -> (T, T) {
        self.base
    }

    pub fn slits(&self) -> &[(T, T)] {
        &self.slits
    }

    pub fn plateaus(&self) -> &[(T, T, T)] {
        &self.plateaus
    }

    /// Total slit height. A plateau of positive height counts as
    /// uncountably many slits, so it reads as `+∞`.
    pub fn widom_sum(&self) -> T {
        if self.plateaus.iter().any(|&(_, _, h)| h > T::zero()) {
            return T::infinity();
        }
        let mut s = T::zero();
        for &(_, h) in &self.slits {
            s += h;
        }
        s
    }

    /// Sector function `H(x) = sup_y h(y)/|y - x|`; `+∞` when `x` carries a
    /// positive slit or sits inside a positive plateau. Plateau distance is
    /// measured to the nearest point of the plateau.
    pub fn sector_h(&self, x: T) -> Result<T> {
        if !(x > self.base.0 && x < self.base.1) {
            return Err(Error::OutsideSupport(x.to_f64().unwrap_or(f64::NAN)));
        }
        let mut sup = T::zero();
        for &(pos, h) in &self.slits {
            if h > T::zero() {
                let d = (pos - x).abs();
                if d == T::zero() {
                    return Ok(T::infinity());
                }
                sup = sup.max(h / d);
            }
        }
        for &(a, b, h) in &self.plateaus {
            if h > T::zero() {
                if x >= a && x <= b {
                    return Ok(T::infinity());
                }
                let d = if x < a { a - x } else { x - b };
                sup = sup.max(h / d);
            }
        }
        Ok(sup)
    }
}

/// Exact maximum of `(Σ_I d)(Σ_I 1/d) / |I|²` over all contiguous index
/// windows, by prefix sums in `O(len²)`.
pub fn muckenhoupt_sup<T: Scalar>(d: &[T]) -> Result<T> {
    if d.is_empty() {
        return Err(Error::EmptyInput);
    }
    for (j, &v) in d.iter().enumerate() {
        if !(v > T::zero()) || !v.is_finite() {
            return Err(Error::NonPositiveEntry(j));
        }
    }
    let n = d.len();
    let mut ps = vec![T::zero(); n + 1];
    let mut pr = vec![T::zero(); n + 1];
    for (j, &v) in d.iter().enumerate() {
        ps[j + 1] = ps[j] + v;
        pr[j + 1] = pr[j] + T::one() / v;
    }
    let mut sup = T::zero();
    for i in 0..n {
        for j in i..n {
            let len = T::of_usize(j - i + 1);
            let v = (ps[j + 1] - ps[i]) * (pr[j + 1] - pr[i]) / (len * len);
            sup = sup.max(v);
        }
    }
    Ok(sup)
}

/// Dyadic comb of the quadratic Julia examples: base `(0, 1)`, a slit of
/// height `h0·2^{-m}` at every dyadic `odd/2^m`, `1 ≤ m ≤ depth`.
pub fn julia_comb<T: Scalar>(h0: T, depth: usize) -> Result<GeneralComb<T>> {
    if !(h0 > T::zero()) {
        return Err(Error::InvalidInput("h0 must be positive".into()));
    }
    if depth == 0 || depth > 24 {
        return Err(Error::InvalidInput("depth must be in 1..=24".into()));
    }
    let mut slits = Vec::with_capacity((1usize << depth) - 1);
    for m in 1..=depth {
        let h = h0 * T::cst(0.5).powi(m as i32);
        let denom = T::of_usize(1 << m);
        let mut j = 1usize;
        while j < (1 << m) {
            slits.push((T::of_usize(j) / denom, h));
            j += 2;
        }
    }
    GeneralComb::new((T::zero(), T::one()), &slits, &[])
}

/// Inner approximation of the Cantor-characteristic comb: the `2^depth`
/// middle-thirds intervals remaining at the given depth, each a plateau of
/// height 1 over the base `(0, 1)`.
pub fn cantor_comb<T: Scalar>(depth: usize) -> Result<GeneralComb<T>> {
    if depth == 0 || depth > 20 {
        return Err(Error::InvalidInput("depth must be in 1..=20".into()));
    }
    let mut intervals = vec![(T::zero(), T::one())];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(intervals.len() * 2);
        for &(a, b) in &intervals {
            let third = (b - a) / T::cst(3.0);
            next.push((a, a + third));
            next.push((b - third, b));
        }
        intervals = next;
    }
    let plateaus: Vec<(T, T, T)> = intervals
        .into_iter()
        .map(|(a, b)| (a, b, T::one()))
        .collect();
    GeneralComb::new((T::zero(), T::one()), &[], &plateaus)
}

/// Continue `θ = arccos(P/L)` along a polyline in the closed upper
/// half-plane. The path must start at the anchor (the rightmost real root
/// of `P² - L²`, where `θ = 0`) and stay clear of all branch points.
///
/// The continuation is pinned to the conformal branch mapping the upper
/// half-plane into the upper half-plane, so `Im θ ≥ 0` along the path and
/// the comb base is traversed through non-positive real values.
pub fn theta_eval<T: Scalar>(
    p: &RealPolynomial<T>,
    l: T,
    path: &[Complex<T>],
) -> Result<Complex<T>> {
    if !(l > T::zero()) {
        return Err(Error::InvalidInput("deviation L must be positive".into()));
    }
    if path.is_empty() {
        return Err(Error::PathTooShort);
    }

    let branch_points = plus_minus_roots(p, l);
    let scale = p.root_bound().max(T::one());
    let anchor = branch_points
        .iter()
        .filter(|z| z.im.abs() <= T::cst(1e-8) * scale)
        .map(|z| z.re)
        .fold(T::neg_infinity(), |a, b| a.max(b));
    if !anchor.is_finite() {
        return Err(Error::InvalidInput("P² - L² has no real roots".into()));
    }
    let anchor_c = Complex::new(anchor, T::zero());

    if (path[0] - anchor_c).norm() > T::cst(1e-9) * scale {
        return Err(Error::PathNotAtAnchor {
            anchor: anchor.to_f64().unwrap_or(f64::NAN),
        });
    }
    for z in path {
        if z.im < -T::cst(1e-12) {
            return Err(Error::NotUpperHalfPlane);
        }
    }

    // branch-point clearance, with the anchor itself exempt on the first leg
    let clearance = T::cst(1e-8);
    for (i, seg) in path.windows(2).enumerate() {
        for b in &branch_points {
            if i == 0 && (*b - anchor_c).norm() <= T::cst(1e-12) * scale {
                continue;
            }
            let d = dist_point_segment(*b, seg[0], seg[1]);
            if d < clearance {
                return Err(Error::BranchPointNearPath {
                    re: b.re.to_f64().unwrap_or(f64::NAN),
                    im: b.im.to_f64().unwrap_or(f64::NAN),
                    dist: d.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
    }

    let dp = p.derivative();
    let mut theta = Complex::new(T::zero(), T::zero());
    let mut z = anchor_c;

    for seg in path.windows(2) {
        march_segment(p, &dp, l, &mut theta, &mut z, seg[1])?;
    }
    if path.len() == 1 {
        return Ok(theta);
    }
    Ok(theta)
}

/// Numerically stable complex arccos (up to sign, which the branch
/// selection handles): the textbook `-i ln(w + i√(1-w²))` route cancels
/// catastrophically for large `|w|`, so go through the inverse Joukowski
/// map `v = w + √(w-1)√(w+1)` with `|v| ≥ 1` and return `i Log v`, for
/// which `cos` gives back `w` exactly.
fn stable_acos<T: Scalar>(w: Complex<T>) -> Complex<T> {
    let one = Complex::new(T::one(), T::zero());
    let v = w + (w - one).sqrt() * (w + one).sqrt();
    let log_v = Complex::new(v.norm().ln(), v.arg());
    Complex::new(T::zero(), T::one()) * log_v
}

fn dist_point_segment<T: Scalar>(p: Complex<T>, a: Complex<T>, b: Complex<T>) -> T {
    let ab = b - a;
    let denom = ab.norm_sqr();
    if denom == T::zero() {
        return (p - a).norm();
    }
    let t = ((p - a).re * ab.re + (p - a).im * ab.im) / denom;
    let t = t.max(T::zero()).min(T::one());
    (p - (a + ab * Complex::new(t, T::zero()))).norm()
}

/// Step along one segment, inverting `cos` locally and keeping the branch
/// that stays closest to the predicted value.
fn march_segment<T: Scalar>(
    p: &RealPolynomial<T>,
    dp: &RealPolynomial<T>,
    l: T,
    theta: &mut Complex<T>,
    z: &mut Complex<T>,
    target: Complex<T>,
) -> Result<()> {
    let two_pi = T::cst(2.0) * T::PI();
    let start = *z;
    let full = target - start;
    if full.norm() == T::zero() {
        return Ok(());
    }
    let mut t = T::zero();
    let mut dt = T::cst(1.0 / 16.0);

    while t < T::one() {
        let t2 = (t + dt).min(T::one());
        let z2 = start + full * Complex::new(t2, T::zero());
        let w = p.eval_complex(z2) / Complex::new(l, T::zero());

        // prediction: theta' = -P'/(L sin theta), usable away from tips
        let sin_t = theta.sin();
        let pred = if sin_t.norm() > T::cst(0.05) {
            let dz = z2 - *z;
            *theta - dz * dp.eval_complex(*z) / (Complex::new(l, T::zero()) * sin_t)
        } else {
            *theta
        };

        let acos = stable_acos(w);
        let mut best: Option<Complex<T>> = None;
        for cand_base in [acos, -acos] {
            let k = ((pred - cand_base).re / two_pi).round();
            let cand = cand_base + Complex::new(two_pi * k, T::zero());
            let better = match best {
                None => true,
                Some(b) => {
                    let diff = (cand - pred).norm() - (b - pred).norm();
                    if diff.abs() <= T::cst(1e-12) {
                        // ambiguous only at the anchor: prefer the branch
                        // heading into the upper half-plane, then leftward
                        cand.im > b.im || (cand.im == b.im && cand.re < b.re)
                    } else {
                        diff < T::zero()
                    }
                }
            };
            if better {
                best = Some(cand);
            }
        }
        let cand = best.unwrap();

        if (cand - *theta).norm() <= T::cst(0.5) {
            *theta = cand;
            *z = z2;
            t = t2;
            dt = (dt * T::cst(1.5)).min(T::cst(0.25));
        } else {
            dt *= T::cst(0.5);
            if dt < T::cst(1e-13) {
                return Err(Error::InvalidInput(
                    "continuation step collapsed; path too close to a branch point".into(),
                ));
            }
        }
    }
    Ok(())
}
