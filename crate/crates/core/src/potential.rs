//! Equilibrium measure, Green function and Green comb of an interval union.
//!
//! For a union `E` of `k` bands the equilibrium density is
//! `dμ/dt = |Q(t)| / (π √|R(t)|)` where `R(t) = ∏ (t - a_i)(t - b_i)` and the
//! monic polynomial `Q` of degree `k - 1` is pinned by the vanishing of
//! `∫_gap Q/√|R|` over every gap. All integrals substitute
//! `t = mid + half·cos φ` per interval, which removes both endpoint
//! square-root singularities exactly; the midpoint rule in `φ` then
//! converges geometrically.
//!
//! Evaluation of the potential uses the inverse-Joukowski series per band:
//! with `ζ = (z - mid)/half`, `v = ζ + √(ζ-1)√(ζ+1)` (so `|v| ≥ 1`) and
//! `a_m` the cosine coefficients of the pushed-forward density,
//!
//! `∫_band log(z - t) dμ(t) = μ_band (log(half/2) + Log v) - π Σ_m (a_m/m) v^-m`.
//!
//! The series is exact on the band itself (`|v| = 1`), so boundary values,
//! gap values and far-field values all come from one formula with spectral
//! accuracy.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::solve_dense;
use crate::poly::{chebyshev_t, RealPolynomial};
use crate::realset::IntervalUnion;
use crate::scalar::Scalar;

/// Hard cap on the number of bands (linear-solve conditioning budget).
pub const MAX_BANDS: usize = 64;

/// Tuning knobs for [`equilibrium_with`].
#[derive(Debug, Clone, Copy)]
pub struct EquilibriumParams {
    /// Maximum quadrature nodes per interval; refinement doubles from 64.
    pub max_nodes: usize,
}

impl Default for EquilibriumParams {
    fn default() -> Self {
        Self { max_nodes: 1 << 16 }
    }
}

/// Comb of the Green function: vertical slits over the base `(0, π)`,
/// one per gap of the set. Positions carry cumulative harmonic measure,
/// heights the Green values at the gap critical points.
#[derive(Debug, Clone, PartialEq)]
pub struct GreenComb<T> {
    slits: Vec<(T, T)>,
}

impl<T: Scalar> GreenComb<T> {
    /// Base interval of the comb, always `(0, π)`.
    pub fn base(&self) -> (T, T) {
        (T::zero(), T::PI())
    }

    /// Slits as `(position, height)`, positions strictly increasing in `(0, π)`.
    pub fn slits(&self) -> &[(T, T)] {
        &self.slits
    }
}

/// Per-band quadrature data: cosine-pushforward density samples condensed
/// into Fourier coefficients.
#[derive(Debug, Clone)]
struct BandSeries<T> {
    mid: T,
    half: T,
    measure: T,
    /// Cosine coefficients `a_m`, `m = 1..=fourier.len()`.
    fourier: Vec<T>,
}

/// Fully Chebyshev-scaled representation of the gap polynomial:
/// `Q(t) = halfw^d · [2^(1-d) T_d(u) + Σ_j coeffs[j] T_j(u)]`, `u` the
/// hull-scaled variable. Monic in `t` by construction, and free of the
/// catastrophic cancellation a raw `t^d` term suffers on wide hulls.
#[derive(Debug, Clone)]
struct QRep<T> {
    /// Chebyshev coefficients of the monic-normalized polynomial in `u`,
    /// including the fixed leading entry `2^(1-d)` at index `d`.
    coeffs: Vec<T>,
    centre: T,
    halfw: T,
    /// `halfw^degree`, the scale from the `u`-monic to the `t`-monic form.
    scale: T,
}

impl<T: Scalar> QRep<T> {
    fn constant_one(centre: T, halfw: T) -> Self {
        Self {
            coeffs: vec![T::one()],
            centre,
            halfw,
            scale: T::one(),
        }
    }

    fn eval(&self, t: T) -> T {
        let u = (t - self.centre) / self.halfw;
        let mut b1 = T::zero();
        let mut b2 = T::zero();
        for &c in self.coeffs.iter().rev() {
            let b0 = T::cst(2.0) * u * b1 - b2 + c;
            b2 = b1;
            b1 = b0;
        }
        self.scale * (b1 - u * b2)
    }

    fn to_polynomial(&self) -> RealPolynomial<T> {
        let mut q = RealPolynomial::zero();
        for (j, &a) in self.coeffs.iter().enumerate() {
            let tj: RealPolynomial<T> = chebyshev_t(j);
            let tj_u = tj.compose_affine(T::one() / self.halfw, -self.centre / self.halfw);
            q = q.add(&tj_u.scale(a * self.scale));
        }
        q
    }
}

/// Equilibrium measure data of an interval union: gap polynomial, gap
/// critical points, Robin constant, capacity, per-band harmonic measures
/// and the series coefficients needed to evaluate the Green function.
#[derive(Debug, Clone)]
pub struct EquilibriumData<T> {
    set: IntervalUnion<T>,
    q: RealPolynomial<T>,
    q_rep: QRep<T>,
    gap_zeros: Vec<T>,
    robin: T,
    capacity: T,
    band_measures: Vec<T>,
    series: Vec<BandSeries<T>>,
    nodes: usize,
}

/// Compute the equilibrium data of `set` with default refinement limits.
pub fn equilibrium<T: Scalar>(set: &IntervalUnion<T>) -> Result<EquilibriumData<T>> {
    equilibrium_with(set, &EquilibriumParams::default())
}

/// Compute the equilibrium data of `set`, doubling quadrature nodes until
/// the Robin constant stabilizes (successive change below ~4500 ulps, i.e.
/// 1e-12 for `f64`).
pub fn equilibrium_with<T: Scalar>(
    set: &IntervalUnion<T>,
    params: &EquilibriumParams,
) -> Result<EquilibriumData<T>> {
    let k = set.band_count();
    if k > MAX_BANDS {
        return Err(Error::TooManyBands(k, MAX_BANDS));
    }
    let gamma_tol = T::epsilon() * T::cst(4.5e3);

    let mut nodes = 64usize;
    let mut prev_gamma: Option<T> = None;
    let mut last: Option<EquilibriumData<T>> = None;
    let mut residual = T::infinity();

    while nodes <= params.max_nodes.max(64) {
        let data = solve_at_resolution(set, nodes)?;
        let gamma = data.robin;
        if let Some(prev) = prev_gamma {
            residual = (gamma - prev).abs();
            if residual < gamma_tol {
                return Ok(data);
            }
        }
        prev_gamma = Some(gamma);
        last = Some(data);
        nodes *= 2;
    }

    let _ = last;
    Err(Error::QuadratureNonConvergence {
        residual: residual.to_f64().unwrap_or(f64::NAN),
        nodes: nodes / 2,
    })
}

/// `∏ |t - e|` over all band endpoints except the two bounding `interval`.
fn rest_product<T: Scalar>(set: &IntervalUnion<T>, interval: (T, T), t: T) -> T {
    let mut prod = T::one();
    for &(a, b) in set.bands() {
        if a != interval.0 && a != interval.1 {
            prod *= (t - a).abs();
        }
        if b != interval.0 && b != interval.1 {
            prod *= (t - b).abs();
        }
    }
    prod
}

fn solve_at_resolution<T: Scalar>(set: &IntervalUnion<T>, n: usize) -> Result<EquilibriumData<T>> {
    let k = set.band_count();
    let hull_c = (set.inf() + set.sup()) * T::cst(0.5);
    let hull_h = set.diameter() * T::cst(0.5);

    let q_rep = if k == 1 {
        QRep::constant_one(hull_c, hull_h)
    } else {
        solve_gap_polynomial(set, n, hull_c, hull_h)?
    };

    // per-band measures and Fourier coefficients of the pushed-forward density
    let mut series = Vec::with_capacity(k);
    let mut band_measures = Vec::with_capacity(k);
    let fourier_cap = n / 2;
    for &(a, b) in set.bands() {
        let mid = (a + b) * T::cst(0.5);
        let half = (b - a) * T::cst(0.5);
        let mut g = vec![T::zero(); n];
        let mut cos_phi = vec![T::zero(); n];
        for (kk, gk) in g.iter_mut().enumerate() {
            let phi = T::PI() * (T::of_usize(kk) + T::cst(0.5)) / T::of_usize(n);
            cos_phi[kk] = phi.cos();
            let t = mid + half * cos_phi[kk];
            let rest = rest_product(set, (a, b), t);
            *gk = q_rep.eval(t).abs() / (T::PI() * rest.sqrt());
        }
        let measure = {
            let mut s = T::zero();
            for &gk in &g {
                s += gk;
            }
            s * T::PI() / T::of_usize(n)
        };

        // cos(m φ_k) by the Chebyshev recurrence per node, resynchronized
        // periodically against direct evaluation (the recurrence drifts by
        // ~m²·eps); coefficients stop once the geometric tail is quiet
        let fourier_cap = fourier_cap.min(4096);
        let mut fourier: Vec<T> = Vec::new();
        let mut prev: Vec<T> = vec![T::one(); n]; // cos(0 φ)
        let mut cur = cos_phi.clone(); // cos(1 φ)
        let g_scale = g.iter().fold(T::min_positive_value(), |acc, &v| acc.max(v));
        let tail_tol = g_scale * T::epsilon() * T::cst(0.01);
        let mut quiet = 0usize;
        for m in 1..=fourier_cap {
            if m > 1 && m % 64 == 1 {
                for kk in 0..n {
                    let phi = T::PI() * (T::of_usize(kk) + T::cst(0.5)) / T::of_usize(n);
                    let mf = T::of_usize(m);
                    cur[kk] = (mf * phi).cos();
                    prev[kk] = ((mf - T::one()) * phi).cos();
                }
            }
            let mut s = T::zero();
            for (kk, &gk) in g.iter().enumerate() {
                s += gk * cur[kk];
            }
            let am = s * T::cst(2.0) / T::of_usize(n);
            fourier.push(am);
            quiet = if am.abs() < tail_tol { quiet + 1 } else { 0 };
            if quiet >= 24 {
                break;
            }
            for kk in 0..n {
                let next = T::cst(2.0) * cos_phi[kk] * cur[kk] - prev[kk];
                prev[kk] = cur[kk];
                cur[kk] = next;
            }
        }
        while fourier.len() > 1 && quiet > 0 {
            fourier.pop();
            quiet -= 1;
        }

        band_measures.push(measure);
        series.push(BandSeries {
            mid,
            half,
            measure,
            fourier,
        });
    }

    // gap zeros of Q (one per gap, simple)
    let mut gap_zeros = Vec::with_capacity(k.saturating_sub(1));
    for (lo, hi) in set.gaps() {
        gap_zeros.push(gap_zero(&q_rep, lo, hi));
    }

    let mut data = EquilibriumData {
        set: set.clone(),
        q: q_rep.to_polynomial(),
        q_rep,
        gap_zeros,
        robin: T::zero(),
        capacity: T::zero(),
        band_measures,
        series,
        nodes: n,
    };

    // Robin constant anchored at the rightmost endpoint, where G = 0.
    let anchor = Complex::new(set.sup(), T::zero());
    let gamma = -data.log_potential(anchor).re;
    data.robin = gamma;
    data.capacity = (-gamma).exp();
    Ok(data)
}

/// Solve the linear system pinning the monic gap polynomial `Q`.
fn solve_gap_polynomial<T: Scalar>(
    set: &IntervalUnion<T>,
    n: usize,
    centre: T,
    halfw: T,
) -> Result<QRep<T>> {
    let k = set.band_count();
    let deg = k - 1;
    let gaps = set.gaps();
    let mut a = vec![T::zero(); deg * deg];
    let mut rhs = vec![T::zero(); deg];

    // leading entry of the u-monic Chebyshev form
    let lead_coeff = T::cst(2.0).powi(1 - deg as i32);

    for (gi, &(lo, hi)) in gaps.iter().enumerate() {
        let mid = (lo + hi) * T::cst(0.5);
        let half = (hi - lo) * T::cst(0.5);
        for kk in 0..n {
            let phi = T::PI() * (T::of_usize(kk) + T::cst(0.5)) / T::of_usize(n);
            let t = mid + half * phi.cos();
            let weight = T::one() / rest_product(set, (lo, hi), t).sqrt();
            let u = (t - centre) / halfw;
            // Chebyshev values T_0..T_deg at u
            let mut tvals = vec![T::zero(); deg + 1];
            tvals[0] = T::one();
            if deg >= 1 {
                tvals[1] = u;
            }
            for j in 2..=deg {
                tvals[j] = T::cst(2.0) * u * tvals[j - 1] - tvals[j - 2];
            }
            for j in 0..deg {
                a[gi * deg + j] += tvals[j] * weight;
            }
            rhs[gi] -= lead_coeff * tvals[deg] * weight;
        }
    }

    let mut coeffs = solve_dense(&mut a, &mut rhs)?;
    coeffs.push(lead_coeff);
    Ok(QRep {
        coeffs,
        centre,
        halfw,
        scale: halfw.powi(deg as i32),
    })
}

/// Unique zero of `Q` in the open gap `(lo, hi)`: bisection on the sign
/// change, then a short Newton polish by central differences.
fn gap_zero<T: Scalar>(q: &QRep<T>, lo: T, hi: T) -> T {
    let mut a = lo;
    let mut b = hi;
    let mut fa = q.eval(a);
    let fb = q.eval(b);
    if (fa > T::zero()) == (fb > T::zero()) {
        // Sign wobble at the band edges; probe slightly inside.
        let off = (hi - lo) * T::cst(1e-9);
        a = lo + off;
        b = hi - off;
        fa = q.eval(a);
    }
    for _ in 0..200 {
        let mid = (a + b) * T::cst(0.5);
        if mid <= a || mid >= b {
            break;
        }
        let fm = q.eval(mid);
        if fm == T::zero() {
            return mid;
        }
        if (fm > T::zero()) == (fa > T::zero()) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    (a + b) * T::cst(0.5)
}

impl<T: Scalar> EquilibriumData<T> {
    pub fn set(&self) -> &IntervalUnion<T> {
        &self.set
    }

    /// Monic gap polynomial `Q` (identically 1 for a single band).
    pub fn q(&self) -> &RealPolynomial<T> {
        &self.q
    }

    /// Zeros of `Q`, one strictly inside each gap.
    pub fn gap_zeros(&self) -> &[T] {
        &self.gap_zeros
    }

    /// Robin constant `γ`.
    pub fn robin(&self) -> T {
        self.robin
    }

    /// Logarithmic capacity, `e^{-γ}` exactly as stored.
    pub fn capacity(&self) -> T {
        self.capacity
    }

    /// Equilibrium measure of each band; sums to 1 at convergence.
    pub fn band_measures(&self) -> &[T] {
        &self.band_measures
    }

    /// Degree of `R(t) = ∏ (t - a_i)(t - b_i)`.
    pub fn total_degree_r(&self) -> usize {
        2 * self.set.band_count()
    }

    /// Final per-interval node count of the converged quadrature.
    pub fn nodes(&self) -> usize {
        self.nodes
    }

    /// Equilibrium density at a point strictly inside a band.
    pub fn density(&self, t: T) -> Result<T> {
        if self.set.interior_band_of(t).is_none() {
            return Err(Error::OutsideSupport(t.to_f64().unwrap_or(f64::NAN)));
        }
        let mut r = T::one();
        for &(a, b) in self.set.bands() {
            r = r * (t - a).abs() * (t - b).abs();
        }
        Ok(self.q_rep.eval(t).abs() / (T::PI() * r.sqrt()))
    }

    /// `Φ(z) = ∫ log(z - t) dμ(t)` for `Im z ≥ 0` (principal branch per band).
    fn log_potential(&self, z: Complex<T>) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for band in &self.series {
            let zeta = (z - Complex::new(band.mid, T::zero())) / Complex::new(band.half, T::zero());
            let one = Complex::new(T::one(), T::zero());
            let v = zeta + (zeta - one).sqrt() * (zeta + one).sqrt();
            // Log v with |v| >= 1; arg in [0, pi] for Im z >= 0
            let log_v = Complex::new(v.norm().ln(), v.arg());
            let mut sum = Complex::new(T::zero(), T::zero());
            let vinv = one / v;
            let mut vpow = vinv;
            for (m, &am) in band.fourier.iter().enumerate() {
                sum = sum + vpow * Complex::new(am / T::of_usize(m + 1), T::zero());
                vpow = vpow * vinv;
            }
            let mu = Complex::new(band.measure, T::zero());
            acc = acc + mu * (Complex::new((band.half * T::cst(0.5)).ln(), T::zero()) + log_v)
                - sum * Complex::new(T::PI(), T::zero());
        }
        acc
    }

    /// Green function `G(z) = ∫ log|z - t| dμ(t) + γ`; symmetric under
    /// conjugation, non-negative, zero on `E`.
    pub fn green(&self, z: Complex<T>) -> T {
        let z_up = Complex::new(z.re, z.im.abs());
        self.log_potential(z_up).re + self.robin
    }

    /// Complex Green function `φ` with `Im φ = G`, `Re φ ∈ (0, π)`
    /// increasing left to right; requires `Im z > 0`.
    pub fn complex_green(&self, z: Complex<T>) -> Result<Complex<T>> {
        if !(z.im > T::zero()) {
            return Err(Error::NotUpperHalfPlane);
        }
        let phi = self.log_potential(z);
        Ok(Complex::new(T::PI() - phi.im, phi.re + self.robin))
    }

    /// Derivative `φ'(z) = i ∫ dμ(t)/(z - t)` by direct quadrature
    /// (independent of the series route used by `complex_green`).
    pub fn complex_green_derivative(&self, z: Complex<T>) -> Result<Complex<T>> {
        if !(z.im > T::zero()) {
            return Err(Error::NotUpperHalfPlane);
        }
        let i = Complex::new(T::zero(), T::one());
        let re = self.integrate_dmu(|t| ((z - Complex::new(t, T::zero())).inv()).re);
        let im = self.integrate_dmu(|t| ((z - Complex::new(t, T::zero())).inv()).im);
        Ok(i * Complex::new(re, im))
    }

    /// Integrate a function against the equilibrium measure.
    pub fn integrate_dmu<F: Fn(T) -> T>(&self, f: F) -> T {
        let n = self.nodes;
        let mut total = T::zero();
        for &(a, b) in self.set.bands() {
            let mid = (a + b) * T::cst(0.5);
            let half = (b - a) * T::cst(0.5);
            let mut s = T::zero();
            for kk in 0..n {
                let phi = T::PI() * (T::of_usize(kk) + T::cst(0.5)) / T::of_usize(n);
                let t = mid + half * phi.cos();
                let rest = rest_product(&self.set, (a, b), t);
                let g = self.q_rep.eval(t).abs() / (T::PI() * rest.sqrt());
                s += f(t) * g;
            }
            total += s * T::PI() / T::of_usize(n);
        }
        total
    }

    /// Green comb: slit `j` sits at `π` times the cumulative measure left of
    /// gap `j`, with height `G(c_j)` at the gap critical point.
    pub fn green_comb(&self) -> GreenComb<T> {
        let mut slits = Vec::with_capacity(self.gap_zeros.len());
        let mut cum = T::zero();
        for (j, &c) in self.gap_zeros.iter().enumerate() {
            cum += self.band_measures[j];
            let h = self.green(Complex::new(c, T::zero()));
            slits.push((T::PI() * cum, h));
        }
        GreenComb { slits }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(bands: &[(f64, f64)]) -> IntervalUnion<f64> {
        IntervalUnion::normalize(bands).unwrap()
    }

    #[test]
    fn single_interval_closed_forms() {
        let data = equilibrium(&set(&[(-1.0, 1.0)])).unwrap();
        assert!((data.robin() - std::f64::consts::LN_2).abs() < 1e-13);
        assert!((data.capacity() - 0.5).abs() < 1e-13);
        assert_eq!(data.band_measures().len(), 1);
        assert!((data.band_measures()[0] - 1.0).abs() < 1e-13);
        assert_eq!(data.q().coeffs(), &[1.0]);
        assert!(data.gap_zeros().is_empty());

        // arcsine density
        let d0 = data.density(0.0).unwrap();
        assert!((d0 - 1.0 / std::f64::consts::PI).abs() < 1e-14);
        let d_near_edge = data.density(0.999999).unwrap();
        assert!(d_near_edge > 100.0 * d0);

        // G(2) = log(2 + sqrt 3)
        let g2 = data.green(Complex::new(2.0, 0.0));
        assert!((g2 - (2.0 + 3.0f64.sqrt()).ln()).abs() < 1e-12);

        // boundary value and large-z expansion
        assert!(data.green(Complex::new(0.3, 0.0)).abs() < 1e-8);
        let big = Complex::new(0.0, 1e6);
        let expect = 1e6f64.ln() + data.robin();
        assert!((data.green(big) - expect).abs() < 1e-5);
    }

    #[test]
    fn density_rejects_outside_points() {
        let data = equilibrium(&set(&[(-1.0, 1.0)])).unwrap();
        assert!(data.density(1.0).is_err());
        assert!(data.density(2.0).is_err());
    }

    #[test]
    fn symmetric_two_band_structure() {
        let e = set(&[(-1.0, -0.5), (0.5, 1.0)]);
        let data = equilibrium(&e).unwrap();

        // symmetry pins the gap zero and the measures
        assert!((data.gap_zeros()[0]).abs() < 1e-12);
        assert!((data.band_measures()[0] - 0.5).abs() < 1e-11);
        assert!((data.band_measures()[1] - 0.5).abs() < 1e-11);

        // preimage rule: cap = sqrt(1 - 1/4) / 2
        let cap_expect = (0.75f64).sqrt() / 2.0;
        assert!(
            (data.capacity() - cap_expect).abs() < 1e-10,
            "cap = {}",
            data.capacity()
        );

        // comb: one slit at pi/2 with height log(3)/2
        let comb = data.green_comb();
        assert_eq!(comb.slits().len(), 1);
        let (x, h) = comb.slits()[0];
        assert!((x - std::f64::consts::FRAC_PI_2).abs() < 1e-10);
        assert!((h - 0.5 * 3.0f64.ln()).abs() < 1e-10, "h = {h}");

        // density symmetry
        for &t in &[0.6, 0.75, 0.9] {
            let a = data.density(t).unwrap();
            let b = data.density(-t).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn measures_sum_to_one() {
        let e = set(&[(-2.0, -1.0), (0.0, 0.7), (1.3, 3.1)]);
        let data = equilibrium(&e).unwrap();
        let total: f64 = data.band_measures().iter().sum();
        assert!((total - 1.0).abs() < 1e-10, "total = {total}");
        assert!(data.band_measures().iter().all(|&m| m > 0.0));
        // capacity * exp(robin) = 1 exactly as stored
        assert_eq!(data.capacity(), (-data.robin()).exp());
    }

    #[test]
    fn green_nonnegative_zero_on_bands() {
        let e = set(&[(-2.0, -1.0), (0.0, 0.7), (1.3, 3.1)]);
        let data = equilibrium(&e).unwrap();
        for i in 0..200 {
            let x = -2.5 + 6.0 * (i as f64) / 199.0;
            let g = data.green(Complex::new(x, 0.0));
            assert!(g > -1e-9, "G({x}) = {g}");
            if e.contains(x) {
                assert!(g.abs() < 1e-8, "G({x}) = {g} should vanish on E");
            } else if x > e.inf() && x < e.sup() {
                assert!(g > 0.0, "G({x}) = {g} should be positive in gaps");
            }
        }
        // conjugation symmetry
        for &z in &[Complex::new(0.9, 0.4), Complex::new(-1.2, 2.0)] {
            assert!((data.green(z) - data.green(z.conj())).abs() < 1e-14);
        }
    }

    #[test]
    fn complex_green_consistency() {
        let e = set(&[(-1.0, -0.5), (0.5, 1.0)]);
        let data = equilibrium(&e).unwrap();

        let z = Complex::new(0.0, 2.0);
        let phi = data.complex_green(z).unwrap();
        assert!((phi.im - data.green(z)).abs() < 1e-9);

        // symmetry: Re phi(i) = pi/2
        let phi_i = data.complex_green(Complex::new(0.0, 1.0)).unwrap();
        assert!((phi_i.re - std::f64::consts::FRAC_PI_2).abs() < 1e-8);

        // rejects the closed lower half-plane
        assert!(data.complex_green(Complex::new(0.0, 0.0)).is_err());
        assert!(data.complex_green(Complex::new(0.0, -1.0)).is_err());
    }

    #[test]
    fn complex_green_re_monotone_near_axis() {
        let e = set(&[(-1.0, -0.25), (0.4, 1.1)]);
        let data = equilibrium(&e).unwrap();
        let y = 1e-6;
        // across a band and across the gap
        let xs = [-0.95, -0.8, -0.6, -0.4, -0.3, -0.1, 0.1, 0.3, 0.5, 0.8, 1.0];
        let mut prev = -1.0;
        for &x in &xs {
            let re = data.complex_green(Complex::new(x, y)).unwrap().re;
            assert!(
                re >= prev - 1e-6,
                "Re phi not monotone at {x}: {re} < {prev}"
            );
            assert!(re > -1e-9 && re < std::f64::consts::PI + 1e-9);
            prev = re;
        }
    }

    #[test]
    fn refinement_is_stable() {
        let e = set(&[(-1.0, 0.2), (0.5, 1.0)]);
        let coarse = equilibrium(&e).unwrap();
        let fine = solve_at_resolution(&e, coarse.nodes() * 2).unwrap();
        assert!((coarse.robin() - fine.robin).abs() < 1e-10);
    }

    #[test]
    fn band_limit_enforced() {
        let bands: Vec<(f64, f64)> = (0..65)
            .map(|i| (2.0 * i as f64, 2.0 * i as f64 + 1.0))
            .collect();
        let e = set(&bands);
        assert!(matches!(equilibrium(&e), Err(Error::TooManyBands(65, 64))));
    }
}
