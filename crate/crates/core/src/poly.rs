//! Dense real polynomials.
//!
//! Coefficients are stored in ascending degree order. Root extraction comes
//! in two flavours:
//!
//! * [`RealPolynomial::real_roots`] — recursive bracketing between the real
//!   critical points (roots interlace, so every real root lies in a bracket
//!   with a sign change, or sits at a critical point when multiple). Fully
//!   deterministic and robust for the all-real-roots polynomials this crate
//!   mostly deals with; returns roots with multiplicity.
//! * [`RealPolynomial::complex_roots`] — the real roots above, plus the
//!   deflated non-real remainder chased by simultaneous Aberth–Ehrlich
//!   iteration and Newton-polished against the original polynomial.

use num_complex::Complex;

use crate::scalar::Scalar;

/// Real polynomial with dense coefficients, ascending degree.
#[derive(Debug, Clone, PartialEq)]
pub struct RealPolynomial<T> {
    coeffs: Vec<T>,
}

/// Neumaier-compensated accumulator; keeps polynomial products accurate
/// for the coefficient growth seen up to degree ~32.
#[derive(Clone, Copy)]
pub(crate) struct CompensatedSum<T> {
    sum: T,
    comp: T,
}

impl<T: Scalar> CompensatedSum<T> {
    pub(crate) fn new() -> Self {
        Self {
            sum: T::zero(),
            comp: T::zero(),
        }
    }

    pub(crate) fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> T {
        self.sum + self.comp
    }
}

impl<T: Scalar> RealPolynomial<T> {
    /// Build from ascending coefficients; trailing exact zeros are trimmed.
    pub fn new(coeffs: &[T]) -> Self {
        let mut c = coeffs.to_vec();
        while c.len() > 1 && *c.last().unwrap() == T::zero() {
            c.pop();
        }
        if c.is_empty() {
            c.push(T::zero());
        }
        Self { coeffs: c }
    }

    pub fn zero() -> Self {
        Self {
            coeffs: vec![T::zero()],
        }
    }

    pub fn constant(c: T) -> Self {
        Self::new(&[c])
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[T]) -> Self {
        let mut p = Self::constant(T::one());
        for &r in roots {
            p = p.mul(&Self::new(&[-r, T::one()]));
        }
        p
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> T {
        *self.coeffs.last().unwrap()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == T::zero()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: T) -> T {
        let mut acc = T::zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_complex(&self, z: Complex<T>) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + Complex::new(c, T::zero());
        }
        acc
    }

    /// Compensated Horner evaluation: the running round-off of each product
    /// and sum is carried in a correction term, so the result is accurate
    /// relative to the value rather than to the coefficient scale.
    pub fn eval_compensated(&self, x: T) -> T {
        let mut s = T::zero();
        let mut corr = T::zero();
        for &c in self.coeffs.iter().rev() {
            let p = s * x;
            let e_mul = s.mul_add(x, -p);
            let t = p + c;
            let e_add = if p.abs() >= c.abs() {
                (p - t) + c
            } else {
                (c - t) + p
            };
            s = t;
            corr = corr * x + (e_mul + e_add);
        }
        s + corr
    }

    /// Sum of |a_k| |x|^k — the natural scale for evaluation round-off.
    pub fn eval_scale(&self, x: T) -> T {
        let ax = x.abs();
        let mut acc = T::zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc * ax + c.abs();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zero();
        }
        let d: Vec<T> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * T::of_usize(k))
            .collect();
        Self::new(&d)
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Self {
        let mut c = Vec::with_capacity(self.coeffs.len() + 1);
        c.push(T::zero());
        for (k, &a) in self.coeffs.iter().enumerate() {
            c.push(a / T::of_usize(k + 1));
        }
        Self::new(&c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut c = vec![T::zero(); n];
        for (k, slot) in c.iter_mut().enumerate() {
            let a = self.coeffs.get(k).copied().unwrap_or_else(T::zero);
            let b = other.coeffs.get(k).copied().unwrap_or_else(T::zero);
            *slot = a + b;
        }
        Self::new(&c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-T::one()))
    }

    pub fn scale(&self, s: T) -> Self {
        let c: Vec<T> = self.coeffs.iter().map(|&a| a * s).collect();
        Self::new(&c)
    }

    /// Product with compensated coefficient accumulation (exact product
    /// splitting feeding a Neumaier sum).
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        let mut c = vec![T::zero(); n];
        for (k, slot) in c.iter_mut().enumerate() {
            let mut acc = CompensatedSum::new();
            let lo = (k + 1).saturating_sub(other.coeffs.len());
            let hi = k.min(self.coeffs.len() - 1);
            for i in lo..=hi {
                let (x, y) = (self.coeffs[i], other.coeffs[k - i]);
                let p = x * y;
                acc.add(p);
                acc.add(x.mul_add(y, -p));
            }
            *slot = acc.value();
        }
        Self::new(&c)
    }

    /// `P(a x + b)` as a polynomial in `x`.
    pub fn compose_affine(&self, a: T, b: T) -> Self {
        let lin = Self::new(&[b, a]);
        let mut acc = Self::zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Self::constant(c));
        }
        acc
    }

    /// Upper bound on the modulus of every root (Cauchy bound).
    pub fn root_bound(&self) -> T {
        let lead = self.leading().abs();
        let mut m = T::zero();
        for &c in &self.coeffs[..self.coeffs.len() - 1] {
            m = m.max(c.abs());
        }
        T::one() + m / lead
    }

    /// All real roots with multiplicity, sorted ascending.
    pub fn real_roots(&self) -> Vec<T> {
        let p = Self::new(&self.coeffs);
        let n = p.degree();
        if p.is_zero() || n == 0 {
            return Vec::new();
        }
        if n == 1 {
            return vec![-p.coeffs[0] / p.coeffs[1]];
        }

        let crit = p.derivative().real_roots();
        let bound = p.root_bound() * T::cst(1.001) + T::one();
        let span = match (crit.first(), crit.last()) {
            (Some(&a), Some(&b)) if b > a => (b - a).max(T::one()),
            _ => T::one(),
        };
        let cluster_tol = T::epsilon().sqrt() * T::cst(8.0) * span;
        let eps = T::epsilon();

        // cluster repeated critical points
        let mut clusters: Vec<(T, usize)> = Vec::new();
        for &x in &crit {
            if x < -bound || x > bound {
                continue;
            }
            match clusters.last_mut() {
                Some((x0, m)) if (x - *x0).abs() <= cluster_tol => *m += 1,
                _ => clusters.push((x, 1)),
            }
        }

        let mut roots = Vec::new();
        let mut nodes: Vec<(T, bool)> = Vec::with_capacity(clusters.len() + 2);
        nodes.push((-bound, false));
        for &(x0, mult) in &clusters {
            let tol_zero = T::cst(100.0) * eps * p.eval_scale(x0).max(T::min_positive_value());
            let is_root = p.eval(x0).abs() <= tol_zero;
            if is_root {
                for _ in 0..mult + 1 {
                    roots.push(x0);
                }
            }
            nodes.push((x0, is_root));
        }
        nodes.push((bound, false));

        for win in nodes.windows(2) {
            let (u, u_root) = win[0];
            let (v, v_root) = win[1];
            if v <= u {
                continue;
            }
            let off = (v - u) * T::cst(1e-4);
            let lo = if u_root { u + off } else { u };
            let hi = if v_root { v - off } else { v };
            let flo = p.eval(lo);
            let fhi = p.eval(hi);
            if flo == T::zero() || fhi == T::zero() {
                // landed exactly on a root; the cluster pass owns these
                continue;
            }
            if (flo > T::zero()) == (fhi > T::zero()) {
                continue;
            }
            let mut a = lo;
            let mut b = hi;
            let mut fa = flo;
            for _ in 0..120 {
                let mid = (a + b) * T::cst(0.5);
                if mid <= a || mid >= b {
                    break;
                }
                let fm = p.eval(mid);
                if fm == T::zero() {
                    a = mid;
                    b = mid;
                    break;
                }
                if (fm > T::zero()) == (fa > T::zero()) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            let mut x = (a + b) * T::cst(0.5);
            let dp = p.derivative();
            for _ in 0..4 {
                let d = dp.eval(x);
                if d == T::zero() {
                    break;
                }
                let step = p.eval(x) / d;
                if !step.is_finite() {
                    break;
                }
                let xn = x - step;
                if xn > u && xn < v {
                    x = xn;
                }
            }
            roots.push(x);
        }

        roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
        roots
    }

    /// Real roots inside the closed interval `[lo, hi]`.
    pub fn real_roots_in(&self, lo: T, hi: T) -> Vec<T> {
        self.real_roots()
            .into_iter()
            .filter(|&r| r >= lo && r <= hi)
            .collect()
    }

    /// All complex roots with multiplicity.
    ///
    /// Real roots come from the bracketing finder (robust for the multiple
    /// real roots this crate constantly meets); the non-real remainder is
    /// deflated out and handed to Aberth–Ehrlich, then polished against the
    /// original polynomial. Roots that polish onto the real axis with a
    /// comparable residual are snapped to it.
    pub fn complex_roots(&self) -> Vec<Complex<T>> {
        let trimmed = Self::new(&self.coeffs);
        let n = trimmed.degree();
        if n == 0 {
            return Vec::new();
        }
        let real = trimmed.real_roots();
        let mut roots: Vec<Complex<T>> = real.iter().map(|&r| Complex::new(r, T::zero())).collect();
        if real.len() < n {
            // deflate the found real roots (ascending magnitude for
            // stability) and chase the remaining conjugate pairs
            let mut order = real.clone();
            order.sort_by(|a, b| a.abs().partial_cmp(&b.abs()).unwrap());
            let mut quotient = trimmed.coeffs.clone();
            for &r in &order {
                quotient = deflate_real_root(&quotient, r);
            }
            for z in aberth_roots(&quotient) {
                roots.push(polish_on(&trimmed, z));
            }
        }
        roots.sort_by(|a, b| {
            a.re.partial_cmp(&b.re)
                .unwrap()
                .then(a.im.partial_cmp(&b.im).unwrap())
        });
        roots
    }

    /// Largest |imaginary part| over all roots. Zero means every root
    /// polished onto the real axis.
    pub fn max_root_imag(&self) -> T {
        self.complex_roots()
            .iter()
            .map(|z| z.im.abs())
            .fold(T::zero(), |a, b| a.max(b))
    }
}

/// Synthetic division by `(x - r)`, dropping the remainder.
fn deflate_real_root<T: Scalar>(coeffs: &[T], r: T) -> Vec<T> {
    let n = coeffs.len();
    if n <= 1 {
        return vec![T::zero()];
    }
    let mut q = vec![T::zero(); n - 1];
    let mut carry = coeffs[n - 1];
    for k in (0..n - 1).rev() {
        q[k] = carry;
        carry = coeffs[k] + r * carry;
    }
    q
}

/// Newton polish of a candidate root against `p`, with a real-axis snap
/// when a real iteration achieves a comparable residual.
fn polish_on<T: Scalar>(p: &RealPolynomial<T>, start: Complex<T>) -> Complex<T> {
    let dp = p.derivative();
    let eps = T::epsilon();
    let mut z = start;
    for _ in 0..80 {
        let d = dp.eval_complex(z);
        if d.norm() == T::zero() {
            break;
        }
        let step = p.eval_complex(z) / d;
        z = z - step;
        if step.norm() <= eps * (T::one() + z.norm()) {
            break;
        }
    }
    if z.im != T::zero() && z.im.abs() <= T::cst(1e-3) * (T::one() + z.re.abs()) {
        let mut x = z.re;
        for _ in 0..60 {
            let d = dp.eval(x);
            if d == T::zero() {
                break;
            }
            let step = p.eval(x) / d;
            if !step.is_finite() {
                break;
            }
            x -= step;
            if step.abs() <= eps * (T::one() + x.abs()) {
                break;
            }
        }
        let scale = p.eval_scale(x);
        if p.eval(x).abs() <= (p.eval_complex(z).norm() + scale * eps) * T::cst(16.0) {
            return Complex::new(x, T::zero());
        }
    }
    z
}

/// Simultaneous Aberth–Ehrlich iteration for all roots of the coefficient
/// vector (ascending). Exact zero roots at the origin are deflated first;
/// degrees one and two use closed forms.
fn aberth_roots<T: Scalar>(coeffs: &[T]) -> Vec<Complex<T>> {
    let mut c = coeffs.to_vec();
    while c.len() > 1 && *c.last().unwrap() == T::zero() {
        c.pop();
    }
    let mut roots = Vec::new();
    let mut k0 = 0;
    while k0 + 1 < c.len() && c[k0] == T::zero() {
        k0 += 1;
    }
    for _ in 0..k0 {
        roots.push(Complex::new(T::zero(), T::zero()));
    }
    let c = &c[k0..];
    let n = c.len() - 1;
    if n == 0 {
        return roots;
    }
    if n == 1 {
        roots.push(Complex::new(-c[0] / c[1], T::zero()));
        return roots;
    }
    if n == 2 {
        roots.extend(quadratic_roots(c[0], c[1], c[2]));
        return roots;
    }

    let lead = c[n];
    let monic: Vec<T> = c.iter().map(|&a| a / lead).collect();
    let eval = |z: Complex<T>| -> (Complex<T>, Complex<T>) {
        let mut p = Complex::new(T::zero(), T::zero());
        let mut dp = Complex::new(T::zero(), T::zero());
        for &a in monic.iter().rev() {
            dp = dp * z + p;
            p = p * z + Complex::new(a, T::zero());
        }
        (p, dp)
    };

    // Fujiwara-style radius and centroid shift for the starting circle
    let mut radius = T::zero();
    for k in 1..=n {
        let mut m = monic[n - k].abs();
        if k == n {
            m *= T::cst(0.5);
        }
        radius = radius.max(m.powf(T::one() / T::of_usize(k)));
    }
    radius = (radius * T::cst(2.0)).max(T::cst(1e-3));
    let center = -monic[n - 1] / T::of_usize(n);

    let mut z: Vec<Complex<T>> = (0..n)
        .map(|j| {
            let angle = T::cst(2.0) * T::PI() * T::of_usize(j) / T::of_usize(n) + T::cst(0.4);
            Complex::new(center, T::zero())
                + Complex::new(
                    radius * T::cst(0.7) * angle.cos(),
                    radius * T::cst(0.7) * angle.sin(),
                )
        })
        .collect();

    let eps = T::epsilon();
    for _iter in 0..400 {
        let mut max_step = T::zero();
        for k in 0..n {
            let (p, dp) = eval(z[k]);
            if p.norm() == T::zero() {
                continue;
            }
            let ratio = if dp.norm() > T::zero() {
                p / dp
            } else {
                z[k] = z[k] + Complex::new(eps.sqrt(), eps.sqrt());
                continue;
            };
            let mut s = Complex::new(T::zero(), T::zero());
            for (j, zj) in z.iter().enumerate() {
                if j != k {
                    let d = z[k] - *zj;
                    if d.norm() > T::zero() {
                        s = s + Complex::new(T::one(), T::zero()) / d;
                    }
                }
            }
            let denom = Complex::new(T::one(), T::zero()) - ratio * s;
            let step = if denom.norm() > T::zero() {
                ratio / denom
            } else {
                ratio
            };
            z[k] = z[k] - step;
            max_step = max_step.max(step.norm() / (T::one() + z[k].norm()));
        }
        if max_step < eps * T::cst(4.0) {
            break;
        }
    }

    roots.extend(z);
    roots
}

/// Stable quadratic formula for `c0 + c1 x + c2 x^2`.
fn quadratic_roots<T: Scalar>(c0: T, c1: T, c2: T) -> [Complex<T>; 2] {
    let disc = c1 * c1 - T::cst(4.0) * c2 * c0;
    if disc >= T::zero() {
        let sq = disc.sqrt();
        let q = if c1 >= T::zero() {
            -(c1 + sq) * T::cst(0.5)
        } else {
            -(c1 - sq) * T::cst(0.5)
        };
        let r1 = if q != T::zero() { c0 / q } else { T::zero() };
        let r2 = q / c2;
        let (a, b) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
        [Complex::new(a, T::zero()), Complex::new(b, T::zero())]
    } else {
        let re = -c1 / (T::cst(2.0) * c2);
        let im = (-disc).sqrt() / (T::cst(2.0) * c2);
        [Complex::new(re, -im.abs()), Complex::new(re, im.abs())]
    }
}

/// Roots of `p² - level²` as the union of the roots of `p - level` and
/// `p + level`. Expanding the square is numerically degenerate when `level`
/// is small against the coefficient scale (its values are `O(level²)` while
/// the coefficients are not); the factors stay perfectly conditioned.
pub fn plus_minus_roots<T: Scalar>(p: &RealPolynomial<T>, level: T) -> Vec<Complex<T>> {
    let mut roots = p.sub(&RealPolynomial::constant(level)).complex_roots();
    roots.extend(p.add(&RealPolynomial::constant(level)).complex_roots());
    roots.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    roots
}

/// Chebyshev polynomial of the first kind, `T_n`, in the monomial basis.
pub fn chebyshev_t<T: Scalar>(n: usize) -> RealPolynomial<T> {
    let mut t0 = RealPolynomial::constant(T::one());
    if n == 0 {
        return t0;
    }
    let x = RealPolynomial::new(&[T::zero(), T::one()]);
    let mut t1 = x.clone();
    let two_x = RealPolynomial::new(&[T::zero(), T::cst(2.0)]);
    for _ in 1..n {
        let t2 = two_x.mul(&t1).sub(&t0);
        t0 = t1;
        t1 = t2;
    }
    t1
}
