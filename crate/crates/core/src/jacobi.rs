//! Periodic Jacobi matrices: transfer matrix, discriminant, band spectrum,
//! and discriminants built from prescribed comb heights.
//!
//! One period of the three-term recursion is encoded by the product of the
//! single-step matrices `[[0, 1/p_{j+1}], [-p_{j+1}, (z - q_{j+1})/p_{j+1}]]`;
//! the discriminant is half the trace of that product and the spectrum is
//! the preimage of `[-1, 1]` under it.

use crate::critpoly::{poly_from_critical_values, CriticalSequence, SequenceKind};
use crate::error::{Error, Result};
use crate::poly::{plus_minus_roots, CompensatedSum, RealPolynomial};
use crate::potential::equilibrium;
use crate::realset::IntervalUnion;
use crate::scalar::Scalar;

/// Doubly infinite Jacobi matrix with period-`n` coefficient sequences:
/// real diagonal `q[0..n)` and positive off-diagonal `p[0..n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicJacobi<T> {
    q: Vec<T>,
    p: Vec<T>,
}

impl<T: Scalar> PeriodicJacobi<T> {
    pub fn new(q: &[T], p: &[T]) -> Result<Self> {
        if q.is_empty() || q.len() != p.len() {
            return Err(Error::InvalidInput(
                "q and p must be non-empty sequences of equal length".into(),
            ));
        }
        for (j, &pj) in p.iter().enumerate() {
            if !(pj > T::zero()) || !pj.is_finite() {
                return Err(Error::NonPositiveOffDiagonal(
                    j,
                    pj.to_f64().unwrap_or(f64::NAN),
                ));
            }
        }
        Ok(Self {
            q: q.to_vec(),
            p: p.to_vec(),
        })
    }

    pub fn period(&self) -> usize {
        self.q.len()
    }

    pub fn q(&self) -> &[T] {
        &self.q
    }

    pub fn p(&self) -> &[T] {
        &self.p
    }

    /// Cyclic rotation of both coefficient sequences (the discriminant is
    /// invariant under this).
    pub fn rotated(&self, shift: usize) -> Self {
        let n = self.period();
        let q = (0..n).map(|j| self.q[(j + shift) % n]).collect();
        let p = (0..n).map(|j| self.p[(j + shift) % n]).collect();
        Self { q, p }
    }
}

/// Half-strip comb over the integer range `(m, k)`: an upward slit of
/// height `heights[j]` sits at each interior integer position. Heights are
/// zero at closed gaps.
#[derive(Debug, Clone, PartialEq)]
pub struct MOComb<T> {
    pub m: i64,
    pub k: i64,
    pub heights: Vec<T>,
}

/// One-period transfer matrix; entries are polynomials in the spectral
/// parameter and the determinant is identically 1.
#[derive(Debug, Clone)]
pub struct TransferMatrix<T> {
    /// Row-major entries `[[a, b], [c, d]]`.
    pub entries: [[RealPolynomial<T>; 2]; 2],
}

impl<T: Scalar> TransferMatrix<T> {
    pub fn trace(&self) -> RealPolynomial<T> {
        self.entries[0][0].add(&self.entries[1][1])
    }

    /// `a d - b c` as a polynomial (identically 1 up to round-off).
    ///
    /// The two products are accumulated in a single compensated sum with
    /// exact product splitting; forming them separately would cancel
    /// catastrophically once the coefficients grow with the period.
    pub fn determinant(&self) -> RealPolynomial<T> {
        let a = self.entries[0][0].coeffs();
        let b = self.entries[0][1].coeffs();
        let c = self.entries[1][0].coeffs();
        let d = self.entries[1][1].coeffs();
        let deg = (a.len() + d.len()).max(b.len() + c.len()) - 1;
        let mut out = vec![T::zero(); deg];
        for (k, slot) in out.iter_mut().enumerate() {
            let mut acc = CompensatedSum::new();
            for i in 0..=k {
                let j = k - i;
                if i < a.len() && j < d.len() {
                    let p = a[i] * d[j];
                    acc.add(p);
                    acc.add(a[i].mul_add(d[j], -p));
                }
                if i < b.len() && j < c.len() {
                    let p = b[i] * c[j];
                    acc.add(-p);
                    acc.add(-b[i].mul_add(c[j], -p));
                }
            }
            *slot = acc.value();
        }
        RealPolynomial::new(&out)
    }
}

/// Product over one period of the single-step matrices, later steps applied
/// on the left.
pub fn transfer_matrix<T: Scalar>(j: &PeriodicJacobi<T>) -> TransferMatrix<T> {
    let n = j.period();
    let one = RealPolynomial::constant(T::one());
    let zero = RealPolynomial::zero();
    let mut m = [[one.clone(), zero.clone()], [zero, one]];

    for step in 0..n {
        let idx = (step + 1) % n;
        let p = j.p[idx];
        let q = j.q[idx];
        // [[0, 1/p], [-p, (z - q)/p]]
        let a = RealPolynomial::zero();
        let b = RealPolynomial::constant(T::one() / p);
        let c = RealPolynomial::constant(-p);
        let d = RealPolynomial::new(&[-q / p, T::one() / p]);
        let step_m = [[a, b], [c, d]];

        let mut next: [[RealPolynomial<T>; 2]; 2] = [
            [RealPolynomial::zero(), RealPolynomial::zero()],
            [RealPolynomial::zero(), RealPolynomial::zero()],
        ];
        for (r, next_row) in next.iter_mut().enumerate() {
            for (cc, slot) in next_row.iter_mut().enumerate() {
                let t1 = step_m[r][0].mul(&m[0][cc]);
                let t2 = step_m[r][1].mul(&m[1][cc]);
                *slot = t1.add(&t2);
            }
        }
        m = next;
    }
    TransferMatrix { entries: m }
}

/// Discriminant `Δ = tr T / 2`; degree `n` with positive leading
/// coefficient `1 / (2 ∏ p_j)`.
pub fn discriminant<T: Scalar>(j: &PeriodicJacobi<T>) -> RealPolynomial<T> {
    transfer_matrix(j).trace().scale(T::cst(0.5))
}

/// Band spectrum: solves `Δ = ±1`, verifies the roots are real, and returns
/// the closed bands where `|Δ| ≤ 1` (touching bands merge, so at most `n`).
pub fn spectrum<T: Scalar>(j: &PeriodicJacobi<T>) -> Result<IntervalUnion<T>> {
    let delta = discriminant(j);
    spectrum_of_discriminant(&delta)
}

/// Spectrum of an explicit discriminant polynomial.
pub fn spectrum_of_discriminant<T: Scalar>(delta: &RealPolynomial<T>) -> Result<IntervalUnion<T>> {
    let one = RealPolynomial::constant(T::one());
    let mut edges = Vec::new();
    for sign in [T::one(), -T::one()] {
        let f = delta.sub(&one.scale(sign));
        let roots = f.complex_roots();
        let scale = f.root_bound().max(T::one());
        for z in &roots {
            if z.im.abs() > T::cst(1e-8) * scale {
                return Err(Error::NonRealRoots {
                    max_imag: z.im.abs().to_f64().unwrap_or(f64::NAN),
                });
            }
            edges.push(z.re);
        }
    }
    edges.sort_by(|a, b| a.partial_cmp(b).unwrap());

    // deduplicate edge clusters (double roots at closed gaps polish apart
    // by ~sqrt(eps))
    let span = (edges[edges.len() - 1] - edges[0]).max(T::one());
    let tol = span * T::epsilon().sqrt() * T::cst(8.0);
    let mut distinct: Vec<T> = Vec::new();
    for &e in &edges {
        match distinct.last() {
            Some(&last) if (e - last).abs() <= tol => {}
            _ => distinct.push(e),
        }
    }

    let mut bands = Vec::new();
    for w in distinct.windows(2) {
        let mid = (w[0] + w[1]) * T::cst(0.5);
        if delta.eval(mid).abs() <= T::one() + T::cst(1e-12) {
            bands.push((w[0], w[1]));
        }
    }
    if bands.is_empty() {
        return Err(Error::InvalidInput("discriminant has no bands".into()));
    }
    IntervalUnion::normalize(&bands)
}

/// Gap heights of the discriminant comb: `arccosh |Δ|` at the critical
/// points of `Δ`, ordered by increasing critical point. Closed gaps give 0.
pub fn comb_heights<T: Scalar>(delta: &RealPolynomial<T>) -> Vec<T> {
    let mut crit = delta.derivative().real_roots();
    crit.sort_by(|a, b| a.partial_cmp(b).unwrap());
    crit.iter()
        .map(|&x| arccosh_clamped(delta.eval(x).abs()))
        .collect()
}

/// MO-comb of a discriminant: slits at the interior integers of `(0, n)`.
pub fn mo_comb<T: Scalar>(delta: &RealPolynomial<T>) -> MOComb<T> {
    MOComb {
        m: 0,
        k: delta.degree() as i64,
        heights: comb_heights(delta),
    }
}

fn arccosh_clamped<T: Scalar>(x: T) -> T {
    let x = x.max(T::one());
    (x + (x * x - T::one()).sqrt()).ln()
}

/// Discriminant with prescribed gap heights `h'_1 … h'_{n-1}`: realizes the
/// alternating critical values `(-1)^j cosh h'_j` and rescales so the
/// extreme roots of `Δ² - 1` land at ∓1 (normalized band frame).
///
/// Sign convention: the last critical value is `(-1)^{n-1} cosh h'_{n-1}`,
/// so zero heights give `Δ = T_n` for even `n` and `Δ = -T_n` for odd `n`.
pub fn discriminant_from_heights<T: Scalar>(heights: &[T]) -> Result<RealPolynomial<T>> {
    for (j, &h) in heights.iter().enumerate() {
        if h < T::zero() || !h.is_finite() {
            return Err(Error::NegativeHeight(j));
        }
    }
    if heights.is_empty() {
        // period 1: free frame is exactly [-1, 1]
        return Ok(RealPolynomial::new(&[T::zero(), T::one()]));
    }

    let values: Vec<T> = heights
        .iter()
        .enumerate()
        .map(|(j0, &h)| {
            let sign = if j0 % 2 == 0 { -T::one() } else { T::one() };
            sign * h.cosh()
        })
        .collect();
    let seq = CriticalSequence::new(&values, SequenceKind::Alternating);
    let raw = poly_from_critical_values(&seq, true)?.poly;

    // band frame: extreme roots of Δ² - 1 at ∓1, via the factors Δ ∓ 1
    let roots = plus_minus_roots(&raw, T::one());
    let scale = raw.root_bound().max(T::one());
    let mut lo = T::infinity();
    let mut hi = T::neg_infinity();
    for z in &roots {
        if z.im.abs() > T::cst(1e-8) * scale {
            return Err(Error::NonRealRoots {
                max_imag: z.im.abs().to_f64().unwrap_or(f64::NAN),
            });
        }
        lo = lo.min(z.re);
        hi = hi.max(z.re);
    }
    let a = (hi - lo) * T::cst(0.5);
    let b = (hi + lo) * T::cst(0.5);
    Ok(raw.compose_affine(a, b))
}

/// Report of the rational-band-measure property of a periodic spectrum.
#[derive(Debug, Clone)]
pub struct RationalMeasureReport<T> {
    /// `n · μ_i` for each band.
    pub scaled_measures: Vec<T>,
    /// Largest distance of `n · μ_i` to the nearest integer.
    pub max_distance: T,
    pub pass: bool,
}

/// Check that every band of `spectrum(J)` carries an integer multiple of
/// `1/n` of the equilibrium measure (pass threshold `1e-6`).
pub fn rational_measure_check<T: Scalar>(
    j: &PeriodicJacobi<T>,
) -> Result<RationalMeasureReport<T>> {
    let n = T::of_usize(j.period());
    let bands = spectrum(j)?;
    let data = equilibrium(&bands)?;
    let mut scaled = Vec::with_capacity(data.band_measures().len());
    let mut max_d = T::zero();
    for &mu in data.band_measures() {
        let s = n * mu;
        let d = (s - s.round()).abs();
        max_d = max_d.max(d);
        scaled.push(s);
    }
    Ok(RationalMeasureReport {
        scaled_measures: scaled,
        max_distance: max_d,
        pass: max_d < T::cst(1e-6),
    })
}
