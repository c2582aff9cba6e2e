//! Real polynomials with prescribed critical values.
//!
//! An up-down sequence `c_1, …, c_{n-1}` (consecutive differences alternate
//! in sign) is realized as the critical sequence of a degree-`n` real
//! polynomial, unique up to an increasing affine change of variable. The
//! construction parametrizes `P' = A ∏ (z - x_j)` by its interior critical
//! points and the amplitude `A`, and solves the value-matching equations by
//! damped Newton with a finite-difference Jacobian.
//!
//! The normalization is pinned for reproducibility: `x_1 = 0`,
//! `x_{n-1} = 1` (for a single critical point, `x_1 = 0` and unit leading
//! coefficient), and the sign of `A` follows from the direction of the last
//! swing, so the output is fully determined by the data.

use crate::error::{Error, Result};
use crate::poly::RealPolynomial;
use crate::scalar::Scalar;

/// Which inequality the sequence is declared to satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceKind {
    /// `(c_{j+1} - c_j)(c_j - c_{j-1}) ≤ 0` at every interior index.
    UpDown,
    /// `c_{j+1} c_j ≤ 0` at every index (the Laguerre–Pólya case).
    Alternating,
}

/// A finite critical sequence with its declared kind.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalSequence<T> {
    values: Vec<T>,
    kind: SequenceKind,
}

impl<T: Scalar> CriticalSequence<T> {
    pub fn new(values: &[T], kind: SequenceKind) -> Self {
        Self {
            values: values.to_vec(),
            kind,
        }
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// First index (0-based) where the declared inequality fails, if any.
    ///
    /// For `UpDown` the reported index is the middle element of the failing
    /// triple; for `Alternating` it is the left element of the failing pair.
    pub fn first_violation(&self) -> Option<usize> {
        let c = &self.values;
        match self.kind {
            SequenceKind::UpDown => (1..c.len().saturating_sub(1))
                .find(|&j| (c[j + 1] - c[j]) * (c[j] - c[j - 1]) > T::zero()),
            SequenceKind::Alternating => {
                (0..c.len().saturating_sub(1)).find(|&j| c[j + 1] * c[j] > T::zero())
            }
        }
    }

    pub fn is_valid(&self) -> bool {
        self.first_violation().is_none()
    }
}

/// Result of the prescribed-critical-values construction.
#[derive(Debug, Clone)]
pub struct PrescribedPolynomial<T> {
    /// Degree-`n` polynomial with `P(x_j) = c_j`.
    pub poly: RealPolynomial<T>,
    /// Critical points, strictly increasing.
    pub critical_points: Vec<T>,
    /// Final `max_j |P(x_j) - c_j|`.
    pub residual: T,
}

/// Horizontal strip `(π m, π k)` minus leftward rays; a ray at level `j`
/// reaches to `tip`. Rays at `-∞` (zero critical values) are omitted.
#[derive(Debug, Clone, PartialEq)]
pub struct VComb<T> {
    pub m: i64,
    pub k: i64,
    pub rays: Vec<(i64, T)>,
}

/// Construct the polynomial realizing `seq` in the standard frame
/// (`x_1 = 0`, `x_{n-1} = 1`).
pub fn poly_from_critical_values<T: Scalar>(
    seq: &CriticalSequence<T>,
    strict: bool,
) -> Result<PrescribedPolynomial<T>> {
    poly_from_critical_values_in_frame(seq, strict, (T::zero(), T::one()))
}

/// Same construction with the first and last critical points pinned to the
/// given frame instead of `(0, 1)`; used to exercise affine uniqueness.
pub fn poly_from_critical_values_in_frame<T: Scalar>(
    seq: &CriticalSequence<T>,
    strict: bool,
    frame: (T, T),
) -> Result<PrescribedPolynomial<T>> {
    if !strict {
        // merged critical points (ties) need a multiplicity-aware
        // parametrization; not available yet
        return Err(Error::NonStrictUnsupported);
    }
    if seq.is_empty() {
        return Err(Error::InvalidInput(
            "critical sequence must be non-empty".into(),
        ));
    }
    if let Some(j) = seq.first_violation() {
        let kind = match seq.kind() {
            SequenceKind::UpDown => "up-down",
            SequenceKind::Alternating => "alternating",
        };
        return Err(Error::InvalidSequence { kind, index: j });
    }
    let c = seq.values();
    for j in 0..c.len().saturating_sub(1) {
        if c[j + 1] == c[j] {
            return Err(Error::TiedCriticalValues(j, j + 1));
        }
    }
    // strict up-down: interior products strictly negative
    if seq.kind() == SequenceKind::UpDown {
        for j in 1..c.len().saturating_sub(1) {
            if (c[j + 1] - c[j]) * (c[j] - c[j - 1]) >= T::zero() {
                return Err(Error::InvalidSequence {
                    kind: "strict up-down",
                    index: j,
                });
            }
        }
    }

    let (lo, hi) = frame;
    if !(lo < hi) && c.len() > 1 {
        return Err(Error::InvalidInput("frame must be increasing".into()));
    }

    if c.len() == 1 {
        // parabola-like normal form: unit |leading|, opening upward
        // (single value read as a local minimum)
        let x1 = lo;
        let poly = RealPolynomial::new(&[x1 * x1 + c[0], -(x1 + x1), T::one()]);
        return Ok(PrescribedPolynomial {
            poly,
            critical_points: vec![x1],
            residual: T::zero(),
        });
    }

    let n = c.len() + 1; // degree
    let last_dir = if c[c.len() - 1] > c[c.len() - 2] {
        T::one()
    } else {
        -T::one()
    };
    let a_sign = -last_dir;

    // try equispaced, then Chebyshev-extreme spacing, then a short homotopy
    let inits = [InitKind::Equispaced, InitKind::Chebyshev];
    let mut best: Option<(Vec<T>, T, T)> = None;
    for &kind in &inits {
        if let Ok(sol) = newton_solve(c, n, (lo, hi), a_sign, kind, None) {
            best = Some(sol);
            break;
        }
    }
    if best.is_none() {
        best = homotopy_solve(c, n, (lo, hi), a_sign)?;
    }
    let (xs, amp, residual) = best.ok_or(Error::NewtonNonConvergence { residual: f64::NAN })?;

    let poly = assemble(&xs, amp, c[0]);
    Ok(PrescribedPolynomial {
        poly,
        critical_points: xs,
        residual,
    })
}

#[derive(Clone, Copy, PartialEq)]
enum InitKind {
    Equispaced,
    Chebyshev,
}

/// `P = A ∫ ∏ (z - x_j) + const`, with the constant matching `c_0` at `x_0`.
fn assemble<T: Scalar>(xs: &[T], amp: T, c0: T) -> RealPolynomial<T> {
    let prim = RealPolynomial::from_roots(xs).antiderivative();
    let shift = c0 - amp * prim.eval(xs[0]);
    prim.scale(amp).add(&RealPolynomial::constant(shift))
}

fn residuals<T: Scalar>(xs: &[T], amp: T, c: &[T]) -> Vec<T> {
    let p = assemble(xs, amp, c[0]);
    (1..c.len())
        .map(|j| p.eval_compensated(xs[j]) - c[j])
        .collect()
}

fn inf_norm<T: Scalar>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |a, &b| a.max(b.abs()))
}

fn initial_points<T: Scalar>(n: usize, frame: (T, T), kind: InitKind) -> Vec<T> {
    let (lo, hi) = frame;
    let m = n - 1; // number of critical points
    (0..m)
        .map(|j| {
            let frac = match kind {
                InitKind::Equispaced => T::of_usize(j) / T::of_usize(m - 1),
                InitKind::Chebyshev => {
                    let angle = T::PI() * T::of_usize(j) / T::of_usize(m - 1);
                    (T::one() - angle.cos()) * T::cst(0.5)
                }
            };
            lo + (hi - lo) * frac
        })
        .collect()
}

/// Damped Newton on (interior critical points, amplitude).
fn newton_solve<T: Scalar>(
    c: &[T],
    n: usize,
    frame: (T, T),
    a_sign: T,
    init: InitKind,
    warm: Option<(Vec<T>, T)>,
) -> Result<(Vec<T>, T, T)> {
    let scale = c.iter().fold(T::one(), |a, &b| a.max(b.abs()));
    let tol = T::epsilon() * T::cst(50.0) * scale;
    let span = frame.1 - frame.0;

    let (mut xs, mut amp) = match warm {
        Some((xs, amp)) => (xs, amp),
        None => {
            let xs = initial_points(n, frame, init);
            let prim = RealPolynomial::from_roots(&xs).antiderivative();
            // amplitude from the largest swing of the data
            let mut jstar = 0;
            let mut swing = T::zero();
            for j in 0..c.len() - 1 {
                let s = (c[j + 1] - c[j]).abs();
                if s > swing {
                    swing = s;
                    jstar = j;
                }
            }
            let denom = prim.eval(xs[jstar + 1]) - prim.eval(xs[jstar]);
            let amp = if denom.abs() > T::zero() {
                (c[jstar + 1] - c[jstar]) / denom
            } else {
                a_sign
            };
            let amp = if amp * a_sign > T::zero() {
                amp
            } else {
                a_sign
            };
            (xs, amp)
        }
    };

    let n_unknowns = n - 2; // interior points plus amplitude
    let mut res = residuals(&xs, amp, c);
    let mut res_norm = inf_norm(&res);

    for _iter in 0..150 {
        if res_norm < tol {
            return Ok((xs, amp, res_norm));
        }

        // analytic Jacobian. With P(z) = A·(prim(z) - prim(x_0)) + c_0 and
        // prim' = ∏(z - x_k),
        //   ∂r_j/∂x_i = -A·(prim_i(x_j) - prim_i(x_0)), prim_i omitting the
        //               factor (z - x_i); the direct P'(x_j) term vanishes
        //               because x_j is a critical point of P
        //   ∂r_j/∂A   = prim(x_j) - prim(x_0)
        let mut jac = vec![T::zero(); n_unknowns * n_unknowns];
        for col in 0..n_unknowns - 1 {
            let idx = col + 1; // interior point index in xs
            let reduced: Vec<T> = xs
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != idx)
                .map(|(_, &x)| x)
                .collect();
            let prim_i = RealPolynomial::from_roots(&reduced).antiderivative();
            let at_anchor = prim_i.eval_compensated(xs[0]);
            for row in 0..n_unknowns {
                jac[row * n_unknowns + col] =
                    -amp * (prim_i.eval_compensated(xs[row + 1]) - at_anchor);
            }
        }
        let prim = RealPolynomial::from_roots(&xs).antiderivative();
        let prim_anchor = prim.eval_compensated(xs[0]);
        for row in 0..n_unknowns {
            jac[row * n_unknowns + (n_unknowns - 1)] =
                prim.eval_compensated(xs[row + 1]) - prim_anchor;
        }

        let mut rhs = res.clone();
        let delta = crate::linalg::solve_dense(&mut jac, &mut rhs)?;

        // damped update preserving the ordering and the amplitude sign
        let mut lambda = T::one();
        let mut accepted = false;
        for _ in 0..30 {
            let mut xs_new = xs.clone();
            for i in 0..n_unknowns - 1 {
                xs_new[i + 1] = xs[i + 1] - lambda * delta[i];
            }
            let amp_new = amp - lambda * delta[n_unknowns - 1];
            let ordered = xs_new
                .windows(2)
                .all(|w| w[1] - w[0] > span * T::cst(1e-10));
            let sign_ok = amp_new * a_sign > T::zero();
            if ordered && sign_ok {
                let res_new = residuals(&xs_new, amp_new, c);
                let norm_new = inf_norm(&res_new);
                if norm_new < res_norm {
                    xs = xs_new;
                    amp = amp_new;
                    res = res_new;
                    res_norm = norm_new;
                    accepted = true;
                    break;
                }
            }
            lambda *= T::cst(0.5);
        }
        if !accepted {
            break;
        }
    }

    // stagnated: accept anything already well inside the 1e-9 contract
    // (the finite-difference Jacobian limits the final descent)
    let stagnation_gate = (T::epsilon() * T::cst(2e4) * scale).max(T::cst(1e-9) * scale);
    if res_norm < stagnation_gate {
        Ok((xs, amp, res_norm))
    } else {
        Err(Error::NewtonNonConvergence {
            residual: res_norm.to_f64().unwrap_or(f64::NAN),
        })
    }
}

/// Continuation from a uniform-swing sequence with the same direction
/// pattern (a shifted Chebyshev graph, where Newton converges at once).
fn homotopy_solve<T: Scalar>(
    c: &[T],
    n: usize,
    frame: (T, T),
    a_sign: T,
) -> Result<Option<(Vec<T>, T, T)>> {
    let mut swing_log = T::zero();
    for j in 0..c.len() - 1 {
        swing_log += (c[j + 1] - c[j]).abs().ln();
    }
    let swing = (swing_log / T::of_usize(c.len() - 1)).exp();

    let mut easy = vec![c[0]];
    for j in 0..c.len() - 1 {
        let dir = if c[j + 1] > c[j] { T::one() } else { -T::one() };
        let prev = easy[j];
        easy.push(prev + dir * swing);
    }

    let steps = 16;
    let mut warm: Option<(Vec<T>, T)> = None;
    let mut out = None;
    for s in 0..=steps {
        let t = T::of_usize(s) / T::of_usize(steps);
        let blend: Vec<T> = c
            .iter()
            .zip(&easy)
            .map(|(&ci, &ei)| ei + (ci - ei) * t)
            .collect();
        match newton_solve(&blend, n, frame, a_sign, InitKind::Chebyshev, warm.take()) {
            Ok((xs, amp, resid)) => {
                warm = Some((xs.clone(), amp));
                if s == steps {
                    out = Some((xs, amp, resid));
                }
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Critical points (sorted, multiplicity repeated) and values of `P`;
/// errors if `P'` has non-real roots.
pub fn critical_sequence_of<T: Scalar>(
    p: &RealPolynomial<T>,
) -> Result<(CriticalSequence<T>, Vec<T>)> {
    let dp = p.derivative();
    if dp.degree() == 0 {
        let kind = SequenceKind::UpDown;
        return Ok((CriticalSequence::new(&[], kind), Vec::new()));
    }
    let roots = dp.complex_roots();
    let scale = dp.root_bound().max(T::one());
    let mut max_imag = T::zero();
    for z in &roots {
        max_imag = max_imag.max(z.im.abs());
    }
    if max_imag > T::cst(1e-8) * scale {
        return Err(Error::NonRealRoots {
            max_imag: max_imag.to_f64().unwrap_or(f64::NAN),
        });
    }
    let mut points: Vec<T> = roots.iter().map(|z| z.re).collect();
    points.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let values: Vec<T> = points.iter().map(|&x| p.eval(x)).collect();

    let vscale = values.iter().fold(T::one(), |a, &b| a.max(b.abs()));
    let alternating = values
        .windows(2)
        .all(|w| w[0] * w[1] <= T::epsilon() * vscale * vscale);
    let kind = if alternating {
        SequenceKind::Alternating
    } else {
        SequenceKind::UpDown
    };
    Ok((CriticalSequence::new(&values, kind), points))
}

/// V-comb of a polynomial with all zeros real: strip `(0, πn)` with a
/// leftward ray at level `j` whose tip is `log|c_j|` (levels run bottom to
/// top along increasing critical points; zero critical values give rays at
/// `-∞` and are omitted).
pub fn vcomb_of<T: Scalar>(p: &RealPolynomial<T>) -> Result<VComb<T>> {
    let n = p.degree();
    let roots = p.complex_roots();
    let scale = p.root_bound().max(T::one());
    let mut max_imag = T::zero();
    for z in &roots {
        max_imag = max_imag.max(z.im.abs());
    }
    if max_imag > T::cst(1e-8) * scale {
        return Err(Error::NonRealRoots {
            max_imag: max_imag.to_f64().unwrap_or(f64::NAN),
        });
    }

    let (seq, _points) = critical_sequence_of(p)?;
    let vscale = seq.values().iter().fold(T::one(), |a, &b| a.max(b.abs()));
    let mut rays = Vec::new();
    for (j, &c) in seq.values().iter().enumerate() {
        if c.abs() > T::epsilon() * vscale {
            rays.push(((j + 1) as i64, c.abs().ln()));
        }
    }
    Ok(VComb {
        m: 0,
        k: n as i64,
        rays,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    type Seq = CriticalSequence<f64>;

    fn updown(values: &[f64]) -> Seq {
        Seq::new(values, SequenceKind::UpDown)
    }

    #[test]
    fn validate_examples() {
        assert!(updown(&[1.0, -1.0, 2.0]).is_valid());
        assert_eq!(updown(&[1.0, 2.0, 3.0]).first_violation(), Some(1));
        assert_eq!(
            Seq::new(&[1.0, 1.0], SequenceKind::Alternating).first_violation(),
            Some(0)
        );
        assert!(Seq::new(&[1.0, -1.0, 1.0], SequenceKind::Alternating).is_valid());
    }

    #[test]
    fn parabola_from_single_value() {
        let r = poly_from_critical_values(&updown(&[-1.0]), true).unwrap();
        assert_eq!(r.poly.coeffs(), &[-1.0, 0.0, 1.0]);
        assert_eq!(r.critical_points, vec![0.0]);
    }

    #[test]
    fn cubic_golden() {
        let r = poly_from_critical_values(&updown(&[-1.0, 1.0]), true).unwrap();
        let expect = [-1.0, 0.0, 6.0, -4.0];
        for (a, b) in r.poly.coeffs().iter().zip(expect.iter()) {
            assert!((a - b).abs() < 1e-10, "coeffs {:?}", r.poly.coeffs());
        }
        assert!((r.critical_points[0]).abs() < 1e-12);
        assert!((r.critical_points[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn quartic_golden() {
        let r = poly_from_critical_values(&updown(&[1.0, -1.0, 1.0]), true).unwrap();
        let expect = [1.0, 0.0, -32.0, 64.0, -32.0];
        for (a, b) in r.poly.coeffs().iter().zip(expect.iter()) {
            assert!((a - b).abs() < 1e-9, "coeffs {:?}", r.poly.coeffs());
        }
        assert!((r.critical_points[1] - 0.5).abs() < 1e-10);
    }

    #[test]
    fn rejects_bad_sequences() {
        assert!(matches!(
            poly_from_critical_values(&updown(&[1.0, 2.0, 3.0]), true),
            Err(Error::InvalidSequence { .. })
        ));
        assert!(matches!(
            poly_from_critical_values(&updown(&[1.0, 1.0]), true),
            Err(Error::TiedCriticalValues(0, 1))
        ));
        assert!(matches!(
            poly_from_critical_values(&updown(&[1.0, -1.0]), false),
            Err(Error::NonStrictUnsupported)
        ));
        assert!(poly_from_critical_values(&updown(&[]), true).is_err());
    }

    #[test]
    fn critical_sequence_of_examples() {
        let p = RealPolynomial::<f64>::new(&[0.0, -0.75, 0.0, 1.0]); // z^3 - 0.75 z
        let (seq, points) = critical_sequence_of(&p).unwrap();
        assert!((points[0] + 0.5).abs() < 1e-10);
        assert!((points[1] - 0.5).abs() < 1e-10);
        assert!((seq.values()[0] - 0.25).abs() < 1e-10);
        assert!((seq.values()[1] + 0.25).abs() < 1e-10);
        assert_eq!(seq.kind(), SequenceKind::Alternating);

        let sq = RealPolynomial::<f64>::new(&[0.0, 0.0, 1.0]); // z^2
        let (seq, points) = critical_sequence_of(&sq).unwrap();
        assert_eq!(points, vec![0.0]);
        assert_eq!(seq.values(), &[0.0]);

        let bad = RealPolynomial::<f64>::new(&[0.0, 1.0, 0.0, 1.0]); // z^3 + z
        assert!(matches!(
            critical_sequence_of(&bad),
            Err(Error::NonRealRoots { .. })
        ));
    }

    #[test]
    fn vcomb_examples() {
        let p = RealPolynomial::<f64>::new(&[0.0, -0.75, 0.0, 1.0]); // z^3 - 0.75 z
        let v = vcomb_of(&p).unwrap();
        assert_eq!((v.m, v.k), (0, 3));
        assert_eq!(v.rays.len(), 2);
        for &(level, tip) in &v.rays {
            assert!(level == 1 || level == 2);
            assert!((tip - 0.25f64.ln()).abs() < 1e-10);
        }

        let sq = RealPolynomial::<f64>::new(&[0.0, 0.0, 1.0]); // z^2: tip -inf, omitted
        let v = vcomb_of(&sq).unwrap();
        assert_eq!((v.m, v.k), (0, 2));
        assert!(v.rays.is_empty());

        let pm1 = RealPolynomial::<f64>::new(&[-1.0, 0.0, 1.0]); // z^2 - 1
        let v = vcomb_of(&pm1).unwrap();
        assert_eq!(v.rays, vec![(1, 0.0)]);

        let bad = RealPolynomial::<f64>::new(&[1.0, 0.0, 1.0]); // z^2 + 1: nonreal zeros
        assert!(vcomb_of(&bad).is_err());
    }

    #[test]
    fn roundtrip_moderate_lengths() {
        // deterministic strict up-down sequences of a few lengths
        let mut state = 0x243F6A8885A308D3u64;
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 11) as f64) / ((1u64 << 53) as f64)
        };
        for len in 1..=6usize {
            let mut c = vec![next() * 2.0 - 1.0];
            let mut dir = if next() > 0.5 { 1.0 } else { -1.0 };
            for _ in 1..len {
                let swing = 0.2 + 1.3 * next();
                let prev = *c.last().unwrap();
                c.push(prev + dir * swing);
                dir = -dir;
            }
            let seq = updown(&c);
            let r = poly_from_critical_values(&seq, true).unwrap();
            assert!(r.residual < 1e-9, "len {len}: residual {}", r.residual);
            let (back, points) = critical_sequence_of(&r.poly).unwrap();
            assert_eq!(back.len(), len);
            for (a, b) in back.values().iter().zip(c.iter()) {
                assert!(
                    (a - b).abs() < 1e-8,
                    "len {len}: {:?} vs {:?}",
                    back.values(),
                    c
                );
            }
            // interlacing: strictly increasing critical points
            for w in points.windows(2) {
                assert!(w[1] > w[0]);
            }
        }
    }

    #[test]
    fn affine_uniqueness() {
        let c = [0.7, -0.9, 1.3, 0.1];
        let std = poly_from_critical_values(&updown(&c), true).unwrap();
        let alt = poly_from_critical_values_in_frame(&updown(&c), true, (-1.0, 2.0)).unwrap();
        // transport back: critical points -1..2 pulled to 0..1 by z -> 3x - 1
        let transported = alt.poly.compose_affine(3.0, -1.0);
        for (a, b) in transported.coeffs().iter().zip(std.poly.coeffs().iter()) {
            assert!(
                (a - b).abs() < 1e-8,
                "{:?} vs {:?}",
                transported.coeffs(),
                std.poly.coeffs()
            );
        }
    }

    #[test]
    fn alternating_data_gives_real_zeros() {
        let c = [1.5, -0.4, 2.0, -1.1];
        let seq = Seq::new(&c, SequenceKind::Alternating);
        assert!(seq.is_valid());
        let r = poly_from_critical_values(&seq, true).unwrap();
        let max_imag = r.poly.max_root_imag();
        assert!(max_imag < 1e-8, "max imag {max_imag}");
    }
}
