//! Least-deviation monic polynomials.
//!
//! [`remez`] computes the monic polynomial of minimal sup-norm on an
//! interval union by grid exchange: the reference set holds `n + 1`
//! candidate equioscillation points, the linear reference problem is solved
//! in a hull-scaled Chebyshev basis, and the working extrema are polished by
//! Newton before the final solve. The de la Vallée Poussin bracket
//! `[|λ|, max |error|]` certifies the deviation on exit.
//!
//! [`weighted_remez`] runs the same engine on `[0, 1]` against the weight
//! `x^α (1-x)^β`; [`ball_monomial_error`] reduces the multivariate
//! best-approximation error on the unit ball to that weighted radial
//! problem and evaluates its sup on a deterministic grid.

use crate::error::{Error, Result};
use crate::jacobi::MOComb;
use crate::poly::{chebyshev_t, plus_minus_roots, RealPolynomial};
use crate::realset::IntervalUnion;
use crate::scalar::Scalar;

/// Practical degree cap for the exchange.
pub const MAX_DEGREE: usize = 200;

const BASE_GRID_PER_BAND: usize = 2048;

/// Monic least-deviation polynomial with its certificate data.
#[derive(Debug, Clone)]
pub struct ChebyshevResult<T> {
    /// Monic polynomial of degree `n` in the monomial basis.
    pub poly: RealPolynomial<T>,
    /// Deviation `L = max |P|` over the set.
    pub deviation: T,
    /// Equioscillation points, ascending.
    pub extreme_points: Vec<T>,
    /// Sign of `P` at each extreme point.
    pub signs: Vec<i8>,
}

/// Weighted least-deviation result on `[0, 1]`.
#[derive(Debug, Clone)]
pub struct WeightedChebyshevResult<T> {
    /// Monic minimizer of `sup x^α (1-x)^β |J(x)|`.
    pub poly: RealPolynomial<T>,
    /// The weighted deviation.
    pub deviation: T,
    /// Equioscillation points of the weighted error.
    pub extreme_points: Vec<T>,
    pub signs: Vec<i8>,
    pub alpha: T,
    pub beta: T,
}

#[derive(Clone, Copy)]
enum Weight<T> {
    One,
    Jacobi { alpha: T, beta: T },
}

impl<T: Scalar> Weight<T> {
    fn eval(&self, x: T) -> T {
        match *self {
            Weight::One => T::one(),
            Weight::Jacobi { alpha, beta } => {
                let a = if alpha == T::zero() {
                    T::one()
                } else {
                    x.powf(alpha)
                };
                let b = if beta == T::zero() {
                    T::one()
                } else {
                    (T::one() - x).powf(beta)
                };
                a * b
            }
        }
    }
}

/// Hull-scaled Chebyshev series: `P(x) = Σ b_j T_j((x - centre)/halfw)`.
#[derive(Clone)]
struct ChebSeries<T> {
    b: Vec<T>,
    centre: T,
    halfw: T,
}

impl<T: Scalar> ChebSeries<T> {
    fn eval(&self, x: T) -> T {
        let u = (x - self.centre) / self.halfw;
        cheb_eval(&self.b, u)
    }

    /// Derivative with respect to `x`.
    fn derivative(&self) -> ChebSeries<T> {
        let d = cheb_derivative_coeffs(&self.b);
        let d: Vec<T> = d.into_iter().map(|c| c / self.halfw).collect();
        ChebSeries {
            b: d,
            centre: self.centre,
            halfw: self.halfw,
        }
    }

    fn to_polynomial(&self) -> RealPolynomial<T> {
        let inv_h = T::one() / self.halfw;
        let shift = -self.centre / self.halfw;
        let mut acc = RealPolynomial::zero();
        for (j, &bj) in self.b.iter().enumerate() {
            if bj == T::zero() {
                continue;
            }
            let tj: RealPolynomial<T> = chebyshev_t(j);
            acc = acc.add(&tj.compose_affine(inv_h, shift).scale(bj));
        }
        acc
    }
}

fn cheb_eval<T: Scalar>(b: &[T], u: T) -> T {
    let mut b1 = T::zero();
    let mut b2 = T::zero();
    for &c in b.iter().rev() {
        let b0 = T::cst(2.0) * u * b1 - b2 + c;
        b2 = b1;
        b1 = b0;
    }
    b1 - u * b2
}

/// Coefficients of `d/du Σ b_j T_j(u)`.
fn cheb_derivative_coeffs<T: Scalar>(b: &[T]) -> Vec<T> {
    let n = b.len();
    if n <= 1 {
        return vec![T::zero()];
    }
    let mut d = vec![T::zero(); n - 1];
    let mut next = T::zero(); // d_{k+2}
    let mut after = T::zero(); // d_{k+1}
    for k in (0..n - 1).rev() {
        let dk = next + T::cst(2.0) * T::of_usize(k + 1) * b[k + 1];
        d[k] = dk;
        next = after;
        after = dk;
    }
    d[0] *= T::cst(0.5);
    d
}

struct GridPoint<T> {
    x: T,
    band: usize,
}

struct Exchange<T> {
    n: usize,
    centre: T,
    halfw: T,
    lead: T, // fixed leading Chebyshev coefficient (monic constraint)
    weight: Weight<T>,
    grid: Vec<GridPoint<T>>,
    bands: Vec<(T, T)>,
}

struct Solved<T> {
    series: ChebSeries<T>,
    lambda: T,
}

impl<T: Scalar> Exchange<T> {
    fn new(bands: &[(T, T)], n: usize, weight: Weight<T>) -> Self {
        let lo = bands[0].0;
        let hi = bands[bands.len() - 1].1;
        let centre = (lo + hi) * T::cst(0.5);
        let halfw = (hi - lo) * T::cst(0.5);
        // T_n has leading coefficient 2^{n-1} in u; monic in x needs
        // b_n = halfw^n 2^{1-n}
        let lead = halfw.powi(n as i32) * T::cst(2.0).powi(1 - n as i32);

        let mut grid = Vec::with_capacity(bands.len() * BASE_GRID_PER_BAND);
        for (bi, &(a, b)) in bands.iter().enumerate() {
            let mid = (a + b) * T::cst(0.5);
            let half = (b - a) * T::cst(0.5);
            let m = BASE_GRID_PER_BAND;
            for i in 0..m {
                let angle = T::PI() * T::of_usize(m - 1 - i) / T::of_usize(m - 1);
                let x = mid + half * angle.cos();
                // skip zero-weight endpoints (they can never be extremes)
                if weight.eval(x) > T::zero() {
                    grid.push(GridPoint { x, band: bi });
                }
            }
        }
        Self {
            n,
            centre,
            halfw,
            lead,
            weight,
            grid,
            bands: bands.to_vec(),
        }
    }

    /// Solve the reference problem: `w(x_i) P(x_i) = (-1)^i λ` over the
    /// current reference, `P` monic.
    fn solve_reference(&self, reference: &[T]) -> Result<Solved<T>> {
        let n = self.n;
        let dim = n + 1;
        debug_assert_eq!(reference.len(), dim);
        if reference.len() != dim {
            return Err(Error::InvalidInput("reference set size mismatch".into()));
        }
        let mut a = vec![T::zero(); dim * dim];
        let mut rhs = vec![T::zero(); dim];
        for (i, &x) in reference.iter().enumerate() {
            let u = (x - self.centre) / self.halfw;
            let w = self.weight.eval(x);
            // Chebyshev values by recurrence
            let mut t0 = T::one();
            let mut t1 = u;
            for j in 0..n {
                let tj = if j == 0 { t0 } else { t1 };
                a[i * dim + j] = w * tj;
                if j > 0 {
                    let t2 = T::cst(2.0) * u * t1 - t0;
                    t0 = t1;
                    t1 = t2;
                }
            }
            // T_n(u)
            let tn = {
                let mut s0 = T::one();
                let mut s1 = u;
                if n == 0 {
                    s0
                } else {
                    for _ in 1..n {
                        let s2 = T::cst(2.0) * u * s1 - s0;
                        s0 = s1;
                        s1 = s2;
                    }
                    s1
                }
            };
            let sigma = if i % 2 == 0 { T::one() } else { -T::one() };
            a[i * dim + n] = -sigma;
            rhs[i] = -w * self.lead * tn;
        }
        let sol = crate::linalg::solve_dense(&mut a, &mut rhs)?;
        let mut b = sol[..n].to_vec();
        b.push(self.lead);
        let lambda = sol[n];
        Ok(Solved {
            series: ChebSeries {
                b,
                centre: self.centre,
                halfw: self.halfw,
            },
            lambda,
        })
    }

    fn error_at(&self, series: &ChebSeries<T>, x: T) -> T {
        self.weight.eval(x) * series.eval(x)
    }

    /// Local maxima of |error| on the grid (band-aware) plus band edges.
    fn candidates(&self, series: &ChebSeries<T>) -> Vec<(T, T)> {
        let e: Vec<T> = self
            .grid
            .iter()
            .map(|g| self.error_at(series, g.x))
            .collect();
        let mut out = Vec::new();
        for i in 0..self.grid.len() {
            let left_same = i > 0 && self.grid[i - 1].band == self.grid[i].band;
            let right_same = i + 1 < self.grid.len() && self.grid[i + 1].band == self.grid[i].band;
            let ai = e[i].abs();
            let is_max =
                (!left_same || ai >= e[i - 1].abs()) && (!right_same || ai >= e[i + 1].abs());
            if is_max {
                out.push((self.grid[i].x, e[i]));
            }
        }
        out
    }

    /// Condense same-sign runs and trim to `n + 1` alternating points.
    fn select_reference(&self, mut cands: Vec<(T, T)>) -> Vec<T> {
        cands.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        cands.dedup_by(|a, b| a.0 == b.0);
        let all = cands.clone();

        // keep the largest |e| of each same-sign run (leftmost on ties)
        let mut condensed: Vec<(T, T)> = Vec::new();
        for (x, e) in cands {
            match condensed.last_mut() {
                Some(last) if (last.1 >= T::zero()) == (e >= T::zero()) => {
                    if e.abs() > last.1.abs() {
                        *last = (x, e);
                    }
                }
                _ => condensed.push((x, e)),
            }
        }

        let want = self.n + 1;
        while condensed.len() > want {
            if condensed.len() == want + 1 {
                // drop the weaker endpoint; ties drop the right one
                let first = condensed.first().unwrap().1.abs();
                let last = condensed.last().unwrap().1.abs();
                if first < last {
                    condensed.remove(0);
                } else {
                    condensed.pop();
                }
            } else {
                // drop the adjacent pair whose larger |e| is smallest
                let mut best_i = 0;
                let mut best_v = T::infinity();
                for i in 0..condensed.len() - 1 {
                    let v = condensed[i].1.abs().max(condensed[i + 1].1.abs());
                    if v < best_v {
                        best_v = v;
                        best_i = i;
                    }
                }
                condensed.drain(best_i..best_i + 2);
            }
        }

        // pre-asymptotic iterates can have too few sign changes (degenerate
        // λ scrambles the pooled signs); pad with the strongest unused
        // candidates so the reference solve stays square
        if condensed.len() < want {
            let mut extras: Vec<(T, T)> = all
                .iter()
                .filter(|(x, _)| !condensed.iter().any(|(c, _)| c == x))
                .copied()
                .collect();
            extras.sort_by(|u, v| {
                v.1.abs()
                    .partial_cmp(&u.1.abs())
                    .unwrap()
                    .then(u.0.partial_cmp(&v.0).unwrap())
            });
            for e in extras {
                if condensed.len() == want {
                    break;
                }
                condensed.push(e);
            }
            condensed.sort_by(|u, v| u.0.partial_cmp(&v.0).unwrap());
        }
        if condensed.len() < want {
            // last resort: spread over the grid, avoiding collisions
            let g = self.grid.len();
            for k in 0..g {
                if condensed.len() == want {
                    break;
                }
                let x = self.grid[(k * (g - 1)) / (want - 1).max(1)].x;
                if !condensed.iter().any(|(c, _)| *c == x) {
                    condensed.push((x, T::zero()));
                }
            }
            condensed.sort_by(|u, v| u.0.partial_cmp(&v.0).unwrap());
        }
        condensed.into_iter().map(|(x, _)| x).collect()
    }

    fn band_of(&self, x: T) -> Option<usize> {
        self.bands.iter().position(|&(a, b)| x >= a && x <= b)
    }

    /// Newton-polish an interior extremum of the weighted error.
    fn polish(&self, series: &ChebSeries<T>, x0: T) -> T {
        let Some(bi) = self.band_of(x0) else {
            return x0;
        };
        let (lo, hi) = self.bands[bi];
        let edge = (hi - lo) * T::cst(1e-12);
        if x0 - lo < edge || hi - x0 < edge {
            return x0; // band-edge extreme, not a critical point
        }
        let dp = series.derivative();
        let ddp = dp.derivative();
        let mut x = x0;
        for _ in 0..8 {
            // s(x) = e'(x)/w(x); for the Jacobi weight
            //   s = (α/x - β/(1-x)) P + P'
            let (s, ds) = match self.weight {
                Weight::One => (dp.eval(x), ddp.eval(x)),
                Weight::Jacobi { alpha, beta } => {
                    let p = series.eval(x);
                    let p1 = dp.eval(x);
                    let p2 = ddp.eval(x);
                    let f = alpha / x - beta / (T::one() - x);
                    let f1 = -alpha / (x * x) - beta / ((T::one() - x) * (T::one() - x));
                    (f * p + p1, f1 * p + f * p1 + p2)
                }
            };
            if ds == T::zero() {
                break;
            }
            let step = s / ds;
            if !step.is_finite() {
                break;
            }
            let xn = x - step;
            if xn <= lo || xn >= hi {
                break;
            }
            x = xn;
            if step.abs() <= T::epsilon() * (T::one() + x.abs()) {
                break;
            }
        }
        x
    }

    fn run(&self) -> Result<Solved<T>> {
        let n = self.n;
        // initial reference: spread across the (measure-weighted) grid
        let g = self.grid.len();
        let mut reference: Vec<T> = (0..=n)
            .map(|k| self.grid[(k * (g - 1)) / n.max(1)].x)
            .collect();
        reference.dedup();
        if reference.len() < n + 1 {
            return Err(Error::InvalidInput(
                "grid too small for the requested degree".into(),
            ));
        }

        let mut solved = self.solve_reference(&reference)?;
        let rel_tol = T::epsilon() * T::cst(64.0);

        for _iter in 0..100 {
            let mut cands = self.candidates(&solved.series);
            let max_err = cands
                .iter()
                .map(|c| c.1.abs())
                .fold(T::zero(), |a, b| a.max(b));
            let lambda = solved.lambda.abs();
            if max_err <= lambda * (T::one() + rel_tol) {
                break;
            }
            // the current reference alternates by construction; pooling it
            // guarantees enough sign changes to rebuild a full reference
            cands.extend(
                reference
                    .iter()
                    .map(|&x| (x, self.error_at(&solved.series, x))),
            );
            let new_ref = self.select_reference(cands);
            if new_ref == reference {
                break;
            }
            reference = new_ref;
            solved = self.solve_reference(&reference)?;
        }

        // polish the working extrema off-grid, then resolve
        for _round in 0..2 {
            let polished: Vec<T> = reference
                .iter()
                .map(|&x| self.polish(&solved.series, x))
                .collect();
            let mut ok = polished.windows(2).all(|w| w[1] > w[0]);
            if ok {
                match self.solve_reference(&polished) {
                    Ok(s) => {
                        reference = polished;
                        solved = s;
                    }
                    Err(_) => ok = false,
                }
            }
            if !ok {
                break;
            }
        }

        // certificate: fresh extrema of the final error must not exceed |λ|
        let lambda = solved.lambda.abs();
        let cands = self.candidates(&solved.series);
        let mut max_err = lambda;
        for (x, _) in &cands {
            let xp = self.polish(&solved.series, *x);
            max_err = max_err.max(self.error_at(&solved.series, xp).abs());
        }
        if max_err > lambda * (T::one() + T::cst(1e-9)) {
            return Err(Error::ExchangeNonConvergence {
                lower: lambda.to_f64().unwrap_or(f64::NAN),
                upper: max_err.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(solved)
    }
}

/// Monic polynomial of degree `n` with least sup-norm on `set`.
pub fn remez<T: Scalar>(set: &IntervalUnion<T>, n: usize) -> Result<ChebyshevResult<T>> {
    if !(1..=MAX_DEGREE).contains(&n) {
        return Err(Error::DegreeOutOfRange(n, 1, MAX_DEGREE));
    }
    let ex = Exchange::new(set.bands(), n, Weight::One);
    let solved = ex.run()?;

    let reference = final_reference(&ex, &solved);
    let signs: Vec<i8> = reference
        .iter()
        .map(|&x| {
            if ex.error_at(&solved.series, x) >= T::zero() {
                1
            } else {
                -1
            }
        })
        .collect();
    Ok(ChebyshevResult {
        poly: solved.series.to_polynomial(),
        deviation: solved.lambda.abs(),
        extreme_points: reference,
        signs,
    })
}

/// Monic `J_n` minimizing `sup_{[0,1]} x^α (1-x)^β |J_n(x)|`.
pub fn weighted_remez<T: Scalar>(
    n: usize,
    alpha: T,
    beta: T,
) -> Result<WeightedChebyshevResult<T>> {
    if !(1..=MAX_DEGREE).contains(&n) {
        return Err(Error::DegreeOutOfRange(n, 1, MAX_DEGREE));
    }
    if alpha < T::zero() || beta < T::zero() {
        return Err(Error::InvalidInput(
            "weights must have alpha, beta >= 0".into(),
        ));
    }
    let bands = [(T::zero(), T::one())];
    let ex = Exchange::new(&bands, n, Weight::Jacobi { alpha, beta });
    let solved = ex.run()?;
    let reference = final_reference(&ex, &solved);
    let signs: Vec<i8> = reference
        .iter()
        .map(|&x| {
            if ex.error_at(&solved.series, x) >= T::zero() {
                1
            } else {
                -1
            }
        })
        .collect();
    Ok(WeightedChebyshevResult {
        poly: solved.series.to_polynomial(),
        deviation: solved.lambda.abs(),
        extreme_points: reference,
        signs,
        alpha,
        beta,
    })
}

/// Recollect the equioscillation points of the final polynomial.
fn final_reference<T: Scalar>(ex: &Exchange<T>, solved: &Solved<T>) -> Vec<T> {
    let lambda = solved.lambda.abs();
    let keep = lambda * (T::one() - T::cst(1e-7));
    let mut pts: Vec<T> = ex
        .candidates(&solved.series)
        .into_iter()
        .map(|(x, _)| ex.polish(&solved.series, x))
        .filter(|&x| ex.error_at(&solved.series, x).abs() >= keep)
        .collect();
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup_by(|a, b| (*a - *b).abs() <= T::epsilon() * T::cst(64.0) * (T::one() + a.abs()));
    pts
}

/// Report of the extremal-structure certificate.
#[derive(Debug, Clone)]
pub struct ExtremalReport<T> {
    /// Sorted real zeros (empty when some zeros are non-real).
    pub zeros: Vec<T>,
    /// (i) all zeros real and simple.
    pub zeros_real_simple: bool,
    /// (ii) between adjacent zeros the deviation is attained on the set.
    pub interior_attained: bool,
    /// (iii) the deviation is attained at `inf E` and `sup E`.
    pub endpoints_attained: bool,
    pub pass: bool,
}

/// Verify the three structural properties of a least-deviation polynomial.
pub fn verify_extremal<T: Scalar>(
    set: &IntervalUnion<T>,
    result: &ChebyshevResult<T>,
) -> ExtremalReport<T> {
    let p = &result.poly;
    let n = p.degree();
    let l = result.deviation;
    let rel = l * T::cst(1e-6);

    let roots = p.complex_roots();
    let scale = p.root_bound().max(T::one());
    let all_real = roots.iter().all(|z| z.im.abs() <= T::cst(1e-8) * scale);
    let mut zeros: Vec<T> = Vec::new();
    let mut simple = all_real && roots.len() == n;
    if all_real {
        zeros = roots.iter().map(|z| z.re).collect();
        zeros.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let min_sep = set.diameter() * T::cst(1e-7);
        if zeros.windows(2).any(|w| w[1] - w[0] < min_sep) {
            simple = false;
        }
    }

    // (ii): between adjacent zeros, max |P| over E reaches L
    let mut interior = true;
    if simple {
        for w in zeros.windows(2) {
            let m = max_abs_on_set_between(set, p, w[0], w[1]);
            if (m - l).abs() > rel {
                interior = false;
                break;
            }
        }
    } else {
        interior = false;
    }

    let endpoints =
        (p.eval(set.inf()).abs() - l).abs() <= rel && (p.eval(set.sup()).abs() - l).abs() <= rel;

    ExtremalReport {
        zeros,
        zeros_real_simple: simple,
        interior_attained: interior,
        endpoints_attained: endpoints,
        pass: simple && interior && endpoints,
    }
}

/// Max of |P| over `E ∩ (lo, hi)` by dense sampling plus critical points.
fn max_abs_on_set_between<T: Scalar>(
    set: &IntervalUnion<T>,
    p: &RealPolynomial<T>,
    lo: T,
    hi: T,
) -> T {
    let mut m = T::zero();
    for &(a, b) in set.bands() {
        let l = a.max(lo);
        let r = b.min(hi);
        if r <= l {
            continue;
        }
        const SAMPLES: usize = 512;
        for i in 0..=SAMPLES {
            let x = l + (r - l) * T::of_usize(i) / T::of_usize(SAMPLES);
            m = m.max(p.eval(x).abs());
        }
    }
    for x in p.derivative().real_roots_in(lo, hi) {
        if set.contains(x) {
            m = m.max(p.eval(x).abs());
        }
    }
    m
}

/// Report of the comb-structure check of an extremal polynomial.
#[derive(Debug, Clone)]
pub struct CombCheckReport<T> {
    /// Largest |Im| over the roots of `P² - L²`.
    pub max_root_imag: T,
    /// (a) all roots of `P² - L²` real within tolerance.
    pub roots_real: bool,
    /// Maximal set `E' = P^{-1}([-L, L])`.
    pub e_prime: IntervalUnion<T>,
    /// Slit data `(critical point, arccosh(|P|/L))` in the gaps of `E'`.
    pub heights: Vec<(T, T)>,
    /// Induced MO-comb (heights over all critical points, in order).
    pub mo_comb: MOComb<T>,
    /// (c) each band of `E'` maps onto `[-L, L]`.
    pub maps_onto: bool,
    pub pass: bool,
}

/// Check the `P = L cos θ` comb structure of a certified extremal result.
pub fn comb_check<T: Scalar>(
    set: &IntervalUnion<T>,
    result: &ChebyshevResult<T>,
) -> Result<CombCheckReport<T>> {
    let p = &result.poly;
    let l = result.deviation;
    let n = p.degree();

    // roots of P² - L² via the factors P ∓ L (conditioned even at tiny L)
    let roots = plus_minus_roots(p, l);
    let scale = p.root_bound().max(T::one());
    let mut max_imag = T::zero();
    for z in &roots {
        max_imag = max_imag.max(z.im.abs());
    }
    let roots_real = max_imag <= T::cst(1e-8) * scale;

    // distinct real edges of E'; double roots polish apart by ~sqrt(eps),
    // so the cluster tolerance must sit above that
    let mut edges: Vec<T> = roots.iter().map(|z| z.re).collect();
    edges.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let span = (edges[edges.len() - 1] - edges[0]).max(T::one());
    let cluster = span * T::epsilon().sqrt() * T::cst(8.0);
    let mut distinct: Vec<T> = Vec::new();
    for &e in &edges {
        match distinct.last() {
            Some(&last) if (e - last).abs() <= cluster => {}
            _ => distinct.push(e),
        }
    }
    let mut bands = Vec::new();
    for w in distinct.windows(2) {
        let mid = (w[0] + w[1]) * T::cst(0.5);
        if p.eval(mid).abs() <= l * (T::one() + T::cst(1e-9)) {
            bands.push((w[0], w[1]));
        }
    }
    let e_prime = IntervalUnion::normalize(&bands)?;

    // heights at the critical points outside E'; membership carries a
    // round-off slack matching the edge resolution (the edges are roots of
    // P² - L², whose monomial evaluation cancels down to sqrt(eps) scale)
    let slack = cluster;
    let in_e_prime = |x: T| {
        e_prime
            .bands()
            .iter()
            .any(|&(a, b)| x >= a - slack && x <= b + slack)
    };
    let crit = p.derivative().real_roots();
    let mut heights = Vec::new();
    let mut all_heights = Vec::with_capacity(crit.len());
    for &x in &crit {
        let ratio = (p.eval(x).abs() / l).max(T::one());
        let h = (ratio + (ratio * ratio - T::one()).sqrt()).ln();
        all_heights.push(h);
        if !in_e_prime(x) {
            heights.push((x, h));
        }
    }
    let mo_comb = MOComb {
        m: 0,
        k: n as i64,
        heights: all_heights,
    };

    // each band of E' must cover [-L, L]
    let tol = l * T::cst(1e-6);
    let mut maps_onto = true;
    for &(a, b) in e_prime.bands() {
        let mut lo_val = p.eval(a).min(p.eval(b));
        let mut hi_val = p.eval(a).max(p.eval(b));
        for &x in &crit {
            if x > a && x < b {
                let v = p.eval(x);
                lo_val = lo_val.min(v);
                hi_val = hi_val.max(v);
            }
        }
        if lo_val > -l + tol || hi_val < l - tol {
            maps_onto = false;
        }
    }

    // E must sit inside its maximal extension
    let contains_set = set
        .bands()
        .iter()
        .all(|&(a, b)| in_e_prime(a) && in_e_prime(b));

    Ok(CombCheckReport {
        max_root_imag: max_imag,
        roots_real,
        e_prime,
        heights,
        mo_comb,
        maps_onto: maps_onto && contains_set,
        pass: roots_real && maps_onto && contains_set,
    })
}

/// Error of the best degree `< k_1 + … + k_d + l_1` approximation to the
/// monomial `z_1^{k_1} … z_d^{k_d} conj(z_1)^{l_1}` on the unit ball,
/// evaluated as the sup of the weighted radial factor over a deterministic
/// grid of `grid` points in `r_1 ∈ [0, 1]` (the remaining radial variables
/// maximize in closed form on the simplex).
pub fn ball_monomial_error<T: Scalar>(k: &[u32], l1: u32, grid: usize) -> Result<T> {
    if k.is_empty() {
        return Err(Error::InvalidInput("k must have at least one entry".into()));
    }
    if l1 > k[0] {
        return Err(Error::InvalidInput("l1 must satisfy 0 <= l1 <= k1".into()));
    }
    if grid < 2 {
        return Err(Error::InvalidInput(
            "grid must have at least 2 points".into(),
        ));
    }
    let alpha = T::cst((k[0] - l1) as f64) * T::cst(0.5);
    let k_tail: u32 = k[1..].iter().sum();
    let beta = T::cst(k_tail as f64) * T::cst(0.5);

    let j_poly = if l1 == 0 {
        RealPolynomial::constant(T::one())
    } else {
        weighted_remez(l1 as usize, alpha, beta)?.poly
    };

    // sup over the tail radial variables: r_i proportional to k_i
    let mut tail_factor = T::one();
    if k_tail > 0 {
        for &ki in &k[1..] {
            if ki > 0 {
                let frac = T::cst(ki as f64) / T::cst(k_tail as f64);
                tail_factor *= frac.powf(T::cst(ki as f64) * T::cst(0.5));
            }
        }
    }

    let mut sup = T::zero();
    for i in 0..grid {
        let r = T::of_usize(i) / T::of_usize(grid - 1);
        let wa = if alpha == T::zero() {
            T::one()
        } else {
            r.powf(alpha)
        };
        let wb = if beta == T::zero() {
            T::one()
        } else {
            (T::one() - r).powf(beta)
        };
        let v = wa * wb * j_poly.eval(r).abs() * tail_factor;
        sup = sup.max(v);
    }
    Ok(sup)
}
