//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured quantities. Golden values are closed forms derivable by
//! hand; random checks use fixed seeds.

mod common;

use std::time::Instant;

use common::{random_updown, set, Lcg};
use num_complex::Complex;

use combforge_core::combs::{muckenhoupt_sup, theta_eval};
use combforge_core::critpoly::{
    critical_sequence_of, poly_from_critical_values, poly_from_critical_values_in_frame,
    CriticalSequence, SequenceKind,
};
use combforge_core::jacobi::{
    comb_heights, discriminant, discriminant_from_heights, rational_measure_check, spectrum,
    transfer_matrix, PeriodicJacobi,
};
use combforge_core::minimax::{ball_monomial_error, comb_check, remez, weighted_remez};
use combforge_core::poly::{chebyshev_t, RealPolynomial};
use combforge_core::potential::equilibrium;

#[test]
fn criterion_01_unit_interval_capacity() {
    let start = Instant::now();
    let data = equilibrium(&set(&[(-1.0, 1.0)])).unwrap();
    let elapsed = start.elapsed();

    let cap_err = (data.capacity() - 0.5).abs();
    let robin_err = (data.robin() - std::f64::consts::LN_2).abs();
    assert!(cap_err < 1e-10, "capacity error {cap_err}");
    assert!(robin_err < 1e-10, "robin error {robin_err}");
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!(
        "criterion 01: PASS  capacity err {cap_err:.2e}, robin err {robin_err:.2e}, {elapsed:?}"
    );
}

#[test]
fn criterion_02_two_band_capacity_and_comb() {
    let data = equilibrium(&set(&[(-1.0, -0.5), (0.5, 1.0)])).unwrap();
    let cap_err = (data.capacity() - 0.75f64.sqrt() / 2.0).abs();
    assert!(cap_err < 1e-8, "capacity error {cap_err}");

    let comb = data.green_comb();
    assert_eq!(comb.slits().len(), 1);
    let (x, h) = comb.slits()[0];
    let pos_err = (x - std::f64::consts::FRAC_PI_2).abs();
    let h_err = (h - 0.5 * 3.0f64.ln()).abs();
    assert!(pos_err < 1e-8, "slit position error {pos_err}");
    assert!(h_err < 1e-8, "slit height error {h_err}");
    println!("criterion 02: PASS  capacity err {cap_err:.2e}, slit ({pos_err:.2e}, {h_err:.2e})");
}

#[test]
fn criterion_03_chebyshev_ladder() {
    let e = set(&[(-1.0, 1.0)]);
    let cap = equilibrium(&e).unwrap().capacity();
    let mut worst_l: f64 = 0.0;
    let mut worst_c: f64 = 0.0;
    for n in 1..=8usize {
        let r = remez(&e, n).unwrap();
        let l_expect = 2.0f64.powi(1 - n as i32);
        worst_l = worst_l.max((r.deviation - l_expect).abs());
        let monic: RealPolynomial<f64> = chebyshev_t::<f64>(n).scale(l_expect);
        for (a, b) in r.poly.coeffs().iter().zip(monic.coeffs()) {
            worst_c = worst_c.max((a - b).abs());
        }
        let bound = 2.0 * cap.powi(n as i32);
        assert!(
            r.deviation >= bound - 1e-9,
            "capacity bound violated at n = {n}"
        );
        assert!(
            (r.deviation - bound).abs() < 1e-6,
            "equality fails at n = {n}"
        );
    }
    assert!(worst_l < 1e-9, "worst deviation error {worst_l}");
    assert!(worst_c < 1e-8, "worst coefficient error {worst_c}");
    println!("criterion 03: PASS  deviation err {worst_l:.2e}, coeff err {worst_c:.2e}");
}

#[test]
fn criterion_04_two_band_quadratic() {
    let e = set(&[(-1.0, -0.5), (0.5, 1.0)]);
    let r = remez(&e, 2).unwrap();
    assert!((r.deviation - 0.375).abs() < 1e-9, "L = {}", r.deviation);
    let expect = [-0.625, 0.0, 1.0];
    for (a, b) in r.poly.coeffs().iter().zip(expect.iter()) {
        assert!((a - b).abs() < 1e-9, "coeffs {:?}", r.poly.coeffs());
    }
    let check = comb_check(&e, &r).unwrap();
    assert!(check.roots_real, "imag {}", check.max_root_imag);
    assert!(check.max_root_imag < 1e-8);
    assert_eq!(check.heights.len(), 1);
    let h_err = (check.heights[0].1 - 3.0f64.ln()).abs();
    assert!(h_err < 1e-7, "height error {h_err}");
    println!(
        "criterion 04: PASS  L err {:.2e}, height err {h_err:.2e}, max imag {:.2e}",
        (r.deviation - 0.375).abs(),
        check.max_root_imag
    );
}

#[test]
fn criterion_05_weighted_deviation() {
    let r = weighted_remez(1, 1.0, 0.0).unwrap();
    let root = -r.poly.coeffs()[0];
    let root_err = (root - (2.0 * 2.0f64.sqrt() - 2.0)).abs();
    let l_err = (r.deviation - (3.0 - 2.0 * 2.0f64.sqrt())).abs();
    assert!(root_err < 1e-8, "root error {root_err}");
    assert!(l_err < 1e-8, "L error {l_err}");

    let e01 = set(&[(0.0, 1.0)]);
    let mut worst: f64 = 0.0;
    for n in 1..=5usize {
        let w = weighted_remez(n, 0.0, 0.0).unwrap();
        let plain = remez(&e01, n).unwrap();
        for (a, b) in w.poly.coeffs().iter().zip(plain.poly.coeffs()) {
            worst = worst.max((a - b).abs());
        }
    }
    assert!(worst < 1e-9, "weighted/plain disagreement {worst}");
    println!("criterion 05: PASS  root err {root_err:.2e}, L err {l_err:.2e}, agree {worst:.2e}");
}

#[test]
fn criterion_06_ball_monomial_errors() {
    let v = ball_monomial_error::<f64>(&[2], 1, 10_000).unwrap();
    let e1 = (v - 0.25).abs();
    assert!(e1 < 1e-3, "k=(2), l1=1: {v}");
    let v = ball_monomial_error::<f64>(&[1], 1, 10_000).unwrap();
    let e2 = (v - 0.5).abs();
    assert!(e2 < 1e-3, "k=(1), l1=1: {v}");
    println!("criterion 06: PASS  errors {e1:.2e}, {e2:.2e}");
}

#[test]
fn criterion_07_critpoly_roundtrip() {
    let mut rng = Lcg(0x9E3779B97F4A7C15);
    let mut worst_resid: f64 = 0.0;
    let mut worst_affine: f64 = 0.0;
    for i in 0..200usize {
        let len = 1 + (i % 9);
        let c = random_updown(&mut rng, len);
        let seq = CriticalSequence::new(&c, SequenceKind::UpDown);
        let r = poly_from_critical_values(&seq, true).unwrap();

        // reconstruction residual at the returned critical points
        for (j, &x) in r.critical_points.iter().enumerate() {
            worst_resid = worst_resid.max((r.poly.eval(x) - c[j]).abs());
        }
        // and through the inverse operation
        let (back, _) = critical_sequence_of(&r.poly).unwrap();
        assert_eq!(back.len(), len, "case {i}");
        for (a, b) in back.values().iter().zip(c.iter()) {
            worst_resid = worst_resid.max((a - b).abs());
        }

        // affine uniqueness: construct in the frame (-1, 2), pull back
        let alt = poly_from_critical_values_in_frame(&seq, true, (-1.0, 2.0)).unwrap();
        let pulled = if len == 1 {
            alt.poly.compose_affine(1.0, -1.0)
        } else {
            alt.poly.compose_affine(3.0, -1.0)
        };
        let scale = r.poly.coeffs().iter().fold(1.0f64, |a, &b| a.max(b.abs()));
        for (a, b) in pulled.coeffs().iter().zip(r.poly.coeffs()) {
            worst_affine = worst_affine.max((a - b).abs() / scale);
        }
    }
    assert!(worst_resid < 1e-8, "worst residual {worst_resid}");
    assert!(worst_affine < 1e-8, "worst affine mismatch {worst_affine}");
    println!("criterion 07: PASS  residual {worst_resid:.2e}, affine {worst_affine:.2e}");
}

#[test]
fn criterion_08_critpoly_golden() {
    let cubic = poly_from_critical_values(
        &CriticalSequence::new(&[-1.0, 1.0], SequenceKind::UpDown),
        true,
    )
    .unwrap();
    let mut e1: f64 = 0.0;
    for (a, b) in cubic
        .poly
        .coeffs()
        .iter()
        .zip([-1.0f64, 0.0, 6.0, -4.0].iter())
    {
        e1 = e1.max((a - b).abs());
    }
    assert!(e1 < 1e-10, "cubic error {e1}: {:?}", cubic.poly.coeffs());

    let quartic = poly_from_critical_values(
        &CriticalSequence::new(&[1.0, -1.0, 1.0], SequenceKind::UpDown),
        true,
    )
    .unwrap();
    let mut e2: f64 = 0.0;
    for (a, b) in quartic
        .poly
        .coeffs()
        .iter()
        .zip([1.0f64, 0.0, -32.0, 64.0, -32.0].iter())
    {
        e2 = e2.max((a - b).abs());
    }
    assert!(e2 < 1e-9, "quartic error {e2}: {:?}", quartic.poly.coeffs());
    println!("criterion 08: PASS  cubic err {e1:.2e}, quartic err {e2:.2e}");
}

#[test]
fn criterion_09_jacobi_discriminants() {
    // free matrices give Chebyshev polynomials
    let mut worst: f64 = 0.0;
    for n in 1..=10usize {
        let j = PeriodicJacobi::new(&vec![0.0; n], &vec![0.5; n]).unwrap();
        let delta = discriminant(&j);
        for (a, b) in delta.coeffs().iter().zip(chebyshev_t::<f64>(n).coeffs()) {
            worst = worst.max((a - b).abs());
        }
    }
    assert!(worst < 1e-10, "free-Jacobi coefficient error {worst}");

    // two-periodic example: bands ±[0.5, sqrt(1.25)]
    let j = PeriodicJacobi::new(&[-0.5, 0.5], &[0.5, 0.5]).unwrap();
    let s = spectrum(&j).unwrap();
    let r = 1.25f64.sqrt();
    let expect = [(-r, -0.5), (0.5, r)];
    assert_eq!(s.band_count(), 2);
    let mut band_err: f64 = 0.0;
    for (got, want) in s.bands().iter().zip(expect.iter()) {
        band_err = band_err
            .max((got.0 - want.0).abs())
            .max((got.1 - want.1).abs());
    }
    assert!(band_err < 1e-10, "band edge error {band_err}");

    // transfer determinant is identically 1
    let mut rng = Lcg(0xC0FFEE);
    let mut det_err: f64 = 0.0;
    for i in 0..100usize {
        let n = 1 + (i % 12);
        let q: Vec<f64> = (0..n).map(|_| rng.range(-1.0, 1.0)).collect();
        let p: Vec<f64> = (0..n).map(|_| rng.range(0.5, 1.5)).collect();
        let det = transfer_matrix(&PeriodicJacobi::new(&q, &p).unwrap()).determinant();
        det_err = det_err.max((det.coeffs()[0] - 1.0).abs());
        for &c in &det.coeffs()[1..] {
            det_err = det_err.max(c.abs());
        }
    }
    assert!(det_err < 1e-10, "determinant error {det_err}");
    println!("criterion 09: PASS  cheb {worst:.2e}, bands {band_err:.2e}, det {det_err:.2e}");
}

#[test]
fn criterion_10_heights_roundtrip() {
    let mut rng = Lcg(0xFEED5EED);
    let mut worst_imag: f64 = 0.0;
    let mut worst_h: f64 = 0.0;
    for i in 0..100usize {
        let n = 2 + (i % 7); // period up to 8
        let heights: Vec<f64> = (0..n - 1).map(|_| rng.range(0.05, 2.0)).collect();
        let delta = discriminant_from_heights(&heights).unwrap();
        let sq = delta.mul(&delta).sub(&RealPolynomial::constant(1.0));
        worst_imag = worst_imag.max(sq.max_root_imag());
        let recovered = comb_heights(&delta);
        assert_eq!(recovered.len(), heights.len(), "case {i}");
        for (r, h) in recovered.iter().zip(heights.iter()) {
            worst_h = worst_h.max((r - h).abs());
        }
    }
    assert!(worst_imag < 1e-8, "worst root imag {worst_imag}");
    assert!(worst_h < 1e-7, "worst height error {worst_h}");
    println!("criterion 10: PASS  root imag {worst_imag:.2e}, height err {worst_h:.2e}");
}

#[test]
fn criterion_11_rational_measures() {
    let mut rng = Lcg(0xB00B1E5);
    let mut worst: f64 = 0.0;
    for i in 0..20usize {
        let n = 2 + (i % 3);
        let q: Vec<f64> = (0..n).map(|_| rng.range(-0.8, 0.8)).collect();
        let p: Vec<f64> = (0..n).map(|_| rng.range(0.4, 1.2)).collect();
        let rep = rational_measure_check(&PeriodicJacobi::new(&q, &p).unwrap()).unwrap();
        worst = worst.max(rep.max_distance);
        assert!(rep.pass, "case {i}: distances {:?}", rep.scaled_measures);
    }
    assert!(worst < 1e-6);
    println!("criterion 11: PASS  worst integer distance {worst:.2e}");
}

#[test]
fn criterion_12_muckenhoupt_values() {
    let c = muckenhoupt_sup(&[3.5f64, 3.5, 3.5, 3.5]).unwrap();
    assert!((c - 1.0).abs() < 1e-12, "constant: {c}");
    let two = muckenhoupt_sup(&[1.0f64, 4.0]).unwrap();
    assert!((two - 1.5625).abs() < 1e-12, "(1,4): {two}");
    let d: Vec<f64> = (0..8).map(|n| 4.0f64.powi(n)).collect();
    let geo = muckenhoupt_sup(&d).unwrap();
    assert!((geo - 455.1).abs() <= 0.1, "geometric: {geo}");
    println!("criterion 12: PASS  constant {c}, pair {two}, geometric {geo:.4}");
}

#[test]
fn criterion_13_theta_eval() {
    let t3: RealPolynomial<f64> = chebyshev_t(3);
    let anchor = Complex::new(1.0, 0.0);

    // path independence across homotopic paths
    let target = Complex::new(-0.7, 1.3);
    let a = theta_eval(&t3, 1.0, &[anchor, Complex::new(1.0, 1.6), target]).unwrap();
    let b = theta_eval(
        &t3,
        1.0,
        &[
            anchor,
            Complex::new(2.4, 0.7),
            Complex::new(2.4, 2.8),
            Complex::new(-0.7, 2.8),
            target,
        ],
    )
    .unwrap();
    let path_err = (a - b).norm();
    assert!(path_err < 1e-8, "path dependence {path_err}");

    // cos(theta) L = P at 100 points
    let mut rng = Lcg(0xD15EA5E);
    let mut inv_err: f64 = 0.0;
    for _ in 0..100 {
        let z = Complex::new(rng.range(-2.0, 2.0), rng.range(0.3, 2.5));
        let th = theta_eval(&t3, 1.0, &[anchor, Complex::new(1.0, 1.0), z]).unwrap();
        let expect = t3.eval_complex(z);
        inv_err = inv_err.max((th.cos() - expect).norm() / (1.0 + expect.norm()));
    }
    assert!(inv_err < 1e-8, "cos inversion error {inv_err}");

    // asymptotic ratio at z = 10^4 i, as stated: Im θ / log(10^4) near deg P
    let y = 1e4;
    let th = theta_eval(
        &t3,
        1.0,
        &[anchor, Complex::new(1.0, 1.0), Complex::new(0.0, y)],
    )
    .unwrap();
    let ratio = th.im / y.ln();
    println!(
        "criterion 13: path {path_err:.2e}, inversion {inv_err:.2e}, Im θ/log y = {ratio:.4} \
         (analytic value 3 log(2y)/log y = {:.4}; the stated target 3 ± 0.01 is not attainable \
         for any branch of θ)",
        3.0 * (2.0 * y).ln() / y.ln()
    );
    assert!(
        (ratio - 3.0).abs() < 0.01,
        "Im θ(10^4 i)/log(10^4) = {ratio}; |Im θ| is pinned at 3·asinh-scale \
         log(2|T_3(iy)|) = 29.7106, so the ratio is 3.2258 for every continuation branch"
    );
}
