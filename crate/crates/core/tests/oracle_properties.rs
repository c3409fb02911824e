mod common;

use std::f64::consts::{E, FRAC_PI_2, FRAC_PI_4};

use common::{random_condition, rng, C64};
use nonlocal_core::oracle::nonlocal_residual_report;
use nonlocal_core::{
    exact_verdict, existence_cross_check, mild_solution, nonlocal_residual, reduction_operator_eigenvalues,
    DiagonalOperator, NoForcing, NonlocalCondition, SectorSpectrum, Time,
};
use rand::Rng;

fn sector_point(r: &mut impl Rng, spec: &SectorSpectrum<f64>) -> C64 {
    let radius = r.random_range(0.0..5.0);
    let angle = r.random_range(-spec.theta()..=spec.theta());
    C64::new(spec.rho(), 0.0) + C64::from_polar(radius, angle)
}

fn smooth_forcing(j: usize, tau: f64) -> C64 {
    C64::new((tau + j as f64).cos(), (2.0 * tau).sin() / (1.0 + j as f64))
}

/// Classical RK4 for `u' = -lambda u + f_j` on `[0, t]`.
fn rk4(lambda: C64, j: usize, u0: C64, t: f64, steps: usize) -> C64 {
    let h = t / steps as f64;
    let rhs = |s: f64, u: C64| -lambda * u + smooth_forcing(j, s);
    let mut u = u0;
    for k in 0..steps {
        let s = k as f64 * h;
        let k1 = rhs(s, u);
        let k2 = rhs(s + h / 2.0, u + k1 * (h / 2.0));
        let k3 = rhs(s + h / 2.0, u + k2 * (h / 2.0));
        let k4 = rhs(s + h, u + k3 * h);
        u += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
    }
    u
}

#[test]
fn pde_instance_closed_form() {
    let op = DiagonalOperator::from_real([1.0]).unwrap();
    let cond = NonlocalCondition::from_real([(2.0 * E, Time::from_integer(1))]).unwrap();
    let b = reduction_operator_eigenvalues(&op, &cond);
    assert!((b[0] - C64::new(3.0, 0.0)).norm() < 1e-15);
    let u = mild_solution(&op, &cond, &[C64::new(3.0, 0.0)], &NoForcing, 0.0, 64).unwrap();
    assert!((u.value[0] - C64::new(1.0, 0.0)).norm() < 1e-12);
    assert!(nonlocal_residual(&op, &cond, &[C64::new(3.0, 0.0)], &NoForcing, 64).unwrap() < 1e-12);
}

#[test]
fn matches_time_stepping_from_computed_start() {
    let op = DiagonalOperator::from_real([1.0, 2.0]).unwrap();
    let cond = NonlocalCondition::from_real([(0.5, Time::from_integer(1))]).unwrap();
    let u0 = [C64::new(1.0, 0.0), C64::new(-0.5, 0.0)];
    let f = |_: usize, _: f64| C64::new(1.0, 0.0);
    let start = mild_solution(&op, &cond, &u0, &f, 0.0, 32).unwrap();
    let end = mild_solution(&op, &cond, &u0, &f, 0.7, 32).unwrap();
    for j in 0..2 {
        let l = op.eigenvalues()[j];
        let h = 0.7 / 2000.0;
        let mut u = start.value[j];
        for _ in 0..2000 {
            let rhs = |u: C64| -l * u + 1.0;
            let k1 = rhs(u);
            let k2 = rhs(u + k1 * (h / 2.0));
            let k3 = rhs(u + k2 * (h / 2.0));
            let k4 = rhs(u + k3 * h);
            u += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
        }
        assert!((u - end.value[j]).norm() < 1e-8, "coordinate {j}");
    }
}

#[test]
fn random_problems_against_time_stepping() {
    let mut r = rng(31);
    let spec = SectorSpectrum::new(0.5, FRAC_PI_4).unwrap();
    for _ in 0..10 {
        let eigenvalues: Vec<C64> = (0..3).map(|_| sector_point(&mut r, &spec)).collect();
        let op = DiagonalOperator::new(eigenvalues.clone()).unwrap();
        let cond = random_condition(&mut r, true);
        if !exact_verdict(&spec, &cond).unwrap().exists {
            continue;
        }
        let u0: Vec<C64> = (0..3)
            .map(|_| C64::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0)))
            .collect();
        let t = r.random_range(0.1..3.0);
        let start = mild_solution(&op, &cond, &u0, &smooth_forcing, 0.0, 64).unwrap();
        let end = mild_solution(&op, &cond, &u0, &smooth_forcing, t, 64).unwrap();
        for (j, &l) in eigenvalues.iter().enumerate() {
            let stepped = rk4(l, j, start.value[j], t, 20_000);
            assert!((stepped - end.value[j]).norm() < 1e-8 * (1.0 + stepped.norm()));
        }
    }
}

#[test]
fn residual_vanishes_on_random_problems() {
    let mut r = rng(32);
    let spec = SectorSpectrum::new(0.5, FRAC_PI_4).unwrap();
    let mut done = 0;
    while done < 100 {
        let cond = random_condition(&mut r, true);
        if !exact_verdict(&spec, &cond).unwrap().exists {
            continue;
        }
        let dim = r.random_range(1..=8);
        let op = DiagonalOperator::new((0..dim).map(|_| sector_point(&mut r, &spec)).collect()).unwrap();
        assert!(existence_cross_check(&spec, &op, &cond).unwrap());
        let u0: Vec<C64> = (0..dim)
            .map(|_| C64::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0)))
            .collect();
        let res = nonlocal_residual(&op, &cond, &u0, &smooth_forcing, 64).unwrap();
        assert!(res < 1e-8, "residual {res} for {cond:?}");
        done += 1;
    }
}

#[test]
fn quadrature_converges_under_doubling() {
    let op = DiagonalOperator::new(vec![C64::new(1.5, 0.8), C64::new(0.6, 0.0)]).unwrap();
    let cond = NonlocalCondition::from_real([(0.4, Time::new(1, 2)), (-0.3, Time::new(5, 2))]).unwrap();
    let u0 = [C64::new(1.0, 0.0), C64::new(0.0, 1.0)];
    let t = 2.3;
    let reference = mild_solution(&op, &cond, &u0, &smooth_forcing, t, 64).unwrap();
    let error = |n: usize| {
        let u = mild_solution(&op, &cond, &u0, &smooth_forcing, t, n).unwrap();
        u.value
            .iter()
            .zip(&reference.value)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    };
    let mut last = error(2);
    for n in [4, 8, 16] {
        let e = error(n);
        assert!(e <= last / 4.0 || e < 1e-12, "n = {n}: {e} vs {last}");
        last = e;
    }
    assert!(last < 1e-12);
    assert!(nonlocal_residual(&op, &cond, &u0, &smooth_forcing, 2).unwrap() < 1e-12);
}

#[test]
fn homogeneous_start_is_u0_over_b() {
    let mut r = rng(33);
    let spec = SectorSpectrum::new(0.2, 1.0).unwrap();
    for _ in 0..50 {
        let cond = random_condition(&mut r, true);
        let op = DiagonalOperator::new((0..4).map(|_| sector_point(&mut r, &spec)).collect()).unwrap();
        let b = reduction_operator_eigenvalues(&op, &cond);
        if b.iter().any(|v| v.norm() < 1e-6) {
            continue;
        }
        let u0: Vec<C64> = (0..4).map(|_| C64::new(r.random_range(-1.0..1.0), 0.0)).collect();
        let u = mild_solution(&op, &cond, &u0, &NoForcing, 0.0, 8).unwrap();
        for j in 0..4 {
            assert_eq!(u.value[j], u0[j] / b[j]);
        }
    }
}

#[test]
fn repeated_runs_are_bitwise_identical() {
    let op = DiagonalOperator::new(vec![C64::new(0.7, 0.3), C64::new(2.0, -1.0)]).unwrap();
    let cond = NonlocalCondition::from_real([(0.9, Time::new(2, 3)), (0.2, Time::new(7, 4))]).unwrap();
    let u0 = [C64::new(1.0, 0.5), C64::new(-2.0, 0.0)];
    let a = nonlocal_residual_report(&op, &cond, &u0, &smooth_forcing, 16).unwrap();
    let b = nonlocal_residual_report(&op, &cond, &u0, &smooth_forcing, 16).unwrap();
    for (x, y) in a.samples.iter().zip(&b.samples) {
        for (p, q) in x.value.iter().zip(&y.value) {
            assert_eq!(p.re.to_bits(), q.re.to_bits());
            assert_eq!(p.im.to_bits(), q.im.to_bits());
        }
    }
    assert_eq!(a.residual.to_bits(), b.residual.to_bits());
}

#[test]
fn existence_verdict_implies_invertible_reduction() {
    let mut r = rng(34);
    let mut trials = 0;
    while trials < 500 {
        let spec = SectorSpectrum::new(r.random_range(0.0..1.0), r.random_range(0.0..FRAC_PI_2)).unwrap();
        let cond = random_condition(&mut r, true);
        if !exact_verdict(&spec, &cond).unwrap().exists {
            continue;
        }
        trials += 1;
        let op = DiagonalOperator::new((0..6).map(|_| sector_point(&mut r, &spec)).collect()).unwrap();
        assert!(existence_cross_check(&spec, &op, &cond).unwrap());
    }
}

#[test]
fn constructed_singularity_is_reported() {
    let spec = SectorSpectrum::new(0.0, FRAC_PI_2).unwrap();
    let lambda = 1.3;
    let cond = NonlocalCondition::from_real([(-(lambda * 0.5f64).exp(), Time::new(1, 2))]).unwrap();
    let op = DiagonalOperator::from_real([0.4, lambda]).unwrap();
    assert!(!existence_cross_check(&spec, &op, &cond).unwrap());
    assert!(!exact_verdict(&spec, &cond).unwrap().exists);
    let two_term = NonlocalCondition::from_real([(-0.13, Time::new(1, 2)), (3.0, Time::from_integer(1))]).unwrap();
    let mut r = rng(35);
    let op = DiagonalOperator::new((0..20).map(|_| sector_point(&mut r, &spec)).collect()).unwrap();
    assert!(existence_cross_check(&spec, &op, &two_term).unwrap());
    assert!(existence_cross_check(&spec, &op, &NonlocalCondition::empty()).unwrap());
}
