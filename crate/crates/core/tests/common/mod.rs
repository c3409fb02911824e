#![allow(dead_code)]

use nalgebra::DMatrix;
use nonlocal_core::{NonlocalCondition, Time};
use num_complex::Complex;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type C64 = Complex<f64>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Roots as eigenvalues of the companion matrix of the trimmed polynomial.
pub fn companion_roots(coeffs: &[C64]) -> Vec<C64> {
    let mut n = coeffs.len() - 1;
    while n > 0 && coeffs[n] == C64::new(0.0, 0.0) {
        n -= 1;
    }
    if n == 0 {
        return Vec::new();
    }
    let lead = coeffs[n];
    let mut m = DMatrix::<C64>::zeros(n, n);
    for k in 0..n {
        m[(0, k)] = -coeffs[n - 1 - k] / lead;
    }
    for i in 1..n {
        m[(i, i - 1)] = C64::new(1.0, 0.0);
    }
    m.schur()
        .eigenvalues()
        .expect("complex Schur form is triangular")
        .iter()
        .copied()
        .collect()
}

pub fn min_modulus(roots: &[C64]) -> f64 {
    roots.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min)
}

/// Complex coefficients with moduli spread over a few orders of magnitude.
pub fn random_poly(rng: &mut impl Rng, degree: usize) -> Vec<C64> {
    (0..=degree)
        .map(|_| {
            let r = 10f64.powf(rng.random_range(-1.0..1.0));
            let a = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
            C64::from_polar(r, a)
        })
        .collect()
}

/// One to three terms with distinct rational times in `(0, 3]`.
pub fn random_condition(rng: &mut impl Rng, complex: bool) -> NonlocalCondition<f64> {
    let n = rng.random_range(1..=3);
    let mut times: Vec<Time> = Vec::new();
    while times.len() < n {
        let den = rng.random_range(1..=4i64);
        let num = rng.random_range(1..=3 * den);
        let t = Time::new(num, den);
        if !times.contains(&t) {
            times.push(t);
        }
    }
    times.sort();
    let terms = times.into_iter().map(|t| {
        let re = rng.random_range(-2.0..2.0);
        let im = if complex { rng.random_range(-2.0..2.0) } else { 0.0 };
        (C64::new(re, im), t)
    });
    NonlocalCondition::new(terms).unwrap()
}
