//! All zeros of a dense complex polynomial by Aberth-Ehrlich simultaneous
//! iteration, started from Newton-polygon radii.

use num_complex::Complex;
use num_traits::Zero;

use super::{eval_with_derivative, trim};
use crate::error::{Error, Result};
use crate::scalar::{cplx, Real};

const MAX_SWEEPS: usize = 2000;
const POLISH_STEPS: usize = 3;

/// Every zero of the polynomial, with multiplicity. Zeros at the origin
/// (vanishing low-order coefficients) are returned exactly.
pub fn polynomial_roots<T: Real>(coeffs: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    let coeffs = trim(coeffs);
    let zeros_at_origin = coeffs.iter().position(|a| !a.is_zero()).unwrap_or(0);
    let coeffs = &coeffs[zeros_at_origin..];
    let degree = coeffs.len().saturating_sub(1);

    let mut roots = vec![Complex::zero(); zeros_at_origin];
    match degree {
        0 => {}
        1 => roots.push(-coeffs[0] / coeffs[1]),
        _ => roots.extend(aberth(coeffs)?),
    }
    Ok(roots)
}

fn aberth<T: Real>(coeffs: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    let degree = coeffs.len() - 1;
    let moduli: Vec<T> = coeffs.iter().map(|a| a.norm()).collect();
    let mut z = initial_guesses(&moduli);
    let mut done = vec![false; degree];
    let eps = T::epsilon();
    let slack = T::lit(4.0 * degree as f64 + 4.0) * eps;

    for _ in 0..MAX_SWEEPS {
        let mut all_done = true;
        for i in 0..degree {
            if done[i] {
                continue;
            }
            let (p, dp) = eval_with_derivative(coeffs, z[i]);
            // Horner rounding bound: once |p| is below it the iterate is as
            // good as the working precision allows
            if p.norm() <= slack * horner_magnitude(&moduli, z[i].norm()) {
                done[i] = true;
                continue;
            }
            all_done = false;
            let ratio = p / dp;
            let repulsion = (0..degree)
                .filter(|&j| j != i)
                .fold(Complex::zero(), |s: Complex<T>, j| s + (z[i] - z[j]).inv());
            let step = ratio / (Complex::new(T::one(), T::zero()) - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                return Err(Error::RootSolveFailure { degree });
            }
            z[i] -= step;
            if step.norm() <= eps * z[i].norm() {
                done[i] = true;
            }
        }
        if all_done {
            for root in z.iter_mut() {
                *root = polish(coeffs, *root);
            }
            return Ok(z);
        }
    }
    Err(Error::RootSolveFailure { degree })
}

fn horner_magnitude<T: Real>(moduli: &[T], r: T) -> T {
    moduli.iter().rev().fold(T::zero(), |acc, &a| acc * r + a)
}

/// A few Newton steps, kept only while they reduce the residual.
fn polish<T: Real>(coeffs: &[Complex<T>], mut z: Complex<T>) -> Complex<T> {
    let (mut p, mut dp) = eval_with_derivative(coeffs, z);
    for _ in 0..POLISH_STEPS {
        if p.is_zero() || dp.is_zero() {
            break;
        }
        let candidate = z - p / dp;
        let (cp, cdp) = eval_with_derivative(coeffs, candidate);
        if !(cp.norm() < p.norm()) {
            break;
        }
        z = candidate;
        p = cp;
        dp = cdp;
    }
    z
}

/// Radii from the upper convex hull of `(k, ln|a_k|)`: an edge from `i` to
/// `j` accounts for `j - i` zeros of modulus about
/// `(|a_i| / |a_j|)^{1/(j-i)}`, spread uniformly in angle.
fn initial_guesses<T: Real>(moduli: &[T]) -> Vec<Complex<T>> {
    let points: Vec<(usize, T)> = moduli
        .iter()
        .enumerate()
        .filter(|(_, a)| **a > T::zero())
        .map(|(k, a)| (k, a.ln()))
        .collect();

    let mut hull: Vec<(usize, T)> = Vec::with_capacity(points.len());
    for &p in &points {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = T::lit((b.0 - a.0) as f64) * (p.1 - a.1) - (b.1 - a.1) * T::lit((p.0 - a.0) as f64);
            if cross >= T::zero() {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }

    let tau = T::lit(2.0) * T::PI();
    let twist = T::lit(0.7);
    let mut guesses = Vec::with_capacity(moduli.len() - 1);
    for edge in hull.windows(2) {
        let (i, li) = edge[0];
        let (j, lj) = edge[1];
        let count = j - i;
        let radius = ((li - lj) / T::lit(count as f64)).exp();
        for m in 0..count {
            let angle = tau * T::lit(m as f64) / T::lit(count as f64) + twist + T::lit(i as f64);
            let (s, c) = angle.sin_cos();
            guesses.push(cplx(radius * c, radius * s));
        }
    }
    guesses
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(v: &[f64]) -> Vec<Complex<f64>> {
        v.iter().map(|&x| Complex::new(x, 0.0)).collect()
    }

    fn sorted_by_angle(mut v: Vec<Complex<f64>>) -> Vec<Complex<f64>> {
        v.sort_by(|a, b| (a.arg(), a.norm()).partial_cmp(&(b.arg(), b.norm())).unwrap());
        v
    }

    #[test]
    fn quadratic_roots() {
        // (z - 1)(z - 2) = 2 - 3z + z^2
        let r = sorted_by_angle(polynomial_roots(&re(&[2.0, -3.0, 1.0])).unwrap());
        let mut mods: Vec<f64> = r.iter().map(|z| z.re).collect();
        mods.sort_by(f64::total_cmp);
        assert!((mods[0] - 1.0).abs() < 1e-14 && (mods[1] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn zeros_at_origin_and_constants() {
        let r = polynomial_roots(&re(&[0.0, 0.0, 1.0, 1.0])).unwrap();
        assert_eq!(r.iter().filter(|z| z.norm() == 0.0).count(), 2);
        assert!(r.iter().any(|z| (z + 1.0).norm() < 1e-15));
        assert!(polynomial_roots(&re(&[5.0])).unwrap().is_empty());
        assert!(polynomial_roots(&re(&[5.0, 0.0])).unwrap().is_empty());
    }

    #[test]
    fn sparse_high_degree() {
        // 1 + 3 z^200: every root has modulus 3^{-1/200}
        let mut p = re(&[1.0]);
        p.extend(std::iter::repeat_n(Complex::new(0.0, 0.0), 199));
        p.push(Complex::new(3.0, 0.0));
        let r = polynomial_roots(&p).unwrap();
        assert_eq!(r.len(), 200);
        let expected = 3f64.powf(-1.0 / 200.0);
        for z in &r {
            assert!((z.norm() - expected).abs() < 1e-12);
            assert!(super::super::eval(&p, *z).norm() < 1e-12);
        }
    }

    #[test]
    fn double_root() {
        let r = polynomial_roots(&re(&[1.0, 2.0, 1.0])).unwrap();
        for z in r {
            assert!((z + 1.0).norm() < 1e-7);
        }
    }

    #[test]
    fn widely_spread_moduli() {
        // (z - 1e-3)(z - 1)(z - 1e3)
        let p = re(&[-1.0, 1001.001, -1001.001, 1.0]);
        let mut r: Vec<f64> = polynomial_roots(&p).unwrap().iter().map(|z| z.re).collect();
        r.sort_by(f64::total_cmp);
        assert!((r[0] - 1e-3).abs() < 1e-15);
        assert!((r[1] - 1.0).abs() < 1e-12);
        assert!((r[2] - 1e3).abs() < 1e-9);
    }
}
