//! Dense polynomials in ascending coefficient order, `a[0] + a[1] z + ...`.
//!
//! The transforms here are the building blocks of the circle criteria: an
//! affine change of variable maps a disk `|w - c| <= r` onto the unit disk
//! (or onto a disk centered at the origin), after which the Schur-Cohn test
//! and the zero-free radius bounds apply.

mod bounds;
mod roots;
mod schur;

pub use bounds::{radius_cauchy, radius_fujiwara, radius_holder, radius_linden};
pub use roots::polynomial_roots;
pub use schur::{monotone_coeff_check, schur_cohn_outside, schur_transform, SchurCohn};

use num_complex::Complex;
use num_traits::Zero;

use crate::scalar::{real, Real};

/// Horner evaluation.
pub fn eval<T: Real>(coeffs: &[Complex<T>], z: Complex<T>) -> Complex<T> {
    coeffs.iter().rev().fold(Complex::zero(), |acc, &a| acc * z + a)
}

/// Value and first derivative by a single Horner pass.
pub fn eval_with_derivative<T: Real>(coeffs: &[Complex<T>], z: Complex<T>) -> (Complex<T>, Complex<T>) {
    let mut p = Complex::zero();
    let mut dp = Complex::zero();
    for &a in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Drops exactly-zero trailing coefficients. The zero polynomial keeps its
/// constant term.
pub fn trim<T: Real>(coeffs: &[Complex<T>]) -> &[Complex<T>] {
    let len = coeffs
        .iter()
        .rposition(|a| !a.is_zero())
        .map_or(1.min(coeffs.len()), |i| i + 1);
    &coeffs[..len]
}

/// Degree after trimming; `0` for constants (including the zero polynomial).
pub fn degree<T: Real>(coeffs: &[Complex<T>]) -> usize {
    trim(coeffs).len().saturating_sub(1)
}

/// Coefficients of `P(z + shift)`, by repeated synthetic division.
pub fn taylor_shift<T: Real>(coeffs: &[Complex<T>], shift: Complex<T>) -> Vec<Complex<T>> {
    let mut b = coeffs.to_vec();
    let n = b.len().saturating_sub(1);
    for i in 0..n {
        for j in (i..n).rev() {
            let carry = b[j + 1] * shift;
            b[j] += carry;
        }
    }
    b
}

/// Coefficients of `P(scale * z)`.
pub fn scale_argument<T: Real>(coeffs: &[Complex<T>], scale: Complex<T>) -> Vec<Complex<T>> {
    let mut power = Complex::new(T::one(), T::zero());
    coeffs
        .iter()
        .map(|&a| {
            let out = a * power;
            power *= scale;
            out
        })
        .collect()
}

/// Coefficients of `P(center + radius * z)`.
pub fn affine_substitute<T: Real>(coeffs: &[Complex<T>], center: T, radius: T) -> Vec<Complex<T>> {
    scale_argument(&taylor_shift(coeffs, real(center)), real(radius))
}
