//! Zero-free radii: each function returns `R` such that the polynomial has
//! no zero with `|z| < R`.

use num_complex::Complex;
use num_traits::Zero;

use super::trim;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Moduli of the trimmed coefficients, after checking `a_0 != 0` and
/// `deg >= min_degree`.
fn moduli<T: Real>(coeffs: &[Complex<T>], min_degree: usize) -> Result<Vec<T>> {
    let coeffs = trim(coeffs);
    match coeffs.first() {
        Some(a0) if !a0.is_zero() => {}
        _ => return Err(Error::ZeroLeadingData),
    }
    let degree = coeffs.len() - 1;
    if degree == 0 {
        return Err(Error::DegreeZero);
    }
    if degree < min_degree {
        return Err(Error::DegreeTooSmall {
            degree,
            required: min_degree,
        });
    }
    Ok(coeffs.iter().map(|a| a.norm()).collect())
}

/// `|a_0| / (|a_0| + max_{k>=1} |a_k|)`.
pub fn radius_cauchy<T: Real>(coeffs: &[Complex<T>]) -> Result<T> {
    let a = moduli(coeffs, 1)?;
    let m = a[1..].iter().fold(T::zero(), |m, &x| m.max(x));
    Ok(a[0] / (a[0] + m))
}

/// Hölder-type radius `|a_0| / (|a_0|^q + M^q)^{1/q}` with
/// `M = (sum_{k>=1} |a_k|^p)^{1/p}` and `1/p + 1/q = 1`.
///
/// `p = inf` gives `q = 1` and reduces to [`radius_cauchy`].
pub fn radius_holder<T: Real>(coeffs: &[Complex<T>], p: T) -> Result<T> {
    if !(p > T::one()) {
        return Err(Error::BadExponent(p.as_f64()));
    }
    let a = moduli(coeffs, 1)?;
    if p.is_infinite() {
        return radius_cauchy(coeffs);
    }
    let q = p / (p - T::one());
    // scale by max |a_k| so the powers stay finite
    let scale = a.iter().fold(T::zero(), |m, &x| m.max(x));
    let m = a[1..]
        .iter()
        .map(|&x| (x / scale).powf(p))
        .fold(T::zero(), |s, x| s + x)
        .powf(p.recip());
    let a0 = a[0] / scale;
    Ok(a0 / (a0.powf(q) + m.powf(q)).powf(q.recip()))
}

/// Fujiwara-type radius
/// `1/2 min { |a_0/a_k|^{1/k} (0 < k < n, a_k != 0), |2 a_0 / a_n|^{1/n} }`.
pub fn radius_fujiwara<T: Real>(coeffs: &[Complex<T>]) -> Result<T> {
    let a = moduli(coeffs, 1)?;
    let n = a.len() - 1;
    let two = T::lit(2.0);
    let last = (two * a[0] / a[n]).powf(T::lit(n as f64).recip());
    let min = (1..n)
        .filter(|&k| a[k] > T::zero())
        .map(|k| (a[0] / a[k]).powf(T::lit(k as f64).recip()))
        .fold(last, |m, x| m.min(x));
    Ok(min / two)
}

/// Linden-type radius `max(1/V1, 1/V2)`, from two upper bounds on the zeros
/// of the reversed polynomial `z^n P(1/z)`:
///
/// `V1 = cos(pi/(n+1)) + |a_n|/(2|a_0|) (|a_1/a_n| + sqrt(1 + sum_{k=1}^{n-1} |a_k/a_n|^2))`
///
/// `V2 = (|a_1/a_0| + cos(pi/n))/2 + sqrt((|a_1/a_0| - cos(pi/n))^2 + (1 + |a_n/a_0| sqrt(1 + sum_{k=2}^{n-1} |a_k/a_n|^2))^2)/2`
pub fn radius_linden<T: Real>(coeffs: &[Complex<T>]) -> Result<T> {
    let a = moduli(coeffs, 2)?;
    let n = a.len() - 1;
    let (a0, an) = (a[0], a[n]);
    let half = T::lit(0.5);
    let pi = T::PI();
    let nf = T::lit(n as f64);
    let tail = |from: usize| (from..n).map(|k| (a[k] / an).powi(2)).fold(T::zero(), |s, x| s + x);

    let v1 = (pi / (nf + T::one())).cos() + an / (T::lit(2.0) * a0) * (a[1] / an + (T::one() + tail(1)).sqrt());

    let r1 = a[1] / a0;
    let cos_n = (pi / nf).cos();
    let lead = T::one() + an / a0 * (T::one() + tail(2)).sqrt();
    let v2 = half * (r1 + cos_n) + half * ((r1 - cos_n).powi(2) + lead * lead).sqrt();

    Ok(v1.recip().max(v2.recip()))
}
