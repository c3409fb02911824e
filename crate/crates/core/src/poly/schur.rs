use num_complex::Complex;
use num_traits::Zero;

use super::trim;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Half-width of the band around zero in which a (normalized) `gamma_k` is
/// treated as a boundary case.
const GAMMA_BAND: f64 = 1e-12;

/// Outcome of the Schur-Cohn test against the closed unit disk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchurCohn {
    /// Every zero lies in `|z| > 1`.
    AllOutside,
    /// Some zero lies in `|z| <= 1`.
    NotAllOutside,
    /// Some `gamma_k` fell inside the tolerance band; a zero sits on or
    /// numerically near the unit circle.
    Inconclusive,
}

/// One Schur transform `T P = conj(a_0) P - a_n P*` of a polynomial of
/// formal degree `n = coeffs.len() - 1`. The result has formal degree `n - 1`.
pub fn schur_transform<T: Real>(coeffs: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    if coeffs.len() < 2 {
        return Err(Error::DegreeZero);
    }
    let n = coeffs.len() - 1;
    let a0 = coeffs[0].conj();
    let an = coeffs[n];
    Ok((0..n).map(|k| a0 * coeffs[k] - an * coeffs[n - k].conj()).collect())
}

/// Schur-Cohn test: all zeros lie outside the closed unit disk iff
/// `gamma_k = T^k P(0) > 0` for `k = 1..=n`.
///
/// Each iterate is rescaled to unit max-norm before the next step. A positive
/// rescaling keeps every sign, and it keeps the coefficients from over- or
/// underflowing as the degree grows. The tolerance band therefore applies to
/// normalized `gamma_k`.
pub fn schur_cohn_outside<T: Real>(coeffs: &[Complex<T>]) -> SchurCohn {
    let coeffs = trim(coeffs);
    if coeffs.iter().all(|a| a.is_zero()) {
        return SchurCohn::NotAllOutside;
    }
    let mut current = normalized(coeffs);
    let band = T::lit(GAMMA_BAND);
    while current.len() > 1 {
        let next = match schur_transform(&current) {
            Ok(next) => next,
            Err(_) => unreachable!("loop guard keeps degree >= 1"),
        };
        let gamma = next[0];
        if gamma.im.abs() > band * (T::one() + gamma.re.abs()) {
            return SchurCohn::Inconclusive;
        }
        if gamma.re < -band {
            return SchurCohn::NotAllOutside;
        }
        if gamma.re <= band {
            return SchurCohn::Inconclusive;
        }
        current = normalized(&next);
    }
    SchurCohn::AllOutside
}

fn normalized<T: Real>(coeffs: &[Complex<T>]) -> Vec<Complex<T>> {
    let scale = coeffs.iter().fold(T::zero(), |m, a| m.max(a.norm()));
    if scale > T::zero() && scale.is_finite() {
        coeffs.iter().map(|&a| a / scale).collect()
    } else {
        coeffs.to_vec()
    }
}

/// `a_0 >= a_1 >= ... >= a_n > 0` for real coefficients; when it holds every
/// zero lies outside the closed unit disk.
pub fn monotone_coeff_check<T: Real>(coeffs: &[Complex<T>]) -> Result<bool> {
    if let Some(index) = coeffs.iter().position(|a| a.im != T::zero()) {
        return Err(Error::ComplexCoefficient { index });
    }
    let last_positive = coeffs.last().is_some_and(|a| a.re > T::zero());
    Ok(last_positive && coeffs.windows(2).all(|w| w[0].re >= w[1].re))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(v: &[f64]) -> Vec<Complex<f64>> {
        v.iter().map(|&x| Complex::new(x, 0.0)).collect()
    }

    #[test]
    fn transform_of_linear() {
        // conj(1) (1, 1/2) - (1/2) (1/2, 1) -> 3/4
        let t = schur_transform(&re(&[1.0, 0.5])).unwrap();
        assert_eq!(t, re(&[0.75]));
        assert_eq!(schur_transform(&re(&[2.0])), Err(Error::DegreeZero));
    }

    #[test]
    fn transform_of_real_quadratic() {
        let (a1, a2) = (0.7, -0.4);
        let t = schur_transform(&re(&[1.0, a1, a2])).unwrap();
        let expect = re(&[1.0 - a2 * a2, a1 - a2 * a1]);
        for (x, y) in t.iter().zip(&expect) {
            assert!((x - y).norm() < 1e-15);
        }
    }

    #[test]
    fn palindromic_collapses() {
        let t = schur_transform(&re(&[2.0, -1.0, 3.0, -1.0, 2.0])).unwrap();
        assert!(t.iter().all(|a| a.norm() == 0.0));
        assert_eq!(
            schur_cohn_outside(&re(&[2.0, -1.0, 3.0, -1.0, 2.0])),
            SchurCohn::Inconclusive
        );
    }

    #[test]
    fn linear_verdicts() {
        assert_eq!(schur_cohn_outside(&re(&[1.0, 0.5])), SchurCohn::AllOutside);
        assert_eq!(schur_cohn_outside(&re(&[1.0, 2.0])), SchurCohn::NotAllOutside);
        assert_eq!(schur_cohn_outside(&re(&[1.0, 1.0])), SchurCohn::Inconclusive);
        assert_eq!(schur_cohn_outside(&re(&[0.0, 1.0])), SchurCohn::NotAllOutside);
    }

    #[test]
    fn leading_zero_and_gap_handling() {
        // roots +-i sqrt(10), the first transform drops two degrees at once
        assert_eq!(schur_cohn_outside(&re(&[1.0, 0.0, 0.1])), SchurCohn::AllOutside);
        assert_eq!(schur_cohn_outside(&re(&[1.0, 0.5, 0.0, 0.0])), SchurCohn::AllOutside);
        assert_eq!(schur_cohn_outside(&re(&[3.0])), SchurCohn::AllOutside);
        assert_eq!(schur_cohn_outside(&re(&[0.0])), SchurCohn::NotAllOutside);
    }

    #[test]
    fn quadratic_inequality_pair() {
        // |a2| < 1 and |1 - a2^2| > |a1 (1 - a2)|
        for &(a1, a2) in &[
            (0.5f64, 0.3f64),
            (1.2, 0.5),
            (1.6, 0.5),
            (-0.9, -0.05),
            (0.1, 1.2),
            (3.0, 0.9),
        ] {
            let expected = a2.abs() < 1.0 && (1.0 - a2 * a2).abs() > (a1 * (1.0 - a2)).abs();
            let got = schur_cohn_outside(&re(&[1.0, a1, a2])) == SchurCohn::AllOutside;
            assert_eq!(got, expected, "a1={a1} a2={a2}");
        }
    }

    #[test]
    fn huge_degree_stays_finite() {
        let mut p = re(&[1.0]);
        p.extend(std::iter::repeat_n(Complex::new(0.0, 0.0), 39));
        p.push(Complex::new(4.0, 0.0));
        // 1 + 4 z^40 has every root at |z| = 4^{-1/40} < 1
        assert_eq!(schur_cohn_outside(&p), SchurCohn::NotAllOutside);
        let last = p.len() - 1;
        p[last] = Complex::new(0.25, 0.0);
        assert_eq!(schur_cohn_outside(&p), SchurCohn::AllOutside);
    }

    #[test]
    fn monotone_chain() {
        assert_eq!(monotone_coeff_check(&re(&[1.0, 0.5, 0.25])), Ok(true));
        assert_eq!(monotone_coeff_check(&re(&[1.0, 2.0])), Ok(false));
        assert_eq!(monotone_coeff_check(&re(&[1.0, 0.5, 0.0])), Ok(false));
        assert_eq!(
            monotone_coeff_check(&[Complex::new(1.0, 0.0), Complex::new(0.5, 0.1)]),
            Err(Error::ComplexCoefficient { index: 1 })
        );
    }
}
