use num_complex::Complex;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Exact rational time moment `lambda / mu`, kept in lowest terms.
pub type Time = Ratio<i64>;

/// One term `alpha * u(t)` of the nonlocal condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonlocalTerm<T> {
    pub alpha: Complex<T>,
    pub time: Time,
}

/// The condition `u(0) + sum_k alpha_k u(t_k) = u0` with
/// `0 < t_1 < ... < t_n` rational.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct NonlocalCondition<T> {
    terms: Vec<NonlocalTerm<T>>,
}

impl<T: Real> NonlocalCondition<T> {
    pub fn new(terms: impl IntoIterator<Item = (Complex<T>, Time)>) -> Result<Self> {
        let terms: Vec<_> = terms
            .into_iter()
            .map(|(alpha, time)| NonlocalTerm { alpha, time })
            .collect();
        for (k, term) in terms.iter().enumerate() {
            if !term.time.is_positive() {
                return Err(Error::InvalidCondition(format!(
                    "t_{} = {} is not positive",
                    k + 1,
                    term.time
                )));
            }
            if !term.alpha.re.is_finite() || !term.alpha.im.is_finite() {
                return Err(Error::InvalidCondition(format!("alpha_{} is not finite", k + 1)));
            }
        }
        if let Some(k) = terms.windows(2).position(|w| w[0].time >= w[1].time) {
            return Err(Error::InvalidCondition(format!(
                "times must be strictly increasing, t_{} = {} >= t_{} = {}",
                k + 1,
                terms[k].time,
                k + 2,
                terms[k + 1].time
            )));
        }
        Ok(Self { terms })
    }

    /// Condition with real coefficients.
    pub fn from_real(terms: impl IntoIterator<Item = (T, Time)>) -> Result<Self> {
        Self::new(terms.into_iter().map(|(a, t)| (Complex::new(a, T::zero()), t)))
    }

    /// The classical initial condition `u(0) = u0`.
    pub fn empty() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn terms(&self) -> &[NonlocalTerm<T>] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Copy with coefficient `index` (zero-based) replaced.
    pub fn with_alpha(&self, index: usize, alpha: Complex<T>) -> Result<Self> {
        let mut out = self.clone();
        match out.terms.get_mut(index) {
            Some(term) => term.alpha = alpha,
            None => {
                return Err(Error::InvalidCondition(format!(
                    "coefficient index {} out of range for {} terms",
                    index + 1,
                    self.terms.len()
                )))
            }
        }
        Ok(out)
    }

    pub fn alphas(&self) -> impl Iterator<Item = Complex<T>> + '_ {
        self.terms.iter().map(|t| t.alpha)
    }

    /// `t_k` as a floating-point value.
    pub fn time_value(term: &NonlocalTerm<T>) -> T {
        T::lit(*term.time.numer() as f64 / *term.time.denom() as f64)
    }

    /// `B(z) = 1 + sum_k alpha_k exp(-t_k z)`.
    #[doc(alias = "eval_B")]
    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        self.terms.iter().fold(Complex::new(T::one(), T::zero()), |acc, term| {
            acc + term.alpha * (-z * Self::time_value(term)).exp()
        })
    }

    /// `1 + sum_k |alpha_k exp(-t_k z)|`, the size of the terms summed by
    /// [`eval`](Self::eval). Rounding error in `B(z)` is proportional to it.
    pub fn eval_scale(&self, z: Complex<T>) -> T {
        self.terms.iter().fold(T::one(), |acc, term| {
            acc + term.alpha.norm() * (-z.re * Self::time_value(term)).exp()
        })
    }

    /// `B'(z) = -sum_k alpha_k t_k exp(-t_k z)`.
    #[doc(alias = "eval_B_derivative")]
    pub fn derivative(&self, z: Complex<T>) -> Complex<T> {
        self.terms.iter().fold(Complex::zero(), |acc, term| {
            let t = Self::time_value(term);
            acc - term.alpha * t * (-z * t).exp()
        })
    }
}

/// Parses `"3"`, `"1/2"`, `"-4/6"` into a reduced rational.
pub fn parse_time(text: &str) -> Result<Time> {
    let text = text.trim();
    let bad = || Error::InvalidCondition(format!("cannot parse time {text:?} as a rational"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (
            n.trim().parse::<i64>().map_err(|_| bad())?,
            d.trim().parse::<i64>().map_err(|_| bad())?,
        ),
        None => (text.parse::<i64>().map_err(|_| bad())?, 1),
    };
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Ratio::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn t(n: i64, d: i64) -> Time {
        Ratio::new(n, d)
    }

    fn example() -> NonlocalCondition<f64> {
        NonlocalCondition::from_real([(-0.13, t(1, 2)), (3.0, t(1, 1))]).unwrap()
    }

    #[test]
    fn validation() {
        assert!(NonlocalCondition::<f64>::from_real([(1.0, t(0, 1))]).is_err());
        assert!(NonlocalCondition::<f64>::from_real([(1.0, t(1, 1)), (1.0, t(1, 2))]).is_err());
        assert!(NonlocalCondition::<f64>::from_real([(1.0, t(2, 4)), (1.0, t(1, 2))]).is_err());
        assert!(NonlocalCondition::<f64>::from_real([(f64::NAN, t(1, 1))]).is_err());
        let c = NonlocalCondition::<f64>::from_real([(1.0, t(2, 4))]).unwrap();
        assert_eq!(*c.terms()[0].time.denom(), 2);
    }

    #[test]
    fn empty_condition_is_one() {
        let c = NonlocalCondition::<f64>::empty();
        assert_eq!(c.eval(Complex::new(0.3, -7.0)), Complex::new(1.0, 0.0));
        assert_eq!(c.derivative(Complex::new(0.3, -7.0)), Complex::new(0.0, 0.0));
    }

    #[test]
    fn single_term_zero() {
        let c = NonlocalCondition::from_real([(1.0, t(1, 1))]).unwrap();
        assert!(c.eval(Complex::new(0.0, PI)).norm() < 1e-15);
        assert_eq!(c.derivative(Complex::new(0.0, 0.0)), Complex::new(-1.0, 0.0));
    }

    #[test]
    fn two_term_zero_pair() {
        // P(w) = 1 - 0.13 w + 3 w^2, w = exp(-z/2); |w|^2 = 1/3 gives Re z = ln 3
        let c = example();
        let w = Complex::new(0.13, (12.0 - 0.13f64 * 0.13).sqrt()) / 6.0;
        let z = -w.ln() * 2.0;
        assert!((z.re - 3f64.ln()).abs() < 1e-14);
        assert!(c.eval(z).norm() < 1e-14);
        assert!(c.eval(z.conj()).norm() < 1e-14);
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let c = example();
        assert!((c.derivative(Complex::new(0.0, 0.0)) - Complex::new(-2.935, 0.0)).norm() < 1e-15);
        let h = 1e-6;
        let fd = (c.eval(Complex::new(h, 0.0)) - c.eval(Complex::new(-h, 0.0))) / (2.0 * h);
        assert!((fd.re + 2.935).abs() < 1e-8);
    }

    #[test]
    fn time_parsing() {
        assert_eq!(parse_time("1/2").unwrap(), t(1, 2));
        assert_eq!(parse_time(" 6/4 ").unwrap(), t(3, 2));
        assert_eq!(parse_time("3").unwrap(), t(3, 1));
        assert!(parse_time("1/0").is_err());
        assert!(parse_time("0.5").is_err());
    }
}
