//! Rational time moments turn `B(z)` into a polynomial in `w = exp(-z/Q)`.

use num_complex::Complex;
use num_integer::Integer;
use num_traits::Zero;

use crate::condition::NonlocalCondition;
use crate::error::{Error, Result};
use crate::poly;
use crate::scalar::{real, Real};
use crate::sector::{phi_map, CircleRegion, SectorSpectrum};

/// Default cap on the reduced degree.
pub const DEFAULT_DEGREE_CAP: usize = 512;

/// `P(w) = 1 + sum_k alpha_k w^{c_k}` with `c_k = Q t_k` and `Q` the least
/// common multiple of the time denominators, so that `B(z) = P(exp(-z/Q))`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedPolynomial<T> {
    coefficients: Vec<Complex<T>>,
    q: u64,
    exponents: Vec<u64>,
}

impl<T: Real> ReducedPolynomial<T> {
    /// Dense coefficients `a_0 .. a_{c_n}` with `a_0 = 1`.
    pub fn coefficients(&self) -> &[Complex<T>] {
        &self.coefficients
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn eval(&self, w: Complex<T>) -> Complex<T> {
        poly::eval(&self.coefficients, w)
    }

    /// Coefficients of `P(exp(-rho/Q) z)`: the half-plane `Re z >= rho` maps
    /// onto the closed unit disk.
    pub fn scaled_to_apex(&self, spec: &SectorSpectrum<T>) -> Vec<Complex<T>> {
        poly::scale_argument(&self.coefficients, phi_map(real(spec.rho()), self.q))
    }

    /// Coefficients of `P(O + r z)`: the disk maps onto the unit disk.
    pub fn transform_unit(&self, circle: &CircleRegion<T>) -> Vec<Complex<T>> {
        poly::affine_substitute(&self.coefficients, circle.center(), circle.radius())
    }

    /// Coefficients of `P(O + z)`: the disk maps onto `|z| <= r`.
    pub fn transform_centered(&self, circle: &CircleRegion<T>) -> Vec<Complex<T>> {
        poly::taylor_shift(&self.coefficients, real(circle.center()))
    }
}

/// Builds the polynomial form of `B`. Fails with [`Error::DegreeOverflow`]
/// when `Q t_n` exceeds `degree_cap`.
pub fn reduce_to_polynomial<T: Real>(cond: &NonlocalCondition<T>, degree_cap: usize) -> Result<ReducedPolynomial<T>> {
    let overflow = |degree: u128| Error::DegreeOverflow {
        degree,
        cap: degree_cap,
    };
    let mut q: u128 = 1;
    for term in cond.terms() {
        let den = *term.time.denom() as u128;
        q = q.lcm(&den);
        if q > degree_cap as u128 * 1024 {
            // Q alone is already far beyond any admissible degree
            return Err(overflow(q));
        }
    }
    let exponents: Vec<u128> = cond
        .terms()
        .iter()
        .map(|term| q / *term.time.denom() as u128 * *term.time.numer() as u128)
        .collect();
    let degree = exponents.last().copied().unwrap_or(0);
    if degree > degree_cap as u128 {
        return Err(overflow(degree));
    }
    let mut coefficients = vec![Complex::zero(); degree as usize + 1];
    coefficients[0] = Complex::new(T::one(), T::zero());
    for (term, &c) in cond.terms().iter().zip(&exponents) {
        coefficients[c as usize] += term.alpha;
    }
    Ok(ReducedPolynomial {
        coefficients,
        q: q as u64,
        exponents: exponents.into_iter().map(|c| c as u64).collect(),
    })
}
