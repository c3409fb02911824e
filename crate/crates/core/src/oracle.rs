//! Finite-dimensional ground truth: for a diagonal operator the mild solution
//! of `u' + Au = f` under the nonlocal condition can be written down per
//! eigencoordinate, and its existence hinges on `B(lambda_j) != 0`.

use num_complex::Complex;
use num_traits::Zero;

use crate::condition::NonlocalCondition;
use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;
use crate::scalar::Real;
use crate::sector::SectorSpectrum;

/// `|B(lambda)|` at or below this is a singular reduction operator.
pub const SINGULAR_THRESHOLD: f64 = 1e-12;
/// `|B(lambda)|` below this (and above the singular threshold) is flagged.
pub const ILL_CONDITIONED_THRESHOLD: f64 = 1e-6;

/// Operator given by its spectrum in an eigenbasis.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalOperator<T> {
    eigenvalues: Vec<Complex<T>>,
}

impl<T: Real> DiagonalOperator<T> {
    pub fn new(eigenvalues: Vec<Complex<T>>) -> Result<Self> {
        if eigenvalues.is_empty() {
            return Err(Error::InvalidOperator("no eigenvalues".into()));
        }
        if let Some(j) = eigenvalues.iter().position(|l| !l.re.is_finite() || !l.im.is_finite()) {
            return Err(Error::InvalidOperator(format!("eigenvalue {} is not finite", j + 1)));
        }
        Ok(Self { eigenvalues })
    }

    pub fn from_real(eigenvalues: impl IntoIterator<Item = T>) -> Result<Self> {
        Self::new(eigenvalues.into_iter().map(|l| Complex::new(l, T::zero())).collect())
    }

    pub fn eigenvalues(&self) -> &[Complex<T>] {
        &self.eigenvalues
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Fails unless every eigenvalue lies in the closed sector.
    pub fn check_in_sector(&self, spec: &SectorSpectrum<T>) -> Result<()> {
        match self.eigenvalues.iter().position(|l| !spec.contains(*l)) {
            Some(j) => Err(Error::InvalidOperator(format!(
                "eigenvalue {} = {} lies outside the spectral sector",
                j + 1,
                self.eigenvalues[j]
            ))),
            None => Ok(()),
        }
    }
}

/// `u(time)` in eigenbasis coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionSample<T> {
    pub time: T,
    pub value: Vec<Complex<T>>,
}

/// Forcing `f_j(tau)` in eigenbasis coordinates.
pub trait Forcing<T> {
    fn eval(&self, coordinate: usize, tau: T) -> Complex<T>;

    /// True when `f` vanishes identically, so the convolution can be skipped.
    fn is_zero(&self) -> bool {
        false
    }
}

impl<T, F: Fn(usize, T) -> Complex<T>> Forcing<T> for F {
    fn eval(&self, coordinate: usize, tau: T) -> Complex<T> {
        self(coordinate, tau)
    }
}

/// The homogeneous problem `f = 0`.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoForcing;

impl<T: Real> Forcing<T> for NoForcing {
    fn eval(&self, _: usize, _: T) -> Complex<T> {
        Complex::zero()
    }

    fn is_zero(&self) -> bool {
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conditioning {
    Regular,
    /// `1e-12 < |B| < 1e-6`.
    IllConditioned,
    Singular,
}

impl Conditioning {
    pub fn of<T: Real>(b: Complex<T>) -> Self {
        let m = b.norm().as_f64();
        if !(m > SINGULAR_THRESHOLD) {
            Conditioning::Singular
        } else if m < ILL_CONDITIONED_THRESHOLD {
            Conditioning::IllConditioned
        } else {
            Conditioning::Regular
        }
    }
}

/// `B(lambda_j)` for every eigenvalue: the spectrum of `B(A)`.
pub fn reduction_operator_eigenvalues<T: Real>(
    op: &DiagonalOperator<T>,
    cond: &NonlocalCondition<T>,
) -> Vec<Complex<T>> {
    op.eigenvalues.iter().map(|&l| cond.eval(l)).collect()
}

fn nonsingular<T: Real>(op: &DiagonalOperator<T>, cond: &NonlocalCondition<T>) -> Result<Vec<Complex<T>>> {
    let b = reduction_operator_eigenvalues(op, cond);
    for (j, v) in b.iter().enumerate() {
        if Conditioning::of(*v) == Conditioning::Singular {
            let l = op.eigenvalues[j];
            return Err(Error::SingularReduction {
                index: j,
                re: l.re.as_f64(),
                im: l.im.as_f64(),
                modulus: v.norm().as_f64(),
            });
        }
    }
    Ok(b)
}

/// Evaluates `int_0^s exp(-lambda (s - tau)) f_j(tau) dtau` with `ceil(s)`
/// unit-ish panels of the given rule.
struct Convolver<'a, T, F: ?Sized> {
    rule: GaussLegendre<T>,
    forcing: &'a F,
}

impl<T: Real, F: Forcing<T> + ?Sized> Convolver<'_, T, F> {
    fn integral(&self, lambda: Complex<T>, j: usize, s: T) -> Complex<T> {
        if s <= T::zero() || self.forcing.is_zero() {
            return Complex::zero();
        }
        let panels = s.ceil().to_usize().unwrap_or(1).max(1);
        let mut acc = Complex::zero();
        self.rule.for_each_node(T::zero(), s, panels, |tau, w| {
            acc += (-lambda * (s - tau)).exp() * self.forcing.eval(j, tau) * w;
        });
        acc
    }
}

fn validate<T: Real>(op: &DiagonalOperator<T>, u0: &[Complex<T>], quad_nodes: usize) -> Result<()> {
    if u0.len() != op.dim() {
        return Err(Error::InvalidOperator(format!(
            "initial vector has {} entries for {} eigenvalues",
            u0.len(),
            op.dim()
        )));
    }
    if quad_nodes < 2 {
        return Err(Error::InvalidOperator(format!(
            "need at least 2 quadrature nodes, got {quad_nodes}"
        )));
    }
    Ok(())
}

/// Mild solution at the requested times. Per eigencoordinate,
/// `u(t) = exp(-lambda t) w + conv(t)` with
/// `w = (u0 - sum_i alpha_i conv(t_i)) / B(lambda)`.
pub fn mild_solution_at<T: Real>(
    op: &DiagonalOperator<T>,
    cond: &NonlocalCondition<T>,
    u0: &[Complex<T>],
    f: &(impl Forcing<T> + ?Sized),
    times: &[T],
    quad_nodes: usize,
) -> Result<Vec<SolutionSample<T>>> {
    validate(op, u0, quad_nodes)?;
    if let Some(t) = times.iter().find(|t| !(**t >= T::zero()) || !t.is_finite()) {
        return Err(Error::InvalidOperator(format!(
            "sample time {t} is not a finite non-negative number"
        )));
    }
    let b = nonsingular(op, cond)?;
    let conv = Convolver {
        rule: GaussLegendre::new(quad_nodes),
        forcing: f,
    };
    let start: Vec<Complex<T>> = op
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(j, &l)| {
            let memory = cond.terms().iter().fold(Complex::zero(), |s, term| {
                s + term.alpha * conv.integral(l, j, NonlocalCondition::time_value(term))
            });
            (u0[j] - memory) / b[j]
        })
        .collect();
    Ok(times
        .iter()
        .map(|&t| SolutionSample {
            time: t,
            value: op
                .eigenvalues
                .iter()
                .enumerate()
                .map(|(j, &l)| (-l * t).exp() * start[j] + conv.integral(l, j, t))
                .collect(),
        })
        .collect())
}

pub fn mild_solution<T: Real>(
    op: &DiagonalOperator<T>,
    cond: &NonlocalCondition<T>,
    u0: &[Complex<T>],
    f: &(impl Forcing<T> + ?Sized),
    t: T,
    quad_nodes: usize,
) -> Result<SolutionSample<T>> {
    let mut samples = mild_solution_at(op, cond, u0, f, &[t], quad_nodes)?;
    Ok(samples.remove(0))
}

/// Samples at `0, t_1, ..., t_n` together with the residual of the condition.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport<T> {
    pub samples: Vec<SolutionSample<T>>,
    /// Max-norm of `u(0) + sum_k alpha_k u(t_k) - u0`.
    pub residual: T,
}

pub fn nonlocal_residual_report<T: Real>(
    op: &DiagonalOperator<T>,
    cond: &NonlocalCondition<T>,
    u0: &[Complex<T>],
    f: &(impl Forcing<T> + ?Sized),
    quad_nodes: usize,
) -> Result<ResidualReport<T>> {
    let times: Vec<T> = std::iter::once(T::zero())
        .chain(cond.terms().iter().map(NonlocalCondition::time_value))
        .collect();
    let samples = mild_solution_at(op, cond, u0, f, &times, quad_nodes)?;
    let residual = (0..op.dim())
        .map(|j| {
            let lhs = cond
                .terms()
                .iter()
                .zip(&samples[1..])
                .fold(samples[0].value[j], |s, (term, sample)| {
                    s + term.alpha * sample.value[j]
                });
            (lhs - u0[j]).norm()
        })
        .fold(T::zero(), T::max);
    Ok(ResidualReport { samples, residual })
}

pub fn nonlocal_residual<T: Real>(
    op: &DiagonalOperator<T>,
    cond: &NonlocalCondition<T>,
    u0: &[Complex<T>],
    f: &(impl Forcing<T> + ?Sized),
    quad_nodes: usize,
) -> Result<T> {
    Ok(nonlocal_residual_report(op, cond, u0, f, quad_nodes)?.residual)
}

/// Whether `B(A)` is invertible on the given spectrum. Requires every
/// eigenvalue to lie in the sector.
pub fn existence_cross_check<T: Real>(
    spec: &SectorSpectrum<T>,
    op: &DiagonalOperator<T>,
    cond: &NonlocalCondition<T>,
) -> Result<bool> {
    op.check_in_sector(spec)?;
    Ok(reduction_operator_eigenvalues(op, cond)
        .into_iter()
        .all(|b| Conditioning::of(b) != Conditioning::Singular))
}
