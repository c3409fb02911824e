//! Zeros of `B(z) = 1 + sum_k alpha_k exp(-t_k z)` and the existence
//! verdict they decide: the mild solution exists iff no zero lies in the
//! closed spectral sector.

use std::ops::RangeInclusive;

use num_complex::Complex;
use num_traits::Zero;

use crate::condition::NonlocalCondition;
use crate::criteria::{criteria_with_circle, CriterionReport, VerdictOptions};
use crate::error::{Error, Result};
use crate::poly::polynomial_roots;
use crate::reduction::{reduce_to_polynomial, ReducedPolynomial};
use crate::scalar::{cplx, real, tiny, Real};
use crate::sector::{circumcircle, phi_inverse, SectorSpectrum};

const NEWTON_MAX_ITER: usize = 100;

/// `sum_k |alpha_k| exp(-rho t_k) <= 1`, the classical sufficient condition.
pub fn baseline_criterion<T: Real>(spec: &SectorSpectrum<T>, cond: &NonlocalCondition<T>) -> bool {
    let total = cond.terms().iter().fold(T::zero(), |s, term| {
        s + term.alpha.norm() * (-spec.rho() * NonlocalCondition::time_value(term)).exp()
    });
    total <= T::one()
}

fn single_term<T: Real>(cond: &NonlocalCondition<T>) -> Result<(Complex<T>, T)> {
    match cond.terms() {
        [term] if term.alpha.is_zero() => Err(Error::ZeroCoefficient),
        [term] => Ok((term.alpha, NonlocalCondition::time_value(term))),
        terms => Err(Error::NotApplicable { terms: terms.len() }),
    }
}

/// Closed-form zeros of `1 + alpha exp(-t z)`:
/// `-(ln|1/alpha| + i (Arg(-1/alpha) + 2 pi m)) / t` for each `m`.
pub fn kernel_single_point<T: Real>(
    cond: &NonlocalCondition<T>,
    m_range: RangeInclusive<i64>,
) -> Result<Vec<Complex<T>>> {
    let (alpha, t) = single_term(cond)?;
    let inv = -alpha.inv();
    let log_mod = alpha.norm().recip().ln();
    let arg = inv.arg();
    let tau = T::lit(2.0) * T::PI();
    Ok(m_range
        .map(|m| -cplx(log_mod, arg + tau * T::lit(m as f64)) / t)
        .collect())
}

/// `|Arg(-1/alpha)| > (ln|alpha| - t rho) tan(theta)`: necessary and sufficient
/// for existence with a single-term condition. The half-plane case reduces to
/// `ln|alpha| < t rho`.
pub fn check_single_point<T: Real>(spec: &SectorSpectrum<T>, cond: &NonlocalCondition<T>) -> Result<bool> {
    let (alpha, t) = single_term(cond)?;
    let excess = alpha.norm().ln() - t * spec.rho();
    if spec.is_half_plane() {
        return Ok(excess < T::zero());
    }
    Ok((-alpha.inv()).arg().abs() > excess * spec.theta().tan())
}

/// Newton iteration `z <- z - B(z)/B'(z)` until `|B(z)| < tol`.
pub fn refine_zero<T: Real>(cond: &NonlocalCondition<T>, seed: Complex<T>, tol: T) -> Result<Complex<T>> {
    let mut z = seed;
    let mut value = cond.eval(z);
    for _ in 0..NEWTON_MAX_ITER {
        if value.norm() < tol {
            return Ok(z);
        }
        let slope = cond.derivative(z);
        if slope.norm() < tiny() {
            break;
        }
        z -= value / slope;
        value = cond.eval(z);
    }
    if value.norm() < tol {
        return Ok(z);
    }
    Err(Error::NoConvergence {
        iterations: NEWTON_MAX_ITER,
        residual: value.norm().as_f64(),
    })
}

/// Moves `z` by a multiple of the period `2 pi i Q` so that
/// `Im z` lies in `(-pi Q, pi Q]`.
pub fn wrap_to_strip<T: Real>(z: Complex<T>, q: u64) -> Complex<T> {
    let half = T::PI() * T::lit(q as f64);
    let period = half + half;
    let shift = ((z.im - half) / period).ceil();
    cplx(z.re, z.im - shift * period)
}

/// A zero of `B` in the principal strip.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelPoint<T> {
    pub z: Complex<T>,
    /// `|B(z)|` at the reported point.
    pub residual: T,
    pub in_sector: bool,
    /// Whether Newton refinement on `B` replaced the polynomial-route value.
    pub refined: bool,
}

/// Exact verdict with the full criterion report attached.
#[derive(Debug, Clone, PartialEq)]
pub struct ExistenceVerdict<T> {
    pub exists: bool,
    /// Every zero of `B` in the strip `|Im z| <= pi Q` (one representative per
    /// period); none has `in_sector` set when `exists` holds.
    pub kernel_points: Vec<KernelPoint<T>>,
    pub criteria: CriterionReport<T>,
    pub q: u64,
}

impl<T: Real> ExistenceVerdict<T> {
    pub fn blocking_points(&self) -> impl Iterator<Item = &KernelPoint<T>> {
        self.kernel_points.iter().filter(|p| p.in_sector)
    }
}

/// Zeros of `B` in the principal strip, from the roots of the reduced
/// polynomial mapped back through `z = -Q Log(w)`. No zero of the polynomial
/// sits at `w = 0` since its constant term is one.
pub fn strip_zeros<T: Real>(reduced: &ReducedPolynomial<T>) -> Result<Vec<Complex<T>>> {
    let roots = polynomial_roots(reduced.coefficients())?;
    Ok(roots
        .into_iter()
        .map(|w| wrap_to_strip(phi_inverse(w, reduced.q()), reduced.q()))
        .collect())
}

/// Classifies the zeros against the sector, refining those close to its
/// boundary on `B` itself.
pub fn classify_zeros<T: Real>(
    spec: &SectorSpectrum<T>,
    cond: &NonlocalCondition<T>,
    q: u64,
    zeros: &[Complex<T>],
    options: &VerdictOptions<T>,
) -> Vec<KernelPoint<T>> {
    zeros
        .iter()
        .map(|&z0| {
            let margin = options.boundary_margin * (T::one() + z0.norm());
            let mut z = z0;
            let mut refined = false;
            if spec.distance_to_boundary(z0) < margin {
                if let Ok(better) = refine_zero(cond, z0, options.refine_tol) {
                    // Newton may land on a periodic copy; only a nearby zero replaces the seed
                    let better = wrap_to_strip(better, q);
                    if (better - z0).norm() <= margin {
                        z = better;
                        refined = true;
                    }
                }
            }
            KernelPoint {
                z,
                residual: cond.eval(z).norm(),
                in_sector: spec.contains(z),
                refined,
            }
        })
        .collect()
}

/// Existence from the zero locations alone, without the criterion report.
pub fn kernel_verdict<T: Real>(
    spec: &SectorSpectrum<T>,
    cond: &NonlocalCondition<T>,
    reduced: &ReducedPolynomial<T>,
    options: &VerdictOptions<T>,
) -> Result<(bool, Vec<KernelPoint<T>>)> {
    let zeros = strip_zeros(reduced)?;
    let points = classify_zeros(spec, cond, reduced.q(), &zeros, options);
    let exists = points.iter().all(|p| !p.in_sector);
    Ok((exists, points))
}

/// Decides existence exactly (up to root-solver accuracy) with default options.
pub fn exact_verdict<T: Real>(spec: &SectorSpectrum<T>, cond: &NonlocalCondition<T>) -> Result<ExistenceVerdict<T>> {
    exact_verdict_with(spec, cond, &VerdictOptions::default())
}

pub fn exact_verdict_with<T: Real>(
    spec: &SectorSpectrum<T>,
    cond: &NonlocalCondition<T>,
    options: &VerdictOptions<T>,
) -> Result<ExistenceVerdict<T>> {
    let reduced = reduce_to_polynomial(cond, options.degree_cap)?;
    let (exists, kernel_points) = kernel_verdict(spec, cond, &reduced, options)?;
    let circle = circumcircle(spec, reduced.q());
    let criteria = criteria_with_circle(spec, cond, &reduced, &circle, options);
    Ok(ExistenceVerdict {
        exists,
        kernel_points,
        criteria,
        q: reduced.q(),
    })
}

/// Zero of `B` at the apex `rho`: the coefficient `-exp(t rho)` for a single
/// term at time `t`.
pub fn apex_killing_alpha<T: Real>(rho: T, t: T) -> Complex<T> {
    real(-(t * rho).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;
    use std::f64::consts::{E, FRAC_PI_2, FRAC_PI_4, PI};

    fn single(alpha: Complex<f64>, t: Ratio<i64>) -> NonlocalCondition<f64> {
        NonlocalCondition::new([(alpha, t)]).unwrap()
    }

    fn one() -> Ratio<i64> {
        Ratio::from_integer(1)
    }

    fn two_term() -> NonlocalCondition<f64> {
        NonlocalCondition::from_real([(-0.13, Ratio::new(1, 2)), (3.0, one())]).unwrap()
    }

    #[test]
    fn single_point_kernel() {
        let c = single(real(1.0), one());
        let z = kernel_single_point(&c, 0..=0).unwrap()[0];
        assert!((z - cplx(0.0, -PI)).norm() < 1e-15);
        assert!(c.eval(z).norm() < 1e-15);

        let c = single(real(-(-2.0f64).exp()), one());
        let z = kernel_single_point(&c, 0..=0).unwrap()[0];
        assert!((z - real(-2.0)).norm() < 1e-14);

        let c = single(real(2.0 * E), one());
        let z = kernel_single_point(&c, 0..=0).unwrap()[0];
        assert!((z - cplx(1.0 + 2f64.ln(), -PI)).norm() < 1e-14);
        assert!(c.eval(z).norm() < 1e-12);

        let zs = kernel_single_point(&c, -3..=3).unwrap();
        assert_eq!(zs.len(), 7);
        assert!(zs.iter().all(|z| c.eval(*z).norm() < 1e-12));
    }

    #[test]
    fn single_point_errors() {
        assert_eq!(
            kernel_single_point(&single(real(0.0), one()), 0..=0),
            Err(Error::ZeroCoefficient)
        );
        assert_eq!(
            check_single_point(&SectorSpectrum::new(0.0, 0.5).unwrap(), &two_term()),
            Err(Error::NotApplicable { terms: 2 })
        );
    }

    #[test]
    fn single_point_inequality() {
        let ray = SectorSpectrum::new(1.0, 0.0).unwrap();
        assert_eq!(check_single_point(&ray, &single(real(2.0 * E), one())), Ok(true));
        let c = single(real(-E * E), one());
        assert_eq!(check_single_point(&ray, &c), Ok(false));
        assert!(c.eval(real(2.0)).norm() < 1e-14);
        let quarter = SectorSpectrum::new(1.0, FRAC_PI_4).unwrap();
        let c = single(real(E.powi(3)), one());
        assert_eq!(check_single_point(&quarter, &c), Ok(true));
        let z = kernel_single_point(&c, 0..=0).unwrap()[0];
        assert!(!quarter.contains(z));
    }

    #[test]
    fn newton_refinement() {
        let c = single(real(1.0), one());
        let z = refine_zero(&c, cplx(0.1, 3.0), 1e-12).unwrap();
        assert!((z - cplx(0.0, PI)).norm() < 1e-12);
        assert!(matches!(
            refine_zero(&NonlocalCondition::<f64>::empty(), cplx(0.3, 0.3), 1e-12),
            Err(Error::NoConvergence { .. })
        ));
    }

    #[test]
    fn newton_on_two_term_lands_on_a_true_zero() {
        let c = two_term();
        let z = refine_zero(&c, cplx(1.0, 3.2 + 4.0 * PI), 1e-12).unwrap();
        assert!(c.eval(z).norm() < 1e-12);
        // every zero is a periodic copy of ln 3 +- 3.06652 i (period 4 pi i)
        let w = wrap_to_strip(z, 2);
        assert!((w.re - 3f64.ln()).abs() < 1e-12);
        assert!((w.im.abs() - 3.0665194902189077).abs() < 1e-10);
    }

    #[test]
    fn strip_wrapping() {
        assert_eq!(wrap_to_strip(cplx(1.0, PI), 1).im, PI);
        assert!((wrap_to_strip(cplx(1.0, -PI), 1).im - PI).abs() < 1e-15);
        assert!((wrap_to_strip(cplx(1.0, 4.0 * PI + 0.5), 2).im - 0.5).abs() < 1e-14);
        assert!((wrap_to_strip(cplx(1.0, -7.0), 1).im - (2.0 * PI - 7.0)).abs() < 1e-14);
    }

    #[test]
    fn baseline_values() {
        let spec = SectorSpectrum::new(0.0, FRAC_PI_4).unwrap();
        assert!(!baseline_criterion(&spec, &two_term()));
        assert!(baseline_criterion(&spec, &NonlocalCondition::empty()));
        let spec = SectorSpectrum::new(1.0, FRAC_PI_4).unwrap();
        assert!(baseline_criterion(&spec, &single(real(2.0), one())));
    }

    #[test]
    fn empty_condition_exists() {
        let spec = SectorSpectrum::new(0.3, 1.0).unwrap();
        let v = exact_verdict(&spec, &NonlocalCondition::empty()).unwrap();
        assert!(v.exists);
        assert!(v.kernel_points.is_empty());
    }

    #[test]
    fn apex_zero_blocks_existence() {
        let spec = SectorSpectrum::new(1.0, FRAC_PI_4).unwrap();
        let c = single(apex_killing_alpha(1.0, 1.0), one());
        let v = exact_verdict(&spec, &c).unwrap();
        assert!(!v.exists);
        let blocking: Vec<_> = v.blocking_points().collect();
        assert_eq!(blocking.len(), 1);
        assert!((blocking[0].z - real(1.0)).norm() < 1e-12);
        assert!(c.eval(blocking[0].z).norm() < 1e-12);
    }

    #[test]
    fn two_term_verdicts_by_angle() {
        // zeros at ln 3 +- 3.06652 i: outside the sector iff tan(theta) < 3.06652 / ln 3
        let c = two_term();
        let limit = (3.0665194902189077f64 / 3f64.ln()).atan();
        for (theta, expected) in [
            (0.0, true),
            (FRAC_PI_4, true),
            (limit - 1e-6, true),
            (limit + 1e-6, false),
            (FRAC_PI_2, false),
        ] {
            let spec = SectorSpectrum::new(0.0, theta).unwrap();
            let v = exact_verdict(&spec, &c).unwrap();
            assert_eq!(v.exists, expected, "theta = {theta}");
            assert_eq!(v.kernel_points.len(), 2);
            for p in &v.kernel_points {
                assert!(p.residual < 1e-12);
            }
        }
    }
}
