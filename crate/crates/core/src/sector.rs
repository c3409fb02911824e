//! Geometry of the spectral sector, its image under `w = exp(-z/Q)`, and the
//! circle circumscribing that image.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{cplx, real, Real};

/// Start of the bracket for the circumcircle equation.
const BRACKET_START: f64 = 1e-12;
/// Geometric growth of the bracket end. Consecutive positive roots of the
/// equation are spaced by a factor above 2.5, so 1.5 cannot jump over one.
const BRACKET_GROWTH: f64 = 1.5;
const BRACKET_STEPS: usize = 400;
const BISECTION_TOL: f64 = 1e-13;

/// Spectral parameters of a sectorial operator: spectrum inside
/// `{rho + r e^{i phi} : r >= 0, |phi| <= theta}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorSpectrum<T> {
    rho: T,
    theta: T,
    resolvent_constant: Option<T>,
}

impl<T: Real> SectorSpectrum<T> {
    pub fn new(rho: T, theta: T) -> Result<Self> {
        if !(rho >= T::zero()) || !rho.is_finite() {
            return Err(Error::InvalidSpectrum(format!(
                "rho must be finite and >= 0, got {rho}"
            )));
        }
        if !(theta >= T::zero() && theta <= T::FRAC_PI_2()) {
            return Err(Error::InvalidSpectrum(format!(
                "theta must lie in [0, pi/2], got {theta}"
            )));
        }
        Ok(Self {
            rho,
            theta,
            resolvent_constant: None,
        })
    }

    /// Half-plane `Re z >= rho`.
    pub fn half_plane(rho: T) -> Result<Self> {
        Self::new(rho, T::FRAC_PI_2())
    }

    /// Attaches the resolvent bound constant `M`. It is carried for reporting
    /// and never enters a verdict.
    pub fn with_resolvent_constant(mut self, m: T) -> Result<Self> {
        if !(m > T::zero()) || !m.is_finite() {
            return Err(Error::InvalidSpectrum(format!(
                "resolvent constant must be > 0, got {m}"
            )));
        }
        self.resolvent_constant = Some(m);
        Ok(self)
    }

    pub fn rho(&self) -> T {
        self.rho
    }

    pub fn theta(&self) -> T {
        self.theta
    }

    pub fn resolvent_constant(&self) -> Option<T> {
        self.resolvent_constant
    }

    /// True when the half-angle is `pi/2` up to rounding of the literal.
    pub fn is_half_plane(&self) -> bool {
        T::FRAC_PI_2() - self.theta <= T::lit(4.0) * T::epsilon()
    }

    /// True when the sector collapses to the ray `[rho, inf)`.
    pub fn is_ray(&self) -> bool {
        self.theta == T::zero()
    }

    /// Membership in the closed sector.
    pub fn contains(&self, z: Complex<T>) -> bool {
        let x = z.re - self.rho;
        if self.is_half_plane() {
            return x >= T::zero();
        }
        if x < T::zero() {
            return false;
        }
        if self.is_ray() {
            return z.im == T::zero();
        }
        z.im.abs() <= x * self.theta.tan()
    }

    /// Euclidean distance from `z` to the boundary of the sector.
    pub fn distance_to_boundary(&self, z: Complex<T>) -> T {
        let x = z.re - self.rho;
        let y = z.im.abs();
        let (s, c) = if self.is_half_plane() {
            (T::one(), T::zero())
        } else {
            self.theta.sin_cos()
        };
        // nearest point on the upper ray {t (c, s) : t >= 0}; |y| folds the lower ray onto it
        let along = x * c + y * s;
        if along <= T::zero() {
            x.hypot(y)
        } else {
            (x * s - y * c).abs()
        }
    }

    /// Upper branch of the boundary of the sector clipped to the strip
    /// `|Im z| <= Q pi`; the lower branch is its conjugate.
    pub fn boundary_point(&self, q: u64, x: T) -> Complex<T> {
        let cap = T::lit(q as f64) * T::PI();
        let height = if self.is_half_plane() {
            cap
        } else {
            let slanted = x * self.theta.tan();
            if slanted < cap {
                slanted
            } else {
                cap
            }
        };
        cplx(self.rho + x, height)
    }

    /// Membership of `w` in the image of the clipped sector under
    /// [`phi_map`]. The preimage is taken on the principal branch, so
    /// `Im z` lies in `(-Q pi, Q pi]`. `w = 0` is excluded.
    pub fn phi_region_contains(&self, q: u64, w: Complex<T>) -> bool {
        if w == Complex::new(T::zero(), T::zero()) {
            return false;
        }
        self.contains(phi_inverse(w, q))
    }
}

/// The map `w = exp(-z/Q)` turning `B(z)` into a polynomial in `w`.
pub fn phi_map<T: Real>(z: Complex<T>, q: u64) -> Complex<T> {
    (-z / T::lit(q as f64)).exp()
}

/// Principal preimage `z = -Q Log(w)` of [`phi_map`].
pub fn phi_inverse<T: Real>(w: Complex<T>, q: u64) -> Complex<T> {
    -w.ln() * T::lit(q as f64)
}

/// Disk `|w - center| <= radius` with its center on the real axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleRegion<T> {
    center: T,
    radius: T,
}

impl<T: Real> CircleRegion<T> {
    pub fn new(center: T, radius: T) -> Result<Self> {
        if !(radius > T::zero()) || !radius.is_finite() || !center.is_finite() {
            return Err(Error::InvalidSpectrum(format!(
                "circle needs finite center and positive radius, got ({center}, {radius})"
            )));
        }
        Ok(Self { center, radius })
    }

    pub fn unit() -> Self {
        Self {
            center: T::zero(),
            radius: T::one(),
        }
    }

    pub fn center(&self) -> T {
        self.center
    }

    pub fn radius(&self) -> T {
        self.radius
    }

    pub fn contains(&self, w: Complex<T>) -> bool {
        (w - real(self.center)).norm() <= self.radius
    }
}

/// How the circumscribing circle was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Construction<T> {
    /// `theta = pi/2`: the image is itself a punctured disk.
    HalfPlane,
    /// Circumcircle of the triangle `B, C1, conj(C1)`; `x_d` is the positive
    /// root of the equidistance equation.
    Triangle { x_d: T, c1: Complex<T> },
}

/// Circumscribing circle together with the data it was built from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circumcircle<T> {
    pub circle: CircleRegion<T>,
    /// Rightmost point `B = exp(-rho/Q)` of the image.
    pub apex: T,
    pub construction: Construction<T>,
}

impl<T: Real> Circumcircle<T> {
    /// The symmetric vertex pair `(C1, C2)`, if the triangle construction was used.
    pub fn vertices(&self) -> Option<(Complex<T>, Complex<T>)> {
        match self.construction {
            Construction::Triangle { c1, .. } => Some((c1, c1.conj())),
            Construction::HalfPlane => None,
        }
    }
}

/// Left-hand minus right-hand side of the equidistance equation for the
/// triangle vertex, rearranged so that no O(1) terms cancel:
///
/// `-(1 + e^{-2u}) 2 sin^2(a/2) + (1 - e^{-u})^2 + tan(theta) sin(a) (1 - e^{-2u})`
///
/// with `u = x/Q`, `a = u tan(theta)`. Near zero it behaves like
/// `u^2 / cos^2(theta) > 0`, so the sign is reliable right down to the
/// bracket start.
pub fn equidistance_residual<T: Real>(x: T, tan_theta: T, q: u64) -> T {
    let two = T::lit(2.0);
    let u = x / T::lit(q as f64);
    let a = u * tan_theta;
    let half_sin = (a / two).sin();
    let em1 = (-u).exp_m1();
    let em2 = (-two * u).exp_m1();
    -(two + em2) * two * half_sin * half_sin + em1 * em1 - tan_theta * a.sin() * em2
}

/// Smallest positive root of the equidistance equation, by geometric
/// bracketing from `1e-12` and bisection to `1e-13` in `x`.
pub fn equidistance_root<T: Real>(tan_theta: T, q: u64) -> Result<T> {
    let f = |x: T| equidistance_residual(x, tan_theta, q);
    let mut lo = T::lit(BRACKET_START);
    let mut hi = lo;
    let mut steps = 0;
    while f(hi) >= T::zero() {
        if steps == BRACKET_STEPS || !hi.is_finite() {
            return Err(Error::NoBracket { steps });
        }
        lo = hi;
        hi *= T::lit(BRACKET_GROWTH);
        steps += 1;
    }
    let tol = T::lit(BISECTION_TOL);
    while hi - lo > tol {
        let mid = lo + (hi - lo) / T::lit(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) >= T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo + (hi - lo) / T::lit(2.0))
}

/// Circle containing the image of the sector (clipped to the `2 pi Q` strip)
/// under [`phi_map`].
///
/// `theta = pi/2` yields the exact disk `|w| <= exp(-rho/Q)`; `theta = 0` has
/// no triangle to circumscribe and returns [`Error::DegenerateSector`].
pub fn circumcircle<T: Real>(spec: &SectorSpectrum<T>, q: u64) -> Result<Circumcircle<T>> {
    let apex = phi_map(real(spec.rho()), q).re;
    if spec.is_half_plane() {
        return Ok(Circumcircle {
            circle: CircleRegion::new(T::zero(), apex)?,
            apex,
            construction: Construction::HalfPlane,
        });
    }
    if spec.is_ray() {
        return Err(Error::DegenerateSector);
    }
    let tan_theta = spec.theta().tan();
    let x_d = equidistance_root(tan_theta, q)?;
    let c1 = phi_map(cplx(spec.rho() + x_d, x_d * tan_theta), q);
    let apex_sq = phi_map(real(T::lit(2.0) * spec.rho()), q).re;
    let center = (apex_sq - c1.re * c1.re - c1.im * c1.im) / (T::lit(2.0) * (apex - c1.re));
    let circle = CircleRegion::new(center, apex - center)?;
    Ok(Circumcircle {
        circle,
        apex,
        construction: Construction::Triangle { x_d, c1 },
    })
}
