//! Sufficient conditions for existence, each a check that the reduced
//! polynomial has no zero in a disk covering the image of the sector.
//!
//! Three propositions are evaluated:
//!
//! 1. `P(exp(-rho/Q) z)` against the unit disk (the half-plane disk, valid
//!    for every half-angle),
//! 2. `P(O + r z)` against the unit disk, with `(O, r)` the circumcircle,
//! 3. `P(O + z)` against the disk of radius `r`, radius bounds only.
//!
//! A radius bound counts only when it strictly exceeds the disk radius: a
//! zero sitting exactly on the circle may be the image of a boundary point of
//! the closed sector.

use std::fmt;

use crate::bz::{baseline_criterion, check_single_point};
use crate::condition::NonlocalCondition;
use crate::error::{Error, Result};
use crate::poly::{self, SchurCohn};
use crate::reduction::{reduce_to_polynomial, ReducedPolynomial, DEFAULT_DEGREE_CAP};
use crate::scalar::Real;
use crate::sector::{circumcircle, Circumcircle, SectorSpectrum};

/// Which disk a check runs against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Proposition {
    P1,
    P2,
    P3,
}

/// Zero-free radius bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bound {
    Cauchy,
    Holder,
    Fujiwara,
    Linden,
}

impl Bound {
    pub const ALL: [Bound; 4] = [Bound::Cauchy, Bound::Holder, Bound::Fujiwara, Bound::Linden];

    fn name(self) -> &'static str {
        match self {
            Bound::Cauchy => "cauchy",
            Bound::Holder => "holder",
            Bound::Fujiwara => "fujiwara",
            Bound::Linden => "linden",
        }
    }
}

/// A named existence criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Criterion {
    /// `sum |alpha_k| exp(-rho t_k) <= 1`.
    Baseline,
    /// Closed-form test for a single-term condition (necessary and sufficient).
    SinglePoint,
    Schur(Proposition),
    Radius(Bound, Proposition),
    /// Any check of the proposition holds.
    Any(Proposition),
}

impl Criterion {
    /// Every criterion in report order.
    pub fn all() -> Vec<Criterion> {
        let mut out = vec![Criterion::Baseline, Criterion::SinglePoint];
        for prop in [Proposition::P1, Proposition::P2, Proposition::P3] {
            if prop != Proposition::P3 {
                out.push(Criterion::Schur(prop));
            }
            out.extend(Bound::ALL.iter().map(|&b| Criterion::Radius(b, prop)));
            out.push(Criterion::Any(prop));
        }
        out
    }

    pub fn name(&self) -> String {
        let p = |prop: &Proposition| match prop {
            Proposition::P1 => "p1",
            Proposition::P2 => "p2",
            Proposition::P3 => "p3",
        };
        match self {
            Criterion::Baseline => "baseline".into(),
            Criterion::SinglePoint => "single_point_closed_form".into(),
            Criterion::Schur(prop) => format!("schur_{}", p(prop)),
            Criterion::Radius(b, prop) => format!("radius_{}_{}", b.name(), p(prop)),
            Criterion::Any(prop) => format!("any_{}", p(prop)),
        }
    }

    pub fn from_name(name: &str) -> Option<Criterion> {
        Criterion::all().into_iter().find(|c| c.name() == name)
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Result of one criterion on one condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Holds,
    Fails,
    /// Schur-Cohn hit its tolerance band.
    Inconclusive,
    /// The check does not apply (degenerate sector, degree too small, more
    /// than one term for the closed form).
    NotApplicable,
    Error(String),
}

impl Outcome {
    pub fn holds(&self) -> bool {
        matches!(self, Outcome::Holds)
    }

    fn from_bool(b: bool) -> Self {
        if b {
            Outcome::Holds
        } else {
            Outcome::Fails
        }
    }

    /// Single-cell symbol used in sweep files: `1`, `0`, `?` or `error`.
    pub fn symbol(&self) -> &'static str {
        match self {
            Outcome::Holds => "1",
            Outcome::Fails => "0",
            Outcome::Inconclusive | Outcome::NotApplicable => "?",
            Outcome::Error(_) => "error",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Holds => f.write_str("holds"),
            Outcome::Fails => f.write_str("fails"),
            Outcome::Inconclusive => f.write_str("inconclusive"),
            Outcome::NotApplicable => f.write_str("not applicable"),
            Outcome::Error(e) => write!(f, "error: {e}"),
        }
    }
}

/// Named outcomes of every criterion, plus the circle they were computed with.
#[derive(Debug, Clone, PartialEq)]
pub struct CriterionReport<T> {
    pub entries: Vec<(Criterion, Outcome)>,
    pub circle: Option<Circumcircle<T>>,
}

impl<T: Real> CriterionReport<T> {
    pub fn get(&self, criterion: Criterion) -> Option<&Outcome> {
        self.entries.iter().find(|(c, _)| *c == criterion).map(|(_, o)| o)
    }

    /// Whether any criterion certifies existence.
    pub fn any_holds(&self) -> bool {
        self.entries.iter().any(|(_, o)| o.holds())
    }
}

/// Options shared by the verdict routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerdictOptions<T> {
    pub degree_cap: usize,
    /// Exponent `p` of the Hölder bound.
    pub holder_p: T,
    /// Newton stopping tolerance on `|B|`.
    pub refine_tol: T,
    /// Zeros closer than `margin * (1 + |z|)` to the sector boundary are
    /// refined on `B` before classification.
    pub boundary_margin: T,
}

impl<T: Real> Default for VerdictOptions<T> {
    fn default() -> Self {
        Self {
            degree_cap: DEFAULT_DEGREE_CAP,
            holder_p: T::lit(2.0),
            refine_tol: T::lit(1e-12).max(T::lit(64.0) * T::epsilon()),
            boundary_margin: T::lit(0.05),
        }
    }
}

/// Evaluates every criterion with default options.
pub fn sufficient_verdict<T: Real>(
    spec: &SectorSpectrum<T>,
    cond: &NonlocalCondition<T>,
) -> Result<CriterionReport<T>> {
    sufficient_verdict_with(spec, cond, &VerdictOptions::default())
}

pub fn sufficient_verdict_with<T: Real>(
    spec: &SectorSpectrum<T>,
    cond: &NonlocalCondition<T>,
    options: &VerdictOptions<T>,
) -> Result<CriterionReport<T>> {
    let reduced = reduce_to_polynomial(cond, options.degree_cap)?;
    let circle = circumcircle(spec, reduced.q());
    Ok(criteria_with_circle(spec, cond, &reduced, &circle, options))
}

/// Criterion evaluation on an already reduced condition. Callers that sweep
/// many conditions with the same times compute the circle once.
pub fn criteria_with_circle<T: Real>(
    spec: &SectorSpectrum<T>,
    cond: &NonlocalCondition<T>,
    reduced: &ReducedPolynomial<T>,
    circle: &Result<Circumcircle<T>>,
    options: &VerdictOptions<T>,
) -> CriterionReport<T> {
    let mut entries = Vec::with_capacity(20);
    entries.push((Criterion::Baseline, Outcome::from_bool(baseline_criterion(spec, cond))));
    let single = match check_single_point(spec, cond) {
        Ok(b) => Outcome::from_bool(b),
        Err(Error::NotApplicable { .. }) => Outcome::NotApplicable,
        // alpha_1 = 0: B is identically one
        Err(Error::ZeroCoefficient) => Outcome::Holds,
        Err(e) => Outcome::Error(e.to_string()),
    };
    entries.push((Criterion::SinglePoint, single));

    let p1 = reduced.scaled_to_apex(spec);
    push_disk_checks(&mut entries, Proposition::P1, &p1, T::one(), true, options);

    match circle {
        Ok(c) => {
            let p2 = reduced.transform_unit(&c.circle);
            push_disk_checks(&mut entries, Proposition::P2, &p2, T::one(), true, options);
            let p3 = reduced.transform_centered(&c.circle);
            push_disk_checks(&mut entries, Proposition::P3, &p3, c.circle.radius(), false, options);
        }
        Err(e) => {
            let outcome = match e {
                Error::DegenerateSector => Outcome::NotApplicable,
                other => Outcome::Error(other.to_string()),
            };
            for prop in [Proposition::P2, Proposition::P3] {
                if prop == Proposition::P2 {
                    entries.push((Criterion::Schur(prop), outcome.clone()));
                }
                for b in Bound::ALL {
                    entries.push((Criterion::Radius(b, prop), outcome.clone()));
                }
                entries.push((Criterion::Any(prop), outcome.clone()));
            }
        }
    }
    CriterionReport {
        entries,
        circle: circle.as_ref().ok().copied(),
    }
}

fn push_disk_checks<T: Real>(
    entries: &mut Vec<(Criterion, Outcome)>,
    prop: Proposition,
    coeffs: &[num_complex::Complex<T>],
    radius: T,
    with_schur: bool,
    options: &VerdictOptions<T>,
) {
    let start = entries.len();
    if with_schur {
        let outcome = match poly::schur_cohn_outside(coeffs) {
            SchurCohn::AllOutside => Outcome::Holds,
            SchurCohn::NotAllOutside => Outcome::Fails,
            SchurCohn::Inconclusive => Outcome::Inconclusive,
        };
        entries.push((Criterion::Schur(prop), outcome));
    }
    for bound in Bound::ALL {
        let value = match bound {
            Bound::Cauchy => poly::radius_cauchy(coeffs),
            Bound::Holder => poly::radius_holder(coeffs, options.holder_p),
            Bound::Fujiwara => poly::radius_fujiwara(coeffs),
            Bound::Linden => poly::radius_linden(coeffs),
        };
        let outcome = match value {
            Ok(r) => Outcome::from_bool(r > radius),
            // constant polynomial: no zeros at all
            Err(Error::DegreeZero) => Outcome::Holds,
            // zero at the center of the disk
            Err(Error::ZeroLeadingData) => Outcome::Fails,
            Err(Error::DegreeTooSmall { .. }) => Outcome::NotApplicable,
            Err(e) => Outcome::Error(e.to_string()),
        };
        entries.push((Criterion::Radius(bound, prop), outcome));
    }
    let parts = &entries[start..];
    let any = if parts.iter().any(|(_, o)| o.holds()) {
        Outcome::Holds
    } else if parts.iter().any(|(_, o)| *o == Outcome::Inconclusive) {
        Outcome::Inconclusive
    } else if parts.iter().any(|(_, o)| *o == Outcome::Fails) {
        Outcome::Fails
    } else {
        Outcome::NotApplicable
    };
    entries.push((Criterion::Any(prop), any));
}
