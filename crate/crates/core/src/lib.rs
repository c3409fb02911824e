//! Existence and uniqueness of mild solutions to `u' + Au = f` with the
//! nonlocal condition `u(0) + sum_k alpha_k u(t_k) = u0`.
//!
//! The solution exists iff the zeros of `B(z) = 1 + sum_k alpha_k exp(-t_k z)`
//! avoid the closed sector containing the spectrum of `A`. With rational
//! times, `B` becomes a polynomial in `w = exp(-z/Q)`, which makes the zeros
//! computable and opens the way to cheaper sufficient tests on disks.
//!
//! ```
//! use nonlocal_core::{exact_verdict, NonlocalCondition64, SectorSpectrum64, Time};
//!
//! let spec = SectorSpectrum64::new(0.0, std::f64::consts::FRAC_PI_4).unwrap();
//! let cond = NonlocalCondition64::from_real([(-0.13, Time::new(1, 2)), (3.0, Time::new(1, 1))]).unwrap();
//! assert!(exact_verdict(&spec, &cond).unwrap().exists);
//! ```

// negated comparisons reject NaN on purpose
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bz;
pub mod condition;
pub mod criteria;
pub mod error;
pub mod oracle;
pub mod poly;
pub mod quadrature;
pub mod reduction;
pub mod scalar;
pub mod sector;

pub use bz::{
    baseline_criterion, check_single_point, exact_verdict, exact_verdict_with, kernel_single_point, refine_zero,
    ExistenceVerdict, KernelPoint,
};
pub use condition::{parse_time, NonlocalCondition, NonlocalTerm, Time};
pub use criteria::{
    sufficient_verdict, sufficient_verdict_with, Bound, Criterion, CriterionReport, Outcome, Proposition,
    VerdictOptions,
};
pub use error::{Error, Result};
pub use oracle::{
    existence_cross_check, mild_solution, nonlocal_residual, reduction_operator_eigenvalues, DiagonalOperator, Forcing,
    NoForcing, SolutionSample,
};
pub use reduction::{reduce_to_polynomial, ReducedPolynomial, DEFAULT_DEGREE_CAP};
pub use scalar::{Real, C};
pub use sector::{circumcircle, phi_inverse, phi_map, CircleRegion, Circumcircle, SectorSpectrum};

pub type SectorSpectrum64 = SectorSpectrum<f64>;
pub type NonlocalCondition64 = NonlocalCondition<f64>;
pub type DiagonalOperator64 = DiagonalOperator<f64>;
pub type ExistenceVerdict64 = ExistenceVerdict<f64>;
pub type Circumcircle64 = Circumcircle<f64>;
pub type Complex64 = num_complex::Complex<f64>;
