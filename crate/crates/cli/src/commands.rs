//! Single-shot reports: verdicts, circle data, zero listings and oracle runs.

use std::fmt::Write as _;

use nonlocal_core::bz::{classify_zeros, strip_zeros};
use nonlocal_core::oracle::{nonlocal_residual_report, Conditioning};
use nonlocal_core::sector::Construction;
use nonlocal_core::{
    circumcircle, exact_verdict_with, reduce_to_polynomial, reduction_operator_eigenvalues, refine_zero,
    DiagonalOperator, Error, NoForcing, NonlocalCondition, SectorSpectrum,
};
use num_complex::Complex64;

use crate::config::Config;
use crate::error::CliError;
use crate::format::{complex, flag, real};

fn echo_problem(
    out: &mut String,
    spec: Option<&SectorSpectrum<f64>>,
    theta_text: Option<&str>,
    cond: &NonlocalCondition<f64>,
) {
    if let Some(spec) = spec {
        let _ = writeln!(out, "rho = {}", real(spec.rho()));
        let _ = writeln!(out, "theta = {}", real(spec.theta()));
        if let Some(t) = theta_text {
            let _ = writeln!(out, "theta_text = {t}");
        }
    }
    let alphas: Vec<String> = cond.alphas().map(complex).collect();
    let times: Vec<String> = cond.terms().iter().map(|t| t.time.to_string()).collect();
    let _ = writeln!(out, "alpha = [{}]", alphas.join(", "));
    let _ = writeln!(out, "t = [{}]", times.join(", "));
}

/// Exact verdict, kernel points and every criterion with its circle.
pub fn check(config: &Config) -> Result<String, CliError> {
    let spec = config.require_spectrum()?;
    let cond = &config.condition;
    let verdict = exact_verdict_with(spec, cond, &config.options)?;
    let mut out = String::new();
    echo_problem(&mut out, Some(spec), config.theta_text.as_deref(), cond);
    let _ = writeln!(out, "q = {}", verdict.q);
    let _ = writeln!(out, "exists = {}", flag(verdict.exists));
    let _ = writeln!(out, "kernel_points = {}", verdict.kernel_points.len());
    for (k, p) in verdict.kernel_points.iter().enumerate() {
        let _ = writeln!(
            out,
            "kernel[{}] = {}  residual = {}  in_sector = {}  refined = {}",
            k + 1,
            complex(p.z),
            real(p.residual),
            flag(p.in_sector),
            flag(p.refined)
        );
    }
    match &verdict.criteria.circle {
        Some(c) => {
            let _ = writeln!(out, "circle.center = {}", real(c.circle.center()));
            let _ = writeln!(out, "circle.radius = {}", real(c.circle.radius()));
        }
        None => {
            let _ = writeln!(out, "circle = not available");
        }
    }
    let _ = writeln!(out, "apex_radius = {}", real((-spec.rho() / verdict.q as f64).exp()));
    for (c, o) in &verdict.criteria.entries {
        let _ = writeln!(out, "criteria.{} = {}", c.name(), o);
    }
    Ok(out)
}

/// Circumcircle data. `Q` comes from the command line, the `[circle]`
/// section, or the condition's reduction, in that order, defaulting to 1.
pub fn circle(config: &Config, q_override: Option<u64>) -> Result<String, CliError> {
    let spec = config.require_spectrum()?;
    let q = match q_override.or(config.circle_q) {
        Some(q) => q,
        None => reduce_to_polynomial(&config.condition, config.options.degree_cap)?.q(),
    };
    let mut out = String::new();
    let _ = writeln!(out, "rho = {}", real(spec.rho()));
    let _ = writeln!(out, "theta = {}", real(spec.theta()));
    let _ = writeln!(out, "q = {q}");
    match circumcircle(spec, q) {
        Ok(c) => {
            let _ = writeln!(out, "apex = {}", real(c.apex));
            match c.construction {
                Construction::HalfPlane => {
                    let _ = writeln!(out, "construction = half_plane");
                    let _ = writeln!(
                        out,
                        "notice = half-angle pi/2: the image is the disk |w| <= exp(-rho/Q)"
                    );
                }
                Construction::Triangle { x_d, c1 } => {
                    let _ = writeln!(out, "construction = triangle");
                    let _ = writeln!(out, "x_d = {}", real(x_d));
                    let _ = writeln!(out, "vertex.B = {}", complex(Complex64::new(c.apex, 0.0)));
                    let _ = writeln!(out, "vertex.C1 = {}", complex(c1));
                    let _ = writeln!(out, "vertex.C2 = {}", complex(c1.conj()));
                }
            }
            let _ = writeln!(out, "center = {}", real(c.circle.center()));
            let _ = writeln!(out, "radius = {}", real(c.circle.radius()));
        }
        Err(Error::DegenerateSector) => {
            let _ = writeln!(out, "construction = degenerate");
            let _ = writeln!(
                out,
                "notice = half-angle 0: the image is the segment (0, {}], circle criteria do not apply",
                real((-spec.rho() / q as f64).exp())
            );
        }
        Err(e) => return Err(e.into()),
    }
    Ok(out)
}

/// Zeros of `B` in the principal strip with their residuals.
pub fn roots(config: &Config, polish: bool) -> Result<String, CliError> {
    let cond = &config.condition;
    let reduced = reduce_to_polynomial(cond, config.options.degree_cap)?;
    let mut zeros = strip_zeros(&reduced)?;
    let mut polished = vec![false; zeros.len()];
    if polish || config.polish {
        for (z, done) in zeros.iter_mut().zip(polished.iter_mut()) {
            if let Ok(better) = refine_zero(cond, *z, config.options.refine_tol) {
                *z = nonlocal_core::bz::wrap_to_strip(better, reduced.q());
                *done = true;
            }
        }
    }
    let mut order: Vec<usize> = (0..zeros.len()).collect();
    order.sort_by(|&a, &b| {
        zeros[a]
            .im
            .total_cmp(&zeros[b].im)
            .then(zeros[a].re.total_cmp(&zeros[b].re))
    });
    let membership = config
        .spectrum
        .as_ref()
        .map(|spec| classify_zeros(spec, cond, reduced.q(), &zeros, &config.options));

    let mut out = String::new();
    echo_problem(&mut out, config.spectrum.as_ref(), config.theta_text.as_deref(), cond);
    let _ = writeln!(out, "q = {}", reduced.q());
    let _ = writeln!(out, "degree = {}", reduced.degree());
    let _ = writeln!(out, "zeros = {}", zeros.len());
    for (k, &i) in order.iter().enumerate() {
        let z = zeros[i];
        let _ = write!(
            out,
            "zero[{}] = {}  residual = {}  relative_residual = {}  polished = {}",
            k + 1,
            complex(z),
            real(cond.eval(z).norm()),
            real(cond.eval(z).norm() / cond.eval_scale(z)),
            flag(polished[i])
        );
        if let Some(points) = &membership {
            let _ = write!(out, "  in_sector = {}", flag(points[i].in_sector));
        }
        out.push('\n');
    }
    Ok(out)
}

/// Mild solution at `0, t_1, ..., t_n` and the residual of the condition.
pub fn oracle(config: &Config) -> Result<String, CliError> {
    let settings = config
        .oracle
        .as_ref()
        .ok_or_else(|| CliError::Config("missing [oracle] section".into()))?;
    let cond = &config.condition;
    let op = DiagonalOperator::new(settings.eigenvalues.clone())?;
    let b = reduction_operator_eigenvalues(&op, cond);

    let mut out = String::new();
    echo_problem(&mut out, config.spectrum.as_ref(), config.theta_text.as_deref(), cond);
    let _ = writeln!(out, "quad_nodes = {}", config.quad_nodes);
    for (j, (l, bl)) in op.eigenvalues().iter().zip(&b).enumerate() {
        let conditioning = match Conditioning::of(*bl) {
            Conditioning::Regular => "regular",
            Conditioning::IllConditioned => "ill_conditioned",
            Conditioning::Singular => "singular",
        };
        let _ = write!(
            out,
            "eigen[{}] = {}  B = {}  conditioning = {}",
            j + 1,
            complex(*l),
            complex(*bl),
            conditioning
        );
        if let Some(spec) = &config.spectrum {
            let _ = write!(out, "  in_sector = {}", flag(spec.contains(*l)));
        }
        out.push('\n');
    }

    let report = match &settings.forcing {
        Some(f) => {
            let f = f.clone();
            nonlocal_residual_report(
                &op,
                cond,
                &settings.u0,
                &move |j: usize, _: f64| f[j],
                config.quad_nodes,
            )
        }
        None => nonlocal_residual_report(&op, cond, &settings.u0, &NoForcing, config.quad_nodes),
    };
    let report = report?;
    for sample in &report.samples {
        let values: Vec<String> = sample.value.iter().map(|v| complex(*v)).collect();
        let _ = writeln!(out, "u({}) = [{}]", real(sample.time), values.join(", "));
    }
    let _ = writeln!(out, "residual = {}", real(report.residual));
    Ok(out)
}
