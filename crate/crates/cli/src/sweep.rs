//! Parameter-plane sweeps over two real coefficients.

use std::fmt::Write as _;

use nonlocal_core::bz::kernel_verdict;
use nonlocal_core::criteria::criteria_with_circle;
use nonlocal_core::{
    circumcircle, reduce_to_polynomial, Circumcircle, NonlocalCondition, Outcome, SectorSpectrum, VerdictOptions,
};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::config::{Column, Config, Grid};
use crate::error::CliError;
use crate::format::{complex, real};

pub const DELIMITER: char = ',';

/// Everything a sweep needs, validated.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub spec: SectorSpectrum<f64>,
    pub theta_text: Option<String>,
    pub template: NonlocalCondition<f64>,
    pub grid: Grid,
    pub columns: Vec<Column>,
    pub options: VerdictOptions<f64>,
}

impl SweepSpec {
    pub fn from_config(config: &Config) -> Result<Self, CliError> {
        let spec = *config.require_spectrum()?;
        let grid = config
            .grid
            .ok_or_else(|| CliError::Config("missing sweep grid ([sweep] grid or --grid)".into()))?;
        let n = config.condition.len();
        for axis in &grid.axes {
            if axis.index >= n {
                return Err(CliError::Config(format!(
                    "sweep coefficient {} out of range for a condition with {n} terms",
                    axis.index + 1
                )));
            }
        }
        let columns = config.columns.clone().unwrap_or_else(Column::defaults);
        if columns.is_empty() {
            return Err(CliError::Config("no sweep criteria requested".into()));
        }
        Ok(Self {
            spec,
            theta_text: config.theta_text.clone(),
            template: config.condition.clone(),
            grid,
            columns,
            options: config.options,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub a: f64,
    pub b: f64,
    pub outcomes: Vec<Outcome>,
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub sweep: SweepSpec,
    pub q: u64,
    pub circle: Option<Circumcircle<f64>>,
    /// Row-major: the first axis varies slowest.
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    /// Per-cell flag of whether `column` holds, in row order.
    pub fn mask(&self, column: Column) -> Option<Vec<bool>> {
        let k = self.sweep.columns.iter().position(|c| *c == column)?;
        Some(self.rows.iter().map(|r| r.outcomes[k].holds()).collect())
    }

    pub fn cell_area(&self) -> f64 {
        self.sweep.grid.axes.iter().map(|a| a.step()).product()
    }

    /// Area of the region where `column` holds, by cell counting.
    pub fn area(&self, column: Column) -> Option<f64> {
        let count = self.mask(column)?.iter().filter(|b| **b).count();
        Some(count as f64 * self.cell_area())
    }

    pub fn header(&self) -> Vec<(String, String)> {
        let s = &self.sweep;
        let [i, j] = s.grid.axes;
        let mut h = vec![
            ("command".to_string(), "sweep".to_string()),
            ("rho".into(), real(s.spec.rho())),
            ("theta".into(), real(s.spec.theta())),
        ];
        if let Some(t) = &s.theta_text {
            h.push(("theta_text".into(), t.clone()));
        }
        if let Some(m) = s.spec.resolvent_constant() {
            h.push(("resolvent_constant".into(), real(m)));
        }
        let alphas: Vec<String> = s.template.alphas().map(complex).collect();
        let times: Vec<String> = s.template.terms().iter().map(|t| t.time.to_string()).collect();
        h.push(("alpha_template".into(), alphas.join(" ")));
        h.push(("t".into(), times.join(" ")));
        h.push(("free".into(), format!("alpha_{} alpha_{}", i.index + 1, j.index + 1)));
        h.push(("grid".into(), s.grid.to_string()));
        h.push(("range".into(), format!("[{}, {}] x [{}, {}]", i.lo, i.hi, j.lo, j.hi)));
        h.push(("q".into(), self.q.to_string()));
        match &self.circle {
            Some(c) => {
                h.push(("circle_center".into(), real(c.circle.center())));
                h.push(("circle_radius".into(), real(c.circle.radius())));
            }
            None => h.push(("circle".into(), "not applicable".into())),
        }
        h.push(("degree_cap".into(), s.options.degree_cap.to_string()));
        h.push(("holder_p".into(), s.options.holder_p.to_string()));
        let names: Vec<String> = s.columns.iter().map(Column::name).collect();
        h.push(("criteria".into(), names.join(" ")));
        h.push((
            "values".into(),
            "1 holds, 0 fails, ? inconclusive or not applicable, error failed cell".into(),
        ));
        h.push(("order".into(), format!("row-major, alpha_{} outer", i.index + 1)));
        h.push(("rows".into(), self.rows.len().to_string()));
        h
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in self.header() {
            let _ = writeln!(out, "# {k} = {v}");
        }
        let [i, j] = self.sweep.grid.axes;
        let mut cols = vec![format!("alpha_{}", i.index + 1), format!("alpha_{}", j.index + 1)];
        cols.extend(self.sweep.columns.iter().map(Column::name));
        out.push_str(&cols.join(&DELIMITER.to_string()));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&real(row.a));
            out.push(DELIMITER);
            out.push_str(&real(row.b));
            for o in &row.outcomes {
                out.push(DELIMITER);
                out.push_str(o.symbol());
            }
            out.push('\n');
        }
        out
    }
}

fn cell(sweep: &SweepSpec, circle: &nonlocal_core::Result<Circumcircle<f64>>, a: f64, b: f64) -> Vec<Outcome> {
    let [i, j] = sweep.grid.axes;
    let cond = sweep
        .template
        .with_alpha(i.index, Complex64::new(a, 0.0))
        .and_then(|c| c.with_alpha(j.index, Complex64::new(b, 0.0)));
    let failed = |e: nonlocal_core::Error| vec![Outcome::Error(e.to_string()); sweep.columns.len()];
    let cond = match cond {
        Ok(c) => c,
        Err(e) => return failed(e),
    };
    let reduced = match reduce_to_polynomial(&cond, sweep.options.degree_cap) {
        Ok(r) => r,
        Err(e) => return failed(e),
    };
    let needs_report = sweep.columns.iter().any(|c| matches!(c, Column::Criterion(_)));
    let report = needs_report.then(|| criteria_with_circle(&sweep.spec, &cond, &reduced, circle, &sweep.options));
    let exact = sweep
        .columns
        .contains(&Column::Exact)
        .then(|| kernel_verdict(&sweep.spec, &cond, &reduced, &sweep.options));
    sweep
        .columns
        .iter()
        .map(|c| match c {
            Column::Exact => match exact.as_ref().expect("computed when requested") {
                Ok((true, _)) => Outcome::Holds,
                Ok((false, _)) => Outcome::Fails,
                Err(e) => Outcome::Error(e.to_string()),
            },
            Column::Criterion(k) => report
                .as_ref()
                .and_then(|r| r.get(*k).cloned())
                .unwrap_or(Outcome::NotApplicable),
        })
        .collect()
}

/// Evaluates every grid cell, in parallel, returning rows in grid order.
pub fn run_sweep(sweep: &SweepSpec) -> Result<SweepResult, CliError> {
    let q = reduce_to_polynomial(&sweep.template, sweep.options.degree_cap)?.q();
    let circle = circumcircle(&sweep.spec, q);
    let [i, j] = sweep.grid.axes;
    let rows: Vec<SweepRow> = (0..i.n)
        .into_par_iter()
        .flat_map_iter(|ki| {
            let a = i.value(ki);
            let circle = &circle;
            (0..j.n).map(move |kj| {
                let b = j.value(kj);
                SweepRow {
                    a,
                    b,
                    outcomes: cell(sweep, circle, a, b),
                }
            })
        })
        .collect();
    Ok(SweepResult {
        sweep: sweep.clone(),
        q,
        circle: circle.ok(),
        rows,
    })
}
