//! TOML configuration with source-located diagnostics.
//!
//! ```toml
//! [spectrum]
//! rho = 0.0
//! theta = "pi/2"
//!
//! [condition]
//! alpha = ["-0.13", "3"]
//! t = ["1/2", "1"]
//!
//! [sweep]
//! grid = "1:-4:4:400,2:-4:4:400"
//! criteria = ["baseline", "exact", "schur_p1"]
//!
//! [oracle]
//! eigenvalues = ["1"]
//! u0 = ["3"]
//! quad_nodes = 64
//! ```

use std::f64::consts::PI;
use std::ops::Range;

use nonlocal_core::{parse_time, Criterion, NonlocalCondition, SectorSpectrum, Time, VerdictOptions};
use num_complex::Complex64;
use serde::Deserialize;
use toml::Spanned;

use crate::error::CliError;

pub const DEFAULT_QUAD_NODES: usize = 64;

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Scalar {
    Int(i64),
    Float(f64),
    Text(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    spectrum: Option<RawSpectrum>,
    condition: Option<RawCondition>,
    sweep: Option<RawSweep>,
    oracle: Option<RawOracle>,
    circle: Option<RawCircle>,
    options: Option<RawOptions>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpectrum {
    rho: Option<Spanned<Scalar>>,
    theta: Spanned<Scalar>,
    resolvent_constant: Option<Spanned<Scalar>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCondition {
    #[serde(default)]
    alpha: Vec<Spanned<Scalar>>,
    #[serde(default)]
    t: Vec<Spanned<Scalar>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    grid: Option<Spanned<String>>,
    criteria: Option<Vec<Spanned<String>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOracle {
    eigenvalues: Vec<Spanned<Scalar>>,
    u0: Vec<Spanned<Scalar>>,
    forcing: Option<Vec<Spanned<Scalar>>>,
    quad_nodes: Option<Spanned<i64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCircle {
    q: Option<Spanned<i64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOptions {
    degree_cap: Option<Spanned<i64>>,
    holder_p: Option<Spanned<Scalar>>,
    polish: Option<bool>,
}

/// One free axis of a sweep: coefficient `index` (zero-based) over `n`
/// equispaced values from `lo` to `hi` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub index: usize,
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl Axis {
    pub fn value(&self, k: usize) -> f64 {
        if k + 1 == self.n {
            return self.hi;
        }
        self.lo + (self.hi - self.lo) * k as f64 / (self.n - 1) as f64
    }

    pub fn step(&self) -> f64 {
        (self.hi - self.lo) / (self.n - 1) as f64
    }
}

/// Two axes in the `i:lo:hi:n,j:lo:hi:n` syntax, indices one-based.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub axes: [Axis; 2],
}

impl Grid {
    pub fn parse(text: &str) -> Result<Self, String> {
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        if parts.len() != 2 {
            return Err(format!("expected two axes \"i:lo:hi:n,j:lo:hi:n\", got {text:?}"));
        }
        let axis = |s: &str| -> Result<Axis, String> {
            let f: Vec<&str> = s.split(':').map(str::trim).collect();
            if f.len() != 4 {
                return Err(format!("axis {s:?} must have the form i:lo:hi:n"));
            }
            let index: usize = f[0].parse().map_err(|_| format!("bad coefficient index {:?}", f[0]))?;
            let lo: f64 = f[1].parse().map_err(|_| format!("bad lower bound {:?}", f[1]))?;
            let hi: f64 = f[2].parse().map_err(|_| format!("bad upper bound {:?}", f[2]))?;
            let n: usize = f[3].parse().map_err(|_| format!("bad step count {:?}", f[3]))?;
            if index == 0 {
                return Err("coefficient indices are one-based".into());
            }
            if n < 2 {
                return Err(format!("step count must be at least 2, got {n}"));
            }
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(format!("range {lo}..{hi} must be finite and increasing"));
            }
            Ok(Axis {
                index: index - 1,
                lo,
                hi,
                n,
            })
        };
        let axes = [axis(parts[0])?, axis(parts[1])?];
        if axes[0].index == axes[1].index {
            return Err(format!("free coefficients must differ, both are {}", axes[0].index + 1));
        }
        Ok(Self { axes })
    }

    pub fn cells(&self) -> usize {
        self.axes[0].n * self.axes[1].n
    }
}

impl std::fmt::Display for Grid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [a, b] = &self.axes;
        write!(
            f,
            "{}:{}:{}:{},{}:{}:{}:{}",
            a.index + 1,
            a.lo,
            a.hi,
            a.n,
            b.index + 1,
            b.lo,
            b.hi,
            b.n
        )
    }
}

/// A sweep output column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Column {
    Exact,
    Criterion(Criterion),
}

impl Column {
    pub fn parse(name: &str) -> Result<Self, String> {
        if name == "exact" {
            return Ok(Column::Exact);
        }
        Criterion::from_name(name).map(Column::Criterion).ok_or_else(|| {
            let known: Vec<String> = std::iter::once("exact".to_string())
                .chain(Criterion::all().iter().map(Criterion::name))
                .collect();
            format!("unknown criterion {name:?}; known: {}", known.join(", "))
        })
    }

    pub fn name(&self) -> String {
        match self {
            Column::Exact => "exact".into(),
            Column::Criterion(c) => c.name(),
        }
    }

    pub fn parse_list(text: &str) -> Result<Vec<Self>, String> {
        text.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(Self::parse)
            .collect()
    }

    pub fn defaults() -> Vec<Self> {
        let mut out = vec![
            Column::Criterion(Criterion::Baseline),
            Column::Exact,
            Column::Criterion(Criterion::SinglePoint),
        ];
        for name in [
            "schur_p1",
            "schur_p2",
            "radius_cauchy_p3",
            "radius_holder_p3",
            "radius_fujiwara_p3",
            "radius_linden_p3",
        ] {
            out.push(Self::parse(name).expect("built-in name"));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleSettings {
    pub eigenvalues: Vec<Complex64>,
    pub u0: Vec<Complex64>,
    /// Constant forcing per eigencoordinate; zero when absent.
    pub forcing: Option<Vec<Complex64>>,
}

/// Validated configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub spectrum: Option<SectorSpectrum<f64>>,
    /// The half-angle as written, for echoing.
    pub theta_text: Option<String>,
    pub condition: NonlocalCondition<f64>,
    pub grid: Option<Grid>,
    pub columns: Option<Vec<Column>>,
    pub oracle: Option<OracleSettings>,
    pub circle_q: Option<u64>,
    pub quad_nodes: usize,
    pub options: VerdictOptions<f64>,
    pub polish: bool,
}

struct Source<'a> {
    text: &'a str,
}

impl Source<'_> {
    fn locate(&self, span: Range<usize>) -> (usize, usize) {
        let before = &self.text[..span.start.min(self.text.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.len() - before.rfind('\n').map_or(0, |p| p + 1) + 1;
        (line, column)
    }

    fn error(&self, span: Range<usize>, field: &str, message: impl std::fmt::Display) -> CliError {
        let (line, column) = self.locate(span);
        CliError::Config(format!("line {line}, column {column} ({field}): {message}"))
    }
}

fn missing(field: &str) -> CliError {
    CliError::Config(format!("missing field {field}"))
}

/// Parses `"1.5"`, `"-2e-3"`, `"1+2i"`, `"0.5-1e-2i"`, `"3i"`.
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("cannot parse {text:?} as \"re\" or \"re+imi\"");
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other,
    };
    let re: f64 = re.parse().map_err(|_| bad())?;
    let im: f64 = im.parse().map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

/// Parses a real number or a multiple of pi: `"pi/3"`, `"2pi/5"`, `"0.5pi"`.
pub fn parse_angle(text: &str) -> Result<f64, String> {
    let s: String = text
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect::<String>()
        .to_lowercase();
    let bad = || format!("cannot parse angle {text:?}; use a number or a form like \"pi/3\"");
    let Some(pos) = s.find("pi") else {
        return s.parse().map_err(|_| bad());
    };
    let factor = match s[..pos].trim_end_matches('*') {
        "" => 1.0,
        "-" => -1.0,
        f => f.parse::<f64>().map_err(|_| bad())?,
    };
    let rest = &s[pos + 2..];
    let divisor = match rest {
        "" => 1.0,
        r => r.strip_prefix('/').ok_or_else(bad)?.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(factor * PI / divisor)
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let src = Source { text };
        let raw: RawConfig =
            toml::from_str(text).map_err(|e| CliError::Config(e.to_string().trim_end().to_string()))?;

        let real = |v: &Spanned<Scalar>, field: &str| -> Result<f64, CliError> {
            match v.get_ref() {
                Scalar::Int(i) => Ok(*i as f64),
                Scalar::Float(x) => Ok(*x),
                Scalar::Text(s) => s
                    .trim()
                    .parse()
                    .map_err(|_| src.error(v.span(), field, format!("{s:?} is not a number"))),
            }
        };
        let complex = |v: &Spanned<Scalar>, field: &str| -> Result<Complex64, CliError> {
            match v.get_ref() {
                Scalar::Int(i) => Ok(Complex64::new(*i as f64, 0.0)),
                Scalar::Float(x) => Ok(Complex64::new(*x, 0.0)),
                Scalar::Text(s) => parse_complex(s).map_err(|m| src.error(v.span(), field, m)),
            }
        };
        let positive = |v: &Spanned<i64>, field: &str| -> Result<usize, CliError> {
            usize::try_from(*v.get_ref())
                .ok()
                .filter(|n| *n > 0)
                .ok_or_else(|| src.error(v.span(), field, "must be a positive integer"))
        };

        let (spectrum, theta_text) = match &raw.spectrum {
            None => (None, None),
            Some(s) => {
                let rho = match &s.rho {
                    Some(v) => real(v, "spectrum.rho")?,
                    None => 0.0,
                };
                let (theta, theta_text) = match s.theta.get_ref() {
                    Scalar::Int(i) => (*i as f64, i.to_string()),
                    Scalar::Float(x) => (*x, x.to_string()),
                    Scalar::Text(t) => (
                        parse_angle(t).map_err(|m| src.error(s.theta.span(), "spectrum.theta", m))?,
                        t.clone(),
                    ),
                };
                let mut spec = SectorSpectrum::new(rho, theta).map_err(|e| {
                    let span = if rho.is_finite() && rho >= 0.0 {
                        s.theta.span()
                    } else {
                        s.rho.as_ref().map_or(s.theta.span(), |v| v.span())
                    };
                    src.error(span, "spectrum", e)
                })?;
                if let Some(m) = &s.resolvent_constant {
                    let value = real(m, "spectrum.resolvent_constant")?;
                    spec = spec
                        .with_resolvent_constant(value)
                        .map_err(|e| src.error(m.span(), "spectrum.resolvent_constant", e))?;
                }
                (Some(spec), Some(theta_text))
            }
        };

        let condition = match &raw.condition {
            None => NonlocalCondition::empty(),
            Some(c) => {
                if c.alpha.len() != c.t.len() {
                    let span = c.t.first().or(c.alpha.first()).map_or(0..0, |v| v.span());
                    return Err(src.error(
                        span,
                        "condition",
                        format!("{} coefficients but {} times", c.alpha.len(), c.t.len()),
                    ));
                }
                let mut terms = Vec::with_capacity(c.alpha.len());
                for (k, (a, t)) in c.alpha.iter().zip(&c.t).enumerate() {
                    let alpha = complex(a, &format!("condition.alpha[{}]", k + 1))?;
                    let field = format!("condition.t[{}]", k + 1);
                    let time: Time = match t.get_ref() {
                        Scalar::Int(i) => Time::from_integer(*i),
                        Scalar::Text(s) => parse_time(s).map_err(|e| src.error(t.span(), &field, e))?,
                        Scalar::Float(x) => {
                            return Err(src.error(
                                t.span(),
                                &field,
                                format!("{x} is a float; write times as rationals like \"1/2\""),
                            ))
                        }
                    };
                    terms.push((alpha, time));
                }
                NonlocalCondition::new(terms)
                    .map_err(|e| src.error(c.t.first().map_or(0..0, |v| v.span()), "condition", e))?
            }
        };

        let mut grid = None;
        let mut columns = None;
        if let Some(s) = &raw.sweep {
            if let Some(g) = &s.grid {
                grid = Some(Grid::parse(g.get_ref()).map_err(|m| src.error(g.span(), "sweep.grid", m))?);
            }
            if let Some(list) = &s.criteria {
                let mut out = Vec::with_capacity(list.len());
                for (k, name) in list.iter().enumerate() {
                    out.push(
                        Column::parse(name.get_ref().trim())
                            .map_err(|m| src.error(name.span(), &format!("sweep.criteria[{}]", k + 1), m))?,
                    );
                }
                columns = Some(out);
            }
        }

        let mut quad_nodes = DEFAULT_QUAD_NODES;
        let oracle = match &raw.oracle {
            None => None,
            Some(o) => {
                let list = |items: &[Spanned<Scalar>], name: &str| -> Result<Vec<Complex64>, CliError> {
                    items
                        .iter()
                        .enumerate()
                        .map(|(k, v)| complex(v, &format!("oracle.{name}[{}]", k + 1)))
                        .collect()
                };
                let eigenvalues = list(&o.eigenvalues, "eigenvalues")?;
                let u0 = list(&o.u0, "u0")?;
                let forcing = o.forcing.as_deref().map(|f| list(f, "forcing")).transpose()?;
                let first = |items: &[Spanned<Scalar>]| items.first().map_or(0..0, |v| v.span());
                if eigenvalues.is_empty() {
                    return Err(missing("oracle.eigenvalues (non-empty)"));
                }
                if u0.len() != eigenvalues.len() {
                    return Err(src.error(
                        first(&o.u0),
                        "oracle.u0",
                        format!("{} entries for {} eigenvalues", u0.len(), eigenvalues.len()),
                    ));
                }
                if let (Some(f), Some(raw_f)) = (&forcing, &o.forcing) {
                    if f.len() != eigenvalues.len() {
                        return Err(src.error(
                            first(raw_f),
                            "oracle.forcing",
                            format!("{} entries for {} eigenvalues", f.len(), eigenvalues.len()),
                        ));
                    }
                }
                if let Some(n) = &o.quad_nodes {
                    quad_nodes = positive(n, "oracle.quad_nodes")?;
                    if quad_nodes < 2 {
                        return Err(src.error(n.span(), "oracle.quad_nodes", "need at least 2 nodes"));
                    }
                }
                Some(OracleSettings {
                    eigenvalues,
                    u0,
                    forcing,
                })
            }
        };

        let circle_q = match raw.circle.as_ref().and_then(|c| c.q.as_ref()) {
            Some(q) => Some(positive(q, "circle.q")? as u64),
            None => None,
        };

        let mut options = VerdictOptions::default();
        let mut polish = false;
        if let Some(o) = &raw.options {
            if let Some(cap) = &o.degree_cap {
                options.degree_cap = positive(cap, "options.degree_cap")?;
            }
            if let Some(p) = &o.holder_p {
                let value = match p.get_ref() {
                    Scalar::Text(t) if t.trim() == "inf" => f64::INFINITY,
                    _ => real(p, "options.holder_p")?,
                };
                if !(value > 1.0) {
                    return Err(src.error(p.span(), "options.holder_p", "Hölder exponent must exceed 1"));
                }
                options.holder_p = value;
            }
            polish = o.polish.unwrap_or(false);
        }

        Ok(Self {
            spectrum,
            theta_text,
            condition,
            grid,
            columns,
            oracle,
            circle_q,
            quad_nodes,
            options,
            polish,
        })
    }

    pub fn load(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config(m) => CliError::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn require_spectrum(&self) -> Result<&SectorSpectrum<f64>, CliError> {
        self.spectrum.as_ref().ok_or_else(|| missing("[spectrum] section"))
    }
}
