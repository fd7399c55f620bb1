//! Symmetric cumulative distribution functions.
//!
//! Every value of [`SymmetricCdf`] is a right-continuous, monotone
//! non-decreasing function on the real line with limits 0 and 1 and the
//! symmetry `G(x) = 1 - G(-x)`. The integral representations verified by
//! this crate hold for any member of that class; the built-ins here cover
//! step, piecewise-linear, heavy-tailed, compactly supported, and smooth
//! instances, each carrying the breakpoint metadata quadrature needs to
//! split panels at jumps and kinks.
//!
//! The moment identity `int_{-a}^{a} x^(2n) G(x) dx = a^(2n+1) / (2n+1)`,
//! which holds for every member of the class and every `a > 0`, is exposed
//! as [`moment_check`] and doubles as a cheap validation oracle.

mod erf;

use std::sync::Arc;

use thiserror::Error;

use crate::quadrature::{self, Integrand, QuadratureError};

/// Half-width beyond which an unbounded CDF must be within `1e-6` of its
/// limit during validation.
const LIMIT_PROBE: f64 = 1e6;

#[derive(Debug, Error)]
pub enum CdfError {
    #[error("unknown cdf name: {0:?}")]
    UnknownName(String),
    #[error("bad cdf parameter: {0}")]
    BadParameter(String),
}

#[derive(Clone)]
enum Kind {
    Rademacher,
    UniformLinear,
    Cauchy,
    Arcsine,
    Normal,
    HyperbolicSecant,
    UQuadratic { alpha: f64 },
    SmoothedUniform,
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

/// A right-continuous, non-decreasing function with limits 0 and 1 and
/// `G(x) = 1 - G(-x)`, plus the metadata quadrature needs.
#[derive(Clone)]
pub struct SymmetricCdf {
    name: String,
    kind: Kind,
    breakpoints: Vec<f64>,
    params: Vec<(String, f64)>,
    /// `Some(s)` when `G` is exactly 0 below `-s` and 1 above `s`.
    support_radius: Option<f64>,
}

impl std::fmt::Debug for SymmetricCdf {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SymmetricCdf")
            .field("name", &self.name)
            .field("params", &self.params)
            .field("breakpoints", &self.breakpoints)
            .finish()
    }
}

impl SymmetricCdf {
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Display label including parameters, e.g. `u_quadratic(alpha=2)`.
    pub fn label(&self) -> String {
        if self.params.is_empty() {
            self.name.clone()
        } else {
            let inner: Vec<String> = self
                .params
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            format!("{}({})", self.name, inner.join(","))
        }
    }

    pub fn params(&self) -> &[(String, f64)] {
        &self.params
    }

    /// Interior points where the function jumps or loses smoothness.
    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    /// `Some(s)` when the function is constant outside `[-s, s]`.
    pub fn support_radius(&self) -> Option<f64> {
        self.support_radius
    }

    pub fn eval(&self, x: f64) -> f64 {
        match &self.kind {
            Kind::Rademacher => {
                if x < -1.0 {
                    0.0
                } else if x < 1.0 {
                    0.5
                } else {
                    1.0
                }
            }
            Kind::UniformLinear => (0.5 * (x + 1.0)).clamp(0.0, 1.0),
            Kind::Cauchy => 0.5 + x.atan() / std::f64::consts::PI,
            Kind::Arcsine => {
                if x <= -1.0 {
                    0.0
                } else if x >= 1.0 {
                    1.0
                } else {
                    0.5 + x.asin() / std::f64::consts::PI
                }
            }
            Kind::Normal => 0.5 * (1.0 + erf::erf(x / std::f64::consts::SQRT_2)),
            Kind::HyperbolicSecant => std::f64::consts::FRAC_2_PI * x.exp().atan(),
            Kind::UQuadratic { alpha } => {
                if x <= -alpha {
                    0.0
                } else if x >= *alpha {
                    1.0
                } else {
                    let t = x / alpha;
                    0.5 + 0.5 * t * t * t
                }
            }
            Kind::SmoothedUniform => {
                if x <= -1.0 {
                    0.0
                } else if x >= 1.0 {
                    1.0
                } else {
                    0.5 * (1.0 + x + (std::f64::consts::PI * x).sin() / std::f64::consts::PI)
                }
            }
            Kind::Custom(f) => f(x),
        }
    }

    /// Wraps an arbitrary function with metadata, without validating it;
    /// run [`validate`] to check class membership.
    pub fn custom(
        name: &str,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        breakpoints: &[f64],
        support_radius: Option<f64>,
    ) -> Self {
        Self {
            name: name.to_string(),
            kind: Kind::Custom(Arc::new(f)),
            breakpoints: breakpoints.to_vec(),
            params: Vec::new(),
            support_radius,
        }
    }
}

/// Names accepted by [`make_builtin`].
pub const BUILTIN_NAMES: [&str; 8] = [
    "rademacher",
    "uniform_linear",
    "cauchy",
    "arcsine",
    "normal",
    "hyperbolic_secant",
    "u_quadratic",
    "smoothed_uniform",
];

/// Constructs a built-in CDF by name.
///
/// `u_quadratic` takes an `alpha` parameter (nonzero; the support half-width
/// is `|alpha|`, defaulting to 1). No other built-in accepts parameters.
pub fn make_builtin(name: &str, params: &[(&str, f64)]) -> Result<SymmetricCdf, CdfError> {
    let no_params = |kind: Kind, breakpoints: &[f64], support: Option<f64>| {
        if params.is_empty() {
            Ok(SymmetricCdf {
                name: name.to_string(),
                kind,
                breakpoints: breakpoints.to_vec(),
                params: Vec::new(),
                support_radius: support,
            })
        } else {
            Err(CdfError::BadParameter(format!(
                "{name} takes no parameters"
            )))
        }
    };
    match name {
        "rademacher" => no_params(Kind::Rademacher, &[-1.0, 1.0], Some(1.0)),
        "uniform_linear" => no_params(Kind::UniformLinear, &[-1.0, 1.0], Some(1.0)),
        "cauchy" => no_params(Kind::Cauchy, &[], None),
        "arcsine" => no_params(Kind::Arcsine, &[-1.0, 1.0], Some(1.0)),
        "normal" => no_params(Kind::Normal, &[], None),
        "hyperbolic_secant" => no_params(Kind::HyperbolicSecant, &[], None),
        "smoothed_uniform" => no_params(Kind::SmoothedUniform, &[-1.0, 1.0], Some(1.0)),
        "u_quadratic" => {
            let mut alpha = 1.0f64;
            for (k, v) in params {
                if *k == "alpha" {
                    alpha = *v;
                } else {
                    return Err(CdfError::BadParameter(format!(
                        "u_quadratic does not take {k:?}"
                    )));
                }
            }
            if alpha == 0.0 || !alpha.is_finite() {
                return Err(CdfError::BadParameter(
                    "u_quadratic requires a nonzero finite alpha".into(),
                ));
            }
            // the support half-width is |alpha|; the sign carries no
            // information for a symmetric distribution
            let a = alpha.abs();
            Ok(SymmetricCdf {
                name: name.to_string(),
                kind: Kind::UQuadratic { alpha: a },
                breakpoints: vec![-a, a],
                params: vec![("alpha".to_string(), a)],
                support_radius: Some(a),
            })
        }
        other => Err(CdfError::UnknownName(other.to_string())),
    }
}

/// Parses a CLI-style spec `name[:key=value[,key=value...]]`, such as
/// `cauchy` or `u_quadratic:alpha=2`.
pub fn parse_spec(spec: &str) -> Result<SymmetricCdf, CdfError> {
    let (name, rest) = match spec.split_once(':') {
        Some((n, r)) => (n, Some(r)),
        None => (spec, None),
    };
    let mut params: Vec<(&str, f64)> = Vec::new();
    if let Some(rest) = rest {
        for item in rest.split(',') {
            let (k, v) = item.split_once('=').ok_or_else(|| {
                CdfError::BadParameter(format!("expected key=value, got {item:?}"))
            })?;
            let v: f64 = v.trim().parse().map_err(|_| {
                CdfError::BadParameter(format!("{k} value {v:?} is not a number"))
            })?;
            params.push((k.trim(), v));
        }
    }
    make_builtin(name.trim(), &params)
}

/// Outcome of [`validate`]: worst observed violation of each class
/// invariant, and whether all of them stay within tolerance.
#[derive(Debug, Clone, Copy)]
pub struct ValidationReport {
    /// Worst excursion of `G(x)` outside `[0, 1]`.
    pub max_range_violation: f64,
    /// Worst decrease `G(x_i) - G(x_{i+1})` over the ordered grid.
    pub max_monotonicity_violation: f64,
    /// Worst `|G(x) + G(-x) - 1|` over non-breakpoint grid points.
    pub max_symmetry_violation: f64,
    /// Worst distance from the required limit at the probe points.
    pub max_limit_violation: f64,
    pub pass: bool,
}

/// Checks the four class invariants on a symmetric grid of `grid_size`
/// points that avoids breakpoints. Violations are reported, not thrown.
pub fn validate(cdf: &SymmetricCdf, grid_size: usize) -> ValidationReport {
    assert!(grid_size >= 100, "validation needs at least 100 grid points");
    let half_width = cdf
        .support_radius
        .or_else(|| {
            cdf.breakpoints
                .iter()
                .map(|b| b.abs())
                .fold(None, |m: Option<f64>, b| Some(m.map_or(b, |m| m.max(b))))
        })
        .unwrap_or(6.0)
        + 2.0;

    let near_breakpoint = |x: f64| {
        cdf.breakpoints
            .iter()
            .any(|&b| (x - b).abs() <= 1e-9 * (1.0 + b.abs()))
    };

    // Half-offset symmetric grid: x_j and -x_j are both sampled, and the
    // offset keeps lattice points off the breakpoints.
    let n = grid_size;
    let step = 2.0 * half_width / n as f64;
    let mut xs: Vec<f64> = Vec::with_capacity(n);
    for j in 0..n.div_ceil(2) {
        let x = (j as f64 + 0.5) * step;
        xs.push(x);
    }

    let mut range = 0.0f64;
    let mut symmetry = 0.0f64;
    for &x in &xs {
        for v in [cdf.eval(x), cdf.eval(-x)] {
            range = range.max((-v).max(v - 1.0)).max(0.0);
        }
        if !near_breakpoint(x) {
            symmetry = symmetry.max((cdf.eval(x) + cdf.eval(-x) - 1.0).abs());
        }
    }

    let mut monotonicity = 0.0f64;
    let mut prev = f64::NEG_INFINITY;
    let mut j = xs.len();
    let mut ordered: Vec<f64> = Vec::with_capacity(n);
    while j > 0 {
        j -= 1;
        ordered.push(-xs[j]);
    }
    ordered.extend(xs.iter().copied());
    for &x in &ordered {
        let v = cdf.eval(x);
        if prev.is_finite() {
            monotonicity = monotonicity.max(prev - v);
        }
        prev = v;
    }

    let limit = match cdf.support_radius {
        Some(s) => {
            let beyond = s + 1.0;
            cdf.eval(-beyond).abs().max((1.0 - cdf.eval(beyond)).abs())
        }
        None => cdf
            .eval(-LIMIT_PROBE)
            .abs()
            .max((1.0 - cdf.eval(LIMIT_PROBE)).abs()),
    };

    // the monotonicity band absorbs evaluator round-off (the erf-based
    // normal CDF is accurate to 1e-14 absolute, not to the last bit)
    let pass = range <= 1e-15 && monotonicity <= 1e-14 && symmetry <= 1e-12 && limit <= 1e-6;
    ValidationReport {
        max_range_violation: range,
        max_monotonicity_violation: monotonicity,
        max_symmetry_violation: symmetry,
        max_limit_violation: limit,
        pass,
    }
}

/// Integrates `x^(2n) G(x)` over `[-a, a]` and returns it with the exact
/// class value `a^(2n+1) / (2n+1)`; the two must agree for any member.
pub fn moment_check(
    cdf: &SymmetricCdf,
    a: f64,
    n: u32,
) -> Result<(f64, f64), QuadratureError> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(QuadratureError::BadInput(format!(
            "moment bound must be positive, got {a}"
        )));
    }
    if n > 8 {
        return Err(QuadratureError::BadInput(format!(
            "moment order {n} exceeds the supported maximum 8"
        )));
    }
    let expected = a.powi(2 * n as i32 + 1) / (2.0 * f64::from(n) + 1.0);
    let g = cdf.clone();
    let f = Integrand::one_dim(move |x: f64| x.powi(2 * n as i32) * g.eval(x))
        .with_breakpoints(0, cdf.breakpoints());
    // absolute tolerance, scaled up when the value itself is large so the
    // round-off floor of the panel estimates cannot stall refinement
    let tol = (expected.abs() * 1e-13).max(1e-11);
    let result = quadrature::integrate_1d(&f, -a, a, tol)?;
    Ok((result.value, expected))
}
