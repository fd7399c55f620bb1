//! Quadrature engines: adaptive Gauss-Kronrod in one dimension, iterated
//! adaptive rules for dimensions two and three, and seeded randomized
//! quasi-Monte Carlo for dimensions up to twelve.
//!
//! All engines are deterministic: identical inputs (including the QMC seed)
//! produce bit-identical results regardless of worker-thread count.

mod adaptive;
mod gauss_kronrod;
mod qmc;
mod sobol;
mod tensor;

use serde::Serialize;
use std::cell::Cell;
use thiserror::Error;

pub use qmc::QmcParams;

/// Evaluation cap for one-dimensional adaptive integration.
pub const MAX_EVALS_1D: u64 = 10_000_000;
/// Evaluation cap shared across all levels of an iterated integral.
pub const MAX_EVALS_TENSOR: u64 = 100_000_000;
/// Smallest honored absolute tolerance per dimension count.
pub const MIN_TOL_1D: f64 = 1e-13;
pub const MIN_TOL_2D: f64 = 1e-10;
pub const MIN_TOL_3D: f64 = 1e-7;
/// QMC dimension and sampling limits.
pub const MAX_QMC_DIM: usize = 12;
pub const MIN_QMC_SAMPLES: u64 = 1 << 10;
pub const MIN_QMC_RANDOMIZATIONS: u32 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Adaptive,
    IteratedAdaptive,
    Qmc,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Method::Adaptive => "adaptive",
            Method::IteratedAdaptive => "iterated_adaptive",
            Method::Qmc => "qmc",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct QuadratureResult {
    pub value: f64,
    /// Conservative absolute error estimate; for QMC this is the standard
    /// error over randomizations.
    pub error_estimate: f64,
    pub evaluations: u64,
    pub method: Method,
    /// Seed used by randomized engines, absent for deterministic rules.
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, Error)]
pub enum QuadratureError {
    #[error(
        "tolerance {tol:e} not reached after {evaluations} evaluations \
         (best value {value}, estimate {error_estimate:e})"
    )]
    NonConvergence {
        tol: f64,
        evaluations: u64,
        value: f64,
        error_estimate: f64,
    },
    #[error("integrand returned a non-finite value near {point:?}")]
    NonFinite { point: Vec<f64> },
    #[error("invalid input: {0}")]
    BadInput(String),
}

/// An integrand over a `dim`-dimensional box with structural annotations the
/// engines exploit: interior breakpoints per axis (panels are split there)
/// and integrable endpoint singularities per axis (panels touching a flagged
/// endpoint are regularized by an exponential substitution).
type BoxedIntegrandFn = Box<dyn Fn(&[f64]) -> f64 + Send + Sync>;

pub struct Integrand {
    dim: usize,
    f: BoxedIntegrandFn,
    breakpoints: Vec<Vec<f64>>,
    singular: Vec<(bool, bool)>,
}

impl Integrand {
    pub fn new(dim: usize, f: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        assert!(dim >= 1, "integrand needs at least one dimension");
        Self {
            dim,
            f: Box::new(f),
            breakpoints: vec![Vec::new(); dim],
            singular: vec![(false, false); dim],
        }
    }

    /// One-dimensional convenience constructor.
    pub fn one_dim(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self::new(1, move |x: &[f64]| f(x[0]))
    }

    /// Declares interior breakpoints on `axis`; they are sorted and deduped.
    pub fn with_breakpoints(mut self, axis: usize, points: &[f64]) -> Self {
        let mut pts: Vec<f64> = points.iter().copied().filter(|p| p.is_finite()).collect();
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        self.breakpoints[axis] = pts;
        self
    }

    /// Flags integrable singularities at the endpoints of `axis`.
    pub fn with_singular_endpoints(mut self, axis: usize, at_lo: bool, at_hi: bool) -> Self {
        self.singular[axis] = (at_lo, at_hi);
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub(crate) fn eval(&self, x: &[f64]) -> f64 {
        (self.f)(x)
    }

    pub(crate) fn breakpoints(&self, axis: usize) -> &[f64] {
        &self.breakpoints[axis]
    }

    pub(crate) fn singular(&self, axis: usize) -> (bool, bool) {
        self.singular[axis]
    }
}

/// `arctan(x)/x` with the removable singularity filled in: exactly 1 at
/// `x = 0`, Taylor value for `|x| < 1e-8`.
pub fn atan_over_x(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        let x2 = x * x;
        1.0 - x2 / 3.0 + x2 * x2 / 5.0
    } else {
        x.atan() / x
    }
}

/// Adaptive Gauss-Kronrod integration of a one-dimensional integrand.
pub fn integrate_1d(
    f: &Integrand,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<QuadratureResult, QuadratureError> {
    if f.dim() != 1 {
        return Err(QuadratureError::BadInput(format!(
            "integrate_1d needs a one-dimensional integrand, got dim {}",
            f.dim()
        )));
    }
    if tol.is_nan() || tol < MIN_TOL_1D {
        return Err(QuadratureError::BadInput(format!(
            "tolerance {tol:e} below supported minimum {MIN_TOL_1D:e}"
        )));
    }
    let budget = Cell::new(0u64);
    let g = |x: f64| f.eval(&[x]);
    let out = adaptive::adapt_1d(
        &g,
        lo,
        hi,
        adaptive::AdaptParams {
            tol,
            breakpoints: f.breakpoints(0),
            singular: f.singular(0),
            budget: &budget,
            cap: MAX_EVALS_1D,
        },
    )?;
    Ok(QuadratureResult {
        value: out.value,
        error_estimate: out.error,
        evaluations: budget.get(),
        method: Method::Adaptive,
        seed: None,
    })
}

/// Iterated adaptive integration over a 2- or 3-dimensional box.
pub fn integrate_tensor(
    f: &Integrand,
    lo: &[f64],
    hi: &[f64],
    tol: f64,
) -> Result<QuadratureResult, QuadratureError> {
    let dim = f.dim();
    if !(2..=3).contains(&dim) {
        return Err(QuadratureError::BadInput(format!(
            "iterated rule supports dimensions 2..=3, got {dim}"
        )));
    }
    if lo.len() != dim || hi.len() != dim {
        return Err(QuadratureError::BadInput(
            "box bounds must match integrand dimension".into(),
        ));
    }
    let floor = if dim == 2 { MIN_TOL_2D } else { MIN_TOL_3D };
    if tol.is_nan() || tol < floor {
        return Err(QuadratureError::BadInput(format!(
            "tolerance {tol:e} below supported minimum {floor:e} for dim {dim}"
        )));
    }
    for axis in 0..dim {
        if !(lo[axis].is_finite() && hi[axis].is_finite() && lo[axis] < hi[axis]) {
            return Err(QuadratureError::BadInput(format!(
                "invalid interval [{}, {}] on axis {axis}",
                lo[axis], hi[axis]
            )));
        }
    }
    let budget = Cell::new(0u64);
    let ctx = tensor::TensorCtx::new(f, lo, hi, &budget, MAX_EVALS_TENSOR);
    let (value, error) = ctx.integrate_axis(0, tol)?;
    Ok(QuadratureResult {
        value,
        error_estimate: error,
        evaluations: budget.get(),
        method: Method::IteratedAdaptive,
        seed: None,
    })
}

/// Randomized quasi-Monte Carlo integration over a box, dimensions 1..=12.
pub fn integrate_qmc(
    f: &Integrand,
    lo: &[f64],
    hi: &[f64],
    params: &QmcParams,
) -> Result<QuadratureResult, QuadratureError> {
    let budget = Cell::new(0u64);
    qmc::integrate(f, lo, hi, *params, &budget)
}
