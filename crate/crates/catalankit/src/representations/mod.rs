//! Integral representations of Catalan's constant built from symmetric CDFs
//! and rational Lerch kernels.
//!
//! Every representation here evaluates to the same number. The engine
//! assembles the integrand for a chosen dimension `r`:
//!
//! * `r = 1`: `∫_{-1}^{1} G(x) · arctan(x)/x dx`
//! * `r = 2`: `∫∫ G₁(x)G₂(y) / (1 + x²y²)` over `[-a, a] × [-1/a, 1/a]`
//! * `r ≥ 2` (general): `∫…∫ ∏ Gᵢ(xᵢ) · P_{r-2}(z)/(1+z)^{r-1}` with
//!   `z = ∏ xᵢ²` over the box `∏ [-aᵢ, aᵢ]`, where `P_n` is the integer
//!   numerator produced by [`crate::lerch::derive_closed_form`] and the last
//!   half-width obeys `a_r = (∏_{i<r} aᵢ)⁻¹`
//!
//! The scale constraint keeps `z ≤ 1` over the whole box, so the kernel is
//! polynomial-over-polynomial with no pole in range. Deterministic adaptive
//! rules handle `r ≤ 3`; randomized quasi–Monte Carlo handles `r ≥ 4`.
//!
//! The [`registry`] submodule names one verification case per identity and
//! runs them against the reference value with per-case tolerances.

pub mod registry;

use serde::Serialize;

use crate::cdf::{self, SymmetricCdf};
use crate::lerch::derive_closed_form;
use crate::quadrature::{
    atan_over_x, integrate_1d, integrate_qmc, integrate_tensor, Integrand, QmcParams,
    QuadratureError, QuadratureResult, MAX_QMC_DIM,
};
use num_traits::ToPrimitive;

/// Centralized engine defaults; every report prints these so a failure can
/// be reproduced from the report alone.
#[derive(Clone, Debug, Serialize)]
pub struct EngineParams {
    /// Absolute tolerance for one-dimensional adaptive integration.
    pub tol_single: f64,
    /// Absolute tolerance for two-dimensional iterated integration.
    pub tol_double: f64,
    /// Absolute tolerance for three-dimensional iterated integration.
    pub tol_triple: f64,
    /// Quasi–Monte Carlo points per randomization (dimensions ≥ 4).
    pub qmc_samples: u64,
    /// Independent digital-shift randomizations (standard-error source).
    pub qmc_randomizations: u32,
    /// Base seed for the randomization streams.
    pub seed: u64,
    /// Worker threads for QMC; 0 = auto (`CATALANKIT_THREADS` or all cores).
    pub threads: usize,
}

impl Default for EngineParams {
    fn default() -> Self {
        Self {
            tol_single: 1e-9,
            tol_double: 1e-9,
            tol_triple: 1e-6,
            qmc_samples: 1 << 20,
            qmc_randomizations: 16,
            seed: 1,
            threads: 0,
        }
    }
}

impl EngineParams {
    fn qmc(&self, samples_override: Option<u64>) -> QmcParams {
        QmcParams {
            n_samples: samples_override.unwrap_or(self.qmc_samples),
            randomizations: self.qmc_randomizations,
            seed: self.seed,
            threads: self.threads,
        }
    }
}

/// Which of the three integral families a [`RepresentationSpec`] encodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepKind {
    Single,
    Double,
    Multi,
}

/// A fully specified representation: `r` symmetric CDFs and the box
/// half-widths `a₁ … a_r`, with the last one derived from the constraint
/// `a_r = (∏_{i<r} aᵢ)⁻¹` (the empty product is 1, so `r = 1` uses `a₁ = 1`).
#[derive(Clone, Debug)]
pub struct RepresentationSpec {
    kind: RepKind,
    cdfs: Vec<SymmetricCdf>,
    a_params: Vec<f64>,
}

impl RepresentationSpec {
    /// `r = 1` over `[-1, 1]`.
    pub fn single(g: SymmetricCdf) -> Self {
        Self {
            kind: RepKind::Single,
            cdfs: vec![g],
            a_params: vec![1.0],
        }
    }

    /// `r = 2` over `[-a, a] × [-1/a, 1/a]`.
    pub fn double(g1: SymmetricCdf, g2: SymmetricCdf, a: f64) -> Result<Self, QuadratureError> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(QuadratureError::BadInput(format!(
                "scale parameter must be positive and finite, got {a}"
            )));
        }
        Ok(Self {
            kind: RepKind::Double,
            cdfs: vec![g1, g2],
            a_params: vec![a, 1.0 / a],
        })
    }

    /// General `r ≥ 1`: callers supply the first `r - 1` half-widths; the
    /// last is derived.
    pub fn multi(cdfs: Vec<SymmetricCdf>, a_heads: &[f64]) -> Result<Self, QuadratureError> {
        let r = cdfs.len();
        if r == 0 {
            return Err(QuadratureError::BadInput(
                "a representation needs at least one CDF".into(),
            ));
        }
        if a_heads.len() != r - 1 {
            return Err(QuadratureError::BadInput(format!(
                "expected {} leading half-widths for dimension {r}, got {}",
                r - 1,
                a_heads.len()
            )));
        }
        let mut a_params = Vec::with_capacity(r);
        let mut product = 1.0f64;
        for &a in a_heads {
            if !(a > 0.0 && a.is_finite()) {
                return Err(QuadratureError::BadInput(format!(
                    "half-widths must be positive and finite, got {a}"
                )));
            }
            product *= a;
            a_params.push(a);
        }
        let tail = product.recip();
        if !(tail > 0.0 && tail.is_finite()) {
            return Err(QuadratureError::BadInput(format!(
                "derived final half-width 1/{product} is out of range"
            )));
        }
        a_params.push(tail);
        Ok(Self {
            kind: RepKind::Multi,
            cdfs,
            a_params,
        })
    }

    pub fn kind(&self) -> RepKind {
        self.kind
    }

    pub fn r(&self) -> usize {
        self.cdfs.len()
    }

    pub fn cdfs(&self) -> &[SymmetricCdf] {
        &self.cdfs
    }

    /// All `r` half-widths, the derived one last.
    pub fn a_params(&self) -> &[f64] {
        &self.a_params
    }
}

/// Rejects functions outside the symmetric-CDF class before integrating;
/// the identities only hold for class members.
fn ensure_class_member(g: &SymmetricCdf) -> Result<(), QuadratureError> {
    let report = cdf::validate(g, 200);
    if report.pass {
        Ok(())
    } else {
        Err(QuadratureError::BadInput(format!(
            "{} is not a symmetric CDF: {report:?}",
            g.label()
        )))
    }
}

/// Breakpoints strictly inside `(lo, hi)`; panel edges already cover the rest.
fn interior(points: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    points
        .iter()
        .copied()
        .filter(|&p| lo < p && p < hi)
        .collect()
}

/// Numerator coefficients of the order-`n` rational kernel as exact doubles.
fn kernel_coefficients(n: u32) -> Vec<f64> {
    derive_closed_form(n)
        .integer_coeffs()
        .iter()
        .map(|c| {
            let v = c.to_f64().expect("kernel coefficient out of f64 range");
            assert!(v.abs() < 9.0e15, "kernel coefficient not exact in f64");
            v
        })
        .collect()
}

/// `P(z) / (1+z)^pole` by Horner; exact coefficients, `z ∈ [0, 1]`.
fn rational_kernel(coeffs: &[f64], pole: i32, z: f64) -> f64 {
    let mut p = 0.0;
    for c in coeffs.iter().rev() {
        p = p * z + c;
    }
    p / (1.0 + z).powi(pole)
}

/// `∫_{-1}^{1} G(x) · arctan(x)/x dx`; evaluates to the reference constant
/// for every symmetric CDF (the odd part of `G` integrates to zero against
/// the even kernel, and the even part is exactly `1/2`).
pub fn single_integral(g: &SymmetricCdf, tol: f64) -> Result<QuadratureResult, QuadratureError> {
    ensure_class_member(g)?;
    let gg = g.clone();
    let f = Integrand::one_dim(move |x| gg.eval(x) * atan_over_x(x))
        .with_breakpoints(0, &interior(g.breakpoints(), -1.0, 1.0));
    integrate_1d(&f, -1.0, 1.0, tol)
}

/// `∫_{-a}^{a} ∫_{-1/a}^{1/a} G₁(x)G₂(y) / (1 + x²y²) dy dx` for any two
/// symmetric CDFs and any positive scale `a`.
pub fn double_integral(
    g1: &SymmetricCdf,
    g2: &SymmetricCdf,
    a: f64,
    tol: f64,
) -> Result<QuadratureResult, QuadratureError> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(QuadratureError::BadInput(format!(
            "scale parameter must be positive and finite, got {a}"
        )));
    }
    ensure_class_member(g1)?;
    ensure_class_member(g2)?;
    let b = 1.0 / a;
    let (h1, h2) = (g1.clone(), g2.clone());
    let f = Integrand::new(2, move |x: &[f64]| {
        let (u, v) = (x[0], x[1]);
        h1.eval(u) * h2.eval(v) / (1.0 + u * u * v * v)
    })
    .with_breakpoints(0, &interior(g1.breakpoints(), -a, a))
    .with_breakpoints(1, &interior(g2.breakpoints(), -b, b));
    integrate_tensor(&f, &[-a, -b], &[a, b], tol)
}

/// The general `r`-dimensional representation. Routes `r ≤ 3` to the
/// deterministic iterated rule and `r ≥ 4` to randomized QMC.
pub fn multi_integral(
    spec: &RepresentationSpec,
    params: &EngineParams,
) -> Result<QuadratureResult, QuadratureError> {
    multi_integral_with_samples(spec, params, None)
}

/// [`multi_integral`] with an optional per-call QMC sample-count override
/// (high dimensions need more points for the same standard error).
pub fn multi_integral_with_samples(
    spec: &RepresentationSpec,
    params: &EngineParams,
    samples: Option<u64>,
) -> Result<QuadratureResult, QuadratureError> {
    let r = spec.r();
    if r > MAX_QMC_DIM {
        return Err(QuadratureError::BadInput(format!(
            "dimension {r} exceeds the supported maximum {MAX_QMC_DIM}"
        )));
    }
    for g in spec.cdfs() {
        ensure_class_member(g)?;
    }
    if r == 1 {
        let g = &spec.cdfs()[0];
        return single_integral(g, params.tol_single);
    }

    let coeffs = kernel_coefficients(r as u32 - 2);
    let pole = r as i32 - 1;
    let cdfs = spec.cdfs().to_vec();
    let integrand = move |x: &[f64]| {
        let mut g = 1.0;
        let mut prod = 1.0;
        for (xi, cdf) in x.iter().zip(&cdfs) {
            g *= cdf.eval(*xi);
            prod *= xi;
        }
        if g == 0.0 {
            return 0.0;
        }
        let z = prod * prod;
        g * rational_kernel(&coeffs, pole, z)
    };

    let lo: Vec<f64> = spec.a_params().iter().map(|a| -a).collect();
    let hi: Vec<f64> = spec.a_params().to_vec();
    let mut f = Integrand::new(r, integrand);
    for axis in 0..r {
        let pts = interior(spec.cdfs()[axis].breakpoints(), lo[axis], hi[axis]);
        f = f.with_breakpoints(axis, &pts);
    }
    match r {
        2 => integrate_tensor(&f, &lo, &hi, params.tol_double),
        3 => integrate_tensor(&f, &lo, &hi, params.tol_triple),
        _ => integrate_qmc(&f, &lo, &hi, &params.qmc(samples)),
    }
}

/// `∫_{-1}^{1}∫_{-1}^{1} arctan(x) / (1 + x²y²) dx dy`: zero, because the
/// integrand is odd in `x` over a symmetric box.
pub fn side_zero_full(tol: f64) -> Result<QuadratureResult, QuadratureError> {
    let f = Integrand::new(2, |x: &[f64]| x[0].atan() / (1.0 + x[0] * x[0] * x[1] * x[1]));
    integrate_tensor(&f, &[-1.0, -1.0], &[1.0, 1.0], tol)
}

/// The same integrand restricted to the first quadrant `[0,1]²`, which no
/// longer cancels: it equals `π·C/2 - (7/8)ζ(3)` where `C` is the constant
/// under verification.
pub fn side_quadrant(tol: f64) -> Result<QuadratureResult, QuadratureError> {
    let f = Integrand::new(2, |x: &[f64]| x[0].atan() / (1.0 + x[0] * x[0] * x[1] * x[1]));
    integrate_tensor(&f, &[0.0, 0.0], &[1.0, 1.0], tol)
}

/// `∫_{-1}^{0} arctan(x)²/x dx = -(π·C/2 - (7/8)ζ(3))`. The integrand is
/// written as `x · (arctan(x)/x)²` so the origin is an ordinary point.
pub fn side_arctan_sq(tol: f64) -> Result<QuadratureResult, QuadratureError> {
    let f = Integrand::one_dim(|x| {
        let k = atan_over_x(x);
        x * k * k
    });
    integrate_1d(&f, -1.0, 0.0, tol)
}

/// `-∫₀¹ ln(x) / (1 + x²) dx`, the classic logarithmic form of the constant;
/// the integrable endpoint singularity at 0 is declared to the engine.
pub fn log_kernel_integral(tol: f64) -> Result<QuadratureResult, QuadratureError> {
    let f = Integrand::one_dim(|x: f64| -x.ln() / (1.0 + x * x)).with_singular_endpoints(
        0, true, false,
    );
    integrate_1d(&f, 0.0, 1.0, tol)
}

/// Pointwise check of the inner-integral identity
/// `∫_{-1}^{1} G(y) / (1 + x²y²) dy = arctan(x)/x` for `x ∈ [-1, 1]`.
/// Returns `(lhs, rhs)`; the identity holds for every symmetric CDF because
/// `G - 1/2` is odd against the even kernel.
pub fn inner_integral_identity(
    g: &SymmetricCdf,
    x: f64,
) -> Result<(f64, f64), QuadratureError> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(QuadratureError::BadInput(format!(
            "evaluation point must lie in [-1, 1], got {x}"
        )));
    }
    ensure_class_member(g)?;
    let gg = g.clone();
    let f = Integrand::one_dim(move |y| gg.eval(y) / (1.0 + x * x * y * y))
        .with_breakpoints(0, &interior(g.breakpoints(), -1.0, 1.0));
    let lhs = integrate_1d(&f, -1.0, 1.0, 1e-11)?.value;
    Ok((lhs, atan_over_x(x)))
}
