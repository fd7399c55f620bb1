//! Randomized quasi-Monte Carlo integration over a box.
//!
//! Each randomization XORs a per-dimension digital shift into the Sobol
//! lattice, giving independent replicates whose spread yields an honest
//! standard-error estimate. Replicates are averaged in index order so the
//! result is bit-identical regardless of how many worker threads run.

use std::cell::Cell;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::kahan::Kahan;

use super::sobol::{SobolStream, MAX_DIM};
use super::{Integrand, Method, QuadratureError, QuadratureResult};
use super::{MIN_QMC_RANDOMIZATIONS, MIN_QMC_SAMPLES};

/// Controls for the quasi-Monte Carlo engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QmcParams {
    /// Sobol points per randomization; must be a power of two, at least 2^10.
    pub n_samples: u64,
    /// Independent digital shifts; at least 16 so the standard error is
    /// estimated from a real sample.
    pub randomizations: u32,
    /// Seed for the shift generator; same seed, same answer.
    pub seed: u64,
    /// Worker threads across randomizations; 0 consults the
    /// `CATALANKIT_THREADS` environment variable, then available parallelism.
    pub threads: usize,
}

impl Default for QmcParams {
    fn default() -> Self {
        Self {
            n_samples: 1 << 20,
            randomizations: 16,
            seed: 1,
            threads: 0,
        }
    }
}

fn resolve_workers(requested: usize, reps: u32) -> usize {
    let chosen = if requested > 0 {
        requested
    } else {
        let from_env = std::env::var("CATALANKIT_THREADS")
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
            .unwrap_or(0);
        if from_env > 0 {
            from_env
        } else {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        }
    };
    chosen.clamp(1, reps as usize)
}

struct RepOutcome {
    mean: f64,
    bad_point: Option<Vec<f64>>,
}

/// Runs one randomization: a digitally shifted Sobol average of `f` over
/// the box, streamed through compensated summation.
fn run_rep(f: &Integrand, lo: &[f64], hi: &[f64], n: u64, seed: u64, rep: u32) -> RepOutcome {
    let dim = f.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::from(rep) + 1);
    let shift: Vec<u32> = (0..dim).map(|_| rng.next_u32()).collect();

    let mut stream = SobolStream::new(dim);
    let mut raw = vec![0u32; dim];
    let mut x = vec![0.0f64; dim];
    let mut sum = Kahan::new();
    let scale = 2f64.powi(-32);
    for _ in 0..n {
        stream.next_point(&mut raw);
        for d in 0..dim {
            let u = f64::from(raw[d] ^ shift[d]) * scale;
            x[d] = lo[d] + (hi[d] - lo[d]) * u;
        }
        let y = f.eval(&x);
        if !y.is_finite() {
            return RepOutcome {
                mean: f64::NAN,
                bad_point: Some(x),
            };
        }
        sum.add(y);
    }
    RepOutcome {
        mean: sum.value() / n as f64,
        bad_point: None,
    }
}

pub(crate) fn integrate(
    f: &Integrand,
    lo: &[f64],
    hi: &[f64],
    params: QmcParams,
    budget: &Cell<u64>,
) -> Result<QuadratureResult, QuadratureError> {
    let dim = f.dim();
    if dim == 0 || dim > MAX_DIM {
        return Err(QuadratureError::BadInput(format!(
            "qmc supports 1..={MAX_DIM} dimensions, got {dim}"
        )));
    }
    if lo.len() != dim || hi.len() != dim {
        return Err(QuadratureError::BadInput(
            "box bounds must match integrand dimension".into(),
        ));
    }
    for d in 0..dim {
        if !(lo[d].is_finite() && hi[d].is_finite() && lo[d] < hi[d]) {
            return Err(QuadratureError::BadInput(format!(
                "invalid box on axis {d}: [{}, {}]",
                lo[d], hi[d]
            )));
        }
    }
    let n = params.n_samples;
    if n < MIN_QMC_SAMPLES || !n.is_power_of_two() {
        return Err(QuadratureError::BadInput(format!(
            "n_samples must be a power of two >= {MIN_QMC_SAMPLES}, got {n}"
        )));
    }
    let reps = params.randomizations;
    if reps < MIN_QMC_RANDOMIZATIONS {
        return Err(QuadratureError::BadInput(format!(
            "randomizations must be at least {MIN_QMC_RANDOMIZATIONS}, got {reps}"
        )));
    }

    let workers = resolve_workers(params.threads, reps);
    let mut outcomes: Vec<Option<RepOutcome>> = Vec::new();
    outcomes.resize_with(reps as usize, || None);

    if workers <= 1 {
        for (r, slot) in outcomes.iter_mut().enumerate() {
            *slot = Some(run_rep(f, lo, hi, n, params.seed, r as u32));
        }
    } else {
        let chunk = outcomes.len().div_ceil(workers);
        std::thread::scope(|scope| {
            for (t, slots) in outcomes.chunks_mut(chunk).enumerate() {
                let first = t * chunk;
                scope.spawn(move || {
                    for (off, slot) in slots.iter_mut().enumerate() {
                        let r = (first + off) as u32;
                        *slot = Some(run_rep(f, lo, hi, n, params.seed, r));
                    }
                });
            }
        });
    }

    budget.set(budget.get() + n * u64::from(reps));

    let mut volume = 1.0f64;
    for d in 0..dim {
        volume *= hi[d] - lo[d];
    }
    let mut values = Vec::with_capacity(reps as usize);
    for outcome in outcomes.into_iter() {
        let outcome = outcome.expect("every replicate slot is filled");
        if let Some(point) = outcome.bad_point {
            return Err(QuadratureError::NonFinite { point });
        }
        values.push(volume * outcome.mean);
    }

    let mut total = Kahan::new();
    for &v in &values {
        total.add(v);
    }
    let mean = total.value() / values.len() as f64;
    let mut sq = Kahan::new();
    for &v in &values {
        sq.add((v - mean) * (v - mean));
    }
    let r = values.len() as f64;
    let std_err = (sq.value() / (r * (r - 1.0))).sqrt();

    Ok(QuadratureResult {
        value: mean,
        error_estimate: std_err,
        evaluations: n * u64::from(reps),
        method: Method::Qmc,
        seed: Some(params.seed),
    })
}
