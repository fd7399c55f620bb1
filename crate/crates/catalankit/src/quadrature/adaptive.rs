//! Globally adaptive one-dimensional integration.
//!
//! The interval is seeded with one panel per stretch between known
//! breakpoints, panels are kept in a worst-error-first heap, and the worst
//! panel is bisected until the summed error estimate meets the tolerance.
//! Endpoint singularities are regularized before adaptivity starts: a panel
//! touching a flagged endpoint is rewritten through `x = x0 +- e^(-t)`,
//! which turns integrable endpoint blowups (log, mild algebraic) into a
//! smooth exponentially decaying tail.

use super::QuadratureError;
use crate::kahan::Kahan;
use std::cell::Cell;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::gauss_kronrod::{qk15, QK15_POINTS};

/// Length of the transformed tail in `t = -ln(x - x0)` coordinates.
/// `e^-SPAN` is ~1.7e-48, far below every supported tolerance.
const EXP_TAIL_SPAN: f64 = 110.0;

#[derive(Clone, Copy, Debug)]
enum SegmentMap {
    Identity,
    /// `x = x0 + e^(-t)`, integrating toward the lower endpoint `x0`.
    ExpFromLo { x0: f64 },
    /// `x = x1 - e^(-t)`, integrating toward the upper endpoint `x1`.
    ExpFromHi { x1: f64 },
}

impl SegmentMap {
    fn to_x(self, t: f64) -> f64 {
        match self {
            SegmentMap::Identity => t,
            SegmentMap::ExpFromLo { x0 } => x0 + (-t).exp(),
            SegmentMap::ExpFromHi { x1 } => x1 - (-t).exp(),
        }
    }
}

struct Panel {
    seg: usize,
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
    seq: u64,
}

struct HeapEntry {
    error: f64,
    seq: u64,
    idx: usize,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for HeapEntry {}
impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // max-heap on error; older panels win ties so refinement order is
        // independent of float incidentals
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

pub(crate) struct AdaptParams<'a> {
    pub tol: f64,
    pub breakpoints: &'a [f64],
    pub singular: (bool, bool),
    /// Shared evaluation counter; `adapt_1d` adds every integrand call.
    pub budget: &'a Cell<u64>,
    /// Hard cap on `budget`; exceeding it is a non-convergence error.
    pub cap: u64,
}

pub(crate) struct AdaptOutcome {
    pub value: f64,
    pub error: f64,
}

/// Integrates `f` over `[lo, hi]`.
pub(crate) fn adapt_1d(
    f: &dyn Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    params: AdaptParams,
) -> Result<AdaptOutcome, QuadratureError> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(QuadratureError::BadInput(format!(
            "invalid interval [{lo}, {hi}]"
        )));
    }

    // Seed edges from interior breakpoints.
    let mut edges = vec![lo];
    for &b in params.breakpoints {
        if b > lo && b < hi && b > *edges.last().expect("non-empty") {
            edges.push(b);
        }
    }
    edges.push(hi);
    // A panel cannot host transforms on both ends; split single panels when
    // both endpoints are flagged.
    if edges.len() == 2 && params.singular.0 && params.singular.1 {
        edges.insert(1, 0.5 * (lo + hi));
    }

    let mut segments: Vec<(SegmentMap, f64, f64)> = Vec::new();
    for w in edges.windows(2) {
        let (a, b) = (w[0], w[1]);
        let first = a == lo;
        let last = b == hi;
        if first && params.singular.0 {
            let t0 = -(b - a).ln();
            segments.push((SegmentMap::ExpFromLo { x0: a }, t0, t0 + EXP_TAIL_SPAN));
        } else if last && params.singular.1 {
            let t0 = -(b - a).ln();
            segments.push((SegmentMap::ExpFromHi { x1: b }, t0, t0 + EXP_TAIL_SPAN));
        } else {
            segments.push((SegmentMap::Identity, a, b));
        }
    }

    let nan_at: Cell<Option<f64>> = Cell::new(None);
    let eval_panel = |seg: usize, a: f64, b: f64| -> PanelEval {
        let (map, _, _) = segments[seg];
        let mut g = |t: f64| -> f64 {
            let x = map.to_x(t);
            // When e^(-t) underflows, or is smaller than an ulp of the
            // endpoint so that `x` rounds onto it, the remaining tail mass
            // of an integrable singularity is far below every tolerance:
            // treat it as zero instead of sampling the singular point.
            let v = match map {
                SegmentMap::Identity => f(x),
                SegmentMap::ExpFromLo { x0 } => {
                    let jac = (-t).exp();
                    if jac == 0.0 || x == x0 {
                        0.0
                    } else {
                        f(x) * jac
                    }
                }
                SegmentMap::ExpFromHi { x1 } => {
                    let jac = (-t).exp();
                    if jac == 0.0 || x == x1 {
                        0.0
                    } else {
                        f(x) * jac
                    }
                }
            };
            if !v.is_finite() && nan_at.get().is_none() {
                nan_at.set(Some(x));
            }
            v
        };
        let est = qk15(&mut g, a, b);
        params.budget.set(params.budget.get() + QK15_POINTS);
        PanelEval {
            value: est.value,
            error: est.error,
        }
    };

    let mut heap: BinaryHeap<HeapEntry> = BinaryHeap::new();
    let mut panels: Vec<Panel> = Vec::new();
    let mut seq = 0u64;
    let mut total_error = 0.0f64;

    let mut push_panel = |seg: usize,
                          a: f64,
                          b: f64,
                          heap: &mut BinaryHeap<HeapEntry>,
                          panels: &mut Vec<Panel>,
                          total_error: &mut f64|
     -> Result<(), QuadratureError> {
        let est = eval_panel(seg, a, b);
        if let Some(x) = nan_at.get() {
            return Err(QuadratureError::NonFinite { point: vec![x] });
        }
        *total_error += est.error;
        let idx = panels.len();
        panels.push(Panel {
            seg,
            lo: a,
            hi: b,
            value: est.value,
            error: est.error,
            seq,
        });
        heap.push(HeapEntry {
            error: est.error,
            seq,
            idx,
        });
        seq += 1;
        Ok(())
    };

    for (i, &(_, a, b)) in segments.iter().enumerate() {
        push_panel(i, a, b, &mut heap, &mut panels, &mut total_error)?;
    }

    // Panels too narrow to bisect park here; their error stays in the total.
    let mut frozen_error = 0.0f64;

    while total_error + frozen_error > params.tol {
        let Some(entry) = heap.pop() else {
            break; // everything frozen
        };
        let panel = &panels[entry.idx];
        let (seg, a, b, parent_err) = (panel.seg, panel.lo, panel.hi, panel.error);
        let mid = 0.5 * (a + b);
        if !(mid > a && mid < b) {
            total_error -= parent_err;
            frozen_error += parent_err;
            continue;
        }
        if params.budget.get() + 2 * QK15_POINTS > params.cap {
            return Err(non_convergence(&panels, &params, total_error + frozen_error));
        }
        total_error -= parent_err;
        panels[entry.idx].error = 0.0;
        panels[entry.idx].value = 0.0;
        panels[entry.idx].seg = usize::MAX; // emptied, replaced by children
        push_panel(seg, a, mid, &mut heap, &mut panels, &mut total_error)?;
        push_panel(seg, mid, b, &mut heap, &mut panels, &mut total_error)?;
    }

    if total_error + frozen_error > params.tol {
        return Err(non_convergence(&panels, &params, total_error + frozen_error));
    }

    Ok(sum_panels(&panels, total_error + frozen_error))
}

struct PanelEval {
    value: f64,
    error: f64,
}

/// Panels are re-summed in a fixed geometric order so results do not depend
/// on refinement history.
fn sum_panels(panels: &[Panel], error: f64) -> AdaptOutcome {
    let mut live: Vec<&Panel> = panels.iter().filter(|p| p.seg != usize::MAX).collect();
    live.sort_by(|a, b| {
        a.seg
            .cmp(&b.seg)
            .then_with(|| a.lo.total_cmp(&b.lo))
            .then_with(|| a.seq.cmp(&b.seq))
    });
    let mut sum = Kahan::new();
    for p in &live {
        sum.add(p.value);
    }
    AdaptOutcome {
        value: sum.value(),
        error,
    }
}

fn non_convergence(panels: &[Panel], params: &AdaptParams, error: f64) -> QuadratureError {
    let partial = sum_panels(panels, error);
    QuadratureError::NonConvergence {
        tol: params.tol,
        evaluations: params.budget.get(),
        value: partial.value,
        error_estimate: partial.error,
    }
}
