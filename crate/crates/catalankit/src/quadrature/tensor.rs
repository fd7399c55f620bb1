//! Iterated adaptive integration for 2- and 3-dimensional boxes.
//!
//! Inner dimensions are integrated afresh for every outer evaluation point.
//! The outer level receives half the tolerance; each inner integral is asked
//! for `tol / (4 * outer_width)` pointwise so its accumulated contribution
//! stays below a quarter of the budget. The reported error estimate combines
//! the outer estimate with the worst observed inner estimate scaled by the
//! outer width, which is conservative by construction.

use super::adaptive::{adapt_1d, AdaptParams};
use super::{Integrand, QuadratureError};
use std::cell::{Cell, RefCell};

pub(crate) struct TensorCtx<'a> {
    pub f: &'a Integrand,
    pub lo: &'a [f64],
    pub hi: &'a [f64],
    pub budget: &'a Cell<u64>,
    pub cap: u64,
    point: RefCell<Vec<f64>>,
    fail: RefCell<Option<QuadratureError>>,
}

impl<'a> TensorCtx<'a> {
    pub fn new(
        f: &'a Integrand,
        lo: &'a [f64],
        hi: &'a [f64],
        budget: &'a Cell<u64>,
        cap: u64,
    ) -> Self {
        Self {
            f,
            lo,
            hi,
            budget,
            cap,
            point: RefCell::new(vec![0.0; f.dim()]),
            fail: RefCell::new(None),
        }
    }

    /// Integrates axes `axis..dim` with the current prefix of `point` fixed.
    pub fn integrate_axis(&self, axis: usize, tol: f64) -> Result<(f64, f64), QuadratureError> {
        let dim = self.f.dim();
        let (a, b) = (self.lo[axis], self.hi[axis]);
        if axis == dim - 1 {
            let g = |x: f64| {
                let mut p = self.point.borrow_mut();
                p[axis] = x;
                self.f.eval(&p)
            };
            let out = adapt_1d(
                &g,
                a,
                b,
                AdaptParams {
                    tol,
                    breakpoints: self.f.breakpoints(axis),
                    singular: self.f.singular(axis),
                    budget: self.budget,
                    cap: self.cap,
                },
            )?;
            return Ok((out.value, out.error));
        }

        let width = b - a;
        let inner_tol = (tol / (4.0 * width)).max(1e-13);
        let max_inner = Cell::new(0.0f64);
        let g = |x: f64| -> f64 {
            self.point.borrow_mut()[axis] = x;
            match self.integrate_axis(axis + 1, inner_tol) {
                Ok((v, e)) => {
                    if e > max_inner.get() {
                        max_inner.set(e);
                    }
                    v
                }
                Err(err) => {
                    let mut fail = self.fail.borrow_mut();
                    if fail.is_none() {
                        *fail = Some(err);
                    }
                    f64::NAN
                }
            }
        };
        let out = adapt_1d(
            &g,
            a,
            b,
            AdaptParams {
                tol: tol / 2.0,
                breakpoints: self.f.breakpoints(axis),
                singular: self.f.singular(axis),
                budget: self.budget,
                cap: self.cap,
            },
        );
        match out {
            Ok(o) => {
                if let Some(inner) = self.fail.borrow_mut().take() {
                    return Err(inner);
                }
                Ok((o.value, o.error + width * max_inner.get()))
            }
            Err(outer_err) => {
                // an inner failure surfaces as NaN at the outer level; report
                // the root cause instead of the induced one
                if let Some(inner) = self.fail.borrow_mut().take() {
                    Err(inner)
                } else {
                    Err(outer_err)
                }
            }
        }
    }
}
