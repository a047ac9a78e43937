//! Time integrators and time-step control.

mod butcher;
mod courant;
mod imex;
pub mod implicit;
mod rk3;
pub mod tridiag;

pub use butcher::ButcherPair;
pub use courant::{adaptive_dt, courant_numbers, CourantKind, CourantNumbers};
pub use imex::{Imex, ImexFormulation};
pub use implicit::StageOperator;
pub use rk3::Rk3;

use crate::error::{Error, Result};
use crate::layout::Ragged;
use crate::spatial::Model;
use crate::state::State;

/// Work done by an integrator.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct WorkCounters {
    pub steps: u64,
    /// Full right-hand-side evaluations (explicit integrator).
    pub rhs_evals: u64,
    /// Non-stiff right-hand-side evaluations (semi-implicit integrator).
    pub nonstiff_evals: u64,
    pub implicit_solves: u64,
}

impl WorkCounters {
    /// Right-hand-side evaluations of either kind.
    pub fn total_rhs(&self) -> u64 {
        self.rhs_evals + self.nonstiff_evals
    }
}

/// A one-step method for the layered system.
pub trait Integrator {
    fn name(&self) -> &'static str;

    /// Advances `state` from `t` to `t + dt`.
    fn step(&self, model: &Model, state: &State, t: f64, dt: f64, work: &mut WorkCounters) -> Result<State>;
}

/// `sum_k c_k x_k` over equally shaped fields.
pub(crate) fn combine(terms: &[(f64, &Ragged)]) -> Ragged {
    let mut out = terms[0].1.clone();
    out.data.iter_mut().for_each(|v| *v *= terms[0].0);
    for (c, r) in &terms[1..] {
        if *c != 0.0 {
            out.axpy(*c, r);
        }
    }
    out
}

pub(crate) fn combine_vec(terms: &[(f64, &[f64])]) -> Vec<f64> {
    let mut out: Vec<f64> = terms[0].1.iter().map(|v| terms[0].0 * v).collect();
    for (c, r) in &terms[1..] {
        if *c != 0.0 {
            for (o, v) in out.iter_mut().zip(r.iter()) {
                *o += c * v;
            }
        }
    }
    out
}

/// Density after a step or stage from the level-`n` density and the
/// increment `dq` of `l h rho`: `rho = rho^n h^n / h + dq / (l h)`.
pub(crate) fn recover_density(model: &Model, rho_n: &Ragged, eta_n: &[f64], dq: &Ragged, eta: &[f64]) -> Ragged {
    let mut rho = rho_n.clone();
    for i in 0..model.cells() {
        let b = model.mesh.b[i];
        let (hn, h) = (eta_n[i] - b, eta[i] - b);
        let ratio = hn / h;
        let l = model.layout.cell(i);
        for ((r, d), la) in rho.col_mut(i).iter_mut().zip(dq.col(i)).zip(l) {
            *r = *r * ratio + d / (la * h);
        }
    }
    rho
}

pub(crate) fn check(model: &Model, state: &State, t: f64) -> Result<()> {
    state.check_valid(&model.mesh, model.params.h_min).map_err(|reason| Error::StepFailure { t, reason })
}

pub(crate) fn check_dt(dt: f64, t: f64) -> Result<()> {
    if dt > 0.0 && dt.is_finite() {
        Ok(())
    } else {
        Err(Error::StepFailure { t, reason: format!("time step {dt} is not positive") })
    }
}
