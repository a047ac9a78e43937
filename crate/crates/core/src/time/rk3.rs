//! Explicit three-stage SSP Runge-Kutta (Shu-Osher) on the full right-hand side.

use super::{check, check_dt, combine, combine_vec, recover_density, Integrator, WorkCounters};
use crate::error::Result;
use crate::layout::Ragged;
use crate::spatial::{Model, Tendency};
use crate::state::State;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rk3;

impl Rk3 {
    /// `y + sum_k w_k dt K_k` for the stage increments `K_k`, with the density
    /// recovered from `l h rho`.
    fn advance(model: &Model, y: &State, ks: &[(f64, &Tendency)], t: f64) -> Result<State> {
        let mut e_terms: Vec<(f64, &[f64])> = vec![(1.0, &y.eta)];
        let mut u_terms: Vec<(f64, &Ragged)> = vec![(1.0, &y.u)];
        let mut q_terms: Vec<(f64, &Ragged)> = Vec::new();
        for (w, k) in ks {
            e_terms.push((*w, &k.eta));
            u_terms.push((*w, &k.u));
            q_terms.push((*w, &k.q));
        }
        let eta = combine_vec(&e_terms);
        let dq = combine(&q_terms);
        let rho = recover_density(model, &y.rho, &y.eta, &dq, &eta);
        let mut out = State { eta, u: combine(&u_terms), rho };
        model.apply_velocity_bc(&mut out, t);
        check(model, &out, t)?;
        Ok(out)
    }
}

impl Integrator for Rk3 {
    fn name(&self) -> &'static str {
        "rk3"
    }

    fn step(&self, model: &Model, state: &State, t: f64, dt: f64, work: &mut WorkCounters) -> Result<State> {
        check_dt(dt, t)?;
        let (k1, _) = model.rhs(state, t);
        let y1 = Self::advance(model, state, &[(dt, &k1)], t + dt)?;
        let (k2, _) = model.rhs(&y1, t + dt);
        let y2 = Self::advance(model, state, &[(0.25 * dt, &k1), (0.25 * dt, &k2)], t + 0.5 * dt)?;
        let (k3, _) = model.rhs(&y2, t + 0.5 * dt);
        let w = dt / 6.0;
        let out = Self::advance(model, state, &[(w, &k1), (w, &k2), (4.0 * w, &k3)], t + dt)?;
        work.rhs_evals += 3;
        work.steps += 1;
        Ok(out)
    }
}
