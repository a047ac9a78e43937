//! Courant numbers based on the external celerity and on the flow and
//! internal-wave speed, and time steps that meet a target value of either.

use serde::{Deserialize, Serialize};

use crate::spatial::Model;
use crate::state::State;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CourantKind {
    /// `|ubar| + sqrt((1 + rhobar) g h)`
    Celerity,
    /// `|ubar| + sqrt(rhobar g h)`
    Velocity,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct CourantNumbers {
    pub cel: f64,
    pub vel: f64,
}

impl CourantNumbers {
    pub fn get(&self, kind: CourantKind) -> f64 {
        match kind {
            CourantKind::Celerity => self.cel,
            CourantKind::Velocity => self.vel,
        }
    }

    pub fn max(self, other: Self) -> Self {
        Self { cel: self.cel.max(other.cel), vel: self.vel.max(other.vel) }
    }
}

/// Per-cell signal speeds divided by the cell length, `(celerity, velocity)`.
/// The cell velocity is the mean of the depth-averaged velocities on its two
/// interfaces; a negative mean density is clamped to zero.
fn speeds_over_dx<'a>(model: &'a Model, state: &'a State) -> impl Iterator<Item = (f64, f64)> + 'a {
    let g = model.params.g;
    (0..model.cells()).map(move |i| {
        let ubar = |j: usize| -> f64 { state.u.col(j).iter().zip(model.layout.face(j)).map(|(u, l)| l * u).sum() };
        let u = 0.5 * (ubar(i) + ubar(i + 1));
        let rho: f64 = state.rho.col(i).iter().zip(model.layout.cell(i)).map(|(r, l)| l * r).sum();
        let rho = rho.max(0.0);
        let h = state.h(&model.mesh, i);
        let dx = model.mesh.dx[i];
        ((u.abs() + ((1.0 + rho) * g * h).sqrt()) / dx, (u.abs() + (rho * g * h).sqrt()) / dx)
    })
}

pub fn courant_numbers(model: &Model, state: &State, dt: f64) -> CourantNumbers {
    let (c, v) = speeds_over_dx(model, state).fold((0.0f64, 0.0f64), |(c, v), (a, b)| (c.max(a), v.max(b)));
    CourantNumbers { cel: c * dt, vel: v * dt }
}

/// Largest time step meeting `target` for the current state, capped by
/// `dt_max` (which also bounds the degenerate case of vanishing speeds).
pub fn adaptive_dt(model: &Model, state: &State, kind: CourantKind, target: f64, dt_max: f64) -> f64 {
    let one = courant_numbers(model, state, 1.0).get(kind);
    if one > 0.0 {
        (target / one).min(dt_max)
    } else {
        dt_max
    }
}
