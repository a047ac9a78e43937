//! Prognostic state and physical parameters.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::layout::{LayerLayout, Ragged};
use crate::mesh::Mesh1D;

/// Default minimum water depth; anything thinner aborts the run.
pub const H_MIN: f64 = 1e-6;

/// Free surface at cells, layer velocities at interfaces, layer density
/// perturbations at cells. Depth is always derived as `eta - b`.
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    pub eta: Vec<f64>,
    pub u: Ragged,
    pub rho: Ragged,
}

impl State {
    pub fn rest(mesh: &Mesh1D, layout: &LayerLayout, eta: f64) -> Self {
        Self { eta: vec![eta; mesh.cells()], u: layout.face_columns().zeros(), rho: layout.cell_columns().zeros() }
    }

    pub fn h(&self, mesh: &Mesh1D, i: usize) -> f64 {
        self.eta[i] - mesh.b[i]
    }

    pub fn depths(&self, mesh: &Mesh1D) -> Vec<f64> {
        self.eta.iter().zip(&mesh.b).map(|(e, b)| e - b).collect()
    }

    /// Shape agreement with mesh and layout.
    pub fn check_shape(&self, mesh: &Mesh1D, layout: &LayerLayout) -> Result<()> {
        if self.eta.len() != mesh.cells() || layout.cells() != mesh.cells() {
            return Err(Error::Shape(format!(
                "eta has {} cells, mesh {}, layout {}",
                self.eta.len(),
                mesh.cells(),
                layout.cells()
            )));
        }
        if self.u.cols != *layout.face_columns() {
            return Err(Error::Shape("velocity columns do not match the interface layering".into()));
        }
        if self.rho.cols != *layout.cell_columns() {
            return Err(Error::Shape("density columns do not match the cell layering".into()));
        }
        Ok(())
    }

    /// Non-finite values or depth at or below `h_min`.
    pub fn check_valid(&self, mesh: &Mesh1D, h_min: f64) -> std::result::Result<(), String> {
        for (i, (&e, &b)) in self.eta.iter().zip(&mesh.b).enumerate() {
            if !e.is_finite() {
                return Err(format!("eta not finite in cell {i}"));
            }
            if e - b <= h_min {
                return Err(format!("depth {} at or below {h_min} in cell {i}", e - b));
            }
        }
        if let Some(k) = self.u.data.iter().position(|v| !v.is_finite()) {
            return Err(format!("velocity not finite (entry {k})"));
        }
        if let Some(k) = self.rho.data.iter().position(|v| !v.is_finite()) {
            return Err(format!("density not finite (entry {k})"));
        }
        Ok(())
    }
}

/// Σ_i h_i Δx_i over a cell range.
pub fn volume_in(state: &State, mesh: &Mesh1D, cells: std::ops::Range<usize>) -> f64 {
    cells.map(|i| state.h(mesh, i) * mesh.dx[i]).sum()
}

pub fn total_volume(state: &State, mesh: &Mesh1D, _layout: &LayerLayout) -> f64 {
    volume_in(state, mesh, 0..mesh.cells())
}

/// Σ_i Σ_α ρ l h Δx over a cell range.
pub fn density_mass_in(state: &State, mesh: &Mesh1D, layout: &LayerLayout, cells: std::ops::Range<usize>) -> f64 {
    cells
        .map(|i| {
            let h = state.h(mesh, i);
            let col: f64 = state.rho.col(i).iter().zip(layout.cell(i)).map(|(r, l)| r * l * h).sum();
            col * mesh.dx[i]
        })
        .sum()
}

pub fn total_density_mass(state: &State, mesh: &Mesh1D, layout: &LayerLayout) -> f64 {
    density_mass_in(state, mesh, layout, 0..mesh.cells())
}

/// Vertical eddy viscosity closure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Viscosity {
    /// Constant kinematic viscosity, free-slip bottom.
    Constant { nu: f64 },
    /// Law-of-the-wall bottom drag `C_f |u_1| u_1` with
    /// `C_f = (kappa / ln(l_1 h / z0))^2`, and a parabolic eddy viscosity
    /// `kappa u_* z (1 - z/h) + nu_min` with `u_* = sqrt(C_f) |u_1|`.
    LawOfWall { z0: f64, kappa: f64, nu_min: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Wind {
    pub drag: f64,
    pub speed: f64,
}

impl Wind {
    /// Kinematic surface stress.
    pub fn stress(&self) -> f64 {
        self.drag * self.speed * self.speed.abs()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysParams {
    pub g: f64,
    pub rho0: f64,
    pub viscosity: Viscosity,
    pub wind: Option<Wind>,
    #[serde(default = "default_h_min")]
    pub h_min: f64,
}

fn default_h_min() -> f64 {
    H_MIN
}

impl Default for PhysParams {
    fn default() -> Self {
        Self { g: 9.81, rho0: 1000.0, viscosity: Viscosity::Constant { nu: 0.0 }, wind: None, h_min: H_MIN }
    }
}

impl PhysParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str, v: f64| Err(Error::Config(format!("{what} = {v}")));
        if !(self.g > 0.0) {
            return bad("g", self.g);
        }
        if !(self.rho0 > 0.0) {
            return bad("rho0", self.rho0);
        }
        if !(self.h_min > 0.0) {
            return bad("h_min", self.h_min);
        }
        match self.viscosity {
            Viscosity::Constant { nu } if !(nu >= 0.0) => return bad("nu", nu),
            Viscosity::LawOfWall { z0, kappa, nu_min } => {
                if !(z0 > 0.0) {
                    return bad("z0", z0);
                }
                if !(kappa >= 0.0) {
                    return bad("kappa", kappa);
                }
                if !(nu_min >= 0.0) {
                    return bad("nu_min", nu_min);
                }
            }
            _ => {}
        }
        if let Some(w) = self.wind {
            if !(w.drag >= 0.0) {
                return bad("wind drag", w.drag);
            }
        }
        Ok(())
    }
}
