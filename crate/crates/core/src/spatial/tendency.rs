//! Assembled tendencies, split into the stiff and non-stiff parts.

use super::advection::momentum_advection;
use super::density::{density_tendency, q_from_rho};
use super::flux::{face_transfer, flux_divergence, mass_flux, mass_transfer};
use super::pressure::{baroclinic_gradient, barotropic_gradient};
use super::vertical::{momentum_transfer_term, VerticalCoeffs};
use super::{Faces, Model};
use crate::layout::Ragged;
use crate::state::State;

/// Time derivative of `(eta, u, q = l h rho)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tendency {
    pub eta: Vec<f64>,
    pub u: Ragged,
    pub q: Ragged,
}

impl Model {
    /// Momentum advection, vertical momentum transfer and baroclinic pressure
    /// in `du/dt` form. `g` is the mass-transfer field of the same state.
    pub fn nonstiff_velocity(&self, state: &State, faces: &Faces, g: &Ragged) -> Ragged {
        let lay = &self.layout;
        let mut out = lay.face_columns().zeros();
        let n_max = lay.max_layers();
        let mut adv = vec![0.0; n_max];
        let mut gf = vec![0.0; n_max + 1];
        let mut tr = vec![0.0; n_max];
        let mut bc = vec![0.0; n_max];
        let mut scratch = Vec::new();
        for j in 0..self.faces() {
            if !self.is_active(j) {
                continue;
            }
            let n = lay.n_face(j);
            let l = lay.face(j);
            let h = faces.h_half[j];
            let u = state.u.col(j);
            momentum_advection(self, &state.u, j, &mut adv[..n]);
            face_transfer(self, g, j, &mut gf[..n + 1]);
            momentum_transfer_term(&gf[..n + 1], u, &mut tr[..n]);
            baroclinic_gradient(self, state, faces, j, &mut bc[..n], &mut scratch);
            for (a, o) in out.col_mut(j).iter_mut().enumerate() {
                *o = -adv[a] + tr[a] / (l[a] * h) + bc[a];
            }
        }
        self.sync_periodic(&mut out);
        out
    }

    /// Barotropic pressure gradient, vertical viscosity, bottom drag and wind
    /// in `du/dt` form, with closure coefficients supplied by the caller.
    pub fn stiff_velocity(&self, state: &State, faces: &Faces, coeffs: &VerticalCoeffs) -> Ragged {
        let lay = &self.layout;
        let mut out = lay.face_columns().zeros();
        for j in 0..self.faces() {
            if !self.is_active(j) {
                continue;
            }
            let p = barotropic_gradient(self, state, faces, j);
            let col = out.col_mut(j);
            col.fill(p);
            coeffs.add_tendency(lay.face(j), j, state.u.col(j), col);
        }
        self.sync_periodic(&mut out);
        out
    }

    /// Copies the first interface onto the last on periodic meshes.
    pub(crate) fn sync_periodic(&self, r: &mut Ragged) {
        if self.periodic() {
            let m = self.cells();
            let first = r.col(0).to_vec();
            r.col_mut(m).copy_from_slice(&first);
        }
    }

    /// Full right-hand side at time `t`, closure evaluated on `state`. Returns
    /// the tendency together with the interface diagnostics it used.
    pub fn rhs(&self, state: &State, t: f64) -> (Tendency, Faces) {
        let faces = self.face_fields(state, t);
        let flux = mass_flux(self, &state.u, &faces.h_half, &faces, true);
        let g = mass_transfer(self, &flux);
        let eta = flux_divergence(self, &flux);
        let coeffs = VerticalCoeffs::new(self, state, &faces);
        let mut u = self.nonstiff_velocity(state, &faces, &g);
        u.axpy(1.0, &self.stiff_velocity(state, &faces, &coeffs));
        let q = density_tendency(self, &state.rho, &flux, &flux, &g, &g, &faces);
        (Tendency { eta, u, q }, faces)
    }

    pub fn q(&self, state: &State) -> Ragged {
        q_from_rho(self, state)
    }
}
