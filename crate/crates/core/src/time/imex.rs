//! Semi-implicit IMEX-ARK2 step.
//!
//! Stiff part: the mass flux with the interface depth frozen at level `n`,
//! the barotropic pressure gradient, vertical viscosity, bottom drag and wind.
//! Non-stiff part: momentum advection, momentum transfer, baroclinic pressure
//! and, in the [`ImexFormulation::Consistent`] split, the mass flux carried by
//! the change of interface depth since level `n`.
//!
//! The density is never solved for implicitly. Its stage values are
//! linearised: the implicit fluxes of a stage are upwinded with the density of
//! the previous stage.

use serde::{Deserialize, Serialize};

use super::implicit::StageOperator;
use super::{check, check_dt, combine, combine_vec, recover_density, ButcherPair, Integrator, WorkCounters};
use crate::error::Result;
use crate::layout::Ragged;
use crate::spatial::{
    density_rhs_flux, density_tendency, density_vertical, flux_divergence, mass_flux, mass_transfer, Faces, Model,
    VerticalCoeffs,
};
use crate::state::State;

/// How the mass flux and the density stages are split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ImexFormulation {
    /// Depth change since level `n` treated explicitly, and density stages
    /// built from the same fluxes as the layer thicknesses, so a uniform
    /// density stays uniform.
    #[default]
    Consistent,
    /// Mass flux entirely implicit with the level-`n` depth, density stages
    /// exactly as the linearised update formulas are usually displayed
    /// (stage 3 pairs the stage-2 and stage-3 velocities in one carrier and
    /// weights the stage-1 flux by `a~31`).
    AsPrinted,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Imex {
    pub tableau: ButcherPair,
    pub formulation: ImexFormulation,
}

impl Default for Imex {
    fn default() -> Self {
        Self { tableau: ButcherPair::ark2(), formulation: ImexFormulation::Consistent }
    }
}

/// Everything evaluated on one stage value.
struct StageEval {
    faces: Faces,
    phi_s: Ragged,
    phi_ns: Ragged,
    g_s: Ragged,
    g_ns: Ragged,
    fs_eta: Vec<f64>,
    fns_eta: Vec<f64>,
    fs_u: Ragged,
    fns_u: Ragged,
}

impl StageEval {
    fn phi(&self) -> Ragged {
        combine(&[(1.0, &self.phi_s), (1.0, &self.phi_ns)])
    }

    fn g(&self) -> Ragged {
        combine(&[(1.0, &self.g_s), (1.0, &self.g_ns)])
    }
}

impl Imex {
    pub fn with_formulation(formulation: ImexFormulation) -> Self {
        Self { formulation, ..Self::default() }
    }

    /// Fluxes, transfer and free-surface tendencies of a stage value. These
    /// do not involve the density.
    fn fluxes(&self, model: &Model, y: &State, t: f64, h_n: &[f64]) -> StageEval {
        let faces = model.face_fields(y, t);
        let phi_s = mass_flux(model, &y.u, h_n, &faces, true);
        let phi_ns = match self.formulation {
            ImexFormulation::Consistent => {
                let dh: Vec<f64> = faces.h_half.iter().zip(h_n).map(|(a, b)| a - b).collect();
                mass_flux(model, &y.u, &dh, &faces, false)
            }
            ImexFormulation::AsPrinted => model.layout.flux_columns().zeros(),
        };
        let zeros = model.layout.face_columns().zeros();
        StageEval {
            fs_eta: flux_divergence(model, &phi_s),
            fns_eta: flux_divergence(model, &phi_ns),
            g_s: mass_transfer(model, &phi_s),
            g_ns: mass_transfer(model, &phi_ns),
            faces,
            phi_s,
            phi_ns,
            fs_u: zeros.clone(),
            fns_u: zeros,
        }
    }

    /// Velocity tendencies of a stage value, once its density is known.
    fn velocities(model: &Model, y: &State, coeffs: &VerticalCoeffs, e: &mut StageEval, work: &mut WorkCounters) {
        e.fns_u = model.nonstiff_velocity(y, &e.faces, &e.g());
        e.fs_u = model.stiff_velocity(y, &e.faces, coeffs);
        work.nonstiff_evals += 1;
    }

    /// Explicit density tendency of a stage: non-stiff fluxes upwinded by the
    /// total flux.
    fn density_ns(model: &Model, rho: &Ragged, e: &StageEval) -> Ragged {
        density_tendency(model, rho, &e.phi_ns, &e.phi(), &e.g_ns, &e.g(), &e.faces)
    }

    /// Density tendency of a combined implicit flux, upwinded by itself.
    fn density_s(model: &Model, rho: &Ragged, phi: &Ragged, faces: &Faces) -> Ragged {
        let g = mass_transfer(model, phi);
        density_tendency(model, rho, phi, phi, &g, &g, faces)
    }

    /// Increment of `l h rho` over stage `l` (1-based 2 or 3).
    fn density_increment(&self, model: &Model, l: usize, dt: f64, rho: &[&Ragged], ev: &[StageEval]) -> Ragged {
        let a = &self.tableau.a;
        let at = &self.tableau.a_imp;
        let mut dq = match (self.formulation, l) {
            (ImexFormulation::Consistent, 2) => {
                let phic = combine(&[(at[1][0], &ev[0].phi_s), (at[1][1], &ev[1].phi_s)]);
                let mut d = Self::density_s(model, rho[0], &phic, &ev[1].faces);
                d.axpy(a[1][0], &Self::density_ns(model, rho[0], &ev[0]));
                d
            }
            (ImexFormulation::Consistent, _) => {
                let phic = combine(&[(at[2][1], &ev[1].phi_s), (at[2][2], &ev[2].phi_s)]);
                let mut d = Self::density_s(model, rho[1], &phic, &ev[2].faces);
                d.axpy(at[2][0], &Self::density_s(model, rho[0], &ev[0].phi_s, &ev[0].faces));
                d.axpy(a[2][0], &Self::density_ns(model, rho[0], &ev[0]));
                d.axpy(a[2][1], &Self::density_ns(model, rho[1], &ev[1]));
                d
            }
            (ImexFormulation::AsPrinted, 2) => {
                let phic = combine(&[(at[1][1], &ev[1].phi_s), (at[1][0], &ev[0].phi_s)]);
                let mut d = density_rhs_flux(model, rho[0], &phic, &phic, &ev[1].faces);
                d.axpy(a[1][0], &density_vertical(model, rho[0], &ev[0].g_s, &ev[0].g_s));
                d
            }
            (ImexFormulation::AsPrinted, _) => {
                let phic = combine(&[(at[2][1], &ev[2].phi_s), (at[2][0], &ev[1].phi_s)]);
                let mut d = density_rhs_flux(model, rho[1], &phic, &phic, &ev[2].faces);
                d.axpy(a[2][1], &density_vertical(model, rho[1], &ev[1].g_s, &ev[1].g_s));
                let h1 = density_rhs_flux(model, rho[0], &ev[0].phi_s, &ev[0].phi_s, &ev[0].faces);
                d.axpy(at[2][0], &h1);
                d.axpy(a[2][0], &density_vertical(model, rho[0], &ev[0].g_s, &ev[0].g_s));
                d
            }
        };
        dq.data.iter_mut().for_each(|v| *v *= dt);
        dq
    }
}

impl Integrator for Imex {
    fn name(&self) -> &'static str {
        "imex"
    }

    fn step(&self, model: &Model, state: &State, t: f64, dt: f64, work: &mut WorkCounters) -> Result<State> {
        check_dt(dt, t)?;
        let tab = &self.tableau;
        let faces_n = model.face_fields(state, t);
        let h_n = faces_n.h_half.clone();
        let coeffs = VerticalCoeffs::new(model, state, &faces_n);
        let op = StageOperator { model, coeffs: &coeffs, h: &h_n };

        let mut ys: Vec<State> = vec![state.clone()];
        let mut first = self.fluxes(model, state, t, &h_n);
        Self::velocities(model, state, &coeffs, &mut first, work);
        let mut ev: Vec<StageEval> = vec![first];
        for l in 1..3 {
            let tl = t + tab.c[l] * dt;
            let mut e_terms: Vec<(f64, &[f64])> = vec![(1.0, &state.eta)];
            let mut u_terms: Vec<(f64, &Ragged)> = vec![(1.0, &state.u)];
            for (m, e) in ev.iter().enumerate() {
                e_terms.push((dt * tab.a[l][m], &e.fns_eta));
                e_terms.push((dt * tab.a_imp[l][m], &e.fs_eta));
                u_terms.push((dt * tab.a[l][m], &e.fns_u));
                u_terms.push((dt * tab.a_imp[l][m], &e.fs_u));
            }
            let e_eta = combine_vec(&e_terms);
            let r_u = combine(&u_terms);
            let theta = dt * tab.a_imp[l][l];
            let edges = model.edges_at(tl);
            let (eta, u) = op.solve(theta, &state.eta, &e_eta, &r_u, &edges, tl)?;
            work.implicit_solves += 1;
            let mut y = State { eta, u, rho: state.rho.clone() };
            model.apply_velocity_bc(&mut y, tl);
            check(model, &y, tl)?;
            ev.push(self.fluxes(model, &y, tl, &h_n));
            let rhos: Vec<&Ragged> = ys.iter().map(|y| &y.rho).collect();
            let dq = self.density_increment(model, l + 1, dt, &rhos, &ev);
            y.rho = recover_density(model, &state.rho, &state.eta, &dq, &y.eta);
            check(model, &y, tl)?;
            Self::velocities(model, &y, &coeffs, ev.last_mut().unwrap(), work);
            ys.push(y);
        }

        let mut e_terms: Vec<(f64, &[f64])> = vec![(1.0, &state.eta)];
        let mut u_terms: Vec<(f64, &Ragged)> = vec![(1.0, &state.u)];
        for (b, e) in tab.b.iter().zip(&ev) {
            e_terms.push((dt * b, &e.fns_eta));
            e_terms.push((dt * b, &e.fs_eta));
            u_terms.push((dt * b, &e.fns_u));
            u_terms.push((dt * b, &e.fs_u));
        }
        let eta = combine_vec(&e_terms);
        let u = combine(&u_terms);
        let mut dq = model.layout.cell_columns().zeros();
        for ((b, e), y) in tab.b.iter().zip(&ev).zip(&ys) {
            let phi = e.phi();
            let g = e.g();
            dq.axpy(dt * b, &density_tendency(model, &y.rho, &phi, &phi, &g, &g, &e.faces));
        }
        let rho = recover_density(model, &state.rho, &state.eta, &dq, &eta);
        let mut out = State { eta, u, rho };
        model.apply_velocity_bc(&mut out, t + dt);
        check(model, &out, t + dt)?;
        work.steps += 1;
        Ok(out)
    }
}
