//! Implicit stage of the semi-implicit integrator.
//!
//! The stage equations are
//!
//! ```text
//! u_j   = R_j + theta (-g (eta_R - eta_L)/dx_j + V_j u_j + wind_j)
//! eta_i = E_i - theta/dx_i (F_{i+1/2} - F_{i-1/2}),   F_j = h_j sum_a l_a u_{a,j}
//! ```
//!
//! with `V` the (frozen) viscous operator and `h_j` the frozen interface depth.
//! Each velocity column is eliminated with two tridiagonal solves,
//! `a = T^-1 (R + theta wind)` and `w = T^-1 e`, `T = I - theta V`, so that
//! `u_j = a_j - theta g (eta_R - eta_L)/dx_j w_j`. Substituting into the mass
//! equation gives a symmetric tridiagonal system for `eta - eta^n`.

use super::tridiag;
use crate::error::{Error, Result};
use crate::layout::Ragged;
use crate::spatial::{Edge, Model, VerticalCoeffs};

/// Neighbour of an interface in the free-surface system.
#[derive(Debug, Clone, Copy)]
enum Nb {
    Unknown(usize),
    Known(f64),
    Missing,
}

fn neighbours(model: &Model, edges: &[Edge; 2], j: usize) -> (Nb, Nb) {
    let pick = |cell: Option<usize>, edge: &Edge| match (cell, edge) {
        (Some(i), _) => Nb::Unknown(i),
        (None, Edge::Ghost { eta, .. }) => Nb::Known(*eta),
        _ => Nb::Missing,
    };
    (pick(model.left_cell(j), &edges[0]), pick(model.right_cell(j), &edges[1]))
}

fn nb_value(nb: Nb, eta: &[f64]) -> Option<f64> {
    match nb {
        Nb::Unknown(i) => Some(eta[i]),
        Nb::Known(v) => Some(v),
        Nb::Missing => None,
    }
}

/// Frozen data shared by the implicit stages of one step.
#[derive(Debug, Clone, Copy)]
pub struct StageOperator<'a> {
    pub model: &'a Model,
    pub coeffs: &'a VerticalCoeffs,
    /// Interface depth used in the implicit mass flux.
    pub h: &'a [f64],
}

impl StageOperator<'_> {
    /// Solves the stage for `(eta, u)` given the explicit parts `e_eta`, `r_u`,
    /// the level-`n` surface and the boundary data at the stage time.
    pub fn solve(
        &self,
        theta: f64,
        eta_n: &[f64],
        e_eta: &[f64],
        r_u: &Ragged,
        edges: &[Edge; 2],
        t: f64,
    ) -> Result<(Vec<f64>, Ragged)> {
        let model = self.model;
        let lay = &model.layout;
        let g = model.params.g;
        let m = model.cells();
        let nf = model.faces();
        let mut a = r_u.clone();
        let mut w = lay.face_columns().zeros();
        let mut p = vec![0.0; nf];
        let mut k = vec![0.0; nf];
        let nmax = lay.max_layers();
        let (mut lo, mut di, mut up) = (vec![0.0; nmax], vec![0.0; nmax], vec![0.0; nmax]);
        let fail = |reason: String| Error::StepFailure { t, reason };

        for j in 0..nf {
            if model.periodic() && j == m {
                p[j] = p[0];
                k[j] = k[0];
                let (a0, w0) = (a.col(0).to_vec(), w.col(0).to_vec());
                a.col_mut(j).copy_from_slice(&a0);
                w.col_mut(j).copy_from_slice(&w0);
                continue;
            }
            if !model.is_active(j) {
                p[j] = model.prescribed_flux_at(edges, j).unwrap_or(0.0);
                continue;
            }
            let l = lay.face(j);
            let n = l.len();
            self.coeffs.implicit_rows(l, j, theta, &mut lo[..n], &mut di[..n], &mut up[..n]);
            let aj = a.col_mut(j);
            for (x, alpha) in aj.iter_mut().zip(0..n) {
                *x += theta * self.coeffs.wind_forcing(l, j, alpha);
            }
            tridiag::solve(&lo[..n], &di[..n], &up[..n], aj)
                .ok_or_else(|| fail(format!("singular vertical system at interface {j}")))?;
            let wj = w.col_mut(j);
            wj.fill(1.0);
            tridiag::solve(&lo[..n], &di[..n], &up[..n], wj)
                .ok_or_else(|| fail(format!("singular vertical system at interface {j}")))?;
            let la: f64 = l.iter().zip(a.col(j)).map(|(l, x)| l * x).sum();
            let lw: f64 = l.iter().zip(w.col(j)).map(|(l, x)| l * x).sum();
            p[j] = self.h[j] * la;
            let (nl, nr) = neighbours(model, edges, j);
            if !matches!(nl, Nb::Missing) && !matches!(nr, Nb::Missing) {
                k[j] = theta * g * self.h[j] * lw / model.mesh.dx_half[j];
            }
        }

        // F0_j: flux with the surface frozen at level n (ghosts at stage time)
        let mut f0 = vec![0.0; nf];
        for j in 0..nf {
            f0[j] = p[j];
            if k[j] != 0.0 {
                let (nl, nr) = neighbours(model, edges, j);
                let (el, er) = (nb_value(nl, eta_n).unwrap(), nb_value(nr, eta_n).unwrap());
                f0[j] -= k[j] * (er - el);
            }
        }
        let mut lower = vec![0.0; m];
        let mut diag = vec![0.0; m];
        let mut upper = vec![0.0; m];
        let mut rhs = vec![0.0; m];
        for i in 0..m {
            let dx = model.mesh.dx[i];
            diag[i] = dx + theta * (k[i] + k[i + 1]);
            lower[i] = -theta * k[i];
            upper[i] = -theta * k[i + 1];
            rhs[i] = dx * (e_eta[i] - eta_n[i]) - theta * (f0[i + 1] - f0[i]);
        }
        if diag.iter().any(|d| !(*d > 0.0)) {
            return Err(fail("free-surface system lost positivity".into()));
        }
        if model.periodic() {
            tridiag::solve_cyclic(&lower, &diag, &upper, &mut rhs)
        } else {
            tridiag::solve(&lower, &diag, &upper, &mut rhs)
        }
        .ok_or_else(|| fail("singular free-surface system".into()))?;
        let eta: Vec<f64> = eta_n.iter().zip(&rhs).map(|(e, d)| e + d).collect();

        let mut u = a;
        for j in 0..nf {
            if k[j] == 0.0 && !model.is_active(j) {
                continue;
            }
            let (nl, nr) = neighbours(model, edges, j);
            let (Some(el), Some(er)) = (nb_value(nl, &eta), nb_value(nr, &eta)) else {
                continue;
            };
            let s = theta * g * (er - el) / model.mesh.dx_half[j];
            if s != 0.0 {
                for (x, wv) in u.col_mut(j).iter_mut().zip(w.col(j)) {
                    *x -= s * wv;
                }
            }
        }
        model.sync_periodic(&mut u);
        Ok((eta, u))
    }

    /// Largest absolute residual of the unreduced stage equations, the mass
    /// equation scaled by the cell length.
    #[allow(clippy::too_many_arguments)]
    pub fn residual(&self, theta: f64, e_eta: &[f64], r_u: &Ragged, edges: &[Edge; 2], eta: &[f64], u: &Ragged) -> f64 {
        let model = self.model;
        let lay = &model.layout;
        let g = model.params.g;
        let nf = model.faces();
        let mut res: f64 = 0.0;
        let mut flux = vec![0.0; nf];
        for j in 0..nf {
            let l = lay.face(j);
            if !model.is_active(j) && !(model.periodic() && j == model.cells()) {
                flux[j] = model.prescribed_flux_at(edges, j).unwrap_or(0.0);
                continue;
            }
            flux[j] = self.h[j] * l.iter().zip(u.col(j)).map(|(l, x)| l * x).sum::<f64>();
            let (nl, nr) = neighbours(model, edges, j);
            let grad = match (nb_value(nl, eta), nb_value(nr, eta)) {
                (Some(el), Some(er)) => -g * (er - el) / model.mesh.dx_half[j],
                _ => 0.0,
            };
            let mut v = vec![grad; l.len()];
            self.coeffs.add_tendency(l, j, u.col(j), &mut v);
            for a in 0..l.len() {
                let r = u.col(j)[a] - r_u.col(j)[a] - theta * v[a];
                res = res.max(r.abs());
            }
        }
        for i in 0..model.cells() {
            let dx = model.mesh.dx[i];
            let r = dx * (eta[i] - e_eta[i]) + theta * (flux[i + 1] - flux[i]);
            res = res.max(r.abs());
        }
        res
    }
}
