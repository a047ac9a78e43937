//! Right-hand side of the layer density equation, in conserved form
//! `q = l h rho`.

use super::flux::cell_side_values;
use super::upwind::{density_interface_value, upwind_interface};
use super::{Edge, Faces, Model};
use crate::layout::Ragged;
use crate::state::State;

/// Density entering through interface `j` from the left (`left = true`) or
/// right, on the flux layering.
fn side_density(model: &Model, rho: &Ragged, faces: &Faces, j: usize, left: bool, k: usize) -> f64 {
    let lay = &model.layout;
    let cell = if left { model.left_cell(j) } else { model.right_cell(j) };
    if let Some(i) = cell {
        let cf = lay.cell_face(i, usize::from(left));
        let col = rho.col(i);
        return if cf.owns_flux_layering { col[k] } else { col[lay.flux_parent(j)[k]] };
    }
    match &faces.edges[usize::from(!left)] {
        Edge::Ghost { rho: r, .. } | Edge::Flux { rho: r, .. } => r[lay.flux_parent(j)[k]],
        // Closed walls carry no flux; use the interior value.
        _ => side_density(model, rho, faces, j, !left, k),
    }
}

/// Horizontal part: `-(1/dx_i) (l h rho* u |_{i+1/2} - l h rho* u |_{i-1/2})`
/// per cell layer, with `rho*` upwinded by the sign of `carrier`.
pub fn density_rhs_flux(model: &Model, rho: &Ragged, flux: &Ragged, carrier: &Ragged, faces: &Faces) -> Ragged {
    let lay = &model.layout;
    let mut prod = lay.flux_columns().zeros();
    for j in 0..model.faces() {
        let f = flux.col(j);
        let c = carrier.col(j);
        let out = prod.col_mut(j);
        for k in 0..f.len() {
            if f[k] == 0.0 {
                continue;
            }
            let r = upwind_interface(
                side_density(model, rho, faces, j, true, k),
                side_density(model, rho, faces, j, false, k),
                c[k],
            );
            out[k] = f[k] * r;
        }
    }
    let mut div = lay.cell_columns().zeros();
    let mut pl = Vec::new();
    let mut pr = Vec::new();
    for i in 0..model.cells() {
        let n = lay.n_cell(i);
        pl.resize(n, 0.0);
        pr.resize(n, 0.0);
        cell_side_values(model, &prod, i, 0, &mut pl);
        cell_side_values(model, &prod, i, 1, &mut pr);
        let dx = model.mesh.dx[i];
        for (o, (r, l)) in div.col_mut(i).iter_mut().zip(pr.iter().zip(&pl)) {
            *o = -(r - l) / dx;
        }
    }
    div
}

/// Vertical part `rho_{a+1/2} G_{a+1/2} - rho_{a-1/2} G_{a-1/2}`, the
/// interface density upwinded by the sign of `g_carrier`.
pub fn density_vertical(model: &Model, rho: &Ragged, g: &Ragged, g_carrier: &Ragged) -> Ragged {
    let mut out = model.layout.cell_columns().zeros();
    for i in 0..model.cells() {
        let r = rho.col(i);
        let gc = g.col(i);
        let gs = g_carrier.col(i);
        let o = out.col_mut(i);
        let n = r.len();
        let mut below = 0.0;
        for a in 0..n {
            let above = if a + 1 < n { density_interface_value(r[a], r[a + 1], gs[a + 1]) * gc[a + 1] } else { 0.0 };
            o[a] = above - below;
            below = above;
        }
    }
    out
}

/// Full `dq/dt`, horizontal plus vertical part.
#[allow(clippy::too_many_arguments)]
pub fn density_tendency(
    model: &Model,
    rho: &Ragged,
    flux: &Ragged,
    carrier: &Ragged,
    g: &Ragged,
    g_carrier: &Ragged,
    faces: &Faces,
) -> Ragged {
    let mut out = density_rhs_flux(model, rho, flux, carrier, faces);
    out.axpy(1.0, &density_vertical(model, rho, g, g_carrier));
    out
}

pub fn q_from_rho(model: &Model, state: &State) -> Ragged {
    let mut q = state.rho.clone();
    for i in 0..model.cells() {
        let h = state.eta[i] - model.mesh.b[i];
        for (v, l) in q.col_mut(i).iter_mut().zip(model.layout.cell(i)) {
            *v *= l * h;
        }
    }
    q
}

/// Inverts `q = l h rho` for the depths of `eta`.
pub fn rho_from_q(model: &Model, q: &Ragged, eta: &[f64], rho: &mut Ragged) {
    for i in 0..model.cells() {
        let h = eta[i] - model.mesh.b[i];
        for ((r, v), l) in rho.col_mut(i).iter_mut().zip(q.col(i)).zip(model.layout.cell(i)) {
            *r = v / (l * h);
        }
    }
}
