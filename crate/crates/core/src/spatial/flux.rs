//! Layer mass fluxes, the free-surface tendency and mass transfer between layers.

use super::{Faces, Model};
use crate::layout::Ragged;
use crate::state::State;

/// Layer mass fluxes `l h_half u` on the flux layering of every interface.
/// `h_half` is supplied so that callers may freeze or perturb it. With
/// `prescribed = false` the fluxes through wall or discharge interfaces are
/// left at zero instead of their prescribed values.
pub fn mass_flux(model: &Model, u: &Ragged, h_half: &[f64], faces: &Faces, prescribed: bool) -> Ragged {
    let lay = &model.layout;
    let mut flux = lay.flux_columns().zeros();
    for j in 0..model.faces() {
        let frac = lay.flux_fractions(j);
        let out = flux.col_mut(j);
        if let Some(q) = model.prescribed_flux(faces, j) {
            if prescribed {
                for (o, l) in out.iter_mut().zip(frac) {
                    *o = l * q;
                }
            }
            continue;
        }
        let uj = u.col(j);
        let h = h_half[j];
        for ((o, l), &p) in out.iter_mut().zip(frac).zip(lay.flux_parent(j)) {
            *o = l * h * uj[p];
        }
    }
    flux
}

/// Per-layer values of a flux-layering quantity at face `side` (0 left,
/// 1 right) of cell `i`, expressed on the cell layering. Child layers of a
/// coarse cell are summed left to right.
pub fn cell_side_values(model: &Model, flux: &Ragged, i: usize, side: usize, out: &mut [f64]) {
    let lay = &model.layout;
    let j = i + side;
    let cf = lay.cell_face(i, side);
    let col = flux.col(j);
    if cf.owns_flux_layering {
        out.copy_from_slice(col);
    } else {
        out.fill(0.0);
        for (v, &p) in col.iter().zip(lay.flux_parent(j)) {
            out[p] += v;
        }
    }
}

/// `-(F_{i+1/2} - F_{i-1/2}) / dx_i` with `F` the column-summed flux.
pub fn flux_divergence(model: &Model, flux: &Ragged) -> Vec<f64> {
    let totals: Vec<f64> = (0..model.faces()).map(|j| flux.col(j).iter().sum()).collect();
    (0..model.cells()).map(|i| -(totals[i + 1] - totals[i]) / model.mesh.dx[i]).collect()
}

/// Free-surface tendency of `state` at time `t`.
pub fn free_surface_rhs(model: &Model, state: &State, t: f64) -> Vec<f64> {
    let faces = model.face_fields(state, t);
    let flux = mass_flux(model, &state.u, &faces.h_half, &faces, true);
    flux_divergence(model, &flux)
}

/// Mass-transfer rate at the `N_i + 1` layer interfaces of every cell:
/// `G_{a+1/2} = (1/dx) sum_{b<=a} (D_b - l_b sum_c D_c)` with `D` the layer
/// flux differences. Bottom and surface entries are exactly zero.
pub fn mass_transfer(model: &Model, flux: &Ragged) -> Ragged {
    let lay = &model.layout;
    let mut g = model.transfer_columns().zeros();
    let mut fl = Vec::new();
    let mut fr = Vec::new();
    for i in 0..model.cells() {
        let n = lay.n_cell(i);
        fl.resize(n, 0.0);
        fr.resize(n, 0.0);
        cell_side_values(model, flux, i, 0, &mut fl);
        cell_side_values(model, flux, i, 1, &mut fr);
        let total: f64 = fr.iter().zip(&fl).map(|(r, l)| r - l).sum();
        let l = lay.cell(i);
        let inv_dx = 1.0 / model.mesh.dx[i];
        let col = g.col_mut(i);
        let mut acc = 0.0;
        for a in 0..n - 1 {
            acc += (fr[a] - fl[a]) - l[a] * total;
            col[a + 1] = acc * inv_dx;
        }
        col[0] = 0.0;
        col[n] = 0.0;
    }
    g
}

/// Mass-transfer rate at the layer interfaces of velocity point `j`: the mean
/// of the two adjacent cell values, or the single one at a boundary.
pub fn face_transfer(model: &Model, g: &Ragged, j: usize, out: &mut [f64]) {
    let lay = &model.layout;
    let left = model.left_cell(j).map(|i| (i, 1));
    let right = model.right_cell(j).map(|i| (i, 0));
    out.fill(0.0);
    let mut count = 0.0;
    for (i, s) in [left, right].into_iter().flatten() {
        let map = &lay.cell_face(i, s).boundary;
        let col = g.col(i);
        for (o, &k) in out.iter_mut().zip(map) {
            *o += col[k];
        }
        count += 1.0;
    }
    if count > 1.0 {
        out.iter_mut().for_each(|o| *o *= 0.5);
    }
}
