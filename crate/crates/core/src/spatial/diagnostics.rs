//! Output-only vertical velocity.

use super::flux::{flux_divergence, mass_flux, mass_transfer};
use super::Model;
use crate::layout::{Ragged, Remap};
use crate::state::State;

/// Vertical velocity per cell layer, averaged from the layer interfaces where
/// `w = L d(eta)/dt + u dz/dx - G` (`L` the fraction of the column below the
/// interface, `z` its elevation). Bottom and surface follow the kinematic
/// conditions since `G` vanishes there.
pub fn diagnostic_w(model: &Model, state: &State, t: f64) -> Ragged {
    let lay = &model.layout;
    let mesh = &model.mesh;
    let faces = model.face_fields(state, t);
    let flux = mass_flux(model, &state.u, &faces.h_half, &faces, true);
    let deta = flux_divergence(model, &flux);
    let g = mass_transfer(model, &flux);
    let mut w = lay.cell_columns().zeros();
    let m = model.cells();
    for i in 0..m {
        let l = lay.cell(i);
        let n = l.len();
        // interface velocities from both faces, on the cell layering
        let mut ui = vec![0.0; n + 1];
        for j in [i, i + 1] {
            let remap = Remap::between(lay.face(j), l).expect("conformal layout");
            let mut uc = vec![0.0; n];
            remap.apply(state.u.col(j), &mut uc);
            for k in 0..=n {
                let v = match k {
                    0 => uc[0],
                    k if k == n => uc[n - 1],
                    k => 0.5 * (uc[k - 1] + uc[k]),
                };
                ui[k] += 0.5 * v;
            }
        }
        let (il, ir) = match (model.left_cell(i), model.right_cell(i + 1)) {
            (Some(a), Some(b)) => (a, b),
            (None, Some(b)) => (i, b),
            (Some(a), None) => (a, i),
            (None, None) => (i, i),
        };
        let span = if il == ir {
            f64::INFINITY
        } else {
            let xl = mesh.x_center[il];
            let xr = mesh.x_center[ir];
            let d = xr - xl;
            if d > 0.0 {
                d
            } else {
                // periodic wrap
                d + (mesh.x_iface[m] - mesh.x_iface[0])
            }
        };
        let hl = state.eta[il] - mesh.b[il];
        let hr = state.eta[ir] - mesh.b[ir];
        let mut wi = vec![0.0; n + 1];
        let mut frac = 0.0;
        for k in 0..=n {
            let dz = ((mesh.b[ir] + hr * frac) - (mesh.b[il] + hl * frac)) / span;
            wi[k] = frac * deta[i] + ui[k] * dz - g.col(i)[k];
            if k < n {
                frac += l[k];
            }
        }
        for (a, o) in w.col_mut(i).iter_mut().enumerate() {
            *o = 0.5 * (wi[a] + wi[a + 1]);
        }
    }
    w
}
