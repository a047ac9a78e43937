//! Pressure gradients at velocity points.

use super::upwind::upwind_interface;
use super::{Faces, Model};
use crate::state::State;

/// `-g (eta_R - eta_L) / dx_half`, the same for every layer. Zero where an
/// interface has fewer than two neighbours.
pub fn barotropic_gradient(model: &Model, state: &State, faces: &Faces, j: usize) -> f64 {
    let l = model.side_column(state, model.side(faces, j, true));
    let r = model.side_column(state, model.side(faces, j, false));
    match (l, r) {
        (Some(l), Some(r)) => -model.params.g * (r.0 - l.0) / model.mesh.dx_half[j],
        _ => 0.0,
    }
}

/// Baroclinic term for every layer of interface `j`, written into `out`:
///
/// `-(g/dx) [ sum_{b>a} l_b d(rho h)_b + l_a d(rho h)_a / 2 ]
///  -(g/dx) rho_a* [ db + dh (sum_{b<a} l_b + l_a/2) ]`
///
/// with `rho_a*` upwinded by the layer velocity. `scratch` needs room for two
/// face columns.
pub fn baroclinic_gradient(
    model: &Model,
    state: &State,
    faces: &Faces,
    j: usize,
    out: &mut [f64],
    scratch: &mut Vec<f64>,
) {
    let n = model.layout.n_face(j);
    out.fill(0.0);
    let sl = model.side(faces, j, true);
    let sr = model.side(faces, j, false);
    let (Some((_, bl, hl)), Some((_, br, hr))) = (model.side_column(state, sl), model.side_column(state, sr)) else {
        return;
    };
    scratch.resize(2 * n, 0.0);
    let (rl, rr) = scratch.split_at_mut(n);
    model.side_rho_on_face(&state.rho, sl, true, rl);
    model.side_rho_on_face(&state.rho, sr, false, rr);
    let l = model.layout.face(j);
    let u = state.u.col(j);
    let c = model.params.g / model.mesh.dx_half[j];
    let db = br - bl;
    let dh = hr - hl;

    let mut above = 0.0;
    for a in (0..n).rev() {
        let d_rho_h = rr[a] * hr - rl[a] * hl;
        out[a] = -c * (above + l[a] * d_rho_h / 2.0);
        above += l[a] * d_rho_h;
    }
    let mut below = 0.0;
    for a in 0..n {
        let rho = upwind_interface(rl[a], rr[a], u[a]);
        out[a] -= c * rho * (db + dh * (below + l[a] / 2.0));
        below += l[a];
    }
}
