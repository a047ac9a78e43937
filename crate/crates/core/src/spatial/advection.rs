//! Upstream-biased momentum advection `u du/dx` at velocity points.

use super::upwind::minmod;
use super::Model;
use crate::layout::{Ragged, Remap};

/// Interface value of face `k` on the layering of face `j` (its neighbour).
fn neighbour_value(remap: &Remap, u: &Ragged, k: usize, alpha: usize, buf: &mut Vec<f64>, nj: usize) -> f64 {
    match remap {
        Remap::Identity => u.col(k)[alpha],
        _ => {
            buf.resize(nj, 0.0);
            remap.apply(u.col(k), buf);
            buf[alpha]
        }
    }
}

/// `u du/dx` for every layer at interface `j`, written into `out`.
///
/// Upwind side `p1`, `p2` and downwind side `n1`, oriented by the sign of the
/// layer velocity. The slope at a point is `sigma = backward difference`
/// unlimited, or `minmod(backward, forward)` limited, and
/// `du/dx = s [(u + sigma/2) - (u_p1 + sigma_p1/2)] / dx`. Unlimited, this is
/// `(3u - 4u_p1 + u_p2) / (2dx)`. Where the second upstream point is missing
/// or a layer split/merge lies inside the stencil the first-order difference
/// is used; with no upstream point at all the gradient is zero.
pub fn momentum_advection(model: &Model, u: &Ragged, j: usize, out: &mut [f64]) {
    let lay = &model.layout;
    let nj = lay.n_face(j);
    let dx = model.mesh.dx_half[j];
    let uj = u.col(j);
    let mut buf = Vec::new();
    for a in 0..nj {
        let v = uj[a];
        if v == 0.0 {
            out[a] = 0.0;
            continue;
        }
        let d: isize = if v > 0.0 { -1 } else { 1 };
        let s = -(d as f64);
        let Some(p1) = model.face_step(j, d) else {
            out[a] = 0.0;
            continue;
        };
        let r1 = if d < 0 { lay.remap_from_left(j) } else { lay.remap_from_right(j) }.expect("neighbour exists");
        let up1 = neighbour_value(r1, u, p1, a, &mut buf, nj);

        let p2 = model.face_step(p1, d).filter(|&p2| {
            let r2 = if d < 0 { lay.remap_from_left(p1) } else { lay.remap_from_right(p1) };
            r1.is_identity() && r2.is_some_and(Remap::is_identity) && p2 != j
        });
        let Some(p2) = p2 else {
            out[a] = v * s * (v - up1) / dx;
            continue;
        };
        let up2 = u.col(p2)[a];
        let back_j = v - up1;
        let back_p1 = up1 - up2;
        let grad = if model.limiter {
            let n1 = model.face_step(j, -d).filter(|_| {
                let r = if d < 0 { lay.remap_from_right(j) } else { lay.remap_from_left(j) };
                r.is_some_and(Remap::is_identity)
            });
            let sig_j = match n1 {
                Some(n1) => minmod(back_j, u.col(n1)[a] - v),
                None => 0.0,
            };
            let sig_p1 = minmod(back_p1, back_j);
            (v + 0.5 * sig_j) - (up1 + 0.5 * sig_p1)
        } else {
            (3.0 * v - 4.0 * up1 + up2) / 2.0
        };
        out[a] = v * s * grad / dx;
    }
}
