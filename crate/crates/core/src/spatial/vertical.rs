//! Vertical exchanges inside a velocity column: viscosity, bottom drag, wind,
//! and momentum carried by the mass transfer.

use super::{Faces, Model};
use crate::layout::{Columns, Ragged};
use crate::state::{State, Viscosity};

/// Closure coefficients of every velocity column, evaluated once and then
/// held fixed while they are used.
#[derive(Debug, Clone)]
pub struct VerticalCoeffs {
    /// Viscosity at the `N + 1` layer interfaces of each column; the bottom
    /// and surface entries are unused.
    pub nu: Ragged,
    /// Linearised bottom drag `C_f |u_1|` per column.
    pub drag: Vec<f64>,
    /// Depth used in the layer thicknesses.
    pub h: Vec<f64>,
    /// Kinematic wind stress on the top layer.
    pub wind: f64,
}

impl VerticalCoeffs {
    pub fn new(model: &Model, state: &State, faces: &Faces) -> Self {
        let lay = &model.layout;
        let cols = Columns::from_counts((0..model.faces()).map(|j| lay.n_face(j) + 1));
        let mut nu = cols.zeros();
        let mut drag = vec![0.0; model.faces()];
        let h = faces.h_half.clone();
        let wind = model.params.wind.map_or(0.0, |w| w.stress());
        for j in 0..model.faces() {
            let l = lay.face(j);
            let n = l.len();
            let col = nu.col_mut(j);
            match model.params.viscosity {
                Viscosity::Constant { nu } => col[1..n].fill(nu),
                Viscosity::LawOfWall { z0, kappa, nu_min } => {
                    let u1 = state.u.col(j)[0].abs();
                    let zr = l[0] * h[j];
                    let cf = (kappa / (zr / z0).ln().max(1.0)).powi(2);
                    drag[j] = cf * u1;
                    let ustar = cf.sqrt() * u1;
                    let mut z = 0.0;
                    for a in 1..n {
                        z += l[a - 1] * h[j];
                        col[a] = kappa * ustar * z * (1.0 - z / h[j]) + nu_min;
                    }
                }
            }
        }
        Self { nu, drag, h, wind }
    }

    /// Coupling coefficient `nu / (l_{a+1/2} h)` across layer interface `k`
    /// (between layers `k-1` and `k`) of column `j`.
    #[inline]
    fn coupling(&self, l: &[f64], j: usize, k: usize) -> f64 {
        self.nu.col(j)[k] / (0.5 * (l[k - 1] + l[k]) * self.h[j])
    }

    /// Tridiagonal rows of `I - theta V` for column `j`, where `V` is the
    /// viscous and drag operator in `du/dt` form.
    pub fn implicit_rows(
        &self,
        l: &[f64],
        j: usize,
        theta: f64,
        lower: &mut [f64],
        diag: &mut [f64],
        upper: &mut [f64],
    ) {
        let n = l.len();
        let h = self.h[j];
        for a in 0..n {
            let lh = l[a] * h;
            let dn = if a > 0 { self.coupling(l, j, a) } else { 0.0 };
            let up = if a + 1 < n { self.coupling(l, j, a + 1) } else { 0.0 };
            let fr = if a == 0 { self.drag[j] } else { 0.0 };
            lower[a] = -theta * dn / lh;
            upper[a] = -theta * up / lh;
            diag[a] = 1.0 + theta * (dn + up + fr) / lh;
        }
    }

    /// `V u + wind` for column `j` in `du/dt` form, added into `out`.
    pub fn add_tendency(&self, l: &[f64], j: usize, u: &[f64], out: &mut [f64]) {
        let n = l.len();
        let h = self.h[j];
        let mut ex = vec![0.0; n];
        viscous_exchange(self, l, j, u, &mut ex);
        for a in 0..n {
            out[a] += ex[a] / (l[a] * h);
        }
    }

    /// Constant wind forcing of column `j` in `du/dt` form.
    pub fn wind_forcing(&self, l: &[f64], j: usize, a: usize) -> f64 {
        if a + 1 == l.len() {
            self.wind / (l[a] * self.h[j])
        } else {
            0.0
        }
    }
}

/// Layer-integrated vertical exchange for column `j`:
/// `nu_{a+1/2} (u_{a+1} - u_a)/(l_{a+1/2} h) - nu_{a-1/2} (u_a - u_{a-1})/(l_{a-1/2} h)`,
/// minus `C_f |u_1| u_1` in the bottom layer, plus the wind stress in the top one.
pub fn viscous_exchange(coeffs: &VerticalCoeffs, l: &[f64], j: usize, u: &[f64], out: &mut [f64]) {
    let n = l.len();
    for a in 0..n {
        let mut v = 0.0;
        if a + 1 < n {
            v += coeffs.coupling(l, j, a + 1) * (u[a + 1] - u[a]);
        }
        if a > 0 {
            v -= coeffs.coupling(l, j, a) * (u[a] - u[a - 1]);
        }
        if a == 0 {
            v -= coeffs.drag[j] * u[0];
        }
        if a + 1 == n {
            v += coeffs.wind;
        }
        out[a] = v;
    }
}

/// Layer-integrated momentum carried by mass transfer:
/// `G_{a+1/2} (u_{a+1} - u_a)/2 + G_{a-1/2} (u_a - u_{a-1})/2`, with `g` the
/// transfer rate at the `N + 1` layer interfaces of the velocity point.
pub fn momentum_transfer_term(g: &[f64], u: &[f64], out: &mut [f64]) {
    let n = u.len();
    for a in 0..n {
        let mut v = 0.0;
        if a + 1 < n {
            v += g[a + 1] * (u[a + 1] - u[a]) / 2.0;
        }
        if a > 0 {
            v += g[a] * (u[a] - u[a - 1]) / 2.0;
        }
        out[a] = v;
    }
}
