//! Staggered finite-volume operators.
//!
//! Every velocity tendency is returned in `du/dt` form, i.e. already divided
//! by the layer thickness `l h` at the interface.

mod advection;
mod density;
mod diagnostics;
mod flux;
mod pressure;
mod tendency;
pub mod upwind;
mod vertical;

pub use advection::momentum_advection;
pub use density::{density_rhs_flux, density_tendency, density_vertical, q_from_rho, rho_from_q};
pub use diagnostics::diagnostic_w;
pub use flux::{cell_side_values, face_transfer, flux_divergence, free_surface_rhs, mass_flux, mass_transfer};
pub use pressure::{baroclinic_gradient, barotropic_gradient};
pub use tendency::Tendency;
pub use upwind::{density_interface_value, minmod, upwind_interface};
pub use vertical::{momentum_transfer_term, viscous_exchange, VerticalCoeffs};

use crate::boundary::{Boundaries, Boundary};
use crate::error::{Error, Result};
use crate::layout::{Columns, LayerLayout, Ragged};
use crate::mesh::Mesh1D;
use crate::state::{PhysParams, State};

/// Mesh, layering, physics and boundary conditions: everything the discrete
/// operators need besides the state.
#[derive(Debug, Clone)]
pub struct Model {
    pub mesh: Mesh1D,
    pub layout: LayerLayout,
    pub params: PhysParams,
    pub bc: Boundaries,
    /// Minmod limiting of the momentum advection slopes.
    pub limiter: bool,
    transfer_cols: Columns,
}

/// Boundary information at one end, evaluated at a given time.
#[derive(Debug, Clone, PartialEq)]
pub enum Edge {
    Closed,
    Periodic,
    /// Prescribed inflow (per unit width, positive into the domain) and its
    /// density per boundary-interface layer.
    Flux {
        q: f64,
        rho: Vec<f64>,
    },
    /// Ghost cell with prescribed surface; bottom copied from the boundary cell.
    Ghost {
        eta: f64,
        b: f64,
        rho: Vec<f64>,
    },
}

/// One neighbour of an interface.
#[derive(Debug, Clone, Copy)]
pub enum Side<'a> {
    Cell(usize),
    Ghost { eta: f64, b: f64, rho: &'a [f64] },
    Outside,
}

/// Interface diagnostics of one state at one time.
#[derive(Debug, Clone)]
pub struct Faces {
    pub t: f64,
    /// Upwind depth at each interface.
    pub h_half: Vec<f64>,
    /// Depth-averaged velocity at each interface.
    pub ubar: Vec<f64>,
    pub edges: [Edge; 2],
}

impl Model {
    pub fn new(mesh: Mesh1D, layout: LayerLayout, params: PhysParams, bc: Boundaries, limiter: bool) -> Result<Self> {
        params.validate()?;
        if layout.faces() != mesh.faces() {
            return Err(Error::Shape(format!("layout has {} interfaces, mesh {}", layout.faces(), mesh.faces())));
        }
        if layout.periodic() != bc.is_periodic() {
            return Err(Error::Config("layout and boundary periodicity disagree".into()));
        }
        bc.check(layout.n_face(0), layout.n_face(mesh.cells()))?;
        let mut mesh = mesh;
        if bc.is_periodic() {
            let m = mesh.cells();
            let d = 0.5 * (mesh.dx[0] + mesh.dx[m - 1]);
            mesh.dx_half[0] = d;
            mesh.dx_half[m] = d;
        }
        let transfer_cols = Columns::from_counts((0..layout.cells()).map(|i| layout.n_cell(i) + 1));
        Ok(Self { mesh, layout, params, bc, limiter, transfer_cols })
    }

    pub fn cells(&self) -> usize {
        self.mesh.cells()
    }

    pub fn faces(&self) -> usize {
        self.mesh.faces()
    }

    pub fn periodic(&self) -> bool {
        self.bc.is_periodic()
    }

    /// Columns of the mass-transfer field: `N_i + 1` layer interfaces per cell.
    pub fn transfer_columns(&self) -> &Columns {
        &self.transfer_cols
    }

    pub fn left_cell(&self, j: usize) -> Option<usize> {
        if j > 0 {
            Some(j - 1)
        } else if self.periodic() {
            Some(self.cells() - 1)
        } else {
            None
        }
    }

    pub fn right_cell(&self, j: usize) -> Option<usize> {
        if j < self.cells() {
            Some(j)
        } else if self.periodic() {
            Some(0)
        } else {
            None
        }
    }

    /// Whether the velocity at interface `j` is a prognostic unknown.
    pub fn is_active(&self, j: usize) -> bool {
        let m = self.cells();
        if j > 0 && j < m {
            return true;
        }
        match if j == 0 { &self.bc.left } else { &self.bc.right } {
            Boundary::Wall | Boundary::Discharge { .. } => false,
            Boundary::Elevation { .. } => true,
            Boundary::Periodic => j == 0,
        }
    }

    /// Interface `d` steps away from `j` (`d = ±1`), wrapping on periodic meshes
    /// onto `0..M`.
    pub fn face_step(&self, j: usize, d: isize) -> Option<usize> {
        let m = self.cells() as isize;
        let k = j as isize + d;
        if self.periodic() {
            Some(k.rem_euclid(m) as usize)
        } else if (0..=m).contains(&k) {
            Some(k as usize)
        } else {
            None
        }
    }

    pub fn edges_at(&self, t: f64) -> [Edge; 2] {
        let m = self.cells();
        let mk = |b: &Boundary, cell: usize, face: usize| match b {
            Boundary::Wall => Edge::Closed,
            Boundary::Periodic => Edge::Periodic,
            Boundary::Discharge { q, rho } => {
                Edge::Flux { q: q.at(t), rho: (0..self.layout.n_face(face)).map(|a| rho.at(a, t)).collect() }
            }
            Boundary::Elevation { eta, rho } => Edge::Ghost {
                eta: eta.at(t),
                b: self.mesh.b[cell],
                rho: (0..self.layout.n_face(face)).map(|a| rho.at(a, t)).collect(),
            },
        };
        [mk(&self.bc.left, 0, 0), mk(&self.bc.right, m - 1, m)]
    }

    /// Left (`left = true`) or right neighbour of interface `j`.
    pub fn side<'a>(&self, faces: &'a Faces, j: usize, left: bool) -> Side<'a> {
        let c = if left { self.left_cell(j) } else { self.right_cell(j) };
        if let Some(i) = c {
            return Side::Cell(i);
        }
        match &faces.edges[usize::from(!left)] {
            Edge::Ghost { eta, b, rho } => Side::Ghost { eta: *eta, b: *b, rho },
            _ => Side::Outside,
        }
    }

    /// Surface, bottom and depth of a neighbour.
    pub fn side_column(&self, state: &State, side: Side) -> Option<(f64, f64, f64)> {
        match side {
            Side::Cell(i) => Some((state.eta[i], self.mesh.b[i], state.eta[i] - self.mesh.b[i])),
            Side::Ghost { eta, b, .. } => Some((eta, b, eta - b)),
            Side::Outside => None,
        }
    }

    /// Density of a neighbour projected onto the layering of interface `j`.
    /// `left` tells which neighbour `side` is.
    pub fn side_rho_on_face(&self, rho: &Ragged, side: Side, left: bool, out: &mut [f64]) -> bool {
        match side {
            Side::Cell(i) => {
                let s = usize::from(left);
                self.layout.cell_face(i, s).to_face.apply(rho.col(i), out);
                true
            }
            Side::Ghost { rho, .. } => {
                out.copy_from_slice(rho);
                true
            }
            Side::Outside => false,
        }
    }

    /// Interface diagnostics: `ubar` and the depth upwinded by its sign.
    pub fn face_fields(&self, state: &State, t: f64) -> Faces {
        let edges = self.edges_at(t);
        let nf = self.faces();
        let mut faces = Faces { t, h_half: vec![0.0; nf], ubar: vec![0.0; nf], edges };
        for j in 0..nf {
            let ub: f64 = state.u.col(j).iter().zip(self.layout.face(j)).map(|(u, l)| l * u).sum();
            let hl = self.side_column(state, self.side(&faces, j, true)).map(|c| c.2);
            let hr = self.side_column(state, self.side(&faces, j, false)).map(|c| c.2);
            let h = match (hl, hr) {
                (Some(a), Some(b)) => upwind_interface(a, b, ub),
                (Some(a), None) | (None, Some(a)) => a,
                (None, None) => unreachable!("interface without neighbours"),
            };
            faces.ubar[j] = ub;
            faces.h_half[j] = h;
        }
        faces
    }

    /// Writes boundary velocities into `state` for time `t`: zero at walls,
    /// `q / h` at discharge interfaces, the periodic copy at the last interface.
    pub fn apply_velocity_bc(&self, state: &mut State, t: f64) {
        let m = self.cells();
        if self.periodic() {
            let first = state.u.col(0).to_vec();
            state.u.col_mut(m).copy_from_slice(&first);
            return;
        }
        for (j, b) in [(0, &self.bc.left), (m, &self.bc.right)] {
            match b {
                Boundary::Wall => state.u.col_mut(j).fill(0.0),
                Boundary::Discharge { q, .. } => {
                    let cell = if j == 0 { 0 } else { m - 1 };
                    let h = state.eta[cell] - self.mesh.b[cell];
                    let sign = if j == 0 { 1.0 } else { -1.0 };
                    let v = sign * q.at(t) / h;
                    state.u.col_mut(j).fill(v);
                }
                _ => {}
            }
        }
    }

    /// Signed boundary inflow at interface `j` (positive to the right) when
    /// the flux there is prescribed.
    pub fn prescribed_flux(&self, faces: &Faces, j: usize) -> Option<f64> {
        self.prescribed_flux_at(&faces.edges, j)
    }

    pub fn prescribed_flux_at(&self, edges: &[Edge; 2], j: usize) -> Option<f64> {
        let m = self.cells();
        let e = if j == 0 {
            &edges[0]
        } else if j == m {
            &edges[1]
        } else {
            return None;
        };
        match e {
            Edge::Closed => Some(0.0),
            Edge::Flux { q, .. } => Some(if j == 0 { *q } else { -*q }),
            _ => None,
        }
    }
}
