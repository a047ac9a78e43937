//! Relative error norms between a run and a reference on the same mesh.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::layout::Remap;
use crate::spatial::Model;
use crate::state::State;

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Norms {
    pub l2: f64,
    pub linf: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct ErrorNorms {
    pub eta: Norms,
    pub u: Norms,
    pub rho: Norms,
}

/// Accumulates weighted squared differences and maxima.
#[derive(Default)]
struct Acc {
    num2: f64,
    den2: f64,
    num_max: f64,
    den_max: f64,
}

impl Acc {
    fn add(&mut self, v: f64, r: f64, w: f64) {
        let d = v - r;
        self.num2 += d * d * w;
        self.den2 += r * r * w;
        self.num_max = self.num_max.max(d.abs());
        self.den_max = self.den_max.max(r.abs());
    }

    fn norms(&self) -> Norms {
        let ratio = |n: f64, d: f64| if d > 0.0 { n / d } else { n };
        Norms { l2: ratio(self.num2.sqrt(), self.den2.sqrt()), linf: ratio(self.num_max, self.den_max) }
    }
}

/// `Err_u` and `Err_rho` weight every entry by the cell (or interface) length
/// times the layer thickness of the reference; `Err_eta` by the cell length.
/// A vanishing reference leaves the absolute error.
pub fn error_norms(model: &Model, run: &State, reference: &State) -> Result<ErrorNorms> {
    run.check_shape(&model.mesh, &model.layout)?;
    reference.check_shape(&model.mesh, &model.layout)?;
    let mesh = &model.mesh;
    let lay = &model.layout;

    let mut eta = Acc::default();
    let mut rho = Acc::default();
    for i in 0..model.cells() {
        eta.add(run.eta[i], reference.eta[i], mesh.dx[i]);
        let h = reference.h(mesh, i);
        for ((v, r), l) in run.rho.col(i).iter().zip(reference.rho.col(i)).zip(lay.cell(i)) {
            rho.add(*v, *r, mesh.dx[i] * l * h);
        }
    }

    let depths = reference.depths(mesh);
    let mut u = Acc::default();
    // the last interface of a periodic mesh repeats the first
    let faces = model.faces() - usize::from(model.periodic());
    for j in 0..faces {
        let h = match (model.left_cell(j), model.right_cell(j)) {
            (Some(a), Some(b)) => 0.5 * (depths[a] + depths[b]),
            (Some(a), None) | (None, Some(a)) => depths[a],
            (None, None) => 0.0,
        };
        for ((v, r), l) in run.u.col(j).iter().zip(reference.u.col(j)).zip(lay.face(j)) {
            u.add(*v, *r, mesh.dx_half[j] * l * h);
        }
    }
    let out = ErrorNorms { eta: eta.norms(), u: u.norms(), rho: rho.norms() };
    if [out.eta, out.u, out.rho].iter().any(|n| !n.l2.is_finite() || !n.linf.is_finite()) {
        return Err(Error::State("non-finite error norm".into()));
    }
    Ok(out)
}

/// `state` moved onto the layering of `to`, which shares the mesh of `from`
/// and whose tables are conformal with those of `from` at every interface
/// and cell. Merged layers take the fraction-weighted average.
pub fn project_state(from: &Model, state: &State, to: &Model) -> Result<State> {
    if from.mesh.x_iface != to.mesh.x_iface {
        return Err(Error::Shape("projection between different meshes".into()));
    }
    state.check_shape(&from.mesh, &from.layout)?;
    let mut out = State::rest(&to.mesh, &to.layout, 0.0);
    out.eta.copy_from_slice(&state.eta);
    for j in 0..to.faces() {
        Remap::between(from.layout.face(j), to.layout.face(j))?.apply(state.u.col(j), out.u.col_mut(j));
    }
    for i in 0..to.cells() {
        Remap::between(from.layout.cell(i), to.layout.cell(i))?.apply(state.rho.col(i), out.rho.col_mut(i));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::Boundaries;
    use crate::layout::LayerLayout;
    use crate::mesh::Mesh1D;
    use crate::state::PhysParams;

    fn setup() -> (Model, State) {
        let mesh = Mesh1D::uniform(0.0, 1.0, 10, |x| 0.1 * x).unwrap();
        let lay = LayerLayout::uniform(3, 11, false).unwrap();
        let model = Model::new(mesh, lay, PhysParams::default(), Boundaries::walls(), false).unwrap();
        let mut s = State::rest(&model.mesh, &model.layout, 0.5);
        for (k, v) in s.u.data.iter_mut().enumerate() {
            *v = (k as f64).sin();
        }
        s.rho.data.iter_mut().enumerate().for_each(|(k, r)| *r = 0.01 * (k % 4) as f64);
        (model, s)
    }

    #[test]
    fn identical_states_give_zero() {
        let (model, s) = setup();
        assert_eq!(error_norms(&model, &s, &s).unwrap(), ErrorNorms::default());
    }

    #[test]
    fn doubled_reference_velocity() {
        let (model, s) = setup();
        let mut r = s.clone();
        r.u.data.iter_mut().for_each(|v| *v *= 2.0);
        let e = error_norms(&model, &s, &r).unwrap();
        assert!((e.u.l2 - 0.5).abs() < 1e-15);
        assert!((e.u.linf - 0.5).abs() < 1e-15);
        assert_eq!(e.rho.l2, 0.0);
    }

    #[test]
    fn projection_onto_merged_layers() {
        let (fine, s) = setup();
        let mesh = fine.mesh.clone();
        let half = (0..11).map(|j| if j < 5 { vec![1.0] } else { vec![1.0 / 3.0; 3] }).collect();
        let coarse =
            Model::new(mesh, LayerLayout::new(half, false).unwrap(), PhysParams::default(), Boundaries::walls(), false)
                .unwrap();
        let p = project_state(&fine, &s, &coarse).unwrap();
        let mean = s.u.col(2).iter().sum::<f64>() / 3.0;
        assert!((p.u.col(2)[0] - mean).abs() < 1e-15);
        assert_eq!(p.u.col(7), s.u.col(7));
        assert_eq!(p.rho.col(8), s.rho.col(8));
        assert_eq!(project_state(&fine, &s, &fine).unwrap(), s);
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let (model, s) = setup();
        let mut r = s.clone();
        r.eta.pop();
        assert!(error_norms(&model, &s, &r).is_err());
    }
}
