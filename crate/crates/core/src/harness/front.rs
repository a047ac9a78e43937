//! Gravity-current fronts tracked in the surface and bottom layers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::layout::Ragged;
use crate::spatial::Model;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrontLayer {
    Surface,
    Bottom,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrontSpeeds {
    pub surface: f64,
    pub bottom: f64,
}

/// Threshold halfway through the lock-exchange density jump.
pub const FRONT_THRESHOLD: f64 = 0.015;
/// Fitting window of the front trajectories, in seconds.
pub const FRONT_WINDOW: (f64, f64) = (2.0, 10.0);

/// Position of the `threshold` crossing of the layer density that lies
/// farthest from `origin`, linearly interpolated between cell centres.
pub fn front_position(model: &Model, rho: &Ragged, layer: FrontLayer, threshold: f64, origin: f64) -> Option<f64> {
    let x = &model.mesh.x_center;
    let v: Vec<f64> = (0..model.cells())
        .map(|i| {
            let col = rho.col(i);
            match layer {
                FrontLayer::Surface => col[col.len() - 1],
                FrontLayer::Bottom => col[0],
            }
        })
        .collect();
    let mut best: Option<f64> = None;
    for i in 0..v.len().saturating_sub(1) {
        let (a, b) = (v[i] - threshold, v[i + 1] - threshold);
        let p = if a == 0.0 {
            x[i]
        } else if a * b < 0.0 {
            x[i] + a / (a - b) * (x[i + 1] - x[i])
        } else {
            continue;
        };
        if best.is_none_or(|q| (p - origin).abs() > (q - origin).abs()) {
            best = Some(p);
        }
    }
    best
}

/// Least-squares slope of `y` against `t`.
pub fn lsq_slope(t: &[f64], y: &[f64]) -> f64 {
    let n = t.len() as f64;
    let tm = t.iter().sum::<f64>() / n;
    let ym = y.iter().sum::<f64>() / n;
    let num: f64 = t.iter().zip(y).map(|(a, b)| (a - tm) * (b - ym)).sum();
    let den: f64 = t.iter().map(|a| (a - tm) * (a - tm)).sum();
    num / den
}

/// Speed of the surface and bottom fronts away from `origin`, fitted over
/// the snapshots whose time falls inside `window`.
pub fn front_speeds(
    model: &Model,
    snapshots: &[(f64, &Ragged)],
    threshold: f64,
    origin: f64,
    window: (f64, f64),
) -> Result<FrontSpeeds> {
    let inside: Vec<_> = snapshots.iter().filter(|(t, _)| *t >= window.0 && *t <= window.1).collect();
    if inside.len() < 2 {
        return Err(Error::FrontNotFound(format!(
            "{} snapshots inside [{}, {}], need 2",
            inside.len(),
            window.0,
            window.1
        )));
    }
    let t: Vec<f64> = inside.iter().map(|(t, _)| *t).collect();
    let speed = |layer: FrontLayer| -> Result<f64> {
        let mut d = Vec::with_capacity(inside.len());
        for (ts, rho) in &inside {
            let p = front_position(model, rho, layer, threshold, origin)
                .ok_or_else(|| Error::FrontNotFound(format!("{layer:?} layer at t = {ts}")))?;
            d.push((p - origin).abs());
        }
        Ok(lsq_slope(&t, &d))
    };
    Ok(FrontSpeeds { surface: speed(FrontLayer::Surface)?, bottom: speed(FrontLayer::Bottom)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::Boundaries;
    use crate::layout::LayerLayout;
    use crate::mesh::Mesh1D;
    use crate::state::PhysParams;

    fn model() -> Model {
        let mesh = Mesh1D::uniform(-10.0, 10.0, 200, |_| 0.0).unwrap();
        let lay = LayerLayout::uniform(4, 201, false).unwrap();
        Model::new(mesh, lay, PhysParams::default(), Boundaries::walls(), false).unwrap()
    }

    /// Dense fluid right of `xb` at the bottom and right of `xs` at the top.
    fn field(m: &Model, xb: f64, xs: f64) -> Ragged {
        let mut r = m.layout.cell_columns().zeros();
        for i in 0..m.cells() {
            let x = m.mesh.x_center[i];
            let c = r.col_mut(i);
            c[0] = if x > xb { 0.03 } else { 0.0 };
            c[3] = if x > xs { 0.03 } else { 0.0 };
        }
        r
    }

    #[test]
    fn frozen_field_has_no_speed() {
        let m = model();
        let f = field(&m, -1.0, 1.0);
        let snaps: Vec<_> = (0..9).map(|k| (k as f64 + 2.0, &f)).collect();
        let s = front_speeds(&m, &snaps, FRONT_THRESHOLD, 0.0, FRONT_WINDOW).unwrap();
        assert_eq!((s.surface, s.bottom), (0.0, 0.0));
    }

    #[test]
    fn one_cell_per_interval() {
        let m = model();
        let fields: Vec<Ragged> = (0..9).map(|k| field(&m, -1.0 - 0.1 * k as f64, 1.0 + 0.1 * k as f64)).collect();
        let snaps: Vec<_> = fields.iter().enumerate().map(|(k, f)| (2.0 + k as f64, f)).collect();
        let s = front_speeds(&m, &snaps, FRONT_THRESHOLD, 0.0, FRONT_WINDOW).unwrap();
        assert!((s.surface - 0.1).abs() < 1e-12 && (s.bottom - 0.1).abs() < 1e-12, "{s:?}");
    }

    #[test]
    fn missing_front_is_reported() {
        let m = model();
        let f = m.layout.cell_columns().zeros();
        let snaps = [(2.0, &f), (3.0, &f)];
        assert!(matches!(front_speeds(&m, &snaps, FRONT_THRESHOLD, 0.0, FRONT_WINDOW), Err(Error::FrontNotFound(_))));
        assert!(front_speeds(&m, &snaps[..1], FRONT_THRESHOLD, 0.0, FRONT_WINDOW).is_err());
    }
}
