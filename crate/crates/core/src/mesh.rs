//! Horizontal finite-volume mesh.
//!
//! Cells `i = 0..M` carry the free surface and densities; interfaces
//! `j = 0..=M` (interface `j` is the left face of cell `j`) carry the layer
//! velocities.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Mesh1D {
    pub x_center: Vec<f64>,
    pub x_iface: Vec<f64>,
    pub dx: Vec<f64>,
    /// Center-to-center distance at each interface. The two boundary entries
    /// hold the distance to a mirrored ghost cell, i.e. the boundary cell length.
    pub dx_half: Vec<f64>,
    /// Bottom elevation at cell centers.
    pub b: Vec<f64>,
}

impl Mesh1D {
    /// Uniform partition of `[x_min, x_max]` into `cells` control volumes.
    pub fn uniform(x_min: f64, x_max: f64, cells: usize, bathymetry: impl Fn(f64) -> f64) -> Result<Self> {
        if cells < 3 {
            return Err(Error::Mesh(format!("need at least 3 cells, got {cells}")));
        }
        if !(x_min.is_finite() && x_max.is_finite() && x_max > x_min) {
            return Err(Error::Mesh(format!("bad domain [{x_min}, {x_max}]")));
        }
        let width = x_max - x_min;
        let ifaces =
            (0..=cells).map(|k| if k == cells { x_max } else { x_min + width * (k as f64) / (cells as f64) }).collect();
        Self::from_interfaces(ifaces, bathymetry)
    }

    pub fn from_interfaces(x_iface: Vec<f64>, bathymetry: impl Fn(f64) -> f64) -> Result<Self> {
        let m = x_iface.len().saturating_sub(1);
        if m < 3 {
            return Err(Error::Mesh(format!("need at least 3 cells, got {m}")));
        }
        if x_iface.iter().any(|x| !x.is_finite()) {
            return Err(Error::Mesh("non-finite interface position".into()));
        }
        if let Some(k) = x_iface.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::Mesh(format!(
                "interfaces not strictly increasing at index {k}: {} >= {}",
                x_iface[k],
                x_iface[k + 1]
            )));
        }
        let x_center: Vec<f64> = x_iface.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
        let dx: Vec<f64> = x_iface.windows(2).map(|w| w[1] - w[0]).collect();
        let mut dx_half = Vec::with_capacity(m + 1);
        dx_half.push(dx[0]);
        dx_half.extend(x_center.windows(2).map(|w| w[1] - w[0]));
        dx_half.push(dx[m - 1]);
        let b: Vec<f64> = x_center.iter().map(|&x| bathymetry(x)).collect();
        if let Some(i) = b.iter().position(|v| !v.is_finite()) {
            return Err(Error::Mesh(format!("bathymetry not finite at x = {}", x_center[i])));
        }
        Ok(Self { x_center, x_iface, dx, dx_half, b })
    }

    pub fn cells(&self) -> usize {
        self.x_center.len()
    }

    pub fn faces(&self) -> usize {
        self.x_iface.len()
    }

    /// Index of the cell whose center is closest to `x`.
    pub fn nearest_cell(&self, x: f64) -> usize {
        let mut best = 0;
        for (i, &xc) in self.x_center.iter().enumerate() {
            if (xc - x).abs() < (self.x_center[best] - x).abs() {
                best = i;
            }
        }
        best
    }
}
