//! Lateral boundary conditions and their time-dependent forcings.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Scalar forcing signal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Forcing {
    Constant {
        value: f64,
    },
    /// `min(max, max t / ramp_time)`
    Ramp {
        max: f64,
        ramp_time: f64,
    },
    /// `mean + amplitude sin(2 pi t / period)`
    Tide {
        mean: f64,
        amplitude: f64,
        period: f64,
    },
}

impl Forcing {
    pub fn at(&self, t: f64) -> f64 {
        match *self {
            Forcing::Constant { value } => value,
            Forcing::Ramp { max, ramp_time } => {
                if ramp_time <= 0.0 {
                    max
                } else {
                    max * (t / ramp_time).min(1.0)
                }
            }
            Forcing::Tide { mean, amplitude, period } => {
                mean + amplitude * (2.0 * std::f64::consts::PI * t / period).sin()
            }
        }
    }
}

/// Density of water entering through an open boundary, one value per layer
/// of the boundary interface (a single value is broadcast), ramped in from zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InflowDensity {
    pub profile: Vec<f64>,
    #[serde(default)]
    pub ramp_time: f64,
}

impl InflowDensity {
    pub fn zero() -> Self {
        Self { profile: vec![0.0], ramp_time: 0.0 }
    }

    /// `min(ext, ext t / ramp_time)` for layer `alpha`.
    pub fn at(&self, alpha: usize, t: f64) -> f64 {
        let ext = if self.profile.len() == 1 { self.profile[0] } else { self.profile[alpha] };
        if self.ramp_time <= 0.0 {
            ext
        } else {
            ext.min(ext * t / self.ramp_time)
        }
    }

    fn check(&self, layers: usize) -> Result<()> {
        if self.profile.len() != 1 && self.profile.len() != layers {
            return Err(Error::Config(format!(
                "inflow density has {} values for a {layers}-layer boundary",
                self.profile.len()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Boundary {
    /// Closed wall: zero velocity and zero flux.
    Wall,
    /// Prescribed discharge per unit width, positive into the domain,
    /// spread over layers in proportion to their fractions.
    Discharge { q: Forcing, rho: InflowDensity },
    /// Prescribed free surface in a ghost cell; the boundary velocity is free.
    Elevation { eta: Forcing, rho: InflowDensity },
    /// Both ends wrap around.
    Periodic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Boundaries {
    pub left: Boundary,
    pub right: Boundary,
}

impl Boundaries {
    pub fn walls() -> Self {
        Self { left: Boundary::Wall, right: Boundary::Wall }
    }

    pub fn periodic() -> Self {
        Self { left: Boundary::Periodic, right: Boundary::Periodic }
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self.left, Boundary::Periodic)
    }

    pub fn is_closed(&self) -> bool {
        matches!((&self.left, &self.right), (Boundary::Wall, Boundary::Wall)) || self.is_periodic()
    }

    pub fn check(&self, left_layers: usize, right_layers: usize) -> Result<()> {
        let lp = matches!(self.left, Boundary::Periodic);
        let rp = matches!(self.right, Boundary::Periodic);
        if lp != rp {
            return Err(Error::Config("periodic boundaries must be set on both ends".into()));
        }
        for (b, n) in [(&self.left, left_layers), (&self.right, right_layers)] {
            match b {
                Boundary::Discharge { rho, .. } | Boundary::Elevation { rho, .. } => rho.check(n)?,
                _ => {}
            }
        }
        Ok(())
    }
}
