//! Case descriptions and the three benchmark configurations.

use serde::{Deserialize, Serialize};

use crate::boundary::{Boundaries, Boundary, Forcing, InflowDensity};
use crate::error::{Error, Result};
use crate::layout::LayerLayout;
use crate::mesh::Mesh1D;
use crate::spatial::Model;
use crate::state::{PhysParams, State, Viscosity, Wind};
use crate::time::{CourantKind, Imex, ImexFormulation, Integrator, Rk3};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseSpec {
    pub name: String,
    pub mesh: MeshSpec,
    pub layout: LayoutSpec,
    pub initial: InitialSpec,
    pub boundaries: Boundaries,
    pub physics: PhysParams,
    /// Minmod limiting of the momentum advection slopes.
    #[serde(default)]
    pub limiter: bool,
    pub run: RunSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeshSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub cells: usize,
    pub bathymetry: Bathymetry,
}

/// Bottom elevation `b(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Bathymetry {
    Flat {
        level: f64,
    },
    /// `z0 - z1 tanh(lambda (x - x0)) + bump exp(-((x - x1) / sigma)^2)`
    TanhBump {
        z0: f64,
        z1: f64,
        lambda: f64,
        x0: f64,
        bump: f64,
        x1: f64,
        sigma: f64,
    },
}

impl Bathymetry {
    pub fn at(&self, x: f64) -> f64 {
        match *self {
            Bathymetry::Flat { level } => level,
            Bathymetry::TanhBump { z0, z1, lambda, x0, bump, x1, sigma } => {
                let s = (x - x1) / sigma;
                z0 - z1 * (lambda * (x - x0)).tanh() + bump * (-s * s).exp()
            }
        }
    }
}

/// Vertical layering. Fractions are listed from the bottom up.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LayoutSpec {
    Uniform {
        layers: usize,
    },
    Table {
        fractions: Vec<f64>,
    },
    /// `near` on the interfaces with `x <= x_split`, `far` on the others.
    Split {
        x_split: f64,
        near: Vec<f64>,
        far: Vec<f64>,
    },
}

impl LayoutSpec {
    pub fn build(&self, mesh: &Mesh1D, periodic: bool) -> Result<LayerLayout> {
        let faces = mesh.faces();
        match self {
            LayoutSpec::Uniform { layers } => LayerLayout::uniform(*layers, faces, periodic),
            LayoutSpec::Table { fractions } => LayerLayout::uniform_table(fractions, faces, periodic),
            LayoutSpec::Split { x_split, near, far } => {
                let half =
                    mesh.x_iface.iter().map(|&x| if x <= *x_split { near.clone() } else { far.clone() }).collect();
                LayerLayout::new(half, periodic)
            }
        }
    }
}

/// Layer variants of the estuary case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum TidalLayout {
    #[default]
    Uniform,
    Nvar1,
    Nvar3,
    Nvar4,
}

impl TidalLayout {
    fn shallow_table(self) -> Option<Vec<f64>> {
        match self {
            TidalLayout::Uniform => None,
            TidalLayout::Nvar1 => Some(vec![1.0]),
            TidalLayout::Nvar3 => Some(vec![0.2, 0.2, 0.6]),
            TidalLayout::Nvar4 => Some(vec![0.2, 0.2, 0.2, 0.4]),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InitialSpec {
    /// Flat free-surface elevation.
    pub eta: f64,
    /// Velocity in every layer.
    #[serde(default)]
    pub u: f64,
    pub density: DensityProfile,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DensityProfile {
    Uniform {
        value: f64,
    },
    /// `value` in the layers whose upper edge, measured from the bed, lies
    /// below `base + amplitude exp(-width (x - center)^2)`; zero above.
    Bump {
        value: f64,
        base: f64,
        amplitude: f64,
        center: f64,
        width: f64,
    },
    /// `left` for `x < x0`, `right` otherwise.
    Step {
        x0: f64,
        left: f64,
        right: f64,
    },
}

impl DensityProfile {
    /// Density of every layer of a column at `x` with depth `h` and
    /// fractions `l`.
    pub fn column(&self, x: f64, h: f64, l: &[f64], out: &mut [f64]) {
        match *self {
            DensityProfile::Uniform { value } => out.fill(value),
            DensityProfile::Step { x0, left, right } => out.fill(if x < x0 { left } else { right }),
            DensityProfile::Bump { value, base, amplitude, center, width } => {
                let lim = base + amplitude * (-width * (x - center).powi(2)).exp();
                let mut top = 0.0;
                for (r, la) in out.iter_mut().zip(l) {
                    top += la;
                    // guard against round-off in the partial sums deciding ties
                    *r = if h * top < lim - 1e-12 { value } else { 0.0 };
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum IntegratorKind {
    Rk3,
    #[default]
    Imex,
}

/// Fixed step or a step chosen every time to meet a Courant number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StepSpec {
    Fixed { dt: f64 },
    Courant { courant: CourantKind, target: f64, dt_max: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSpec {
    pub integrator: IntegratorKind,
    #[serde(default)]
    pub formulation: ImexFormulation,
    pub step: StepSpec,
    pub t_final: f64,
    /// Snapshot cadence; without it only the initial and final fields are kept.
    /// Steps are shortened to land on every output time.
    #[serde(default)]
    pub output_interval: Option<f64>,
    /// Positions where the free surface is recorded after every step.
    #[serde(default)]
    pub probes: Vec<f64>,
}

impl RunSpec {
    pub fn integrator(&self) -> Box<dyn Integrator> {
        match self.integrator {
            IntegratorKind::Rk3 => Box::new(Rk3),
            IntegratorKind::Imex => Box::new(Imex::with_formulation(self.formulation)),
        }
    }
}

impl CaseSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        let r = &self.run;
        if !(r.t_final >= 0.0) {
            return bad(format!("t_final = {}", r.t_final));
        }
        if let Some(dt) = r.output_interval {
            if !(dt > 0.0) {
                return bad(format!("output_interval = {dt}"));
            }
        }
        match r.step {
            StepSpec::Fixed { dt } if !(dt > 0.0) => return bad(format!("dt = {dt}")),
            StepSpec::Courant { target, dt_max, .. } if !(target > 0.0 && dt_max > 0.0) => {
                return bad(format!("courant target {target}, dt_max {dt_max}"))
            }
            _ => {}
        }
        Ok(())
    }

    pub fn build(&self) -> Result<(Model, State)> {
        self.validate()?;
        let m = &self.mesh;
        let mesh = Mesh1D::uniform(m.x_min, m.x_max, m.cells, |x| m.bathymetry.at(x))?;
        let layout = self.layout.build(&mesh, self.boundaries.is_periodic())?;
        let model = Model::new(mesh, layout, self.physics, self.boundaries.clone(), self.limiter)?;

        let mut state = State::rest(&model.mesh, &model.layout, self.initial.eta);
        state.u.fill(self.initial.u);
        for i in 0..model.cells() {
            let x = model.mesh.x_center[i];
            let h = state.h(&model.mesh, i);
            self.initial.density.column(x, h, model.layout.cell(i), state.rho.col_mut(i));
        }
        model.apply_velocity_bc(&mut state, 0.0);
        state.check_shape(&model.mesh, &model.layout)?;
        state.check_valid(&model.mesh, model.params.h_min).map_err(|e| Error::State(format!("initial state: {e}")))?;
        Ok((model, state))
    }

    /// Density-driven internal wave in a closed 2 m tank.
    pub fn internal_wave() -> Self {
        let mut fractions = vec![0.125, 0.125];
        fractions.extend(std::iter::repeat_n(0.01, 50));
        fractions.extend([0.125, 0.125]);
        Self {
            name: "internal_wave".into(),
            mesh: MeshSpec { x_min: 0.0, x_max: 2.0, cells: 200, bathymetry: Bathymetry::Flat { level: 0.0 } },
            layout: LayoutSpec::Table { fractions },
            initial: InitialSpec {
                eta: 0.3,
                u: 0.0,
                density: DensityProfile::Bump { value: 0.03, base: 0.15, amplitude: 0.04, center: 1.0, width: 100.0 },
            },
            boundaries: Boundaries::walls(),
            physics: PhysParams::default(),
            limiter: false,
            run: RunSpec {
                integrator: IntegratorKind::Imex,
                formulation: ImexFormulation::default(),
                step: StepSpec::Fixed { dt: 0.02 },
                t_final: 4.8,
                output_interval: Some(0.8),
                probes: Vec::new(),
            },
        }
    }

    /// Lock exchange in a closed 20 m channel, dense fluid on the right, with
    /// the molecular viscosity of water.
    pub fn lock_exchange() -> Self {
        Self {
            name: "lock_exchange".into(),
            mesh: MeshSpec { x_min: -10.0, x_max: 10.0, cells: 200, bathymetry: Bathymetry::Flat { level: 0.0 } },
            layout: LayoutSpec::Uniform { layers: 20 },
            initial: InitialSpec {
                eta: 0.3,
                u: 0.0,
                density: DensityProfile::Step { x0: 0.0, left: 0.0, right: 0.03 },
            },
            boundaries: Boundaries::walls(),
            physics: PhysParams { viscosity: Viscosity::Constant { nu: 1e-6 }, ..PhysParams::default() },
            limiter: true,
            run: RunSpec {
                integrator: IntegratorKind::Imex,
                formulation: ImexFormulation::default(),
                step: StepSpec::Fixed { dt: 0.1 },
                t_final: 84.0,
                output_interval: Some(2.0),
                probes: Vec::new(),
            },
        }
    }

    /// River mouth driven by a semidiurnal tide with a salt wedge entering
    /// from the sea.
    pub fn tidal(layers: TidalLayout) -> Self {
        let ramp = 21600.0;
        let far = vec![0.1; 10];
        let layout = match layers.shallow_table() {
            None => LayoutSpec::Uniform { layers: 10 },
            Some(near) => LayoutSpec::Split { x_split: 0.0, near, far },
        };
        let mut sea = vec![0.03; 7];
        sea.extend([0.028, 0.025, 0.015]);
        let name = match layers {
            TidalLayout::Uniform => "tidal".to_string(),
            v => format!("tidal_{}", serde_variant(v)),
        };
        Self {
            name,
            mesh: MeshSpec {
                x_min: -7500.0,
                x_max: 22500.0,
                cells: 500,
                bathymetry: Bathymetry::TanhBump {
                    z0: 46.0,
                    z1: -46.0,
                    lambda: -1.0 / 3000.0,
                    x0: 7500.0,
                    bump: 20.0,
                    x1: 16000.0,
                    sigma: 2000.0,
                },
            },
            layout,
            initial: InitialSpec { eta: 100.0, u: 0.0, density: DensityProfile::Uniform { value: 0.0 } },
            boundaries: Boundaries {
                left: Boundary::Discharge {
                    q: Forcing::Ramp { max: 1.0, ramp_time: ramp },
                    rho: InflowDensity::zero(),
                },
                right: Boundary::Elevation {
                    eta: Forcing::Tide { mean: 100.0, amplitude: 3.0, period: 43200.0 },
                    rho: InflowDensity { profile: sea, ramp_time: ramp },
                },
            },
            physics: PhysParams {
                viscosity: Viscosity::LawOfWall { z0: 3.3e-5, kappa: 0.41, nu_min: 1e-6 },
                wind: Some(Wind { drag: 1.2e-6, speed: 1.0 }),
                ..PhysParams::default()
            },
            limiter: false,
            run: RunSpec {
                integrator: IntegratorKind::Imex,
                formulation: ImexFormulation::default(),
                step: StepSpec::Fixed { dt: 10.0 },
                t_final: 144.0 * 3600.0,
                output_interval: Some(3600.0),
                probes: vec![0.0],
            },
        }
    }

    /// Built-in case by name: `internal_wave`, `lock_exchange` or `tidal`
    /// (dashes accepted in place of underscores).
    pub fn preset(name: &str, layers: TidalLayout) -> Result<Self> {
        let case = match name.replace('-', "_").as_str() {
            "internal_wave" => Self::internal_wave(),
            "lock_exchange" => Self::lock_exchange(),
            "tidal" => return Ok(Self::tidal(layers)),
            other => return Err(Error::Config(format!("unknown case '{other}'"))),
        };
        if layers != TidalLayout::Uniform {
            return Err(Error::Config(format!("layer variant {layers:?} only applies to the tidal case")));
        }
        Ok(case)
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let spec: Self = toml::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_toml(&self) -> Result<String> {
        Ok(toml::to_string(self)?)
    }
}

fn serde_variant(v: TidalLayout) -> &'static str {
    match v {
        TidalLayout::Uniform => "uniform",
        TidalLayout::Nvar1 => "nvar1",
        TidalLayout::Nvar3 => "nvar3",
        TidalLayout::Nvar4 => "nvar4",
    }
}
