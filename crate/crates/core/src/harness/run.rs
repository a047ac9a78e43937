//! Time loop of a case: step control, snapshots, work counts, stability and
//! conservation bookkeeping.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::case::{CaseSpec, StepSpec};
use super::norms::{error_norms, ErrorNorms};
use super::probe::ProbeSeries;
use crate::error::Result;
use crate::spatial::Model;
use crate::state::{total_density_mass, total_volume, State};
use crate::time::{adaptive_dt, courant_numbers, CourantNumbers, WorkCounters};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub case: String,
    pub integrator: String,
    pub t_final: f64,
    /// Time of the last accepted state.
    pub t_reached: f64,
    pub stable: bool,
    /// Why the run stopped early.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    pub work: WorkCounters,
    pub dt_min: f64,
    pub dt_max: f64,
    /// Courant numbers of the first step.
    pub courant_initial: CourantNumbers,
    /// Largest Courant numbers met during the run.
    pub courant_max: CourantNumbers,
    /// Courant numbers of the final state with the last full step size.
    pub courant_final: CourantNumbers,
    /// Relative change of the total volume (absolute when it starts at zero).
    pub volume_drift: f64,
    /// Relative change of the total density mass (absolute when it starts at zero).
    pub density_mass_drift: f64,
    pub snapshots: usize,
    /// Set by [`RunOutput::compare`].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub errors: Option<ErrorNorms>,
    /// Not deterministic; excluded from every comparison.
    pub wall_time_s: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub t: f64,
    pub state: State,
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub spec: CaseSpec,
    pub model: Model,
    pub report: RunReport,
    /// Initial state, every output time reached, and the last accepted state.
    pub snapshots: Vec<Snapshot>,
    pub probes: Vec<ProbeSeries>,
}

impl RunOutput {
    pub fn final_state(&self) -> &State {
        &self.snapshots.last().expect("initial snapshot is always kept").state
    }

    /// Error norms of the final state against `reference`; stored in the report.
    pub fn compare(&mut self, reference: &State) -> Result<ErrorNorms> {
        let e = error_norms(&self.model, self.final_state(), reference)?;
        self.report.errors = Some(e);
        Ok(e)
    }
}

fn drift(now: f64, start: f64) -> f64 {
    if start != 0.0 {
        (now - start).abs() / start.abs()
    } else {
        now.abs()
    }
}

/// Runs a case to `t_final`. A failed step ends the run with an unstable
/// verdict instead of an error; only an invalid specification is an error.
pub fn run_case(spec: &CaseSpec) -> Result<RunOutput> {
    let (model, mut state) = spec.build()?;
    let integ = spec.run.integrator();
    let clock = Instant::now();
    let t_final = spec.run.t_final;
    let v0 = total_volume(&state, &model.mesh, &model.layout);
    let m0 = total_density_mass(&state, &model.mesh, &model.layout);

    let mut work = WorkCounters::default();
    let mut snapshots = vec![Snapshot { t: 0.0, state: state.clone() }];
    let mut probes: Vec<ProbeSeries> = spec.run.probes.iter().map(|&x| ProbeSeries::new(&model, x)).collect();
    probes.iter_mut().for_each(|p| p.record(0.0, &state));
    let mut next_out = spec.run.output_interval.map(|d| (d, d));
    let mut t = 0.0;
    let (mut dt_min, mut dt_max) = (f64::INFINITY, 0.0f64);
    let mut c_init = None;
    let mut c_max = CourantNumbers::default();
    let mut last_full_dt = 0.0;
    let mut failure = None;

    while t < t_final {
        let full = match spec.run.step {
            StepSpec::Fixed { dt } => dt,
            StepSpec::Courant { courant, target, dt_max } => adaptive_dt(&model, &state, courant, target, dt_max),
        };
        let target = next_out.map_or(t_final, |(at, _)| at.min(t_final));
        // land exactly on output times; a step within round-off of one is snapped
        let (dt, t_new) = if t + full >= target - 1e-9 * full { (target - t, target) } else { (full, t + full) };
        let c = courant_numbers(&model, &state, full);
        c_init.get_or_insert(c);
        c_max = c_max.max(c);
        last_full_dt = full;
        match integ.step(&model, &state, t, dt, &mut work) {
            Ok(s) => state = s,
            Err(e) => {
                failure = Some(e.to_string());
                break;
            }
        }
        dt_min = dt_min.min(dt);
        dt_max = dt_max.max(dt);
        t = t_new;
        probes.iter_mut().for_each(|p| p.record(t, &state));
        if let Some((at, every)) = next_out {
            if t == at {
                if t < t_final {
                    snapshots.push(Snapshot { t, state: state.clone() });
                }
                next_out = Some((at + every, every));
            }
        }
    }
    if snapshots.last().is_some_and(|s| s.t != t) {
        snapshots.push(Snapshot { t, state: state.clone() });
    }

    let report = RunReport {
        case: spec.name.clone(),
        integrator: integ.name().to_string(),
        t_final,
        t_reached: t,
        stable: failure.is_none(),
        failure,
        work,
        dt_min: if dt_min.is_finite() { dt_min } else { 0.0 },
        dt_max,
        courant_initial: c_init.unwrap_or_default(),
        courant_max: c_max,
        courant_final: courant_numbers(&model, &state, last_full_dt),
        volume_drift: drift(total_volume(&state, &model.mesh, &model.layout), v0),
        density_mass_drift: drift(total_density_mass(&state, &model.mesh, &model.layout), m0),
        snapshots: snapshots.len(),
        errors: None,
        wall_time_s: clock.elapsed().as_secs_f64(),
    };
    Ok(RunOutput { spec: spec.clone(), model, report, snapshots, probes })
}
