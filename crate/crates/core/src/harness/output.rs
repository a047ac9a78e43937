//! Run directories: one CSV per snapshot in long format, the resolved case
//! and the run report as TOML.
//!
//! ```text
//! <dir>/case.toml
//! <dir>/report.toml
//! <dir>/snapshot_00000.csv   t,x,layer,field,value
//! <dir>/probes.csv           t,x,eta      (only with probes)
//! ```
//!
//! `eta` rows sit at cell centres with an empty layer, `u` rows at
//! interfaces and `rho` rows at cell centres, layers counted from the bottom.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::case::CaseSpec;
use super::norms::{error_norms, ErrorNorms};
use super::run::{RunOutput, RunReport, Snapshot};
use crate::error::{Error, Result};
use crate::spatial::Model;
use crate::state::State;

/// Environment variable naming the directory that receives run directories.
pub const OUTPUT_ROOT_VAR: &str = "MLSW_OUTPUT_DIR";

pub fn output_root() -> PathBuf {
    std::env::var_os(OUTPUT_ROOT_VAR).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("runs"))
}

#[derive(Debug, Serialize, Deserialize)]
struct Row {
    t: f64,
    x: f64,
    layer: Option<usize>,
    field: String,
    value: f64,
}

pub fn write_snapshot(path: &Path, model: &Model, snap: &Snapshot) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    let t = snap.t;
    let s = &snap.state;
    let mut row = |x: f64, layer: Option<usize>, field: &str, value: f64| {
        w.serialize(Row { t, x, layer, field: field.to_string(), value })
    };
    for (i, &e) in s.eta.iter().enumerate() {
        row(model.mesh.x_center[i], None, "eta", e)?;
    }
    for j in 0..model.faces() {
        for (a, &u) in s.u.col(j).iter().enumerate() {
            row(model.mesh.x_iface[j], Some(a), "u", u)?;
        }
    }
    for i in 0..model.cells() {
        for (a, &r) in s.rho.col(i).iter().enumerate() {
            row(model.mesh.x_center[i], Some(a), "rho", r)?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Reads a snapshot written by [`write_snapshot`] for the same model.
pub fn read_snapshot(path: &Path, model: &Model) -> Result<Snapshot> {
    let mut state = State::rest(&model.mesh, &model.layout, 0.0);
    let mut seen = (0usize, 0usize, 0usize);
    let mut t = None;
    let bad = |m: String| Error::Shape(format!("{}: {m}", path.display()));
    let mut cursor = (0usize, 0usize);
    for rec in csv::Reader::from_path(path)?.deserialize() {
        let r: Row = rec?;
        if *t.get_or_insert(r.t) != r.t {
            return Err(bad("mixed times".into()));
        }
        match (r.field.as_str(), r.layer) {
            ("eta", None) => {
                *state.eta.get_mut(seen.0).ok_or_else(|| bad("too many eta rows".into()))? = r.value;
                seen.0 += 1;
            }
            ("u", Some(a)) => {
                let j = (0..model.faces())
                    .skip(cursor.0)
                    .find(|&j| model.mesh.x_iface[j] == r.x)
                    .ok_or_else(|| bad(format!("no interface at x = {}", r.x)))?;
                cursor.0 = j;
                *state.u.col_mut(j).get_mut(a).ok_or_else(|| bad(format!("u layer {a} at x = {}", r.x)))? = r.value;
                seen.1 += 1;
            }
            ("rho", Some(a)) => {
                let i = (0..model.cells())
                    .skip(cursor.1)
                    .find(|&i| model.mesh.x_center[i] == r.x)
                    .ok_or_else(|| bad(format!("no cell at x = {}", r.x)))?;
                cursor.1 = i;
                *state.rho.col_mut(i).get_mut(a).ok_or_else(|| bad(format!("rho layer {a} at x = {}", r.x)))? = r.value;
                seen.2 += 1;
            }
            (f, l) => return Err(bad(format!("unexpected row {f} / {l:?}"))),
        }
    }
    if seen != (state.eta.len(), state.u.data.len(), state.rho.data.len()) {
        return Err(bad(format!("incomplete snapshot {seen:?}")));
    }
    Ok(Snapshot { t: t.unwrap_or(0.0), state })
}

fn snapshot_name(k: usize) -> String {
    format!("snapshot_{k:05}.csv")
}

/// Writes the case, the report and every snapshot into `dir`.
pub fn write_run(dir: &Path, out: &RunOutput) -> Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join("case.toml"), out.spec.to_toml()?)?;
    fs::write(dir.join("report.toml"), toml::to_string(&out.report)?)?;
    for (k, s) in out.snapshots.iter().enumerate() {
        write_snapshot(&dir.join(snapshot_name(k)), &out.model, s)?;
    }
    if !out.probes.is_empty() {
        let mut w = csv::Writer::from_path(dir.join("probes.csv"))?;
        w.write_record(["t", "x", "eta"])?;
        for p in &out.probes {
            for (t, e) in p.t.iter().zip(&p.eta) {
                w.serialize((t, p.x, e))?;
            }
        }
        w.flush()?;
    }
    Ok(())
}

/// A run directory read back from disk.
#[derive(Debug)]
pub struct SavedRun {
    pub spec: CaseSpec,
    pub model: Model,
    pub report: Option<RunReport>,
    pub snapshot_paths: Vec<PathBuf>,
}

impl SavedRun {
    pub fn open(dir: &Path) -> Result<Self> {
        let spec = CaseSpec::from_toml(&fs::read_to_string(dir.join("case.toml"))?)?;
        let (model, _) = spec.build()?;
        let report = match fs::read_to_string(dir.join("report.toml")) {
            Ok(text) => Some(toml::from_str(&text)?),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => None,
            Err(e) => return Err(e.into()),
        };
        let mut snapshot_paths: Vec<PathBuf> = fs::read_dir(dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| {
                p.file_name()
                    .and_then(|n| n.to_str())
                    .is_some_and(|n| n.starts_with("snapshot_") && n.ends_with(".csv"))
            })
            .collect();
        snapshot_paths.sort();
        if snapshot_paths.is_empty() {
            return Err(Error::Config(format!("{}: no snapshots", dir.display())));
        }
        Ok(Self { spec, model, report, snapshot_paths })
    }

    pub fn last(&self) -> Result<Snapshot> {
        read_snapshot(self.snapshot_paths.last().unwrap(), &self.model)
    }

    /// The snapshot saved at time `t`, if any.
    pub fn at(&self, t: f64) -> Result<Option<Snapshot>> {
        for p in self.snapshot_paths.iter().rev() {
            let s = read_snapshot(p, &self.model)?;
            if (s.t - t).abs() <= 1e-9 * t.abs().max(1.0) {
                return Ok(Some(s));
            }
        }
        Ok(None)
    }
}

/// Error norms of the last snapshot of `run_dir` against the snapshot of
/// `ref_dir` saved at the same time. Both runs must share mesh and layering.
pub fn compare_runs(run_dir: &Path, ref_dir: &Path) -> Result<(f64, ErrorNorms)> {
    let run = SavedRun::open(run_dir)?;
    let reference = SavedRun::open(ref_dir)?;
    if run.spec.mesh != reference.spec.mesh || run.spec.layout != reference.spec.layout {
        return Err(Error::Shape("runs use different meshes or layer layouts".into()));
    }
    let last = run.last()?;
    let r =
        reference.at(last.t)?.ok_or_else(|| Error::Config(format!("reference has no snapshot at t = {}", last.t)))?;
    Ok((last.t, error_norms(&run.model, &last.state, &r.state)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::run::run_case;
    use crate::harness::LayoutSpec;

    #[test]
    fn run_directory_round_trip() {
        let mut c = CaseSpec::tidal(crate::harness::TidalLayout::Nvar3);
        c.run.t_final = 200.0;
        c.run.output_interval = Some(100.0);
        let out = run_case(&c).unwrap();
        let dir = tempfile::tempdir().unwrap();
        write_run(dir.path(), &out).unwrap();
        let saved = SavedRun::open(dir.path()).unwrap();
        assert_eq!(saved.spec, c);
        assert_eq!(saved.report.as_ref().unwrap(), &out.report);
        assert_eq!(saved.snapshot_paths.len(), 3);
        for (p, s) in saved.snapshot_paths.iter().zip(&out.snapshots) {
            assert_eq!(&read_snapshot(p, &saved.model).unwrap(), s);
        }
        let (t, e) = compare_runs(dir.path(), dir.path()).unwrap();
        assert_eq!(t, 200.0);
        assert_eq!(e, ErrorNorms::default());
    }

    #[test]
    fn mismatched_layouts_are_rejected() {
        let mut a = CaseSpec::lock_exchange();
        a.run.t_final = 0.0;
        let mut b = a.clone();
        b.layout = LayoutSpec::Uniform { layers: 5 };
        let (da, db) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
        write_run(da.path(), &run_case(&a).unwrap()).unwrap();
        write_run(db.path(), &run_case(&b).unwrap()).unwrap();
        assert!(compare_runs(da.path(), db.path()).is_err());
    }
}
