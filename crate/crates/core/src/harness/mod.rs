//! Benchmark cases, run orchestration, error norms, front tracking and run
//! directories on disk.

mod case;
mod front;
mod norms;
mod output;
mod probe;
mod run;

pub use case::{
    Bathymetry, CaseSpec, DensityProfile, InitialSpec, IntegratorKind, LayoutSpec, MeshSpec, RunSpec, StepSpec,
    TidalLayout,
};
pub use front::{front_position, front_speeds, lsq_slope, FrontLayer, FrontSpeeds, FRONT_THRESHOLD, FRONT_WINDOW};
pub use norms::{error_norms, project_state, ErrorNorms, Norms};
pub use output::{compare_runs, output_root, read_snapshot, write_run, write_snapshot, SavedRun, OUTPUT_ROOT_VAR};
pub use probe::{crossing_period, ProbeSeries};
pub use run::{run_case, RunOutput, RunReport, Snapshot};
