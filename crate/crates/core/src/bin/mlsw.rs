use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mlsw::harness::{
    compare_runs, output_root, run_case, write_run, CaseSpec, ErrorNorms, IntegratorKind, StepSpec, TidalLayout,
};
use mlsw::linear::{assemble_a, parse_profiles, shear_sweep, spectrum};
use mlsw::time::{CourantKind, ImexFormulation};

/// Multilayer shallow-water runs and linear analysis.
#[derive(Parser)]
#[command(name = "mlsw", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a built-in case (internal-wave, lock-exchange, tidal) or a case file.
    Run(RunArgs),
    /// Print the TOML description of a built-in case.
    Case {
        name: String,
        #[arg(long, value_enum, default_value = "uniform")]
        layout: TidalLayout,
    },
    #[command(subcommand)]
    Analyze(Analyze),
    /// Error norms of the last snapshot of a run against a reference run.
    Compare { run_dir: PathBuf, ref_dir: PathBuf },
}

#[derive(Args)]
struct RunArgs {
    /// Case name or path to a case TOML file.
    case: String,
    #[command(flatten)]
    step: StepArgs,
    #[arg(long, value_enum)]
    integrator: Option<IntegratorKind>,
    /// Split of the semi-implicit density and mass-flux stages.
    #[arg(long, value_parser = parse_formulation)]
    formulation: Option<ImexFormulation>,
    /// Layer variant of the tidal case.
    #[arg(long, value_enum, default_value = "uniform")]
    layout: TidalLayout,
    #[arg(long)]
    t_final: Option<f64>,
    #[arg(long)]
    output_interval: Option<f64>,
    /// Run directory; defaults to a name derived from the run under the
    /// output root.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[group(multiple = false)]
struct StepArgs {
    /// Fixed time step.
    #[arg(long)]
    dt: Option<f64>,
    /// Target celerity Courant number.
    #[arg(long)]
    ccel: Option<f64>,
    /// Target velocity Courant number.
    #[arg(long)]
    cvel: Option<f64>,
    /// Upper bound of adaptive steps.
    #[arg(long, default_value_t = 1e3)]
    dt_max: f64,
}

#[derive(Subcommand)]
enum Analyze {
    /// Eigenvalues of every profile in a profile file, as CSV.
    Spectrum { profile_file: PathBuf },
    /// Largest imaginary eigenvalue part along linearly sheared profiles.
    Sweep {
        #[arg(long, default_value_t = 2)]
        layers: usize,
        #[arg(long, default_value_t = 1.0)]
        depth: f64,
        #[arg(long, default_value_t = 9.81)]
        g: f64,
        #[arg(long, default_value_t = 20.0)]
        max_contrast: f64,
        #[arg(long, default_value_t = 40)]
        steps: usize,
    },
}

fn parse_formulation(s: &str) -> Result<ImexFormulation, String> {
    match s {
        "consistent" => Ok(ImexFormulation::Consistent),
        "as-printed" | "as_printed" => Ok(ImexFormulation::AsPrinted),
        _ => Err(format!("expected consistent or as-printed, got '{s}'")),
    }
}

fn load_case(args: &RunArgs) -> mlsw::Result<CaseSpec> {
    let path = Path::new(&args.case);
    let mut case = if path.is_file() {
        CaseSpec::from_toml(&std::fs::read_to_string(path)?)?
    } else {
        CaseSpec::preset(&args.case, args.layout)?
    };
    let r = &mut case.run;
    let s = &args.step;
    if let Some(dt) = s.dt {
        r.step = StepSpec::Fixed { dt };
    } else if let Some(target) = s.ccel {
        r.step = StepSpec::Courant { courant: CourantKind::Celerity, target, dt_max: s.dt_max };
    } else if let Some(target) = s.cvel {
        r.step = StepSpec::Courant { courant: CourantKind::Velocity, target, dt_max: s.dt_max };
    }
    if let Some(i) = args.integrator {
        r.integrator = i;
    }
    if let Some(f) = args.formulation {
        r.formulation = f;
    }
    if let Some(t) = args.t_final {
        r.t_final = t;
    }
    if args.output_interval.is_some() {
        r.output_interval = args.output_interval;
    }
    case.validate()?;
    Ok(case)
}

fn run_dir_name(case: &CaseSpec) -> String {
    let integ = match case.run.integrator {
        IntegratorKind::Rk3 => "rk3",
        IntegratorKind::Imex => "imex",
    };
    let step = match case.run.step {
        StepSpec::Fixed { dt } => format!("dt{dt}"),
        StepSpec::Courant { courant: CourantKind::Celerity, target, .. } => format!("ccel{target}"),
        StepSpec::Courant { courant: CourantKind::Velocity, target, .. } => format!("cvel{target}"),
    };
    format!("{}-{integ}-{step}", case.name)
}

fn print_norms(t: f64, e: &ErrorNorms) {
    println!("t,field,l2,linf");
    for (name, n) in [("eta", e.eta), ("u", e.u), ("rho", e.rho)] {
        println!("{t},{name},{},{}", n.l2, n.linf);
    }
}

fn execute(cli: Cli) -> mlsw::Result<ExitCode> {
    match cli.command {
        Command::Run(args) => {
            let case = load_case(&args)?;
            let dir = args.out.clone().unwrap_or_else(|| output_root().join(run_dir_name(&case)));
            let out = run_case(&case)?;
            write_run(&dir, &out)?;
            print!("{}", toml::to_string(&out.report)?);
            eprintln!("wrote {}", dir.display());
            if !out.report.stable {
                return Ok(ExitCode::from(2));
            }
        }
        Command::Case { name, layout } => print!("{}", CaseSpec::preset(&name, layout)?.to_toml()?),
        Command::Analyze(Analyze::Spectrum { profile_file }) => {
            let profiles = parse_profiles(&std::fs::read_to_string(profile_file)?)?;
            println!("profile,re,im");
            for p in profiles {
                for z in spectrum(&assemble_a(&p.model))? {
                    println!("{},{},{}", p.id, z.re, z.im);
                }
            }
        }
        Command::Analyze(Analyze::Sweep { layers, depth, g, max_contrast, steps }) => {
            if layers == 0 || steps == 0 {
                return Err(mlsw::Error::Config("need at least one layer and one step".into()));
            }
            let contrasts: Vec<f64> = (0..=steps).map(|k| max_contrast * k as f64 / steps as f64).collect();
            println!("contrast,max_imag,residual,schur");
            for p in shear_sweep(depth, &vec![1.0 / layers as f64; layers], g, &contrasts)? {
                println!("{},{},{},{}", p.contrast, p.max_imag, p.residual, p.schur);
            }
        }
        Command::Compare { run_dir, ref_dir } => {
            let (t, e) = compare_runs(&run_dir, &ref_dir)?;
            print_norms(t, &e);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
