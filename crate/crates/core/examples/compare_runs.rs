//! Writes two lock-exchange runs to disk and compares them the way the
//! `compare` subcommand does.

use mlsw::harness::{compare_runs, run_case, write_run, CaseSpec, IntegratorKind, StepSpec};
use mlsw::time::CourantKind;

fn main() -> mlsw::Result<()> {
    let dir = std::env::temp_dir().join("mlsw-compare-example");
    let mut c = CaseSpec::lock_exchange();
    c.run.t_final = 20.0;
    c.run.output_interval = Some(5.0);

    let mut reference = c.clone();
    reference.run.integrator = IntegratorKind::Rk3;
    reference.run.step = StepSpec::Courant { courant: CourantKind::Celerity, target: 0.5, dt_max: 1.0 };
    write_run(&dir.join("reference"), &run_case(&reference)?)?;

    for dt in [0.1, 0.3] {
        c.run.step = StepSpec::Fixed { dt };
        let name = format!("imex-dt{dt}");
        write_run(&dir.join(&name), &run_case(&c)?)?;
        let (t, e) = compare_runs(&dir.join(&name), &dir.join("reference"))?;
        println!("{name} at t = {t}: Err_u {:.3e}, Err_rho {:.3e}, Err_eta {:.3e}", e.u.l2, e.rho.l2, e.eta.l2);
    }
    println!("runs in {}", dir.display());
    Ok(())
}
