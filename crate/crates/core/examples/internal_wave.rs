//! Internal wave in a closed basin: semi-implicit run at a fixed step
//! compared with an explicit run at celerity Courant number 0.1.

use mlsw::harness::{run_case, CaseSpec, IntegratorKind, StepSpec};
use mlsw::time::CourantKind;

fn main() -> mlsw::Result<()> {
    let mut reference = CaseSpec::internal_wave();
    reference.run.integrator = IntegratorKind::Rk3;
    reference.run.step = StepSpec::Courant { courant: CourantKind::Celerity, target: 0.1, dt_max: 1.0 };
    reference.run.output_interval = None;
    let reference = run_case(&reference)?;
    println!("reference: {} steps", reference.report.work.steps);

    for dt in [0.01, 0.02, 0.04] {
        let mut c = CaseSpec::internal_wave();
        c.run.step = StepSpec::Fixed { dt };
        c.run.output_interval = None;
        let mut out = run_case(&c)?;
        let e = out.compare(reference.final_state())?;
        let cf = out.report.courant_final;
        println!("dt {dt:<5} Err_u {:.3e}  Err_rho {:.3e}  C_cel {:.3}  C_vel {:.3}", e.u.l2, e.rho.l2, cf.cel, cf.vel);
    }
    Ok(())
}
