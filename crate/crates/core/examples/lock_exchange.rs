//! Lock exchange: front speeds of the two gravity currents and the
//! two-layer estimate `V = sqrt(g' H) / 2`.

use mlsw::harness::{front_speeds, run_case, CaseSpec, FRONT_THRESHOLD, FRONT_WINDOW};

fn main() -> mlsw::Result<()> {
    let mut c = CaseSpec::lock_exchange();
    c.run.t_final = 10.0;
    c.run.output_interval = Some(0.5);
    let out = run_case(&c)?;
    let snaps: Vec<_> = out.snapshots.iter().map(|s| (s.t, &s.state.rho)).collect();
    let v = front_speeds(&out.model, &snaps, FRONT_THRESHOLD, 0.0, FRONT_WINDOW)?;
    let theory = 0.5 * (c.physics.g * 0.03 * 0.3f64).sqrt();
    println!("surface front {:.4} m/s, bottom front {:.4} m/s, V = {theory:.4} m/s", v.surface, v.bottom);
    println!("volume drift {:.1e}, density mass drift {:.1e}", out.report.volume_drift, out.report.density_mass_drift);
    Ok(())
}
