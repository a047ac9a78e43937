//! Salt intrusion in a tidal estuary. Prints the hourly free surface at the
//! probe and the salinity reach of the bottom layer.
//!
//! `cargo run --release --example tidal_estuary -- [hours] [uniform|nvar1|nvar3|nvar4]`

use mlsw::harness::{crossing_period, run_case, CaseSpec, StepSpec, TidalLayout};

fn main() -> mlsw::Result<()> {
    let mut args = std::env::args().skip(1);
    let hours: f64 = args.next().map_or(36.0, |a| a.parse().expect("hours"));
    let layout = match args.next().as_deref() {
        None | Some("uniform") => TidalLayout::Uniform,
        Some("nvar1") => TidalLayout::Nvar1,
        Some("nvar3") => TidalLayout::Nvar3,
        Some("nvar4") => TidalLayout::Nvar4,
        Some(other) => panic!("unknown layout {other}"),
    };
    let mut c = CaseSpec::tidal(layout);
    c.run.step = StepSpec::Fixed { dt: 20.0 };
    c.run.t_final = hours * 3600.0;
    let out = run_case(&c)?;

    println!("t_h,eta_probe,intrusion_km");
    let i = out.probes[0].cell;
    for s in &out.snapshots {
        // leftmost cell with a noticeably dense bottom layer
        let reach = (0..out.model.cells())
            .find(|&k| s.state.rho.col(k)[0] > 0.001)
            .map_or(f64::NAN, |k| out.model.mesh.x_center[k] / 1000.0);
        println!("{:.0},{:.4},{reach:.2}", s.t / 3600.0, s.state.eta[i]);
    }
    let p = &out.probes[0];
    let (t, eta) = p.after(c.run.t_final.min(48.0 * 3600.0) / 2.0);
    if let Some(period) = crossing_period(t, eta) {
        println!("probe period {:.3} h", period / 3600.0);
    }
    println!("max Courant: cel {:.2}, vel {:.2}", out.report.courant_max.cel, out.report.courant_max.vel);
    Ok(())
}
