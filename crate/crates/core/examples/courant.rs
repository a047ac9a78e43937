//! Celerity and velocity Courant numbers of the built-in cases, and the
//! steps an adaptive controller would take for a few targets, capped at 1e4 s.

use mlsw::harness::{CaseSpec, TidalLayout};
use mlsw::time::{adaptive_dt, courant_numbers, CourantKind};

fn main() -> mlsw::Result<()> {
    let cases = [CaseSpec::internal_wave(), CaseSpec::lock_exchange(), CaseSpec::tidal(TidalLayout::Uniform)];
    for case in cases {
        let (model, state) = case.build()?;
        let c = courant_numbers(&model, &state, 1.0);
        println!("{}: per unit step C_cel {:.4e}, C_vel {:.4e}", case.name, c.cel, c.vel);
        for target in [0.1, 0.9, 5.0] {
            let cel = adaptive_dt(&model, &state, CourantKind::Celerity, target, 1e4);
            let vel = adaptive_dt(&model, &state, CourantKind::Velocity, target, 1e4);
            println!("  target {target}: dt {cel:.4e} (celerity), {vel:.4e} (velocity)");
        }
    }
    Ok(())
}
