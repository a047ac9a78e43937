//! Spectrum of the linearised system for a few background profiles,
//! checked against the closed forms where they exist.

use mlsw::linear::{assemble_a, hyperbolicity_check, parse_profiles, schur_residual, spectrum};

const PROFILES: &str = r#"
[[profile]]
id = "still"
h = 0.3
g = 9.81
l = [0.25, 0.25, 0.5]
u = [0.0, 0.0, 0.0]
rho = [0.03, 0.03, 0.03]

[[profile]]
id = "stratified"
h = 1.0
g = 9.81
l = [0.5, 0.5]
u = [1.0, -1.0]
rho = [0.03, 0.0]

[[profile]]
id = "strong_shear"
h = 1.0
g = 9.81
l = [0.25, 0.25, 0.25, 0.25]
u = [9.0, -9.7, -4.5, -2.3]
rho = [0.0, 0.0, 0.0, 0.0]
"#;

fn main() -> mlsw::Result<()> {
    for p in parse_profiles(PROFILES)? {
        let a = assemble_a(&p.model);
        let sp = spectrum(&a)?;
        let hyp = hyperbolicity_check(&sp, None);
        println!("{}: hyperbolic {} (max |Im| {:.3e})", p.id, hyp.hyperbolic, hyp.max_imag);
        for z in &sp {
            println!("  {:+.6} {:+.6}i", z.re, z.im);
        }
        if p.model.rho.iter().all(|r| *r == 0.0) {
            println!("  Schur residual {:.1e}", schur_residual(&a, &sp)?);
        }
    }
    let c = (9.81f64 * 1.03 * 0.3).sqrt();
    println!("closed form for \"still\": +-{c:.6}");
    Ok(())
}
