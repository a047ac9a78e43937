//! Largest imaginary part of the linearised spectrum along a family of
//! linearly sheared velocity profiles, for two to five layers.

use mlsw::linear::shear_sweep;

fn main() -> mlsw::Result<()> {
    let (h, g) = (1.0, 9.81);
    let contrasts: Vec<f64> = (0..=40).map(|k| 0.5 * k as f64).collect();
    println!("layers,contrast,max_imag,residual,schur");
    for n in [2usize, 3, 4, 5] {
        let l = vec![1.0 / n as f64; n];
        for p in shear_sweep(h, &l, g, &contrasts)? {
            println!("{n},{},{:.6e},{:.3e},{:.3e}", p.contrast, p.max_imag, p.residual, p.schur);
        }
    }
    Ok(())
}
