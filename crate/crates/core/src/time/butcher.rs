//! Butcher tableaux of the ARK2 pair.

use crate::error::{Error, Result};

/// Explicit (`a`) and implicit (`a_imp`) three-stage tableaux sharing `b`, `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ButcherPair {
    pub c: [f64; 3],
    pub a: [[f64; 3]; 3],
    pub a_imp: [[f64; 3]; 3],
    pub b: [f64; 3],
}

impl ButcherPair {
    /// The L-stable member whose implicit part is TR-BDF2:
    /// `gamma = 1 - 1/sqrt 2`, `c = (0, 2 - sqrt 2, 1)`.
    pub fn ark2() -> Self {
        let s2 = std::f64::consts::SQRT_2;
        let gamma = 1.0 - 1.0 / s2;
        let k = (3.0 + 2.0 * s2) / 6.0;
        let w = 1.0 / (2.0 * s2);
        Self {
            c: [0.0, 2.0 - s2, 1.0],
            a: [[0.0; 3], [2.0 - s2, 0.0, 0.0], [1.0 - k, k, 0.0]],
            a_imp: [[0.0; 3], [gamma, gamma, 0.0], [w, w, gamma]],
            b: [w, w, gamma],
        }
    }

    /// Row sums against `c` and `b` against the last implicit row.
    pub fn check(&self) -> Result<()> {
        for l in 0..3 {
            let se: f64 = self.a[l].iter().sum();
            let si: f64 = self.a_imp[l].iter().sum();
            if (se - self.c[l]).abs() > 1e-14 || (si - self.c[l]).abs() > 1e-14 {
                return Err(Error::Config(format!("tableau row {l} inconsistent with c")));
            }
            if (self.b[l] - self.a_imp[2][l]).abs() > 1e-14 {
                return Err(Error::Config("b differs from the last implicit row".into()));
            }
        }
        Ok(())
    }
}
