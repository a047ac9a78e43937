//! Tridiagonal solvers.

/// Thomas algorithm. `lower[0]` and `upper[n-1]` are ignored. Returns `None`
/// on a zero pivot.
pub fn solve(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &mut [f64]) -> Option<()> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut beta = diag[0];
    if beta == 0.0 || !beta.is_finite() {
        return None;
    }
    rhs[0] /= beta;
    for i in 1..n {
        c[i - 1] = upper[i - 1] / beta;
        beta = diag[i] - lower[i] * c[i - 1];
        if beta == 0.0 || !beta.is_finite() {
            return None;
        }
        rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) / beta;
    }
    for i in (0..n - 1).rev() {
        rhs[i] -= c[i] * rhs[i + 1];
    }
    Some(())
}

/// Cyclic system: `lower[0]` couples row 0 to the last unknown and
/// `upper[n-1]` couples the last row to unknown 0 (Sherman-Morrison).
pub fn solve_cyclic(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &mut [f64]) -> Option<()> {
    let n = diag.len();
    let alpha = upper[n - 1];
    let beta = lower[0];
    let gamma = -diag[0];
    let mut d = diag.to_vec();
    d[0] -= gamma;
    d[n - 1] -= alpha * beta / gamma;
    solve(lower, &d, upper, rhs)?;
    let mut z = vec![0.0; n];
    z[0] = gamma;
    z[n - 1] = alpha;
    solve(lower, &d, upper, &mut z)?;
    let fact = (rhs[0] + beta * rhs[n - 1] / gamma) / (1.0 + z[0] + beta * z[n - 1] / gamma);
    for (x, zi) in rhs.iter_mut().zip(&z) {
        *x -= fact * zi;
    }
    Some(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matvec(lower: &[f64], diag: &[f64], upper: &[f64], x: &[f64], cyclic: bool) -> Vec<f64> {
        let n = x.len();
        (0..n)
            .map(|i| {
                let mut v = diag[i] * x[i];
                if i > 0 {
                    v += lower[i] * x[i - 1];
                } else if cyclic {
                    v += lower[0] * x[n - 1];
                }
                if i + 1 < n {
                    v += upper[i] * x[i + 1];
                } else if cyclic {
                    v += upper[n - 1] * x[0];
                }
                v
            })
            .collect()
    }

    #[test]
    fn thomas_recovers_solution() {
        let lower = [0.0, -1.0, -2.0, -0.5];
        let diag = [4.0, 5.0, 6.0, 3.0];
        let upper = [-1.0, -1.5, -0.2, 0.0];
        let x = [1.0, -2.0, 0.5, 3.0];
        let mut b = matvec(&lower, &diag, &upper, &x, false);
        solve(&lower, &diag, &upper, &mut b).unwrap();
        for (a, e) in b.iter().zip(x) {
            assert!((a - e).abs() < 1e-14);
        }
    }

    #[test]
    fn cyclic_recovers_solution() {
        let lower = [-0.7, -1.0, -2.0, -0.5, -1.0];
        let diag = [4.0, 5.0, 6.0, 3.0, 4.0];
        let upper = [-1.0, -1.5, -0.2, -1.0, -0.3];
        let x = [1.0, -2.0, 0.5, 3.0, 0.1];
        let mut b = matvec(&lower, &diag, &upper, &x, true);
        solve_cyclic(&lower, &diag, &upper, &mut b).unwrap();
        for (a, e) in b.iter().zip(x) {
            assert!((a - e).abs() < 1e-13);
        }
    }
}
