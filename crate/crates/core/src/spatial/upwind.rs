//! Scalar upwind selections.

/// Value from the upstream side of a carrier; the average on an exact tie.
#[inline]
pub fn upwind_interface(left: f64, right: f64, carrier: f64) -> f64 {
    if carrier > 0.0 {
        left
    } else if carrier < 0.0 {
        right
    } else {
        0.5 * (left + right)
    }
}

#[inline]
pub fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Density at the interface between layers `alpha` (below) and `alpha+1`
/// (above): `(lo + hi)/2 - sgn(-G)/2 (hi - lo)`. Positive `G` is a downward
/// mass transfer, which picks the upper value.
#[inline]
pub fn density_interface_value(lo: f64, hi: f64, g: f64) -> f64 {
    0.5 * (lo + hi) - 0.5 * sgn(-g) * (hi - lo)
}

#[inline]
pub fn minmod(a: f64, b: f64) -> f64 {
    if a * b <= 0.0 {
        0.0
    } else if a.abs() < b.abs() {
        a
    } else {
        b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn upwind_truth_table() {
        assert_eq!(upwind_interface(1.0, 3.0, 1.0), 1.0);
        assert_eq!(upwind_interface(1.0, 3.0, -1.0), 3.0);
        assert_eq!(upwind_interface(1.0, 3.0, 0.0), 2.0);
    }

    #[test]
    fn vertical_density_truth_table() {
        assert_eq!(density_interface_value(0.0, 0.03, 1.0), 0.03);
        assert_eq!(density_interface_value(0.0, 0.03, -1.0), 0.0);
        assert_eq!(density_interface_value(0.0, 0.03, 0.0), 0.015);
        for g in [-2.0, 0.0, 5.0] {
            assert_eq!(density_interface_value(0.7, 0.7, g), 0.7);
        }
    }

    #[test]
    fn minmod_cases() {
        assert_eq!(minmod(1.0, 2.0), 1.0);
        assert_eq!(minmod(-3.0, -2.0), -2.0);
        assert_eq!(minmod(1.0, -2.0), 0.0);
        assert_eq!(minmod(0.0, 2.0), 0.0);
    }
}
