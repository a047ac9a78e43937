//! Free-surface gauges and the period of a recorded signal.

use serde::{Deserialize, Serialize};

use crate::spatial::Model;
use crate::state::State;

/// Free-surface record in the cell nearest to `x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeSeries {
    pub x: f64,
    pub cell: usize,
    pub t: Vec<f64>,
    pub eta: Vec<f64>,
}

impl ProbeSeries {
    pub fn new(model: &Model, x: f64) -> Self {
        Self { x, cell: model.mesh.nearest_cell(x), t: Vec::new(), eta: Vec::new() }
    }

    pub fn record(&mut self, t: f64, state: &State) {
        self.t.push(t);
        self.eta.push(state.eta[self.cell]);
    }

    /// The part of the record with `t >= t0`.
    pub fn after(&self, t0: f64) -> (&[f64], &[f64]) {
        let k = self.t.partition_point(|&t| t < t0);
        (&self.t[k..], &self.eta[k..])
    }
}

/// Mean spacing of the upward crossings of the signal mean, located by
/// linear interpolation. `None` with fewer than two crossings.
pub fn crossing_period(t: &[f64], y: &[f64]) -> Option<f64> {
    if y.is_empty() {
        return None;
    }
    let mean = y.iter().sum::<f64>() / y.len() as f64;
    let mut ups = Vec::new();
    for k in 1..y.len() {
        let (a, b) = (y[k - 1] - mean, y[k] - mean);
        if a < 0.0 && b >= 0.0 {
            ups.push(t[k - 1] + a / (a - b) * (t[k] - t[k - 1]));
        }
    }
    if ups.len() < 2 {
        return None;
    }
    Some((ups[ups.len() - 1] - ups[0]) / (ups.len() - 1) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn period_of_a_sine() {
        let t: Vec<f64> = (0..2000).map(|k| k as f64 * 0.37).collect();
        let y: Vec<f64> = t.iter().map(|t| 3.0 + (2.0 * std::f64::consts::PI * t / 43.2 + 0.3).sin()).collect();
        let p = crossing_period(&t, &y).unwrap();
        assert!((p - 43.2).abs() < 1e-3, "{p}");
    }

    #[test]
    fn flat_signal_has_no_period() {
        assert_eq!(crossing_period(&[0.0, 1.0, 2.0], &[1.0; 3]), None);
        assert_eq!(crossing_period(&[], &[]), None);
    }
}
