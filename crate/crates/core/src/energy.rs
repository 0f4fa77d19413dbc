//! Per-joint kinetic and potential energy, and active-joint selection.
//!
//! "Energy" here is a dimensionless proxy: kinetic energy is the sum of
//! squared frame-to-frame displacements, potential energy the absolute net
//! displacement from the first-frame pose. Both are max-normalized, summed,
//! and max-normalized again before thresholding at `mu - alpha * sigma`.

use ndarray::Axis;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sequence::SkeletonSequence;

pub fn kinetic_energy(seq: &SkeletonSequence) -> Vec<f64> {
    let x = seq.data();
    let (c, t, v) = x.dim();
    let mut out = vec![0.0; v];
    for plane in x.axis_iter(Axis(0)) {
        for frame in 1..t {
            for (joint, acc) in out.iter_mut().enumerate() {
                let d = plane[[frame, joint]] - plane[[frame - 1, joint]];
                *acc += d * d;
            }
        }
    }
    out.iter_mut().for_each(|e| *e /= c as f64);
    out
}

/// Absolute value of the summed signed displacement from frame 1, so
/// oscillations around the reference pose cancel.
pub fn potential_energy(seq: &SkeletonSequence) -> Vec<f64> {
    let x = seq.data();
    let (c, t, v) = x.dim();
    let mut signed = vec![0.0; v];
    for plane in x.axis_iter(Axis(0)) {
        for frame in 1..t {
            for (joint, acc) in signed.iter_mut().enumerate() {
                *acc += plane[[frame, joint]] - plane[[0, joint]];
            }
        }
    }
    signed.into_iter().map(|s| (s / c as f64).abs()).collect()
}

/// Divides by the maximum; an all-zero vector stays all-zero.
pub fn max_normalize(values: &[f64]) -> Vec<f64> {
    let max = values.iter().copied().fold(0.0, f64::max);
    if max > 0.0 {
        values.iter().map(|e| e / max).collect()
    } else {
        vec![0.0; values.len()]
    }
}

/// Threshold statistics of a normalized energy distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyStats {
    pub mu: f64,
    /// Sample standard deviation (`V - 1` denominator); 0 when `V = 1`.
    pub sigma: f64,
    pub threshold: f64,
}

/// Applies the `total >= mu - alpha * sigma` rule to already-normalized energies.
pub fn select_active(total_norm: &[f64], alpha: f64) -> Result<(EnergyStats, Vec<bool>)> {
    if total_norm.is_empty() {
        return Err(Error::DimensionMismatch("no joints".into()));
    }
    if !alpha.is_finite() {
        return Err(Error::InvalidParameter {
            name: "alpha",
            reason: "must be finite".into(),
        });
    }
    let n = total_norm.len() as f64;
    let mu = total_norm.iter().sum::<f64>() / n;
    let sigma = if total_norm.len() > 1 {
        let ss: f64 = total_norm.iter().map(|e| (e - mu) * (e - mu)).sum();
        (ss / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    let threshold = mu - alpha * sigma;
    let mut mask: Vec<bool> = total_norm.iter().map(|&e| e >= threshold).collect();
    if !mask.iter().any(|&m| m) {
        // Only reachable for large negative alpha: keep the strongest joint.
        let best = argmax(total_norm);
        mask[best] = true;
    }
    Ok((EnergyStats { mu, sigma, threshold }, mask))
}

fn argmax(values: &[f64]) -> usize {
    values
        .iter()
        .enumerate()
        .fold(
            (0, f64::NEG_INFINITY),
            |(bi, bv), (i, &v)| {
                if v > bv {
                    (i, v)
                } else {
                    (bi, bv)
                }
            },
        )
        .0
}

/// Energies, statistics and the resulting active-joint mask.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyReport {
    pub kinetic: Vec<f64>,
    pub potential: Vec<f64>,
    pub kinetic_norm: Vec<f64>,
    pub potential_norm: Vec<f64>,
    pub total_norm: Vec<f64>,
    pub mu: f64,
    pub sigma: f64,
    pub alpha: f64,
    pub active_mask: Vec<bool>,
}

impl EnergyReport {
    /// Active joints as 0-based indices, ascending.
    pub fn active_set(&self) -> Vec<usize> {
        self.active_mask
            .iter()
            .enumerate()
            .filter_map(|(v, &m)| m.then_some(v))
            .collect()
    }

    pub fn threshold(&self) -> f64 {
        self.mu - self.alpha * self.sigma
    }

    /// JSON view; `active_set` is written with 1-based joint numbers.
    pub fn to_json_value(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct View<'a> {
            kinetic: &'a [f64],
            potential: &'a [f64],
            kinetic_norm: &'a [f64],
            potential_norm: &'a [f64],
            total_norm: &'a [f64],
            mu: f64,
            sigma: f64,
            alpha: f64,
            active_set: Vec<usize>,
        }
        serde_json::to_value(View {
            kinetic: &self.kinetic,
            potential: &self.potential,
            kinetic_norm: &self.kinetic_norm,
            potential_norm: &self.potential_norm,
            total_norm: &self.total_norm,
            mu: self.mu,
            sigma: self.sigma,
            alpha: self.alpha,
            active_set: self.active_set().into_iter().map(|v| v + 1).collect(),
        })
        .expect("energy report serializes")
    }
}

pub fn active_joint_selection(seq: &SkeletonSequence, alpha: f64) -> Result<EnergyReport> {
    let kinetic = kinetic_energy(seq);
    let potential = potential_energy(seq);
    let kinetic_norm = max_normalize(&kinetic);
    let potential_norm = max_normalize(&potential);
    let raw: Vec<f64> = kinetic_norm.iter().zip(&potential_norm).map(|(k, p)| k + p).collect();
    let total_norm = max_normalize(&raw);
    let (stats, active_mask) = select_active(&total_norm, alpha)?;
    Ok(EnergyReport {
        kinetic,
        potential,
        kinetic_norm,
        potential_norm,
        total_norm,
        mu: stats.mu,
        sigma: stats.sigma,
        alpha,
        active_mask,
    })
}
