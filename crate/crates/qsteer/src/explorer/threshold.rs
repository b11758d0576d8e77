//! Noise-threshold solver for the depolarizing family.
//!
//! For a depolarizing table both correlation profiles equal
//! (1−p+p/d, p/d, …, p/d), so the two-setting AB sum 2log₂d − 2H(q(p)) falls
//! monotonically from 2log₂d at p=0 to 0 at p=1. The threshold p* is the
//! largest weight at which the sum still exceeds the steering criterion's
//! log₂d: below it Alice and Bob certify steering and can distill a key;
//! above it no certification is possible.

use serde::{Deserialize, Serialize};

use crate::cloning::{make_family, LambdaFamily};
use crate::error::{Error, Result};
use crate::qudit::Dimension;
use crate::steering::{q_profile, steering_sum, MeasurementSetting, PartyPair};

/// Bisection resolution on the depolarizing weight.
pub const P_TOL: f64 = 1e-8;

/// Where the AB steering certificate is lost on the depolarizing family.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ThresholdRecord {
    pub d: usize,
    pub family: String,
    /// Largest p with sum_ab > log₂d, to within [`P_TOL`].
    pub p_star: f64,
    /// The two-setting AB sum at p_star (≈ log₂d).
    pub sum_ab: f64,
    /// Correlation profile q₁ at p_star (equals q₂ for this family).
    pub q1: Vec<f64>,
    /// The criterion bound log₂d.
    pub bound: f64,
}

fn sum_ab_at(d: Dimension, p: f64) -> Result<f64> {
    let lam = make_family(&LambdaFamily::Depolarizing(p), d)?;
    steering_sum(&lam, PartyPair::AB)
}

/// Locate the steering threshold of the depolarizing family by bisection.
pub fn run_threshold(d: Dimension) -> Result<ThresholdRecord> {
    let target = d.log2();

    // the bracket must be monotone and actually cross the bound
    let scan = 17;
    let mut previous = f64::INFINITY;
    for i in 0..scan {
        let p = i as f64 / (scan - 1) as f64;
        let value = sum_ab_at(d, p)?;
        if value > previous + 1e-12 {
            return Err(Error::InvalidParameter {
                reason: format!(
                    "depolarizing sweep is not monotone near p={p}: {value} after {previous}"
                ),
            });
        }
        previous = value;
    }
    let at_zero = sum_ab_at(d, 0.0)?;
    let at_one = sum_ab_at(d, 1.0)?;
    if !(at_zero > target && at_one <= target) {
        return Err(Error::InvalidParameter {
            reason: format!(
                "no crossing on [0,1]: sum_ab(0)={at_zero}, sum_ab(1)={at_one}, bound={target}"
            ),
        });
    }

    let mut lo = 0.0; // sum_ab(lo) > target
    let mut hi = 1.0; // sum_ab(hi) <= target
    while hi - lo > P_TOL {
        let mid = 0.5 * (lo + hi);
        if sum_ab_at(d, mid)? > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let p_star = 0.5 * (lo + hi);
    let lam = make_family(&LambdaFamily::Depolarizing(p_star), d)?;
    Ok(ThresholdRecord {
        d: d.get(),
        family: "depolarizing".to_string(),
        p_star,
        sum_ab: steering_sum(&lam, PartyPair::AB)?,
        q1: q_profile(&lam, MeasurementSetting::Computational)
            .values()
            .to_vec(),
        bound: target,
    })
}
