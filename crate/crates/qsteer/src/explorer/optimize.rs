//! Adversarial search over the λ simplex.
//!
//! λ is parametrized through a softmax of d² logits with the first logit
//! pinned to 0, turning the simplex into an unconstrained search space with
//! no projection step. A multi-start Nelder–Mead local search maximizes one
//! of two objectives: the two-copy total Σᵢ I_{AᵢBᵢ} + Σᵢ I_{AᵢCᵢ} (probing
//! the 2log₂d bound) or min(sum_ab, sum_ac) − log₂d (probing whether any λ
//! makes both copies pass the criterion; a maximum below 0 means none found).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::cloning::LambdaTable;
use crate::error::{Error, Result};
use crate::qudit::Dimension;
use crate::steering::{steering_sum, PartyPair};

/// Which quantity the optimizer maximizes.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    /// sum_ab + sum_ac, probing saturation of the 2log₂d bound.
    Total,
    /// min(sum_ab, sum_ac) − log₂d, probing dual steerability directly.
    Exclusivity,
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Objective::Total => write!(f, "total"),
            Objective::Exclusivity => write!(f, "exclusivity"),
        }
    }
}

impl FromStr for Objective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "total" => Ok(Objective::Total),
            "exclusivity" => Ok(Objective::Exclusivity),
            other => Err(Error::InvalidConfig {
                reason: format!("unknown objective `{other}` (expected total or exclusivity)"),
            }),
        }
    }
}

/// Outcome of an optimization run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OptimizeResult {
    pub d: usize,
    pub objective: Objective,
    pub best_lambda: Vec<Vec<f64>>,
    /// Value of the maximized objective at `best_lambda`.
    pub best_objective: f64,
    /// sum_ab + sum_ac at `best_lambda`.
    pub best_total: f64,
    /// 2log₂d.
    pub bound: f64,
    /// bound − best_total; never meaningfully negative.
    pub gap: f64,
    /// Total objective evaluations across all restarts.
    pub iterations: u64,
    pub restarts: u32,
    /// Whether the restart that produced the best value converged by
    /// simplex diameter before exhausting its evaluation budget.
    pub converged: bool,
}

/// Evaluation budget per restart.
pub const MAX_EVALS_PER_RESTART: usize = 2000;
/// A restart converges when its simplex diameter falls below this.
pub const DIAMETER_TOL: f64 = 1e-9;
/// Initial simplex edge length.
const INITIAL_STEP: f64 = 1.0;
/// Standard deviation of the random restart logits.
const RESTART_SPREAD: f64 = 3.0;
/// Logit depth of the corner-biased start used for the first restart.
const CORNER_BIAS: f64 = 8.0;

/// Map pinned logits (0, x₁, …) through softmax onto a λ table.
fn softmax_table(d: Dimension, x: &[f64]) -> LambdaTable {
    let n = d.get() * d.get();
    debug_assert_eq!(x.len(), n - 1);
    let mut logits = Vec::with_capacity(n);
    logits.push(0.0);
    logits.extend_from_slice(x);
    let m = logits.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut w: Vec<f64> = logits.iter().map(|v| (v - m).exp()).collect();
    let sum: f64 = w.iter().sum();
    for v in w.iter_mut() {
        *v /= sum;
    }
    LambdaTable::new(d, w).expect("softmax output is a valid table")
}

fn objective_value(lam: &LambdaTable, objective: Objective) -> Result<f64> {
    let sum_ab = steering_sum(lam, PartyPair::AB)?;
    let sum_ac = steering_sum(lam, PartyPair::AC)?;
    Ok(match objective {
        Objective::Total => sum_ab + sum_ac,
        Objective::Exclusivity => sum_ab.min(sum_ac) - lam.dimension().log2(),
    })
}

struct LocalSearchOutcome {
    x: Vec<f64>,
    value: f64,
    evals: u64,
    converged: bool,
}

/// Plain Nelder–Mead maximizer with the standard reflection/expansion/
/// contraction/shrink coefficients (1, 2, ½, ½).
fn nelder_mead_maximize(
    f: &mut dyn FnMut(&[f64]) -> f64,
    x0: &[f64],
    step: f64,
    max_evals: usize,
    diameter_tol: f64,
) -> LocalSearchOutcome {
    let n = x0.len();
    let mut evals: u64 = 0;
    let mut eval = |x: &[f64], evals: &mut u64| -> f64 {
        *evals += 1;
        f(x)
    };

    // vertices hold (point, value); ordered best-first after each sort
    let mut vertices: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    let v0 = eval(x0, &mut evals);
    vertices.push((x0.to_vec(), v0));
    for i in 0..n {
        let mut xi = x0.to_vec();
        xi[i] += step;
        let vi = eval(&xi, &mut evals);
        vertices.push((xi, vi));
    }

    let mut converged = false;
    loop {
        vertices.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(std::cmp::Ordering::Equal));
        let diameter = vertices[1..]
            .iter()
            .map(|(x, _)| {
                x.iter()
                    .zip(&vertices[0].0)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max);
        if diameter < diameter_tol {
            converged = true;
            break;
        }
        if evals as usize >= max_evals {
            break;
        }

        let worst = vertices[n].clone();
        let second_worst_value = vertices[n - 1].1;
        let best_value = vertices[0].1;
        let mut centroid = vec![0.0; n];
        for (x, _) in vertices.iter().take(n) {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / n as f64;
            }
        }
        let blend = |t: f64| -> Vec<f64> {
            // point c + t(c − worst)
            centroid
                .iter()
                .zip(&worst.0)
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let reflected = blend(1.0);
        let f_reflected = eval(&reflected, &mut evals);
        if f_reflected > best_value {
            let expanded = blend(2.0);
            let f_expanded = eval(&expanded, &mut evals);
            vertices[n] = if f_expanded > f_reflected {
                (expanded, f_expanded)
            } else {
                (reflected, f_reflected)
            };
            continue;
        }
        if f_reflected > second_worst_value {
            vertices[n] = (reflected, f_reflected);
            continue;
        }
        let contracted = if f_reflected > worst.1 {
            blend(0.5) // outside
        } else {
            blend(-0.5) // inside
        };
        let f_contracted = eval(&contracted, &mut evals);
        if f_contracted > f_reflected.max(worst.1) {
            vertices[n] = (contracted, f_contracted);
            continue;
        }
        // shrink toward the best vertex
        let best = vertices[0].0.clone();
        for (x, v) in vertices.iter_mut().skip(1) {
            for (xi, bi) in x.iter_mut().zip(&best) {
                *xi = bi + 0.5 * (*xi - *bi);
            }
            *v = eval(x, &mut evals);
        }
    }

    vertices.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(std::cmp::Ordering::Equal));
    LocalSearchOutcome {
        x: vertices[0].0.clone(),
        value: vertices[0].1,
        evals,
        converged,
    }
}

/// Multi-start Nelder–Mead over the softmax-parametrized simplex.
///
/// Restart 0 starts at a corner-biased table (most weight on λ₀₀); the
/// remaining restarts draw their logits from a seeded ChaCha8 stream per
/// restart index, so results are deterministic for fixed (seed, restarts).
pub fn run_optimize(
    d: Dimension,
    objective: Objective,
    restarts: u32,
    seed: u64,
) -> Result<OptimizeResult> {
    d.check_full_state()?;
    let params = d.get() * d.get() - 1;

    let mut eval_error: Option<Error> = None;
    let mut best: Option<LocalSearchOutcome> = None;
    let mut total_evals: u64 = 0;

    for restart in 0..restarts {
        let x0: Vec<f64> = if restart == 0 {
            // bias every non-pinned logit down, concentrating weight on λ₀₀
            vec![-CORNER_BIAS; params]
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(restart as u64);
            let normal = Normal::new(0.0, RESTART_SPREAD).expect("valid spread");
            (0..params).map(|_| normal.sample(&mut rng)).collect()
        };
        let mut f = |x: &[f64]| -> f64 {
            let lam = softmax_table(d, x);
            match objective_value(&lam, objective) {
                Ok(v) => v,
                Err(e) => {
                    if eval_error.is_none() {
                        eval_error = Some(e);
                    }
                    f64::NEG_INFINITY
                }
            }
        };
        let outcome = nelder_mead_maximize(
            &mut f,
            &x0,
            INITIAL_STEP,
            MAX_EVALS_PER_RESTART,
            DIAMETER_TOL,
        );
        total_evals += outcome.evals;
        if let Some(e) = eval_error.take() {
            return Err(e);
        }
        let improved = best
            .as_ref()
            .map(|b| outcome.value > b.value)
            .unwrap_or(true);
        if improved {
            best = Some(outcome);
        }
    }

    let best = best.expect("restarts >= 1");
    let best_lambda = softmax_table(d, &best.x);
    let sum_ab = steering_sum(&best_lambda, PartyPair::AB)?;
    let sum_ac = steering_sum(&best_lambda, PartyPair::AC)?;
    let best_total = sum_ab + sum_ac;
    let bound = 2.0 * d.log2();
    let gap = bound - best_total;
    if gap < -1e-6 {
        return Err(Error::TheoremViolation {
            details: format!(
                "optimizer exceeded the two-copy bound: total {best_total} vs bound {bound}"
            ),
        });
    }
    Ok(OptimizeResult {
        d: d.get(),
        objective,
        best_lambda: best_lambda.to_rows(),
        best_objective: best.value,
        best_total,
        bound,
        gap,
        iterations: total_evals,
        restarts,
        converged: best.converged,
    })
}
