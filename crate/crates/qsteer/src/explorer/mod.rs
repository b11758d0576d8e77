//! Run harness behind the CLI: λ sampling, family sweeps, adversarial
//! optimization against the no-cloning bound, threshold solving, and
//! machine-readable reporting.
//!
//! Every run is a pure function of its [`RunConfig`]: randomness comes only
//! from the configured seed via per-sample substreams, so repeated runs are
//! byte-identical regardless of thread count. Sample and grid evaluations
//! run in parallel; results are assembled in logical order.

pub mod optimize;
pub mod output;
pub mod sampling;
pub mod threshold;

pub use optimize::{run_optimize, Objective, OptimizeResult};
pub use output::{fmt_sig12, OutputFormat};
pub use sampling::sample_lambda;
pub use threshold::{run_threshold, ThresholdRecord};

use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cloning::{make_family, LambdaFamily, LambdaTable};
use crate::error::{Error, Result};
use crate::qudit::{Dimension, MAX_FULL_STATE_DIM};
use crate::ss::ss_report_with_tol;
use crate::steering::{no_cloning_report_with_tol, Scenario, SteeringReport};

use output::{render_optimize, render_records, render_threshold};

/// Default assertion slack for report checks.
pub const DEFAULT_TOL: f64 = crate::qudit::tol::THEOREM_SLACK;

/// An inclusive linear parameter grid, parsed from `start:stop:steps`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl Grid {
    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.start];
        }
        let span = self.stop - self.start;
        (0..self.steps)
            .map(|i| self.start + span * i as f64 / (self.steps - 1) as f64)
            .collect()
    }
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = |reason: String| Error::InvalidConfig { reason };
        if parts.len() != 3 {
            return Err(bad(format!("grid `{s}` is not start:stop:steps")));
        }
        let start: f64 = parts[0]
            .parse()
            .map_err(|_| bad(format!("bad grid start `{}`", parts[0])))?;
        let stop: f64 = parts[1]
            .parse()
            .map_err(|_| bad(format!("bad grid stop `{}`", parts[1])))?;
        let steps: usize = parts[2]
            .parse()
            .map_err(|_| bad(format!("bad grid steps `{}`", parts[2])))?;
        if steps == 0 {
            return Err(bad("grid needs at least one step".into()));
        }
        if !(start.is_finite() && stop.is_finite()) || start > stop {
            return Err(bad(format!("grid range {start}..{stop} is invalid")));
        }
        Ok(Grid { start, stop, steps })
    }
}

/// What a run should do.
#[derive(Clone, Debug)]
pub enum Mode {
    /// Analyze one λ table.
    Verify { family: LambdaFamily },
    /// One report per grid point of the depolarizing family.
    Sweep { family: LambdaFamily, grid: Grid },
    /// Reports over seeded Dirichlet draws from the λ simplex.
    Sample { samples: u64, concentration: f64 },
    /// Adversarial search for the largest objective over the λ simplex.
    Optimize { objective: Objective, restarts: u32 },
    /// Largest depolarizing weight that still certifies AB steering.
    Threshold,
}

/// Complete description of one explorer run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub d: usize,
    pub scenario: Scenario,
    pub mode: Mode,
    pub seed: u64,
    pub format: OutputFormat,
    /// Assertion slack for the bound checks inside report assembly.
    pub tol: f64,
}

impl RunConfig {
    fn dimension(&self) -> Result<Dimension> {
        Dimension::new(self.d)
    }

    fn validate(&self) -> Result<()> {
        let invalid = |reason: String| Err(Error::InvalidConfig { reason });
        let d = self.dimension()?;
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return invalid(format!("tolerance {} must be positive", self.tol));
        }
        match &self.mode {
            Mode::Verify { .. }
            | Mode::Sweep { .. }
            | Mode::Sample { .. }
            | Mode::Optimize { .. } => {
                // these all run the full-state Born-rule route
                if d.get() > MAX_FULL_STATE_DIM {
                    return invalid(format!(
                        "d={} exceeds the full-state cap {MAX_FULL_STATE_DIM} required by this mode",
                        d.get()
                    ));
                }
            }
            Mode::Threshold => {}
        }
        match &self.mode {
            Mode::Sweep { family, .. } => {
                if !matches!(family, LambdaFamily::Depolarizing(_)) {
                    return invalid("sweep supports only the depolarizing family".into());
                }
            }
            Mode::Sample {
                samples,
                concentration,
            } => {
                if *samples < 1 {
                    return invalid("samples must be at least 1".into());
                }
                if !(*concentration > 0.0 && concentration.is_finite()) {
                    return invalid(format!("concentration {concentration} must be positive"));
                }
            }
            Mode::Optimize { restarts, .. } => {
                if *restarts < 1 {
                    return invalid("restarts must be at least 1".into());
                }
                if self.format != OutputFormat::Json {
                    return invalid(
                        "optimize emits a single JSON record; use --format json".into(),
                    );
                }
            }
            Mode::Threshold if self.format != OutputFormat::Json => {
                return invalid("threshold emits a single JSON record; use --format json".into());
            }
            _ => {}
        }
        Ok(())
    }
}

/// One report row with its provenance, as serialized to JSON lines or CSV.
/// The flattened report keeps `d` and `lambda` at the top level, so any
/// emitted record is itself loadable as a custom-λ file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Record {
    pub family: String,
    pub param: Option<f64>,
    #[serde(flatten)]
    pub report: SteeringReport,
}

fn scenario_report(scenario: Scenario, lam: &LambdaTable, tol: f64) -> Result<SteeringReport> {
    match scenario {
        Scenario::Epr => no_cloning_report_with_tol(lam, tol),
        Scenario::Ss => ss_report_with_tol(lam, tol),
    }
}

/// Run a config and return the complete rendered output, newline-terminated.
pub fn execute(cfg: &RunConfig) -> Result<String> {
    cfg.validate()?;
    let d = cfg.dimension()?;
    match &cfg.mode {
        Mode::Verify { family } => {
            let lam = make_family(family, d)?;
            let record = Record {
                family: family.name().to_string(),
                param: match family {
                    LambdaFamily::Depolarizing(p) => Some(*p),
                    _ => None,
                },
                report: scenario_report(cfg.scenario, &lam, cfg.tol)?,
            };
            render_records(std::slice::from_ref(&record), cfg.format)
        }
        Mode::Sweep { grid, .. } => {
            let records = sweep_records(d, cfg.scenario, *grid, cfg.tol)?;
            render_records(&records, cfg.format)
        }
        Mode::Sample {
            samples,
            concentration,
        } => {
            let records =
                sample_records(d, cfg.scenario, cfg.seed, *samples, *concentration, cfg.tol)?;
            render_records(&records, cfg.format)
        }
        Mode::Optimize {
            objective,
            restarts,
        } => {
            let result = run_optimize(d, *objective, *restarts, cfg.seed)?;
            render_optimize(&result)
        }
        Mode::Threshold => {
            let record = run_threshold(d)?;
            render_threshold(&record)
        }
    }
}

/// Reports over a depolarizing-family grid, in grid order.
pub fn sweep_records(
    d: Dimension,
    scenario: Scenario,
    grid: Grid,
    tol: f64,
) -> Result<Vec<Record>> {
    grid.values()
        .par_iter()
        .map(|&p| {
            let lam = make_family(&LambdaFamily::Depolarizing(p), d)?;
            Ok(Record {
                family: "depolarizing".to_string(),
                param: Some(p),
                report: scenario_report(scenario, &lam, tol)?,
            })
        })
        .collect()
}

/// Reports over seeded Dirichlet draws, in draw order. Draw `i` depends only
/// on (seed, i), so the result is independent of evaluation order.
pub fn sample_records(
    d: Dimension,
    scenario: Scenario,
    seed: u64,
    samples: u64,
    concentration: f64,
    tol: f64,
) -> Result<Vec<Record>> {
    (0..samples)
        .into_par_iter()
        .map(|i| {
            let lam = sample_lambda(d, seed, i, concentration)?;
            Ok(Record {
                family: "dirichlet".to_string(),
                param: Some(i as f64),
                report: scenario_report(scenario, &lam, tol)?,
            })
        })
        .collect()
}

/// Load a λ table from the JSON file format `{"d": d, "lambda": [[...]]}`.
/// Unknown fields are ignored, so emitted report records load back directly.
/// Sums that deviate from 1 by at most 1e-9 are renormalized; larger
/// deviations are rejected.
pub fn load_lambda_json(path: &Path) -> Result<LambdaTable> {
    #[derive(Deserialize)]
    struct LambdaFile {
        d: usize,
        lambda: Vec<Vec<f64>>,
    }
    let text = std::fs::read_to_string(path)?;
    let file: LambdaFile = serde_json::from_str(&text)?;
    let d = Dimension::new(file.d)?;
    let dd = d.get();
    if file.lambda.len() != dd || file.lambda.iter().any(|r| r.len() != dd) {
        return Err(Error::InvalidLambda {
            reason: format!("lambda must be {dd} rows of {dd} entries"),
        });
    }
    let mut flat: Vec<f64> = file.lambda.concat();
    let sum: f64 = flat.iter().sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidLambda {
            reason: format!("lambda sums to {sum}; deviations above 1e-9 are rejected"),
        });
    }
    for v in flat.iter_mut() {
        *v /= sum;
    }
    LambdaTable::new(d, flat)
}

/// Resolve a family by CLI-style name plus its parameters.
pub fn family_from_args(
    name: &str,
    param: Option<f64>,
    q1: Option<&[f64]>,
    q2: Option<&[f64]>,
    lambda_file: Option<&PathBuf>,
) -> Result<LambdaFamily> {
    let invalid = |reason: String| Err(Error::InvalidConfig { reason });
    match name {
        "delta" => Ok(LambdaFamily::Delta),
        "uniform" => Ok(LambdaFamily::Uniform),
        "depolarizing" => match param {
            Some(p) => Ok(LambdaFamily::Depolarizing(p)),
            None => invalid("depolarizing family needs --param".into()),
        },
        "product" => match (q1, q2) {
            (Some(a), Some(b)) => Ok(LambdaFamily::Product(a.to_vec(), b.to_vec())),
            _ => invalid("product family needs --q1 and --q2".into()),
        },
        "custom" => match lambda_file {
            Some(path) => Ok(LambdaFamily::Custom(load_lambda_json(path)?)),
            None => invalid("custom family needs --lambda-file".into()),
        },
        other => invalid(format!(
            "unknown family `{other}` (expected delta, uniform, depolarizing, product, or custom)"
        )),
    }
}
