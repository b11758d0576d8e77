//! Output states of the universal cloning machine, parametrized by a
//! Bell-weight table λ.
//!
//! Feeding one half of a maximally entangled qudit pair through the cloner
//! leaves the four parties A, B, C, C′ in the pure state
//! Σ_{jk} √λ_{jk} ∣φ_{jk}⟩_AB ∣φ_{j,d−k}⟩_CC′, where λ is any probability
//! table over the d² Bell indices. This module builds that state, its
//! Bell-diagonal reductions ρ_AB and ρ_CC′, and the preset λ families used
//! by the explorer.

use crate::error::{Error, Result};
use crate::qudit::{
    bell_state, tol, DensityMatrix, Dimension, ProbabilityVector, StateVector, C64,
};

use nalgebra::{DMatrix, DVector};

/// A d×d table of nonnegative Bell weights λ_{jk} summing to 1.
///
/// Entry (j,k) is the weight of ∣φ_{jk}⟩ on the AB side; the CC′ side of the
/// cloned state carries the phase-reflected index (j, d−k mod d). Amplitudes
/// are the real nonnegative roots √λ_{jk}; the table carries no phases.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaTable {
    d: Dimension,
    lam: Vec<f64>, // row-major d×d
}

impl LambdaTable {
    /// Validates entries (≥ 0 after clipping at −1e-12, sum 1 within 1e-10)
    /// and renormalizes the accepted table to sum exactly 1.
    pub fn new(d: Dimension, entries: Vec<f64>) -> Result<Self> {
        let dd = d.get();
        if entries.len() != dd * dd {
            return Err(Error::InvalidLambda {
                reason: format!("expected {} entries, got {}", dd * dd, entries.len()),
            });
        }
        let mut lam = entries;
        for v in lam.iter_mut() {
            if *v < -tol::PROB_CLIP {
                return Err(Error::InvalidLambda {
                    reason: format!("negative weight {v}"),
                });
            }
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        let sum: f64 = lam.iter().sum();
        if (sum - 1.0).abs() > tol::TRACE {
            return Err(Error::InvalidLambda {
                reason: format!("weights sum to {sum}, not 1"),
            });
        }
        for v in lam.iter_mut() {
            *v /= sum;
        }
        Ok(Self { d, lam })
    }

    pub fn from_rows(d: Dimension, rows: &[Vec<f64>]) -> Result<Self> {
        let dd = d.get();
        if rows.len() != dd || rows.iter().any(|r| r.len() != dd) {
            return Err(Error::InvalidLambda {
                reason: format!("expected {dd} rows of {dd} entries"),
            });
        }
        Self::new(d, rows.concat())
    }

    pub fn dimension(&self) -> Dimension {
        self.d
    }

    /// λ_{jk}
    pub fn get(&self, j: usize, k: usize) -> f64 {
        self.lam[j * self.d.get() + k]
    }

    /// Row-major view of all d² weights.
    pub fn entries(&self) -> &[f64] {
        &self.lam
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.lam.chunks(self.d.get()).map(|r| r.to_vec()).collect()
    }

    /// H(λ), the Shannon entropy of the full weight table in bits.
    pub fn entropy(&self) -> f64 {
        crate::qudit::entropy_bits(&self.lam)
    }
}

/// Preset λ families.
#[derive(Clone, Debug)]
pub enum LambdaFamily {
    /// λ_{00} = 1: the cloner passes ∣Φ⟩ to AB untouched.
    Delta,
    /// All weights 1/d².
    Uniform,
    /// λ_{00} = 1−p+p/d², every other entry p/d². Interpolates delta (p=0)
    /// to uniform (p=1).
    Depolarizing(f64),
    /// λ_{j,d−k mod d} = q1\[j\]·q2\[k\] for probability vectors q1, q2.
    /// The marginal profiles of the table reproduce q1 and q2 exactly, and
    /// H(λ) = H(q1) + H(q2).
    Product(Vec<f64>, Vec<f64>),
    /// An explicitly supplied table (already validated).
    Custom(LambdaTable),
}

impl LambdaFamily {
    pub fn name(&self) -> &'static str {
        match self {
            LambdaFamily::Delta => "delta",
            LambdaFamily::Uniform => "uniform",
            LambdaFamily::Depolarizing(_) => "depolarizing",
            LambdaFamily::Product(_, _) => "product",
            LambdaFamily::Custom(_) => "custom",
        }
    }
}

/// Instantiate a preset family at dimension d.
pub fn make_family(family: &LambdaFamily, d: Dimension) -> Result<LambdaTable> {
    let dd = d.get();
    let n = dd * dd;
    match family {
        LambdaFamily::Delta => {
            let mut lam = vec![0.0; n];
            lam[0] = 1.0;
            LambdaTable::new(d, lam)
        }
        LambdaFamily::Uniform => LambdaTable::new(d, vec![1.0 / n as f64; n]),
        LambdaFamily::Depolarizing(p) => {
            if !(0.0..=1.0).contains(p) {
                return Err(Error::InvalidParameter {
                    reason: format!("depolarizing weight {p} outside [0, 1]"),
                });
            }
            let spill = p / n as f64;
            let mut lam = vec![spill; n];
            lam[0] = 1.0 - p + spill;
            LambdaTable::new(d, lam)
        }
        LambdaFamily::Product(q1, q2) => {
            let q1 = ProbabilityVector::new(q1.clone())?;
            let q2 = ProbabilityVector::new(q2.clone())?;
            if q1.len() != dd || q2.len() != dd {
                return Err(Error::InvalidParameter {
                    reason: format!("product profiles must have length {dd}"),
                });
            }
            let mut lam = vec![0.0; n];
            for j in 0..dd {
                for k in 0..dd {
                    lam[j * dd + (dd - k) % dd] = q1.as_slice()[j] * q2.as_slice()[k];
                }
            }
            LambdaTable::new(d, lam)
        }
        LambdaFamily::Custom(table) => {
            if table.dimension() != d {
                return Err(Error::InvalidParameter {
                    reason: format!("custom table has d={}, expected {}", table.dimension(), d),
                });
            }
            Ok(table.clone())
        }
    }
}

/// The four-partite pure state Σ_{jk} √λ_{jk} ∣φ_{jk}⟩_AB ∣φ_{j,d−k}⟩_CC′,
/// with subsystem order A, B, C, C′.
pub fn build_four_partite(lam: &LambdaTable) -> Result<StateVector> {
    let d = lam.dimension();
    d.check_full_state()?;
    let dd = d.get();
    let total = dd * dd * dd * dd;
    let mut amps = DVector::<C64>::zeros(total);
    for j in 0..dd {
        for k in 0..dd {
            let w = lam.get(j, k);
            if w == 0.0 {
                continue;
            }
            let ab = bell_state(d, j, k)?;
            let cc = bell_state(d, j, (dd - k) % dd)?;
            let term = ab.amplitudes().kronecker(cc.amplitudes());
            let root = C64::new(w.sqrt(), 0.0);
            for i in 0..total {
                amps[i] += root * term[(i, 0)];
            }
        }
    }
    StateVector::new(amps, vec![dd; 4])
}

/// Bell-diagonal mixture on each (j,k)-indexed projector.
fn bell_diagonal(
    d: Dimension,
    weight: impl Fn(usize, usize) -> f64,
    reflect: bool,
) -> DensityMatrix {
    let dd = d.get();
    let n = dd * dd;
    let mut m = DMatrix::<C64>::zeros(n, n);
    for j in 0..dd {
        for k in 0..dd {
            let w = weight(j, k);
            if w == 0.0 {
                continue;
            }
            let idx = if reflect { (dd - k) % dd } else { k };
            let v = bell_state(d, j, idx).expect("in-range bell index");
            m += v.amplitudes() * v.amplitudes().adjoint() * C64::new(w, 0.0);
        }
    }
    DensityMatrix::new(m, vec![dd, dd]).expect("bell-diagonal mixture is a valid state")
}

/// ρ_AB = Σ_{jk} λ_{jk} ∣φ_{jk}⟩⟨φ_{jk}∣, the Alice–Bob reduction of the
/// cloned state.
pub fn rho_ab(lam: &LambdaTable) -> DensityMatrix {
    bell_diagonal(lam.dimension(), |j, k| lam.get(j, k), false)
}

/// ρ_CC′ = Σ_{jk} λ_{jk} ∣φ_{j,d−k}⟩⟨φ_{j,d−k}∣, the Charlie-side reduction.
/// Its von Neumann entropy equals H(λ).
pub fn rho_cc(lam: &LambdaTable) -> DensityMatrix {
    bell_diagonal(lam.dimension(), |j, k| lam.get(j, k), true)
}
