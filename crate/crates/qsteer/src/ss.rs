//! Single-system analogue of the entangled-pair scenario.
//!
//! Instead of measuring half of an entangled pair, Alice prepares a basis
//! state ∣s⟩ in one of the two settings (uniformly over s) and sends it
//! through the cloner, which leaves B, C, C′ in
//! Σ_{jk} √λ_{jk} (U_{j,k}∣s⟩) ⊗ ∣φ_{j,d−k}⟩. Bob and Charlie measure in the
//! preparation basis. The resulting statistics reproduce the entangled-pair
//! scenario exactly, so the same no-cloning bound applies.

use nalgebra::DVector;

use crate::cloning::LambdaTable;
use crate::error::{Error, Result};
use crate::qudit::{
    bell_state, generalized_pauli, tol, DensityMatrix, Dimension, StateVector, C64,
};
use crate::steering::{
    assemble_report, mutual_info_closed_form, mutual_information, JointDistribution,
    MeasurementSetting, Scenario, SteeringReport,
};

/// Alice's preparation: a basis index in one setting, drawn uniformly.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Preparation {
    pub setting: MeasurementSetting,
    pub s: usize,
}

/// Which party's outcomes are correlated against the preparation index.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum SsParty {
    /// Bob's qudit B.
    B,
    /// Charlie's qudit C (ancilla C′ traced out).
    C,
}

/// The tripartite post-cloning state for a given preparation, with
/// subsystem order B, C, C′.
pub fn build_tripartite_ss(lam: &LambdaTable, prep: Preparation) -> Result<StateVector> {
    let d = lam.dimension();
    d.check_full_state()?;
    let dd = d.get();
    if prep.s >= dd {
        return Err(Error::IndexOutOfRange {
            index: prep.s,
            dim: dd,
        });
    }
    let prepared = prep.setting.basis_vector(d, prep.s)?;
    let total = dd * dd * dd;
    let mut amps = DVector::<C64>::zeros(total);
    for j in 0..dd {
        for k in 0..dd {
            let w = lam.get(j, k);
            if w == 0.0 {
                continue;
            }
            let u = generalized_pauli(d, j, k)?;
            let b_part = u.entries() * prepared.amplitudes();
            let cc = bell_state(d, j, (dd - k) % dd)?;
            let term = b_part.kronecker(cc.amplitudes());
            let root = C64::new(w.sqrt(), 0.0);
            for i in 0..total {
                amps[i] += root * term[(i, 0)];
            }
        }
    }
    StateVector::new(amps, vec![dd; 3])
}

/// Single-qudit outcome probabilities in a measurement setting.
fn measure_probs(rho: &DensityMatrix, setting: MeasurementSetting) -> Result<Vec<f64>> {
    let d = Dimension::new(rho.subsystems()[0])?;
    let dd = d.get();
    match setting {
        MeasurementSetting::Computational => {
            Ok((0..dd).map(|i| rho.entries()[(i, i)].re).collect())
        }
        MeasurementSetting::Fourier => {
            let u = setting.basis_matrix(d);
            let rotated = u.adjoint() * rho.entries() * &u;
            Ok((0..dd).map(|i| rotated[(i, i)].re).collect())
        }
    }
}

/// Joint distribution P(s, outcome) between Alice's uniformly drawn
/// preparation index and one party's measurement in the same setting.
pub fn ss_joint_distribution(
    lam: &LambdaTable,
    setting: MeasurementSetting,
    party: SsParty,
) -> Result<JointDistribution> {
    let d = lam.dimension();
    let dd = d.get();
    let keep: &[usize] = match party {
        SsParty::B => &[0],
        SsParty::C => &[1],
    };
    let mut table = vec![0.0; dd * dd];
    for s in 0..dd {
        let tri = build_tripartite_ss(lam, Preparation { setting, s })?;
        let rho = tri.reduced_density(keep)?;
        let probs = measure_probs(&rho, setting)?;
        for (b, pb) in probs.iter().enumerate() {
            table[s * dd + b] = pb / dd as f64;
        }
    }
    JointDistribution::new(d, table)
}

/// Full single-system analysis of one λ. The measured Bob-side mutual
/// informations must reproduce the closed form log₂d − H(qᵢ); a deviation
/// is reported as a theorem violation.
pub fn ss_report(lam: &LambdaTable) -> Result<SteeringReport> {
    ss_report_with_tol(lam, tol::THEOREM_SLACK)
}

/// [`ss_report`] with an explicit assertion slack.
pub fn ss_report_with_tol(lam: &LambdaTable, slack: f64) -> Result<SteeringReport> {
    let mut i_ab = [0.0; 2];
    let mut i_ac = [0.0; 2];
    for (i, setting) in MeasurementSetting::BOTH.iter().enumerate() {
        let jd_b = ss_joint_distribution(lam, *setting, SsParty::B)?;
        i_ab[i] = mutual_information(&jd_b);
        let closed = mutual_info_closed_form(lam, *setting);
        if (i_ab[i] - closed).abs() > slack {
            return Err(Error::TheoremViolation {
                details: format!(
                    "single-system I_AB setting {} = {} deviates from closed form {closed}",
                    setting.index(),
                    i_ab[i]
                ),
            });
        }
        let jd_c = ss_joint_distribution(lam, *setting, SsParty::C)?;
        i_ac[i] = mutual_information(&jd_c);
    }
    assemble_report(Scenario::Ss, lam, i_ab, i_ac, slack)
}
