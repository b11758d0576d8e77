//! Measurement statistics and the entropic steering analysis.
//!
//! Two complementary measurement settings are used on every party: setting 1
//! is the computational basis and setting 2 its Fourier partner. The sum of
//! mutual informations over both settings certifies steering when it exceeds
//! log₂ d. This module computes those sums for the Alice–Bob and
//! Alice–Charlie sides of the cloned state, in closed form where one exists
//! and by an independent Born-rule route on the full four-partite state, and
//! assembles them into a report together with the Holevo-bound chain that
//! forces the two sides to share at most 2 log₂ d bits.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};

use crate::cloning::{build_four_partite, LambdaTable};
use crate::error::{Error, Result};
use crate::qudit::{
    entropy_bits, fourier_basis_vector, fourier_matrix, tol, DensityMatrix, Dimension,
    ProbabilityVector, StateVector, C64,
};

/// One of the two complementary measurement settings.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum MeasurementSetting {
    /// Setting 1: the computational basis.
    Computational,
    /// Setting 2: the Fourier basis.
    Fourier,
}

impl MeasurementSetting {
    pub const BOTH: [MeasurementSetting; 2] = [
        MeasurementSetting::Computational,
        MeasurementSetting::Fourier,
    ];

    /// 1-based setting index as used in the criterion Σᵢ I_{AᵢBᵢ}.
    pub fn index(self) -> u8 {
        match self {
            MeasurementSetting::Computational => 1,
            MeasurementSetting::Fourier => 2,
        }
    }

    pub fn from_index(i: u8) -> Result<Self> {
        match i {
            1 => Ok(MeasurementSetting::Computational),
            2 => Ok(MeasurementSetting::Fourier),
            _ => Err(Error::InvalidParameter {
                reason: format!("measurement setting {i} not in {{1, 2}}"),
            }),
        }
    }

    /// Basis vector ∣s⟩ in this setting.
    pub fn basis_vector(self, d: Dimension, s: usize) -> Result<StateVector> {
        match self {
            MeasurementSetting::Computational => StateVector::basis_state(d, s),
            MeasurementSetting::Fourier => fourier_basis_vector(d, s),
        }
    }

    /// Change-of-basis matrix whose columns are this setting's basis vectors.
    pub(crate) fn basis_matrix(self, d: Dimension) -> DMatrix<C64> {
        match self {
            MeasurementSetting::Computational => DMatrix::identity(d.get(), d.get()),
            MeasurementSetting::Fourier => fourier_matrix(d).entries().clone(),
        }
    }
}

/// Which pair of parties a mutual information refers to.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum PartyPair {
    /// Alice and Bob (the first copy).
    AB,
    /// Alice and Charlie's qudit C (the second copy, ancilla traced out).
    AC,
}

/// Which preparation scenario produced a report.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scenario {
    /// Entangled-pair scenario: Alice measures her half of ∣Φ⟩.
    Epr,
    /// Single-system scenario: Alice sends a prepared qudit through the cloner.
    Ss,
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scenario::Epr => write!(f, "epr"),
            Scenario::Ss => write!(f, "ss"),
        }
    }
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "epr" => Ok(Scenario::Epr),
            "ss" => Ok(Scenario::Ss),
            other => Err(Error::InvalidConfig {
                reason: format!("unknown scenario `{other}` (expected epr or ss)"),
            }),
        }
    }
}

/// P(a,b) for one measurement-setting pair on two qudits.
#[derive(Clone, Debug)]
pub struct JointDistribution {
    d: Dimension,
    p: Vec<f64>, // row-major, entry a*d + b
}

impl JointDistribution {
    /// Clips entries at −[`tol::PROB_CLIP`], requires the total to be 1
    /// within [`tol::TRACE`], and renormalizes to sum exactly 1.
    pub fn new(d: Dimension, table: Vec<f64>) -> Result<Self> {
        let dd = d.get();
        if table.len() != dd * dd {
            return Err(Error::InvalidProbability {
                reason: format!("expected {} joint entries, got {}", dd * dd, table.len()),
            });
        }
        let mut p = table;
        for v in p.iter_mut() {
            if *v < -tol::PROB_CLIP {
                return Err(Error::InvalidProbability {
                    reason: format!("negative joint probability {v}"),
                });
            }
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > tol::TRACE {
            return Err(Error::InvalidProbability {
                reason: format!("joint probabilities sum to {sum}, not 1"),
            });
        }
        for v in p.iter_mut() {
            *v /= sum;
        }
        Ok(Self { d, p })
    }

    pub fn dimension(&self) -> Dimension {
        self.d
    }

    /// P(a,b)
    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.p[a * self.d.get() + b]
    }

    /// P(a)
    pub fn marginal_a(&self) -> Vec<f64> {
        let dd = self.d.get();
        (0..dd)
            .map(|a| self.p[a * dd..(a + 1) * dd].iter().sum())
            .collect()
    }

    /// P(b)
    pub fn marginal_b(&self) -> Vec<f64> {
        let dd = self.d.get();
        (0..dd)
            .map(|b| (0..dd).map(|a| self.p[a * dd + b]).sum())
            .collect()
    }
}

/// The distribution q_i of the correlation variable between two parties
/// under one measurement setting.
///
/// For setting 1 the variable is (b − a) mod d and q₁ᵗ = Σ_k λ_{tk}; for
/// setting 2 it is (−(a + b)) mod d and q₂ᵗ = Σ_j λ_{j,d−t}. (For a Bell
/// state measured in the Fourier basis the outcomes satisfy a + b ≐ k, so
/// the sign-flipped sum — not the difference — is the variable with
/// distribution q₂; mutual information is invariant under the relabeling.)
#[derive(Clone, Debug)]
pub struct QProfile {
    setting: MeasurementSetting,
    values: ProbabilityVector,
}

impl QProfile {
    pub fn setting(&self) -> MeasurementSetting {
        self.setting
    }

    pub fn values(&self) -> &[f64] {
        self.values.as_slice()
    }

    /// H(q_i) in bits.
    pub fn entropy(&self) -> f64 {
        entropy_bits(self.values.as_slice())
    }
}

/// Correlation-variable profile of a λ table under one setting.
pub fn q_profile(lam: &LambdaTable, setting: MeasurementSetting) -> QProfile {
    let dd = lam.dimension().get();
    let values = match setting {
        MeasurementSetting::Computational => (0..dd)
            .map(|t| (0..dd).map(|k| lam.get(t, k)).sum())
            .collect::<Vec<f64>>(),
        MeasurementSetting::Fourier => (0..dd)
            .map(|t| (0..dd).map(|j| lam.get(j, (dd - t) % dd)).sum())
            .collect::<Vec<f64>>(),
    };
    QProfile {
        setting,
        values: ProbabilityVector::new(values).expect("profile of a valid table"),
    }
}

/// Born-rule outcome statistics for projective measurements on both qudits
/// of a two-qudit state.
pub fn joint_distribution(
    rho: &DensityMatrix,
    setting_a: MeasurementSetting,
    setting_b: MeasurementSetting,
) -> Result<JointDistribution> {
    let subs = rho.subsystems();
    if subs.len() != 2 {
        return Err(Error::InvalidParameter {
            reason: format!("joint distribution needs 2 subsystems, got {}", subs.len()),
        });
    }
    if subs[0] != subs[1] {
        return Err(Error::InvalidParameter {
            reason: format!("subsystem dimensions differ: {} vs {}", subs[0], subs[1]),
        });
    }
    let d = Dimension::new(subs[0])?;
    let dd = d.get();
    let diag: Vec<f64> = if setting_a == MeasurementSetting::Computational
        && setting_b == MeasurementSetting::Computational
    {
        (0..dd * dd).map(|i| rho.entries()[(i, i)].re).collect()
    } else {
        let u = setting_a
            .basis_matrix(d)
            .kronecker(&setting_b.basis_matrix(d));
        let rotated = u.adjoint() * rho.entries() * &u;
        (0..dd * dd).map(|i| rotated[(i, i)].re).collect()
    };
    JointDistribution::new(d, diag)
}

/// I(A:B) = H(B) − H(B∣A) in bits, with
/// H(B∣A) = −Σ_a P(a) Σ_b P(b∣a) log₂ P(b∣a).
pub fn mutual_information(jd: &JointDistribution) -> f64 {
    let dd = jd.dimension().get();
    let pa = jd.marginal_a();
    let pb = jd.marginal_b();
    let h_b = entropy_bits(&pb);
    let mut h_b_given_a = 0.0;
    for (a, &p_a) in pa.iter().enumerate() {
        if p_a <= 0.0 {
            continue;
        }
        let row: Vec<f64> = (0..dd).map(|b| jd.get(a, b) / p_a).collect();
        h_b_given_a += p_a * entropy_bits(&row);
    }
    h_b - h_b_given_a
}

/// Closed form for the Alice–Bob mutual information under one setting:
/// I_{AᵢBᵢ} = log₂ d − H(qᵢ).
pub fn mutual_info_closed_form(lam: &LambdaTable, setting: MeasurementSetting) -> f64 {
    lam.dimension().log2() - q_profile(lam, setting).entropy()
}

/// Full-state Born-rule route to the same mutual information: build the
/// four-partite state, trace down to the requested pair (AC drops B and the
/// ancilla C′), measure both parties in the given setting.
///
/// Also verifies that Alice's marginal is uniform, as the Bell-diagonal
/// structure requires.
pub fn mutual_info_oracle(
    lam: &LambdaTable,
    pair: PartyPair,
    setting: MeasurementSetting,
) -> Result<f64> {
    let jd = pair_distribution(lam, pair, setting)?;
    Ok(mutual_information(&jd))
}

/// The measured joint distribution behind [`mutual_info_oracle`].
pub fn pair_distribution(
    lam: &LambdaTable,
    pair: PartyPair,
    setting: MeasurementSetting,
) -> Result<JointDistribution> {
    let phi = build_four_partite(lam)?;
    let keep: &[usize] = match pair {
        PartyPair::AB => &[0, 1],
        PartyPair::AC => &[0, 2],
    };
    let rho = phi.reduced_density(keep)?;
    let jd = joint_distribution(&rho, setting, setting)?;
    let dd = lam.dimension().get();
    for (a, &p) in jd.marginal_a().iter().enumerate() {
        if (p - 1.0 / dd as f64).abs() > 1e-10 {
            return Err(Error::TheoremViolation {
                details: format!(
                    "Alice's marginal P({a})={p} deviates from 1/{dd} in the {pair:?} distribution"
                ),
            });
        }
    }
    Ok(jd)
}

/// Two-setting mutual-information sum for one party pair. The AB side uses
/// the closed form 2log₂d − H(q₁) − H(q₂); the AC side sums the measured
/// values from the Born-rule route.
pub fn steering_sum(lam: &LambdaTable, pair: PartyPair) -> Result<f64> {
    match pair {
        PartyPair::AB => {
            let h1 = q_profile(lam, MeasurementSetting::Computational).entropy();
            let h2 = q_profile(lam, MeasurementSetting::Fourier).entropy();
            Ok(2.0 * lam.dimension().log2() - h1 - h2)
        }
        PartyPair::AC => {
            let mut sum = 0.0;
            for setting in MeasurementSetting::BOTH {
                sum += mutual_info_oracle(lam, PartyPair::AC, setting)?;
            }
            Ok(sum)
        }
    }
}

/// The entropic criterion: a two-setting sum certifies steering iff it
/// strictly exceeds log₂ d. Equality at the boundary is not a violation.
pub fn check_steering(sum_two_settings: f64, d: Dimension) -> bool {
    sum_two_settings > d.log2()
}

/// The CC′ state conditioned on Alice's outcome `a` in the given setting:
/// project A, trace out B. Its entropy equals H(qᵢ) for every outcome.
pub fn conditional_cc_state(
    lam: &LambdaTable,
    setting: MeasurementSetting,
    a: usize,
) -> Result<DensityMatrix> {
    let d = lam.dimension();
    let dd = d.get();
    if a >= dd {
        return Err(Error::IndexOutOfRange { index: a, dim: dd });
    }
    let phi = build_four_partite(lam)?;
    let onto: DVector<C64> = setting.basis_vector(d, a)?.amplitudes().clone();
    let (prob, rest) = phi.project_subsystem(0, &onto)?;
    if (prob - 1.0 / dd as f64).abs() > 1e-10 {
        return Err(Error::TheoremViolation {
            details: format!("P(a={a}) = {prob} deviates from 1/{dd}"),
        });
    }
    // rest holds B, C, C′
    rest.reduced_density(&[1, 2])
}

/// Holevo bound on what any measurement on CC′ can reveal about Alice's
/// outcome: S(ρ_CC′) − Σ_a P(a) S(ρ_CC′∣a) = H(λ) − H(qᵢ).
pub fn holevo_bound_ac(lam: &LambdaTable, setting: MeasurementSetting) -> f64 {
    (lam.entropy() - q_profile(lam, setting).entropy()).max(0.0)
}

/// The per-setting ceiling I_{AᵢCᵢ} ≤ H(q₁) + H(q₂) − H(qᵢ), obtained from
/// the Holevo bound at the product-table worst case. Dominates
/// [`holevo_bound_ac`] by entropy subadditivity.
pub fn per_setting_ac_bound(lam: &LambdaTable, setting: MeasurementSetting) -> f64 {
    let h1 = q_profile(lam, MeasurementSetting::Computational).entropy();
    let h2 = q_profile(lam, MeasurementSetting::Fourier).entropy();
    h1 + h2 - q_profile(lam, setting).entropy()
}

/// Everything the analysis produces for one λ at one dimension.
///
/// Mutual informations and bounds are in bits, indexed by setting (entry 0
/// is setting 1). `total = sum_ab + sum_ac` and can never exceed
/// `bound_total = 2log₂d`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SteeringReport {
    pub d: usize,
    pub scenario: Scenario,
    pub lambda: Vec<Vec<f64>>,
    pub q1: Vec<f64>,
    pub q2: Vec<f64>,
    pub i_ab: [f64; 2],
    pub i_ac: [f64; 2],
    pub holevo_ac: [f64; 2],
    pub sum_ab: f64,
    pub sum_ac: f64,
    pub total: f64,
    pub bound_total: f64,
    pub steerable_ab: bool,
    pub steerable_ac: bool,
}

/// Shared assembly of a [`SteeringReport`] from per-setting mutual
/// informations, with every inequality of the bound chain re-checked at the
/// given slack. A failed check is a [`Error::TheoremViolation`]: it means
/// either a broken implementation or a violated bound, and both must abort
/// the run loudly.
pub(crate) fn assemble_report(
    scenario: Scenario,
    lam: &LambdaTable,
    i_ab: [f64; 2],
    i_ac: [f64; 2],
    slack: f64,
) -> Result<SteeringReport> {
    let d = lam.dimension();
    let log2d = d.log2();
    let q1 = q_profile(lam, MeasurementSetting::Computational);
    let q2 = q_profile(lam, MeasurementSetting::Fourier);
    let holevo_ac = [
        holevo_bound_ac(lam, MeasurementSetting::Computational),
        holevo_bound_ac(lam, MeasurementSetting::Fourier),
    ];
    let per_setting = [
        per_setting_ac_bound(lam, MeasurementSetting::Computational),
        per_setting_ac_bound(lam, MeasurementSetting::Fourier),
    ];
    let sum_ab = i_ab[0] + i_ab[1];
    let sum_ac = i_ac[0] + i_ac[1];
    let total = sum_ab + sum_ac;
    let bound_total = 2.0 * log2d;

    let fail = |details: String| Err(Error::TheoremViolation { details });
    for (i, setting) in MeasurementSetting::BOTH.iter().enumerate() {
        for (name, v) in [("i_ab", i_ab[i]), ("i_ac", i_ac[i])] {
            if !(-1e-12..=log2d + 1e-12).contains(&v) {
                return fail(format!(
                    "{name} setting {} = {v} outside [0, log2 d]",
                    setting.index()
                ));
            }
        }
        if i_ac[i] > holevo_ac[i] + slack {
            return fail(format!(
                "measured I_AC setting {} = {} exceeds Holevo bound {}",
                setting.index(),
                i_ac[i],
                holevo_ac[i]
            ));
        }
        if holevo_ac[i] > per_setting[i] + slack {
            return fail(format!(
                "Holevo bound setting {} = {} exceeds per-setting ceiling {}",
                setting.index(),
                holevo_ac[i],
                per_setting[i]
            ));
        }
    }
    if sum_ab + per_setting[0] + per_setting[1] > bound_total + slack {
        return fail(format!(
            "sum_ab {} plus AC ceilings {} + {} exceeds 2log2 d",
            sum_ab, per_setting[0], per_setting[1]
        ));
    }
    if sum_ac > per_setting[0] + per_setting[1] + slack {
        return fail(format!(
            "sum_ac {} exceeds its ceiling {}",
            sum_ac,
            per_setting[0] + per_setting[1]
        ));
    }
    if total > bound_total + slack {
        return fail(format!("total {total} exceeds bound {bound_total}"));
    }
    let steerable_ab = check_steering(sum_ab, d);
    let steerable_ac = check_steering(sum_ac, d);
    if steerable_ab && steerable_ac {
        return fail(format!(
            "both copies flagged steerable: sum_ab={sum_ab}, sum_ac={sum_ac}, bound={log2d}"
        ));
    }

    Ok(SteeringReport {
        d: d.get(),
        scenario,
        lambda: lam.to_rows(),
        q1: q1.values().to_vec(),
        q2: q2.values().to_vec(),
        i_ab,
        i_ac,
        holevo_ac,
        sum_ab,
        sum_ac,
        total,
        bound_total,
        steerable_ab,
        steerable_ac,
    })
}

/// Full analysis of one λ in the entangled-pair scenario: closed-form AB
/// mutual informations, measured AC mutual informations, bounds, criterion
/// verdicts, and the no-cloning total.
pub fn no_cloning_report(lam: &LambdaTable) -> Result<SteeringReport> {
    no_cloning_report_with_tol(lam, tol::THEOREM_SLACK)
}

/// [`no_cloning_report`] with an explicit assertion slack.
pub fn no_cloning_report_with_tol(lam: &LambdaTable, slack: f64) -> Result<SteeringReport> {
    let i_ab = [
        mutual_info_closed_form(lam, MeasurementSetting::Computational),
        mutual_info_closed_form(lam, MeasurementSetting::Fourier),
    ];
    let i_ac = [
        mutual_info_oracle(lam, PartyPair::AC, MeasurementSetting::Computational)?,
        mutual_info_oracle(lam, PartyPair::AC, MeasurementSetting::Fourier)?,
    ];
    assemble_report(Scenario::Epr, lam, i_ab, i_ac, slack)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cloning::{make_family, rho_ab, LambdaFamily};
    use crate::qudit::von_neumann_entropy;

    fn d(n: usize) -> Dimension {
        Dimension::new(n).unwrap()
    }

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "expected {b}, got {a}");
    }

    const H2_QUARTER: f64 = 0.8112781244591328; // H₂(0.25)

    #[test]
    fn joint_distribution_bell_both_settings() {
        let rho = crate::qudit::bell_state(d(2), 0, 0).unwrap().to_density();
        let jd1 = joint_distribution(
            &rho,
            MeasurementSetting::Computational,
            MeasurementSetting::Computational,
        )
        .unwrap();
        for a in 0..2 {
            for b in 0..2 {
                let expect = if a == b { 0.5 } else { 0.0 };
                assert_close(jd1.get(a, b), expect, 1e-12);
            }
        }
        // in the Fourier basis the outcomes satisfy a + b ≐ 0
        let jd2 = joint_distribution(
            &rho,
            MeasurementSetting::Fourier,
            MeasurementSetting::Fourier,
        )
        .unwrap();
        for a in 0..2 {
            for b in 0..2 {
                let expect = if (a + b) % 2 == 0 { 0.5 } else { 0.0 };
                assert_close(jd2.get(a, b), expect, 1e-12);
            }
        }
    }

    #[test]
    fn joint_distribution_maximally_mixed() {
        let mm = DensityMatrix::maximally_mixed(d(2));
        let rho = mm.tensor(&mm);
        for sa in MeasurementSetting::BOTH {
            for sb in MeasurementSetting::BOTH {
                let jd = joint_distribution(&rho, sa, sb).unwrap();
                for a in 0..2 {
                    for b in 0..2 {
                        assert_close(jd.get(a, b), 0.25, 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn joint_distribution_mixed_settings_decorrelate() {
        // complementary bases on a Bell state share nothing: every outcome
        // pair lands at 1/d²
        let rho = crate::qudit::bell_state(d(3), 1, 2).unwrap().to_density();
        let jd = joint_distribution(
            &rho,
            MeasurementSetting::Computational,
            MeasurementSetting::Fourier,
        )
        .unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert_close(jd.get(a, b), 1.0 / 9.0, 1e-12);
            }
        }
        assert_close(mutual_information(&jd), 0.0, 1e-12);
    }

    #[test]
    fn joint_distribution_rejects_wrong_shape() {
        let single = DensityMatrix::maximally_mixed(d(2));
        assert!(joint_distribution(
            &single,
            MeasurementSetting::Computational,
            MeasurementSetting::Computational
        )
        .is_err());
    }

    #[test]
    fn mutual_information_values() {
        let perfect = JointDistribution::new(d(2), vec![0.5, 0.0, 0.0, 0.5]).unwrap();
        assert_close(mutual_information(&perfect), 1.0, 1e-12);

        let product = JointDistribution::new(d(2), vec![0.25; 4]).unwrap();
        assert_close(mutual_information(&product), 0.0, 1e-12);

        let skew = JointDistribution::new(d(2), vec![0.375, 0.125, 0.125, 0.375]).unwrap();
        assert_close(mutual_information(&skew), 1.0 - H2_QUARTER, 1e-12);
    }

    #[test]
    fn mutual_information_matches_symmetric_formula() {
        let jd = JointDistribution::new(d(3), {
            let raw: Vec<f64> = (1..=9).map(|v| v as f64).collect();
            let s: f64 = raw.iter().sum();
            raw.into_iter().map(|v| v / s).collect()
        })
        .unwrap();
        let pa = jd.marginal_a();
        let pb = jd.marginal_b();
        let mut sym = 0.0;
        for (a, &p_a) in pa.iter().enumerate() {
            for (b, &p_b) in pb.iter().enumerate() {
                let p = jd.get(a, b);
                if p > 0.0 {
                    sym += p * (p / (p_a * p_b)).log2();
                }
            }
        }
        assert_close(mutual_information(&jd), sym, 1e-12);
    }

    #[test]
    fn q_profile_cases() {
        let delta = make_family(&LambdaFamily::Delta, d(3)).unwrap();
        for setting in MeasurementSetting::BOTH {
            let q = q_profile(&delta, setting);
            assert_close(q.values()[0], 1.0, 1e-15);
            assert_close(q.entropy(), 0.0, 1e-15);
        }

        let uniform = make_family(&LambdaFamily::Uniform, d(3)).unwrap();
        for setting in MeasurementSetting::BOTH {
            for v in q_profile(&uniform, setting).values() {
                assert_close(*v, 1.0 / 3.0, 1e-12);
            }
        }

        let dep = make_family(&LambdaFamily::Depolarizing(0.5), d(2)).unwrap();
        for setting in MeasurementSetting::BOTH {
            let q = q_profile(&dep, setting);
            assert_close(q.values()[0], 0.75, 1e-12);
            assert_close(q.values()[1], 0.25, 1e-12);
        }
    }

    #[test]
    fn q_profile_fourier_reindexes_columns() {
        // q₂ᵗ = Σ_j λ_{j,d−t}: column 0 stays, the tail reverses
        let lam = LambdaTable::new(
            d(3),
            vec![0.10, 0.05, 0.15, 0.20, 0.05, 0.05, 0.10, 0.20, 0.10],
        )
        .unwrap();
        let q2 = q_profile(&lam, MeasurementSetting::Fourier);
        assert_close(q2.values()[0], 0.10 + 0.20 + 0.10, 1e-12);
        assert_close(q2.values()[1], 0.15 + 0.05 + 0.10, 1e-12);
        assert_close(q2.values()[2], 0.05 + 0.05 + 0.20, 1e-12);
    }

    #[test]
    fn closed_form_cases() {
        let delta = make_family(&LambdaFamily::Delta, d(3)).unwrap();
        for setting in MeasurementSetting::BOTH {
            assert_close(
                mutual_info_closed_form(&delta, setting),
                3.0f64.log2(),
                1e-12,
            );
        }
        let uniform = make_family(&LambdaFamily::Uniform, d(3)).unwrap();
        for setting in MeasurementSetting::BOTH {
            assert_close(mutual_info_closed_form(&uniform, setting), 0.0, 1e-12);
        }
        let dep = make_family(&LambdaFamily::Depolarizing(0.5), d(2)).unwrap();
        assert_close(
            mutual_info_closed_form(&dep, MeasurementSetting::Computational),
            1.0 - H2_QUARTER,
            1e-12,
        );
    }

    #[test]
    fn oracle_cases() {
        let delta = make_family(&LambdaFamily::Delta, d(3)).unwrap();
        assert_close(
            mutual_info_oracle(&delta, PartyPair::AB, MeasurementSetting::Computational).unwrap(),
            3.0f64.log2(),
            1e-9,
        );
        for setting in MeasurementSetting::BOTH {
            assert_close(
                mutual_info_oracle(&delta, PartyPair::AC, setting).unwrap(),
                0.0,
                1e-9,
            );
        }
        let dep = make_family(&LambdaFamily::Depolarizing(0.5), d(2)).unwrap();
        assert_close(
            mutual_info_oracle(&dep, PartyPair::AB, MeasurementSetting::Fourier).unwrap(),
            1.0 - H2_QUARTER,
            1e-9,
        );
    }

    #[test]
    fn oracle_matches_closed_form_on_random_tables() {
        for dd in [2usize, 3] {
            for seed in 0..20u64 {
                let lam = crate::explorer::sample_lambda(d(dd), 7, seed, 1.0).unwrap();
                for setting in MeasurementSetting::BOTH {
                    let cf = mutual_info_closed_form(&lam, setting);
                    let or = mutual_info_oracle(&lam, PartyPair::AB, setting).unwrap();
                    assert!(
                        (cf - or).abs() < 1e-9,
                        "d={dd} seed={seed} setting {}: {cf} vs {or}",
                        setting.index()
                    );
                }
            }
        }
    }

    #[test]
    fn correlation_variable_law() {
        for dd in [2usize, 3] {
            for seed in 0..10u64 {
                let lam = crate::explorer::sample_lambda(d(dd), 11, seed, 1.0).unwrap();
                let rho = rho_ab(&lam);
                let q1 = q_profile(&lam, MeasurementSetting::Computational);
                let jd1 = joint_distribution(
                    &rho,
                    MeasurementSetting::Computational,
                    MeasurementSetting::Computational,
                )
                .unwrap();
                for t in 0..dd {
                    let p_t: f64 = (0..dd).map(|a| jd1.get(a, (a + t) % dd)).sum();
                    assert!((p_t - q1.values()[t]).abs() < 1e-10);
                }
                let q2 = q_profile(&lam, MeasurementSetting::Fourier);
                let jd2 = joint_distribution(
                    &rho,
                    MeasurementSetting::Fourier,
                    MeasurementSetting::Fourier,
                )
                .unwrap();
                for t in 0..dd {
                    // b with −(a+b) ≐ t, i.e. b = (−a−t) mod d
                    let p_t: f64 = (0..dd).map(|a| jd2.get(a, (2 * dd - a - t) % dd)).sum();
                    assert!((p_t - q2.values()[t]).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn steering_sum_cases() {
        let delta = make_family(&LambdaFamily::Delta, d(3)).unwrap();
        assert_close(
            steering_sum(&delta, PartyPair::AB).unwrap(),
            2.0 * 3.0f64.log2(),
            1e-12,
        );
        let uniform = make_family(&LambdaFamily::Uniform, d(3)).unwrap();
        assert_close(steering_sum(&uniform, PartyPair::AB).unwrap(), 0.0, 1e-12);
        let dep = make_family(&LambdaFamily::Depolarizing(0.5), d(2)).unwrap();
        assert_close(
            steering_sum(&dep, PartyPair::AB).unwrap(),
            2.0 - 2.0 * H2_QUARTER,
            1e-12,
        );
    }

    #[test]
    fn steering_check_is_strict() {
        assert!(check_steering(2.0, d(2)));
        assert!(!check_steering(1.0, d(2))); // boundary is not a violation
        assert!(!check_steering(2.0 - 2.0 * H2_QUARTER, d(2)));
    }

    #[test]
    fn conditional_cc_entropies() {
        let delta = make_family(&LambdaFamily::Delta, d(2)).unwrap();
        let rho = conditional_cc_state(&delta, MeasurementSetting::Computational, 0).unwrap();
        assert_close(von_neumann_entropy(&rho).unwrap(), 0.0, 1e-9);

        let uniform = make_family(&LambdaFamily::Uniform, d(3)).unwrap();
        for a in 0..3 {
            let rho = conditional_cc_state(&uniform, MeasurementSetting::Fourier, a).unwrap();
            assert_close(von_neumann_entropy(&rho).unwrap(), 3.0f64.log2(), 1e-9);
        }

        let dep = make_family(&LambdaFamily::Depolarizing(0.5), d(2)).unwrap();
        let rho = conditional_cc_state(&dep, MeasurementSetting::Computational, 0).unwrap();
        assert_close(von_neumann_entropy(&rho).unwrap(), H2_QUARTER, 1e-9);
    }

    #[test]
    fn conditional_cc_entropy_equals_profile_entropy() {
        for dd in [2usize, 3] {
            for seed in 0..5u64 {
                let lam = crate::explorer::sample_lambda(d(dd), 23, seed, 1.0).unwrap();
                for setting in MeasurementSetting::BOTH {
                    let hq = q_profile(&lam, setting).entropy();
                    for a in 0..dd {
                        let rho = conditional_cc_state(&lam, setting, a).unwrap();
                        let s = von_neumann_entropy(&rho).unwrap();
                        assert!(
                            (s - hq).abs() < 1e-9,
                            "d={dd} seed={seed} setting {} a={a}: S={s} H(q)={hq}",
                            setting.index()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn holevo_bound_cases() {
        let delta = make_family(&LambdaFamily::Delta, d(2)).unwrap();
        for setting in MeasurementSetting::BOTH {
            assert_close(holevo_bound_ac(&delta, setting), 0.0, 1e-12);
        }
        let uniform = make_family(&LambdaFamily::Uniform, d(2)).unwrap();
        for setting in MeasurementSetting::BOTH {
            assert_close(holevo_bound_ac(&uniform, setting), 1.0, 1e-12);
        }
        // product tables saturate: H(λ) = H(q1) + H(q2)
        let prod =
            make_family(&LambdaFamily::Product(vec![0.7, 0.3], vec![0.2, 0.8]), d(2)).unwrap();
        for setting in MeasurementSetting::BOTH {
            assert_close(
                holevo_bound_ac(&prod, setting),
                per_setting_ac_bound(&prod, setting),
                1e-9,
            );
        }
    }

    #[test]
    fn per_setting_bound_cases() {
        let delta = make_family(&LambdaFamily::Delta, d(2)).unwrap();
        for setting in MeasurementSetting::BOTH {
            assert_close(per_setting_ac_bound(&delta, setting), 0.0, 1e-12);
        }
        let uniform = make_family(&LambdaFamily::Uniform, d(2)).unwrap();
        for setting in MeasurementSetting::BOTH {
            assert_close(per_setting_ac_bound(&uniform, setting), 1.0, 1e-12);
        }
        let dep = make_family(&LambdaFamily::Depolarizing(0.5), d(2)).unwrap();
        for setting in MeasurementSetting::BOTH {
            assert_close(per_setting_ac_bound(&dep, setting), H2_QUARTER, 1e-12);
        }
    }

    #[test]
    fn report_at_delta_saturates() {
        let delta = make_family(&LambdaFamily::Delta, d(2)).unwrap();
        let report = no_cloning_report(&delta).unwrap();
        assert_close(report.sum_ab, 2.0, 1e-9);
        assert_close(report.sum_ac, 0.0, 1e-9);
        assert_close(report.total, 2.0, 1e-9);
        assert!(report.steerable_ab);
        assert!(!report.steerable_ac);
        assert_close(report.bound_total, 2.0, 1e-15);
    }

    #[test]
    fn report_at_uniform_moves_all_correlation_to_charlie() {
        // a fully twirled AB copy makes CC′ the intact clone: the AC side
        // saturates 2log₂d while the AB side carries nothing
        let uniform = make_family(&LambdaFamily::Uniform, d(2)).unwrap();
        let report = no_cloning_report(&uniform).unwrap();
        assert_close(report.sum_ab, 0.0, 1e-9);
        assert!(!report.steerable_ab);
        assert_close(report.sum_ac, 2.0, 1e-9);
        assert!(report.steerable_ac);
        assert!(report.total <= 2.0 + 1e-9);
    }

    #[test]
    fn report_at_half_depolarizing() {
        let dep = make_family(&LambdaFamily::Depolarizing(0.5), d(2)).unwrap();
        let report = no_cloning_report(&dep).unwrap();
        assert!(!report.steerable_ab);
        assert_close(report.sum_ab, 2.0 - 2.0 * H2_QUARTER, 1e-9);
        // frozen from an independent Born-rule evaluation of ρ_AC
        assert_close(report.i_ac[0], 0.5454611485284934, 1e-9);
        assert_close(report.i_ac[1], 0.5454611485284934, 1e-9);
        assert!(report.steerable_ac); // 1.0909... exceeds the log₂d criterion
        assert!(report.total <= 2.0 + 1e-9);
    }

    #[test]
    fn full_state_route_works_at_the_cap() {
        // d=8 is the largest dimension the four-partite route supports
        let lam = make_family(&LambdaFamily::Depolarizing(0.3), d(8)).unwrap();
        let report = no_cloning_report(&lam).unwrap();
        assert_eq!(report.d, 8);
        assert_close(report.sum_ab, report.i_ab[0] + report.i_ab[1], 1e-15);
        assert!(report.total <= report.bound_total + 1e-9);
        for setting in MeasurementSetting::BOTH {
            let cf = mutual_info_closed_form(&lam, setting);
            let or = mutual_info_oracle(&lam, PartyPair::AB, setting).unwrap();
            assert_close(or, cf, 1e-9);
        }
        let over = make_family(&LambdaFamily::Depolarizing(0.3), d(9)).unwrap();
        assert!(no_cloning_report(&over).is_err());
    }

    #[test]
    fn report_at_exclusivity_ridge() {
        // one uniform row puts both copies exactly at the criterion
        // boundary: sum_ab = sum_ac = log₂d, total saturated, and the strict
        // criterion certifies neither side
        let lam = LambdaTable::new(d(2), vec![0.5, 0.5, 0.0, 0.0]).unwrap();
        let report = no_cloning_report(&lam).unwrap();
        assert_close(report.sum_ab, 1.0, 1e-9);
        assert_close(report.sum_ac, 1.0, 1e-9);
        assert_close(report.total, 2.0, 1e-9);
        assert!(!report.steerable_ab || !report.steerable_ac);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_lambda(dd: usize) -> impl Strategy<Value = LambdaTable> {
            prop::collection::vec(1e-6f64..1.0, (dd * dd)..=(dd * dd)).prop_map(move |raw| {
                let sum: f64 = raw.iter().sum();
                LambdaTable::new(
                    Dimension::new(dd).unwrap(),
                    raw.into_iter().map(|v| v / sum).collect(),
                )
                .unwrap()
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn table_entropy_subadditive(lam in arb_lambda(3)) {
                let h1 = q_profile(&lam, MeasurementSetting::Computational).entropy();
                let h2 = q_profile(&lam, MeasurementSetting::Fourier).entropy();
                prop_assert!(lam.entropy() <= h1 + h2 + 1e-9);
            }

            #[test]
            fn product_tables_saturate_subadditivity(
                raw1 in prop::collection::vec(1e-3f64..1.0, 3),
                raw2 in prop::collection::vec(1e-3f64..1.0, 3),
            ) {
                let norm = |raw: Vec<f64>| {
                    let s: f64 = raw.iter().sum();
                    raw.into_iter().map(|v| v / s).collect::<Vec<f64>>()
                };
                let (p1, p2) = (norm(raw1), norm(raw2));
                let lam = make_family(
                    &LambdaFamily::Product(p1, p2),
                    Dimension::new(3).unwrap(),
                ).unwrap();
                let h1 = q_profile(&lam, MeasurementSetting::Computational).entropy();
                let h2 = q_profile(&lam, MeasurementSetting::Fourier).entropy();
                prop_assert!((lam.entropy() - (h1 + h2)).abs() < 1e-9);
            }

            #[test]
            fn report_respects_bound_chain(lam in arb_lambda(2)) {
                // assemble_report re-checks every link; it must never fail
                let report = no_cloning_report(&lam).unwrap();
                prop_assert!(report.total <= report.bound_total + 1e-9);
                prop_assert!(!(report.steerable_ab && report.steerable_ac));
                for v in report.i_ab.iter().chain(report.i_ac.iter()) {
                    prop_assert!(*v >= -1e-12 && *v <= report.bound_total / 2.0 + 1e-12);
                }
            }
        }
    }
}
