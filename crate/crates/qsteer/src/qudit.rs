//! Dense complex linear algebra for small qudit registers.
//!
//! Provides the two measurement bases used throughout the crate (the
//! computational basis and its discrete-Fourier partner, a mutually unbiased
//! pair), the shift-and-phase operator family `U_{j,k}`, the generalized Bell
//! states they generate, Kronecker products, partial traces, and entropy
//! functionals. All entropies are in bits (log base 2).
//!
//! Values are immutable after construction and every operation is a pure
//! function, so everything here is safe to share across threads.

use std::f64::consts::TAU;
use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex scalar used for all amplitudes and matrix entries.
pub type C64 = Complex64;

/// Numerical tolerances shared across the crate.
pub mod tol {
    /// State vectors must be unit norm to within this.
    pub const NORM: f64 = 1e-10;
    /// Density matrices must be Hermitian to within this, entrywise.
    pub const HERMITICITY: f64 = 1e-10;
    /// Density-matrix traces and probability sums must equal 1 to within this.
    pub const TRACE: f64 = 1e-10;
    /// Unitarity check tolerance, entrywise on U·U† − I.
    pub const UNITARITY: f64 = 1e-10;
    /// Probabilities in [−PROB_CLIP, 0) are clipped to 0; below is an error.
    pub const PROB_CLIP: f64 = 1e-12;
    /// Eigenvalues in [−PSD_CLIP, 0) are clipped to 0 before entropies;
    /// anything below signals an invalid matrix.
    pub const PSD_CLIP: f64 = 1e-8;
    /// Generic tolerance for equality checks between computed quantities.
    pub const EQUALITY: f64 = 1e-9;
    /// Slack allowed when checking inequalities that hold with exact
    /// arithmetic.
    pub const THEOREM_SLACK: f64 = 1e-9;
}

/// Smallest supported qudit dimension.
pub const MIN_DIM: usize = 2;
/// Largest dimension for closed-form paths that only touch λ tables.
pub const MAX_DIM: usize = 64;
/// Largest dimension for paths that materialize the full four-partite state
/// (d⁴ amplitudes).
pub const MAX_FULL_STATE_DIM: usize = 8;

/// A validated qudit dimension, `2 ≤ d ≤ 64`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dimension(usize);

impl Dimension {
    pub fn new(d: usize) -> Result<Self> {
        if (MIN_DIM..=MAX_DIM).contains(&d) {
            Ok(Self(d))
        } else {
            Err(Error::UnsupportedDimension {
                d,
                min: MIN_DIM,
                max: MAX_DIM,
            })
        }
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// log₂ d, the single-setting mutual-information ceiling.
    pub fn log2(self) -> f64 {
        (self.0 as f64).log2()
    }

    /// Errors unless the dimension is small enough for full-state paths.
    pub fn check_full_state(self) -> Result<()> {
        if self.0 <= MAX_FULL_STATE_DIM {
            Ok(())
        } else {
            Err(Error::FullStateCapExceeded {
                d: self.0,
                cap: MAX_FULL_STATE_DIM,
            })
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl TryFrom<usize> for Dimension {
    type Error = Error;

    fn try_from(d: usize) -> Result<Self> {
        Self::new(d)
    }
}

/// e^{iθ}
fn phase(theta: f64) -> C64 {
    C64::new(theta.cos(), theta.sin())
}

/// Row-major strides of a subsystem list.
fn strides(dims: &[usize]) -> Vec<usize> {
    let mut st = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        st[i] = st[i + 1] * dims[i + 1];
    }
    st
}

/// Linear offsets of every multi-index over the given subsystem positions,
/// in lexicographic order (first position most significant).
fn subspace_offsets(dims: &[usize], positions: &[usize]) -> Vec<usize> {
    let st = strides(dims);
    let sel: Vec<usize> = positions.iter().map(|&p| dims[p]).collect();
    let total: usize = sel.iter().product();
    let mut out = Vec::with_capacity(total);
    for linear in 0..total {
        let mut rem = linear;
        let mut off = 0usize;
        for (i, &p) in positions.iter().enumerate().rev() {
            off += (rem % sel[i]) * st[p];
            rem /= sel[i];
        }
        out.push(off);
    }
    out
}

fn validate_keep(keep: &[usize], n: usize) -> Result<Vec<usize>> {
    if keep.is_empty() {
        return Err(Error::InvalidParameter {
            reason: "keep set must be nonempty".into(),
        });
    }
    let mut sorted = keep.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if let Some(&bad) = sorted.iter().find(|&&i| i >= n) {
        return Err(Error::IndexOutOfRange { index: bad, dim: n });
    }
    Ok(sorted)
}

/// A pure state over one or more qudit factors, stored as a dense amplitude
/// vector in the computational basis. Unit norm to within [`tol::NORM`].
#[derive(Clone, Debug)]
pub struct StateVector {
    amps: DVector<C64>,
    subsystems: Vec<usize>,
}

impl StateVector {
    pub fn new(amps: DVector<C64>, subsystems: Vec<usize>) -> Result<Self> {
        let dim: usize = subsystems.iter().product();
        if subsystems.is_empty() || dim != amps.len() {
            return Err(Error::InvalidState {
                reason: format!(
                    "amplitude length {} does not match subsystem product {dim}",
                    amps.len()
                ),
            });
        }
        let norm = amps.norm();
        if (norm - 1.0).abs() > tol::NORM {
            return Err(Error::InvalidState {
                reason: format!("squared norm {} is not 1", norm * norm),
            });
        }
        Ok(Self { amps, subsystems })
    }

    /// Computational basis state ∣s⟩ of a single qudit.
    pub fn basis_state(d: Dimension, s: usize) -> Result<Self> {
        let d = d.get();
        if s >= d {
            return Err(Error::IndexOutOfRange { index: s, dim: d });
        }
        let mut amps = DVector::zeros(d);
        amps[s] = C64::new(1.0, 0.0);
        Ok(Self {
            amps,
            subsystems: vec![d],
        })
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn subsystems(&self) -> &[usize] {
        &self.subsystems
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amps
    }

    /// ⟨self∣other⟩
    pub fn overlap(&self, other: &Self) -> C64 {
        self.amps.dotc(&other.amps)
    }

    /// Kronecker product; subsystem lists concatenate.
    pub fn tensor(&self, other: &Self) -> Self {
        let amps = self.amps.kronecker(&other.amps);
        let mut subsystems = self.subsystems.clone();
        subsystems.extend_from_slice(&other.subsystems);
        Self {
            amps: DVector::from_column_slice(amps.as_slice()),
            subsystems,
        }
    }

    /// The projector ∣ψ⟩⟨ψ∣ as a density matrix.
    pub fn to_density(&self) -> DensityMatrix {
        let m = &self.amps * self.amps.adjoint();
        DensityMatrix {
            entries: m,
            subsystems: self.subsystems.clone(),
        }
    }

    /// Reduced density matrix on the kept subsystems, computed directly from
    /// the amplitudes without materializing the full ∣ψ⟩⟨ψ∣.
    pub fn reduced_density(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let n = self.subsystems.len();
        let keep = validate_keep(keep, n)?;
        let traced: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
        let keep_offs = subspace_offsets(&self.subsystems, &keep);
        let tr_offs = subspace_offsets(&self.subsystems, &traced);
        let m = DMatrix::from_fn(keep_offs.len(), tr_offs.len(), |i, t| {
            self.amps[keep_offs[i] + tr_offs[t]]
        });
        let rho = &m * m.adjoint();
        DensityMatrix::new(rho, keep.iter().map(|&i| self.subsystems[i]).collect())
    }

    /// Project one subsystem onto a unit vector, returning the outcome
    /// probability and the normalized post-measurement state of the rest.
    pub fn project_subsystem(
        &self,
        target: usize,
        onto: &DVector<C64>,
    ) -> Result<(f64, StateVector)> {
        let n = self.subsystems.len();
        if target >= n {
            return Err(Error::IndexOutOfRange {
                index: target,
                dim: n,
            });
        }
        if n < 2 {
            return Err(Error::InvalidParameter {
                reason: "cannot project out the only subsystem".into(),
            });
        }
        let d_t = self.subsystems[target];
        if onto.len() != d_t || (onto.norm() - 1.0).abs() > tol::NORM {
            return Err(Error::InvalidState {
                reason: "projection vector must be unit norm with matching dimension".into(),
            });
        }
        let rest: Vec<usize> = (0..n).filter(|&i| i != target).collect();
        let rest_offs = subspace_offsets(&self.subsystems, &rest);
        let stride_t = strides(&self.subsystems)[target];
        let mut amps = DVector::zeros(rest_offs.len());
        for (r, &off) in rest_offs.iter().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for x in 0..d_t {
                acc += onto[x].conj() * self.amps[off + x * stride_t];
            }
            amps[r] = acc;
        }
        let prob = amps.norm_squared();
        if prob < 1e-300 {
            return Err(Error::InvalidState {
                reason: "outcome has zero probability; no conditional state".into(),
            });
        }
        amps /= C64::new(prob.sqrt(), 0.0);
        Ok((
            prob,
            StateVector {
                amps,
                subsystems: rest.iter().map(|&i| self.subsystems[i]).collect(),
            },
        ))
    }
}

/// A Hermitian, unit-trace density matrix over one or more qudit factors.
///
/// Positivity is not checked at construction; [`von_neumann_entropy`] rejects
/// matrices with eigenvalues below −[`tol::PSD_CLIP`].
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    entries: DMatrix<C64>,
    subsystems: Vec<usize>,
}

impl DensityMatrix {
    pub fn new(entries: DMatrix<C64>, subsystems: Vec<usize>) -> Result<Self> {
        let dim: usize = subsystems.iter().product();
        if subsystems.is_empty() || entries.nrows() != dim || entries.ncols() != dim {
            return Err(Error::InvalidDensityMatrix {
                reason: format!(
                    "shape {}x{} does not match subsystem product {dim}",
                    entries.nrows(),
                    entries.ncols()
                ),
            });
        }
        for i in 0..dim {
            for j in i..dim {
                let delta = entries[(i, j)] - entries[(j, i)].conj();
                if delta.norm() > tol::HERMITICITY {
                    return Err(Error::InvalidDensityMatrix {
                        reason: format!("not Hermitian at ({i},{j}): deviation {}", delta.norm()),
                    });
                }
            }
        }
        let trace: C64 = entries.trace();
        if (trace.re - 1.0).abs() > tol::TRACE || trace.im.abs() > tol::TRACE {
            return Err(Error::InvalidDensityMatrix {
                reason: format!("trace {trace} is not 1"),
            });
        }
        Ok(Self {
            entries,
            subsystems,
        })
    }

    /// I/d on a single qudit.
    pub fn maximally_mixed(d: Dimension) -> Self {
        let d = d.get();
        Self {
            entries: DMatrix::identity(d, d) * C64::new(1.0 / d as f64, 0.0),
            subsystems: vec![d],
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn subsystems(&self) -> &[usize] {
        &self.subsystems
    }

    pub fn entries(&self) -> &DMatrix<C64> {
        &self.entries
    }

    /// Kronecker product; subsystem lists concatenate.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut subsystems = self.subsystems.clone();
        subsystems.extend_from_slice(&other.subsystems);
        Self {
            entries: self.entries.kronecker(&other.entries),
            subsystems,
        }
    }

    /// Trace out every subsystem not listed in `keep`. Keeping all subsystems
    /// returns the input unchanged.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let n = self.subsystems.len();
        let keep = validate_keep(keep, n)?;
        let traced: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
        let keep_offs = subspace_offsets(&self.subsystems, &keep);
        let tr_offs = subspace_offsets(&self.subsystems, &traced);
        let dk = keep_offs.len();
        let mut m = DMatrix::zeros(dk, dk);
        for (i, &oi) in keep_offs.iter().enumerate() {
            for (j, &oj) in keep_offs.iter().enumerate() {
                let mut acc = C64::new(0.0, 0.0);
                for &ot in &tr_offs {
                    acc += self.entries[(oi + ot, oj + ot)];
                }
                m[(i, j)] = acc;
            }
        }
        DensityMatrix::new(m, keep.iter().map(|&i| self.subsystems[i]).collect())
    }

    /// Real eigenvalue spectrum, descending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self
            .entries
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        ev.sort_by(|a, b| b.partial_cmp(a).unwrap());
        ev
    }
}

/// A unitary matrix on a single register, U·U† = I within [`tol::UNITARITY`].
#[derive(Clone, Debug)]
pub struct UnitaryMatrix {
    entries: DMatrix<C64>,
}

impl UnitaryMatrix {
    pub fn new(entries: DMatrix<C64>) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::InvalidUnitary {
                reason: "matrix is not square".into(),
            });
        }
        let n = entries.nrows();
        let prod = &entries * entries.adjoint();
        for i in 0..n {
            for j in 0..n {
                let expect = if i == j { 1.0 } else { 0.0 };
                if (prod[(i, j)] - C64::new(expect, 0.0)).norm() > tol::UNITARITY {
                    return Err(Error::InvalidUnitary {
                        reason: format!("U·U† deviates from identity at ({i},{j})"),
                    });
                }
            }
        }
        Ok(Self { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<C64> {
        &self.entries
    }
}

/// A vector of outcome probabilities: entries ≥ 0 after clipping at
/// −[`tol::PROB_CLIP`], summing to 1 within [`tol::TRACE`].
#[derive(Clone, Debug, PartialEq)]
pub struct ProbabilityVector {
    p: Vec<f64>,
}

impl ProbabilityVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        let mut p = values;
        for v in p.iter_mut() {
            if *v < -tol::PROB_CLIP {
                return Err(Error::InvalidProbability {
                    reason: format!("negative entry {v}"),
                });
            }
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > tol::TRACE {
            return Err(Error::InvalidProbability {
                reason: format!("entries sum to {sum}, not 1"),
            });
        }
        Ok(Self { p })
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.p
    }
}

/// −Σ pᵢ log₂ pᵢ with 0·log 0 = 0, over a raw slice. Negative inputs are
/// treated as 0; callers are expected to have clipped already.
pub(crate) fn entropy_bits(p: &[f64]) -> f64 {
    let h: f64 = p.iter().filter(|&&v| v > 0.0).map(|&v| -v * v.log2()).sum();
    h.max(0.0)
}

/// Shannon entropy in bits.
pub fn shannon_entropy(p: &ProbabilityVector) -> f64 {
    entropy_bits(p.as_slice())
}

/// Von Neumann entropy in bits: −Σ λ log₂ λ over the eigenvalue spectrum.
/// Eigenvalues in [−[`tol::PSD_CLIP`], 0) are clipped to 0; anything lower
/// rejects the input as not positive semidefinite.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let mut ev = rho.eigenvalues();
    for v in ev.iter_mut() {
        if *v < -tol::PSD_CLIP {
            return Err(Error::InvalidDensityMatrix {
                reason: format!("eigenvalue {v} below −{}", tol::PSD_CLIP),
            });
        }
        if *v < 0.0 {
            *v = 0.0;
        }
    }
    Ok(entropy_bits(&ev))
}

/// The s-th vector of the Fourier basis, expressed in computational-basis
/// amplitudes: ∣s⟩₂ = 1/√d Σ_k e^{i2πsk/d} ∣k⟩₁.
///
/// The Fourier basis is mutually unbiased with the computational basis:
/// every cross overlap has squared magnitude 1/d.
pub fn fourier_basis_vector(d: Dimension, s: usize) -> Result<StateVector> {
    let dd = d.get();
    if s >= dd {
        return Err(Error::IndexOutOfRange { index: s, dim: dd });
    }
    let scale = 1.0 / (dd as f64).sqrt();
    let amps = DVector::from_fn(dd, |k, _| {
        phase(TAU * ((s * k) % dd) as f64 / dd as f64) * scale
    });
    StateVector::new(amps, vec![dd])
}

/// The unitary whose columns are the Fourier basis vectors.
pub fn fourier_matrix(d: Dimension) -> UnitaryMatrix {
    let dd = d.get();
    let scale = 1.0 / (dd as f64).sqrt();
    let entries = DMatrix::from_fn(dd, dd, |k, s| {
        phase(TAU * ((s * k) % dd) as f64 / dd as f64) * scale
    });
    UnitaryMatrix { entries }
}

/// The shift-and-phase operator U_{j,k} = Σ_s e^{i2πsk/d} ∣s+j⟩⟨s∣, with the
/// shift taken mod d. U_{0,0} is the identity.
pub fn generalized_pauli(d: Dimension, j: usize, k: usize) -> Result<UnitaryMatrix> {
    let dd = d.get();
    if j >= dd {
        return Err(Error::IndexOutOfRange { index: j, dim: dd });
    }
    if k >= dd {
        return Err(Error::IndexOutOfRange { index: k, dim: dd });
    }
    let mut entries = DMatrix::zeros(dd, dd);
    for s in 0..dd {
        entries[((s + j) % dd, s)] = phase(TAU * ((s * k) % dd) as f64 / dd as f64);
    }
    Ok(UnitaryMatrix { entries })
}

/// The generalized Bell state ∣φ_{jk}⟩ = (I ⊗ U_{j,k}) ∣Φ⟩
/// = 1/√d Σ_s e^{i2πsk/d} ∣s⟩∣s+j⟩ on two qudits.
///
/// Over all (j,k) these d² vectors form an orthonormal basis of the
/// two-qudit space.
pub fn bell_state(d: Dimension, j: usize, k: usize) -> Result<StateVector> {
    let dd = d.get();
    if j >= dd {
        return Err(Error::IndexOutOfRange { index: j, dim: dd });
    }
    if k >= dd {
        return Err(Error::IndexOutOfRange { index: k, dim: dd });
    }
    let scale = 1.0 / (dd as f64).sqrt();
    let mut amps = DVector::zeros(dd * dd);
    for s in 0..dd {
        amps[s * dd + (s + j) % dd] = phase(TAU * ((s * k) % dd) as f64 / dd as f64) * scale;
    }
    StateVector::new(amps, vec![dd, dd])
}
