//! Time evolution under Hermitian and no-jump (non-Hermitian) Hamiltonians.
//!
//! Both evolvers work on the smallest block of basis states that is closed
//! under `H` and contains the support of the initial state. The decay
//! operator is diagonal, so the block of `H_cond` equals that of `H_total`
//! and the reduction is exact.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::hamiltonian::{OperatorMatrix, HERMITIAN_TOL};
use crate::hilbert::StateVector;
use crate::linalg::{self, OdeTolerance};
use crate::zeno::reachable_from;
use crate::C64;

/// Survival below this is reported as an extinguished trajectory.
pub const EXTINCTION_THRESHOLD: f64 = 1e-12;
const SUPPORT_TOL: f64 = 0.0;

#[derive(Debug, Clone, PartialEq)]
pub struct PropagationResult {
    /// Normalized no-jump state.
    pub state: StateVector,
    /// Probability that no quantum jump occurred.
    pub survival: f64,
    /// Squared norm of the unnormalized state.
    pub raw_norm_sq: f64,
}

fn check_dims(h: &OperatorMatrix, psi0: &StateVector) -> Result<()> {
    if h.dim() != psi0.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: psi0.dim(),
        });
    }
    Ok(())
}

fn invariant_block(h: &OperatorMatrix, psi0: &StateVector) -> Vec<usize> {
    let mut block = reachable_from(h.entries(), &psi0.support(SUPPORT_TOL), 0.0);
    block.sort_unstable();
    block
}

fn gather(psi: &StateVector, block: &[usize]) -> DVector<C64> {
    DVector::from_iterator(block.len(), block.iter().map(|&i| psi.amplitudes[i]))
}

fn scatter(coords: &DVector<C64>, block: &[usize], dim: usize) -> StateVector {
    let mut out = StateVector::zeros(dim);
    for (k, &i) in block.iter().enumerate() {
        out.amplitudes[i] = coords[k];
    }
    out
}

fn ensure_hermitian_operator(h: &OperatorMatrix) -> Result<()> {
    let deviation = h.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(())
}

/// Cached eigendecomposition of a Hermitian `H` on the block reachable from
/// a given initial state, for evaluating `exp(-iHt) psi0` at many times.
#[derive(Debug, Clone)]
pub struct SpectralPropagator {
    dim: usize,
    block: Vec<usize>,
    values: DVector<f64>,
    vectors: DMatrix<C64>,
}

impl SpectralPropagator {
    pub fn new(h: &OperatorMatrix, psi0: &StateVector) -> Result<Self> {
        check_dims(h, psi0)?;
        ensure_hermitian_operator(h)?;
        let block = invariant_block(h, psi0);
        let (values, vectors) = linalg::eigh(&h.restrict(&block));
        Ok(Self {
            dim: h.dim(),
            block,
            values,
            vectors,
        })
    }

    /// Basis indices the propagator acts on.
    pub fn block(&self) -> &[usize] {
        &self.block
    }

    /// Evolves any state supported inside the block.
    pub fn evolve(&self, psi: &StateVector, t: f64) -> Result<StateVector> {
        if psi.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: psi.dim(),
            });
        }
        let coords = gather(psi, &self.block);
        let mut inside = vec![false; self.dim];
        for &i in &self.block {
            inside[i] = true;
        }
        let outside: f64 = psi
            .amplitudes
            .iter()
            .zip(&inside)
            .filter(|(_, &keep)| !keep)
            .map(|(a, _)| a.norm_sqr())
            .sum();
        if outside > 0.0 {
            return Err(Error::UnexpectedSubspace(format!(
                "state has weight {outside:e} outside the propagator block"
            )));
        }
        let mut modes = self.vectors.adjoint() * coords;
        for (k, amp) in modes.iter_mut().enumerate() {
            *amp *= C64::from_polar(1.0, -self.values[k] * t);
        }
        Ok(scatter(&(&self.vectors * modes), &self.block, self.dim))
    }
}

/// `exp(-iHt) psi0` for Hermitian `H`, by spectral decomposition.
pub fn evolve_hermitian(h: &OperatorMatrix, psi0: &StateVector, t: f64) -> Result<StateVector> {
    SpectralPropagator::new(h, psi0)?.evolve(psi0, t)
}

fn finish(raw: StateVector, psi0: &StateVector) -> Result<PropagationResult> {
    let raw_norm_sq = raw.norm_sq();
    let survival = raw_norm_sq / psi0.norm_sq();
    if !(survival >= EXTINCTION_THRESHOLD) {
        return Err(Error::TrajectoryExtinguished { survival });
    }
    Ok(PropagationResult {
        state: raw.normalized(),
        survival,
        raw_norm_sq,
    })
}

fn check_dissipative(h: &OperatorMatrix) -> Result<()> {
    // The anti-Hermitian part must be negative semidefinite; for the
    // diagonal decay operators used here it is enough to look at the
    // imaginary parts of the diagonal and require the rest Hermitian.
    let m = h.entries();
    let n = m.nrows();
    let mut deviation = 0.0_f64;
    for i in 0..n {
        if m[(i, i)].im > HERMITIAN_TOL {
            return Err(Error::InvalidParams(format!(
                "conditional Hamiltonian has gain on diagonal entry {i} ({:e})",
                m[(i, i)].im
            )));
        }
        for j in (i + 1)..n {
            deviation = deviation.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(())
}

/// `exp(-i H_cond t) psi0` by scaling-and-squaring Padé on the invariant
/// block. `survival` is relative to `|psi0|^2`.
pub fn evolve_conditional(
    h_cond: &OperatorMatrix,
    psi0: &StateVector,
    t: f64,
) -> Result<PropagationResult> {
    check_dims(h_cond, psi0)?;
    check_dissipative(h_cond)?;
    let block = invariant_block(h_cond, psi0);
    let generator = h_cond.restrict(&block).map(|z| z * C64::new(0.0, -t));
    let u = linalg::expm(&generator)?;
    let raw = scatter(&(u * gather(psi0, &block)), &block, psi0.dim());
    finish(raw, psi0)
}

/// Reference route for [`evolve_conditional`]: adaptive Dormand-Prince
/// integration on the full space, sharing no code with the Padé path.
pub fn evolve_conditional_ode(
    h_cond: &OperatorMatrix,
    psi0: &StateVector,
    t: f64,
    tol: OdeTolerance,
) -> Result<PropagationResult> {
    check_dims(h_cond, psi0)?;
    check_dissipative(h_cond)?;
    let y = linalg::integrate_schrodinger(h_cond.entries(), &psi0.amplitudes, t, tol)?;
    finish(StateVector::from_amplitudes(y), psi0)
}
