//! One-step Fredkin gate in a bi-modal cavity driven through quantum Zeno
//! dynamics.
//!
//! Three four-level atoms (`gL`, `gR`, `g0`, `e0`) couple to two circularly
//! polarized cavity modes; atom 1 is additionally driven on `g0 <-> e0`.
//! The crate builds the resonant and detuned Hamiltonians on a truncated
//! product space, extracts the closed subspaces and their Zeno structure,
//! propagates states under closed and no-jump (conditional) dynamics, and
//! evaluates the gate's fidelity and success probability.
//!
//! Units are natural: `hbar = 1`, and callers usually set `g = 1` so that
//! every rate is a ratio to the cavity coupling.

pub mod error;
pub mod gate;
pub mod hamiltonian;
pub mod hilbert;
pub mod linalg;
pub mod propagator;
pub mod zeno;

pub use error::{Error, Result};
pub use gate::{
    fidelity_run, fidelity_run_with, gate_time, ideal_fredkin, truth_table_check, GateRunResult,
    InputState, TruthTableRow,
};
pub use hamiltonian::{DissipatorConvention, Model, ModelParams, OperatorMatrix, RegimeAdvisory};
pub use hilbert::{AtomLevel, Basis, BasisState, StateVector};
pub use propagator::{
    evolve_conditional, evolve_conditional_ode, evolve_hermitian, PropagationResult,
    SpectralPropagator,
};
pub use zeno::{ClosedSubspace, EffectiveModel, ZenoDecomposition, ZenoGroup};

/// Complex amplitude type used throughout.
pub type C64 = num_complex::Complex64;
