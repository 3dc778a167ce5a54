//! Ideal Fredkin action, gate times and figures of merit.

use std::fmt;

use crate::error::{Error, Result};
use crate::hamiltonian::{build_conditional, build_total, Model, ModelParams};
use crate::hilbert::{AtomLevel, Basis, BasisState, StateVector};
use crate::propagator::{evolve_conditional, SpectralPropagator};
use crate::C64;

use AtomLevel::{G0, GL, GR};

const LEAKAGE_TOL: f64 = 1e-10;

/// Product input states for the dissipative runs. Each atom is in an equal
/// superposition of its two computational levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum InputState {
    /// `(g0 + gR)(gL + gR)(gL + i gR) / (2 sqrt 2)`. The relative phase on
    /// the last target makes the state sensitive to the swap.
    #[default]
    Phased,
    /// `(g0 + gR)(gL + gR)(gL + gR) / (2 sqrt 2)`, which the ideal gate
    /// leaves unchanged.
    Uniform,
}

impl InputState {
    pub fn build(self, basis: &Basis) -> Result<StateVector> {
        let last_phase = match self {
            InputState::Phased => C64::new(0.0, 1.0),
            InputState::Uniform => C64::new(1.0, 0.0),
        };
        let mut psi = StateVector::zeros(basis.dim());
        let norm = 1.0 / 8f64.sqrt();
        for c in [G0, GR] {
            for t1 in [GL, GR] {
                for t2 in [GL, GR] {
                    let amp = if t2 == GR { last_phase } else { C64::new(1.0, 0.0) };
                    let i = basis.index_of(&BasisState::vacuum(c, t1, t2))?;
                    psi.amplitudes[i] = amp * norm;
                }
            }
        }
        Ok(psi)
    }
}

impl fmt::Display for InputState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InputState::Phased => "phased",
            InputState::Uniform => "uniform",
        })
    }
}

impl std::str::FromStr for InputState {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "phased" => Ok(InputState::Phased),
            "uniform" => Ok(InputState::Uniform),
            other => Err(format!("unknown input state `{other}` (expected phased or uniform)")),
        }
    }
}

/// The eight computational basis states: control `gR` rows first, then
/// control `g0`, targets in `LL, LR, RL, RR` order.
pub fn computational_states() -> [BasisState; 8] {
    let mut out = [BasisState::vacuum(GR, GL, GL); 8];
    let mut k = 0;
    for c in [GR, G0] {
        for t1 in [GL, GR] {
            for t2 in [GL, GR] {
                out[k] = BasisState::vacuum(c, t1, t2);
                k += 1;
            }
        }
    }
    out
}

/// Image of a computational basis state under the ideal gate.
pub fn fredkin_target(s: &BasisState) -> Result<BasisState> {
    if !s.is_computational() {
        return Err(Error::OutsideComputationalSubspace { leakage: 1.0 });
    }
    let [c, t1, t2] = s.levels;
    Ok(if c == G0 {
        BasisState::vacuum(c, t2, t1)
    } else {
        *s
    })
}

/// Controlled swap of atoms 2 and 3 (control `g0`) on a state supported in
/// the computational subspace.
pub fn ideal_fredkin(basis: &Basis, psi: &StateVector) -> Result<StateVector> {
    if psi.dim() != basis.dim() {
        return Err(Error::DimensionMismatch {
            expected: basis.dim(),
            found: psi.dim(),
        });
    }
    let mut out = StateVector::zeros(basis.dim());
    let mut leakage = 0.0_f64;
    for (i, amp) in psi.amplitudes.iter().enumerate() {
        let s = basis.state_at(i);
        if s.is_computational() {
            out.amplitudes[basis.index_of(&fredkin_target(&s)?)?] = *amp;
        } else {
            leakage = leakage.max(amp.norm());
        }
    }
    if leakage > LEAKAGE_TOL {
        return Err(Error::OutsideComputationalSubspace { leakage });
    }
    Ok(out)
}

/// Interaction time that completes the swap: `sqrt(3) pi / Omega` for the
/// resonant model, `3 Delta pi / Omega^2` for the detuned one.
pub fn gate_time(p: &ModelParams) -> Result<f64> {
    p.validate()?;
    if p.omega == 0.0 {
        return Err(Error::InvalidParams("gate time is infinite for omega = 0".into()));
    }
    Ok(match p.model {
        Model::Resonant => 3f64.sqrt() * std::f64::consts::PI / p.omega,
        Model::Detuned => {
            3.0 * p.delta.unwrap_or_default() * std::f64::consts::PI / (p.omega * p.omega)
        }
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TruthTableRow {
    pub input: BasisState,
    pub target: BasisState,
    /// `|<target|psi(t_gate)>|^2`.
    pub overlap_sq: f64,
    /// Weight left on states with an excited atom or a photon.
    pub residual_population: f64,
}

/// Propagates each computational basis state under the closed-system
/// Hamiltonian for one gate time.
pub fn truth_table_check(p: &ModelParams) -> Result<Vec<TruthTableRow>> {
    p.validate()?;
    if p.kappa != 0.0 || p.gamma != 0.0 {
        return Err(Error::InvalidParams(
            "the truth table is defined for the closed system (kappa = gamma = 0)".into(),
        ));
    }
    let basis = p.basis()?;
    let h = build_total(p)?;
    let t = gate_time(p)?;
    computational_states()
        .iter()
        .map(|input| {
            let psi0 = basis.ket(input)?;
            let psi = SpectralPropagator::new(&h, &psi0)?.evolve(&psi0, t)?;
            let target = fredkin_target(input)?;
            let overlap_sq = psi.amplitudes[basis.index_of(&target)?].norm_sqr();
            let residual_population = psi
                .amplitudes
                .iter()
                .enumerate()
                .filter(|(i, _)| {
                    let s = basis.state_at(*i);
                    s.excited_count() > 0 || s.photon_count() > 0
                })
                .map(|(_, a)| a.norm_sqr())
                .sum();
            Ok(TruthTableRow {
                input: *input,
                target,
                overlap_sq,
                residual_population,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct GateRunResult {
    pub fidelity: f64,
    pub success_probability: f64,
    pub t_gate: f64,
    pub params: ModelParams,
}

/// No-jump gate run on the default [`InputState`].
pub fn fidelity_run(p: &ModelParams) -> Result<GateRunResult> {
    let psi0 = InputState::default().build(&p.basis()?)?;
    fidelity_run_with(p, &psi0)
}

/// Propagates `psi0` under `H_cond` for one gate time. The fidelity is the
/// squared overlap of the normalized no-jump state with the ideal gate
/// output; the success probability is the no-jump survival.
pub fn fidelity_run_with(p: &ModelParams, psi0: &StateVector) -> Result<GateRunResult> {
    p.validate()?;
    let basis = p.basis()?;
    let ideal = ideal_fredkin(&basis, psi0)?.normalized();
    let t_gate = gate_time(p)?;
    let run = evolve_conditional(&build_conditional(p)?, psi0, t_gate)?;
    let fidelity = ideal.overlap_sq(&run.state)?.clamp(0.0, 1.0);
    Ok(GateRunResult {
        fidelity,
        success_probability: run.survival.clamp(0.0, 1.0),
        t_gate,
        params: p.clone(),
    })
}
