//! Closed subspaces, Zeno decomposition of the cavity coupling, and the
//! effective gate Hamiltonians.
//!
//! A computational input such as `|g0, gL, gR; 00>` only explores a small
//! closed subspace of the full basis. Inside it the strong coupling `H_c`
//! splits into eigenspaces (Zeno subspaces); a weak drive cannot move
//! population between them, so the dynamics is the drive projected onto the
//! eigenvalue-0 (dark) subspace.

use std::collections::{HashSet, VecDeque};

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::hamiltonian::{
    build_cavity_coupling, build_detuning, build_laser, Model, ModelParams, OperatorMatrix,
};
use crate::hilbert::{AtomLevel, Basis, BasisState, StateVector};
use crate::linalg;
use crate::C64;

pub const DEFAULT_REACH_TOL: f64 = 1e-12;
/// Eigenvalues closer than this times `g` are treated as degenerate.
pub const DEFAULT_DEGENERACY_TOL: f64 = 1e-6;
/// Residual allowed when testing membership of the dark subspace.
pub const SPAN_TOL: f64 = 1e-8;
const ORTHONORMAL_TOL: f64 = 1e-10;

use AtomLevel::{E0, G0, GL, GR};

/// States spanning the closure of `|g0, gL, gR; 00>`, in the order
/// `phi_1 ... phi_14`. The first and last entries are the two
/// computational states that the gate swaps.
pub const SWAP_SECTOR: [BasisState; 14] = [
    BasisState::new(G0, GL, GR, 0, 0),
    BasisState::new(E0, GL, GR, 0, 0),
    BasisState::new(GL, GL, GR, 1, 0),
    BasisState::new(GL, E0, GR, 0, 0),
    BasisState::new(GL, GR, GR, 0, 1),
    BasisState::new(GL, GR, E0, 0, 0),
    BasisState::new(GL, GR, GL, 1, 0),
    BasisState::new(GR, GL, GR, 0, 1),
    BasisState::new(GR, GL, E0, 0, 0),
    BasisState::new(GR, GL, GL, 1, 0),
    BasisState::new(GR, E0, GL, 0, 0),
    BasisState::new(GR, GR, GL, 0, 1),
    BasisState::new(E0, GR, GL, 0, 0),
    BasisState::new(G0, GR, GL, 0, 0),
];

/// States spanning the closure of `|g0, gL, gL; 00>`, in the order
/// `phi'_1 ... phi'_8`.
pub const PARALLEL_SECTOR: [BasisState; 8] = [
    BasisState::new(G0, GL, GL, 0, 0),
    BasisState::new(E0, GL, GL, 0, 0),
    BasisState::new(GL, GL, GL, 1, 0),
    BasisState::new(GL, E0, GL, 0, 0),
    BasisState::new(GL, GR, GL, 0, 1),
    BasisState::new(GL, GL, E0, 0, 0),
    BasisState::new(GL, GL, GR, 0, 1),
    BasisState::new(GR, GL, GL, 0, 1),
];

fn combination(basis: &Basis, terms: &[(BasisState, f64)], norm: f64) -> Result<StateVector> {
    let mut v = StateVector::zeros(basis.dim());
    for (s, c) in terms {
        v.amplitudes[basis.index_of(s)?] += C64::new(c / norm, 0.0);
    }
    Ok(v)
}

/// Photonic dark vector of the swap sector,
/// `(-phi3 + phi5 - phi7 + phi8 - phi10 + phi12) / sqrt(6)`.
pub fn swap_photonic_dark(basis: &Basis) -> Result<StateVector> {
    let s = &SWAP_SECTOR;
    combination(
        basis,
        &[(s[2], -1.0), (s[4], 1.0), (s[6], -1.0), (s[7], 1.0), (s[9], -1.0), (s[11], 1.0)],
        6f64.sqrt(),
    )
}

/// Atomic-excitation dark vector of the swap sector,
/// `(-phi2 + phi4 - phi6 + phi9 - phi11 + phi13) / sqrt(6)`. It is the
/// intermediate state of the resonant gate.
pub fn swap_excited_dark(basis: &Basis) -> Result<StateVector> {
    let s = &SWAP_SECTOR;
    combination(
        basis,
        &[(s[1], -1.0), (s[3], 1.0), (s[5], -1.0), (s[8], 1.0), (s[10], -1.0), (s[12], 1.0)],
        6f64.sqrt(),
    )
}

/// Photonic dark vector of the parallel sector,
/// `(-phi'3 + phi'5 + phi'7 + phi'8) / 2`.
pub fn parallel_photonic_dark(basis: &Basis) -> Result<StateVector> {
    let s = &PARALLEL_SECTOR;
    combination(basis, &[(s[2], -1.0), (s[4], 1.0), (s[6], 1.0), (s[7], 1.0)], 2.0)
}

/// Breadth-first closure of `seeds` under matrix elements larger than `tol`,
/// in first-reached order.
pub fn reachable_from(h: &DMatrix<C64>, seeds: &[usize], tol: f64) -> Vec<usize> {
    let n = h.nrows();
    let mut seen = vec![false; n];
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    for &s in seeds {
        if !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(j) = queue.pop_front() {
        order.push(j);
        for i in 0..n {
            if !seen[i] && (h[(i, j)].norm() > tol || h[(j, i)].norm() > tol) {
                seen[i] = true;
                queue.push_back(i);
            }
        }
    }
    order
}

/// A set of basis states closed under some Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedSubspace {
    basis: Basis,
    seed: BasisState,
    members: Vec<usize>,
}

impl ClosedSubspace {
    pub fn seed(&self) -> BasisState {
        self.seed
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn dim(&self) -> usize {
        self.members.len()
    }

    pub fn member_states(&self) -> Vec<BasisState> {
        self.members.iter().map(|&i| self.basis.state_at(i)).collect()
    }

    pub fn position(&self, s: &BasisState) -> Option<usize> {
        let idx = self.basis.index_of(s).ok()?;
        self.members.iter().position(|&m| m == idx)
    }

    /// True when the member set equals `states` (order ignored).
    pub fn spans_exactly(&self, states: &[BasisState]) -> bool {
        let ours: HashSet<BasisState> = self.member_states().into_iter().collect();
        let theirs: HashSet<BasisState> = states.iter().copied().collect();
        ours == theirs && states.len() == self.dim()
    }

    pub fn restrict(&self, op: &OperatorMatrix) -> Result<DMatrix<C64>> {
        if op.dim() != self.basis.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.basis.dim(),
                found: op.dim(),
            });
        }
        Ok(op.restrict(&self.members))
    }

    /// No matrix element of `op` connects a member to a non-member.
    pub fn is_closed_under(&self, op: &OperatorMatrix, tol: f64) -> bool {
        let inside: HashSet<usize> = self.members.iter().copied().collect();
        let m = op.entries();
        self.members.iter().all(|&j| {
            (0..op.dim())
                .filter(|i| !inside.contains(i))
                .all(|i| m[(i, j)].norm() <= tol && m[(j, i)].norm() <= tol)
        })
    }

    /// Coordinates of a full-space vector; fails if it leaks outside.
    pub fn project(&self, psi: &StateVector) -> Result<DVector<C64>> {
        if psi.dim() != self.basis.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.basis.dim(),
                found: psi.dim(),
            });
        }
        let coords = DVector::from_iterator(self.dim(), self.members.iter().map(|&i| psi.amplitudes[i]));
        let leakage = (psi.norm_sq() - coords.norm_squared()).max(0.0).sqrt();
        if leakage > 1e-12 {
            return Err(Error::UnexpectedSubspace(format!(
                "vector has weight {leakage:e} outside the closure of {}",
                self.seed
            )));
        }
        Ok(coords)
    }

    pub fn embed(&self, coords: &DVector<C64>) -> Result<StateVector> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: coords.len(),
            });
        }
        let mut psi = StateVector::zeros(self.basis.dim());
        for (k, &i) in self.members.iter().enumerate() {
            psi.amplitudes[i] = coords[k];
        }
        Ok(psi)
    }
}

pub fn reachable_subspace(
    h: &OperatorMatrix,
    basis: &Basis,
    seed: BasisState,
    tol: f64,
) -> Result<ClosedSubspace> {
    if h.dim() != basis.dim() {
        return Err(Error::DimensionMismatch {
            expected: basis.dim(),
            found: h.dim(),
        });
    }
    let start = basis.index_of(&seed)?;
    Ok(ClosedSubspace {
        basis: *basis,
        seed,
        members: reachable_from(h.entries(), &[start], tol),
    })
}

/// One eigenvalue of `H_c` with an orthonormal basis of its eigenspace
/// (columns, in subspace coordinates).
#[derive(Debug, Clone, PartialEq)]
pub struct ZenoGroup {
    pub eigenvalue: f64,
    pub vectors: DMatrix<C64>,
}

impl ZenoGroup {
    pub fn multiplicity(&self) -> usize {
        self.vectors.ncols()
    }

    pub fn projector(&self) -> DMatrix<C64> {
        &self.vectors * self.vectors.adjoint()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZenoDecomposition {
    groups: Vec<ZenoGroup>,
    degeneracy_tolerance: f64,
    g: f64,
}

impl ZenoDecomposition {
    /// Groups in ascending eigenvalue order.
    pub fn groups(&self) -> &[ZenoGroup] {
        &self.groups
    }

    pub fn degeneracy_tolerance(&self) -> f64 {
        self.degeneracy_tolerance
    }

    pub fn dim(&self) -> usize {
        self.groups.iter().map(ZenoGroup::multiplicity).sum()
    }

    pub fn zero_group(&self) -> Option<&ZenoGroup> {
        self.groups
            .iter()
            .find(|grp| grp.eigenvalue.abs() <= self.degeneracy_tolerance * self.g)
    }

    /// `(eigenvalue / g, multiplicity)` per group.
    pub fn spectrum_over_g(&self) -> Vec<(f64, usize)> {
        self.groups
            .iter()
            .map(|grp| (grp.eigenvalue / self.g, grp.multiplicity()))
            .collect()
    }

    pub fn zero_projector(&self) -> DMatrix<C64> {
        self.zero_group()
            .map(ZenoGroup::projector)
            .unwrap_or_else(|| DMatrix::zeros(self.dim(), self.dim()))
    }

    /// `sum_n P_n`; the identity when the decomposition is complete.
    pub fn projector_sum(&self) -> DMatrix<C64> {
        let n = self.dim();
        self.groups
            .iter()
            .fold(DMatrix::zeros(n, n), |acc, grp| acc + grp.projector())
    }

    /// `sum_n eta_n P_n`.
    pub fn reconstruct(&self) -> DMatrix<C64> {
        let n = self.dim();
        self.groups.iter().fold(DMatrix::zeros(n, n), |acc, grp| {
            acc + grp.projector().map(|z| z * grp.eigenvalue)
        })
    }

    /// All eigenvectors side by side, group by group.
    pub fn eigenbasis(&self) -> DMatrix<C64> {
        let n = self.dim();
        let mut out = DMatrix::zeros(n, n);
        let mut col = 0;
        for grp in &self.groups {
            for v in grp.vectors.column_iter() {
                out.set_column(col, &v);
                col += 1;
            }
        }
        out
    }
}

/// Modified Gram-Schmidt over the columns; drops columns whose remainder
/// falls below `drop_tol`.
fn orthonormalize(columns: &DMatrix<C64>, drop_tol: f64) -> DMatrix<C64> {
    let mut kept: Vec<DVector<C64>> = Vec::new();
    for c in columns.column_iter() {
        let mut v: DVector<C64> = c.into_owned();
        for _ in 0..2 {
            for q in &kept {
                let proj = q.dotc(&v);
                v.axpy(-proj, q, C64::new(1.0, 0.0));
            }
        }
        let norm = v.norm();
        if norm > drop_tol {
            kept.push(v.unscale(norm));
        }
    }
    if kept.is_empty() {
        return DMatrix::zeros(columns.nrows(), 0);
    }
    DMatrix::from_columns(&kept)
}

/// Eigendecomposition of a Hermitian coupling with degenerate eigenvalues
/// grouped together.
pub fn zeno_decompose(
    h_c: &DMatrix<C64>,
    g: f64,
    degeneracy_tol: f64,
) -> Result<ZenoDecomposition> {
    linalg::ensure_hermitian(h_c, crate::hamiltonian::HERMITIAN_TOL)?;
    if !(g > 0.0) || !(degeneracy_tol > 0.0) {
        return Err(Error::InvalidParams(
            "zeno_decompose needs g > 0 and a positive degeneracy tolerance".into(),
        ));
    }
    let (values, vectors) = linalg::eigh(h_c);
    let threshold = degeneracy_tol * g;
    let mut groups = Vec::new();
    let mut start = 0;
    let n = values.len();
    while start < n {
        let mut end = start + 1;
        while end < n && values[end] - values[end - 1] <= threshold {
            end += 1;
        }
        if values[end - 1] - values[start] > threshold {
            return Err(Error::InvalidParams(format!(
                "eigenvalue cluster [{}, {}] wider than the degeneracy tolerance",
                values[start],
                values[end - 1]
            )));
        }
        let mut mean = values.rows(start, end - start).mean();
        if mean.abs() <= threshold {
            mean = 0.0;
        }
        let block = orthonormalize(&vectors.columns(start, end - start).into_owned(), 0.5);
        groups.push(ZenoGroup {
            eigenvalue: mean,
            vectors: block,
        });
        start = end;
    }
    Ok(ZenoDecomposition {
        groups,
        degeneracy_tolerance: degeneracy_tol,
        g,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpanCheck {
    pub contained: bool,
    /// Largest relative distance of a candidate from the dark subspace.
    pub residual: f64,
}

/// Tests whether every candidate (in subspace coordinates) lies in the
/// eigenvalue-0 group. Spans are compared, not individual eigenvectors.
pub fn zero_subspace_span_check(
    d: &ZenoDecomposition,
    candidates: &[DVector<C64>],
) -> Result<SpanCheck> {
    let p0 = d.zero_projector();
    let mut residual = 0.0_f64;
    for c in candidates {
        if c.len() != d.dim() {
            return Err(Error::DimensionMismatch {
                expected: d.dim(),
                found: c.len(),
            });
        }
        let norm = c.norm();
        if norm == 0.0 {
            continue;
        }
        let r = (c - &p0 * c).norm() / norm;
        residual = residual.max(r);
    }
    Ok(SpanCheck {
        contained: residual <= SPAN_TOL,
        residual,
    })
}

/// Small Hamiltonian on a handful of full-space vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct EffectiveModel {
    pub h_eff: DMatrix<C64>,
    pub labels: Vec<String>,
    pub embedding: Vec<StateVector>,
}

impl EffectiveModel {
    pub fn new(h_eff: DMatrix<C64>, labels: Vec<String>, embedding: Vec<StateVector>) -> Result<Self> {
        let k = embedding.len();
        if h_eff.nrows() != k || h_eff.ncols() != k || labels.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: h_eff.nrows(),
            });
        }
        linalg::ensure_hermitian(&h_eff, crate::hamiltonian::HERMITIAN_TOL)?;
        for a in 0..k {
            for b in 0..k {
                let expected = if a == b { 1.0 } else { 0.0 };
                let ip = embedding[a].inner(&embedding[b])?;
                if (ip - C64::new(expected, 0.0)).norm() > ORTHONORMAL_TOL {
                    return Err(Error::InvalidParams(format!(
                        "embedding vectors {} and {} are not orthonormal",
                        labels[a], labels[b]
                    )));
                }
            }
        }
        Ok(Self {
            h_eff,
            labels,
            embedding,
        })
    }

    pub fn dim(&self) -> usize {
        self.embedding.len()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `exp(-i h_eff t) coeffs` by spectral decomposition.
    pub fn evolve(&self, coeffs: &DVector<C64>, t: f64) -> DVector<C64> {
        let (w, v) = linalg::eigh(&self.h_eff);
        let mut rotated = v.adjoint() * coeffs;
        for (k, amp) in rotated.iter_mut().enumerate() {
            *amp *= C64::from_polar(1.0, -w[k] * t);
        }
        v * rotated
    }

    pub fn to_full(&self, coeffs: &DVector<C64>) -> Result<StateVector> {
        if coeffs.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: coeffs.len(),
            });
        }
        let mut out = StateVector::zeros(self.embedding[0].dim());
        for (c, e) in coeffs.iter().zip(&self.embedding) {
            out = out.add(&e.scale(*c))?;
        }
        Ok(out)
    }
}

/// `P_0 H_laser P_0` in subspace coordinates, with the decomposition it was
/// projected on.
pub fn projected_drive(
    subspace: &ClosedSubspace,
    p: &ModelParams,
) -> Result<(DMatrix<C64>, ZenoDecomposition)> {
    let hc = subspace.restrict(&build_cavity_coupling(p)?)?;
    let hl = subspace.restrict(&build_laser(p)?)?;
    let d = zeno_decompose(&hc, p.g, DEFAULT_DEGENERACY_TOL)?;
    let p0 = d.zero_projector();
    Ok((&p0 * hl * &p0, d))
}

fn column_matrix(vectors: &[DVector<C64>]) -> DMatrix<C64> {
    DMatrix::from_columns(vectors)
}

/// Three-level model on `{phi1, phi14, varphi2}` for the resonant swap
/// sector. The photonic dark vector is verified to decouple and dropped.
pub fn effective_resonant(subspace: &ClosedSubspace, p: &ModelParams) -> Result<EffectiveModel> {
    p.validate()?;
    if p.model != Model::Resonant {
        return Err(Error::ModelMismatch {
            expected: Model::Resonant,
            found: p.model,
        });
    }
    if !subspace.spans_exactly(&SWAP_SECTOR) {
        return Err(Error::UnexpectedSubspace(format!(
            "effective_resonant needs the 14-state closure of {}, got {} states seeded at {}",
            SWAP_SECTOR[0],
            subspace.dim(),
            subspace.seed()
        )));
    }
    let basis = subspace.basis();
    let (m, d) = projected_drive(subspace, p)?;

    let phi1 = basis.ket(&SWAP_SECTOR[0])?;
    let phi14 = basis.ket(&SWAP_SECTOR[13])?;
    let bright = swap_excited_dark(basis)?;
    let photonic = swap_photonic_dark(basis)?;
    let coords: Vec<DVector<C64>> = [&phi1, &phi14, &bright, &photonic]
        .iter()
        .map(|v| subspace.project(v))
        .collect::<Result<_>>()?;

    let zero_dim = d.zero_group().map_or(0, ZenoGroup::multiplicity);
    let span = zero_subspace_span_check(&d, &coords)?;
    if zero_dim != 4 || !span.contained {
        return Err(Error::UnexpectedSubspace(format!(
            "dark subspace has dimension {zero_dim}, reference residual {:e}",
            span.residual
        )));
    }
    let decoupled = (&m * &coords[3]).norm();
    if decoupled > 1e-12 {
        return Err(Error::UnexpectedSubspace(format!(
            "photonic dark vector couples to the drive ({decoupled:e})"
        )));
    }

    let e = column_matrix(&coords[..3]);
    let h = e.adjoint() * &m * &e;
    let rebuilt = &e * &h * e.adjoint();
    let gap = linalg::max_abs(&(&m - rebuilt));
    if gap > 1e-10 {
        return Err(Error::UnexpectedSubspace(format!(
            "projected drive not captured by the three-level model ({gap:e})"
        )));
    }
    let h = (&h + h.adjoint()).unscale(2.0);
    EffectiveModel::new(
        h,
        vec!["phi1".into(), "phi14".into(), "varphi2".into()],
        vec![phi1, phi14, bright],
    )
}

/// Second-order (adiabatic) elimination of the detuned dark-subspace
/// excitations, giving a model on the computational states of the sector.
///
/// Inside the dark subspace of `H_c`, the complement of the computational
/// states is split by `H_de` into idle (zero-energy) directions, which must
/// not couple to the drive, and detuned ones, which are eliminated:
/// `h_eff = C^dag H C - V (X^dag H X)^{-1} V^dag` with `V = C^dag H X`.
pub fn effective_detuned(subspace: &ClosedSubspace, p: &ModelParams) -> Result<EffectiveModel> {
    p.validate()?;
    if p.model != Model::Detuned {
        return Err(Error::ModelMismatch {
            expected: Model::Detuned,
            found: p.model,
        });
    }
    let basis = subspace.basis();
    let hc = subspace.restrict(&build_cavity_coupling(p)?)?;
    let hl = subspace.restrict(&build_laser(p)?)?;
    let hd = subspace.restrict(&build_detuning(p)?)?;
    let d = zeno_decompose(&hc, p.g, DEFAULT_DEGENERACY_TOL)?;
    let dark = d
        .zero_group()
        .map(|grp| grp.vectors.clone())
        .ok_or_else(|| Error::UnexpectedSubspace("no dark subspace".into()))?;

    let computational: Vec<BasisState> = subspace
        .member_states()
        .into_iter()
        .filter(BasisState::is_computational)
        .collect();
    if computational.is_empty() {
        return Err(Error::UnexpectedSubspace(format!(
            "closure of {} holds no computational state",
            subspace.seed()
        )));
    }
    let comp_coords: Vec<DVector<C64>> = computational
        .iter()
        .map(|s| basis.ket(s).and_then(|v| subspace.project(&v)))
        .collect::<Result<_>>()?;
    let span = zero_subspace_span_check(&d, &comp_coords)?;
    if !span.contained {
        return Err(Error::UnexpectedSubspace(format!(
            "computational states leave the dark subspace ({:e})",
            span.residual
        )));
    }
    let c = column_matrix(&comp_coords);
    let rest = orthonormalize(&(&dark - &c * (c.adjoint() * &dark)), 1e-8);

    let threshold = DEFAULT_DEGENERACY_TOL * p.g;
    let h_drive = &hl + &hd;
    let mut excited = Vec::new();
    if rest.ncols() > 0 {
        let (energies, modes) = linalg::eigh(&(rest.adjoint() * &hd * &rest));
        for (k, &energy) in energies.iter().enumerate() {
            let r: DVector<C64> = &rest * modes.column(k);
            if energy.abs() <= threshold {
                let leak = (c.adjoint() * &h_drive * &r).norm();
                if leak > 1e-12 {
                    return Err(Error::UnexpectedSubspace(format!(
                        "zero-energy dark direction couples to computational states ({leak:e})"
                    )));
                }
            } else {
                excited.push(r);
            }
        }
    }

    let mut h = c.adjoint() * &h_drive * &c;
    if !excited.is_empty() {
        let x = column_matrix(&excited);
        let v = c.adjoint() * &h_drive * &x;
        let q = x.adjoint() * &h_drive * &x;
        let q_inv = q
            .try_inverse()
            .ok_or(Error::Singular("detuned excitation block"))?;
        h -= &v * q_inv * v.adjoint();
    }
    let h = (&h + h.adjoint()).unscale(2.0);

    let labels = computational.iter().map(sector_label).collect();
    let embedding = computational
        .iter()
        .map(|s| basis.ket(s))
        .collect::<Result<_>>()?;
    EffectiveModel::new(h, labels, embedding)
}

fn sector_label(s: &BasisState) -> String {
    if *s == SWAP_SECTOR[0] {
        "phi1".into()
    } else if *s == SWAP_SECTOR[13] {
        "phi14".into()
    } else {
        s.to_string()
    }
}

/// Closed-form state reached from `phi1` after time `t` under the effective
/// model of `model`, embedded in the full basis of `p`.
///
/// Resonant (`theta = Omega t / sqrt 3`):
/// `(1 + cos theta)/2 phi1 + (1 - cos theta)/2 phi14 + i sin(theta)/sqrt 2 varphi2`.
/// Detuned (`theta = Omega^2 t / (3 Delta)`):
/// `(1 + e^{i theta})/2 phi1 + (1 - e^{i theta})/2 phi14`.
pub fn analytic_state(model: Model, t: f64, p: &ModelParams) -> Result<StateVector> {
    p.validate()?;
    let basis = p.basis()?;
    let phi1 = basis.ket(&SWAP_SECTOR[0])?;
    let phi14 = basis.ket(&SWAP_SECTOR[13])?;
    match model {
        Model::Resonant => {
            let theta = p.omega * t / 3f64.sqrt();
            let a1 = C64::new(0.5 + 0.5 * theta.cos(), 0.0);
            let a14 = C64::new(-0.5 * (theta.cos() - 1.0), 0.0);
            let a2 = C64::new(0.0, theta.sin() / 2f64.sqrt());
            phi1.scale(a1)
                .add(&phi14.scale(a14))?
                .add(&swap_excited_dark(&basis)?.scale(a2))
        }
        Model::Detuned => {
            let delta = p.delta.ok_or_else(|| {
                Error::InvalidParams("detuned closed form needs delta".into())
            })?;
            let theta = p.omega * p.omega * t / (3.0 * delta);
            let phase = C64::from_polar(1.0, theta);
            let one = C64::new(1.0, 0.0);
            phi1.scale((one + phase) * 0.5).add(&phi14.scale((one - phase) * 0.5))
        }
    }
}
