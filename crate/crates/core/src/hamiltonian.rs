//! Dense Hamiltonians of the driven three-atom, two-mode cavity.
//!
//! * cavity coupling `H_c = sum_k g (a_L |e0><gL|_k + a_R |e0><gR|_k) + h.c.`
//! * laser drive on atom 1, `H_laser = Omega (|e0><g0|_1 + h.c.)`
//! * detuning `H_de = Delta sum_k |e0><e0|_k` (detuned model only)
//! * conditional (no-jump) Hamiltonian `H_cond = H_total - i D` with a
//!   diagonal decay operator `D` built from `kappa` and `gamma`.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::hilbert::{excitation_number, AtomLevel, Basis, BasisState, StateVector};
use crate::linalg;
use crate::C64;

/// Tolerance behind the `hermitian_hint` flag.
pub const HERMITIAN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    Resonant,
    Detuned,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Resonant => "resonant",
            Model::Detuned => "detuned",
        })
    }
}

impl FromStr for Model {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "resonant" => Ok(Model::Resonant),
            "detuned" => Ok(Model::Detuned),
            other => Err(format!("unknown model `{other}` (expected resonant or detuned)")),
        }
    }
}

/// How the decay rates enter the conditional Hamiltonian.
///
/// `Conventional` is the standard quantum-jump form,
/// `D = sum_k (gamma/2) |e0><e0|_k + sum_j (kappa/2) a_j^dagger a_j`.
/// `Literal` evaluates the double sum over atoms and modes term by term,
/// which doubles the atomic rate and triples the cavity rate:
/// `D = sum_k gamma |e0><e0|_k + (3 kappa / 2) sum_j a_j^dagger a_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum DissipatorConvention {
    #[default]
    Conventional,
    Literal,
}

impl fmt::Display for DissipatorConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DissipatorConvention::Conventional => "conventional",
            DissipatorConvention::Literal => "literal",
        })
    }
}

impl FromStr for DissipatorConvention {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "conventional" => Ok(DissipatorConvention::Conventional),
            "literal" => Ok(DissipatorConvention::Literal),
            other => Err(format!(
                "unknown dissipator convention `{other}` (expected conventional or literal)"
            )),
        }
    }
}

/// Whether the drive is weak enough for the Zeno picture to apply.
#[derive(Debug, Clone, PartialEq)]
pub enum RegimeAdvisory {
    Ok,
    Warn(String),
}

/// Physical configuration. All rates share one angular-frequency unit.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    pub model: Model,
    pub g: f64,
    pub omega: f64,
    pub delta: Option<f64>,
    pub kappa: f64,
    pub gamma: f64,
    pub n_max: usize,
    pub dissipator: DissipatorConvention,
}

impl ModelParams {
    pub fn resonant(g: f64, omega: f64) -> Self {
        Self {
            model: Model::Resonant,
            g,
            omega,
            delta: None,
            kappa: 0.0,
            gamma: 0.0,
            n_max: 1,
            dissipator: DissipatorConvention::Conventional,
        }
    }

    pub fn detuned(g: f64, omega: f64, delta: f64) -> Self {
        Self {
            model: Model::Detuned,
            delta: Some(delta),
            ..Self::resonant(g, omega)
        }
    }

    pub fn with_decay(mut self, kappa: f64, gamma: f64) -> Self {
        self.kappa = kappa;
        self.gamma = gamma;
        self
    }

    pub fn with_n_max(mut self, n_max: usize) -> Self {
        self.n_max = n_max;
        self
    }

    pub fn with_dissipator(mut self, dissipator: DissipatorConvention) -> Self {
        self.dissipator = dissipator;
        self
    }

    pub fn basis(&self) -> Result<Basis> {
        Basis::new(self.n_max)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.g, self.omega, self.kappa, self.gamma]
            .iter()
            .chain(self.delta.iter())
            .all(|x| x.is_finite());
        if !finite {
            return Err(Error::InvalidParams("all rates must be finite".into()));
        }
        if self.g <= 0.0 {
            return Err(Error::InvalidParams(format!("g must be positive (got {})", self.g)));
        }
        if self.omega < 0.0 {
            return Err(Error::InvalidParams(format!(
                "omega must be non-negative (got {})",
                self.omega
            )));
        }
        if self.kappa < 0.0 || self.gamma < 0.0 {
            return Err(Error::InvalidParams(format!(
                "decay rates must be non-negative (kappa = {}, gamma = {})",
                self.kappa, self.gamma
            )));
        }
        match (self.model, self.delta) {
            (Model::Detuned, Some(d)) if d > 0.0 => {}
            (Model::Detuned, Some(d)) => {
                return Err(Error::InvalidParams(format!(
                    "detuned model needs delta > 0 (got {d})"
                )))
            }
            (Model::Detuned, None) => {
                return Err(Error::InvalidParams("detuned model needs delta".into()))
            }
            (Model::Resonant, _) => {}
        }
        Basis::new(self.n_max)?;
        Ok(())
    }

    /// Flags drives that are not weak compared with the cavity coupling
    /// (and, for the detuned model, with the detuning).
    pub fn regime(&self) -> RegimeAdvisory {
        let mut notes = Vec::new();
        if self.omega > 0.1 * self.g {
            notes.push(format!(
                "omega/g = {:.4} exceeds 0.1; Zeno confinement will be poor",
                self.omega / self.g
            ));
        }
        if let (Model::Detuned, Some(delta)) = (self.model, self.delta) {
            if self.omega > 0.1 * delta {
                notes.push(format!(
                    "omega/delta = {:.4} exceeds 0.1; adiabatic elimination will be poor",
                    self.omega / delta
                ));
            }
        }
        if notes.is_empty() {
            RegimeAdvisory::Ok
        } else {
            RegimeAdvisory::Warn(notes.join("; "))
        }
    }
}

/// Dense operator on the enumerated basis.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    entries: DMatrix<C64>,
    hermitian_hint: bool,
}

impl OperatorMatrix {
    /// Wraps a matrix; a `hermitian_hint` is checked against [`HERMITIAN_TOL`].
    pub fn new(entries: DMatrix<C64>, hermitian_hint: bool) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::DimensionMismatch {
                expected: entries.nrows(),
                found: entries.ncols(),
            });
        }
        if hermitian_hint {
            linalg::ensure_hermitian(&entries, HERMITIAN_TOL)?;
        }
        Ok(Self {
            entries,
            hermitian_hint,
        })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            entries: DMatrix::zeros(dim, dim),
            hermitian_hint: true,
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<C64> {
        &self.entries
    }

    pub fn into_entries(self) -> DMatrix<C64> {
        self.entries
    }

    pub fn hermitian_hint(&self) -> bool {
        self.hermitian_hint
    }

    pub fn hermitian_deviation(&self) -> f64 {
        linalg::hermitian_deviation(&self.entries)
    }

    pub fn element(&self, basis: &Basis, bra: &BasisState, ket: &BasisState) -> Result<C64> {
        self.check_basis(basis)?;
        Ok(self.entries[(basis.index_of(bra)?, basis.index_of(ket)?)])
    }

    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        if psi.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: psi.dim(),
            });
        }
        Ok(StateVector::from_amplitudes(&self.entries * &psi.amplitudes))
    }

    /// Entrywise sum; the result is Hermitian-hinted only if both terms are.
    pub fn sum(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(OperatorMatrix {
            entries: &self.entries + &other.entries,
            hermitian_hint: self.hermitian_hint && other.hermitian_hint,
        })
    }

    /// Submatrix on a list of basis indices (rows and columns in that order).
    pub fn restrict(&self, indices: &[usize]) -> DMatrix<C64> {
        let n = indices.len();
        DMatrix::from_fn(n, n, |r, c| self.entries[(indices[r], indices[c])])
    }

    fn check_basis(&self, basis: &Basis) -> Result<()> {
        if basis.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: basis.dim(),
            });
        }
        Ok(())
    }
}

fn hermitian_from_pairs(dim: usize, pairs: impl Iterator<Item = (usize, usize, f64)>) -> DMatrix<C64> {
    let mut m = DMatrix::zeros(dim, dim);
    for (row, col, value) in pairs {
        m[(row, col)] += C64::new(value, 0.0);
        m[(col, row)] += C64::new(value, 0.0);
    }
    m
}

/// Atom-cavity exchange with uniform coupling `g` and bosonic `sqrt(n)`
/// factors.
pub fn build_cavity_coupling(p: &ModelParams) -> Result<OperatorMatrix> {
    p.validate()?;
    let basis = p.basis()?;
    let mut pairs = Vec::new();
    for (col, s) in basis.iter().enumerate() {
        for atom in 0..3 {
            // a_L |e0><gL|_k : absorb a left photon.
            if s.levels[atom] == AtomLevel::GL && s.n_left >= 1 {
                let mut t = s.with_level(atom, AtomLevel::E0);
                t.n_left -= 1;
                pairs.push((basis.index_of(&t)?, col, p.g * (s.n_left as f64).sqrt()));
            }
            if s.levels[atom] == AtomLevel::GR && s.n_right >= 1 {
                let mut t = s.with_level(atom, AtomLevel::E0);
                t.n_right -= 1;
                pairs.push((basis.index_of(&t)?, col, p.g * (s.n_right as f64).sqrt()));
            }
        }
    }
    OperatorMatrix::new(hermitian_from_pairs(basis.dim(), pairs.into_iter()), true)
}

/// Classical drive on atom 1's `g0 <-> e0` transition.
pub fn build_laser(p: &ModelParams) -> Result<OperatorMatrix> {
    p.validate()?;
    let basis = p.basis()?;
    let mut pairs = Vec::new();
    for (col, s) in basis.iter().enumerate() {
        if s.levels[0] == AtomLevel::G0 {
            let t = s.with_level(0, AtomLevel::E0);
            pairs.push((basis.index_of(&t)?, col, p.omega));
        }
    }
    OperatorMatrix::new(hermitian_from_pairs(basis.dim(), pairs.into_iter()), true)
}

pub fn build_detuning(p: &ModelParams) -> Result<OperatorMatrix> {
    p.validate()?;
    if p.model != Model::Detuned {
        return Err(Error::ModelMismatch {
            expected: Model::Detuned,
            found: p.model,
        });
    }
    let delta = p.delta.expect("validated detuned params carry delta");
    let basis = p.basis()?;
    let diag = DVector::from_iterator(
        basis.dim(),
        basis.iter().map(|s| C64::new(delta * s.excited_count() as f64, 0.0)),
    );
    OperatorMatrix::new(DMatrix::from_diagonal(&diag), true)
}

pub fn build_total(p: &ModelParams) -> Result<OperatorMatrix> {
    let h = build_cavity_coupling(p)?.sum(&build_laser(p)?)?;
    match p.model {
        Model::Resonant => Ok(h),
        Model::Detuned => h.sum(&build_detuning(p)?),
    }
}

/// Diagonal of the decay operator `D` (so `H_cond = H_total - i D`).
pub fn dissipator_diagonal(p: &ModelParams) -> Result<DVector<f64>> {
    p.validate()?;
    let basis = p.basis()?;
    let (atomic, cavity) = match p.dissipator {
        DissipatorConvention::Conventional => (p.gamma / 2.0, p.kappa / 2.0),
        DissipatorConvention::Literal => (p.gamma, 1.5 * p.kappa),
    };
    Ok(DVector::from_iterator(
        basis.dim(),
        basis
            .iter()
            .map(|s| atomic * s.excited_count() as f64 + cavity * s.photon_count() as f64),
    ))
}

pub fn build_conditional(p: &ModelParams) -> Result<OperatorMatrix> {
    let mut entries = build_total(p)?.into_entries();
    let decay = dissipator_diagonal(p)?;
    for (i, d) in decay.iter().enumerate() {
        entries[(i, i)] -= C64::new(0.0, *d);
    }
    let hermitian = decay.iter().all(|&d| d == 0.0);
    OperatorMatrix::new(entries, hermitian)
}

/// Diagonal excitation-number operator `N = sum_k |e0><e0|_k + a_L^dagger a_L + a_R^dagger a_R`.
pub fn excitation_operator(basis: &Basis) -> OperatorMatrix {
    let diag = DVector::from_iterator(
        basis.dim(),
        basis.iter().map(|s| C64::new(excitation_number(&s) as f64, 0.0)),
    );
    OperatorMatrix {
        entries: DMatrix::from_diagonal(&diag),
        hermitian_hint: true,
    }
}
