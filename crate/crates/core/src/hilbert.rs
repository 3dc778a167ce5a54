//! Truncated product space of three four-level atoms and two cavity modes.
//!
//! Flat index layout (row-major over the tuple `(l1, l2, l3, nL, nR)`):
//!
//! ```text
//! index = (((l1 * 4 + l2) * 4 + l3) * (n_max + 1) + nL) * (n_max + 1) + nR
//! ```
//!
//! with level order `gL = 0, gR = 1, g0 = 2, e0 = 3`. Atom-local operators
//! then act with a fixed stride, and the all-ground vacuum `(gL, gL, gL, 0, 0)`
//! sits at index 0.

use std::fmt;
use std::str::FromStr;

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::C64;

pub const NUM_ATOMS: usize = 3;
pub const NUM_LEVELS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AtomLevel {
    GL,
    GR,
    G0,
    E0,
}

impl AtomLevel {
    pub const ALL: [AtomLevel; NUM_LEVELS] =
        [AtomLevel::GL, AtomLevel::GR, AtomLevel::G0, AtomLevel::E0];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i).copied()
    }

    pub fn is_excited(self) -> bool {
        self == AtomLevel::E0
    }

    pub fn label(self) -> &'static str {
        match self {
            AtomLevel::GL => "gL",
            AtomLevel::GR => "gR",
            AtomLevel::G0 => "g0",
            AtomLevel::E0 => "e0",
        }
    }
}

impl fmt::Display for AtomLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for AtomLevel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "gL" | "gl" => Ok(AtomLevel::GL),
            "gR" | "gr" => Ok(AtomLevel::GR),
            "g0" => Ok(AtomLevel::G0),
            "e0" => Ok(AtomLevel::E0),
            other => Err(format!("unknown atomic level `{other}`")),
        }
    }
}

/// One product configuration: three atomic levels and two photon numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisState {
    pub levels: [AtomLevel; NUM_ATOMS],
    pub n_left: usize,
    pub n_right: usize,
}

impl BasisState {
    pub const fn new(
        l1: AtomLevel,
        l2: AtomLevel,
        l3: AtomLevel,
        n_left: usize,
        n_right: usize,
    ) -> Self {
        Self {
            levels: [l1, l2, l3],
            n_left,
            n_right,
        }
    }

    /// Ground configuration with the cavity in vacuum.
    pub const fn vacuum(l1: AtomLevel, l2: AtomLevel, l3: AtomLevel) -> Self {
        Self::new(l1, l2, l3, 0, 0)
    }

    pub fn excited_count(&self) -> usize {
        self.levels.iter().filter(|l| l.is_excited()).count()
    }

    pub fn photon_count(&self) -> usize {
        self.n_left + self.n_right
    }

    /// Control atom in `{gR, g0}`, targets in `{gL, gR}`, cavity empty.
    pub fn is_computational(&self) -> bool {
        let [c, t1, t2] = self.levels;
        matches!(c, AtomLevel::GR | AtomLevel::G0)
            && matches!(t1, AtomLevel::GL | AtomLevel::GR)
            && matches!(t2, AtomLevel::GL | AtomLevel::GR)
            && self.photon_count() == 0
    }

    pub fn with_level(mut self, atom: usize, level: AtomLevel) -> Self {
        self.levels[atom] = level;
        self
    }
}

impl fmt::Display for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.levels;
        write!(f, "|{a},{b},{c};{}{}>", self.n_left, self.n_right)
    }
}

/// Excited atoms plus photons. Conserved by the cavity coupling.
pub fn excitation_number(s: &BasisState) -> usize {
    s.excited_count() + s.photon_count()
}

/// The enumerated basis for a given photon truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Basis {
    n_max: usize,
}

impl Basis {
    pub fn new(n_max: usize) -> Result<Self> {
        if n_max == 0 {
            return Err(Error::InvalidTruncation(n_max));
        }
        Ok(Self { n_max })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    fn modes(&self) -> usize {
        self.n_max + 1
    }

    pub fn dim(&self) -> usize {
        NUM_LEVELS.pow(NUM_ATOMS as u32) * self.modes() * self.modes()
    }

    pub fn contains(&self, s: &BasisState) -> bool {
        s.n_left <= self.n_max && s.n_right <= self.n_max
    }

    pub fn index_of(&self, s: &BasisState) -> Result<usize> {
        if !self.contains(s) {
            return Err(Error::OccupancyOutOfRange {
                n_left: s.n_left,
                n_right: s.n_right,
                n_max: self.n_max,
            });
        }
        let [l1, l2, l3] = s.levels.map(AtomLevel::index);
        let m = self.modes();
        Ok((((l1 * NUM_LEVELS + l2) * NUM_LEVELS + l3) * m + s.n_left) * m + s.n_right)
    }

    /// Inverse of [`Basis::index_of`]. Panics if `index >= dim`.
    pub fn state_at(&self, index: usize) -> BasisState {
        assert!(index < self.dim(), "basis index {index} out of range");
        let m = self.modes();
        let n_right = index % m;
        let rest = index / m;
        let n_left = rest % m;
        let rest = rest / m;
        let l3 = rest % NUM_LEVELS;
        let rest = rest / NUM_LEVELS;
        let l2 = rest % NUM_LEVELS;
        let l1 = rest / NUM_LEVELS;
        let level = |i| AtomLevel::from_index(i).expect("level index < 4");
        BasisState::new(level(l1), level(l2), level(l3), n_left, n_right)
    }

    pub fn iter(&self) -> impl Iterator<Item = BasisState> + '_ {
        (0..self.dim()).map(move |i| self.state_at(i))
    }

    /// Unit vector on a single basis configuration.
    pub fn ket(&self, s: &BasisState) -> Result<StateVector> {
        let mut v = StateVector::zeros(self.dim());
        v.amplitudes[self.index_of(s)?] = C64::new(1.0, 0.0);
        Ok(v)
    }
}

/// All `64 (n_max + 1)^2` configurations in canonical index order.
pub fn enumerate_basis(n_max: usize) -> Result<Vec<BasisState>> {
    let basis = Basis::new(n_max)?;
    Ok(basis.iter().collect())
}

pub fn state_from_labels(
    basis: &Basis,
    l1: AtomLevel,
    l2: AtomLevel,
    l3: AtomLevel,
    n_left: usize,
    n_right: usize,
) -> Result<StateVector> {
    basis.ket(&BasisState::new(l1, l2, l3, n_left, n_right))
}

/// Complex amplitude vector over an enumerated basis (or over the coordinates
/// of a closed subspace).
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    pub amplitudes: DVector<C64>,
}

impl StateVector {
    pub fn zeros(dim: usize) -> Self {
        Self {
            amplitudes: DVector::zeros(dim),
        }
    }

    pub fn from_amplitudes(amplitudes: DVector<C64>) -> Self {
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn norm_sq(&self) -> f64 {
        self.amplitudes.norm_squared()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm() - 1.0).abs() <= 1e-10
    }

    pub fn normalized(&self) -> Self {
        Self {
            amplitudes: self.amplitudes.unscale(self.norm()),
        }
    }

    /// `<self|other>`, antilinear in `self`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    pub fn overlap_sq(&self, other: &StateVector) -> Result<f64> {
        self.inner(other).map(|z| z.norm_sqr())
    }

    pub fn distance(&self, other: &StateVector) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok((&self.amplitudes - &other.amplitudes).norm())
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            amplitudes: self.amplitudes.map(|z| z * factor),
        }
    }

    pub fn add(&self, other: &StateVector) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(Self {
            amplitudes: &self.amplitudes + &other.amplitudes,
        })
    }

    /// Indices carrying an amplitude of magnitude above `tol`.
    pub fn support(&self, tol: f64) -> Vec<usize> {
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(_, z)| z.norm() > tol)
            .map(|(i, _)| i)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use AtomLevel::*;

    #[test]
    fn basis_sizes() {
        assert_eq!(enumerate_basis(1).unwrap().len(), 256);
        assert_eq!(enumerate_basis(2).unwrap().len(), 576);
        assert_eq!(Basis::new(3).unwrap().dim(), 1024);
    }

    #[test]
    fn zero_truncation_rejected() {
        assert_eq!(enumerate_basis(0), Err(Error::InvalidTruncation(0)));
    }

    #[test]
    fn first_state_is_all_gl_vacuum() {
        let states = enumerate_basis(1).unwrap();
        assert_eq!(states[0], BasisState::vacuum(GL, GL, GL));
        let basis = Basis::new(1).unwrap();
        assert_eq!(basis.index_of(&BasisState::vacuum(GL, GL, GL)).unwrap(), 0);
    }

    #[test]
    fn index_round_trip() {
        for n_max in 1..=3 {
            let basis = Basis::new(n_max).unwrap();
            for (i, s) in enumerate_basis(n_max).unwrap().iter().enumerate() {
                assert_eq!(basis.index_of(s).unwrap(), i);
            }
        }
    }

    #[test]
    fn explicit_index_formula() {
        let basis = Basis::new(2).unwrap();
        let s = BasisState::new(G0, E0, GR, 1, 2);
        assert_eq!(basis.index_of(&s).unwrap(), (((2 * 4 + 3) * 4 + 1) * 3 + 1) * 3 + 2);
    }

    #[test]
    fn labelled_states() {
        let basis = Basis::new(1).unwrap();
        let phi1 = state_from_labels(&basis, G0, GL, GR, 0, 0).unwrap();
        let idx = basis.index_of(&BasisState::vacuum(G0, GL, GR)).unwrap();
        assert_eq!(phi1.amplitudes[idx], C64::new(1.0, 0.0));
        assert!((phi1.norm() - 1.0).abs() < 1e-15);

        let phi3 = state_from_labels(&basis, GL, GL, GR, 1, 0).unwrap();
        assert_eq!(phi3.support(0.0), vec![basis.index_of(&BasisState::new(GL, GL, GR, 1, 0)).unwrap()]);
        assert!(phi3.is_normalized());
    }

    #[test]
    fn occupancy_out_of_range() {
        let basis = Basis::new(1).unwrap();
        let err = state_from_labels(&basis, GL, GL, GL, 2, 0).unwrap_err();
        assert!(matches!(err, Error::OccupancyOutOfRange { n_left: 2, .. }));
    }

    #[test]
    fn excitation_numbers() {
        assert_eq!(excitation_number(&BasisState::vacuum(E0, GL, GR)), 1);
        assert_eq!(excitation_number(&BasisState::vacuum(GR, GL, GL)), 0);
        assert_eq!(excitation_number(&BasisState::new(GL, GR, GL, 1, 0)), 1);
        for s in enumerate_basis(2).unwrap() {
            let e0 = s.levels.iter().filter(|&&l| l == E0).count();
            assert_eq!(excitation_number(&s), e0 + s.n_left + s.n_right);
        }
    }

    #[test]
    fn level_parsing() {
        for l in AtomLevel::ALL {
            assert_eq!(l.label().parse::<AtomLevel>().unwrap(), l);
        }
        assert!("x".parse::<AtomLevel>().is_err());
    }
}
