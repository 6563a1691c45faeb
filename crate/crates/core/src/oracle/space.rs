//! Truncated two-qubit ⊗ multimode Fock basis.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Default upper bound on the basis dimension.
pub const DEFAULT_DIMENSION_CAP: usize = 1_000_000;

/// Two-qubit sector index `2·a + b` with `g = 0`, `e = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sector {
    /// Both qubits in the ground state.
    Gg = 0,
    /// A ground, B excited.
    Ge = 1,
    /// A excited, B ground.
    Eg = 2,
    /// Both excited.
    Ee = 3,
}

impl Sector {
    /// All sectors in basis order.
    pub const ALL: [Sector; 4] = [Sector::Gg, Sector::Ge, Sector::Eg, Sector::Ee];

    /// Index in `0..4`.
    pub fn index(self) -> usize {
        self as usize
    }

    /// Sector from its index.
    pub fn from_index(i: usize) -> Sector {
        Sector::ALL[i & 3]
    }

    /// Qubit A is excited.
    pub fn a_excited(self) -> bool {
        self.index() & 2 != 0
    }

    /// Qubit B is excited.
    pub fn b_excited(self) -> bool {
        self.index() & 1 != 0
    }
}

/// Number of multisets of size `p` drawn from `n` kinds, `C(n + p − 1, p)`,
/// or `None` on overflow.
fn multisets(n: usize, p: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for i in 0..p {
        acc = acc.checked_mul(n + i)? / (i + 1);
    }
    Some(acc)
}

/// Basis of `(qubit A, qubit B, Fock configuration)` with at most `n_max`
/// photons in total.
///
/// A Fock configuration is the sorted list of occupied mode indices, with
/// repetition: `[0, 0, 3]` is two photons in mode 0 and one in mode 3.
/// Configurations are ordered by photon number, then lexicographically on
/// that list. The full index is `sector · n_fock + fock_index`.
#[derive(Debug, Clone)]
pub struct TruncatedHilbertSpace {
    n_modes: usize,
    n_max: usize,
    configs: Vec<Vec<u32>>,
    lookup: BTreeMap<Vec<u32>, usize>,
}

impl TruncatedHilbertSpace {
    /// Builds the basis, refusing dimensions above `cap`.
    pub fn new(n_modes: usize, n_max: usize, cap: usize) -> Result<Self> {
        if n_modes == 0 {
            return Err(Error::InvalidParameter("n_modes must be >= 1"));
        }
        let dimension = Self::dimension_for(n_modes, n_max);
        match dimension {
            Some(d) if d <= cap => {}
            _ => {
                return Err(Error::DimensionOverflow {
                    dimension: dimension.unwrap_or(usize::MAX),
                    cap,
                })
            }
        }
        let mut configs: Vec<Vec<u32>> = Vec::new();
        configs.push(Vec::new());
        let mut layer: Vec<Vec<u32>> = alloc::vec![Vec::new()];
        for _ in 0..n_max {
            let mut next = Vec::new();
            for cfg in &layer {
                let start = cfg.last().copied().unwrap_or(0);
                for k in start..n_modes as u32 {
                    let mut c = cfg.clone();
                    c.push(k);
                    next.push(c);
                }
            }
            configs.extend(next.iter().cloned());
            layer = next;
        }
        let lookup = configs.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        Ok(Self { n_modes, n_max, configs, lookup })
    }

    /// `4 · Σ_{p ≤ n_max} C(n_modes + p − 1, p)`, or `None` on overflow.
    pub fn dimension_for(n_modes: usize, n_max: usize) -> Option<usize> {
        let mut fock: usize = 0;
        for p in 0..=n_max {
            fock = fock.checked_add(multisets(n_modes, p)?)?;
        }
        fock.checked_mul(4)
    }

    /// Number of field modes.
    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    /// Photon-number cap.
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Number of Fock configurations.
    pub fn n_fock(&self) -> usize {
        self.configs.len()
    }

    /// Total dimension.
    pub fn dimension(&self) -> usize {
        4 * self.configs.len()
    }

    /// Fock configuration by index.
    pub fn config(&self, fock_index: usize) -> &[u32] {
        &self.configs[fock_index]
    }

    /// All Fock configurations in basis order.
    pub fn configs(&self) -> &[Vec<u32>] {
        &self.configs
    }

    /// Index of a sorted Fock configuration.
    pub fn fock_index(&self, config: &[u32]) -> Option<usize> {
        self.lookup.get(config).copied()
    }

    /// Full basis index.
    pub fn index(&self, sector: Sector, fock_index: usize) -> usize {
        sector.index() * self.configs.len() + fock_index
    }

    /// Splits a full basis index into sector and Fock index.
    pub fn split(&self, index: usize) -> (Sector, usize) {
        let n = self.configs.len();
        (Sector::from_index(index / n), index % n)
    }

    /// Index of `|sector⟩ ⊗ |0⟩`.
    pub fn vacuum(&self, sector: Sector) -> usize {
        self.index(sector, 0)
    }

    /// Index of `|sector⟩ ⊗ |1_k⟩`.
    pub fn one_photon(&self, sector: Sector, mode: usize) -> Option<usize> {
        if self.n_max == 0 || mode >= self.n_modes {
            return None;
        }
        Some(self.index(sector, 1 + mode))
    }
}
