//! Counting and enumerating lattice occupancies tensored with the
//! excitation grading of the weak-field model.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Cavity field kept: photon number and atomic excitation both tracked.
    Full,
    /// Cavity field adiabatically eliminated: only atomic excitation remains.
    BadCavity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StateSpaceSpec {
    pub n_atoms: u64,
    pub n_sites: u64,
    pub mode: Mode,
}

impl StateSpaceSpec {
    pub fn new(n_atoms: u64, n_sites: u64, mode: Mode) -> Result<Self> {
        if n_sites < 1 {
            return Err(Error::InvalidParameter {
                field: "n_sites",
                reason: "must be >= 1".into(),
            });
        }
        Ok(Self {
            n_atoms,
            n_sites,
            mode,
        })
    }

    /// Largest number of excitations kept in the weak-field truncation.
    pub fn e_max(&self) -> u64 {
        self.n_atoms.min(2)
    }

    /// Number of internal/field states per lattice configuration.
    pub fn trajectory_multiplier(&self) -> u64 {
        match self.mode {
            // Photon/excitation pairs (n, m) with n + m <= 2 and m <= N.
            Mode::Full => match self.n_atoms {
                0 => 3,
                1 => 5,
                _ => 6,
            },
            Mode::BadCavity => self.e_max() + 1,
        }
    }
}

/// One occupation-number vector (n₁, …, n_L).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OccupancyConfig(pub Vec<u64>);

impl OccupancyConfig {
    pub fn n_atoms(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn n_sites(&self) -> usize {
        self.0.len()
    }
}

impl std::fmt::Display for OccupancyConfig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for n in &self.0 {
            write!(f, "{n}")?;
        }
        Ok(())
    }
}

/// Bose-Hubbard dimension (N + L − 1)! / (N! (L − 1)!).
pub fn bose_hubbard_count(n_atoms: u64, n_sites: u64) -> Result<u64> {
    if n_sites < 1 {
        return Err(Error::InvalidParameter {
            field: "n_sites",
            reason: "must be >= 1".into(),
        });
    }
    let overflow = || Error::CountOverflow { n_atoms, n_sites };
    let top = n_atoms.checked_add(n_sites - 1).ok_or_else(overflow)?;
    let k = n_atoms.min(n_sites - 1);
    // Running product stays an exact binomial after each division.
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        acc = acc
            .checked_mul(top as u128 - k as u128 + i)
            .ok_or_else(overflow)?
            / i;
    }
    u64::try_from(acc).map_err(|_| overflow())
}

/// Total basis size using the printed formulas:
/// `multiplier × S_BH` with multiplier 6 (5 for one atom) in full mode and
/// `e_max + 1` in bad-cavity mode.
pub fn total_states(spec: &StateSpaceSpec) -> Result<u64> {
    let bh = bose_hubbard_count(spec.n_atoms, spec.n_sites)?;
    bh.checked_mul(spec.trajectory_multiplier())
        .ok_or(Error::CountOverflow {
            n_atoms: spec.n_atoms,
            n_sites: spec.n_sites,
        })
}

/// Both readings of the bad-cavity count for multi-atom systems: the
/// `(e_max + 1) × S_BH` formula, and the smaller figure obtained if only a
/// single excitation is kept (e_max = 1), which is what a quoted "12" for
/// two atoms on three sites corresponds to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BadCavityCounts {
    pub formula: u64,
    pub single_excitation: u64,
}

pub fn bad_cavity_counts(n_atoms: u64, n_sites: u64) -> Result<BadCavityCounts> {
    let spec = StateSpaceSpec::new(n_atoms, n_sites, Mode::BadCavity)?;
    let bh = bose_hubbard_count(n_atoms, n_sites)?;
    Ok(BadCavityCounts {
        formula: total_states(&spec)?,
        single_excitation: bh * (n_atoms.min(1) + 1),
    })
}

/// All occupancies of N bosons on L sites, lexicographically descending.
pub fn enumerate_configs(n_atoms: u64, n_sites: u64) -> Result<Vec<OccupancyConfig>> {
    let count = bose_hubbard_count(n_atoms, n_sites)?;
    let mut out = Vec::with_capacity(count as usize);
    let mut current = vec![0; n_sites as usize];
    fill(&mut current, 0, n_atoms, &mut out);
    Ok(out)
}

fn fill(current: &mut [u64], site: usize, remaining: u64, out: &mut Vec<OccupancyConfig>) {
    if site + 1 == current.len() {
        current[site] = remaining;
        out.push(OccupancyConfig(current.to_vec()));
        return;
    }
    for n in (0..=remaining).rev() {
        current[site] = n;
        fill(current, site + 1, remaining - n, out);
    }
    current[site] = 0;
}

/// Number of amplitudes in the two-atom, three-site weak-field model.
pub const APPENDIX_DIM: usize = 36;
const APPENDIX_CONFIGS: usize = 6;

/// Position of a two-atom occupancy on three sites in
/// `enumerate_configs(2, 3)` order.
pub fn appendix_config_position(config: &OccupancyConfig) -> Result<usize> {
    match config.0.as_slice() {
        [2, 0, 0] => Ok(0),
        [1, 1, 0] => Ok(1),
        [1, 0, 1] => Ok(2),
        [0, 2, 0] => Ok(3),
        [0, 1, 1] => Ok(4),
        [0, 0, 2] => Ok(5),
        _ => Err(Error::OutOfRange(format!(
            "configuration {config} is not two atoms on three sites"
        ))),
    }
}

/// Flat index of `ⁿC_config^{k e}` in the 36-amplitude model.
///
/// Sector-major: ground (0..6), first excitation (6..18), second (18..36);
/// inside a sector, photon number descending, then configuration order.
pub fn appendix_index(n_photons: u64, config: &OccupancyConfig, n_excited: u64) -> Result<usize> {
    let sector = n_photons + n_excited;
    if sector > 2 {
        return Err(Error::OutOfRange(format!(
            "n_photons + n_excited = {sector} exceeds 2"
        )));
    }
    let pos = appendix_config_position(config)?;
    let sector = sector as usize;
    let offset = APPENDIX_CONFIGS * sector * (sector + 1) / 2;
    Ok(offset + (sector - n_photons as usize) * APPENDIX_CONFIGS + pos)
}

/// Inverse of [`appendix_index`]: `(n_photons, config, n_excited)`.
pub fn appendix_entry(index: usize) -> Result<(u64, OccupancyConfig, u64)> {
    if index >= APPENDIX_DIM {
        return Err(Error::OutOfRange(format!(
            "index {index} >= {APPENDIX_DIM}"
        )));
    }
    let (sector, offset) = match index {
        0..=5 => (0, 0),
        6..=17 => (1, 6),
        _ => (2, 18),
    };
    let within = index - offset;
    let n_excited = (within / APPENDIX_CONFIGS) as u64;
    let configs = enumerate_configs(2, 3)?;
    Ok((
        sector - n_excited,
        configs[within % APPENDIX_CONFIGS].clone(),
        n_excited,
    ))
}
