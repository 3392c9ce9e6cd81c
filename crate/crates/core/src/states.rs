//! Generalized W-class (GW) states, their partially coherent superpositions
//! with the vacuum, partitions of the sites into parties, and party weights.
//!
//! Sites are 0-based; excitation levels run over `1..d`. State and partition
//! files are TOML:
//!
//! ```toml
//! # state
//! d = 2
//! n = 3
//! [[coeff]]
//! site = 0
//! level = 1
//! re = 0.408248290463863
//! im = 0.0          # optional
//! ```
//!
//! ```toml
//! # partition
//! parties = [[0], [1], [2, 3]]
//! traced = [4]      # optional; must equal the sites not in any party
//! ```

use std::collections::BTreeSet;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, StateVector, DIM_CAP, MAX_MATRIX_ENTRIES};

pub const NORM_TOL: f64 = 1e-12;

/// Coefficient table `b_{is}` of a GW state on `n` sites of dimension `d`.
#[derive(Clone, Debug, PartialEq)]
pub struct GwSpec {
    d: usize,
    n: usize,
    // row-major over (site, level - 1)
    coeffs: Vec<C64>,
}

impl GwSpec {
    /// Builds and validates a spec from `(site, level, amplitude)` entries.
    /// Entries not listed are zero; repeated entries are rejected.
    pub fn new(d: usize, n: usize, entries: &[(usize, usize, C64)]) -> Result<Self> {
        let spec = Self::unchecked(d, n, entries)?;
        spec.validate()?;
        Ok(spec)
    }

    fn unchecked(d: usize, n: usize, entries: &[(usize, usize, C64)]) -> Result<Self> {
        if d < 2 {
            return Err(Error::Validation(format!("level count d = {d} must be >= 2")));
        }
        if n < 2 {
            return Err(Error::Validation(format!("site count n = {n} must be >= 2")));
        }
        let mut coeffs = vec![C64::new(0.0, 0.0); n * (d - 1)];
        let mut seen = BTreeSet::new();
        for &(site, level, b) in entries {
            if site >= n {
                return Err(Error::Validation(format!("site {site} out of range 0..{n}")));
            }
            if level == 0 || level >= d {
                return Err(Error::Validation(format!("level {level} out of range 1..{d}")));
            }
            if !seen.insert((site, level)) {
                return Err(Error::Validation(format!(
                    "duplicate coefficient for site {site}, level {level}"
                )));
            }
            coeffs[site * (d - 1) + level - 1] = b;
        }
        Ok(GwSpec { d, n, coeffs })
    }

    /// Real single-level (`d = 2`) W-class state with amplitudes `b[i]` on site `i`.
    pub fn w_class(b: &[f64]) -> Result<Self> {
        let entries: Vec<_> = b
            .iter()
            .enumerate()
            .map(|(i, &x)| (i, 1, C64::new(x, 0.0)))
            .collect();
        Self::new(2, b.len(), &entries)
    }

    /// Builds a spec from a raw table without the normalization check.
    /// Used by random generators that normalize afterwards.
    pub(crate) fn from_table(d: usize, n: usize, coeffs: Vec<C64>) -> Self {
        debug_assert_eq!(coeffs.len(), n * (d - 1));
        GwSpec { d, n, coeffs }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `b_{site, level}` with `level` in `1..d`.
    pub fn coeff(&self, site: usize, level: usize) -> C64 {
        self.coeffs[site * (self.d - 1) + level - 1]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|b| b.norm_sqr()).sum()
    }

    /// `sum_s |b_{site, s}|^2`.
    pub fn site_weight(&self, site: usize) -> f64 {
        (1..self.d).map(|s| self.coeff(site, s).norm_sqr()).sum()
    }

    pub fn validate(&self) -> Result<()> {
        let norm = self.norm_sqr();
        let deficit = 1.0 - norm;
        if deficit.abs() > NORM_TOL {
            return Err(Error::Validation(format!(
                "coefficients have squared norm {norm:.15} (deficit {deficit:.3e})"
            )));
        }
        Ok(())
    }

    /// Hilbert-space dimension `d^n`, checked against the cap.
    pub fn dimension(&self) -> Result<usize> {
        let mut total: usize = 1;
        for _ in 0..self.n {
            total = total.saturating_mul(self.d);
            if total > DIM_CAP {
                return Err(Error::Size {
                    what: "GW state dimension",
                    got: total,
                    cap: DIM_CAP,
                });
            }
        }
        Ok(total)
    }

    /// Basis index of level `s` on `site` with every other site in `|0>`.
    pub fn basis_index(&self, site: usize, level: usize) -> usize {
        level * self.d.pow((self.n - 1 - site) as u32)
    }

    pub fn parse_toml(text: &str) -> Result<Self> {
        let file: StateFile = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let entries: Vec<_> = file
            .coeff
            .iter()
            .map(|c| (c.site, c.level, C64::new(c.re, c.im)))
            .collect();
        Self::new(file.d, file.n, &entries)
    }

    pub fn to_toml(&self) -> String {
        let mut coeff = Vec::new();
        for site in 0..self.n {
            for level in 1..self.d {
                let b = self.coeff(site, level);
                if b.norm_sqr() > 0.0 {
                    coeff.push(CoeffEntry {
                        site,
                        level,
                        re: b.re,
                        im: b.im,
                    });
                }
            }
        }
        let file = StateFile {
            d: self.d,
            n: self.n,
            coeff,
        };
        toml::to_string(&file).expect("state file serializes")
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateFile {
    d: usize,
    n: usize,
    #[serde(default)]
    coeff: Vec<CoeffEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoeffEntry {
    site: usize,
    level: usize,
    re: f64,
    #[serde(default)]
    im: f64,
}

/// Partially coherent superposition of a GW state with the vacuum.
#[derive(Clone, Debug, PartialEq)]
pub struct PcsSpec {
    pub base: GwSpec,
    /// weight of the GW component
    pub q: f64,
    /// coherency between the GW component and the vacuum
    pub lambda: f64,
}

impl PcsSpec {
    pub fn new(base: GwSpec, q: f64, lambda: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&q) {
            return Err(Error::Validation(format!("mixing weight q = {q} outside [0, 1]")));
        }
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::Validation(format!("coherency lambda = {lambda} outside [0, 1]")));
        }
        base.validate()?;
        Ok(PcsSpec { base, q, lambda })
    }
}

/// Ordered, disjoint parties over the sites of an `n`-site register.
/// Sites in no party are traced out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    n: usize,
    parties: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(n: usize, parties: Vec<Vec<usize>>) -> Result<Self> {
        if parties.is_empty() {
            return Err(Error::Validation("partition has no parties".into()));
        }
        let mut seen = BTreeSet::new();
        let mut normalized = Vec::with_capacity(parties.len());
        for (t, party) in parties.into_iter().enumerate() {
            if party.is_empty() {
                return Err(Error::Validation(format!("party {t} is empty")));
            }
            let mut sorted = party;
            sorted.sort_unstable();
            for &site in &sorted {
                if site >= n {
                    return Err(Error::Validation(format!(
                        "party {t} has site {site}, out of range 0..{n}"
                    )));
                }
                if !seen.insert(site) {
                    return Err(Error::Validation(format!("site {site} appears in two parties")));
                }
            }
            normalized.push(sorted);
        }
        Ok(Partition {
            n,
            parties: normalized,
        })
    }

    /// One party per site, nothing traced.
    pub fn singletons(n: usize) -> Self {
        Partition {
            n,
            parties: (0..n).map(|i| vec![i]).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parties(&self) -> &[Vec<usize>] {
        &self.parties
    }

    pub fn len(&self) -> usize {
        self.parties.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parties.is_empty()
    }

    /// Sorted union of all parties.
    pub fn retained(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.parties.iter().flatten().copied().collect();
        all.sort_unstable();
        all
    }

    pub fn traced(&self) -> Vec<usize> {
        let kept: BTreeSet<usize> = self.parties.iter().flatten().copied().collect();
        (0..self.n).filter(|s| !kept.contains(s)).collect()
    }

    pub fn parse_toml(text: &str, n: usize) -> Result<Self> {
        let file: PartitionFile = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let part = Self::new(n, file.parties)?;
        if let Some(mut traced) = file.traced {
            traced.sort_unstable();
            if traced != part.traced() {
                return Err(Error::Validation(format!(
                    "traced list {traced:?} does not match sites outside the parties {:?}",
                    part.traced()
                )));
            }
        }
        Ok(part)
    }

    pub fn to_toml(&self) -> String {
        let traced = self.traced();
        let file = PartitionFile {
            parties: self.parties.clone(),
            traced: (!traced.is_empty()).then_some(traced),
        };
        toml::to_string(&file).expect("partition file serializes")
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PartitionFile {
    parties: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    traced: Option<Vec<usize>>,
}

/// Summed squared coefficient moduli per party, `w_t = sum_{i in P_t} sum_s |b_is|^2`.
///
/// A partitioned GW state is again a GW state whose party `t` carries an
/// excitation of total weight `w_t`; every closed form in this crate is a
/// function of these weights.
#[derive(Clone, Debug, PartialEq)]
pub struct PartyWeights(Vec<f64>);

impl PartyWeights {
    pub fn new(w: Vec<f64>) -> Result<Self> {
        if let Some(x) = w.iter().find(|x| !x.is_finite() || **x < 0.0) {
            return Err(Error::domain(format!("party weight {x} is negative or not finite")));
        }
        let total: f64 = w.iter().sum();
        if total > 1.0 + NORM_TOL {
            return Err(Error::domain(format!("party weights sum to {total} > 1")));
        }
        Ok(PartyWeights(w))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, t: usize) -> f64 {
        self.0[t]
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }
}

pub fn validate_spec(spec: &GwSpec) -> Result<()> {
    spec.validate()
}

/// Amplitude vector of the GW state; site 0 is the most significant digit.
pub fn build_gw_vector(spec: &GwSpec) -> Result<StateVector> {
    spec.validate()?;
    let dim = spec.dimension()?;
    let mut amps = vec![C64::new(0.0, 0.0); dim];
    for site in 0..spec.n {
        for level in 1..spec.d {
            amps[spec.basis_index(site, level)] = spec.coeff(site, level);
        }
    }
    StateVector::new(vec![spec.d; spec.n], amps)
}

/// `q |W><W| + (1 - q) |0..0><0..0| + lambda sqrt(q (1 - q)) (|W><0..0| + h.c.)`.
pub fn build_pcs_density(spec: &PcsSpec) -> Result<ComplexMatrix> {
    let w = build_gw_vector(&spec.base)?;
    let dim = w.amps().len();
    if dim.saturating_mul(dim) > MAX_MATRIX_ENTRIES {
        return Err(Error::Size {
            what: "PCS density entries",
            got: dim.saturating_mul(dim),
            cap: MAX_MATRIX_ENTRIES,
        });
    }
    let q = spec.q;
    let coh = spec.lambda * (q * (1.0 - q)).sqrt();
    let mut rho = ComplexMatrix::outer(w.amps()).scale(C64::new(q, 0.0));
    rho[(0, 0)] += C64::new(1.0 - q, 0.0);
    // the GW vector has no vacuum component, so the coherences sit in row/column 0
    for (k, &a) in w.amps().iter().enumerate() {
        rho[(k, 0)] += a * coh;
        rho[(0, k)] += a.conj() * coh;
    }
    Ok(rho)
}

pub fn party_weights(spec: &GwSpec, part: &Partition) -> Result<PartyWeights> {
    if part.n() != spec.n() {
        return Err(Error::Validation(format!(
            "partition is over {} sites but the state has {}",
            part.n(),
            spec.n()
        )));
    }
    PartyWeights::new(
        part.parties()
            .iter()
            .map(|p| p.iter().map(|&i| spec.site_weight(i)).sum())
            .collect(),
    )
}

/// Reduced density matrix of `vec` on the sites in `keep`.
pub fn reduce_density(vec: &StateVector, keep: &[usize]) -> Result<ComplexMatrix> {
    if keep.is_empty() {
        return Err(Error::shape("cannot reduce onto an empty set of sites"));
    }
    linalg::reduce_pure(vec.amps(), vec.dims(), keep)
}
