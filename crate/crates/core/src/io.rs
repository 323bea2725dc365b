//! JSON wire formats: rings, codes, posets, set families, rank tables,
//! flag families, table pairs and bridge data. External labels are
//! 1-based; everything internal is 0-based. Subspace tables are keyed by
//! canonical lattice id (the position in the deterministic enumeration
//! order: ascending dimension, then basis entries).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{Matrix, Ring, Subspace, SubspaceLattice};
use crate::demimatroid::DemiMatroid;
use crate::demipolymatroid::{DemiPolymatroid, QMatroid, SubspaceFamily};
use crate::error::{invalid, Caps, Result};
use crate::galois::{BridgeTuple, GaloisPair};
use crate::hamming::LinearCode;
use crate::metric_codes::{ChainRingCode, CodeFlagFamily};
use crate::poset::{Poset, SetFamily};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum RingDto {
    #[serde(rename = "field")]
    Field { p: u64, e: u32 },
    #[serde(rename = "chain-ring")]
    ChainRing { p: u64, s: u32 },
}

impl RingDto {
    pub fn to_ring(&self) -> Result<Ring> {
        match *self {
            RingDto::Field { p, e } => Ring::field(p, e),
            RingDto::ChainRing { p, s } => Ring::chain(p, s),
        }
    }

    pub fn from_ring(ring: &Ring) -> RingDto {
        if ring.is_field() {
            RingDto::Field {
                p: ring.prime(),
                e: ring.exponent(),
            }
        } else {
            RingDto::ChainRing {
                p: ring.prime(),
                s: ring.exponent(),
            }
        }
    }
}

/// {"ring": ..., "m": ..., "generator": [[...], ...]} for codes over
/// either ring kind.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CodeDto {
    pub ring: RingDto,
    pub m: usize,
    pub generator: Vec<Vec<u64>>,
}

impl CodeDto {
    pub fn to_linear_code(&self) -> Result<LinearCode> {
        LinearCode::new(self.ring.to_ring()?, self.m, &self.generator)
    }

    pub fn to_chain_ring_code(&self) -> Result<ChainRingCode> {
        ChainRingCode::new(self.ring.to_ring()?, self.m, &self.generator)
    }

    pub fn from_linear_code(code: &LinearCode) -> CodeDto {
        CodeDto {
            ring: RingDto::from_ring(code.ring()),
            m: code.length(),
            generator: code.generator().basis().row_vecs(),
        }
    }

    pub fn from_chain_ring_code(code: &ChainRingCode) -> CodeDto {
        CodeDto {
            ring: RingDto::from_ring(code.ring()),
            m: code.length(),
            generator: code.module().basis().row_vecs(),
        }
    }
}

/// {"n": ..., "cover_pairs": [[a, b], ...]} with 1-based labels; the
/// transitive closure is taken on load and cycles are rejected.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PosetDto {
    pub n: usize,
    pub cover_pairs: Vec<(usize, usize)>,
}

impl PosetDto {
    pub fn to_poset(&self) -> Result<Poset> {
        let mut pairs = Vec::with_capacity(self.cover_pairs.len());
        for &(a, b) in &self.cover_pairs {
            if a == 0 || b == 0 || a > self.n || b > self.n {
                return invalid("poset labels are 1-based and must not exceed n");
            }
            pairs.push((a - 1, b - 1));
        }
        Poset::from_pairs(self.n, &pairs)
    }
}

/// {"m": ..., "w": ..., "f": [2^m integers in subset-bitmask order]}.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DemiMatroidDto {
    pub m: usize,
    pub w: i64,
    pub f: Vec<i64>,
}

impl DemiMatroidDto {
    pub fn to_demimatroid(&self) -> Result<DemiMatroid> {
        DemiMatroid::new(self.m, self.w, self.f.clone())
    }

    pub fn from_demimatroid(dm: &DemiMatroid) -> DemiMatroidDto {
        DemiMatroidDto {
            m: dm.ground_size(),
            w: dm.w(),
            f: dm.table().to_vec(),
        }
    }
}

/// {"m": ..., "members": [[1,3], [2], ...]} with 1-based element lists.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SetFamilyDto {
    pub m: usize,
    pub members: Vec<Vec<usize>>,
}

impl SetFamilyDto {
    pub fn to_family(&self) -> Result<SetFamily> {
        let mut masks = Vec::with_capacity(self.members.len());
        for member in &self.members {
            let mut mask = 0u64;
            for &e in member {
                if e == 0 || e > self.m {
                    return invalid("family elements are 1-based and must not exceed m");
                }
                mask |= 1 << (e - 1);
            }
            masks.push(mask);
        }
        SetFamily::new(self.m, masks)
    }
}

/// {"ring": ..., "n": ..., "w": ..., "f": {"<id>": value, ...}} with ids
/// in the canonical lattice order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolymatroidDto {
    pub ring: RingDto,
    pub n: usize,
    pub w: i64,
    pub f: BTreeMap<String, i64>,
}

impl PolymatroidDto {
    pub fn to_polymatroid(&self, caps: &Caps) -> Result<DemiPolymatroid> {
        let ring = self.ring.to_ring()?;
        let lattice = SubspaceLattice::new(ring, self.n, caps)?;
        let table = table_from_map(&self.f, lattice.len())?;
        DemiPolymatroid::new(lattice, self.w, table)
    }

    pub fn from_polymatroid(dp: &DemiPolymatroid) -> PolymatroidDto {
        PolymatroidDto {
            ring: RingDto::from_ring(dp.lattice().ring()),
            n: dp.ambient_dim(),
            w: dp.w(),
            f: dp
                .table()
                .iter()
                .enumerate()
                .map(|(i, &v)| (i.to_string(), v))
                .collect(),
        }
    }
}

/// {"ring": ..., "n": ..., "rho": {"<id>": value, ...}}.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QMatroidDto {
    pub ring: RingDto,
    pub n: usize,
    pub rho: BTreeMap<String, i64>,
}

impl QMatroidDto {
    pub fn to_qmatroid(&self, caps: &Caps) -> Result<QMatroid> {
        let ring = self.ring.to_ring()?;
        let lattice = SubspaceLattice::new(ring, self.n, caps)?;
        let table = table_from_map(&self.rho, lattice.len())?;
        QMatroid::new(lattice, table)
    }
}

fn table_from_map(map: &BTreeMap<String, i64>, len: usize) -> Result<Vec<i64>> {
    let mut table = vec![None; len];
    for (key, &value) in map {
        let idx: usize = key
            .parse()
            .map_err(|_| crate::error::Error::InvalidInput(format!("bad table key {:?}", key)))?;
        if idx >= len {
            return invalid(format!("table key {} outside the lattice (size {})", idx, len));
        }
        table[idx] = Some(value);
    }
    table
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            v.ok_or_else(|| {
                crate::error::Error::InvalidInput(format!("table misses lattice member {}", i))
            })
        })
        .collect()
}

/// {"ring": ..., "n": ..., "members": [canonical ids]}.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubspaceFamilyDto {
    pub ring: RingDto,
    pub n: usize,
    pub members: Vec<usize>,
}

impl SubspaceFamilyDto {
    pub fn to_family(&self, caps: &Caps) -> Result<SubspaceFamily> {
        let ring = self.ring.to_ring()?;
        let lattice = SubspaceLattice::new(ring.clone(), self.n, caps)?;
        let mut members: Vec<Subspace> = Vec::with_capacity(self.members.len());
        for &id in &self.members {
            if id >= lattice.len() {
                return invalid(format!("subspace id {} outside the lattice", id));
            }
            members.push(lattice.space(id).clone());
        }
        SubspaceFamily::new(ring, self.n, members)
    }
}

/// {"ring": ..., "w_dim": ..., "m": ..., "flags": [[matrix, ...], ...]}
/// with each flag a descending list of generator matrices.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FlagDto {
    pub ring: RingDto,
    pub w_dim: usize,
    pub m: usize,
    pub flags: Vec<Vec<Vec<Vec<u64>>>>,
}

impl FlagDto {
    pub fn to_flags(&self) -> Result<CodeFlagFamily> {
        let ring = self.ring.to_ring()?;
        let n = self.w_dim * self.m;
        let mut flags = Vec::with_capacity(self.flags.len());
        for flag in &self.flags {
            let mut chain = Vec::with_capacity(flag.len());
            for gen in flag {
                chain.push(Subspace::from_rows(ring.clone(), n, gen)?);
            }
            flags.push(chain);
        }
        CodeFlagFamily::new(ring, self.w_dim, self.m, flags)
    }

    pub fn from_flags(flags: &CodeFlagFamily) -> FlagDto {
        FlagDto {
            ring: RingDto::from_ring(flags.ring()),
            w_dim: flags.w_dim(),
            m: flags.m(),
            flags: flags
                .flags()
                .iter()
                .map(|flag| flag.iter().map(|c| c.basis().row_vecs()).collect())
                .collect(),
        }
    }
}

/// {"k": ..., "m": ..., "phi": [...], "psi": [...]}.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairDto {
    pub k: i64,
    pub m: i64,
    pub phi: Vec<i64>,
    pub psi: Vec<i64>,
}

impl PairDto {
    pub fn to_pair(&self) -> Result<GaloisPair> {
        if self.phi.len() as i64 != self.k + 1 || self.psi.len() as i64 != self.m + 1 {
            return invalid("table lengths must be k+1 and m+1");
        }
        if self.phi.len() > 4096 || self.psi.len() > 4096 {
            return invalid("tables are limited to 4096 entries");
        }
        GaloisPair::from_values(self.phi.clone(), self.psi.clone())
    }
}

/// Bridge data with sigma as 0-based indices into the element list.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BridgeDto {
    pub m: i64,
    pub k: i64,
    pub w: i64,
    pub g: Vec<i64>,
    pub f: Vec<i64>,
    pub sigma: Vec<usize>,
}

impl BridgeDto {
    pub fn to_tuple(&self) -> Result<BridgeTuple> {
        if self.g.len() > 4096 || self.sigma.len() > 4096 {
            return invalid("element lists are limited to 4096 entries");
        }
        BridgeTuple::new(
            self.m,
            self.k,
            self.w,
            self.g.clone(),
            self.f.clone(),
            self.sigma.clone(),
        )
    }
}

/// Graded-order bridge input: a poset with 1-based labels, a grading g
/// and a map f on its elements, the step bound w, and sigma: X -> Y as
/// 1-based element labels.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GradedBridgeDto {
    pub n: usize,
    pub cover_pairs: Vec<(usize, usize)>,
    pub g: Vec<i64>,
    pub f: Vec<i64>,
    pub w: i64,
    pub sigma: Vec<usize>,
}

impl GradedBridgeDto {
    pub fn to_parts(&self) -> Result<(Poset, Vec<i64>, Vec<i64>, i64, Vec<usize>)> {
        let poset = PosetDto {
            n: self.n,
            cover_pairs: self.cover_pairs.clone(),
        }
        .to_poset()?;
        if self.g.len() != self.n || self.f.len() != self.n {
            return invalid("g and f must be defined on all poset elements");
        }
        let mut sigma = Vec::with_capacity(self.sigma.len());
        for &y in &self.sigma {
            if y == 0 || y > self.n {
                return invalid("sigma labels are 1-based and must not exceed n");
            }
            sigma.push(y - 1);
        }
        Ok((poset, self.g.clone(), self.f.clone(), self.w, sigma))
    }
}

/// Optional explicit bilinear form: the gram matrix over the ring of the
/// object it pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FormDto {
    pub gram: Vec<Vec<u64>>,
}

impl FormDto {
    pub fn to_form(&self, ring: &Ring) -> Result<crate::algebra::BilinearForm> {
        let n = self.gram.len();
        let m = Matrix::from_rows(ring.clone(), n, &self.gram)?;
        crate::algebra::BilinearForm::new(m)
    }
}
