//! w-demi-polymatroids on the subspace lattice of F_q^n (grading by
//! dimension), subspace-family abundances, annihilator duality, the
//! lattice duality report, and q-matroids with an order-reversing duality
//! map.

use crate::algebra::{BilinearForm, Ring, Subspace, SubspaceLattice};
use crate::demimatroid::{weight_profile_from_points, WeightProfile};
use crate::error::{invalid, Caps, Error, Result};
use crate::galois::central_theorem_report;
use crate::poset::graded_abundance;
use crate::report::{ClauseCheck, TheoremReport};
use crate::rng::SplitMix64;

/// Rank function on the full subspace lattice of F_q^n, stored densely by
/// canonical lattice index.
#[derive(Debug, Clone)]
pub struct DemiPolymatroid {
    lattice: SubspaceLattice,
    w: i64,
    f: Vec<i64>,
}

impl std::fmt::Debug for SubspaceLattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "SubspaceLattice({:?}^{}, {} members)",
            self.ring(),
            self.ambient_dim(),
            self.len()
        )
    }
}

/// Witness of an axiom violation in the lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeViolation {
    ZeroSpace { value: i64 },
    CoverPair { small: usize, large: usize, step: i64 },
}

impl std::fmt::Display for LatticeViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LatticeViolation::ZeroSpace { value } => {
                write!(f, "f(zero space) = {} instead of 0", value)
            }
            LatticeViolation::CoverPair { small, large, step } => write!(
                f,
                "step f(#{}) - f(#{}) = {} out of range",
                large, small, step
            ),
        }
    }
}

impl DemiPolymatroid {
    pub fn new(lattice: SubspaceLattice, w: i64, f: Vec<i64>) -> Result<DemiPolymatroid> {
        if w <= 0 {
            return invalid("w must be positive");
        }
        if f.len() != lattice.len() {
            return invalid("rank table must cover the whole lattice");
        }
        Ok(DemiPolymatroid { lattice, w, f })
    }

    pub fn lattice(&self) -> &SubspaceLattice {
        &self.lattice
    }

    pub fn w(&self) -> i64 {
        self.w
    }

    pub fn ambient_dim(&self) -> usize {
        self.lattice.ambient_dim()
    }

    pub fn rank(&self, index: usize) -> i64 {
        self.f[index]
    }

    pub fn table(&self) -> &[i64] {
        &self.f
    }

    pub fn k(&self) -> i64 {
        self.f[self.lattice.full_index()]
    }

    /// Check f(0) = 0 and the two-sided step bound on all cover pairs of
    /// the lattice; covers telescope to arbitrary nested pairs along
    /// maximal chains.
    pub fn validate(&self) -> std::result::Result<(), LatticeViolation> {
        if self.f[self.lattice.zero_index()] != 0 {
            return Err(LatticeViolation::ZeroSpace {
                value: self.f[self.lattice.zero_index()],
            });
        }
        for (small, large) in self.lattice.cover_pairs() {
            let step = self.f[large] - self.f[small];
            if step < 0 || step > self.w {
                return Err(LatticeViolation::CoverPair { small, large, step });
            }
        }
        Ok(())
    }

    fn validated(&self) -> Result<()> {
        self.validate()
            .map_err(|v| Error::InvalidInput(format!("invalid demi-polymatroid: {}", v)))
    }

    /// Dual rank h(D) = f(annihilator of D) + w dim(D) - k, using the
    /// left annihilator so that the double-annihilator identity runs
    /// through the right annihilator used for the dual family.
    pub fn dual(&self, form: &BilinearForm) -> Result<DemiPolymatroid> {
        self.validated()?;
        if form.dim() != self.ambient_dim() || form.ring() != self.lattice.ring() {
            return invalid("form does not match the ambient space");
        }
        let k = self.k();
        let mut h = Vec::with_capacity(self.lattice.len());
        for i in 0..self.lattice.len() {
            let d = self.lattice.space(i);
            let ann = form.left_annihilator(d);
            let ann_idx = self
                .lattice
                .index_of(&ann)
                .expect("annihilator lies in the lattice");
            h.push(self.f[ann_idx] + self.w * d.dim() as i64 - k);
        }
        let dual = DemiPolymatroid::new(self.lattice.clone(), self.w, h)?;
        debug_assert!(dual.validate().is_ok());
        // Reciprocal identity: f(C) = h(C-perp) + w dim C - h(full).
        for i in 0..self.lattice.len() {
            let c = self.lattice.space(i);
            let cperp = form.right_annihilator(c);
            let j = self.lattice.index_of(&cperp).unwrap();
            debug_assert_eq!(
                self.f[i],
                dual.f[j] + self.w * c.dim() as i64 - dual.k()
            );
        }
        Ok(dual)
    }
}

/// An explicit family of subspaces containing the zero and full spaces
/// whose dimension grading is an abundance. Checked at construction.
#[derive(Debug, Clone)]
pub struct SubspaceFamily {
    ring: Ring,
    n: usize,
    members: Vec<Subspace>,
}

impl SubspaceFamily {
    pub fn new(ring: Ring, n: usize, mut members: Vec<Subspace>) -> Result<SubspaceFamily> {
        if members.iter().any(|s| s.ambient_dim() != n || s.ring() != &ring) {
            return invalid("family member in a different ambient space");
        }
        members.sort_by(|a, b| (a.dim(), a.basis().data()).cmp(&(b.dim(), b.basis().data())));
        members.dedup();
        if !members.iter().any(|s| s.dim() == 0) {
            return invalid("family must contain the zero space");
        }
        if !members.iter().any(|s| s.dim() == n) {
            return invalid("family must contain the full space");
        }
        let grades: Vec<i64> = members.iter().map(|s| s.dim() as i64).collect();
        let check = graded_abundance(
            members.len(),
            |a, b| members[b].contains(&members[a]),
            &grades,
        )?;
        if !check.ok {
            return Err(Error::InvalidInput(format!(
                "family is not an abundance: {} fails at member {}",
                check.failed_condition.unwrap_or("condition"),
                check.witness.unwrap_or(0)
            )));
        }
        Ok(SubspaceFamily { ring, n, members })
    }

    /// The full lattice as a family.
    pub fn full_lattice(lattice: &SubspaceLattice) -> SubspaceFamily {
        SubspaceFamily {
            ring: lattice.ring().clone(),
            n: lattice.ambient_dim(),
            members: lattice.spaces().to_vec(),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[Subspace] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: &Subspace) -> bool {
        self.members.iter().any(|m| m == s)
    }

    /// The family of right annihilators {X-perp : X in family}.
    pub fn annihilators(&self, form: &BilinearForm) -> Result<SubspaceFamily> {
        let members = self
            .members
            .iter()
            .map(|x| form.right_annihilator(x))
            .collect();
        SubspaceFamily::new(self.ring.clone(), self.n, members)
    }
}

/// Weights/profiles of a demi-polymatroid restricted to a family:
/// d_a = min{dim W : W in family, f(W) >= a}, K_b = max{f(W) : dim = b}.
pub fn weights_profiles(dp: &DemiPolymatroid, fam: &SubspaceFamily) -> Result<WeightProfile> {
    dp.validated()?;
    if fam.ambient_dim() != dp.ambient_dim() || fam.ring() != dp.lattice.ring() {
        return invalid("family ambient does not match the demi-polymatroid");
    }
    let points: Vec<(i64, i64)> = fam
        .members()
        .iter()
        .map(|s| {
            let idx = dp.lattice.index_of(s).expect("member is in the lattice");
            (s.dim() as i64, dp.f[idx])
        })
        .collect();
    let k = points.iter().map(|&(_, v)| v).max().unwrap();
    let wp = weight_profile_from_points(&points, k, dp.ambient_dim() as i64);
    debug_assert!(wp.pair().is_ok());
    Ok(wp)
}

/// Duality report on the lattice: the dual structure lives on the
/// annihilator family, the profile identity holds at every level, and the
/// residue classes partition [1, n].
pub fn theorem51_report(
    dp: &DemiPolymatroid,
    fam: &SubspaceFamily,
    form: &BilinearForm,
) -> Result<TheoremReport> {
    let dual = dp.dual(form)?;
    let dual_fam = fam.annihilators(form)?;
    let primal = weights_profiles(dp, fam)?;
    let co = weights_profiles(&dual, &dual_fam)?;
    let n = dp.ambient_dim() as i64;
    let w = dp.w();
    let k = dp.k();

    let mut report = TheoremReport::new();
    let mut identity_ok = true;
    let mut witness = None;
    for l in 0..=n {
        let lhs = co.profiles[l as usize];
        let rhs = primal.profiles[(n - l) as usize] + w * l - k;
        if lhs != rhs {
            identity_ok = false;
            witness = Some(format!("dual profile at l = {}: {} != {}", l, lhs, rhs));
            break;
        }
    }
    report.push(ClauseCheck::from_flag(
        "profile_identity",
        "5.1(1)",
        identity_ok,
        witness,
    ));

    let central = central_theorem_report(&primal.pair()?, &co.pair()?, w)?;
    report.push(ClauseCheck::from_flag(
        "residue_partitions",
        "5.1(2)",
        central.partitions,
        central.witness.clone(),
    ));
    Ok(report)
}

/// A q-matroid on the subspace lattice: rank bounded by dimension,
/// monotone, submodular.
#[derive(Debug, Clone)]
pub struct QMatroid {
    lattice: SubspaceLattice,
    rho: Vec<i64>,
}

impl QMatroid {
    pub fn new(lattice: SubspaceLattice, rho: Vec<i64>) -> Result<QMatroid> {
        if rho.len() != lattice.len() {
            return invalid("rank table must cover the whole lattice");
        }
        let q = QMatroid { lattice, rho };
        q.validate()?;
        Ok(q)
    }

    pub fn lattice(&self) -> &SubspaceLattice {
        &self.lattice
    }

    pub fn rho(&self) -> &[i64] {
        &self.rho
    }

    pub fn k(&self) -> i64 {
        self.rho[self.lattice.full_index()]
    }

    fn validate(&self) -> Result<()> {
        let lat = &self.lattice;
        for i in 0..lat.len() {
            if self.rho[i] < 0 || self.rho[i] > lat.dim(i) as i64 {
                return Err(Error::InvalidInput(format!(
                    "rank of member {} outside [0, dim]",
                    i
                )));
            }
        }
        for (small, large) in lat.cover_pairs() {
            if self.rho[small] > self.rho[large] {
                return Err(Error::InvalidInput(format!(
                    "rank not monotone on cover ({}, {})",
                    small, large
                )));
            }
        }
        for i in 0..lat.len() {
            for j in 0..lat.len() {
                let meet = lat.meet(i, j);
                let join = lat.join(i, j);
                if self.rho[meet] + self.rho[join] > self.rho[i] + self.rho[j] {
                    return Err(Error::InvalidInput(format!(
                        "rank not submodular on pair ({}, {})",
                        i, j
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Report for the q-matroid duality: the duality map must be the
/// annihilator of a non-degenerate form (checked order-reversing and
/// bijective); the dual rank theta(v) = rho(sigma v) + dim v - k is again
/// a q-matroid; the profile identity and the weight partition of [1, n]
/// follow.
pub fn qmatroid_report(q: &QMatroid, form: &BilinearForm) -> Result<TheoremReport> {
    let lat = &q.lattice;
    let n = lat.ambient_dim() as i64;
    let k = q.k();
    if form.dim() != lat.ambient_dim() || form.ring() != lat.ring() {
        return invalid("form does not match the lattice");
    }
    // sigma = right annihilator, as a permutation of the lattice.
    let sigma: Vec<usize> = (0..lat.len())
        .map(|i| {
            lat.index_of(&form.right_annihilator(lat.space(i)))
                .expect("annihilator in lattice")
        })
        .collect();
    let mut is_bijective = vec![false; lat.len()];
    for &s in &sigma {
        is_bijective[s] = true;
    }
    if !is_bijective.iter().all(|&b| b) {
        return invalid("duality map is not a bijection");
    }
    for i in 0..lat.len() {
        for j in 0..lat.len() {
            if lat.leq(sigma[i], sigma[j]) != lat.leq(j, i) {
                return invalid("duality map fails the order-reversal condition");
            }
        }
    }

    let mut report = TheoremReport::new();

    let theta: Vec<i64> = (0..lat.len())
        .map(|i| q.rho[sigma[i]] + lat.dim(i) as i64 - k)
        .collect();
    let theta_q = QMatroid::new(lat.clone(), theta.clone());
    report.push(ClauseCheck::from_flag(
        "dual_rank_is_qmatroid",
        "3.1-example",
        theta_q.is_ok(),
        theta_q.as_ref().err().map(|e| e.to_string()),
    ));
    let theta_q = theta_q?;

    // Double dual recovers rho when sigma is an involution; with a
    // symmetric form sigma is one. Check whenever it is.
    if (0..lat.len()).all(|i| sigma[sigma[i]] == i) {
        let theta2: Vec<i64> = (0..lat.len())
            .map(|i| theta_q.rho[sigma[i]] + lat.dim(i) as i64 - theta_q.k())
            .collect();
        report.push(ClauseCheck::from_flag(
            "double_dual_recovers_rank",
            "3.1-example",
            theta2 == q.rho,
            Some("double dual differs from the original rank".to_string()),
        ));
    }

    // Weight/profile tables of both structures over the whole lattice.
    let points_primal: Vec<(i64, i64)> = (0..lat.len())
        .map(|i| (lat.dim(i) as i64, q.rho[i]))
        .collect();
    let primal = weight_profile_from_points(&points_primal, k, n);
    let points_dual: Vec<(i64, i64)> = (0..lat.len())
        .map(|i| (lat.dim(i) as i64, theta_q.rho[i]))
        .collect();
    let co = weight_profile_from_points(&points_dual, n - k, n);

    let mut identity_ok = true;
    let mut witness = None;
    for l in 0..=n {
        let lhs = co.profiles[l as usize];
        let rhs = primal.profiles[(n - l) as usize] + l - k;
        if lhs != rhs {
            identity_ok = false;
            witness = Some(format!("dual profile at l = {}: {} != {}", l, lhs, rhs));
            break;
        }
    }
    report.push(ClauseCheck::from_flag(
        "profile_identity",
        "3.1-example",
        identity_ok,
        witness,
    ));

    let central = central_theorem_report(&primal.pair()?, &co.pair()?, 1)?;
    report.push(ClauseCheck::from_flag(
        "weight_partition",
        "3.1-example",
        central.partitions,
        central.witness.clone(),
    ));
    Ok(report)
}

/// Deterministic random demi-polymatroid: values drawn level by level
/// inside the interval forced by already-assigned covered spaces, which
/// is never empty.
pub fn random_polymatroid(lattice: &SubspaceLattice, w: i64, seed: u64) -> DemiPolymatroid {
    assert!(w > 0);
    let mut rng = SplitMix64::new(seed);
    let mut f = vec![0i64; lattice.len()];
    // Lattice indices are already sorted by dimension.
    let covers = lattice.cover_pairs();
    for i in 0..lattice.len() {
        if lattice.dim(i) == 0 {
            continue;
        }
        let mut lo = i64::MIN;
        let mut hi = i64::MAX;
        for &(small, large) in &covers {
            if large == i {
                lo = lo.max(f[small]);
                hi = hi.min(f[small] + w);
            }
        }
        f[i] = rng.range_i64(lo, hi);
    }
    let dp = DemiPolymatroid::new(lattice.clone(), w, f).unwrap();
    debug_assert!(dp.validate().is_ok());
    dp
}

/// All q-matroid rank tables on a small lattice, by exhaustive search
/// with validity filtering. Used to cover a whole instance space.
pub fn enumerate_qmatroids(lattice: &SubspaceLattice, caps: &Caps) -> Result<Vec<QMatroid>> {
    let n = lattice.len();
    let dims: Vec<i64> = (0..n).map(|i| lattice.dim(i) as i64).collect();
    let total: u128 = dims.iter().map(|&d| (d + 1) as u128).product();
    caps.check(total)?;
    let mut out = Vec::new();
    let mut table = vec![0i64; n];
    loop {
        if let Ok(q) = QMatroid::new(lattice.clone(), table.clone()) {
            out.push(q);
        }
        // Odometer increment over the per-member ranges [0, dim].
        let mut i = 0;
        loop {
            if i == n {
                return Ok(out);
            }
            table[i] += 1;
            if table[i] <= dims[i] {
                break;
            }
            table[i] = 0;
            i += 1;
        }
    }
}
