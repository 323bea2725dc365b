//! Families of descending code chains inside M^E (M = F_q^w flattened to
//! F_q^(w*m)), the three rank functions they induce (on the ambient
//! lattice, on subsets of E, and on the lattice of M), generalized
//! weights for the rank-extension, poset and matrix-rank metrics, dual
//! flag families through a bilinear pairing, the associated duality
//! reports, and rank-based weights of codes over Z/p^s with their free
//! closures.

use crate::algebra::{
    count_all_subspaces, BilinearForm, Matrix, Ring, Submodule, Subspace, SubspaceLattice,
};
use crate::demimatroid::{
    weight_profile_from_points, weights_profiles_poset, DemiMatroid, WeightProfile,
};
use crate::demipolymatroid::{DemiPolymatroid, SubspaceFamily};
use crate::error::{invalid, Caps, Error, Result};
use crate::galois::central_theorem_report;
use crate::poset::Poset;
use crate::report::{ClauseCheck, TheoremReport};
use crate::rng::SplitMix64;

/// A family of descending code chains in M^E with M = F_q^(w_dim) and
/// |E| = m, all flattened into F_q^(w_dim * m) position-major (the block
/// of coordinates [e*w_dim, (e+1)*w_dim) belongs to position e).
#[derive(Debug, Clone)]
pub struct CodeFlagFamily {
    ring: Ring,
    w_dim: usize,
    m: usize,
    flags: Vec<Vec<Subspace>>,
}

impl CodeFlagFamily {
    pub fn new(
        ring: Ring,
        w_dim: usize,
        m: usize,
        flags: Vec<Vec<Subspace>>,
    ) -> Result<CodeFlagFamily> {
        if !ring.is_field() {
            return invalid("code flags require a field");
        }
        if w_dim == 0 || m == 0 {
            return invalid("inner dimension and length must be positive");
        }
        if w_dim * m > 63 {
            return invalid("flattened ambient dimension must stay below 64");
        }
        if flags.is_empty() {
            return invalid("at least one flag is required");
        }
        let n = w_dim * m;
        for flag in &flags {
            if flag.is_empty() {
                return invalid("every flag must contain at least one code");
            }
            for code in flag {
                if code.ambient_dim() != n || code.ring() != &ring {
                    return invalid("flag member in a different ambient space");
                }
            }
            for pair in flag.windows(2) {
                if !pair[0].contains(&pair[1]) {
                    return invalid("flag members must descend by inclusion");
                }
            }
        }
        Ok(CodeFlagFamily {
            ring,
            w_dim,
            m,
            flags,
        })
    }

    /// A single code as a one-member flag family with inner dimension 1.
    pub fn single(code: &crate::hamming::LinearCode) -> CodeFlagFamily {
        CodeFlagFamily {
            ring: code.ring().clone(),
            w_dim: 1,
            m: code.length(),
            flags: vec![vec![code.generator().clone()]],
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn w_dim(&self) -> usize {
        self.w_dim
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn ambient(&self) -> usize {
        self.w_dim * self.m
    }

    pub fn flags(&self) -> &[Vec<Subspace>] {
        &self.flags
    }

    pub fn flag_lengths(&self) -> Vec<usize> {
        self.flags.iter().map(|f| f.len()).collect()
    }

    pub fn all_odd(&self) -> bool {
        self.flags.iter().all(|f| f.len() % 2 == 1)
    }

    fn alternating_dim(&self, flag: &[Subspace]) -> i64 {
        flag.iter()
            .enumerate()
            .map(|(i, c)| {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                sign * c.dim() as i64
            })
            .sum()
    }

    /// k = max over flags of the alternating dimension sum.
    pub fn k(&self) -> i64 {
        self.flags
            .iter()
            .map(|f| self.alternating_dim(f))
            .max()
            .unwrap()
    }

    /// The common alternating sum required by the duality theory; errors
    /// when flags disagree.
    pub fn common_k(&self) -> Result<i64> {
        let sums: Vec<i64> = self.flags.iter().map(|f| self.alternating_dim(f)).collect();
        if sums.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::InvalidInput(format!(
                "flags have unequal alternating dimension sums {:?}",
                sums
            )));
        }
        Ok(sums[0])
    }

    /// delta(J) inside the flattened ambient: unit vectors on the blocks
    /// of the positions in `mask`.
    pub fn delta(&self, mask: u64) -> Subspace {
        let mut col_mask = 0u64;
        for e in 0..self.m {
            if mask >> e & 1 == 1 {
                for i in 0..self.w_dim {
                    col_mask |= 1 << (e * self.w_dim + i);
                }
            }
        }
        Subspace::coordinate(self.ring.clone(), self.ambient(), col_mask)
    }

    /// W^E: every position runs over the subspace W of M.
    pub fn w_to_ambient(&self, w_space: &Subspace) -> Subspace {
        assert_eq!(w_space.ambient_dim(), self.w_dim);
        let mut rows = Vec::new();
        for e in 0..self.m {
            for i in 0..w_space.dim() {
                let mut row = vec![0u64; self.ambient()];
                for (j, &x) in w_space.basis().row(i).iter().enumerate() {
                    row[e * self.w_dim + j] = x;
                }
                rows.push(row);
            }
        }
        Subspace::from_rows(self.ring.clone(), self.ambient(), &rows)
            .expect("embedded rows well formed")
    }

    /// f0(L) = max over flags of the alternating sum of dim(C(l,i) n L).
    pub fn f0(&self, l_space: &Subspace) -> i64 {
        assert_eq!(l_space.ambient_dim(), self.ambient());
        self.flags
            .iter()
            .map(|flag| {
                flag.iter()
                    .enumerate()
                    .map(|(i, c)| {
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        sign * c.intersect(l_space).unwrap().dim() as i64
                    })
                    .sum::<i64>()
            })
            .max()
            .unwrap()
    }

    /// dim(C n delta(J)) for one code, by column rank of the part of the
    /// generator outside the blocks of J (cheap inner step of subset
    /// sweeps).
    fn dim_meet_delta(&self, code: &Subspace, mask: u64) -> i64 {
        let outside: Vec<usize> = (0..self.m)
            .filter(|&e| mask >> e & 1 == 0)
            .flat_map(|e| (0..self.w_dim).map(move |i| e * self.w_dim + i))
            .collect();
        if outside.is_empty() {
            return code.dim() as i64;
        }
        let g = code.basis();
        let rows: Vec<Vec<u64>> = (0..g.rows())
            .map(|r| outside.iter().map(|&c| g.get(r, c)).collect())
            .collect();
        let sub = Matrix::from_rows(self.ring.clone(), outside.len(), &rows)
            .expect("projection rows well formed");
        code.dim() as i64 - sub.field_rank() as i64
    }

    /// f1(J) = f0(delta(J)), computed through the column-rank fast path.
    pub fn f1(&self, mask: u64) -> i64 {
        self.flags
            .iter()
            .map(|flag| {
                flag.iter()
                    .enumerate()
                    .map(|(i, c)| {
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        sign * self.dim_meet_delta(c, mask)
                    })
                    .sum::<i64>()
            })
            .max()
            .unwrap()
    }

    /// f2(W) = f0(W^E).
    pub fn f2(&self, w_space: &Subspace) -> i64 {
        self.f0(&self.w_to_ambient(w_space))
    }

    /// The poset-metric rank function as a w-demi-matroid on E.
    pub fn f1_demimatroid(&self) -> Result<DemiMatroid> {
        let table: Vec<i64> = (0..1u64 << self.m).map(|mask| self.f1(mask)).collect();
        let dm = DemiMatroid::new(self.m, self.w_dim as i64, table)?;
        dm.validate()
            .map_err(|v| Error::InvalidInput(format!("induced rank is not a demi-matroid: {}", v)))?;
        Ok(dm)
    }

    /// The ambient rank function as a 1-demi-polymatroid on the full
    /// lattice of M^E (cap-guarded; meant for desk-scale ambients).
    pub fn f0_polymatroid(&self, caps: &Caps) -> Result<DemiPolymatroid> {
        let lattice = SubspaceLattice::new(self.ring.clone(), self.ambient(), caps)?;
        let table: Vec<i64> = lattice.spaces().iter().map(|s| self.f0(s)).collect();
        let dp = DemiPolymatroid::new(lattice, 1, table)?;
        dp.validate()
            .map_err(|v| Error::InvalidInput(format!("f0 is not a 1-demi-polymatroid: {}", v)))?;
        Ok(dp)
    }

    /// The matrix-side rank function as an m-demi-polymatroid on the
    /// lattice of M.
    pub fn f2_polymatroid(&self, caps: &Caps) -> Result<DemiPolymatroid> {
        let lattice = SubspaceLattice::new(self.ring.clone(), self.w_dim, caps)?;
        let table: Vec<i64> = lattice.spaces().iter().map(|s| self.f2(s)).collect();
        let dp = DemiPolymatroid::new(lattice, self.m as i64, table)?;
        dp.validate()
            .map_err(|v| Error::InvalidInput(format!("f2 is not an m-demi-polymatroid: {}", v)))?;
        Ok(dp)
    }

    /// Dual flag family D(l, j) = annihilator of C(l, u(l)+1-j) under the
    /// position-wise extension of the inner pairing. Requires odd flag
    /// lengths and the common alternating sum.
    pub fn dual_flags(&self, inner_form: &BilinearForm) -> Result<CodeFlagFamily> {
        if !self.all_odd() {
            return invalid(
                "dual flags require odd flag lengths (7.1-remark); even-length duality is rejected",
            );
        }
        let k = self.common_k()?;
        if inner_form.dim() != self.w_dim || inner_form.ring() != &self.ring {
            return invalid("inner pairing does not match M");
        }
        let big = inner_form.block_extend(self.m);
        let dual_flags: Vec<Vec<Subspace>> = self
            .flags
            .iter()
            .map(|flag| {
                flag.iter()
                    .rev()
                    .map(|c| big.right_annihilator(c))
                    .collect()
            })
            .collect();
        let dual = CodeFlagFamily::new(self.ring.clone(), self.w_dim, self.m, dual_flags)?;
        // Dual alternating sums all equal w*m - k.
        let expect = (self.w_dim * self.m) as i64 - k;
        for flag in &dual.flags {
            if dual.alternating_dim(flag) != expect {
                return invalid("dual flag alternating sum mismatch");
            }
        }
        Ok(dual)
    }
}

/// The difference identity linking a flag family and its dual on a test
/// space V: (alternating sum over the dual at V) minus (alternating sum
/// over the primal at the annihilator of V) equals dim V - k.
pub fn flag_difference_identity(
    primal: &CodeFlagFamily,
    dual: &CodeFlagFamily,
    inner_form: &BilinearForm,
    v: &Subspace,
) -> bool {
    let big = inner_form.block_extend(primal.m());
    let k = match primal.common_k() {
        Ok(k) => k,
        Err(_) => return false,
    };
    let ann = big.left_annihilator(v);
    for (pf, df) in primal.flags().iter().zip(dual.flags()) {
        let lhs: i64 = df
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                sign * d.intersect(v).unwrap().dim() as i64
            })
            .sum();
        let rhs: i64 = pf
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                sign * c.intersect(&ann).unwrap().dim() as i64
            })
            .sum();
        if lhs - rhs != v.dim() as i64 - k {
            return false;
        }
    }
    true
}

/// The scalar-extension-closed family: subspaces of R^m spanned by their
/// intersection with the prime-subfield rational points, built by
/// extending every GF(p)-rational subspace. Requires inner dimension 1.
pub fn galois_closed_family(flags: &CodeFlagFamily, caps: &Caps) -> Result<SubspaceFamily> {
    if flags.w_dim() != 1 {
        return invalid("the rational-closure family is defined for inner dimension 1");
    }
    let ring = flags.ring().clone();
    let p = ring.prime();
    let base = Ring::field(p, 1)?;
    let m = flags.m();
    let rational = crate::algebra::enumerate_subspaces(&base, m, None, caps)?;
    let members: Vec<Subspace> = rational
        .iter()
        .map(|s| {
            let rows: Vec<Vec<u64>> = (0..s.dim()).map(|i| s.basis().row(i).to_vec()).collect();
            Subspace::from_rows(ring.clone(), m, &rows).expect("rational rows embed")
        })
        .collect();
    SubspaceFamily::new(ring, m, members)
}

/// Weights and profiles of the flag family with respect to the ambient
/// rank function restricted to a family of subspaces of M^E.
pub fn gr_weights(flags: &CodeFlagFamily, fam: &SubspaceFamily) -> Result<WeightProfile> {
    if fam.ambient_dim() != flags.ambient() || fam.ring() != flags.ring() {
        return invalid("family ambient does not match the flags");
    }
    let points: Vec<(i64, i64)> = fam
        .members()
        .iter()
        .map(|s| (s.dim() as i64, flags.f0(s)))
        .collect();
    let k = points.iter().map(|&(_, v)| v).max().unwrap();
    let wp = weight_profile_from_points(&points, k, flags.ambient() as i64);
    debug_assert!(wp.pair().is_ok());
    Ok(wp)
}

/// Poset-metric weights and profiles through the induced demi-matroid.
pub fn poset_weights(flags: &CodeFlagFamily, p: &Poset, caps: &Caps) -> Result<WeightProfile> {
    if p.len() != flags.m() {
        return invalid("poset must live on the position set E");
    }
    let dm = flags.f1_demimatroid()?;
    weights_profiles_poset(&dm, p, caps)
}

/// Matrix-metric weights and profiles through the rank function on M.
pub fn delsarte_weights(flags: &CodeFlagFamily, fam: &SubspaceFamily) -> Result<WeightProfile> {
    if fam.ambient_dim() != flags.w_dim() || fam.ring() != flags.ring() {
        return invalid("family must consist of subspaces of M");
    }
    let points: Vec<(i64, i64)> = fam
        .members()
        .iter()
        .map(|s| (s.dim() as i64, flags.f2(s)))
        .collect();
    let k = points.iter().map(|&(_, v)| v).max().unwrap();
    let wp = weight_profile_from_points(&points, k, flags.w_dim() as i64);
    debug_assert!(wp.pair().is_ok());
    Ok(wp)
}

/// Rank of a flattened codeword viewed as a w x m matrix (columns are the
/// position blocks).
pub fn codeword_rank(flags: &CodeFlagFamily, vec: &[u64]) -> usize {
    let w = flags.w_dim();
    let m = flags.m();
    assert_eq!(vec.len(), w * m);
    let rows: Vec<Vec<u64>> = (0..w)
        .map(|i| (0..m).map(|e| vec[e * w + i]).collect())
        .collect();
    Matrix::from_rows(flags.ring().clone(), m, &rows)
        .expect("matrix rows well formed")
        .field_rank()
}

fn bounded_full_sweep(flags: &CodeFlagFamily) -> bool {
    count_all_subspaces(flags.ring().size() as u128, flags.ambient() as u64) <= 3000
}

/// Duality report for the rank-extension metric: the structural identity
/// relating the dual rank to annihilators, the profile identity over the
/// whole index range, and the weight partition of [1, w*m].
pub fn theorem71_report(
    flags: &CodeFlagFamily,
    fam: &SubspaceFamily,
    inner_form: &BilinearForm,
    caps: &Caps,
) -> Result<TheoremReport> {
    let dual = flags.dual_flags(inner_form)?;
    let big = inner_form.block_extend(flags.m());
    let k = flags.common_k()?;
    let n = flags.ambient() as i64;
    let dual_fam = fam.annihilators(&big)?;

    let mut report = TheoremReport::new();

    // Structural identity h0(V) = f0(ann V) + dim V - k, swept over the
    // whole ambient lattice when it is small, otherwise over the dual
    // family and the coordinate subspaces.
    let mut test_spaces: Vec<Subspace> = Vec::new();
    if bounded_full_sweep(flags) {
        let lattice = SubspaceLattice::new(flags.ring().clone(), flags.ambient(), caps)?;
        test_spaces.extend(lattice.spaces().iter().cloned());
    } else {
        test_spaces.extend(dual_fam.members().iter().cloned());
        for mask in 0..1u64 << flags.m() {
            test_spaces.push(dual.delta(mask));
        }
    }
    let mut structural_ok = true;
    let mut witness = None;
    for v in &test_spaces {
        let lhs = dual.f0(v);
        let rhs = flags.f0(&big.left_annihilator(v)) + v.dim() as i64 - k;
        if lhs != rhs {
            structural_ok = false;
            witness = Some(format!(
                "dual rank at a {}-dimensional space: {} != {}",
                v.dim(),
                lhs,
                rhs
            ));
            break;
        }
    }
    report.push(ClauseCheck::from_flag(
        "dual_rank_identity",
        "7.1-prop(1)",
        structural_ok,
        witness,
    ));

    let primal = gr_weights(flags, fam)?;
    let co = gr_weights(&dual, &dual_fam)?;

    let mut identity_ok = true;
    let mut witness = None;
    for b in 0..=n {
        let lhs = co.profiles[b as usize];
        let rhs = primal.profiles[(n - b) as usize] + b - k;
        if lhs != rhs {
            identity_ok = false;
            witness = Some(format!("dual profile at b = {}: {} != {}", b, lhs, rhs));
            break;
        }
    }
    report.push(ClauseCheck::from_flag(
        "profile_identity",
        "7.1(1)",
        identity_ok,
        witness,
    ));

    let central = central_theorem_report(&primal.pair()?, &co.pair()?, 1)?;
    report.push(ClauseCheck::from_flag(
        "weight_partition",
        "7.1(2)",
        central.partitions,
        central.witness.clone(),
    ));
    Ok(report)
}

/// Duality report for the poset metric: the dual demi-matroid identity on
/// every subset, the profile identity over the dual poset, and the
/// residue partitions of [1, m].
pub fn theorem72_report(
    flags: &CodeFlagFamily,
    p: &Poset,
    inner_form: &BilinearForm,
    caps: &Caps,
) -> Result<TheoremReport> {
    if p.len() != flags.m() {
        return invalid("poset must live on the position set E");
    }
    let dual = flags.dual_flags(inner_form)?;
    let k = flags.common_k()?;
    let w = flags.w_dim() as i64;
    let m = flags.m() as i64;
    let full = (1u64 << flags.m()) - 1;

    let mut report = TheoremReport::new();

    // h1(J) = f1(E - J) + w|J| - k on every subset: the dual flag rank
    // computed by annihilators against the demi-matroid dual formula.
    let mut structural_ok = true;
    let mut witness = None;
    for mask in 0..=full {
        let lhs = dual.f1(mask);
        let rhs = flags.f1(full & !mask) + w * mask.count_ones() as i64 - k;
        if lhs != rhs {
            structural_ok = false;
            witness = Some(format!("dual rank at J = {:#b}: {} != {}", mask, lhs, rhs));
            break;
        }
    }
    report.push(ClauseCheck::from_flag(
        "dual_rank_identity",
        "7.1-prop(2)",
        structural_ok,
        witness,
    ));

    let primal = poset_weights(flags, p, caps)?;
    let co = poset_weights(&dual, &p.dual(), caps)?;

    let mut identity_ok = true;
    let mut witness = None;
    for b in 0..=m {
        let lhs = co.profiles[b as usize];
        let rhs = primal.profiles[(m - b) as usize] + w * b - k;
        if lhs != rhs {
            identity_ok = false;
            witness = Some(format!("dual profile at b = {}: {} != {}", b, lhs, rhs));
            break;
        }
    }
    report.push(ClauseCheck::from_flag(
        "profile_identity",
        "7.2(1)",
        identity_ok,
        witness,
    ));

    let central = central_theorem_report(&primal.pair()?, &co.pair()?, w)?;
    report.push(ClauseCheck::from_flag(
        "residue_partitions",
        "7.2(2)",
        central.partitions,
        central.witness.clone(),
    ));
    Ok(report)
}

/// Duality report for the matrix-rank metric: the dual identity on the
/// lattice of M, the profile identity over [0, w], and the residue
/// partitions of [1, w] (classes mod m).
pub fn theorem73_report(
    flags: &CodeFlagFamily,
    fam: &SubspaceFamily,
    inner_form: &BilinearForm,
    caps: &Caps,
) -> Result<TheoremReport> {
    let dual = flags.dual_flags(inner_form)?;
    let k = flags.common_k()?;
    let w = flags.w_dim() as i64;
    let m = flags.m() as i64;
    let dual_fam = fam.annihilators(inner_form)?;

    let mut report = TheoremReport::new();

    let lattice = SubspaceLattice::new(flags.ring().clone(), flags.w_dim(), caps)?;
    let mut structural_ok = true;
    let mut witness = None;
    for l in lattice.spaces() {
        let lhs = dual.f2(l);
        let rhs = flags.f2(&inner_form.left_annihilator(l)) + m * l.dim() as i64 - k;
        if lhs != rhs {
            structural_ok = false;
            witness = Some(format!(
                "dual rank at a {}-dimensional space of M: {} != {}",
                l.dim(),
                lhs,
                rhs
            ));
            break;
        }
    }
    report.push(ClauseCheck::from_flag(
        "dual_rank_identity",
        "7.1-prop(3)",
        structural_ok,
        witness,
    ));

    let primal = delsarte_weights(flags, fam)?;
    let co = delsarte_weights(&dual, &dual_fam)?;

    let mut identity_ok = true;
    let mut witness = None;
    for b in 0..=w {
        let lhs = co.profiles[b as usize];
        let rhs = primal.profiles[(w - b) as usize] + m * b - k;
        if lhs != rhs {
            identity_ok = false;
            witness = Some(format!("dual profile at b = {}: {} != {}", b, lhs, rhs));
            break;
        }
    }
    report.push(ClauseCheck::from_flag(
        "profile_identity",
        "7.3(1)",
        identity_ok,
        witness,
    ));

    let central = central_theorem_report(&primal.pair()?, &co.pair()?, m)?;
    report.push(ClauseCheck::from_flag(
        "residue_partitions",
        "7.3(2)",
        central.partitions,
        central.witness.clone(),
    ));
    Ok(report)
}

/// A linear code over Z/p^s with its module rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainRingCode {
    m: usize,
    code: Submodule,
}

impl ChainRingCode {
    pub fn new(ring: Ring, m: usize, generator_rows: &[Vec<u64>]) -> Result<ChainRingCode> {
        if ring.is_field() {
            return invalid("chain-ring codes require a chain ring");
        }
        if m == 0 || m > 16 {
            return invalid("code length must be in [1, 16]");
        }
        let code = Submodule::from_rows(ring, m, generator_rows)?;
        Ok(ChainRingCode { m, code })
    }

    pub fn from_submodule(code: Submodule) -> ChainRingCode {
        ChainRingCode {
            m: code.ambient_dim(),
            code,
        }
    }

    pub fn ring(&self) -> &Ring {
        self.code.ring()
    }

    pub fn length(&self) -> usize {
        self.m
    }

    pub fn rank(&self) -> usize {
        self.code.rank()
    }

    pub fn module(&self) -> &Submodule {
        &self.code
    }

    /// rank(C n delta(J)).
    pub fn rank_meet_delta(&self, mask: u64) -> i64 {
        let delta = Submodule::coordinate(self.ring().clone(), self.m, mask);
        self.code.intersect(&delta).unwrap().rank() as i64
    }

    /// The rank function J -> rank(C n delta(J)) as a 1-demi-matroid.
    pub fn rank_demimatroid(&self) -> Result<DemiMatroid> {
        let table: Vec<i64> = (0..1u64 << self.m)
            .map(|mask| self.rank_meet_delta(mask))
            .collect();
        let dm = DemiMatroid::new(self.m, 1, table)?;
        dm.validate()
            .map_err(|v| Error::InvalidInput(format!("rank function not a demi-matroid: {}", v)))?;
        Ok(dm)
    }

    /// The annihilator code under the standard inner product.
    pub fn annihilator(&self) -> ChainRingCode {
        let form = BilinearForm::standard(self.ring().clone(), self.m);
        ChainRingCode::from_submodule(form.right_annihilator_module(&self.code))
    }
}

/// Rank-relative weights and profiles of (C, P), with the subcode
/// formulation (minimum generated-ideal size of the support of a
/// submodule of each rank) verified against the demi-matroid tables.
pub fn ghwr_weights(c: &ChainRingCode, p: &Poset, caps: &Caps) -> Result<WeightProfile> {
    if p.len() != c.length() {
        return invalid("poset must live on the position set E");
    }
    let dm = c.rank_demimatroid()?;
    let wp = weights_profiles_poset(&dm, p, caps)?;

    // Subcode route: enumerate submodules of C and minimize the size of
    // the ideal generated by their supports, rank by rank.
    let subs = c.module().submodules(caps)?;
    let t = c.rank() as i64;
    for a in 0..=t {
        let best = subs
            .iter()
            .filter(|d| d.rank() as i64 == a)
            .map(|d| p.generated_ideal(d.support_mask()).count_ones() as i64)
            .min()
            .expect("submodules of every rank up to t exist");
        if best != wp.weights[a as usize] {
            return invalid(format!(
                "subcode formulation disagrees at rank {}: {} != {}",
                a, best, wp.weights[a as usize]
            ));
        }
    }
    Ok(wp)
}

/// The free-closure duality report: a free module M of the same rank
/// containing C has the same weights and profiles as C, and the
/// annihilator of M carries the dual demi-matroid. Clauses: weight
/// equality, profile equality, the profile identity over the dual poset,
/// the partition of [1, m], the dual demi-matroid identity on every
/// subset, and agreement of the tables across the two deterministic
/// closures when they differ.
pub fn theorem74_report(c: &ChainRingCode, p: &Poset, caps: &Caps) -> Result<TheoremReport> {
    if p.len() != c.length() {
        return invalid("poset must live on the position set E");
    }
    let m = c.length() as i64;
    let t = c.rank() as i64;
    let full = (1u64 << c.length()) - 1;
    let mut report = TheoremReport::new();

    let closure = ChainRingCode::from_submodule(c.module().free_closure(false));
    let closure_ann = closure.annihilator();
    if closure_ann.rank() as i64 != m - t {
        return invalid("closure annihilator has unexpected rank");
    }

    let c_dm = c.rank_demimatroid()?;
    let m_dm = closure.rank_demimatroid()?;
    let ann_dm = closure_ann.rank_demimatroid()?;

    // Dual demi-matroid identity h(J) = f(E-J) + |J| - t between the
    // closure and its annihilator.
    let mut prop_ok = true;
    let mut witness = None;
    for mask in 0..=full {
        let lhs = ann_dm.rank(mask);
        let rhs = m_dm.rank(full & !mask) + mask.count_ones() as i64 - t;
        if lhs != rhs {
            prop_ok = false;
            witness = Some(format!("dual rank at J = {:#b}: {} != {}", mask, lhs, rhs));
            break;
        }
    }
    report.push(ClauseCheck::from_flag(
        "closure_dual_rank_identity",
        "7.3-prop",
        prop_ok,
        witness,
    ));

    let c_wp = weights_profiles_poset(&c_dm, p, caps)?;
    let m_wp = weights_profiles_poset(&m_dm, p, caps)?;
    let ann_wp = weights_profiles_poset(&ann_dm, &p.dual(), caps)?;

    report.push(ClauseCheck::from_flag(
        "closure_weight_equality",
        "7.4(1)",
        c_wp.weights == m_wp.weights,
        Some(format!(
            "weights of the code {:?} differ from the closure {:?}",
            c_wp.weights, m_wp.weights
        )),
    ));
    report.push(ClauseCheck::from_flag(
        "closure_profile_equality",
        "7.4(2)",
        c_wp.profiles == m_wp.profiles,
        Some(format!(
            "profiles of the code {:?} differ from the closure {:?}",
            c_wp.profiles, m_wp.profiles
        )),
    ));

    let mut identity_ok = true;
    let mut witness = None;
    for l in 0..=m {
        let lhs = ann_wp.profiles[l as usize];
        let rhs = c_wp.profiles[(m - l) as usize] + l - t;
        if lhs != rhs {
            identity_ok = false;
            witness = Some(format!("dual profile at l = {}: {} != {}", l, lhs, rhs));
            break;
        }
    }
    report.push(ClauseCheck::from_flag(
        "profile_identity",
        "7.4(3)",
        identity_ok,
        witness,
    ));

    let central = central_theorem_report(&c_wp.pair()?, &ann_wp.pair()?, 1)?;
    report.push(ClauseCheck::from_flag(
        "weight_partition",
        "7.4(4)",
        central.partitions,
        central.witness.clone(),
    ));

    // Closure independence: the mirrored diagonalization may produce a
    // different free closure; the tables must not change.
    let alt = ChainRingCode::from_submodule(c.module().free_closure(true));
    if alt.module() != closure.module() {
        let alt_wp = weights_profiles_poset(&alt.rank_demimatroid()?, p, caps)?;
        report.push(ClauseCheck::from_flag(
            "closure_independence",
            "7.4(1)(2)",
            alt_wp == m_wp,
            Some("tables differ between two free closures".to_string()),
        ));
    }
    Ok(report)
}

/// Random nested subspace chain with prescribed dimensions (descending).
fn random_chain(
    rng: &mut SplitMix64,
    ring: &Ring,
    n: usize,
    dims_desc: &[usize],
) -> Vec<Subspace> {
    let q = ring.size();
    let mut chain: Vec<Subspace> = Vec::new();
    // Build from the smallest up, then reverse.
    let mut current = Subspace::zero(ring.clone(), n);
    let mut asc: Vec<usize> = dims_desc.to_vec();
    asc.reverse();
    let mut out_asc: Vec<Subspace> = Vec::new();
    for &d in &asc {
        while current.dim() < d {
            let v: Vec<u64> = (0..n).map(|_| rng.below(q)).collect();
            let candidate = current
                .sum(&Subspace::from_rows(ring.clone(), n, &[v]).unwrap())
                .unwrap();
            if candidate.dim() > current.dim() {
                current = candidate;
            }
        }
        out_asc.push(current.clone());
    }
    out_asc.reverse();
    chain.extend(out_asc);
    chain
}

/// Deterministic random flag family with odd flag lengths and a common
/// alternating sum, suitable for the duality reports.
pub fn random_odd_flag_family(
    ring: &Ring,
    w_dim: usize,
    m: usize,
    flag_count: usize,
    seed: u64,
) -> Result<CodeFlagFamily> {
    let n = w_dim * m;
    let mut rng = SplitMix64::new(seed);
    let k = rng.below(n as u64 + 1) as i64;
    let mut flags = Vec::new();
    for _ in 0..flag_count {
        let u = if rng.below(2) == 0 { 1 } else { 3 };
        if u == 1 {
            flags.push(random_chain(&mut rng, ring, n, &[k as usize]));
        } else {
            // d1 - d2 + d3 = k with d3 <= d2 <= d1 <= n.
            let d3 = rng.below(k as u64 + 1) as usize;
            let hi = n - k as usize + d3;
            let d2 = d3 + rng.below((hi - d3) as u64 + 1) as usize;
            let d1 = k as usize + d2 - d3;
            flags.push(random_chain(&mut rng, ring, n, &[d1, d2, d3]));
        }
    }
    CodeFlagFamily::new(ring.clone(), w_dim, m, flags)
}

/// Random flag family without the common-sum requirement (used for the
/// rank functions of the weight theory, where k is a maximum).
pub fn random_flag_family(
    ring: &Ring,
    w_dim: usize,
    m: usize,
    flag_count: usize,
    seed: u64,
) -> Result<CodeFlagFamily> {
    let n = w_dim * m;
    let mut rng = SplitMix64::new(seed);
    let mut flags = Vec::new();
    for _ in 0..flag_count {
        let u = if rng.below(2) == 0 { 1 } else { 3 };
        let mut dims: Vec<usize> = (0..u).map(|_| rng.below(n as u64 + 1) as usize).collect();
        dims.sort_unstable();
        dims.reverse();
        flags.push(random_chain(&mut rng, ring, n, &dims));
    }
    CodeFlagFamily::new(ring.clone(), w_dim, m, flags)
}

/// The induced demi-matroid of a random flag family over GF(2) with inner
/// dimension w; the generation backend of the code-flag sampling
/// strategy.
pub fn random_flag_demimatroid(m: usize, w: i64, seed: u64) -> Result<DemiMatroid> {
    if w <= 0 {
        return invalid("w must be positive");
    }
    let ring = Ring::field(2, 1)?;
    let mut rng = SplitMix64::new(seed);
    let flag_count = 1 + rng.below(2) as usize;
    let flags = random_flag_family(&ring, w as usize, m, flag_count, rng.next_u64())?;
    flags.f1_demimatroid()
}
