use std::collections::HashMap;

use super::matrix::Matrix;
use super::ring::Ring;
use crate::error::{invalid, Caps, Result};

/// A subspace of F_q^n held as its reduced-row-echelon basis with no zero
/// rows. The representation is canonical, so equality is entrywise.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Subspace(dim {} of {:?}^{}: {:?})",
            self.dim(),
            self.basis.ring(),
            self.ambient,
            self.basis.row_vecs()
        )
    }
}

impl Subspace {
    pub fn from_rows(ring: Ring, ambient: usize, rows: &[Vec<u64>]) -> Result<Subspace> {
        if !ring.is_field() {
            return invalid("subspaces require a field; use Submodule for chain rings");
        }
        let m = Matrix::from_rows(ring, ambient, rows)?;
        Ok(Subspace::from_matrix(m))
    }

    pub fn from_matrix(m: Matrix) -> Subspace {
        assert!(m.ring().is_field());
        let ambient = m.cols();
        let basis = m.echelonize().matrix;
        Subspace { ambient, basis }
    }

    pub fn zero(ring: Ring, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::zeros(ring, 0, ambient),
        }
    }

    pub fn full(ring: Ring, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::identity(ring, ambient),
        }
    }

    /// The coordinate subspace delta(J): vectors vanishing outside the
    /// positions selected by `mask` (bit i = position i).
    pub fn coordinate(ring: Ring, ambient: usize, mask: u64) -> Subspace {
        let mut rows = Vec::new();
        for i in 0..ambient {
            if mask >> i & 1 == 1 {
                let mut r = vec![0u64; ambient];
                r[i] = 1;
                rows.push(r);
            }
        }
        Subspace::from_rows(ring, ambient, &rows).expect("coordinate rows valid")
    }

    pub fn ring(&self) -> &Ring {
        self.basis.ring()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Support chi: positions where some basis vector (equivalently, some
    /// element) is nonzero, as a bitmask.
    pub fn support_mask(&self) -> u64 {
        let mut mask = 0u64;
        for i in 0..self.basis.rows() {
            for (j, &x) in self.basis.row(i).iter().enumerate() {
                if x != 0 {
                    mask |= 1 << j;
                }
            }
        }
        mask
    }

    pub fn contains_vec(&self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let ring = self.ring().clone();
        let mut v = v.to_vec();
        for i in 0..self.basis.rows() {
            let lead = self.basis.row(i).iter().position(|&x| x != 0).unwrap();
            if v[lead] != 0 {
                let f = v[lead]; // pivot entry is 1 in RREF
                for (x, &b) in v.iter_mut().zip(self.basis.row(i)) {
                    *x = ring.sub(*x, ring.mul(f, b));
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient, other.ambient);
        (0..other.basis.rows()).all(|i| self.contains_vec(other.basis.row(i)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient || self.ring() != other.ring() {
            return invalid("ambient mismatch in subspace sum");
        }
        Ok(Subspace::from_matrix(self.basis.vstack(&other.basis)))
    }

    /// Intersection via the left kernel of the stacked bases: rows (u, v)
    /// with u*A + v*B = 0 give u*A running over the intersection.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient || self.ring() != other.ring() {
            return invalid("ambient mismatch in subspace intersection");
        }
        let ra = self.basis.rows();
        if ra == 0 || other.basis.rows() == 0 {
            return Ok(Subspace::zero(self.ring().clone(), self.ambient));
        }
        let stacked = self.basis.vstack(&other.basis);
        let kernel = stacked.left_kernel();
        let mut rows = Vec::new();
        let ring = self.ring().clone();
        for i in 0..kernel.rows() {
            let u = &kernel.row(i)[..ra];
            let mut vec = vec![0u64; self.ambient];
            for (coef_idx, &c) in u.iter().enumerate() {
                if c != 0 {
                    for (x, &b) in vec.iter_mut().zip(self.basis.row(coef_idx)) {
                        *x = ring.add(*x, ring.mul(c, b));
                    }
                }
            }
            rows.push(vec);
        }
        Subspace::from_rows(ring, self.ambient, &rows)
    }

    /// All vectors of the subspace, in coefficient-lexicographic order.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let ring = self.ring().clone();
        let q = ring.size();
        let d = self.dim();
        let total = q.pow(d as u32);
        let mut out = Vec::with_capacity(total as usize);
        for idx in 0..total {
            let mut v = vec![0u64; self.ambient];
            let mut rest = idx;
            for i in 0..d {
                let c = rest % q;
                rest /= q;
                if c != 0 {
                    for (x, &b) in v.iter_mut().zip(self.basis.row(i)) {
                        *x = ring.add(*x, ring.mul(c, b));
                    }
                }
            }
            out.push(v);
        }
        out
    }
}

/// Gaussian binomial coefficient [n choose k]_q, saturating at u128::MAX
/// (which is far past every enumeration cap, so saturation only ever
/// means "refuse").
pub fn gaussian_binomial(q: u128, n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    // Multiply and divide incrementally so intermediate values stay
    // proportional to the result: after step i the accumulator equals
    // [i+1 choose i+1 .. running]_q which is integral.
    let mut acc: u128 = 1;
    for i in 0..k {
        let num = match q.checked_pow((n - i) as u32) {
            Some(v) => v - 1,
            None => return u128::MAX,
        };
        let den = q.pow((i + 1) as u32) - 1;
        acc = match acc.checked_mul(num) {
            Some(v) => v / den,
            None => return u128::MAX,
        };
    }
    acc
}

/// Total number of subspaces of F_q^n (all dimensions), saturating.
pub fn count_all_subspaces(q: u128, n: u64) -> u128 {
    let mut total: u128 = 0;
    for k in 0..=n {
        total = total.saturating_add(gaussian_binomial(q, n, k));
    }
    total
}

/// Enumerate the subspaces of F_q^n of dimension `dim` exactly once, by
/// running over RREF shapes: a set of pivot columns and all fillings of
/// the free entries. Output is sorted by flattened basis entries.
fn enumerate_dim(ring: &Ring, n: usize, dim: usize) -> Vec<Subspace> {
    if dim == 0 {
        return vec![Subspace::zero(ring.clone(), n)];
    }
    let q = ring.size();
    let mut out = Vec::new();
    // Pivot column combinations in lexicographic order.
    let mut pivots: Vec<usize> = (0..dim).collect();
    loop {
        // Free positions: (i, j) with j > pivots[i], j not a pivot column.
        let mut free = Vec::new();
        for (i, &pc) in pivots.iter().enumerate() {
            for j in pc + 1..n {
                if !pivots.contains(&j) {
                    free.push((i, j));
                }
            }
        }
        let count = q.pow(free.len() as u32);
        for fill in 0..count {
            let mut basis = Matrix::zeros(ring.clone(), dim, n);
            for (i, &pc) in pivots.iter().enumerate() {
                basis.set(i, pc, 1);
            }
            let mut rest = fill;
            for &(i, j) in &free {
                basis.set(i, j, rest % q);
                rest /= q;
            }
            out.push(Subspace {
                ambient: n,
                basis,
            });
        }
        // Next combination.
        let mut i = dim;
        loop {
            if i == 0 {
                return finish(out);
            }
            i -= 1;
            if pivots[i] != i + n - dim {
                pivots[i] += 1;
                for j in i + 1..dim {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }

    fn finish(mut out: Vec<Subspace>) -> Vec<Subspace> {
        out.sort_by(|a, b| a.basis.data().cmp(b.basis.data()));
        out
    }
}

/// Enumerate subspaces of F_q^n, optionally restricted to one dimension.
/// Deterministic order: ascending dimension, then basis entries.
pub fn enumerate_subspaces(
    ring: &Ring,
    n: usize,
    dim_filter: Option<usize>,
    caps: &Caps,
) -> Result<Vec<Subspace>> {
    if !ring.is_field() {
        return invalid("subspace enumeration requires a field");
    }
    let q = ring.size() as u128;
    let needed: u128 = match dim_filter {
        Some(d) => gaussian_binomial(q, n as u64, d as u64),
        None => count_all_subspaces(q, n as u64),
    };
    caps.check(needed)?;
    let dims: Vec<usize> = match dim_filter {
        Some(d) => {
            if d > n {
                return invalid("dimension filter exceeds ambient dimension");
            }
            vec![d]
        }
        None => (0..=n).collect(),
    };
    let mut out = Vec::new();
    for d in dims {
        out.extend(enumerate_dim(ring, n, d));
    }
    Ok(out)
}

/// All r-dimensional subspaces of a given code, produced by enumerating
/// r-dimensional coefficient spaces in the code's own basis and mapping
/// them up to the ambient space.
pub fn enumerate_subcodes(code: &Subspace, r: usize, caps: &Caps) -> Result<Vec<Subspace>> {
    let k = code.dim();
    if r > k {
        return invalid("subcode dimension exceeds the code dimension");
    }
    let ring = code.ring().clone();
    let coeff_spaces = enumerate_subspaces(&ring, k, Some(r), caps)?;
    let mut out = Vec::with_capacity(coeff_spaces.len());
    for cs in coeff_spaces {
        let rows = cs.basis().mul(code.basis());
        out.push(Subspace::from_matrix(rows));
    }
    Ok(out)
}

/// The full lattice of subspaces of F_q^n with a canonical index.
/// `spaces` is ordered by (dimension, basis entries); the position of a
/// subspace in this list is its canonical id, which the JSON encodings
/// use as the table key.
#[derive(Clone)]
pub struct SubspaceLattice {
    ring: Ring,
    n: usize,
    spaces: Vec<Subspace>,
    by_dim: Vec<Vec<usize>>,
    index: HashMap<Vec<u64>, usize>,
}

impl SubspaceLattice {
    pub fn new(ring: Ring, n: usize, caps: &Caps) -> Result<SubspaceLattice> {
        let spaces = enumerate_subspaces(&ring, n, None, caps)?;
        let mut by_dim = vec![Vec::new(); n + 1];
        let mut index = HashMap::new();
        for (i, s) in spaces.iter().enumerate() {
            by_dim[s.dim()].push(i);
            index.insert(Self::key(s), i);
        }
        Ok(SubspaceLattice {
            ring,
            n,
            spaces,
            by_dim,
            index,
        })
    }

    fn key(s: &Subspace) -> Vec<u64> {
        let mut k = vec![s.dim() as u64];
        k.extend_from_slice(s.basis().data());
        k
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.spaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spaces.is_empty()
    }

    pub fn space(&self, i: usize) -> &Subspace {
        &self.spaces[i]
    }

    pub fn spaces(&self) -> &[Subspace] {
        &self.spaces
    }

    pub fn dim(&self, i: usize) -> usize {
        self.spaces[i].dim()
    }

    pub fn by_dim(&self, d: usize) -> &[usize] {
        &self.by_dim[d]
    }

    pub fn index_of(&self, s: &Subspace) -> Option<usize> {
        self.index.get(&Self::key(s)).copied()
    }

    pub fn zero_index(&self) -> usize {
        0
    }

    pub fn full_index(&self) -> usize {
        self.spaces.len() - 1
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.spaces[j].contains(&self.spaces[i])
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        let m = self.spaces[i].intersect(&self.spaces[j]).unwrap();
        self.index_of(&m).expect("intersection is in the lattice")
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        let m = self.spaces[i].sum(&self.spaces[j]).unwrap();
        self.index_of(&m).expect("sum is in the lattice")
    }

    /// Pairs (x, y) with x covered by y (dim y = dim x + 1, x inside y).
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for d in 0..self.n {
            for &x in &self.by_dim[d] {
                for &y in &self.by_dim[d + 1] {
                    if self.spaces[y].contains(&self.spaces[x]) {
                        out.push((x, y));
                    }
                }
            }
        }
        out
    }
}
