use std::collections::HashMap;

use super::matrix::Matrix;
use super::ring::Ring;
use crate::error::{invalid, Caps, Result};

/// A submodule of (Z/p^s)^n in Howell canonical form, together with its
/// rank (minimum number of generators, from the Smith valuations) and the
/// valuations of its invariant factors.
#[derive(Clone, PartialEq, Eq)]
pub struct Submodule {
    ambient: usize,
    howell: Matrix,
    rank: usize,
    divisor_vals: Vec<u32>,
}

impl std::fmt::Debug for Submodule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Submodule(rank {} of {:?}^{}: {:?})",
            self.rank,
            self.howell.ring(),
            self.ambient,
            self.howell.row_vecs()
        )
    }
}

impl Submodule {
    pub fn from_rows(ring: Ring, ambient: usize, rows: &[Vec<u64>]) -> Result<Submodule> {
        if ring.is_field() {
            return invalid("submodules require a chain ring; use Subspace for fields");
        }
        let m = Matrix::from_rows(ring, ambient, rows)?;
        Ok(Submodule::from_matrix(m))
    }

    pub fn from_matrix(m: Matrix) -> Submodule {
        assert!(!m.ring().is_field());
        let ambient = m.cols();
        let howell = m.echelonize().matrix;
        let divisor_vals = howell.smith_valuations();
        let rank = divisor_vals.len();
        Submodule {
            ambient,
            howell,
            rank,
            divisor_vals,
        }
    }

    pub fn zero(ring: Ring, ambient: usize) -> Submodule {
        Submodule {
            ambient,
            howell: Matrix::zeros(ring, 0, ambient),
            rank: 0,
            divisor_vals: vec![],
        }
    }

    pub fn full(ring: Ring, ambient: usize) -> Submodule {
        Submodule {
            ambient,
            howell: Matrix::identity(ring.clone(), ambient),
            rank: ambient,
            divisor_vals: vec![0; ambient],
        }
    }

    /// delta(J) over the chain ring: the coordinate submodule supported on
    /// the positions of `mask`.
    pub fn coordinate(ring: Ring, ambient: usize, mask: u64) -> Submodule {
        let mut rows = Vec::new();
        for i in 0..ambient {
            if mask >> i & 1 == 1 {
                let mut r = vec![0u64; ambient];
                r[i] = 1;
                rows.push(r);
            }
        }
        Submodule::from_rows(ring, ambient, &rows).expect("coordinate rows valid")
    }

    pub fn ring(&self) -> &Ring {
        self.howell.ring()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Minimum number of generators.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Valuations a_1 <= ... <= a_r of the invariant factors p^(a_i); the
    /// module is isomorphic to the direct sum of Z/p^(s-a_i).
    pub fn divisor_valuations(&self) -> &[u32] {
        &self.divisor_vals
    }

    pub fn is_free(&self) -> bool {
        self.divisor_vals.iter().all(|&a| a == 0)
    }

    pub fn is_zero(&self) -> bool {
        self.howell.rows() == 0
    }

    /// Number of elements: the product of p^(s - a_i) over the Howell
    /// pivot valuations a_i (each element has a unique coefficient vector
    /// against the Howell rows with coefficients in [0, p^(s-a_i))).
    pub fn size(&self) -> u128 {
        let ech = self.howell.echelonize();
        let p = self.ring().prime() as u128;
        let s = self.ring().exponent();
        ech.pivots
            .iter()
            .map(|pv| p.pow(s - pv.val))
            .product()
    }

    pub fn basis(&self) -> &Matrix {
        &self.howell
    }

    pub fn contains_vec(&self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let ring = self.ring().clone();
        let mut v = v.to_vec();
        for i in 0..self.howell.rows() {
            let row = self.howell.row(i);
            let lead = row.iter().position(|&x| x != 0).unwrap();
            if v[lead] != 0 {
                let a = ring.val(row[lead]);
                if ring.val(v[lead]) < a {
                    return false;
                }
                let (q, _) = ring.pivot_div_rem(v[lead], a);
                for (x, &b) in v.iter_mut().zip(row) {
                    *x = ring.sub(*x, ring.mul(q, b));
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }

    pub fn contains(&self, other: &Submodule) -> bool {
        assert_eq!(self.ambient, other.ambient);
        (0..other.howell.rows()).all(|i| self.contains_vec(other.howell.row(i)))
    }

    pub fn sum(&self, other: &Submodule) -> Result<Submodule> {
        if self.ambient != other.ambient || self.ring() != other.ring() {
            return invalid("ambient mismatch in submodule sum");
        }
        Ok(Submodule::from_matrix(self.howell.vstack(&other.howell)))
    }

    pub fn intersect(&self, other: &Submodule) -> Result<Submodule> {
        if self.ambient != other.ambient || self.ring() != other.ring() {
            return invalid("ambient mismatch in submodule intersection");
        }
        let ring = self.ring().clone();
        let ra = self.howell.rows();
        if ra == 0 || other.howell.rows() == 0 {
            return Ok(Submodule::zero(ring, self.ambient));
        }
        let stacked = self.howell.vstack(&other.howell);
        let kernel = stacked.left_kernel();
        let mut rows = Vec::new();
        for i in 0..kernel.rows() {
            let u = &kernel.row(i)[..ra];
            let mut vec = vec![0u64; self.ambient];
            for (coef_idx, &c) in u.iter().enumerate() {
                if c != 0 {
                    for (x, &b) in vec.iter_mut().zip(self.howell.row(coef_idx)) {
                        *x = ring.add(*x, ring.mul(c, b));
                    }
                }
            }
            rows.push(vec);
        }
        Submodule::from_rows(ring, self.ambient, &rows)
    }

    /// Positions where some element of the module is nonzero.
    pub fn support_mask(&self) -> u64 {
        let mut mask = 0u64;
        for i in 0..self.howell.rows() {
            for (j, &x) in self.howell.row(i).iter().enumerate() {
                if x != 0 {
                    mask |= 1 << j;
                }
            }
        }
        mask
    }

    /// All elements (unique coefficient combinations of the Howell rows).
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let ring = self.ring().clone();
        let p = ring.prime();
        let s = ring.exponent();
        let ech = self.howell.echelonize();
        let ranges: Vec<u64> = ech.pivots.iter().map(|pv| p.pow(s - pv.val)).collect();
        let total: u64 = ranges.iter().product();
        let mut out = Vec::with_capacity(total as usize);
        for idx in 0..total {
            let mut v = vec![0u64; self.ambient];
            let mut rest = idx;
            for (i, &r) in ranges.iter().enumerate() {
                let c = rest % r;
                rest /= r;
                if c != 0 {
                    for (x, &b) in v.iter_mut().zip(self.howell.row(i)) {
                        *x = ring.add(*x, ring.mul(c, b));
                    }
                }
            }
            out.push(v);
        }
        out
    }

    /// Deterministic free closure: a free submodule M of the same rank
    /// containing this module. The Smith diagonalization writes the module
    /// as generated by p^(a_i) * q_i with the q_i rows of an invertible
    /// matrix, so the span of the q_i themselves is free of rank r and
    /// contains every generator. `mirror` selects the second deterministic
    /// pivoting order, which may produce a different closure.
    pub fn free_closure(&self, mirror: bool) -> Submodule {
        let (vals, qinv) = self.howell.smith_with_colbasis(mirror);
        let rows: Vec<Vec<u64>> = (0..vals.len()).map(|i| qinv.row(i).to_vec()).collect();
        let closure = Submodule::from_rows(self.ring().clone(), self.ambient, &rows)
            .expect("closure rows well formed");
        assert!(closure.is_free(), "free closure must be free");
        assert_eq!(closure.rank(), self.rank(), "free closure keeps the rank");
        assert!(closure.contains(self), "free closure contains the module");
        closure
    }

    /// All submodules of this module, by breadth-first closure: repeatedly
    /// adjoin one element and canonicalize. Deterministic output order
    /// (sorted by Howell data).
    pub fn submodules(&self, caps: &Caps) -> Result<Vec<Submodule>> {
        let ring = self.ring().clone();
        let elems = self.elements();
        let mut seen: HashMap<Vec<u64>, usize> = HashMap::new();
        let key = |m: &Submodule| -> Vec<u64> {
            let mut k = vec![m.howell.rows() as u64];
            k.extend_from_slice(m.howell.data());
            k
        };
        let mut all: Vec<Submodule> = vec![Submodule::zero(ring, self.ambient)];
        seen.insert(key(&all[0]), 0);
        let mut frontier = vec![0usize];
        while let Some(i) = frontier.pop() {
            let current = all[i].clone();
            for e in &elems {
                if current.contains_vec(e) {
                    continue;
                }
                let mut rows = current.howell.row_vecs();
                rows.push(e.clone());
                let next = Submodule::from_rows(current.ring().clone(), self.ambient, &rows)?;
                let k = key(&next);
                if !seen.contains_key(&k) {
                    caps.check(all.len() as u128 + 1)?;
                    seen.insert(k, all.len());
                    frontier.push(all.len());
                    all.push(next);
                }
            }
        }
        all.sort_by(|a, b| {
            (a.howell.rows(), a.howell.data()).cmp(&(b.howell.rows(), b.howell.data()))
        });
        Ok(all)
    }
}

/// Every submodule of (Z/p^s)^n, smallest first.
pub fn enumerate_submodules(ring: &Ring, n: usize, caps: &Caps) -> Result<Vec<Submodule>> {
    Submodule::full(ring.clone(), n).submodules(caps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4() -> Ring {
        Ring::chain(2, 2).unwrap()
    }

    #[test]
    fn rank_of_single_generator() {
        let m = Submodule::from_rows(z4(), 2, &[vec![2, 2]]).unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(m.size(), 2);
        assert!(!m.is_free());
    }

    #[test]
    fn rank_two_from_three_generators() {
        let m = Submodule::from_rows(z4(), 2, &[vec![2, 0], vec![0, 2], vec![1, 1]]).unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.size(), 8);
    }

    #[test]
    fn zero_module() {
        let m = Submodule::from_rows(z4(), 2, &[vec![0, 0]]).unwrap();
        assert_eq!(m.rank(), 0);
        assert!(m.is_zero());
        assert_eq!(m.size(), 1);
    }

    #[test]
    fn canonical_across_generating_sets() {
        let a = Submodule::from_rows(z4(), 2, &[vec![2, 1]]).unwrap();
        let b = Submodule::from_rows(z4(), 2, &[vec![2, 3]]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.size(), 4);
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn rank_matches_brute_force_minimum_on_z4_squared() {
        // For every submodule of (Z4)^2, the Smith-based rank equals the
        // smallest generator count found by brute force.
        let caps = Caps::default();
        let all = enumerate_submodules(&z4(), 2, &caps).unwrap();
        for m in &all {
            let elems = m.elements();
            let mut best = None;
            'outer: for count in 0..=2usize {
                // Try all generator tuples of this size.
                let mut idx = vec![0usize; count];
                loop {
                    let rows: Vec<Vec<u64>> = idx.iter().map(|&i| elems[i].clone()).collect();
                    let gen = Submodule::from_rows(z4(), 2, &rows).unwrap();
                    if &gen == m {
                        best = Some(count);
                        break 'outer;
                    }
                    let mut c = count;
                    loop {
                        if c == 0 {
                            break;
                        }
                        c -= 1;
                        idx[c] += 1;
                        if idx[c] < elems.len() {
                            break;
                        }
                        idx[c] = 0;
                    }
                    if idx.iter().all(|&i| i == 0) {
                        break;
                    }
                    if count == 0 {
                        break;
                    }
                }
            }
            assert_eq!(m.rank(), best.expect("some generating tuple found"));
        }
    }

    #[test]
    fn free_closure_of_spec_example() {
        let c = Submodule::from_rows(z4(), 2, &[vec![2, 2]]).unwrap();
        let m = c.free_closure(false);
        assert!(m.is_free());
        assert_eq!(m.rank(), 1);
        assert!(m.contains(&c));
        let expected = Submodule::from_rows(z4(), 2, &[vec![1, 1]]).unwrap();
        assert_eq!(m, expected);
    }

    #[test]
    fn membership_and_elements() {
        let m = Submodule::from_rows(z4(), 2, &[vec![2, 1]]).unwrap();
        let elems = m.elements();
        assert_eq!(elems.len(), 4);
        for e in &elems {
            assert!(m.contains_vec(e));
        }
        assert!(!m.contains_vec(&[1, 0]));
        assert!(m.contains_vec(&[0, 2]));
    }

    #[test]
    fn submodule_count_of_z4_line() {
        let caps = Caps::default();
        let all = enumerate_submodules(&z4(), 1, &caps).unwrap();
        // Z4 has submodules 0, 2Z4, Z4.
        assert_eq!(all.len(), 3);
    }
}
