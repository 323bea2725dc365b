use std::fmt;

use super::ring::Ring;
use crate::error::{invalid, Result};

/// Dense row-major matrix over a [`Ring`]. All arithmetic is exact.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {:?} {}x{}", self.ring, self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Pivot of an echelonized matrix: its row, column and p-adic valuation
/// (always 0 over a field).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pivot {
    pub row: usize,
    pub col: usize,
    pub val: u32,
}

/// Canonical echelon form together with its pivot profile.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub matrix: Matrix,
    pub pivots: Vec<Pivot>,
}

impl Matrix {
    pub fn new(ring: Ring, rows: usize, cols: usize, data: Vec<u64>) -> Result<Self> {
        if data.len() != rows * cols {
            return invalid("matrix data length does not match its shape");
        }
        if data.iter().any(|&x| x >= ring.size()) {
            return invalid("matrix entry out of ring range");
        }
        Ok(Matrix {
            ring,
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Self {
        Matrix {
            ring,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(ring: Ring, n: usize) -> Self {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(ring: Ring, cols: usize, rows: &[Vec<u64>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return invalid("row length mismatch");
            }
            data.extend_from_slice(r);
        }
        Matrix::new(ring, rows.len(), cols, data)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        debug_assert!(v < self.ring.size());
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Trace of a square matrix.
    pub fn trace(&self) -> u64 {
        assert_eq!(self.rows, self.cols, "trace requires a square matrix");
        let mut acc = 0;
        for i in 0..self.rows {
            acc = self.ring.add(acc, self.get(i, i));
        }
        acc
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.ring.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        assert_eq!(self.ring, other.ring);
        let r = &self.ring;
        let mut out = Matrix::zeros(self.ring.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, r.add(cur, r.mul(a, other.get(k, j))));
                }
            }
        }
        out
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.ring, other.ring);
        let mut out = Matrix::zeros(self.ring.clone(), self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        assert_eq!(self.ring, other.ring);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Canonical echelon form of the row module. Over a field this is the
    /// reduced row echelon form; over Z/p^s it is the Howell normal form,
    /// which is the unique canonical generating matrix of the row module
    /// (extension rows p^(s-a) * pivot row are folded in so that the span
    /// property holds column by column). Zero rows are dropped.
    pub fn echelonize(&self) -> Echelon {
        let ring = self.ring.clone();
        let cols = self.cols;
        let maxv = ring.max_val();
        let mut work: Vec<Vec<u64>> = self
            .row_vecs()
            .into_iter()
            .filter(|r| r.iter().any(|&x| x != 0))
            .collect();
        let mut result: Vec<Vec<u64>> = Vec::new();
        let mut pivots: Vec<Pivot> = Vec::new();

        let lead = |r: &[u64]| r.iter().position(|&x| x != 0);

        for col in 0..cols {
            // Pick, among rows leading at this column, one of minimal
            // valuation; normalize its leading entry to p^a.
            let mut best: Option<(usize, u32)> = None;
            for (idx, r) in work.iter().enumerate() {
                if lead(r) == Some(col) {
                    let v = ring.val(r[col]);
                    if best.map_or(true, |(_, bv)| v < bv) {
                        best = Some((idx, v));
                    }
                }
            }
            let (pivot_idx, a) = match best {
                Some(b) => b,
                None => continue,
            };
            let mut pivot_row = work.swap_remove(pivot_idx);
            let u_inv = ring.inv(ring.unit_part(pivot_row[col])).unwrap();
            for x in pivot_row.iter_mut() {
                *x = ring.mul(*x, u_inv);
            }
            debug_assert_eq!(pivot_row[col], ring.p_pow(a));

            // Eliminate every other row leading at this column.
            let mut i = 0;
            while i < work.len() {
                if lead(&work[i]) == Some(col) {
                    let e = work[i][col];
                    let factor = ring.mul(ring.unit_part(e), ring.p_pow(ring.val(e) - a));
                    for (x, &pv) in work[i].iter_mut().zip(&pivot_row) {
                        *x = ring.sub(*x, ring.mul(factor, pv));
                    }
                    if work[i].iter().all(|&x| x == 0) {
                        work.swap_remove(i);
                        continue;
                    }
                }
                i += 1;
            }

            // Howell extension: p^(s-a) times the pivot row leads strictly
            // to the right and must stay available as a generator.
            if a > 0 && a < maxv {
                let scale = ring.p_pow(maxv - a);
                let extra: Vec<u64> = pivot_row.iter().map(|&x| ring.mul(scale, x)).collect();
                if extra.iter().any(|&x| x != 0) {
                    work.push(extra);
                }
            }

            pivots.push(Pivot {
                row: result.len(),
                col,
                val: a,
            });
            result.push(pivot_row);
        }
        debug_assert!(work.is_empty());

        // Reduce entries above each pivot to canonical representatives
        // modulo p^a (full clearing over a field).
        for pi in 0..pivots.len() {
            let Pivot { row, col, val } = pivots[pi];
            let pivot_row = result[row].clone();
            for j in 0..row {
                let (q, _) = ring.pivot_div_rem(result[j][col], val);
                if q != 0 {
                    for (x, &pv) in result[j].iter_mut().zip(&pivot_row) {
                        *x = ring.sub(*x, ring.mul(q, pv));
                    }
                }
            }
        }

        let matrix = Matrix::from_rows(ring, cols, &result).expect("echelon rows well formed");
        Echelon { matrix, pivots }
    }

    /// Rank of a matrix over a field.
    pub fn field_rank(&self) -> usize {
        assert!(self.ring.is_field());
        self.echelonize().pivots.len()
    }

    /// Generators of the left kernel {v : v * self = 0}, one per row of
    /// the returned matrix (possibly zero rows count, i.e. the matrix may
    /// have no rows). Works over both ring kinds: the echelon form of
    /// [self | I] is computed and rows with vanishing left block are kept;
    /// the span property of the Howell form makes these rows generate the
    /// whole kernel module.
    pub fn left_kernel(&self) -> Matrix {
        let n = self.cols;
        let aug = self.hstack(&Matrix::identity(self.ring.clone(), self.rows));
        let ech = aug.echelonize();
        let mut rows: Vec<Vec<u64>> = Vec::new();
        for i in 0..ech.matrix.rows() {
            let r = ech.matrix.row(i);
            if r[..n].iter().all(|&x| x == 0) {
                rows.push(r[n..].to_vec());
            }
        }
        Matrix::from_rows(self.ring.clone(), self.rows, &rows).expect("kernel rows well formed")
    }

    /// Generators of the right kernel {x : self * x^T = 0} as rows.
    pub fn right_kernel(&self) -> Matrix {
        self.transpose().left_kernel()
    }

    /// Valuations a_1 <= a_2 <= ... of the nonzero invariant factors
    /// p^(a_i) of the matrix over Z/p^s (diagonalization by row and column
    /// operations, pivoting on an entry of minimal valuation). The number
    /// of returned valuations below s is the minimum number of generators
    /// of the row module. Over a field this degenerates to `rank` zeros.
    pub fn smith_valuations(&self) -> Vec<u32> {
        let ring = &self.ring;
        let mut m = self.clone();
        let mut vals = Vec::new();
        let steps = self.rows.min(self.cols);
        for k in 0..steps {
            // Locate a minimal-valuation entry in the trailing block.
            let mut best: Option<(usize, usize, u32)> = None;
            for i in k..m.rows {
                for j in k..m.cols {
                    let e = m.get(i, j);
                    if e != 0 {
                        let v = ring.val(e);
                        if best.map_or(true, |(_, _, bv)| v < bv) {
                            best = Some((i, j, v));
                        }
                    }
                }
            }
            let (bi, bj, a) = match best {
                Some(b) => b,
                None => break,
            };
            // Move it to (k, k).
            for j in 0..m.cols {
                let t = m.get(k, j);
                m.set(k, j, m.get(bi, j));
                m.set(bi, j, t);
            }
            for i in 0..m.rows {
                let t = m.get(i, k);
                m.set(i, k, m.get(i, bj));
                m.set(i, bj, t);
            }
            // Normalize to p^a, then clear row and column: every other
            // entry in them has valuation >= a.
            let u_inv = ring.inv(ring.unit_part(m.get(k, k))).unwrap();
            for j in 0..m.cols {
                m.set(k, j, ring.mul(m.get(k, j), u_inv));
            }
            for i in k + 1..m.rows {
                let e = m.get(i, k);
                if e != 0 {
                    let f = ring.mul(ring.unit_part(e), ring.p_pow(ring.val(e) - a));
                    for j in 0..m.cols {
                        let v = ring.sub(m.get(i, j), ring.mul(f, m.get(k, j)));
                        m.set(i, j, v);
                    }
                }
            }
            for j in k + 1..m.cols {
                let e = m.get(k, j);
                if e != 0 {
                    let f = ring.mul(ring.unit_part(e), ring.p_pow(ring.val(e) - a));
                    for i in 0..m.rows {
                        let v = ring.sub(m.get(i, j), ring.mul(f, m.get(i, k)));
                        m.set(i, j, v);
                    }
                }
            }
            vals.push(a);
        }
        vals
    }

    /// Smith diagonalization with the inverse column transform tracked:
    /// returns (valuations, qinv) where the row module of the input equals
    /// the module generated by p^(a_i) times row i of qinv. Rows of qinv
    /// form a basis of the free module, which is what the free-closure
    /// construction needs. `mirror` flips the column scan order, giving a
    /// second deterministic diagonalization.
    pub fn smith_with_colbasis(&self, mirror: bool) -> (Vec<u32>, Matrix) {
        let ring = self.ring.clone();
        let mut m = self.clone();
        let n = self.cols;
        let mut qinv = Matrix::identity(ring.clone(), n);
        let mut vals = Vec::new();
        let steps = self.rows.min(self.cols);
        for k in 0..steps {
            let mut best: Option<(usize, usize, u32)> = None;
            let col_order: Vec<usize> = if mirror {
                (k..m.cols).rev().collect()
            } else {
                (k..m.cols).collect()
            };
            for i in k..m.rows {
                for &j in &col_order {
                    let e = m.get(i, j);
                    if e != 0 {
                        let v = ring.val(e);
                        if best.map_or(true, |(_, _, bv)| v < bv) {
                            best = Some((i, j, v));
                        }
                    }
                }
            }
            let (bi, bj, a) = match best {
                Some(b) => b,
                None => break,
            };
            // Row swap k <-> bi (no effect on qinv).
            for j in 0..m.cols {
                let t = m.get(k, j);
                m.set(k, j, m.get(bi, j));
                m.set(bi, j, t);
            }
            // Column swap k <-> bj; qinv rows swap accordingly.
            if bj != k {
                for i in 0..m.rows {
                    let t = m.get(i, k);
                    m.set(i, k, m.get(i, bj));
                    m.set(i, bj, t);
                }
                for j in 0..n {
                    let t = qinv.get(k, j);
                    qinv.set(k, j, qinv.get(bj, j));
                    qinv.set(bj, j, t);
                }
            }
            // Normalize the pivot row by the unit inverse (row op only).
            let u_inv = ring.inv(ring.unit_part(m.get(k, k))).unwrap();
            for j in 0..m.cols {
                m.set(k, j, ring.mul(m.get(k, j), u_inv));
            }
            // Clear the pivot column by row ops.
            for i in k + 1..m.rows {
                let e = m.get(i, k);
                if e != 0 {
                    let f = ring.mul(ring.unit_part(e), ring.p_pow(ring.val(e) - a));
                    for j in 0..m.cols {
                        let v = ring.sub(m.get(i, j), ring.mul(f, m.get(k, j)));
                        m.set(i, j, v);
                    }
                }
            }
            // Clear the pivot row by column ops col_j -= f * col_k, which
            // on qinv is row_k += f * row_j.
            for j in k + 1..m.cols {
                let e = m.get(k, j);
                if e != 0 {
                    let f = ring.mul(ring.unit_part(e), ring.p_pow(ring.val(e) - a));
                    for i in 0..m.rows {
                        let v = ring.sub(m.get(i, j), ring.mul(f, m.get(i, k)));
                        m.set(i, j, v);
                    }
                    for t in 0..n {
                        let v = ring.add(qinv.get(k, t), ring.mul(f, qinv.get(j, t)));
                        qinv.set(k, t, v);
                    }
                }
            }
            vals.push(a);
        }
        (vals, qinv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::Ring;

    fn gf2() -> Ring {
        Ring::field(2, 1).unwrap()
    }

    fn z4() -> Ring {
        Ring::chain(2, 2).unwrap()
    }

    #[test]
    fn rref_identity_is_fixed_point() {
        let id = Matrix::identity(gf2(), 2);
        let e = id.echelonize();
        assert_eq!(e.matrix, id);
        assert_eq!(e.pivots.len(), 2);
    }

    #[test]
    fn rref_collapses_duplicate_rows() {
        let m = Matrix::from_rows(gf2(), 3, &[vec![1, 1, 1], vec![1, 1, 1]]).unwrap();
        let e = m.echelonize();
        assert_eq!(e.matrix.rows(), 1);
        assert_eq!(e.matrix.row(0), &[1, 1, 1]);
    }

    #[test]
    fn rref_gf4_row_already_reduced() {
        let f4 = Ring::field(2, 2).unwrap();
        let m = Matrix::from_rows(f4, 2, &[vec![1, 2]]).unwrap();
        let e = m.echelonize();
        assert_eq!(e.matrix.row(0), &[1, 2]);
        assert_eq!(e.pivots.len(), 1);
    }

    #[test]
    fn howell_form_adds_extension_row() {
        // The module generated by (2,1) over Z4 also contains (0,2); the
        // canonical form must expose it.
        let m = Matrix::from_rows(z4(), 2, &[vec![2, 1]]).unwrap();
        let e = m.echelonize();
        assert_eq!(e.matrix.row_vecs(), vec![vec![2, 1], vec![0, 2]]);
        // Same module from a different generator.
        let m2 = Matrix::from_rows(z4(), 2, &[vec![2, 3]]).unwrap();
        assert_eq!(m2.echelonize().matrix, e.matrix);
    }

    #[test]
    fn left_kernel_over_field() {
        let m = Matrix::from_rows(gf2(), 3, &[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]).unwrap();
        let k = m.left_kernel();
        assert_eq!(k.rows(), 1);
        // Kernel row annihilates m.
        assert!(k.mul(&m).is_zero());
    }

    #[test]
    fn left_kernel_over_z4() {
        let m = Matrix::from_rows(z4(), 1, &[vec![2]]).unwrap();
        let k = m.left_kernel();
        assert!(k.mul(&m).is_zero());
        // {v : 2v = 0} = {0, 2}; a generator with valuation 1 must appear.
        assert_eq!(k.echelonize().matrix.row_vecs(), vec![vec![2]]);
    }

    #[test]
    fn smith_rank_examples() {
        // Single generator (2,2): one invariant factor 2^1.
        let m = Matrix::from_rows(z4(), 2, &[vec![2, 2]]).unwrap();
        assert_eq!(m.smith_valuations(), vec![1]);
        // (2,0),(0,2),(1,1) generate a rank-2 module.
        let m = Matrix::from_rows(z4(), 2, &[vec![2, 0], vec![0, 2], vec![1, 1]]).unwrap();
        let vals = m.smith_valuations();
        assert_eq!(vals.len(), 2);
        // Zero matrix has no invariant factors.
        let m = Matrix::zeros(z4(), 2, 2);
        assert!(m.smith_valuations().is_empty());
    }

    #[test]
    fn smith_colbasis_recovers_module() {
        for mirror in [false, true] {
            let g = Matrix::from_rows(z4(), 3, &[vec![2, 2, 0], vec![0, 2, 2], vec![1, 1, 1]]).unwrap();
            let (vals, qinv) = g.smith_with_colbasis(mirror);
            // Row module of g equals module generated by p^(a_i) * qinv row i.
            let ring = g.ring().clone();
            let rows: Vec<Vec<u64>> = vals
                .iter()
                .enumerate()
                .map(|(i, &a)| {
                    qinv.row(i)
                        .iter()
                        .map(|&x| ring.mul(ring.p_pow(a), x))
                        .collect()
                })
                .collect();
            let rebuilt = Matrix::from_rows(ring, 3, &rows).unwrap();
            assert_eq!(rebuilt.echelonize().matrix, g.echelonize().matrix);
        }
    }
}
