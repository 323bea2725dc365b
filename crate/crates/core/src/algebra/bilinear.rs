use super::matrix::Matrix;
use super::ring::Ring;
use super::submodule::Submodule;
use super::subspace::Subspace;
use crate::error::{invalid, Result};

/// A non-degenerate bilinear pairing (x, y) -> x * G * y^T given by its
/// Gram matrix G. Non-degeneracy (G invertible) is checked at
/// construction: the echelon form must have full row count with all pivot
/// valuations zero, which over either ring kind says G is invertible.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BilinearForm {
    gram: Matrix,
}

impl BilinearForm {
    pub fn new(gram: Matrix) -> Result<BilinearForm> {
        if gram.rows() != gram.cols() {
            return invalid("gram matrix must be square");
        }
        let ech = gram.echelonize();
        let invertible = ech.pivots.len() == gram.rows() && ech.pivots.iter().all(|p| p.val == 0);
        if !invertible {
            return invalid("degenerate bilinear form: gram matrix is not invertible");
        }
        Ok(BilinearForm { gram })
    }

    /// The standard inner product on R^n.
    pub fn standard(ring: Ring, n: usize) -> BilinearForm {
        BilinearForm {
            gram: Matrix::identity(ring, n),
        }
    }

    pub fn ring(&self) -> &Ring {
        self.gram.ring()
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn eval(&self, x: &[u64], y: &[u64]) -> u64 {
        let ring = self.gram.ring();
        let n = self.dim();
        assert!(x.len() == n && y.len() == n);
        let mut acc = 0u64;
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                if y[j] != 0 {
                    acc = ring.add(acc, ring.mul(ring.mul(x[i], self.gram.get(i, j)), y[j]));
                }
            }
        }
        acc
    }

    /// Block-diagonal extension of the pairing to (R^n)^m, used for the
    /// position-wise pairing sum over codeword positions.
    pub fn block_extend(&self, m: usize) -> BilinearForm {
        let n = self.dim();
        let ring = self.ring().clone();
        let mut gram = Matrix::zeros(ring, n * m, n * m);
        for b in 0..m {
            for i in 0..n {
                for j in 0..n {
                    gram.set(b * n + i, b * n + j, self.gram.get(i, j));
                }
            }
        }
        BilinearForm { gram }
    }

    /// Right annihilator {y : x G y^T = 0 for all x in C} of a subspace.
    pub fn right_annihilator(&self, c: &Subspace) -> Subspace {
        assert_eq!(c.ambient_dim(), self.dim());
        if c.is_zero() {
            return Subspace::full(self.ring().clone(), self.dim());
        }
        let gq = c.basis().mul(&self.gram);
        let kernel = gq.right_kernel();
        let ann = Subspace::from_matrix(kernel);
        debug_assert_eq!(ann.dim(), self.dim() - c.dim());
        ann
    }

    /// Left annihilator {x : x G y^T = 0 for all y in D} of a subspace.
    pub fn left_annihilator(&self, d: &Subspace) -> Subspace {
        assert_eq!(d.ambient_dim(), self.dim());
        if d.is_zero() {
            return Subspace::full(self.ring().clone(), self.dim());
        }
        let qdt = d.basis().mul(&self.gram.transpose());
        let kernel = qdt.right_kernel();
        let ann = Subspace::from_matrix(kernel);
        debug_assert_eq!(ann.dim(), self.dim() - d.dim());
        ann
    }

    /// Right annihilator of a submodule over a chain ring. Cardinalities
    /// multiply to |A|^n for a non-degenerate pairing.
    pub fn right_annihilator_module(&self, c: &Submodule) -> Submodule {
        assert_eq!(c.ambient_dim(), self.dim());
        if c.is_zero() {
            return Submodule::full(self.ring().clone(), self.dim());
        }
        let gq = c.basis().mul(&self.gram);
        let kernel = gq.right_kernel();
        let ann = Submodule::from_matrix(kernel);
        debug_assert_eq!(
            c.size() * ann.size(),
            (self.ring().size() as u128).pow(self.dim() as u32)
        );
        ann
    }

    pub fn left_annihilator_module(&self, d: &Submodule) -> Submodule {
        assert_eq!(d.ambient_dim(), self.dim());
        if d.is_zero() {
            return Submodule::full(self.ring().clone(), self.dim());
        }
        let qdt = d.basis().mul(&self.gram.transpose());
        let kernel = qdt.right_kernel();
        Submodule::from_matrix(kernel)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Caps;

    fn gf2() -> Ring {
        Ring::field(2, 1).unwrap()
    }

    #[test]
    fn repetition_dual_is_even_weight_code() {
        let form = BilinearForm::standard(gf2(), 3);
        let rep = Subspace::from_rows(gf2(), 3, &[vec![1, 1, 1]]).unwrap();
        let dual = form.right_annihilator(&rep);
        assert_eq!(dual.dim(), 2);
        for v in dual.elements() {
            let weight: u64 = v.iter().sum();
            assert_eq!(weight % 2, 0);
        }
    }

    #[test]
    fn full_space_annihilates_to_zero() {
        let form = BilinearForm::standard(gf2(), 3);
        let full = Subspace::full(gf2(), 3);
        assert!(form.right_annihilator(&full).is_zero());
    }

    #[test]
    fn annihilator_involution_f2_4_standard_and_trace_like() {
        let caps = Caps::default();
        let all = crate::algebra::subspace::enumerate_subspaces(&gf2(), 4, None, &caps).unwrap();
        // A non-identity invertible symmetric gram as a second pairing.
        let gram = Matrix::from_rows(
            gf2(),
            4,
            &[
                vec![0, 1, 0, 0],
                vec![1, 0, 0, 0],
                vec![0, 0, 1, 0],
                vec![0, 0, 0, 1],
            ],
        )
        .unwrap();
        for form in [BilinearForm::standard(gf2(), 4), BilinearForm::new(gram).unwrap()] {
            for s in &all {
                let ann = form.right_annihilator(s);
                assert_eq!(ann.dim(), 4 - s.dim());
                let back = form.left_annihilator(&ann);
                assert_eq!(&back, s);
            }
            // Inclusion-reversing.
            for a in &all {
                for b in &all {
                    if b.contains(a) {
                        assert!(form
                            .right_annihilator(a)
                            .contains(&form.right_annihilator(b)));
                    }
                }
            }
        }
    }

    #[test]
    fn degenerate_form_rejected() {
        let gram = Matrix::from_rows(gf2(), 2, &[vec![1, 1], vec![1, 1]]).unwrap();
        assert!(BilinearForm::new(gram).is_err());
    }

    #[test]
    fn z4_annihilator_example() {
        let z4 = Ring::chain(2, 2).unwrap();
        let form = BilinearForm::standard(z4.clone(), 2);
        let c = Submodule::from_rows(z4.clone(), 2, &[vec![1, 1]]).unwrap();
        let ann = form.right_annihilator_module(&c);
        let expected = Submodule::from_rows(z4, 2, &[vec![1, 3]]).unwrap();
        assert_eq!(ann, expected);
        // Double annihilator returns the input.
        assert_eq!(form.left_annihilator_module(&ann), c);
    }
}
