//! Generalized Hamming weights and dimension/length profiles of linear
//! codes over finite fields, the dual code, and the joint report that
//! verifies the weight partition of [1,m], the profile identity between a
//! code and its dual, and the Galois-connection structure of the tables.

use crate::algebra::{enumerate_subcodes, BilinearForm, Ring, Subspace};
use crate::error::{invalid, Caps, Result};
use crate::galois::{central_theorem_report, check_galois_pair, GaloisPair};
use crate::report::{ClauseCheck, TheoremReport};

/// An (m, k) linear code over a finite field, held as the row space of
/// its generator matrix in reduced row echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    m: usize,
    gen: Subspace,
}

impl LinearCode {
    pub fn new(ring: Ring, m: usize, generator_rows: &[Vec<u64>]) -> Result<LinearCode> {
        if !ring.is_field() {
            return invalid("linear codes require a field");
        }
        if m == 0 || m > 20 {
            return invalid("code length must be in [1, 20] (subset sweeps are O(2^m))");
        }
        let gen = Subspace::from_rows(ring, m, generator_rows)?;
        Ok(LinearCode { m, gen })
    }

    pub fn from_subspace(gen: Subspace) -> LinearCode {
        LinearCode {
            m: gen.ambient_dim(),
            gen,
        }
    }

    pub fn ring(&self) -> &Ring {
        self.gen.ring()
    }

    /// Code length m.
    pub fn length(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.gen.dim()
    }

    pub fn generator(&self) -> &Subspace {
        &self.gen
    }

    /// dim(C n delta(J)) as k minus the rank of the generator columns
    /// outside J; the cheap inner step of the subset sweeps.
    pub fn dim_meet_delta(&self, mask: u64) -> i64 {
        let g = self.gen.basis();
        let outside: Vec<usize> = (0..self.m).filter(|&j| mask >> j & 1 == 0).collect();
        if outside.is_empty() {
            return self.dim() as i64;
        }
        let mut rows = Vec::with_capacity(g.rows());
        for i in 0..g.rows() {
            rows.push(outside.iter().map(|&j| g.get(i, j)).collect::<Vec<u64>>());
        }
        let sub = crate::algebra::Matrix::from_rows(self.ring().clone(), outside.len(), &rows)
            .expect("projection rows well formed");
        self.dim() as i64 - sub.field_rank() as i64
    }

    /// The dual code under the standard inner product.
    pub fn dual(&self) -> LinearCode {
        let form = BilinearForm::standard(self.ring().clone(), self.m);
        LinearCode::from_subspace(form.right_annihilator(&self.gen))
    }
}

/// Support chi of a set of vectors: the not-always-zero positions, as a
/// bitmask. By linearity the union of the basis supports suffices.
pub fn chi_support(space: &Subspace) -> u64 {
    space.support_mask()
}

/// delta(J): the coordinate subspace supported on J.
pub fn delta(ring: Ring, m: usize, mask: u64) -> Subspace {
    Subspace::coordinate(ring, m, mask)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GhwMethod {
    /// Minimum support size over r-dimensional subcodes (the definition).
    Subcode,
    /// Minimum size of J with r <= dim(C n delta(J)) (the subset form).
    Subset,
}

/// The r-th generalized Hamming weight. Both methods agree on every code;
/// the subset form is the default, the subcode form is the definitional
/// oracle (it enumerates q^r-sized families, hence the cap).
pub fn ghw(code: &LinearCode, r: usize, method: GhwMethod, caps: &Caps) -> Result<i64> {
    if r > code.dim() {
        return invalid("subcode dimension exceeds the code dimension");
    }
    match method {
        GhwMethod::Subset => {
            let m = code.length();
            let best = (0u64..1 << m)
                .filter(|&mask| r as i64 <= code.dim_meet_delta(mask))
                .map(|mask| mask.count_ones() as i64)
                .min()
                .expect("J = full always qualifies");
            Ok(best)
        }
        GhwMethod::Subcode => {
            let subs = enumerate_subcodes(code.generator(), r, caps)?;
            Ok(subs
                .iter()
                .map(|d| chi_support(d).count_ones() as i64)
                .min()
                .expect("at least one subcode"))
        }
    }
}

pub fn ghw_table(code: &LinearCode, method: GhwMethod, caps: &Caps) -> Result<Vec<i64>> {
    (0..=code.dim()).map(|r| ghw(code, r, method, caps)).collect()
}

/// The l-th dimension/length profile: maximum of dim(C n delta(J)) over
/// |J| = l.
pub fn dlp(code: &LinearCode, l: usize) -> i64 {
    assert!(l <= code.length());
    (0u64..1 << code.length())
        .filter(|mask| mask.count_ones() as usize == l)
        .map(|mask| code.dim_meet_delta(mask))
        .max()
        .expect("some J of each size exists")
}

pub fn dlp_table(code: &LinearCode) -> Vec<i64> {
    (0..=code.length()).map(|l| dlp(code, l)).collect()
}

/// The (GHW, DLP) tables of a code as a Galois pair between [0,k] and
/// [0,m].
pub fn weight_profile_pair(code: &LinearCode, caps: &Caps) -> Result<GaloisPair> {
    let phi = ghw_table(code, GhwMethod::Subset, caps)?;
    let psi = dlp_table(code);
    GaloisPair::from_values(phi, psi)
}

/// Joint duality report for a code and its dual: the weight tables, the
/// profile tables, and the clause checks for the partition of [1,m], the
/// profile identity at every l, the Galois-connection property of both
/// table pairs, and the four-way equivalence report with w = 1.
#[derive(Debug, Clone)]
pub struct WeiForneyReport {
    pub d_primal: Vec<i64>,
    pub d_dual: Vec<i64>,
    pub k_primal: Vec<i64>,
    pub k_dual: Vec<i64>,
    pub report: TheoremReport,
}

pub fn wei_forney_report(code: &LinearCode, caps: &Caps) -> Result<WeiForneyReport> {
    let m = code.length() as i64;
    let k = code.dim() as i64;
    let dual = code.dual();
    let d_primal = ghw_table(code, GhwMethod::Subset, caps)?;
    let d_dual = ghw_table(&dual, GhwMethod::Subset, caps)?;
    let k_primal = dlp_table(code);
    let k_dual = dlp_table(&dual);

    let mut report = TheoremReport::new();

    // Weight partition: d-values of the code and reflected d-values of
    // the dual cover [1, m] exactly once.
    let mut seen = vec![0usize; m as usize + 1];
    for &d in &d_primal[1..] {
        seen[d as usize] += 1;
    }
    for &d in &d_dual[1..] {
        seen[(m + 1 - d) as usize] += 1;
    }
    let partition_ok = (1..=m as usize).all(|i| seen[i] == 1);
    report.push(ClauseCheck::from_flag(
        "wei_partition",
        "1.3",
        partition_ok,
        Some(format!(
            "weights {:?} and reflected dual weights {:?} do not tile [1,{}]",
            &d_primal[1..],
            d_dual[1..].iter().map(|&d| m + 1 - d).collect::<Vec<_>>(),
            m
        )),
    ));

    // Profile identity at every l.
    let mut forney_ok = true;
    let mut forney_witness = None;
    for l in 0..=m {
        let lhs = k_dual[l as usize];
        let rhs = k_primal[(m - l) as usize] + l - k;
        if lhs != rhs {
            forney_ok = false;
            forney_witness = Some(format!("profile of the dual at l = {}: {} != {}", l, lhs, rhs));
            break;
        }
    }
    report.push(ClauseCheck::from_flag(
        "forney_identity",
        "1.6",
        forney_ok,
        forney_witness,
    ));

    // Both table pairs are Galois connections.
    let primal_pair = GaloisPair::from_values(d_primal.clone(), k_primal.clone())?;
    let dual_pair = GaloisPair::from_values(d_dual.clone(), k_dual.clone())?;
    report.push(ClauseCheck::from_flag(
        "primal_galois_connection",
        "2.1",
        check_galois_pair(primal_pair.phi(), primal_pair.psi())?,
        None,
    ));
    report.push(ClauseCheck::from_flag(
        "dual_galois_connection",
        "2.1",
        check_galois_pair(dual_pair.phi(), dual_pair.psi())?,
        None,
    ));

    // Four-way equivalence with w = 1 wiring the two pairs together.
    let central = central_theorem_report(&primal_pair, &dual_pair, 1)?;
    report.push(ClauseCheck::from_flag(
        "central_equivalence_all_true",
        "2.2",
        central.all_true(),
        central.witness.clone(),
    ));
    report.push(ClauseCheck::from_flag(
        "central_equivalence_consistent",
        "2.2",
        central.all_equal(),
        Some("the four statement values differ".to_string()),
    ));

    Ok(WeiForneyReport {
        d_primal,
        d_dual,
        k_primal,
        k_dual,
        report,
    })
}

/// Convenience wrapper asserting the two GHW methods agree; used by the
/// oracle-equivalence tests and the fuzz harness.
pub fn ghw_methods_agree(code: &LinearCode, caps: &Caps) -> Result<bool> {
    let a = ghw_table(code, GhwMethod::Subset, caps)?;
    let b = ghw_table(code, GhwMethod::Subcode, caps)?;
    Ok(a == b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> Ring {
        Ring::field(2, 1).unwrap()
    }

    fn repetition() -> LinearCode {
        LinearCode::new(gf2(), 3, &[vec![1, 1, 1]]).unwrap()
    }

    fn parity() -> LinearCode {
        LinearCode::new(gf2(), 3, &[vec![1, 1, 0], vec![0, 1, 1]]).unwrap()
    }

    fn hamming74() -> LinearCode {
        LinearCode::new(
            gf2(),
            7,
            &[
                vec![1, 0, 0, 0, 0, 1, 1],
                vec![0, 1, 0, 0, 1, 0, 1],
                vec![0, 0, 1, 0, 1, 1, 0],
                vec![0, 0, 0, 1, 1, 1, 1],
            ],
        )
        .unwrap()
    }

    #[test]
    fn chi_and_delta_basics() {
        let zero = Subspace::zero(gf2(), 3);
        assert_eq!(chi_support(&zero), 0);
        assert_eq!(chi_support(repetition().generator()), 0b111);
        let two = Subspace::from_rows(gf2(), 3, &[vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        assert_eq!(chi_support(&two), 0b111);

        assert!(delta(gf2(), 3, 0).is_zero());
        assert_eq!(delta(gf2(), 3, 0b111).dim(), 3);
        let d = delta(gf2(), 3, 0b101);
        assert_eq!(d.dim(), 2);
        assert!(d.contains_vec(&[1, 0, 0]) && d.contains_vec(&[0, 0, 1]));
    }

    #[test]
    fn ghw_of_small_codes() {
        let caps = Caps::default();
        for method in [GhwMethod::Subset, GhwMethod::Subcode] {
            assert_eq!(ghw(&repetition(), 1, method, &caps).unwrap(), 3);
            assert_eq!(ghw(&parity(), 1, method, &caps).unwrap(), 2);
            assert_eq!(ghw(&parity(), 2, method, &caps).unwrap(), 3);
        }
    }

    #[test]
    fn ghw_hierarchy_of_hamming_code() {
        let caps = Caps::default();
        let table = ghw_table(&hamming74(), GhwMethod::Subcode, &caps).unwrap();
        assert_eq!(table, vec![0, 3, 5, 6, 7]);
        assert_eq!(ghw_table(&hamming74(), GhwMethod::Subset, &caps).unwrap(), table);
    }

    #[test]
    fn subcode_method_respects_the_cap() {
        let tiny = Caps::new(2);
        assert!(ghw(&hamming74(), 2, GhwMethod::Subcode, &tiny).is_err());
        // The subset method never enumerates subcodes.
        assert!(ghw(&hamming74(), 2, GhwMethod::Subset, &tiny).is_ok());
    }

    #[test]
    fn dlp_tables() {
        assert_eq!(dlp_table(&repetition()), vec![0, 0, 0, 1]);
        assert_eq!(dlp_table(&parity()), vec![0, 0, 1, 2]);
        assert_eq!(dlp(&hamming74(), 7), 4);
    }

    #[test]
    fn dual_codes() {
        assert_eq!(repetition().dual(), parity());
        let full = LinearCode::new(gf2(), 2, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(full.dual().dim(), 0);
        let self_dual = LinearCode::new(gf2(), 2, &[vec![1, 1]]).unwrap();
        assert_eq!(self_dual.dual(), self_dual);
        assert_eq!(repetition().dual().dual(), repetition());
    }

    #[test]
    fn wei_forney_on_repetition() {
        let caps = Caps::default();
        let rep = wei_forney_report(&repetition(), &caps).unwrap();
        assert!(rep.report.all_pass(), "{:?}", rep.report.first_failure());
        assert_eq!(rep.d_primal, vec![0, 3]);
        assert_eq!(rep.d_dual, vec![0, 2, 3]);
        assert_eq!(rep.k_dual, vec![0, 0, 1, 2]);
    }

    #[test]
    fn wei_forney_on_zero_code() {
        let caps = Caps::default();
        let zero = LinearCode::new(gf2(), 3, &[]).unwrap();
        let rep = wei_forney_report(&zero, &caps).unwrap();
        assert!(rep.report.all_pass());
        assert_eq!(rep.d_primal, vec![0]);
        assert_eq!(rep.d_dual, vec![0, 1, 2, 3]);
    }

    #[test]
    fn wei_forney_on_hamming_code() {
        let caps = Caps::default();
        let rep = wei_forney_report(&hamming74(), &caps).unwrap();
        assert!(rep.report.all_pass());
        // The dual is the [7,3] simplex code with weights 4, 6, 7.
        assert_eq!(rep.d_dual, vec![0, 4, 6, 7]);
        // Partition: {3,5,6,7} and {8-4, 8-6, 8-7} = {4,2,1}.
        let reflected: Vec<i64> = rep.d_dual[1..].iter().map(|&d| 8 - d).collect();
        assert_eq!(reflected, vec![4, 2, 1]);
    }

    #[test]
    fn column_rank_shortcut_matches_explicit_intersection() {
        // dim(C n delta(J)) via complementary column rank against the
        // kernel-based subspace intersection, on every subset.
        for code in [repetition(), parity(), hamming74()] {
            let m = code.length();
            for mask in 0u64..1 << m {
                let d = delta(code.ring().clone(), m, mask);
                let explicit = code.generator().intersect(&d).unwrap().dim() as i64;
                assert_eq!(code.dim_meet_delta(mask), explicit);
            }
        }
    }

    #[test]
    fn monotone_weight_growth() {
        let caps = Caps::default();
        for code in [repetition(), parity(), hamming74()] {
            let d = ghw_table(&code, GhwMethod::Subset, &caps).unwrap();
            for r in 1..d.len() - 1 {
                assert!(d[r] + 1 <= d[r + 1]);
            }
        }
    }
}
