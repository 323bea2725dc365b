//! Property tests for the structural invariants: adjoint round trips,
//! dual-connection conclusions, weight/profile table structure, induced
//! rank-function validity, and the full-ambient sweep of the flag duality
//! identity at the largest desk-scale dimension.

use proptest::prelude::*;

use weidual::algebra::{BilinearForm, Ring, SubspaceLattice};
use weidual::demimatroid::{random_demimatroid, weights_profiles, RandomStrategy};
use weidual::demipolymatroid::SubspaceFamily;
use weidual::error::Caps;
use weidual::galois::{
    adjoint_of, check_galois_pair, dual_connection, step_equivalences, AdjointSide, GaloisPair,
    MonotoneTable,
};
use weidual::generate::{random_code, random_step_bounded_pair};
use weidual::hamming::{dlp_table, ghw_table, GhwMethod};
use weidual::metric_codes::{
    flag_difference_identity, galois_closed_family, gr_weights, random_odd_flag_family,
    CodeFlagFamily,
};
use weidual::poset::{is_abundance_family, Poset, SetFamily};
use weidual::rng::SplitMix64;

/// Strategy: a monotone table on [0, m] into [0, k] hitting k at the top,
/// i.e. a right adjoint. The first entry need not be zero.
fn right_adjoint_table() -> impl Strategy<Value = MonotoneTable> {
    (0usize..=6, 0i64..=6).prop_flat_map(|(m, k)| {
        proptest::collection::vec(0..=k, m + 1).prop_map(move |mut values| {
            values.sort_unstable();
            *values.last_mut().unwrap() = k;
            MonotoneTable::new(values, k).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn adjoint_round_trip(table in right_adjoint_table()) {
        let phi = adjoint_of(&table, AdjointSide::Right).unwrap();
        prop_assert!(check_galois_pair(&phi, &table).unwrap());
        let back = adjoint_of(&phi, AdjointSide::Left).unwrap();
        prop_assert_eq!(back.values(), table.values());
        let phi_back = adjoint_of(&back, AdjointSide::Right).unwrap();
        prop_assert_eq!(phi_back.values(), phi.values());
    }

    #[test]
    fn dual_connection_conclusions(seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        let m = rng.range_i64(0, 6);
        let w = rng.range_i64(1, 4);
        let k = rng.range_i64(0, w * m);
        let pair = random_step_bounded_pair(&mut rng, k, m, w);
        let dual = dual_connection(&pair, w).unwrap();
        let eta = dual.psi();
        prop_assert_eq!(eta.get(0), 0);
        prop_assert_eq!(eta.get(m), w * m - k);
        for l in 1..=m {
            let step = eta.get(l) - eta.get(l - 1);
            prop_assert!((0..=w).contains(&step));
        }
        // Non-congruence conclusion on complementary weight sums.
        for u in 1..=k {
            for v in 1..=w * m - k {
                if pair.phi().get(u) + dual.phi().get(v) == m + 1 {
                    prop_assert!((u - v - k).rem_euclid(w) != 0);
                }
            }
        }
        // Step equivalences agree on both pairs.
        prop_assert!(step_equivalences(&pair, w).consistent());
        prop_assert!(step_equivalences(&dual, w).consistent());
    }

    #[test]
    fn demimatroid_tables_are_step_bounded_pairs(seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        let m = 1 + (rng.below(4)) as usize;
        let w = rng.range_i64(1, 3);
        let dm = random_demimatroid(m, w, rng.next_u64(), RandomStrategy::Rejection).unwrap();
        let wp = weights_profiles(&dm, &SetFamily::power_set(m)).unwrap();
        let pair = wp.pair().unwrap();
        prop_assert_eq!(pair.psi().get(0), 0);
        for l in 1..=m as i64 {
            prop_assert!(pair.psi().get(l) - pair.psi().get(l - 1) <= w);
        }
    }

    #[test]
    fn weight_tables_of_random_codes_grow_strictly(seed in any::<u64>()) {
        let caps = Caps::default();
        let mut rng = SplitMix64::new(seed);
        let q = [2u64, 3][rng.below(2) as usize];
        let ring = Ring::field(q, 1).unwrap();
        let m = 1 + rng.below(6) as usize;
        let k = rng.below(m as u64 + 1) as usize;
        let code = random_code(&mut rng, &ring, m, k);
        let d = ghw_table(&code, GhwMethod::Subset, &caps).unwrap();
        for r in 1..d.len().saturating_sub(1) {
            prop_assert!(d[r] + 1 <= d[r + 1]);
        }
        let pair = GaloisPair::from_values(d, dlp_table(&code)).unwrap();
        prop_assert!(check_galois_pair(pair.phi(), pair.psi()).unwrap());
    }
}

#[test]
fn ideal_families_of_all_four_element_posets() {
    // Exhaustive over every partial order on 4 labeled elements, by
    // filtering all antisymmetric reflexive relations generated from
    // cover-pair subsets and closing transitively.
    let caps = Caps::default();
    let pairs: Vec<(usize, usize)> = (0..4)
        .flat_map(|a| (0..4).map(move |b| (a, b)))
        .filter(|&(a, b)| a != b)
        .collect();
    let mut seen = 0;
    for bits in 0u32..1 << pairs.len() {
        let chosen: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let poset = match Poset::from_pairs(4, &chosen) {
            Ok(p) => p,
            Err(_) => continue,
        };
        seen += 1;
        let fam = poset.ideals(&caps).unwrap();
        assert!(is_abundance_family(&fam).ok);
        assert!(is_abundance_family(&fam.complements()).ok);
        assert_eq!(poset.dual().ideals(&caps).unwrap(), fam.complements());
        match weidual::poset::poset_from_family(&fam) {
            weidual::poset::FamilyToPoset::Poset(q) => {
                assert_eq!(q.ideals(&caps).unwrap(), fam);
            }
            other => panic!("ideal family must reconstruct a poset, got {:?}", other),
        }
    }
    assert!(seen > 200);
}

#[test]
fn flag_difference_identity_full_sweep_dimension_six() {
    // Every subspace of the dual-side ambient at the largest desk-scale
    // dimension: GF(2)^6 as 2 x 3 matrices.
    let caps = Caps::default();
    let ring = Ring::field(2, 1).unwrap();
    let form = BilinearForm::standard(ring.clone(), 2);
    let lattice = SubspaceLattice::new(ring.clone(), 6, &caps).unwrap();
    for seed in [5u64, 6] {
        let flags = random_odd_flag_family(&ring, 2, 3, 1, seed).unwrap();
        let dual = flags.dual_flags(&form).unwrap();
        for v in lattice.spaces() {
            assert!(flag_difference_identity(&flags, &dual, &form, v));
        }
    }
}

#[test]
fn induced_rank_functions_validate_on_random_flags() {
    // The three induced structures from random flag families pass the
    // respective validators with parameters (1, w, m).
    let caps = Caps::default();
    let ring = Ring::field(2, 1).unwrap();
    for seed in 0..10u64 {
        let flags = weidual::metric_codes::random_flag_family(&ring, 2, 2, 2, seed).unwrap();
        let dm = flags.f1_demimatroid().unwrap();
        assert_eq!(dm.w(), 2);
        assert_eq!(dm.k(), flags.k());
        let dp0 = flags.f0_polymatroid(&caps).unwrap();
        assert_eq!(dp0.w(), 1);
        let dp2 = flags.f2_polymatroid(&caps).unwrap();
        assert_eq!(dp2.w(), 2);
        // Cross-path consistency on every subset and every subspace of M.
        for mask in 0u64..4 {
            assert_eq!(flags.f1(mask), flags.f0(&flags.delta(mask)));
        }
        let m_lattice = SubspaceLattice::new(ring.clone(), 2, &caps).unwrap();
        for s in m_lattice.spaces() {
            assert_eq!(flags.f2(s), flags.f0(&flags.w_to_ambient(s)));
        }
    }
}

#[test]
fn two_code_extension_flags_match_relative_weight_brute_force() {
    // For a two-code flag over the quartic extension, the restricted
    // weights equal the brute-force minimum of dim L over family members
    // with dim(C1 n L) - dim(C2 n L) >= a.
    let caps = Caps::default();
    let gf4 = Ring::field(2, 2).unwrap();
    let mut rng = SplitMix64::new(77);
    for _ in 0..20 {
        let m = 2 + rng.below(2) as usize;
        // Nested pair with dims d2 <= d1.
        let d2 = rng.below(m as u64) as usize;
        let d1 = d2 + rng.below((m - d2) as u64 + 1) as usize;
        let inner = random_code(&mut rng, &gf4, m, d2);
        let mut big = inner.generator().clone();
        while big.dim() < d1 {
            let v: Vec<u64> = (0..m).map(|_| rng.below(4)).collect();
            big = big
                .sum(&weidual::algebra::Subspace::from_rows(gf4.clone(), m, &[v]).unwrap())
                .unwrap();
        }
        let flags = CodeFlagFamily::new(
            gf4.clone(),
            1,
            m,
            vec![vec![big.clone(), inner.generator().clone()]],
        )
        .unwrap();
        let fam = galois_closed_family(&flags, &caps).unwrap();
        let wp = gr_weights(&flags, &fam).unwrap();
        let k = wp.weights.len() as i64 - 1;
        for a in 0..=k {
            let brute = fam
                .members()
                .iter()
                .filter(|l| {
                    let c1 = big.intersect(l).unwrap().dim() as i64;
                    let c2 = inner.generator().intersect(l).unwrap().dim() as i64;
                    c1 - c2 >= a
                })
                .map(|l| l.dim() as i64)
                .min()
                .unwrap();
            assert_eq!(wp.weights[a as usize], brute);
        }
    }
}

#[test]
fn abundance_families_on_small_grounds_have_abundant_complements() {
    // Exhaustive over all families on a 3-element ground set containing
    // the empty and full sets: the family is an abundance exactly when
    // its complement family is.
    let all_masks: Vec<u64> = (1..7).collect();
    for bits in 0u32..1 << all_masks.len() {
        let mut members = vec![0u64, 0b111];
        for (i, &mask) in all_masks.iter().enumerate() {
            if bits >> i & 1 == 1 {
                members.push(mask);
            }
        }
        let fam = SetFamily::new(3, members).unwrap();
        let co = fam.complements();
        assert_eq!(is_abundance_family(&fam).ok, is_abundance_family(&co).ok);
    }
}

#[test]
fn subspace_family_abundance_is_checked_at_construction() {
    let ring = Ring::field(2, 1).unwrap();
    let zero = weidual::algebra::Subspace::zero(ring.clone(), 2);
    let full = weidual::algebra::Subspace::full(ring.clone(), 2);
    // {0, full} on a 2-dimensional ambient skips dimension 1.
    assert!(SubspaceFamily::new(ring.clone(), 2, vec![zero.clone(), full.clone()]).is_err());
    let line = weidual::algebra::Subspace::from_rows(ring.clone(), 2, &[vec![1, 0]]).unwrap();
    assert!(SubspaceFamily::new(ring, 2, vec![zero, line, full]).is_ok());
}

#[test]
fn lattice_bridge_pins_the_uniform_partition() {
    // The 5-member lattice ordered by inclusion, graded by dimension,
    // rank = min(dim, 1), duality map = orthogonal complement: the weight
    // sets must tile [1, 2] as {1} and {2}.
    let caps = Caps::default();
    let ring = Ring::field(2, 1).unwrap();
    let lattice = SubspaceLattice::new(ring.clone(), 2, &caps).unwrap();
    let size = lattice.len();
    let leq: Vec<bool> = (0..size)
        .flat_map(|a| (0..size).map(move |b| (a, b)))
        .map(|(a, b)| lattice.leq(a, b))
        .collect();
    let poset = Poset::new(size, leq).unwrap();
    let g: Vec<i64> = (0..size).map(|i| lattice.dim(i) as i64).collect();
    let f: Vec<i64> = (0..size).map(|i| (lattice.dim(i) as i64).min(1)).collect();
    let form = BilinearForm::standard(ring, 2);
    let sigma: Vec<usize> = (0..size)
        .map(|i| {
            lattice
                .index_of(&form.right_annihilator(lattice.space(i)))
                .unwrap()
        })
        .collect();
    let report = weidual::galois::abundance_bridge_check(&poset, &g, &f, 1, &sigma).unwrap();
    assert!(report.all_true());
    // phi = (0, 1): A = {1}. tau = (0, 1): B = {2 + 1 - 1} = {2}.
    assert_eq!(report.primal.phi().values(), &[0, 1]);
    assert_eq!(report.dual.phi().values(), &[0, 1]);
}

#[test]
fn chain_bridge_with_identity_grading() {
    // Chain 0 < 1 < 2 < 3 with g = f = position and the order-reversing
    // bijection as sigma: the free case, all conclusions true.
    let poset = Poset::chain(4);
    let g: Vec<i64> = (0..4).collect();
    let sigma: Vec<usize> = (0..4).rev().collect();
    let report = weidual::galois::abundance_bridge_check(&poset, &g, &g, 1, &sigma).unwrap();
    assert!(report.all_true());

    // Normalization failures are errors, not false reports.
    let bad_f = vec![1, 1, 2, 3];
    assert!(weidual::galois::abundance_bridge_check(&poset, &g, &bad_f, 1, &sigma).is_err());
    let jump = vec![0, 2, 2, 3];
    assert!(weidual::galois::abundance_bridge_check(&poset, &g, &jump, 1, &sigma).is_err());
}

#[test]
fn poset_metric_weights_reduce_to_plain_code_weights() {
    // A single code under the antichain order: the flag-family route must
    // reproduce the code's own weight and profile tables.
    let caps = Caps::default();
    let mut rng = SplitMix64::new(0x61);
    for _ in 0..25 {
        let q = [2u64, 3][rng.below(2) as usize];
        let ring = Ring::field(q, 1).unwrap();
        let m = 1 + rng.below(5) as usize;
        let k = rng.below(m as u64 + 1) as usize;
        let code = random_code(&mut rng, &ring, m, k);
        let flags = CodeFlagFamily::single(&code);
        let wp =
            weidual::metric_codes::poset_weights(&flags, &Poset::antichain(m), &caps).unwrap();
        assert_eq!(wp.weights, ghw_table(&code, GhwMethod::Subset, &caps).unwrap());
        assert_eq!(wp.profiles, dlp_table(&code));
    }
}

#[test]
fn howell_canonicity_over_higher_chain_rings() {
    // Over Z8 and Z9: equal modules from different generating sets yield
    // identical canonical bases, sizes multiply against annihilators, and
    // membership agrees with element enumeration.
    for (p, sexp) in [(2u64, 3u32), (3, 2)] {
        let ring = Ring::chain(p, sexp).unwrap();
        let size = ring.size();
        let mut rng = SplitMix64::new(p * 1000 + sexp as u64);
        for _ in 0..40 {
            let rows: Vec<Vec<u64>> = (0..2)
                .map(|_| (0..2).map(|_| rng.below(size)).collect())
                .collect();
            let module =
                weidual::algebra::Submodule::from_rows(ring.clone(), 2, &rows).unwrap();
            // Rebuild from the full element list: same canonical form.
            let elements = module.elements();
            let rebuilt =
                weidual::algebra::Submodule::from_rows(ring.clone(), 2, &elements).unwrap();
            assert_eq!(module, rebuilt);
            assert_eq!(elements.len() as u128, module.size());
            for e in &elements {
                assert!(module.contains_vec(e));
            }
            // Annihilator cardinality identity.
            let form = BilinearForm::standard(ring.clone(), 2);
            let ann = form.right_annihilator_module(&module);
            assert_eq!(module.size() * ann.size(), (size as u128).pow(2));
            assert_eq!(form.left_annihilator_module(&ann), module);
        }
    }
}

#[test]
fn closure_duality_over_higher_chain_rings() {
    // The free-closure duality report is not Z4-specific: run it over Z8
    // and Z9 for every submodule of the length-2 ambient space.
    let caps = Caps::default();
    for (p, sexp) in [(2u64, 3u32), (3, 2)] {
        let ring = Ring::chain(p, sexp).unwrap();
        let all = weidual::algebra::enumerate_submodules(&ring, 2, &caps).unwrap();
        for module in all {
            let code = weidual::metric_codes::ChainRingCode::from_submodule(module);
            for poset in [Poset::antichain(2), Poset::chain(2)] {
                let rep =
                    weidual::metric_codes::theorem74_report(&code, &poset, &caps).unwrap();
                assert!(rep.all_pass(), "p={} s={}: {:?}", p, sexp, rep.first_failure());
            }
        }
    }
}

#[test]
fn weight_partition_over_extension_fields() {
    // The code pipeline is not prime-field specific: random codes over
    // GF(4) and GF(9) satisfy the partition and identity reports.
    let caps = Caps::default();
    let mut rng = SplitMix64::new(0x16);
    for (p, e) in [(2u64, 2u32), (3, 2), (2, 3)] {
        let ring = Ring::field(p, e).unwrap();
        for m in 1..=4usize {
            for k in 0..=m {
                let code = random_code(&mut rng, &ring, m, k);
                let rep = weidual::hamming::wei_forney_report(&code, &caps).unwrap();
                assert!(rep.report.all_pass(), "{:?}", rep.report.first_failure());
            }
        }
    }
}

#[test]
fn trace_pairing_equals_flattened_inner_product() {
    // tr(a * b^T) over w x m matrices equals the standard inner product
    // of the position-major flattenings.
    let ring = Ring::field(2, 1).unwrap();
    let flags_ambient = BilinearForm::standard(ring.clone(), 4);
    let mut rng = SplitMix64::new(0x713);
    for _ in 0..50 {
        let x: Vec<u64> = (0..4).map(|_| rng.below(2)).collect();
        let y: Vec<u64> = (0..4).map(|_| rng.below(2)).collect();
        // Columns are the position blocks: matrix rows (i) collect the
        // i-th coordinate of every block.
        let to_matrix = |v: &[u64]| {
            let rows: Vec<Vec<u64>> = (0..2)
                .map(|i| (0..2).map(|e| v[e * 2 + i]).collect())
                .collect();
            weidual::algebra::Matrix::from_rows(ring.clone(), 2, &rows).unwrap()
        };
        let a = to_matrix(&x);
        let b = to_matrix(&y);
        let trace = a.mul(&b.transpose()).trace();
        assert_eq!(trace, flags_ambient.eval(&x, &y));
    }
}

#[test]
fn rank_extension_duality_beyond_the_full_sweep_bound() {
    // Ambient dimension 8 over GF(2): the full lattice is far past the
    // sweep bound, so the structural identity is checked on the dual
    // family and the coordinate subspaces instead. A maximal chain family
    // keeps the weight computation exact.
    let caps = Caps::default();
    let ring = Ring::field(2, 1).unwrap();
    let mut rng = SplitMix64::new(0x88);
    let flags = weidual::metric_codes::random_odd_flag_family(&ring, 1, 8, 1, 0x88).unwrap();
    let lattice_free = {
        // Build a maximal chain family by random extension.
        let mut members = vec![weidual::algebra::Subspace::zero(ring.clone(), 8)];
        let mut current = members[0].clone();
        while current.dim() < 8 {
            let v: Vec<u64> = (0..8).map(|_| rng.below(2)).collect();
            let cand = current
                .sum(&weidual::algebra::Subspace::from_rows(ring.clone(), 8, &[v]).unwrap())
                .unwrap();
            if cand.dim() == current.dim() + 1 {
                current = cand;
                members.push(current.clone());
            }
        }
        SubspaceFamily::new(ring.clone(), 8, members).unwrap()
    };
    let form = BilinearForm::standard(ring, 1);
    let rep = weidual::metric_codes::theorem71_report(&flags, &lattice_free, &form, &caps).unwrap();
    assert!(rep.all_pass(), "{:?}", rep.first_failure());
}

#[test]
fn matrix_metric_duality_on_asymmetric_shapes() {
    // 3 x 2 and 2 x 3 matrix spaces: the residue classes run mod m while
    // the partition covers [1, w], so both orientations are exercised.
    let caps = Caps::default();
    let ring = Ring::field(2, 1).unwrap();
    for (w_dim, m) in [(3usize, 2usize), (2, 3)] {
        let lattice = SubspaceLattice::new(ring.clone(), w_dim, &caps).unwrap();
        let fam = SubspaceFamily::full_lattice(&lattice);
        let form = BilinearForm::standard(ring.clone(), w_dim);
        for seed in 0..12u64 {
            let flags = random_odd_flag_family(&ring, w_dim, m, 1 + (seed % 2) as usize, seed)
                .unwrap();
            let rep =
                weidual::metric_codes::theorem73_report(&flags, &fam, &form, &caps).unwrap();
            assert!(
                rep.all_pass(),
                "w={} m={} seed={}: {:?}",
                w_dim,
                m,
                seed,
                rep.first_failure()
            );
        }
    }
}

#[test]
fn rank_extension_duality_over_gf9_and_gf8() {
    // The extension-field route is not GF(4)-specific.
    let caps = Caps::default();
    for (p, e, m) in [(3u64, 2u32, 2usize), (2, 3, 2)] {
        let ring = Ring::field(p, e).unwrap();
        let form = BilinearForm::standard(ring.clone(), 1);
        for seed in 0..8u64 {
            let flags = random_odd_flag_family(&ring, 1, m, 1, seed).unwrap();
            let fam = galois_closed_family(&flags, &caps).unwrap();
            // The rational-closure family is closed under annihilators.
            let big = form.block_extend(m);
            let closed = fam.annihilators(&big).unwrap();
            assert!(closed.members().iter().all(|s| fam.contains(s)));
            let rep =
                weidual::metric_codes::theorem71_report(&flags, &fam, &form, &caps).unwrap();
            assert!(rep.all_pass(), "q={}^{}: {:?}", p, e, rep.first_failure());
        }
    }
}

#[test]
fn mds_codes_have_textbook_weight_hierarchies() {
    // Evaluation codes on distinct points are MDS, so the r-th weight is
    // n - k + r: an independent closed-form oracle for the tables.
    let caps = Caps::default();
    let cases: [(u64, usize, usize); 4] = [(5, 4, 2), (7, 5, 3), (7, 6, 2), (11, 5, 4)];
    for (q, n, k) in cases {
        let ring = Ring::field(q, 1).unwrap();
        let mut rows = Vec::new();
        for r in 0..k {
            rows.push((0..n).map(|x| ring_pow(&ring, x as u64, r)).collect::<Vec<u64>>());
        }
        let code = weidual::hamming::LinearCode::new(ring, n, &rows).unwrap();
        assert_eq!(code.dim(), k);
        let d = ghw_table(&code, GhwMethod::Subset, &caps).unwrap();
        let expected: Vec<i64> = std::iter::once(0)
            .chain((1..=k as i64).map(|r| (n - k) as i64 + r))
            .collect();
        assert_eq!(d, expected, "q={} n={} k={}", q, n, k);
        // MDS duals are MDS; the whole joint report must hold as well.
        let rep = weidual::hamming::wei_forney_report(&code, &caps).unwrap();
        assert!(rep.report.all_pass());
        let dual_expected: Vec<i64> = std::iter::once(0)
            .chain((1..=(n - k) as i64).map(|r| k as i64 + r))
            .collect();
        assert_eq!(rep.d_dual, dual_expected);
    }

    fn ring_pow(ring: &Ring, x: u64, e: usize) -> u64 {
        let mut acc = 1;
        for _ in 0..e {
            acc = ring.mul(acc, x);
        }
        acc
    }
}

#[test]
fn intersection_rank_polymatroids_have_identity_weights() {
    // f = dim(C n .) over the full lattice: subspaces inside C attain
    // every rank with minimal dimension, so the weight table is the
    // identity on [0, dim C].
    let caps = Caps::default();
    let mut rng = SplitMix64::new(0x99);
    for _ in 0..10 {
        let q = [2u64, 3][rng.below(2) as usize];
        let ring = Ring::field(q, 1).unwrap();
        let n = 2 + rng.below(2) as usize;
        let k = rng.below(n as u64 + 1) as usize;
        let code = random_code(&mut rng, &ring, n, k);
        let lattice = SubspaceLattice::new(ring.clone(), n, &caps).unwrap();
        let table: Vec<i64> = lattice
            .spaces()
            .iter()
            .map(|s| code.generator().intersect(s).unwrap().dim() as i64)
            .collect();
        let dp = weidual::demipolymatroid::DemiPolymatroid::new(lattice.clone(), 1, table)
            .unwrap();
        assert!(dp.validate().is_ok());
        let fam = SubspaceFamily::full_lattice(&lattice);
        let wp = weidual::demipolymatroid::weights_profiles(&dp, &fam).unwrap();
        let expected: Vec<i64> = (0..=k as i64).collect();
        assert_eq!(wp.weights, expected);
        // And the lattice duality holds for this natural instance.
        let form = BilinearForm::standard(ring, n);
        let rep = weidual::demipolymatroid::theorem51_report(&dp, &fam, &form).unwrap();
        assert!(rep.all_pass());
    }
}

#[test]
fn duality_holds_for_non_symmetric_pairings() {
    // Nothing in the duality theory needs a symmetric gram matrix; a
    // shear pairing distinguishes left from right annihilators, so any
    // wiring mixup between the two sides surfaces here.
    let caps = Caps::default();
    let ring = Ring::field(3, 1).unwrap();
    let shear = weidual::algebra::Matrix::from_rows(
        ring.clone(),
        2,
        &[vec![1, 1], vec![0, 1]],
    )
    .unwrap();
    let form = BilinearForm::new(shear).unwrap();
    // Left and right annihilators genuinely differ under this form.
    let line = weidual::algebra::Subspace::from_rows(ring.clone(), 2, &[vec![1, 0]]).unwrap();
    assert_ne!(form.right_annihilator(&line), form.left_annihilator(&line));

    let lattice = SubspaceLattice::new(ring.clone(), 2, &caps).unwrap();
    let fam = SubspaceFamily::full_lattice(&lattice);
    for seed in 0..20u64 {
        for w in 1..=2i64 {
            let dp = weidual::demipolymatroid::random_polymatroid(&lattice, w, seed);
            let rep = weidual::demipolymatroid::theorem51_report(&dp, &fam, &form).unwrap();
            assert!(rep.all_pass(), "seed {} w {}: {:?}", seed, w, rep.first_failure());
            // The inverse of dualizing under Q is dualizing under Q^T:
            // the opposite-side annihilator realizes the reciprocal
            // identity. (With a symmetric gram the two coincide and the
            // construction is literally an involution.)
            let transposed = BilinearForm::new(form.gram().transpose()).unwrap();
            let dd = dp.dual(&form).unwrap().dual(&transposed).unwrap();
            assert_eq!(dd.table(), dp.table());
        }
    }

    // Metric duality through the same shear as the inner pairing.
    for seed in 0..10u64 {
        let flags = random_odd_flag_family(&ring, 2, 2, 1, seed).unwrap();
        let rep = weidual::metric_codes::theorem73_report(&flags, &fam, &form, &caps).unwrap();
        assert!(rep.all_pass(), "t73 seed {}: {:?}", seed, rep.first_failure());
        let poset = Poset::chain(2);
        let rep = weidual::metric_codes::theorem72_report(&flags, &poset, &form, &caps).unwrap();
        assert!(rep.all_pass(), "t72 seed {}: {:?}", seed, rep.first_failure());
    }
}

#[test]
fn transpose_pair_matrix_code_duality() {
    // Square matrix codes paired with their transposes: a two-flag family
    // with one code each, equal alternating sums, odd lengths. The
    // matrix-metric duality report must hold with the trace pairing.
    let caps = Caps::default();
    let ring = Ring::field(2, 1).unwrap();
    let w = 2usize; // square: w = m
    let transpose_vec = |v: &[u64]| -> Vec<u64> {
        let mut t = vec![0u64; v.len()];
        for e in 0..w {
            for i in 0..w {
                t[i * w + e] = v[e * w + i];
            }
        }
        t
    };
    let mut rng = SplitMix64::new(0x7273);
    let lattice = SubspaceLattice::new(ring.clone(), w, &caps).unwrap();
    let fam = SubspaceFamily::full_lattice(&lattice);
    let form = BilinearForm::standard(ring.clone(), w);
    for _ in 0..15 {
        let dim = rng.below(5) as usize;
        let code = random_code(&mut rng, &ring, w * w, dim);
        let transposed_rows: Vec<Vec<u64>> = (0..code.dim())
            .map(|i| transpose_vec(code.generator().basis().row(i)))
            .collect();
        let transposed =
            weidual::algebra::Subspace::from_rows(ring.clone(), w * w, &transposed_rows)
                .unwrap();
        assert_eq!(transposed.dim(), code.dim());
        let flags = CodeFlagFamily::new(
            ring.clone(),
            w,
            w,
            vec![vec![code.generator().clone()], vec![transposed]],
        )
        .unwrap();
        assert_eq!(flags.common_k().unwrap(), dim as i64);
        let rep = weidual::metric_codes::theorem73_report(&flags, &fam, &form, &caps).unwrap();
        assert!(rep.all_pass(), "{:?}", rep.first_failure());
        // Rank is transpose-invariant, so both flags induce the same
        // first weight; the table is well defined on the pair family.
        let wp = weidual::metric_codes::delsarte_weights(&flags, &fam).unwrap();
        if dim >= 1 {
            let min_rank = code
                .generator()
                .elements()
                .iter()
                .filter(|v| v.iter().any(|&x| x != 0))
                .map(|v| {
                    weidual::metric_codes::codeword_rank(
                        &CodeFlagFamily::new(
                            ring.clone(),
                            w,
                            w,
                            vec![vec![code.generator().clone()]],
                        )
                        .unwrap(),
                        v,
                    )
                })
                .min()
                .unwrap() as i64;
            assert!(wp.weights[1] <= min_rank);
        }
    }
}

#[test]
fn ghwr_subcode_formulation_exhaustive_over_short_codes() {
    // ghwr_weights cross-checks the demi-matroid tables against the
    // subcode formulation (minimum generated-ideal size of a support,
    // rank by rank); run it over every submodule of the length-2 ambient
    // for two chain rings and all poset shapes.
    let caps = Caps::default();
    for (p, sexp) in [(2u64, 2u32), (3, 2)] {
        let ring = Ring::chain(p, sexp).unwrap();
        let all = weidual::algebra::enumerate_submodules(&ring, 2, &caps).unwrap();
        for module in all {
            let code = weidual::metric_codes::ChainRingCode::from_submodule(module);
            for poset in [Poset::antichain(2), Poset::chain(2)] {
                let wp = weidual::metric_codes::ghwr_weights(&code, &poset, &caps).unwrap();
                assert_eq!(wp.weights.len(), code.rank() + 1);
                assert_eq!(wp.weights[0], 0);
            }
        }
    }
}
