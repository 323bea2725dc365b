//! Deterministic random instance generation for property tests and the
//! fuzz harness. Every generator draws from a caller-supplied SplitMix64
//! stream, so instances are reproducible from the seed alone.

use crate::algebra::{Ring, Subspace, SubspaceLattice};
use crate::demipolymatroid::SubspaceFamily;
use crate::error::Result;
use crate::galois::{adjoint_of, AdjointSide, BridgeTuple, GaloisPair, MonotoneTable};
use crate::hamming::LinearCode;
use crate::rng::SplitMix64;

/// Random (m, k) linear code: random generator rows, topped up with
/// standard basis vectors if randomness stalls below the target rank.
pub fn random_code(rng: &mut SplitMix64, ring: &Ring, m: usize, k: usize) -> LinearCode {
    assert!(k <= m);
    let q = ring.size();
    let mut space = Subspace::zero(ring.clone(), m);
    let mut stall = 0;
    while space.dim() < k {
        let row: Vec<u64> = (0..m).map(|_| rng.below(q)).collect();
        let candidate = space
            .sum(&Subspace::from_rows(ring.clone(), m, &[row]).unwrap())
            .unwrap();
        if candidate.dim() > space.dim() {
            space = candidate;
            stall = 0;
        } else {
            stall += 1;
            if stall > 32 {
                for j in 0..m {
                    let mut unit = vec![0u64; m];
                    unit[j] = 1;
                    if !space.contains_vec(&unit) {
                        space = space
                            .sum(&Subspace::from_rows(ring.clone(), m, &[unit]).unwrap())
                            .unwrap();
                        break;
                    }
                }
                stall = 0;
            }
        }
    }
    LinearCode::from_subspace(space)
}

/// Random monotone walk from (0, 0) to (m, k) with steps in [0, w];
/// requires k <= w * m. Feasibility is maintained at every index, so the
/// sampler never backtracks.
pub fn random_bounded_walk(rng: &mut SplitMix64, m: i64, k: i64, w: i64) -> Vec<i64> {
    assert!(k <= w * m && k >= 0);
    let mut values = Vec::with_capacity(m as usize + 1);
    values.push(0i64);
    for j in 1..=m {
        let prev = values[(j - 1) as usize];
        let lo = prev.max(k - w * (m - j));
        let hi = (prev + w).min(k);
        values.push(rng.range_i64(lo, hi));
    }
    values
}

/// Random Galois pair between [0, k] and [0, m] whose psi has psi(0) = 0
/// and steps bounded by w (a valid left input of the duality theory).
pub fn random_step_bounded_pair(rng: &mut SplitMix64, k: i64, m: i64, w: i64) -> GaloisPair {
    let psi_values = random_bounded_walk(rng, m, k, w);
    let psi = MonotoneTable::new(psi_values, k).unwrap();
    let phi = adjoint_of(&psi, AdjointSide::Right).unwrap();
    GaloisPair::new(phi, psi).unwrap()
}

/// Random Galois pair between [0, kk] and [0, m] without step bounds: a
/// candidate right-hand side for the equivalence report. Most draws are
/// not the dual of anything in particular.
pub fn random_unconstrained_pair(rng: &mut SplitMix64, kk: i64, m: i64) -> GaloisPair {
    // Monotone eta with eta(m) = kk; steps unbounded.
    let mut values = Vec::with_capacity(m as usize + 1);
    let mut current = if m == 0 {
        kk
    } else {
        rng.range_i64(0, kk)
    };
    values.push(current.min(kk));
    for j in 1..=m {
        let lo = current;
        let hi = kk;
        current = if j == m { kk } else { rng.range_i64(lo, hi) };
        values.push(current);
    }
    // eta(0) may be nonzero here, which is allowed for the right pair.
    let eta = MonotoneTable::new(values, kk).unwrap();
    let tau = adjoint_of(&eta, AdjointSide::Right).unwrap();
    GaloisPair::new(tau, eta).unwrap()
}

/// Random bridge tuple: grades are seeded by a skeleton chain with one
/// element per grade carrying a bounded walk, and extra elements draw
/// values inside the interval that keeps the successor and predecessor
/// conditions satisfiable through the skeleton.
pub fn random_bridge_tuple(
    rng: &mut SplitMix64,
    max_m: i64,
    max_w: i64,
    max_extra: usize,
) -> BridgeTuple {
    let m = rng.range_i64(0, max_m);
    let w = rng.range_i64(1, max_w);
    let k = rng.range_i64(0, w * m);
    let skeleton = random_bounded_walk(rng, m, k, w);
    let mut g: Vec<i64> = (0..=m).collect();
    let mut f: Vec<i64> = skeleton.clone();
    let extra = rng.below(max_extra as u64 + 1) as usize;
    for _ in 0..extra {
        let level = rng.range_i64(0, m);
        let lo = (w * level - (w * m - k)).max(0);
        let mut hi = k;
        if level < m {
            hi = hi.min(skeleton[(level + 1) as usize]);
        }
        if level > 0 {
            hi = hi.min(skeleton[(level - 1) as usize] + w);
        }
        if level == 0 {
            hi = 0;
        }
        g.push(level);
        f.push(rng.range_i64(lo, hi));
    }
    // sigma: a surjection from a set at least as large as Y.
    let y_len = g.len();
    let x_len = y_len + rng.below(3) as usize;
    let mut sigma: Vec<usize> = (0..y_len).collect();
    for _ in y_len..x_len {
        sigma.push(rng.below(y_len as u64) as usize);
    }
    // Shuffle sigma deterministically.
    for i in (1..sigma.len()).rev() {
        let j = rng.below(i as u64 + 1) as usize;
        sigma.swap(i, j);
    }
    BridgeTuple::new(m, k, w, g, f, sigma).expect("constructed tuple satisfies the conditions")
}

/// A random maximal chain of subspaces (an abundance family).
pub fn random_chain_family(rng: &mut SplitMix64, lattice: &SubspaceLattice) -> Result<SubspaceFamily> {
    let ring = lattice.ring().clone();
    let n = lattice.ambient_dim();
    let q = ring.size();
    let mut members = vec![Subspace::zero(ring.clone(), n)];
    let mut current = members[0].clone();
    while current.dim() < n {
        loop {
            let row: Vec<u64> = (0..n).map(|_| rng.below(q)).collect();
            let candidate = current
                .sum(&Subspace::from_rows(ring.clone(), n, &[row]).unwrap())
                .unwrap();
            if candidate.dim() == current.dim() + 1 {
                current = candidate;
                break;
            }
        }
        members.push(current.clone());
    }
    SubspaceFamily::new(ring, n, members)
}
