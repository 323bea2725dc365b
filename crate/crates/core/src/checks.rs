//! Named duality checks and the seeded randomized verification harness.
//! Each entry point returns the flat clause list the CLI wraps into a
//! report; everything is deterministic in (inputs, seed, caps).

use crate::algebra::{BilinearForm, Ring, SubspaceLattice};
use crate::demimatroid::{
    random_demimatroid, theorem41_report, theorem42_report, DemiMatroid, RandomStrategy,
};
use crate::demipolymatroid::{
    enumerate_qmatroids, random_polymatroid, theorem51_report, DemiPolymatroid, QMatroid,
    SubspaceFamily,
};
use crate::error::{invalid, Caps, Result};
use crate::galois::{
    abundance_bridge_check, central_theorem_report, BridgeTuple, GaloisPair,
};
use crate::generate::{
    random_bridge_tuple, random_chain_family, random_code, random_step_bounded_pair,
    random_unconstrained_pair,
};
use crate::hamming::{ghw_methods_agree, wei_forney_report, LinearCode};
use crate::metric_codes::{
    galois_closed_family, random_odd_flag_family, theorem71_report, theorem72_report,
    theorem73_report, theorem74_report, ChainRingCode, CodeFlagFamily,
};
use crate::poset::{Poset, SetFamily};
use crate::report::ClauseCheck;
use crate::rng::SplitMix64;

pub fn check_wei_forney(code: &LinearCode, caps: &Caps) -> Result<Vec<ClauseCheck>> {
    Ok(wei_forney_report(code, caps)?.report.checks)
}

/// The four-way equivalence check for an explicit pair of connections.
/// When `w` is absent it is inferred from the declared bounds.
pub fn check_t22(pair1: &GaloisPair, pair2: &GaloisPair, w: Option<i64>) -> Result<Vec<ClauseCheck>> {
    let w = match w {
        Some(w) => w,
        None => infer_w(pair1, pair2)?,
    };
    let report = central_theorem_report(pair1, pair2, w)?;
    Ok(vec![
        ClauseCheck::from_flag(
            "statement1_closed_formula",
            "2.2(1)",
            report.closed_formula,
            report.witness.clone(),
        ),
        ClauseCheck::from_flag(
            "statement2_local_conditions",
            "2.2(2)",
            report.local_conditions,
            report.witness.clone(),
        ),
        ClauseCheck::from_flag(
            "statement3_partitions",
            "2.2(3)",
            report.partitions,
            report.witness.clone(),
        ),
        ClauseCheck::from_flag(
            "statement4_covers",
            "2.2(4)",
            report.covers,
            report.witness.clone(),
        ),
        ClauseCheck::from_flag(
            "statements_equivalent",
            "2.2",
            report.all_equal(),
            Some("the four statement values differ".to_string()),
        ),
    ])
}

/// Infer w from the declared bounds: pair2 connects [0, w*m - k] and
/// [0, m].
pub fn infer_w(pair1: &GaloisPair, pair2: &GaloisPair) -> Result<i64> {
    let k = pair1.k_max();
    let m = pair1.m_max();
    if pair2.m_max() != m {
        return invalid("pairs disagree on the right interval bound");
    }
    if m == 0 {
        return Ok(1);
    }
    let total = pair2.k_max() + k;
    if total % m != 0 {
        return invalid("cannot infer an integer step bound from the table bounds");
    }
    let w = total / m;
    if w <= 0 {
        return invalid("inferred step bound is not positive");
    }
    Ok(w)
}

pub fn check_t31(tuple: &BridgeTuple) -> Result<Vec<ClauseCheck>> {
    let report = crate::galois::bridge_report(tuple)?;
    Ok(vec![
        ClauseCheck::passed("derived_pairs_valid", "3.1-prop"),
        ClauseCheck::from_flag(
            "closed_formula",
            "3.1(1)",
            report.central.closed_formula,
            report.central.witness.clone(),
        ),
        ClauseCheck::from_flag(
            "residue_partitions",
            "3.1(2)",
            report.central.partitions,
            report.central.witness.clone(),
        ),
    ])
}

pub fn check_t32(
    poset: &Poset,
    g: &[i64],
    f: &[i64],
    w: i64,
    sigma: &[usize],
) -> Result<Vec<ClauseCheck>> {
    let report = abundance_bridge_check(poset, g, f, w, sigma)?;
    Ok(vec![
        ClauseCheck::passed("abundance_and_slope_valid", "3.2-pre"),
        ClauseCheck::from_flag(
            "closed_formula",
            "3.2(1)",
            report.central.closed_formula,
            report.central.witness.clone(),
        ),
        ClauseCheck::from_flag(
            "residue_partitions",
            "3.2(2)",
            report.central.partitions,
            report.central.witness.clone(),
        ),
    ])
}

pub fn check_t41(dm: &DemiMatroid, fam: &SetFamily) -> Result<Vec<ClauseCheck>> {
    Ok(theorem41_report(dm, fam)?.checks)
}

pub fn check_t42(dm: &DemiMatroid, p: &Poset, caps: &Caps) -> Result<Vec<ClauseCheck>> {
    Ok(theorem42_report(dm, p, caps)?.checks)
}

pub fn check_t51(
    dp: &DemiPolymatroid,
    fam: &SubspaceFamily,
    form: &BilinearForm,
) -> Result<Vec<ClauseCheck>> {
    Ok(theorem51_report(dp, fam, form)?.checks)
}

pub fn check_qmatroid(q: &QMatroid, form: &BilinearForm) -> Result<Vec<ClauseCheck>> {
    Ok(crate::demipolymatroid::qmatroid_report(q, form)?.checks)
}

pub fn check_t71(
    flags: &CodeFlagFamily,
    fam: &SubspaceFamily,
    form: &BilinearForm,
    caps: &Caps,
) -> Result<Vec<ClauseCheck>> {
    Ok(theorem71_report(flags, fam, form, caps)?.checks)
}

pub fn check_t72(
    flags: &CodeFlagFamily,
    p: &Poset,
    form: &BilinearForm,
    caps: &Caps,
) -> Result<Vec<ClauseCheck>> {
    Ok(theorem72_report(flags, p, form, caps)?.checks)
}

pub fn check_t73(
    flags: &CodeFlagFamily,
    fam: &SubspaceFamily,
    form: &BilinearForm,
    caps: &Caps,
) -> Result<Vec<ClauseCheck>> {
    Ok(theorem73_report(flags, fam, form, caps)?.checks)
}

pub fn check_t74(code: &ChainRingCode, p: &Poset, caps: &Caps) -> Result<Vec<ClauseCheck>> {
    Ok(theorem74_report(code, p, caps)?.checks)
}

/// Instance counts for the randomized harness. A count of zero skips the
/// family entirely.
#[derive(Debug, Clone)]
pub struct FuzzConfig {
    pub seed: u64,
    pub codes: u64,
    pub pairs: u64,
    pub bridges: u64,
    pub demimatroids: u64,
    pub polymatroids: u64,
    pub flags: u64,
    /// Exhaustive chain-ring sweep length (codes over Z4 of this length
    /// and every shorter positive length); zero skips it.
    pub z4_len: usize,
    /// Field size for the code family; None cycles 2 and 3.
    pub q: Option<u64>,
    pub max_m: usize,
    pub caps: Caps,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            seed: 0,
            codes: 50,
            pairs: 200,
            bridges: 50,
            demimatroids: 100,
            polymatroids: 50,
            flags: 12,
            z4_len: 2,
            q: None,
            max_m: 6,
            caps: Caps::default(),
        }
    }
}

impl FuzzConfig {
    /// All families disabled; CLI count flags then enable what they name.
    pub fn empty(seed: u64) -> Self {
        FuzzConfig {
            seed,
            codes: 0,
            pairs: 0,
            bridges: 0,
            demimatroids: 0,
            polymatroids: 0,
            flags: 0,
            z4_len: 0,
            q: None,
            max_m: 6,
            caps: Caps::default(),
        }
    }
}

fn aggregate(
    name: &str,
    anchor: &str,
    instances: u64,
    failure: Option<String>,
) -> ClauseCheck {
    ClauseCheck::from_flag(name, anchor, failure.is_none(), failure).with_instances(instances)
}

/// Run the randomized suite. Every family draws from its own fork of the
/// master stream, so the counts of one family do not shift another's
/// instances. Each family contributes one aggregated record carrying its
/// instance count; the first counterexample (never expected) becomes the
/// witness.
pub fn fuzz(cfg: &FuzzConfig) -> Result<Vec<ClauseCheck>> {
    let mut master = SplitMix64::new(cfg.seed);
    let mut records = Vec::new();
    let caps = &cfg.caps;

    // Independent streams, forked in a fixed order.
    let mut rng_codes = master.fork();
    let mut rng_pairs = master.fork();
    let mut rng_bridges = master.fork();
    let mut rng_dm = master.fork();
    let mut rng_dp = master.fork();
    let mut rng_flags = master.fork();

    if cfg.codes > 0 {
        let mut failure = None;
        let mut oracle_failure = None;
        let mut oracle_count = 0u64;
        let qs: Vec<u64> = match cfg.q {
            Some(q) => vec![q],
            None => vec![2, 3],
        };
        for i in 0..cfg.codes {
            let q = qs[(i % qs.len() as u64) as usize];
            let ring = Ring::field_of_size(q)?;
            let m = 1 + (rng_codes.below(cfg.max_m as u64)) as usize;
            let k = rng_codes.below(m as u64 + 1) as usize;
            let code = random_code(&mut rng_codes, &ring, m, k);
            let rep = wei_forney_report(&code, caps)?;
            if failure.is_none() && !rep.report.all_pass() {
                failure = Some(format!(
                    "instance {} (q={}, m={}, k={}): {}",
                    i,
                    q,
                    m,
                    k,
                    rep.report.first_failure().unwrap().name
                ));
            }
            if (q as u128).pow(k as u32) <= 256 {
                oracle_count += 1;
                if oracle_failure.is_none() && !ghw_methods_agree(&code, caps)? {
                    oracle_failure = Some(format!("instance {} (q={}, m={}, k={})", i, q, m, k));
                }
            }
        }
        records.push(aggregate("codes.wei_forney", "1.3+1.6+2.1", cfg.codes, failure));
        records.push(aggregate(
            "codes.ghw_method_equivalence",
            "1.1",
            oracle_count,
            oracle_failure,
        ));
    }

    if cfg.pairs > 0 {
        let mut failure = None;
        for i in 0..cfg.pairs {
            let m = rng_pairs.range_i64(0, 6);
            let w = rng_pairs.range_i64(1, 3);
            let k = rng_pairs.range_i64(0, w * m);
            let pair1 = random_step_bounded_pair(&mut rng_pairs, k, m, w);
            // Half exact duals, half unconstrained candidates.
            let pair2 = if i % 2 == 0 {
                crate::galois::dual_connection(&pair1, w)?
            } else {
                random_unconstrained_pair(&mut rng_pairs, w * m - k, m)
            };
            let rep = central_theorem_report(&pair1, &pair2, w)?;
            if failure.is_none() && !rep.all_equal() {
                failure = Some(format!(
                    "instance {} (k={}, m={}, w={}): statement values differ",
                    i, k, m, w
                ));
            }
            if failure.is_none() && i % 2 == 0 && !rep.all_true() {
                failure = Some(format!("instance {}: exact dual rejected", i));
            }
        }
        records.push(aggregate("pairs.central_equivalence", "2.2", cfg.pairs, failure));
    }

    if cfg.bridges > 0 {
        let mut failure = None;
        for i in 0..cfg.bridges {
            let tuple = random_bridge_tuple(&mut rng_bridges, 5, 3, 14);
            let rep = crate::galois::bridge_report(&tuple)?;
            if failure.is_none() && !rep.all_true() {
                failure = Some(format!("tuple instance {}", i));
            }
        }
        // Graded-order bridges: the Boolean lattice with cardinality
        // grading, rank functions from random demi-matroids, and the
        // complement map as sigma.
        for i in 0..cfg.bridges {
            let m = 1 + rng_bridges.below(3) as usize;
            let w = rng_bridges.range_i64(1, 3);
            let dm = random_demimatroid(m, w, rng_bridges.next_u64(), RandomStrategy::Rejection)?;
            let n = 1usize << m;
            let leq: Vec<bool> = (0..n)
                .flat_map(|a| (0..n).map(move |b| a & b == a))
                .collect();
            let poset = Poset::new(n, leq)?;
            let g: Vec<i64> = (0..n as u64).map(|x| x.count_ones() as i64).collect();
            let f: Vec<i64> = dm.table().to_vec();
            let sigma: Vec<usize> = (0..n).map(|x| !x & (n - 1)).collect();
            let rep = abundance_bridge_check(&poset, &g, &f, w, &sigma)?;
            if failure.is_none() && !rep.all_true() {
                failure = Some(format!("graded instance {}", i));
            }
        }
        records.push(aggregate("bridges.duality", "3.1+3.2", 2 * cfg.bridges, failure));
    }

    if cfg.demimatroids > 0 {
        let mut failure = None;
        let nonideal = SetFamily::new(3, vec![0b000, 0b001, 0b010, 0b101, 0b110, 0b111])?;
        for i in 0..cfg.demimatroids {
            let (m, strategy) = if i % 2 == 0 {
                (1 + rng_dm.below(4) as usize, RandomStrategy::Rejection)
            } else {
                (
                    1 + rng_dm.below(cfg.max_m.min(6) as u64) as usize,
                    RandomStrategy::CodeFlag,
                )
            };
            let w = rng_dm.range_i64(1, 3);
            let dm = random_demimatroid(m, w, rng_dm.next_u64(), strategy)?;
            // Dual involution.
            if failure.is_none() && dm.dual()?.dual()? != dm {
                failure = Some(format!("instance {}: dual involution fails", i));
            }
            let mut posets = vec![Poset::antichain(m), Poset::chain(m)];
            if m >= 3 {
                posets.push(Poset::from_pairs(m, &[(0, 2), (1, 2)])?);
            }
            for p in &posets {
                let rep = theorem42_report(&dm, p, caps)?;
                if failure.is_none() && !rep.all_pass() {
                    failure = Some(format!(
                        "instance {} (m={}, w={}): {}",
                        i,
                        m,
                        w,
                        rep.first_failure().unwrap().name
                    ));
                }
            }
            if m == 3 {
                let rep = theorem41_report(&dm, &nonideal)?;
                if failure.is_none() && !rep.all_pass() {
                    failure = Some(format!("instance {} on the non-ideal family", i));
                }
            }
        }
        records.push(aggregate(
            "demimatroids.duality",
            "4.1+4.2",
            cfg.demimatroids,
            failure,
        ));
    }

    if cfg.polymatroids > 0 {
        let mut failure = None;
        let spaces = [(Ring::field(2, 1)?, 3usize), (Ring::field(3, 1)?, 2usize)];
        let lattices: Vec<SubspaceLattice> = spaces
            .iter()
            .map(|(ring, n)| SubspaceLattice::new(ring.clone(), *n, caps))
            .collect::<Result<_>>()?;
        for i in 0..cfg.polymatroids {
            let lattice = &lattices[(i % 2) as usize];
            let form = BilinearForm::standard(lattice.ring().clone(), lattice.ambient_dim());
            let w = rng_dp.range_i64(1, 3);
            let dp = random_polymatroid(lattice, w, rng_dp.next_u64());
            let full = SubspaceFamily::full_lattice(lattice);
            let chain = random_chain_family(&mut rng_dp, lattice)?;
            for fam in [&full, &chain] {
                let rep = theorem51_report(&dp, fam, &form)?;
                if failure.is_none() && !rep.all_pass() {
                    failure = Some(format!(
                        "instance {} (w={}): {}",
                        i,
                        w,
                        rep.first_failure().unwrap().name
                    ));
                }
            }
        }
        records.push(aggregate(
            "polymatroids.duality",
            "5.1",
            cfg.polymatroids,
            failure,
        ));

        // Exhaustive q-matroid sweep on the 5-member lattice.
        let lat = SubspaceLattice::new(Ring::field(2, 1)?, 2, caps)?;
        let form = BilinearForm::standard(lat.ring().clone(), 2);
        let all = enumerate_qmatroids(&lat, caps)?;
        let mut failure = None;
        for (i, q) in all.iter().enumerate() {
            let rep = crate::demipolymatroid::qmatroid_report(q, &form)?;
            if failure.is_none() && !rep.all_pass() {
                failure = Some(format!("q-matroid {}", i));
            }
        }
        records.push(aggregate(
            "qmatroids.duality",
            "3.1-example",
            all.len() as u64,
            failure,
        ));
    }

    if cfg.flags > 0 {
        // Rank-extension metric over GF(4) (inner dimension 1) with the
        // rational-closure family, alternating with prime-field ambients
        // where the family is the full rational lattice.
        let mut failure = None;
        for i in 0..cfg.flags {
            let (ring, m) = if i % 2 == 0 {
                (Ring::field(2, 2)?, 2 + rng_flags.below(2) as usize)
            } else {
                (Ring::field(2, 1)?, 2 + rng_flags.below(3) as usize)
            };
            let flags = random_odd_flag_family(&ring, 1, m, 1 + rng_flags.below(2) as usize, rng_flags.next_u64())?;
            let fam = galois_closed_family(&flags, caps)?;
            let form = BilinearForm::standard(ring.clone(), 1);
            let rep = theorem71_report(&flags, &fam, &form, caps)?;
            if failure.is_none() && !rep.all_pass() {
                failure = Some(format!(
                    "instance {}: {}",
                    i,
                    rep.first_failure().unwrap().name
                ));
            }
        }
        records.push(aggregate("flags.rank_extension", "7.1", cfg.flags, failure));

        let mut failure = None;
        for i in 0..cfg.flags {
            let w_dim = 1 + rng_flags.below(2) as usize;
            let m = 2 + rng_flags.below(2) as usize;
            let ring = Ring::field(2, 1)?;
            let flags = random_odd_flag_family(&ring, w_dim, m, 1 + rng_flags.below(2) as usize, rng_flags.next_u64())?;
            let form = BilinearForm::standard(ring.clone(), w_dim);
            let mut posets = vec![Poset::antichain(m), Poset::chain(m)];
            if m >= 3 {
                posets.push(Poset::from_pairs(m, &[(0, 2), (1, 2)])?);
            }
            for p in &posets {
                let rep = theorem72_report(&flags, p, &form, caps)?;
                if failure.is_none() && !rep.all_pass() {
                    failure = Some(format!(
                        "instance {} (w={}, m={}): {}",
                        i,
                        w_dim,
                        m,
                        rep.first_failure().unwrap().name
                    ));
                }
            }
        }
        records.push(aggregate("flags.poset_metric", "7.2", cfg.flags, failure));

        let mut failure = None;
        for i in 0..cfg.flags {
            let (ring, w_dim, m) = if i % 2 == 0 {
                (Ring::field(2, 1)?, 2usize, 2usize)
            } else {
                (Ring::field(3, 1)?, 2usize, 2usize)
            };
            let flags = random_odd_flag_family(&ring, w_dim, m, 1 + rng_flags.below(2) as usize, rng_flags.next_u64())?;
            let lattice = SubspaceLattice::new(ring.clone(), w_dim, caps)?;
            let fam = SubspaceFamily::full_lattice(&lattice);
            let form = BilinearForm::standard(ring.clone(), w_dim);
            let rep = theorem73_report(&flags, &fam, &form, caps)?;
            if failure.is_none() && !rep.all_pass() {
                failure = Some(format!(
                    "instance {}: {}",
                    i,
                    rep.first_failure().unwrap().name
                ));
            }
        }
        records.push(aggregate("flags.matrix_metric", "7.3", cfg.flags, failure));
    }

    if cfg.z4_len > 0 {
        let ring = Ring::chain(2, 2)?;
        let mut failure = None;
        let mut count = 0u64;
        for m in 1..=cfg.z4_len {
            let all = crate::algebra::enumerate_submodules(&ring, m, caps)?;
            let mut posets = vec![Poset::antichain(m), Poset::chain(m)];
            if m >= 3 {
                posets.push(Poset::from_pairs(m, &[(0, 2), (1, 2)])?);
            }
            for module in all {
                let code = ChainRingCode::from_submodule(module);
                for p in &posets {
                    count += 1;
                    let rep = theorem74_report(&code, p, caps)?;
                    if failure.is_none() && !rep.all_pass() {
                        failure = Some(format!(
                            "length {} instance: {}",
                            m,
                            rep.first_failure().unwrap().name
                        ));
                    }
                }
            }
        }
        records.push(aggregate("chainring.closure_duality", "7.4", count, failure));
    }

    Ok(records)
}
