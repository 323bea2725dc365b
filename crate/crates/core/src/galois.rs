//! Galois connections between integer intervals [0,k] and [0,m]: the
//! adjunction axioms, reconstruction of either adjoint from the other,
//! the dual connection eta(l) = psi(m-l) + w*l - k, the four-way
//! equivalence report at the center of the duality theory, and the
//! bridge that turns graded data (Y, g, f, sigma) into a pair of
//! connections satisfying the duality identities.

use crate::error::{invalid, Error, Result};

/// An integer table on [0, domain_max] with a declared codomain interval
/// [0, codomain_max]. Values are range-checked at construction;
/// monotonicity is the caller-visible property that the validators test,
/// so deliberately non-monotone tables are representable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneTable {
    values: Vec<i64>,
    codomain_max: i64,
}

impl MonotoneTable {
    pub fn new(values: Vec<i64>, codomain_max: i64) -> Result<MonotoneTable> {
        if values.is_empty() {
            return invalid("table must cover a nonempty interval");
        }
        if codomain_max < 0 {
            return invalid("codomain bound must be non-negative");
        }
        if let Some(&bad) = values.iter().find(|&&v| v < 0 || v > codomain_max) {
            return Err(Error::InvalidInput(format!(
                "table value {} outside the declared codomain [0, {}]",
                bad, codomain_max
            )));
        }
        Ok(MonotoneTable {
            values,
            codomain_max,
        })
    }

    pub fn identity(n: i64) -> MonotoneTable {
        MonotoneTable::new((0..=n).collect(), n).unwrap()
    }

    pub fn domain_max(&self) -> i64 {
        self.values.len() as i64 - 1
    }

    pub fn codomain_max(&self) -> i64 {
        self.codomain_max
    }

    pub fn get(&self, i: i64) -> i64 {
        self.values[i as usize]
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn is_monotone(&self) -> bool {
        self.values.windows(2).all(|w| w[0] <= w[1])
    }
}

/// A validated Galois connection (phi, psi) between [0, k_max] and
/// [0, m_max]: both legs monotone and a <= psi(b) iff phi(a) <= b for
/// every pair. Every constructor re-checks the full adjunction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisPair {
    phi: MonotoneTable,
    psi: MonotoneTable,
}

impl GaloisPair {
    pub fn new(phi: MonotoneTable, psi: MonotoneTable) -> Result<GaloisPair> {
        if !check_galois_pair(&phi, &psi)? {
            return invalid("tables do not satisfy the Galois adjunction");
        }
        Ok(GaloisPair { phi, psi })
    }

    /// Build a pair from raw values, the bounds being read off the table
    /// lengths: phi on [0, len(phi)-1] into [0, len(psi)-1] and back.
    pub fn from_values(phi: Vec<i64>, psi: Vec<i64>) -> Result<GaloisPair> {
        if phi.is_empty() || psi.is_empty() {
            return invalid("tables must cover nonempty intervals");
        }
        let k_max = phi.len() as i64 - 1;
        let m_max = psi.len() as i64 - 1;
        let phi = MonotoneTable::new(phi, m_max)?;
        let psi = MonotoneTable::new(psi, k_max)?;
        GaloisPair::new(phi, psi)
    }

    pub fn k_max(&self) -> i64 {
        self.phi.domain_max()
    }

    pub fn m_max(&self) -> i64 {
        self.psi.domain_max()
    }

    pub fn phi(&self) -> &MonotoneTable {
        &self.phi
    }

    pub fn psi(&self) -> &MonotoneTable {
        &self.psi
    }
}

/// True iff both tables are monotone and the adjunction
/// a <= psi(b) iff phi(a) <= b holds for every pair; errors when the
/// declared bounds of the two tables do not match up.
pub fn check_galois_pair(phi: &MonotoneTable, psi: &MonotoneTable) -> Result<bool> {
    if phi.codomain_max() != psi.domain_max() || psi.codomain_max() != phi.domain_max() {
        return invalid(format!(
            "bound mismatch: phi is [0,{}]->[0,{}] but psi is [0,{}]->[0,{}]",
            phi.domain_max(),
            phi.codomain_max(),
            psi.domain_max(),
            psi.codomain_max()
        ));
    }
    if !phi.is_monotone() || !psi.is_monotone() {
        return Ok(false);
    }
    for a in 0..=phi.domain_max() {
        for b in 0..=psi.domain_max() {
            if (a <= psi.get(b)) != (phi.get(a) <= b) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Which adjoint the supplied table is. `Right` means the table is the
/// right (upper) adjoint psi, and the left adjoint phi is reconstructed
/// as phi(a) = min{b : a <= psi(b)}; `Left` is symmetric, producing
/// psi(b) = max{a : phi(a) <= b}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdjointSide {
    Left,
    Right,
}

pub fn adjoint_of(table: &MonotoneTable, side: AdjointSide) -> Result<MonotoneTable> {
    if !table.is_monotone() {
        return invalid("table is not monotone, so it is not a leg of any Galois connection");
    }
    match side {
        AdjointSide::Right => {
            // Given psi: [0,m] -> [0,k], build phi: [0,k] -> [0,m].
            let k = table.codomain_max();
            let m = table.domain_max();
            if table.get(m) < k {
                return invalid(format!(
                    "no adjoint exists: {{b : {} <= psi(b)}} is empty because psi({}) = {} < {}",
                    k,
                    m,
                    table.get(m),
                    k
                ));
            }
            let mut phi = Vec::with_capacity(k as usize + 1);
            for a in 0..=k {
                let b = (0..=m).find(|&b| a <= table.get(b)).unwrap();
                phi.push(b);
            }
            MonotoneTable::new(phi, m)
        }
        AdjointSide::Left => {
            // Given phi: [0,k] -> [0,m], build psi: [0,m] -> [0,k].
            let k = table.domain_max();
            let m = table.codomain_max();
            if table.get(0) > 0 {
                return invalid(format!(
                    "no adjoint exists: {{a : phi(a) <= 0}} is empty because phi(0) = {}",
                    table.get(0)
                ));
            }
            let mut psi = Vec::with_capacity(m as usize + 1);
            for b in 0..=m {
                let a = (0..=k).rev().find(|&a| table.get(a) <= b).unwrap();
                psi.push(a);
            }
            MonotoneTable::new(psi, k)
        }
    }
}

/// A possibly-empty integer interval [lo, hi].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntInterval {
    pub lo: i64,
    pub hi: i64,
}

impl IntInterval {
    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn len(&self) -> i64 {
        (self.hi - self.lo + 1).max(0)
    }

    pub fn contains(&self, x: i64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// The preimage {a : phi(a) = d} of a connection, always an interval:
/// [0, psi(0)] for d = 0, and [psi(d-1)+1, psi(d)] otherwise.
pub fn fiber_of(pair: &GaloisPair, d: i64) -> Result<IntInterval> {
    if d < 0 || d > pair.m_max() {
        return invalid(format!("{} outside the codomain [0, {}]", d, pair.m_max()));
    }
    if d == 0 {
        Ok(IntInterval {
            lo: 0,
            hi: pair.psi().get(0),
        })
    } else {
        Ok(IntInterval {
            lo: pair.psi().get(d - 1) + 1,
            hi: pair.psi().get(d),
        })
    }
}

/// Build the dual connection (tau, eta) between [0, w*m-k] and [0, m]
/// from a pair with psi(0) = 0 and psi steps at most w, via
/// eta(l) = psi(m-l) + w*l - k and tau = the reconstructed left adjoint.
pub fn dual_connection(pair: &GaloisPair, w: i64) -> Result<GaloisPair> {
    if w <= 0 {
        return invalid("step bound w must be positive");
    }
    let k = pair.k_max();
    let m = pair.m_max();
    let psi = pair.psi();
    if psi.get(0) != 0 {
        return invalid(format!("psi(0) = {} but the dual needs psi(0) = 0", psi.get(0)));
    }
    for l in 1..=m {
        let step = psi.get(l) - psi.get(l - 1);
        if step > w {
            return Err(Error::InvalidInput(format!(
                "psi step {} at l = {} exceeds the bound w = {}",
                step, l, w
            )));
        }
    }
    let dual_k = w * m - k;
    let eta_vals: Vec<i64> = (0..=m).map(|l| psi.get(m - l) + w * l - k).collect();
    let eta = MonotoneTable::new(eta_vals, dual_k)?;
    // Endpoint and step conclusions re-checked on the constructed table.
    assert_eq!(eta.get(0), 0);
    assert_eq!(eta.get(m), dual_k);
    for l in 1..=m {
        let step = eta.get(l) - eta.get(l - 1);
        assert!((0..=w).contains(&step));
    }
    let tau = adjoint_of(&eta, AdjointSide::Right)?;
    GaloisPair::new(tau, eta)
}

/// Truth values of the four step-bound formulations: the psi-step bound,
/// the fiber-size bound, the shifted growth bound
/// phi(r)+1 <= max(phi(r+w), 1), and (meaningful when psi(0) = 0) the
/// plain growth bound phi(r)+1 <= phi(r+w). The first three always agree,
/// and the fourth joins them when psi(0) = 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepReport {
    pub psi_step_bound: bool,
    pub fiber_size_bound: bool,
    pub shifted_growth: bool,
    pub plain_growth: bool,
    pub psi_at_zero_is_zero: bool,
}

impl StepReport {
    /// The equivalence contract the report is expected to satisfy.
    pub fn consistent(&self) -> bool {
        let three = self.psi_step_bound == self.fiber_size_bound
            && self.fiber_size_bound == self.shifted_growth;
        if self.psi_at_zero_is_zero {
            three && self.plain_growth == self.psi_step_bound
        } else {
            three
        }
    }
}

pub fn step_equivalences(pair: &GaloisPair, w: i64) -> StepReport {
    assert!(w > 0);
    let k = pair.k_max();
    let m = pair.m_max();
    let phi = pair.phi();
    let psi = pair.psi();
    let psi_step_bound = (1..=m).all(|l| psi.get(l) - psi.get(l - 1) <= w);
    let fiber_size_bound = (1..=m).all(|l| {
        let size = (0..=k).filter(|&a| phi.get(a) == l).count() as i64;
        size <= w
    });
    let shifted_growth = (0..=k - w).all(|r| phi.get(r) + 1 <= phi.get(r + w).max(1));
    let plain_growth = (0..=k - w).all(|r| phi.get(r) + 1 <= phi.get(r + w));
    StepReport {
        psi_step_bound,
        fiber_size_bound,
        shifted_growth,
        plain_growth,
        psi_at_zero_is_zero: psi.get(0) == 0,
    }
}

/// The congruence classes U = {u in [1,k] : u = gamma+k mod w} and
/// V = {v in [1,w*m-k] : v = gamma mod w}; their sizes always sum to m.
pub fn residue_sets(gamma: i64, w: i64, k: i64, m: i64) -> Result<(Vec<i64>, Vec<i64>)> {
    if w <= 0 {
        return invalid("w must be positive");
    }
    if w * m < k {
        return invalid(format!("requires w*m >= k, got w*m = {} and k = {}", w * m, k));
    }
    let u: Vec<i64> = (1..=k).filter(|&x| (x - gamma - k).rem_euclid(w) == 0).collect();
    let v: Vec<i64> = (1..=w * m - k).filter(|&x| (x - gamma).rem_euclid(w) == 0).collect();
    Ok((u, v))
}

/// Evaluation of the four equivalent duality statements for a primal pair
/// (phi, psi) between [0,k] and [0,m] (with psi(0) = 0 and steps <= w)
/// against a candidate dual pair (tau, eta) between [0, w*m-k] and [0,m]:
///
///  1. the closed formula eta(l) = psi(m-l) + w*l - k at every l,
///  2. eta(0) = 0, eta steps <= w, and no pair phi(u) + tau(v) = m+1
///     with u = v+k mod w,
///  3. the residue sets A and B partition [1, m] for every gamma,
///  4. the residue sets cover [1, m] for every gamma.
///
/// The theory says the four values always coincide; the report keeps them
/// separate so that tests can assert exactly that.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralReport {
    pub closed_formula: bool,
    pub local_conditions: bool,
    pub partitions: bool,
    pub covers: bool,
    pub witness: Option<String>,
}

impl CentralReport {
    pub fn all_equal(&self) -> bool {
        self.closed_formula == self.local_conditions
            && self.local_conditions == self.partitions
            && self.partitions == self.covers
    }

    pub fn all_true(&self) -> bool {
        self.closed_formula && self.local_conditions && self.partitions && self.covers
    }
}

/// A and B for one residue class: A = {phi(u) : u in U_gamma} and
/// B = {m+1-tau(v) : v in V_gamma}.
fn residue_images(
    pair1: &GaloisPair,
    pair2: &GaloisPair,
    gamma: i64,
    w: i64,
) -> (Vec<i64>, Vec<i64>) {
    let k = pair1.k_max();
    let m = pair1.m_max();
    let (u_set, v_set) = residue_sets(gamma, w, k, m).expect("preconditions checked by caller");
    let mut a: Vec<i64> = u_set.iter().map(|&u| pair1.phi().get(u)).collect();
    let mut b: Vec<i64> = v_set.iter().map(|&v| m + 1 - pair2.phi().get(v)).collect();
    a.sort_unstable();
    a.dedup();
    b.sort_unstable();
    b.dedup();
    (a, b)
}

pub fn central_theorem_report(
    pair1: &GaloisPair,
    pair2: &GaloisPair,
    w: i64,
) -> Result<CentralReport> {
    if w <= 0 {
        return invalid("w must be positive");
    }
    let k = pair1.k_max();
    let m = pair1.m_max();
    let psi = pair1.psi();
    if psi.get(0) != 0 {
        return invalid("pair1 must satisfy psi(0) = 0");
    }
    if (1..=m).any(|l| psi.get(l) - psi.get(l - 1) > w) {
        return invalid("pair1 psi steps must be bounded by w");
    }
    if pair2.k_max() != w * m - k || pair2.m_max() != m {
        return Err(Error::InvalidInput(format!(
            "pair2 must connect [0,{}] and [0,{}], got [0,{}] and [0,{}]",
            w * m - k,
            m,
            pair2.k_max(),
            pair2.m_max()
        )));
    }
    let tau = pair2.phi();
    let eta = pair2.psi();

    let mut witness = None;

    let mut closed_formula = true;
    for l in 0..=m {
        if eta.get(l) != psi.get(m - l) + w * l - k {
            closed_formula = false;
            witness.get_or_insert(format!(
                "eta({}) = {} differs from psi({}) + {} = {}",
                l,
                eta.get(l),
                m - l,
                w * l - k,
                psi.get(m - l) + w * l - k
            ));
            break;
        }
    }

    let mut local_conditions = eta.get(0) == 0 && (1..=m).all(|l| eta.get(l) - eta.get(l - 1) <= w);
    if local_conditions {
        'outer: for u in 1..=k {
            for v in 1..=w * m - k {
                if pair1.phi().get(u) + tau.get(v) == m + 1 && (u - v - k).rem_euclid(w) == 0 {
                    local_conditions = false;
                    witness.get_or_insert(format!(
                        "phi({}) + tau({}) = {} with {} = {}+k (mod {})",
                        u,
                        v,
                        m + 1,
                        u,
                        v,
                        w
                    ));
                    break 'outer;
                }
            }
        }
    }

    // The residue sets depend only on gamma mod w, so [0, w-1] is a
    // complete set of cases.
    let mut partitions = true;
    let mut covers = true;
    for gamma in 0..w {
        let (a, b) = residue_images(pair1, pair2, gamma, w);
        let mut union: Vec<i64> = a.iter().chain(b.iter()).copied().collect();
        union.sort_unstable();
        union.dedup();
        let full: Vec<i64> = (1..=m).collect();
        let is_cover = union == full;
        let disjoint = a.iter().all(|x| !b.contains(x));
        if !is_cover {
            covers = false;
            partitions = false;
            witness.get_or_insert(format!("residue class {}: union misses part of [1,{}]", gamma, m));
            break;
        }
        if !disjoint {
            partitions = false;
            witness.get_or_insert(format!("residue class {}: sets intersect", gamma));
        }
    }

    Ok(CentralReport {
        closed_formula,
        local_conditions,
        partitions,
        covers,
        witness,
    })
}

/// Graded data (Y, m, g, w, k, f, X, sigma) satisfying the four bridge
/// conditions: g surjective onto [0,m]; f into [0,k] with
///   (1) g(y) = 0 implies f(y) = 0,
///   (2) w*g(y) - f(y) <= w*m - k,
///   (3) below the top grade, f-compatible successors exist,
///   (4) above the bottom grade, predecessors within w exist;
/// sigma: X -> Y surjective. Elements of Y and X are indices.
#[derive(Debug, Clone)]
pub struct BridgeTuple {
    m: i64,
    k: i64,
    w: i64,
    g: Vec<i64>,
    f: Vec<i64>,
    sigma: Vec<usize>,
}

impl BridgeTuple {
    pub fn new(m: i64, k: i64, w: i64, g: Vec<i64>, f: Vec<i64>, sigma: Vec<usize>) -> Result<BridgeTuple> {
        if w <= 0 {
            return invalid("w must be positive");
        }
        if m < 0 || k < 0 {
            return invalid("m and k must be non-negative");
        }
        if g.is_empty() {
            return invalid("Y must be nonempty");
        }
        if g.len() != f.len() {
            return invalid("g and f must be defined on the same set Y");
        }
        if sigma.is_empty() {
            return invalid("X must be nonempty");
        }
        if g.iter().any(|&v| v < 0 || v > m) {
            return invalid("g must map into [0, m]");
        }
        for b in 0..=m {
            if !g.contains(&b) {
                return Err(Error::InvalidInput(format!(
                    "g is not surjective: grade {} unreached",
                    b
                )));
            }
        }
        if f.iter().any(|&v| v < 0 || v > k) {
            return invalid("f must map into [0, k]");
        }
        if sigma.iter().any(|&y| y >= g.len()) {
            return invalid("sigma must map into Y");
        }
        for y in 0..g.len() {
            if !sigma.contains(&y) {
                return Err(Error::InvalidInput(format!(
                    "sigma is not surjective: element {} unreached",
                    y
                )));
            }
        }
        let n = g.len();
        for y in 0..n {
            if g[y] == 0 && f[y] != 0 {
                return Err(Error::InvalidInput(format!(
                    "condition (3.1) fails at element {}: g = 0 but f = {}",
                    y, f[y]
                )));
            }
        }
        for y in 0..n {
            if w * g[y] - f[y] > w * m - k {
                return Err(Error::InvalidInput(format!(
                    "condition (3.2) fails at element {}: w*g - f = {} > {}",
                    y,
                    w * g[y] - f[y],
                    w * m - k
                )));
            }
        }
        for u in 0..n {
            if g[u] <= m - 1
                && !(0..n).any(|v| g[v] == g[u] + 1 && f[u] <= f[v])
            {
                return Err(Error::InvalidInput(format!(
                    "condition (3.3) fails at element {}: no successor at grade {}",
                    u,
                    g[u] + 1
                )));
            }
        }
        for v in 0..n {
            if g[v] >= 1 && !(0..n).any(|u| g[u] == g[v] - 1 && f[v] - f[u] <= w) {
                return Err(Error::InvalidInput(format!(
                    "condition (3.4) fails at element {}: no predecessor within {}",
                    v, w
                )));
            }
        }
        Ok(BridgeTuple { m, k, w, g, f, sigma })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn w(&self) -> i64 {
        self.w
    }

    pub fn y_len(&self) -> usize {
        self.g.len()
    }

    pub fn x_len(&self) -> usize {
        self.sigma.len()
    }

    /// mu(t) = m - g(sigma(t)).
    pub fn mu(&self, t: usize) -> i64 {
        self.m - self.g[self.sigma[t]]
    }

    /// h(t) = f(sigma(t)) + w*mu(t) - k.
    pub fn h(&self, t: usize) -> i64 {
        self.f[self.sigma[t]] + self.w * self.mu(t) - self.k
    }
}

/// Build both connections from a bridge tuple by direct min/max sweeps
/// over the elements: phi/psi from (g, f) on Y and tau/eta from (mu, h)
/// on X. The level-set forms of psi and eta are computed as a cross-check
/// of the defining max-over-downset forms.
pub fn bridge_derive(tuple: &BridgeTuple) -> Result<(GaloisPair, GaloisPair)> {
    let (m, k, w) = (tuple.m, tuple.k, tuple.w);
    let n = tuple.y_len();
    let x_n = tuple.x_len();
    let dual_k = w * m - k;

    let phi: Vec<i64> = (0..=k)
        .map(|a| {
            (0..n)
                .filter(|&u| a <= tuple.f[u])
                .map(|u| tuple.g[u])
                .min()
                .expect("f attains k, so the set is nonempty")
        })
        .collect();
    let psi: Vec<i64> = (0..=m)
        .map(|b| {
            (0..n)
                .filter(|&u| tuple.g[u] <= b)
                .map(|u| tuple.f[u])
                .max()
                .expect("g attains 0, so the set is nonempty")
        })
        .collect();
    // Level-set form of psi: max over g(u) = b.
    for b in 0..=m {
        let level = (0..n)
            .filter(|&u| tuple.g[u] == b)
            .map(|u| tuple.f[u])
            .max()
            .expect("g surjective");
        assert_eq!(psi[b as usize], level, "psi level-set identity");
    }

    let tau: Vec<i64> = (0..=dual_k)
        .map(|a| {
            (0..x_n)
                .filter(|&t| a <= tuple.h(t))
                .map(|t| tuple.mu(t))
                .min()
                .expect("h attains w*m-k")
        })
        .collect();
    let eta: Vec<i64> = (0..=m)
        .map(|b| {
            (0..x_n)
                .filter(|&t| tuple.mu(t) <= b)
                .map(|t| tuple.h(t))
                .max()
                .expect("mu attains 0")
        })
        .collect();
    for b in 0..=m {
        let level = (0..x_n)
            .filter(|&t| tuple.mu(t) == b)
            .map(|t| tuple.h(t))
            .max()
            .expect("mu surjective");
        assert_eq!(eta[b as usize], level, "eta level-set identity");
    }

    let primal = GaloisPair::new(MonotoneTable::new(phi, m)?, MonotoneTable::new(psi, k)?)?;
    let dual = GaloisPair::new(
        MonotoneTable::new(tau, m)?,
        MonotoneTable::new(eta, dual_k)?,
    )?;
    Ok((primal, dual))
}

/// Result of the graded-abundance bridge: the constructed pairs plus the
/// two duality conclusions evaluated on them.
#[derive(Debug, Clone)]
pub struct BridgeReport {
    pub primal: GaloisPair,
    pub dual: GaloisPair,
    pub central: CentralReport,
}

impl BridgeReport {
    pub fn all_true(&self) -> bool {
        self.central.all_true()
    }
}

/// Run the bridge for a tuple and evaluate the duality conclusions.
pub fn bridge_report(tuple: &BridgeTuple) -> Result<BridgeReport> {
    let (primal, dual) = bridge_derive(tuple)?;
    let central = central_theorem_report(&primal, &dual, tuple.w)?;
    Ok(BridgeReport {
        primal,
        dual,
        central,
    })
}

/// The graded-order bridge: validate that ((Y, leq), g) is an abundance
/// with least and greatest elements, that f is normalized (0 at the
/// bottom, k at the top) and satisfies the two-sided slope bound on
/// comparable pairs, and that sigma is surjective; then hand the data to
/// the bridge and evaluate the duality conclusions. Validation failures
/// are errors naming the violated condition.
pub fn abundance_bridge_check(
    poset: &crate::poset::Poset,
    g: &[i64],
    f: &[i64],
    w: i64,
    sigma: &[usize],
) -> Result<BridgeReport> {
    let n = poset.len();
    if g.len() != n || f.len() != n {
        return invalid("g and f must be defined on every element");
    }
    if w <= 0 {
        return invalid("w must be positive");
    }
    let check = crate::poset::graded_abundance(n, |a, b| poset.leq(a, b), g)?;
    if !check.ok {
        return Err(Error::InvalidInput(format!(
            "not an abundance: {} fails at element {}",
            check.failed_condition.unwrap_or("condition"),
            check.witness.unwrap_or(0)
        )));
    }
    let bottom = (0..n).find(|&z| (0..n).all(|y| poset.leq(z, y))).unwrap();
    let top = (0..n).find(|&t| (0..n).all(|y| poset.leq(y, t))).unwrap();
    if f[bottom] != 0 {
        return invalid(format!("f at the least element is {}, not 0", f[bottom]));
    }
    let k = f[top];
    if k < 0 {
        return invalid("f at the greatest element must be non-negative");
    }
    for x in 0..n {
        for y in 0..n {
            if poset.leq(x, y) {
                let df = f[y] - f[x];
                let dg = g[y] - g[x];
                if df < 0 || df > w * dg {
                    return Err(Error::InvalidInput(format!(
                        "slope bound fails on the comparable pair ({}, {}): f-step {} vs {} * {}",
                        x, y, df, w, dg
                    )));
                }
            }
        }
    }
    let m = g[top];
    let tuple = BridgeTuple::new(m, k, w, g.to_vec(), f.to_vec(), sigma.to_vec())?;
    bridge_report(&tuple)
}
