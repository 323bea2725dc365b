//! Finite posets on [0, n), their ideals and dual posets, generated
//! ideals, set families over a finite ground set as bitmask collections,
//! and the abundance conditions for families and for graded orders.

use crate::error::{invalid, Caps, Error, Result};

/// A partial order on elements 0..n, stored as the full relation matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    leq: Vec<bool>,
}

impl Poset {
    /// Validate reflexivity, antisymmetry and transitivity. Element
    /// counts are bounded so that subset bitmasks stay in range.
    pub fn new(n: usize, leq: Vec<bool>) -> Result<Poset> {
        if n > 60 {
            return invalid("posets are limited to 60 elements");
        }
        if leq.len() != n * n {
            return invalid("relation matrix size mismatch");
        }
        let at = |i: usize, j: usize| leq[i * n + j];
        for i in 0..n {
            if !at(i, i) {
                return invalid(format!("relation not reflexive at {}", i));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && at(i, j) && at(j, i) {
                    return Err(Error::InvalidInput(format!(
                        "relation not antisymmetric at ({}, {})",
                        i, j
                    )));
                }
                for k in 0..n {
                    if at(i, j) && at(j, k) && !at(i, k) {
                        return Err(Error::InvalidInput(format!(
                            "relation not transitive at ({}, {}, {})",
                            i, j, k
                        )));
                    }
                }
            }
        }
        Ok(Poset { n, leq })
    }

    /// Build from covering (or any generating) pairs a <= b, taking the
    /// reflexive-transitive closure and rejecting cycles.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Poset> {
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return invalid("relation pair out of range");
            }
            leq[a * n + b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i * n + j] && leq[j * n + i] {
                    return invalid(format!("cycle through {} and {}", i, j));
                }
            }
        }
        Poset::new(n, leq)
    }

    pub fn antichain(n: usize) -> Poset {
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        Poset { n, leq }
    }

    pub fn chain(n: usize) -> Poset {
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in i..n {
                leq[i * n + j] = true;
            }
        }
        Poset { n, leq }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n + b]
    }

    /// The opposite order.
    pub fn dual(&self) -> Poset {
        let mut leq = vec![false; self.n * self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                leq[i * self.n + j] = self.leq(j, i);
            }
        }
        Poset {
            n: self.n,
            leq,
        }
    }

    /// Bitmask of the predecessors of e (everything <= e).
    fn down_mask(&self, e: usize) -> u64 {
        let mut mask = 0u64;
        for u in 0..self.n {
            if self.leq(u, e) {
                mask |= 1 << u;
            }
        }
        mask
    }

    /// The ideal generated by a subset: everything below some member.
    pub fn generated_ideal(&self, mask: u64) -> u64 {
        let mut out = 0u64;
        for e in 0..self.n {
            if mask >> e & 1 == 1 {
                out |= self.down_mask(e);
            }
        }
        out
    }

    /// All downward-closed subsets, ascending as bitmasks. The sweep over
    /// 2^n masks is guarded by the cap.
    pub fn ideals(&self, caps: &Caps) -> Result<SetFamily> {
        caps.check(1u128 << self.n)?;
        let downs: Vec<u64> = (0..self.n).map(|e| self.down_mask(e)).collect();
        let mut members = Vec::new();
        for mask in 0u64..1 << self.n {
            let closed = (0..self.n)
                .all(|e| mask >> e & 1 == 0 || downs[e] & mask == downs[e]);
            if closed {
                members.push(mask);
            }
        }
        SetFamily::new(self.n, members)
    }
}

/// A collection of subsets of [0, m) as sorted, deduplicated bitmasks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    m: usize,
    members: Vec<u64>,
}

impl SetFamily {
    pub fn new(m: usize, mut members: Vec<u64>) -> Result<SetFamily> {
        if m > 63 {
            return invalid("ground set too large for bitmask representation");
        }
        let full = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
        if members.iter().any(|&x| x & !full != 0) {
            return invalid("family member outside the ground set");
        }
        members.sort_unstable();
        members.dedup();
        Ok(SetFamily { m, members })
    }

    pub fn power_set(m: usize) -> SetFamily {
        SetFamily::new(m, (0..1u64 << m).collect()).unwrap()
    }

    pub fn ground_size(&self) -> usize {
        self.m
    }

    pub fn full_mask(&self) -> u64 {
        (1u64 << self.m) - 1
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, mask: u64) -> bool {
        self.members.binary_search(&mask).is_ok()
    }

    /// The family of complements {E - A : A in family}.
    pub fn complements(&self) -> SetFamily {
        let full = self.full_mask();
        SetFamily::new(self.m, self.members.iter().map(|&a| full & !a).collect()).unwrap()
    }
}

/// Outcome of an abundance test, with the failing condition spelled out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbundanceCheck {
    pub ok: bool,
    pub reason: Option<String>,
}

impl AbundanceCheck {
    fn pass() -> Self {
        AbundanceCheck {
            ok: true,
            reason: None,
        }
    }

    fn fail(reason: String) -> Self {
        AbundanceCheck {
            ok: false,
            reason: Some(reason),
        }
    }
}

/// A family (containing the empty and full sets) is an abundance when
/// every proper member extends by one element inside the family and every
/// nonempty member shrinks by one element inside the family.
pub fn is_abundance_family(fam: &SetFamily) -> AbundanceCheck {
    let full = fam.full_mask();
    if !fam.contains(0) {
        return AbundanceCheck::fail("family does not contain the empty set".into());
    }
    if !fam.contains(full) {
        return AbundanceCheck::fail("family does not contain the full set".into());
    }
    for &a in fam.members() {
        if a != full {
            let grows = fam
                .members()
                .iter()
                .any(|&b| b & a == a && b.count_ones() == a.count_ones() + 1);
            if !grows {
                return AbundanceCheck::fail(format!(
                    "no one-element extension of {:#b} in the family",
                    a
                ));
            }
        }
        if a != 0 {
            let shrinks = fam
                .members()
                .iter()
                .any(|&b| b & a == b && b.count_ones() + 1 == a.count_ones());
            if !shrinks {
                return AbundanceCheck::fail(format!(
                    "no one-element shrinking of {:#b} in the family",
                    a
                ));
            }
        }
    }
    AbundanceCheck::pass()
}

/// Result of trying to realize a family as the ideals of a poset:
/// either the poset, or the first witness showing it cannot be one.
#[derive(Debug, Clone)]
pub enum FamilyToPoset {
    Poset(Poset),
    NotClosedUnderUnion(u64, u64),
    NotClosedUnderIntersection(u64, u64),
    NotAbundance(String),
}

/// Realize an abundance family that is closed under union and
/// intersection as an ideal family: H(e) is the smallest member
/// containing e and u <= v iff H(u) is a subset of H(v). Failure is a
/// value carrying the witness, not an error.
pub fn poset_from_family(fam: &SetFamily) -> FamilyToPoset {
    let check = is_abundance_family(fam);
    if !check.ok {
        return FamilyToPoset::NotAbundance(check.reason.unwrap());
    }
    for &a in fam.members() {
        for &b in fam.members() {
            if a < b {
                if !fam.contains(a | b) {
                    return FamilyToPoset::NotClosedUnderUnion(a, b);
                }
                if !fam.contains(a & b) {
                    return FamilyToPoset::NotClosedUnderIntersection(a, b);
                }
            }
        }
    }
    let n = fam.ground_size();
    // Smallest member containing each element: intersection closure makes
    // it well defined.
    let mut h = vec![0u64; n];
    for e in 0..n {
        let mut acc = fam.full_mask();
        for &a in fam.members() {
            if a >> e & 1 == 1 {
                acc &= a;
            }
        }
        h[e] = acc;
    }
    let mut leq = vec![false; n * n];
    for u in 0..n {
        for v in 0..n {
            leq[u * n + v] = h[u] & h[v] == h[u];
        }
    }
    let poset = Poset::new(n, leq).expect("closure of an abundance family is a partial order");
    FamilyToPoset::Poset(poset)
}

/// Abundance test for a graded order given by an explicit comparability
/// predicate on indices 0..n with grading g: monotone grading, one-step
/// extensions upward and one-step reductions downward. Errors when the
/// order has no least or greatest element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedCheck {
    pub ok: bool,
    pub failed_condition: Option<&'static str>,
    pub witness: Option<usize>,
}

pub fn graded_abundance<F: Fn(usize, usize) -> bool>(
    n: usize,
    leq: F,
    g: &[i64],
) -> Result<GradedCheck> {
    if n == 0 || g.len() != n {
        return invalid("grading must cover the elements");
    }
    let least = (0..n).find(|&z| (0..n).all(|y| leq(z, y)));
    let greatest = (0..n).find(|&t| (0..n).all(|y| leq(y, t)));
    let (_, top) = match (least, greatest) {
        (Some(a), Some(b)) => (a, b),
        _ => return invalid("order has no least or greatest element"),
    };
    let top_grade = g[top];
    for x in 0..n {
        for y in 0..n {
            if leq(x, y) && g[x] > g[y] {
                return Ok(GradedCheck {
                    ok: false,
                    failed_condition: Some("monotone grading"),
                    witness: Some(x),
                });
            }
        }
    }
    for u in 0..n {
        if g[u] <= top_grade - 1 && !(0..n).any(|v| leq(u, v) && g[v] == g[u] + 1) {
            return Ok(GradedCheck {
                ok: false,
                failed_condition: Some("one-step extension"),
                witness: Some(u),
            });
        }
    }
    for v in 0..n {
        if g[v] >= 1 && !(0..n).any(|u| leq(u, v) && g[u] == g[v] - 1) {
            return Ok(GradedCheck {
                ok: false,
                failed_condition: Some("one-step reduction"),
                witness: Some(v),
            });
        }
    }
    Ok(GradedCheck {
        ok: true,
        failed_condition: None,
        witness: None,
    })
}
