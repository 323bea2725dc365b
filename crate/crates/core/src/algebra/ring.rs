use std::fmt;
use std::sync::Arc;

use crate::error::{invalid, Result};

/// The two coefficient rings the crate computes over: finite fields
/// GF(p^e) with q = p^e <= 16, and chain rings Z/p^s.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingKind {
    Field,
    ChainRing,
}

/// Fixed irreducible polynomials (little-endian coefficients over GF(p))
/// for the non-prime fields in range. Pinning these makes canonical forms
/// reproducible across runs and implementations.
fn builtin_modulus(p: u64, e: u32) -> Option<Vec<u64>> {
    match (p, e) {
        (2, 2) => Some(vec![1, 1, 1]),       // x^2 + x + 1
        (2, 3) => Some(vec![1, 1, 0, 1]),    // x^3 + x + 1
        (2, 4) => Some(vec![1, 1, 0, 0, 1]), // x^4 + x + 1
        (3, 2) => Some(vec![1, 0, 1]),       // x^2 + 1
        _ => None,
    }
}

struct RingRepr {
    kind: RingKind,
    p: u64,
    exp: u32,
    size: u64,
    /// Monic modulus polynomial, little-endian, length exp+1. Fields with
    /// e >= 2 only; empty otherwise.
    modulus: Vec<u64>,
    /// Field operation tables, indexed a * size + b. Empty for chain rings.
    add: Vec<u16>,
    mul: Vec<u16>,
    inv: Vec<u16>,
    neg: Vec<u16>,
}

/// A cheaply clonable handle to an immutable ring description.
#[derive(Clone)]
pub struct Ring(Arc<RingRepr>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.0.kind == other.0.kind
            && self.0.p == other.0.p
            && self.0.exp == other.0.exp
            && self.0.modulus == other.0.modulus
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.kind {
            RingKind::Field => write!(f, "GF({})", self.0.size),
            RingKind::ChainRing => write!(f, "Z/{}", self.0.size),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Polynomial arithmetic over GF(p), little-endian coefficient vectors.
mod polys {
    pub fn trim(mut v: Vec<u64>) -> Vec<u64> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(out)
    }

    /// Remainder of a modulo the monic polynomial m.
    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r: Vec<u64> = trim(a.to_vec());
        let dm = m.len() - 1;
        while r.len() > dm {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            for (i, &c) in m.iter().enumerate() {
                let idx = i + shift;
                r[idx] = (r[idx] + p - (lead * c) % p % p) % p;
            }
            r = trim(r);
        }
        r
    }
}

fn encode_poly(coeffs: &[u64], p: u64) -> u64 {
    let mut v = 0u64;
    for &c in coeffs.iter().rev() {
        v = v * p + c;
    }
    v
}

fn decode_poly(mut v: u64, p: u64, e: u32) -> Vec<u64> {
    let mut out = Vec::with_capacity(e as usize);
    for _ in 0..e {
        out.push(v % p);
        v /= p;
    }
    out
}

/// Check irreducibility over GF(p) by trial division with every monic
/// polynomial of degree 1..=deg/2. Degrees in range are at most 4, so the
/// search is tiny.
fn is_irreducible(modulus: &[u64], p: u64) -> bool {
    let deg = modulus.len() - 1;
    for d in 1..=deg / 2 {
        // All monic polynomials of degree d: low coefficients run over p^d.
        for lows in 0..p.pow(d as u32) {
            let mut g = decode_poly(lows, p, d as u32);
            g.push(1);
            if polys::rem(modulus, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl Ring {
    /// GF(p^e) with the built-in modulus. Supports q = p^e <= 16.
    pub fn field(p: u64, e: u32) -> Result<Ring> {
        if e == 0 {
            return invalid("field exponent must be positive");
        }
        if e == 1 {
            return Ring::field_with_modulus(p, e, &[]);
        }
        match builtin_modulus(p, e) {
            Some(m) => Ring::field_with_modulus(p, e, &m),
            None => invalid(format!("no built-in modulus for GF({}^{})", p, e)),
        }
    }

    /// GF(p^e) with an explicit monic irreducible modulus (little-endian
    /// coefficients, length e+1). Ignored for e = 1.
    pub fn field_with_modulus(p: u64, e: u32, modulus: &[u64]) -> Result<Ring> {
        if !is_prime(p) {
            return invalid(format!("{} is not prime", p));
        }
        let size = p.checked_pow(e).filter(|&q| q <= 16);
        let size = match size {
            Some(q) => q,
            None => return invalid(format!("field size {}^{} exceeds 16", p, e)),
        };
        let modulus: Vec<u64> = if e == 1 {
            vec![]
        } else {
            if modulus.len() != e as usize + 1 {
                return invalid("modulus degree must equal the field exponent");
            }
            if modulus[e as usize] != 1 {
                return invalid("modulus must be monic");
            }
            if modulus.iter().any(|&c| c >= p) {
                return invalid("modulus coefficients must lie in [0, p)");
            }
            if !is_irreducible(modulus, p) {
                return invalid("modulus polynomial is reducible");
            }
            modulus.to_vec()
        };

        let q = size as usize;
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        let mut neg = vec![0u16; q];
        let mut inv = vec![0u16; q];
        for a in 0..size {
            let pa = decode_poly(a, p, e);
            // Additive tables are digit-wise mod p.
            let na: Vec<u64> = pa.iter().map(|&c| (p - c) % p).collect();
            neg[a as usize] = encode_poly(&na, p) as u16;
            for b in 0..size {
                let pb = decode_poly(b, p, e);
                let s: Vec<u64> = pa.iter().zip(&pb).map(|(&x, &y)| (x + y) % p).collect();
                add[(a * size + b) as usize] = encode_poly(&s, p) as u16;
                let prod = if e == 1 {
                    vec![(a * b) % p]
                } else {
                    polys::rem(&polys::mul(&pa, &pb, p), &modulus, p)
                };
                mul[(a * size + b) as usize] = encode_poly(&prod, p) as u16;
            }
        }
        for a in 1..size {
            for b in 1..size {
                if mul[(a * size + b) as usize] == 1 {
                    inv[a as usize] = b as u16;
                }
            }
            if inv[a as usize] == 0 {
                return invalid("element without inverse; modulus not irreducible");
            }
        }

        Ok(Ring(Arc::new(RingRepr {
            kind: RingKind::Field,
            p,
            exp: e,
            size,
            modulus,
            add,
            mul,
            inv,
            neg,
        })))
    }

    /// GF(q) for a prime power q <= 16, factoring q automatically.
    pub fn field_of_size(q: u64) -> Result<Ring> {
        for p in 2..=q {
            if is_prime(p) && q % p == 0 {
                let mut e = 0;
                let mut rest = q;
                while rest % p == 0 {
                    rest /= p;
                    e += 1;
                }
                if rest != 1 {
                    return invalid(format!("{} is not a prime power", q));
                }
                return Ring::field(p, e);
            }
        }
        invalid(format!("{} is not a prime power", q))
    }

    /// The chain ring Z/p^s.
    pub fn chain(p: u64, s: u32) -> Result<Ring> {
        if !is_prime(p) {
            return invalid(format!("{} is not prime", p));
        }
        if s == 0 {
            return invalid("chain ring exponent must be positive");
        }
        let size = match p.checked_pow(s) {
            Some(n) if n <= 1 << 20 => n,
            _ => return invalid("chain ring modulus too large"),
        };
        Ok(Ring(Arc::new(RingRepr {
            kind: RingKind::ChainRing,
            p,
            exp: s,
            size,
            modulus: vec![],
            add: vec![],
            mul: vec![],
            inv: vec![],
            neg: vec![],
        })))
    }

    pub fn kind(&self) -> RingKind {
        self.0.kind
    }

    pub fn is_field(&self) -> bool {
        self.0.kind == RingKind::Field
    }

    pub fn prime(&self) -> u64 {
        self.0.p
    }

    /// e for fields, s for chain rings.
    pub fn exponent(&self) -> u32 {
        self.0.exp
    }

    pub fn size(&self) -> u64 {
        self.0.size
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.0.size
    }

    fn check(&self, a: u64) -> u64 {
        debug_assert!(a < self.0.size, "element {} out of range", a);
        a
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        self.check(a);
        self.check(b);
        match self.0.kind {
            RingKind::Field => self.0.add[(a * self.0.size + b) as usize] as u64,
            RingKind::ChainRing => (a + b) % self.0.size,
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        self.check(a);
        match self.0.kind {
            RingKind::Field => self.0.neg[a as usize] as u64,
            RingKind::ChainRing => (self.0.size - a) % self.0.size,
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.check(a);
        self.check(b);
        match self.0.kind {
            RingKind::Field => self.0.mul[(a * self.0.size + b) as usize] as u64,
            RingKind::ChainRing => (a as u128 * b as u128 % self.0.size as u128) as u64,
        }
    }

    pub fn is_unit(&self, a: u64) -> bool {
        self.check(a);
        match self.0.kind {
            RingKind::Field => a != 0,
            RingKind::ChainRing => a % self.0.p != 0,
        }
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        if !self.is_unit(a) {
            return None;
        }
        match self.0.kind {
            RingKind::Field => Some(self.0.inv[a as usize] as u64),
            RingKind::ChainRing => {
                // Units of Z/p^s form a group of order p^(s-1)(p-1).
                let order = self.0.size / self.0.p * (self.0.p - 1);
                let mut acc = 1u64;
                let mut base = a;
                let mut k = order - 1;
                while k > 0 {
                    if k & 1 == 1 {
                        acc = self.mul(acc, base);
                    }
                    base = self.mul(base, base);
                    k >>= 1;
                }
                Some(acc)
            }
        }
    }

    /// p-adic valuation, with `max_val()` standing in for the valuation of
    /// zero. Fields behave like chain rings with s = 1: nonzero elements
    /// have valuation 0.
    pub fn val(&self, a: u64) -> u32 {
        self.check(a);
        if a == 0 {
            return self.max_val();
        }
        match self.0.kind {
            RingKind::Field => 0,
            RingKind::ChainRing => {
                let mut v = 0;
                let mut x = a;
                while x % self.0.p == 0 {
                    x /= self.0.p;
                    v += 1;
                }
                v
            }
        }
    }

    /// Valuation assigned to zero: s for Z/p^s and 1 for fields.
    pub fn max_val(&self) -> u32 {
        match self.0.kind {
            RingKind::Field => 1,
            RingKind::ChainRing => self.0.exp,
        }
    }

    /// The ring element p^a.
    pub fn p_pow(&self, a: u32) -> u64 {
        assert!(a <= self.max_val());
        if a == self.max_val() && !self.is_field() {
            return 0;
        }
        match self.0.kind {
            RingKind::Field => {
                assert!(a == 0);
                1
            }
            RingKind::ChainRing => self.0.p.pow(a),
        }
    }

    /// Unit u with a = u * p^val(a). For fields this is a itself.
    pub fn unit_part(&self, a: u64) -> u64 {
        self.check(a);
        assert!(a != 0);
        match self.0.kind {
            RingKind::Field => a,
            RingKind::ChainRing => a / self.0.p.pow(self.val(a)),
        }
    }

    /// Decompose e = q * p^a + r with r the canonical representative in
    /// [0, p^a). Fields (a = 0) give (e, 0).
    pub fn pivot_div_rem(&self, e: u64, a: u32) -> (u64, u64) {
        self.check(e);
        match self.0.kind {
            RingKind::Field => {
                assert!(a == 0);
                (e, 0)
            }
            RingKind::ChainRing => {
                let pa = self.0.p.pow(a);
                (e / pa, e % pa)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_tables_match_omega_relations() {
        // omega = 2, omega^2 = omega + 1 = 3 under x^2 + x + 1.
        let f4 = Ring::field(2, 2).unwrap();
        assert_eq!(f4.mul(2, 2), 3);
        assert_eq!(f4.mul(2, 3), 1);
        assert_eq!(f4.add(2, 3), 1);
        assert_eq!(f4.inv(2), Some(3));
    }

    #[test]
    fn field_axioms_exhaustive_small_q() {
        for (p, e) in [(2u64, 1u32), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (5, 1), (7, 1), (11, 1), (13, 1)] {
            let f = Ring::field(p, e).unwrap();
            let q = f.size();
            for a in 0..q {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 + 1 = (x+1)^2 over GF(2).
        assert!(Ring::field_with_modulus(2, 2, &[1, 0, 1]).is_err());
    }

    #[test]
    fn oversized_field_rejected() {
        assert!(Ring::field(17, 1).is_err());
        assert!(Ring::field(2, 5).is_err());
    }

    #[test]
    fn z4_arithmetic() {
        let z4 = Ring::chain(2, 2).unwrap();
        assert_eq!(z4.mul(2, 2), 0);
        assert_eq!(z4.inv(3), Some(3));
        assert_eq!(z4.inv(2), None);
        assert_eq!(z4.val(2), 1);
        assert_eq!(z4.val(0), 2);
        assert_eq!(z4.unit_part(6 % 4), 1);
        assert_eq!(z4.pivot_div_rem(3, 1), (1, 1));
    }

    #[test]
    fn chain_ring_unit_inverses() {
        for (p, s) in [(2u64, 2u32), (2, 3), (3, 2), (5, 2)] {
            let r = Ring::chain(p, s).unwrap();
            for a in r.elements() {
                if r.is_unit(a) {
                    let b = r.inv(a).unwrap();
                    assert_eq!(r.mul(a, b), 1);
                }
            }
        }
    }
}
