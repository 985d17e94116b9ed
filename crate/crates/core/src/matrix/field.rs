//! Finite fields GF(p^f) with a pinned defining polynomial.
//!
//! An element is encoded as the integer `c_0 + c_1 p + ... + c_{f-1} p^{f-1}`
//! where `c_0 + c_1 x + ... + c_{f-1} x^{f-1}` is its residue modulo the
//! defining polynomial.

use crate::error::{GroupError, Result};

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldTable {
    p: u32,
    f: u32,
    q: u32,
    /// Monic defining polynomial, lowest coefficient first (length f + 1).
    modulus: Vec<u32>,
    primitive: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Option<Vec<u16>>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Writes `q = p^f` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let mut f = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        f += 1;
    }
    (r == 1).then_some((p, f))
}

/// Moduli fixed so element encodings are reproducible everywhere.
fn pinned_modulus(p: u32, f: u32) -> Option<Vec<u32>> {
    match (p, f) {
        (2, 2) => Some(vec![1, 1, 1]),
        (2, 3) => Some(vec![1, 1, 0, 1]),
        (3, 2) => Some(vec![1, 0, 1]),
        (2, 4) => Some(vec![1, 1, 0, 0, 1]),
        _ => None,
    }
}

fn digits(mut v: u32, p: u32, f: u32) -> Vec<u32> {
    (0..f)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Remainder of `a` modulo a monic `m`, coefficients mod `p`.
fn poly_rem(mut a: Vec<u32>, m: &[u32], p: u32) -> Vec<u32> {
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = a.pop().unwrap();
        if lead == 0 {
            continue;
        }
        let shift = a.len() - dm;
        for (k, &c) in m[..dm].iter().enumerate() {
            let idx = shift + k;
            a[idx] = (a[idx] + p - (lead * c) % p) % p;
        }
    }
    a
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let mut r = poly_rem(prod, m, p);
    r.resize(m.len() - 1, 0);
    r
}

/// Brute-force irreducibility: no monic factor of degree 1..=deg/2.
pub fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut divisor = digits(code as u32, p, d as u32);
            divisor.push(1);
            let r = poly_rem(m.to_vec(), &divisor, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FieldTable {
    pub fn new(p: u64, f: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(GroupError::NotPrime(p));
        }
        if f == 0 {
            return Err(GroupError::Unsupported(
                "extension degree must be at least 1".into(),
            ));
        }
        let q = match p.checked_pow(f) {
            Some(q) if q <= MAX_FIELD_ORDER => q,
            _ => return Err(GroupError::FieldTooLarge(p.saturating_pow(f))),
        };
        let p = p as u32;
        let q = q as u32;
        let modulus = match pinned_modulus(p, f) {
            Some(m) => m,
            None if f == 1 => vec![0, 1],
            None => {
                // least monic irreducible, constant term first
                let mut found = None;
                for code in 0..q {
                    let mut m = digits(code, p, f);
                    m.push(1);
                    if is_irreducible(&m, p) {
                        found = Some(m);
                        break;
                    }
                }
                found.ok_or(GroupError::ModulusNotIrreducible(p as u64))?
            }
        };
        if !is_irreducible(&modulus, p) {
            return Err(GroupError::ModulusNotIrreducible(p as u64));
        }
        let mulmod = |a: u32, b: u32| -> u32 {
            undigits(
                &poly_mulmod(&digits(a, p, f), &digits(b, p, f), &modulus, p),
                p,
            )
        };
        // least element of multiplicative order q - 1
        let mut primitive = None;
        for g in 1..q {
            let mut x = g;
            let mut ord = 1;
            while x != 1 {
                x = mulmod(x, g);
                ord += 1;
            }
            if ord == q - 1 {
                primitive = Some(g);
                break;
            }
        }
        let primitive = primitive.ok_or(GroupError::ModulusNotIrreducible(p as u64))?;
        let mut exp = vec![0u32; (q - 1) as usize];
        let mut log = vec![u32::MAX; q as usize];
        let mut x = 1;
        for (k, e) in exp.iter_mut().enumerate() {
            *e = x;
            log[x as usize] = k as u32;
            x = mulmod(x, primitive);
        }
        let mut field = FieldTable {
            p,
            f,
            q,
            modulus,
            primitive,
            exp,
            log,
            add: None,
        };
        if q <= 256 {
            let mut table = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = field.add_digits(a, b) as u16;
                }
            }
            field.add = Some(table);
        }
        Ok(field)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Generator of the multiplicative group.
    pub fn primitive(&self) -> u32 {
        self.primitive
    }

    /// The class of `x` itself, `p` in the integer encoding (or the
    /// primitive element for prime fields).
    pub fn x(&self) -> u32 {
        if self.f == 1 {
            self.primitive
        } else {
            self.p
        }
    }

    fn add_digits(&self, a: u32, b: u32) -> u32 {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.f {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        match &self.add {
            Some(t) => t[(a * self.q + b) as usize] as u32,
            None => self.add_digits(a, b),
        }
    }

    pub fn neg(&self, a: u32) -> u32 {
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.f {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = self.log[a as usize] + self.log[b as usize];
        self.exp[(s % (self.q - 1)) as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let l = self.log[a as usize];
        Some(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize])
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = self.log[a as usize] as u64;
        self.exp[((l * e) % (self.q as u64 - 1)) as usize]
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        Some(k)
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    /// Additive basis `1, x, ..., x^{f-1}` over the prime field.
    pub fn additive_basis(&self) -> Vec<u32> {
        (0..self.f).map(|k| self.p.pow(k)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_omega_squared() {
        let f = FieldTable::new(2, 2).unwrap();
        let w = f.x();
        assert_eq!(w, 2);
        assert_eq!(f.mul(w, w), f.add(w, 1));
        assert_eq!(f.modulus(), &[1, 1, 1]);
    }

    #[test]
    fn gf3_arithmetic() {
        let f = FieldTable::new(3, 1).unwrap();
        assert_eq!(f.mul(2, 2), 1);
        assert_eq!(f.add(2, 2), 1);
        assert_eq!(f.neg(1), 2);
    }

    #[test]
    fn gf8_generator_order() {
        let f = FieldTable::new(2, 3).unwrap();
        // oracle: repeated multiplication of x by itself
        let x = f.x();
        let mut y = x;
        let mut k = 1;
        while y != 1 {
            y = f.mul(y, x);
            k += 1;
        }
        assert_eq!(k, 7);
        assert_eq!(f.mult_order(f.primitive()), Some(7));
    }

    #[test]
    fn gf9_uses_pinned_modulus() {
        let f = FieldTable::new(3, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
        // x^2 = -1
        assert_eq!(f.mul(3, 3), 2);
        assert_eq!(f.mult_order(3), Some(4));
        assert_eq!(f.mult_order(f.primitive()), Some(8));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FieldTable::new(4, 1).unwrap_err(), GroupError::NotPrime(4));
        assert!(matches!(
            FieldTable::new(2, 17),
            Err(GroupError::FieldTooLarge(_))
        ));
    }

    #[test]
    fn field_axioms_exhaustive_small_fields() {
        for (p, f) in [
            (2, 1),
            (3, 1),
            (2, 2),
            (5, 1),
            (7, 1),
            (2, 3),
            (3, 2),
            (11, 1),
            (13, 1),
            (2, 4),
        ] {
            let k = FieldTable::new(p, f).unwrap();
            let q = k.order();
            assert_eq!(k.mult_order(k.primitive()), Some(q - 1));
            for a in 0..q {
                if a != 0 {
                    assert_eq!(k.mul(a, k.inv(a).unwrap()), 1);
                }
                assert_eq!(k.add(a, k.neg(a)), 0);
                for b in 0..q {
                    assert_eq!(k.mul(a, b), k.mul(b, a));
                    for c in 0..q {
                        assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
                        assert_eq!(k.add(k.add(a, b), c), k.add(a, k.add(b, c)));
                        assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn unpinned_fields_pick_least_irreducible() {
        let f = FieldTable::new(5, 2).unwrap();
        assert!(is_irreducible(f.modulus(), 5));
        assert_eq!(f.order(), 25);
        let g = FieldTable::new(2, 5).unwrap();
        assert_eq!(g.modulus(), &[1, 0, 1, 0, 0, 1]);
    }

    #[test]
    fn prime_power_decomposition() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
