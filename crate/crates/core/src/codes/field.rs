//! Small finite fields `GF(p^e)` with `q = p^e ≤ 16`, backed by full addition
//! tables and log/antilog tables for the multiplicative group.
//!
//! An element is stored as the integer `Σ c_i p^i` of its coefficient vector
//! over `GF(p)` in the polynomial basis `1, x, …, x^{e−1}`.

use crate::error::{Error, Result};

pub type Elem = u8;

/// Monic irreducible moduli, coefficients from the constant term up.
const MODULI: &[(u8, u8, &[u8])] = &[
    (2, 2, &[1, 1, 1]),       // x^2 + x + 1
    (2, 3, &[1, 1, 0, 1]),    // x^3 + x + 1
    (2, 4, &[1, 1, 0, 0, 1]), // x^4 + x + 1
    (3, 2, &[2, 2, 1]),       // x^2 + 2x + 2
];

pub const MAX_FIELD_ORDER: u64 = 16;

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Splits `q` into `(p, e)` when it is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut e = 0;
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldTable {
    p: u8,
    e: u8,
    q: u8,
    modulus: Vec<u8>,
    add: Vec<Elem>,
    neg: Vec<Elem>,
    log: Vec<u8>,
    exp: Vec<Elem>,
    generator: Elem,
}

/// Coefficient vector of `v`, length `e`.
fn digits(v: u8, p: u8, e: u8) -> Vec<u8> {
    let mut v = v;
    (0..e)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn undigits(ds: &[u8], p: u8) -> u8 {
    ds.iter().rev().fold(0u8, |acc, &d| acc * p + d)
}

/// Schoolbook product of `a` and `b` reduced modulo the monic `modulus`.
pub(crate) fn poly_mul_mod(a: u8, b: u8, p: u8, e: u8, modulus: &[u8]) -> u8 {
    let (da, db) = (digits(a, p, e), digits(b, p, e));
    let e = e as usize;
    let mut prod = vec![0u16; 2 * e];
    for i in 0..e {
        for j in 0..e {
            prod[i + j] = (prod[i + j] + da[i] as u16 * db[j] as u16) % p as u16;
        }
    }
    for deg in (e..2 * e).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        // subtract c·x^{deg−e}·modulus
        for (i, &mc) in modulus.iter().enumerate() {
            let idx = deg - e + i;
            prod[idx] = (prod[idx] + (p as u16 - c) * mc as u16) % p as u16;
        }
    }
    let low: Vec<u8> = prod[..e].iter().map(|&c| c as u8).collect();
    undigits(&low, p)
}

/// No monic factor of degree `1..=deg/2` over `GF(p)`.
pub(crate) fn is_irreducible(p: u8, poly: &[u8]) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u32).pow(d as u32);
        for low in 0..count {
            let mut div: Vec<u8> = (0..d).map(|i| ((low / (p as u32).pow(i as u32)) % p as u32) as u8).collect();
            div.push(1);
            // long division remainder
            let mut rem: Vec<u16> = poly.iter().map(|&c| c as u16).collect();
            for top in (d..=deg).rev() {
                let c = rem[top];
                if c == 0 {
                    continue;
                }
                for (i, &dc) in div.iter().enumerate() {
                    let idx = top - d + i;
                    rem[idx] = (rem[idx] + (p as u16 - c) * dc as u16) % p as u16;
                }
            }
            if rem[..d].iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FieldTable {
    pub fn with_order(q: u64) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or(Error::UnsupportedField(q))?;
        build_field(p, e)
    }

    pub fn q(&self) -> usize {
        self.q as usize
    }

    pub fn characteristic(&self) -> u8 {
        self.p
    }

    pub fn degree(&self) -> u8 {
        self.e
    }

    /// Coefficients of the defining polynomial, constant term first.
    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    /// A generator of the multiplicative group.
    pub fn generator(&self) -> Elem {
        self.generator
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[self.log[a as usize] as usize + self.log[b as usize] as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            return None;
        }
        let n = self.q as usize - 1;
        Some(self.exp[(n - self.log[a as usize] as usize) % n])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// Checks the field axioms over every element, pair and triple.
    pub fn verify_axioms(&self) -> std::result::Result<(), String> {
        let q = self.q;
        for a in 0..q {
            if self.add(a, 0) != a || self.mul(a, 1) != a || self.mul(a, 0) != 0 {
                return Err(format!("identity fails at {a}"));
            }
            if self.add(a, self.neg(a)) != 0 {
                return Err(format!("additive inverse fails at {a}"));
            }
            if a != 0 && self.mul(a, self.inv(a).unwrap_or(0)) != 1 {
                return Err(format!("multiplicative inverse fails at {a}"));
            }
            for b in 0..q {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return Err(format!("commutativity fails at ({a},{b})"));
                }
                if a != 0 && b != 0 && self.mul(a, b) == 0 {
                    return Err(format!("zero divisor ({a},{b})"));
                }
                for c in 0..q {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(format!("additive associativity fails at ({a},{b},{c})"));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(format!("multiplicative associativity fails at ({a},{b},{c})"));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(format!("distributivity fails at ({a},{b},{c})"));
                    }
                }
            }
        }
        Ok(())
    }

    #[cfg(test)]
    pub(crate) fn corrupt_mul_for_test(&mut self) {
        self.exp.swap(1, 2);
    }
}

/// Builds `GF(p^e)`.
pub fn build_field(p: u64, e: u32) -> Result<FieldTable> {
    let q = p.checked_pow(e).unwrap_or(u64::MAX);
    if e == 0 || !is_prime(p) || q > MAX_FIELD_ORDER {
        return Err(Error::UnsupportedField(q));
    }
    let (p, e, q) = (p as u8, e as u8, q as u8);
    let modulus: Vec<u8> = if e == 1 {
        vec![0, 1]
    } else {
        MODULI
            .iter()
            .find(|(mp, me, _)| *mp == p && *me == e)
            .map(|(_, _, c)| c.to_vec())
            .ok_or(Error::UnsupportedField(q as u64))?
    };
    debug_assert!(is_irreducible(p, &modulus));

    let qs = q as usize;
    let mut add = vec![0u8; qs * qs];
    let mut neg = vec![0u8; qs];
    for a in 0..q {
        let da = digits(a, p, e);
        for b in 0..q {
            let db = digits(b, p, e);
            let s: Vec<u8> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            add[a as usize * qs + b as usize] = undigits(&s, p);
        }
        let n: Vec<u8> = da.iter().map(|&x| (p - x) % p).collect();
        neg[a as usize] = undigits(&n, p);
    }

    // smallest element of multiplicative order q−1
    let order = qs - 1;
    let generator = (1..q)
        .find(|&g| {
            let mut x = 1u8;
            for k in 1..=order {
                x = poly_mul_mod(x, g, p, e, &modulus);
                if x == 1 {
                    return k == order;
                }
            }
            false
        })
        .expect("multiplicative group of a field is cyclic");

    let mut exp = vec![0u8; 2 * order];
    let mut log = vec![0u8; qs];
    let mut x = 1u8;
    for i in 0..order {
        exp[i] = x;
        exp[i + order] = x;
        log[x as usize] = i as u8;
        x = poly_mul_mod(x, generator, p, e, &modulus);
    }
    Ok(FieldTable { p, e, q, modulus, add, neg, log, exp, generator })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn supported_orders() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = FieldTable::with_order(q).unwrap();
            assert_eq!(f.q() as u64, q);
            f.verify_axioms().unwrap();
        }
        for q in [0u64, 1, 6, 10, 12, 15, 17, 25, 32] {
            assert!(FieldTable::with_order(q).is_err(), "q = {q}");
        }
        assert!(build_field(4, 1).is_err());
        assert!(build_field(2, 0).is_err());
    }

    #[test]
    fn small_fields() {
        let f2 = build_field(2, 1).unwrap();
        assert_eq!(f2.add(1, 1), 0);
        let f3 = build_field(3, 1).unwrap();
        assert_eq!(f3.mul(2, 2), 1);
        assert_eq!(f3.neg(1), 2);
        let f4 = build_field(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        // x·x = x + 1 modulo x^2 + x + 1
        assert_eq!(f4.mul(2, 2), 3);
        assert_eq!(f4.add(2, 3), 1);
    }

    #[test]
    fn bundled_moduli_are_irreducible() {
        for (p, _, m) in MODULI {
            assert!(is_irreducible(*p, m));
        }
        // x^2 + 1 = (x+1)^2 over GF(2)
        assert!(!is_irreducible(2, &[1, 0, 1]));
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2 over GF(2)
        assert!(!is_irreducible(2, &[1, 0, 1, 0, 1]));
    }

    #[test]
    fn log_tables_match_schoolbook_product() {
        for q in [4u64, 8, 9, 16, 13] {
            let f = FieldTable::with_order(q).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    let direct = poly_mul_mod(a, b, f.p, f.e, &f.modulus);
                    assert_eq!(f.mul(a, b), direct, "q={q} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn corrupted_table_fails_axioms() {
        let mut f = FieldTable::with_order(8).unwrap();
        f.corrupt_mul_for_test();
        assert!(f.verify_axioms().is_err());
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(16), Some((2, 4)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
