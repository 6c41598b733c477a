//! Table-driven arithmetic in GF(p^v).
//!
//! Elements are dense indices `0..q`. An index is read as the base-p digit
//! string of a polynomial in the generator `x` modulo the field's modulus:
//! index `e = d_0 + d_1 p + ... + d_{v-1} p^{v-1}` stands for
//! `d_0 + d_1 x + ... + d_{v-1} x^{v-1}`. Index 0 is zero, index 1 is one.

use thiserror::Error;

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 16;

/// Full `q x q` addition and multiplication tables are kept up to this order;
/// above it, addition is digit-wise and multiplication goes through log tables.
const FULL_TABLE_LIMIT: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("field order {0} exceeds the supported maximum {MAX_ORDER}")]
    FieldTooLarge(u64),
    #[error("exponent must be positive")]
    ZeroExponent,
    #[error("division by zero")]
    DivisionByZero,
}

pub type Elem = u16;

/// A finite field GF(p^v) with precomputed tables.
#[derive(Clone)]
pub struct Field {
    p: u32,
    v: u32,
    q: u32,
    /// Coefficients `c_0..c_{v-1}` of the monic modulus (leading 1 implied).
    modulus: Option<Vec<u32>>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
    log: Vec<u32>,
    exp: Vec<Elem>,
}

impl std::fmt::Debug for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("v", &self.v)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.v == other.v
    }
}

impl Eq for Field {}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Decomposes `q` as `p^v`, if it is a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 || q > MAX_ORDER as u64 {
        return None;
    }
    let q = q as u32;
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut v = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        v += 1;
    }
    (r == 1).then_some((p, v))
}

// Dense polynomials over GF(p), lowest degree first.

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = pow_mod(b[db], p - 2, p);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let factor = r[r.len() - 1] * lead_inv % p;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - factor * bi % p) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn pow_mod(mut base: u32, mut e: u32, p: u32) -> u32 {
    let mut acc = 1u32;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

fn digits(mut e: u32, p: u32, v: u32) -> Vec<u32> {
    (0..v)
        .map(|_| {
            let d = e % p;
            e /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-p
/// digits of `code`.
fn monic_from_code(code: u32, p: u32, deg: u32) -> Vec<u32> {
    let mut c = digits(code, p, deg);
    c.push(1);
    c
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = (f.len() - 1) as u32;
    for d in 1..=deg / 2 {
        for code in 0..p.pow(d) {
            let g = monic_from_code(code, p, d);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible polynomial of degree `v`,
/// ordered by the base-p integer value of its non-leading coefficients.
fn smallest_irreducible(p: u32, v: u32) -> Vec<u32> {
    (0..p.pow(v))
        .map(|code| monic_from_code(code, p, v))
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

impl Field {
    pub fn new(p: u32, v: u32) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if v == 0 {
            return Err(FieldError::ZeroExponent);
        }
        let q = (p as u64).checked_pow(v).unwrap_or(u64::MAX);
        if q > MAX_ORDER as u64 {
            return Err(FieldError::FieldTooLarge(q));
        }
        let q = q as u32;
        let modulus = (v > 1).then(|| smallest_irreducible(p, v));

        let mul_raw = |a: u32, b: u32| -> u32 {
            match &modulus {
                None => a * b % p,
                Some(m) => {
                    let da = digits(a, p, v);
                    let db = digits(b, p, v);
                    let mut prod = vec![0u32; (2 * v - 1) as usize];
                    for (i, &x) in da.iter().enumerate() {
                        for (j, &y) in db.iter().enumerate() {
                            prod[i + j] = (prod[i + j] + x * y) % p;
                        }
                    }
                    let r = poly_rem(&prod, m, p);
                    let mut full = r;
                    full.resize(v as usize, 0);
                    undigits(&full, p)
                }
            }
        };

        // Find a primitive element and build log/exp tables.
        let order = q - 1;
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; q as usize];
        'search: for g in 2.min(q - 1).max(1)..q {
            exp.clear();
            let mut x = 1u32;
            for i in 0..order {
                if i > 0 && x == 1 {
                    continue 'search;
                }
                exp.push(x as Elem);
                x = mul_raw(x, g);
            }
            if x == 1 {
                break;
            }
        }
        debug_assert_eq!(exp.len(), order as usize);
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }

        let neg: Vec<Elem> = (0..q)
            .map(|a| undigits(&digits(a, p, v).iter().map(|&d| (p - d) % p).collect::<Vec<_>>(), p) as Elem)
            .collect();
        let inv: Vec<Elem> = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    exp[((order - log[a as usize]) % order) as usize]
                }
            })
            .collect();

        let mut field = Field {
            p,
            v,
            q,
            modulus: modulus.map(|mut m| {
                m.pop();
                m
            }),
            add: Vec::new(),
            mul: Vec::new(),
            neg,
            inv,
            log,
            exp,
        };
        if q <= FULL_TABLE_LIMIT {
            let qs = q as usize;
            let mut add = vec![0; qs * qs];
            let mut mul = vec![0; qs * qs];
            for a in 0..q {
                for b in 0..q {
                    add[(a * q + b) as usize] = field.add_digits(a as Elem, b as Elem);
                    mul[(a * q + b) as usize] = field.mul_log(a as Elem, b as Elem);
                }
            }
            field.add = add;
            field.mul = mul;
        }
        Ok(field)
    }

    /// Builds GF(q) from its order.
    pub fn with_order(q: u64) -> Result<Self, FieldError> {
        match prime_power(q) {
            Some((p, v)) => Field::new(p, v),
            None if q > MAX_ORDER as u64 => Err(FieldError::FieldTooLarge(q)),
            None => Err(FieldError::NotPrime(q as u32)),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn v(&self) -> u32 {
        self.v
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Non-leading coefficients of the modulus, lowest degree first.
    pub fn modulus(&self) -> Option<&[u32]> {
        self.modulus.as_deref()
    }

    fn add_digits(&self, a: Elem, b: Elem) -> Elem {
        if self.v == 1 {
            return ((a as u32 + b as u32) % self.p) as Elem;
        }
        let (p, v) = (self.p, self.v);
        let da = digits(a as u32, p, v);
        let db = digits(b as u32, p, v);
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
        undigits(&s, p) as Elem
    }

    fn mul_log(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let order = self.q - 1;
        let s = (self.log[a as usize] + self.log[b as usize]) % order;
        self.exp[s as usize]
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.add.is_empty() {
            self.add_digits(a, b)
        } else {
            self.add[a as usize * self.q as usize + b as usize]
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if self.mul.is_empty() {
            self.mul_log(a, b)
        } else {
            self.mul[a as usize * self.q as usize + b as usize]
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, FieldError> {
        if a == 0 {
            Err(FieldError::DivisionByZero)
        } else {
            Ok(self.inv[a as usize])
        }
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = (self.q - 1) as u64;
        let s = (self.log[a as usize] as u64 * (e % order)) % order;
        self.exp[s as usize]
    }

    /// The p-th power (Frobenius) map computed by repeated multiplication.
    pub fn frobenius(&self, a: Elem) -> Elem {
        (1..self.p).fold(a, |acc, _| self.mul(acc, a))
    }

    /// Reads an element index, rejecting out-of-range values.
    pub fn elem(&self, value: u64) -> Option<Elem> {
        (value < self.q as u64).then_some(value as Elem)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q as Elem
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(Field::new(4, 1).unwrap_err(), FieldError::NotPrime(4));
        assert_eq!(Field::new(2, 17).unwrap_err(), FieldError::FieldTooLarge(1 << 17));
        assert!(Field::new(2, 16).is_ok());
    }

    #[test]
    fn small_prime_fields() {
        let f2 = Field::new(2, 1).unwrap();
        assert_eq!(f2.add(1, 1), 0);
        assert_eq!(f2.neg(1), 1);
        let f3 = Field::new(3, 1).unwrap();
        assert_eq!(f3.mul(2, 2), 1);
        let f5 = Field::new(5, 1).unwrap();
        assert_eq!(f5.inv(2).unwrap(), 3);
        assert_eq!(f5.inv(0), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn gf4_uses_x2_x_1() {
        let f = Field::new(2, 2).unwrap();
        assert_eq!(f.modulus(), Some(&[1, 1][..]));
        // omega^2 = omega + 1
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.add(2, 3), 1);
    }

    #[test]
    fn gf8_and_gf9_moduli() {
        // x^3 + x + 1 precedes x^3 + x^2 + 1.
        assert_eq!(Field::new(2, 3).unwrap().modulus(), Some(&[1, 1, 0][..]));
        // x^2 + 1 is irreducible over GF(3) and is the smallest candidate.
        assert_eq!(Field::new(3, 2).unwrap().modulus(), Some(&[1, 0][..]));
    }

    fn check_axioms(f: &Field) {
        let els: Vec<Elem> = f.elements().collect();
        for &a in &els {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            for &b in &els {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for &c in &els {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn exhaustive_axioms_up_to_16() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            check_axioms(&Field::with_order(q).unwrap());
        }
    }

    #[test]
    fn frobenius_and_fermat() {
        for q in [2u64, 3, 4, 8, 9, 25, 27, 32, 49, 64, 81, 125, 128, 256, 1024, 3125] {
            let f = Field::with_order(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.pow(a, q), a, "a^q = a in GF({q})");
                assert_eq!(f.frobenius(a), f.pow(a, f.p() as u64));
            }
        }
    }

    #[test]
    fn large_field_sampled_axioms() {
        use rand::{Rng, SeedableRng};
        let f = Field::new(2, 16).unwrap();
        let g = Field::new(251, 2).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for field in [&f, &g] {
            let q = field.order();
            for _ in 0..2000 {
                let a = rng.gen_range(0..q) as Elem;
                let b = rng.gen_range(0..q) as Elem;
                let c = rng.gen_range(0..q) as Elem;
                assert_eq!(field.mul(a, field.add(b, c)), field.add(field.mul(a, b), field.mul(a, c)));
                assert_eq!(field.mul(field.mul(a, b), c), field.mul(a, field.mul(b, c)));
                if a != 0 {
                    assert_eq!(field.mul(a, field.inv(a).unwrap()), 1);
                }
            }
        }
    }
}
