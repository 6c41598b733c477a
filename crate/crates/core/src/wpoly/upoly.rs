//! Dense univariate polynomials over Z, lowest degree first, with no trailing
//! zeros. The empty vector is the zero polynomial.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type ZPoly = Vec<BigInt>;

pub fn trim(a: &mut ZPoly) {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
}

pub fn degree(a: &[BigInt]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with a positive leading coefficient.
pub fn primitive(a: &[BigInt]) -> ZPoly {
    let mut out = a.to_vec();
    trim(&mut out);
    let Some(lead) = out.last() else {
        return out;
    };
    let mut c = content(&out);
    if lead.is_negative() {
        c = -c;
    }
    if !c.is_one() {
        for x in out.iter_mut() {
            *x /= &c;
        }
    }
    out
}

pub fn derivative(a: &[BigInt]) -> ZPoly {
    let mut out: ZPoly = a.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    trim(&mut out);
    out
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    trim(&mut out);
    out
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `a / b` when `b` divides `a` over Z; `None` otherwise.
pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let db = degree(b)?;
    let mut r = a.to_vec();
    trim(&mut r);
    if r.is_empty() {
        return Some(Vec::new());
    }
    let da = degree(&r)?;
    if da < db {
        return None;
    }
    let lead = &b[db];
    let mut q = vec![BigInt::zero(); da - db + 1];
    for i in (0..=da - db).rev() {
        let top = &r[i + db];
        if top.is_zero() {
            continue;
        }
        let (c, rem) = top.div_rem(lead);
        if !rem.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    r.iter().all(Zero::is_zero).then_some(q)
}

/// Pseudo-remainder of `a` by `b`.
fn prem(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let lead = &b[db];
    while r.len() > db && !r.is_empty() {
        let top = r.last().expect("nonempty").clone();
        let shift = r.len() - 1 - db;
        for x in r.iter_mut() {
            *x *= lead;
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &top * bj;
        }
        trim(&mut r);
    }
    r
}

const CHECK_PRIMES: [u64; 3] = [2_305_843_009_213_693_951, 1_000_000_007, 998_244_353];

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

fn reduce(a: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut out: Vec<u64> = a.iter().map(|c| c.mod_floor(&pb).to_u64().expect("reduced")).collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

fn gcd_degree_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> usize {
    while !b.is_empty() {
        let inv = powmod(*b.last().expect("nonempty"), p - 2, p);
        while a.len() >= b.len() {
            let factor = mulmod(*a.last().expect("nonempty"), inv, p);
            let shift = a.len() - b.len();
            for (j, &bj) in b.iter().enumerate() {
                a[shift + j] = (a[shift + j] + p - mulmod(factor, bj, p)) % p;
            }
            while a.last() == Some(&0) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// True when some check prime proves `gcd(a, b) = 1` over Q.
fn coprime_by_reduction(a: &[BigInt], b: &[BigInt]) -> bool {
    CHECK_PRIMES.iter().any(|&p| {
        let (ra, rb) = (reduce(a, p), reduce(b, p));
        // Degrees must survive reduction for the bound deg gcd_p >= deg gcd.
        ra.len() == a.len() && rb.len() == b.len() && gcd_degree_mod(ra, rb, p) == 0
    })
}

/// Primitive gcd over Z with a positive leading coefficient.
pub fn gcd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let (mut a, mut b) = (primitive(a), primitive(b));
    if a.is_empty() {
        return b;
    }
    if b.is_empty() {
        return a;
    }
    if coprime_by_reduction(&a, &b) {
        return vec![BigInt::one()];
    }
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = primitive(&prem(&a, &b));
        a = b;
        b = r;
    }
    a
}

/// Yun's squarefree decomposition: `(multiplicity, primitive factor)` pairs
/// with pairwise coprime factors of positive degree, such that `a` equals a
/// rational constant times the product of `factor^multiplicity`.
pub fn squarefree(a: &[BigInt]) -> Vec<(usize, ZPoly)> {
    let f = primitive(a);
    if degree(&f).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let df = derivative(&f);
    let g = gcd(&f, &df);
    let mut b = div_exact(&f, &g).expect("gcd divides f");
    let mut c = div_exact(&df, &g).expect("gcd divides f'");
    let mut d = sub(&c, &derivative(&b));
    let mut out = Vec::new();
    let mut i = 1;
    while degree(&b).unwrap_or(0) > 0 {
        let h = gcd(&b, &d);
        if degree(&h).unwrap_or(0) > 0 {
            out.push((i, h.clone()));
        }
        b = div_exact(&b, &h).expect("gcd divides b");
        c = div_exact(&d, &h).expect("gcd divides d");
        d = sub(&c, &derivative(&b));
        i += 1;
    }
    out
}
