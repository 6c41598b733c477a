//! Multi-precision complex numbers over `astro_float::BigFloat`.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign, Word};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

pub const RM: RoundingMode = RoundingMode::ToEven;
pub const MIN_PREC: usize = 64;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache allocation"));
}

pub fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// `x * 2^e` without intermediate overflow.
fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
        if x.is_infinite() {
            return x;
        }
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
        if x == 0.0 {
            return x;
        }
    }
    x * 2f64.powi(e as i32)
}

/// Nearest f64 (truncated to 64 mantissa bits first); NaN for NaN, and
/// signed infinity for infinities.
pub fn to_f64(x: &BigFloat) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    let Some((m, _, sign, e, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    let top = m.last().copied().unwrap_or(0);
    if top == 0 {
        return 0.0;
    }
    // value = 0.m * 2^e, and the top word holds the leading 64 bits.
    let v = ldexp(top as f64, e as i64 - 64);
    if sign == Sign::Neg {
        -v
    } else {
        v
    }
}

/// `log2 |x|`, usable far outside the f64 exponent range; `-inf` for zero.
pub fn log2_abs(x: &BigFloat) -> f64 {
    match x.as_raw_parts() {
        Some((m, _, _, e, _)) if m.last().copied().unwrap_or(0) != 0 => {
            let top = *m.last().expect("nonempty");
            (top as f64).log2() - 64.0 + e as f64
        }
        Some(_) => f64::NEG_INFINITY,
        None => f64::NAN,
    }
}

pub fn from_bigint(n: &BigInt, p: usize) -> BigFloat {
    if n.is_zero() {
        return BigFloat::from_word(0, p);
    }
    let (sign, mag) = n.to_u64_digits();
    let words: Vec<Word> = mag.into_iter().map(|d| d as Word).collect();
    let s = if sign == num_bigint::Sign::Minus { Sign::Neg } else { Sign::Pos };
    let exact = BigFloat::from_words(&words, s, (64 * words.len()) as i32);
    exact.add(&BigFloat::from_word(0, p), p, RM)
}

pub fn from_rational(r: &BigRational, p: usize) -> BigFloat {
    let num = from_bigint(r.numer(), p + 64);
    let den = from_bigint(r.denom(), p + 64);
    num.div(&den, p, RM)
}

/// `2^e` at precision `p`.
pub fn pow2(e: i64, p: usize) -> BigFloat {
    let mut one = BigFloat::from_word(1, p);
    one.set_exponent(e as i32 + 1);
    one
}

pub fn negf(x: &BigFloat) -> BigFloat {
    let mut y = x.clone();
    y.inv_sign();
    y
}

pub fn cmp(a: &BigFloat, b: &BigFloat) -> Ordering {
    match a.cmp(b) {
        Some(c) if c < 0 => Ordering::Less,
        Some(0) => Ordering::Equal,
        Some(_) => Ordering::Greater,
        None => panic!("comparison with NaN"),
    }
}

#[derive(Clone, Debug)]
pub struct BigComplex {
    re: BigFloat,
    im: BigFloat,
    prec: usize,
}

impl PartialEq for BigComplex {
    fn eq(&self, other: &Self) -> bool {
        self.prec == other.prec && cmp(&self.re, &other.re).is_eq() && cmp(&self.im, &other.im).is_eq()
    }
}

impl BigComplex {
    pub fn new(re: BigFloat, im: BigFloat, prec: usize) -> Self {
        let prec = prec.max(MIN_PREC);
        BigComplex { re, im, prec }
    }

    pub fn zero(prec: usize) -> Self {
        Self::new(BigFloat::from_word(0, prec), BigFloat::from_word(0, prec), prec)
    }

    pub fn one(prec: usize) -> Self {
        Self::new(BigFloat::from_word(1, prec), BigFloat::from_word(0, prec), prec)
    }

    pub fn from_f64(re: f64, im: f64, prec: usize) -> Self {
        Self::new(BigFloat::from_f64(re, prec), BigFloat::from_f64(im, prec), prec)
    }

    pub fn from_c64(z: Complex64, prec: usize) -> Self {
        Self::from_f64(z.re, z.im, prec)
    }

    pub fn from_bigint(n: &BigInt, prec: usize) -> Self {
        Self::new(from_bigint(n, prec), BigFloat::from_word(0, prec), prec)
    }

    pub fn from_rational(r: &BigRational, prec: usize) -> Self {
        Self::new(from_rational(r, prec), BigFloat::from_word(0, prec), prec)
    }

    pub fn from_real(re: BigFloat, prec: usize) -> Self {
        Self::new(re, BigFloat::from_word(0, prec), prec)
    }

    pub fn re(&self) -> &BigFloat {
        &self.re
    }

    pub fn im(&self) -> &BigFloat {
        &self.im
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn with_prec(&self, prec: usize) -> Self {
        let z = BigFloat::from_word(0, prec);
        Self::new(self.re.add(&z, prec, RM), self.im.add(&z, prec, RM), prec)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), negf(&self.im), self.prec)
    }

    pub fn scale(&self, s: &BigFloat) -> Self {
        let p = self.prec;
        Self::new(self.re.mul(s, p, RM), self.im.mul(s, p, RM), p)
    }

    pub fn norm_sqr(&self) -> BigFloat {
        let p = self.prec;
        self.re.mul(&self.re, p, RM).add(&self.im.mul(&self.im, p, RM), p, RM)
    }

    pub fn abs(&self) -> BigFloat {
        self.norm_sqr().sqrt(self.prec, RM)
    }

    /// `log2 |z|` from the exponents, accurate to well under one bit.
    pub fn log2_abs(&self) -> f64 {
        let (a, b) = (log2_abs(&self.re), log2_abs(&self.im));
        let hi = a.max(b);
        if hi == f64::NEG_INFINITY {
            return hi;
        }
        hi + 0.5 * (1.0 + 2f64.powf(2.0 * (a.min(b) - hi))).log2()
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(to_f64(&self.re), to_f64(&self.im))
    }

    pub fn recip(&self) -> Self {
        let p = self.prec;
        let n = self.norm_sqr();
        Self::new(self.re.div(&n, p, RM), negf(&self.im).div(&n, p, RM), p)
    }

    pub fn powu(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.prec);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Principal `n`-th root, refined by Newton's method from the f64 value.
    pub fn nth_root(&self, n: u64) -> Self {
        assert!(n > 0, "zeroth root");
        if self.is_zero() || n == 1 {
            return self.clone();
        }
        let p = self.prec;
        let start = self.to_c64().powf(1.0 / n as f64);
        assert!(start.is_finite() && start.norm() > 0.0, "root outside the f64 range");
        let mut c = Self::from_c64(start, p);
        let nn = Self::from_bigint(&BigInt::from(n), p);
        for _ in 0..64 {
            let lower = c.powu(n - 1);
            let step = &(&(&lower * &c) - self) / &(&nn * &lower);
            c = &c - &step;
            if step.is_zero() || step.log2_abs() < c.log2_abs() - p as f64 + 4.0 {
                break;
            }
        }
        c
    }

    /// `exp(2 pi i k / m)`.
    pub fn root_of_unity(k: u64, m: u64, prec: usize) -> Self {
        let angle = std::f64::consts::TAU * (k % m) as f64 / m as f64;
        let mut z = Self::from_c64(Complex64::from_polar(1.0, angle), prec);
        let one = Self::one(prec);
        let mm = Self::from_bigint(&BigInt::from(m), prec);
        for _ in 0..64 {
            let lower = z.powu(m - 1);
            let step = &(&(&lower * &z) - &one) / &(&mm * &lower);
            z = &z - &step;
            if step.is_zero() || step.log2_abs() < -(prec as f64) + 4.0 {
                break;
            }
        }
        z
    }

    /// Decimal `re,im@prec`; parses back to the same value.
    pub fn to_tagged_string(&self) -> String {
        let (re, im) = with_consts(|cc| {
            (
                self.re.format(Radix::Dec, RM, cc).expect("finite"),
                self.im.format(Radix::Dec, RM, cc).expect("finite"),
            )
        });
        format!("{re},{im}@{}", self.prec)
    }

    pub fn parse_tagged(s: &str) -> Option<Self> {
        let (body, prec) = s.rsplit_once('@')?;
        let prec: usize = prec.trim().parse().ok()?;
        let (re, im) = body.split_once(',')?;
        let (re, im) = with_consts(|cc| {
            (
                BigFloat::parse(re.trim(), Radix::Dec, prec, RM, cc),
                BigFloat::parse(im.trim(), Radix::Dec, prec, RM, cc),
            )
        });
        (!re.is_nan() && !im.is_nan()).then(|| Self::new(re, im, prec))
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z = self.to_c64();
        write!(f, "{}{:+}i", z.re, z.im)
    }
}

impl Add for &BigComplex {
    type Output = BigComplex;
    fn add(self, o: &BigComplex) -> BigComplex {
        let p = self.prec.max(o.prec);
        BigComplex::new(self.re.add(&o.re, p, RM), self.im.add(&o.im, p, RM), p)
    }
}

impl Sub for &BigComplex {
    type Output = BigComplex;
    fn sub(self, o: &BigComplex) -> BigComplex {
        let p = self.prec.max(o.prec);
        BigComplex::new(self.re.sub(&o.re, p, RM), self.im.sub(&o.im, p, RM), p)
    }
}

impl Mul for &BigComplex {
    type Output = BigComplex;
    fn mul(self, o: &BigComplex) -> BigComplex {
        let p = self.prec.max(o.prec);
        let re = self.re.mul(&o.re, p, RM).sub(&self.im.mul(&o.im, p, RM), p, RM);
        let im = self.re.mul(&o.im, p, RM).add(&self.im.mul(&o.re, p, RM), p, RM);
        BigComplex::new(re, im, p)
    }
}

impl Div for &BigComplex {
    type Output = BigComplex;
    fn div(self, o: &BigComplex) -> BigComplex {
        let p = self.prec.max(o.prec);
        let n = o.norm_sqr();
        let re = self.re.mul(&o.re, p, RM).add(&self.im.mul(&o.im, p, RM), p, RM);
        let im = self.im.mul(&o.re, p, RM).sub(&self.re.mul(&o.im, p, RM), p, RM);
        BigComplex::new(re.div(&n, p, RM), im.div(&n, p, RM), p)
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex::new(negf(&self.re), negf(&self.im), self.prec)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for BigComplex {
            type Output = BigComplex;
            fn $m(self, o: BigComplex) -> BigComplex {
                (&self).$m(&o)
            }
        }
        impl $tr<&BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $m(self, o: &BigComplex) -> BigComplex {
                (&self).$m(o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_round_trip() {
        for x in [1.0, -0.75, 3.0, 1e-300, -6.5e200, 0.1, std::f64::consts::PI, 0.0] {
            assert_eq!(to_f64(&BigFloat::from_f64(x, 256)), x);
        }
    }

    #[test]
    fn integers_and_rationals() {
        let n: BigInt = "-123456789012345678901234567890".parse().unwrap();
        let b = from_bigint(&n, 256);
        assert!((to_f64(&b) / -1.2345678901234568e29 - 1.0).abs() < 1e-15);
        let third = from_rational(&BigRational::new(1.into(), 3.into()), 256);
        let three = BigFloat::from_word(3, 256);
        let err = third.mul(&three, 256, RM).sub(&BigFloat::from_word(1, 256), 256, RM);
        assert!(log2_abs(&err) < -250.0);
        assert_eq!(to_f64(&from_bigint(&BigInt::from(0), 128)), 0.0);
    }

    #[test]
    fn log2_far_outside_f64() {
        let tiny = pow2(-5000, 128);
        assert_eq!(log2_abs(&tiny), -5000.0);
        assert_eq!(to_f64(&tiny), 0.0);
        assert_eq!(log2_abs(&pow2(3, 128)), 3.0);
    }

    #[test]
    fn arithmetic() {
        let p = 128;
        let a = BigComplex::from_f64(1.0, 2.0, p);
        let b = BigComplex::from_f64(-3.0, 0.5, p);
        let prod = (&a * &b).to_c64();
        assert_eq!(prod, Complex64::new(-4.0, -5.5));
        let q = (&(&a * &b) / &b).to_c64();
        assert!((q - Complex64::new(1.0, 2.0)).norm() < 1e-30);
        assert_eq!(to_f64(&BigComplex::from_f64(3.0, 4.0, p).abs()), 5.0);
        assert!(((&a * &a.recip()).to_c64() - Complex64::new(1.0, 0.0)).norm() < 1e-30);
    }

    #[test]
    fn powers_and_roots() {
        let p = 256;
        let z = BigComplex::from_f64(-7.0, 24.0, p);
        let r = z.nth_root(2);
        assert!((r.to_c64() - Complex64::new(3.0, 4.0)).norm() < 1e-30);
        let back = &r.powu(2) - &z;
        assert!(back.log2_abs() < -240.0);
        let w = BigComplex::root_of_unity(1, 8, p);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((w.to_c64() - Complex64::new(s, s)).norm() < 1e-15);
        assert!((&w.powu(8) - &BigComplex::one(p)).log2_abs() < -245.0);
        assert!((&w.powu(4) + &BigComplex::one(p)).log2_abs() < -245.0);
    }

    #[test]
    fn tagged_strings_round_trip() {
        for prec in [64, 256, 1024] {
            let z = &BigComplex::from_f64(1.0, -2.0, prec) / &BigComplex::from_f64(3.0, 7.0, prec);
            let s = z.to_tagged_string();
            assert!(s.ends_with(&format!("@{prec}")));
            assert_eq!(BigComplex::parse_tagged(&s).unwrap(), z, "{s}");
        }
        assert!(BigComplex::parse_tagged("1,2").is_none());
    }
}
