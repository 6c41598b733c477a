//! Certified numerical roots of binary forms.
//!
//! Roots are points `z = x/y` of `p(z, 1)`. Multiplicities come from the exact
//! squarefree decomposition; each squarefree factor is solved separately by
//! Aberth-Ehrlich iteration, first in f64 and then at the working precision.
//! A result is accepted only when the inclusion disks `|z - z_i| <= d |W_i|`
//! (Weierstrass corrections `W_i`) are separated by more than three radii.

mod bigc;

use std::f64::consts::TAU;

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::wpoly::{HomPoly, MultiplicityStructure};

pub use bigc::{cmp, negf, from_bigint, from_rational, log2_abs, pow2, to_f64, with_consts, BigComplex, MIN_PREC, RM};

pub const DEFAULT_PREC: usize = 256;
pub const MAX_PREC: usize = 4096;
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("roots could not be certified at precision up to {cap} bits")]
    PrecisionExhausted { cap: usize },
    #[error("the zero form has no roots")]
    ZeroPolynomial,
    #[error("separation needs at least two distinct finite roots")]
    TooFewRoots,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootOptions {
    pub prec: usize,
    pub max_prec: usize,
    pub seed: u64,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions { prec: DEFAULT_PREC, max_prec: MAX_PREC, seed: DEFAULT_SEED }
    }
}

impl RootOptions {
    pub fn with_prec(prec: usize) -> Self {
        RootOptions { prec, ..Self::default() }
    }
}

#[derive(Debug, Clone)]
pub struct Root {
    pub value: BigComplex,
    pub multiplicity: usize,
}

#[derive(Debug, Clone)]
pub struct RootSet {
    /// Distinct finite roots, sorted by `(re, im)`.
    pub roots: Vec<Root>,
    pub includes_zero: bool,
    /// Multiplicity of the point `(1:0)`; zero when it is not a root.
    pub infinity_multiplicity: usize,
    /// Lower bound on the distance between distinct finite roots; `None`
    /// with fewer than two of them.
    pub sep: Option<BigFloat>,
    /// Largest inclusion radius over all roots.
    pub radius: BigFloat,
    /// Largest `|f(z_i)| / sum |c_j| |z_i|^j` over all roots.
    pub residual_bound: BigFloat,
    pub prec: usize,
    pub structure: MultiplicityStructure,
}

impl RootSet {
    pub fn distinct_count(&self) -> usize {
        self.roots.len() + usize::from(self.infinity_multiplicity > 0)
    }

    pub fn values_c64(&self) -> Vec<Complex64> {
        self.roots.iter().map(|r| r.value.to_c64()).collect()
    }

    /// `log2` of the separation lower bound.
    pub fn sep_log2(&self) -> Option<f64> {
        self.sep.as_ref().map(log2_abs)
    }
}

/// Minimum distance between distinct finite roots (including zero).
pub fn pairwise_separation(rs: &RootSet) -> Result<BigFloat, RootError> {
    rs.sep.clone().ok_or(RootError::TooFewRoots)
}

pub fn find_roots(p: &HomPoly, opts: &RootOptions) -> Result<RootSet, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    let structure = MultiplicityStructure::of(p);
    let mut prec = opts.prec.max(MIN_PREC);
    loop {
        if let Some(rs) = attempt(&structure, prec, opts.seed) {
            return Ok(rs);
        }
        if prec >= opts.max_prec {
            return Err(RootError::PrecisionExhausted { cap: opts.max_prec });
        }
        prec = (prec * 2).min(opts.max_prec);
    }
}

/// Coefficients of `prod (z - z_i)^(m_i)` over the finite roots, lowest
/// degree first.
pub fn reconstruct_monic(rs: &RootSet) -> Vec<BigComplex> {
    let prec = rs.prec;
    let mut poly = vec![BigComplex::one(prec)];
    for r in &rs.roots {
        for _ in 0..r.multiplicity {
            let mut next = vec![BigComplex::zero(prec); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i + 1] = &next[i + 1] + c;
                next[i] = &next[i] - &(c * &r.value);
            }
            poly = next;
        }
    }
    poly
}

/// `max_j |r_j - u_j| / max_j |u_j|` between the rebuilt monic polynomial and
/// `p(z, 1)` divided by its leading coefficient.
pub fn reconstruction_error(p: &HomPoly, rs: &RootSet) -> BigFloat {
    let prec = rs.prec;
    let mut u: Vec<BigRational> = p.coeffs().iter().rev().cloned().collect();
    while u.last().is_some_and(Zero::is_zero) {
        u.pop();
    }
    let lead = u.last().expect("nonzero form").clone();
    let target: Vec<BigComplex> = u.iter().map(|c| BigComplex::from_rational(&(c / &lead), prec)).collect();
    let rebuilt = reconstruct_monic(rs);
    assert_eq!(rebuilt.len(), target.len(), "root multiplicities must sum to the degree");
    let mut num = BigFloat::from_word(0, prec);
    let mut den = BigFloat::from_word(0, prec);
    for (r, t) in rebuilt.iter().zip(&target) {
        num = num.max(&(r - t).abs());
        den = den.max(&t.abs());
    }
    num.div(&den, prec, RM)
}

fn attempt(s: &MultiplicityStructure, prec: usize, seed: u64) -> Option<RootSet> {
    let mut roots = Vec::new();
    let mut radius = BigFloat::from_word(0, prec);
    let mut residual = BigFloat::from_word(0, prec);
    if s.zero_multiplicity > 0 {
        roots.push(Root { value: BigComplex::zero(prec), multiplicity: s.zero_multiplicity });
    }
    for (idx, (mult, g)) in s.factors.iter().enumerate() {
        let solved = solve_factor(g, prec, seed.wrapping_add(idx as u64))?;
        for z in solved.roots {
            roots.push(Root { value: z, multiplicity: *mult });
        }
        radius = radius.max(&solved.radius);
        residual = residual.max(&solved.residual);
    }
    roots.sort_by(|a, b| cmp(a.value.re(), b.value.re()).then_with(|| cmp(a.value.im(), b.value.im())));

    let sep = if roots.len() >= 2 {
        let mut best: Option<BigFloat> = None;
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                let d = (&roots[i].value - &roots[j].value).abs();
                if best.as_ref().map_or(true, |b| cmp(&d, b).is_lt()) {
                    best = Some(d);
                }
            }
        }
        let raw = best.expect("at least one pair");
        let two_r = radius.add(&radius, prec, RM);
        // Distinct roots must be resolved: sep > 3 * radius.
        let three_r = two_r.add(&radius, prec, RM);
        if !cmp(&raw, &three_r).is_gt() {
            return None;
        }
        Some(raw.sub(&two_r, prec, RM))
    } else {
        None
    };

    Some(RootSet {
        roots,
        includes_zero: s.zero_multiplicity > 0,
        infinity_multiplicity: s.infinity_multiplicity,
        sep,
        radius,
        residual_bound: residual,
        prec,
        structure: s.clone(),
    })
}

struct Solved {
    roots: Vec<BigComplex>,
    radius: BigFloat,
    residual: BigFloat,
}

/// Positive root of `|c_d| x^d = sum_{j<d} |c_j| x^j`, in f64.
fn cauchy_bound(g: &[BigInt]) -> f64 {
    let d = g.len() - 1;
    let logs: Vec<f64> = g.iter().map(|c| log2_big(c)).collect();
    // h(t) = log|c_d| + d t - log sum |c_j| 2^(j t), increasing in t where it crosses zero.
    let h = |t: f64| {
        let terms: Vec<f64> = (0..d).filter(|&j| logs[j].is_finite()).map(|j| logs[j] + j as f64 * t).collect();
        let m = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let lse = m + terms.iter().map(|x| (x - m).exp2()).sum::<f64>().log2();
        logs[d] + d as f64 * t - lse
    };
    let (mut lo, mut hi) = (-64.0, 64.0);
    while h(lo) > 0.0 {
        lo *= 2.0;
    }
    while h(hi) < 0.0 {
        hi *= 2.0;
    }
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if h(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi.exp2()
}

fn log2_big(c: &BigInt) -> f64 {
    if c.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = c.bits();
    if bits <= 1000 {
        c.abs().to_f64().expect("in range").log2()
    } else {
        let shifted: BigInt = c.abs() >> (bits - 64);
        shifted.to_f64().expect("in range").log2() + (bits - 64) as f64
    }
}

fn initial_points(g: &[BigInt], seed: u64) -> Vec<Complex64> {
    let d = g.len() - 1;
    let r = cauchy_bound(g);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..d)
        .map(|k| {
            let phase = TAU * (k as f64 + rng.gen_range(0.1..0.4)) / d as f64;
            let rad = r * rng.gen_range(0.9..1.0);
            Complex64::from_polar(rad, phase)
        })
        .collect()
}

/// `f / f'` at `z` in f64, via the reversed polynomial when `|z| > 1`.
fn newton_ratio_f64(c: &[f64], z: Complex64) -> Complex64 {
    let d = c.len() - 1;
    if z.norm() <= 1.0 {
        let (mut f, mut df) = (Complex64::new(c[d], 0.0), Complex64::new(0.0, 0.0));
        for j in (0..d).rev() {
            df = df * z + f;
            f = f * z + c[j];
        }
        f / df
    } else {
        let w = z.inv();
        let (mut g, mut dg) = (Complex64::new(c[0], 0.0), Complex64::new(0.0, 0.0));
        for j in 1..=d {
            dg = dg * w + g;
            g = g * w + c[j];
        }
        z * g / (g * d as f64 - w * dg)
    }
}

fn aberth_f64(g: &[BigInt], mut z: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let top = log2_big(g.last().expect("nonempty"));
    // Scale by the leading coefficient so large coefficient vectors fit in f64.
    let c: Vec<f64> = g.iter().map(|x| if x.is_zero() { 0.0 } else { x.signum().to_f64().unwrap() * (log2_big(x) - top).exp2() }).collect();
    if c.iter().any(|x| !x.is_finite()) {
        return None;
    }
    let d = z.len();
    for _ in 0..2000 {
        let mut worst: f64 = 0.0;
        for i in 0..d {
            let n = newton_ratio_f64(&c, z[i]);
            let s: Complex64 = (0..d).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let w = n / (Complex64::new(1.0, 0.0) - n * s);
            if !w.is_finite() {
                return None;
            }
            z[i] -= w;
            worst = worst.max(w.norm() / z[i].norm().max(f64::MIN_POSITIVE));
        }
        if worst < 1e-14 {
            break;
        }
    }
    z.iter().all(|x| x.is_finite()).then_some(z)
}

/// Prepares f64 iterates for the multi-precision phase. Points f64 could not
/// tell apart are pulled apart, and every point gets a tiny random offset:
/// conjugate-symmetric iterates cannot split a cluster of real roots.
fn desymmetrize(z: &mut [Complex64], seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    for i in 0..z.len() {
        let scale = z[i].norm().max(1e-300);
        z[i] += Complex64::from_polar(1e-12 * scale, rng.gen_range(0.0..TAU));
        while (0..i).any(|j| (z[i] - z[j]).norm() <= 1e-9 * scale) {
            z[i] += Complex64::from_polar(1e-8 * scale, rng.gen_range(0.0..TAU));
        }
    }
}

/// Horner evaluation of `g` and `g'` at `z`, plus `sum |c_j| |z|^j`.
fn eval_big(c: &[BigFloat], z: &BigComplex, prec: usize) -> (BigComplex, BigComplex, BigFloat) {
    let d = c.len() - 1;
    let zr = z.abs();
    let mut f = BigComplex::from_real(c[d].clone(), prec);
    let mut df = BigComplex::zero(prec);
    let mut mag = c[d].abs();
    for j in (0..d).rev() {
        df = &(&df * z) + &f;
        f = &(&f * z) + &BigComplex::from_real(c[j].clone(), prec);
        mag = mag.mul(&zr, prec, RM).add(&c[j].abs(), prec, RM);
    }
    (f, df, mag)
}

fn solve_factor(g: &[BigInt], prec: usize, seed: u64) -> Option<Solved> {
    let d = g.len() - 1;
    let zero = BigFloat::from_word(0, prec);
    if d == 1 {
        let z = BigComplex::from_rational(&BigRational::new(-g[0].clone(), g[1].clone()), prec);
        let r = z.abs().mul(&pow2(-(prec as i64) + 1, prec), prec, RM);
        return Some(Solved { roots: vec![z], radius: r, residual: zero });
    }
    let init = initial_points(g, seed);
    let mut warm = aberth_f64(g, init.clone()).unwrap_or(init);
    desymmetrize(&mut warm, seed);
    let c: Vec<BigFloat> = g.iter().map(|x| from_bigint(x, prec)).collect();
    let mut z: Vec<BigComplex> = warm.iter().map(|w| BigComplex::from_c64(*w, prec)).collect();

    let target = -(prec as f64) / 2.0;
    let mut polish = 0;
    let max_iter = 200 + 2 * d;
    let mut converged = false;
    let (mut best, mut stalled) = (f64::INFINITY, 0);
    for _ in 0..max_iter {
        let mut worst = f64::NEG_INFINITY;
        for i in 0..d {
            let (f, df, _) = eval_big(&c, &z[i], prec);
            if f.is_zero() {
                continue;
            }
            let n = &f / &df;
            let mut s = BigComplex::zero(prec);
            for j in 0..d {
                if j != i {
                    s = &s + &(&z[i] - &z[j]).recip();
                }
            }
            let denom = &BigComplex::one(prec) - &(&n * &s);
            let w = &n / &denom;
            let rel = w.log2_abs() - z[i].log2_abs();
            if rel.is_nan() {
                return None;
            }
            worst = worst.max(rel);
            z[i] = &z[i] - &w;
        }
        // Corrections stuck at the rounding floor mean the precision is too low.
        if worst < best - 1.0 {
            best = worst;
            stalled = 0;
        } else {
            stalled += 1;
            if stalled > 25 && worst > target {
                return None;
            }
        }
        if worst < target {
            polish += 1;
            if polish >= 2 {
                converged = true;
                break;
            }
        }
    }
    if !converged {
        return None;
    }

    // Inclusion radii d * (|g(z_i)| + rounding) / |lc * prod (z_i - z_j)|.
    let lc = c[d].abs();
    let unit = pow2(-(prec as i64) + 2 + (usize::BITS - d.leading_zeros()) as i64, prec);
    let dd = BigFloat::from_word(d as u64, prec);
    let mut radius = zero.clone();
    let mut residual = zero.clone();
    for i in 0..d {
        let (f, _, mag) = eval_big(&c, &z[i], prec);
        let mut prod = lc.clone();
        for j in 0..d {
            if j != i {
                prod = prod.mul(&(&z[i] - &z[j]).abs(), prec, RM);
            }
        }
        let fa = f.abs();
        let err = mag.mul(&unit, prec, RM);
        let r = fa.add(&err, prec, RM).mul(&dd, prec, RM).div(&prod, prec, RM);
        radius = radius.max(&r);
        if !mag.is_zero() {
            residual = residual.max(&fa.div(&mag, prec, RM));
        }
    }
    Some(Solved { roots: z, radius, residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hp(c: &[i64]) -> HomPoly {
        HomPoly::from_integers(c)
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-30_f64.max(1e-25 * b.norm())
    }

    #[test]
    fn plus_minus_i() {
        let rs = find_roots(&hp(&[1, 0, 1]), &RootOptions::default()).unwrap();
        let v = rs.values_c64();
        assert_eq!(v.len(), 2);
        assert!(close(v[0], Complex64::new(0.0, -1.0)) && close(v[1], Complex64::new(0.0, 1.0)));
        assert!((to_f64(&pairwise_separation(&rs).unwrap()) - 2.0).abs() < 1e-20);
    }

    #[test]
    fn repeated_root() {
        let rs = find_roots(&hp(&[1, 4, 6, 4, 1]), &RootOptions::default()).unwrap();
        assert_eq!(rs.roots.len(), 1);
        assert_eq!(rs.roots[0].multiplicity, 4);
        assert!(close(rs.roots[0].value.to_c64(), Complex64::new(-1.0, 0.0)));
        assert_eq!(pairwise_separation(&rs).unwrap_err(), RootError::TooFewRoots);
    }

    #[test]
    fn hamming8_roots_are_fourth_roots() {
        let rs = find_roots(&hp(&[1, 0, 0, 0, 14, 0, 0, 0, 1]), &RootOptions::default()).unwrap();
        assert_eq!(rs.roots.len(), 8);
        let s3 = 3f64.sqrt();
        // z^4 = -7 +- 4 sqrt 3 (both negative reals).
        for r in &rs.roots {
            let z4 = r.value.to_c64().powu(4);
            let ok = [-7.0 + 4.0 * s3, -7.0 - 4.0 * s3].iter().any(|t| (z4.re - t).abs() < 1e-12 && z4.im.abs() < 1e-12);
            assert!(ok, "{z4}");
            assert_eq!(r.multiplicity, 1);
        }
        assert!(log2_abs(&reconstruction_error(&hp(&[1, 0, 0, 0, 14, 0, 0, 0, 1]), &rs)) < -200.0);
    }

    #[test]
    fn x4_plus_y4_separation() {
        let rs = find_roots(&hp(&[1, 0, 0, 0, 1]), &RootOptions::default()).unwrap();
        assert!((to_f64(&rs.sep.unwrap()) - 2f64.sqrt()).abs() < 1e-20);
    }

    #[test]
    fn zero_and_infinity() {
        // y (x - 2y) x^2 = x^3 y - 2 x^2 y^2
        let p = hp(&[0, 1, -2, 0, 0]);
        let rs = find_roots(&p, &RootOptions::default()).unwrap();
        assert!(rs.includes_zero);
        assert_eq!(rs.infinity_multiplicity, 1);
        assert_eq!(rs.roots.len(), 2);
        assert_eq!(rs.roots[0].multiplicity, 2);
        assert!(rs.roots[0].value.is_zero());
        assert!(close(rs.roots[1].value.to_c64(), Complex64::new(2.0, 0.0)));
        assert_eq!(rs.distinct_count(), 3);
    }

    #[test]
    fn deterministic_for_a_seed() {
        let p = hp(&[1, 0, 264, 0, 440, 0, 24, 5, 3]);
        let a = find_roots(&p, &RootOptions::default()).unwrap();
        let b = find_roots(&p, &RootOptions::default()).unwrap();
        for (x, y) in a.roots.iter().zip(&b.roots) {
            assert_eq!(x.value, y.value);
        }
    }

    #[test]
    fn close_roots_force_escalation() {
        // (z - 1)(z - 1 - 2^-200): inseparable at 256 bits.
        let a: BigInt = BigInt::from(1) << 200u32;
        let b: BigInt = &a + 1;
        let p = HomPoly::from_integers(&[a.clone(), -(&a + &b) as BigInt, b]);
        // p(z,1) = a z^2 - (a + b) z + b, roots 1 and b/a.
        let rs = find_roots(&p, &RootOptions::default()).unwrap();
        assert!(rs.prec > 256);
        let capped = RootOptions { prec: 128, max_prec: 128, seed: DEFAULT_SEED };
        assert_eq!(find_roots(&p, &capped).unwrap_err(), RootError::PrecisionExhausted { cap: 128 });
    }
}
