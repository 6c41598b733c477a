//! Projective 2x2 matrices and homogeneous evaluation at working precision.

use std::ops::{Add, Mul, Neg, Sub};

use astro_float::BigFloat;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::roots::{cmp, from_rational, log2_abs, pow2, BigComplex, RM};
use crate::wpoly::{HomPoly, RatMatrix};

/// `[[a, b], [c, d]]` up to a nonzero scalar, stored divided by its entry of
/// largest modulus so that entry is exactly 1. Moduli within a relative
/// `2^(-prec/4)` of the largest count as ties, broken in the order a, b, c, d.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveMatrix {
    entries: [BigComplex; 4],
}

impl ProjectiveMatrix {
    /// Canonical form of `entries`; `None` when the matrix is singular to
    /// within `2^(-prec/2)` after normalization.
    pub fn new(entries: [BigComplex; 4]) -> Option<Self> {
        let prec = entries.iter().map(BigComplex::prec).max().expect("four entries");
        let abs: Vec<BigFloat> = entries.iter().map(BigComplex::abs).collect();
        let max = abs.iter().fold(BigFloat::from_word(0, prec), |m, a| m.max(a));
        if max.is_zero() {
            return None;
        }
        let slack = BigFloat::from_word(1, prec).sub(&pow2(-(prec as i64) / 4, prec), prec, RM);
        let floor = max.mul(&slack, prec, RM);
        let pivot = abs.iter().position(|a| cmp(a, &floor).is_ge()).expect("the maximum qualifies");
        let inv = entries[pivot].recip();
        let mut out = entries.map(|e| &e * &inv);
        out[pivot] = BigComplex::one(prec);
        let m = ProjectiveMatrix { entries: out };
        (m.det().log2_abs() > -(prec as f64) / 2.0).then_some(m)
    }

    pub fn identity(prec: usize) -> Self {
        let (o, z) = (BigComplex::one(prec), BigComplex::zero(prec));
        ProjectiveMatrix { entries: [o.clone(), z.clone(), z, o] }
    }

    pub fn from_rational(m: &RatMatrix, prec: usize) -> Option<Self> {
        let e = |r: usize, c: usize| BigComplex::from_rational(&m[r][c], prec);
        Self::new([e(0, 0), e(0, 1), e(1, 0), e(1, 1)])
    }

    pub fn from_c64(m: [Complex64; 4], prec: usize) -> Option<Self> {
        Self::new(m.map(|z| BigComplex::from_c64(z, prec)))
    }

    pub fn entries(&self) -> &[BigComplex; 4] {
        &self.entries
    }

    pub fn prec(&self) -> usize {
        self.entries[0].prec()
    }

    pub fn to_c64(&self) -> [Complex64; 4] {
        [0, 1, 2, 3].map(|i| self.entries[i].to_c64())
    }

    pub fn det(&self) -> BigComplex {
        let [a, b, c, d] = &self.entries;
        &(a * d) - &(b * c)
    }

    pub fn mul(&self, o: &ProjectiveMatrix) -> ProjectiveMatrix {
        let [a, b, c, d] = &self.entries;
        let [e, f, g, h] = &o.entries;
        let out = [&(a * e) + &(b * g), &(a * f) + &(b * h), &(c * e) + &(d * g), &(c * f) + &(d * h)];
        Self::new(out).expect("product of nonsingular matrices")
    }

    pub fn inverse(&self) -> ProjectiveMatrix {
        let [a, b, c, d] = &self.entries;
        Self::new([d.clone(), -b, -c, a.clone()]).expect("nonsingular")
    }

    pub fn pow(&self, k: usize) -> ProjectiveMatrix {
        (0..k).fold(Self::identity(self.prec()), |acc, _| acc.mul(self))
    }

    /// `(a x + b y, c x + d y)`.
    pub fn apply_pair(&self, x: &BigComplex, y: &BigComplex) -> (BigComplex, BigComplex) {
        let [a, b, c, d] = &self.entries;
        (&(a * x) + &(b * y), &(c * x) + &(d * y))
    }

    /// The Möbius image `(a z + b) / (c z + d)`; `None` at the pole.
    pub fn apply(&self, z: &BigComplex) -> Option<BigComplex> {
        let (num, den) = self.apply_pair(z, &BigComplex::one(z.prec()));
        (!den.is_zero()).then(|| &num / &den)
    }

    /// Largest entrywise distance between canonical forms.
    pub fn distance(&self, o: &ProjectiveMatrix) -> BigFloat {
        let prec = self.prec().max(o.prec());
        (0..4).fold(BigFloat::from_word(0, prec), |m, i| m.max(&(&self.entries[i] - &o.entries[i]).abs()))
    }

    pub fn approx_eq(&self, o: &ProjectiveMatrix, log2_tol: f64) -> bool {
        log2_abs(&self.distance(o)) <= log2_tol
    }

    pub fn is_identity(&self, log2_tol: f64) -> bool {
        self.approx_eq(&Self::identity(self.prec()), log2_tol)
    }
}

/// Null vector of the rows `[z_i, 1, -w_i z_i, -w_i]`: the Möbius map
/// `(a, b, c, d)` sending `z_i` to `w_i`, from signed 3x3 minors.
pub(crate) fn solve_triple<T>(z: [&T; 3], w: [&T; 3], one: &T) -> [T; 4]
where
    T: Clone,
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T> + Mul<&'a T, Output = T> + Neg<Output = T>,
{
    let rows: Vec<[T; 4]> = (0..3)
        .map(|i| {
            let wz = w[i] * z[i];
            [z[i].clone(), one.clone(), -&wz, -w[i]]
        })
        .collect();
    let minor = |skip: usize| {
        let cols: Vec<usize> = (0..4).filter(|&c| c != skip).collect();
        let m = |r: usize, c: usize| &rows[r][cols[c]];
        let t0 = &(m(1, 1) * m(2, 2)) - &(m(1, 2) * m(2, 1));
        let t1 = &(m(1, 0) * m(2, 2)) - &(m(1, 2) * m(2, 0));
        let t2 = &(m(1, 0) * m(2, 1)) - &(m(1, 1) * m(2, 0));
        &(&(m(0, 0) * &t0) - &(m(0, 1) * &t1)) + &(m(0, 2) * &t2)
    };
    [minor(0), -&minor(1), minor(2), -&minor(3)]
}

pub(crate) fn mobius64(g: &[Complex64; 4], z: Complex64) -> Complex64 {
    (g[0] * z + g[1]) / (g[2] * z + g[3])
}

/// Evaluates a form with real coefficients at complex points.
pub(crate) struct FormEval {
    coeffs: Vec<BigFloat>,
    prec: usize,
}

impl FormEval {
    pub fn new(p: &HomPoly, prec: usize) -> Self {
        FormEval { coeffs: p.coeffs().iter().map(|c| from_rational(c, prec)).collect(), prec }
    }

    /// `(p(X, Y), sum |c_i| |X|^(n-i) |Y|^i)`, by Horner in whichever of
    /// `Y/X`, `X/Y` has modulus at most one.
    pub fn eval(&self, x: &BigComplex, y: &BigComplex) -> (BigComplex, BigFloat) {
        let prec = self.prec;
        let n = self.coeffs.len() - 1;
        let x_dominates = cmp(&x.norm_sqr(), &y.norm_sqr()).is_ge();
        let (big, ratio) = if x_dominates { (x, y / x) } else { (y, x / y) };
        let ratio_abs = ratio.abs();
        // Horner from the far end of the coefficient list in the ratio's power.
        let order: Vec<&BigFloat> = if x_dominates { self.coeffs.iter().rev().collect() } else { self.coeffs.iter().collect() };
        let mut h = BigComplex::from_real(order[0].clone(), prec);
        let mut mag = order[0].abs();
        for c in &order[1..] {
            h = &(&h * &ratio) + &BigComplex::from_real((*c).clone(), prec);
            mag = mag.mul(&ratio_abs, prec, RM).add(&c.abs(), prec, RM);
        }
        let scale = big.powu(n as u64);
        let scale_abs = scale.abs();
        (&h * &scale, mag.mul(&scale_abs, prec, RM))
    }
}

/// Deterministic points `(s, 1)` with `|s|` in `[1/2, 2]`.
pub(crate) fn sample_points(count: usize, seed: u64, prec: usize) -> Vec<(BigComplex, BigComplex)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x51de_ab1e);
    (0..count)
        .map(|_| {
            let r = 2f64.powf(rng.gen_range(-1.0..1.0));
            let s = Complex64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU));
            (BigComplex::from_c64(s, prec), BigComplex::one(prec))
        })
        .collect()
}

/// For `p^A = lambda p`: `lambda` measured at the sample where `p` is
/// largest relative to its magnitude, and the worst `log2` of
/// `|p^A(s) - lambda p(s)| / (mag p^A(s) + |lambda| mag p(s))` over samples.
pub(crate) fn invariance_residual(
    f: &FormEval,
    a: &ProjectiveMatrix,
    samples: &[(BigComplex, BigComplex)],
    base: &[(BigComplex, BigFloat)],
) -> (BigComplex, f64) {
    let anchor = (0..base.len())
        .max_by(|&i, &j| {
            let key = |k: usize| base[k].0.log2_abs() - log2_abs(&base[k].1);
            key(i).total_cmp(&key(j))
        })
        .expect("at least one sample");
    let images: Vec<(BigComplex, BigFloat)> = samples
        .iter()
        .map(|(x, y)| {
            let (u, v) = a.apply_pair(x, y);
            f.eval(&u, &v)
        })
        .collect();
    let lambda = &images[anchor].0 / &base[anchor].0;
    let lam_abs = lambda.abs();
    let prec = f.prec;
    let worst = images
        .iter()
        .zip(base)
        .map(|((pa, ma), (pb, mb))| {
            let diff = (pa - &(&lambda * pb)).abs();
            let denom = ma.add(&lam_abs.mul(mb, prec, RM), prec, RM);
            if diff.is_zero() {
                f64::NEG_INFINITY
            } else {
                log2_abs(&diff) - log2_abs(&denom)
            }
        })
        .fold(f64::NEG_INFINITY, f64::max);
    (lambda, worst)
}

/// `lambda` and the worst relative residual of `p^A = lambda p` at `count`
/// seeded sample points.
pub fn invariance_check(p: &HomPoly, a: &ProjectiveMatrix, count: usize, seed: u64) -> (BigComplex, f64) {
    let prec = a.prec();
    let f = FormEval::new(p, prec);
    let samples = sample_points(count.max(1), seed, prec);
    let base: Vec<_> = samples.iter().map(|(x, y)| f.eval(x, y)).collect();
    invariance_residual(&f, a, &samples, &base)
}

