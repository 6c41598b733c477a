//! Exact homogeneous bivariate polynomials `sum c_i x^(n-i) y^i`.

pub mod upoly;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::code::WeightEnumerator;
use upoly::ZPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("substitution matrix is singular")]
    SingularMatrix,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Exact 2x2 matrix `[[a, b], [c, d]]`.
pub type RatMatrix = [[BigRational; 2]; 2];

pub fn rat_matrix(entries: [[i64; 2]; 2]) -> RatMatrix {
    entries.map(|row| row.map(|e| BigRational::from_integer(e.into())))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomPoly {
    /// `coeffs[i]` multiplies `x^(n-i) y^i`.
    coeffs: Vec<BigRational>,
}

impl HomPoly {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "degree n needs n + 1 coefficients");
        HomPoly { coeffs }
    }

    pub fn from_integers<T: Into<BigInt> + Clone>(coeffs: &[T]) -> Self {
        Self::new(coeffs.iter().map(|c| BigRational::from_integer(c.clone().into())).collect())
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![BigRational::zero(); n + 1])
    }

    /// `x^(n-i) y^i`.
    pub fn monomial(n: usize, i: usize) -> Self {
        let mut p = Self::zero(n);
        p.coeffs[i] = BigRational::one();
        p
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigRational {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, s: &BigRational) -> HomPoly {
        HomPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &HomPoly) -> HomPoly {
        assert_eq!(self.degree(), other.degree(), "sum of forms of different degree");
        HomPoly::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &HomPoly) -> HomPoly {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn product(&self, other: &HomPoly) -> HomPoly {
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        HomPoly::new(out)
    }

    pub fn pow(&self, e: usize) -> HomPoly {
        let mut acc = HomPoly::from_integers(&[1]);
        for _ in 0..e {
            acc = acc.product(self);
        }
        acc
    }

    /// `(L, P)` with `self = P / L`, `L` the positive lcm of the denominators.
    pub fn to_integer_form(&self) -> (BigInt, Vec<BigInt>) {
        let l = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = self.coeffs.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
        (l, ints)
    }

    /// Integer coefficients, when all are integral.
    pub fn as_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    /// `p(ax + by, cx + dy)`.
    pub fn substitute_exact(&self, m: &RatMatrix) -> Result<HomPoly, PolyError> {
        let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
        if det.is_zero() {
            return Err(PolyError::SingularMatrix);
        }
        let den = m.iter().flatten().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
        let int = |e: &BigRational| (e * BigRational::from_integer(den.clone())).to_integer();
        let (l, ints) = self.to_integer_form();
        let out = substitute_integer(&ints, [[int(&m[0][0]), int(&m[0][1])], [int(&m[1][0]), int(&m[1][1])]]);
        let scale = BigRational::new(BigInt::one(), l * den.pow(self.degree() as u32));
        Ok(HomPoly::new(out.into_iter().map(|c| BigRational::from_integer(c) * &scale).collect()))
    }

    /// `p(z, 1)` as an integer polynomial in `z` (lowest degree first), up to
    /// the positive factor `L`.
    pub fn dehomogenize(&self) -> ZPoly {
        let (_, mut ints) = self.to_integer_form();
        ints.reverse();
        upoly::trim(&mut ints);
        ints
    }

    /// Homogenizes `f(z)` to degree `n`: `y^n f(x / y)`.
    pub fn homogenize(f: &[BigInt], n: usize) -> HomPoly {
        assert!(f.len() <= n + 1, "degree exceeds the target degree");
        let mut c = vec![BigRational::zero(); n + 1];
        for (j, a) in f.iter().enumerate() {
            c[n - j] = BigRational::from_integer(a.clone());
        }
        HomPoly::new(c)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.degree());
        for c in &self.coeffs {
            s.push_str(&format!("{}/{}\n", c.numer(), c.denom()));
        }
        s
    }

    /// Parses the text format: the degree, then `n + 1` coefficients `p/q`
    /// (or integers), one per line. Blank and `#` lines are ignored.
    pub fn parse(text: &str) -> Result<HomPoly, PolyError> {
        let err = |line, message: String| PolyError::Parse { line, message };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hl, head) = lines.next().ok_or_else(|| err(1, "missing degree".into()))?;
        let n: usize = head.parse().map_err(|_| err(hl, format!("expected a degree, found `{head}`")))?;
        let mut coeffs = Vec::with_capacity(n + 1);
        for (line, tok) in lines {
            if coeffs.len() == n + 1 {
                return Err(err(line, "more coefficients than degree + 1".into()));
            }
            coeffs.push(parse_rational(tok).ok_or_else(|| err(line, format!("expected a rational `p/q`, found `{tok}`")))?);
        }
        if coeffs.len() != n + 1 {
            return Err(err(text.lines().count() + 1, format!("expected {} coefficients, found {}", n + 1, coeffs.len())));
        }
        Ok(HomPoly::new(coeffs))
    }
}

pub fn parse_rational(tok: &str) -> Option<BigRational> {
    match tok.split_once('/') {
        Some((p, q)) => {
            let q: BigInt = q.trim().parse().ok()?;
            (!q.is_zero()).then_some(())?;
            Some(BigRational::new(p.trim().parse().ok()?, q))
        }
        None => Some(BigRational::from_integer(tok.parse().ok()?)),
    }
}

impl From<&WeightEnumerator> for HomPoly {
    fn from(w: &WeightEnumerator) -> Self {
        HomPoly::from_integers(&w.to_bigints())
    }
}

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let power = |v: &str, e: usize| match e {
                0 => String::new(),
                1 => v.to_string(),
                e => format!("{v}^{e}"),
            };
            let mono = [power("x", n - i), power("y", i)]
                .into_iter()
                .filter(|s| !s.is_empty())
                .collect::<Vec<_>>()
                .join("*");
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (a.is_one(), mono.is_empty()) {
                (true, false) => write!(f, "{mono}")?,
                (_, true) => write!(f, "{a}")?,
                (false, false) => write!(f, "{a}*{mono}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `p(ax + by, cx + dy)` over Z by homogeneous Horner:
/// `h_k = h_{k-1} * U + c_k V^k` with `U = ax + by`, `V = cx + dy`.
fn substitute_integer(c: &[BigInt], m: [[BigInt; 2]; 2]) -> Vec<BigInt> {
    let n = c.len() - 1;
    let [[a, b], [cc, d]] = m;
    let mut vpow: Vec<BigInt> = vec![BigInt::one()];
    let mut h: Vec<BigInt> = vec![c[0].clone()];
    for ck in &c[1..] {
        // h <- h * (a x + b y)
        let mut next = vec![BigInt::zero(); h.len() + 1];
        for (i, t) in h.iter().enumerate() {
            if t.is_zero() {
                continue;
            }
            next[i] += t * &a;
            next[i + 1] += t * &b;
        }
        // vpow <- vpow * (c x + d y)
        let mut vn = vec![BigInt::zero(); vpow.len() + 1];
        for (i, t) in vpow.iter().enumerate() {
            vn[i] += t * &cc;
            vn[i + 1] += t * &d;
        }
        vpow = vn;
        if !ck.is_zero() {
            for (x, v) in next.iter_mut().zip(&vpow) {
                *x += ck * v;
            }
        }
        h = next;
    }
    debug_assert_eq!(h.len(), n + 1);
    h
}

/// Exact root-multiplicity data of a nonzero form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityStructure {
    pub distinct_count: usize,
    /// Sorted in decreasing order; sums to the degree.
    pub multiplicities: Vec<usize>,
    pub squarefree_part: HomPoly,
    /// Squarefree factors of `p(z, 1) / z^e`, as `(multiplicity, primitive
    /// polynomial in z)`; every factor has a nonzero constant term.
    pub factors: Vec<(usize, ZPoly)>,
    /// Multiplicity of `(0:1)`, i.e. of the factor `x`.
    pub zero_multiplicity: usize,
    /// Multiplicity of `(1:0)`, i.e. of the factor `y`.
    pub infinity_multiplicity: usize,
}

impl MultiplicityStructure {
    pub fn of(p: &HomPoly) -> MultiplicityStructure {
        assert!(!p.is_zero(), "the zero form has no root structure");
        let n = p.degree();
        let infinity = p.coeffs.iter().take_while(|c| c.is_zero()).count();
        let zero = p.coeffs.iter().rev().take_while(|c| c.is_zero()).count();
        let mut f = p.dehomogenize();
        f.drain(..zero);
        let factors = upoly::squarefree(&f);

        let mut multiplicities: Vec<usize> = Vec::new();
        let mut sqf: ZPoly = vec![BigInt::one()];
        for (mult, g) in &factors {
            let d = upoly::degree(g).expect("nonzero factor");
            multiplicities.extend(std::iter::repeat(*mult).take(d));
            sqf = upoly::mul(&sqf, g);
        }
        let finite_distinct = upoly::degree(&sqf).unwrap_or(0);
        if zero > 0 {
            multiplicities.push(zero);
            sqf.insert(0, BigInt::zero());
        }
        let mut distinct = finite_distinct + usize::from(zero > 0);
        if infinity > 0 {
            multiplicities.push(infinity);
            distinct += 1;
        }
        multiplicities.sort_unstable_by(|a, b| b.cmp(a));
        debug_assert_eq!(multiplicities.iter().sum::<usize>(), n);
        MultiplicityStructure {
            distinct_count: distinct,
            multiplicities,
            squarefree_part: HomPoly::homogenize(&sqf, distinct),
            factors,
            zero_multiplicity: zero,
            infinity_multiplicity: infinity,
        }
    }
}

pub fn multiplicity_structure(p: &HomPoly) -> MultiplicityStructure {
    MultiplicityStructure::of(p)
}

/// `w(x + (q-1)y, x - y) == q^(n/2) w(x, y)`, decided exactly.
pub fn is_formally_self_dual(w: &WeightEnumerator, q: u64) -> bool {
    let n = w.degree();
    let root_q = (q as f64).sqrt().round() as u64;
    let scale = if n % 2 == 0 {
        BigInt::from(q).pow((n / 2) as u32)
    } else if root_q * root_q == q {
        BigInt::from(root_q).pow(n as u32)
    } else {
        return false;
    };
    let m = [
        [BigInt::one(), BigInt::from(q - 1)],
        [BigInt::one(), -BigInt::one()],
    ];
    let lhs = substitute_integer(&w.to_bigints(), m);
    lhs.iter().zip(w.coeffs()).all(|(l, a)| *l == &scale * BigInt::from(a.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hp(c: &[i64]) -> HomPoly {
        HomPoly::from_integers(c)
    }

    fn h8() -> HomPoly {
        hp(&[1, 0, 0, 0, 14, 0, 0, 0, 1])
    }

    #[test]
    fn products() {
        let s = hp(&[1, 0, 1]);
        assert_eq!(s.product(&s), hp(&[1, 0, 2, 0, 1]));
        assert_eq!(hp(&[1, 1]).product(&hp(&[1, -1])), hp(&[1, 0, -1]));
        assert_eq!(s.pow(3), hp(&[1, 0, 3, 0, 3, 0, 1]));
    }

    #[test]
    fn substitutions() {
        let id = rat_matrix([[1, 0], [0, 1]]);
        assert_eq!(h8().substitute_exact(&id).unwrap(), h8());
        let swap = rat_matrix([[0, 1], [1, 0]]);
        assert_eq!(hp(&[1, 0, 1]).substitute_exact(&swap).unwrap(), hp(&[1, 0, 1]));
        let had = rat_matrix([[1, 1], [1, -1]]);
        assert_eq!(h8().substitute_exact(&had).unwrap(), h8().scale(&BigRational::from_integer(16.into())));
        assert_eq!(h8().substitute_exact(&rat_matrix([[1, 2], [2, 4]])), Err(PolyError::SingularMatrix));
    }

    #[test]
    fn substitution_matches_direct_expansion() {
        // (x + 2y)^2 (3x - y) under [[1, -1], [2, 5]], expanded factor by factor.
        let p = hp(&[1, 2]).pow(2).product(&hp(&[3, -1]));
        let m = rat_matrix([[1, -1], [2, 5]]);
        let lin = |a: i64, b: i64| hp(&[a + 2 * b, -a + 5 * b]);
        let expected = lin(1, 2).pow(2).product(&lin(3, -1));
        assert_eq!(p.substitute_exact(&m).unwrap(), expected);
    }

    #[test]
    fn rational_substitution_composes() {
        let half = BigRational::new(1.into(), 2.into());
        let g: RatMatrix = [[half.clone(), BigRational::one()], [BigRational::zero(), -half.clone()]];
        let h = rat_matrix([[2, 1], [1, 1]]);
        let gh = [
            [&g[0][0] * &h[0][0] + &g[0][1] * &h[1][0], &g[0][0] * &h[0][1] + &g[0][1] * &h[1][1]],
            [&g[1][0] * &h[0][0] + &g[1][1] * &h[1][0], &g[1][0] * &h[0][1] + &g[1][1] * &h[1][1]],
        ];
        let p = hp(&[1, 3, 0, -2, 5]);
        let lhs = p.substitute_exact(&gh).unwrap();
        let rhs = p.substitute_exact(&g).unwrap().substitute_exact(&h).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn structures() {
        let s = MultiplicityStructure::of(&hp(&[1, 4, 6, 4, 1]));
        assert_eq!((s.distinct_count, s.multiplicities.clone()), (1, vec![4]));
        assert_eq!(s.squarefree_part, hp(&[1, 1]));
        let s = MultiplicityStructure::of(&h8());
        assert_eq!((s.distinct_count, s.multiplicities), (8, vec![1; 8]));
        // x^3 y^2
        let s = MultiplicityStructure::of(&hp(&[0, 0, 1, 0, 0, 0]));
        assert_eq!((s.distinct_count, s.multiplicities.clone()), (2, vec![3, 2]));
        assert_eq!((s.zero_multiplicity, s.infinity_multiplicity), (3, 2));
        assert_eq!(s.squarefree_part, hp(&[0, 1, 0]));
    }

    #[test]
    fn formal_self_duality() {
        assert!(is_formally_self_dual(&WeightEnumerator::from_counts(&[1, 0, 0, 0, 14, 0, 0, 0, 1]), 2));
        for q in [2u64, 3, 4, 5, 7] {
            assert!(is_formally_self_dual(&WeightEnumerator::sum_of_pairs(q, 3), q));
        }
        // RM_2(1,4): 1 + 30 y^8 + y^16
        let mut c = vec![0u64; 17];
        c[0] = 1;
        c[8] = 30;
        c[16] = 1;
        assert!(!is_formally_self_dual(&WeightEnumerator::from_counts(&c), 2));
        // Odd length over a square field: F_4^1 has dual {0}.
        assert!(!is_formally_self_dual(&WeightEnumerator::from_counts(&[1, 3]), 4));
        assert!(!is_formally_self_dual(&WeightEnumerator::from_counts(&[1, 1]), 2));
    }

    #[test]
    fn text_round_trip() {
        let p = HomPoly::new(vec![
            BigRational::new(1.into(), 2.into()),
            BigRational::zero(),
            BigRational::from_integer((-7).into()),
        ]);
        assert_eq!(HomPoly::parse(&p.to_text()).unwrap(), p);
        assert_eq!(HomPoly::parse("2\n1\n0\n1\n").unwrap(), hp(&[1, 0, 1]));
        assert!(matches!(HomPoly::parse("2\n1\n0\n"), Err(PolyError::Parse { line: 4, .. })));
        assert!(matches!(HomPoly::parse("1\n1\nx\n"), Err(PolyError::Parse { line: 3, .. })));
        assert!(matches!(HomPoly::parse("1\n1/0\n1\n"), Err(PolyError::Parse { line: 2, .. })));
    }

    #[test]
    fn display() {
        assert_eq!(hp(&[1, 0, -1]).to_string(), "x^2 - y^2");
        assert_eq!(hp(&[-2, 1]).to_string(), "-2*x + y");
    }
}
