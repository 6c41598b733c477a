//! Membership of a form in the ring generated by two homogeneous forms, by
//! exact linear algebra over the rationals.

pub mod rm4;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::code::{named_code, weight_enumerator, NamedCode, DEFAULT_BUDGET};
use crate::wpoly::HomPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("no a, b >= 0 with {d1} a + {d2} b = {degree}")]
    DegreeMismatch { degree: usize, d1: usize, d2: usize },
    #[error("the form is not in the ring generated by f1 and f2")]
    NotMember,
    #[error("generators must be nonzero forms of positive degree")]
    BadGenerator,
}

/// `p = sum coeff f1^a f2^b` over `terms`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantDecomposition {
    pub f1: HomPoly,
    pub f2: HomPoly,
    pub terms: Vec<(usize, usize, BigRational)>,
    pub degree: usize,
    /// The monomials `f1^a f2^b` of this degree are linearly independent.
    pub unique: bool,
}

impl InvariantDecomposition {
    pub fn reconstruct(&self) -> HomPoly {
        self.terms.iter().fold(HomPoly::zero(self.degree), |acc, (a, b, c)| acc.add(&self.f1.pow(*a).product(&self.f2.pow(*b)).scale(c)))
    }
}

/// Solutions of `a d1 + b d2 = n` with `a, b >= 0`, by increasing `a`.
pub fn exponent_pairs(n: usize, d1: usize, d2: usize) -> Vec<(usize, usize)> {
    (0..=n / d1).filter(|a| (n - a * d1) % d2 == 0).map(|a| (a, (n - a * d1) / d2)).collect()
}

/// Expresses `p` in `f1, f2`. Columns are the monomials `f1^a f2^b` by
/// increasing `a`; when they are dependent, later dependent columns get
/// coefficient zero, so the support is lexicographically smallest.
pub fn decompose(p: &HomPoly, f1: &HomPoly, f2: &HomPoly) -> Result<InvariantDecomposition, DecomposeError> {
    let (d1, d2) = (f1.degree(), f2.degree());
    if d1 == 0 || d2 == 0 || f1.is_zero() || f2.is_zero() {
        return Err(DecomposeError::BadGenerator);
    }
    let n = p.degree();
    let pairs = exponent_pairs(n, d1, d2);
    if pairs.is_empty() {
        return Err(DecomposeError::DegreeMismatch { degree: n, d1, d2 });
    }
    let powers1: Vec<HomPoly> = successive_powers(f1, pairs.iter().map(|t| t.0).max().unwrap_or(0));
    let powers2: Vec<HomPoly> = successive_powers(f2, pairs.iter().map(|t| t.1).max().unwrap_or(0));
    let columns: Vec<HomPoly> = pairs.iter().map(|&(a, b)| powers1[a].product(&powers2[b])).collect();

    // Row i: coefficient of x^(n-i) y^i, with denominators cleared.
    let rows: Vec<Vec<BigInt>> = (0..=n)
        .map(|i| {
            let mut row: Vec<BigRational> = columns.iter().map(|c| c.coeff(i).clone()).collect();
            row.push(p.coeff(i).clone());
            let lcm = row.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
            row.iter().map(|r| (r * BigRational::from_integer(lcm.clone())).to_integer()).collect()
        })
        .collect();
    let (echelon, pivots) = bareiss(rows, columns.len());
    if echelon.iter().skip(pivots.len()).any(|row| !row[columns.len()].is_zero()) {
        return Err(DecomposeError::NotMember);
    }

    let mut x = vec![BigRational::zero(); columns.len()];
    for (r, &c) in pivots.iter().enumerate().rev() {
        let row = &echelon[r];
        let mut rhs = BigRational::from_integer(row[columns.len()].clone());
        for (j, xj) in x.iter().enumerate().skip(c + 1) {
            if !xj.is_zero() {
                rhs -= BigRational::from_integer(row[j].clone()) * xj;
            }
        }
        x[c] = rhs / BigRational::from_integer(row[c].clone());
    }
    let terms = pairs.iter().zip(x).filter(|(_, c)| !c.is_zero()).map(|(&(a, b), c)| (a, b, c)).collect();
    Ok(InvariantDecomposition { f1: f1.clone(), f2: f2.clone(), terms, degree: n, unique: pivots.len() == columns.len() })
}

fn successive_powers(f: &HomPoly, max: usize) -> Vec<HomPoly> {
    let mut out = vec![HomPoly::from_integers(&[1])];
    for _ in 0..max {
        let next = out.last().expect("nonempty").product(f);
        out.push(next);
    }
    out
}

/// Fraction-free row echelon form of the augmented matrix `rows` (the last
/// column is the right-hand side, never a pivot). Every entry stays a minor
/// of the input, so each division by the previous pivot is exact.
fn bareiss(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, k);
        let (top, rest) = rows.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..=ncols {
                let v = &pivot_row[c] * &row[j] - &lead * &pivot_row[j];
                debug_assert!((&v % &prev).is_zero());
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot_row[c].clone();
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    (rows, pivots)
}

/// Hamming `[8,4,4]` and Golay `[24,12,8]` enumerators, which generate the
/// ring containing every doubly-even self-dual binary enumerator.
pub fn gleason_generators() -> (HomPoly, HomPoly) {
    let f1 = HomPoly::from_integers(&[1, 0, 0, 0, 14, 0, 0, 0, 1]);
    let golay = named_code(&NamedCode::Golay24).expect("catalog code");
    let f2 = HomPoly::from(&weight_enumerator(&golay, DEFAULT_BUDGET).expect("4096 codewords"));
    (f1, f2)
}

/// `x^(2^i) + y^(2^i)` and `x^(2^(i+1)) + 2 (2^(i+1) - 1) x^(2^i) y^(2^i) + y^(2^(i+1))`,
/// the enumerators of `RM(0, i)` and `RM(1, i + 1)`.
pub fn dihedral_generators(i: u32) -> (HomPoly, HomPoly) {
    assert!((1..=20).contains(&i), "dihedral generator index {i} out of range");
    let h = 1usize << i;
    let mut f1 = vec![BigInt::zero(); h + 1];
    f1[0] = BigInt::one();
    f1[h] = BigInt::one();
    let mut f2 = vec![BigInt::zero(); 2 * h + 1];
    f2[0] = BigInt::one();
    f2[h] = BigInt::from(2 * (2 * h - 1));
    f2[2 * h] = BigInt::one();
    (HomPoly::from_integers(&f1), HomPoly::from_integers(&f2))
}

#[cfg(test)]
mod tests;
