use std::sync::Arc;

use super::{CodeError, LinearCode};
use crate::gf::{Elem, Field};

/// Default cap on code length for evaluation codes.
pub const MAX_LENGTH: u64 = 1 << 20;

fn check_length(length: u64) -> Result<usize, CodeError> {
    if length > MAX_LENGTH {
        Err(CodeError::LengthTooLarge { length, cap: MAX_LENGTH })
    } else {
        Ok(length as usize)
    }
}

/// All exponent vectors of length `m` with entries `<= max_exp` and total
/// degree in `degrees`, ordered by total degree then lexicographically.
fn exponent_vectors(m: usize, max_exp: usize, degrees: std::ops::RangeInclusive<usize>) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for d in degrees {
        let mut cur = vec![0; m];
        fill(&mut cur, 0, d, max_exp, &mut out);
    }
    out
}

fn fill(cur: &mut Vec<usize>, pos: usize, remaining: usize, max_exp: usize, out: &mut Vec<Vec<usize>>) {
    if pos == cur.len() {
        if remaining == 0 {
            out.push(cur.clone());
        }
        return;
    }
    for e in (0..=remaining.min(max_exp)).rev() {
        cur[pos] = e;
        fill(cur, pos + 1, remaining - e, max_exp, out);
    }
    cur[pos] = 0;
}

fn eval_monomial(f: &Field, exps: &[usize], point: &[Elem]) -> Elem {
    exps.iter()
        .zip(point)
        .fold(1, |acc, (&e, &x)| f.mul(acc, f.pow(x, e as u64)))
}

/// Affine Reed-Muller code `RM_q(r, m)`: evaluations of all polynomials of
/// degree at most `r` in `m` variables at every point of `F_q^m`.
///
/// Points are ordered by their base-q integer encoding (first coordinate least
/// significant). Rows are the reduced monomials, per-variable exponent at most
/// `q - 1`, which are linearly independent as functions.
pub fn reed_muller(field: Arc<Field>, r: usize, m: usize) -> Result<LinearCode, CodeError> {
    if m == 0 {
        return Err(CodeError::InvalidParameters("m must be at least 1".into()));
    }
    let q = field.order() as u64;
    let n = check_length(q.checked_pow(m as u32).unwrap_or(u64::MAX))?;
    let max_exp = q as usize - 1;
    let top = r.min(m * max_exp);
    let points: Vec<Vec<Elem>> = (0..n as u64)
        .map(|mut t| {
            (0..m)
                .map(|_| {
                    let d = t % q;
                    t /= q;
                    d as Elem
                })
                .collect()
        })
        .collect();
    let gen = exponent_vectors(m, max_exp, 0..=top)
        .iter()
        .map(|exps| points.iter().map(|pt| eval_monomial(&field, exps, pt)).collect())
        .collect();
    let name = format!("RM_{q}({r},{m})");
    Ok(LinearCode { field, n, gen, name: Some(name) })
}

/// Projective points of `P^m(F_q)` normalised so the first nonzero coordinate
/// is 1, in lexicographic order.
pub(crate) fn projective_points(f: &Field, m: usize) -> Vec<Vec<Elem>> {
    let q = f.order() as u64;
    let dim = m + 1;
    let mut out = Vec::new();
    for lead in (0..dim).rev() {
        let tail = dim - lead - 1;
        for mut t in 0..q.pow(tail as u32) {
            let mut digits: Vec<Elem> = (0..tail)
                .map(|_| {
                    let d = t % q;
                    t /= q;
                    d as Elem
                })
                .collect();
            digits.reverse();
            let mut pt = vec![0; lead];
            pt.push(1);
            pt.extend(digits);
            out.push(pt);
        }
    }
    out
}

/// Projective Reed-Muller code `PRM_q(r, m)`: evaluations of all homogeneous
/// polynomials of degree exactly `r` in `m + 1` variables at representatives
/// of `P^m(F_q)`. The code is the row space of the full monomial evaluation
/// matrix.
pub fn projective_reed_muller(field: Arc<Field>, r: usize, m: usize) -> Result<LinearCode, CodeError> {
    if r == 0 || m == 0 {
        return Err(CodeError::InvalidParameters("PRM needs r >= 1 and m >= 1".into()));
    }
    let q = field.order() as u64;
    let count = (q.checked_pow(m as u32 + 1).unwrap_or(u64::MAX) - 1) / (q - 1);
    let n = check_length(count)?;
    let points = projective_points(&field, m);
    debug_assert_eq!(points.len(), n);
    // x^e and x^((e-1) mod (q-1) + 1) agree on F_q for e >= 1, so monomials
    // with equal reduced exponents give equal rows; keep one of each.
    let reduce = |e: usize| if e == 0 { 0 } else { (e - 1) % (q as usize - 1) + 1 };
    let distinct: std::collections::BTreeSet<Vec<usize>> =
        exponent_vectors(m + 1, r, r..=r).into_iter().map(|v| v.into_iter().map(reduce).collect()).collect();
    let rows: Vec<Vec<Elem>> = distinct
        .iter()
        .map(|exps| points.iter().map(|pt| eval_monomial(&field, exps, pt)).collect())
        .collect();
    let code = LinearCode::span(field, n, rows);
    Ok(code.with_name(format!("PRM_{q}({r},{m})")))
}

/// Catalog keys accepted by [`named_code`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NamedCode {
    Repetition { q: u64, n: usize },
    Hamming8,
    Golay24,
    Golay12Ternary,
    X(u8),
}

impl std::str::FromStr for NamedCode {
    type Err = CodeError;

    /// Parses `hamming8`, `golay24`, `golay12_ternary`, `X1`..`X5`.
    /// Repetition codes need parameters and are built directly.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "hamming8" => Ok(NamedCode::Hamming8),
            "golay24" => Ok(NamedCode::Golay24),
            "golay12_ternary" => Ok(NamedCode::Golay12Ternary),
            "X1" | "x1" => Ok(NamedCode::X(1)),
            "X2" | "x2" => Ok(NamedCode::X(2)),
            "X3" | "x3" => Ok(NamedCode::X(3)),
            "X4" | "x4" => Ok(NamedCode::X(4)),
            "X5" | "x5" => Ok(NamedCode::X(5)),
            other => Err(CodeError::UnknownName(other.to_string())),
        }
    }
}

const X2: [[u8; 6]; 3] = [[1, 0, 0, 1, 1, 1], [0, 1, 0, 1, 1, 1], [0, 0, 1, 1, 1, 1]];

const X3: [[u8; 7]; 7] = [
    [1, 1, 1, 0, 0, 0, 0],
    [1, 1, 1, 0, 0, 0, 0],
    [1, 1, 1, 0, 0, 0, 0],
    [1, 0, 0, 1, 1, 1, 1],
    [1, 0, 0, 1, 1, 1, 1],
    [1, 0, 0, 1, 1, 1, 1],
    [1, 0, 0, 0, 0, 0, 0],
];

const X4: [[u8; 7]; 7] = [
    [1, 1, 1, 1, 1, 0, 0],
    [1, 1, 1, 1, 1, 0, 0],
    [1, 1, 1, 1, 1, 0, 0],
    [1, 1, 1, 1, 1, 0, 0],
    [1, 1, 1, 1, 0, 1, 0],
    [1, 1, 1, 1, 0, 1, 0],
    [1, 1, 1, 1, 1, 1, 1],
];

const X5: [[u8; 7]; 7] = [
    [1, 0, 1, 0, 1, 0, 0],
    [1, 0, 1, 0, 1, 0, 0],
    [1, 0, 1, 0, 1, 0, 0],
    [1, 0, 1, 0, 1, 0, 0],
    [1, 1, 1, 0, 1, 0, 1],
    [1, 1, 1, 0, 1, 0, 1],
    [1, 1, 1, 1, 1, 1, 1],
];

fn identity_extended(block: &[[u8; 7]; 7]) -> Vec<Vec<Elem>> {
    (0..7)
        .map(|i| {
            let mut row: Vec<Elem> = (0..7).map(|j| Elem::from(i == j)).collect();
            row.extend(block[i].iter().map(|&b| b as Elem));
            row
        })
        .collect()
}

/// Cyclic code of length `n` generated by `g` (coefficients lowest first),
/// extended by an overall check symbol so every codeword sums to zero.
fn extended_cyclic(f: &Field, g: &[Elem], n: usize) -> Vec<Vec<Elem>> {
    let k = n - (g.len() - 1);
    (0..k)
        .map(|shift| {
            let mut row = vec![0; n + 1];
            for (i, &c) in g.iter().enumerate() {
                row[shift + i] = c;
            }
            let sum = row[..n].iter().fold(0, |acc, &x| f.add(acc, x));
            row[n] = f.neg(sum);
            row
        })
        .collect()
}

fn binary() -> Arc<Field> {
    Arc::new(Field::new(2, 1).expect("GF(2)"))
}

pub fn named_code(name: &NamedCode) -> Result<LinearCode, CodeError> {
    let code = match name {
        NamedCode::Repetition { q, n } => {
            let field = Arc::new(Field::with_order(*q)?);
            if *n == 0 {
                return Err(CodeError::InvalidParameters("repetition length must be positive".into()));
            }
            LinearCode::from_rows(field, vec![vec![1; *n]])?.with_name(format!("repetition({q},{n})"))
        }
        NamedCode::Hamming8 => reed_muller(binary(), 1, 3)?.with_name("hamming8"),
        NamedCode::Golay24 => {
            // Binary cyclic Golay code, g(x) = 1 + x^2 + x^4 + x^5 + x^6 + x^10 + x^11,
            // extended by parity and put into systematic form.
            let f = binary();
            let g = [1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1];
            let rows = extended_cyclic(&f, &g, 23);
            LinearCode::span(f, 24, rows).with_name("golay24")
        }
        NamedCode::Golay12Ternary => {
            // Ternary cyclic Golay code, g(x) = -1 + x^2 - x^3 + x^4 + x^5.
            let f = Arc::new(Field::new(3, 1)?);
            let g = [2, 0, 1, 2, 1, 1];
            let rows = extended_cyclic(&f, &g, 11);
            LinearCode::span(f, 12, rows).with_name("golay12_ternary")
        }
        NamedCode::X(1) => LinearCode::from_rows(binary(), vec![vec![1, 1]])?.with_name("X1"),
        NamedCode::X(2) => {
            let rows = X2.iter().map(|r| r.iter().map(|&b| b as Elem).collect()).collect();
            LinearCode::from_rows(binary(), rows)?.with_name("X2")
        }
        NamedCode::X(i @ 3..=5) => {
            let block = match i {
                3 => &X3,
                4 => &X4,
                _ => &X5,
            };
            LinearCode::from_rows(binary(), identity_extended(block))?.with_name(format!("X{i}"))
        }
        NamedCode::X(i) => return Err(CodeError::UnknownName(format!("X{i}"))),
    };
    Ok(code)
}
