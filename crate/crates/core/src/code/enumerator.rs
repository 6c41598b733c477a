use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::CodeError;

/// Weight distribution `A_0..A_n` of a code, read as the homogeneous
/// polynomial `sum A_i x^(n-i) y^i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightEnumerator {
    coeffs: Vec<BigUint>,
    /// `(q, k)` of the code this was computed from, when known.
    meta: Option<(u64, usize)>,
}

impl WeightEnumerator {
    pub fn new(coeffs: Vec<BigUint>) -> Self {
        assert!(!coeffs.is_empty(), "an enumerator has at least A_0");
        WeightEnumerator { coeffs, meta: None }
    }

    pub fn from_counts(counts: &[u64]) -> Self {
        Self::new(counts.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub fn with_provenance(mut self, q: u64, k: usize) -> Self {
        self.meta = Some((q, k));
        self
    }

    /// `x^n`, the enumerator of the zero code.
    pub fn zero_code(n: usize) -> Self {
        let mut c = vec![BigUint::zero(); n + 1];
        c[0] = BigUint::one();
        Self::new(c)
    }

    /// `(x + (q-1) y)^n`, the enumerator of the full space.
    pub fn full_space(q: u64, n: usize) -> Self {
        let c = binomial_row(n)
            .into_iter()
            .enumerate()
            .map(|(i, b)| b * BigUint::from(q - 1).pow(i as u32))
            .collect();
        Self::new(c).with_provenance(q, n)
    }

    /// `(x^2 + (q-1) y^2)^half`, the enumerator of a direct sum of `half`
    /// copies of `<(1,1)>`.
    pub fn sum_of_pairs(q: u64, half: usize) -> Self {
        let mut c = vec![BigUint::zero(); 2 * half + 1];
        for (i, b) in binomial_row(half).into_iter().enumerate() {
            c[2 * i] = b * BigUint::from(q - 1).pow(i as u32);
        }
        Self::new(c).with_provenance(q, half)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigUint {
        &self.coeffs[i]
    }

    pub fn provenance(&self) -> Option<(u64, usize)> {
        self.meta
    }

    /// Number of codewords, `w(1, 1)`.
    pub fn total(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    /// Product of enumerators (enumerator of the direct sum).
    pub fn product(&self, other: &WeightEnumerator) -> WeightEnumerator {
        let mut out = vec![BigUint::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        let meta = match (self.meta, other.meta) {
            (Some((q1, k1)), Some((q2, k2))) if q1 == q2 => Some((q1, k1 + k2)),
            _ => None,
        };
        WeightEnumerator { coeffs: out, meta }
    }

    /// Signed integer coefficients.
    pub fn to_bigints(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(|c| BigInt::from(c.clone())).collect()
    }
}

impl std::fmt::Display for WeightEnumerator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let n = self.degree();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let power = |v: &str, e: usize| match e {
                0 => String::new(),
                1 => v.to_string(),
                e => format!("{v}^{e}"),
            };
            let mono = match (power("x", n - i), power("y", i)) {
                (a, b) if a.is_empty() || b.is_empty() => a + &b,
                (a, b) => format!("{a}*{b}"),
            };
            match (c.is_one(), mono.is_empty()) {
                (true, false) => write!(f, "{mono}")?,
                (_, true) => write!(f, "{c}")?,
                (false, false) => write!(f, "{c}*{mono}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

pub(crate) fn binomial_row(n: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = vec![BigUint::one(); row.len() + 1];
        for i in 1..row.len() {
            next[i] = &row[i - 1] + &row[i];
        }
        row = next;
    }
    row
}

/// Krawtchouk values `K_j(i)` for `0 <= i, j <= n`: the coefficient of
/// `x^(n-j) y^j` in `(x + (q-1) y)^(n-i) (x - y)^i`. Indexed `[i][j]`.
pub(crate) fn krawtchouk_table(n: usize, q: u64) -> Vec<Vec<BigInt>> {
    let qm1 = BigInt::from(q - 1);
    let qb = BigInt::from(q);
    (0..=n)
        .map(|i| {
            let mut row = Vec::with_capacity(n + 1);
            row.push(BigInt::one());
            if n == 0 {
                return row;
            }
            let ib = BigInt::from(i);
            // K_1(i) = (n - i)(q - 1) - i
            row.push(BigInt::from(n - i) * &qm1 - &ib);
            for j in 1..n {
                // (j+1) K_{j+1} = ((n-j)(q-1) + j - q i) K_j - (q-1)(n-j+1) K_{j-1}
                let a = BigInt::from(n - j) * &qm1 + BigInt::from(j) - &qb * &ib;
                let b = &qm1 * BigInt::from(n - j + 1);
                let num = a * &row[j] - b * &row[j - 1];
                let (quot, rem) = num.div_rem(&BigInt::from(j + 1));
                debug_assert!(rem.is_zero());
                row.push(quot);
            }
            row
        })
        .collect()
}

/// MacWilliams transform: `w(x + (q-1)y, x - y) / q^k`, in exact integers.
///
/// Errors with [`CodeError::NonIntegerResult`] when the division is not exact
/// or produces a negative coefficient.
pub fn macwilliams(w: &WeightEnumerator, q: u64, k: usize) -> Result<WeightEnumerator, CodeError> {
    let n = w.degree();
    let table = krawtchouk_table(n, q);
    let scale = BigInt::from(q).pow(k as u32);
    let coeffs = (0..=n)
        .map(|j| {
            let sum: BigInt = w
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, a)| !a.is_zero())
                .map(|(i, a)| BigInt::from(a.clone()) * &table[i][j])
                .sum();
            let (quot, rem) = sum.div_rem(&scale);
            if !rem.is_zero() || quot.is_negative() {
                return Err(CodeError::NonIntegerResult);
            }
            Ok(quot.to_biguint().expect("nonnegative"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let dual_k = n.checked_sub(k).ok_or(CodeError::NonIntegerResult)?;
    Ok(WeightEnumerator::new(coeffs).with_provenance(q, dual_k))
}

/// Largest `m` dividing every nonzero weight; 0 for `x^n`.
pub fn divisibility(w: &WeightEnumerator) -> usize {
    w.coeffs
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, a)| !a.is_zero())
        .fold(0usize, |g, (i, _)| g.gcd(&i))
}

/// `log_q` of the codeword count, if it is an exact power.
pub fn dimension_from_total(total: &BigUint, q: u64) -> Option<usize> {
    let mut t = total.clone();
    let qb = BigUint::from(q);
    let mut k = 0;
    while t > BigUint::one() {
        let (quot, rem) = t.div_rem(&qb);
        if !rem.is_zero() {
            return None;
        }
        t = quot;
        k += 1;
    }
    (t.to_u64() == Some(1)).then_some(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_substitution(w: &WeightEnumerator, q: u64) -> Vec<BigInt> {
        // Expand sum A_i (x + (q-1)y)^(n-i) (x - y)^i by convolution.
        let n = w.degree();
        let mut out = vec![BigInt::zero(); n + 1];
        for (i, a) in w.coeffs().iter().enumerate() {
            let mut poly = vec![BigInt::one()];
            for step in 0..n {
                let (c0, c1) = if step < n - i {
                    (BigInt::one(), BigInt::from(q - 1))
                } else {
                    (BigInt::one(), BigInt::from(-1))
                };
                let mut next = vec![BigInt::zero(); poly.len() + 1];
                for (t, p) in poly.iter().enumerate() {
                    next[t] += p * &c0;
                    next[t + 1] += p * &c1;
                }
                poly = next;
            }
            for (j, p) in poly.into_iter().enumerate() {
                out[j] += BigInt::from(a.clone()) * p;
            }
        }
        out
    }

    #[test]
    fn krawtchouk_matches_convolution() {
        for (n, q) in [(5usize, 2u64), (7, 3), (6, 4), (4, 5)] {
            let table = krawtchouk_table(n, q);
            for i in 0..=n {
                let mut unit = vec![0u64; n + 1];
                unit[i] = 1;
                let expected = brute_substitution(&WeightEnumerator::from_counts(&unit), q);
                assert_eq!(table[i], expected, "n={n} q={q} i={i}");
            }
        }
    }

    #[test]
    fn macwilliams_of_zero_code_is_full_space() {
        for q in [2u64, 3, 4, 5] {
            let w = WeightEnumerator::zero_code(6);
            let d = macwilliams(&w, q, 0).unwrap();
            assert_eq!(d.coeffs(), WeightEnumerator::full_space(q, 6).coeffs());
        }
    }

    #[test]
    fn hamming8_is_fixed() {
        let mut c = vec![0u64; 9];
        c[0] = 1;
        c[4] = 14;
        c[8] = 1;
        let w = WeightEnumerator::from_counts(&c);
        assert_eq!(macwilliams(&w, 2, 4).unwrap().coeffs(), w.coeffs());
    }

    #[test]
    fn non_integral_rejected() {
        let w = WeightEnumerator::from_counts(&[1, 1, 0]);
        assert_eq!(macwilliams(&w, 2, 3), Err(CodeError::NonIntegerResult));
    }

    #[test]
    fn divisibility_cases() {
        assert_eq!(divisibility(&WeightEnumerator::from_counts(&[1, 0, 0, 0, 14, 0, 0, 0, 1])), 4);
        assert_eq!(divisibility(&WeightEnumerator::full_space(2, 4)), 1);
        assert_eq!(divisibility(&WeightEnumerator::zero_code(5)), 0);
        assert_eq!(divisibility(&WeightEnumerator::from_counts(&[1, 0, 0, 0, 0, 3])), 5);
    }

    #[test]
    fn display() {
        let w = WeightEnumerator::from_counts(&[1, 0, 3, 0]);
        assert_eq!(w.to_string(), "x^3 + 3*x*y^2");
    }
}
