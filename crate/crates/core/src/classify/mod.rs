//! Codes whose enumerator has fewer than three distinct roots, and the
//! binary codes with enumerator `(x^2 + y^2)^(n/2)`.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::code::{divisibility, named_code, weight_enumerator, CodeError, LinearCode, NamedCode, WeightEnumerator};
use crate::gf::Field;
use crate::symgroup::{classify_finiteness, Finiteness, InfiniteCase};
use crate::wpoly::{is_formally_self_dual, HomPoly};

/// Codeword count above which structural checks refuse to enumerate.
pub const STRUCTURE_BUDGET: u128 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("the enumerator has at least three distinct roots")]
    Finite,
    #[error("(x^2 + {a} y^2)^{half} is not the enumerator of a code over F_{q}: a must be q - 1")]
    ContradictsLemma { a: BigRational, half: usize, q: u64 },
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// What the enumerator forces about the code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructureClaim {
    /// `C = {0}`.
    Zero,
    /// `C = F_q^n`.
    Full,
    /// `C` is monomially equivalent to `copies` copies of `<(1,1)>`.
    DirectSumOfPairs { copies: usize },
    /// Binary codes with this enumerator are not classified.
    ClassificationOpen,
    /// The shape is not that of any code enumerator over `F_q`.
    NotACodeEnumerator,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfiniteCaseReport {
    pub case: InfiniteCase,
    pub q: u64,
    pub n: usize,
    pub structure: StructureClaim,
    pub notes: Vec<String>,
}

/// `a` with `p = (x^2 + a y^2)^(n/2)`, `a != 0`.
fn pair_shape(w: &WeightEnumerator) -> Option<BigRational> {
    let n = w.degree();
    if n == 0 || n % 2 == 1 {
        return None;
    }
    let half = n / 2;
    let a = BigRational::new(w.coeff(2).clone().into(), BigUint::from(half).into());
    if a.is_zero() {
        return None;
    }
    let mut base = vec![BigRational::zero(); 3];
    base[0] = BigRational::one();
    base[2] = a.clone();
    (HomPoly::new(base).pow(half) == HomPoly::from(w)).then_some(a)
}

/// The infinite case of `w` over `F_q` and what it says about the code.
pub fn analyze_infinite(w: &WeightEnumerator, q: u64) -> Result<InfiniteCaseReport, ClassifyError> {
    let Finiteness::Infinite(case) = classify_finiteness(w, q) else {
        return Err(ClassifyError::Finite);
    };
    let n = w.degree();
    let mut notes = Vec::new();
    let structure = match case {
        InfiniteCase::ZeroCode => StructureClaim::Zero,
        InfiniteCase::FullSpace => StructureClaim::Full,
        InfiniteCase::SumOfPairs => {
            if q == 2 {
                notes.push("binary codes with enumerator (x^2 + y^2)^(n/2) are not classified; direct sums of the irreducible codes X1..X5 are examples".into());
                StructureClaim::ClassificationOpen
            } else {
                notes.push(format!("weight-two codewords have disjoint supports, so C splits as {} copies of <(1,1)>", n / 2));
                StructureClaim::DirectSumOfPairs { copies: n / 2 }
            }
        }
        InfiniteCase::OtherTwoRoot => {
            if let Some(a) = pair_shape(w) {
                // With A_0 = 1 this is the only two-root shape a code could
                // have, and then a = q - 1 is forced.
                if w.coeff(0).is_one() {
                    return Err(ClassifyError::ContradictsLemma { a, half: n / 2, q });
                }
            }
            notes.push("at most two distinct roots, but not x^n, (x + (q-1)y)^n or (x^2 + (q-1)y^2)^(n/2)".into());
            StructureClaim::NotACodeEnumerator
        }
    };
    Ok(InfiniteCaseReport { case, q, n, structure, notes })
}

/// Supports of the weight-two codewords when they are pairwise disjoint and
/// cover every coordinate, i.e. when `C` is a direct sum of scaled copies of
/// `<(1,1)>`. Weight-two words are taken up to scalars.
pub fn split_pairs(code: &LinearCode) -> Result<Option<Vec<(usize, usize)>>, CodeError> {
    let count = (code.q() as u128).pow(code.dim() as u32);
    if count > STRUCTURE_BUDGET {
        return Err(CodeError::TooLarge { count, budget: STRUCTURE_BUDGET });
    }
    let mut supports = BTreeSet::new();
    for c in code.codewords() {
        let support: Vec<usize> = (0..c.len()).filter(|&i| c[i] != 0).collect();
        if support.len() % 2 == 1 {
            return Ok(None);
        }
        if let [i, j] = support[..] {
            supports.insert((i, j));
        }
    }
    let pairs: Vec<(usize, usize)> = supports.into_iter().collect();
    let mut covered = vec![false; code.len()];
    for &(i, j) in &pairs {
        if covered[i] || covered[j] {
            // Two independent weight-two words share a coordinate.
            return Ok(None);
        }
        covered[i] = true;
        covered[j] = true;
    }
    Ok((covered.iter().all(|&c| c) && pairs.len() == code.dim()).then_some(pairs))
}

/// The infinite case read off the generator matrix alone, where it can be:
/// dimension 0, full dimension, or a split into pairs.
pub fn structural_case(code: &LinearCode) -> Result<Option<InfiniteCase>, CodeError> {
    if code.dim() == 0 {
        return Ok(Some(InfiniteCase::ZeroCode));
    }
    if code.dim() == code.len() {
        return Ok(Some(InfiniteCase::FullSpace));
    }
    Ok(split_pairs(code)?.map(|_| InfiniteCase::SumOfPairs))
}

/// Enumerator facts for one of the irreducible codes X1..X5.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MGeneratorCheck {
    pub index: u8,
    pub n: usize,
    pub k: usize,
    /// The enumerator is `(x^2 + y^2)^(n/2)` exactly.
    pub enumerator_matches: bool,
    pub formally_self_dual: bool,
    /// Whether the code is itself a direct sum of copies of `<(1,1)>`.
    pub splits_into_pairs: bool,
}

pub const M_GENERATOR_LENGTHS: [usize; 5] = [2, 6, 14, 14, 14];

pub fn verify_m_semigroup_generators() -> Result<Vec<MGeneratorCheck>, CodeError> {
    (1..=5u8)
        .map(|index| {
            let code = named_code(&NamedCode::X(index))?;
            let w = weight_enumerator(&code, STRUCTURE_BUDGET)?;
            let n = code.len();
            Ok(MGeneratorCheck {
                index,
                n,
                k: code.dim(),
                enumerator_matches: n % 2 == 0 && w.coeffs() == WeightEnumerator::sum_of_pairs(2, n / 2).coeffs(),
                formally_self_dual: is_formally_self_dual(&w, 2),
                splits_into_pairs: split_pairs(&code)?.is_some(),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorollaryReport {
    pub q: u64,
    pub copies: usize,
    /// The corollary speaks about `q > 4` only.
    pub in_scope: bool,
    pub formally_self_dual: bool,
    pub divisibility: usize,
    pub case: Option<InfiniteCase>,
}

/// Builds `copies` copies of `<(1,1)>` over `F_q` and checks it is formally
/// self-dual, divisible by 2 and classified as a sum of pairs.
pub fn gleason_pierce_corollary_check(q: u64, copies: usize) -> Result<CorollaryReport, ClassifyError> {
    let field = Arc::new(Field::with_order(q).map_err(CodeError::from)?);
    let code = pair_sum(field, copies)?;
    let w = weight_enumerator(&code, STRUCTURE_BUDGET)?;
    let case = match classify_finiteness(&w, q) {
        Finiteness::Infinite(_) => Some(analyze_infinite(&w, q)?.case),
        Finiteness::Finite => None,
    };
    Ok(CorollaryReport {
        q,
        copies,
        in_scope: q > 4,
        formally_self_dual: is_formally_self_dual(&w, q),
        divisibility: divisibility(&w),
        case,
    })
}

/// `copies` copies of `<(1,1)>`.
pub fn pair_sum(field: Arc<Field>, copies: usize) -> Result<LinearCode, CodeError> {
    let n = 2 * copies;
    let rows = (0..copies)
        .map(|i| {
            let mut row = vec![0; n];
            row[2 * i] = 1;
            row[2 * i + 1] = 1;
            row
        })
        .collect();
    LinearCode::from_rows_with_length(field, n, rows)
}

#[cfg(test)]
mod tests;
