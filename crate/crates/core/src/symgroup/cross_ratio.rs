//! Cross ratios and certificates that the projective symmetry group is
//! trivial.
//!
//! A 4-tuple of roots is critical when the only 4-tuples of distinct roots
//! with the same cross ratio are its images under the Klein four-group of
//! position permutations. A projective symmetry preserves cross ratios, so
//! two critical tuples sharing their first three entries pin it to the
//! identity.

use num_complex::Complex64;
use thiserror::Error;

use crate::roots::{to_f64, BigComplex, RootSet};

/// Distinct roots beyond which the cross-ratio table (`6 C(n,4)` entries)
/// is not built.
pub const MAX_CERTIFICATE_ROOTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrossRatioError {
    #[error("cross ratio of a tuple with repeated points")]
    DegenerateTuple,
    #[error("a certificate needs at least 5 distinct roots, found {found}")]
    TooFewRoots { found: usize },
    #[error("{found} distinct roots exceed the certificate cap of {cap}")]
    TooManyRoots { found: usize, cap: usize },
    #[error("certificates need every root finite")]
    RootAtInfinity,
}

/// `(z1 - z3)(z2 - z4) / ((z1 - z4)(z2 - z3))`.
pub fn cross_ratio(z1: &BigComplex, z2: &BigComplex, z3: &BigComplex, z4: &BigComplex) -> Result<BigComplex, CrossRatioError> {
    let z = [z1, z2, z3, z4];
    for i in 0..4 {
        for j in i + 1..4 {
            if (z[i] - z[j]).is_zero() {
                return Err(CrossRatioError::DegenerateTuple);
            }
        }
    }
    Ok(&(&(z1 - z3) * &(z2 - z4)) / &(&(z1 - z4) * &(z2 - z3)))
}

fn cross_ratio64(z: [Complex64; 4]) -> Complex64 {
    (z[0] - z[2]) * (z[1] - z[3]) / ((z[0] - z[3]) * (z[1] - z[2]))
}

/// Root indices `z1..z5` (into `RootSet::roots`) such that `(z1, z2, z3, z4)`
/// and `(z1, z2, z3, z5)` are both critical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossRatioCertificate {
    pub indices: [usize; 5],
}

impl CrossRatioCertificate {
    pub fn tuples(&self) -> [[usize; 4]; 2] {
        let [a, b, c, d, e] = self.indices;
        [[a, b, c, d], [a, b, c, e]]
    }
}

/// Cross ratios of every 4-tuple of roots, one per orbit of the four-group.
struct CrossRatioTable {
    /// Sorted by real part.
    values: Vec<Complex64>,
    rel_tol: f64,
}

impl CrossRatioTable {
    fn new(z: &[Complex64], rel_tol: f64) -> Self {
        let n = z.len();
        let mut values = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for l in k + 1..n {
                        // Each orbit has exactly one member with z_i first.
                        for [b, c, d] in [[j, k, l], [j, l, k], [k, j, l], [k, l, j], [l, j, k], [l, k, j]] {
                            values.push(cross_ratio64([z[i], z[b], z[c], z[d]]));
                        }
                    }
                }
            }
        }
        values.sort_by(|a, b| a.re.total_cmp(&b.re));
        CrossRatioTable { values, rel_tol }
    }

    fn tol(&self, v: Complex64) -> f64 {
        self.rel_tol * (1.0 + v.norm())
    }

    /// Orbits whose cross ratio lies within tolerance of `v`.
    fn matches(&self, v: Complex64) -> usize {
        let tol = self.tol(v);
        let start = self.values.partition_point(|w| w.re < v.re - tol);
        self.values[start..].iter().take_while(|w| w.re <= v.re + tol).filter(|w| (**w - v).norm() <= tol).count()
    }

    fn is_critical(&self, z: [Complex64; 4]) -> bool {
        self.matches(cross_ratio64(z)) == 1
    }
}

/// Searches prefixes `(z1, z2, z3)` in lexicographic index order, then
/// `z4 < z5`, for a pair of critical tuples. Cross ratios are compared in
/// f64 at relative tolerance `2^-30 max(1, scale / sep)`, far above the
/// f64 error of cross ratios of roots separated by `sep`.
pub fn trivial_certificate(rs: &RootSet) -> Result<Option<CrossRatioCertificate>, CrossRatioError> {
    let found = rs.distinct_count();
    if found < 5 {
        return Err(CrossRatioError::TooFewRoots { found });
    }
    if rs.infinity_multiplicity > 0 {
        return Err(CrossRatioError::RootAtInfinity);
    }
    if found > MAX_CERTIFICATE_ROOTS {
        return Err(CrossRatioError::TooManyRoots { found, cap: MAX_CERTIFICATE_ROOTS });
    }
    let z = rs.values_c64();
    let scale = z.iter().map(|w| w.norm()).fold(1.0, f64::max);
    let sep = to_f64(rs.sep.as_ref().expect("five finite roots"));
    let table = CrossRatioTable::new(&z, 2f64.powi(-30) * (scale / sep).max(1.0));
    let n = z.len();
    for a in 0..n {
        for b in (0..n).filter(|&b| b != a) {
            for c in (0..n).filter(|&c| c != a && c != b) {
                let critical: Vec<usize> =
                    (0..n).filter(|&d| d != a && d != b && d != c && table.is_critical([z[a], z[b], z[c], z[d]])).collect();
                if let [d, e, ..] = critical[..] {
                    return Ok(Some(CrossRatioCertificate { indices: [a, b, c, d, e] }));
                }
            }
        }
    }
    Ok(None)
}
