//! Symmetry groups of binary forms.
//!
//! `S(p)` is the set of `A` in GL2(C) with `p^A = lambda p` for some scalar,
//! where `p^A(x, y) = p(ax + by, cx + dy)`; `S̄(p)` is its image in PGL2(C).
//! A projective symmetry permutes the distinct roots and keeps their
//! multiplicities, and a Möbius map is determined by the images of three
//! points. So every ordered triple of target roots yields at most one
//! candidate. Each candidate is screened in f64, re-matched against the
//! certified roots at working precision, and finally checked against the form
//! itself at `n + 1` points.

mod cross_ratio;
mod identify;
mod matrix;

use std::collections::HashMap;

use astro_float::BigFloat;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::code::WeightEnumerator;
use crate::roots::{cmp, find_roots, log2_abs, to_f64, BigComplex, RootError, RootOptions, RootSet, RM};
use crate::wpoly::{rat_matrix, HomPoly, MultiplicityStructure};

pub use cross_ratio::{cross_ratio, trivial_certificate, CrossRatioCertificate, CrossRatioError, MAX_CERTIFICATE_ROOTS};
pub use identify::{identify_orders, IsoType};
pub use matrix::{invariance_check, ProjectiveMatrix};
use matrix::{invariance_residual, mobius64, sample_points, solve_triple, FormEval};

/// The shapes of forms with fewer than three distinct roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InfiniteCase {
    /// `x^n`.
    ZeroCode,
    /// `(x + (q-1) y)^n`.
    FullSpace,
    /// `(x^2 + (q-1) y^2)^(n/2)`.
    SumOfPairs,
    OtherTwoRoot,
}

impl InfiniteCase {
    pub fn name(&self) -> &'static str {
        match self {
            InfiniteCase::ZeroCode => "ZeroCode",
            InfiniteCase::FullSpace => "FullSpace",
            InfiniteCase::SumOfPairs => "SumOfPairs",
            InfiniteCase::OtherTwoRoot => "OtherTwoRoot",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [InfiniteCase::ZeroCode, InfiniteCase::FullSpace, InfiniteCase::SumOfPairs, InfiniteCase::OtherTwoRoot]
            .into_iter()
            .find(|c| c.name() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Finiteness {
    Finite,
    Infinite(InfiniteCase),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetryError {
    #[error("the zero form is fixed by every matrix")]
    ZeroPolynomial,
    #[error("symmetries could not be certified at precision up to {cap} bits")]
    PrecisionExhausted { cap: usize },
    #[error("{missing} products of the {order} accepted symmetries fall outside the set")]
    ClosureFailure { order: usize, missing: usize },
    #[error("no finite subgroup of PGL2(C) has the element-order census {census:?}")]
    NotBlichfeldt { census: Vec<(usize, usize)> },
}

impl From<RootError> for SymmetryError {
    fn from(e: RootError) -> Self {
        match e {
            RootError::PrecisionExhausted { cap } => SymmetryError::PrecisionExhausted { cap },
            RootError::ZeroPolynomial | RootError::TooFewRoots => SymmetryError::ZeroPolynomial,
        }
    }
}

/// Finiteness of `S(w)` for the enumerator of a code over `F_q`.
pub fn classify_finiteness(w: &WeightEnumerator, q: u64) -> Finiteness {
    classify_form(&HomPoly::from(w), Some(q))
}

/// Finite iff `p` has at least three distinct roots. With a field order the
/// infinite case is matched exactly against the code shapes; without one it
/// is reported as `OtherTwoRoot`.
pub fn classify_form(p: &HomPoly, q: Option<u64>) -> Finiteness {
    if p.is_zero() {
        return Finiteness::Infinite(InfiniteCase::OtherTwoRoot);
    }
    if MultiplicityStructure::of(p).distinct_count >= 3 {
        return Finiteness::Finite;
    }
    let Some(q) = q else {
        return Finiteness::Infinite(InfiniteCase::OtherTwoRoot);
    };
    let n = p.degree();
    let case = if *p == HomPoly::from(&WeightEnumerator::zero_code(n)) {
        InfiniteCase::ZeroCode
    } else if *p == HomPoly::from(&WeightEnumerator::full_space(q, n)) {
        InfiniteCase::FullSpace
    } else if n % 2 == 0 && *p == HomPoly::from(&WeightEnumerator::sum_of_pairs(q, n / 2)) {
        InfiniteCase::SumOfPairs
    } else {
        InfiniteCase::OtherTwoRoot
    };
    Finiteness::Infinite(case)
}

/// A projective symmetry with `p^A = lambda p` for the canonical `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryElement {
    pub proj: ProjectiveMatrix,
    pub lambda: BigComplex,
    /// Order in PGL2(C).
    pub order: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryGroup {
    pub kind: Finiteness,
    pub degree: usize,
    /// Empty for infinite groups; the identity comes first.
    pub elements: Vec<SymmetryElement>,
    pub iso: Option<IsoType>,
    /// Precision at which the elements were certified.
    pub prec: usize,
}

impl SymmetryGroup {
    fn infinite(case: InfiniteCase, degree: usize, prec: usize) -> Self {
        SymmetryGroup { kind: Finiteness::Infinite(case), degree, elements: Vec::new(), iso: None, prec }
    }

    pub fn is_finite(&self) -> bool {
        self.kind == Finiteness::Finite
    }

    /// `|S̄|`, for finite groups.
    pub fn proj_order(&self) -> Option<usize> {
        self.is_finite().then_some(self.elements.len())
    }

    /// `|S| = n |S̄|`: each projective symmetry lifts to `n` scalings.
    pub fn full_order(&self) -> Option<usize> {
        self.proj_order().map(|k| k * self.degree)
    }

    /// Canonical-form tolerance used for matrix comparisons.
    pub fn matrix_tol(&self) -> f64 {
        -(self.prec as f64) / 4.0
    }

    /// Whether some element equals `m` projectively.
    pub fn contains(&self, m: &ProjectiveMatrix) -> bool {
        let m = m.clone();
        self.elements.iter().any(|e| e.proj.approx_eq(&m, self.matrix_tol()))
    }

    /// Products of matrices land in the set, checked on the matrices
    /// themselves rather than on root permutations.
    pub fn verify_closure(&self) -> bool {
        let tol = self.matrix_tol();
        let approx: Vec<[Complex64; 4]> = self.elements.iter().map(|e| e.proj.to_c64()).collect();
        self.elements.par_iter().all(|g| {
            self.elements.iter().all(|h| {
                let gh = g.proj.mul(&h.proj);
                let key = gh.to_c64();
                let nearest = (0..approx.len())
                    .min_by(|&i, &j| dist64(&approx[i], &key).total_cmp(&dist64(&approx[j], &key)))
                    .expect("nonempty group");
                gh.approx_eq(&self.elements[nearest].proj, tol)
            })
        })
    }

    /// Re-checks `p^A = lambda p` for every element at `count` fresh points.
    pub fn reverify(&self, p: &HomPoly, count: usize, seed: u64) -> bool {
        let bound = -(self.prec as f64) / 2.0;
        self.elements.par_iter().all(|e| {
            let (lambda, worst) = invariance_check(p, &e.proj, count, seed);
            worst <= bound && (&lambda - &e.lambda).log2_abs() <= e.lambda.log2_abs() + bound
        })
    }
}

fn dist64(a: &[Complex64; 4], b: &[Complex64; 4]) -> f64 {
    (0..4).map(|i| (a[i] - b[i]).norm()).fold(0.0, f64::max)
}

/// The Blichfeldt type of a closed finite set of symmetries.
pub fn identify_group(elements: &[SymmetryElement]) -> Result<IsoType, SymmetryError> {
    let orders: Vec<usize> = elements.iter().map(|e| e.order).collect();
    identify_orders(&orders).ok_or_else(|| {
        let mut census: Vec<(usize, usize)> = Vec::new();
        for o in orders {
            match census.iter_mut().find(|(k, _)| *k == o) {
                Some(entry) => entry.1 += 1,
                None => census.push((o, 1)),
            }
        }
        census.sort_unstable();
        SymmetryError::NotBlichfeldt { census }
    })
}

/// Symmetry group of a code enumerator.
pub fn enumerator_symmetry_group(w: &WeightEnumerator, q: u64, opts: &RootOptions) -> Result<SymmetryGroup, SymmetryError> {
    symmetry_group(&HomPoly::from(w), Some(q), opts)
}

/// `S̄(p)` with scalar data, or the infinite case. Precision starts at
/// `opts.prec` and doubles up to `opts.max_prec` whenever a root-matched
/// candidate fails the form-invariance residual `2^(-prec/2)`.
pub fn symmetry_group(p: &HomPoly, q: Option<u64>, opts: &RootOptions) -> Result<SymmetryGroup, SymmetryError> {
    if p.is_zero() {
        return Err(SymmetryError::ZeroPolynomial);
    }
    if let Finiteness::Infinite(case) = classify_form(p, q) {
        return Ok(SymmetryGroup::infinite(case, p.degree(), opts.prec));
    }
    // A root at (1:0) is moved off by M = [[1, 0], [t, 1]]; S(p) = M S(p^M) M^-1.
    let shift = (!p.coeff(0).is_zero()).then_some(0).unwrap_or_else(|| first_nonroot_shift(p));
    let work = if shift == 0 { p.clone() } else { p.substitute_exact(&rat_matrix([[1, 0], [shift, 1]])).expect("unimodular") };

    let mut prec = opts.prec;
    loop {
        let rs = find_roots(&work, &RootOptions { prec, ..*opts })?;
        if let Some(group) = search(p, &rs, shift, opts.seed)? {
            return Ok(group);
        }
        if rs.prec >= opts.max_prec {
            return Err(SymmetryError::PrecisionExhausted { cap: opts.max_prec });
        }
        prec = (rs.prec * 2).min(opts.max_prec);
    }
}

/// Smallest `t >= 1` with `p(1, t) != 0`.
fn first_nonroot_shift(p: &HomPoly) -> i64 {
    (1..)
        .find(|&t: &i64| {
            let t = BigRational::from_integer(t.into());
            let mut power = BigRational::one();
            let mut sum = BigRational::zero();
            for c in p.coeffs() {
                sum += c * &power;
                power *= &t;
            }
            !sum.is_zero()
        })
        .expect("a nonzero form has finitely many roots")
}

/// Sorted f64 copies of the roots for tolerance lookups.
struct RootIndex {
    vals: Vec<Complex64>,
    mults: Vec<usize>,
}

impl RootIndex {
    /// Indices of roots with multiplicity `mult` within `tol` of `z`.
    fn near(&self, z: Complex64, tol: f64, mult: usize) -> impl Iterator<Item = usize> + '_ {
        let start = self.vals.partition_point(|w| w.re < z.re - tol);
        (start..self.vals.len())
            .take_while(move |&j| self.vals[j].re <= z.re + tol)
            .filter(move |&j| self.mults[j] == mult && (self.vals[j] - z).norm() <= tol)
    }
}

/// The three roots maximizing the smallest pairwise distance; the first such
/// triple in index order wins ties.
fn source_triple(z: &[Complex64]) -> [usize; 3] {
    let n = z.len();
    let mut best = ([0, 1, 2], f64::NEG_INFINITY);
    for i in 0..n {
        for j in i + 1..n {
            let dij = (z[i] - z[j]).norm();
            if dij <= best.1 {
                continue;
            }
            for k in j + 1..n {
                let m = dij.min((z[i] - z[k]).norm()).min((z[j] - z[k]).norm());
                if m > best.1 {
                    best = ([i, j, k], m);
                }
            }
        }
    }
    best.0
}

enum Verdict {
    Reject,
    Escalate,
    Accept { triple: [usize; 3], perm: Vec<usize>, proj: ProjectiveMatrix, lambda: BigComplex },
}

/// One pass of the algorithm at the precision of `rs` (roots of `p^M`).
/// `None` asks for more precision.
fn search(p: &HomPoly, rs: &RootSet, shift: i64, seed: u64) -> Result<Option<SymmetryGroup>, SymmetryError> {
    let prec = rs.prec;
    let index = RootIndex { vals: rs.values_c64(), mults: rs.roots.iter().map(|r| r.multiplicity).collect() };
    let nr = index.vals.len();
    let sep = rs.sep.as_ref().expect("three finite roots");
    let tau = sep.div(&BigFloat::from_word(3, prec), prec, RM);
    let scale = index.vals.iter().map(|z| z.norm()).fold(1.0, f64::max);
    // The f64 screen only needs to be permissive; the decision is made at
    // working precision against tau.
    let tau64 = to_f64(&tau).max(1e-7 * scale);
    let src = source_triple(&index.vals);
    let src_vals = src.map(|i| index.vals[i]);
    let one64 = Complex64::new(1.0, 0.0);
    let mult_of = |i: usize| index.mults[i];

    let mut triples: Vec<[usize; 3]> = (0..nr)
        .into_par_iter()
        .filter(|&a| mult_of(a) == mult_of(src[0]))
        .flat_map_iter(|a| {
            let index = &index;
            let mut out = Vec::new();
            for b in (0..nr).filter(|&b| b != a && mult_of(b) == mult_of(src[1])) {
                for c in (0..nr).filter(|&c| c != a && c != b && mult_of(c) == mult_of(src[2])) {
                    let g = solve_triple(src_vals.each_ref(), [&index.vals[a], &index.vals[b], &index.vals[c]], &one64);
                    let ok = (0..nr)
                        .filter(|i| !src.contains(i))
                        .all(|i| index.near(mobius64(&g, index.vals[i]), tau64, index.mults[i]).next().is_some());
                    if ok {
                        out.push([a, b, c]);
                    }
                }
            }
            out
        })
        .collect();
    triples.sort_unstable();

    let form = FormEval::new(p, prec);
    let samples = sample_points(p.degree() + 1, seed, prec);
    let base: Vec<(BigComplex, BigFloat)> = samples.iter().map(|(x, y)| form.eval(x, y)).collect();
    let bound = -(prec as f64) / 2.0;
    let conj = (shift != 0).then(|| {
        let m = ProjectiveMatrix::from_rational(&rat_matrix([[1, 0], [shift, 1]]), prec).expect("unimodular");
        (m.inverse(), m)
    });
    let roots: Vec<&BigComplex> = rs.roots.iter().map(|r| &r.value).collect();
    let one = BigComplex::one(prec);

    let verdicts: Vec<Verdict> = triples
        .par_iter()
        .map(|&t| {
            let entries = solve_triple(src.map(|i| roots[i]), t.map(|i| roots[i]), &one);
            let Some(g) = ProjectiveMatrix::new(entries) else {
                return Verdict::Reject;
            };
            let mut perm = Vec::with_capacity(nr);
            let mut used = vec![false; nr];
            let mut drift = f64::NEG_INFINITY;
            for (i, z) in roots.iter().enumerate() {
                let Some(gz) = g.apply(z) else {
                    return Verdict::Reject;
                };
                let best = index
                    .near(gz.to_c64(), tau64, index.mults[i])
                    .map(|j| ((&gz - roots[j]).abs(), j))
                    .min_by(|a, b| cmp(&a.0, &b.0));
                match best {
                    Some((d, j)) if cmp(&d, &tau).is_lt() && !used[j] => {
                        used[j] = true;
                        perm.push(j);
                        drift = drift.max(log2_abs(&d) - scale.log2());
                    }
                    _ => return Verdict::Reject,
                }
            }
            // Back to the frame of p: M g M^-1.
            let proj = match &conj {
                Some((inv, m)) => m.mul(&g).mul(inv),
                None => g,
            };
            let (lambda, worst) = invariance_residual(&form, &proj, &samples, &base);
            if worst > bound {
                // Matching within tau is necessary only. An exact root
                // permutation forces invariance, so only a near-exact match
                // that still fails points at lost precision.
                return if drift <= -(prec as f64) / 4.0 { Verdict::Escalate } else { Verdict::Reject };
            }
            Verdict::Accept { triple: t, perm, proj, lambda }
        })
        .collect();

    if verdicts.iter().any(|v| matches!(v, Verdict::Escalate)) {
        return Ok(None);
    }
    let mut accepted: Vec<([usize; 3], Vec<usize>, ProjectiveMatrix, BigComplex)> = verdicts
        .into_iter()
        .filter_map(|v| match v {
            Verdict::Accept { triple, perm, proj, lambda } => Some((triple, perm, proj, lambda)),
            _ => None,
        })
        .collect();
    // Distinct Möbius maps act by distinct permutations on three or more points.
    let mut by_perm: HashMap<Vec<usize>, usize> = HashMap::new();
    accepted.retain(|(_, perm, _, _)| {
        let fresh = !by_perm.contains_key(perm);
        if fresh {
            by_perm.insert(perm.clone(), by_perm.len());
        }
        fresh
    });

    let mut missing = 0;
    for (_, g, _, _) in &accepted {
        for (_, h, _, _) in &accepted {
            let gh: Vec<usize> = h.iter().map(|&i| g[i]).collect();
            if !by_perm.contains_key(&gh) {
                missing += 1;
            }
        }
    }
    if missing > 0 {
        return Err(SymmetryError::ClosureFailure { order: accepted.len(), missing });
    }
    debug_assert!(accepted.len() as f64 <= class_permutation_bound(&index.mults));

    let mut elements: Vec<(usize, [usize; 3], SymmetryElement)> = accepted
        .into_iter()
        .map(|(triple, perm, proj, lambda)| {
            let order = permutation_order(&perm);
            (order, triple, SymmetryElement { proj, lambda, order })
        })
        .collect();
    elements.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
    let elements: Vec<SymmetryElement> = elements.into_iter().map(|e| e.2).collect();
    let iso = identify_group(&elements)?;
    Ok(Some(SymmetryGroup { kind: Finiteness::Finite, degree: p.degree(), elements, iso: Some(iso), prec }))
}

fn permutation_order(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut order = 1;
    for s in 0..perm.len() {
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        if len > 0 {
            order = order.lcm(&len);
        }
    }
    order
}

/// Number of permutations preserving multiplicity classes, as f64.
fn class_permutation_bound(mults: &[usize]) -> f64 {
    let mut sizes: HashMap<usize, usize> = HashMap::new();
    for &m in mults {
        *sizes.entry(m).or_insert(0) += 1;
    }
    sizes.values().map(|&k| (1..=k).map(|i| i as f64).product::<f64>()).product()
}

/// The scalings that lift each projective symmetry to `S(p)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarLift {
    pub degree: usize,
    pub proj_order: usize,
    pub full_order: usize,
    /// For each element `A`, one `c` with `c^n lambda_A = 1`; the lifts of
    /// `A` are `zeta c A` over the `n`-th roots of unity `zeta`.
    pub scalings: Vec<BigComplex>,
}

pub fn lift_scalars(g: &SymmetryGroup) -> Option<ScalarLift> {
    let proj_order = g.proj_order()?;
    let n = g.degree as u64;
    let scalings = g.elements.iter().map(|e| e.lambda.recip().nth_root(n)).collect();
    Some(ScalarLift { degree: g.degree, proj_order, full_order: proj_order * g.degree, scalings })
}

/// `diag(1, zeta_m)`, a symmetry of every form whose weights are divisible by `m`.
pub fn divisibility_witness(m: u64, prec: usize) -> ProjectiveMatrix {
    let (o, z) = (BigComplex::one(prec), BigComplex::zero(prec));
    ProjectiveMatrix::new([o, z.clone(), z, BigComplex::root_of_unity(1, m, prec)]).expect("nonsingular")
}

/// `v = 2^(-1/2) [[1, zeta_8], [zeta_8^-1, -1]]`, projectively.
pub fn v_matrix(prec: usize) -> ProjectiveMatrix {
    let z8 = BigComplex::root_of_unity(1, 8, prec);
    let one = BigComplex::one(prec);
    ProjectiveMatrix::new([one.clone(), z8.clone(), z8.conj(), -&one]).expect("nonsingular")
}

/// Whether `p^v = +p` or `-p` (the scalar `2^(-n/2)` included), at relative
/// residual `2^(-prec/2)`.
pub fn check_v_antiinvariance(p: &HomPoly, prec: usize) -> Option<i8> {
    let v = v_matrix(prec);
    let n = p.degree();
    let (lambda, worst) = invariance_check(p, &v, n + 1, 0x7);
    let bound = -(prec as f64) / 2.0;
    if worst > bound {
        return None;
    }
    // The canonical v is the printed matrix times sqrt 2, which scales
    // p^v by 2^(n/2).
    let half = BigFloat::from_word(2, prec).sqrt(prec, RM).powi(n, prec, RM);
    let scaled = lambda.scale(&BigFloat::from_word(1, prec).div(&half, prec, RM));
    for sign in [1i8, -1] {
        let target = BigComplex::from_f64(sign as f64, 0.0, prec);
        if (&scaled - &target).log2_abs() <= bound {
            return Some(sign);
        }
    }
    None
}
