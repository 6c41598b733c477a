use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::code::reed_muller;
use crate::gf::Field;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn binary_rm(r: usize, m: usize) -> HomPoly {
    let code = reed_muller(Arc::new(Field::new(2, 1).unwrap()), r, m).unwrap();
    HomPoly::from(&weight_enumerator(&code, DEFAULT_BUDGET).unwrap())
}

#[test]
fn exponent_pairs_solve_the_degree_equation() {
    assert_eq!(exponent_pairs(32, 8, 24), vec![(1, 1), (4, 0)]);
    assert_eq!(exponent_pairs(7, 2, 4), vec![]);
    for (a, b) in exponent_pairs(60, 6, 4) {
        assert_eq!(6 * a + 4 * b, 60);
    }
    assert_eq!(exponent_pairs(60, 6, 4).len(), 6);
}

#[test]
fn generator_is_its_own_decomposition() {
    let (f1, f2) = gleason_generators();
    let d = decompose(&f1, &f1, &f2).unwrap();
    assert_eq!(d.terms, vec![(1, 0, rat(1, 1))]);
    assert!(d.unique);
}

#[test]
fn gleason_generator_values() {
    let (f1, f2) = gleason_generators();
    assert_eq!(f1.as_integers().unwrap(), [1, 0, 0, 0, 14, 0, 0, 0, 1].map(BigInt::from));
    assert_eq!(f2.coeff(8), &rat(759, 1));
    let total: BigRational = f2.coeffs().iter().sum();
    assert_eq!(total, rat(4096, 1));
}

#[test]
fn rm_2_5_lies_in_the_gleason_ring() {
    let p = binary_rm(2, 5);
    let (f1, f2) = gleason_generators();
    let d = decompose(&p, &f1, &f2).unwrap();
    assert!(d.unique);
    let support: Vec<(usize, usize)> = d.terms.iter().map(|t| (t.0, t.1)).collect();
    assert_eq!(support, vec![(1, 1), (4, 0)]);
    assert_eq!(d.reconstruct(), p);

    let mut bumped = p.coeffs().to_vec();
    bumped[8] += rat(1, 1);
    assert_eq!(decompose(&HomPoly::new(bumped), &f1, &f2), Err(DecomposeError::NotMember));
}

#[test]
fn degree_mismatch_and_bad_generators() {
    let (f1, f2) = dihedral_generators(1);
    assert_eq!(
        decompose(&HomPoly::from_integers(&[1, 0, 0, 0, 0, 1]), &f1, &f2),
        Err(DecomposeError::DegreeMismatch { degree: 5, d1: 2, d2: 4 })
    );
    assert_eq!(decompose(&f1, &HomPoly::from_integers(&[3]), &f2), Err(DecomposeError::BadGenerator));
}

#[test]
fn dependent_generators_give_the_earliest_support() {
    // f1 = f2 = x^2: every f1^a f2^b is x^4.
    let x2 = HomPoly::from_integers(&[1, 0, 0]);
    let d = decompose(&HomPoly::from_integers(&[5, 0, 0, 0, 0]), &x2, &x2).unwrap();
    assert!(!d.unique);
    assert_eq!(d.terms, vec![(0, 2, rat(5, 1))]);
}

#[test]
fn dihedral_generators_match_reed_muller() {
    let (f1, f2) = dihedral_generators(3);
    assert_eq!(f1, HomPoly::from_integers(&[1, 0, 0, 0, 0, 0, 0, 0, 1]));
    let mut c = vec![0i64; 17];
    (c[0], c[8], c[16]) = (1, 30, 1);
    assert_eq!(f2, HomPoly::from_integers(&c));
    assert_eq!(dihedral_generators(1), (HomPoly::from_integers(&[1, 0, 1]), HomPoly::from_integers(&[1, 0, 6, 0, 1])));
    for i in 1..=6 {
        let (f1, f2) = dihedral_generators(i);
        assert_eq!(f1, binary_rm(0, i as usize));
        assert_eq!(f2, binary_rm(1, i as usize + 1));
    }
}

#[test]
fn rational_coefficients_are_cleared() {
    let f1 = HomPoly::new(vec![rat(1, 2), rat(0, 1), rat(1, 3)]);
    let f2 = HomPoly::new(vec![rat(0, 1), rat(2, 7), rat(0, 1)]);
    let p = f1.pow(2).scale(&rat(-3, 5)).add(&f1.product(&f2).scale(&rat(11, 4)));
    let d = decompose(&p, &f1, &f2).unwrap();
    assert_eq!(d.reconstruct(), p);
    assert!(d.terms.contains(&(2, 0, rat(-3, 5))));
    assert!(d.terms.contains(&(1, 1, rat(11, 4))));
}

/// `p(x + y, x - y)`, the substitution behind the MacWilliams transform. It
/// is a ring homomorphism, so it carries a ring with generators `f1, f2` onto
/// the ring generated by their images.
fn hadamard(p: &HomPoly) -> HomPoly {
    p.substitute_exact(&crate::wpoly::rat_matrix([[1, 1], [1, -1]])).unwrap()
}

#[test]
fn binary_reed_muller_cells_lie_in_their_rings() {
    let mut checked = Vec::new();
    for m in 1..=7 {
        for r in 1..m {
            let (_, Some(w)) = crate::tables::cell_enumerator(2, r, m, DEFAULT_BUDGET).unwrap() else {
                continue;
            };
            let p = HomPoly::from(&w);
            let (f1, f2) = if m > 2 * r + 1 {
                let i = (m - 1) / r;
                if i == 2 {
                    continue;
                }
                dihedral_generators(i as u32)
            } else if m == 2 * r + 1 {
                gleason_generators()
            } else {
                // RM(r, m) is dual to RM(m - r - 1, m), which is dihedral
                // (RM(0, m) is the first dihedral generator for i = m).
                let s = m - r - 1;
                let i = if s == 0 { m } else { (m - 1) / s };
                if i == 2 {
                    continue;
                }
                let (g1, g2) = dihedral_generators(i as u32);
                (hadamard(&g1), hadamard(&g2))
            };
            let d = decompose(&p, &f1, &f2).unwrap_or_else(|e| panic!("RM({r},{m}): {e}"));
            assert_eq!(d.reconstruct(), p, "RM({r},{m})");
            checked.push((r, m));
        }
    }
    // The nontrivial instances: RM(2,7) over the i = 3 ring, the self-dual
    // RM(2,5), and dual cells on both sides of the i = 2 exclusion.
    for cell in [(2, 7), (2, 5), (1, 3), (5, 7), (6, 7), (4, 6)] {
        assert!(checked.contains(&cell), "{cell:?} not covered: {checked:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn decomposition_recovers_random_combinations(
        coeffs in proptest::collection::vec((-50i64..50, 1i64..20), 6),
    ) {
        let (f1, f2) = dihedral_generators(1);
        // Degree 10 in x^2 + y^2 (degree 2) and degree 4: pairs (1,2), (3,1), (5,0).
        let pairs = exponent_pairs(10, 2, 4);
        let p = pairs.iter().zip(&coeffs).fold(HomPoly::zero(10), |acc, (&(a, b), &(n, d))| {
            acc.add(&f1.pow(a).product(&f2.pow(b)).scale(&rat(n, d)))
        });
        let got = decompose(&p, &f1, &f2).unwrap();
        prop_assert!(got.unique);
        prop_assert_eq!(got.reconstruct(), p);
        for (&(a, b), &(n, d)) in pairs.iter().zip(&coeffs) {
            let c = got.terms.iter().find(|t| (t.0, t.1) == (a, b)).map(|t| t.2.clone()).unwrap_or_else(BigRational::zero);
            prop_assert_eq!(c, rat(n, d));
        }
    }
}
