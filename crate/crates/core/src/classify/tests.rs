use super::*;
use crate::code::reed_muller;

fn field(q: u64) -> Arc<Field> {
    Arc::new(Field::with_order(q).unwrap())
}

#[test]
fn sum_of_pairs_over_f3_splits() {
    let w = WeightEnumerator::sum_of_pairs(3, 6);
    let r = analyze_infinite(&w, 3).unwrap();
    assert_eq!(r.case, InfiniteCase::SumOfPairs);
    assert_eq!(r.structure, StructureClaim::DirectSumOfPairs { copies: 6 });
    assert_eq!(r.n, 12);
}

#[test]
fn binary_sum_of_pairs_is_open() {
    let w = WeightEnumerator::sum_of_pairs(2, 7);
    let r = analyze_infinite(&w, 2).unwrap();
    assert_eq!(r.case, InfiniteCase::SumOfPairs);
    assert_eq!(r.structure, StructureClaim::ClassificationOpen);
    assert!(!r.notes.is_empty());
}

#[test]
fn full_space_and_zero_code() {
    let r = analyze_infinite(&WeightEnumerator::full_space(5, 5), 5).unwrap();
    assert_eq!((r.case, r.structure), (InfiniteCase::FullSpace, StructureClaim::Full));
    // (x + 4y)^5 by hand: 1, 20, 160, 640, 1280, 1024.
    assert_eq!(WeightEnumerator::full_space(5, 5).coeffs(), WeightEnumerator::from_counts(&[1, 20, 160, 640, 1280, 1024]).coeffs());
    let r = analyze_infinite(&WeightEnumerator::zero_code(4), 7).unwrap();
    assert_eq!((r.case, r.structure), (InfiniteCase::ZeroCode, StructureClaim::Zero));
}

#[test]
fn wrong_pair_constant_contradicts_the_lemma() {
    // (x^2 + y^2)^3 claimed over F_3, where a must be 2.
    let w = WeightEnumerator::sum_of_pairs(2, 3);
    match analyze_infinite(&w, 3) {
        Err(ClassifyError::ContradictsLemma { a, half: 3, q: 3 }) => assert_eq!(a, BigRational::one()),
        other => panic!("{other:?}"),
    }
}

#[test]
fn non_code_shapes_and_finite_inputs() {
    // 2 x^2 + y^2 does not start with A_0 = 1.
    let w = WeightEnumerator::from_counts(&[2, 0, 1]);
    assert_eq!(analyze_infinite(&w, 2).unwrap().structure, StructureClaim::NotACodeEnumerator);
    let h8 = WeightEnumerator::from_counts(&[1, 0, 0, 0, 14, 0, 0, 0, 1]);
    assert_eq!(analyze_infinite(&h8, 2), Err(ClassifyError::Finite));
}

#[test]
fn irreducible_binary_codes() {
    let checks = verify_m_semigroup_generators().unwrap();
    assert_eq!(checks.iter().map(|c| c.n).collect::<Vec<_>>(), M_GENERATOR_LENGTHS);
    for c in &checks {
        assert!(c.enumerator_matches, "X{}", c.index);
        assert!(c.formally_self_dual, "X{}", c.index);
        assert_eq!(c.k, c.n / 2);
        // Only X1 is itself <(1,1)>; the others do not split.
        assert_eq!(c.splits_into_pairs, c.index == 1, "X{}", c.index);
    }
}

#[test]
fn x2_codewords_by_hand() {
    // Independent count: the 8 sums of rows of [I | 111].
    let rows = [[1, 0, 0, 1, 1, 1], [0, 1, 0, 1, 1, 1], [0, 0, 1, 1, 1, 1]];
    let mut hist = [0u64; 7];
    for mask in 0..8 {
        let mut word = [0u8; 6];
        for (r, row) in rows.iter().enumerate() {
            if mask >> r & 1 == 1 {
                for (w, b) in word.iter_mut().zip(row) {
                    *w ^= b;
                }
            }
        }
        hist[word.iter().filter(|&&b| b == 1).count()] += 1;
    }
    // (x^2 + y^2)^3.
    assert_eq!(hist, [1, 0, 3, 0, 3, 0, 1]);
    let code = named_code(&NamedCode::X(2)).unwrap();
    assert_eq!(weight_enumerator(&code, STRUCTURE_BUDGET).unwrap().coeffs(), WeightEnumerator::from_counts(&hist).coeffs());
}

#[test]
fn corollary_examples() {
    for (q, copies) in [(5, 2), (7, 3)] {
        let r = gleason_pierce_corollary_check(q, copies).unwrap();
        assert!(r.in_scope);
        assert!(r.formally_self_dual);
        assert_eq!(r.divisibility, 2);
        assert_eq!(r.case, Some(InfiniteCase::SumOfPairs));
    }
    let r = gleason_pierce_corollary_check(2, 3).unwrap();
    assert!(!r.in_scope);
}

#[test]
fn structural_check_agrees_with_the_enumerator() {
    let mut codes = vec![
        LinearCode::zero(field(3), 5),
        LinearCode::full_space(field(4), 3),
        pair_sum(field(5), 3).unwrap(),
        pair_sum(field(3), 2).unwrap(),
        pair_sum(field(2), 4).unwrap(),
        reed_muller(field(2), 0, 1).unwrap(),
        reed_muller(field(3), 2, 1).unwrap(),
        reed_muller(field(2), 1, 1).unwrap(),
    ];
    // A scaled pair over F_5: <(1, 3)> plus <(2, 4)> on separate coordinates.
    codes.push(LinearCode::from_rows(field(5), vec![vec![1, 3, 0, 0], vec![0, 0, 2, 4]]).unwrap());
    for x in 1..=5 {
        codes.push(named_code(&NamedCode::X(x)).unwrap());
    }
    for code in &codes {
        let w = weight_enumerator(code, STRUCTURE_BUDGET).unwrap();
        let q = code.q() as u64;
        let Finiteness::Infinite(case) = classify_finiteness(&w, q) else {
            panic!("{:?} has a finite group", code.name());
        };
        match structural_case(code).unwrap() {
            Some(s) => assert_eq!(s, case, "{:?}", code.generator()),
            // Only binary pair-sum enumerators can fail to split.
            None => assert!(q == 2 && case == InfiniteCase::SumOfPairs),
        }
    }
}

#[test]
fn overlapping_weight_two_words_do_not_split() {
    // Over F_3, weights 2 and odd weights appear together.
    let code = LinearCode::from_rows(field(3), vec![vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
    assert_eq!(split_pairs(&code).unwrap(), None);
}
