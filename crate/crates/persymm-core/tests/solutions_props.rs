use num_bigint::BigInt;
use persymm_core::solutions::{count_solutions_bruteforce, count_solutions_formula};
use persymm_core::{ShapeParams, SolutionCountQuery};
use proptest::prelude::*;

fn query(q: usize, s: usize, m: usize, k: usize) -> SolutionCountQuery {
    SolutionCountQuery::new(q, ShapeParams::new(s, m, k).unwrap()).unwrap()
}

#[test]
fn formula_matches_bruteforce() {
    let mut cases = vec![];
    for q in 1..=2 {
        for (s, m, k) in [(2, 0, 1), (2, 0, 2), (2, 1, 1), (2, 1, 2), (3, 0, 2), (1, 2, 3), (3, 1, 3)] {
            cases.push(query(q, s, m, k));
        }
    }
    cases.push(query(3, 2, 0, 1));
    cases.push(query(3, 1, 0, 2));
    for qu in cases {
        assert_eq!(count_solutions_bruteforce(&qu, 24).unwrap(), count_solutions_formula(&qu).unwrap(), "{qu:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn single_triple_kernel(s in 1usize..=20, m in 0usize..=10, k in 1usize..=30) {
        let want = (BigInt::from(1) << (2 * s + m)) + (BigInt::from(1) << k) - 1;
        prop_assert_eq!(count_solutions_formula(&query(1, s, m, k)).unwrap(), want);
    }

    #[test]
    fn monotone_in_each_argument(q in 1usize..=5, s in 1usize..=8, m in 0usize..=5, k in 1usize..=12) {
        let base = count_solutions_formula(&query(q, s, m, k)).unwrap();
        for bigger in [query(q + 1, s, m, k), query(q, s + 1, m, k), query(q, s, m + 1, k), query(q, s, m, k + 1)] {
            prop_assert!(count_solutions_formula(&bigger).unwrap() >= base, "{:?}", bigger);
        }
    }
}
