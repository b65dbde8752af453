use num_bigint::{BigInt, BigUint};
use persymm_core::oracle::{
    augmented_doubling_failures, enumerate_rank_distribution, partition_six_tuple, sigma_augmented_row, sigma_triples,
    six_tuple_failures,
};
use persymm_core::ShapeParams;

const BUDGET: u32 = 22;

fn shapes() -> impl Iterator<Item = ShapeParams> {
    (2..=3).flat_map(|s| (0..=2).flat_map(move |m| (2..=6).map(move |k| ShapeParams::new(s, m, k).unwrap())))
}

#[test]
fn column_growth_identities_hold() {
    for p in shapes() {
        let st = partition_six_tuple(&p, BUDGET).unwrap();
        assert_eq!(st.total(), BigUint::from(1u32) << p.pair_bits());
        let bad = six_tuple_failures(&st);
        assert!(bad.is_empty(), "{p:?}: {bad:?}");
    }
}

#[test]
fn augmented_row_doubling_holds() {
    for p in shapes() {
        let st = sigma_augmented_row(&p, BUDGET).unwrap();
        let bad = augmented_doubling_failures(&st);
        assert!(bad.is_empty(), "{p:?}: {bad:?}");
    }
}

#[test]
fn sigma_marginal_is_rank_distribution() {
    for p in shapes() {
        let st = sigma_triples(&p, BUDGET).unwrap();
        let full = st.marginal(&[2]);
        let d = enumerate_rank_distribution(&p, BUDGET).unwrap();
        for (i, c) in d.counts.iter().enumerate() {
            let got = full.get(&vec![i]).cloned().unwrap_or_default();
            assert_eq!(BigInt::from(got), *c, "{p:?} i={i}");
        }
        for t in st.table.keys() {
            assert!(t[0] <= t[1] && t[1] <= t[2] && t[2] <= p.rank_bound(), "{p:?} {t:?}");
        }
    }
}

#[test]
fn zero_pattern_is_nontrivial() {
    // The step tuple is empty, but its neighbours are not.
    let p = ShapeParams::new(2, 1, 4).unwrap();
    let st = partition_six_tuple(&p, BUDGET).unwrap();
    assert_eq!(st.count(&[1, 2, 1, 2, 1, 2]), BigUint::from(0u32));
    assert!(st.count(&[1, 2, 1, 2, 2, 3]) > BigUint::from(0u32));
}
