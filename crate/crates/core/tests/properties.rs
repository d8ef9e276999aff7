use proptest::prelude::*;

use gridcount::counts::{decompose_lemma, f_direct, f_fast, lines_at_least, lines_exactly, GridQuery};
use gridcount::oracle::CanonicalLine;
use gridcount::totient::{check_partial_summation, TotientTable};

fn table() -> TotientTable {
    TotientTable::build(200).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn partial_summation_holds(pairs in prop::collection::vec((-10.0f64..10.0, -10.0f64..10.0), 1..=64)) {
        let (a, b): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
        prop_assert!(check_partial_summation(&a, &b).unwrap());
    }
}

proptest! {
    #[test]
    fn collinear_pairs_share_a_key(
        px in -50i64..50, py in -50i64..50,
        dx in -7i64..=7, dy in -7i64..=7,
        ks in prop::collection::btree_set(-6i64..=6, 3),
    ) {
        prop_assume!(dx != 0 || dy != 0);
        let pts: Vec<(i64, i64)> = ks.iter().map(|k| (px + k * dx, py + k * dy)).collect();
        let l01 = CanonicalLine::through(pts[0], pts[1]).unwrap();
        let l12 = CanonicalLine::through(pts[1], pts[2]).unwrap();
        let l20 = CanonicalLine::through(pts[2], pts[0]).unwrap();
        prop_assert_eq!(l01, l12);
        prop_assert_eq!(l01, l20);
        prop_assert!(pts.iter().all(|&p| l01.contains(p)));
        prop_assert!(l01.a > 0 || (l01.a == 0 && l01.b > 0));
    }

    #[test]
    fn fast_matches_direct(n in 1u64..=90, q in 1u64..=15) {
        let t = table();
        let query = GridQuery::new(n, q).unwrap();
        let direct = f_direct(query);
        prop_assert_eq!(f_fast(query, &t).unwrap(), direct);
        prop_assert_eq!(direct % 2, 0);
    }

    #[test]
    fn f_nondecreasing_in_n(n in 1u64..=150, q in 1u64..=20) {
        let t = table();
        let here = f_fast(GridQuery::new(n, q).unwrap(), &t).unwrap();
        let next = f_fast(GridQuery::new(n + 1, q).unwrap(), &t).unwrap();
        prop_assert!(here <= next);
    }

    #[test]
    fn lemma_reconstructs_next_f(n in 1u64..=150, q in 1u64..=20) {
        let t = table();
        let d = decompose_lemma(GridQuery::new(n, q).unwrap(), &t).unwrap();
        prop_assert_eq!(q * d.m + d.t, n);
        prop_assert_eq!(d.reconstruct(), f_fast(GridQuery::new(n + 1, q).unwrap(), &t).unwrap());
    }
}

#[test]
fn line_counts_telescope() {
    let t = table();
    for n in 2..=40u64 {
        assert_eq!(lines_at_least(n, n + 1, &t).unwrap(), 0);
        assert_eq!(lines_exactly(n, n + 1, &t).unwrap(), 0);
        for q in 2..=n {
            let tail: u128 = (q..=n).map(|p| lines_exactly(n, p, &t).unwrap()).sum();
            assert_eq!(lines_at_least(n, q, &t).unwrap(), tail, "n={n} q={q}");
        }
    }
}

#[test]
fn line_pair_counting_identity() {
    let t = table();
    for n in 2..=25u64 {
        let pairs: u128 = (2..=n).map(|q| (q * (q - 1) / 2) as u128 * lines_exactly(n, q, &t).unwrap()).sum();
        let nn = (n * n) as u128;
        assert_eq!(pairs, nn * (nn - 1) / 2);
    }
}

#[test]
fn summatory_phi_grows() {
    let t = TotientTable::build(100_000).unwrap();
    let mut prev = 0;
    for i in 1..=100_000 {
        let cur = t.summatory_phi(i).unwrap();
        assert!(cur > prev && cur >= i as u128);
        prev = cur;
    }
}
