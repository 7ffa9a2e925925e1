use std::collections::HashMap;

use num_bigint::BigUint;
use proptest::prelude::*;
use quiddity::enumerate::{
    count_matrix_targets_dp, count_omega, count_quiddity, count_roots, sum_w_over_units, Budgets,
    Method, Sl2Table,
};
use quiddity::{ring_from_str, DpCounter, Elem, Error, Mat2, Ring, WideDpCounter};

const RINGS: &[&str] = &[
    "Zmod:5",
    "Zmod:6",
    "Zmod:10",
    "GF:2^3",
    "PolyQuot:Zmod:4/x^2,2*x",
    "Bivar:Zmod:2/x^2,x*y,y^2",
    "Prod:Zmod:2;GF:3^1",
];

/// Every tuple's `M_n`, by explicit products of generators.
fn naive_histogram(r: &Ring, n: usize) -> HashMap<Mat2, u64> {
    let size = r.size();
    let mut hist = HashMap::new();
    let mut idx = vec![0usize; n];
    loop {
        let m = idx.iter().fold(Mat2::identity(r), |m, &i| {
            Mat2::generator(r, Elem(i as u32)).mul(r, &m)
        });
        *hist.entry(m).or_insert(0) += 1;
        let Some(pos) = idx.iter().rposition(|&i| i + 1 < size) else {
            break;
        };
        idx[pos] += 1;
        idx[pos + 1..].iter_mut().for_each(|i| *i = 0);
    }
    hist
}

fn sl2_by_scan(r: &Ring) -> usize {
    let mut count = 0;
    for a in r.elements() {
        for b in r.elements() {
            for c in r.elements() {
                for d in r.elements() {
                    if Mat2::new(a, b, c, d).det(r) == r.one() {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

#[test]
fn sl2_table_has_every_determinant_one_matrix() {
    for spec in RINGS {
        let r = ring_from_str(spec).unwrap();
        let t = Sl2Table::build(&r, 64).unwrap();
        assert_eq!(t.len(), sl2_by_scan(&r), "{spec}");
        for (i, m) in t.matrices().iter().enumerate() {
            assert_eq!(t.index_of(m), Some(i));
        }
    }
    // |SL2(Z/N)| = N^3 ∏ (1 - p^-2)
    let r = ring_from_str("Zmod:12").unwrap();
    assert_eq!(
        Sl2Table::build(&r, 64).unwrap().len(),
        12 * 12 * 12 * 3 * 8 / (4 * 9)
    );
}

#[test]
fn dp_vector_matches_naive_histogram() {
    for spec in RINGS {
        let r = ring_from_str(spec).unwrap();
        let mut c = WideDpCounter::new(&r, 64).unwrap();
        for n in 1..=4 {
            let hist = naive_histogram(&r, n);
            let v = c.vector(n).unwrap().clone();
            let table = c.table();
            for (m, &count) in &hist {
                let i = table.index_of(m).expect("M_n lies in SL2");
                assert_eq!(*v.get(i), count as u128, "{spec} n={n}");
            }
            let nonzero = v.counts().iter().filter(|&&x| x > 0).count();
            assert_eq!(nonzero, hist.len(), "{spec} n={n}");
        }
    }
}

#[test]
fn brute_force_matches_dp_for_each_query() {
    let budgets = Budgets::default();
    for spec in RINGS {
        let r = ring_from_str(spec).unwrap();
        for n in 1..=4 {
            for a in r.elements() {
                assert_eq!(
                    count_roots(&r, n, a, Method::Brute, &budgets).unwrap(),
                    count_roots(&r, n, a, Method::Dp, &budgets).unwrap(),
                    "{spec} n={n}"
                );
            }
            for u in r.units() {
                assert_eq!(
                    count_quiddity(&r, n, u, Method::Brute, &budgets).unwrap(),
                    count_quiddity(&r, n, u, Method::Dp, &budgets).unwrap(),
                );
            }
            assert_eq!(
                sum_w_over_units(&r, n, Method::Brute, &budgets).unwrap(),
                sum_w_over_units(&r, n, Method::Dp, &budgets).unwrap(),
            );
        }
    }
}

#[test]
fn arbitrary_targets_and_outside_sl2() {
    let r = ring_from_str("Zmod:6").unwrap();
    let budgets = Budgets::default();
    let b = Mat2::new(r.from_int(2), r.from_int(1), r.from_int(1), r.from_int(1));
    for n in 1..=5 {
        assert_eq!(
            count_omega(&r, n, &b, Method::Brute, &budgets).unwrap(),
            count_omega(&r, n, &b, Method::Dp, &budgets).unwrap()
        );
    }
    let singular = Mat2::diag(&r, r.from_int(2), r.one());
    assert_eq!(
        count_omega(&r, 3, &singular, Method::Dp, &budgets).unwrap(),
        BigUint::from(0u8)
    );
    assert_eq!(
        count_omega(&r, 3, &singular, Method::Brute, &budgets).unwrap(),
        BigUint::from(0u8)
    );
}

#[test]
fn budgets_are_enforced() {
    let r = ring_from_str("Zmod:10").unwrap();
    let tight = Budgets {
        brute_leaves: 1000,
        sl2_ring_size: 8,
    };
    assert!(matches!(
        count_roots(&r, 4, r.zero(), Method::Brute, &tight),
        Err(Error::Budget(_))
    ));
    assert!(matches!(
        count_roots(&r, 4, r.zero(), Method::Dp, &tight),
        Err(Error::Budget(_))
    ));
    assert!(matches!(
        count_quiddity(&r, 4, r.from_int(2), Method::Dp, &Budgets::default()),
        Err(Error::NotUnit(_))
    ));
    // u64 counts overflow once |A|^n passes 2^64
    let mut narrow = DpCounter::<u64>::new(&r, 64).unwrap();
    assert!(narrow.roots(19, r.zero()).is_ok());
    assert!(matches!(narrow.roots(20, r.zero()), Err(Error::Budget(_))));
}

#[test]
fn wide_and_big_counters_agree() {
    let r = ring_from_str("PolyQuot:Zmod:4/x^2,2*x").unwrap();
    let mut wide = WideDpCounter::new(&r, 64).unwrap();
    let mut big = DpCounter::<BigUint>::new(&r, 64).unwrap();
    for n in 0..=12 {
        let w: Vec<BigUint> = wide
            .vector(n)
            .unwrap()
            .counts()
            .iter()
            .map(|&x| x.into())
            .collect();
        assert_eq!(w.as_slice(), big.vector(n).unwrap().counts());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn dp_conserves_tuple_count(ring in prop::sample::select(RINGS.to_vec()), n in 0usize..10) {
        let r = ring_from_str(ring).unwrap();
        let (_, v) = count_matrix_targets_dp(&r, n, &Budgets::default()).unwrap();
        prop_assert_eq!(v.total(), BigUint::from(r.size()).pow(n as u32));
        let mut c = DpCounter::<BigUint>::new(&r, 64).unwrap();
        let roots: BigUint = c.roots_by_target(n).unwrap().into_iter().sum();
        prop_assert_eq!(roots, BigUint::from(r.size()).pow(n as u32));
    }

    #[test]
    fn local_nonunit_targets_share_a_count(ring in prop::sample::select(vec!["Zmod:8", "Zmod:9", "PolyQuot:Zmod:4/x^2,2*x", "Bivar:Zmod:2/x^2,x*y,y^2"]), n in 1usize..7) {
        let r = ring_from_str(ring).unwrap();
        let mut c = WideDpCounter::new(&r, 64).unwrap();
        let roots = c.roots_by_target(n).unwrap();
        let zero = roots[0];
        for m in r.nonunits() {
            prop_assert_eq!(roots[m.index()], zero);
        }
    }
}
