//! Dominance-order predicates against brute-force enumeration.

mod common;

use std::collections::BTreeSet;

use km_satake::satake::{coroot_step_witness, grs_nonempty_window, grt_chart_window, st_nonempty, strata_interval};
use km_satake::weyl::{act_coweight, dominance_leq, is_dominant};
use km_satake::RootDatum;
use proptest::prelude::*;

/// Every coweight in a coordinate box around `mu` and `lambda`.
fn box_interval(d: &RootDatum, mu: &[i64], lambda: &[i64], pad: i64) -> BTreeSet<Vec<i64>> {
    let lo: Vec<i64> = mu.iter().zip(lambda).map(|(a, b)| a.min(b) - pad).collect();
    let hi: Vec<i64> = mu.iter().zip(lambda).map(|(a, b)| a.max(b) + pad).collect();
    let mut all = vec![vec![]];
    for k in 0..lo.len() {
        all = all
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (lo[k]..=hi[k]).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    all.into_iter()
        .filter(|nu| is_dominant(d, nu).unwrap() && dominance_leq(d, mu, nu) && dominance_leq(d, nu, lambda))
        .collect()
}

#[test]
fn interval_examples() {
    let a1 = common::a1();
    assert_eq!(strata_interval(&a1, &[0], &[2]).unwrap(), vec![vec![0], vec![1], vec![2]]);
    let aff = common::affine_a1();
    let lam = [1, 1, 1];
    let mu = [0, 0, 1];
    let got: BTreeSet<Vec<i64>> = strata_interval(&aff, &mu, &lam).unwrap().into_iter().collect();
    assert_eq!(got, box_interval(&aff, &mu, &lam, 2));
}

#[test]
fn chart_windows() {
    let aff = common::affine_a1();
    let lam = [0, 1, 3];
    let wl = act_coweight(&aff, &[0, 1], &lam).unwrap();
    assert!(grs_nonempty_window(&aff, &lam, &wl, &[0, 1]).unwrap());
    assert!(grt_chart_window(&aff, &lam, &wl, &[0, 1]).unwrap());
    // identity chart: a bound by λ itself
    assert!(grs_nonempty_window(&aff, &lam, &lam, &[]).unwrap());
    // incomparable with wλ: differ by α̌_0 − α̌_1
    let other: Vec<i64> = wl.iter().zip([1, -1, 0]).map(|(a, b)| a + b).collect();
    assert!(!grs_nonempty_window(&aff, &lam, &other, &[0, 1]).unwrap());
    assert!(!grt_chart_window(&aff, &lam, &other, &[0, 1]).unwrap());
}

fn coweight_strategy() -> impl Strategy<Value = (usize, Vec<i64>, Vec<i64>)> {
    (0usize..2, prop::collection::vec(0i64..3, 3), prop::collection::vec(0i64..3, 3))
}

proptest! {
    #[test]
    fn st_nonempty_is_a_partial_order((which, x, y) in coweight_strategy()) {
        let d = if which == 0 { common::affine_a1() } else { common::datum(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]) };
        let r = d.rank();
        let base = vec![0i64; r];
        let mu: Vec<i64> = base.iter().zip(d.coweight_of_coroot_vector(&x[..d.n()])).map(|(a, b)| a + b).collect();
        let nu: Vec<i64> = base.iter().zip(d.coweight_of_coroot_vector(&y[..d.n()])).map(|(a, b)| a + b).collect();
        prop_assert!(st_nonempty(&d, &mu, &mu));
        if st_nonempty(&d, &mu, &nu) && st_nonempty(&d, &nu, &mu) {
            prop_assert_eq!(&mu, &nu);
        }
        let sum: Vec<i64> = mu.iter().zip(&nu).map(|(a, b)| a + b).collect();
        prop_assert!(st_nonempty(&d, &sum, &mu) == y[..d.n()].iter().all(|&c| c >= 0));
    }
}

#[test]
fn witnesses_are_valid() {
    let aff = common::affine_a1();
    let mut checked = 0;
    // (a, a + k, c) pairs to (c − 2k, 2k); dominant when c ≥ 2k
    for a in 0..3 {
        for k in 0..3 {
            for extra in 0..3 {
                let lam = vec![a, a + k, 2 * k + extra];
                for x0 in 0..4 {
                    for x1 in 0..4 {
                        let step = aff.coweight_of_coroot_vector(&[x0, x1]);
                        let mu: Vec<i64> = lam.iter().zip(&step).map(|(p, q)| p - q).collect();
                        if x0 + x1 == 0 || !is_dominant(&aff, &mu).unwrap() {
                            continue;
                        }
                        let w = coroot_step_witness(&aff, &mu, &lam).unwrap();
                        let v = aff.coweight_of_coroot_vector(&w.coroot);
                        let next: Vec<i64> = lam.iter().zip(&v).map(|(p, q)| p - q).collect();
                        assert!(dominance_leq(&aff, &mu, &next));
                        assert_ne!(next, lam);
                        assert_eq!(w.keeps_dominant, is_dominant(&aff, &next).unwrap());
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 20);
}
