//! Observed polynomiality of the count series `N(t)`: on these grids the
//! truncation stops changing well inside the `t`-window, with degree at
//! most the depth of `ν` below `λ`.

mod common;

use km_satake::roots::height;
use km_satake::satake::{mv_count_series, mv_prediction, satake_transform};
use km_satake::{RootDatum, TPoly};

fn check_grid(d: &RootDatum, lambdas: &[Vec<i64>], depth: usize) {
    for lam in lambdas {
        let st = satake_transform(d, lam, depth, 14).unwrap();
        for (x, p) in st.terms.terms() {
            let deg = p.degree().unwrap();
            assert!(deg <= height(x) as usize, "{lam:?} {x:?} {p:?}");
        }
    }
}

#[test]
fn affine_counts_are_polynomials() {
    check_grid(&common::affine_a1(), &[vec![0, 0, 1], vec![0, 1, 2], vec![1, 1, 1], vec![0, 1, 3]], 6);
}

#[test]
fn hyperbolic_counts_are_polynomials() {
    check_grid(&common::hyperbolic(), &[vec![-1, -1], vec![-2, -2]], 5);
}

#[test]
fn frozen_count_series() {
    let aff = common::affine_a1();
    // ν = λ − 3α̌_0 − 3α̌_1
    let n = mv_count_series(&aff, &[0, 1, 2], &[-3, -2, 2], 10).unwrap();
    assert_eq!(n, TPoly::from_coeffs(vec![5, -12, 11, -6, 3, -2, 1]));
    let p = mv_prediction(&aff, &[0, 0, 1], &[-3, -3, 1], 10).unwrap();
    assert_eq!(p.count_series, TPoly::from_coeffs(vec![3, -4, 1]));
    assert_eq!((p.dimension, p.top_components, p.stable_degree), (6, 3, Some(2)));
    let hyp = common::hyperbolic();
    let n = mv_count_series(&hyp, &[-1, -1], &[-3, -3], 10).unwrap();
    assert_eq!(n, TPoly::from_coeffs(vec![4, -10, 8, -2]));
}
