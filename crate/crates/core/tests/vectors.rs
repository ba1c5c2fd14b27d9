mod common;

use common::*;
use proptest::prelude::*;
use signfam_core::{enumerate_all, scalar_product, Error, SignedVector, VectorFamily};

#[test]
fn enumeration_counts_match_pascal() {
    for n in 1..=10 {
        for p in profiles(n) {
            let want = pascal(n, p.k + p.l) * pascal(p.k + p.l, p.k);
            let fam = enumerate_all(p);
            assert_eq!(fam.len() as u128, want, "{p}");
            assert!(fam.iter().all(|v| v.satisfies(&p)));
            assert!(fam.members().windows(2).all(|w| w[0] < w[1]));
        }
    }
}

#[test]
fn product_range_and_extremal_pairs() {
    for n in 1..=6 {
        for p in profiles(n).filter(|p| p.k >= p.l) {
            let fam = enumerate_all(p);
            for v in fam.iter() {
                for w in fam.iter() {
                    let d = scalar_product(v, w).unwrap();
                    assert_eq!(d, dot_by_coords(v, w));
                    assert!(-2 * (p.l as i32) <= d && d <= (p.k + p.l) as i32);
                    let crossed = v.pos_mask() & w.pos_mask() == 0
                        && v.neg_mask() & w.neg_mask() == 0
                        && v.neg_mask() & !w.pos_mask() == 0
                        && w.neg_mask() & !v.pos_mask() == 0;
                    assert_eq!(d == -2 * p.l as i32, crossed, "{v} {w}");
                }
            }
        }
    }
}

#[test]
fn dimension_mismatch_is_an_error() {
    assert!(matches!(
        scalar_product(&sv("+-"), &sv("+-0")),
        Err(Error::DimensionMismatch { left: 2, right: 3 })
    ));
}

/// Right-to-left fold, independent of `suffix_sums`.
fn lambda_fold(v: &SignedVector) -> i32 {
    v.to_coords()
        .iter()
        .rev()
        .fold((0i32, i32::MAX), |(acc, min), &c| {
            let acc = acc + c as i32;
            (acc, min.min(acc))
        })
        .1
}

proptest! {
    #[test]
    fn negation_identities((_, vs) in vectors_in_profile(9, 2)) {
        let (v, w) = (vs[0], vs[1]);
        let d = scalar_product(&v, &w).unwrap();
        prop_assert_eq!(scalar_product(&v.negate(), &w.negate()).unwrap(), d);
        prop_assert_eq!(scalar_product(&v.negate(), &w).unwrap(), -d);
        prop_assert_eq!(scalar_product(&v, &w).unwrap(), scalar_product(&w, &v).unwrap());
    }

    #[test]
    fn lambda_matches_fold((_, vs) in vectors_in_profile(12, 1)) {
        let v = vs[0];
        prop_assert_eq!(v.lambda(), lambda_fold(&v));
        let has_minus_one = v.suffix_sums().contains(&-1);
        prop_assert_eq!(v.suffix_markers().is_some(), has_minus_one);
        if v.lambda() <= -1 {
            prop_assert!(v.suffix_markers().is_some());
        }
    }

    #[test]
    fn text_round_trip((_, vs) in vectors_in_profile(12, 1)) {
        let v = vs[0];
        let back: SignedVector = v.to_string().parse().unwrap();
        prop_assert_eq!(back, v);
        let unicode = v.to_string().replace('-', "\u{2212}");
        prop_assert_eq!(unicode.parse::<SignedVector>().unwrap(), v);
    }

    #[test]
    fn family_membership((p, vs) in vectors_in_profile(7, 6)) {
        let fam = VectorFamily::new(p, vs.iter().copied()).unwrap();
        for v in &vs {
            prop_assert!(fam.contains(v));
        }
        prop_assert!(fam.len() <= vs.len());
    }
}
