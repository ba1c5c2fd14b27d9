mod common;

use common::*;
use proptest::prelude::*;
use signfam_core::constructions::{
    b2_group_key, classify_vector, ekr_family, family_xy_tm, inductive_extend, partition_by_last, shorten,
    split_family, ClassKind, ComparisonSide, LastClass,
};
use signfam_core::solver::{verify_family, ForbiddenSpec};
use signfam_core::{enumerate_all, VectorFamily};

fn min_spec(l: usize) -> ForbiddenSpec {
    ForbiddenSpec::exact([-2 * l as i32])
}

#[test]
fn constructions_are_valid_up_to_dim_8() {
    for n in 3..=8 {
        for p in extremal_profiles(n) {
            let ekr = ekr_family(p);
            assert_eq!(
                ekr.len() as u128,
                pascal(n - 1, p.k + p.l - 1) * pascal(p.k + p.l - 1, p.l),
                "{p}"
            );
            assert!(verify_family(&ekr, &min_spec(p.l)).passed());

            if n < 8 {
                let ext = inductive_extend(&ekr).unwrap();
                let inc = pascal(n, p.k + p.l - 1) * pascal(p.k + p.l - 1, p.l - 1);
                assert_eq!((ext.len() - ekr.len()) as u128, inc);
                assert!(verify_family(&ext, &min_spec(p.l)).passed());
            }

            for x in p.k..=n - p.l {
                let xs: Vec<usize> = (1..=x).collect();
                let s = split_family(p, &xs).unwrap();
                assert_eq!(s.len() as u128, pascal(x, p.k) * pascal(n - x, p.l));
                assert!(verify_family(&s, &ForbiddenSpec::AllBelow(0)).passed());
            }
        }
    }
}

#[test]
fn partition_covers_family() {
    for p in profiles(6) {
        let fam = enumerate_all(p);
        let part = partition_by_last(&fam);
        assert_eq!(part.minus.len() + part.zero.len() + part.plus.len(), fam.len());
        assert!(part.plus.iter().all(|v| LastClass::of(v) == LastClass::Plus));
    }
}

#[test]
fn b2_members_have_expected_prefix_counts() {
    for n in 3..=8 {
        for p in extremal_profiles(n) {
            for v in enumerate_all(p).iter().filter(|v| LastClass::of(v) == LastClass::Plus) {
                let c = classify_vector(v).unwrap();
                if let ClassKind::B2 { j, j_prime } = c.kind {
                    assert_eq!(v.plus_in_prefix(j_prime - 1), p.k - j + 1, "{v}");
                    assert_eq!(v.minus_in_prefix(j_prime - 1), p.l - j, "{v}");
                    let short = shorten(v, j_prime).unwrap();
                    assert_eq!((short.k(), short.l()), (p.k - j + 1, p.l - j));
                    let key = b2_group_key(v, j_prime).unwrap();
                    assert_eq!(key.dim(), n - j_prime + 1);
                    // The tail starting at j' sums to -1.
                    let sum: i32 = key.to_coords().iter().map(|&c| c as i32).sum();
                    assert_eq!(sum, -1);
                }
            }
        }
    }
}

#[test]
fn b1_classes_match_comparison_families() {
    for n1 in 4..=9 {
        for p in extremal_profiles(n1) {
            let plus = enumerate_all(p).filter(|v| LastClass::of(v) == LastClass::Plus);
            for t in 1..=p.k {
                if 2 * t - 1 > n1 - 1 {
                    continue;
                }
                for m in 0..=p.l {
                    let y = family_xy_tm(p, t, m, ComparisonSide::Y).unwrap();
                    // Classified members with smallest t and m equal the Y
                    // members whose smaller odd prefixes are sparse.
                    let by_class: VectorFamily =
                        plus.filter(|v| classify_vector(v).unwrap().kind == ClassKind::B1 { t, m });
                    let by_y = y.filter(|v| (1..t).all(|s| v.plus_in_prefix(2 * s - 1) != s));
                    assert_eq!(by_class, by_y, "{p} t={t} m={m}");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn split_avoids_negative_products((p, xs) in any_profile(9).prop_flat_map(|p| (Just(p), prop::sample::subsequence((1..=p.n).collect::<Vec<_>>(), p.k..=p.n - p.l)))) {
        let s = split_family(p, &xs).unwrap();
        prop_assert!(s.min_pairwise_product().is_none_or(|d| d >= 0));
    }

    #[test]
    fn inductive_increment_on_random_inputs((p, vs) in vectors_with_dim(3, 7, 10)) {
        prop_assume!(p.k > p.l && p.l >= 1);
        let mut kept = Vec::new();
        for v in vs {
            if kept.iter().all(|w| dot_by_coords(&v, w) != -2 * p.l as i32) {
                kept.push(v);
            }
        }
        let fam = VectorFamily::new(p, kept).unwrap();
        let ext = inductive_extend(&fam).unwrap();
        let inc = pascal(p.n, p.k + p.l - 1) * pascal(p.k + p.l - 1, p.l - 1);
        prop_assert_eq!((ext.len() - fam.len()) as u128, inc);
        prop_assert!(verify_family(&ext, &min_spec(p.l)).passed());
    }
}
