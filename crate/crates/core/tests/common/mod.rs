#![allow(dead_code)]

use proptest::prelude::*;
use signfam_core::{enumerate_all, Profile, SignedVector};

pub fn prof(n: usize, k: usize, l: usize) -> Profile {
    Profile::new(n, k, l).unwrap()
}

pub fn sv(s: &str) -> SignedVector {
    s.parse().unwrap()
}

/// Every `(k, l)` with `k >= 1`, `k + l <= n`.
pub fn profiles(n: usize) -> impl Iterator<Item = Profile> {
    (1..=n).flat_map(move |k| (0..=n - k).map(move |l| prof(n, k, l)))
}

/// Profiles with `k > l >= 1`.
pub fn extremal_profiles(n: usize) -> impl Iterator<Item = Profile> {
    profiles(n).filter(|p| p.k > p.l && p.l >= 1)
}

/// Pascal-triangle binomial, independent of the library's big-integer code.
pub fn pascal(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![1u128; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row[r]
}

/// Coordinate-wise scalar product.
pub fn dot_by_coords(v: &SignedVector, w: &SignedVector) -> i32 {
    v.to_coords()
        .iter()
        .zip(w.to_coords())
        .map(|(&a, b)| a as i32 * b as i32)
        .sum()
}

pub fn any_profile(max_n: usize) -> impl Strategy<Value = Profile> {
    profile_with_dim(1, max_n)
}

pub fn profile_with_dim(lo: usize, hi: usize) -> impl Strategy<Value = Profile> {
    (lo..=hi)
        .prop_flat_map(|n| (Just(n), 1..=n))
        .prop_flat_map(|(n, k)| (Just(n), Just(k), 0..=n - k))
        .prop_map(|(n, k, l)| prof(n, k, l))
}

pub fn vector_in(p: Profile) -> impl Strategy<Value = SignedVector> {
    prop::sample::select(enumerate_all(p).members().to_vec())
}

/// A profile together with `count` members drawn from it.
pub fn vectors_in_profile(max_n: usize, count: usize) -> impl Strategy<Value = (Profile, Vec<SignedVector>)> {
    vectors_with_dim(1, max_n, count)
}

pub fn vectors_with_dim(lo: usize, hi: usize, count: usize) -> impl Strategy<Value = (Profile, Vec<SignedVector>)> {
    profile_with_dim(lo, hi).prop_flat_map(move |p| (Just(p), prop::collection::vec(vector_in(p), count)))
}
