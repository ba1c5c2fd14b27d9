//! Explicit families: first-coordinate (EKR-type), inductive extension,
//! split families `V(X, Y)`, the last-coordinate partition, the comparison
//! families `X^{t,m}` / `Y^{t,m}`, and the classification of plus-class
//! vectors into `B1(t, m)` and `B2(j, j')`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::combinatorics::for_each_combination;
use crate::error::{Error, Result};
use crate::formulas::x_side_minus_count;
use crate::vector::{enumerate_where, mask_indices, Profile, SignedVector, SuffixMarkers, VectorFamily};

/// All vectors with `+1` in coordinate 1.
pub fn ekr_family(profile: Profile) -> VectorFamily {
    enumerate_where(profile, |v| v.coord(1) == 1)
}

/// Every vector `w` of the same shape as `v` with `<v, w> = -2l`.
///
/// Such `w` puts its `-1`s inside `S+(v)`, and its `+1`s on `S-(v)` plus
/// `k - l` zero coordinates of `v`. Requires `k >= l`.
pub fn min_product_partners(v: &SignedVector) -> Vec<SignedVector> {
    let (k, l) = (v.k(), v.l());
    let mut out = Vec::new();
    if k < l {
        return out;
    }
    let plus = v.positive_support();
    let zero_mask = !(v.pos_mask() | v.neg_mask()) & crate::combinatorics::low_mask(v.dim());
    let zeros = mask_indices(zero_mask);
    for_each_combination(plus.len(), l, |neg_pick| {
        let neg: u128 = neg_pick.iter().map(|&i| 1u128 << (plus[i] - 1)).sum();
        for_each_combination(zeros.len(), k - l, |pos_pick| {
            let extra: u128 = pos_pick.iter().map(|&i| 1u128 << (zeros[i] - 1)).sum();
            out.push(SignedVector::from_masks_unchecked(v.dim(), v.neg_mask() | extra, neg));
        });
    });
    out
}

/// First pair of members at the minimum product `-2l`.
///
/// Members are bucketed by negative support. A partner of `v` has its
/// `-1`s on an `l`-subset of `S+(v)`, covers `S-(v)` with `+1`s and
/// avoids `S+(v)` with them, so only those buckets are inspected.
pub fn find_min_product_pair(fam: &VectorFamily) -> Option<(SignedVector, SignedVector)> {
    let l = fam.profile().l;
    if fam.profile().k < l {
        return None;
    }
    let mut by_neg: BTreeMap<u128, Vec<SignedVector>> = BTreeMap::new();
    for w in fam {
        by_neg.entry(w.neg_mask()).or_default().push(*w);
    }
    fam.iter().find_map(|v| {
        let plus = v.positive_support();
        let mut found = None;
        for_each_combination(plus.len(), l, |pick| {
            if found.is_some() {
                return;
            }
            let neg: u128 = pick.iter().map(|&i| 1u128 << (plus[i] - 1)).sum();
            if let Some(bucket) = by_neg.get(&neg) {
                found = bucket
                    .iter()
                    .find(|w| w.pos_mask() & v.neg_mask() == v.neg_mask() && w.pos_mask() & v.pos_mask() == 0)
                    .map(|w| (*v, *w));
            }
        });
        found
    })
}

/// Appends a zero coordinate to every member and adds every vector of the
/// next dimension whose last coordinate is `-1`.
///
/// The input must avoid the product `-2l`; the added group has
/// `C(n, k+l-1) * C(k+l-1, l-1)` members.
pub fn inductive_extend(fam: &VectorFamily) -> Result<VectorFamily> {
    if let Some((v, w)) = find_min_product_pair(fam) {
        return Err(Error::Precondition(format!(
            "input family contains {v} and {w} at product -2l"
        )));
    }
    let next = fam.profile().grow()?;
    let n1 = next.n;
    let appended = fam.iter().map(|v| v.append(0)).collect::<Result<Vec<_>>>()?;
    let fresh = enumerate_where(next, |v| v.coord(n1) == -1);
    VectorFamily::new(next, appended.into_iter().chain(fresh.iter().copied()))
}

/// `V(X, Y)`: `+1`s confined to `X`, `-1`s to the complement `Y`.
pub fn split_family(profile: Profile, x: &[usize]) -> Result<VectorFamily> {
    let Profile { n, k, l } = profile;
    let mut x_mask = 0u128;
    for &i in x {
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, dim: n });
        }
        x_mask |= 1 << (i - 1);
    }
    let xs = mask_indices(x_mask);
    let ys = mask_indices(!x_mask & crate::combinatorics::low_mask(n));
    if xs.len() < k || ys.len() < l {
        return Err(Error::Domain(format!(
            "split with |X|={} and |Y|={} cannot host k={k}, l={l}",
            xs.len(),
            ys.len()
        )));
    }
    let mut out = Vec::new();
    for_each_combination(xs.len(), k, |pp| {
        let pos: u128 = pp.iter().map(|&i| 1u128 << (xs[i] - 1)).sum();
        for_each_combination(ys.len(), l, |nn| {
            let neg: u128 = nn.iter().map(|&i| 1u128 << (ys[i] - 1)).sum();
            out.push(SignedVector::from_masks_unchecked(n, pos, neg));
        });
    });
    VectorFamily::new(profile, out)
}

/// Value of the last coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LastClass {
    Minus,
    Zero,
    Plus,
}

impl LastClass {
    pub fn of(v: &SignedVector) -> Self {
        match v.coord(v.dim()) {
            1 => LastClass::Plus,
            -1 => LastClass::Minus,
            _ => LastClass::Zero,
        }
    }
}

/// Members split by last coordinate into (minus, zero, plus) classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LastPartition {
    pub minus: VectorFamily,
    pub zero: VectorFamily,
    pub plus: VectorFamily,
}

pub fn partition_by_last(fam: &VectorFamily) -> LastPartition {
    LastPartition {
        minus: fam.filter(|v| LastClass::of(v) == LastClass::Minus),
        zero: fam.filter(|v| LastClass::of(v) == LastClass::Zero),
        plus: fam.filter(|v| LastClass::of(v) == LastClass::Plus),
    }
}

/// Which comparison family to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComparisonSide {
    /// Last coordinate `-1`; `m` plus and `max{t-(k-l),0}` minus
    /// coordinates in `[2t-1]`.
    X,
    /// Last coordinate `+1`; `m` minus and `t` plus coordinates in `[2t-1]`.
    Y,
}

/// `X^{t,m}` or `Y^{t,m}` inside `profile`, whose dimension is `n + 1`.
pub fn family_xy_tm(profile: Profile, t: usize, m: usize, side: ComparisonSide) -> Result<VectorFamily> {
    let Profile { n: n1, k, l } = profile;
    if t == 0 || t > k || 2 * t - 1 > n1 - 1 {
        return Err(Error::Domain(format!(
            "needs 1 <= t <= k and 2t - 1 <= n, got t={t}, k={k}, n={}",
            n1 - 1
        )));
    }
    let window = 2 * t - 1;
    Ok(match side {
        ComparisonSide::Y => enumerate_where(profile, |v| {
            v.coord(n1) == 1 && v.minus_in_prefix(window) == m && v.plus_in_prefix(window) == t
        }),
        ComparisonSide::X => {
            let minus = x_side_minus_count(k as u64, l as u64, t as u64) as usize;
            enumerate_where(profile, |v| {
                v.coord(n1) == -1 && v.plus_in_prefix(window) == m && v.minus_in_prefix(window) == minus
            })
        }
    })
}

/// Covering class of a plus-class vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassKind {
    /// Some odd prefix `[2t-1]` holds exactly `t` plus coordinates (smallest
    /// such `t`); `m` counts minus coordinates in that prefix.
    B1 {
        t: usize,
        m: usize,
    },
    /// Negative interlacedness; `j = i(v)`, `j_prime = i'(v)`.
    B2 {
        j: usize,
        j_prime: usize,
    },
    Unclassified,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassificationLabel {
    pub kind: ClassKind,
    pub last: LastClass,
    /// Suffix markers, reported even when the vector lands in `B1`.
    pub markers: Option<SuffixMarkers>,
    /// Membership in `B1'`: some qualifying `t <= k - l`, or a qualifying
    /// `t > k - l` with no minus coordinate in its prefix.
    pub in_b1_prime: bool,
    /// `j' - 1 >= 2(k - j + 1)` for `B2` labels.
    pub cond12: Option<bool>,
}

/// Whether the prefix `[2t-1]` of `v` holds exactly `t` plus coordinates.
pub fn has_plus_majority(v: &SignedVector, t: usize) -> bool {
    t >= 1 && 2 * t - 1 <= v.dim() && v.plus_in_prefix(2 * t - 1) == t
}

/// Classifies a vector whose last coordinate is `+1`.
pub fn classify_vector(v: &SignedVector) -> Result<ClassificationLabel> {
    let last = LastClass::of(v);
    if last != LastClass::Plus {
        return Err(Error::Precondition(format!("{v} does not end in +1")));
    }
    let (k, l) = (v.k(), v.l());
    let qualifying = || {
        (1..)
            .take_while(|t| 2 * t - 1 <= v.dim())
            .filter(|&t| has_plus_majority(v, t))
    };
    let markers = v.suffix_markers();
    let in_b1_prime = qualifying().any(|t| t + l <= k || v.minus_in_prefix(2 * t - 1) == 0);

    let (kind, cond12) = if let Some(t) = qualifying().next() {
        (
            ClassKind::B1 {
                t,
                m: v.minus_in_prefix(2 * t - 1),
            },
            None,
        )
    } else if v.lambda() <= -1 {
        let mk = markers.expect("a suffix sum of -1 exists whenever lambda <= -1");
        let (j, jp) = (mk.i_count, mk.i_prime);
        (
            ClassKind::B2 { j, j_prime: jp },
            Some(jp > 2 * (k + 1).saturating_sub(j)),
        )
    } else {
        (ClassKind::Unclassified, None)
    };
    Ok(ClassificationLabel {
        kind,
        last,
        markers,
        in_b1_prime,
        cond12,
    })
}

/// `v` restricted to `[j', dim]`: the grouping key of a `B2(j, j')` member.
pub fn b2_group_key(v: &SignedVector, j_prime: usize) -> Result<SignedVector> {
    v.restrict(j_prime, v.dim())
}

/// Negated restriction to `[j', dim]`: the key under which a minus-class
/// vector is compared with the `B2` group of the opposite tail.
pub fn minus_group_key(v: &SignedVector, j_prime: usize) -> Result<SignedVector> {
    Ok(v.restrict(j_prime, v.dim())?.negate())
}

/// `v` restricted to `[1, j'-1]`.
pub fn shorten(v: &SignedVector, j_prime: usize) -> Result<SignedVector> {
    if j_prime < 2 {
        return Err(Error::Domain(format!("j' = {j_prime} leaves an empty prefix")));
    }
    v.restrict(1, j_prime - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::enumerate_all;

    fn sv(s: &str) -> SignedVector {
        s.parse().unwrap()
    }

    fn prof(n: usize, k: usize, l: usize) -> Profile {
        Profile::new(n, k, l).unwrap()
    }

    #[test]
    fn ekr_size_example() {
        assert_eq!(ekr_family(prof(4, 2, 1)).len(), 6);
    }

    #[test]
    fn inductive_example_sizes() {
        let base = ekr_family(prof(4, 2, 1));
        let ext = inductive_extend(&base).unwrap();
        assert_eq!(ext.profile(), prof(5, 2, 1));
        assert_eq!(ext.len(), 12);
        let empty = inductive_extend(&VectorFamily::empty(prof(4, 2, 1))).unwrap();
        assert_eq!(empty.len(), 6);
    }

    #[test]
    fn inductive_rejects_bad_input() {
        let p = prof(4, 2, 1);
        let bad = VectorFamily::new(p, [sv("++-0"), sv("-0++")]).unwrap();
        assert!(matches!(inductive_extend(&bad), Err(Error::Precondition(_))));
    }

    #[test]
    fn partners_match_direct_sweep() {
        for (n, k, l) in [(4, 2, 1), (5, 2, 2), (6, 3, 2), (6, 3, 1)] {
            let all = enumerate_all(prof(n, k, l));
            for v in all.iter() {
                let mut fast = min_product_partners(v);
                fast.sort();
                let slow: Vec<_> = all.iter().copied().filter(|w| v.dot(w) == -2 * l as i32).collect();
                assert_eq!(fast, slow, "{v}");
            }
        }
    }

    #[test]
    fn split_example() {
        let f = split_family(prof(4, 2, 1), &[1, 2, 3]).unwrap();
        assert_eq!(f.len(), 3);
        assert!(f.min_pairwise_product().unwrap() >= 0);
        assert!(split_family(prof(4, 2, 1), &[1]).is_err());
        assert!(split_family(prof(4, 2, 1), &[1, 2, 3, 4]).is_err());
        assert!(split_family(prof(4, 2, 1), &[5]).is_err());
    }

    #[test]
    fn partition_examples() {
        let p = partition_by_last(&enumerate_all(prof(2, 1, 1)));
        assert_eq!((p.minus.len(), p.zero.len(), p.plus.len()), (1, 0, 1));
        let p = partition_by_last(&enumerate_all(prof(3, 1, 1)));
        assert_eq!((p.minus.len(), p.zero.len(), p.plus.len()), (2, 2, 2));
    }

    #[test]
    fn classification_examples() {
        let c = classify_vector(&sv("+-0-+")).unwrap();
        assert_eq!(c.kind, ClassKind::B1 { t: 1, m: 0 });
        let c = classify_vector(&sv("++--+")).unwrap();
        assert_eq!(c.kind, ClassKind::B1 { t: 1, m: 0 });
        assert_eq!(c.markers, Some(SuffixMarkers { i_prime: 3, i_count: 2 }));

        // No odd prefix with a plus majority, and a suffix sum of -1.
        let c = classify_vector(&sv("0--+")).unwrap();
        assert_eq!(c.kind, ClassKind::B2 { j: 2, j_prime: 2 });
        assert_eq!(c.cond12, Some(true));
        assert!(classify_vector(&sv("+-")).is_err());

        // lambda >= 0 and sparse prefixes: neither class applies.
        let c = classify_vector(&sv("0-0++")).unwrap();
        assert_eq!(c.kind, ClassKind::Unclassified);
    }

    #[test]
    fn comparison_family_domain() {
        assert!(family_xy_tm(prof(6, 2, 1), 0, 0, ComparisonSide::X).is_err());
        assert!(family_xy_tm(prof(6, 2, 1), 3, 0, ComparisonSide::Y).is_err());
        let y = family_xy_tm(prof(6, 2, 1), 1, 0, ComparisonSide::Y).unwrap();
        assert!(y.iter().all(|v| v.coord(1) == 1 && v.coord(6) == 1));
    }
}
