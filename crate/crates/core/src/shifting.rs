//! `(i <- j)`-shifts, the shifting partial order, and family compression.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::vec::Vec;

use crate::combinatorics::low_mask;
use crate::error::{Error, Result};
use crate::vector::{SignedVector, VectorFamily};

/// Dimension guard for the breadth-first oracle.
pub const ORACLE_MAX_DIM: usize = 8;

/// The shift pair `(i, j)` with `1 <= i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShiftMove {
    i: usize,
    j: usize,
}

impl ShiftMove {
    pub fn new(i: usize, j: usize) -> Result<Self> {
        if i == 0 || i >= j {
            return Err(Error::Domain(format!("shift ({i},{j}) needs 1 <= i < j")));
        }
        Ok(Self { i, j })
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    /// All moves for dimension `dim`, in lexicographic order.
    pub fn all(dim: usize) -> impl Iterator<Item = ShiftMove> {
        (1..dim).flat_map(move |i| (i + 1..=dim).map(move |j| ShiftMove { i, j }))
    }
}

/// Puts `max(v_i, v_j)` at `i` and `min(v_i, v_j)` at `j`.
pub fn shift(v: &SignedVector, mv: ShiftMove) -> Result<SignedVector> {
    if mv.j > v.dim() {
        return Err(Error::IndexOutOfRange {
            index: mv.j,
            dim: v.dim(),
        });
    }
    Ok(shift_unchecked(v, mv))
}

#[inline]
pub(crate) fn shift_unchecked(v: &SignedVector, mv: ShiftMove) -> SignedVector {
    let (a, b) = (v.coord(mv.i), v.coord(mv.j));
    if a >= b {
        *v
    } else {
        v.with_coord(mv.i, b).with_coord(mv.j, a)
    }
}

/// Distinct single-shift images of `v` other than `v` itself.
pub fn shift_images(v: &SignedVector) -> Vec<SignedVector> {
    let mut out: Vec<SignedVector> = ShiftMove::all(v.dim())
        .map(|mv| shift_unchecked(v, mv))
        .filter(|u| u != v)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// `Σ_i i * (v_i + 1)`; every non-trivial shift strictly decreases it.
pub fn shift_potential(v: &SignedVector) -> u64 {
    (1..=v.dim()).map(|i| i as u64 * (v.coord(i) + 1) as u64).sum()
}

/// `v ≺ w` or `v = w`.
///
/// Uses prefix dominance: equal coordinate multisets, and every prefix of
/// `v` holds at least as many `+1`s and at least as many non-negative
/// coordinates as the same prefix of `w`.
pub fn precedes(v: &SignedVector, w: &SignedVector) -> Result<bool> {
    if v.dim() != w.dim() {
        return Err(Error::DimensionMismatch {
            left: v.dim(),
            right: w.dim(),
        });
    }
    Ok(precedes_unchecked(v, w))
}

pub(crate) fn precedes_unchecked(v: &SignedVector, w: &SignedVector) -> bool {
    if v.k() != w.k() || v.l() != w.l() {
        return false;
    }
    (1..=v.dim()).all(|p| {
        let m = low_mask(p);
        (v.pos_mask() & m).count_ones() >= (w.pos_mask() & m).count_ones()
            && (v.neg_mask() & m).count_ones() <= (w.neg_mask() & m).count_ones()
    })
}

/// Breadth-first search over single shifts starting from `w`.
pub fn precedes_oracle(v: &SignedVector, w: &SignedVector) -> Result<bool> {
    if v.dim() != w.dim() {
        return Err(Error::DimensionMismatch {
            left: v.dim(),
            right: w.dim(),
        });
    }
    if v.dim() > ORACLE_MAX_DIM {
        return Err(Error::TooLarge {
            size: v.dim(),
            cap: ORACLE_MAX_DIM,
        });
    }
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(*w);
    queue.push_back(*w);
    while let Some(x) = queue.pop_front() {
        if x == *v {
            return Ok(true);
        }
        for mv in ShiftMove::all(x.dim()) {
            let y = shift_unchecked(&x, mv);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    Ok(false)
}

/// Closed under every single shift.
pub fn is_shifted(fam: &VectorFamily) -> bool {
    fam.iter()
        .all(|w| ShiftMove::all(w.dim()).all(|mv| fam.contains(&shift_unchecked(w, mv))))
}

/// Compresses `fam` to a shifted family of the same size.
///
/// Moves are scanned in lexicographic order; each move is applied to every
/// member whose image is absent, and the scan restarts after any change.
/// Termination: every replacement strictly lowers the total
/// [`shift_potential`] of the family.
pub fn compress(fam: &VectorFamily) -> VectorFamily {
    let profile = fam.profile();
    let mut set: BTreeSet<SignedVector> = fam.iter().copied().collect();
    let moves: Vec<ShiftMove> = ShiftMove::all(profile.n).collect();
    'restart: loop {
        for &mv in &moves {
            let mut changed = false;
            let snapshot: Vec<SignedVector> = set.iter().copied().collect();
            for w in snapshot {
                let u = shift_unchecked(&w, mv);
                if u != w && !set.contains(&u) {
                    set.remove(&w);
                    set.insert(u);
                    changed = true;
                }
            }
            if changed {
                continue 'restart;
            }
        }
        break;
    }
    VectorFamily::new(profile, set).expect("shifts preserve the profile")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::{enumerate_all, Profile};
    use alloc::string::ToString;

    fn sv(s: &str) -> SignedVector {
        s.parse().unwrap()
    }

    fn mv(i: usize, j: usize) -> ShiftMove {
        ShiftMove::new(i, j).unwrap()
    }

    #[test]
    fn shift_examples() {
        assert_eq!(shift(&sv("-+"), mv(1, 2)).unwrap().to_string(), "+-");
        assert_eq!(shift(&sv("+-"), mv(1, 2)).unwrap().to_string(), "+-");
        assert_eq!(shift(&sv("0+-+"), mv(1, 2)).unwrap().to_string(), "+0-+");
        assert!(shift(&sv("0+"), mv(1, 3)).is_err());
        assert!(ShiftMove::new(2, 2).is_err());
        assert!(ShiftMove::new(0, 2).is_err());
    }

    #[test]
    fn precedes_examples() {
        for (v, w, expected) in [("+0", "0+", true), ("0+", "+0", false), ("+0+-", "0+-+", true)] {
            assert_eq!(precedes(&sv(v), &sv(w)).unwrap(), expected, "{v} vs {w}");
            assert_eq!(precedes_oracle(&sv(v), &sv(w)).unwrap(), expected, "{v} vs {w}");
        }
        assert!(precedes_oracle(&sv("+0-"), &sv("+0-")).unwrap());
        assert!(precedes_oracle(&sv("+-"), &sv("-+")).unwrap());
        assert!(precedes(&sv("+0"), &sv("+0-")).is_err());
        assert!(matches!(
            precedes_oracle(&sv("+00000000"), &sv("00000000+")),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn is_shifted_examples() {
        let p = Profile::new(3, 1, 1).unwrap();
        // "+0-" is fixed by every move; "+-0" goes to "+0-" under (2,3).
        let f = VectorFamily::new(p, [sv("+0-"), sv("+-0")]).unwrap();
        assert!(is_shifted(&f));
        let g = VectorFamily::new(Profile::new(2, 1, 0).unwrap(), [sv("0+")]).unwrap();
        assert!(!is_shifted(&g));
        assert!(is_shifted(&enumerate_all(Profile::new(5, 2, 1).unwrap())));
    }

    #[test]
    fn compress_examples() {
        let g = VectorFamily::new(Profile::new(2, 1, 0).unwrap(), [sv("0+")]).unwrap();
        let c = compress(&g);
        assert_eq!(c.members(), [sv("+0")]);

        let p = Profile::new(3, 1, 1).unwrap();
        let f = VectorFamily::new(p, [sv("+0-"), sv("+-0")]).unwrap();
        assert_eq!(compress(&f), f);

        let h = VectorFamily::new(Profile::new(4, 2, 1).unwrap(), [sv("0+-+"), sv("+-0+")]).unwrap();
        let c = compress(&h);
        assert_eq!(c.len(), 2);
        assert!(is_shifted(&c));
    }

    #[test]
    fn potential_strictly_drops_under_shift() {
        for v in enumerate_all(Profile::new(5, 2, 2).unwrap()).iter() {
            for u in shift_images(v) {
                assert!(shift_potential(&u) < shift_potential(v));
            }
        }
    }
}
