//! Signed {0,±1}-vectors with a fixed number of `+1` and `-1` coordinates.
//!
//! A vector is stored as two disjoint bit masks: bit `i - 1` of `pos` is set
//! when coordinate `i` equals `+1`, likewise for `neg`. Coordinates are
//! 1-indexed in every public signature.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::combinatorics::{for_each_combination, low_mask};
use crate::error::{Error, Result};

/// Largest supported dimension (width of the backing bit masks).
pub const MAX_DIM: usize = 128;

/// The class `(n, k, l)`: dimension `n`, `k` coordinates equal to `+1` and
/// `l` equal to `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Profile {
    pub n: usize,
    pub k: usize,
    pub l: usize,
}

impl Profile {
    pub fn new(n: usize, k: usize, l: usize) -> Result<Self> {
        let bad = |reason| Error::InvalidProfile { n, k, l, reason };
        if k == 0 {
            return Err(bad("k must be at least 1"));
        }
        if n < k + l {
            return Err(bad("n must be at least k + l"));
        }
        if n > MAX_DIM {
            return Err(bad("n exceeds the supported dimension"));
        }
        Ok(Self { n, k, l })
    }

    /// Checks the standing assumption `k > l >= 1` of the extremal problems.
    pub fn require_extremal(&self) -> Result<()> {
        if self.l == 0 || self.k <= self.l {
            return Err(Error::InvalidProfile {
                n: self.n,
                k: self.k,
                l: self.l,
                reason: "extremal problems require k > l >= 1",
            });
        }
        Ok(())
    }

    /// `C(n, k+l) * C(k+l, k)` as a machine integer, saturating on overflow.
    pub fn family_size_saturating(&self) -> u128 {
        binom_saturating(self.n, self.k + self.l).saturating_mul(binom_saturating(self.k + self.l, self.k))
    }

    /// The same profile one dimension higher.
    pub fn grow(&self) -> Result<Self> {
        Self::new(self.n + 1, self.k, self.l)
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.n, self.k, self.l)
    }
}

pub(crate) fn binom_saturating(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        // acc * (n - i) is divisible by (i + 1) at every step.
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Suffix markers `i'(v)` and `i(v)`: the largest index whose suffix sum is
/// `-1`, and the number of `-1` coordinates from that index on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuffixMarkers {
    pub i_prime: usize,
    pub i_count: usize,
}

/// A {0,±1}-vector of dimension `1..=MAX_DIM`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedVector {
    dim: u8,
    pos: u128,
    neg: u128,
}

impl SignedVector {
    /// Builds a vector from raw masks (bit `i - 1` is coordinate `i`).
    pub fn from_masks(dim: usize, pos: u128, neg: u128) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::Domain(format!("dimension {dim} outside 1..={MAX_DIM}")));
        }
        if pos & neg != 0 {
            return Err(Error::Domain(String::from("positive and negative supports overlap")));
        }
        if (pos | neg) & !low_mask(dim) != 0 {
            return Err(Error::IndexOutOfRange {
                index: 128 - (pos | neg).leading_zeros() as usize,
                dim,
            });
        }
        Ok(Self {
            dim: dim as u8,
            pos,
            neg,
        })
    }

    /// Builds a vector from 1-indexed positive and negative index lists.
    pub fn from_supports(dim: usize, pos: &[usize], neg: &[usize]) -> Result<Self> {
        let to_mask = |idx: &[usize]| -> Result<u128> {
            let mut m = 0u128;
            for &i in idx {
                if i == 0 || i > dim || i > MAX_DIM {
                    return Err(Error::IndexOutOfRange { index: i, dim });
                }
                m |= 1 << (i - 1);
            }
            Ok(m)
        };
        Self::from_masks(dim, to_mask(pos)?, to_mask(neg)?)
    }

    #[inline]
    pub(crate) fn from_masks_unchecked(dim: usize, pos: u128, neg: u128) -> Self {
        debug_assert!(pos & neg == 0 && (pos | neg) & !low_mask(dim) == 0);
        Self {
            dim: dim as u8,
            pos,
            neg,
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    #[inline]
    pub fn pos_mask(&self) -> u128 {
        self.pos
    }

    #[inline]
    pub fn neg_mask(&self) -> u128 {
        self.neg
    }

    /// Number of `+1` coordinates.
    #[inline]
    pub fn k(&self) -> usize {
        self.pos.count_ones() as usize
    }

    /// Number of `-1` coordinates.
    #[inline]
    pub fn l(&self) -> usize {
        self.neg.count_ones() as usize
    }

    pub fn satisfies(&self, p: &Profile) -> bool {
        self.dim() == p.n && self.k() == p.k && self.l() == p.l
    }

    /// Coordinate `i` (1-indexed) as `-1`, `0` or `1`.
    pub fn get(&self, i: usize) -> Result<i8> {
        if i == 0 || i > self.dim() {
            return Err(Error::IndexOutOfRange {
                index: i,
                dim: self.dim(),
            });
        }
        Ok(self.coord(i))
    }

    #[inline]
    pub(crate) fn coord(&self, i: usize) -> i8 {
        let bit = 1u128 << (i - 1);
        if self.pos & bit != 0 {
            1
        } else if self.neg & bit != 0 {
            -1
        } else {
            0
        }
    }

    /// Returns a copy with coordinate `i` (1-indexed, in range) set to `value`.
    #[inline]
    pub(crate) fn with_coord(mut self, i: usize, value: i8) -> Self {
        let bit = 1u128 << (i - 1);
        self.pos &= !bit;
        self.neg &= !bit;
        match value {
            1 => self.pos |= bit,
            -1 => self.neg |= bit,
            _ => {}
        }
        self
    }

    /// Coordinates as a dense `i8` vector, index 0 holding coordinate 1.
    pub fn to_coords(&self) -> Vec<i8> {
        (1..=self.dim()).map(|i| self.coord(i)).collect()
    }

    /// The support `S(v)`.
    pub fn support(&self) -> Vec<usize> {
        mask_indices(self.pos | self.neg)
    }

    /// The positive support `S+(v)`.
    pub fn positive_support(&self) -> Vec<usize> {
        mask_indices(self.pos)
    }

    /// The negative support `S-(v)`.
    pub fn negative_support(&self) -> Vec<usize> {
        mask_indices(self.neg)
    }

    /// `|S+(v) ∩ [1..p]|`.
    #[inline]
    pub fn plus_in_prefix(&self, p: usize) -> usize {
        (self.pos & low_mask(p.min(self.dim()))).count_ones() as usize
    }

    /// `|S-(v) ∩ [1..p]|`.
    #[inline]
    pub fn minus_in_prefix(&self, p: usize) -> usize {
        (self.neg & low_mask(p.min(self.dim()))).count_ones() as usize
    }

    /// Scalar product without the dimension check.
    #[inline]
    pub(crate) fn dot(&self, other: &Self) -> i32 {
        let same = (self.pos & other.pos) | (self.neg & other.neg);
        let cross = (self.pos & other.neg) | (self.neg & other.pos);
        same.count_ones() as i32 - cross.count_ones() as i32
    }

    /// Sub-vector on coordinates `a..=b`, reindexed to `1..=b-a+1`.
    pub fn restrict(&self, a: usize, b: usize) -> Result<Self> {
        if a == 0 || a > b || b > self.dim() {
            return Err(Error::Domain(format!(
                "window [{a}, {b}] not inside [1, {}]",
                self.dim()
            )));
        }
        let width = b - a + 1;
        let m = low_mask(width);
        Ok(Self::from_masks_unchecked(
            width,
            (self.pos >> (a - 1)) & m,
            (self.neg >> (a - 1)) & m,
        ))
    }

    /// Coordinate-wise negation (swaps the supports).
    pub fn negate(&self) -> Self {
        Self::from_masks_unchecked(self.dim(), self.neg, self.pos)
    }

    /// Appends one coordinate with the given value.
    pub fn append(&self, value: i8) -> Result<Self> {
        let dim = self.dim() + 1;
        if dim > MAX_DIM {
            return Err(Error::Domain(format!("dimension {dim} exceeds {MAX_DIM}")));
        }
        Ok(Self::from_masks_unchecked(dim, self.pos, self.neg).with_coord(dim, value))
    }

    /// Suffix sums `Σ_{j>=i} v_j` for `i = 1..=dim`, index 0 holding `i = 1`.
    pub fn suffix_sums(&self) -> Vec<i32> {
        let mut out = alloc::vec![0i32; self.dim()];
        let mut acc = 0i32;
        for i in (1..=self.dim()).rev() {
            acc += self.coord(i) as i32;
            out[i - 1] = acc;
        }
        out
    }

    /// Degree of interlacedness: the minimum suffix sum over `i in 1..=dim`.
    ///
    /// The empty suffix is not included.
    pub fn lambda(&self) -> i32 {
        let mut acc = 0i32;
        let mut min = i32::MAX;
        for i in (1..=self.dim()).rev() {
            acc += self.coord(i) as i32;
            min = min.min(acc);
        }
        min
    }

    /// `Some` iff some suffix sum equals `-1`.
    pub fn suffix_markers(&self) -> Option<SuffixMarkers> {
        let mut acc = 0i32;
        for i in (1..=self.dim()).rev() {
            acc += self.coord(i) as i32;
            if acc == -1 {
                let tail = self.neg & !low_mask(i - 1);
                return Some(SuffixMarkers {
                    i_prime: i,
                    i_count: tail.count_ones() as usize,
                });
            }
        }
        None
    }
}

/// Checked scalar product.
pub fn scalar_product(v: &SignedVector, w: &SignedVector) -> Result<i32> {
    if v.dim() != w.dim() {
        return Err(Error::DimensionMismatch {
            left: v.dim(),
            right: w.dim(),
        });
    }
    Ok(v.dot(w))
}

pub(crate) fn mask_indices(mut m: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        let b = m.trailing_zeros() as usize;
        out.push(b + 1);
        m &= m - 1;
    }
    out
}

impl fmt::Display for SignedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use fmt::Write;
        for i in 1..=self.dim() {
            f.write_char(match self.coord(i) {
                1 => '+',
                -1 => '-',
                _ => '0',
            })?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignedVector(\"{self}\")")
    }
}

impl FromStr for SignedVector {
    type Err = Error;

    /// Accepts `+`, `0`, and either ASCII `-` or U+2212 for `-1`.
    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::Parse(String::from("empty string")));
        }
        let mut pos = 0u128;
        let mut neg = 0u128;
        let mut dim = 0usize;
        for (i, c) in s.chars().enumerate() {
            if i >= MAX_DIM {
                return Err(Error::Parse(format!("longer than {MAX_DIM} coordinates")));
            }
            match c {
                '+' => pos |= 1 << i,
                '-' | '\u{2212}' => neg |= 1 << i,
                '0' => {}
                other => {
                    return Err(Error::Parse(format!(
                        "illegal character {other:?} at position {}",
                        i + 1
                    )))
                }
            }
            dim = i + 1;
        }
        Ok(Self::from_masks_unchecked(dim, pos, neg))
    }
}

/// A deduplicated, canonically ordered set of vectors of one profile.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VectorFamily {
    profile: Profile,
    members: Vec<SignedVector>,
}

impl VectorFamily {
    pub fn empty(profile: Profile) -> Self {
        Self {
            profile,
            members: Vec::new(),
        }
    }

    /// Collects members, rejecting any vector outside the profile.
    pub fn new<I: IntoIterator<Item = SignedVector>>(profile: Profile, members: I) -> Result<Self> {
        let mut members: Vec<SignedVector> = members.into_iter().collect();
        if let Some(bad) = members.iter().find(|v| !v.satisfies(&profile)) {
            return Err(Error::Domain(format!(
                "vector {bad} does not belong to profile {profile}"
            )));
        }
        members.sort_unstable();
        members.dedup();
        Ok(Self { profile, members })
    }

    pub(crate) fn from_sorted_unchecked(profile: Profile, members: Vec<SignedVector>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Self { profile, members }
    }

    pub fn profile(&self) -> Profile {
        self.profile
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[SignedVector] {
        &self.members
    }

    pub fn iter(&self) -> core::slice::Iter<'_, SignedVector> {
        self.members.iter()
    }

    pub fn contains(&self, v: &SignedVector) -> bool {
        self.members.binary_search(v).is_ok()
    }

    /// Position of `v` in canonical order.
    pub fn index_of(&self, v: &SignedVector) -> Option<usize> {
        self.members.binary_search(v).ok()
    }

    /// Members satisfying `keep`, same profile.
    pub fn filter<F: FnMut(&SignedVector) -> bool>(&self, mut keep: F) -> Self {
        Self {
            profile: self.profile,
            members: self.members.iter().copied().filter(|v| keep(v)).collect(),
        }
    }

    /// Smallest pairwise scalar product over distinct members.
    pub fn min_pairwise_product(&self) -> Option<i32> {
        let mut best: Option<i32> = None;
        for (a, v) in self.members.iter().enumerate() {
            for w in &self.members[a + 1..] {
                let p = v.dot(w);
                best = Some(best.map_or(p, |b| b.min(p)));
            }
        }
        best
    }
}

impl<'a> IntoIterator for &'a VectorFamily {
    type Item = &'a SignedVector;
    type IntoIter = core::slice::Iter<'a, SignedVector>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// Every vector of the profile, in canonical order.
///
/// The size is `C(n, k+l) * C(k+l, k)`.
pub fn enumerate_all(profile: Profile) -> VectorFamily {
    enumerate_where(profile, |_| true)
}

/// Every vector of the profile accepted by `keep`, in canonical order.
pub fn enumerate_where<F: FnMut(&SignedVector) -> bool>(profile: Profile, mut keep: F) -> VectorFamily {
    let Profile { n, k, l } = profile;
    let mut out = Vec::new();
    for_each_combination(n, k + l, |support| {
        for_each_combination(k + l, k, |plus| {
            let mut pos = 0u128;
            let mut all = 0u128;
            for &s in support {
                all |= 1 << s;
            }
            for &p in plus {
                pos |= 1 << support[p];
            }
            let v = SignedVector::from_masks_unchecked(n, pos, all & !pos);
            if keep(&v) {
                out.push(v);
            }
        });
    });
    out.sort_unstable();
    VectorFamily::from_sorted_unchecked(profile, out)
}
