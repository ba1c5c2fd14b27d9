//! Lexicographic r-subset enumeration over `0..n`.

use alloc::vec::Vec;

/// Calls `visit` with every r-element subset of `0..n`, as a sorted index
/// slice, in lexicographic order.
pub fn for_each_combination<F: FnMut(&[usize])>(n: usize, r: usize, mut visit: F) {
    if r > n {
        return;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        visit(&idx);
        let mut i = r;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - r + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Bit mask with the low `width` bits set.
#[inline]
pub(crate) fn low_mask(width: usize) -> u128 {
    if width >= 128 {
        u128::MAX
    } else {
        (1u128 << width) - 1
    }
}
