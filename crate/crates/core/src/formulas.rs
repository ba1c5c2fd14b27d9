//! Exact closed forms, bounds and ratios. Nothing here touches floating point.

use alloc::format;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::vector::Profile;

pub type BigCount = BigUint;
pub type ExactRational = BigRational;

/// `C(n, r)`; zero when `r > n`.
pub fn binom(n: u64, r: u64) -> BigCount {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C(a, b)` for signed arguments; zero when `a < 0`, `b < 0` or `b > a`.
pub fn binom_i(a: i64, b: i64) -> BigCount {
    if a < 0 || b < 0 || b > a {
        BigUint::zero()
    } else {
        binom(a as u64, b as u64)
    }
}

/// `C(n, k+l) * C(k+l, k)`.
pub fn family_size(profile: &Profile) -> BigCount {
    let (n, k, l) = (profile.n as u64, profile.k as u64, profile.l as u64);
    binom(n, k + l) * binom(k + l, k)
}

fn to_rational(x: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x.clone()))
}

fn ratio_u(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `g(n, k, 1)`: `k * C(n-1, k)` up to `n = k^2`, then extended by the
/// forward differences `C(n', k)` for `n' >= k^2`.
pub fn g_closed_l1(n: u64, k: u64) -> Result<BigCount> {
    if k < 2 {
        return Err(Error::Domain(format!("g(n,k,1) needs k >= 2, got k={k}")));
    }
    if n < 2 * k {
        return Err(Error::Domain(format!("g(n,k,1) needs n >= 2k, got n={n}, k={k}")));
    }
    let square = k * k;
    if n <= square {
        return Ok(binom(n - 1, k) * k);
    }
    let mut value = binom(square - 1, k) * k;
    for m in square..n {
        value += binom(m, k);
    }
    Ok(value)
}

fn require_extremal(n: u64, k: u64, l: u64) -> Result<()> {
    if !(k > l && l >= 1 && n >= k + l) {
        return Err(Error::Domain(format!(
            "needs n >= k + l and k > l >= 1, got ({n},{k},{l})"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GBounds {
    pub lower: BigCount,
    pub upper: BigCount,
}

/// Lower and upper bounds on `g(n, k, l)`.
pub fn g_bounds(n: u64, k: u64, l: u64) -> Result<GBounds> {
    require_extremal(n, k, l)?;
    let lower = binom(n, k + l) * binom(k + l - 1, l - 1);
    let extra = binom(n, 2 * l) * binom(2 * l, l) * binom_i(n as i64 - 2 * l as i64 - 1, k as i64 - l as i64 - 1);
    let upper = &lower + extra;
    Ok(GBounds { lower, upper })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EkrValue {
    pub value: BigCount,
    /// `2k <= n <= 3k - l`.
    pub in_range: bool,
}

/// `C(n-1, k+l-1) * C(k+l-1, l)`, the size of the first-coordinate family.
pub fn g_ekr_value(n: u64, k: u64, l: u64) -> EkrValue {
    let value = if k + l == 0 || n == 0 {
        BigUint::zero()
    } else {
        binom(n - 1, k + l - 1) * binom(k + l - 1, l)
    };
    let in_range = 2 * k <= n && n + l <= 3 * k;
    EkrValue { value, in_range }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Increment {
    /// `C(n, k+l-1) * C(k+l-1, l-1)`.
    pub value: BigCount,
    /// `n >= 5k^2` with `k > l + 1`, or `n >= 2k^3` with `k = l + 1`.
    pub proven_range: bool,
    /// `(k+l-1)(k+l) / l`.
    pub conjectured_threshold: ExactRational,
}

pub fn increment_value(n: u64, k: u64, l: u64) -> Result<Increment> {
    if !(k > l && l >= 1) {
        return Err(Error::Domain(format!("needs k > l >= 1, got k={k}, l={l}")));
    }
    let value = binom(n, k + l - 1) * binom(k + l - 1, l - 1);
    Ok(Increment {
        value,
        proven_range: n >= proven_increment_threshold(k, l),
        conjectured_threshold: conjectured_threshold(k, l)?,
    })
}

/// Smallest `n` covered by the proven increment range: `5k^2` when
/// `k > l + 1`, `2k^3` when `k = l + 1`.
pub fn proven_increment_threshold(k: u64, l: u64) -> u64 {
    if k > l + 1 {
        5 * k * k
    } else {
        2 * k * k * k
    }
}

/// `(k+l-1)(k+l) / l`, where the inductive construction starts to gain
/// more per step than the first-coordinate one.
pub fn conjectured_threshold(k: u64, l: u64) -> Result<ExactRational> {
    if l == 0 || k + l == 0 {
        return Err(Error::Domain(format!("needs l >= 1, got l={l}")));
    }
    Ok(ratio_u((k + l - 1) * (k + l), l))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PSplit {
    pub value: BigCount,
    /// Smallest maximizing `|X|`.
    pub argmax: u64,
}

/// `max_x C(x, k) * C(n-x, l)` over `x in k..=n-l`.
pub fn p_split(n: u64, k: u64, l: u64) -> Result<PSplit> {
    if n < k + l {
        return Err(Error::Domain(format!("p(n,k,l) needs n >= k + l, got ({n},{k},{l})")));
    }
    let mut best = PSplit {
        value: BigUint::zero(),
        argmax: k,
    };
    for x in k..=n - l {
        let v = binom(x, k) * binom(n - x, l);
        if v > best.value {
            best = PSplit { value: v, argmax: x };
        }
    }
    Ok(best)
}

/// Comparison of `p(n) - p(n-1)` against `max{p(n-1,k,l-1), p(n-1,k-1,l)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PIncrementReport {
    pub n: u64,
    pub k: u64,
    pub l: u64,
    pub current: BigCount,
    pub previous: BigCount,
    pub increment: BigCount,
    /// `p(n-1, k, l-1)`.
    pub drop_minus: BigCount,
    /// `p(n-1, k-1, l)`.
    pub drop_plus: BigCount,
    pub average: ExactRational,
    /// `increment == max(drop_minus, drop_plus)`.
    pub equality_holds: bool,
    /// `increment >= average`.
    pub average_bound_holds: bool,
    /// `increment <= min(drop_minus, drop_plus)`.
    pub pascal_bound_holds: bool,
}

impl PIncrementReport {
    /// `max(drop_minus, drop_plus)`.
    pub fn claimed(&self) -> &BigCount {
        if self.drop_minus >= self.drop_plus {
            &self.drop_minus
        } else {
            &self.drop_plus
        }
    }
}

pub fn p_increment_report(n: u64, k: u64, l: u64) -> Result<PIncrementReport> {
    if k == 0 || l == 0 || n < k + l + 1 {
        return Err(Error::Domain(format!(
            "p-increment needs k, l >= 1 and n >= k + l + 1, got ({n},{k},{l})"
        )));
    }
    let current = p_split(n, k, l)?.value;
    let previous = p_split(n - 1, k, l)?.value;
    let increment = &current - &previous;
    let drop_minus = p_split(n - 1, k, l - 1)?.value;
    let drop_plus = p_split(n - 1, k - 1, l)?.value;
    let average = (to_rational(&drop_minus) + to_rational(&drop_plus)) / BigRational::from_integer(BigInt::from(2));
    let claimed = if drop_minus >= drop_plus {
        &drop_minus
    } else {
        &drop_plus
    };
    let smaller = if drop_minus <= drop_plus {
        &drop_minus
    } else {
        &drop_plus
    };
    Ok(PIncrementReport {
        n,
        k,
        l,
        equality_holds: &increment == claimed,
        average_bound_holds: to_rational(&increment) >= average,
        pascal_bound_holds: &increment <= smaller,
        current,
        previous,
        increment,
        drop_minus,
        drop_plus,
        average,
    })
}

/// `(k + l) * 2^(k+l+2)`.
pub fn n0_threshold(k: u64, l: u64) -> BigCount {
    BigUint::from(k + l) * Pow::pow(BigUint::from(2u32), (k + l + 2) as u32)
}

/// `max{t - (k - l), 0}`, the prescribed `-1` count of the minus-side
/// comparison family inside `[2t-1]`.
pub fn x_side_minus_count(k: u64, l: u64, t: u64) -> u64 {
    (t + l).saturating_sub(k)
}

/// Size of the plus-side comparison family in dimension `n + 1`: last
/// coordinate `+1`, exactly `m` minus and `t` plus coordinates in `[2t-1]`.
pub fn y_tm_count(n: u64, k: u64, l: u64, t: u64, m: u64) -> BigCount {
    let (n, k, l, t, m) = (n as i64, k as i64, l as i64, t as i64, m as i64);
    let rest = n - 2 * t + 1;
    binom_i(2 * t - 1, m) * binom_i(2 * t - 1 - m, t) * binom_i(rest, l - m) * binom_i(rest - l + m, k - 1 - t)
}

/// Size of the minus-side comparison family in dimension `n + 1`: last
/// coordinate `-1`, exactly `m` plus and `max{t-(k-l),0}` minus
/// coordinates in `[2t-1]`.
pub fn x_tm_count(n: u64, k: u64, l: u64, t: u64, m: u64) -> BigCount {
    let big_m = x_side_minus_count(k, l, t) as i64;
    let (n, k, l, t, m) = (n as i64, k as i64, l as i64, t as i64, m as i64);
    let rest = n - 2 * t + 1;
    binom_i(2 * t - 1, m) * binom_i(2 * t - 1 - m, big_m) * binom_i(rest, k - m) * binom_i(rest - k + m, l - 1 - big_m)
}

fn check_tm(n: u64, k: u64, l: u64, t: u64) -> Result<()> {
    require_extremal(n + 1, k, l)?;
    if t == 0 || t > k || 2 * t - 1 > n {
        return Err(Error::Domain(format!(
            "needs 1 <= t <= k and 2t - 1 <= n, got t={t}, k={k}, n={n}"
        )));
    }
    Ok(())
}

/// `|Y^{t,m}| / |X^{t,m}|`; zero-sized sides are degenerate.
pub fn tm_ratio(n: u64, k: u64, l: u64, t: u64, m: u64) -> Result<ExactRational> {
    check_tm(n, k, l, t)?;
    let y = y_tm_count(n, k, l, t, m);
    let x = x_tm_count(n, k, l, t, m);
    if y.is_zero() || x.is_zero() {
        return Err(Error::Degenerate(format!(
            "comparison families for (n={n},k={k},l={l},t={t},m={m}) have sizes {y} and {x}"
        )));
    }
    Ok(BigRational::new(BigInt::from(y), BigInt::from(x)))
}

/// `(k (k-l+1) / 2)^(k-l) / (n - 3k)^(k-l)`.
pub fn alpha(n: u64, k: u64, l: u64) -> Result<ExactRational> {
    if !(k > l && l >= 1) {
        return Err(Error::Domain(format!("needs k > l >= 1, got k={k}, l={l}")));
    }
    if n <= 3 * k {
        return Err(Error::Degenerate(format!("alpha needs n > 3k, got n={n}, k={k}")));
    }
    let e = (k - l) as u32;
    let base = ratio_u(k * (k - l + 1), 2 * (n - 3 * k));
    Ok(Pow::pow(base, e))
}

/// `Σ_{t=1}^{k-l} (k/l) ((2t-1)/(4k))^t + l * alpha + l/k`.
pub fn coefficient(n: u64, k: u64, l: u64) -> Result<ExactRational> {
    let a = alpha(n, k, l)?;
    let mut sum = BigRational::zero();
    for t in 1..=k - l {
        sum += ratio_u(k, l) * Pow::pow(ratio_u(2 * t - 1, 4 * k), t as u32);
    }
    Ok(sum + a * BigRational::from_integer(BigInt::from(l)) + ratio_u(l, k))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioAlpha {
    pub ratio: ExactRational,
    pub alpha: ExactRational,
    pub coefficient: ExactRational,
}

pub fn ratio_and_alpha(n: u64, k: u64, l: u64, t: u64, m: u64) -> Result<RatioAlpha> {
    Ok(RatioAlpha {
        ratio: tm_ratio(n, k, l, t, m)?,
        alpha: alpha(n, k, l)?,
        coefficient: coefficient(n, k, l)?,
    })
}

/// Formats a rational as `p/q`, or `p` when the denominator is one.
pub fn format_rational(r: &ExactRational) -> alloc::string::String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
