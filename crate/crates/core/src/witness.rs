//! Explicit construction of a vector `v ≺ w` with `<v, w> = -2l`.
//!
//! For `w` with `k >= l`, non-negative interlacedness and sparse odd
//! prefixes (`|S+(w) ∩ [2t-1]| <= t-1` for every `t`), the construction
//! first swaps every `-1` of `w` with the nearest unused `+1` to its right,
//! giving `u`, and then moves each untouched `+1` onto one of the first
//! `k - l` zero positions. Every intermediate object is kept in a
//! [`WitnessTrace`] so the two ordering claims behind the construction can
//! be re-checked independently.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::shifting::{shift_unchecked, ShiftMove};
use crate::vector::SignedVector;

/// Outcome of the two hypotheses of the construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Conditions {
    /// `lambda(w) >= 0`.
    pub interlaced: bool,
    /// `|S+(w) ∩ [1..2t-1]| <= t - 1` for every `t` with `2t - 1 <= dim`.
    pub sparse_prefixes: bool,
}

impl Conditions {
    pub fn both(&self) -> bool {
        self.interlaced && self.sparse_prefixes
    }
}

pub fn check_conditions(w: &SignedVector) -> Conditions {
    let sparse_prefixes = (1..)
        .take_while(|t| 2 * t - 1 <= w.dim())
        .all(|t| w.plus_in_prefix(2 * t - 1) < t);
    Conditions {
        interlaced: w.lambda() >= 0,
        sparse_prefixes,
    }
}

/// Every intermediate object of [`construct_witness`]. Index lists are
/// 1-indexed coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessTrace {
    /// Indices of `-1`s, decreasing.
    pub q: Vec<usize>,
    /// Indices of `+1`s, decreasing.
    pub p: Vec<usize>,
    /// First `k` indices whose coordinate is not `+1`, increasing.
    pub r: Vec<usize>,
    /// `(q_i, p_{s(i)})` for `i = 1..=l`.
    pub pairing: Vec<(usize, usize)>,
    /// `s(i)`, 1-indexed into `p`.
    pub s: Vec<usize>,
    /// `w` after the pairing swaps.
    pub u: SignedVector,
    /// First `k - l` zero positions of `w`, increasing.
    pub j: Vec<usize>,
    /// Positions where `w` and `u` are both `+1`, increasing.
    pub j_prime: Vec<usize>,
    pub v: SignedVector,
}

/// Builds `v ≺ w` with `<v, w> = -2l`.
pub fn construct_witness(w: &SignedVector) -> Result<(SignedVector, WitnessTrace)> {
    let (k, l) = (w.k(), w.l());
    if k < l {
        return Err(Error::Precondition(format!("needs k >= l, got k={k}, l={l}")));
    }
    let cond = check_conditions(w);
    if !cond.both() {
        return Err(Error::Precondition(format!(
            "{w} fails the hypotheses (interlaced={}, sparse prefixes={})",
            cond.interlaced, cond.sparse_prefixes
        )));
    }

    let mut q = w.negative_support();
    q.reverse();
    let mut p = w.positive_support();
    p.reverse();
    let r: Vec<usize> = (1..=w.dim()).filter(|&i| w.coord(i) != 1).take(k).collect();
    if r.len() < k {
        return Err(Error::Precondition(format!(
            "{w} has fewer than k non-(+1) coordinates"
        )));
    }

    let mut used = alloc::vec![false; k];
    let mut pairing = Vec::with_capacity(l);
    let mut s = Vec::with_capacity(l);
    let mut u = *w;
    for (i, &qi) in q.iter().enumerate() {
        // p is decreasing: the smallest unused index above q_i is the last
        // unused entry that still exceeds it.
        let pick = (0..k)
            .rev()
            .find(|&t| !used[t] && p[t] > qi)
            .ok_or_else(|| Error::Precondition(format!("no unused +1 to the right of position {qi}")))?;
        debug_assert!((0..=i).any(|t| !used[t] && p[t] > qi));
        used[pick] = true;
        pairing.push((qi, p[pick]));
        s.push(pick + 1);
        u = shift_unchecked(&u, ShiftMove::new(qi, p[pick])?);
    }

    let j: Vec<usize> = (1..=w.dim()).filter(|&i| w.coord(i) == 0).take(k - l).collect();
    let j_prime: Vec<usize> = (1..=w.dim()).filter(|&i| w.coord(i) == 1 && u.coord(i) == 1).collect();
    if j.len() != k - l || j_prime.len() != k - l {
        return Err(Error::Precondition(format!(
            "{w}: expected {} free zeros and untouched +1s, found {} and {}",
            k - l,
            j.len(),
            j_prime.len()
        )));
    }

    let mut v = u;
    for (&a, &b) in j.iter().zip(&j_prime) {
        v = shift_unchecked(&v, ShiftMove::new(a, b)?);
    }

    let trace = WitnessTrace {
        q,
        p,
        r,
        pairing,
        s,
        u,
        j,
        j_prime,
        v,
    };
    Ok((v, trace))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TraceClaim {
    /// `|q| = l`, `|p| = k`, `|J| = |J'| = k - l`.
    Sizes,
    /// The pairing is injective and each partner lies to the right.
    Pairing,
    /// `q_i < p_i` for `i <= l` and `p_{k-i+1} > r_i` for `i <= k`.
    Claim1,
    /// `J_i < J'_i` for every `i`.
    Claim2,
    /// `Σ_{s in [J'_i] \ (J ∪ J')} w_s = 0` for every `i`.
    ZeroSum,
    /// `<v, w> = -2l`.
    Product,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClaimOutcome {
    pub claim: TraceClaim,
    /// 1-indexed position in the relevant sequence of the first violation.
    pub violation: Option<usize>,
}

impl ClaimOutcome {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceReport {
    pub outcomes: Vec<ClaimOutcome>,
}

impl TraceReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(ClaimOutcome::passed)
    }

    pub fn outcome(&self, claim: TraceClaim) -> Option<&ClaimOutcome> {
        self.outcomes.iter().find(|o| o.claim == claim)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClaimOutcome> {
        self.outcomes.iter().filter(|o| !o.passed())
    }
}

fn first_bad<I: IntoIterator<Item = bool>>(bad: I) -> Option<usize> {
    bad.into_iter().position(|b| b).map(|i| i + 1)
}

/// Re-checks every invariant of a trace against the original `w`.
pub fn verify_trace_claims(trace: &WitnessTrace, w: &SignedVector) -> TraceReport {
    let (k, l) = (w.k(), w.l());

    let sizes_ok = trace.q.len() == l
        && trace.p.len() == k
        && trace.j.len() == k.saturating_sub(l)
        && trace.j_prime.len() == k.saturating_sub(l);
    let sizes = if sizes_ok { None } else { Some(1) };

    let pairing = {
        let mut seen: Vec<usize> = Vec::new();
        first_bad(trace.pairing.iter().map(|&(qi, pi)| {
            let dup = seen.contains(&pi);
            seen.push(pi);
            dup || pi <= qi || w.coord(qi) != -1 || w.coord(pi) != 1
        }))
    };

    let claim1 = if trace.q.len() != l || trace.p.len() != k || trace.r.len() != k {
        Some(1)
    } else {
        first_bad(
            (0..l)
                .map(|i| trace.q[i] >= trace.p[i])
                .chain((0..k).map(|i| trace.p[k - 1 - i] <= trace.r[i])),
        )
    };

    let claim2 = first_bad(trace.j.iter().zip(&trace.j_prime).map(|(a, b)| a >= b));

    let zero_sum = first_bad(trace.j_prime.iter().map(|&jp| {
        let sum: i32 = (1..=jp)
            .filter(|s| !trace.j.contains(s) && !trace.j_prime.contains(s))
            .map(|s| w.coord(s) as i32)
            .sum();
        sum != 0
    }));

    let product = if trace.v.dim() == w.dim() && trace.v.dot(w) == -2 * l as i32 {
        None
    } else {
        Some(1)
    };

    let outcomes = [
        (TraceClaim::Sizes, sizes),
        (TraceClaim::Pairing, pairing),
        (TraceClaim::Claim1, claim1),
        (TraceClaim::Claim2, claim2),
        (TraceClaim::ZeroSum, zero_sum),
        (TraceClaim::Product, product),
    ]
    .into_iter()
    .map(|(claim, violation)| ClaimOutcome { claim, violation })
    .collect();
    TraceReport { outcomes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shifting::{precedes, precedes_oracle};
    use alloc::string::ToString;

    fn sv(s: &str) -> SignedVector {
        s.parse().unwrap()
    }

    #[test]
    fn condition_examples() {
        let c = check_conditions(&sv("0+-+"));
        assert!(c.interlaced && c.sparse_prefixes);
        let c = check_conditions(&sv("+-"));
        assert!(!c.interlaced && !c.sparse_prefixes);
        let c = check_conditions(&sv("-+"));
        assert!(c.interlaced && c.sparse_prefixes);
    }

    #[test]
    fn witness_for_0p_mp() {
        let w = sv("0+-+");
        let (v, t) = construct_witness(&w).unwrap();
        assert_eq!(t.u.to_string(), "0++-");
        assert_eq!(t.j, [1]);
        assert_eq!(t.j_prime, [2]);
        assert_eq!(v.to_string(), "+0+-");
        assert_eq!(v.dot(&w), -2);
        assert!(precedes_oracle(&v, &w).unwrap());
        assert!(verify_trace_claims(&t, &w).all_passed());
    }

    #[test]
    fn witness_for_two_negatives() {
        let w = sv("0-+-++");
        let (v, t) = construct_witness(&w).unwrap();
        assert_eq!(t.pairing, [(4, 5), (2, 3)]);
        assert_eq!(t.u.to_string(), "0+-+-+");
        assert_eq!(t.j, [1]);
        assert_eq!(t.j_prime, [6]);
        assert_eq!(v.to_string(), "++-+-0");
        assert_eq!(v.dot(&w), -4);
        assert!(precedes(&v, &w).unwrap());
        assert!(verify_trace_claims(&t, &w).all_passed());
    }

    #[test]
    fn witness_single_swap() {
        let w = sv("-+");
        let (v, t) = construct_witness(&w).unwrap();
        assert_eq!(v.to_string(), "+-");
        assert_eq!(v.dot(&w), -2);
        assert!(verify_trace_claims(&t, &w).all_passed());
    }

    #[test]
    fn swapped_j_sets_fail_claim2() {
        let w = sv("0+-+");
        let (_, mut t) = construct_witness(&w).unwrap();
        core::mem::swap(&mut t.j, &mut t.j_prime);
        let report = verify_trace_claims(&t, &w);
        assert_eq!(report.outcome(TraceClaim::Claim2).unwrap().violation, Some(1));
        assert!(!report.all_passed());
    }

    #[test]
    fn preconditions_are_enforced() {
        assert!(matches!(construct_witness(&sv("+-")), Err(Error::Precondition(_))));
        assert!(matches!(construct_witness(&sv("0--+")), Err(Error::Precondition(_))));
    }
}
