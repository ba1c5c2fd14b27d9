//! Bipartite comparison graphs between vector families, biregularity
//! checks, and the averaging inequality for independent sets in biregular
//! bipartite graphs.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constructions::{family_xy_tm, ComparisonSide};
use crate::error::{Error, Result};
use crate::formulas::ExactRational;
use crate::vector::{enumerate_all, Profile, VectorFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    A,
    B,
}

/// Bipartite graph on `0..a_len` and `0..b_len`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    a_len: usize,
    b_len: usize,
    edges: Vec<(usize, usize)>,
    adj_a: Vec<Vec<usize>>,
    adj_b: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new<I: IntoIterator<Item = (usize, usize)>>(a_len: usize, b_len: usize, edges: I) -> Result<Self> {
        let mut edges: Vec<(usize, usize)> = edges.into_iter().collect();
        if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a >= a_len || b >= b_len) {
            return Err(Error::Domain(format!(
                "edge ({a},{b}) out of range for sides {a_len} and {b_len}"
            )));
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Domain(format!("duplicate edge {:?}", w[0])));
        }
        let mut adj_a = vec![Vec::new(); a_len];
        let mut adj_b = vec![Vec::new(); b_len];
        for &(a, b) in &edges {
            adj_a[a].push(b);
            adj_b[b].push(a);
        }
        for row in &mut adj_b {
            row.sort_unstable();
        }
        Ok(Self {
            a_len,
            b_len,
            edges,
            adj_a,
            adj_b,
        })
    }

    pub fn a_len(&self) -> usize {
        self.a_len
    }

    pub fn b_len(&self) -> usize {
        self.b_len
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, side: Side, i: usize) -> &[usize] {
        match side {
            Side::A => &self.adj_a[i],
            Side::B => &self.adj_b[i],
        }
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj_a[a].binary_search(&b).is_ok()
    }
}

/// A bipartite graph whose vertices are vectors.
#[derive(Debug, Clone)]
pub struct VectorBipartite {
    pub a: VectorFamily,
    pub b: VectorFamily,
    pub graph: BipartiteGraph,
}

fn join_at_product(a: VectorFamily, b: VectorFamily, product: i32) -> VectorBipartite {
    let mut edges = Vec::new();
    for (i, u) in a.iter().enumerate() {
        for (j, v) in b.iter().enumerate() {
            if u.dot(v) == product {
                edges.push((i, j));
            }
        }
    }
    let graph = BipartiteGraph::new(a.len(), b.len(), edges).expect("edges are in range and distinct");
    VectorBipartite { a, b, graph }
}

/// `G^{t,m}`: `X^{t,m}` against `Y^{t,m}` in `profile` (dimension `n + 1`),
/// joined at product `-2l`.
pub fn build_g_tm(profile: Profile, t: usize, m: usize) -> Result<VectorBipartite> {
    let x = family_xy_tm(profile, t, m, ComparisonSide::X)?;
    let y = family_xy_tm(profile, t, m, ComparisonSide::Y)?;
    if x.is_empty() || y.is_empty() {
        return Err(Error::Degenerate(format!(
            "G^(t={t},m={m}) over {profile} has sides {} and {}",
            x.len(),
            y.len()
        )));
    }
    Ok(join_at_product(x, y, -2 * profile.l as i32))
}

/// `G'`: `V(j'-1, k-j+1, l-j)` against `V(j'-1, k-j, l-j+1)`, joined at
/// product `-2l+2j-1`.
pub fn build_g_prime(j: usize, j_prime: usize, k: usize, l: usize) -> Result<VectorBipartite> {
    if j < 2 || j > l || l >= k {
        return Err(Error::Domain(format!("needs 2 <= j <= l < k, got j={j}, l={l}, k={k}")));
    }
    if j_prime < 1 || j_prime - 1 < 2 * (k - j + 1) {
        return Err(Error::Precondition(format!(
            "j'-1 >= 2(k-j+1) fails for j={j}, j'={j_prime}, k={k}"
        )));
    }
    let dim = j_prime - 1;
    let a = enumerate_all(Profile::new(dim, k - j + 1, l - j)?);
    let b = enumerate_all(Profile::new(dim, k - j, l - j + 1)?);
    Ok(join_at_product(a, b, 2 * j as i32 - 2 * l as i32 - 1))
}

/// Why a graph failed to be biregular.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Irregularity {
    Vertex {
        side: Side,
        index: usize,
        degree: usize,
        expected: usize,
    },
    Handshake {
        deg_a: usize,
        deg_b: usize,
        a_len: usize,
        b_len: usize,
    },
}

/// Common degrees `(deg_a, deg_b)`, or the first vertex breaking them.
pub fn check_biregular(g: &BipartiteGraph) -> core::result::Result<(usize, usize), Irregularity> {
    fn common(rows: &[Vec<usize>], side: Side) -> core::result::Result<usize, Irregularity> {
        let expected = rows.first().map_or(0, Vec::len);
        match rows.iter().position(|r| r.len() != expected) {
            Some(index) => Err(Irregularity::Vertex {
                side,
                index,
                degree: rows[index].len(),
                expected,
            }),
            None => Ok(expected),
        }
    }
    let deg_a = common(&g.adj_a, Side::A)?;
    let deg_b = common(&g.adj_b, Side::B)?;
    if deg_a * g.a_len != deg_b * g.b_len {
        return Err(Irregularity::Handshake {
            deg_a,
            deg_b,
            a_len: g.a_len,
            b_len: g.b_len,
        });
    }
    Ok((deg_a, deg_b))
}

/// Vertex subset split by side.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SideSet {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl SideSet {
    pub fn is_independent_in(&self, g: &BipartiteGraph) -> bool {
        self.a.iter().all(|&a| self.b.iter().all(|&b| !g.has_edge(a, b)))
    }
}

/// Evaluates `|I ∩ B| + alpha |I ∩ A| <= alpha |A|` exactly.
pub fn lemma3_check(g: &BipartiteGraph, set: &SideSet, alpha: &ExactRational) -> Result<bool> {
    let in_range = set.a.iter().all(|&a| a < g.a_len) && set.b.iter().all(|&b| b < g.b_len);
    let distinct = |v: &[usize]| {
        let mut s = v.to_vec();
        s.sort_unstable();
        s.windows(2).all(|w| w[0] != w[1])
    };
    if !in_range || !distinct(&set.a) || !distinct(&set.b) {
        return Err(Error::Precondition("set has out-of-range or repeated vertices".into()));
    }
    if !set.is_independent_in(g) {
        return Err(Error::Precondition("set is not independent".into()));
    }
    if g.a_len == 0 {
        return Err(Error::Degenerate("side A is empty".into()));
    }
    let int = |x: usize| BigRational::from_integer(BigInt::from(x));
    let ratio = int(g.b_len) / int(g.a_len);
    if *alpha < ratio {
        return Err(Error::Precondition(format!("alpha {alpha} is below |B|/|A| = {ratio}")));
    }
    Ok(int(set.b.len()) + alpha * int(set.a.len()) <= alpha * int(g.a_len))
}

/// Random `(deg_a, deg_b)`-biregular graph.
///
/// Starts from the round-robin graph joining `a` to `(a * deg_a + s) mod |B|`
/// for `s < deg_a`, relabels both sides at random, then applies random
/// degree-preserving edge switches.
pub fn random_biregular(a_len: usize, b_len: usize, deg_a: usize, deg_b: usize, seed: u64) -> Result<BipartiteGraph> {
    if a_len * deg_a != b_len * deg_b {
        return Err(Error::Domain(format!(
            "handshake fails: {a_len}*{deg_a} != {b_len}*{deg_b}"
        )));
    }
    if deg_a > b_len || deg_b > a_len {
        return Err(Error::Domain(format!(
            "degrees ({deg_a},{deg_b}) exceed side sizes ({b_len},{a_len})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pa: Vec<usize> = (0..a_len).collect();
    let mut pb: Vec<usize> = (0..b_len).collect();
    pa.shuffle(&mut rng);
    pb.shuffle(&mut rng);
    let mut edges: Vec<(usize, usize)> = (0..a_len * deg_a)
        .map(|e| (pa[e / deg_a.max(1)], pb[e % b_len.max(1)]))
        .collect();
    let mut present = vec![false; a_len * b_len];
    for &(a, b) in &edges {
        present[a * b_len + b] = true;
    }
    for _ in 0..10 * edges.len() {
        let i = rng.gen_range(0..edges.len());
        let j = rng.gen_range(0..edges.len());
        let ((a1, b1), (a2, b2)) = (edges[i], edges[j]);
        if a1 == a2 || b1 == b2 || present[a1 * b_len + b2] || present[a2 * b_len + b1] {
            continue;
        }
        present[a1 * b_len + b1] = false;
        present[a2 * b_len + b2] = false;
        present[a1 * b_len + b2] = true;
        present[a2 * b_len + b1] = true;
        edges[i] = (a1, b2);
        edges[j] = (a2, b1);
    }
    BipartiteGraph::new(a_len, b_len, edges)
}

/// Greedy maximal independent set over a random vertex order.
pub fn random_independent_set(g: &BipartiteGraph, seed: u64) -> SideSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<(Side, usize)> = (0..g.a_len)
        .map(|i| (Side::A, i))
        .chain((0..g.b_len).map(|i| (Side::B, i)))
        .collect();
    order.shuffle(&mut rng);
    let mut blocked_a = vec![false; g.a_len];
    let mut blocked_b = vec![false; g.b_len];
    let mut out = SideSet::default();
    for (side, i) in order {
        match side {
            Side::A if !blocked_a[i] => {
                out.a.push(i);
                g.adj_a[i].iter().for_each(|&b| blocked_b[b] = true);
            }
            Side::B if !blocked_b[i] => {
                out.b.push(i);
                g.adj_b[i].iter().for_each(|&a| blocked_a[a] = true);
            }
            _ => {}
        }
    }
    out.a.sort_unstable();
    out.b.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> ExactRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn handshake_examples() {
        let g = random_biregular(6, 4, 2, 3, 1).unwrap();
        assert_eq!(check_biregular(&g), Ok((2, 3)));
        assert_eq!(g.edges().len(), 12);
        assert!(random_biregular(5, 4, 2, 3, 1).is_err());
    }

    #[test]
    fn planted_edge_breaks_regularity() {
        let g = random_biregular(6, 4, 2, 3, 9).unwrap();
        let extra = (0..6)
            .flat_map(|a| (0..4).map(move |b| (a, b)))
            .find(|&(a, b)| !g.has_edge(a, b))
            .unwrap();
        let h = BipartiteGraph::new(6, 4, g.edges().iter().copied().chain([extra])).unwrap();
        assert!(check_biregular(&h).is_err());
    }

    #[test]
    fn lemma3_edge_cases() {
        let g = random_biregular(6, 4, 2, 3, 2).unwrap();
        let ratio = q(4, 6);
        let all_a = SideSet {
            a: (0..6).collect(),
            b: vec![],
        };
        assert!(lemma3_check(&g, &all_a, &ratio).unwrap());
        assert!(lemma3_check(&g, &SideSet::default(), &ratio).unwrap());
        assert!(lemma3_check(&g, &all_a, &q(1, 2)).is_err());
        let (a, b) = g.edges()[0];
        let bad = SideSet { a: vec![a], b: vec![b] };
        assert!(lemma3_check(&g, &bad, &ratio).is_err());
    }

    #[test]
    fn random_sets_are_maximal_independent() {
        let g = random_biregular(12, 8, 4, 6, 5).unwrap();
        for seed in 0..20 {
            let s = random_independent_set(&g, seed);
            assert!(s.is_independent_in(&g));
            let free_a = (0..12)
                .filter(|a| !s.a.contains(a))
                .all(|a| s.b.iter().any(|&b| g.has_edge(a, b)));
            let free_b = (0..8)
                .filter(|b| !s.b.contains(b))
                .all(|b| s.a.iter().any(|&a| g.has_edge(a, b)));
            assert!(free_a && free_b);
        }
    }

    #[test]
    fn g_prime_guard_and_ratio() {
        assert!(matches!(build_g_prime(2, 4, 3, 2), Err(Error::Precondition(_))));
        let g = build_g_prime(2, 5, 3, 2).unwrap();
        assert_eq!(g.b.len(), 2 * g.a.len());
        let (da, db) = check_biregular(&g.graph).unwrap();
        assert!(da > 0 && db > 0);
    }

    #[test]
    fn g_tm_small_example() {
        let p = Profile::new(7, 2, 1).unwrap();
        let g = build_g_tm(p, 1, 0).unwrap();
        assert!(!g.graph.edges().is_empty());
        for &(i, j) in g.graph.edges() {
            assert_eq!(g.a.members()[i].dot(&g.b.members()[j]), -2);
        }
    }
}
