use alloc::vec::Vec;

use super::bitset::Bitset;
use super::graph::AdjacencyGraph;
use super::{Budget, MisResult, Status};

/// Nodes between two fresh clique covers; children inherit in between.
pub const COVER_INTERVAL: u64 = 64;

/// Nodes between two budget polls.
pub(crate) const POLL_INTERVAL: u64 = 256;

/// Greedy partition of `p` into cliques, in increasing vertex order.
pub(crate) fn greedy_clique_cover(g: &AdjacencyGraph, p: &Bitset) -> Vec<Bitset> {
    let mut cliques: Vec<Bitset> = Vec::new();
    let mut common: Vec<Bitset> = Vec::new();
    for v in p.iter() {
        match common.iter().position(|c| c.contains(v)) {
            Some(i) => {
                cliques[i].insert(v);
                common[i].intersect_with(g.neighbors(v));
            }
            None => {
                let mut c = Bitset::new(p.capacity());
                c.insert(v);
                cliques.push(c);
                let mut nb = g.neighbors(v).clone();
                nb.intersect_with(p);
                common.push(nb);
            }
        }
    }
    cliques
}

/// Number of cover cliques meeting `p`: each contributes at most one vertex
/// to an independent subset of `p`.
pub(crate) fn cover_bound(cover: &[Bitset], p: &Bitset) -> usize {
    cover.iter().filter(|c| c.intersects(p)).count()
}

/// Independent set grown by repeatedly taking a minimum-degree vertex.
pub(crate) fn greedy_independent(g: &AdjacencyGraph, mut p: Bitset) -> Vec<usize> {
    let mut out = Vec::new();
    while let Some(v) = p.iter().min_by_key(|&v| g.neighbors(v).count_and(&p)) {
        out.push(v);
        p.remove(v);
        p.difference_with(g.neighbors(v));
    }
    out
}

/// Exact maximum independent set by branch and bound.
///
/// Vertices of degree at most one in the remaining graph are taken without
/// branching; otherwise the branch vertex has maximum remaining degree,
/// ties to the smallest index.
pub fn mis_exact(g: &AdjacencyGraph, budget: &mut dyn Budget) -> MisResult {
    let n = g.vertex_count();
    let all = Bitset::full(n);
    let best = greedy_independent(g, all.clone());
    let mut s = Search {
        g,
        budget,
        nodes: 0,
        best,
        timed_out: false,
    };
    let cover = greedy_clique_cover(g, &all);
    let mut cur = Vec::new();
    s.node(all, &mut cur, &cover);
    let Search {
        best,
        nodes,
        timed_out,
        budget,
        ..
    } = s;
    let mut vertices = best;
    vertices.sort_unstable();
    MisResult {
        value: vertices.len(),
        vertices,
        status: if timed_out {
            Status::LowerBoundTimeout
        } else {
            Status::Exact
        },
        nodes_explored: nodes,
        elapsed: budget.elapsed(),
    }
}

struct Search<'a> {
    g: &'a AdjacencyGraph,
    budget: &'a mut dyn Budget,
    nodes: u64,
    best: Vec<usize>,
    timed_out: bool,
}

impl Search<'_> {
    fn node(&mut self, mut p: Bitset, cur: &mut Vec<usize>, inherited: &[Bitset]) {
        self.nodes += 1;
        if self.nodes.is_multiple_of(POLL_INTERVAL) && self.budget.exhausted(self.nodes) {
            self.timed_out = true;
        }
        if self.timed_out {
            return;
        }
        let base = cur.len();

        let branch = loop {
            let mut pick: Option<(usize, usize)> = None;
            let mut forced = None;
            for v in p.iter() {
                let d = self.g.neighbors(v).count_and(&p);
                if d <= 1 {
                    forced = Some(v);
                    break;
                }
                if pick.is_none_or(|(_, bd)| d > bd) {
                    pick = Some((v, d));
                }
            }
            match forced {
                Some(v) => {
                    cur.push(v);
                    p.remove(v);
                    p.difference_with(self.g.neighbors(v));
                }
                None => break pick.map(|(v, _)| v),
            }
        };

        let Some(v) = branch else {
            if cur.len() > self.best.len() {
                self.best = cur.clone();
            }
            cur.truncate(base);
            return;
        };

        let fresh;
        let cover = if self.nodes.is_multiple_of(COVER_INTERVAL) {
            fresh = greedy_clique_cover(self.g, &p);
            &fresh[..]
        } else {
            inherited
        };
        if cur.len() + cover_bound(cover, &p) <= self.best.len() {
            cur.truncate(base);
            return;
        }

        let mut with = p.clone();
        with.remove(v);
        with.difference_with(self.g.neighbors(v));
        cur.push(v);
        self.node(with, cur, cover);
        cur.pop();

        p.remove(v);
        self.node(p, cur, cover);
        cur.truncate(base);
    }
}

#[cfg(test)]
mod tests {
    use super::super::{bruteforce::mis_bruteforce, NodeLimit, Unlimited};
    use super::*;

    #[test]
    fn matches_oracle_on_small_random_graphs() {
        for seed in 0..30 {
            let g = AdjacencyGraph::random(14, 3, 10, seed);
            let r = mis_exact(&g, &mut Unlimited);
            assert_eq!(r.status, Status::Exact);
            assert!(g.is_independent(&r.vertices));
            assert_eq!(r.value, mis_bruteforce(&g).unwrap().value, "seed {seed}");
        }
    }

    #[test]
    fn cover_is_a_partition_into_cliques() {
        let g = AdjacencyGraph::random(40, 1, 2, 7);
        let all = Bitset::full(40);
        let cover = greedy_clique_cover(&g, &all);
        assert_eq!(cover.iter().map(Bitset::count).sum::<usize>(), 40);
        for c in &cover {
            let m: Vec<_> = c.iter().collect();
            for (i, &u) in m.iter().enumerate() {
                assert!(m[i + 1..].iter().all(|&v| g.has_edge(u, v)));
            }
        }
    }

    #[test]
    fn node_budget_yields_lower_bound() {
        let g = AdjacencyGraph::random(120, 1, 2, 3);
        let r = mis_exact(&g, &mut NodeLimit(POLL_INTERVAL));
        assert_eq!(r.status, Status::LowerBoundTimeout);
        assert!(g.is_independent(&r.vertices));
        assert!(r.value > 0);
    }
}
