use alloc::vec::Vec;

use super::bitset::Bitset;
use super::branch::{cover_bound, greedy_clique_cover, COVER_INTERVAL, POLL_INTERVAL};
use super::graph::ConflictGraph;
use super::{Budget, MisResult, Status};
use crate::shifting::{shift_images, shift_potential};

/// Precomputed order data for the search over `≺`-downward-closed sets.
pub struct ShiftStructure {
    /// A linear extension of `≺`: increasing potential, then canonical.
    pub order: Vec<usize>,
    /// `succ[v]`: every `u` with `v ≺ u`, including `v`.
    pub succ: Vec<Bitset>,
    /// Union of `succ[u]` over the neighbours `u` of `v`.
    pub down_conflict: Vec<Bitset>,
}

impl ShiftStructure {
    pub fn new(cg: &ConflictGraph) -> Self {
        let members = cg.vertices().members();
        let n = members.len();
        let potential: Vec<u64> = members.iter().map(shift_potential).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (potential[v], v));

        // Images of a shift are the immediate predecessors of a vector.
        let mut direct_succ: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
        for (u, w) in members.iter().enumerate() {
            for img in shift_images(w) {
                let p = cg.vertices().index_of(&img).expect("shifts stay in the profile");
                direct_succ[p].push(u);
            }
        }
        let mut succ: Vec<Bitset> = (0..n).map(|_| Bitset::new(n)).collect();
        for &v in order.iter().rev() {
            let mut s = Bitset::new(n);
            s.insert(v);
            for &u in &direct_succ[v] {
                s.union_with(&succ[u]);
            }
            succ[v] = s;
        }
        let g = cg.graph();
        let down_conflict = (0..n)
            .map(|v| {
                let mut d = Bitset::new(n);
                for u in g.neighbors(v).iter() {
                    d.union_with(&succ[u]);
                }
                d
            })
            .collect();
        Self {
            order,
            succ,
            down_conflict,
        }
    }
}

/// Largest `≺`-downward-closed independent set.
///
/// Vertices are decided in a linear extension of `≺`. Excluding `v` also
/// excludes everything above it; including `v` excludes everything above a
/// neighbour of `v`. A vertex is still available exactly when all of its
/// predecessors were included and none conflicts with the current set.
pub fn mis_shifted(cg: &ConflictGraph, budget: &mut dyn Budget) -> MisResult {
    let st = ShiftStructure::new(cg);
    let n = st.order.len();
    let mut s = Search {
        cg,
        st: &st,
        budget,
        nodes: 0,
        best: Vec::new(),
        timed_out: false,
    };
    s.seed_incumbent();
    let all = Bitset::full(n);
    let cover = greedy_clique_cover(cg.graph(), &all);
    let mut cur = Vec::new();
    s.node(0, all, &mut cur, &cover);
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
    cg: &'a ConflictGraph,
    st: &'a ShiftStructure,
    budget: &'a mut dyn Budget,
    nodes: u64,
    best: Vec<usize>,
    timed_out: bool,
}

impl Search<'_> {
    /// Take every available vertex in order.
    fn seed_incumbent(&mut self) {
        let n = self.st.order.len();
        let mut free = Bitset::full(n);
        for &v in &self.st.order {
            if free.contains(v) {
                self.best.push(v);
                free.difference_with(&self.st.down_conflict[v]);
            }
        }
    }

    fn node(&mut self, mut pos: usize, free: Bitset, cur: &mut Vec<usize>, inherited: &[Bitset]) {
        self.nodes += 1;
        if self.nodes.is_multiple_of(POLL_INTERVAL) && self.budget.exhausted(self.nodes) {
            self.timed_out = true;
        }
        if self.timed_out {
            return;
        }
        let order = &self.st.order;
        while pos < order.len() && !free.contains(order[pos]) {
            pos += 1;
        }
        if pos == order.len() {
            if cur.len() > self.best.len() {
                self.best = cur.clone();
            }
            return;
        }

        let fresh;
        let cover = if self.nodes.is_multiple_of(COVER_INTERVAL) {
            fresh = greedy_clique_cover(self.cg.graph(), &free);
            &fresh[..]
        } else {
            inherited
        };
        if cur.len() + cover_bound(cover, &free) <= self.best.len() {
            return;
        }

        let v = order[pos];
        let mut with = free.clone();
        with.difference_with(&self.st.down_conflict[v]);
        with.remove(v);
        cur.push(v);
        self.node(pos + 1, with, cur, cover);
        cur.pop();

        let mut without = free;
        without.difference_with(&self.st.succ[v]);
        self.node(pos + 1, without, cur, cover);
    }
}
