use alloc::vec::Vec;

use super::graph::AdjacencyGraph;
use super::{MisResult, Status};
use crate::error::{Error, Result};

pub const BRUTEFORCE_MAX_VERTICES: usize = 25;

/// Maximum independent set by visiting every independent set.
///
/// No bounding of any kind, so it shares no logic with the search it
/// checks.
pub fn mis_bruteforce(g: &AdjacencyGraph) -> Result<MisResult> {
    let n = g.vertex_count();
    if n > BRUTEFORCE_MAX_VERTICES {
        return Err(Error::TooLarge {
            size: n,
            cap: BRUTEFORCE_MAX_VERTICES,
        });
    }
    let adj: Vec<u32> = (0..n).map(|v| g.neighbors(v).iter().map(|u| 1u32 << u).sum()).collect();
    let mut walk = Walk {
        adj: &adj,
        best: 0,
        visited: 0,
    };
    walk.visit(0, 0);
    let vertices = (0..n).filter(|&v| walk.best >> v & 1 == 1).collect::<Vec<_>>();
    Ok(MisResult {
        value: vertices.len(),
        vertices,
        status: Status::Exact,
        nodes_explored: walk.visited,
        elapsed: None,
    })
}

struct Walk<'a> {
    adj: &'a [u32],
    best: u32,
    visited: u64,
}

impl Walk<'_> {
    fn visit(&mut self, v: usize, chosen: u32) {
        if v == self.adj.len() {
            self.visited += 1;
            if chosen.count_ones() > self.best.count_ones() {
                self.best = chosen;
            }
            return;
        }
        self.visit(v + 1, chosen);
        if self.adj[v] & chosen == 0 {
            self.visit(v + 1, chosen | 1 << v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_graphs() {
        assert_eq!(mis_bruteforce(&AdjacencyGraph::empty(12)).unwrap().value, 12);
        assert_eq!(mis_bruteforce(&AdjacencyGraph::complete(5)).unwrap().value, 1);
        assert!(mis_bruteforce(&AdjacencyGraph::empty(26)).is_err());
        let r = mis_bruteforce(&AdjacencyGraph::empty(0)).unwrap();
        assert_eq!(r.value, 0);
    }
}
