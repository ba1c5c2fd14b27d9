use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::bitset::Bitset;
use crate::error::{Error, Result};
use crate::vector::{enumerate_all, Profile, VectorFamily};

/// Refuse graphs with more vertices than this unless a cap is given.
pub const DEFAULT_VERTEX_CAP: usize = 5000;

/// Which scalar products are forbidden between distinct members.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ForbiddenSpec {
    ExactValues(BTreeSet<i32>),
    /// Every product strictly below the threshold.
    AllBelow(i32),
}

impl ForbiddenSpec {
    pub fn exact<I: IntoIterator<Item = i32>>(values: I) -> Self {
        ForbiddenSpec::ExactValues(values.into_iter().collect())
    }

    pub fn forbids(&self, product: i32) -> bool {
        match self {
            ForbiddenSpec::ExactValues(set) => set.contains(&product),
            ForbiddenSpec::AllBelow(t) => product < *t,
        }
    }

    pub fn validate(&self, profile: &Profile) -> Result<()> {
        if let ForbiddenSpec::ExactValues(set) = self {
            let (lo, hi) = (-2 * profile.l as i32, (profile.k + profile.l) as i32);
            if set.is_empty() {
                return Err(Error::Domain("empty forbidden set".into()));
            }
            if let Some(bad) = set.iter().find(|&&x| x < lo || x > hi) {
                return Err(Error::Domain(format!("forbidden value {bad} outside [{lo}, {hi}]")));
            }
        }
        Ok(())
    }
}

/// Simple undirected graph as a bit matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyGraph {
    rows: Vec<Bitset>,
}

impl AdjacencyGraph {
    pub fn empty(n: usize) -> Self {
        Self {
            rows: (0..n).map(|_| Bitset::new(n)).collect(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).expect("distinct in-range endpoints");
            }
        }
        g
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// `G(n, num/den)` with a fixed seed.
    pub fn random(n: usize, num: u32, den: u32, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_ratio(num, den) {
                    g.add_edge(u, v).expect("distinct in-range endpoints");
                }
            }
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.vertex_count();
        if u >= n || v >= n {
            return Err(Error::IndexOutOfRange {
                index: u.max(v),
                dim: n,
            });
        }
        if u == v {
            return Err(Error::Domain(format!("self-loop at {u}")));
        }
        self.rows[u].insert(v);
        self.rows[v].insert(u);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.rows.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(Bitset::count).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &Bitset {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count()
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| u != v && !self.has_edge(u, v)))
    }
}

/// Vectors of a profile joined when their product is forbidden.
#[derive(Debug, Clone)]
pub struct ConflictGraph {
    vertices: VectorFamily,
    graph: AdjacencyGraph,
    spec: ForbiddenSpec,
}

impl ConflictGraph {
    pub fn vertices(&self) -> &VectorFamily {
        &self.vertices
    }

    pub fn graph(&self) -> &AdjacencyGraph {
        &self.graph
    }

    pub fn spec(&self) -> &ForbiddenSpec {
        &self.spec
    }

    /// Members at the given vertex indices.
    pub fn family_of(&self, indices: &[usize]) -> VectorFamily {
        let m = self.vertices.members();
        VectorFamily::new(self.vertices.profile(), indices.iter().map(|&i| m[i])).expect("vertices share the profile")
    }
}

pub fn build_conflict_graph(profile: Profile, spec: ForbiddenSpec) -> Result<ConflictGraph> {
    build_conflict_graph_capped(profile, spec, DEFAULT_VERTEX_CAP)
}

pub fn build_conflict_graph_capped(profile: Profile, spec: ForbiddenSpec, cap: usize) -> Result<ConflictGraph> {
    spec.validate(&profile)?;
    let size = profile.family_size_saturating();
    if size > cap as u128 {
        return Err(Error::TooLarge {
            size: usize::try_from(size).unwrap_or(usize::MAX),
            cap,
        });
    }
    let vertices = enumerate_all(profile);
    let m = vertices.members();
    let mut graph = AdjacencyGraph::empty(m.len());
    for u in 0..m.len() {
        for v in u + 1..m.len() {
            if spec.forbids(m[u].dot(&m[v])) {
                graph.rows[u].insert(v);
                graph.rows[v].insert(u);
            }
        }
    }
    Ok(ConflictGraph { vertices, graph, spec })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prof(n: usize, k: usize, l: usize) -> Profile {
        Profile::new(n, k, l).unwrap()
    }

    #[test]
    fn conflict_graph_examples() {
        let g = build_conflict_graph(prof(4, 2, 1), ForbiddenSpec::exact([-2])).unwrap();
        assert_eq!(g.graph().vertex_count(), 12);
        let g = build_conflict_graph(prof(6, 3, 2), ForbiddenSpec::exact([-4])).unwrap();
        assert_eq!(g.graph().vertex_count(), 60);
        assert_eq!(g.graph().edge_count(), 90);
    }

    #[test]
    fn spec_validation() {
        let p = prof(4, 2, 1);
        assert!(build_conflict_graph(p, ForbiddenSpec::exact([])).is_err());
        assert!(build_conflict_graph(p, ForbiddenSpec::exact([-3])).is_err());
        assert!(build_conflict_graph(p, ForbiddenSpec::exact([3])).is_ok());
        assert!(build_conflict_graph(p, ForbiddenSpec::exact([4])).is_err());
        assert!(matches!(
            build_conflict_graph_capped(p, ForbiddenSpec::AllBelow(0), 11),
            Err(Error::TooLarge { size: 12, cap: 11 })
        ));
    }

    #[test]
    fn adjacency_guards() {
        let mut g = AdjacencyGraph::empty(3);
        assert!(g.add_edge(1, 1).is_err());
        assert!(g.add_edge(0, 3).is_err());
        g.add_edge(0, 2).unwrap();
        assert!(g.has_edge(2, 0));
        assert!(!g.is_independent(&[0, 2]));
        assert!(g.is_independent(&[0, 1]));
        assert_eq!(AdjacencyGraph::complete(5).edge_count(), 10);
    }
}
