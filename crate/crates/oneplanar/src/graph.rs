//! Abstract (undirected, simple) graphs: vertex ids, edge lists, adjacency.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// Vertex identifier. Real vertices are small ids; crossing dummies live at
/// `DUMMY_BASE` and above by convention.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId(pub u32);

/// Index of an edge in a graph's edge list.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeId(pub u32);

pub const DUMMY_BASE: u32 = 1_000_000;

impl VertexId {
    pub fn is_dummy(self) -> bool {
        self.0 >= DUMMY_BASE
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_dummy() {
            write!(f, "d{}", self.0 - DUMMY_BASE)
        } else {
            write!(f, "v{}", self.0)
        }
    }
}

impl fmt::Debug for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// A simple undirected graph with explicit vertex set (isolated vertices allowed).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    pub vertices: BTreeSet<VertexId>,
    pub edges: Vec<(VertexId, VertexId)>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_edges(n: impl IntoIterator<Item = u32>, edges: &[(u32, u32)]) -> Self {
        let mut g = Graph::new();
        for v in n {
            g.vertices.insert(VertexId(v));
        }
        for &(u, v) in edges {
            g.add_edge(VertexId(u), VertexId(v));
        }
        g
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> EdgeId {
        assert_ne!(u, v, "loops are not supported");
        self.vertices.insert(u);
        self.vertices.insert(v);
        self.edges.push((u, v));
        EdgeId(self.edges.len() as u32 - 1)
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e.0 as usize]
    }

    /// Normalized endpoint pair (lower id first); the semantic identity of an edge.
    pub fn edge_key(&self, e: EdgeId) -> (VertexId, VertexId) {
        let (u, v) = self.endpoints(e);
        if u <= v {
            (u, v)
        } else {
            (v, u)
        }
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len() as u32).map(EdgeId)
    }

    pub fn find_edge(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.edges
            .iter()
            .position(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
            .map(|i| EdgeId(i as u32))
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.find_edge(u, v).is_some()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn is_connected(&self) -> bool {
        let Some(&start) = self.vertices.iter().next() else {
            return true;
        };
        let mut seen = BTreeSet::new();
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            if !seen.insert(v) {
                continue;
            }
            for w in self.neighbors(v) {
                if !seen.contains(&w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    /// Connected components as sorted vertex sets.
    pub fn components(&self) -> Vec<BTreeSet<VertexId>> {
        let mut remaining: BTreeSet<VertexId> = self.vertices.clone();
        let mut comps = Vec::new();
        while let Some(&start) = remaining.iter().next() {
            let mut comp = BTreeSet::new();
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                if !comp.insert(v) {
                    continue;
                }
                remaining.remove(&v);
                for w in self.neighbors(v) {
                    if !comp.contains(&w) {
                        stack.push(w);
                    }
                }
            }
            comps.push(comp);
        }
        comps
    }

    /// Semantic edge set: normalized endpoint pairs.
    pub fn edge_set(&self) -> BTreeSet<(VertexId, VertexId)> {
        self.edge_ids().map(|e| self.edge_key(e)).collect()
    }

    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.vertices.is_subset(&other.vertices) && self.edge_set().is_subset(&other.edge_set())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components_and_connectivity() {
        let g = Graph::from_edges(0..6, &[(0, 1), (1, 2), (3, 4)]);
        assert!(!g.is_connected());
        assert_eq!(g.components().len(), 3); // {0,1,2}, {3,4}, {5}
        let h = Graph::from_edges(0..3, &[(0, 1), (1, 2)]);
        assert!(h.is_connected());
    }

    #[test]
    fn edge_lookup() {
        let g = Graph::from_edges(0..3, &[(0, 1), (2, 1)]);
        assert_eq!(g.find_edge(VertexId(1), VertexId(0)), Some(EdgeId(0)));
        assert_eq!(g.degree(VertexId(1)), 2);
        assert_eq!(g.neighbors(VertexId(1)), vec![VertexId(0), VertexId(2)]);
    }
}
