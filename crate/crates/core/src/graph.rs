//! Undirected graph over the fixed vertex domain `1..=n`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// A simple undirected graph whose vertex set is fixed at construction.
///
/// Adjacency is kept as ordered sets so every traversal (and therefore every
/// maintainer built on top) is deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynGraph {
    n: usize,
    adj: Vec<BTreeSet<usize>>,
    edges: usize,
}

impl DynGraph {
    pub fn new(n: usize) -> Self {
        DynGraph {
            n,
            adj: vec![BTreeSet::new(); n + 1],
            edges: 0,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = DynGraph::new(n);
        for &(u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Validates an edge and returns it normalised as `(min, max)`.
    pub fn check_edge(&self, u: usize, v: usize) -> Result<(usize, usize)> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        Ok((u.min(v), u.max(v)))
    }

    /// Returns `true` if the edge was absent.
    pub fn insert_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        let (u, v) = self.check_edge(u, v)?;
        if !self.adj[u].insert(v) {
            return Ok(false);
        }
        self.adj[v].insert(u);
        self.edges += 1;
        Ok(true)
    }

    /// Returns `true` if the edge was present.
    pub fn delete_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        let (u, v) = self.check_edge(u, v)?;
        if !self.adj[u].remove(&v) {
            return Ok(false);
        }
        self.adj[v].remove(&u);
        self.edges -= 1;
        Ok(true)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u >= 1 && u <= self.n && self.adj[u].contains(&v)
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n
    }

    /// All edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..=self.n).flat_map(move |u| self.adj[u].range(u + 1..).map(move |&v| (u, v)))
    }

    /// Neighbourhood of `v` as a bit mask (bit `w - 1` for neighbour `w`).
    /// Only meaningful for `n <= 64`.
    pub fn neighbour_mask(&self, v: usize) -> u64 {
        self.adj[v].iter().fold(0u64, |m, &w| m | 1 << (w - 1))
    }
}
