//! Undirected simple graphs, file ingestion, and the cost regimes built
//! from them.

mod io;
mod regime;

pub use io::{parse_graph, parse_graph_str, GraphFormat};
pub use regime::{build_constraint, Regime, RANDOM_LINEAR_SCALE, RANDOM_WEIGHT_RANGE};

use std::io::Write;

use rand::seq::index;
use rand::Rng;

use crate::error::{Error, Result};

/// Undirected graph without self-loops or parallel edges, vertices `0..n`.
///
/// Adjacency is kept in CSR form with each neighbor list sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
}

impl Graph {
    /// Normalizes an arbitrary edge list: self-loops are dropped, `(u, v)`
    /// and `(v, u)` collapse to one undirected edge, duplicates are removed.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > u32::MAX as usize {
            return Err(Error::contract(format!("{n} vertices exceed the u32 id space")));
        }
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::contract(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                continue;
            }
            adj[u].push(v as u32);
            adj[v].push(u as u32);
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut neighbors = Vec::new();
        offsets.push(0);
        for mut list in adj {
            list.sort_unstable();
            list.dedup();
            neighbors.extend(list);
            offsets.push(neighbors.len());
        }
        Ok(Graph { offsets, neighbors })
    }

    /// Erdős–Rényi `G(n, p)`.
    pub fn gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Self::from_edges(n, &edges).expect("generated edges are in range")
    }

    /// Preferential attachment: each new vertex links to up to `m` distinct
    /// earlier vertices chosen proportionally to degree. Produces the
    /// heavy-tailed degree profile of collaboration networks.
    pub fn preferential_attachment<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Self {
        let m = m.max(1);
        let mut edges = Vec::new();
        // Each edge endpoint appears once here, so uniform picks are degree-biased.
        let mut endpoints: Vec<usize> = Vec::new();
        for v in 1..n {
            let mut targets: Vec<usize> = Vec::with_capacity(m);
            let wanted = m.min(v);
            while targets.len() < wanted {
                let t = if endpoints.is_empty() || rng.random_bool(0.1) {
                    rng.random_range(0..v)
                } else {
                    endpoints[rng.random_range(0..endpoints.len())]
                };
                if !targets.contains(&t) {
                    targets.push(t);
                }
            }
            for t in targets {
                edges.push((v, t));
                endpoints.push(v);
                endpoints.push(t);
            }
        }
        Self::from_edges(n, &edges).expect("generated edges are in range")
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.vertex_count()).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .map(|&v| v as usize)
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Subgraph induced by `vertices`, relabelled `0..vertices.len()` in the
    /// given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        let mut relabel = vec![u32::MAX; self.vertex_count()];
        for (new, &old) in vertices.iter().enumerate() {
            if old >= self.vertex_count() {
                return Err(Error::contract(format!("vertex {old} out of range")));
            }
            if relabel[old] != u32::MAX {
                return Err(Error::contract(format!("vertex {old} listed twice")));
            }
            relabel[old] = new as u32;
        }
        let mut edges = Vec::new();
        for (new_u, &old_u) in vertices.iter().enumerate() {
            for &old_v in self.neighbors(old_u) {
                let new_v = relabel[old_v as usize];
                if new_v != u32::MAX && (new_u as u32) < new_v {
                    edges.push((new_u, new_v as usize));
                }
            }
        }
        Graph::from_edges(vertices.len(), &edges)
    }

    /// Induced subgraph on `size` vertices drawn uniformly without
    /// replacement (all of them if `size ≥ n`), kept in ascending id order.
    pub fn sample_induced<R: Rng + ?Sized>(&self, size: usize, rng: &mut R) -> Graph {
        let n = self.vertex_count();
        if size >= n {
            return self.clone();
        }
        let mut picked = index::sample(rng, n, size).into_vec();
        picked.sort_unstable();
        self.induced_subgraph(&picked).expect("sampled ids are distinct and in range")
    }

    /// Canonical edge list: `u v` per line, 1-indexed, `u < v`, sorted.
    /// Trailing isolated vertices are not representable in this format.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for (u, v) in self.edges() {
            writeln!(out, "{} {}", u + 1, v + 1)?;
        }
        Ok(())
    }

    /// Canonical MatrixMarket pattern file (lower triangle), which keeps
    /// the vertex count through its size line.
    pub fn write_matrix_market<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let n = self.vertex_count();
        writeln!(out, "%%MatrixMarket matrix coordinate pattern symmetric")?;
        writeln!(out, "{n} {n} {}", self.edge_count())?;
        for (u, v) in self.edges() {
            writeln!(out, "{} {}", v + 1, u + 1)?;
        }
        Ok(())
    }
}
