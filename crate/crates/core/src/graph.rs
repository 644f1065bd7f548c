//! Simple undirected graphs with the handful of breadth-first measurements
//! the existence checks need.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<usize>>,
    parts: Option<Vec<usize>>,
    edges: usize,
}

impl SimpleGraph {
    pub fn new(order: usize) -> Self {
        Self {
            adj: vec![Vec::new(); order],
            parts: None,
            edges: 0,
        }
    }

    pub fn from_edges(order: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::new(order);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Self {
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle on at least 3 vertices")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::from_edges(n, edges).expect("complete graph edges are distinct")
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.order();
        if u >= n || v >= n {
            return Err(Error::Graph(format!("edge ({u},{v}) out of range for {n} vertices")));
        }
        if u == v {
            return Err(Error::Graph(format!("self-loop at {u}")));
        }
        if self.has_edge(u, v) {
            return Err(Error::Graph(format!("duplicate edge ({u},{v})")));
        }
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.edges += 1;
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u).is_some_and(|a| a.contains(&v))
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    /// Common degree, if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let first = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|a| a.len() == first).then_some(first)
    }

    /// Attaches a part label to every vertex.
    pub fn set_parts(&mut self, parts: Vec<usize>) -> Result<()> {
        if parts.len() != self.order() {
            return Err(Error::Graph(format!(
                "{} part labels for {} vertices",
                parts.len(),
                self.order()
            )));
        }
        self.parts = Some(parts);
        Ok(())
    }

    pub fn parts(&self) -> Option<&[usize]> {
        self.parts.as_deref()
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .adj
            .iter()
            .enumerate()
            .flat_map(|(u, a)| a.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.order()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or_default();
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// All-pairs distances, `None` for disconnected pairs.
    pub fn distance_matrix(&self) -> Vec<Vec<Option<usize>>> {
        (0..self.order()).map(|s| self.distances_from(s)).collect()
    }

    /// Largest distance, or `None` if the graph is disconnected or empty.
    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for s in 0..self.order() {
            for d in self.distances_from(s) {
                best = best.max(d?);
            }
        }
        (self.order() > 0).then_some(best)
    }

    /// Length of a shortest cycle, or `None` for a forest.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        let n = self.order();
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        for s in 0..n {
            dist.fill(usize::MAX);
            parent.fill(usize::MAX);
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                if best.is_some_and(|b| 2 * dist[u] + 1 >= b) {
                    break;
                }
                for &v in &self.adj[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v {
                        let len = dist[u] + dist[v] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// One `u v` line per edge, 0-based.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn from_edge_list(order: usize, text: &str) -> Result<Self> {
        let mut g = Self::new(order);
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let parsed: Option<Vec<usize>> = line.split_whitespace().map(|t| t.parse().ok()).collect();
            match parsed.as_deref() {
                Some(&[u, v]) => g.add_edge(u, v)?,
                _ => return Err(Error::Graph(format!("line {}: expected \"u v\"", lineno + 1))),
            }
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> SimpleGraph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        SimpleGraph::from_edges(10, outer.chain(spokes).chain(inner)).unwrap()
    }

    #[test]
    fn cycles() {
        for n in 3..10 {
            let c = SimpleGraph::cycle(n);
            assert_eq!(c.girth(), Some(n));
            assert_eq!(c.diameter(), Some(n / 2));
            assert_eq!(c.regular_degree(), Some(2));
        }
    }

    #[test]
    fn petersen_measurements() {
        let p = petersen();
        assert_eq!(p.girth(), Some(5));
        assert_eq!(p.diameter(), Some(2));
        assert_eq!(p.regular_degree(), Some(3));
        assert_eq!(p.edge_count(), 15);
    }

    #[test]
    fn complete_graphs() {
        assert_eq!(SimpleGraph::complete(4).girth(), Some(3));
        assert_eq!(SimpleGraph::complete(4).diameter(), Some(1));
        let k2 = SimpleGraph::complete(2);
        assert_eq!(k2.girth(), None);
    }

    #[test]
    fn disconnected_has_no_diameter() {
        let g = SimpleGraph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(g.diameter(), None);
        assert_eq!(g.girth(), None);
    }

    #[test]
    fn rejects_bad_edges() {
        let mut g = SimpleGraph::new(3);
        assert!(g.add_edge(0, 0).is_err());
        assert!(g.add_edge(0, 3).is_err());
        g.add_edge(0, 1).unwrap();
        assert!(g.add_edge(1, 0).is_err());
    }

    #[test]
    fn edge_list_round_trip() {
        let p = petersen();
        let text = p.to_edge_list();
        assert!(text.starts_with("0 1\n"));
        let back = SimpleGraph::from_edge_list(10, &text).unwrap();
        assert_eq!(back.edges(), p.edges());
        assert!(SimpleGraph::from_edge_list(3, "0 1 2\n").is_err());
    }
}
