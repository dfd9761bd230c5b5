//! Finite simple graphs: the combinatorial shape shared by Coxeter graphs and
//! intersection patterns.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;

/// Undirected graph without loops or repeated edges, vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge ({a}, {b}) references a vertex outside 0..{n}"
                )));
            }
            if a == b {
                return Err(Error::InvalidParameter(format!("loop at vertex {a}")));
            }
            if adj[a].contains(&b) {
                return Err(Error::InvalidParameter(format!("repeated edge ({a}, {b})")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
        }
        Ok(Self { n, adj })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            adj: vec![Vec::new(); n],
        }
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, &edges).expect("path is simple")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least three vertices");
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Self::new(n, &edges).expect("cycle is simple")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (a, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&b| a < b).map(|&b| (a, b)));
        }
        out
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    pub fn add_vertex(&mut self, neighbors: &[usize]) -> usize {
        let v = self.n;
        self.n += 1;
        self.adj.push(Vec::new());
        for &u in neighbors {
            assert!(u < v && !self.adj[v].contains(&u));
            self.adj[v].push(u);
            self.adj[u].push(v);
            self.adj[u].sort_unstable();
        }
        self.adj[v].sort_unstable();
        v
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.n > 0 && self.edge_count() == self.n - 1 && self.is_connected()
    }

    /// Two-colouring with the lowest vertex of every component coloured `false`.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        for start in 0..self.n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let c = color[v].expect("coloured");
                for &w in &self.adj[v] {
                    match color[w] {
                        None => {
                            color[w] = Some(!c);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == c => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.expect("coloured")).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Symmetric 0/1 adjacency matrix.
    pub fn adjacency_matrix(&self) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.n.max(1));
        for (a, b) in self.edges() {
            m.set_int(a, b, 1);
            m.set_int(b, a, 1);
        }
        m
    }

    /// Graph with vertex `v` deleted; later vertices shift down by one.
    pub fn remove_vertex(&self, v: usize) -> Self {
        let relabel = |u: usize| if u > v { u - 1 } else { u };
        let edges: Vec<_> = self
            .edges()
            .into_iter()
            .filter(|&(a, b)| a != v && b != v)
            .map(|(a, b)| (relabel(a), relabel(b)))
            .collect();
        Self::new(self.n - 1, &edges).expect("subgraph of a simple graph is simple")
    }

    /// Graph with edge `(a, b)` deleted.
    pub fn remove_edge(&self, a: usize, b: usize) -> Self {
        let edges: Vec<_> = self
            .edges()
            .into_iter()
            .filter(|&e| e != (a.min(b), a.max(b)))
            .collect();
        Self::new(self.n, &edges).expect("subgraph of a simple graph is simple")
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.degree(v) == 1).collect()
    }
}
