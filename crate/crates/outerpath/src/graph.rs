//! Simple undirected graphs on vertex ids `0..n`.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};

/// Undirected simple graph. Adjacency lists are kept sorted so that every
/// traversal is deterministic.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: u32,
    adj: Vec<Vec<u32>>,
    m: usize,
}

impl Graph {
    pub fn new(n: u32) -> Self {
        Graph {
            n,
            adj: vec![Vec::new(); n as usize],
            m: 0,
        }
    }

    /// Builds a graph from an edge list. Duplicate edges collapse silently;
    /// self-loops and out-of-range endpoints are errors.
    pub fn from_edges<I: IntoIterator<Item = (u32, u32)>>(n: u32, edges: I) -> Result<Self> {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Inserts edge `{u, v}`. Returns whether the edge was new.
    pub fn add_edge(&mut self, u: u32, v: u32) -> Result<bool> {
        if u >= self.n {
            return Err(Error::VertexRange(u));
        }
        if v >= self.n {
            return Err(Error::VertexRange(v));
        }
        if u == v {
            return Err(Error::Precondition(format!("self-loop at vertex {u}")));
        }
        match self.adj[u as usize].binary_search(&v) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.adj[u as usize].insert(pos, v);
                let pos2 = self.adj[v as usize].binary_search(&u).unwrap_err();
                self.adj[v as usize].insert(pos2, u);
                self.m += 1;
                Ok(true)
            }
        }
    }

    pub fn remove_edge(&mut self, u: u32, v: u32) -> bool {
        if u >= self.n || v >= self.n {
            return false;
        }
        if let Ok(pos) = self.adj[u as usize].binary_search(&v) {
            self.adj[u as usize].remove(pos);
            let pos2 = self.adj[v as usize].binary_search(&u).unwrap();
            self.adj[v as usize].remove(pos2);
            self.m -= 1;
            true
        } else {
            false
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        u < self.n && self.adj[u as usize].binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.adj[u as usize]
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Per-vertex neighbor masks; only available for word-sized graphs.
    /// Every exact-search engine works on these masks, hence the n <= 64 cap.
    pub fn neighbor_masks(&self) -> Result<Vec<u64>> {
        if self.n > 64 {
            return Err(Error::Scope {
                what: "bitmask adjacency",
                limit: 64,
                got: self.n as usize,
            });
        }
        Ok(self
            .adj
            .iter()
            .map(|ns| ns.iter().fold(0u64, |m, &v| m | 1 << v))
            .collect())
    }

    /// Connected components of `G - removed`, sorted by smallest member.
    pub fn connected_components(&self, removed: &VertexSet) -> Vec<VertexSet> {
        assert_eq!(removed.capacity(), self.n);
        let mut seen = vec![false; self.n as usize];
        for v in removed.iter() {
            seen[v as usize] = true;
        }
        let mut comps = Vec::new();
        for start in 0..self.n {
            if seen[start as usize] {
                continue;
            }
            let mut comp = VertexSet::new(self.n);
            let mut stack = vec![start];
            seen[start as usize] = true;
            while let Some(u) = stack.pop() {
                comp.insert(u);
                for &w in self.neighbors(u) {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        stack.push(w);
                    }
                }
            }
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.connected_components(&VertexSet::new(self.n)).len() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.m == self.n as usize - 1 && self.is_connected()
    }

    /// Induced subgraph on `keep`, plus the mapping new id -> old id.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> Result<(Graph, Vec<u32>)> {
        if keep.capacity() != self.n {
            return Err(Error::Precondition(
                "vertex set capacity does not match graph".into(),
            ));
        }
        let old_ids = keep.to_sorted_vec();
        let mut new_of = vec![u32::MAX; self.n as usize];
        for (new, &old) in old_ids.iter().enumerate() {
            new_of[old as usize] = new as u32;
        }
        let mut g = Graph::new(old_ids.len() as u32);
        for &old in &old_ids {
            for &w in self.neighbors(old) {
                if w > old && keep.contains(w) {
                    g.add_edge(new_of[old as usize], new_of[w as usize])?;
                }
            }
        }
        Ok((g, old_ids))
    }

    /// Disjoint union, other's vertices shifted by `self.n`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::new(self.n + other.n);
        for (u, v) in self.edges() {
            g.add_edge(u, v).unwrap();
        }
        for (u, v) in other.edges() {
            g.add_edge(u + self.n, v + self.n).unwrap();
        }
        g
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[u32]) -> Result<Graph> {
        if perm.len() != self.n as usize {
            return Err(Error::Precondition("permutation length mismatch".into()));
        }
        let mut g = Graph::new(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u as usize], perm[v as usize])?;
        }
        Ok(g)
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

/// K_n on `n` vertices.
pub fn complete_graph(n: u32) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

/// Path 0-1-...-(n-1).
pub fn path_graph(n: u32) -> Graph {
    let mut g = Graph::new(n);
    for u in 1..n {
        g.add_edge(u - 1, u).unwrap();
    }
    g
}

/// Cycle 0-1-...-(n-1)-0.
pub fn cycle_graph(n: u32) -> Graph {
    let mut g = path_graph(n);
    if n >= 3 {
        g.add_edge(n - 1, 0).unwrap();
    }
    g
}

/// Star with center 0 and `leaves` leaves.
pub fn star_graph(leaves: u32) -> Graph {
    let mut g = Graph::new(leaves + 1);
    for v in 1..=leaves {
        g.add_edge(0, v).unwrap();
    }
    g
}

/// Complete bipartite graph with sides `a` (ids 0..a) and `b`.
pub fn complete_bipartite(a: u32, b: u32) -> Graph {
    let mut g = Graph::new(a + b);
    for u in 0..a {
        for v in a..a + b {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}
