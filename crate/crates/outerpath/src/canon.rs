//! Brute-force canonical forms for small graphs.
//!
//! The canonical code is the lexicographically minimal adjacency bitstring
//! (upper triangle in column order) over all vertex permutations, found by
//! backtracking with prefix pruning. Codes are equal iff graphs are
//! isomorphic, which is all the enumeration dedup needs.

use crate::error::{Error, Result};
use crate::graph::Graph;
use std::cmp::Ordering;
use std::collections::HashSet;

pub const CANON_MAX_N: u32 = 16;

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    perm: Vec<u32>,
    used: Vec<bool>,
    cols: Vec<u16>,
    best: Option<Vec<u16>>,
    generation: u64,
    order: Vec<u32>,
}

impl Search<'_> {
    /// Column bits of candidate `v` against the placed prefix; the bit for
    /// position 0 is the most significant so u16 order equals string order.
    fn column(&self, v: u32, p: usize) -> u16 {
        let mut col = 0u16;
        for i in 0..p {
            col = col << 1 | self.g.has_edge(self.perm[i], v) as u16;
        }
        col
    }

    /// `cmp` compares the current column prefix against the best code's
    /// prefix of the same length. Whenever a descendant replaces the best,
    /// the new best shares this node's prefix, so a Less status is demoted
    /// to Equal before trying further children.
    fn dfs(&mut self, p: usize, mut cmp: Ordering) {
        if p == self.n {
            if cmp == Ordering::Less || self.best.is_none() {
                self.best = Some(self.cols.clone());
                self.generation += 1;
            }
            return;
        }
        let mut cands: Vec<(u16, u32)> = self
            .order
            .iter()
            .copied()
            .filter(|&v| !self.used[v as usize])
            .map(|v| (self.column(v, p), v))
            .collect();
        cands.sort_unstable();
        for (col, v) in cands {
            let next_cmp = match cmp {
                Ordering::Less => Ordering::Less,
                _ => match &self.best {
                    None => Ordering::Equal,
                    Some(best) => col.cmp(&best[p]),
                },
            };
            if next_cmp == Ordering::Greater {
                continue;
            }
            let gen_before = self.generation;
            self.used[v as usize] = true;
            self.perm.push(v);
            self.cols.push(col);
            self.dfs(p + 1, next_cmp);
            self.cols.pop();
            self.perm.pop();
            self.used[v as usize] = false;
            if self.generation != gen_before {
                cmp = Ordering::Equal;
            }
        }
    }
}

/// Canonical byte string for `g`; identical codes iff isomorphic graphs.
pub fn canonical_code(g: &Graph) -> Result<Vec<u8>> {
    let n = g.n();
    if n > CANON_MAX_N {
        return Err(Error::Scope {
            what: "canonical_code",
            limit: CANON_MAX_N as usize,
            got: n as usize,
        });
    }
    let mut order: Vec<u32> = (0..n).collect();
    order.sort_by_key(|&v| (g.degree(v), v));
    let mut s = Search {
        g,
        n: n as usize,
        perm: Vec::with_capacity(n as usize),
        used: vec![false; n as usize],
        cols: Vec::with_capacity(n as usize),
        best: None,
        generation: 0,
        order,
    };
    s.dfs(0, Ordering::Equal);
    let cols = s.best.unwrap_or_default();

    let mut bytes = vec![n as u8];
    let mut acc = 0u8;
    let mut nbits = 0;
    for (p, &col) in cols.iter().enumerate() {
        for i in (0..p).rev() {
            acc = acc << 1 | (col >> i & 1) as u8;
            nbits += 1;
            if nbits == 8 {
                bytes.push(acc);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        bytes.push(acc << (8 - nbits));
    }
    Ok(bytes)
}

pub const ENUM_GRAPHS_MAX_N: u32 = 6;

/// One representative per isomorphism class over all graphs on `n` vertices,
/// in increasing order of the first edge-mask realizing each class.
pub fn enumerate_all_graphs(n: u32) -> Result<Vec<Graph>> {
    if n > ENUM_GRAPHS_MAX_N {
        return Err(Error::Scope {
            what: "enumerate_all_graphs",
            limit: ENUM_GRAPHS_MAX_N as usize,
            got: n as usize,
        });
    }
    let pairs: Vec<(u32, u32)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut seen = HashSet::new();
    let mut reps = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e);
        let g = Graph::from_edges(n, edges).unwrap();
        if seen.insert(canonical_code(&g)?) {
            reps.push(g);
        }
    }
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, path_graph, star_graph};

    #[test]
    fn code_is_isomorphism_invariant() {
        let k3 = complete_graph(3);
        let relabeled = k3.relabel(&[2, 0, 1]).unwrap();
        assert_eq!(
            canonical_code(&k3).unwrap(),
            canonical_code(&relabeled).unwrap()
        );
    }

    #[test]
    fn p4_differs_from_claw() {
        assert_ne!(
            canonical_code(&path_graph(4)).unwrap(),
            canonical_code(&star_graph(3)).unwrap()
        );
    }

    #[test]
    fn class_counts_small_n() {
        assert_eq!(enumerate_all_graphs(1).unwrap().len(), 1);
        assert_eq!(enumerate_all_graphs(2).unwrap().len(), 2);
        assert_eq!(enumerate_all_graphs(3).unwrap().len(), 4);
        assert_eq!(enumerate_all_graphs(4).unwrap().len(), 11);
    }

    #[test]
    fn scope_errors() {
        assert!(canonical_code(&Graph::new(17)).is_err());
        assert!(enumerate_all_graphs(7).is_err());
    }
}
