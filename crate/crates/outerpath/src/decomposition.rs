//! Path decompositions and their validation.

use crate::bitset::VertexSet;
use crate::graph::Graph;
use serde::{Deserialize, Serialize};

/// Ordered bag sequence. `width()` is max bag size minus one, so a single
/// empty bag has width -1 (the convention for the empty graph).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathDecomposition {
    pub bags: Vec<VertexSet>,
}

impl PathDecomposition {
    pub fn new(bags: Vec<VertexSet>) -> Self {
        PathDecomposition { bags }
    }

    pub fn width(&self) -> i32 {
        self.bags
            .iter()
            .map(|b| b.len() as i32 - 1)
            .max()
            .unwrap_or(-1)
    }

    pub fn reversed(&self) -> Self {
        PathDecomposition {
            bags: self.bags.iter().rev().cloned().collect(),
        }
    }

    /// Concatenation; only meaningful when the caller has checked the seam.
    pub fn concat(&self, other: &PathDecomposition) -> Self {
        let mut bags = self.bags.clone();
        bags.extend(other.bags.iter().cloned());
        PathDecomposition { bags }
    }

    /// Drops bags that are subsets of an adjacent bag. Keeps validity and
    /// width, and never drops the final bag below one.
    pub fn pruned(&self) -> Self {
        let mut bags: Vec<VertexSet> = Vec::with_capacity(self.bags.len());
        for bag in &self.bags {
            if let Some(last) = bags.last() {
                if bag.is_subset_of(last) {
                    continue;
                }
                if last.is_subset_of(bag) {
                    bags.pop();
                }
            }
            bags.push(bag.clone());
        }
        if bags.is_empty() {
            bags.push(VertexSet::new(
                self.bags.first().map_or(0, |b| b.capacity()),
            ));
        }
        PathDecomposition { bags }
    }

    /// Remaps every bag through `map` (old id -> new id) onto a new capacity.
    pub fn relabeled(&self, map: &[u32], capacity: u32) -> Self {
        PathDecomposition {
            bags: self
                .bags
                .iter()
                .map(|b| VertexSet::from_iter(capacity, b.iter().map(|v| map[v as usize])))
                .collect(),
        }
    }
}

/// Why a bag sequence fails to be a path decomposition of a given graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    ForeignVertex { bag: usize, vertex: u32 },
    VertexUncovered { vertex: u32 },
    EdgeUncovered { u: u32, v: u32 },
    Convexity { vertex: u32, first: usize, gap: usize, last: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::ForeignVertex { bag, vertex } => {
                write!(f, "bag {bag} contains foreign vertex {vertex}")
            }
            Violation::VertexUncovered { vertex } => {
                write!(f, "vertex {vertex} appears in no bag")
            }
            Violation::EdgeUncovered { u, v } => {
                write!(f, "edge {{{u},{v}}} has no bag containing both ends")
            }
            Violation::Convexity { vertex, first, gap, last } => write!(
                f,
                "vertex {vertex} in bags {first} and {last} but not {gap}"
            ),
        }
    }
}

/// Checks vertex coverage, edge coverage and convexity; returns the width on
/// success and the first violation (in that check order) otherwise.
pub fn validate_path_decomposition(
    g: &Graph,
    pd: &PathDecomposition,
) -> std::result::Result<i32, Violation> {
    let n = g.n();
    for (i, bag) in pd.bags.iter().enumerate() {
        for v in bag.iter() {
            if v >= n {
                return Err(Violation::ForeignVertex { bag: i, vertex: v });
            }
        }
    }
    let mut first = vec![usize::MAX; n as usize];
    let mut last = vec![usize::MAX; n as usize];
    for (i, bag) in pd.bags.iter().enumerate() {
        for v in bag.iter() {
            if first[v as usize] == usize::MAX {
                first[v as usize] = i;
            }
            last[v as usize] = i;
        }
    }
    for v in 0..n {
        if first[v as usize] == usize::MAX {
            return Err(Violation::VertexUncovered { vertex: v });
        }
    }
    for (u, v) in g.edges() {
        if !pd
            .bags
            .iter()
            .any(|bag| bag.contains(u) && bag.contains(v))
        {
            return Err(Violation::EdgeUncovered { u, v });
        }
    }
    for v in 0..n {
        for i in first[v as usize]..=last[v as usize] {
            if !pd.bags[i].contains(v) {
                return Err(Violation::Convexity {
                    vertex: v,
                    first: first[v as usize],
                    gap: i,
                    last: last[v as usize],
                });
            }
        }
    }
    Ok(pd.width())
}

/// JSON shape: {"bags": [[ids...], ...], "width": w}
#[derive(Serialize, Deserialize)]
pub struct DecompositionJson {
    pub bags: Vec<Vec<u32>>,
    pub width: i32,
}

impl From<&PathDecomposition> for DecompositionJson {
    fn from(pd: &PathDecomposition) -> Self {
        DecompositionJson {
            bags: pd.bags.iter().map(|b| b.to_sorted_vec()).collect(),
            width: pd.width(),
        }
    }
}

/// DOT rendering: the bag sequence as a path of boxes.
pub fn decomposition_to_dot(pd: &PathDecomposition) -> String {
    let mut out = String::from("graph pathdecomposition {\n  node [shape=box];\n");
    for (i, bag) in pd.bags.iter().enumerate() {
        let label: Vec<String> = bag.iter().map(|v| v.to_string()).collect();
        out.push_str(&format!("  b{i} [label=\"{{{}}}\"];\n", label.join(" ")));
    }
    for i in 1..pd.bags.len() {
        out.push_str(&format!("  b{} -- b{};\n", i - 1, i));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, path_graph};

    fn bags(cap: u32, sets: &[&[u32]]) -> PathDecomposition {
        PathDecomposition::new(
            sets.iter()
                .map(|s| VertexSet::from_iter(cap, s.iter().copied()))
                .collect(),
        )
    }

    #[test]
    fn valid_path_of_p3() {
        let g = path_graph(3);
        let pd = bags(3, &[&[0, 1], &[1, 2]]);
        assert_eq!(validate_path_decomposition(&g, &pd), Ok(1));
    }

    #[test]
    fn uncovered_edge_of_k3() {
        let g = complete_graph(3);
        let pd = bags(3, &[&[0, 1], &[1, 2]]);
        assert_eq!(
            validate_path_decomposition(&g, &pd),
            Err(Violation::EdgeUncovered { u: 0, v: 2 })
        );
    }

    #[test]
    fn convexity_violation_on_p3() {
        let g = path_graph(3);
        let pd = bags(3, &[&[0, 1], &[2], &[1, 2]]);
        match validate_path_decomposition(&g, &pd) {
            Err(Violation::Convexity { vertex: 1, .. }) => {}
            other => panic!("expected convexity violation at vertex 1, got {other:?}"),
        }
    }

    #[test]
    fn prune_drops_nested_bags() {
        let pd = bags(4, &[&[0], &[0, 1], &[1, 2], &[2]]);
        let p = pd.pruned();
        assert_eq!(p.bags.len(), 2);
        assert_eq!(p.width(), 1);
    }

    #[test]
    fn empty_graph_width() {
        let pd = bags(0, &[&[]]);
        assert_eq!(pd.width(), -1);
        assert_eq!(validate_path_decomposition(&Graph::new(0), &pd), Ok(-1));
    }
}
