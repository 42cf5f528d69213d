//! Second pathwidth engine: memoized search over (finished, active-bag)
//! states, with optional anchoring of a vertex in the last bag.
//!
//! The state (F, B) means the vertices of F are retired (their bag interval
//! closed) and B is the current bag. A vertex may be introduced while the
//! bag has room, and may retire once all its neighbors are in F or B. This
//! engine exists because anchored width cannot be answered by forcing a
//! vertex last in a layout (the claw overestimates that way).

use crate::bitset::VertexSet;
use crate::decomposition::PathDecomposition;
use crate::error::{Error, Result};
use crate::graph::Graph;
use std::collections::HashMap;

pub const BAG_SEARCH_MAX_N: u32 = 14;

struct BagSearch<'a> {
    adj: &'a [u64],
    n: u32,
    full: u64,
    cap: u32,
    anchor: Option<u32>,
    memo: HashMap<u64, bool>,
}

impl BagSearch<'_> {
    fn accepts(&self, f: u64, b: u64) -> bool {
        f | b == self.full && self.anchor.is_none_or(|a| b >> a & 1 == 1)
    }

    fn solve(&mut self, f: u64, b: u64) -> bool {
        if self.accepts(f, b) {
            return true;
        }
        let key = f | b << 32;
        if let Some(&r) = self.memo.get(&key) {
            return r;
        }
        self.memo.insert(key, false);
        let mut ok = false;
        // retire moves
        let mut rest = b;
        while rest != 0 && !ok {
            let u = rest.trailing_zeros();
            rest &= rest - 1;
            if self.adj[u as usize] & !(f | b) == 0 {
                ok = self.solve(f | 1 << u, b & !(1u64 << u));
            }
        }
        // introduce moves
        if !ok && b.count_ones() < self.cap {
            let mut rest = self.full & !(f | b);
            while rest != 0 && !ok {
                let v = rest.trailing_zeros();
                rest &= rest - 1;
                ok = self.solve(f, b | 1 << v);
            }
        }
        self.memo.insert(key, ok);
        ok
    }

    /// Walks the memoized search again, recording the bag after each
    /// introduce move; those snapshots form the decomposition.
    fn reconstruct(&mut self) -> Vec<VertexSet> {
        let mut bags = Vec::new();
        let (mut f, mut b) = (0u64, 0u64);
        loop {
            if self.accepts(f, b) {
                break;
            }
            let mut advanced = false;
            let mut rest = b;
            while rest != 0 {
                let u = rest.trailing_zeros();
                rest &= rest - 1;
                if self.adj[u as usize] & !(f | b) == 0
                    && self.solve(f | 1 << u, b & !(1u64 << u))
                {
                    f |= 1 << u;
                    b &= !(1u64 << u);
                    advanced = true;
                    break;
                }
            }
            if advanced {
                continue;
            }
            let mut rest = self.full & !(f | b);
            while rest != 0 {
                let v = rest.trailing_zeros();
                rest &= rest - 1;
                if b.count_ones() < self.cap && self.solve(f, b | 1 << v) {
                    b |= 1 << v;
                    bags.push(VertexSet::from_mask64(self.n, b));
                    advanced = true;
                    break;
                }
            }
            assert!(advanced, "reconstruction lost the solved state");
        }
        bags
    }
}

/// A width-at-most-`k` decomposition of `g` with `anchor` in the last bag
/// (when given), or `None` when no such decomposition exists.
pub fn bag_search_pathwidth(
    g: &Graph,
    k: i32,
    anchor: Option<u32>,
) -> Result<Option<PathDecomposition>> {
    let n = g.n();
    if n > BAG_SEARCH_MAX_N {
        return Err(Error::Scope {
            what: "bag_search_pathwidth",
            limit: BAG_SEARCH_MAX_N as usize,
            got: n as usize,
        });
    }
    if let Some(a) = anchor {
        if a >= n {
            return Err(Error::VertexRange(a));
        }
    }
    if n == 0 {
        return Ok(if k >= -1 {
            Some(PathDecomposition::new(vec![VertexSet::new(0)]))
        } else {
            None
        });
    }
    if k < 0 {
        return Ok(None);
    }
    let adj = g.neighbor_masks()?;
    let mut search = BagSearch {
        adj: &adj,
        n,
        full: (1u64 << n) - 1,
        cap: k as u32 + 1,
        anchor,
        memo: HashMap::new(),
    };
    if !search.solve(0, 0) {
        return Ok(None);
    }
    let pd = PathDecomposition::new(search.reconstruct());
    debug_assert!(pd.width() <= k);
    Ok(Some(pd))
}

/// Minimum width over decompositions with `v` in an end bag; always at
/// least the plain pathwidth.
pub fn anchored_pathwidth(g: &Graph, v: u32) -> Result<i32> {
    if v >= g.n() {
        return Err(Error::VertexRange(v));
    }
    for k in 0..=g.n() as i32 {
        if bag_search_pathwidth(g, k, Some(v))?.is_some() {
            return Ok(k);
        }
    }
    unreachable!("a single bag of all vertices always anchors");
}

/// Pathwidth through the bag-state engine (cross-validation use).
pub fn bag_pathwidth(g: &Graph) -> Result<i32> {
    if g.n() == 0 {
        return Ok(-1);
    }
    for k in 0..=g.n() as i32 {
        if bag_search_pathwidth(g, k, None)?.is_some() {
            return Ok(k);
        }
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::validate_path_decomposition;
    use crate::graph::{complete_graph, path_graph, star_graph};
    use crate::pathwidth::vs_pathwidth;

    #[test]
    fn claw_anchored_at_center_is_one() {
        let claw = star_graph(3);
        let pd = bag_search_pathwidth(&claw, 1, Some(0)).unwrap().unwrap();
        assert!(validate_path_decomposition(&claw, &pd).is_ok());
        assert!(pd.bags.last().unwrap().contains(0));
        assert_eq!(anchored_pathwidth(&claw, 0).unwrap(), 1);
    }

    #[test]
    fn k3_width_one_is_absent() {
        assert!(bag_search_pathwidth(&complete_graph(3), 1, None)
            .unwrap()
            .is_none());
        assert!(bag_search_pathwidth(&complete_graph(3), 1, Some(0))
            .unwrap()
            .is_none());
    }

    #[test]
    fn anchored_singleton_is_zero() {
        let g = crate::graph::Graph::new(1);
        assert_eq!(anchored_pathwidth(&g, 0).unwrap(), 0);
    }

    #[test]
    fn anchored_never_below_pathwidth() {
        for g in [path_graph(5), star_graph(4), complete_graph(4)] {
            let pw = vs_pathwidth(&g).unwrap().0;
            for v in 0..g.n() {
                assert!(anchored_pathwidth(&g, v).unwrap() >= pw);
            }
        }
    }

    #[test]
    fn engines_agree_on_small_graphs() {
        for g in [
            path_graph(6),
            star_graph(5),
            complete_graph(5),
            crate::graph::complete_bipartite(2, 3),
        ] {
            assert_eq!(bag_pathwidth(&g).unwrap(), vs_pathwidth(&g).unwrap().0);
        }
    }

    #[test]
    fn anchored_decomposition_validates_and_ends_on_anchor() {
        let g = path_graph(5);
        for v in 0..5 {
            let k = anchored_pathwidth(&g, v).unwrap();
            let pd = bag_search_pathwidth(&g, k, Some(v)).unwrap().unwrap();
            assert!(validate_path_decomposition(&g, &pd).is_ok());
            assert!(pd.bags.last().unwrap().contains(v));
        }
    }
}
