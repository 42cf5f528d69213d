//! Exact tree pathwidth and the minimal-pathwidth tree family.
//!
//! Strategy per connected piece: caterpillars have width at most one and are
//! recognized directly; small pieces go to the subset DP; larger pieces are
//! split at a centroid. If the three heaviest branches tie at width q the
//! answer is q + 1 (any path misses one of them). Otherwise the answer is
//! q1 or q1 + 1, settled by searching for a path whose removal leaves only
//! components of width at most q1 - 1; such a path exists iff the width is
//! at most q1. The search roots the path at a candidate top vertex and is
//! forced downward into any branch of width >= q1, so it is linear per
//! candidate given the memoized branch widths.

use crate::error::{Error, Result};
use crate::graph::{path_graph, Graph};
use crate::pathwidth::vs_table_sequential;
use std::collections::HashMap;

const TREE_DP_CAP: usize = 14;

pub const TREE_PW_MAX_N: u32 = 100_000;

pub fn tree_pathwidth(t: &Graph) -> Result<i32> {
    if t.n() == 0 {
        return Err(Error::NotATree("empty graph"));
    }
    if t.n() > TREE_PW_MAX_N {
        return Err(Error::Scope {
            what: "tree_pathwidth",
            limit: TREE_PW_MAX_N as usize,
            got: t.n() as usize,
        });
    }
    if t.m() != t.n() as usize - 1 {
        return Err(Error::NotATree("edge count differs from n - 1"));
    }
    if !t.is_connected() {
        return Err(Error::NotATree("disconnected"));
    }
    let mut ctx = TreePw {
        g: t,
        memo: HashMap::new(),
    };
    let all: Vec<u32> = (0..t.n()).collect();
    Ok(ctx.pw_piece(&all))
}

struct TreePw<'a> {
    g: &'a Graph,
    memo: HashMap<Box<[u32]>, i32>,
}

fn in_piece(piece: &[u32], v: u32) -> bool {
    piece.binary_search(&v).is_ok()
}

impl TreePw<'_> {
    fn piece_degree(&self, piece: &[u32], v: u32) -> usize {
        self.g
            .neighbors(v)
            .iter()
            .filter(|&&w| in_piece(piece, w))
            .count()
    }

    /// Removing all leaves of a caterpillar leaves a path; equivalently no
    /// spine vertex has three spine neighbors.
    fn is_caterpillar(&self, piece: &[u32]) -> bool {
        for &v in piece {
            if self.piece_degree(piece, v) < 2 {
                continue;
            }
            let spine_nbrs = self
                .g
                .neighbors(v)
                .iter()
                .filter(|&&w| in_piece(piece, w) && self.piece_degree(piece, w) >= 2)
                .count();
            if spine_nbrs > 2 {
                return false;
            }
        }
        true
    }

    fn dp(&self, piece: &[u32]) -> i32 {
        let adj: Vec<u64> = piece
            .iter()
            .map(|&v| {
                let mut m = 0u64;
                for &w in self.g.neighbors(v) {
                    if let Ok(j) = piece.binary_search(&w) {
                        m |= 1 << j;
                    }
                }
                m
            })
            .collect();
        let table = vs_table_sequential(&adj);
        table[table.len() - 1] as i32
    }

    /// Connected components of `piece - removed`, each sorted, ordered by
    /// smallest member.
    fn components_minus(&self, piece: &[u32], removed: u32) -> Vec<Vec<u32>> {
        let mut seen: HashMap<u32, bool> = HashMap::new();
        let mut comps = Vec::new();
        for &start in piece {
            if start == removed || *seen.get(&start).unwrap_or(&false) {
                continue;
            }
            let mut comp = vec![];
            let mut stack = vec![start];
            seen.insert(start, true);
            while let Some(u) = stack.pop() {
                comp.push(u);
                for &w in self.g.neighbors(u) {
                    if w != removed && in_piece(piece, w) && !*seen.get(&w).unwrap_or(&false) {
                        seen.insert(w, true);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    fn centroid(&self, piece: &[u32]) -> u32 {
        let t = piece.len();
        let root = piece[0];
        let mut order = Vec::with_capacity(t);
        let mut parent: HashMap<u32, u32> = HashMap::new();
        parent.insert(root, u32::MAX);
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            order.push(u);
            for &w in self.g.neighbors(u) {
                if in_piece(piece, w) && !parent.contains_key(&w) {
                    parent.insert(w, u);
                    stack.push(w);
                }
            }
        }
        let mut size: HashMap<u32, usize> = piece.iter().map(|&v| (v, 1usize)).collect();
        for &u in order.iter().rev() {
            let p = parent[&u];
            if p != u32::MAX {
                *size.get_mut(&p).unwrap() += size[&u];
            }
        }
        let mut best = (usize::MAX, u32::MAX);
        for &v in piece {
            let mut maxcomp = t - size[&v];
            for &w in self.g.neighbors(v) {
                if in_piece(piece, w) && parent[&w] == v {
                    maxcomp = maxcomp.max(size[&w]);
                }
            }
            if (maxcomp, v) < best {
                best = (maxcomp, v);
            }
        }
        best.1
    }

    fn pw_piece(&mut self, piece: &[u32]) -> i32 {
        let t = piece.len();
        if t == 0 {
            return -1;
        }
        if t == 1 {
            return 0;
        }
        if self.is_caterpillar(piece) {
            return 1;
        }
        if t <= TREE_DP_CAP {
            return self.dp(piece);
        }
        if let Some(&w) = self.memo.get(piece) {
            return w;
        }
        let c = self.centroid(piece);
        let comps = self.components_minus(piece, c);
        let mut q: Vec<i32> = comps.iter().map(|comp| self.pw_piece(comp)).collect();
        q.sort_unstable_by(|a, b| b.cmp(a));
        let q1 = q[0];
        let ans = if q.len() >= 3 && q[2] >= q1 {
            q1 + 1
        } else if self.width_at_most(piece, q1) {
            q1
        } else {
            q1 + 1
        };
        self.memo.insert(piece.into(), ans);
        ans
    }

    /// Does `piece` admit a path whose removal leaves only components of
    /// width <= p - 1? Tries every path top; descents are forced.
    fn width_at_most(&mut self, piece: &[u32], p: i32) -> bool {
        debug_assert!(p >= 1);
        for &h in piece {
            if self.feasible_top(piece, h, p) {
                return true;
            }
        }
        false
    }

    fn feasible_top(&mut self, piece: &[u32], h: u32, p: i32) -> bool {
        let comps = self.components_minus(piece, h);
        let mut heavy = Vec::new();
        for comp in &comps {
            if self.pw_piece(comp) >= p {
                heavy.push(comp.clone());
                if heavy.len() > 2 {
                    return false;
                }
            }
        }
        heavy
            .iter()
            .all(|comp| self.descend(comp, self.entry_of(comp, h), p))
    }

    /// The unique vertex of `comp` adjacent to `from`.
    fn entry_of(&self, comp: &[u32], from: u32) -> u32 {
        *self
            .g
            .neighbors(from)
            .iter()
            .find(|&&w| in_piece(comp, w))
            .expect("component must touch the removed vertex")
    }

    fn descend(&mut self, comp: &[u32], entry: u32, p: i32) -> bool {
        let mut piece = comp.to_vec();
        let mut cur = entry;
        loop {
            let children = self.components_minus(&piece, cur);
            let mut best: Option<(i32, usize)> = None;
            let mut second = -1;
            for (i, ch) in children.iter().enumerate() {
                let w = self.pw_piece(ch);
                match best {
                    Some((bw, _)) if w <= bw => second = second.max(w),
                    _ => {
                        if let Some((bw, _)) = best {
                            second = second.max(bw);
                        }
                        best = Some((w, i));
                    }
                }
            }
            if second >= p {
                return false;
            }
            match best {
                None => return true,
                Some((w, _)) if w < p => return true,
                Some((_, i)) => {
                    let child = children.into_iter().nth(i).unwrap();
                    let next = self.entry_of(&child, cur);
                    piece = child;
                    cur = next;
                }
            }
        }
    }
}

/// Smallest trees of a given pathwidth: orders 2, 7, 22, 67 for p = 1..4.
/// A new root joins one vertex in each of three copies of the previous
/// level; with `degree_capped` the attachment points are leaves, keeping
/// maximum degree 3 so the tree can serve as a weak dual.
pub fn minimal_pw_tree(p: u32, degree_capped: bool) -> Result<Graph> {
    if !(1..=4).contains(&p) {
        return Err(Error::Precondition(format!(
            "minimal_pw_tree expects p in 1..=4, got {p}"
        )));
    }
    Ok(build_minimal(p, degree_capped).0)
}

/// Returns (tree, root, attach leaf, spare leaf); the two designated leaves
/// stay degree one so the next level can attach without breaking the cap.
fn build_minimal(p: u32, capped: bool) -> (Graph, u32, u32, u32) {
    if p == 1 {
        return (path_graph(2), 0, 1, 0);
    }
    let (sub, sroot, sattach, sspare) = build_minimal(p - 1, capped);
    let a = sub.n();
    let mut g = Graph::new(1 + 3 * a);
    for i in 0..3 {
        let off = 1 + i * a;
        for (u, v) in sub.edges() {
            g.add_edge(u + off, v + off).unwrap();
        }
        let point = if capped { sattach } else { sroot };
        g.add_edge(0, point + off).unwrap();
    }
    let (attach, spare) = if capped {
        (sspare + 1, sspare + 1 + a)
    } else {
        (sattach + 1, sattach + 1 + a)
    };
    (g, 0, attach, spare)
}
