//! Outerplanarity testing through the two forbidden minors.
//!
//! A graph is outerplanar iff it has no K4 minor and no K23 minor. The K4
//! side is the classic degree-<=2 elimination (exactly the treewidth-two
//! graphs survive it). With K4 excluded, a K23 minor is equivalent to a K23
//! subdivision (max degree 3), i.e. some pair of vertices joined by three
//! internally disjoint paths of length >= 2 inside one block; that is a
//! three-unit vertex-capacitated flow question per pair.

use crate::error::{Error, Result};
use crate::graph::Graph;
use std::collections::BTreeSet;

pub const OUTERPLANAR_MAX_N: u32 = 64;

pub fn is_outerplanar(g: &Graph) -> Result<bool> {
    let n = g.n();
    if n > OUTERPLANAR_MAX_N {
        return Err(Error::Scope {
            what: "is_outerplanar",
            limit: OUTERPLANAR_MAX_N as usize,
            got: n as usize,
        });
    }
    if n >= 2 && g.m() > 2 * n as usize - 3 {
        return false_ok();
    }
    if !reduces_to_treewidth_two(g) {
        return false_ok();
    }
    for block in biconnected_blocks(g) {
        if block.len() >= 5 && block_has_theta(g, &block) {
            return false_ok();
        }
    }
    Ok(true)
}

fn false_ok() -> Result<bool> {
    Ok(false)
}

/// Eliminates degree-<=1 vertices and smooths degree-2 vertices (joining
/// their neighbors); succeeds iff the graph has treewidth at most two.
fn reduces_to_treewidth_two(g: &Graph) -> bool {
    let n = g.n() as usize;
    let mut adj: Vec<BTreeSet<u32>> = (0..n)
        .map(|v| g.neighbors(v as u32).iter().copied().collect())
        .collect();
    let mut alive: Vec<bool> = vec![true; n];
    let mut remaining = n;
    while remaining > 0 {
        let mut pick = None;
        for v in 0..n {
            if alive[v] && adj[v].len() <= 2 {
                pick = Some(v);
                break;
            }
        }
        let Some(v) = pick else { return false };
        let nbrs: Vec<u32> = adj[v].iter().copied().collect();
        for &w in &nbrs {
            adj[w as usize].remove(&(v as u32));
        }
        if let [a, b] = nbrs[..] {
            adj[a as usize].insert(b);
            adj[b as usize].insert(a);
        }
        adj[v].clear();
        alive[v] = false;
        remaining -= 1;
    }
    true
}

/// Vertex sets of the biconnected components (bridges give 2-vertex blocks).
pub(crate) fn biconnected_blocks(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.n() as usize;
    let mut disc = vec![0u32; n];
    let mut low = vec![0u32; n];
    let mut timer = 0u32;
    let mut estack: Vec<(u32, u32)> = Vec::new();
    let mut blocks = Vec::new();

    for root in 0..n as u32 {
        if disc[root as usize] != 0 {
            continue;
        }
        timer += 1;
        disc[root as usize] = timer;
        low[root as usize] = timer;
        let mut frames: Vec<(u32, u32, usize)> = vec![(root, u32::MAX, 0)];
        while let Some(&mut (v, parent, ref mut idx)) = frames.last_mut() {
            if *idx < g.degree(v) {
                let w = g.neighbors(v)[*idx];
                *idx += 1;
                if w == parent {
                    continue;
                }
                if disc[w as usize] == 0 {
                    estack.push((v, w));
                    timer += 1;
                    disc[w as usize] = timer;
                    low[w as usize] = timer;
                    frames.push((w, v, 0));
                } else if disc[w as usize] < disc[v as usize] {
                    estack.push((v, w));
                    low[v as usize] = low[v as usize].min(disc[w as usize]);
                }
            } else {
                frames.pop();
                if let Some(&mut (u, _, _)) = frames.last_mut() {
                    low[u as usize] = low[u as usize].min(low[v as usize]);
                    if low[v as usize] >= disc[u as usize] {
                        let mut verts = BTreeSet::new();
                        while let Some(&(a, b)) = estack.last() {
                            estack.pop();
                            verts.insert(a);
                            verts.insert(b);
                            if (a, b) == (u, v) {
                                break;
                            }
                        }
                        if !verts.is_empty() {
                            blocks.push(verts.into_iter().collect());
                        }
                    }
                }
            }
        }
    }
    blocks
}

/// Does the block contain two vertices joined by three internally disjoint
/// paths, each with at least one internal vertex?
fn block_has_theta(g: &Graph, block: &[u32]) -> bool {
    let t = block.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); t];
    for (i, &v) in block.iter().enumerate() {
        for &w in g.neighbors(v) {
            if let Ok(j) = block.binary_search(&w) {
                if j != i {
                    adj[i].push(j);
                }
            }
        }
    }
    for a in 0..t {
        if adj[a].len() < 3 {
            continue;
        }
        for b in a + 1..t {
            if adj[b].len() < 3 {
                continue;
            }
            if disjoint_paths_at_least(&adj, a, b, 3) {
                return true;
            }
        }
    }
    false
}

/// Unit-capacity max flow on the vertex-split network, skipping the direct
/// a-b edge so every counted path has an internal vertex.
fn disjoint_paths_at_least(adj: &[Vec<usize>], a: usize, b: usize, want: u32) -> bool {
    let t = adj.len();
    let nodes = 2 * t; // 2i = in, 2i+1 = out
    let mut cap = vec![vec![0u8; nodes]; nodes];
    for (i, ns) in adj.iter().enumerate() {
        cap[2 * i][2 * i + 1] = if i == a || i == b { 3 } else { 1 };
        for &j in ns {
            if (i.min(j), i.max(j)) == (a.min(b), a.max(b)) {
                continue;
            }
            cap[2 * i + 1][2 * j] = 1;
        }
    }
    let (source, sink) = (2 * a + 1, 2 * b);
    let mut flow = 0u32;
    while flow < want {
        // BFS augmenting path
        let mut prev = vec![usize::MAX; nodes];
        prev[source] = source;
        let mut queue = std::collections::VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            if u == sink {
                break;
            }
            for v in 0..nodes {
                if prev[v] == usize::MAX && cap[u][v] > 0 {
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if prev[sink] == usize::MAX {
            return false;
        }
        let mut v = sink;
        while v != source {
            let u = prev[v];
            cap[u][v] -= 1;
            cap[v][u] += 1;
            v = u;
        }
        flow += 1;
    }
    true
}
