//! Exact pathwidth via the vertex-separation subset DP.
//!
//! `f(S) = max(cut(S), min over v in S of f(S minus v))` where `cut(S)`
//! counts vertices of `S` with a neighbor outside `S`; `f(V)` equals the
//! pathwidth. The table holds one byte per subset, so memory is `2^n` bytes
//! and the layout is recovered by recomputing transitions instead of storing
//! parents.

use crate::decomposition::PathDecomposition;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::bitset::VertexSet;

pub const VS_DP_MAX_N: u32 = 26;

/// Vertex order realizing a pathwidth value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    pub order: Vec<u32>,
}

#[inline]
fn cut_of(adj: &[u64], s: u64) -> u8 {
    let mut cut = 0u8;
    let mut rest = s;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        cut += (adj[v] & !s != 0) as u8;
    }
    cut
}

/// Reads of `table` only touch subsets of `s` with one bit cleared, which
/// the fill orders guarantee are final.
#[inline]
unsafe fn state_value(adj: &[u64], table: *const u8, s: u64) -> u8 {
    let mut best_prev = u8::MAX;
    let mut cut = 0u8;
    let mut rest = s;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let prev = unsafe { table.add((s & !(1u64 << v)) as usize).read() };
        best_prev = best_prev.min(prev);
        cut += (adj[v] & !s != 0) as u8;
    }
    best_prev.max(cut)
}

/// Fills the table in increasing mask order (every proper subset of a mask
/// is numerically smaller, so dependencies are already final).
#[doc(hidden)]
pub fn vs_table_sequential(adj: &[u64]) -> Vec<u8> {
    let n = adj.len();
    let mut table = vec![0u8; 1usize << n];
    let ptr = table.as_mut_ptr();
    for s in 1..1u64 << n {
        unsafe { ptr.add(s as usize).write(state_value(adj, ptr, s)) };
    }
    table
}

/// Layer-synchronous fill: all masks of popcount `k` only read popcount
/// `k - 1` entries, so each layer is a perfectly parallel pass. Workers
/// write disjoint indices and layers are separated by the rayon barrier,
/// hence no data race; the result is bit-identical to the sequential fill.
#[cfg(feature = "parallel")]
#[doc(hidden)]
pub fn vs_table_parallel(adj: &[u64]) -> Vec<u8> {
    use rayon::prelude::*;

    struct Table(*mut u8);
    unsafe impl Sync for Table {}

    let n = adj.len();
    let mut table = vec![0u8; 1usize << n];
    let shared = Table(table.as_mut_ptr());
    let limit = 1u64 << n;
    for k in 1..=n {
        let mut masks: Vec<u64> = Vec::new();
        let mut s = (1u64 << k) - 1;
        while s < limit {
            masks.push(s);
            let c = s & s.wrapping_neg();
            let r = s + c;
            s = (((r ^ s) >> 2) / c) | r;
        }
        let shared = &shared;
        masks.par_iter().for_each(|&s| unsafe {
            let v = state_value(adj, shared.0, s);
            shared.0.add(s as usize).write(v);
        });
    }
    table
}

fn vs_table(adj: &[u64]) -> Vec<u8> {
    #[cfg(feature = "parallel")]
    if adj.len() >= 18 {
        return vs_table_parallel(adj);
    }
    vs_table_sequential(adj)
}

/// Exact pathwidth plus a realizing layout. The empty graph reports -1 by
/// the single-empty-bag convention.
pub fn vs_pathwidth(g: &Graph) -> Result<(i32, Layout)> {
    let n = g.n();
    if n == 0 {
        return Ok((-1, Layout { order: vec![] }));
    }
    if n > VS_DP_MAX_N {
        return Err(Error::Scope {
            what: "vs_pathwidth",
            limit: VS_DP_MAX_N as usize,
            got: n as usize,
        });
    }
    let adj = g.neighbor_masks()?;
    let table = vs_table(&adj);
    let full = (1u64 << n) - 1;
    let width = table[full as usize] as i32;

    let mut order = vec![0u32; n as usize];
    let mut s = full;
    for pos in (0..n as usize).rev() {
        let fs = table[s as usize];
        let cut = cut_of(&adj, s);
        let mut rest = s;
        let mut chosen = u32::MAX;
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            if table[(s & !(1u64 << v)) as usize].max(cut) == fs {
                chosen = v;
                break;
            }
        }
        debug_assert_ne!(chosen, u32::MAX);
        order[pos] = chosen;
        s &= !(1u64 << chosen);
    }
    Ok((width, Layout { order }))
}

/// Pathwidth of the subgraph induced by the bits of `subset`, using a local
/// DP over remapped ids. Intended for the exhaustive oracles.
pub fn pathwidth_of_subset(adj: &[u64], subset: u64) -> i32 {
    if subset == 0 {
        return -1;
    }
    let mut verts = Vec::with_capacity(subset.count_ones() as usize);
    let mut rest = subset;
    while rest != 0 {
        verts.push(rest.trailing_zeros());
        rest &= rest - 1;
    }
    let local: Vec<u64> = verts
        .iter()
        .map(|&v| {
            let mut m = 0u64;
            for (j, &w) in verts.iter().enumerate() {
                if adj[v as usize] >> w & 1 == 1 {
                    m |= 1 << j;
                }
            }
            m
        })
        .collect();
    let table = vs_table_sequential(&local);
    table[table.len() - 1] as i32
}

/// Boundary bags of a vertex order: bag `i` holds the placed vertices that
/// still have a neighbor at position `i` or later, plus the vertex at `i`.
/// Nested bags are pruned afterwards; the width equals the layout's vertex
/// separation.
pub fn layout_to_decomposition(g: &Graph, layout: &Layout) -> Result<PathDecomposition> {
    let n = g.n();
    if layout.order.len() != n as usize {
        return Err(Error::Precondition("layout length mismatch".into()));
    }
    let mut pos = vec![u32::MAX; n as usize];
    for (i, &v) in layout.order.iter().enumerate() {
        if v >= n || pos[v as usize] != u32::MAX {
            return Err(Error::Precondition("layout is not a permutation".into()));
        }
        pos[v as usize] = i as u32;
    }
    if n == 0 {
        return Ok(PathDecomposition::new(vec![VertexSet::new(0)]));
    }
    let last_nbr_pos: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().map(|&w| pos[w as usize]).max().unwrap_or(0))
        .collect();
    let mut bags = Vec::with_capacity(n as usize);
    for i in 0..n as usize {
        let mut bag = VertexSet::new(n);
        for (j, &v) in layout.order.iter().enumerate().take(i) {
            debug_assert!(j < i);
            if last_nbr_pos[v as usize] >= i as u32 {
                bag.insert(v);
            }
        }
        bag.insert(layout.order[i]);
        bags.push(bag);
    }
    Ok(PathDecomposition::new(bags).pruned())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::validate_path_decomposition;
    use crate::graph::{complete_graph, path_graph, star_graph, Graph};

    #[test]
    fn paths_have_pathwidth_one() {
        assert_eq!(vs_pathwidth(&path_graph(4)).unwrap().0, 1);
        assert_eq!(vs_pathwidth(&path_graph(2)).unwrap().0, 1);
    }

    #[test]
    fn k3_has_pathwidth_two() {
        assert_eq!(vs_pathwidth(&complete_graph(3)).unwrap().0, 2);
    }

    #[test]
    fn empty_and_single() {
        assert_eq!(vs_pathwidth(&Graph::new(0)).unwrap().0, -1);
        assert_eq!(vs_pathwidth(&Graph::new(1)).unwrap().0, 0);
        assert_eq!(vs_pathwidth(&Graph::new(5)).unwrap().0, 0);
    }

    #[test]
    fn layout_realizes_width() {
        for g in [path_graph(6), complete_graph(5), star_graph(4)] {
            let (w, layout) = vs_pathwidth(&g).unwrap();
            let pd = layout_to_decomposition(&g, &layout).unwrap();
            assert_eq!(validate_path_decomposition(&g, &pd), Ok(w));
        }
    }

    #[test]
    fn p3_layout_bags() {
        let g = path_graph(3);
        let layout = Layout { order: vec![0, 1, 2] };
        let pd = layout_to_decomposition(&g, &layout).unwrap();
        assert_eq!(pd.width(), 1);
        assert_eq!(pd.bags.len(), 2);
        assert_eq!(pd.bags[0].to_sorted_vec(), vec![0, 1]);
        assert_eq!(pd.bags[1].to_sorted_vec(), vec![1, 2]);
    }

    #[test]
    fn k3_any_layout_width_two() {
        let g = complete_graph(3);
        for order in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            let pd = layout_to_decomposition(&g, &Layout { order: order.to_vec() }).unwrap();
            assert_eq!(pd.width(), 2);
        }
    }

    #[test]
    fn claw_leaves_first_layout_is_suboptimal() {
        let g = star_graph(3); // center 0
        let layout = Layout { order: vec![1, 2, 3, 0] };
        let pd = layout_to_decomposition(&g, &layout).unwrap();
        assert_eq!(pd.width(), 3);
        assert_eq!(vs_pathwidth(&g).unwrap().0, 1);
    }

    #[test]
    fn non_permutation_rejected() {
        let g = path_graph(3);
        assert!(layout_to_decomposition(&g, &Layout { order: vec![0, 0, 2] }).is_err());
        assert!(layout_to_decomposition(&g, &Layout { order: vec![0, 1] }).is_err());
    }

    #[test]
    fn subset_pathwidth_matches_induced() {
        let g = complete_graph(4);
        let adj = g.neighbor_masks().unwrap();
        assert_eq!(pathwidth_of_subset(&adj, 0b0111), 2);
        assert_eq!(pathwidth_of_subset(&adj, 0b0011), 1);
        assert_eq!(pathwidth_of_subset(&adj, 0), -1);
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_fill_is_bit_identical() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in [1u32, 5, 9, 12] {
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.4) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let adj = g.neighbor_masks().unwrap();
            assert_eq!(vs_table_sequential(&adj), vs_table_parallel(&adj));
        }
    }
}
