//! Extremal quantities: the largest order below which every outerplanar
//! graph stays within a width bound, exhaustive maximum induced subgraph
//! oracles, tight witness constructions, and the order-24 certificate.

use crate::bitset::VertexSet;
use crate::decomposition::{validate_path_decomposition, PathDecomposition};
use crate::error::{Error, Result};
use crate::exec;
use crate::graph::Graph;
use crate::mop::{enumerate_mops, mop_from_dual_tree, weak_dual, Mop};
use crate::pathwidth::{layout_to_decomposition, pathwidth_of_subset, vs_pathwidth};
use crate::recognize::is_outerplanar;
use crate::trees::{minimal_pw_tree, tree_pathwidth};
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const IK_MAX_N: u32 = 20;
pub const MK_CAP_MAX: u32 = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MkStatus {
    /// The scan found a witness: the value is exact.
    Exact(u32),
    /// No witness up to the cap; the true value is at least this.
    LowerBound(u32),
}

#[derive(Clone, Debug)]
pub struct MkResult {
    pub k: i32,
    pub status: MkStatus,
    /// Smallest triangulation with pathwidth > k, when the scan found one.
    pub witness: Option<Mop>,
}

/// Largest t such that every outerplanar graph on at most t vertices has
/// pathwidth at most k, scanned exactly up to `n_cap`. Edge addition never
/// decreases pathwidth and disconnected graphs take the max over
/// components, so scanning maximal connected triangulations decides the
/// universal quantifier.
pub fn compute_mk(k: i32, n_cap: u32) -> Result<MkResult> {
    if k < 1 {
        return Err(Error::Precondition(format!("k must be >= 1, got {k}")));
    }
    if n_cap > MK_CAP_MAX {
        return Err(Error::Scope {
            what: "compute_mk",
            limit: MK_CAP_MAX as usize,
            got: n_cap as usize,
        });
    }
    for n in 3..=n_cap {
        let classes = enumerate_mops(n, true)?;
        let hit = exec::par_position(&classes, |m| {
            vs_pathwidth(&m.underlying_graph())
                .map(|(w, _)| w > k)
                .unwrap_or(false)
        });
        if let Some(i) = hit {
            let witness = classes[i].clone();
            debug_assert!(vs_pathwidth(&witness.underlying_graph()).unwrap().0 > k);
            return Ok(MkResult {
                k,
                status: MkStatus::Exact(n - 1),
                witness: Some(witness),
            });
        }
    }
    Ok(MkResult {
        k,
        status: MkStatus::LowerBound(n_cap),
        witness: None,
    })
}

#[derive(Clone, Debug)]
pub struct IkResult {
    pub size: usize,
    pub witness_set: VertexSet,
    /// Decomposition of the induced subgraph, bags in original ids.
    pub decomposition: PathDecomposition,
}

fn mask_combinations(n: u32, s: u32) -> Vec<u64> {
    if s == 0 {
        return vec![0];
    }
    let mut out = Vec::new();
    let mut mask = (1u64 << s) - 1;
    let limit = 1u64 << n;
    while mask < limit {
        out.push(mask);
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    out
}

fn induced_has_no_edges(adj: &[u64], mask: u64) -> bool {
    let mut rest = mask;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if adj[v] & mask != 0 {
            return false;
        }
    }
    true
}

/// Width <= 1 iff every component is a caterpillar: acyclic, and no vertex
/// has three neighbors of degree >= 2 within the subgraph.
fn induced_is_caterpillar_forest(adj: &[u64], mask: u64) -> bool {
    let deg = |v: u32| (adj[v as usize] & mask).count_ones();
    let mut seen = 0u64;
    let mut rest = mask;
    while rest != 0 {
        let start = rest.trailing_zeros();
        if seen >> start & 1 == 1 {
            rest &= rest - 1;
            continue;
        }
        let mut comp = 0u64;
        let mut stack = vec![start];
        seen |= 1 << start;
        while let Some(u) = stack.pop() {
            comp |= 1 << u;
            let mut nb = adj[u as usize] & mask & !seen;
            while nb != 0 {
                let w = nb.trailing_zeros();
                nb &= nb - 1;
                seen |= 1 << w;
                stack.push(w);
            }
        }
        let cn = comp.count_ones();
        let mut ce = 0u32;
        let mut cm = comp;
        while cm != 0 {
            let v = cm.trailing_zeros();
            cm &= cm - 1;
            ce += (adj[v as usize] & comp).count_ones();
        }
        ce /= 2;
        if ce != cn - 1 {
            return false; // a cycle
        }
        rest &= !comp;
    }
    // spine condition per vertex
    let mut vm = mask;
    while vm != 0 {
        let v = vm.trailing_zeros();
        vm &= vm - 1;
        if deg(v) < 2 {
            continue;
        }
        let mut spine = 0;
        let mut nb = adj[v as usize] & mask;
        while nb != 0 {
            let w = nb.trailing_zeros();
            nb &= nb - 1;
            if deg(w) >= 2 {
                spine += 1;
            }
        }
        if spine > 2 {
            return false;
        }
    }
    true
}

fn subset_within_width(adj: &[u64], mask: u64, k: i32) -> bool {
    match k {
        i32::MIN..=-1 => mask == 0,
        0 => induced_has_no_edges(adj, mask),
        1 => induced_is_caterpillar_forest(adj, mask),
        _ => pathwidth_of_subset(adj, mask) <= k,
    }
}

/// Exact maximum induced subgraph of pathwidth at most k, by scanning
/// subset sizes downward and, within a size, masks in increasing numeric
/// order; the first hit is therefore the lexicographically least witness
/// among maximum-size ones, independent of thread count.
pub fn brute_force_ik(g: &Graph, k: i32) -> Result<IkResult> {
    let n = g.n();
    if n > IK_MAX_N {
        return Err(Error::Scope {
            what: "brute_force_ik",
            limit: IK_MAX_N as usize,
            got: n as usize,
        });
    }
    if n == 0 {
        return Ok(IkResult {
            size: 0,
            witness_set: VertexSet::new(0),
            decomposition: PathDecomposition::new(vec![VertexSet::new(0)]),
        });
    }
    let adj = g.neighbor_masks()?;
    for s in (1..=n).rev() {
        let masks = mask_combinations(n, s);
        if let Some(i) = exec::par_position(&masks, |&m| subset_within_width(&adj, m, k)) {
            let mask = masks[i];
            let witness_set = VertexSet::from_mask64(n, mask);
            let (sub, old_ids) = g.induced_subgraph(&witness_set)?;
            let (w, layout) = vs_pathwidth(&sub)?;
            debug_assert!(w <= k);
            let local = layout_to_decomposition(&sub, &layout)?;
            debug_assert_eq!(validate_path_decomposition(&sub, &local), Ok(w));
            let pd = local.relabeled(&old_ids, n);
            return Ok(IkResult {
                size: s as usize,
                witness_set,
                decomposition: pd,
            });
        }
    }
    Ok(IkResult {
        size: 0,
        witness_set: VertexSet::new(n),
        decomposition: PathDecomposition::new(vec![VertexSet::new(n)]),
    })
}

/// Three disjoint copies of the core plus one vertex joined to the outer
/// edge (0,1) of each copy. With a core of order M+1 and pathwidth > k the
/// result has 3M + 4 vertices and maximum width-k induced subgraphs of
/// order 3M.
pub fn witness_graph(k: i32, core: &Mop) -> Result<Graph> {
    let core_g = core.underlying_graph();
    let (pw, _) = vs_pathwidth(&core_g)?;
    if pw < k + 1 {
        return Err(Error::Precondition(format!(
            "core pathwidth {pw} does not exceed k = {k}"
        )));
    }
    let a = core.n();
    let n = 3 * a + 1;
    let mut g = Graph::new(n);
    let x = 3 * a;
    for i in 0..3 {
        let off = i * a;
        for (u, v) in core_g.edges() {
            g.add_edge(u + off, v + off)?;
        }
        g.add_edge(x, off)?;
        g.add_edge(x, off + 1)?;
    }
    if n <= crate::recognize::OUTERPLANAR_MAX_N && !is_outerplanar(&g)? {
        return Err(Error::Precondition(
            "witness construction left the outerplanar class".into(),
        ));
    }
    Ok(g)
}

#[derive(Clone, Debug)]
pub struct WitnessReport {
    pub k: i32,
    pub m: i64,
    pub n: u32,
    pub ik: usize,
    pub ik_expected: i64,
    pub ratio: Ratio<i64>,
    pub bound_ratio: Ratio<i64>,
    pub tight: bool,
}

/// Runs the exhaustive oracle on the witness graph and compares the
/// achieved ratio against M/(M + 4/3) with exact rationals.
pub fn verify_witness(k: i32, core: &Mop) -> Result<WitnessReport> {
    let m = core.n() as i64 - 1;
    let h = witness_graph(k, core)?;
    let n = h.n();
    if n > IK_MAX_N {
        return Err(Error::Scope {
            what: "verify_witness (exhaustive oracle)",
            limit: IK_MAX_N as usize,
            got: n as usize,
        });
    }
    let ik = brute_force_ik(&h, k)?;
    let ratio = Ratio::new(ik.size as i64, n as i64);
    let bound_ratio = Ratio::new(m, 1) / (Ratio::new(m, 1) + Ratio::new(4, 3));
    debug_assert_eq!(bound_ratio, Ratio::new(3 * m, 3 * m + 4));
    let tight = ik.size as i64 == 3 * m && ratio == bound_ratio;
    Ok(WitnessReport {
        k,
        m,
        n,
        ik: ik.size,
        ik_expected: 3 * m,
        ratio,
        bound_ratio,
        tight,
    })
}

/// The standard cores of order M_k + 1 for the known values M_1 = 2 and
/// M_2 = 5: the triangle and the internal-triangle hexagon.
pub fn standard_core(k: i32) -> Option<Mop> {
    match k {
        1 => Some(Mop::new(3, vec![]).unwrap()),
        2 => Some(crate::mop::triforce_mop()),
        _ => None,
    }
}

#[derive(Clone, Debug)]
pub struct Order24Report {
    pub tree_order: u32,
    pub tree_pw: i32,
    pub n: u32,
    pub dual_order: u32,
    pub dual_pw: i32,
    pub dual_lower_bound: i32,
    pub mop_pw: i32,
    pub m3_upper_bound: Option<u32>,
}

/// Builds the 22-node degree-capped tree of pathwidth 3, realizes it as the
/// weak dual of a 24-vertex triangulation, and certifies pathwidth >= 4 on
/// that triangulation both through the dual bound and the subset DP. A
/// 24-vertex outerplanar graph of pathwidth 4 shows M_3 <= 23.
pub fn order24_certificate() -> Result<Order24Report> {
    let t = minimal_pw_tree(3, true)?;
    let tree_pw = tree_pathwidth(&t)?;
    let mop = mop_from_dual_tree(&t)?;
    let n = mop.n();
    let dual = weak_dual(&mop)?;
    let dual_graph = dual.tree_graph();
    let dual_pw = tree_pathwidth(&dual_graph)?;
    let (mop_pw, _) = vs_pathwidth(&mop.underlying_graph())?;
    let dual_lower_bound = dual_pw + 1;
    let m3_upper_bound = if mop_pw >= 4 { Some(n - 1) } else { None };
    Ok(Order24Report {
        tree_order: t.n(),
        tree_pw,
        n,
        dual_order: dual_graph.n(),
        dual_pw,
        dual_lower_bound,
        mop_pw,
        m3_upper_bound,
    })
}

#[derive(Clone, Debug)]
pub struct MonotonicityReport {
    pub ik: usize,
    pub ik_prev: usize,
    pub ik_spanning: usize,
    pub nested_ok: bool,
    pub spanning_ok: bool,
}

/// Checks I_k >= I_(k-1) on g and I_k(g) <= I_k(h) for a seeded random
/// spanning subgraph h.
pub fn monotonicity_suite(g: &Graph, k: i32, seed: u64) -> Result<MonotonicityReport> {
    if g.n() > 14 {
        return Err(Error::Scope {
            what: "monotonicity_suite",
            limit: 14,
            got: g.n() as usize,
        });
    }
    let ik = brute_force_ik(g, k)?.size;
    let ik_prev = brute_force_ik(g, k - 1)?.size;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut h = Graph::new(g.n());
    for (u, v) in g.edges() {
        if rng.gen_bool(0.5) {
            h.add_edge(u, v)?;
        }
    }
    let ik_spanning = brute_force_ik(&h, k)?.size;
    Ok(MonotonicityReport {
        ik,
        ik_prev,
        ik_spanning,
        nested_ok: ik >= ik_prev,
        spanning_ok: ik <= ik_spanning,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, path_graph};
    use crate::mop::triforce_mop;

    #[test]
    fn mk_small_values() {
        let r = compute_mk(1, 6).unwrap();
        assert_eq!(r.status, MkStatus::Exact(2));
        assert_eq!(r.witness.as_ref().unwrap().n(), 3);

        let r = compute_mk(2, 8).unwrap();
        assert_eq!(r.status, MkStatus::Exact(5));
        let w = r.witness.unwrap();
        assert_eq!(w.n(), 6);
        assert_eq!(vs_pathwidth(&w.underlying_graph()).unwrap().0, 3);
    }

    #[test]
    fn mk_reports_lower_bound_when_no_witness() {
        let r = compute_mk(3, 8).unwrap();
        assert_eq!(r.status, MkStatus::LowerBound(8));
        assert!(r.witness.is_none());
    }

    #[test]
    fn ik_on_triangle() {
        assert_eq!(brute_force_ik(&complete_graph(3), 2).unwrap().size, 3);
        assert_eq!(brute_force_ik(&complete_graph(3), 1).unwrap().size, 2);
        assert_eq!(brute_force_ik(&complete_graph(3), 0).unwrap().size, 1);
    }

    #[test]
    fn ik_results_validate() {
        for (g, k) in [
            (path_graph(6), 1),
            (triforce_mop().underlying_graph(), 1),
            (triforce_mop().underlying_graph(), 2),
        ] {
            let r = brute_force_ik(&g, k).unwrap();
            let (sub, old_ids) = g.induced_subgraph(&r.witness_set).unwrap();
            let mut back = vec![0u32; g.n() as usize];
            for (new, &old) in old_ids.iter().enumerate() {
                back[old as usize] = new as u32;
            }
            let local = PathDecomposition::new(
                r.decomposition
                    .bags
                    .iter()
                    .map(|b| {
                        VertexSet::from_iter(sub.n(), b.iter().map(|v| back[v as usize]))
                    })
                    .collect(),
            );
            let w = validate_path_decomposition(&sub, &local).unwrap();
            assert!(w <= k);
        }
    }

    #[test]
    fn witness_graph_orders() {
        let k3 = Mop::new(3, vec![]).unwrap();
        let h = witness_graph(1, &k3).unwrap();
        assert_eq!(h.n(), 10);

        let h = witness_graph(2, &triforce_mop()).unwrap();
        assert_eq!(h.n(), 19);

        // precondition: core must exceed width k
        assert!(witness_graph(2, &k3).is_err());
    }

    #[test]
    fn witness_tightness_k1() {
        let r = verify_witness(1, &standard_core(1).unwrap()).unwrap();
        assert_eq!(r.ik, 6);
        assert_eq!(r.n, 10);
        assert_eq!(r.ratio, Ratio::new(3, 5));
        assert_eq!(r.bound_ratio, Ratio::new(3, 5));
        assert!(r.tight);
    }

    #[test]
    fn monotonicity_examples() {
        let tri = triforce_mop().underlying_graph();
        let r = monotonicity_suite(&tri, 2, 0).unwrap();
        assert!(r.nested_ok && r.spanning_ok);

        let r = monotonicity_suite(&path_graph(5), 1, 1).unwrap();
        assert_eq!(r.ik, 5);
        assert!(r.nested_ok && r.spanning_ok);
        assert_eq!(
            brute_force_ik(&path_graph(5), 2).unwrap().size,
            brute_force_ik(&path_graph(5), 1).unwrap().size
        );
    }

    #[test]
    fn caterpillar_forest_check_matches_dp() {
        use rand::{Rng, SeedableRng};
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n = rng.gen_range(1..=9u32);
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.3) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let adj = g.neighbor_masks().unwrap();
            let mask = rng.gen_range(0..1u64 << n);
            assert_eq!(
                subset_within_width(&adj, mask, 1),
                pathwidth_of_subset(&adj, mask) <= 1,
                "mask {mask:b} of {g:?}"
            );
        }
    }
}
