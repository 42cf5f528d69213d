//! Maximal outerplanar graphs as polygon triangulations: outer cycle
//! 0,1,...,n-1 plus a maximal set of pairwise non-crossing chords.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::recognize::{biconnected_blocks, is_outerplanar};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};

pub const ENUM_MOPS_MAX_N: u32 = 16;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mop {
    n: u32,
    chords: Vec<(u32, u32)>,
}

impl Mop {
    /// Validates the triangulation invariants: n - 3 pairwise non-crossing
    /// chords between non-adjacent cycle positions.
    pub fn new(n: u32, chords: Vec<(u32, u32)>) -> Result<Mop> {
        if n < 3 {
            return Err(Error::InvalidMop(format!("need n >= 3, got {n}")));
        }
        let mut norm: Vec<(u32, u32)> = Vec::with_capacity(chords.len());
        for (a, b) in chords {
            if a >= n || b >= n {
                return Err(Error::InvalidMop(format!("chord endpoint out of range: {a} {b}")));
            }
            let (i, j) = (a.min(b), a.max(b));
            if i == j {
                return Err(Error::InvalidMop(format!("degenerate chord at {i}")));
            }
            if j - i == 1 || (i == 0 && j == n - 1) {
                return Err(Error::InvalidMop(format!(
                    "chord {i}-{j} joins adjacent cycle positions"
                )));
            }
            norm.push((i, j));
        }
        norm.sort_unstable();
        norm.dedup();
        if norm.len() as u32 != n - 3 {
            return Err(Error::InvalidMop(format!(
                "expected {} chords, got {}",
                n - 3,
                norm.len()
            )));
        }
        for x in 0..norm.len() {
            for y in x + 1..norm.len() {
                let (a, b) = norm[x];
                let (c, d) = norm[y];
                if a < c && c < b && b < d {
                    return Err(Error::InvalidMop(format!(
                        "chords {a}-{b} and {c}-{d} cross"
                    )));
                }
            }
        }
        Ok(Mop { n, chords: norm })
    }

    pub(crate) fn new_unchecked(n: u32, mut chords: Vec<(u32, u32)>) -> Mop {
        chords.sort_unstable();
        let m = Mop { n, chords };
        debug_assert!(Mop::new(m.n, m.chords.clone()).is_ok());
        m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn chords(&self) -> &[(u32, u32)] {
        &self.chords
    }

    pub fn underlying_graph(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for i in 0..self.n {
            g.add_edge(i, (i + 1) % self.n).unwrap();
        }
        for &(i, j) in &self.chords {
            g.add_edge(i, j).unwrap();
        }
        g
    }

    pub fn has_edge(&self, i: u32, j: u32) -> bool {
        let (i, j) = (i.min(j), i.max(j));
        j - i == 1 || (i == 0 && j == self.n - 1) || self.chords.binary_search(&(i, j)).is_ok()
    }

    /// The n - 2 triangular faces, found by recursive arc splitting from the
    /// cycle edge (0, n-1).
    pub fn triangles(&self) -> Vec<[u32; 3]> {
        let g = self.underlying_graph();
        let mut out = Vec::with_capacity(self.n as usize - 2);
        let mut stack = vec![(0u32, self.n - 1)];
        while let Some((lo, hi)) = stack.pop() {
            if hi - lo < 2 {
                continue;
            }
            let apex = g
                .neighbors(lo)
                .iter()
                .copied()
                .find(|&k| lo < k && k < hi && g.has_edge(k, hi))
                .expect("triangulation has an apex on every internal edge");
            out.push([lo, apex, hi]);
            stack.push((apex, hi));
            stack.push((lo, apex));
        }
        out
    }
}

impl std::fmt::Debug for Mop {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Mop(n={}, chords={:?})", self.n, self.chords)
    }
}

/// Weak dual: one node per triangle, edges between triangles sharing a chord.
pub struct DualTree {
    pub triangles: Vec<[u32; 3]>,
    pub edges: Vec<(u32, u32)>,
}

impl DualTree {
    pub fn tree_graph(&self) -> Graph {
        let mut g = Graph::new(self.triangles.len() as u32);
        for &(a, b) in &self.edges {
            g.add_edge(a, b).unwrap();
        }
        g
    }
}

pub fn weak_dual(m: &Mop) -> Result<DualTree> {
    let triangles = m.triangles();
    let mut owner: BTreeMap<(u32, u32), Vec<u32>> = BTreeMap::new();
    for (idx, t) in triangles.iter().enumerate() {
        for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
            owner.entry((a.min(b), a.max(b))).or_default().push(idx as u32);
        }
    }
    let mut edges = Vec::new();
    for (_, ts) in owner {
        match ts.len() {
            1 => {}
            2 => edges.push((ts[0].min(ts[1]), ts[0].max(ts[1]))),
            _ => return Err(Error::InvalidMop("an edge borders three triangles".into())),
        }
    }
    edges.sort_unstable();
    let dual = DualTree { triangles, edges };
    let tg = dual.tree_graph();
    if !tg.is_tree() || (0..tg.n()).any(|v| tg.degree(v) > 3) {
        return Err(Error::InvalidMop("weak dual is not a tree of max degree 3".into()));
    }
    Ok(dual)
}

/// Inverse construction: a triangulation whose weak dual is isomorphic to
/// the given tree (max degree 3). Triangles are glued along free outer
/// sides in a deterministic DFS order.
pub fn mop_from_dual_tree(t: &Graph) -> Result<Mop> {
    if !t.is_tree() {
        return Err(Error::NotATree("dual template must be a tree"));
    }
    if (0..t.n()).any(|v| t.degree(v) > 3) {
        return Err(Error::Precondition(
            "dual tree nodes must have degree at most 3".into(),
        ));
    }
    let mut cycle: Vec<u32> = vec![0, 1, 2];
    let mut next_id = 3u32;
    let mut tri_edges: Vec<(u32, u32)> = vec![(0, 1), (1, 2), (2, 0)];
    // free sides of each placed dual node, as ordered cycle pairs
    let mut sides: Vec<Vec<(u32, u32)>> = vec![Vec::new(); t.n() as usize];
    sides[0] = vec![(0, 1), (1, 2), (2, 0)];
    let mut visited = vec![false; t.n() as usize];
    visited[0] = true;
    let mut stack = vec![0u32];
    while let Some(node) = stack.pop() {
        for &child in t.neighbors(node) {
            if visited[child as usize] {
                continue;
            }
            visited[child as usize] = true;
            let (a, b) = sides[node as usize]
                .pop()
                .expect("degree cap guarantees a free side");
            let x = next_id;
            next_id += 1;
            // insert x between a and b on the outer cycle
            let pa = cycle.iter().position(|&v| v == a).unwrap();
            if cycle[(pa + 1) % cycle.len()] == b {
                cycle.insert(pa + 1, x);
            } else {
                let pb = cycle.iter().position(|&v| v == b).unwrap();
                debug_assert_eq!(cycle[(pb + 1) % cycle.len()], a);
                cycle.insert(pb + 1, x);
            }
            tri_edges.push((a, x));
            tri_edges.push((x, b));
            sides[child as usize] = vec![(a, x), (x, b)];
            stack.push(child);
        }
    }
    let n = t.n() + 2;
    debug_assert_eq!(next_id, n);
    let mut pos = vec![0u32; n as usize];
    for (p, &v) in cycle.iter().enumerate() {
        pos[v as usize] = p as u32;
    }
    let mut chords = Vec::new();
    for (u, v) in tri_edges {
        let (p, q) = (pos[u as usize].min(pos[v as usize]), pos[u as usize].max(pos[v as usize]));
        if q - p != 1 && !(p == 0 && q == n - 1) {
            chords.push((p, q));
        }
    }
    Mop::new(n, chords)
}

/// Recovers the outer cycle of an edge-maximal outerplanar graph. For
/// n >= 4 the outer edges are exactly those lying in one triangle.
pub fn outer_cycle(g: &Graph) -> Result<Vec<u32>> {
    let n = g.n();
    if n < 3 {
        return Err(Error::NotMaximalOuterplanar("need n >= 3".into()));
    }
    if g.m() != 2 * n as usize - 3 {
        return Err(Error::NotMaximalOuterplanar(format!(
            "edge count {} differs from 2n-3 = {}",
            g.m(),
            2 * n - 3
        )));
    }
    if n == 3 {
        return if g.m() == 3 {
            Ok(vec![0, 1, 2])
        } else {
            Err(Error::NotMaximalOuterplanar("three vertices, no triangle".into()))
        };
    }
    let mut outer: Vec<Vec<u32>> = vec![Vec::new(); n as usize];
    for (u, v) in g.edges() {
        let commons = g
            .neighbors(u)
            .iter()
            .filter(|&&w| g.has_edge(v, w))
            .count();
        if commons == 1 {
            outer[u as usize].push(v);
            outer[v as usize].push(u);
        }
    }
    if outer.iter().any(|e| e.len() != 2) {
        return Err(Error::NotMaximalOuterplanar(
            "single-triangle edges do not form a 2-regular graph".into(),
        ));
    }
    let mut order = Vec::with_capacity(n as usize);
    let mut cur = 0u32;
    // deterministic orientation: from 0, walk toward its smaller outer neighbor
    let mut nexts = outer[0].clone();
    nexts.sort_unstable();
    let mut next = nexts[0];
    loop {
        order.push(cur);
        let step = outer[next as usize]
            .iter()
            .copied()
            .find(|&w| w != cur)
            .unwrap();
        cur = next;
        next = step;
        if cur == 0 {
            break;
        }
        if order.len() > n as usize {
            return Err(Error::NotMaximalOuterplanar(
                "single-triangle edges do not form one Hamiltonian cycle".into(),
            ));
        }
    }
    if order.len() != n as usize {
        return Err(Error::NotMaximalOuterplanar(
            "single-triangle edges form a short cycle".into(),
        ));
    }
    Ok(order)
}

/// Coerces an edge-maximal outerplanar graph into the Mop representation.
/// Returns the Mop and the relabeling old id -> cycle position.
pub fn mop_from_max_graph(g: &Graph) -> Result<(Mop, Vec<u32>)> {
    let cycle = outer_cycle(g)?;
    let n = g.n();
    let mut pos = vec![0u32; n as usize];
    for (p, &v) in cycle.iter().enumerate() {
        pos[v as usize] = p as u32;
    }
    let mut chords = Vec::new();
    for (u, v) in g.edges() {
        let (p, q) = (pos[u as usize].min(pos[v as usize]), pos[u as usize].max(pos[v as usize]));
        if q - p != 1 && !(p == 0 && q == n - 1) {
            chords.push((p, q));
        }
    }
    Ok((Mop::new(n, chords)?, pos))
}

/// Extends an outerplanar graph to a maximal one containing it. Components
/// are first chained by bridges, cut vertices are then spanned inside a
/// common face, and the resulting 2-connected graph yields its unique
/// Hamiltonian cycle by repeatedly smoothing degree-2 vertices; remaining
/// non-triangular faces are fanned. Deterministic throughout.
pub fn complete_to_mop(g: &Graph) -> Result<(Mop, Vec<u32>)> {
    let n = g.n();
    if n < 3 {
        return Err(Error::Precondition(format!(
            "completion needs n >= 3, got {n}"
        )));
    }
    // A successful structural recovery certifies maximal outerplanarity by
    // itself, with no size cap.
    if g.m() == 2 * n as usize - 3 {
        if let Ok(r) = mop_from_max_graph(g) {
            return Ok(r);
        }
    }
    if !is_outerplanar(g)? {
        return Err(Error::NotOuterplanar);
    }
    let mut h = g.clone();
    let comps = h.connected_components(&VertexSet::new(n));
    for pair in comps.windows(2) {
        h.add_edge(pair[0].min_element().unwrap(), pair[1].min_element().unwrap())?;
    }
    loop {
        let blocks = biconnected_blocks(&h);
        let mut membership: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (i, b) in blocks.iter().enumerate() {
            for &v in b {
                membership.entry(v).or_default().push(i);
            }
        }
        let Some((&c, bs)) = membership.iter().find(|(_, bs)| bs.len() >= 2) else {
            break;
        };
        // The bridging edge must end at outer-face neighbors of c in each
        // block, otherwise it can cross a chord.
        let a = outer_neighbor_of(&h, &blocks[bs[0]], c)?;
        let b = outer_neighbor_of(&h, &blocks[bs[1]], c)?;
        h.add_edge(a, b)?;
        debug_assert!(is_outerplanar(&h).unwrap());
    }
    let cycle = hamilton_cycle_of_outerplanar(&h)?;
    let mut pos = vec![0u32; n as usize];
    for (p, &v) in cycle.iter().enumerate() {
        pos[v as usize] = p as u32;
    }
    let mut chords = BTreeSet::new();
    for (u, v) in h.edges() {
        let (p, q) = (pos[u as usize].min(pos[v as usize]), pos[u as usize].max(pos[v as usize]));
        if q - p != 1 && !(p == 0 && q == n - 1) {
            chords.insert((p, q));
        }
    }
    let full = triangulate_polygon_faces(n, chords.into_iter().collect());
    let mop = Mop::new(n, full)?;
    debug_assert!(g.edges().all(|(u, v)| mop.has_edge(pos[u as usize], pos[v as usize])));
    Ok((mop, pos))
}

/// A neighbor of `c` inside the block that is adjacent to `c` along the
/// block's outer face: for a bridge block the other endpoint, otherwise the
/// smaller of c's two neighbors on the block's Hamiltonian cycle.
fn outer_neighbor_of(h: &Graph, block: &[u32], c: u32) -> Result<u32> {
    if block.len() == 2 {
        return Ok(if block[0] == c { block[1] } else { block[0] });
    }
    let keep = VertexSet::from_iter(h.n(), block.iter().copied());
    let (sub, old_ids) = h.induced_subgraph(&keep)?;
    let cycle = hamilton_cycle_of_outerplanar(&sub)?;
    let len = cycle.len();
    let pos = cycle
        .iter()
        .position(|&v| old_ids[v as usize] == c)
        .expect("cut vertex lies in its block");
    let left = old_ids[cycle[(pos + len - 1) % len] as usize];
    let right = old_ids[cycle[(pos + 1) % len] as usize];
    Ok(left.min(right))
}

/// Unique Hamiltonian cycle of a 2-connected outerplanar graph, by ear
/// elimination: a degree-2 vertex always lies on the outer cycle, so it can
/// be smoothed away and reinserted between its neighbors afterwards.
fn hamilton_cycle_of_outerplanar(h: &Graph) -> Result<Vec<u32>> {
    let n = h.n() as usize;
    let mut adj: Vec<BTreeSet<u32>> = (0..n)
        .map(|v| h.neighbors(v as u32).iter().copied().collect())
        .collect();
    let mut alive: Vec<bool> = vec![true; n];
    let mut alive_count = n;
    let mut smoothed: Vec<(u32, u32, u32)> = Vec::new();
    while alive_count > 3 {
        let mut v = None;
        for u in 0..n {
            if alive[u] && adj[u].len() == 2 {
                v = Some(u as u32);
                break;
            }
        }
        let Some(v) = v else {
            return Err(Error::NotOuterplanar);
        };
        let mut it = adj[v as usize].iter();
        let x = *it.next().unwrap();
        let y = *it.next().unwrap();
        adj[x as usize].remove(&v);
        adj[y as usize].remove(&v);
        adj[x as usize].insert(y);
        adj[y as usize].insert(x);
        adj[v as usize].clear();
        alive[v as usize] = false;
        alive_count -= 1;
        smoothed.push((v, x, y));
    }
    let rest: Vec<u32> = (0..n as u32).filter(|&v| alive[v as usize]).collect();
    if rest.len() != 3
        || !rest
            .iter()
            .all(|&v| adj[v as usize].len() == 2)
    {
        return Err(Error::NotOuterplanar);
    }
    let mut cycle = vec![rest[0], rest[1], rest[2]];
    for &(v, x, y) in smoothed.iter().rev() {
        let len = cycle.len();
        let px = cycle.iter().position(|&u| u == x).unwrap();
        let py = cycle.iter().position(|&u| u == y).unwrap();
        if (px + 1) % len == py {
            cycle.insert(px + 1, v);
        } else if (py + 1) % len == px {
            cycle.insert(py + 1, v);
        } else {
            return Err(Error::NotOuterplanar);
        }
    }
    Ok(cycle)
}

/// Completes a set of non-crossing polygon diagonals to a triangulation by
/// fanning every non-triangular face from its smallest vertex.
pub(crate) fn triangulate_polygon_faces(n: u32, chords: Vec<(u32, u32)>) -> Vec<(u32, u32)> {
    let mut partners: Vec<Vec<u32>> = vec![Vec::new(); n as usize];
    let mut all: Vec<(u32, u32)> = chords.clone();
    for &(a, b) in &chords {
        partners[a as usize].push(b);
    }
    for p in &mut partners {
        p.sort_unstable();
    }
    let mut regions = vec![(0u32, n - 1)];
    while let Some((lo, hi)) = regions.pop() {
        if hi - lo < 2 {
            continue;
        }
        // walk the face bordering edge (lo, hi) on the inside; the region's
        // own closing edge must not be taken as the first step
        let mut face = vec![lo];
        let mut cur = lo;
        while cur != hi {
            let next = partners[cur as usize]
                .iter()
                .copied()
                .filter(|&k| k > cur && k <= hi && !(cur == lo && k == hi))
                .max()
                .unwrap_or(cur + 1);
            face.push(next);
            cur = next;
        }
        for w in face.windows(2) {
            regions.push((w[0], w[1]));
        }
        // fan the face from lo
        for &v in &face[2..face.len() - 1] {
            all.push((lo, v));
            partners[lo as usize].push(v);
        }
        partners[lo as usize].sort_unstable();
    }
    all.sort_unstable();
    all.dedup();
    all
}

/// Sub-triangulation induced by a contiguous cycle arc of a parent Mop,
/// closed by the arc's end edge and re-triangulated where faces opened up.
/// Returns the new Mop and the map new position -> parent position.
pub(crate) fn arc_sub_mop(parent: &Mop, arc: &[u32]) -> Result<(Mop, Vec<u32>)> {
    let t = arc.len() as u32;
    debug_assert!(t >= 3);
    let mut idx_of: BTreeMap<u32, u32> = BTreeMap::new();
    for (i, &p) in arc.iter().enumerate() {
        idx_of.insert(p, i as u32);
    }
    let mut chords = Vec::new();
    for &(a, b) in parent.chords() {
        if let (Some(&i), Some(&j)) = (idx_of.get(&a), idx_of.get(&b)) {
            let (i, j) = (i.min(j), i.max(j));
            if j - i != 1 && !(i == 0 && j == t - 1) {
                chords.push((i, j));
            }
        }
    }
    let full = triangulate_polygon_faces(t, chords);
    Ok((Mop::new(t, full)?, arc.to_vec()))
}

/// Streams every triangulation of the convex n-gon exactly once.
pub fn for_each_mop<F: FnMut(&Mop)>(n: u32, mut f: F) -> Result<()> {
    check_enum_scope(n)?;
    for k in 1..n - 1 {
        enumerate_with_first_apex(n, k, &mut f);
    }
    Ok(())
}

/// One shard of the enumeration: triangulations whose triangle on the base
/// edge (0, n-1) has the given apex. Shards partition the space, so
/// parallel consumers can merge results in apex order deterministically.
pub fn for_each_mop_shard<F: FnMut(&Mop)>(n: u32, apex: u32, mut f: F) -> Result<()> {
    check_enum_scope(n)?;
    if !(1..n - 1).contains(&apex) {
        return Err(Error::Precondition(format!("apex {apex} out of range")));
    }
    enumerate_with_first_apex(n, apex, &mut f);
    Ok(())
}

fn check_enum_scope(n: u32) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidMop(format!("need n >= 3, got {n}")));
    }
    if n > ENUM_MOPS_MAX_N {
        return Err(Error::Scope {
            what: "enumerate_mops",
            limit: ENUM_MOPS_MAX_N as usize,
            got: n as usize,
        });
    }
    Ok(())
}

fn enumerate_with_first_apex<F: FnMut(&Mop)>(n: u32, apex: u32, f: &mut F) {
    let mut chords = Vec::with_capacity(n as usize - 3);
    let mut regions: Vec<(u32, u32)> = Vec::with_capacity(n as usize);
    push_split(0, n - 1, apex, &mut chords, &mut regions);
    rec_regions(n, &mut regions, 0, &mut chords, f);
}

fn push_split(
    lo: u32,
    hi: u32,
    k: u32,
    chords: &mut Vec<(u32, u32)>,
    regions: &mut Vec<(u32, u32)>,
) -> usize {
    let mut added = 0;
    if k - lo >= 2 {
        chords.push((lo, k));
        added += 1;
    }
    if hi - k >= 2 {
        chords.push((k, hi));
        added += 1;
    }
    regions.push((lo, k));
    regions.push((k, hi));
    added
}

fn rec_regions<F: FnMut(&Mop)>(
    n: u32,
    regions: &mut Vec<(u32, u32)>,
    idx: usize,
    chords: &mut Vec<(u32, u32)>,
    f: &mut F,
) {
    let Some(&(lo, hi)) = regions.get(idx) else {
        let m = Mop::new_unchecked(n, chords.clone());
        f(&m);
        return;
    };
    if hi - lo < 2 {
        rec_regions(n, regions, idx + 1, chords, f);
        return;
    }
    for k in lo + 1..hi {
        let base_regions = regions.len();
        let added = push_split(lo, hi, k, chords, regions);
        rec_regions(n, regions, idx + 1, chords, f);
        regions.truncate(base_regions);
        for _ in 0..added {
            chords.pop();
        }
    }
}

/// Is this labeled triangulation the least member of its dihedral orbit?
/// The outer cycle of a Mop is unique, so cycle symmetries are the whole
/// isomorphism group and this predicate picks one representative per class.
pub fn is_canonical_mop(m: &Mop) -> bool {
    canonical_chords(m) == *m.chords()
}

pub fn canonical_chords(m: &Mop) -> Vec<(u32, u32)> {
    let n = m.n();
    let mut best: Option<Vec<(u32, u32)>> = None;
    for r in 0..n {
        for refl in [false, true] {
            let mut mapped: Vec<(u32, u32)> = m
                .chords()
                .iter()
                .map(|&(a, b)| {
                    let fa = if refl { (n + r - a) % n } else { (a + r) % n };
                    let fb = if refl { (n + r - b) % n } else { (b + r) % n };
                    (fa.min(fb), fa.max(fb))
                })
                .collect();
            mapped.sort_unstable();
            if best.as_ref().is_none_or(|b| mapped < *b) {
                best = Some(mapped);
            }
        }
    }
    best.unwrap_or_default()
}

/// All triangulations of the n-gon, optionally one per isomorphism class.
pub fn enumerate_mops(n: u32, up_to_iso: bool) -> Result<Vec<Mop>> {
    let mut out = Vec::new();
    for_each_mop(n, |m| {
        if !up_to_iso || is_canonical_mop(m) {
            out.push(m.clone());
        }
    })?;
    Ok(out)
}

fn catalan_table(upto: usize) -> Vec<BigUint> {
    let mut cat = Vec::with_capacity(upto + 1);
    cat.push(BigUint::one());
    for m in 0..upto {
        // C(m+1) = C(m) * 2(2m+1) / (m+2), exactly divisible
        let next = (&cat[m] * BigUint::from(2 * (2 * m + 1))) / BigUint::from(m + 2);
        cat.push(next);
    }
    cat
}

fn uniform_below(rng: &mut ChaCha8Rng, total: &BigUint) -> BigUint {
    debug_assert!(!total.is_zero());
    let bits = total.bits();
    let nbytes = bits.div_ceil(8) as usize;
    let topmask = if bits.is_multiple_of(8) { 0xff } else { (1u16 << (bits % 8)) as u8 - 1 };
    loop {
        let mut bytes = vec![0u8; nbytes];
        rng.fill_bytes(&mut bytes);
        if let Some(last) = bytes.last_mut() {
            *last &= topmask;
        }
        let v = BigUint::from_bytes_le(&bytes);
        if v < *total {
            return v;
        }
    }
}

/// Uniform triangulation of the n-gon via recursive splitting with exact
/// Catalan weights; deterministic for a fixed seed.
pub fn random_mop(n: u32, seed: u64) -> Result<Mop> {
    if n < 3 {
        return Err(Error::InvalidMop(format!("need n >= 3, got {n}")));
    }
    let cat = catalan_table(n as usize - 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chords = Vec::with_capacity(n as usize - 3);
    let mut regions = vec![(0u32, n - 1)];
    while let Some((lo, hi)) = regions.pop() {
        if hi - lo < 2 {
            continue;
        }
        let total = &cat[(hi - lo - 1) as usize];
        let mut draw = uniform_below(&mut rng, total);
        let mut apex = lo + 1;
        for k in lo + 1..hi {
            let w = &cat[(k - lo - 1) as usize] * &cat[(hi - k - 1) as usize];
            if draw < w {
                apex = k;
                break;
            }
            draw -= w;
        }
        if apex - lo >= 2 {
            chords.push((lo, apex));
        }
        if hi - apex >= 2 {
            chords.push((apex, hi));
        }
        regions.push((lo, apex));
        regions.push((apex, hi));
    }
    Ok(Mop::new_unchecked(n, chords))
}

/// JSON mirror of the mop text format.
#[derive(serde::Serialize, serde::Deserialize)]
pub struct MopJson {
    pub n: u32,
    pub chords: Vec<(u32, u32)>,
}

impl From<&Mop> for MopJson {
    fn from(m: &Mop) -> Self {
        MopJson {
            n: m.n(),
            chords: m.chords().to_vec(),
        }
    }
}

impl TryFrom<MopJson> for Mop {
    type Error = Error;
    fn try_from(j: MopJson) -> Result<Mop> {
        Mop::new(j.n, j.chords)
    }
}

/// Fan triangulation: vertex 0 joined to every other cycle position.
pub fn fan_mop(n: u32) -> Result<Mop> {
    Mop::new(n, (2..n.saturating_sub(1)).map(|k| (0, k)).collect())
}

/// The hexagon triangulation whose three chords form an internal triangle;
/// the smallest maximal outerplanar graph of pathwidth 3.
pub fn triforce_mop() -> Mop {
    Mop::new(6, vec![(0, 2), (2, 4), (0, 4)]).unwrap()
}
