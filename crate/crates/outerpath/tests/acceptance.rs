//! Acceptance suite: the exit criteria of the project, one test per
//! criterion, each printing a pass/fail line (visible with --nocapture).

use num_rational::Ratio;
use outerpath::bagsearch::{anchored_pathwidth, bag_pathwidth};
use outerpath::canon::enumerate_all_graphs;
use outerpath::extract::{extract_general, extract_pw2, verify_certificate};
use outerpath::extremal::{
    brute_force_ik, compute_mk, monotonicity_suite, order24_certificate, standard_core,
    verify_witness, MkStatus,
};
use outerpath::graph::Graph;
use outerpath::mop::{enumerate_mops, random_mop, weak_dual};
use outerpath::pathwidth::vs_pathwidth;
use outerpath::recognize::is_outerplanar;
use outerpath::trees::{minimal_pw_tree, tree_pathwidth};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn criterion<F: FnOnce() -> Result<String, String>>(idx: u32, name: &str, f: F) {
    match f() {
        Ok(detail) => println!("criterion {idx:>2} [{name}] PASS  {detail}"),
        Err(why) => {
            println!("criterion {idx:>2} [{name}] FAIL  {why}");
            panic!("criterion {idx} ({name}) failed: {why}");
        }
    }
}

#[test]
fn acceptance_01_m_values() {
    criterion(1, "M-values", || {
        let m1 = compute_mk(1, 6).map_err(|e| e.to_string())?;
        if m1.status != MkStatus::Exact(2) {
            return Err(format!("M_1 came out as {:?}", m1.status));
        }
        let m2 = compute_mk(2, 8).map_err(|e| e.to_string())?;
        if m2.status != MkStatus::Exact(5) {
            return Err(format!("M_2 came out as {:?}", m2.status));
        }
        Ok("M_1 = 2, M_2 = 5".into())
    });
}

#[test]
fn acceptance_02_witness_tightness_k1() {
    criterion(2, "witness tightness k=1", || {
        let r = verify_witness(1, &standard_core(1).unwrap()).map_err(|e| e.to_string())?;
        if r.n != 10 {
            return Err(format!("witness order {} instead of 10", r.n));
        }
        if r.ik != 6 {
            return Err(format!("I_1 = {} instead of 6", r.ik));
        }
        if r.ratio != Ratio::new(3, 5) || !r.tight {
            return Err(format!("ratio {} instead of 3/5", r.ratio));
        }
        Ok("n = 10, I_1 = 6, ratio 3/5".into())
    });
}

#[test]
fn acceptance_03_witness_tightness_k2() {
    criterion(3, "witness tightness k=2", || {
        let r = verify_witness(2, &standard_core(2).unwrap()).map_err(|e| e.to_string())?;
        if r.n != 19 {
            return Err(format!("witness order {} instead of 19", r.n));
        }
        if r.ik != 15 {
            return Err(format!("I_2 = {} instead of 15", r.ik));
        }
        if r.ratio != Ratio::new(15, 19) || !r.tight {
            return Err(format!("ratio {} instead of 15/19", r.ratio));
        }
        Ok("n = 19, I_2 = 15, ratio 15/19".into())
    });
}

#[test]
fn acceptance_04_lower_bound_certificates() {
    criterion(4, "lower-bound certificates n <= 11", || {
        let mut graphs = 0u32;
        for n in 3..=11u32 {
            for mop in enumerate_mops(n, true).map_err(|e| e.to_string())? {
                graphs += 1;
                let g = mop.underlying_graph();
                let c1 = extract_general(&g, 1, 2).map_err(|e| e.to_string())?;
                if !verify_certificate(&g, &c1) {
                    return Err(format!("general certificate failed at n = {n}"));
                }
                if (c1.selected.len() as i64) * 5 < 2 * n as i64 {
                    return Err(format!(
                        "general extraction took {} < ceil(2*{n}/5)",
                        c1.selected.len()
                    ));
                }
                let c2 = extract_pw2(&g).map_err(|e| e.to_string())?;
                if !verify_certificate(&g, &c2) {
                    return Err(format!("width-2 certificate failed at n = {n}"));
                }
                if (c2.selected.len() as i64) * 7 < 5 * n as i64 {
                    return Err(format!(
                        "width-2 extraction took {} < ceil(5*{n}/7)",
                        c2.selected.len()
                    ));
                }
            }
        }
        Ok(format!("{graphs} classes, both extractors certified"))
    });
}

#[test]
fn acceptance_05_scale_soundness() {
    criterion(5, "scale soundness n in {20, 50, 120}", || {
        for n in [20u32, 50, 120] {
            for seed in 0..50u64 {
                let g = random_mop(n, seed ^ (n as u64) << 32)
                    .map_err(|e| e.to_string())?
                    .underlying_graph();
                let cert = extract_pw2(&g).map_err(|e| e.to_string())?;
                if !verify_certificate(&g, &cert) {
                    return Err(format!("certificate failed at n = {n}, seed = {seed}"));
                }
                if (cert.selected.len() as i64) * 7 < 5 * n as i64 {
                    return Err(format!(
                        "selection {} below 5n/7 at n = {n}, seed = {seed}",
                        cert.selected.len()
                    ));
                }
            }
        }
        Ok("150 random triangulations certified".into())
    });
}

#[test]
fn acceptance_06_anchored_small_graphs() {
    criterion(6, "anchored width <= 2 on all outerplanar n <= 5", || {
        let mut checked = 0u32;
        for n in 1..=5u32 {
            for g in enumerate_all_graphs(n).map_err(|e| e.to_string())? {
                if !is_outerplanar(&g).map_err(|e| e.to_string())? {
                    continue;
                }
                for v in 0..n {
                    let a = anchored_pathwidth(&g, v).map_err(|e| e.to_string())?;
                    checked += 1;
                    if a > 2 {
                        return Err(format!("anchored width {a} at vertex {v} of {g:?}"));
                    }
                }
            }
        }
        Ok(format!("{checked} (class, vertex) pairs"))
    });
}

#[test]
fn acceptance_07_dual_tree_chain() {
    criterion(7, "dual-tree lower bound n <= 12", || {
        let mut checked = 0u32;
        for n in 3..=12u32 {
            for mop in enumerate_mops(n, true).map_err(|e| e.to_string())? {
                let d = weak_dual(&mop).map_err(|e| e.to_string())?.tree_graph();
                let tpw = tree_pathwidth(&d).map_err(|e| e.to_string())?;
                let (mpw, _) = vs_pathwidth(&mop.underlying_graph()).map_err(|e| e.to_string())?;
                checked += 1;
                if tpw + 1 > mpw {
                    return Err(format!("bound violated at n = {n}: {} + 1 > {}", tpw, mpw));
                }
            }
        }
        Ok(format!("{checked} classes"))
    });
}

#[test]
fn acceptance_08_minimal_trees() {
    criterion(8, "minimal trees of widths 2 and 3", || {
        let t2 = minimal_pw_tree(2, false).map_err(|e| e.to_string())?;
        if t2.n() != 7 || tree_pathwidth(&t2).map_err(|e| e.to_string())? != 2 {
            return Err(format!("order-{} tree has width {:?}", t2.n(), tree_pathwidth(&t2)));
        }
        let t3 = minimal_pw_tree(3, true).map_err(|e| e.to_string())?;
        let max_deg = (0..t3.n()).map(|v| t3.degree(v)).max().unwrap();
        if t3.n() != 22 || max_deg > 3 || tree_pathwidth(&t3).map_err(|e| e.to_string())? != 3 {
            return Err(format!(
                "order {} / max degree {max_deg} / width {:?}",
                t3.n(),
                tree_pathwidth(&t3)
            ));
        }
        Ok("orders 7 and 22, degree cap 3 holds".into())
    });
}

#[test]
fn acceptance_09_order24_certificate() {
    criterion(9, "order-24 certificate for M_3 <= 23", || {
        let r = order24_certificate().map_err(|e| e.to_string())?;
        if r.tree_pw != 3 {
            return Err(format!("dual template width {}", r.tree_pw));
        }
        if r.n != 24 {
            return Err(format!("triangulation order {}", r.n));
        }
        if r.dual_lower_bound != 4 {
            return Err(format!("dual bound {}", r.dual_lower_bound));
        }
        if r.mop_pw < 4 {
            return Err(format!("DP width {} below 4", r.mop_pw));
        }
        if r.m3_upper_bound != Some(23) {
            return Err(format!("derived bound {:?}", r.m3_upper_bound));
        }
        Ok(format!("DP width {}, dual bound 4, M_3 <= 23", r.mop_pw))
    });
}

#[test]
fn acceptance_10_linear_forest_floor() {
    criterion(10, "width-1 subgraphs reach ceil((4n+2)/7)", || {
        for n in 3..=11u32 {
            for mop in enumerate_mops(n, true).map_err(|e| e.to_string())? {
                let g = mop.underlying_graph();
                let i1 = brute_force_ik(&g, 1).map_err(|e| e.to_string())?.size as i64;
                let needed = (4 * n as i64 + 2 + 6) / 7;
                if i1 < needed {
                    return Err(format!("I_1 = {i1} < {needed} at n = {n}"));
                }
            }
        }
        Ok("all classes n <= 11".into())
    });
}

#[test]
fn acceptance_11_engine_cross_validation() {
    criterion(11, "engine agreement", || {
        let mut checked = 0u32;
        for n in 3..=10u32 {
            for mop in enumerate_mops(n, true).map_err(|e| e.to_string())? {
                let g = mop.underlying_graph();
                let vs = vs_pathwidth(&g).map_err(|e| e.to_string())?.0;
                let bags = bag_pathwidth(&g).map_err(|e| e.to_string())?;
                checked += 1;
                if vs != bags {
                    return Err(format!("disagreement {vs} vs {bags} on a {n}-vertex class"));
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(1105);
        for _ in 0..500 {
            let n = rng.gen_range(1..=8u32);
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.4) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let vs = vs_pathwidth(&g).map_err(|e| e.to_string())?.0;
            let bags = bag_pathwidth(&g).map_err(|e| e.to_string())?;
            checked += 1;
            if vs != bags {
                return Err(format!("disagreement {vs} vs {bags} on {g:?}"));
            }
        }
        Ok(format!("{checked} graphs, zero disagreements"))
    });
}

#[test]
fn acceptance_12_monotonicity_suite() {
    criterion(12, "nested and spanning monotonicity", || {
        let mut rng = ChaCha8Rng::seed_from_u64(1212);
        for trial in 0..100u64 {
            let n = rng.gen_range(4..=10u32);
            let g = random_mop(n, trial).map_err(|e| e.to_string())?.underlying_graph();
            let k = rng.gen_range(1..=2i32);
            let r = monotonicity_suite(&g, k, trial).map_err(|e| e.to_string())?;
            if !r.nested_ok {
                return Err(format!(
                    "I_{k} = {} < I_{} = {} on trial {trial}",
                    r.ik,
                    k - 1,
                    r.ik_prev
                ));
            }
            if !r.spanning_ok {
                return Err(format!(
                    "spanning subgraph shrank I_{k}: {} > {} on trial {trial}",
                    r.ik, r.ik_spanning
                ));
            }
        }
        Ok("100 sampled instances, zero violations".into())
    });
}
