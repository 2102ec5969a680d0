#![allow(dead_code)]

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use superpose::anchors::{enumerate_anchor_embeddings, enumerate_anchor_sets, AnchorContext, Same};
use superpose::assignment::{min_weight_saturating_matching, AuxBipartite, Side};
use superpose::blocks::is_k_edge_connected;
use superpose::cover::minimum_vertex_cover;
use superpose::format::serialize_mapping;
use superpose::generate::{
    gen_random, reduce_biconnectivity_augmentation, reduce_hamiltonian_path, reduce_subgraph_isomorphism,
    witness_from_ham_path, witness_from_links, Instance, RandomParams,
};
use superpose::oracle::{brute_force_feasible, brute_force_optimum_with, matching_budget_search, OracleConfig, DEFAULT_CAP};
use superpose::two_connect::Branch;
use superpose::unweighted::{construct_2connect, construct_connect, feasible_2connect, feasible_connect};
use superpose::{solve, superpose, Graph, Mapping, SolverConfig, WeightFn};

pub type Check = Result<String, String>;

/// Small random instance with `|V(G)| ≤ 7`, `|V(H)| ≤ 5`, cover of `H` at
/// most 2 and weights in `0..=3`.
pub fn small_instance(seed: u64, k: usize) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let n_g = rng.gen_range(2..=7);
    let n_h = rng.gen_range(2..=n_g.min(5));
    let params = RandomParams {
        n_g,
        n_h,
        edge_prob: rng.gen_range(0.2..0.7),
        weight_max: 3,
        k,
        connected_g: k == 2 || rng.gen_bool(0.3),
        cover_bound: Some(2),
    };
    gen_random(&params, seed).expect("valid parameters")
}

fn render(sol: &Option<superpose::Solution>) -> String {
    match sol {
        Some(s) => serialize_mapping(&s.phi, s.weight),
        None => "INFEASIBLE\n".into(),
    }
}

/// Solver and oracle optimum agree on `count` seeded instances, and every
/// returned mapping is a valid certificate.
pub fn oracle_equivalence(k: usize, count: u64) -> Check {
    let mut feasible = 0;
    let cfg = SolverConfig::default();
    for seed in 0..count {
        let inst = small_instance(seed, k);
        let (g, h, w) = (&inst.g, &inst.h, &inst.w);
        let want = brute_force_optimum_with(g, h, w, k, &OracleConfig::default()).map_err(|e| format!("seed {seed}: oracle {e}"))?;
        let got = solve(g, h, w, k, &cfg).map_err(|e| format!("seed {seed}: solver {e}"))?;
        match (&want.solution, &got) {
            (None, None) => {}
            (Some(a), Some(b)) if a.weight == b.weight => {
                feasible += 1;
                if w.mapping_weight(h, &b.phi) != Ok(b.weight) {
                    return Err(format!("seed {seed}: reported weight {} does not match mapping", b.weight));
                }
                if !is_k_edge_connected(&superpose(g, h, &b.phi).unwrap(), k) {
                    return Err(format!("seed {seed}: solver mapping is not {k}-edge-connecting"));
                }
            }
            _ => return Err(format!("seed {seed}: oracle {:?} vs solver {:?}", want.solution.map(|s| s.weight), got.map(|s| s.weight))),
        }
    }
    if feasible == 0 || feasible == count {
        return Err(format!("degenerate sample: {feasible} of {count} feasible"));
    }
    Ok(format!("{count} instances, {feasible} feasible, 0 mismatches"))
}

/// Every labelled graph on `n` vertices.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len())
        .map(|mask| Graph::new(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e)).unwrap())
        .collect()
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn canonical(g: &Graph, perms: &[Vec<usize>]) -> Vec<(usize, usize)> {
    perms
        .iter()
        .map(|p| {
            let mut e: Vec<(usize, usize)> = g.edges().iter().map(|&(u, v)| (p[u].min(p[v]), p[u].max(p[v]))).collect();
            e.sort_unstable();
            e
        })
        .min()
        .unwrap_or_default()
}

/// Isolate-free graphs on at most `max_n` vertices, one per isomorphism
/// class.
pub fn isolate_free_classes(max_n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 0..=max_n {
        let perms = permutations(n);
        let mut seen = BTreeSet::new();
        for g in all_graphs(n) {
            if (0..n).all(|v| g.degree(v) > 0) && seen.insert(canonical(&g, &perms)) {
                out.push(g);
            }
        }
    }
    out
}

fn certify(g: &Graph, h: &Graph, phi: &Mapping, k: usize) -> bool {
    phi.validate_total(g.n()).is_ok() && superpose(g, h, phi).is_ok_and(|f| is_k_edge_connected(&f, k))
}

/// Unweighted feasibility against the oracle for every labelled `G` on at
/// most `max_n` vertices and every isolate-free `H` up to isomorphism.
pub fn characterization_sweep(max_n: usize) -> Check {
    let hs = isolate_free_classes(max_n);
    let mut pairs = 0;
    let mut yes = [0usize; 2];
    for n in 1..=max_n {
        for g in all_graphs(n) {
            for h in &hs {
                pairs += 1;
                let truth = brute_force_feasible(&g, h, 1).unwrap();
                if feasible_connect(&g, h) != truth {
                    return Err(format!("k=1 G={:?} H={:?}: oracle says {truth}", g.edges(), h.edges()));
                }
                match construct_connect(&g, h) {
                    Some(phi) if truth && certify(&g, h, &phi, 1) => yes[0] += 1,
                    None if !truth => {}
                    other => return Err(format!("k=1 G={:?} H={:?}: bad construction {other:?}", g.edges(), h.edges())),
                }
                if !g.is_connected() {
                    continue;
                }
                let truth = brute_force_feasible(&g, h, 2).unwrap();
                let claim = feasible_2connect(&g, h).map_err(|e| e.to_string())?;
                if claim != truth {
                    return Err(format!("k=2 G={:?} H={:?}: oracle says {truth}", g.edges(), h.edges()));
                }
                match construct_2connect(&g, h).map_err(|e| e.to_string())? {
                    Some(phi) if truth && certify(&g, h, &phi, 2) => yes[1] += 1,
                    None if !truth => {}
                    other => return Err(format!("k=2 G={:?} H={:?}: bad construction {other:?}", g.edges(), h.edges())),
                }
            }
        }
    }
    Ok(format!("{pairs} pairs, {} + {} certified constructions, 0 mismatches", yes[0], yes[1]))
}

/// Odd stars with a perfect matching are infeasible; even stars with a
/// perfect matching on their leaves are not.
pub fn star_exception() -> Check {
    for n in [3usize, 5, 7] {
        let g = Graph::star(n);
        let h = Graph::matching(n.div_ceil(2));
        if feasible_2connect(&g, &h) != Ok(false) || construct_2connect(&g, &h) != Ok(None) {
            return Err(format!("K_1,{n} reported feasible"));
        }
        if n <= 5 && brute_force_feasible(&g, &h, 2) != Ok(false) {
            return Err(format!("oracle finds a placement on K_1,{n}"));
        }
    }
    for n in [2usize, 4, 6] {
        let g = Graph::star(n);
        let h = Graph::matching(n / 2);
        if feasible_2connect(&g, &h) != Ok(true) {
            return Err(format!("K_1,{n} reported infeasible"));
        }
        match construct_2connect(&g, &h) {
            Ok(Some(phi)) if certify(&g, &h, &phi, 2) => {}
            other => return Err(format!("K_1,{n}: no certificate ({other:?})")),
        }
        if brute_force_feasible(&g, &h, 2) != Ok(true) {
            return Err(format!("oracle rejects K_1,{n}"));
        }
    }
    Ok("odd n = 3, 5, 7 infeasible; even n = 2, 4, 6 certified".into())
}

/// Visits every injection of `items` into `slots`.
fn for_each_injection(items: usize, slots: &[usize], f: &mut impl FnMut(&[usize])) {
    fn rec(i: usize, items: usize, slots: &[usize], used: &mut Vec<bool>, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if i == items {
            f(cur);
            return;
        }
        for (s, &v) in slots.iter().enumerate() {
            if !used[s] {
                used[s] = true;
                cur.push(v);
                rec(i + 1, items, slots, used, cur, f);
                cur.pop();
                used[s] = false;
            }
        }
    }
    rec(0, items, slots, &mut vec![false; slots.len()], &mut Vec::new(), f);
}

fn z_cost(h: &Graph, w: &WeightFn, psi: &Mapping, z: usize, v: usize) -> u128 {
    h.neighbors(z).iter().map(|&x| u128::from(w.get(psi.at(x), v))).sum()
}

/// Branches `(Y, ψ)` drawn from seeded instances with `k = 2`, preferring
/// ones whose partial superposition has pendant blocks.
pub fn sample_branches(count: usize) -> Vec<(Instance, AnchorContext)> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut seed = 1000;
    while out.len() < count {
        seed += 1;
        let inst = small_instance(seed, 2);
        let (h, _) = inst.h.without_isolated();
        if h.m() == 0 || inst.g.n() < 3 {
            continue;
        }
        let x = minimum_vertex_cover(&h, None).unwrap();
        let mut cands = Vec::new();
        for y in enumerate_anchor_sets(&h, &x) {
            let mut anchors: Vec<usize> = x.iter().chain(&y).copied().collect();
            anchors.sort_unstable();
            for psi in enumerate_anchor_embeddings(&inst.g, &h, &anchors, Same::Block) {
                let ctx = AnchorContext::new(&h, &inst.w, x.clone(), y.clone(), psi).unwrap();
                let b = Branch::new(&inst.g, &h, &inst.w, ctx.clone()).unwrap();
                if b.pendant_count() > 0 && b.pendant_count() <= ctx.z.len() {
                    cands.push(ctx);
                }
            }
        }
        for _ in 0..2 {
            if cands.is_empty() {
                break;
            }
            let ctx = cands.swap_remove(rng.gen_range(0..cands.len()));
            out.push((Instance { h: h.clone(), ..inst.clone() }, ctx));
        }
    }
    out.truncate(count);
    out
}

/// Every table entry `α_h(q)` equals the brute-force minimum over placements
/// meeting the pendant conditions, and `α_r(p) + R` equals the cheapest
/// 2-edge-connecting completion of the branch.
pub fn dp_sandwich(count: usize) -> Check {
    let mut entries = 0;
    for (bi, (inst, ctx)) in sample_branches(count).into_iter().enumerate() {
        let (g, h, w) = (&inst.g, &inst.h, &inst.w);
        let b = Branch::new(g, h, w, ctx.clone()).unwrap();
        let tables = b.tables();
        let classes = &b.twins.classes;
        for (hh, table) in tables.iter().enumerate() {
            let mut allowed = b.split.pool.clone();
            for p in &b.split.pendants[..hh] {
                allowed.extend(&p.vertices);
            }
            for idx in 0..table.len() {
                let q = table.tuple(idx);
                let members: Vec<usize> = q.iter().enumerate().flat_map(|(i, &k)| classes[i][..k].iter().copied()).collect();
                let mut best: Option<u128> = None;
                for_each_injection(members.len(), &allowed, &mut |img| {
                    let ok = b.split.pendants[..hh].iter().all(|p| {
                        let inside: Vec<usize> = (0..img.len()).filter(|&i| p.vertices.contains(&img[i])).collect();
                        match inside.as_slice() {
                            [] => false,
                            [i] if img[*i] == p.inner => h.neighbors(members[*i]).iter().any(|&x| ctx.psi.at(x) != p.outer),
                            _ => true,
                        }
                    });
                    if ok {
                        let c: u128 = members.iter().zip(img).map(|(&z, &v)| z_cost(h, w, &ctx.psi, z, v)).sum();
                        best = Some(best.map_or(c, |b| b.min(c)));
                    }
                });
                entries += 1;
                if table.at(idx) != best {
                    return Err(format!("branch {bi}: alpha_{hh}{q:?} = {:?}, brute force {best:?}", table.at(idx)));
                }
            }
        }
        // Full completions of this branch.
        let free: Vec<usize> = (0..g.n()).filter(|&v| !ctx.psi.pairs().any(|(_, u)| u == v)).collect();
        let mut best: Option<u64> = None;
        for_each_injection(ctx.z.len(), &free, &mut |img| {
            let mut phi = ctx.psi.clone();
            for (&z, &v) in ctx.z.iter().zip(img) {
                phi.set(z, v);
            }
            if is_k_edge_connected(&superpose(g, h, &phi).unwrap(), 2) {
                let c = w.mapping_weight(h, &phi).unwrap();
                best = Some(best.map_or(c, |b| b.min(c)));
            }
        });
        let dp = tables.last().unwrap().get(&b.twins.sizes()).map(|v| v as u64 + ctx.anchor_weight);
        if dp != best {
            return Err(format!("branch {bi}: DP completion {dp:?}, brute force {best:?}"));
        }
    }
    Ok(format!("{count} branches, {entries} table entries, 0 mismatches"))
}

fn assignment_brute(cost: &[Vec<u64>]) -> u128 {
    let m = cost[0].len();
    let mut best = u128::MAX;
    for_each_injection(cost.len(), &(0..m).collect::<Vec<_>>(), &mut |cols| {
        best = best.min(cols.iter().enumerate().map(|(r, &c)| u128::from(cost[r][c])).sum());
    });
    best
}

/// Hungarian value against permutation brute force on random matrices with
/// at most 7 rows and columns.
pub fn assignment_matrices(count: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for t in 0..count {
        let n = rng.gen_range(1..=7);
        let m = rng.gen_range(n..=7);
        let hi = if t % 2 == 0 { 10 } else { 1_000_000 };
        let cost: Vec<Vec<u64>> = (0..n).map(|_| (0..m).map(|_| rng.gen_range(0..hi)).collect()).collect();
        let got = min_weight_saturating_matching(&AuxBipartite::from_matrix(&cost), Side::Left).map(|r| r.weight);
        let want = assignment_brute(&cost);
        if got != Some(want) {
            return Err(format!("matrix {cost:?}: got {got:?}, want {want}"));
        }
    }
    Ok(format!("{count} matrices, 0 mismatches"))
}

fn tree_links_brute(t: &Graph, c: &WeightFn, budget: u64) -> Option<Vec<(usize, usize)>> {
    let links: Vec<(usize, usize)> = (0..t.n()).flat_map(|u| (u + 1..t.n()).map(move |v| (u, v))).filter(|&(u, v)| !t.has_edge(u, v)).collect();
    let mut best: Option<(u64, Vec<(usize, usize)>)> = None;
    for mask in 0u32..1 << links.len() {
        let a: Vec<(usize, usize)> = links.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        let cost: u64 = a.iter().map(|&(u, v)| c.get(u, v)).sum();
        if cost <= budget && is_k_edge_connected(&t.with_edges(a.iter().copied()).unwrap(), 2) && best.as_ref().is_none_or(|(b, _)| cost < *b) {
            best = Some((cost, a));
        }
    }
    best.map(|(_, a)| a)
}

fn cubic_with_paths() -> Vec<(Graph, Vec<usize>)> {
    let k33 = Graph::new(6, (0..3).flat_map(|u| (3..6).map(move |v| (u, v)))).unwrap();
    let prism = Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]).unwrap();
    let petersen = Graph::new(
        10,
        [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (0, 5), (1, 6), (2, 7), (3, 8), (4, 9), (5, 7), (7, 9), (6, 9), (6, 8), (5, 8)],
    )
    .unwrap();
    vec![
        (Graph::complete(4), vec![0, 1, 2, 3]),
        (k33, vec![0, 3, 1, 4, 2, 5]),
        (prism, vec![0, 1, 2, 5, 4, 3]),
        (petersen, vec![0, 1, 2, 3, 4, 9, 6, 8, 5, 7]),
    ]
}

/// Structural and soundness checks for the three encoders.
pub fn reductions() -> Check {
    let k4 = Graph::complete(4);
    let inst = reduce_hamiltonian_path(&k4).map_err(|e| e.to_string())?;
    if (inst.g.n(), inst.h.n(), inst.h.m(), inst.budget, inst.k) != (16, 14, 7, Some(3), 1) {
        return Err(format!("K4 encoding has sizes {} {} {} {:?}", inst.g.n(), inst.h.n(), inst.h.m(), inst.budget));
    }
    if inst.g.component_sets().iter().any(|c| c.len() != 4 || !c.iter().any(|&v| inst.g.degree(v) == 3)) || inst.g.m() != 12 {
        return Err("K4 encoding is not four disjoint claws".into());
    }
    for (g0, path) in cubic_with_paths() {
        let inst = reduce_hamiltonian_path(&g0).map_err(|e| e.to_string())?;
        let phi = witness_from_ham_path(&g0, &path).map_err(|e| e.to_string())?;
        let n = g0.n() as u64;
        if inst.w.mapping_weight(&inst.h, &phi) != Ok(n - 1) || !certify(&inst.g, &inst.h, &phi, 1) {
            return Err(format!("path witness on {} vertices fails", g0.n()));
        }
    }

    for (g0, h0, yes) in [(Graph::complete(3), Graph::complete(3), true), (Graph::path(3), Graph::complete(3), false)] {
        let inst = reduce_subgraph_isomorphism(&g0, &h0, 1).map_err(|e| e.to_string())?;
        let best = solve(&inst.g, &inst.h, &inst.w, 1, &SolverConfig::default()).map_err(|e| e.to_string())?;
        if best.is_some_and(|s| s.weight == 0) != yes {
            return Err(format!("subgraph encoding of {:?} in {:?} gives the wrong answer", h0.edges(), g0.edges()));
        }
    }

    let trees = [
        Graph::empty(1),
        Graph::path(2),
        Graph::path(3),
        Graph::path(4),
        Graph::star(3),
    ];
    let mut cases = 0;
    for t in &trees {
        let links: Vec<(usize, usize)> = (0..t.n()).flat_map(|u| (u + 1..t.n()).map(move |v| (u, v))).filter(|&(u, v)| !t.has_edge(u, v)).collect();
        for mask in 0u32..1 << links.len() {
            let mut c = WeightFn::uniform(1);
            for (i, &(u, v)) in links.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    c.set(u, v, 2);
                }
            }
            for w0 in 1..=4u64 {
                cases += 1;
                let inst = reduce_biconnectivity_augmentation(t, &c, w0, 2).map_err(|e| e.to_string())?;
                let r = w0.max(2) as usize;
                if inst.g.n() != t.n() + t.m() + 2 * r * t.n() {
                    return Err(format!("tree {:?}: {} vertices", t.edges(), inst.g.n()));
                }
                let truth = tree_links_brute(t, &c, w0);
                let found = matching_budget_search(&inst.g, &inst.h, &inst.w, 2, w0, DEFAULT_CAP).map_err(|e| e.to_string())?;
                if truth.is_some() != found.is_some() {
                    return Err(format!("tree {:?} costs {mask:b} budget {w0}: direct {:?}, encoded {:?}", t.edges(), truth.is_some(), found.is_some()));
                }
                if let Some(a) = &truth {
                    let phi = witness_from_links(t, a, w0, 2).map_err(|e| e.to_string())?;
                    let cost: u64 = a.iter().map(|&(u, v)| c.get(u, v)).sum();
                    if inst.w.mapping_weight(&inst.h, &phi) != Ok(cost) || !certify(&inst.g, &inst.h, &phi, 2) {
                        return Err(format!("tree {:?}: link witness fails", t.edges()));
                    }
                }
                if w0 == 1 {
                    let s = solve(&inst.g, &inst.h, &inst.w, 2, &SolverConfig::default()).map_err(|e| e.to_string())?;
                    if s.is_some_and(|s| s.weight <= w0) != truth.is_some() {
                        return Err(format!("tree {:?}: weighted solver disagrees at budget 1", t.edges()));
                    }
                }
            }
        }
    }
    Ok(format!("K4 sizes 16/7/3; 4 path witnesses; 2 subgraph cases; {cases} tree cases, 0 mismatches"))
}

pub fn random_tree(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Graph::new(n, (1..n).map(|v| (rng.gen_range(0..v), v))).unwrap()
}

/// Centre 0 with `legs` paths of `len` vertices each.
pub fn spider(legs: usize, len: usize) -> Graph {
    let mut edges = Vec::new();
    for l in 0..legs {
        let base = 1 + l * len;
        edges.push((0, base));
        for i in 1..len {
            edges.push((base + i - 1, base + i));
        }
    }
    Graph::new(1 + legs * len, edges).unwrap()
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

/// Large unweighted and mid-sized weighted runs. Times are checked only when
/// `enforce` is set.
pub fn scaling(enforce: bool) -> Check {
    let mut report = Vec::new();
    let limit = |d: Duration, max: Duration, what: &str| -> Result<(), String> {
        if enforce && d > max {
            Err(format!("{what} took {d:?}, limit {max:?}"))
        } else {
            Ok(())
        }
    };
    let tree = random_tree(100_000, 5);
    let star = Graph::star(999);
    let ((ok1, phi1), d) = timed(|| (feasible_connect(&tree, &star), construct_connect(&tree, &star)));
    if !ok1 || !phi1.as_ref().is_some_and(|p| certify(&tree, &star, p, 1)) {
        return Err("random tree, k=1: no certificate".into());
    }
    limit(d, Duration::from_secs(1), "random tree k=1")?;
    report.push(format!("tree k=1 {d:.2?}"));

    let ((ok2, phi2), d) = timed(|| (feasible_2connect(&tree, &star).unwrap(), construct_2connect(&tree, &star).unwrap()));
    if ok2 != phi2.is_some() || phi2.as_ref().is_some_and(|p| !certify(&tree, &star, p, 2)) {
        return Err("random tree, k=2: construction disagrees with feasibility".into());
    }
    limit(d, Duration::from_secs(1), "random tree k=2")?;
    report.push(format!("tree k=2 {d:.2?} ({})", if ok2 { "feasible" } else { "infeasible" }));

    let sp = spider(500, 199);
    let ((ok, phi), d) = timed(|| (feasible_2connect(&sp, &star).unwrap(), construct_2connect(&sp, &star).unwrap()));
    if !ok || !phi.as_ref().is_some_and(|p| certify(&sp, &star, p, 2)) {
        return Err("spider, k=2: no certificate".into());
    }
    limit(d, Duration::from_secs(1), "spider k=2")?;
    report.push(format!("spider k=2 {d:.2?}"));

    let mut rng = ChaCha8Rng::seed_from_u64(60);
    let h = Graph::star(30);
    let mut w = WeightFn::uniform(5);
    for u in 0..60 {
        for v in u + 1..60 {
            w.set(u, v, rng.gen_range(0..10));
        }
    }
    let g1 = Graph::new(60, (0..40).map(|_| {
        let u = rng.gen_range(0..60);
        let v = (u + rng.gen_range(1..60)) % 60;
        (u.min(v), u.max(v))
    }).collect::<BTreeSet<_>>()).unwrap();
    let g2 = random_tree(60, 61).with_edges((0..10).map(|i| (i, 59 - i))).unwrap();
    for (k, g) in [(1, &g1), (2, &g2)] {
        let (s, d) = timed(|| solve(g, &h, &w, k, &SolverConfig::default()));
        let s = s.map_err(|e| e.to_string())?;
        if let Some(s) = &s {
            if !certify(g, &h, &s.phi, k) || w.mapping_weight(&h, &s.phi) != Ok(s.weight) {
                return Err(format!("weighted k={k}: invalid certificate"));
            }
        }
        limit(d, Duration::from_secs(10), &format!("weighted k={k}"))?;
        report.push(format!("weighted k={k} {d:.2?} ({})", s.map_or("infeasible".into(), |s| format!("weight {}", s.weight))));
    }
    Ok(report.join("; "))
}

/// Solver and oracle output do not depend on the worker count.
pub fn determinism(count: u64) -> Check {
    let one = SolverConfig { tmax: None, parallel: 1 };
    let four = SolverConfig { tmax: None, parallel: 4 };
    for k in [1, 2] {
        for seed in 0..count {
            let inst = small_instance(seed + 5000, k);
            let a = render(&solve(&inst.g, &inst.h, &inst.w, k, &one).map_err(|e| e.to_string())?);
            let b = render(&solve(&inst.g, &inst.h, &inst.w, k, &four).map_err(|e| e.to_string())?);
            if a != b {
                return Err(format!("k={k} seed {seed}: solver output differs between 1 and 4 workers"));
            }
            let o1 = brute_force_optimum_with(&inst.g, &inst.h, &inst.w, k, &OracleConfig { cap: DEFAULT_CAP, parallel: 1 }).unwrap();
            let o4 = brute_force_optimum_with(&inst.g, &inst.h, &inst.w, k, &OracleConfig { cap: DEFAULT_CAP, parallel: 4 }).unwrap();
            if render(&o1.solution) != render(&o4.solution) {
                return Err(format!("k={k} seed {seed}: oracle output differs between 1 and 4 workers"));
            }
        }
    }
    Ok(format!("{} solver and oracle runs byte-identical", 2 * count))
}
