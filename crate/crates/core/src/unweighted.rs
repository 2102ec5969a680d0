//! Feasibility tests and explicit placements for the unweighted problems.
//!
//! Both tests are closed-form in a handful of graph statistics; the
//! constructions run in linear time and are checked before they are
//! returned.

use std::collections::VecDeque;

use crate::blocks::{is_k_edge_connected, BlockDecomposition};
use crate::error::{Error, Result};
use crate::graph::{superpose, Graph, Mapping};
use crate::solver::{fill_smallest, lift};

/// One vertex per pendant block, pairwise nonadjacent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PendantRepresentatives {
    /// `reps[i]` lies in the `i`-th pendant block (by smallest member).
    pub reps: Vec<usize>,
}

fn isolated_count(g: &Graph) -> usize {
    (0..g.n()).filter(|&v| g.degree(v) == 0).count()
}

/// Can some placement make `G ⊕_φ H` connected?
pub fn feasible_connect(g: &Graph, h: &Graph) -> bool {
    if h.n() > g.n() {
        return false;
    }
    let (core, _) = h.without_isolated();
    feasible_connect_core(g, &core)
}

fn feasible_connect_core(g: &Graph, core: &Graph) -> bool {
    if core.n() == 0 {
        return g.is_connected();
    }
    let c_g = g.components().1;
    let c_h = core.components().1;
    let n_h = core.n();
    c_g + c_h <= n_h + 1 && (c_h == 1 || isolated_count(g) + c_h <= n_h)
}

/// A placement making `G ⊕_φ H` connected, or `None` when there is none.
pub fn construct_connect(g: &Graph, h: &Graph) -> Option<Mapping> {
    if !feasible_connect(g, h) {
        return None;
    }
    let (core, back) = h.without_isolated();
    let core_phi = connect_core(g, &core);
    let phi = lift(g, h, &back, &core_phi);
    let f = superpose(g, h, &phi).expect("constructed map is injective");
    assert!(is_k_edge_connected(&f, 1), "constructed superposition is not connected");
    Some(phi)
}

fn connect_core(g: &Graph, core: &Graph) -> Mapping {
    let mut phi = Mapping::new(core.n());
    let mut used = vec![false; g.n()];
    let mut put = |phi: &mut Mapping, x: usize, v: usize| {
        debug_assert!(!used[v]);
        used[v] = true;
        phi.set(x, v);
    };
    let g_comps = g.component_sets();
    let h_comps = core.component_sets();
    if h_comps.is_empty() {
        return phi;
    }
    if h_comps.len() == 1 {
        for (i, comp) in g_comps.iter().enumerate() {
            put(&mut phi, i, comp[0]);
        }
        fill_smallest(&mut phi, &mut used);
        return phi;
    }
    let isolated: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) == 0).collect();
    let big: Vec<&Vec<usize>> = g_comps.iter().filter(|c| c.len() >= 2).collect();
    let i_g = isolated.len();
    let slack = core.n() - h_comps.len();

    if i_g == slack {
        // One nontrivial component; one vertex of each H-component goes there.
        let target = big[0];
        let mut iso = isolated.iter();
        for (j, comp) in h_comps.iter().enumerate() {
            put(&mut phi, comp[0], target[j]);
            for &x in &comp[1..] {
                put(&mut phi, x, *iso.next().expect("enough isolated vertices"));
            }
        }
        return phi;
    }

    // Smallest h with sum_{j<=h} (|H_j| - 1) > i(G).
    let mut acc = 0;
    let h_idx = h_comps
        .iter()
        .position(|c| {
            acc += c.len() - 1;
            acc > i_g
        })
        .expect("i(G) < |V(H)| - c(H)");
    let mut iso = isolated.iter().copied();
    for comp in &h_comps[..h_idx] {
        for &x in &comp[1..] {
            put(&mut phi, x, iso.next().expect("enough isolated vertices"));
        }
    }
    // Fill the remaining isolated vertices from the top of H_h.
    let hh = &h_comps[h_idx];
    let rest_iso: Vec<usize> = iso.collect();
    let mut free_in = h_comps.clone();
    for (k, &v) in rest_iso.iter().enumerate() {
        let x = hh[hh.len() - 1 - k];
        put(&mut phi, x, v);
    }
    free_in[h_idx].truncate(hh.len() - rest_iso.len());
    debug_assert!(free_in[h_idx].len() >= 2);

    let s = big.len();
    let links = (s - 1).min(h_comps.len() - h_idx);
    // out-vertex of G_i toward G_{i+1}, in-vertex of G_i from G_{i-1}
    let out_v = |i: usize| if i == 0 { big[0][0] } else { big[i][1] };
    let in_v = |i: usize| big[i][0];
    for i in 0..links {
        let comp = &mut free_in[h_idx + i];
        let a = comp.remove(0);
        let b = comp.remove(0);
        put(&mut phi, a, out_v(i));
        put(&mut phi, b, in_v(i + 1));
    }
    // Components beyond the chain each get one leftover vertex of W.
    let mut leftovers = free_in[h_idx..].iter().flatten().copied();
    for comp in big.iter().skip(links + 1) {
        let y = leftovers.next().expect("enough vertices of W");
        put(&mut phi, y, comp[0]);
    }
    fill_smallest(&mut phi, &mut used);
    phi
}

/// `Some(n)` when `g` is the star `K_{1,n}` (including `K_2`).
pub fn star_leaves(g: &Graph) -> Option<usize> {
    let n = g.n();
    if n < 2 || g.m() != n - 1 {
        return None;
    }
    let centre = (0..n).find(|&v| g.degree(v) == n - 1)?;
    (0..n).all(|v| v == centre || g.degree(v) == 1).then_some(n - 1)
}

/// Every vertex has degree exactly one.
pub fn is_matching_graph(h: &Graph) -> bool {
    (0..h.n()).all(|v| h.degree(v) == 1)
}

/// Representatives of the pendant blocks: the only vertex of a trivial
/// block, otherwise the smallest vertex not on the attaching bridge.
pub fn pendant_representatives(g: &Graph) -> Result<PendantRepresentatives> {
    let d = BlockDecomposition::new(g)?;
    reps_from(g, &d)
}

fn reps_from(g: &Graph, d: &BlockDecomposition) -> Result<PendantRepresentatives> {
    if g.n() == 2 && g.m() == 1 {
        return Err(Error::InvalidParameter("G is K_2; its pendants are adjacent".into()));
    }
    if d.pendant_count() == 0 {
        return Err(Error::InvalidParameter("G has no pendant blocks".into()));
    }
    let reps = d
        .pendant_blocks()
        .into_iter()
        .map(|b| {
            let (inner, _) = d.attach_bridge[b].expect("pendant has a bridge");
            *d.blocks[b].iter().find(|&&v| v != inner || d.blocks[b].len() == 1).unwrap()
        })
        .collect();
    Ok(PendantRepresentatives { reps })
}

/// Can some placement make `G ⊕_φ H` 2-edge-connected? `G` must be
/// connected.
pub fn feasible_2connect(g: &Graph, h: &Graph) -> Result<bool> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if h.n() > g.n() {
        return Ok(false);
    }
    let (core, _) = h.without_isolated();
    Ok(feasible_2connect_core(g, &core))
}

fn feasible_2connect_core(g: &Graph, core: &Graph) -> bool {
    if is_k_edge_connected(g, 2) {
        return true;
    }
    let p = BlockDecomposition::new(g).expect("connected").pendant_count();
    let odd_star = star_leaves(g).is_some_and(|n| n % 2 == 1);
    p <= core.n() && !(odd_star && is_matching_graph(core))
}

/// Takes `m` leaves for one connected piece of `H` from the cyclic leaf
/// order. Unless it takes all of them, the second leaf is skipped so that
/// the merged block keeps bridges on two sides; that leaf goes back to the
/// front, preserving the cyclic order.
pub fn place_group(order: &mut VecDeque<usize>, m: usize) -> Vec<usize> {
    assert!(m >= 2 && m <= order.len() && order.len() - m != 1, "group size does not fit");
    if m == order.len() {
        return order.drain(..).collect();
    }
    let c0 = order.pop_front().unwrap();
    let c1 = order.pop_front().unwrap();
    let mut out = vec![c0];
    out.extend(order.drain(..m - 1));
    order.push_front(c1);
    out
}

/// First `k` vertices of `comp` in depth-first preorder from its smallest
/// vertex; they induce a connected subgraph.
fn dfs_prefix(h: &Graph, comp: &[usize], k: usize) -> Vec<usize> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::with_capacity(k);
    let mut stack = vec![comp[0]];
    while let Some(v) = stack.pop() {
        if out.len() == k {
            break;
        }
        if !seen.insert(v) {
            continue;
        }
        out.push(v);
        for &w in h.neighbors(v).iter().rev() {
            if !seen.contains(&w) {
                stack.push(w);
            }
        }
    }
    out
}

// Pieces of H with exactly `ell` vertices in total, each connected with at
// least two vertices; `H` has a component with three or more vertices.
fn select_groups(core: &Graph, ell: usize) -> Vec<Vec<usize>> {
    let mut comps = core.component_sets();
    comps.sort_by_key(|c| (c.len(), c[0]));
    let mut prefix = 0;
    let s = comps
        .iter()
        .position(|c| {
            prefix += c.len();
            prefix >= ell
        })
        .expect("p(G) <= |V(H)|");
    let q: usize = comps[..s].iter().map(Vec::len).sum();
    let p = q + comps[s].len();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    if p == ell {
        groups.extend(comps[..=s].iter().cloned());
    } else if ell - q >= 2 {
        groups.extend(comps[..s].iter().cloned());
        groups.push(dfs_prefix(core, &comps[s], ell - q));
    } else {
        // ell - q == 1, so s >= 1
        let t = comps[s - 1].len();
        groups.extend(comps[..s - 1].iter().cloned());
        if t == 2 {
            let big = comps[s..].iter().find(|c| c.len() >= 3).expect("a component with 3 vertices");
            groups.push(dfs_prefix(core, big, 3));
        } else {
            groups.push(dfs_prefix(core, &comps[s - 1], t - 1));
            groups.push(dfs_prefix(core, &comps[s], 2));
        }
    }
    debug_assert_eq!(groups.iter().map(Vec::len).sum::<usize>(), ell);
    groups
}

// For an odd number of pendants and a matching H: a representative `v` and a
// vertex `u` outside all pendants, not adjacent to `v`, lying in a block on
// the bridge-tree path between two other pendants.
fn odd_matching_pair(g: &Graph, d: &BlockDecomposition, reps: &[usize]) -> (usize, usize) {
    let mut order: Vec<usize> = (0..reps.len()).collect();
    order.sort_by_key(|&i| d.is_trivial(d.block_of[reps[i]]));
    for &li in &order {
        let v = reps[li];
        let near = g.neighbors(v).first().copied();
        let others: Vec<usize> = (0..reps.len()).filter(|&i| i != li).collect();
        let a = others
            .iter()
            .copied()
            .find(|&i| d.attach_bridge[d.block_of[reps[i]]].map(|b| b.1) != near)
            .unwrap_or(others[0]);
        let b = others.iter().copied().find(|&i| i != a).expect("at least three pendants");
        let path = d.tree_path(d.block_of[reps[a]], d.block_of[reps[b]]);
        let found = path[1..path.len() - 1]
            .iter()
            .flat_map(|&blk| d.blocks[blk].iter().copied())
            .find(|&u| !g.has_edge(v, u));
        if let Some(u) = found {
            return (v, u);
        }
    }
    panic!("no vertex to pair with a pendant; G is an odd star");
}

/// A placement making `G ⊕_φ H` 2-edge-connected, or `None` when there is
/// none. `G` must be connected.
pub fn construct_2connect(g: &Graph, h: &Graph) -> Result<Option<Mapping>> {
    if !feasible_2connect(g, h)? {
        return Ok(None);
    }
    let (core, back) = h.without_isolated();
    let core_phi = two_connect_core(g, &core);
    let phi = lift(g, h, &back, &core_phi);
    let f = superpose(g, h, &phi).expect("constructed map is injective");
    assert!(is_k_edge_connected(&f, 2), "constructed superposition is not 2-edge-connected");
    Ok(Some(phi))
}

fn two_connect_core(g: &Graph, core: &Graph) -> Mapping {
    let mut phi = Mapping::new(core.n());
    let mut used = vec![false; g.n()];
    if is_k_edge_connected(g, 2) {
        fill_smallest(&mut phi, &mut used);
        return phi;
    }
    let d = BlockDecomposition::new(g).expect("connected");
    let reps = reps_from(g, &d).expect("G is not K_2 here").reps;
    let ell = reps.len();

    let (d2, groups): (BlockDecomposition, Vec<Vec<usize>>) = if is_matching_graph(core) {
        let mut edges = core.component_sets();
        if ell % 2 == 1 {
            let first = edges.remove(0);
            let (v, u) = odd_matching_pair(g, &d, &reps);
            phi.set(first[0], v);
            phi.set(first[1], u);
            used[v] = true;
            used[u] = true;
            let g2 = g.with_edges([(v, u)]).expect("in range");
            let d2 = BlockDecomposition::new(&g2).expect("connected");
            assert_eq!(d2.pendant_count(), ell - 1, "pairing did not remove exactly one pendant");
            edges.truncate((ell - 1) / 2);
            (d2, edges)
        } else {
            edges.truncate(ell / 2);
            (d, edges)
        }
    } else {
        let groups = select_groups(core, ell);
        (d, groups)
    };

    let mut rep_of_block = vec![usize::MAX; d2.block_count()];
    for &r in &reps {
        if !used[r] {
            rep_of_block[d2.block_of[r]] = r;
        }
    }
    let mut order: VecDeque<usize> = d2.leaf_cycle().into_iter().map(|b| rep_of_block[b]).collect();
    debug_assert!(order.iter().all(|&r| r != usize::MAX));
    for group in &groups {
        let images = place_group(&mut order, group.len());
        for (&x, &v) in group.iter().zip(&images) {
            phi.set(x, v);
            used[v] = true;
        }
    }
    debug_assert!(order.is_empty());
    fill_smallest(&mut phi, &mut used);
    phi
}
