//! Exact minimum-weight placement making `G ⊕_φ H` connected, for `H` with a
//! small vertex cover.
//!
//! Every branch fixes the anchors `X ∪ Y` so that their images share one
//! component `F0` of the partial superposition. The remaining vertices `Z`
//! are independent, so extending the branch is a matching problem: every
//! other component must receive at least one vertex of `Z`.

use crate::anchors::{AnchorContext, Same};
use crate::assignment::{min_weight_saturating_matching, AuxBipartite, Side};
use crate::blocks::is_k_edge_connected;
use crate::error::{Error, Result};
use crate::graph::{Graph, Mapping, UnionFind, WeightFn};
use crate::solver::{drive, with_isolated_stripped, Solution, SolverConfig};

/// Components of `F′ = G ⊕_ψ H[X ∪ Y]`: the one holding the anchors and the
/// rest, each sorted, the rest ordered by smallest member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentSplit {
    pub f0: Vec<usize>,
    pub others: Vec<Vec<usize>>,
}

impl ComponentSplit {
    pub fn new(g: &Graph, h: &Graph, ctx: &AnchorContext) -> Self {
        let anchors = ctx.anchors();
        let (label, comps) = g.components();
        let mut uf = UnionFind::new(comps);
        for &(a, b) in h.edges() {
            if let (Some(u), Some(v)) = (ctx.psi.get(a), ctx.psi.get(b)) {
                uf.union(label[u], label[v]);
            }
        }
        let root = anchors.first().map(|&a| uf.find(label[ctx.psi.at(a)]));
        let mut f0 = Vec::new();
        let mut others: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; comps];
        for (v, &l) in label.iter().enumerate() {
            let r = uf.find(l);
            if Some(r) == root {
                f0.push(v);
            } else {
                if slot[r] == usize::MAX {
                    slot[r] = others.len();
                    others.push(Vec::new());
                }
                others[slot[r]].push(v);
            }
        }
        ComponentSplit { f0, others }
    }
}

/// `w(z, v)`: the weight added by placing `z` on `v`, i.e. the sum of
/// `ω(ψ(x) v)` over the neighbours `x` of `z`.
pub fn placement_cost(h: &Graph, w: &WeightFn, psi: &Mapping, z: usize, v: usize) -> Result<u64> {
    h.neighbors(z)
        .iter()
        .try_fold(0u64, |acc, &x| acc.checked_add(w.get(psi.at(x), v)).ok_or(Error::Overflow))
}

/// Best extension of one branch, or `None` when it cannot be completed.
pub fn extend_by_matching(g: &Graph, h: &Graph, ctx: &AnchorContext, w: &WeightFn) -> Result<Option<Solution>> {
    let split = ComponentSplit::new(g, h, ctx);
    let z = &ctx.z;
    if split.others.len() > z.len() {
        return Ok(None);
    }
    let mut taken = vec![false; g.n()];
    for (_, v) in ctx.psi.pairs() {
        taken[v] = true;
    }
    let rows: Vec<usize> = (0..g.n()).filter(|&v| !taken[v]).collect();
    let mut row_of = vec![usize::MAX; g.n()];
    for (i, &v) in rows.iter().enumerate() {
        row_of[v] = i;
    }
    let mut cost = vec![vec![0u64; rows.len()]; z.len()];
    for (c, &zv) in z.iter().enumerate() {
        for (i, &v) in rows.iter().enumerate() {
            cost[c][i] = placement_cost(h, w, &ctx.psi, zv, v)?;
        }
    }
    let big = cost.iter().flatten().max().map_or(Some(1), |&m| m.checked_add(1)).ok_or(Error::Overflow)?;

    let f0_free: Vec<usize> = split.f0.iter().copied().filter(|&v| !taken[v]).collect();
    let slots = f0_free.len() + split.others.iter().map(|f| f.len() - 1).sum::<usize>();
    let mut aux = AuxBipartite::new(rows.len(), z.len() + slots);
    for (c, row) in cost.iter().enumerate() {
        for (i, &k) in row.iter().enumerate() {
            aux.add_edge(i, c, k);
        }
    }
    let mut col = z.len();
    for (set, count) in std::iter::once((&f0_free, f0_free.len()))
        .chain(split.others.iter().map(|f| (f, f.len() - 1)))
    {
        for _ in 0..count {
            for &v in set {
                aux.add_edge(row_of[v], col, big);
            }
            col += 1;
        }
    }
    let Some(m) = min_weight_saturating_matching(&aux, Side::Left) else {
        return Ok(None);
    };

    let mut phi = ctx.psi.clone();
    let mut extra: u64 = 0;
    for &(i, c) in &m.pairs {
        if c < z.len() {
            phi.set(z[c], rows[i]);
            extra = extra.checked_add(cost[c][i]).ok_or(Error::Overflow)?;
        }
    }
    assert!(phi.is_total(), "optimal auxiliary matching left a vertex of Z unplaced");
    let weight = ctx.anchor_weight.checked_add(extra).ok_or(Error::Overflow)?;
    Ok(Some(Solution { phi, weight }))
}

/// Checks, for a completed branch, that every vertex of `Z` is placed and
/// that every component other than `F0` receives some vertex of `Z`.
pub fn saturation_claims(g: &Graph, h: &Graph, ctx: &AnchorContext, phi: &Mapping) -> (bool, bool) {
    let split = ComponentSplit::new(g, h, ctx);
    let z_saturated = ctx.z.iter().all(|&z| phi.get(z).is_some());
    let mut hit = vec![false; g.n()];
    for &z in &ctx.z {
        if let Some(v) = phi.get(z) {
            hit[v] = true;
        }
    }
    let all_hit = split.others.iter().all(|f| f.iter().any(|&v| hit[v]));
    (z_saturated, all_hit)
}

/// Minimum-weight `φ` with `G ⊕_φ H` connected, or `None`.
pub fn solve_connect(g: &Graph, h: &Graph, w: &WeightFn) -> Result<Option<Solution>> {
    solve_connect_with(g, h, w, &SolverConfig::default())
}

pub fn solve_connect_with(g: &Graph, h: &Graph, w: &WeightFn, cfg: &SolverConfig) -> Result<Option<Solution>> {
    with_isolated_stripped(g, h, w, |core| {
        if core.m() == 0 {
            return Ok(is_k_edge_connected(g, 1).then(|| Mapping::from_images((0..core.n()).collect())));
        }
        let best = drive(g, core, w, cfg, Same::Component, |ctx, _| extend_by_matching(g, core, ctx, w))?;
        Ok(best.map(|s| s.phi))
    })
}

/// Decision form: is there a connecting placement of weight at most `budget`?
pub fn decide_connect(g: &Graph, h: &Graph, w: &WeightFn, budget: u64, cfg: &SolverConfig) -> Result<bool> {
    Ok(solve_connect_with(g, h, w, cfg)?.is_some_and(|s| s.weight <= budget))
}
