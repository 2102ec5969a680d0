//! Shared plumbing for the weighted solvers: configuration, solutions and
//! the branch driver over `(Y, ψ)`.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::anchors::{enumerate_anchor_sets, for_each_anchor_embedding, AnchorContext, Same};
use crate::cover::minimum_vertex_cover;
use crate::error::{Error, Result};
use crate::graph::{Graph, Mapping, WeightFn};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    /// Upper bound on the vertex cover of `H`; `None` means unbounded.
    pub tmax: Option<usize>,
    /// Worker threads for branch enumeration.
    pub parallel: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { tmax: None, parallel: 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub phi: Mapping,
    pub weight: u64,
}

impl Solution {
    fn key(&self) -> (u64, Vec<usize>) {
        (self.weight, self.phi.images())
    }

    /// True when `self` precedes `other` in the (weight, φ) order.
    pub fn better_than(&self, other: &Solution) -> bool {
        self.key() < other.key()
    }
}

fn keep_best(best: &mut Option<Solution>, cand: Solution) {
    if best.as_ref().is_none_or(|b| cand.better_than(b)) {
        *best = Some(cand);
    }
}

/// Runs `eval` on every anchor branch of `h` (isolate-free) and returns the
/// best solution in the (weight, φ) order. `eval` receives the branch and
/// the best weight seen so far (for pruning) and returns a candidate.
pub(crate) fn drive<F>(g: &Graph, h: &Graph, w: &WeightFn, cfg: &SolverConfig, same: Same, eval: F) -> Result<Option<Solution>>
where
    F: Fn(&AnchorContext, u64) -> Result<Option<Solution>> + Sync,
{
    let x = minimum_vertex_cover(h, cfg.tmax).ok_or(Error::CoverTooLarge(cfg.tmax.unwrap_or(h.n())))?;
    let ys = enumerate_anchor_sets(h, &x);
    let items: Vec<(usize, usize)> = ys
        .iter()
        .enumerate()
        .filter(|(_, y)| x.len() + y.len() <= g.n())
        .flat_map(|(i, _)| (0..g.n()).map(move |f| (i, f)))
        .collect();
    let best_weight = AtomicU64::new(u64::MAX);

    let run = |&(yi, first): &(usize, usize)| -> Result<Option<Solution>> {
        let y = &ys[yi];
        let mut anchors: Vec<usize> = x.iter().chain(y).copied().collect();
        anchors.sort_unstable();
        let mut local: Option<Solution> = None;
        let mut err = None;
        for_each_anchor_embedding(g, h, &anchors, same, Some(first), |psi| {
            if err.is_some() {
                return;
            }
            let Some(ctx) = AnchorContext::new(h, w, x.clone(), y.clone(), psi.clone()) else {
                err = Some(Error::Overflow);
                return;
            };
            if ctx.anchor_weight > best_weight.load(Ordering::Relaxed) {
                return;
            }
            match eval(&ctx, best_weight.load(Ordering::Relaxed)) {
                Ok(Some(sol)) => {
                    best_weight.fetch_min(sol.weight, Ordering::Relaxed);
                    keep_best(&mut local, sol);
                }
                Ok(None) => {}
                Err(e) => err = Some(e),
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(local),
        }
    };

    let results: Vec<Result<Option<Solution>>> = if cfg.parallel <= 1 {
        items.iter().map(run).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.parallel)
            .build()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?;
        pool.install(|| items.par_iter().map(run).collect())
    };
    let mut best = None;
    for r in results {
        if let Some(sol) = r? {
            keep_best(&mut best, sol);
        }
    }
    Ok(best)
}

/// Strips isolated vertices of `h`, solves on the rest with `core_solve`,
/// and maps the isolated vertices to the smallest unused vertices of `g`.
pub(crate) fn with_isolated_stripped(
    g: &Graph,
    h: &Graph,
    w: &WeightFn,
    core_solve: impl FnOnce(&Graph) -> Result<Option<Mapping>>,
) -> Result<Option<Solution>> {
    if h.n() > g.n() {
        return Ok(None);
    }
    let (core, back) = h.without_isolated();
    let Some(core_phi) = core_solve(&core)? else {
        return Ok(None);
    };
    let phi = lift(g, h, &back, &core_phi);
    let weight = w.mapping_weight(h, &phi)?;
    Ok(Some(Solution { phi, weight }))
}

/// Extends a map on the core (vertex `i` is `back[i]` in `h`) to all of `h`
/// using the smallest unused images.
pub(crate) fn lift(g: &Graph, h: &Graph, back: &[usize], core_phi: &Mapping) -> Mapping {
    let mut phi = Mapping::new(h.n());
    let mut used = vec![false; g.n()];
    for (i, &orig) in back.iter().enumerate() {
        let v = core_phi.at(i);
        phi.set(orig, v);
        used[v] = true;
    }
    fill_smallest(&mut phi, &mut used);
    phi
}

/// Assigns every unmapped vertex, in order, the smallest unused image.
pub(crate) fn fill_smallest(phi: &mut Mapping, used: &mut [bool]) {
    let mut next = 0;
    for x in 0..phi.h_len() {
        if phi.get(x).is_none() {
            while used[next] {
                next += 1;
            }
            used[next] = true;
            phi.set(x, next);
        }
    }
}
