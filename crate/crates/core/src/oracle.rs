//! Brute-force ground truth over all injections, plus a global minimum cut.

use rayon::prelude::*;

use crate::blocks::is_k_edge_connected;
use crate::error::{Error, Result};
use crate::graph::{Graph, Mapping, UnionFind, WeightFn};
use crate::solver::Solution;

pub const DEFAULT_CAP: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Maximum number of injections the oracle agrees to enumerate.
    pub cap: u64,
    pub parallel: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { cap: DEFAULT_CAP, parallel: 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleOutcome {
    pub solution: Option<Solution>,
    /// Complete injections examined.
    pub visited: u128,
}

/// `n (n−1) ⋯ (n−h+1)`, saturating.
pub fn injection_count(n: usize, h: usize) -> u128 {
    if h > n {
        return 0;
    }
    (0..h).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128))
}

fn check_k(k: usize) -> Result<()> {
    if k == 1 || k == 2 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("k must be 1 or 2, got {k}")))
    }
}

// Best (weight, images) found so far.
type Best = Option<(u64, Vec<usize>)>;

struct Search<'a> {
    g: &'a Graph,
    h: &'a Graph,
    w: &'a WeightFn,
    k: usize,
    labels: Vec<usize>,
    comps: usize,
    stop_at_first: bool,
}

impl Search<'_> {
    fn connected(&self, images: &[usize]) -> bool {
        if self.k == 1 {
            let mut uf = UnionFind::new(self.comps);
            let mut joined = 1;
            for &(x, y) in self.h.edges() {
                if uf.union(self.labels[images[x]], self.labels[images[y]]) {
                    joined += 1;
                }
            }
            joined >= self.comps
        } else {
            let f = self
                .g
                .with_edges(self.h.edges().iter().map(|&(x, y)| (images[x], images[y])))
                .expect("images in range");
            is_k_edge_connected(&f, 2)
        }
    }

    // Lexicographic DFS; the first image is fixed to `first` when given.
    fn run(&self, first: Option<usize>) -> Result<(Best, u128)> {
        let hn = self.h.n();
        let mut images = vec![usize::MAX; hn];
        let mut partial = vec![0u64; hn + 1];
        let mut used = vec![false; self.g.n()];
        let mut best: Best = None;
        let mut visited = 0u128;
        self.rec(0, first, &mut images, &mut partial, &mut used, &mut best, &mut visited)?;
        Ok((best, visited))
    }

    #[allow(clippy::too_many_arguments)]
    fn rec(
        &self,
        i: usize,
        first: Option<usize>,
        images: &mut Vec<usize>,
        partial: &mut Vec<u64>,
        used: &mut Vec<bool>,
        best: &mut Best,
        visited: &mut u128,
    ) -> Result<bool> {
        if i == self.h.n() {
            *visited += 1;
            let wgt = partial[i];
            if best.as_ref().is_none_or(|(b, _)| wgt < *b) && self.connected(images) {
                *best = Some((wgt, images.clone()));
                return Ok(self.stop_at_first);
            }
            return Ok(false);
        }
        let range = match (i, first) {
            (0, Some(f)) => f..f + 1,
            _ => 0..self.g.n(),
        };
        for v in range {
            if used[v] {
                continue;
            }
            let mut add = 0u64;
            for &y in self.h.neighbors(i).iter().take_while(|&&y| y < i) {
                add = add.checked_add(self.w.get(v, images[y])).ok_or(Error::Overflow)?;
            }
            partial[i + 1] = partial[i].checked_add(add).ok_or(Error::Overflow)?;
            images[i] = v;
            used[v] = true;
            let stop = self.rec(i + 1, first, images, partial, used, best, visited)?;
            used[v] = false;
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn enumerate(g: &Graph, h: &Graph, w: &WeightFn, k: usize, cfg: &OracleConfig, stop_at_first: bool) -> Result<OracleOutcome> {
    check_k(k)?;
    if h.n() > g.n() {
        return Ok(OracleOutcome { solution: None, visited: 0 });
    }
    let count = injection_count(g.n(), h.n());
    if count > u128::from(cfg.cap) {
        return Err(Error::OracleCapExceeded { count, cap: cfg.cap });
    }
    let (labels, comps) = g.components();
    let search = Search { g, h, w, k, labels, comps, stop_at_first };
    let wrap = |best: Best| best.map(|(weight, im)| Solution { phi: Mapping::from_images(im), weight });
    if h.n() == 0 || cfg.parallel <= 1 || stop_at_first {
        let (best, visited) = search.run(None)?;
        return Ok(OracleOutcome { solution: wrap(best), visited });
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.parallel)
        .build()
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let parts: Vec<Result<(Best, u128)>> =
        pool.install(|| (0..g.n()).into_par_iter().map(|f| search.run(Some(f))).collect());
    let mut best: Best = None;
    let mut visited = 0;
    for part in parts {
        let (b, v) = part?;
        visited += v;
        if let Some(b) = b {
            if best.as_ref().is_none_or(|cur| b < *cur) {
                best = Some(b);
            }
        }
    }
    Ok(OracleOutcome { solution: wrap(best), visited })
}

/// Exact optimum with the lexicographically smallest optimal `φ`.
pub fn brute_force_optimum(g: &Graph, h: &Graph, w: &WeightFn, k: usize) -> Result<Option<Solution>> {
    Ok(brute_force_optimum_with(g, h, w, k, &OracleConfig::default())?.solution)
}

pub fn brute_force_optimum_with(g: &Graph, h: &Graph, w: &WeightFn, k: usize, cfg: &OracleConfig) -> Result<OracleOutcome> {
    enumerate(g, h, w, k, cfg, false)
}

/// Does any injection work? Stops at the first witness.
pub fn brute_force_feasible(g: &Graph, h: &Graph, k: usize) -> Result<bool> {
    brute_force_feasible_with(g, h, k, DEFAULT_CAP)
}

pub fn brute_force_feasible_with(g: &Graph, h: &Graph, k: usize, cap: u64) -> Result<bool> {
    let cfg = OracleConfig { cap, parallel: 1 };
    Ok(enumerate(g, h, &WeightFn::uniform(0), k, &cfg, true)?.solution.is_some())
}

/// Exact decision for a matching graph `H` under a budget: searches sets of
/// `|E(H)|` disjoint vertex pairs of `G`, each of weight at most `budget`,
/// whose total stays within it. Edge order and orientation do not matter for
/// a matching, so this covers every injection. Returns a witness.
pub fn matching_budget_search(g: &Graph, h: &Graph, w: &WeightFn, k: usize, budget: u64, cap: u64) -> Result<Option<Mapping>> {
    check_k(k)?;
    if (0..h.n()).any(|v| h.degree(v) != 1) {
        return Err(Error::InvalidParameter("H is not a matching graph".into()));
    }
    let need = h.m();
    let mut pairs = Vec::new();
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            let c = w.get(u, v);
            if c <= budget {
                pairs.push((u, v, c));
            }
        }
    }
    struct St<'a> {
        g: &'a Graph,
        k: usize,
        pairs: &'a [(usize, usize, u64)],
        need: usize,
        budget: u64,
        cap: u64,
        steps: u64,
        used: Vec<bool>,
        chosen: Vec<usize>,
    }
    fn rec(st: &mut St, from: usize, spent: u64) -> Result<bool> {
        if st.chosen.len() == st.need {
            st.steps += 1;
            if st.steps > st.cap {
                return Err(Error::OracleCapExceeded { count: u128::from(st.steps), cap: st.cap });
            }
            let f = st.g.with_edges(st.chosen.iter().map(|&i| (st.pairs[i].0, st.pairs[i].1)))?;
            return Ok(is_k_edge_connected(&f, st.k));
        }
        for i in from..st.pairs.len() {
            let (u, v, c) = st.pairs[i];
            if st.used[u] || st.used[v] || spent + c > st.budget {
                continue;
            }
            st.used[u] = true;
            st.used[v] = true;
            st.chosen.push(i);
            let found = rec(st, i + 1, spent + c)?;
            if found {
                return Ok(true);
            }
            st.chosen.pop();
            st.used[u] = false;
            st.used[v] = false;
        }
        Ok(false)
    }
    let mut st = St { g, k, pairs: &pairs, need, budget, cap, steps: 0, used: vec![false; g.n()], chosen: Vec::new() };
    if !rec(&mut st, 0, 0)? {
        return Ok(None);
    }
    let mut phi = Mapping::new(h.n());
    for (&(x, y), &i) in h.edges().iter().zip(&st.chosen) {
        phi.set(x, pairs[i].0);
        phi.set(y, pairs[i].1);
    }
    Ok(Some(phi))
}

/// Global minimum edge cut (Stoer–Wagner). Disconnected graphs give 0;
/// graphs with at most one vertex give `usize::MAX`.
pub fn edge_connectivity(g: &Graph) -> usize {
    let n = g.n();
    if n <= 1 {
        return usize::MAX;
    }
    if !g.is_connected() {
        return 0;
    }
    let mut wt = vec![vec![0usize; n]; n];
    for &(u, v) in g.edges() {
        wt[u][v] += 1;
        wt[v][u] += 1;
    }
    let mut alive: Vec<usize> = (0..n).collect();
    let mut best = usize::MAX;
    while alive.len() > 1 {
        let mut key = vec![0usize; n];
        let mut added = vec![false; n];
        let mut prev = alive[0];
        let mut last = alive[0];
        for step in 0..alive.len() {
            let next = *alive
                .iter()
                .filter(|&&v| !added[v])
                .max_by_key(|&&v| (key[v], std::cmp::Reverse(v)))
                .unwrap();
            added[next] = true;
            if step == alive.len() - 1 {
                best = best.min(key[next]);
            }
            prev = last;
            last = next;
            for &v in &alive {
                if !added[v] {
                    key[v] += wt[next][v];
                }
            }
        }
        // merge `last` into `prev`
        for &v in &alive {
            wt[prev][v] += wt[last][v];
            wt[v][prev] = wt[prev][v];
        }
        wt[prev][prev] = 0;
        alive.retain(|&v| v != last);
    }
    best
}
