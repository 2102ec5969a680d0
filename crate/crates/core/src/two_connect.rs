//! Exact minimum-weight placement making `G ⊕_φ H` 2-edge-connected, for
//! connected `G` and `H` with a small vertex cover.
//!
//! Each branch fixes the anchors inside one block `F0` of the partial
//! superposition `F′`. Every other pendant block `F_h` of `F′` must then
//! receive a vertex of `Z`, and if it receives exactly one, that vertex must
//! not be wired back only through the block's own bridge. Vertices of `Z`
//! with equal neighbourhoods are interchangeable, so a table indexed by how
//! many members of each twin class are used is built pendant by pendant.

use crate::anchors::{AnchorContext, Same};
use crate::assignment::{min_weight_saturating_matching, AuxBipartite, MatchingResult, Side};
use crate::blocks::{is_k_edge_connected, BlockDecomposition};
use crate::connect::placement_cost;
use crate::cover::false_twin_classes;
use crate::error::{Error, Result};
use crate::graph::{Graph, Mapping, WeightFn};
use crate::solver::{drive, with_isolated_stripped, Solution, SolverConfig};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pendant {
    /// Members, sorted.
    pub vertices: Vec<usize>,
    /// Endpoint of the attaching bridge inside the block.
    pub inner: usize,
    /// Endpoint of the attaching bridge outside the block.
    pub outer: usize,
}

/// Blocks of `F′ = G ⊕_ψ H[X ∪ Y]` as seen from the anchors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PendantSplit {
    /// The block holding every anchor image.
    pub f0: Vec<usize>,
    /// Pendant blocks other than `F0`, in order of smallest member.
    pub pendants: Vec<Pendant>,
    /// Non-anchor vertices outside every pendant: the rest of `F0` and all
    /// inner blocks.
    pub pool: Vec<usize>,
}

impl PendantSplit {
    pub fn new(g: &Graph, h: &Graph, ctx: &AnchorContext) -> Result<Self> {
        let anchors = ctx.anchors();
        let extra = h
            .edges()
            .iter()
            .filter_map(|&(a, b)| Some((ctx.psi.get(a)?, ctx.psi.get(b)?)));
        let f = g.with_edges(extra)?;
        let d = BlockDecomposition::new(&f)?;
        let b0 = anchors.first().map(|&a| d.block_of[ctx.psi.at(a)]);
        let mut pendants = Vec::new();
        let mut in_pendant = vec![false; g.n()];
        for b in d.pendant_blocks() {
            if Some(b) == b0 {
                continue;
            }
            let (inner, outer) = d.attach_bridge[b].expect("pendant block has a bridge");
            for &v in &d.blocks[b] {
                in_pendant[v] = true;
            }
            pendants.push(Pendant { vertices: d.blocks[b].clone(), inner, outer });
        }
        let mut taken = vec![false; g.n()];
        for (_, v) in ctx.psi.pairs() {
            taken[v] = true;
        }
        let pool = (0..g.n()).filter(|&v| !taken[v] && !in_pendant[v]).collect();
        let f0 = b0.map(|b| d.blocks[b].clone()).unwrap_or_default();
        Ok(PendantSplit { f0, pendants, pool })
    }
}

/// Twin classes of `Z` and their sizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwinPartition {
    pub classes: Vec<Vec<usize>>,
}

impl TwinPartition {
    pub fn new(h: &Graph, z: &[usize]) -> Result<Self> {
        Ok(TwinPartition { classes: false_twin_classes(h, z)? })
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

/// Values over the box `0 ≤ q_i ≤ p_i`; `None` is +∞. Tuples are indexed in
/// mixed radix with the first component most significant, so index order is
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpTable {
    dims: Vec<usize>,
    strides: Vec<usize>,
    values: Vec<Option<u128>>,
    back: Vec<usize>,
}

impl DpTable {
    pub fn new(dims: &[usize]) -> Self {
        let mut strides = vec![1; dims.len()];
        for i in (0..dims.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * (dims[i + 1] + 1);
        }
        let len = dims.iter().map(|&p| p + 1).product();
        DpTable { dims: dims.to_vec(), strides, values: vec![None; len], back: vec![0; len] }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn index(&self, q: &[usize]) -> usize {
        q.iter().zip(&self.strides).map(|(a, b)| a * b).sum()
    }

    pub fn tuple(&self, mut idx: usize) -> Vec<usize> {
        self.strides
            .iter()
            .map(|&s| {
                let d = idx / s;
                idx %= s;
                d
            })
            .collect()
    }

    pub fn get(&self, q: &[usize]) -> Option<u128> {
        self.values[self.index(q)]
    }

    pub fn at(&self, idx: usize) -> Option<u128> {
        self.values[idx]
    }

    pub fn set(&mut self, q: &[usize], value: Option<u128>) {
        let i = self.index(q);
        self.values[i] = value;
    }

    /// The `q″` chosen for `q` by [`dp_combine`].
    pub fn split_of(&self, q: &[usize]) -> Vec<usize> {
        self.tuple(self.back[self.index(q)])
    }
}

/// Calls `f` on every tuple `t ≤ bound` (componentwise) in lexicographic
/// order.
fn for_each_below(bound: &[usize], mut f: impl FnMut(&[usize])) {
    let mut t = vec![0; bound.len()];
    loop {
        f(&t);
        let mut i = bound.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if t[i] < bound[i] {
                t[i] += 1;
                break;
            }
            t[i] = 0;
        }
    }
}

/// `out(q) = min over q′ + q″ = q of prev(q′) + cur(q″)`; ties keep the
/// lexicographically smallest `q″`.
pub fn dp_combine(prev: &DpTable, cur_prime: &DpTable) -> DpTable {
    assert_eq!(prev.dims, cur_prime.dims, "tables over different boxes");
    let mut out = DpTable::new(&prev.dims);
    for idx in 0..out.len() {
        let q = out.tuple(idx);
        let mut best: Option<u128> = None;
        let mut arg = 0;
        for_each_below(&q, |q2| {
            let i2 = out.index(q2);
            if let (Some(a), Some(b)) = (prev.values[idx - i2], cur_prime.values[i2]) {
                let v = a + b;
                if best.is_none_or(|x| v < x) {
                    best = Some(v);
                    arg = i2;
                }
            }
        });
        out.values[idx] = best;
        out.back[idx] = arg;
    }
    out
}

/// Conditions under which a completion of the branch is 2-edge-connected:
/// every pendant gets a vertex of `Z`, and a pendant that gets exactly one
/// such vertex on its bridge endpoint must see an anchor neighbour placed
/// off the far endpoint.
pub fn feasibility_conditions(h: &Graph, ctx: &AnchorContext, split: &PendantSplit, phi: &Mapping) -> bool {
    split.pendants.iter().all(|p| {
        let inside: Vec<usize> = ctx.z.iter().copied().filter(|&z| phi.get(z).is_some_and(|v| p.vertices.binary_search(&v).is_ok())).collect();
        match inside.as_slice() {
            [] => false,
            [z] if phi.at(*z) == p.inner => h.neighbors(*z).iter().any(|&x| ctx.psi.get(x) != Some(p.outer)),
            _ => true,
        }
    })
}

/// One `(Y, ψ)` branch with its split, twin classes and per-class costs.
#[derive(Clone, Debug)]
pub struct Branch<'a> {
    h: &'a Graph,
    pub ctx: AnchorContext,
    pub split: PendantSplit,
    pub twins: TwinPartition,
    /// `cost[i][v]` is `w(z, v)` for any `z` in class `i`.
    cost: Vec<Vec<u64>>,
}

impl<'a> Branch<'a> {
    pub fn new(g: &Graph, h: &'a Graph, w: &WeightFn, ctx: AnchorContext) -> Result<Self> {
        let split = PendantSplit::new(g, h, &ctx)?;
        let twins = TwinPartition::new(h, &ctx.z)?;
        let cost = twins
            .classes
            .iter()
            .map(|class| (0..g.n()).map(|v| if ctx.psi.pairs().any(|(_, u)| u == v) { Ok(0) } else { placement_cost(h, w, &ctx.psi, class[0], v) }).collect())
            .collect::<Result<_>>()?;
        Ok(Branch { h, ctx, split, twins, cost })
    }

    pub fn pendant_count(&self) -> usize {
        self.split.pendants.len()
    }

    /// `w(z, v)` for a class.
    pub fn class_cost(&self, class: usize, v: usize) -> u64 {
        self.cost[class][v]
    }

    // Rows are representatives, class 0 first; columns are `cols`.
    fn matching(&self, q: &[usize], cols: &[usize]) -> Option<MatchingResult> {
        let rows: Vec<usize> = q.iter().enumerate().flat_map(|(i, &k)| std::iter::repeat_n(i, k)).collect();
        let mut aux = AuxBipartite::new(rows.len(), cols.len());
        for (r, &class) in rows.iter().enumerate() {
            for (c, &v) in cols.iter().enumerate() {
                aux.add_edge(r, c, self.cost[class][v]);
            }
        }
        min_weight_saturating_matching(&aux, Side::Left)
    }

    fn alpha0_matching(&self, q: &[usize]) -> Option<MatchingResult> {
        if q.iter().sum::<usize>() > self.split.pool.len() {
            return None;
        }
        self.matching(q, &self.split.pool)
    }

    // Columns usable for pendant `h` (1-based) under tuple `q`, or None when
    // the tuple is infeasible outright.
    fn pendant_columns(&self, h: usize, q: &[usize]) -> Option<Vec<usize>> {
        let p = &self.split.pendants[h - 1];
        let total: usize = q.iter().sum();
        if total == 0 || total > p.vertices.len() {
            return None;
        }
        if total == 1 {
            let class = q.iter().position(|&k| k == 1).expect("one class is used");
            let nbrs = self.h.neighbors(self.twins.classes[class][0]);
            if let [x] = nbrs {
                if self.ctx.psi.get(*x) == Some(p.outer) {
                    let cols: Vec<usize> = p.vertices.iter().copied().filter(|&v| v != p.inner).collect();
                    return (!cols.is_empty()).then_some(cols);
                }
            }
        }
        Some(p.vertices.clone())
    }

    fn alpha_prime_matching(&self, h: usize, q: &[usize]) -> Option<MatchingResult> {
        let cols = self.pendant_columns(h, q)?;
        self.matching(q, &cols)
    }

    /// Cheapest placement of `q_i` members of each class into the pool.
    pub fn alpha0(&self, q: &[usize]) -> Option<u128> {
        self.alpha0_matching(q).map(|m| m.weight)
    }

    /// Cheapest placement of `q_i` members of each class into pendant `h`
    /// (1-based) that hits it and respects the bridge condition.
    pub fn alpha_prime(&self, h: usize, q: &[usize]) -> Option<u128> {
        self.alpha_prime_matching(h, q).map(|m| m.weight)
    }

    pub fn alpha0_table(&self) -> DpTable {
        let mut t = DpTable::new(&self.twins.sizes());
        for idx in 0..t.len() {
            let q = t.tuple(idx);
            t.values[idx] = self.alpha0(&q);
        }
        t
    }

    pub fn alpha_prime_table(&self, h: usize) -> DpTable {
        let mut t = DpTable::new(&self.twins.sizes());
        for idx in 0..t.len() {
            let q = t.tuple(idx);
            t.values[idx] = self.alpha_prime(h, &q);
        }
        t
    }

    /// `α_0, …, α_r`.
    pub fn tables(&self) -> Vec<DpTable> {
        let mut out = vec![self.alpha0_table()];
        for h in 1..=self.pendant_count() {
            let next = dp_combine(out.last().unwrap(), &self.alpha_prime_table(h));
            out.push(next);
        }
        out
    }

    /// Materialises the placement of `Z` behind `α_r(p_1, …, p_s)`.
    pub fn reconstruct(&self, tables: &[DpTable]) -> Result<Mapping> {
        let r = self.pendant_count();
        let mut q = self.twins.sizes();
        if tables[r].get(&q).is_none() {
            return Err(Error::InfiniteValue);
        }
        let mut phi = self.ctx.psi.clone();
        let mut next = vec![0usize; q.len()];
        let mut place = |m: &MatchingResult, q: &[usize], cols: &[usize], phi: &mut Mapping| {
            let rows: Vec<usize> = q.iter().enumerate().flat_map(|(i, &k)| std::iter::repeat_n(i, k)).collect();
            for &(row, col) in &m.pairs {
                let class = rows[row];
                phi.set(self.twins.classes[class][next[class]], cols[col]);
                next[class] += 1;
            }
        };
        for h in (1..=r).rev() {
            let q2 = tables[h].split_of(&q);
            let cols = self.pendant_columns(h, &q2).ok_or(Error::InfiniteValue)?;
            let m = self.matching(&q2, &cols).ok_or(Error::InfiniteValue)?;
            place(&m, &q2, &cols, &mut phi);
            for (a, b) in q.iter_mut().zip(&q2) {
                *a -= b;
            }
        }
        let m = self.alpha0_matching(&q).ok_or(Error::InfiniteValue)?;
        place(&m, &q, &self.split.pool, &mut phi);
        Ok(phi)
    }

    /// Best completion of the branch, skipped when it cannot beat `bound`.
    pub fn solve(&self, bound: u64) -> Result<Option<Solution>> {
        if self.pendant_count() > self.ctx.z.len() {
            return Ok(None);
        }
        let tables = self.tables();
        let Some(value) = tables[self.pendant_count()].get(&self.twins.sizes()) else {
            return Ok(None);
        };
        let weight = u64::try_from(value)
            .ok()
            .and_then(|v| v.checked_add(self.ctx.anchor_weight))
            .ok_or(Error::Overflow)?;
        if weight > bound {
            return Ok(None);
        }
        let phi = self.reconstruct(&tables)?;
        Ok(Some(Solution { phi, weight }))
    }
}

/// Minimum-weight `φ` with `G ⊕_φ H` 2-edge-connected, or `None`.
pub fn solve_2connect(g: &Graph, h: &Graph, w: &WeightFn) -> Result<Option<Solution>> {
    solve_2connect_with(g, h, w, &SolverConfig::default())
}

pub fn solve_2connect_with(g: &Graph, h: &Graph, w: &WeightFn, cfg: &SolverConfig) -> Result<Option<Solution>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    with_isolated_stripped(g, h, w, |core| {
        if core.m() == 0 {
            return Ok(is_k_edge_connected(g, 2).then(|| Mapping::from_images((0..core.n()).collect())));
        }
        let best = drive(g, core, w, cfg, Same::Block, |ctx, bound| {
            if ctx.anchor_weight > bound {
                return Ok(None);
            }
            Branch::new(g, core, w, ctx.clone())?.solve(bound)
        })?;
        Ok(best.map(|s| s.phi))
    })
}

/// Decision form: is there a 2-edge-connecting placement of weight at most
/// `budget`?
pub fn decide_2connect(g: &Graph, h: &Graph, w: &WeightFn, budget: u64, cfg: &SolverConfig) -> Result<bool> {
    Ok(solve_2connect_with(g, h, w, cfg)?.is_some_and(|s| s.weight <= budget))
}
