//! Enumeration of anchor sets `Y` and anchor placements `ψ`.

use crate::blocks::two_edge_components;
use crate::graph::{Graph, Mapping, UnionFind, WeightFn};

/// Where the anchor images must end up in the partial superposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Same {
    Component,
    Block,
}

/// One branch of the weighted solvers: cover, extension set, the rest, and
/// a placement of the anchors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnchorContext {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub z: Vec<usize>,
    pub psi: Mapping,
    pub anchor_weight: u64,
}

impl AnchorContext {
    /// Builds the context and computes `R`; `None` on overflow.
    pub fn new(h: &Graph, w: &WeightFn, x: Vec<usize>, y: Vec<usize>, psi: Mapping) -> Option<Self> {
        let mut in_anchor = vec![false; h.n()];
        for &a in x.iter().chain(&y) {
            in_anchor[a] = true;
        }
        let z = (0..h.n()).filter(|&v| !in_anchor[v]).collect();
        let anchor_weight = anchor_weight(h, w, &psi, &in_anchor)?;
        Some(AnchorContext { x, y, z, psi, anchor_weight })
    }

    /// `X ∪ Y` in increasing order.
    pub fn anchors(&self) -> Vec<usize> {
        let mut a: Vec<usize> = self.x.iter().chain(&self.y).copied().collect();
        a.sort_unstable();
        a
    }
}

fn anchor_weight(h: &Graph, w: &WeightFn, psi: &Mapping, in_anchor: &[bool]) -> Option<u64> {
    h.edges()
        .iter()
        .filter(|&&(a, b)| in_anchor[a] && in_anchor[b])
        .try_fold(0u64, |acc, &(a, b)| acc.checked_add(w.get(psi.at(a), psi.at(b))))
}

/// Every `Y ⊆ V(H) \ X` with `|Y| ≤ 2(|X| − 1)`, by size then
/// lexicographically.
pub fn enumerate_anchor_sets(h: &Graph, x: &[usize]) -> Vec<Vec<usize>> {
    let rest: Vec<usize> = (0..h.n()).filter(|v| !x.contains(v)).collect();
    let bound = (2 * x.len()).saturating_sub(2).min(rest.len());
    let mut out = Vec::new();
    for size in 0..=bound {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            out.push(idx.iter().map(|&i| rest[i]).collect());
            // next combination
            let mut k = size;
            while k > 0 && idx[k - 1] == rest.len() - size + k - 1 {
                k -= 1;
            }
            if k == 0 {
                break;
            }
            idx[k - 1] += 1;
            for t in k..size {
                idx[t] = idx[t - 1] + 1;
            }
        }
    }
    out
}

/// Visits, in lexicographic order of the image tuple, every injective
/// placement of `anchors` (sorted) whose images share one component or one
/// block of `G ⊕_ψ H[anchors]`. With `first` set, only placements sending
/// `anchors[0]` there are visited.
pub fn for_each_anchor_embedding(
    g: &Graph,
    h: &Graph,
    anchors: &[usize],
    same: Same,
    first: Option<usize>,
    mut visit: impl FnMut(&Mapping),
) {
    if anchors.len() > g.n() {
        return;
    }
    let inner: Vec<(usize, usize)> = h
        .edges()
        .iter()
        .filter(|(a, b)| anchors.contains(a) && anchors.contains(b))
        .copied()
        .collect();
    let (label, comps) = g.components();
    let mut psi = Mapping::new(h.n());
    let mut used = vec![false; g.n()];
    let mut check = |psi: &Mapping| -> bool {
        match same {
            Same::Component => {
                let mut uf = UnionFind::new(comps);
                for &(a, b) in &inner {
                    uf.union(label[psi.at(a)], label[psi.at(b)]);
                }
                let root = uf.find(label[psi.at(anchors[0])]);
                anchors.iter().all(|&a| uf.find(label[psi.at(a)]) == root)
            }
            Same::Block => {
                let f = g
                    .with_edges(inner.iter().map(|&(a, b)| (psi.at(a), psi.at(b))))
                    .expect("anchor images are in range");
                let (blk, _, _) = two_edge_components(&f);
                let b0 = blk[psi.at(anchors[0])];
                anchors.iter().all(|&a| blk[psi.at(a)] == b0)
            }
        }
    };
    fn rec(
        i: usize,
        anchors: &[usize],
        first: Option<usize>,
        psi: &mut Mapping,
        used: &mut [bool],
        check: &mut dyn FnMut(&Mapping) -> bool,
        visit: &mut dyn FnMut(&Mapping),
    ) {
        if i == anchors.len() {
            if check(psi) {
                visit(psi);
            }
            return;
        }
        let range = match (i, first) {
            (0, Some(f)) => f..f + 1,
            _ => 0..used.len(),
        };
        for v in range {
            if !used[v] {
                used[v] = true;
                psi.set(anchors[i], v);
                rec(i + 1, anchors, first, psi, used, check, visit);
                used[v] = false;
            }
        }
    }
    if anchors.is_empty() {
        visit(&psi);
        return;
    }
    rec(0, anchors, first, &mut psi, &mut used, &mut check, &mut visit);
}

/// Collects [`for_each_anchor_embedding`] into a list.
pub fn enumerate_anchor_embeddings(g: &Graph, h: &Graph, anchors: &[usize], same: Same) -> Vec<Mapping> {
    let mut sorted = anchors.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    for_each_anchor_embedding(g, h, &sorted, same, None, |m| out.push(m.clone()));
    out
}
