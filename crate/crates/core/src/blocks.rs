//! Bridges and 2-edge-connected components.
//!
//! A "block" here is a connected component of `G` minus its bridges. Pendant
//! blocks are the leaves of the bridge tree.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// All bridges of `g` as `(u, v)` with `u < v`, sorted. Works on
/// disconnected graphs; the DFS is iterative so deep trees are fine.
pub fn bridges(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.n();
    let mut tin = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    let mut out = Vec::new();
    // (vertex, parent, next neighbour index)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    for s in 0..n {
        if tin[s] != usize::MAX {
            continue;
        }
        tin[s] = timer;
        low[s] = timer;
        timer += 1;
        stack.push((s, usize::MAX, 0));
        while let Some(top) = stack.last_mut() {
            let (v, p, i) = *top;
            let adj = g.neighbors(v);
            if i < adj.len() {
                top.2 += 1;
                let w = adj[i];
                if w == p {
                    continue;
                }
                if tin[w] == usize::MAX {
                    tin[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, v, 0));
                } else {
                    low[v] = low[v].min(tin[w]);
                }
            } else {
                stack.pop();
                if p != usize::MAX {
                    low[p] = low[p].min(low[v]);
                    if low[v] > tin[p] {
                        out.push((p.min(v), p.max(v)));
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Labels each vertex with its 2-edge-connected component. Labels are
/// ordered by smallest member. Returns `(labels, count, bridges)`.
pub fn two_edge_components(g: &Graph) -> (Vec<usize>, usize, Vec<(usize, usize)>) {
    let br = bridges(g);
    let n = g.n();
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    let mut stack = Vec::new();
    let is_bridge = |u: usize, v: usize| br.binary_search(&(u.min(v), u.max(v))).is_ok();
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = count;
        stack.push(s);
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if label[w] == usize::MAX && !is_bridge(v, w) {
                    label[w] = count;
                    stack.push(w);
                }
            }
        }
        count += 1;
    }
    (label, count, br)
}

/// `k = 1`: connected. `k = 2`: connected and bridgeless. Graphs with at most
/// one vertex count as both.
pub fn is_k_edge_connected(g: &Graph, k: usize) -> bool {
    assert!(k <= 2, "only k in {{1, 2}} is supported");
    if g.n() <= 1 || k == 0 {
        return true;
    }
    if !g.is_connected() {
        return false;
    }
    k == 1 || bridges(g).is_empty()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub bridges: Vec<(usize, usize)>,
    pub block_of: Vec<usize>,
    /// Members of each block, sorted.
    pub blocks: Vec<Vec<usize>>,
    pub pendant: Vec<bool>,
    /// For pendant blocks, the attaching bridge as `(inside, outside)`.
    pub attach_bridge: Vec<Option<(usize, usize)>>,
    /// Bridge tree adjacency: `(neighbour block, bridge index)`.
    pub tree: Vec<Vec<(usize, usize)>>,
}

impl BlockDecomposition {
    /// Decomposes a connected graph. The empty graph has no blocks.
    pub fn new(g: &Graph) -> Result<Self> {
        if g.n() > 0 && !g.is_connected() {
            return Err(Error::Disconnected);
        }
        let (block_of, count, bridges) = two_edge_components(g);
        let mut blocks = vec![Vec::new(); count];
        for (v, &b) in block_of.iter().enumerate() {
            blocks[b].push(v);
        }
        let mut tree = vec![Vec::new(); count];
        for (i, &(u, v)) in bridges.iter().enumerate() {
            tree[block_of[u]].push((block_of[v], i));
            tree[block_of[v]].push((block_of[u], i));
        }
        let pendant: Vec<bool> = tree.iter().map(|t| t.len() == 1).collect();
        let attach_bridge = (0..count)
            .map(|b| {
                pendant[b].then(|| {
                    let (u, v) = bridges[tree[b][0].1];
                    if block_of[u] == b {
                        (u, v)
                    } else {
                        (v, u)
                    }
                })
            })
            .collect();
        Ok(BlockDecomposition { bridges, block_of, blocks, pendant, attach_bridge, tree })
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn pendant_count(&self) -> usize {
        self.pendant.iter().filter(|&&p| p).count()
    }

    /// Pendant block indices in increasing order.
    pub fn pendant_blocks(&self) -> Vec<usize> {
        (0..self.blocks.len()).filter(|&b| self.pendant[b]).collect()
    }

    pub fn is_trivial(&self, block: usize) -> bool {
        self.blocks[block].len() == 1
    }

    /// Pendant blocks in the cyclic order in which a depth-first walk of the
    /// bridge tree meets them.
    pub fn leaf_cycle(&self) -> Vec<usize> {
        let count = self.blocks.len();
        let mut out = Vec::new();
        if count == 0 {
            return out;
        }
        let root = 0;
        let mut seen = vec![false; count];
        seen[root] = true;
        let mut stack = vec![(root, 0usize)];
        if self.pendant[root] {
            out.push(root);
        }
        while let Some(top) = stack.last_mut() {
            let (b, i) = *top;
            if i < self.tree[b].len() {
                top.1 += 1;
                let c = self.tree[b][i].0;
                if !seen[c] {
                    seen[c] = true;
                    if self.pendant[c] {
                        out.push(c);
                    }
                    stack.push((c, 0));
                }
            } else {
                stack.pop();
            }
        }
        out
    }

    /// Blocks on the bridge-tree path from `a` to `b`, both included.
    pub fn tree_path(&self, a: usize, b: usize) -> Vec<usize> {
        let count = self.blocks.len();
        let mut parent = vec![usize::MAX; count];
        parent[a] = a;
        let mut queue = std::collections::VecDeque::from([a]);
        while let Some(x) = queue.pop_front() {
            if x == b {
                break;
            }
            for &(y, _) in &self.tree[x] {
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        let mut path = vec![b];
        let mut x = b;
        while x != a {
            x = parent[x];
            path.push(x);
        }
        path.reverse();
        path
    }
}
