//! Simple undirected graphs, injective placements and pair weights.
//!
//! Vertices are positional indices `0..n`. Every [`Graph`] is simple: no
//! loops, no parallel edges, adjacency lists kept sorted.

use std::collections::BTreeMap;

use crate::blocks::BlockDecomposition;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self::from_sorted(n, list))
    }

    /// Like [`Graph::new`] but silently collapses parallel edges.
    pub fn new_collapsing(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        list.dedup();
        Ok(Self::from_sorted(n, list))
    }

    fn from_sorted(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Self::from_sorted(n, edges)
    }

    pub fn path(n: usize) -> Self {
        Self::from_sorted(n, (1..n).map(|v| (v - 1, v)).collect())
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a simple cycle needs at least 3 vertices");
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((0, n - 1));
        edges.sort_unstable();
        Self::from_sorted(n, edges)
    }

    /// The star `K_{1,leaves}` with centre 0.
    pub fn star(leaves: usize) -> Self {
        Self::from_sorted(leaves + 1, (1..=leaves).map(|v| (0, v)).collect())
    }

    /// `pairs` disjoint copies of `K_2`: edges `{2i, 2i+1}`.
    pub fn matching(pairs: usize) -> Self {
        Self::from_sorted(2 * pairs, (0..pairs).map(|i| (2 * i, 2 * i + 1)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Returns a copy with the given extra edges; duplicates collapse.
    pub fn with_edges(&self, extra: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::new_collapsing(self.n, self.edges.iter().copied().chain(extra))
    }

    /// Induced subgraph on `vertices` (in the given order); vertex `i` of the
    /// result is `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        edges.sort_unstable();
        Self::from_sorted(vertices.len(), edges)
    }

    /// Drops isolated vertices. Returns the reduced graph and, for each of its
    /// vertices, the original index.
    pub fn without_isolated(&self) -> (Graph, Vec<usize>) {
        let keep: Vec<usize> = (0..self.n).filter(|&v| self.degree(v) > 0).collect();
        (self.induced(&keep), keep)
    }

    /// Connected-component label per vertex (labels in order of smallest
    /// member) and the number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest member.
    pub fn component_sets(&self) -> Vec<Vec<usize>> {
        let (label, count) = self.components();
        let mut sets = vec![Vec::new(); count];
        for (v, &c) in label.iter().enumerate() {
            sets[c].push(v);
        }
        sets
    }

    pub fn is_connected(&self) -> bool {
        self.components().1 <= 1
    }
}

/// Partial injective map from the vertices of `H` to the vertices of `G`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mapping {
    image: Vec<Option<usize>>,
}

impl Mapping {
    /// The empty map on an `H` with `h_n` vertices.
    pub fn new(h_n: usize) -> Self {
        Mapping { image: vec![None; h_n] }
    }

    pub fn from_images(images: Vec<usize>) -> Self {
        Mapping { image: images.into_iter().map(Some).collect() }
    }

    pub fn from_pairs(h_n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut m = Self::new(h_n);
        for (h, g) in pairs {
            m.set(h, g);
        }
        m
    }

    pub fn h_len(&self) -> usize {
        self.image.len()
    }

    pub fn set(&mut self, h: usize, g: usize) {
        self.image[h] = Some(g);
    }

    pub fn get(&self, h: usize) -> Option<usize> {
        self.image.get(h).copied().flatten()
    }

    /// Image of a vertex known to be mapped.
    pub fn at(&self, h: usize) -> usize {
        self.image[h].expect("vertex is unmapped")
    }

    pub fn is_total(&self) -> bool {
        self.image.iter().all(Option::is_some)
    }

    /// Assigned `(h, g)` pairs in increasing `h`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.image.iter().enumerate().filter_map(|(h, g)| g.map(|g| (h, g)))
    }

    /// Images in `h` order; only meaningful for total maps.
    pub fn images(&self) -> Vec<usize> {
        self.image.iter().map(|g| g.expect("mapping is not total")).collect()
    }

    /// Checks range and injectivity against a `G` with `g_n` vertices.
    pub fn validate(&self, g_n: usize) -> Result<()> {
        let mut used = vec![false; g_n];
        for (_, g) in self.pairs() {
            if g >= g_n {
                return Err(Error::VertexOutOfRange { vertex: g, n: g_n });
            }
            if std::mem::replace(&mut used[g], true) {
                return Err(Error::NotInjective(g));
            }
        }
        Ok(())
    }

    /// Checks that the map is total, in range and injective.
    pub fn validate_total(&self, g_n: usize) -> Result<()> {
        if let Some(h) = self.image.iter().position(Option::is_none) {
            return Err(Error::NotTotal(h));
        }
        self.validate(g_n)
    }
}

/// Symmetric nonnegative weight on unordered pairs of `G`-vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightFn {
    default: u64,
    overrides: BTreeMap<(usize, usize), u64>,
}

impl WeightFn {
    pub fn uniform(default: u64) -> Self {
        WeightFn { default, overrides: BTreeMap::new() }
    }

    pub fn set(&mut self, u: usize, v: usize, weight: u64) {
        assert_ne!(u, v, "weights live on pairs of distinct vertices");
        self.overrides.insert((u.min(v), u.max(v)), weight);
    }

    pub fn with(mut self, u: usize, v: usize, weight: u64) -> Self {
        self.set(u, v, weight);
        self
    }

    pub fn get(&self, u: usize, v: usize) -> u64 {
        *self.overrides.get(&(u.min(v), u.max(v))).unwrap_or(&self.default)
    }

    pub fn default_weight(&self) -> u64 {
        self.default
    }

    /// Overrides keyed by `(u, v)` with `u < v`, in sorted order.
    pub fn overrides(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.overrides.iter().map(|(&k, &w)| (k, w))
    }

    /// `Σ_{xy ∈ E(H)} ω(φ(x)φ(y))` for a map defined on every edge endpoint.
    pub fn mapping_weight(&self, h: &Graph, phi: &Mapping) -> Result<u64> {
        h.edges().iter().try_fold(0u64, |acc, &(x, y)| {
            acc.checked_add(self.get(phi.at(x), phi.at(y))).ok_or(Error::Overflow)
        })
    }
}

/// `c`, `i` and (for connected graphs) `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GraphStats {
    pub components: usize,
    pub isolated: usize,
    pub pendants: Option<usize>,
}

/// The superposition `G ⊕_φ H` on the vertex set of `G`.
pub fn superpose(g: &Graph, h: &Graph, phi: &Mapping) -> Result<Graph> {
    if phi.h_len() != h.n() {
        return Err(Error::InvalidParameter(format!(
            "mapping covers {} vertices but H has {}",
            phi.h_len(),
            h.n()
        )));
    }
    phi.validate_total(g.n())?;
    g.with_edges(h.edges().iter().map(|&(x, y)| (phi.at(x), phi.at(y))))
}

pub fn stats(g: &Graph) -> GraphStats {
    let (_, components) = g.components();
    let isolated = (0..g.n()).filter(|&v| g.degree(v) == 0).count();
    let pendants = if components == 1 {
        BlockDecomposition::new(g).ok().map(|d| d.pendant_count())
    } else {
        None
    };
    GraphStats { components, isolated, pendants }
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}
