//! Seeded instance generators and encoders from three source problems.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Mapping, WeightFn};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub k: usize,
    pub g: Graph,
    pub h: Graph,
    pub w: WeightFn,
    /// `None` asks for the optimum instead of a yes/no answer.
    pub budget: Option<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RandomParams {
    pub n_g: usize,
    pub n_h: usize,
    pub edge_prob: f64,
    pub weight_max: u64,
    pub k: usize,
    pub connected_g: bool,
    /// When set, every edge of `H` touches a random set of this many
    /// vertices, so the vertex cover of `H` is at most this.
    pub cover_bound: Option<usize>,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams { n_g: 6, n_h: 4, edge_prob: 0.4, weight_max: 3, k: 1, connected_g: false, cover_bound: None }
    }
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64, allowed: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if allowed(u, v) && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    edges
}

/// A random instance, reproducible from `seed`.
pub fn gen_random(params: &RandomParams, seed: u64) -> Result<Instance> {
    let RandomParams { n_g, n_h, edge_prob, weight_max, k, connected_g, cover_bound } = *params;
    if n_h > n_g {
        return Err(Error::InvalidParameter(format!("n_H = {n_h} exceeds n_G = {n_g}")));
    }
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(Error::InvalidParameter(format!("edge probability {edge_prob} is not in [0, 1]")));
    }
    if k != 1 && k != 2 {
        return Err(Error::InvalidParameter(format!("k must be 1 or 2, got {k}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut g_edges = random_graph(&mut rng, n_g, edge_prob, |_, _| true);
    if connected_g {
        let tmp = Graph::new(n_g, g_edges.iter().copied())?;
        let comps = tmp.component_sets();
        for pair in comps.windows(2) {
            let u = *pair[0].choose(&mut rng).unwrap();
            let v = *pair[1].choose(&mut rng).unwrap();
            g_edges.push((u.min(v), u.max(v)));
        }
    }
    let g = Graph::new(n_g, g_edges)?;

    let mut cover = vec![true; n_h];
    if let Some(t) = cover_bound {
        let mut order: Vec<usize> = (0..n_h).collect();
        order.shuffle(&mut rng);
        cover = vec![false; n_h];
        for &v in order.iter().take(t) {
            cover[v] = true;
        }
    }
    let h_edges = random_graph(&mut rng, n_h, edge_prob, |u, v| cover[u] || cover[v]);
    let (h, _) = Graph::new(n_h, h_edges)?.without_isolated();

    let mut w = WeightFn::uniform(0);
    for u in 0..n_g {
        for v in u + 1..n_g {
            let x = rng.gen_range(0..=weight_max);
            if x != 0 {
                w.set(u, v, x);
            }
        }
    }
    Ok(Instance { k, g, h, w, budget: None })
}

/// Complete graph on `V(G₀)` with weight 0 on the edges of `G₀` and 1
/// elsewhere, budget 0: a placement exists iff `H₀` is a subgraph of `G₀`.
pub fn reduce_subgraph_isomorphism(g0: &Graph, h0: &Graph, k: usize) -> Result<Instance> {
    if k != 1 && k != 2 {
        return Err(Error::InvalidParameter(format!("k must be 1 or 2, got {k}")));
    }
    if g0.n() <= k {
        return Err(Error::InvalidParameter(format!("G has {} vertices; need more than k = {k}", g0.n())));
    }
    let mut w = WeightFn::uniform(1);
    for &(u, v) in g0.edges() {
        w.set(u, v, 0);
    }
    Ok(Instance { k, g: Graph::complete(g0.n()), h: h0.clone(), w, budget: Some(0) })
}

/// Vertices `u^e` and `v^e` for the `j`-th edge `e = uv` (`u < v`) of `G₀`.
pub fn ham_edge_vertices(n: usize, j: usize) -> (usize, usize) {
    (n + 2 * j, n + 2 * j + 1)
}

/// Encodes Hamiltonian path on a cubic graph: `n` disjoint claws, a matching
/// `H` with `2n − 1` edges, budget `n − 1`, `k = 1`.
pub fn reduce_hamiltonian_path(g0: &Graph) -> Result<Instance> {
    let n = g0.n();
    if let Some(v) = (0..n).find(|&v| g0.degree(v) != 3) {
        return Err(Error::NotCubic(v, g0.degree(v)));
    }
    let mut edges = Vec::new();
    let mut w = WeightFn::uniform(2);
    for (j, &(u, v)) in g0.edges().iter().enumerate() {
        let (ue, ve) = ham_edge_vertices(n, j);
        edges.push((u, ue));
        edges.push((v, ve));
        w.set(u, ue, 0);
        w.set(v, ve, 0);
        w.set(ue, ve, 1);
    }
    let g = Graph::new(n + 2 * g0.m(), edges)?;
    let budget = n.saturating_sub(1) as u64;
    Ok(Instance { k: 1, g, h: Graph::matching((2 * n).saturating_sub(1)), w, budget: Some(budget) })
}

/// The placement built from a Hamiltonian path `path` of `G₀`: path edges
/// join `v_i^{e_i}` and `v_{i+1}^{e_i}`, and every vertex gets one spare
/// edge on its own claw.
pub fn witness_from_ham_path(g0: &Graph, path: &[usize]) -> Result<Mapping> {
    let n = g0.n();
    let mut seen = vec![false; n];
    if path.len() != n || path.iter().any(|&v| v >= n || std::mem::replace(&mut seen[v], true)) {
        return Err(Error::InvalidParameter("not a permutation of the vertices".into()));
    }
    let index = |u: usize, v: usize| -> Result<usize> {
        g0.edges()
            .binary_search(&(u.min(v), u.max(v)))
            .map_err(|_| Error::InvalidParameter(format!("{u} {v} is not an edge")))
    };
    let end = |u: usize, v: usize, j: usize| {
        let (a, b) = ham_edge_vertices(n, j);
        if u < v { a } else { b }
    };
    let mut phi = Mapping::new(2 * (2 * n - 1));
    let mut on_path = vec![false; g0.m()];
    for i in 0..n - 1 {
        let (a, b) = (path[i], path[i + 1]);
        let j = index(a, b)?;
        on_path[j] = true;
        phi.set(2 * i, end(a, b, j));
        phi.set(2 * i + 1, end(b, a, j));
    }
    for (i, &v) in path.iter().enumerate() {
        let (u, j) = g0
            .neighbors(v)
            .iter()
            .map(|&u| (u, index(v, u).unwrap()))
            .find(|&(_, j)| !on_path[j])
            .expect("a cubic vertex has a non-path edge");
        let x = 2 * (n - 1 + i);
        phi.set(x, v);
        phi.set(x + 1, end(v, u, j));
    }
    Ok(phi)
}

/// Layout of the instance built from a tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiconnLayout {
    pub r: usize,
    /// `q[j]` lists the clique vertices on tree edge `j`.
    pub q: Vec<Vec<usize>>,
    /// `x[u][i]` and `y[u][i]` are the clique vertices attached to `u`.
    pub x: Vec<Vec<usize>>,
    pub y: Vec<Vec<usize>>,
}

fn check_tree(t: &Graph) -> Result<()> {
    if t.n() == 0 || t.m() != t.n() - 1 || !t.is_connected() {
        return Err(Error::NotTree);
    }
    Ok(())
}

/// Vertex layout of [`reduce_biconnectivity_augmentation`].
pub fn biconn_layout(t: &Graph, w0: u64, k: usize) -> BiconnLayout {
    let n = t.n();
    let r = k.max(w0 as usize);
    let qs = k - 1;
    let mut next = n;
    let mut q = Vec::new();
    for _ in t.edges() {
        q.push((next..next + qs).collect());
        next += qs;
    }
    let mut x = Vec::new();
    let mut y = Vec::new();
    for _ in 0..n {
        x.push((next..next + r).collect());
        y.push((next + r..next + 2 * r).collect());
        next += 2 * r;
    }
    BiconnLayout { r, q, x, y }
}

/// Encodes weighted augmentation of tree `t` to 2-edge-connectivity with
/// link costs `c` (symmetric, on non-edges of `t`) and budget `w0`.
pub fn reduce_biconnectivity_augmentation(t: &Graph, c: &WeightFn, w0: u64, k: usize) -> Result<Instance> {
    check_tree(t)?;
    if k != 2 {
        return Err(Error::InvalidParameter(format!("only k = 2 is supported, got {k}")));
    }
    let n = t.n();
    let lay = biconn_layout(t, w0, k);
    let total = n + lay.q.iter().map(Vec::len).sum::<usize>() + 2 * lay.r * n;
    let mut edges = Vec::new();
    for (j, &(u, v)) in t.edges().iter().enumerate() {
        for (a, &z) in lay.q[j].iter().enumerate() {
            edges.push((u, z));
            edges.push((v, z));
            for &z2 in &lay.q[j][a + 1..] {
                edges.push((z, z2));
            }
        }
    }
    for u in 0..n {
        let clique: Vec<usize> = lay.x[u].iter().chain(&lay.y[u]).copied().collect();
        for (a, &p) in clique.iter().enumerate() {
            edges.push((u, p));
            for &q in &clique[a + 1..] {
                edges.push((p, q));
            }
        }
    }
    let g = Graph::new(total, edges)?;

    let mut w = WeightFn::uniform(w0 + 1);
    for u in 0..n {
        for i in 0..lay.r {
            w.set(lay.x[u][i], lay.y[u][i], 0);
        }
        for v in 0..n {
            if u != v && !t.has_edge(u, v) {
                for i in 0..lay.r {
                    for j in 0..lay.r {
                        w.set(lay.x[u][i], lay.y[v][j], c.get(u, v));
                    }
                }
            }
        }
    }
    Ok(Instance { k, g, h: Graph::matching(w0 as usize), w, budget: Some(w0) })
}

/// The placement for an augmenting link set `links` (at most `w0` of them):
/// link `i` joins `x_i^a` and `y_i^b`, spare edges sit inside `R_0`.
pub fn witness_from_links(t: &Graph, links: &[(usize, usize)], w0: u64, k: usize) -> Result<Mapping> {
    check_tree(t)?;
    let lay = biconn_layout(t, w0, k);
    if links.len() > w0 as usize {
        return Err(Error::InvalidParameter("more links than budget".into()));
    }
    let mut phi = Mapping::new(2 * w0 as usize);
    for i in 0..w0 as usize {
        let (a, b) = links.get(i).copied().unwrap_or((0, 0));
        phi.set(2 * i, lay.x[a][i]);
        phi.set(2 * i + 1, lay.y[b][i]);
    }
    Ok(phi)
}
