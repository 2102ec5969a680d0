//! Minimum-weight matchings that saturate one side of a sparse bipartite
//! graph.
//!
//! The engine is the rectangular Hungarian method with potentials. After the
//! optimum is found, a refinement pass walks the saturated side in order and
//! moves each vertex to the smallest partner that still admits an optimal
//! completion, so the result is the lexicographically smallest optimal
//! pair list.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Bipartite graph with nonnegative costs on its edges. Absent pairs are
/// non-edges.
#[derive(Clone, Debug, Default)]
pub struct AuxBipartite {
    left: usize,
    right: usize,
    adj: Vec<Vec<(usize, u64)>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingResult {
    /// `(left, right)` pairs ordered by the saturated side.
    pub pairs: Vec<(usize, usize)>,
    pub weight: u128,
}

impl AuxBipartite {
    pub fn new(left: usize, right: usize) -> Self {
        AuxBipartite { left, right, adj: vec![Vec::new(); left] }
    }

    /// Complete bipartite graph with `cost[l][r]`.
    pub fn from_matrix(cost: &[Vec<u64>]) -> Self {
        let right = cost.first().map_or(0, Vec::len);
        let mut g = Self::new(cost.len(), right);
        for (l, row) in cost.iter().enumerate() {
            for (r, &c) in row.iter().enumerate() {
                g.add_edge(l, r, c);
            }
        }
        g
    }

    /// Adds or lowers the cost of edge `l–r`.
    pub fn add_edge(&mut self, l: usize, r: usize, cost: u64) {
        assert!(l < self.left && r < self.right, "edge endpoint out of range");
        match self.adj[l].iter_mut().find(|(x, _)| *x == r) {
            Some(e) => e.1 = e.1.min(cost),
            None => self.adj[l].push((r, cost)),
        }
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn cost(&self, l: usize, r: usize) -> Option<u64> {
        self.adj[l].iter().find(|(x, _)| *x == r).map(|&(_, c)| c)
    }

    /// One more than the largest edge cost (1 for an edgeless graph).
    pub fn big(&self) -> u64 {
        self.adj.iter().flatten().map(|&(_, c)| c).max().map_or(1, |c| c + 1)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    fn transposed(&self) -> Self {
        let mut t = Self::new(self.right, self.left);
        for (l, row) in self.adj.iter().enumerate() {
            for &(r, c) in row {
                t.adj[r].push((l, c));
            }
        }
        t
    }
}

/// Minimum-weight matching saturating `side`; among optimal matchings the
/// pair list (ordered by `side`) is lexicographically smallest. `None` if no
/// saturating matching exists.
pub fn min_weight_saturating_matching(g: &AuxBipartite, side: Side) -> Option<MatchingResult> {
    match side {
        Side::Left => {
            let rows = solve_rows(g)?;
            let weight = weight_of(g, &rows);
            Some(MatchingResult { pairs: rows.into_iter().enumerate().collect(), weight })
        }
        Side::Right => {
            let t = g.transposed();
            let rows = solve_rows(&t)?;
            let weight = weight_of(&t, &rows);
            Some(MatchingResult { pairs: rows.into_iter().enumerate().map(|(r, l)| (l, r)).collect(), weight })
        }
    }
}

fn weight_of(g: &AuxBipartite, rows: &[usize]) -> u128 {
    rows.iter()
        .enumerate()
        .map(|(i, &j)| u128::from(g.cost(i, j).expect("matched pair is an edge")))
        .sum()
}

// Column assigned to each row, or None when the rows cannot all be matched.
fn solve_rows(g: &AuxBipartite) -> Option<Vec<usize>> {
    let n = g.left;
    let m = g.right;
    if n == 0 {
        return Some(Vec::new());
    }
    if n > m || g.adj.iter().any(Vec::is_empty) {
        return None;
    }
    // Non-edges cost more than any assignment built from real edges.
    let nonedge: i128 = g
        .adj
        .iter()
        .map(|row| i128::from(row.iter().map(|&(_, c)| c).max().unwrap_or(0)))
        .sum::<i128>()
        + 1;
    const INF: i128 = i128::MAX / 4;

    let mut u = vec![0i128; n + 1];
    let mut v = vec![0i128; m + 1];
    let mut p = vec![0usize; m + 1];
    let mut way = vec![0usize; m + 1];
    let mut minv = vec![INF; m + 1];
    let mut used = vec![false; m + 1];
    let mut row = vec![nonedge; m + 1];
    let mut row_of = usize::MAX;

    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        minv.iter_mut().for_each(|x| *x = INF);
        used.iter_mut().for_each(|x| *x = false);
        loop {
            used[j0] = true;
            let i0 = p[j0];
            if row_of != i0 {
                if row_of != usize::MAX {
                    for &(c, _) in &g.adj[row_of - 1] {
                        row[c + 1] = nonedge;
                    }
                }
                for &(c, w) in &g.adj[i0 - 1] {
                    row[c + 1] = i128::from(w);
                }
                row_of = i0;
            }
            let mut delta = INF;
            let mut j1 = 0;
            for j in 1..=m {
                if !used[j] {
                    let cur = row[j] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=m {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut col_of = vec![usize::MAX; n];
    for j in 1..=m {
        if p[j] != 0 {
            col_of[p[j] - 1] = j - 1;
        }
    }
    for (i, &j) in col_of.iter().enumerate() {
        g.cost(i, j)?;
    }
    // 0-based duals
    let u: Vec<i128> = u[1..].to_vec();
    let v: Vec<i128> = v[1..].to_vec();
    refine_lex(g, &u, &v, &mut col_of);
    Some(col_of)
}

// Optimal assignments are exactly the row-saturating matchings on tight edges
// that leave only zero-potential columns free. Row by row, try the smaller
// tight columns: the displaced owner must find a new column by an augmenting
// path, and then the vacated column, if its potential is negative, must be
// taken over along an alternating path ending at a zero-potential column.
fn refine_lex(g: &AuxBipartite, u: &[i128], v: &[i128], col_of: &mut [usize]) {
    const NONE: usize = usize::MAX;
    let n = g.left;
    let m = g.right;
    let mut tight: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut tight_rev: Vec<Vec<usize>> = vec![Vec::new(); m];
    for i in 0..n {
        for &(j, c) in &g.adj[i] {
            if i128::from(c) - u[i] - v[j] == 0 {
                tight[i].push(j);
                tight_rev[j].push(i);
            }
        }
        tight[i].sort_unstable();
    }
    let mut owner = vec![NONE; m];
    for (i, &j) in col_of.iter().enumerate() {
        owner[j] = i;
    }
    let mut stamp = vec![0usize; m];
    let mut epoch = 0;
    // Search trees: the row that reaches a column, and for the second search
    // the column it was reached from.
    let mut via_row = vec![NONE; m];
    let mut via_col = vec![NONE; m];
    let mut queue = std::collections::VecDeque::new();
    let mut undo: Vec<(usize, usize)> = Vec::new();

    for i in 0..n {
        let cur = col_of[i];
        for ci in 0..tight[i].len() {
            let c = tight[i][ci];
            if c >= cur {
                break;
            }
            let r0 = owner[c];
            if r0 != NONE && r0 < i {
                continue;
            }
            undo.clear();
            undo.push((i, cur));
            owner[cur] = NONE;
            if r0 != NONE {
                undo.push((r0, c));
                col_of[r0] = NONE;
            }
            col_of[i] = c;
            owner[c] = i;
            let mut ok = true;

            if r0 != NONE {
                epoch += 1;
                queue.clear();
                queue.push_back(r0);
                let mut end = NONE;
                'aug: while let Some(r) = queue.pop_front() {
                    for &d in &tight[r] {
                        if stamp[d] == epoch || (owner[d] != NONE && owner[d] <= i) {
                            continue;
                        }
                        stamp[d] = epoch;
                        via_row[d] = r;
                        if owner[d] == NONE {
                            end = d;
                            break 'aug;
                        }
                        queue.push_back(owner[d]);
                    }
                }
                if end == NONE {
                    ok = false;
                } else {
                    let mut d = end;
                    loop {
                        let r = via_row[d];
                        let prev = col_of[r];
                        if r != r0 {
                            undo.push((r, prev));
                        }
                        col_of[r] = d;
                        owner[d] = r;
                        if prev == NONE {
                            break;
                        }
                        d = prev;
                    }
                }
            }

            if ok && owner[cur] == NONE && v[cur] != 0 {
                epoch += 1;
                queue.clear();
                queue.push_back(cur);
                stamp[cur] = epoch;
                let mut end = NONE;
                'alt: while let Some(x) = queue.pop_front() {
                    for &r in &tight_rev[x] {
                        if r <= i {
                            continue;
                        }
                        let y = col_of[r];
                        if stamp[y] == epoch {
                            continue;
                        }
                        stamp[y] = epoch;
                        via_row[y] = r;
                        via_col[y] = x;
                        if v[y] == 0 {
                            end = y;
                            break 'alt;
                        }
                        queue.push_back(y);
                    }
                }
                if end == NONE {
                    ok = false;
                } else {
                    owner[end] = NONE;
                    let mut y = end;
                    while y != cur {
                        let r = via_row[y];
                        let x = via_col[y];
                        undo.push((r, y));
                        col_of[r] = x;
                        owner[x] = r;
                        y = x;
                    }
                }
            }

            if ok {
                break;
            }
            for &(r, _) in &undo {
                if col_of[r] != NONE {
                    owner[col_of[r]] = NONE;
                }
            }
            for &(r, old) in undo.iter().rev() {
                col_of[r] = old;
            }
            for &(r, _) in &undo {
                owner[col_of[r]] = r;
            }
        }
    }
}
