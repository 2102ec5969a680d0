//! Vertex covers and false-twin classes.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// The lexicographically smallest minimum vertex cover of size at most
/// `t_max` (unbounded when `None`), or `None` if there is none.
pub fn minimum_vertex_cover(h: &Graph, t_max: Option<usize>) -> Option<Vec<usize>> {
    let limit = t_max.unwrap_or(h.n()).min(h.n());
    let mut chosen = vec![false; h.n()];
    let mut set = Vec::new();
    (0..=limit).find_map(|k| {
        set.clear();
        search(h, k, 0, &mut chosen, &mut set).then(|| set.clone())
    })
}

// Picks the next cover vertex at or after `start`; every skipped vertex must
// already have all of its lower neighbours chosen.
fn search(h: &Graph, left: usize, start: usize, chosen: &mut [bool], set: &mut Vec<usize>) -> bool {
    let skip_ok = |v: usize, chosen: &[bool]| {
        h.neighbors(v).iter().take_while(|&&w| w < v).all(|&w| chosen[w])
    };
    if left == 0 {
        return (start..h.n()).all(|v| h.neighbors(v).iter().all(|&w| chosen[w]));
    }
    for c in start..h.n() {
        chosen[c] = true;
        set.push(c);
        if search(h, left - 1, c + 1, chosen, set) {
            return true;
        }
        set.pop();
        chosen[c] = false;
        if !skip_ok(c, chosen) {
            return false;
        }
    }
    false
}

/// Groups `z` by neighbourhood. Classes are ordered by smallest member and
/// each class is sorted.
pub fn false_twin_classes(h: &Graph, z: &[usize]) -> Result<Vec<Vec<usize>>> {
    let mut inside = vec![false; h.n()];
    for &v in z {
        inside[v] = true;
    }
    for &v in z {
        if let Some(&w) = h.neighbors(v).iter().find(|&&w| inside[w]) {
            return Err(Error::NotIndependent(v.min(w), v.max(w)));
        }
    }
    let mut sorted = z.to_vec();
    sorted.sort_unstable();
    let mut by_nbhd: BTreeMap<&[usize], usize> = BTreeMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in sorted {
        let idx = *by_nbhd.entry(h.neighbors(v)).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[idx].push(v);
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_min_cover(h: &Graph) -> usize {
        (0u32..1 << h.n())
            .filter(|mask| h.edges().iter().all(|&(u, v)| mask >> u & 1 == 1 || mask >> v & 1 == 1))
            .map(|mask| mask.count_ones() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(minimum_vertex_cover(&Graph::star(3), None), Some(vec![0]));
        assert_eq!(minimum_vertex_cover(&Graph::complete(3), None), Some(vec![0, 1]));
        assert_eq!(minimum_vertex_cover(&Graph::matching(2), Some(1)), None);
        assert_eq!(minimum_vertex_cover(&Graph::empty(4), Some(0)), Some(vec![]));
    }

    #[test]
    fn star_with_centre_last() {
        let h = Graph::new(4, [(0, 3), (1, 3), (2, 3)]).unwrap();
        assert_eq!(minimum_vertex_cover(&h, None), Some(vec![3]));
    }

    #[test]
    fn agrees_with_subset_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(1..=9);
            let edges: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(0.35))
                .collect();
            let h = Graph::new(n, edges).unwrap();
            let cover = minimum_vertex_cover(&h, None).unwrap();
            assert_eq!(cover.len(), brute_min_cover(&h));
            assert!(h.edges().iter().all(|(u, v)| cover.contains(u) || cover.contains(v)));
        }
    }

    #[test]
    fn twin_examples() {
        let star = Graph::star(3);
        assert_eq!(false_twin_classes(&star, &[1, 2, 3]).unwrap(), vec![vec![1, 2, 3]]);
        // a-x-b-y as 0-1-2-3
        let p = Graph::path(4);
        assert_eq!(false_twin_classes(&p, &[0, 3]).unwrap(), vec![vec![0], vec![3]]);
        let k23 = Graph::new(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        assert_eq!(false_twin_classes(&k23, &[2, 3, 4]).unwrap(), vec![vec![2, 3, 4]]);
        assert_eq!(false_twin_classes(&p, &[0, 1]), Err(Error::NotIndependent(0, 1)));
    }
}
