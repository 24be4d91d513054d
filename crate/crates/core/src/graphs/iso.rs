//! Brute-force isomorphism for tiny graphs, pruned by degree.

use super::Graph;

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    find_isomorphism(a, b).is_some()
}

/// A bijection `p` with `a.has_edge(u, v) == b.has_edge(p[u], p[v])`.
pub fn find_isomorphism(a: &Graph, b: &Graph) -> Option<Vec<usize>> {
    let n = a.n();
    if n != b.n() || a.edge_count() != b.edge_count() {
        return None;
    }
    let mut da = a.degrees();
    let mut db = b.degrees();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return None;
    }
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if rec(a, b, 0, &mut image, &mut used) {
        Some(image)
    } else {
        None
    }
}

fn rec(a: &Graph, b: &Graph, u: usize, image: &mut [usize], used: &mut [bool]) -> bool {
    if u == a.n() {
        return true;
    }
    for v in 0..b.n() {
        if used[v] || a.degree(u) != b.degree(v) {
            continue;
        }
        if (0..u).any(|w| a.has_edge(u, w) != b.has_edge(v, image[w])) {
            continue;
        }
        image[u] = v;
        used[v] = true;
        if rec(a, b, u + 1, image, used) {
            return true;
        }
        used[v] = false;
    }
    image[u] = usize::MAX;
    false
}
