//! Automorphism groups by backtracking with colour-refinement pruning.
//!
//! The full group is returned as a strong generating set relative to a base,
//! found level by level from the deepest stabiliser upwards. Orbits of the
//! stabiliser found so far are used to skip searches whose answer is already
//! known.

use std::collections::{HashSet, VecDeque};

use fixedbitset::FixedBitSet;

use super::Graph;
use crate::config::{check_cap, Caps};
use crate::{Error, Result};

/// `p[v]` is the image of vertex `v`.
pub type Permutation = Vec<usize>;

/// Automorphism group given by generators and its exact order.
#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    pub n: usize,
    pub generators: Vec<Permutation>,
    /// Base points used for the stabiliser chain.
    pub base: Vec<usize>,
    /// Lengths of the basic orbits; their product is the group order.
    pub orbit_sizes: Vec<usize>,
}

impl AutomorphismGroup {
    pub fn order(&self) -> u128 {
        self.orbit_sizes.iter().map(|&s| s as u128).product()
    }

    /// Every group element, by closure of the generators. Refuses groups
    /// larger than `limit`.
    pub fn elements(&self, limit: usize) -> Result<Vec<Permutation>> {
        if self.order() > limit as u128 {
            return Err(Error::CapExceeded {
                what: "automorphism group expansion",
                size: usize::try_from(self.order()).unwrap_or(usize::MAX),
                cap: limit,
            });
        }
        Ok(closure(self.n, &self.generators))
    }

    /// Orbits of the group on vertices.
    pub fn vertex_orbits(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.n);
        for g in &self.generators {
            for (v, &w) in g.iter().enumerate() {
                uf.union(v, w);
            }
        }
        uf.classes()
    }
}

/// Group generated by `gens` as an explicit element list (identity first).
fn closure(n: usize, gens: &[Permutation]) -> Vec<Permutation> {
    let id: Permutation = (0..n).collect();
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q: Permutation = p.iter().map(|&v| g[v]).collect();
            if seen.insert(q.clone()) {
                out.push(q.clone());
                queue.push_back(q);
            }
        }
    }
    out
}

pub fn is_automorphism(g: &Graph, p: &[usize]) -> bool {
    let n = g.n();
    if p.len() != n {
        return false;
    }
    let mut hit = vec![false; n];
    for &v in p {
        if v >= n || hit[v] {
            return false;
        }
        hit[v] = true;
    }
    g.edges().into_iter().all(|(u, v)| g.has_edge(p[u], p[v]))
}

/// Rotations `i -> i + k (mod n)` of the cycle `0..n`.
pub fn cycle_rotations(n: usize) -> Vec<Permutation> {
    (0..n).map(|k| (0..n).map(|i| (i + k) % n).collect()).collect()
}

pub fn automorphisms(g: &Graph) -> Result<AutomorphismGroup> {
    automorphisms_with(g, &Caps::default())
}

/// Full automorphism group as a strong generating set.
pub fn automorphisms_with(g: &Graph, caps: &Caps) -> Result<AutomorphismGroup> {
    let n = g.n();
    check_cap("automorphism search", n, caps.automorphism_full)?;
    let searcher = Searcher::new(g);
    let base = searcher.bfs_order(&[]);
    let mut generators: Vec<Permutation> = Vec::new();
    let mut orbit_sizes = vec![1usize; n];
    for level in (0..n).rev() {
        let point = base[level];
        let mut prefix: Vec<(usize, usize)> = base[..level].iter().map(|&b| (b, b)).collect();
        let fixed: FixedBitSet = base[..level].iter().copied().collect_bits(n);
        let mut orbit = orbit_of(n, point, &generators);
        for v in 0..n {
            if orbit.contains(v) || fixed.contains(v) || searcher.color[v] != searcher.color[point] {
                continue;
            }
            prefix.push((point, v));
            if let Some(p) = searcher.extend(&prefix) {
                generators.push(p);
                orbit = orbit_of(n, point, &generators);
            }
            prefix.pop();
        }
        orbit_sizes[level] = orbit.count_ones(..);
    }
    Ok(AutomorphismGroup { n, generators, base, orbit_sizes })
}

pub fn is_vertex_transitive(g: &Graph) -> Result<bool> {
    is_vertex_transitive_with(g, &Caps::default())
}

pub fn is_vertex_transitive_with(g: &Graph, caps: &Caps) -> Result<bool> {
    let n = g.n();
    check_cap("transitivity check", n, caps.automorphism_orbit)?;
    if n <= 1 {
        return Ok(true);
    }
    if g.regular_degree().is_none() {
        return Ok(false);
    }
    let searcher = Searcher::new(g);
    if searcher.color.iter().any(|&c| c != searcher.color[0]) {
        return Ok(false);
    }
    let mut gens: Vec<Permutation> = Vec::new();
    let mut orbit = orbit_of(n, 0, &gens);
    for v in 1..n {
        if orbit.contains(v) {
            continue;
        }
        match searcher.extend(&[(0, v)]) {
            Some(p) => {
                gens.push(p);
                orbit = orbit_of(n, 0, &gens);
            }
            None => return Ok(false),
        }
    }
    Ok(true)
}

pub fn is_edge_transitive(g: &Graph) -> Result<bool> {
    is_edge_transitive_with(g, &Caps::default())
}

/// Single orbit on (unordered) edges. Edgeless graphs count as transitive.
pub fn is_edge_transitive_with(g: &Graph, caps: &Caps) -> Result<bool> {
    check_cap("transitivity check", g.n(), caps.automorphism_orbit)?;
    let edges = g.edges();
    let Some(&(a, b)) = edges.first() else {
        return Ok(true);
    };
    let searcher = Searcher::new(g);
    let mut gens: Vec<Permutation> = Vec::new();
    let mut orbit = edge_orbit(&edges[0], &gens);
    for &(c, d) in &edges[1..] {
        if orbit.contains(&(c, d)) {
            continue;
        }
        let found = searcher
            .extend(&[(a, c), (b, d)])
            .or_else(|| searcher.extend(&[(a, d), (b, c)]));
        match found {
            Some(p) => {
                gens.push(p);
                orbit = edge_orbit(&edges[0], &gens);
            }
            None => return Ok(false),
        }
    }
    Ok(true)
}

fn edge_orbit(start: &(usize, usize), gens: &[Permutation]) -> HashSet<(usize, usize)> {
    let mut seen = HashSet::from([*start]);
    let mut queue = VecDeque::from([*start]);
    while let Some((u, v)) = queue.pop_front() {
        for p in gens {
            let (x, y) = (p[u], p[v]);
            let e = (x.min(y), x.max(y));
            if seen.insert(e) {
                queue.push_back(e);
            }
        }
    }
    seen
}

fn orbit_of(n: usize, point: usize, gens: &[Permutation]) -> FixedBitSet {
    let mut seen = FixedBitSet::with_capacity(n);
    seen.insert(point);
    let mut queue = vec![point];
    while let Some(v) = queue.pop() {
        for p in gens {
            let w = p[v];
            if !seen.contains(w) {
                seen.insert(w);
                queue.push(w);
            }
        }
    }
    seen
}

trait CollectBits {
    fn collect_bits(self, n: usize) -> FixedBitSet;
}

impl<I: Iterator<Item = usize>> CollectBits for I {
    fn collect_bits(self, n: usize) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(n);
        for v in self {
            s.insert(v);
        }
        s
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, v: usize) -> usize {
        let mut r = v;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = v;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for v in 0..n {
            let r = self.find(v);
            by_root[r].push(v);
        }
        by_root.into_iter().filter(|c| !c.is_empty()).collect()
    }
}

/// Backtracking search for automorphisms extending a partial map.
struct Searcher<'a> {
    g: &'a Graph,
    /// Stable colour-refinement classes; automorphisms preserve them.
    color: Vec<usize>,
}

impl<'a> Searcher<'a> {
    fn new(g: &'a Graph) -> Self {
        Searcher { g, color: refine_colors(g) }
    }

    /// Vertex order: `seeds` first, then breadth-first from them, highest
    /// degree first among unreached vertices.
    fn bfs_order(&self, seeds: &[usize]) -> Vec<usize> {
        let n = self.g.n();
        let mut placed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &s in seeds {
            if !placed[s] {
                placed[s] = true;
                order.push(s);
                queue.push_back(s);
            }
        }
        loop {
            while let Some(u) = queue.pop_front() {
                for v in self.g.neighbors(u) {
                    if !placed[v] {
                        placed[v] = true;
                        order.push(v);
                        queue.push_back(v);
                    }
                }
            }
            let next = (0..n).filter(|&v| !placed[v]).max_by_key(|&v| (self.g.degree(v), n - v));
            match next {
                Some(s) => {
                    placed[s] = true;
                    order.push(s);
                    queue.push_back(s);
                }
                None => break,
            }
        }
        order
    }

    /// An automorphism agreeing with `prefix` (pairs `(vertex, image)`).
    fn extend(&self, prefix: &[(usize, usize)]) -> Option<Permutation> {
        let n = self.g.n();
        let mut image = vec![usize::MAX; n];
        let mut used = FixedBitSet::with_capacity(n);
        for &(u, v) in prefix {
            if self.color[u] != self.color[v] {
                return None;
            }
            if image[u] != usize::MAX && image[u] != v {
                return None;
            }
            if used.contains(v) && image[u] != v {
                return None;
            }
            image[u] = v;
            used.insert(v);
        }
        let seeds: Vec<usize> = prefix.iter().map(|&(u, _)| u).collect();
        // Validate the prefix itself.
        for (i, &u) in seeds.iter().enumerate() {
            for &w in &seeds[..i] {
                if self.g.has_edge(u, w) != self.g.has_edge(image[u], image[w]) {
                    return None;
                }
            }
        }
        let order = self.bfs_order(&seeds);
        let start = order.iter().position(|v| image[*v] == usize::MAX).unwrap_or(n);
        let mut mapped: Vec<usize> = order[..start].to_vec();
        if self.backtrack(&order, start, &mut image, &mut used, &mut mapped) {
            Some(image)
        } else {
            None
        }
    }

    fn backtrack(
        &self,
        order: &[usize],
        pos: usize,
        image: &mut [usize],
        used: &mut FixedBitSet,
        mapped: &mut Vec<usize>,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let u = order[pos];
        let n = self.g.n();
        for v in 0..n {
            if used.contains(v) || self.color[v] != self.color[u] {
                continue;
            }
            let consistent = mapped
                .iter()
                .all(|&w| self.g.has_edge(u, w) == self.g.has_edge(v, image[w]));
            if !consistent {
                continue;
            }
            image[u] = v;
            used.insert(v);
            mapped.push(u);
            if self.backtrack(order, pos + 1, image, used, mapped) {
                return true;
            }
            mapped.pop();
            used.set(v, false);
            image[u] = usize::MAX;
        }
        false
    }
}

/// Colour refinement (1-dimensional Weisfeiler–Leman) to a stable partition.
/// Colours are canonical integers, so equal colours across vertices are
/// meaningful for automorphism pruning.
fn refine_colors(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut color: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    loop {
        let mut sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).map(|w| color[w]).collect();
                nb.sort_unstable();
                (color[v], nb)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = sigs
            .iter_mut()
            .map(|s| distinct.binary_search(s).expect("present"))
            .collect();
        let classes_before = {
            let mut c = color.clone();
            c.sort_unstable();
            c.dedup();
            c.len()
        };
        if distinct.len() == classes_before {
            return next;
        }
        color = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{complete, cycle, disjoint_union, kneser, omega_graph, path};

    #[test]
    fn cycle_group_is_dihedral() {
        let g = automorphisms(&cycle(5).unwrap()).unwrap();
        assert_eq!(g.order(), 10);
        assert_eq!(g.elements(100).unwrap().len(), 10);
        assert_eq!(automorphisms(&cycle(6).unwrap()).unwrap().order(), 12);
    }

    #[test]
    fn known_group_orders() {
        assert_eq!(automorphisms(&complete(5).unwrap()).unwrap().order(), 120);
        assert_eq!(automorphisms(&kneser(5, 2).unwrap()).unwrap().order(), 120);
        assert_eq!(automorphisms(&path(3)).unwrap().order(), 2);
        assert_eq!(automorphisms(&Graph::new(0)).unwrap().order(), 1);
        // Ω_4 is two disjoint copies of K_{2,2,2,2}: (2^4 · 4!)^2 · 2.
        assert_eq!(automorphisms(&omega_graph(4).unwrap()).unwrap().order(), 294_912);
    }

    #[test]
    fn group_axioms_on_expansion() {
        for g in [cycle(5).unwrap(), kneser(5, 2).unwrap(), path(4)] {
            let grp = automorphisms(&g).unwrap();
            let elems = grp.elements(1000).unwrap();
            let set: HashSet<Permutation> = elems.iter().cloned().collect();
            assert_eq!(elems.len() as u128, grp.order());
            for p in &elems {
                assert!(is_automorphism(&g, p));
                let mut inv = vec![0; p.len()];
                for (v, &w) in p.iter().enumerate() {
                    inv[w] = v;
                }
                assert!(set.contains(&inv));
                for q in &elems {
                    let pq: Permutation = q.iter().map(|&v| p[v]).collect();
                    assert!(set.contains(&pq));
                }
            }
        }
    }

    #[test]
    fn transitivity_examples() {
        let p3 = path(3);
        assert!(is_edge_transitive(&p3).unwrap());
        assert!(!is_vertex_transitive(&p3).unwrap());
        assert!(is_vertex_transitive(&kneser(5, 2).unwrap()).unwrap());
        assert!(is_edge_transitive(&kneser(5, 2).unwrap()).unwrap());
        let c3c4 = disjoint_union(&cycle(3).unwrap(), &cycle(4).unwrap());
        assert!(!is_vertex_transitive(&c3c4).unwrap());
        assert!(is_edge_transitive(&Graph::new(3)).unwrap());
    }

    #[test]
    fn caps_are_enforced() {
        let big = Graph::new(40);
        assert!(matches!(automorphisms(&big), Err(Error::CapExceeded { .. })));
        assert!(is_vertex_transitive(&big).unwrap());
        assert!(matches!(is_vertex_transitive(&Graph::new(200)), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn rotations_are_automorphisms() {
        let c7 = cycle(7).unwrap();
        assert!(cycle_rotations(7).iter().all(|p| is_automorphism(&c7, p)));
    }
}
