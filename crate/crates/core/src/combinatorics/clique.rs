//! Maximum clique by branch-and-bound with a greedy-colouring bound, and
//! maximal cliques by Bron–Kerbosch with pivoting.

use fixedbitset::FixedBitSet;

use super::Witnessed;
use crate::config::{check_cap, Caps};
use crate::graphs::Graph;
use crate::Result;

pub fn is_clique(g: &Graph, set: &[usize]) -> bool {
    set.iter()
        .enumerate()
        .all(|(i, &u)| set[i + 1..].iter().all(|&v| u != v && g.has_edge(u, v)))
}

pub fn is_independent(g: &Graph, set: &[usize]) -> bool {
    set.iter()
        .enumerate()
        .all(|(i, &u)| set[i + 1..].iter().all(|&v| u != v && !g.has_edge(u, v)))
}

pub fn clique_number(g: &Graph) -> Result<Witnessed<usize>> {
    clique_number_with(g, &Caps::default())
}

pub fn clique_number_with(g: &Graph, caps: &Caps) -> Result<Witnessed<usize>> {
    check_cap("clique search", g.n(), caps.clique_vertices)?;
    let witness = max_clique(g);
    debug_assert!(is_clique(g, &witness));
    Ok(Witnessed { value: witness.len(), witness })
}

pub fn independence_number(g: &Graph) -> Result<Witnessed<usize>> {
    independence_number_with(g, &Caps::default())
}

/// α(g) = ω(complement g), with a maximum independent set as witness.
pub fn independence_number_with(g: &Graph, caps: &Caps) -> Result<Witnessed<usize>> {
    check_cap("independence search", g.n(), caps.clique_vertices)?;
    let witness = max_clique(&g.complement());
    debug_assert!(is_independent(g, &witness));
    Ok(Witnessed { value: witness.len(), witness })
}

struct CliqueSearch<'a> {
    g: &'a Graph,
    best: Vec<usize>,
    current: Vec<usize>,
    /// Root order: descending degree, ties by lowest index.
    rank: Vec<usize>,
}

fn max_clique(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut rank = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let mut s = CliqueSearch { g, best: Vec::new(), current: Vec::new(), rank };
    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    s.expand(all);
    s.best.sort_unstable();
    s.best
}

impl CliqueSearch<'_> {
    /// Greedy sequential colouring of `cand` in root order. Returns the
    /// vertices sorted by colour together with their colour numbers, so the
    /// colour of the `i`-th vertex bounds the clique size among `verts[..=i]`.
    fn color_sort(&self, cand: &FixedBitSet) -> (Vec<usize>, Vec<usize>) {
        let mut verts: Vec<usize> = cand.ones().collect();
        verts.sort_by_key(|&v| self.rank[v]);
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for v in verts {
            match classes
                .iter_mut()
                .find(|cls| cls.iter().all(|&w| !self.g.has_edge(v, w)))
            {
                Some(cls) => cls.push(v),
                None => classes.push(vec![v]),
            }
        }
        let mut out = Vec::new();
        let mut colors = Vec::new();
        for (c, cls) in classes.into_iter().enumerate() {
            for v in cls {
                out.push(v);
                colors.push(c + 1);
            }
        }
        (out, colors)
    }

    fn expand(&mut self, mut cand: FixedBitSet) {
        let (verts, colors) = self.color_sort(&cand);
        for i in (0..verts.len()).rev() {
            if self.current.len() + colors[i] <= self.best.len() {
                return;
            }
            let v = verts[i];
            self.current.push(v);
            let mut next = cand.clone();
            next.intersect_with(self.g.neighbor_set(v));
            if next.is_clear() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            cand.set(v, false);
        }
    }
}

/// All maximal cliques, each sorted, in discovery order.
pub fn maximal_cliques(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut p = FixedBitSet::with_capacity(n);
    p.insert_range(..);
    bron_kerbosch(g, &mut Vec::new(), p, FixedBitSet::with_capacity(n), &mut out);
    out
}

pub fn maximal_independent_sets(g: &Graph) -> Vec<Vec<usize>> {
    maximal_cliques(&g.complement())
}

fn bron_kerbosch(
    g: &Graph,
    r: &mut Vec<usize>,
    mut p: FixedBitSet,
    mut x: FixedBitSet,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_clear() && x.is_clear() {
        let mut c = r.clone();
        c.sort_unstable();
        out.push(c);
        return;
    }
    let pivot = p
        .ones()
        .chain(x.ones())
        .max_by_key(|&u| {
            let mut s = p.clone();
            s.intersect_with(g.neighbor_set(u));
            s.count_ones(..)
        })
        .expect("p or x non-empty");
    let mut branch = p.clone();
    branch.difference_with(g.neighbor_set(pivot));
    for v in branch.ones().collect::<Vec<_>>() {
        let mut np = p.clone();
        np.intersect_with(g.neighbor_set(v));
        let mut nx = x.clone();
        nx.intersect_with(g.neighbor_set(v));
        r.push(v);
        bron_kerbosch(g, r, np, nx, out);
        r.pop();
        p.set(v, false);
        x.insert(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{cartesian_product, complete, cycle, empty, kneser, omega_graph};

    /// Exhaustive subset oracle for tiny graphs.
    fn alpha_brute(g: &Graph) -> usize {
        let n = g.n();
        (0u32..1 << n)
            .filter(|&mask| {
                let set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                is_independent(g, &set)
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn small_examples() {
        let c5 = cycle(5).unwrap();
        assert_eq!(independence_number(&c5).unwrap().value, 2);
        assert_eq!(clique_number(&c5).unwrap().value, 2);
        let p = kneser(5, 2).unwrap();
        let a = independence_number(&p).unwrap();
        assert_eq!(a.value, 4);
        assert_eq!(a.value, alpha_brute(&p));
        assert!(is_independent(&p, &a.witness));
        for n in 1..7 {
            assert_eq!(independence_number(&complete(n).unwrap()).unwrap().value, 1);
            assert_eq!(independence_number(&empty(n)).unwrap().value, n);
        }
        assert_eq!(independence_number(&Graph::new(0)).unwrap().value, 0);
    }

    #[test]
    fn omega4_values() {
        let o4 = omega_graph(4).unwrap();
        assert_eq!(independence_number(&o4).unwrap().value, alpha_brute(&o4));
        assert_eq!(clique_number(&o4).unwrap().value, 4);
        let box4 = cartesian_product(&o4, &complete(4).unwrap());
        let a = independence_number(&box4).unwrap();
        assert!(is_independent(&box4, &a.witness));
        assert!(a.value <= 4 * alpha_brute(&o4));
    }

    #[test]
    fn alpha_matches_brute_force_and_complement() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..150 {
            let n = rng.random_range(0..=10);
            let density = rng.random_range(0.1..0.9);
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random_bool(density) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let a = independence_number(&g).unwrap();
            assert_eq!(a.value, alpha_brute(&g));
            assert_eq!(a.value, clique_number(&g.complement()).unwrap().value);
        }
    }

    #[test]
    fn maximal_sets_of_c5() {
        let mis = maximal_independent_sets(&cycle(5).unwrap());
        assert_eq!(mis.len(), 5);
        assert!(mis.iter().all(|s| s.len() == 2));
    }

    #[test]
    fn cap_enforced() {
        assert!(independence_number(&Graph::new(65)).is_err());
    }
}
