//! Homomorphism search by backtracking with forward checking, and the
//! chromatic number as the least `c` admitting `g → K_c`.

use fixedbitset::FixedBitSet;

use super::{clique::clique_number_with, Homomorphism, Witnessed};
use crate::config::{check_cap, Caps};
use crate::graphs::{complete, Graph};
use crate::Result;

pub fn find_homomorphism(x: &Graph, y: &Graph) -> Result<Option<Homomorphism>> {
    find_homomorphism_with(x, y, &Caps::default())
}

/// The lexicographically first homomorphism `x → y`, comparing maps as
/// sequences `(h(0), h(1), ...)`, or `None` if none exists.
pub fn find_homomorphism_with(x: &Graph, y: &Graph, caps: &Caps) -> Result<Option<Homomorphism>> {
    check_cap("homomorphism search", x.n() * y.n().max(1), caps.homomorphism_size)?;
    let map = search(x, y);
    map.map(|m| Homomorphism::new(x.clone(), y.clone(), m)).transpose()
}

fn search(x: &Graph, y: &Graph) -> Option<Vec<usize>> {
    let n = x.n();
    if n == 0 {
        return Some(Vec::new());
    }
    if y.n() == 0 {
        return None;
    }
    let mut full = FixedBitSet::with_capacity(y.n());
    full.insert_range(..);
    let mut domains = vec![full; n];
    if x.edge_count() > 0 && y.edge_count() == 0 {
        return None;
    }
    let mut map = vec![0; n];
    if backtrack(x, y, 0, &mut domains, &mut map) {
        Some(map)
    } else {
        None
    }
}

fn backtrack(
    x: &Graph,
    y: &Graph,
    i: usize,
    domains: &mut Vec<FixedBitSet>,
    map: &mut [usize],
) -> bool {
    if i == x.n() {
        return true;
    }
    let later: Vec<usize> = x.neighbors(i).filter(|&j| j > i).collect();
    let candidates: Vec<usize> = domains[i].ones().collect();
    for v in candidates {
        let saved: Vec<FixedBitSet> = later.iter().map(|&j| domains[j].clone()).collect();
        let mut ok = true;
        for &j in &later {
            domains[j].intersect_with(y.neighbor_set(v));
            if domains[j].is_clear() {
                ok = false;
                break;
            }
        }
        if ok {
            map[i] = v;
            if backtrack(x, y, i + 1, domains, map) {
                return true;
            }
        }
        for (&j, d) in later.iter().zip(saved) {
            domains[j] = d;
        }
    }
    false
}

pub fn chromatic_number(g: &Graph) -> Result<Witnessed<usize>> {
    chromatic_number_with(g, &Caps::default())
}

/// χ(g) with an optimal colouring as witness (`witness[v]` is the colour of v).
pub fn chromatic_number_with(g: &Graph, caps: &Caps) -> Result<Witnessed<usize>> {
    check_cap("chromatic search", g.n(), caps.clique_vertices)?;
    if g.n() == 0 {
        return Ok(Witnessed { value: 0, witness: Vec::new() });
    }
    let lower = clique_number_with(g, caps)?.value.max(1);
    for c in lower..=g.n() {
        if let Some(map) = search(g, &complete(c)?) {
            return Ok(Witnessed { value: c, witness: map });
        }
    }
    unreachable!("identity colouring uses n colours")
}
