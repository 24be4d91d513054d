//! Classical constructions relating homomorphisms `X → Y` to independent
//! sets of the homomorphic product `X ⋉ Y` and to Kneser targets.

use std::collections::{HashMap, HashSet};

use super::clique::is_independent;
use super::fractional::binomial;
use super::Homomorphism;
use crate::config::{check_cap, Caps};
use crate::graphs::{homomorphic_product, is_automorphism, kneser, kneser_subsets, Graph, Permutation};
use crate::{Error, Result};

/// The graph of `h`, `{(x, h(x))}`, as product indices `x·|V(Y)| + h(x)`.
pub fn hom_to_independent_set(h: &Homomorphism) -> Vec<usize> {
    let m = h.target().n();
    h.map().iter().enumerate().map(|(x, &y)| x * m + y).collect()
}

/// Reads a homomorphism off an independent set of `x ⋉ y` of size `|V(x)|`.
pub fn independent_set_to_hom(set: &[usize], x: &Graph, y: &Graph) -> Result<Homomorphism> {
    let m = y.n();
    if set.len() != x.n() {
        return Err(Error::InvalidArgument(format!(
            "set has {} vertices, need {}",
            set.len(),
            x.n()
        )));
    }
    if set.iter().any(|&p| p >= x.n() * m) {
        return Err(Error::InvalidArgument("vertex outside the product".into()));
    }
    let product = homomorphic_product(x, y);
    if !is_independent(&product, set) {
        return Err(Error::InvalidArgument("set is not independent in the product".into()));
    }
    // Each fiber {x}×V(y) is a clique, so an independent set of size |V(x)|
    // meets every fiber exactly once.
    let mut map = vec![usize::MAX; x.n()];
    for &p in set {
        map[p / m] = p % m;
    }
    Homomorphism::new(x.clone(), y.clone(), map)
}

/// Lifts `h: X → Y` to `X ⋉ Y → K_{|G|:|G|/|V(Y)|}` by sending `(x, y)` to
/// the coset `{g ∈ G : g(y) = h(x)}`, with `G` given by its elements.
pub fn kneser_lift_classical(h: &Homomorphism, group: &[Permutation]) -> Result<Homomorphism> {
    kneser_lift_classical_with(h, group, &Caps::default())
}

pub fn kneser_lift_classical_with(
    h: &Homomorphism,
    group: &[Permutation],
    caps: &Caps,
) -> Result<Homomorphism> {
    let y = h.target();
    let m = y.n();
    check_group(y, group)?;
    let order = group.len();
    if m == 0 || order % m != 0 {
        return Err(Error::Precondition(format!(
            "|G| = {order} is not divisible by |V(Y)| = {m}"
        )));
    }
    let r = order / m;
    let size = binomial(order, r).unwrap_or(usize::MAX);
    check_cap("Kneser target", size, caps.kneser_vertices)?;

    let x = h.source();
    let source = homomorphic_product(x, y);
    let target = kneser(order, r)?;
    let index: HashMap<Vec<usize>, usize> = kneser_subsets(order, r)
        .into_iter()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();
    let mut map = Vec::with_capacity(source.n());
    for xv in 0..x.n() {
        for yv in 0..m {
            let coset: Vec<usize> = (0..order).filter(|&g| group[g][yv] == h.image(xv)).collect();
            if coset.len() != r {
                return Err(Error::Internal(format!(
                    "coset G({yv},{}) has {} elements, expected {r}",
                    h.image(xv),
                    coset.len()
                )));
            }
            map.push(index[&coset]);
        }
    }
    Homomorphism::new(source, target, map)
}

pub(crate) fn check_group(y: &Graph, group: &[Permutation]) -> Result<()> {
    let n = y.n();
    if let Some(p) = group.iter().find(|p| p.len() != n || !is_automorphism(y, p)) {
        return Err(Error::InvalidArgument(format!("{p:?} is not an automorphism")));
    }
    let set: HashSet<&Permutation> = group.iter().collect();
    if set.len() != group.len() {
        return Err(Error::InvalidArgument("group lists an element twice".into()));
    }
    for a in group {
        for b in group {
            let ab: Permutation = b.iter().map(|&v| a[v]).collect();
            if !set.contains(&ab) {
                return Err(Error::InvalidArgument("elements are not closed under composition".into()));
            }
        }
    }
    if n > 0 {
        let orbit: HashSet<usize> = group.iter().map(|p| p[0]).collect();
        if orbit.len() != n {
            return Err(Error::Precondition("group does not act transitively".into()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{find_homomorphism, independence_number};
    use crate::graphs::{automorphisms, complete, cycle, cycle_rotations};

    #[test]
    fn forward_and_back() {
        let c5 = cycle(5).unwrap();
        let k3 = complete(3).unwrap();
        let h = find_homomorphism(&c5, &k3).unwrap().unwrap();
        let s = hom_to_independent_set(&h);
        assert_eq!(s.len(), 5);
        assert!(is_independent(&homomorphic_product(&c5, &k3), &s));
        assert_eq!(independent_set_to_hom(&s, &c5, &k3).unwrap(), h);
        assert_eq!(independence_number(&homomorphic_product(&c5, &k3)).unwrap().value, 5);
    }

    #[test]
    fn reverse_rejects_bad_sets() {
        let c5 = cycle(5).unwrap();
        let k3 = complete(3).unwrap();
        assert!(independent_set_to_hom(&[0, 3, 6], &c5, &k3).is_err());
        // (0,0) and (1,0): adjacent in C5, equal colour.
        assert!(independent_set_to_hom(&[0, 3, 6, 9, 12], &c5, &k3).is_err());
    }

    #[test]
    fn k2_is_not_reachable_from_c5() {
        let c5 = cycle(5).unwrap();
        let k2 = complete(2).unwrap();
        assert!(find_homomorphism(&c5, &k2).unwrap().is_none());
        assert!(independence_number(&homomorphic_product(&c5, &k2)).unwrap().value < 5);
    }

    #[test]
    fn lift_c5_by_rotations() {
        let c5 = cycle(5).unwrap();
        let id = Homomorphism::new(c5.clone(), c5.clone(), (0..5).collect()).unwrap();
        let lifted = kneser_lift_classical(&id, &cycle_rotations(5)).unwrap();
        assert_eq!(lifted.source().n(), 25);
        assert_eq!(lifted.target().n(), 5);
    }

    #[test]
    fn lift_with_full_group() {
        let c5 = cycle(5).unwrap();
        let id = Homomorphism::new(c5.clone(), c5.clone(), (0..5).collect()).unwrap();
        let group = automorphisms(&c5).unwrap().elements(100).unwrap();
        let lifted = kneser_lift_classical(&id, &group).unwrap();
        assert_eq!(lifted.target().n(), 45);
    }

    #[test]
    fn lift_rejects_non_groups() {
        let c5 = cycle(5).unwrap();
        let id = Homomorphism::new(c5.clone(), c5.clone(), (0..5).collect()).unwrap();
        let mut rots = cycle_rotations(5);
        rots.pop();
        assert!(kneser_lift_classical(&id, &rots).is_err());
        assert!(kneser_lift_classical(&id, &[vec![0, 1, 2, 3, 4]]).is_err());
    }
}
