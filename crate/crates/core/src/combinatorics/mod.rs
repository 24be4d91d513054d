//! Exact classical parameters at desk scale and the classical constructive
//! lemmas linking homomorphisms, independent sets and Kneser graphs.
//!
//! Conventions for degenerate inputs: the graph on zero vertices has
//! α = ω = χ = 0 and χ_f = 0; any edgeless graph on n ≥ 1 vertices has χ = 1.

mod clique;
mod fractional;
mod homomorphism;
mod lemmas;

use serde::{Deserialize, Serialize};

use crate::graphs::Graph;
use crate::{Error, Result};

pub(crate) use fractional::binomial;
pub(crate) use lemmas::check_group;
pub use clique::{
    clique_number, clique_number_with, independence_number, independence_number_with,
    is_clique, is_independent, maximal_cliques, maximal_independent_sets,
};
pub use fractional::{fractional_chromatic, fractional_chromatic_with, FractionalColoring};
pub use homomorphism::{
    chromatic_number, chromatic_number_with, find_homomorphism, find_homomorphism_with,
};
pub use lemmas::{
    hom_to_independent_set, independent_set_to_hom, kneser_lift_classical,
    kneser_lift_classical_with,
};

/// Exact rational, normalised with positive denominator.
pub type Rational = num::BigRational;

/// A vertex set that attains a parameter, e.g. a maximum independent set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnessed<T> {
    pub value: T,
    pub witness: Vec<usize>,
}

/// Adjacency-preserving map `source → target`, verified on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    source: Graph,
    target: Graph,
    map: Vec<usize>,
}

impl Homomorphism {
    pub fn new(source: Graph, target: Graph, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.n() {
            return Err(Error::InvalidArgument(format!(
                "map has {} entries for {} source vertices",
                map.len(),
                source.n()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= target.n()) {
            return Err(Error::InvalidArgument(format!("image {bad} out of range")));
        }
        if let Some((u, v)) = source
            .edges()
            .into_iter()
            .find(|&(u, v)| !target.has_edge(map[u], map[v]))
        {
            return Err(Error::Verification(format!(
                "edge ({u},{v}) maps to non-edge ({},{})",
                map[u], map[v]
            )));
        }
        Ok(Homomorphism { source, target, map })
    }

    pub fn source(&self) -> &Graph {
        &self.source
    }

    pub fn target(&self) -> &Graph {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn image(&self, v: usize) -> usize {
        self.map[v]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Homomorphism) -> Result<Homomorphism> {
        if self.target != other.source {
            return Err(Error::Shape("composition target/source mismatch".into()));
        }
        let map = self.map.iter().map(|&y| other.map[y]).collect();
        Homomorphism::new(self.source.clone(), other.target.clone(), map)
    }
}

/// JSON witness `{"source", "target", "map"}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HomomorphismJson {
    pub source: Graph,
    pub target: Graph,
    pub map: Vec<usize>,
}

impl From<&Homomorphism> for HomomorphismJson {
    fn from(h: &Homomorphism) -> Self {
        HomomorphismJson {
            source: h.source.clone(),
            target: h.target.clone(),
            map: h.map.clone(),
        }
    }
}

impl TryFrom<HomomorphismJson> for Homomorphism {
    type Error = Error;

    fn try_from(j: HomomorphismJson) -> Result<Self> {
        Homomorphism::new(j.source, j.target, j.map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{complete, cycle};

    #[test]
    fn homomorphism_validation() {
        let c5 = cycle(5).unwrap();
        let k3 = complete(3).unwrap();
        assert!(Homomorphism::new(c5.clone(), k3.clone(), vec![0, 1, 0, 1, 2]).is_ok());
        assert!(Homomorphism::new(c5.clone(), k3.clone(), vec![0, 1, 0, 1, 0]).is_err());
        assert!(Homomorphism::new(c5.clone(), k3.clone(), vec![0, 1, 0]).is_err());
        assert!(Homomorphism::new(c5, k3, vec![0, 1, 0, 1, 3]).is_err());
    }
}
