//! Classical channels and their confusability graphs.

use serde::{Deserialize, Serialize};

use crate::combinatorics::independence_number_with;
use crate::config::Caps;
use crate::graphs::{strong_power_with, Graph};
use crate::{Error, Result};

pub const STOCHASTIC_TOL: f64 = 1e-12;

/// Row-stochastic table `N(w|z)`, stored row-major as `probs[z·|W| + w]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ChannelJson")]
pub struct Channel {
    inputs: Vec<String>,
    outputs: Vec<String>,
    probs: Vec<f64>,
}

#[derive(Deserialize)]
struct ChannelJson {
    inputs: Vec<String>,
    outputs: Vec<String>,
    probs: Vec<f64>,
}

impl TryFrom<ChannelJson> for Channel {
    type Error = Error;

    fn try_from(j: ChannelJson) -> Result<Self> {
        Channel::new(j.inputs, j.outputs, j.probs)
    }
}

impl Channel {
    pub fn new(inputs: Vec<String>, outputs: Vec<String>, probs: Vec<f64>) -> Result<Self> {
        let (nz, nw) = (inputs.len(), outputs.len());
        if probs.len() != nz * nw {
            return Err(Error::Shape(format!("{} probabilities for a {nz}×{nw} channel", probs.len())));
        }
        if let Some(p) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::InvalidArgument(format!("probability {p} is not a nonnegative number")));
        }
        for z in 0..nz {
            let s: f64 = probs[z * nw..(z + 1) * nw].iter().sum();
            if (s - 1.0).abs() > STOCHASTIC_TOL {
                return Err(Error::InvalidArgument(format!("row `{}` sums to {s}", inputs[z])));
            }
        }
        Ok(Channel { inputs, outputs, probs })
    }

    /// Channel with unnamed inputs `0..` and outputs `0..`.
    pub fn from_table(n_inputs: usize, n_outputs: usize, probs: Vec<f64>) -> Result<Self> {
        let names = |n: usize| (0..n).map(|i| i.to_string()).collect();
        Channel::new(names(n_inputs), names(n_outputs), probs)
    }

    pub fn inputs(&self) -> &[String] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[String] {
        &self.outputs
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, w: usize, z: usize) -> f64 {
        self.probs[z * self.outputs.len() + w]
    }
}

/// `z ~ z'` iff some output has positive probability under both.
pub fn confusability_graph(ch: &Channel) -> Graph {
    let (nz, nw) = (ch.inputs.len(), ch.outputs.len());
    let mut g = Graph::new(nz);
    for z in 0..nz {
        for z2 in z + 1..nz {
            if (0..nw).any(|w| ch.prob(w, z) > 0.0 && ch.prob(w, z2) > 0.0) {
                g.add_edge(z, z2).expect("indices in range");
            }
        }
    }
    g
}

/// Inputs `V(g)`, outputs `E(g)` plus one private output per isolated vertex,
/// with `N(e|x) = 1/deg(x)` on incident edges.
pub fn canonical_channel(g: &Graph) -> Channel {
    let edges = g.edges();
    let isolated: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) == 0).collect();
    let mut outputs: Vec<String> = edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
    outputs.extend(isolated.iter().map(|v| format!("{v}")));
    let nw = outputs.len();
    let mut probs = vec![0.0; g.n() * nw];
    for (e, &(u, v)) in edges.iter().enumerate() {
        probs[u * nw + e] = 1.0 / g.degree(u) as f64;
        probs[v * nw + e] = 1.0 / g.degree(v) as f64;
    }
    for (k, &v) in isolated.iter().enumerate() {
        probs[v * nw + edges.len() + k] = 1.0;
    }
    let inputs = (0..g.n()).map(|v| v.to_string()).collect();
    Channel::new(inputs, outputs, probs).expect("canonical channel is stochastic")
}

/// `c_0 = α` of the confusability graph.
pub fn one_shot_capacity(g: &Graph) -> Result<usize> {
    one_shot_capacity_with(g, &Caps::default())
}

pub fn one_shot_capacity_with(g: &Graph, caps: &Caps) -> Result<usize> {
    Ok(independence_number_with(g, caps)?.value)
}

/// `max_{j ≤ k} α(g^{⊠j})^{1/j}` for `k = 1..=k_max`: a nondecreasing
/// sequence of lower bounds on the Shannon capacity.
pub fn capacity_series(g: &Graph, k_max: usize) -> Result<Vec<f64>> {
    capacity_series_with(g, k_max, &Caps::default())
}

pub fn capacity_series_with(g: &Graph, k_max: usize, caps: &Caps) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(k_max);
    let mut best = 0.0f64;
    for k in 1..=k_max {
        let a = independence_number_with(&strong_power_with(g, k, caps)?, caps)?.value;
        best = best.max((a as f64).powf(1.0 / k as f64));
        out.push(best);
    }
    Ok(out)
}

/// `(α(g^{⊠(j+k)}), α(g^{⊠j})·α(g^{⊠k}))`; the first is never smaller.
pub fn supermultiplicativity(g: &Graph, j: usize, k: usize, caps: &Caps) -> Result<(usize, usize)> {
    let alpha = |p: usize| -> Result<usize> {
        if p == 0 {
            return Ok(1);
        }
        Ok(independence_number_with(&strong_power_with(g, p, caps)?, caps)?.value)
    };
    Ok((alpha(j + k)?, alpha(j)? * alpha(k)?))
}
