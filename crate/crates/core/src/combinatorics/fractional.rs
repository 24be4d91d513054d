//! Exact fractional chromatic number by rational simplex.
//!
//! The LP `max Σ y_v  s.t.  Σ_{v∈I} y_v ≤ 1  for every maximal independent
//! set I, y ≥ 0` is solved from the slack basis under Bland's rule. Its
//! optimal dual prices are a fractional colouring, and both sides are checked
//! exactly before a result is returned.

use std::collections::HashMap;

use num::{BigInt, Integer, One, ToPrimitive, Zero};
use serde::Serialize;

use super::clique::maximal_independent_sets;
use super::{Homomorphism, Rational};
use crate::config::{check_cap, Caps};
use crate::graphs::{kneser, kneser_subsets, Graph};
use crate::{Error, Result};

/// χ_f(g) with both optimality certificates and a Kneser witness.
#[derive(Clone, Debug, Serialize)]
pub struct FractionalColoring {
    #[serde(serialize_with = "ser_rational")]
    pub value: Rational,
    /// Independent sets carrying positive colouring weight.
    #[serde(serialize_with = "ser_weighted")]
    pub weights: Vec<(Vec<usize>, Rational)>,
    /// Optimal vertex weights of the packing LP.
    #[serde(serialize_with = "ser_rationals")]
    pub vertex_weights: Vec<Rational>,
    /// Witness parameters: `g → K_{d:r}` with `d/r = value`.
    pub d: usize,
    pub r: usize,
    /// `subsets[v]` is the `r`-subset of `{0..d}` assigned to `v`.
    pub subsets: Vec<Vec<usize>>,
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

fn ser_rationals<S: serde::Serializer>(
    q: &[Rational],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(q.iter().map(|x| x.to_string()))
}

fn ser_weighted<S: serde::Serializer>(
    w: &[(Vec<usize>, Rational)],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(w.iter().map(|(set, q)| (set, q.to_string())))
}

impl FractionalColoring {
    pub fn value_f64(&self) -> f64 {
        self.value.to_f64().unwrap_or(f64::NAN)
    }

    /// The witness as an explicit homomorphism into the Kneser graph `K_{d:r}`.
    pub fn kneser_homomorphism(&self, g: &Graph, caps: &Caps) -> Result<Homomorphism> {
        if self.subsets.len() != g.n() {
            return Err(Error::Shape("colouring does not match graph".into()));
        }
        if g.n() == 0 {
            return Homomorphism::new(g.clone(), Graph::new(0), Vec::new());
        }
        let size = binomial(self.d, self.r).unwrap_or(usize::MAX);
        check_cap("Kneser target", size, caps.kneser_vertices)?;
        let target = kneser(self.d, self.r)?;
        let index: HashMap<Vec<usize>, usize> = kneser_subsets(self.d, self.r)
            .into_iter()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        let map = self.subsets.iter().map(|s| index[s]).collect();
        Homomorphism::new(g.clone(), target, map)
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> Option<usize> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

pub fn fractional_chromatic(g: &Graph) -> Result<FractionalColoring> {
    fractional_chromatic_with(g, &Caps::default())
}

pub fn fractional_chromatic_with(g: &Graph, caps: &Caps) -> Result<FractionalColoring> {
    check_cap("fractional chromatic LP", g.n(), caps.fractional_vertices)?;
    let n = g.n();
    if n == 0 {
        return Ok(FractionalColoring {
            value: Rational::zero(),
            weights: Vec::new(),
            vertex_weights: Vec::new(),
            d: 0,
            r: 1,
            subsets: Vec::new(),
        });
    }
    let sets = maximal_independent_sets(g);
    let (y, w, value) = solve_packing(n, &sets)?;
    certify(n, &sets, &y, &w, &value)?;
    let weights: Vec<(Vec<usize>, Rational)> = sets
        .into_iter()
        .zip(w)
        .filter(|(_, q)| !q.is_zero())
        .collect();
    let (d, r, subsets) = kneser_witness(n, &weights)?;
    Ok(FractionalColoring { value, weights, vertex_weights: y, d, r, subsets })
}

/// Dense tableau simplex for `max 1ᵀy, A y ≤ 1, y ≥ 0` with `A` the
/// set-vertex incidence matrix. Returns primal `y`, dual `w` and the value.
fn solve_packing(
    n: usize,
    sets: &[Vec<usize>],
) -> Result<(Vec<Rational>, Vec<Rational>, Rational)> {
    let m = sets.len();
    let cols = n + m;
    let zero = Rational::zero();
    let one = Rational::one();
    let mut t: Vec<Vec<Rational>> = sets
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let mut row = vec![zero.clone(); cols + 1];
            for &v in s {
                row[v] = one.clone();
            }
            row[n + i] = one.clone();
            row[cols] = one.clone();
            row
        })
        .collect();
    let mut obj = vec![zero.clone(); cols + 1];
    for c in obj.iter_mut().take(n) {
        *c = -one.clone();
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    while let Some(enter) = (0..cols).find(|&j| obj[j] < zero) {
        let mut leave: Option<(usize, Rational)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[enter] > zero {
                let ratio = &row[cols] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (p, _) = leave.ok_or_else(|| Error::Internal("packing LP unbounded".into()))?;
        let piv = t[p][enter].clone();
        for x in t[p].iter_mut() {
            *x = &*x / &piv;
        }
        let prow = t[p].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != p && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, px) in row.iter_mut().zip(&prow) {
                    *x -= &f * px;
                }
            }
        }
        let f = obj[enter].clone();
        for (x, px) in obj.iter_mut().zip(&prow) {
            *x -= &f * px;
        }
        basis[p] = enter;
    }

    let mut y = vec![zero.clone(); n];
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            y[b] = t[i][cols].clone();
        }
    }
    let w = obj[n..n + m].to_vec();
    Ok((y, w, obj[cols].clone()))
}

fn certify(
    n: usize,
    sets: &[Vec<usize>],
    y: &[Rational],
    w: &[Rational],
    value: &Rational,
) -> Result<()> {
    let zero = Rational::zero();
    let one = Rational::one();
    if y.iter().chain(w).any(|q| *q < zero) {
        return Err(Error::Internal("negative LP weight".into()));
    }
    for s in sets {
        let load: Rational = s.iter().map(|&v| y[v].clone()).sum();
        if load > one {
            return Err(Error::Internal("packing constraint violated".into()));
        }
    }
    let mut cover = vec![zero.clone(); n];
    for (s, q) in sets.iter().zip(w) {
        for &v in s {
            cover[v] += q;
        }
    }
    if cover.iter().any(|c| *c < one) {
        return Err(Error::Internal("colouring does not cover every vertex".into()));
    }
    let py: Rational = y.iter().cloned().sum();
    let dw: Rational = w.iter().cloned().sum();
    if py != *value || dw != *value {
        return Err(Error::Internal("LP duality gap is nonzero".into()));
    }
    Ok(())
}

/// Scales the weights to integers `a_I` over a common denominator `r` and
/// hands each vertex the first `r` colours among the blocks of its sets.
fn kneser_witness(
    n: usize,
    weights: &[(Vec<usize>, Rational)],
) -> Result<(usize, usize, Vec<Vec<usize>>)> {
    let too_big = || Error::Internal("Kneser witness parameters overflow".into());
    let r_big = weights
        .iter()
        .fold(BigInt::one(), |acc, (_, q)| acc.lcm(q.denom()));
    let r = r_big.to_usize().ok_or_else(too_big)?;
    let mut offsets = Vec::with_capacity(weights.len());
    let mut d = 0usize;
    for (_, q) in weights {
        let a = (q * Rational::from_integer(r_big.clone())).to_integer();
        let a = a.to_usize().ok_or_else(too_big)?;
        offsets.push((d, a));
        d = d.checked_add(a).ok_or_else(too_big)?;
    }
    let mut subsets = vec![Vec::with_capacity(r); n];
    for ((set, _), &(start, len)) in weights.iter().zip(&offsets) {
        for &v in set {
            let need = r - subsets[v].len();
            subsets[v].extend(start..start + len.min(need));
        }
    }
    if subsets.iter().any(|s| s.len() != r) {
        return Err(Error::Internal("Kneser witness under-covers a vertex".into()));
    }
    Ok((d, r, subsets))
}
