use super::{Graph, VertexLabel};
use crate::config::{check_cap, Caps};
use crate::{Error, Result};

fn pair_labels(x: &Graph, y: &Graph) -> Vec<VertexLabel> {
    let mut out = Vec::with_capacity(x.n() * y.n());
    for a in 0..x.n() {
        for b in 0..y.n() {
            out.push(VertexLabel::Pair(Box::new(x.label(a)), Box::new(y.label(b))));
        }
    }
    out
}

/// Product on `V(x) × V(y)` (row-major) where distinct `(a,b)`, `(c,d)` are
/// adjacent iff `adjacent((a,b),(c,d))` holds.
fn product_by<F>(x: &Graph, y: &Graph, adjacent: F) -> Graph
where
    F: Fn(usize, usize, usize, usize) -> bool,
{
    let ny = y.n();
    let n = x.n() * ny;
    let mut g = Graph::new(n);
    for p in 0..n {
        let (a, b) = (p / ny, p % ny);
        for q in p + 1..n {
            let (c, d) = (q / ny, q % ny);
            if adjacent(a, b, c, d) {
                g.adj[p].insert(q);
                g.adj[q].insert(p);
            }
        }
    }
    g.labels = Some(pair_labels(x, y));
    g
}

/// Homomorphic product X ⋉ Y: distinct `(x,y)`, `(x',y')` are adjacent iff
/// `x = x'`, or `x ~ x'` and `y ≁ y'` (where `y ≁ y'` includes `y = y'`).
pub fn homomorphic_product(x: &Graph, y: &Graph) -> Graph {
    product_by(x, y, |a, b, c, d| a == c || (x.has_edge(a, c) && !y.has_edge(b, d)))
}

/// Cartesian product X □ Y: equal in one coordinate, adjacent in the other.
pub fn cartesian_product(x: &Graph, y: &Graph) -> Graph {
    product_by(x, y, |a, b, c, d| {
        (a == c && y.has_edge(b, d)) || (b == d && x.has_edge(a, c))
    })
}

pub fn strong_product(x: &Graph, y: &Graph) -> Result<Graph> {
    strong_product_with(x, y, &Caps::default())
}

/// Strong product X ⊠ Y: distinct pairs whose coordinates are each equal or
/// adjacent.
pub fn strong_product_with(x: &Graph, y: &Graph, caps: &Caps) -> Result<Graph> {
    check_cap("strong product", x.n() * y.n(), caps.product_vertices)?;
    Ok(product_by(x, y, |a, b, c, d| {
        x.adjacent_or_equal(a, c) && y.adjacent_or_equal(b, d)
    }))
}

pub fn strong_power(x: &Graph, k: usize) -> Result<Graph> {
    strong_power_with(x, k, &Caps::default())
}

/// `k`-fold strong power; `strong_power(g, 1) == g`.
pub fn strong_power_with(x: &Graph, k: usize, caps: &Caps) -> Result<Graph> {
    if k == 0 {
        return Err(Error::InvalidArgument("strong power needs k >= 1".into()));
    }
    let total = (0..k).try_fold(1usize, |acc, _| acc.checked_mul(x.n()));
    match total {
        Some(t) => check_cap("strong power", t, caps.product_vertices)?,
        None => {
            return Err(Error::CapExceeded {
                what: "strong power",
                size: usize::MAX,
                cap: caps.product_vertices,
            })
        }
    }
    let mut g = x.clone();
    for _ in 1..k {
        g = strong_product_with(&g, x, caps)?;
    }
    Ok(g)
}

/// Disjoint union; vertices of `y` follow those of `x`.
pub fn disjoint_union(x: &Graph, y: &Graph) -> Graph {
    let nx = x.n();
    let mut g = Graph::new(nx + y.n());
    for (u, v) in x.edges() {
        g.add_edge(u, v).expect("in range");
    }
    for (u, v) in y.edges() {
        g.add_edge(nx + u, nx + v).expect("in range");
    }
    g
}
