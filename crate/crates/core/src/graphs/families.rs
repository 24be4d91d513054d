use super::{Graph, VertexLabel};
use crate::config::{check_cap, Caps};
use crate::{Error, Result};

/// Complete graph K_n.
pub fn complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidArgument("complete graph needs n >= 1".into()));
    }
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v)?;
        }
    }
    Ok(g)
}

/// Edgeless graph on `n` vertices.
pub fn empty(n: usize) -> Graph {
    Graph::new(n)
}

/// Cycle C_n on `0, 1, ..., n-1` in order.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("cycle needs n >= 3, got {n}")));
    }
    let mut g = Graph::new(n);
    for i in 0..n {
        g.add_edge(i, (i + 1) % n)?;
    }
    Ok(g)
}

/// Path on `n` vertices.
pub fn path(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for i in 1..n {
        g.add_edge(i - 1, i).expect("path edges are in range");
    }
    g
}

/// All `r`-subsets of `0..n` in lexicographic order.
pub fn kneser_subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        let need = r - cur.len();
        for v in start..=n.saturating_sub(need) {
            if v >= n {
                break;
            }
            cur.push(v);
            rec(v + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r <= n {
        rec(0, n, r, &mut Vec::with_capacity(r), &mut out);
    }
    out
}

/// Kneser graph K_{n:r}: `r`-subsets of `[n]`, adjacent when disjoint.
///
/// `2r > n` yields an edgeless graph, which is allowed.
pub fn kneser(n: usize, r: usize) -> Result<Graph> {
    if r == 0 {
        return Err(Error::InvalidArgument("kneser graph needs r >= 1".into()));
    }
    if r > n {
        return Err(Error::InvalidArgument(format!("kneser graph needs r <= n, got r={r}, n={n}")));
    }
    let subsets = kneser_subsets(n, r);
    let masks: Vec<u128> = if n <= 128 {
        subsets.iter().map(|s| s.iter().fold(0u128, |m, &i| m | (1 << i))).collect()
    } else {
        return Err(Error::CapExceeded { what: "kneser ground set", size: n, cap: 128 });
    };
    let mut g = Graph::new(subsets.len());
    for i in 0..subsets.len() {
        for j in i + 1..subsets.len() {
            if masks[i] & masks[j] == 0 {
                g.add_edge(i, j)?;
            }
        }
    }
    g.with_labels(subsets.into_iter().map(VertexLabel::Subset).collect())
}

/// Ω_n with the default cap.
pub fn omega_graph(n: usize) -> Result<Graph> {
    omega_graph_with(n, &Caps::default())
}

/// Ω_n: the ±1 vectors of length `n`, adjacent when orthogonal.
///
/// Vertex `k` is the sign vector whose `j`-th entry is `-1` exactly when bit
/// `n - 1 - j` of `k` is set, so vertex 0 is all `+1`.
pub fn omega_graph_with(n: usize, caps: &Caps) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidArgument("omega graph needs n >= 1".into()));
    }
    check_cap("omega graph length", n, caps.omega_n)?;
    let count = 1usize << n;
    let mut g = Graph::new(count);
    // Orthogonal iff the vectors differ in exactly n/2 positions.
    if n % 2 == 0 {
        for u in 0..count {
            for v in u + 1..count {
                if (u ^ v).count_ones() as usize * 2 == n {
                    g.add_edge(u, v)?;
                }
            }
        }
    }
    let labels = (0..count).map(|k| VertexLabel::Signs(omega_signs(n, k))).collect();
    g.with_labels(labels)
}

pub(crate) fn omega_signs(n: usize, k: usize) -> Vec<i8> {
    (0..n).map(|j| if (k >> (n - 1 - j)) & 1 == 1 { -1 } else { 1 }).collect()
}
