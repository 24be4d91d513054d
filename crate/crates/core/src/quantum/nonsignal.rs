//! Non-signalling correlations `p(y_A, y_B | x_A, x_B)` for homomorphism games.

use serde::{Deserialize, Serialize};

use crate::graphs::Graph;
use crate::{Error, Result};

pub const NS_TOL: f64 = 1e-12;

/// Table indexed `((xa·nx + xb)·ny + ya)·ny + yb`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NSCorrelation {
    pub nx: usize,
    pub ny: usize,
    pub table: Vec<f64>,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct NSResiduals {
    pub negativity: f64,
    pub normalization: f64,
    pub alice_marginal: f64,
    pub bob_marginal: f64,
}

impl NSResiduals {
    pub fn max(&self) -> f64 {
        self.negativity.max(self.normalization).max(self.alice_marginal).max(self.bob_marginal)
    }
}

impl NSCorrelation {
    pub fn new(nx: usize, ny: usize, table: Vec<f64>) -> Result<Self> {
        let want = nx * nx * ny * ny;
        if table.len() != want {
            return Err(Error::Shape(format!("table has {} entries, expected {want}", table.len())));
        }
        if table.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidArgument("table has non-finite entries".into()));
        }
        Ok(NSCorrelation { nx, ny, table })
    }

    /// Product of two local deterministic strategies.
    pub fn deterministic(nx: usize, ny: usize, fa: &[usize], fb: &[usize]) -> Result<Self> {
        if fa.len() != nx || fb.len() != nx || fa.iter().chain(fb).any(|&y| y >= ny) {
            return Err(Error::InvalidArgument("strategies must map inputs to outputs".into()));
        }
        let mut c = NSCorrelation { nx, ny, table: vec![0.0; nx * nx * ny * ny] };
        for xa in 0..nx {
            for xb in 0..nx {
                let k = c.index(xa, xb, fa[xa], fb[xb]);
                c.table[k] = 1.0;
            }
        }
        Ok(c)
    }

    pub fn index(&self, xa: usize, xb: usize, ya: usize, yb: usize) -> usize {
        ((xa * self.nx + xb) * self.ny + ya) * self.ny + yb
    }

    pub fn p(&self, xa: usize, xb: usize, ya: usize, yb: usize) -> f64 {
        self.table[self.index(xa, xb, ya, yb)]
    }

    fn alice(&self, xa: usize, xb: usize, ya: usize) -> f64 {
        (0..self.ny).map(|yb| self.p(xa, xb, ya, yb)).sum()
    }

    fn bob(&self, xa: usize, xb: usize, yb: usize) -> f64 {
        (0..self.ny).map(|ya| self.p(xa, xb, ya, yb)).sum()
    }
}

pub fn ns_residuals(p: &NSCorrelation) -> NSResiduals {
    let (nx, ny) = (p.nx, p.ny);
    let negativity = p.table.iter().fold(0.0f64, |m, &v| m.max(-v));
    let mut normalization = 0.0f64;
    let mut alice_marginal = 0.0f64;
    let mut bob_marginal = 0.0f64;
    for xa in 0..nx {
        for xb in 0..nx {
            let total: f64 = (0..ny).map(|ya| p.alice(xa, xb, ya)).sum();
            normalization = normalization.max((total - 1.0).abs());
            for y in 0..ny {
                alice_marginal = alice_marginal.max((p.alice(xa, xb, y) - p.alice(xa, 0, y)).abs());
                bob_marginal = bob_marginal.max((p.bob(xa, xb, y) - p.bob(0, xb, y)).abs());
            }
        }
    }
    NSResiduals { negativity, normalization, alice_marginal, bob_marginal }
}

/// Nonnegative, normalized, and each party's marginal independent of the
/// other's input, all within [`NS_TOL`].
pub fn ns_check(p: &NSCorrelation) -> bool {
    ns_residuals(p).max() <= NS_TOL
}

/// `p(y_A, y_B | x_A, x_B) = 1/2` when `δ(x_A, x_B) = δ(y_A, y_B)`, over `K_2`.
pub fn k2_correlation(x: &Graph) -> NSCorrelation {
    let nx = x.n();
    let mut c = NSCorrelation { nx, ny: 2, table: vec![0.0; nx * nx * 4] };
    for xa in 0..nx {
        for xb in 0..nx {
            for ya in 0..2 {
                for yb in 0..2 {
                    if (xa == xb) == (ya == yb) {
                        let k = c.index(xa, xb, ya, yb);
                        c.table[k] = 0.5;
                    }
                }
            }
        }
    }
    c
}

/// Worst-case probability of losing the `(x, y)` homomorphism game over
/// input pairs: equal inputs need equal outputs, adjacent inputs need
/// adjacent outputs.
pub fn losing_mass(p: &NSCorrelation, x: &Graph, y: &Graph) -> Result<f64> {
    if x.n() != p.nx || y.n() != p.ny {
        return Err(Error::Shape("correlation does not match the game graphs".into()));
    }
    let mut worst = 0.0f64;
    for xa in 0..p.nx {
        for xb in 0..p.nx {
            let mut lost = 0.0;
            for ya in 0..p.ny {
                for yb in 0..p.ny {
                    let loses = if xa == xb { ya != yb } else { x.has_edge(xa, xb) && !y.has_edge(ya, yb) };
                    if loses {
                        lost += p.p(xa, xb, ya, yb);
                    }
                }
            }
            worst = worst.max(lost);
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{complete, cycle, kneser};

    #[test]
    fn k2_on_c5_wins() {
        let c5 = cycle(5).unwrap();
        let p = k2_correlation(&c5);
        assert!(ns_check(&p));
        assert_eq!(losing_mass(&p, &c5, &complete(2).unwrap()).unwrap(), 0.0);
    }

    #[test]
    fn k2_on_petersen() {
        let g = kneser(5, 2).unwrap();
        let p = k2_correlation(&g);
        assert!(ns_check(&p));
        assert_eq!(losing_mass(&p, &g, &complete(2).unwrap()).unwrap(), 0.0);
    }

    #[test]
    fn deterministic_is_ns() {
        let p = NSCorrelation::deterministic(3, 2, &[0, 1, 1], &[1, 0, 1]).unwrap();
        assert!(ns_check(&p));
    }

    #[test]
    fn copying_signals() {
        // Alice outputs Bob's input.
        let (nx, ny) = (2, 2);
        let mut t = vec![0.0; 16];
        for xa in 0..nx {
            for xb in 0..nx {
                t[((xa * nx + xb) * ny + xb) * ny] = 1.0;
            }
        }
        let p = NSCorrelation::new(nx, ny, t).unwrap();
        assert!(!ns_check(&p));
        assert!(ns_residuals(&p).alice_marginal > 0.5);
    }

    #[test]
    fn malformed() {
        assert!(NSCorrelation::new(2, 2, vec![0.0; 15]).is_err());
        assert!(NSCorrelation::new(1, 1, vec![f64::NAN]).is_err());
        let p = NSCorrelation::new(1, 2, vec![0.7, 0.0, 0.0, 0.0]).unwrap();
        assert!(!ns_check(&p));
    }
}
