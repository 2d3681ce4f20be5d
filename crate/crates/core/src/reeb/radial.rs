use serde::{Deserialize, Serialize};

use super::poly::Poly;
use super::profile::Profile;
use super::tree::{Edge, ReebTree};
use crate::error::{Error, Result};

/// One annulus of a radial Hamiltonian: `H = ℏ(J)` for `J = r²/2` in
/// `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Annulus {
    pub lo: f64,
    pub hi: f64,
    pub poly: Poly,
}

/// A radial Hamiltonian `H(r) = ℏ(r²/2)`, piecewise polynomial in the
/// action `J`, vanishing beyond the last annulus.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadialProfile {
    pub pieces: Vec<Annulus>,
}

impl RadialProfile {
    pub fn new(pieces: Vec<(f64, f64, Poly)>) -> Result<Self> {
        let p = Self {
            pieces: pieces
                .into_iter()
                .map(|(lo, hi, poly)| Annulus { lo, hi, poly })
                .collect(),
        };
        p.validate()?;
        Ok(p)
    }

    /// `ℏ(J) = a(J_c − J)²` on `[0, J_c]`: a smooth-at-the-edge bump.
    pub fn quadratic_bump(a: f64, jc: f64) -> Result<Self> {
        Self::new(vec![(0.0, jc, Poly::new(vec![a * jc * jc, -2.0 * a * jc, a]))])
    }

    /// `ℏ(J) = a(1/2 − J)` over the whole disc.
    pub fn linear(a: f64) -> Result<Self> {
        Self::new(vec![(0.0, 0.5, Poly::new(vec![a / 2.0, -a]))])
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidTree(m));
        let mut at = 0.0;
        for (k, a) in self.pieces.iter().enumerate() {
            if (a.lo - at).abs() > 1e-12 || a.hi <= a.lo {
                return bad(format!("annulus {k} is [{}, {}], expected to start at {at}", a.lo, a.hi));
            }
            if k > 0 {
                let prev = &self.pieces[k - 1];
                if (prev.poly.eval(prev.hi) - a.poly.eval(a.lo)).abs() > 1e-9 {
                    return bad(format!("H jumps at J = {}", a.lo));
                }
            }
            at = a.hi;
        }
        if at > 0.5 + 1e-12 {
            return bad(format!("support reaches J = {at} > 1/2"));
        }
        if let Some(last) = self.pieces.last() {
            if last.poly.eval(last.hi).abs() > 1e-9 {
                return bad("H does not vanish at the outer edge of its support".into());
            }
        }
        Ok(())
    }

    /// The chain Reeb tree: annulus `k` is edge `k`, nested inside `k + 1`.
    pub fn to_tree(&self) -> Result<ReebTree> {
        let e = self.pieces.len();
        let edges = self
            .pieces
            .iter()
            .map(|a| Edge {
                lo: a.lo,
                hi: a.hi,
                hbar: Profile::Poly(a.poly.clone()),
            })
            .collect();
        ReebTree::new(edges, (1..=e).collect())
    }

    /// Radial extents `(r_lo, r_hi)` of the annuli.
    pub fn radii(&self) -> Vec<(f64, f64)> {
        self.pieces
            .iter()
            .map(|a| ((2.0 * a.lo).sqrt(), (2.0 * a.hi).sqrt()))
            .collect()
    }

    /// Outer radius of the support.
    pub fn support_radius(&self) -> f64 {
        self.pieces.last().map_or(0.0, |a| (2.0 * a.hi).sqrt())
    }

    fn piece(&self, j: f64) -> Option<&Annulus> {
        let k = self.pieces.partition_point(|a| a.hi < j);
        self.pieces.get(k)
    }

    pub fn hbar(&self, j: f64) -> f64 {
        self.piece(j).map_or(0.0, |a| a.poly.eval(j))
    }

    /// Angular speed `ℏ′(J)`.
    pub fn hbar_prime(&self, j: f64) -> f64 {
        self.piece(j).map_or(0.0, |a| a.poly.derivative().eval(j))
    }

    pub fn value_at_radius(&self, r: f64) -> f64 {
        self.hbar(r * r / 2.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bump_shape() {
        let h = RadialProfile::quadratic_bump(100.0, 0.4).unwrap();
        assert!((h.hbar(0.0) - 16.0).abs() < 1e-12);
        assert_eq!(h.hbar(0.45), 0.0);
        assert!((h.hbar_prime(0.1) + 60.0).abs() < 1e-12);
        assert!((h.support_radius() - 0.8f64.sqrt()).abs() < 1e-15);
        assert_eq!(h.to_tree().unwrap().parent, vec![1]);
    }

    #[test]
    fn chain_tree() {
        let h = RadialProfile::new(vec![
            (0.0, 0.1, Poly::new(vec![0.3, -1.0])),
            (0.1, 0.3, Poly::new(vec![0.3, -1.0])),
        ])
        .unwrap();
        let t = h.to_tree().unwrap();
        assert_eq!(t.parent, vec![1, 2]);
        assert!(RadialProfile::new(vec![(0.0, 0.2, Poly::new(vec![1.0]))]).is_err());
    }
}
