use serde::{Deserialize, Serialize};

use super::poly::Poly;
use super::profile::Profile;
use crate::error::{Error, Result};

/// An edge of the Reeb tree: an annulus of level curves with action
/// coordinate `J ∈ [lo, hi]` and profile `ℏ(J)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub lo: f64,
    pub hi: f64,
    #[serde(flatten)]
    pub hbar: Profile,
}

/// Rooted Reeb tree of a Morse-type Hamiltonian on the disc.
///
/// Vertex `k < E` is the leaf-side end of edge `k` (where `J = lo`), vertex
/// `E` is the root (the boundary region where `H ≡ 0`), and `parent[k]` is
/// the vertex at the root-side end of edge `k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReebTree {
    pub edges: Vec<Edge>,
    pub parent: Vec<usize>,
    pub root: usize,
}

/// Tolerance for matching action coordinates and profile values.
const TOL: f64 = 1e-9;

impl ReebTree {
    /// The tree of `H ≡ 0`: root only.
    pub fn empty() -> Self {
        Self {
            edges: Vec::new(),
            parent: Vec::new(),
            root: 0,
        }
    }

    /// One edge over the whole disc, `J ∈ [0, 1/2]`.
    pub fn single_edge(hbar: Poly) -> Result<Self> {
        Self::new(
            vec![Edge {
                lo: 0.0,
                hi: 0.5,
                hbar: Profile::Poly(hbar),
            }],
            vec![1],
        )
    }

    pub fn new(edges: Vec<Edge>, parent: Vec<usize>) -> Result<Self> {
        let t = Self {
            root: edges.len(),
            edges,
            parent,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let t: ReebTree = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        t.validate()?;
        Ok(t)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tree serializes")
    }

    pub fn children(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&k| self.parent[k] == v).collect()
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&k| self.children(k).is_empty()).collect()
    }

    /// Total action `Σ (hi − lo)` = support area / 2π.
    pub fn total_action(&self) -> f64 {
        self.edges.iter().map(|e| e.hi - e.lo).sum()
    }

    pub fn validate(&self) -> Result<()> {
        let e = self.edges.len();
        let bad = |m: String| Err(Error::InvalidTree(m));
        if self.root != e {
            return bad(format!("root must be vertex {e}, got {}", self.root));
        }
        if self.parent.len() != e {
            return bad(format!("{} parents for {e} edges", self.parent.len()));
        }
        for (k, &p) in self.parent.iter().enumerate() {
            if p > e || p == k {
                return bad(format!("edge {k} has invalid parent {p}"));
            }
            // every chain of parents must reach the root
            let (mut v, mut steps) = (p, 0);
            while v != e {
                v = self.parent[v];
                steps += 1;
                if steps > e {
                    return bad(format!("cycle through edge {k}"));
                }
            }
        }
        let scale = self
            .edges
            .iter()
            .flat_map(|ed| [ed.hbar.value(ed.lo).abs(), ed.hbar.value(ed.hi).abs()])
            .fold(1.0, f64::max);
        for (k, ed) in self.edges.iter().enumerate() {
            if !(ed.lo >= 0.0 && ed.hi > ed.lo && ed.hi.is_finite()) {
                return bad(format!("edge {k} has interval [{}, {}]", ed.lo, ed.hi));
            }
            ed.hbar.check(ed.lo, ed.hi, TOL)?;
            let kids = self.children(k);
            let inner: f64 = kids.iter().map(|&c| self.edges[c].hi).sum();
            if (ed.lo - inner).abs() > TOL {
                return bad(format!(
                    "edge {k} starts at J = {} but its children end at total {inner}",
                    ed.lo
                ));
            }
            for c in kids {
                let (a, b) = (self.edges[c].hbar.value(self.edges[c].hi), ed.hbar.value(ed.lo));
                if (a - b).abs() > TOL * scale {
                    return bad(format!("hbar jumps from {a} to {b} between edges {c} and {k}"));
                }
            }
            if self.parent[k] == e {
                let h = ed.hbar.value(ed.hi);
                if h.abs() > TOL * scale {
                    return bad(format!("hbar = {h} at the root end of edge {k}"));
                }
            }
        }
        if self.total_action() > 0.5 + TOL {
            return bad(format!("total action {} exceeds 1/2", self.total_action()));
        }
        Ok(())
    }
}
