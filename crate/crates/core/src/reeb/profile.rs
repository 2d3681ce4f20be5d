use serde::{Deserialize, Serialize};

use super::poly::Poly;
use crate::error::{Error, Result};

/// Sampled `ℏ` values at increasing action coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleTable {
    pub j: Vec<f64>,
    pub h: Vec<f64>,
}

/// `ℏ` on one edge: either a polynomial in `J` or a sample table read
/// through its monotone cubic (Fritsch-Carlson) interpolant.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Poly(Poly),
    Samples(SampleTable),
}

/// A polynomial piece `ℏ(J) = poly(J − origin)` on `[lo, hi]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Piece {
    pub lo: f64,
    pub hi: f64,
    pub origin: f64,
    pub poly: Poly,
}

impl Piece {
    pub fn value(&self, j: f64) -> f64 {
        self.poly.eval(j - self.origin)
    }
}

impl SampleTable {
    pub fn new(j: Vec<f64>, h: Vec<f64>) -> Result<Self> {
        let t = Self { j, h };
        t.check()?;
        Ok(t)
    }

    fn check(&self) -> Result<()> {
        if self.j.len() != self.h.len() || self.j.len() < 2 {
            return Err(Error::InvalidTree("sample table needs ≥ 2 matching (j, h) pairs".into()));
        }
        if self.j.windows(2).any(|w| w[1].partial_cmp(&w[0]) != Some(std::cmp::Ordering::Greater)) {
            return Err(Error::InvalidTree("sample abscissae must increase strictly".into()));
        }
        if self.h.iter().chain(&self.j).any(|v| !v.is_finite()) {
            return Err(Error::InvalidTree("non-finite sample".into()));
        }
        Ok(())
    }

    /// Fritsch-Carlson slopes.
    fn slopes(&self) -> Vec<f64> {
        let n = self.j.len();
        let h: Vec<f64> = self.j.windows(2).map(|w| w[1] - w[0]).collect();
        let d: Vec<f64> = (0..n - 1).map(|k| (self.h[k + 1] - self.h[k]) / h[k]).collect();
        if n == 2 {
            return vec![d[0]; 2];
        }
        let mut m = vec![0.0; n];
        for k in 1..n - 1 {
            if d[k - 1] * d[k] > 0.0 {
                let (w1, w2) = (2.0 * h[k] + h[k - 1], h[k] + 2.0 * h[k - 1]);
                m[k] = (w1 + w2) / (w1 / d[k - 1] + w2 / d[k]);
            }
        }
        let end = |h0: f64, h1: f64, d0: f64, d1: f64| {
            let s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
            if s * d0 <= 0.0 {
                0.0
            } else if d0 * d1 <= 0.0 && s.abs() > 3.0 * d0.abs() {
                3.0 * d0
            } else {
                s
            }
        };
        m[0] = end(h[0], h[1], d[0], d[1]);
        m[n - 1] = end(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
        m
    }

    fn pieces(&self) -> Vec<Piece> {
        let m = self.slopes();
        (0..self.j.len() - 1)
            .map(|k| {
                let (x0, x1) = (self.j[k], self.j[k + 1]);
                let h = x1 - x0;
                let delta = (self.h[k + 1] - self.h[k]) / h;
                let c2 = (3.0 * delta - 2.0 * m[k] - m[k + 1]) / h;
                let c3 = (m[k] + m[k + 1] - 2.0 * delta) / (h * h);
                Piece {
                    lo: x0,
                    hi: x1,
                    origin: x0,
                    poly: Poly::new(vec![self.h[k], m[k], c2, c3]),
                }
            })
            .collect()
    }
}

impl Profile {
    /// Polynomial pieces covering `[lo, hi]`.
    pub fn pieces(&self, lo: f64, hi: f64) -> Vec<Piece> {
        match self {
            Profile::Poly(p) => vec![Piece {
                lo,
                hi,
                origin: 0.0,
                poly: p.clone(),
            }],
            Profile::Samples(t) => t.pieces(),
        }
    }

    pub fn value(&self, j: f64) -> f64 {
        match self {
            Profile::Poly(p) => p.eval(j),
            Profile::Samples(t) => {
                let pieces = t.pieces();
                let k = pieces.partition_point(|p| p.hi < j).min(pieces.len() - 1);
                pieces[k].value(j)
            }
        }
    }

    pub(crate) fn check(&self, lo: f64, hi: f64, tol: f64) -> Result<()> {
        if let Profile::Samples(t) = self {
            t.check()?;
            let (a, b) = (t.j[0], t.j[t.j.len() - 1]);
            if (a - lo).abs() > tol || (b - hi).abs() > tol {
                return Err(Error::InvalidTree(format!(
                    "samples span [{a}, {b}] but the edge is [{lo}, {hi}]"
                )));
            }
        }
        Ok(())
    }

    /// Largest polynomial degree among the pieces.
    pub fn degree(&self) -> usize {
        match self {
            Profile::Poly(p) => p.degree(),
            Profile::Samples(_) => 3,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pchip_interpolates_and_preserves_monotonicity() {
        let j = vec![0.0, 0.1, 0.2, 0.3, 0.5];
        let h = vec![1.0, 0.9, 0.5, 0.45, 0.0];
        let p = Profile::Samples(SampleTable::new(j.clone(), h.clone()).unwrap());
        for (x, y) in j.iter().zip(&h) {
            assert!((p.value(*x) - y).abs() < 1e-14);
        }
        let mut prev = f64::INFINITY;
        for k in 0..=500 {
            let v = p.value(0.5 * k as f64 / 500.0);
            assert!(v <= prev + 1e-14);
            prev = v;
        }
    }

    #[test]
    fn pchip_is_exact_on_lines() {
        let t = SampleTable::new(vec![0.0, 0.2, 0.25, 0.5], vec![0.5, 0.3, 0.25, 0.0]).unwrap();
        for piece in t.pieces() {
            assert!((piece.poly.derivative().eval(0.01) + 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(SampleTable::new(vec![0.0, 0.0], vec![1.0, 2.0]).is_err());
        assert!(SampleTable::new(vec![0.0], vec![1.0]).is_err());
    }
}
