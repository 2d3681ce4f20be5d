//! Signature of Hermitian forms by sparse symmetric congruence elimination.
//!
//! Rows are eliminated in index order, so banded inputs (Seifert matrices of
//! braid closures with loops sorted by position) stay banded.

use std::collections::BTreeMap;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

pub(crate) trait Entry:
    Clone
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn magnitude(&self) -> f64;
    /// Sign of the real part (diagonal entries and 2×2 determinants of a
    /// Hermitian form are real).
    fn real_sign(&self) -> i64;
}

impl Entry for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
    fn real_sign(&self) -> i64 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
}

impl Entry for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn real_sign(&self) -> i64 {
        if self.re > 0.0 {
            1
        } else if self.re < 0.0 {
            -1
        } else {
            0
        }
    }
}

/// Pivot selection rule.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Pivoting {
    /// Exact arithmetic: 1×1 pivot on any nonzero diagonal, otherwise a 2×2
    /// block with the nearest nonzero off-diagonal entry.
    Exact,
    /// Floating point: Bunch-Kaufman partial pivoting; entries below
    /// `tol · max|H|` count as zero.
    Tolerance(f64),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub(crate) struct Inertia {
    pub signature: i64,
    pub nullity: usize,
    /// A null direction was declared by tolerance rather than exact zero.
    pub degenerate: bool,
}

struct Sparse<T> {
    rows: Vec<BTreeMap<usize, T>>,
    alive: Vec<bool>,
}

impl<T: Entry> Sparse<T> {
    fn get(&self, i: usize, j: usize) -> T {
        self.rows[i].get(&j).cloned().unwrap_or_else(T::zero)
    }

    fn max_offdiag(&self, k: usize) -> Option<(usize, f64)> {
        self.rows[k]
            .iter()
            .filter(|(&j, _)| j != k)
            .map(|(&j, v)| (j, v.magnitude()))
            .fold(None, |best, (j, m)| match best {
                Some((_, bm)) if bm >= m => best,
                _ => Some((j, m)),
            })
    }

    fn nearest_offdiag(&self, k: usize) -> Option<usize> {
        self.rows[k]
            .iter()
            .filter(|(&j, v)| j != k && !v.is_zero())
            .map(|(&j, _)| j)
            .min_by_key(|&j| (j.abs_diff(k), j))
    }

    fn remove(&mut self, pivots: &[usize]) {
        for &p in pivots {
            let neighbours: Vec<usize> = self.rows[p].keys().copied().collect();
            for j in neighbours {
                if j != p {
                    self.rows[j].remove(&p);
                }
            }
            self.rows[p].clear();
            self.alive[p] = false;
        }
    }

    fn neighbours(&self, pivots: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = pivots
            .iter()
            .flat_map(|&p| self.rows[p].keys().copied())
            .filter(|j| !pivots.contains(j))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn update(&mut self, i: usize, l: usize, delta: T, prune: f64) {
        let v = self.get(i, l) - delta;
        if v.is_zero() || v.magnitude() <= prune {
            self.rows[i].remove(&l);
        } else {
            self.rows[i].insert(l, v);
        }
    }

    fn eliminate_one(&mut self, k: usize, prune: f64) -> i64 {
        let d = self.get(k, k);
        let nb = self.neighbours(&[k]);
        let col: Vec<T> = nb.iter().map(|&i| self.get(i, k)).collect();
        let row: Vec<T> = nb.iter().map(|&l| self.get(k, l) / d.clone()).collect();
        for (a, &i) in nb.iter().enumerate() {
            for (b, &l) in nb.iter().enumerate() {
                self.update(i, l, col[a].clone() * row[b].clone(), prune);
            }
        }
        self.remove(&[k]);
        d.real_sign()
    }

    fn eliminate_two(&mut self, k: usize, r: usize, prune: f64) -> i64 {
        let (akk, akr, ark, arr) = (self.get(k, k), self.get(k, r), self.get(r, k), self.get(r, r));
        let det = akk.clone() * arr.clone() - akr.clone() * ark.clone();
        let nb = self.neighbours(&[k, r]);
        // B⁻¹ = adj(B)/det
        let (b00, b01, b10, b11) = (
            arr / det.clone(),
            -akr / det.clone(),
            -ark / det.clone(),
            akk.clone() / det.clone(),
        );
        let left: Vec<(T, T)> = nb.iter().map(|&i| (self.get(i, k), self.get(i, r))).collect();
        let right: Vec<(T, T)> = nb.iter().map(|&l| (self.get(k, l), self.get(r, l))).collect();
        for (a, &i) in nb.iter().enumerate() {
            let (x0, x1) = left[a].clone();
            let y0 = x0.clone() * b00.clone() + x1.clone() * b10.clone();
            let y1 = x0 * b01.clone() + x1 * b11.clone();
            for (b, &l) in nb.iter().enumerate() {
                let (z0, z1) = right[b].clone();
                self.update(i, l, y0.clone() * z0 + y1.clone() * z1, prune);
            }
        }
        self.remove(&[k, r]);
        match det.real_sign() {
            s if s < 0 => 0,
            _ => 2 * akk.real_sign(),
        }
    }
}

/// Inertia of the Hermitian matrix given by its nonzero entries `(i, j, h_ij)`
/// (both triangles must be supplied).
pub(crate) fn inertia<T: Entry>(dim: usize, entries: Vec<(usize, usize, T)>, pivoting: Pivoting) -> Inertia {
    let mut m = Sparse {
        rows: vec![BTreeMap::new(); dim],
        alive: vec![true; dim],
    };
    let mut scale: f64 = 0.0;
    for (i, j, v) in entries {
        if !v.is_zero() {
            scale = scale.max(v.magnitude());
            m.rows[i].insert(j, v);
        }
    }
    let (tol, prune) = match pivoting {
        Pivoting::Exact => (0.0, 0.0),
        Pivoting::Tolerance(t) => (t * scale, 1e-15 * scale),
    };

    const ALPHA: f64 = 0.640_388_203_202_208; // (1 + √17)/8
    let mut out = Inertia::default();
    let mut k = 0;
    while k < dim {
        if !m.alive[k] {
            k += 1;
            continue;
        }
        let akk = m.get(k, k);
        match pivoting {
            Pivoting::Exact => {
                if !akk.is_zero() {
                    out.signature += m.eliminate_one(k, prune);
                } else if let Some(r) = m.nearest_offdiag(k) {
                    out.signature += m.eliminate_two(k, r, prune);
                } else {
                    out.nullity += 1;
                    m.remove(&[k]);
                }
            }
            Pivoting::Tolerance(_) => {
                let dkk = akk.magnitude();
                let (r, lambda) = m.max_offdiag(k).unwrap_or((k, 0.0));
                if dkk <= tol && lambda <= tol {
                    out.nullity += 1;
                    out.degenerate = true;
                    m.remove(&[k]);
                } else if dkk >= ALPHA * lambda {
                    out.signature += m.eliminate_one(k, prune);
                } else {
                    let sigma = m.max_offdiag(r).map_or(0.0, |(_, s)| s);
                    if dkk * sigma >= ALPHA * lambda * lambda {
                        out.signature += m.eliminate_one(k, prune);
                    } else if m.get(r, r).magnitude() >= ALPHA * sigma {
                        // k stays the smallest live index and is revisited
                        out.signature += m.eliminate_one(r, prune);
                    } else {
                        out.signature += m.eliminate_two(k, r, prune);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn exact(rows: &[&[i64]]) -> Inertia {
        let n = rows.len();
        let mut e = Vec::new();
        for i in 0..n {
            for j in 0..n {
                e.push((i, j, BigRational::from_integer(BigInt::from(rows[i][j]))));
            }
        }
        inertia(n, e, Pivoting::Exact)
    }

    #[test]
    fn hyperbolic_block() {
        assert_eq!(exact(&[&[0, 1], &[1, 0]]).signature, 0);
        assert_eq!(exact(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 0]]).nullity, 1);
    }

    #[test]
    fn zero_diagonal_chain() {
        // path graph adjacency on 4 vertices: eigenvalues ±1.618, ±0.618
        let r = exact(&[&[0, 1, 0, 0], &[1, 0, 1, 0], &[0, 1, 0, 1], &[0, 0, 1, 0]]);
        assert_eq!((r.signature, r.nullity), (0, 0));
        // path on 3 vertices: eigenvalues ±√2, 0
        let r = exact(&[&[0, 1, 0], &[1, 0, 1], &[0, 1, 0]]);
        assert_eq!((r.signature, r.nullity), (0, 1));
    }

    #[test]
    fn float_path_flags_near_null() {
        let e = vec![
            (0, 0, Complex64::new(1.0, 0.0)),
            (0, 1, Complex64::new(1.0, 0.0)),
            (1, 0, Complex64::new(1.0, 0.0)),
            (1, 1, Complex64::new(1.0, 0.0)),
        ];
        let r = inertia(2, e, Pivoting::Tolerance(1e-9));
        assert_eq!((r.signature, r.nullity, r.degenerate), (1, 1, true));
    }
}
