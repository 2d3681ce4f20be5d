//! Integral formulas on Reeb trees: the Gambaudo-Ghys quasi-morphism as
//! `∫_T ℏ′ dμ`, its closed form for the signature, the Calabi invariant and
//! the large-`n` ratio.
//!
//! All integrands are polynomials on each piece, so Gauss-Legendre rules of
//! sufficient order integrate them exactly up to rounding.

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::measure::MeasureSpec;
use super::profile::Piece;
use super::quadrature::{integrate_adaptive, integrate_gl};
use super::radial::RadialProfile;
use super::tree::ReebTree;
use crate::error::{Error, Result};

fn nodes_for(degree: usize) -> usize {
    degree / 2 + 2
}

fn pieces(tree: &ReebTree) -> impl Iterator<Item = Piece> + '_ {
    tree.edges.iter().flat_map(|e| e.hbar.pieces(e.lo, e.hi))
}

/// `Σ_pieces ∫ ℏ′(J)·w(J) dJ` for a weight `w` that is a polynomial of
/// degree `w_degree`.
fn integrate_against_derivative<W: Fn(f64) -> f64>(tree: &ReebTree, w_degree: usize, w: W) -> f64 {
    pieces(tree)
        .map(|p| {
            let d = p.poly.derivative();
            let m = nodes_for(d.degree() + w_degree);
            integrate_gl(|j| d.eval(j - p.origin) * w(j), p.lo, p.hi, m)
        })
        .sum()
}

/// `Φ̃(h_1) = ∫_T ℏ′ dμ`.
pub fn gg_integral(tree: &ReebTree, m: &MeasureSpec) -> f64 {
    integrate_against_derivative(tree, m.n - 1, |j| m.density_unchecked(j))
}

/// Calabi invariant `−4π ∫_T ℏ dJ`.
pub fn calabi(tree: &ReebTree) -> f64 {
    -4.0 * PI
        * pieces(tree)
            .map(|p| integrate_gl(|j| p.value(j), p.lo, p.hi, nodes_for(p.poly.degree())))
            .sum::<f64>()
}

/// `4π ∫_T J ℏ′ dJ`, equal to [`calabi`] when boundary terms cancel.
pub fn calabi_by_parts(tree: &ReebTree) -> f64 {
    4.0 * PI * integrate_against_derivative(tree, 1, |j| j)
}

fn closed_weight(n: usize) -> impl Fn(f64) -> f64 {
    move |j: f64| 1.0 + 4.0 * (n as f64 - 1.0) * j - (1.0 - 4.0 * j).powi(n as i32 - 1)
}

/// Closed form of the signature quasi-morphism:
/// `nπⁿ ∫_T (1 + 4(n−1)J − (1−4J)^{n−1}) ℏ′ dJ`.
pub fn sign_gg_closed(tree: &ReebTree, n: usize) -> f64 {
    n as f64 * PI.powi(n as i32) * integrate_against_derivative(tree, n - 1, closed_weight(n))
}

/// `sign_gg_closed(T, n) / (π^{n−1} n (n−1))`, computed without forming
/// the large powers of π.
pub fn asym_ratio(tree: &ReebTree, n: usize) -> f64 {
    PI / (n as f64 - 1.0) * integrate_against_derivative(tree, n - 1, closed_weight(n))
}

/// `∫_T |ℏ′| dJ`.
pub fn total_variation(tree: &ReebTree) -> Result<f64> {
    pieces(tree)
        .map(|p| {
            let d = p.poly.derivative();
            integrate_adaptive(|j| d.eval(j - p.origin).abs(), p.lo, p.hi, 1e-12)
        })
        .sum()
}

/// Bound `2π ∫|ℏ′| / (n − 1)` on `|asym_ratio(T, n) − calabi(T)|`.
pub fn asym_bound(tree: &ReebTree, n: usize) -> Result<f64> {
    Ok(2.0 * PI * total_variation(tree)? / (n as f64 - 1.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymRow {
    pub n: usize,
    pub ratio: f64,
    pub calabi: f64,
    pub bound: f64,
}

pub fn asymptotics_table(tree: &ReebTree, ns: impl IntoIterator<Item = usize>) -> Result<Vec<AsymRow>> {
    let c = calabi(tree);
    let tv = total_variation(tree)?;
    ns.into_iter()
        .map(|n| {
            if n < 2 {
                return Err(Error::InvalidArgument(format!("n = {n} < 2")));
            }
            Ok(AsymRow {
                n,
                ratio: asym_ratio(tree, n),
                calabi: c,
                bound: 2.0 * PI * tv / (n as f64 - 1.0),
            })
        })
        .collect()
}

pub fn asymptotics_csv(rows: &[AsymRow]) -> String {
    let mut out = String::from("n,ratio,calabi,bound\n");
    for r in rows {
        writeln!(out, "{},{:.12e},{:.12e},{:.12e}", r.n, r.ratio, r.calabi, r.bound).expect("string write");
    }
    out
}

/// `(∫_{D²} H, 2π Σ ∫ ℏ dJ)` for a radial Hamiltonian and a tree.
///
/// The left side is integrated in polar coordinates directly from `H(r)`.
pub fn disc_consistency(h: &RadialProfile, tree: &ReebTree) -> Result<(f64, f64)> {
    let expected = h.to_tree()?;
    let same = expected.edges.len() == tree.edges.len()
        && expected.parent == tree.parent
        && expected
            .edges
            .iter()
            .zip(&tree.edges)
            .all(|(a, b)| (a.lo - b.lo).abs() <= 1e-12 && (a.hi - b.hi).abs() <= 1e-12);
    if !same {
        return Err(Error::ProfileMismatch(
            "radial annuli do not match the tree's edges".into(),
        ));
    }
    let mut lhs = 0.0;
    for (lo, hi) in h.radii() {
        lhs += 2.0 * PI * integrate_adaptive(|r| h.value_at_radius(r) * r, lo, hi, 1e-13)?;
    }
    let rhs = -calabi(tree) / 2.0;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reeb::poly::Poly;

    fn battery(a: f64) -> ReebTree {
        ReebTree::single_edge(Poly::new(vec![a / 2.0, -a])).unwrap()
    }

    #[test]
    fn battery_values() {
        let a = 1.7;
        let t = battery(a);
        let sig = gg_integral(&t, &MeasureSpec::signature(2).unwrap());
        assert!((sig + 2.0 * PI * PI * a).abs() < 1e-12);
        let lk = gg_integral(&t, &MeasureSpec::lk(2).unwrap());
        assert!((lk - sig).abs() < 1e-12);
        assert!((sign_gg_closed(&t, 2) - sig).abs() < 1e-12);
        assert!((calabi(&t) + PI * a / 2.0).abs() < 1e-14);
        assert!((calabi_by_parts(&t) - calabi(&t)).abs() < 1e-14);
    }

    #[test]
    fn zero_profile() {
        let t = ReebTree::single_edge(Poly::zero()).unwrap();
        assert_eq!(gg_integral(&t, &MeasureSpec::signature(5).unwrap()), 0.0);
        assert_eq!(calabi(&t), 0.0);
        assert_eq!(asym_ratio(&t, 9), 0.0);
        assert_eq!(gg_integral(&ReebTree::empty(), &MeasureSpec::signature(3).unwrap()), 0.0);
    }

    #[test]
    fn ratio_bound_at_twenty() {
        let a = 1.0;
        let t = battery(a);
        let err = (asym_ratio(&t, 20) - calabi(&t)).abs();
        assert!(err <= PI * (a / 2.0) * 2.0 / 19.0);
        assert!((asym_bound(&t, 20).unwrap() - PI * a / 19.0).abs() < 1e-12);
    }

    #[test]
    fn disc_consistency_battery() {
        let a = 2.5;
        let h = RadialProfile::new(vec![(0.0, 0.5, Poly::new(vec![a / 2.0, -a]))]).unwrap();
        let (lhs, rhs) = disc_consistency(&h, &h.to_tree().unwrap()).unwrap();
        assert!((lhs - PI * a / 4.0).abs() < 1e-12);
        assert!((rhs - PI * a / 4.0).abs() < 1e-12);
        assert!(matches!(disc_consistency(&h, &ReebTree::empty()), Err(Error::ProfileMismatch(_))));
    }

    #[test]
    fn csv_header() {
        let rows = asymptotics_table(&battery(1.0), [2, 3]).unwrap();
        let csv = asymptotics_csv(&rows);
        assert!(csv.starts_with("n,ratio,calabi,bound\n2,"));
        assert_eq!(csv.lines().count(), 3);
    }
}
