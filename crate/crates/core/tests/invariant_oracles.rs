mod common;

use std::f64::consts::PI;

use braidqm::diagram::{markov_stabilize, seifert_matrix};
use braidqm::invariants::{
    link_determinant, omega_signature, s_bounds, s_positive, signature_symmetric, tau_bounds, tau_positive, Angle,
};
use braidqm::{torus_braid, BraidWord, IntMatrix};
use common::word;
use nalgebra::{Complex, DMatrix};
use num_rational::Rational64;
use proptest::prelude::*;

type C = Complex<f64>;

fn letters(n: usize, max_len: usize, positive: bool) -> impl Strategy<Value = Vec<i32>> {
    prop::collection::vec((1..n as i32, any::<bool>()), 0..=max_len)
        .prop_map(move |v| v.into_iter().map(|(i, p)| if p || positive { i } else { -i }).collect())
}

fn braid(max_len: usize, positive: bool) -> impl Strategy<Value = BraidWord> {
    (2usize..=5).prop_flat_map(move |n| letters(n, max_len, positive).prop_map(move |w| word(n, &w)))
}

fn raw_signature(b: &BraidWord) -> i64 {
    signature_symmetric(&seifert_matrix(b).symmetrized()).unwrap().signature
}

fn complex_matrix(m: &IntMatrix, f: impl Fn(usize, usize) -> C) -> DMatrix<C> {
    DMatrix::from_fn(m.dim(), m.dim(), f)
}

/// Hermitian form `(1 − ω)V + (1 − ω̄)Vᵀ`.
fn hermitian(v: &IntMatrix, w: C) -> DMatrix<C> {
    let one = C::new(1.0, 0.0);
    complex_matrix(v, |i, j| (one - w) * v[(i, j)] as f64 + (one - w.conj()) * v[(j, i)] as f64)
}

/// Inertia from eigenvalues, or `None` when an eigenvalue is too close to
/// zero to decide.
fn eigen_signature(h: DMatrix<C>) -> Option<i64> {
    if h.nrows() == 0 {
        return Some(0);
    }
    let ev = h.symmetric_eigenvalues();
    if ev.iter().any(|x| x.abs() < 1e-7) {
        return None;
    }
    Some(ev.iter().map(|x| x.signum() as i64).sum())
}

/// Reduced Burau matrix of a braid at `t`.
fn burau(b: &BraidWord, t: C) -> DMatrix<C> {
    let n = b.strands();
    let m = n - 1;
    let mut acc = DMatrix::<C>::identity(m, m);
    for l in b.letters() {
        let i = l.index() - 1;
        let mut g = DMatrix::<C>::identity(m, m);
        let one = C::new(1.0, 0.0);
        g[(i, i)] = -t;
        if i > 0 {
            g[(i, i - 1)] = t;
        }
        if i + 1 < m {
            g[(i, i + 1)] = one;
        }
        if !l.is_positive() {
            g = g.try_inverse().expect("Burau generators are invertible");
        }
        acc *= g;
    }
    acc
}

fn coprime(a: usize, b: usize) -> bool {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a == 1
}

proptest! {
    #[test]
    fn markov_and_conjugation_invariance(b in braid(10, false), g in letters(5, 6, false)) {
        let g: Vec<i32> = g.into_iter().filter(|x| (x.unsigned_abs() as usize) < b.strands()).collect();
        let g = word(b.strands(), &g);
        let base = (raw_signature(&b), link_determinant(&b));
        for other in [markov_stabilize(&b), b.conjugate_by(&g).unwrap()] {
            prop_assert_eq!((raw_signature(&other), link_determinant(&other)), base.clone());
        }
    }

    #[test]
    fn signature_is_a_congruence_invariant(
        entries in prop::collection::vec(-3i64..=3, 36),
        ops in prop::collection::vec((0usize..6, 0usize..6, -2i64..=2), 0..12),
    ) {
        let n = 6;
        let mut m = IntMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                m[(i, j)] = entries[i * n + j];
                m[(j, i)] = entries[i * n + j];
            }
        }
        // unimodular P from elementary row additions
        let mut p = IntMatrix::identity(n);
        for (a, b, k) in ops {
            if a != b {
                let mut e = IntMatrix::identity(n);
                e[(a, b)] = k;
                p = e.mul(&p);
            }
        }
        let moved = p.transpose().mul(&m).mul(&p);
        let (x, y) = (signature_symmetric(&m).unwrap(), signature_symmetric(&moved).unwrap());
        prop_assert_eq!((x.signature, x.nullity), (y.signature, y.nullity));
        let real = DMatrix::from_fn(n, n, |i, j| C::new(m[(i, j)] as f64, 0.0));
        if let Some(s) = eigen_signature(real) {
            prop_assert_eq!(s, x.signature);
        }
    }

    #[test]
    fn omega_signature_matches_eigenvalues(b in braid(12, false), k in 1i64..37) {
        let v = seifert_matrix(&b).matrix;
        let theta = Angle::from_ratio(k, 37).unwrap();
        let r = omega_signature(&v, theta);
        if let Some(s) = eigen_signature(hermitian(&v, theta.omega())) {
            prop_assert_eq!(s, r.signature);
            prop_assert!(!r.degenerate);
        }
    }

    #[test]
    fn alexander_modulus_matches_burau(b in braid(12, false)) {
        prop_assume!(b.cycle_count() == 1);
        let n = b.strands();
        let w = C::from_polar(1.0, 2.0 * PI * 0.137);
        let v = seifert_matrix(&b).matrix;
        let seifert = complex_matrix(&v, |i, j| C::new(v[(i, j)] as f64, 0.0) - w * v[(j, i)] as f64);
        let lhs = if v.dim() == 0 { 1.0 } else { seifert.determinant().norm() };
        let geometric: C = (0..n).map(|k| w.powu(k as u32)).sum();
        let rhs = (DMatrix::<C>::identity(n - 1, n - 1) - burau(&b, w)).determinant().norm() / geometric.norm();
        prop_assert!((lhs - rhs).abs() <= 1e-8 * lhs.max(1.0), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn positive_knot_formulas(b in braid(14, true)) {
        prop_assume!(b.cycle_count() == 1);
        let s = s_positive(&b).unwrap();
        prop_assert_eq!(Rational64::from(s), tau_positive(&b).unwrap() * 2);
        prop_assert!(s_bounds(&b).unwrap().contains(s));
        prop_assert!(tau_bounds(&b).unwrap().contains(tau_positive(&b).unwrap()));
        prop_assert_eq!(s_bounds(&b).unwrap().width(), 2 * (b.strands() as i64 - 1));
    }
}

/// Litherland: for `ω = e^{2πiθ}` the signature of the positive torus knot
/// `T(p, q)` is `#{i/p + j/q ∉ [θ, θ + 1]} − #{i/p + j/q ∈ (θ, θ + 1)}`.
#[test]
fn torus_knots_follow_litherland() {
    for p in 2..=5usize {
        for q in p + 1..=11 {
            if !coprime(p, q) {
                continue;
            }
            let v = seifert_matrix(&torus_braid(p, q).unwrap()).matrix;
            for k in [5i64, 19, 31, 48, 60, 83] {
                let theta = k as f64 / 97.0;
                let mut count = 0i64;
                for i in 1..p {
                    for j in 1..q {
                        let x = i as f64 / p as f64 + j as f64 / q as f64;
                        count += if theta < x && x < theta + 1.0 { -1 } else { 1 };
                    }
                }
                let r = omega_signature(&v, Angle::from_ratio(k, 97).unwrap());
                assert_eq!(r.signature, count, "T({p},{q}) at {k}/97");
                assert!(!r.degenerate);
            }
        }
    }
}

#[test]
fn two_strand_torus_knots() {
    for q in (3..=21).step_by(2) {
        let b = torus_braid(2, q).unwrap();
        assert_eq!(raw_signature(&b), -(q as i64 - 1));
        assert_eq!(link_determinant(&b).to_string(), q.to_string());
    }
}
