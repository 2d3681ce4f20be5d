mod common;

use braidqm::invariants::{sign_omega_link, Angle};
use braidqm::quasimorphism::{
    basis_matrix, eta_omega_tilde, eta_sign_tilde, hat_invariant_with, homogenize, torus_omega_tilde,
    QuasiMorphism, Selector,
};
use braidqm::BraidWord;
use common::word;
use num_rational::Rational64;
use num_traits::{One, Pow, Zero};
use proptest::prelude::*;

fn letters(n: usize, max_len: usize) -> impl Strategy<Value = Vec<i32>> {
    prop::collection::vec((1..n as i32, any::<bool>()), 0..=max_len)
        .prop_map(|v| v.into_iter().map(|(i, p)| if p { i } else { -i }).collect())
}

fn pair(max_len: usize) -> impl Strategy<Value = (BraidWord, BraidWord)> {
    (2usize..=4).prop_flat_map(move |n| {
        (letters(n, max_len), letters(n, max_len)).prop_map(move |(a, b)| (word(n, &a), word(n, &b)))
    })
}

fn binomial(n: usize, k: usize) -> Rational64 {
    (0..k).fold(Rational64::one(), |acc, j| acc * Rational64::from((n - j) as i64) / Rational64::from((j + 1) as i64))
}

#[test]
fn signature_measure_collapses_to_closed_weight() {
    let half = Rational64::new(1, 2);
    for n in 2..=9usize {
        for k in 0..=20i64 {
            let j = Rational64::new(k, 40);
            let lhs: Rational64 = (2..=n)
                .map(|i| {
                    Rational64::from(eta_sign_tilde(i).unwrap() * i as i64)
                        * binomial(n, i)
                        * j.pow((i - 1) as i32)
                        * (half - j).pow((n - i) as i32)
                })
                .sum();
            let nn = Rational64::from(n as i64);
            let rhs = nn / 2
                * (half.pow((n - 1) as i32) * (Rational64::one() + Rational64::from(4 * (n as i64 - 1)) * j)
                    - (half - j * 2).pow((n - 1) as i32));
            assert_eq!(lhs, rhs, "n = {n}, J = {j}");
        }
    }
}

#[test]
fn eta_values_add_up_to_the_full_twist() {
    for n in 2..=8usize {
        for k in 0..=60i64 {
            let theta = Rational64::new(k, 60);
            let sum: Rational64 = (2..=n).map(|i| eta_omega_tilde(i, theta).unwrap()).sum();
            assert_eq!(sum, torus_omega_tilde(n, theta).unwrap(), "n = {n}, theta = {theta}");
        }
        for i in 2..=n {
            let at_half = eta_omega_tilde(i, Rational64::new(1, 2)).unwrap();
            assert_eq!(at_half, Rational64::from(eta_sign_tilde(i).unwrap()));
            assert_eq!(eta_omega_tilde(i, Rational64::zero()).unwrap(), Rational64::zero());
            assert_eq!(eta_omega_tilde(i, Rational64::one()).unwrap(), Rational64::zero());
        }
    }
}

#[test]
fn basis_matrix_is_invertible_for_every_n() {
    for n in 2..=12 {
        let m = basis_matrix(n).unwrap();
        for (r, row) in m.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                let want = match (r, c) {
                    (0, 0) => Some(Rational64::from(2)),
                    _ if r == c => Some(Rational64::from(-4)),
                    _ if c > r => Some(Rational64::zero()),
                    _ => None,
                };
                if let Some(w) = want {
                    assert_eq!(*x, w, "n = {n}, entry ({r}, {c})");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn completing_braid_choice_moves_signature_boundedly(b in (2usize..=5).prop_flat_map(|n| letters(n, 12).prop_map(move |w| word(n, &w)))) {
        let theta = Angle::half();
        let f = |sel| hat_invariant_with(|k| Ok(sign_omega_link(k, theta).signature as f64), &b, sel).unwrap();
        let gap = (f(Selector::Ascending) - f(Selector::Descending)).abs();
        prop_assert!(gap <= 2.0 * (b.strands() as f64 - 1.0), "gap {}", gap);
    }

    #[test]
    fn defect_stays_below_the_proved_bound((a, b) in pair(10), k in 1i64..=6) {
        let n = a.strands();
        for phi in [QuasiMorphism::sign_hat(Angle::half(), n), QuasiMorphism::sign_hat(Angle::from_ratio(k, 7).unwrap(), n)] {
            let d = (phi.eval(&a.concat(&b).unwrap()).unwrap() - phi.eval(&a).unwrap() - phi.eval(&b).unwrap()).abs();
            prop_assert!(d <= phi.defect_bound().unwrap(), "{} defect {}", phi.name(), d);
        }
    }

    #[test]
    fn quasi_conjugation_invariance((a, g) in pair(8)) {
        let n = a.strands();
        let conj = g.concat(&a).unwrap().concat(&g.inverse()).unwrap();
        let lk = QuasiMorphism::lk();
        prop_assert_eq!(lk.eval(&conj).unwrap(), lk.eval(&a).unwrap());
        let phi = QuasiMorphism::sign_hat(Angle::half(), n);
        let d = phi.defect_bound().unwrap();
        prop_assert!((phi.eval(&conj).unwrap() - phi.eval(&a).unwrap()).abs() <= 2.0 * d);
    }

    #[test]
    fn homogenization_brackets_overlap((a, _) in pair(5), p in 4u32..=10) {
        let phi = QuasiMorphism::sign_hat(Angle::half(), a.strands());
        let x = homogenize(&phi, &a, p).unwrap();
        let y = homogenize(&phi, &a, 2 * p).unwrap();
        prop_assert!((x.value - y.value).abs() <= x.bracket + y.bracket);
        prop_assert!(!x.heuristic);
    }
}

#[test]
fn homogenized_signature_of_eta_matches_closed_form() {
    for n in 2..=4 {
        let phi = QuasiMorphism::sign_hat(Angle::half(), n);
        for i in 2..=n {
            let e = braidqm::eta(i, n).unwrap();
            let est = homogenize(&phi, &e, 30).unwrap();
            assert!(est.contains(eta_sign_tilde(i).unwrap() as f64), "eta_{i},{n}: {est:?}");
        }
    }
}
