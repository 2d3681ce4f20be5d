//! Closed-form homogenized ω-signatures on the pure braids `η_{i,n}` and
//! on full twists, and the triangular matrix certifying that the
//! ω-signature family spans the restrictions to the abelian subgroup they
//! generate.

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

fn r(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

fn check_theta(theta: Rational64) -> Result<()> {
    if theta < Rational64::zero() || theta > Rational64::one() {
        return Err(Error::AngleOutOfRange(theta.to_string()));
    }
    Ok(())
}

/// Homogenized classical signature of `η_{i,n}`: `i` for even `i`, `i − 1`
/// for odd `i`.
pub fn eta_sign_tilde(i: usize) -> Result<i64> {
    if i < 2 {
        return Err(Error::InvalidArgument(format!("eta index {i} < 2")));
    }
    let i = i as i64;
    Ok(if i % 2 == 0 { i } else { i - 1 })
}

/// Homogenized ω(θ)-signature of `η_{i,n}` (independent of `n`).
pub fn eta_omega_tilde(i: usize, theta: Rational64) -> Result<Rational64> {
    if i < 2 {
        return Err(Error::InvalidArgument(format!("eta index {i} < 2")));
    }
    check_theta(theta)?;
    let ii = i as i64;
    if theta <= Rational64::new(1, ii) {
        return Ok(r(4 * (ii - 1)) * theta);
    }
    if theta >= Rational64::new(ii - 1, ii) {
        return Ok(r(4 * (ii - 1)) * (Rational64::one() - theta));
    }
    // (l-1)/i < θ ≤ l/i with 2 ≤ l ≤ i-1
    let l = (theta * r(ii)).ceil().to_integer();
    if theta <= Rational64::new(l - 1, ii - 1) {
        Ok(r(4 * (l - 1)) * (Rational64::one() - theta))
    } else {
        Ok(r(4 * (ii - l)) * theta)
    }
}

/// Homogenized ω(θ)-signature of the full twist `Δ_n²`:
/// `2n(n − 2l + 1)θ + 2l(l − 1)` for `(l−1)/n ≤ θ ≤ l/n`.
pub fn torus_omega_tilde(n: usize, theta: Rational64) -> Result<Rational64> {
    if n < 1 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    check_theta(theta)?;
    let nn = n as i64;
    let l = (theta * r(nn)).ceil().to_integer().max(1);
    Ok(r(2 * nn * (nn - 2 * l + 1)) * theta + r(2 * l * (l - 1)))
}

/// Homogenized ω(θ)-signature of `σ_1⋯σ_{n−1}`; the full-twist value
/// divided by `n`.
pub fn coxeter_omega_tilde(n: usize, theta: Rational64) -> Result<Rational64> {
    Ok(torus_omega_tilde(n, theta)? / r(n as i64))
}

/// Value on `η_{i,n}` of the basis functional `B_k`: `B_2 = sign~_{1/2}` and
/// `B_k = (k−1)·sign~_{1/(k−1)} − k·sign~_{1/k}` for `k ≥ 3`.
fn basis_value(k: usize, i: usize) -> Result<Rational64> {
    if k == 2 {
        return eta_omega_tilde(i, Rational64::new(1, 2));
    }
    let kk = k as i64;
    Ok(r(kk - 1) * eta_omega_tilde(i, Rational64::new(1, kk - 1))?
        - r(kk) * eta_omega_tilde(i, Rational64::new(1, kk))?)
}

/// Values of the basis functionals on `η_{2,n}, …, η_{n,n}`.
///
/// Row `i − 2` corresponds to `η_{i,n}`, column `k − 2` to the basis
/// functional `B_k` (`B_2` being `sign~_{1/2}`). The matrix is lower
/// triangular with diagonal `2, −4, −4, …`.
pub fn basis_matrix(n: usize) -> Result<Vec<Vec<Rational64>>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n = {n} < 2")));
    }
    (2..=n)
        .map(|i| (2..=n).map(|k| basis_value(k, i)).collect())
        .collect()
}
