use std::f64::consts::PI;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quasimorphism::{eta_omega_tilde, eta_sign_tilde};

/// Homogenized values `φ̃(η_{i,n})`, `i = 2..=n`, defining the signed
/// measure on the Reeb tree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureSpec {
    pub n: usize,
    pub eta_values: Vec<f64>,
}

pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

impl MeasureSpec {
    pub fn new(n: usize, eta_values: Vec<f64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("n = {n} < 2")));
        }
        if eta_values.len() != n - 1 {
            return Err(Error::InvalidArgument(format!(
                "{} eta values for n = {n}; expected {}",
                eta_values.len(),
                n - 1
            )));
        }
        Ok(Self { n, eta_values })
    }

    /// Classical signature: `φ̃(η_{i,n}) = i` or `i − 1`.
    pub fn signature(n: usize) -> Result<Self> {
        let v = (2..=n).map(|i| eta_sign_tilde(i).map(|s| s as f64)).collect::<Result<_>>()?;
        Self::new(n, v)
    }

    /// The ω(θ)-signature.
    pub fn omega_signature(n: usize, theta: Rational64) -> Result<Self> {
        let v = (2..=n)
            .map(|i| eta_omega_tilde(i, theta).map(|q| *q.numer() as f64 / *q.denom() as f64))
            .collect::<Result<_>>()?;
        Self::new(n, v)
    }

    /// The linking number: `lk(η_{i,n}) = 2(i − 1)`.
    pub fn lk(n: usize) -> Result<Self> {
        Self::new(n, (2..=n).map(|i| 2.0 * (i - 1) as f64).collect())
    }

    /// Density of `μ` with respect to `dJ`.
    pub fn density(&self, j: f64) -> Result<f64> {
        if !(-1e-12..=0.5 + 1e-12).contains(&j) {
            return Err(Error::InvalidArgument(format!("J = {j} outside [0, 1/2]")));
        }
        Ok(self.density_unchecked(j))
    }

    pub(crate) fn density_unchecked(&self, j: f64) -> f64 {
        let n = self.n;
        let sum: f64 = (2..=n)
            .map(|i| {
                self.eta_values[i - 2]
                    * i as f64
                    * binomial(n, i)
                    * j.powi(i as i32 - 1)
                    * (0.5 - j).powi((n - i) as i32)
            })
            .sum();
        (2.0 * PI).powi(n as i32) * sum
    }

    /// `μ([0, 1/2])` from the Beta integrals
    /// `∫_0^{1/2} i·C(n,i)·J^{i−1}(1/2 − J)^{n−i} dJ = 2^{−n}`.
    pub fn total_mass(&self) -> f64 {
        (2.0 * PI).powi(self.n as i32) * self.eta_values.iter().sum::<f64>() / 2f64.powi(self.n as i32)
    }
}

/// Density of `μ` at `J`.
pub fn measure_density(m: &MeasureSpec, j: f64) -> Result<f64> {
    m.density(j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reeb::quadrature::integrate_gl;

    #[test]
    fn two_strand_signature_density() {
        let m = MeasureSpec::signature(2).unwrap();
        for j in [0.0, 0.1, 0.37, 0.5] {
            let want = 16.0 * PI * PI * j;
            assert!((m.density(j).unwrap() - want).abs() <= 1e-12 * want.max(1.0));
        }
    }

    #[test]
    fn zero_at_origin_and_for_zero_values() {
        for n in 2..15 {
            assert_eq!(MeasureSpec::signature(n).unwrap().density(0.0).unwrap(), 0.0);
            let z = MeasureSpec::new(n, vec![0.0; n - 1]).unwrap();
            assert_eq!(z.density(0.3).unwrap(), 0.0);
        }
    }

    #[test]
    fn total_mass_matches_quadrature() {
        for n in 2..12 {
            let m = MeasureSpec::omega_signature(n, Rational64::new(2, 7)).unwrap();
            let q = integrate_gl(|j| m.density_unchecked(j), 0.0, 0.5, n + 2);
            assert!((q - m.total_mass()).abs() <= 1e-11 * m.total_mass().abs(), "n={n}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(MeasureSpec::new(3, vec![1.0]).is_err());
        assert!(MeasureSpec::signature(3).unwrap().density(0.6).is_err());
    }
}
