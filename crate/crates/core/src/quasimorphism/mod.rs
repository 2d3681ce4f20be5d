//! Quasi-morphisms on braid groups induced by knot invariants.
//!
//! A knot invariant `I` becomes a function on `B_n` by closing `α_β·β`,
//! where `α_β` is a completing braid; when `|I| ≤ c·g_4` this is a
//! quasi-morphism with defect at most `3cn`. Homogenization
//! `φ̃(β) = lim φ(β^p)/p` is estimated at a single power with the bracket
//! `D/p`.

mod closed_form;
mod completing;

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::braid::{BraidWord, Letter};
use crate::error::{Error, Result};
use crate::invariants::{s_bounds, s_positive, sign_omega_link, tau_bounds, tau_positive, Angle, KAPPA};

pub use closed_form::{
    basis_matrix, coxeter_omega_tilde, eta_omega_tilde, eta_sign_tilde, torus_omega_tilde,
};
pub use completing::{completing_braid, completing_braid_with, Selector};

/// Seed used when a defect bound has to be estimated on the fly.
pub const DEFAULT_SEED: u64 = 0x5EED;

/// Bound `c₁` in `|sign_ω(K)| ≤ c₁·g_4(K)`.
pub const SIGNATURE_GENUS_CONSTANT: f64 = 2.0;

pub type Evaluator = Arc<dyn Fn(&BraidWord) -> Result<f64> + Send + Sync>;

/// A (possibly partial) real function on braids together with a known
/// defect bound, if any.
#[derive(Clone)]
pub struct QuasiMorphism {
    name: String,
    eval: Evaluator,
    defect_bound: Option<f64>,
}

impl fmt::Debug for QuasiMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QuasiMorphism")
            .field("name", &self.name)
            .field("defect_bound", &self.defect_bound)
            .finish_non_exhaustive()
    }
}

impl QuasiMorphism {
    pub fn new<F>(name: impl Into<String>, eval: F) -> Self
    where
        F: Fn(&BraidWord) -> Result<f64> + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            eval: Arc::new(eval),
            defect_bound: None,
        }
    }

    pub fn with_defect_bound(mut self, d: f64) -> Self {
        self.defect_bound = Some(d);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn defect_bound(&self) -> Option<f64> {
        self.defect_bound
    }

    pub fn eval(&self, b: &BraidWord) -> Result<f64> {
        (self.eval)(b)
    }

    /// The linking-number homomorphism.
    pub fn lk() -> Self {
        Self::new("lk", |b| Ok(b.lk() as f64)).with_defect_bound(0.0)
    }

    /// `β ↦ κ·sign_ω(closure of α_β β)` on `B_n`, with defect bound `3c₁n`.
    pub fn sign_hat(theta: Angle, n: usize) -> Self {
        let name = if theta.is_half() {
            "sign".to_string()
        } else {
            format!("sign[{theta}]")
        };
        Self::new(name, move |b| {
            hat_invariant(|k| Ok(sign_omega_link(k, theta).signature as f64), b)
        })
        .with_defect_bound(3.0 * SIGNATURE_GENUS_CONSTANT * n as f64)
    }

    /// `β ↦ s(closure of α_β β)`: the closed formula on positive braids and
    /// the midpoint of the diagram bounds otherwise.
    pub fn s_hat() -> Self {
        Self::new("s", |b| {
            hat_invariant(
                |k| match s_positive(k) {
                    Ok(s) => Ok(s as f64),
                    Err(Error::NotPositive { .. }) => {
                        let iv = s_bounds(k)?;
                        Ok((iv.lo + iv.hi) as f64 / 2.0)
                    }
                    Err(e) => Err(e),
                },
                b,
            )
        })
    }

    /// `β ↦ 2τ(closure of α_β β)`, analogous to [`QuasiMorphism::s_hat`].
    pub fn two_tau_hat() -> Self {
        Self::new("2tau", |b| {
            hat_invariant(
                |k| match tau_positive(k) {
                    Ok(t) => Ok(2.0 * *t.numer() as f64 / *t.denom() as f64),
                    Err(Error::NotPositive { .. }) => {
                        let iv = tau_bounds(k)?;
                        let mid = iv.lo + iv.hi;
                        Ok(*mid.numer() as f64 / *mid.denom() as f64)
                    }
                    Err(e) => Err(e),
                },
                b,
            )
        })
    }
}

/// `I(closure of α_β·β)` with the default completing braid.
pub fn hat_invariant<I>(invariant: I, beta: &BraidWord) -> Result<f64>
where
    I: Fn(&BraidWord) -> Result<f64>,
{
    hat_invariant_with(invariant, beta, Selector::Ascending)
}

pub fn hat_invariant_with<I>(invariant: I, beta: &BraidWord, selector: Selector) -> Result<f64>
where
    I: Fn(&BraidWord) -> Result<f64>,
{
    let alpha = completing_braid_with(beta, selector);
    let knot = alpha.concat(beta)?;
    invariant(&knot)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomogenizationEstimate {
    pub value: f64,
    pub p_used: u32,
    /// Half-width of the interval guaranteed (or, if `heuristic`, estimated)
    /// to contain the homogenized value.
    pub bracket: f64,
    /// The defect bound came from a random scan rather than a proof.
    pub heuristic: bool,
}

impl HomogenizationEstimate {
    pub fn contains(&self, x: f64) -> bool {
        (x - self.value).abs() <= self.bracket
    }
}

/// `φ(β^p)/p` with bracket `D_φ/p`.
///
/// Without a known defect bound, `D_φ` is replaced by the maximum of a
/// seeded [`defect_scan`] on `B_n` and the estimate is flagged heuristic.
pub fn homogenize(phi: &QuasiMorphism, beta: &BraidWord, p: u32) -> Result<HomogenizationEstimate> {
    if p == 0 {
        return Err(Error::InvalidArgument("homogenization power must be ≥ 1".into()));
    }
    let value = phi.eval(&beta.power(p as i64))? / p as f64;
    let (d, heuristic) = match phi.defect_bound() {
        Some(d) => (d, false),
        None => {
            let sampler = RandomBraids::new(beta.strands()..=beta.strands(), 12);
            (defect_scan(phi, &sampler, 200, DEFAULT_SEED)?.max_defect, true)
        }
    };
    Ok(HomogenizationEstimate {
        value,
        p_used: p,
        bracket: d / p as f64,
        heuristic,
    })
}

/// Machine-readable homogenization record.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomogenizationReport {
    pub name: String,
    pub beta: String,
    pub strands: usize,
    pub p: u32,
    pub value: f64,
    pub bracket: f64,
    pub heuristic: bool,
    pub kappa: i64,
    pub seed: Option<u64>,
}

impl HomogenizationReport {
    pub fn new(phi: &QuasiMorphism, beta: &BraidWord, est: &HomogenizationEstimate) -> Self {
        Self {
            name: phi.name().to_string(),
            beta: beta.to_string(),
            strands: beta.strands(),
            p: est.p_used,
            value: est.value,
            bracket: est.bracket,
            heuristic: est.heuristic,
            kappa: KAPPA,
            seed: est.heuristic.then_some(DEFAULT_SEED),
        }
    }
}

/// Source of braid pairs for defect scans.
pub trait PairSampler: Sync {
    fn sample_pair(&self, rng: &mut ChaCha8Rng) -> (BraidWord, BraidWord);
}

/// Uniform random words: strand count uniform in `strands`, length uniform
/// in `0..=max_len`, letters uniform among `σ_i^{±1}` (or `σ_i` only).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomBraids {
    pub min_strands: usize,
    pub max_strands: usize,
    pub max_len: usize,
    pub positive: bool,
}

impl RandomBraids {
    pub fn new(strands: std::ops::RangeInclusive<usize>, max_len: usize) -> Self {
        Self {
            min_strands: (*strands.start()).max(1),
            max_strands: (*strands.end()).max(1),
            max_len,
            positive: false,
        }
    }

    pub fn positive(mut self) -> Self {
        self.positive = true;
        self
    }

    fn word(&self, n: usize, rng: &mut ChaCha8Rng) -> BraidWord {
        if n < 2 {
            return BraidWord::identity(n);
        }
        let len = rng.gen_range(0..=self.max_len);
        let letters = (0..len)
            .map(|_| {
                let i = rng.gen_range(1..n);
                Letter::new(i, self.positive || rng.gen_bool(0.5))
            })
            .collect();
        BraidWord::new(n, letters).expect("indices lie in 1..n")
    }

    pub fn sample(&self, rng: &mut ChaCha8Rng) -> BraidWord {
        let n = rng.gen_range(self.min_strands..=self.max_strands);
        self.word(n, rng)
    }
}

impl PairSampler for RandomBraids {
    fn sample_pair(&self, rng: &mut ChaCha8Rng) -> (BraidWord, BraidWord) {
        let n = rng.gen_range(self.min_strands..=self.max_strands);
        (self.word(n, rng), self.word(n, rng))
    }
}

/// Deterministic generator for the `index`-th sample of a seeded run; the
/// result does not depend on how samples are scheduled across threads.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DefectScan {
    pub name: String,
    pub max_defect: f64,
    pub trials: usize,
    pub seed: u64,
    /// A pair attaining the maximum, as braid word strings.
    pub worst: Option<(String, String)>,
}

/// Maximum of `|φ(ab) − φ(a) − φ(b)|` over `trials` sampled pairs.
pub fn defect_scan<S: PairSampler + ?Sized>(
    phi: &QuasiMorphism,
    sampler: &S,
    trials: usize,
    seed: u64,
) -> Result<DefectScan> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be ≥ 1".into()));
    }
    let defects: Vec<(f64, BraidWord, BraidWord)> = (0..trials)
        .into_par_iter()
        .map(|k| {
            let (a, b) = sampler.sample_pair(&mut sample_rng(seed, k as u64));
            let d = (phi.eval(&a.concat(&b)?)? - phi.eval(&a)? - phi.eval(&b)?).abs();
            Ok((d, a, b))
        })
        .collect::<Result<_>>()?;
    let mut best: Option<&(f64, BraidWord, BraidWord)> = None;
    for item in &defects {
        if best.is_none_or(|b| item.0 > b.0) {
            best = Some(item);
        }
    }
    let best = best.expect("trials ≥ 1");
    Ok(DefectScan {
        name: phi.name().to_string(),
        max_defect: best.0,
        trials,
        seed,
        worst: Some((best.1.to_string(), best.2.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::eta;

    fn w(n: usize, s: &[i32]) -> BraidWord {
        BraidWord::from_signed(n, s).unwrap()
    }

    #[test]
    fn lk_homogenizes_exactly() {
        let b = w(3, &[1, -2, 2, 2]);
        for p in [1, 2, 7] {
            let e = homogenize(&QuasiMorphism::lk(), &b, p).unwrap();
            assert_eq!(e.value, 2.0);
            assert_eq!(e.bracket, 0.0);
            assert!(!e.heuristic);
        }
    }

    #[test]
    fn sign_hat_on_square_of_generator() {
        let phi = QuasiMorphism::sign_hat(Angle::half(), 2);
        assert_eq!(phi.eval(&w(2, &[1, 1])).unwrap(), (KAPPA * -2) as f64);
        assert_eq!(phi.defect_bound(), Some(12.0));
    }

    #[test]
    fn zero_invariant_hat() {
        assert_eq!(hat_invariant(|_| Ok(0.0), &w(3, &[1, -2])).unwrap(), 0.0);
    }

    #[test]
    fn s_hat_on_positive_braid() {
        assert_eq!(QuasiMorphism::s_hat().eval(&w(2, &[1, 1])).unwrap(), 2.0);
        assert_eq!(QuasiMorphism::two_tau_hat().eval(&w(2, &[1, 1])).unwrap(), 2.0);
    }

    #[test]
    fn sign_hat_on_eta_2_2() {
        let phi = QuasiMorphism::sign_hat(Angle::half(), 2);
        let e = homogenize(&phi, &eta(2, 2).unwrap(), 40).unwrap();
        assert!(e.contains(2.0), "{e:?}");
        assert!((e.value - 2.0).abs() <= 1.0 / 40.0 + 1e-12);
    }

    #[test]
    fn unknown_bound_is_heuristic() {
        let phi = QuasiMorphism::new("half-lk", |b| Ok(b.lk() as f64 / 2.0));
        let e = homogenize(&phi, &w(2, &[1]), 3).unwrap();
        assert!(e.heuristic);
        assert_eq!(e.bracket, 0.0);
    }

    #[test]
    fn scan_is_reproducible_and_zero_for_lk() {
        let s = RandomBraids::new(2..=5, 10);
        let a = defect_scan(&QuasiMorphism::lk(), &s, 100, 7).unwrap();
        assert_eq!(a.max_defect, 0.0);
        let phi = QuasiMorphism::sign_hat(Angle::half(), 3);
        let s3 = RandomBraids::new(3..=3, 8);
        let x = defect_scan(&phi, &s3, 50, 11).unwrap();
        let y = defect_scan(&phi, &s3, 50, 11).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(homogenize(&QuasiMorphism::lk(), &w(2, &[1]), 0).is_err());
        assert!(defect_scan(&QuasiMorphism::lk(), &RandomBraids::new(2..=2, 3), 0, 1).is_err());
    }
}
