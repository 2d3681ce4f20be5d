use std::f64::consts::PI;
use std::fmt::Write as _;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{integrate_flow, loop_braid, FlowSpec, TrajectoryBundle, SIGN_CONVENTION};
use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::quasimorphism::{sample_rng, QuasiMorphism};

/// Configurations with two points closer than this are redrawn.
pub const MIN_SEPARATION: f64 = 1e-4;
/// Size of the basepoint perturbation used to escape degenerate crossings.
pub const EPS_PERTURB: f64 = 1e-7;
/// Abort when rejected draws exceed this fraction of the sample count.
pub const MAX_REJECTED_FRACTION: f64 = 0.1;

const MAX_DRAWS_PER_SAMPLE: usize = 16;
const PERTURB_RETRIES: usize = 3;

/// `Φ(g)` estimated as `πⁿ` times the sample mean of `φ(γ(g^p; x̄))/p`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GGEstimate {
    pub mean: f64,
    pub stderr: f64,
    #[serde(rename = "N")]
    pub samples_used: usize,
    pub seed: u64,
    pub rejected: usize,
    pub n: usize,
    pub p: u32,
    pub quasimorphism: String,
    pub sign_convention: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub index: u64,
    pub word_length: usize,
    /// `φ(γ)/p` before scaling by the configuration-space volume.
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloRun {
    pub estimate: GGEstimate,
    pub samples: Vec<SampleRecord>,
}

fn draw_configuration(n: usize, rng: &mut ChaCha8Rng) -> Vec<[f64; 2]> {
    (0..n)
        .map(|_| {
            let r = rng.gen::<f64>().sqrt();
            let a = 2.0 * PI * rng.gen::<f64>();
            [r * a.cos(), r * a.sin()]
        })
        .collect()
}

fn min_separation(pts: &[[f64; 2]]) -> f64 {
    let mut m = f64::INFINITY;
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            m = m.min((a[0] - b[0]).hypot(a[1] - b[1]));
        }
    }
    m
}

fn braid_with_retries(mut traj: TrajectoryBundle, rng: &mut ChaCha8Rng) -> Result<Option<BraidWord>> {
    for attempt in 0..=PERTURB_RETRIES {
        if attempt > 0 {
            for z in &mut traj.basepoints {
                z[0] += EPS_PERTURB * rng.gen_range(-1.0..1.0);
                z[1] += EPS_PERTURB * rng.gen_range(-1.0..1.0);
            }
        }
        match loop_braid(&traj) {
            Ok(l) => return Ok(Some(l.word)),
            Err(Error::DegenerateCrossing(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

/// One accepted sample and the number of draws rejected on the way.
fn one_sample(spec: &FlowSpec, phi: &QuasiMorphism, n: usize, seed: u64, index: u64) -> Result<(SampleRecord, usize)> {
    let mut rng = sample_rng(seed, index);
    let mut rejected = 0;
    for _ in 0..MAX_DRAWS_PER_SAMPLE {
        let pts = draw_configuration(n, &mut rng);
        if min_separation(&pts) < MIN_SEPARATION {
            rejected += 1;
            continue;
        }
        let traj = match integrate_flow(spec, &pts) {
            Ok(t) => t,
            Err(Error::Numerical(_)) => {
                rejected += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        match braid_with_retries(traj, &mut rng)? {
            Some(word) => {
                let value = phi.eval(&word)? / spec.p as f64;
                return Ok((
                    SampleRecord {
                        index,
                        word_length: word.len(),
                        value,
                    },
                    rejected,
                ));
            }
            None => rejected += 1,
        }
    }
    Err(Error::TooManyRejections {
        rejected,
        attempted: MAX_DRAWS_PER_SAMPLE,
    })
}

/// Samples `N` uniform configurations of `n` points in the disc. Sample
/// `k` draws from its own stream of `seed`, so the result does not depend
/// on the thread count.
pub fn monte_carlo_run(spec: &FlowSpec, phi: &QuasiMorphism, n: usize, samples: usize, seed: u64) -> Result<MonteCarloRun> {
    spec.validate()?;
    if samples == 0 {
        return Err(Error::InvalidArgument("N must be at least 1".into()));
    }
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n = {n} < 2")));
    }
    let results: Vec<(SampleRecord, usize)> = (0..samples as u64)
        .into_par_iter()
        .map(|k| one_sample(spec, phi, n, seed, k))
        .collect::<Result<_>>()?;
    let rejected: usize = results.iter().map(|r| r.1).sum();
    if rejected as f64 > MAX_REJECTED_FRACTION * samples as f64 {
        return Err(Error::TooManyRejections {
            rejected,
            attempted: samples + rejected,
        });
    }
    let records: Vec<SampleRecord> = results.into_iter().map(|r| r.0).collect();
    let m = records.len() as f64;
    let avg = records.iter().map(|r| r.value).sum::<f64>() / m;
    let var = if records.len() > 1 {
        records.iter().map(|r| (r.value - avg).powi(2)).sum::<f64>() / (m - 1.0)
    } else {
        0.0
    };
    let volume = PI.powi(n as i32);
    Ok(MonteCarloRun {
        estimate: GGEstimate {
            mean: volume * avg,
            stderr: volume * (var / m).sqrt(),
            samples_used: records.len(),
            seed,
            rejected,
            n,
            p: spec.p,
            quasimorphism: phi.name().to_string(),
            sign_convention: SIGN_CONVENTION.to_string(),
        },
        samples: records,
    })
}

pub fn monte_carlo_phi(spec: &FlowSpec, phi: &QuasiMorphism, n: usize, samples: usize, seed: u64) -> Result<GGEstimate> {
    monte_carlo_run(spec, phi, n, samples, seed).map(|r| r.estimate)
}

/// `index,word_length,value` rows.
pub fn samples_csv(records: &[SampleRecord]) -> String {
    let mut out = String::from("index,word_length,value\n");
    for r in records {
        writeln!(out, "{},{},{:.12e}", r.index, r.word_length, r.value).expect("string write");
    }
    out
}
