//! Hamiltonian flows on the disc, the loop braids they induce on point
//! configurations, and Monte-Carlo estimates of the resulting
//! quasi-morphisms on area-preserving maps.
//!
//! A configuration `x̄` is joined to fixed basepoints `z̄` by straight
//! segments, carried along the flow for `p` time units, and joined back.
//! Crossings in the projection to the first coordinate give a pure braid.

mod extract;
mod hamiltonian;
mod monte_carlo;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use extract::{gg_loop_braid, loop_braid, word_length_bound, LoopBraid, EPS_CROSS};
pub use hamiltonian::Hamiltonian;
pub use monte_carlo::{
    monte_carlo_phi, monte_carlo_run, samples_csv, GGEstimate, MonteCarloRun, SampleRecord, EPS_PERTURB,
    MAX_REJECTED_FRACTION, MIN_SEPARATION,
};

/// Recorded with every estimate so results can be compared across sign
/// choices.
pub const SIGN_CONVENTION: &str =
    "(dx/dt, dy/dt) = 2pi(-dH/dy, dH/dx); sigma_i positive when the strand moving left to right has the smaller y";

/// A Hamiltonian together with the discretisation of its time-`p` map.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlowSpec {
    pub hamiltonian: Hamiltonian,
    /// Requested step; rounded down so that unit time is a whole number
    /// of steps.
    pub dt: f64,
    /// Power of the time-one map.
    pub p: u32,
}

impl FlowSpec {
    pub fn new(hamiltonian: Hamiltonian, dt: f64, p: u32) -> Result<Self> {
        let s = Self { hamiltonian, dt, p };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt <= 1.0) {
            return Err(Error::InvalidArgument(format!("dt = {} must lie in (0, 1]", self.dt)));
        }
        if self.p == 0 {
            return Err(Error::InvalidArgument("p must be at least 1".into()));
        }
        self.hamiltonian.validate()
    }

    pub fn steps_per_unit(&self) -> usize {
        (1.0 / self.dt).ceil() as usize
    }
}

/// Trajectories of `n` points under the flow, sampled at every step.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryBundle {
    pub n: usize,
    pub times: Vec<f64>,
    /// `samples[i][k]` is point `i` at `times[k]`.
    pub samples: Vec<Vec<[f64; 2]>>,
    pub basepoints: Vec<[f64; 2]>,
}

impl TrajectoryBundle {
    pub fn start(&self) -> Vec<[f64; 2]> {
        self.samples.iter().map(|s| s[0]).collect()
    }

    pub fn end(&self) -> Vec<[f64; 2]> {
        self.samples.iter().map(|s| *s.last().expect("nonempty trajectory")).collect()
    }
}

/// Basepoints `z̄`: evenly spaced on the horizontal diameter.
pub fn basepoints(n: usize) -> Vec<[f64; 2]> {
    (0..n).map(|i| [-0.9 + 1.8 * (i as f64 + 0.5) / n as f64, 0.0]).collect()
}

fn rk4(f: &hamiltonian::Field<'_>, p: [f64; 2], h: f64) -> [f64; 2] {
    let add = |a: [f64; 2], b: [f64; 2], s: f64| [a[0] + s * b[0], a[1] + s * b[1]];
    let k1 = f.velocity(p);
    let k2 = f.velocity(add(p, k1, h / 2.0));
    let k3 = f.velocity(add(p, k2, h / 2.0));
    let k4 = f.velocity(add(p, k3, h));
    [
        p[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
        p[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
    ]
}

/// Fixed-step RK4 integration over `[0, p]` with the basepoints of
/// [`basepoints`].
pub fn integrate_flow(spec: &FlowSpec, points: &[[f64; 2]]) -> Result<TrajectoryBundle> {
    spec.validate()?;
    let n = points.len();
    for (i, q) in points.iter().enumerate() {
        if !(q[0] * q[0] + q[1] * q[1] < 1.0) {
            return Err(Error::InvalidArgument(format!("point {i} = {q:?} is not in the open unit disc")));
        }
        if points[..i].contains(q) {
            return Err(Error::InvalidArgument(format!("point {i} repeats an earlier point")));
        }
    }
    let field = spec.hamiltonian.field();
    let m = spec.steps_per_unit();
    let steps = m * spec.p as usize;
    let h = 1.0 / m as f64;
    let times = (0..=steps).map(|k| k as f64 * h).collect();
    let mut samples = Vec::with_capacity(n);
    for (i, &q) in points.iter().enumerate() {
        let mut traj = Vec::with_capacity(steps + 1);
        traj.push(q);
        let mut x = q;
        for k in 0..steps {
            x = rk4(&field, x, h);
            if !(x[0] * x[0] + x[1] * x[1] < 1.0) {
                return Err(Error::Numerical(format!(
                    "point {i} left the open disc at t = {}",
                    (k + 1) as f64 * h
                )));
            }
            traj.push(x);
        }
        samples.push(traj);
    }
    Ok(TrajectoryBundle {
        n,
        times,
        samples,
        basepoints: basepoints(n),
    })
}

/// `max |H(ψ_t(x)) − H(x)|` over all points and sample times.
pub fn energy_drift(spec: &FlowSpec, traj: &TrajectoryBundle) -> f64 {
    let field = spec.hamiltonian.field();
    traj.samples
        .iter()
        .map(|s| {
            let e0 = field.value(s[0]);
            s.iter().map(|&q| (field.value(q) - e0).abs()).fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}
