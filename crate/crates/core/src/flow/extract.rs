use std::f64::consts::PI;

use super::TrajectoryBundle;
use crate::braid::{BraidWord, Letter};
use crate::error::{Error, Result};

/// Separation in first coordinate, segment parameter or second coordinate
/// below which a crossing counts as degenerate.
pub const EPS_CROSS: f64 = 1e-9;

/// The loop braid of a trajectory bundle and the turning numbers
/// `L_{i,j}`: total angular variation of `x_i − x_j` along the loop, in
/// full turns.
#[derive(Clone, Debug, PartialEq)]
pub struct LoopBraid {
    pub word: BraidWord,
    pub turning: Vec<Vec<f64>>,
}

/// `Σ_{i<j} 2(L_{i,j} + 4)`.
pub fn word_length_bound(turning: &[Vec<f64>]) -> f64 {
    let n = turning.len();
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| 2.0 * (turning[i][j] + 4.0))
        .sum()
}

/// `γ(g; x̄)` as a braid word; see [`loop_braid`].
pub fn gg_loop_braid(traj: &TrajectoryBundle) -> Result<BraidWord> {
    loop_braid(traj).map(|l| l.word)
}

fn degenerate(msg: String) -> Error {
    Error::DegenerateCrossing(msg)
}

/// Follows `z̄ → x̄` (straight), the sampled trajectories (piecewise
/// linear between steps) and `ψ_p(x̄) → z̄` (straight), recording each
/// exchange of neighbours in the first-coordinate order as `σ_k^{±1}`,
/// `k` the 1-based position of the left strand. A strand pair whose
/// difference vector swings back and forth across the vertical records
/// cancelling letters, so the word is returned freely reduced.
pub fn loop_braid(traj: &TrajectoryBundle) -> Result<LoopBraid> {
    let n = traj.n;
    if traj.samples.len() != n || traj.basepoints.len() != n || traj.samples.iter().any(|s| s.is_empty()) {
        return Err(Error::InvalidArgument("malformed trajectory bundle".into()));
    }
    let steps = traj.samples[0].len();
    let frames = steps + 2;
    let at = |i: usize, f: usize| -> [f64; 2] {
        if f == 0 || f == frames - 1 {
            traj.basepoints[i]
        } else {
            traj.samples[i][f - 1]
        }
    };

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| at(a, 0)[0].total_cmp(&at(b, 0)[0]));
    for w in order.windows(2) {
        if at(w[1], 0)[0] - at(w[0], 0)[0] < EPS_CROSS {
            return Err(degenerate("basepoints share a first coordinate".into()));
        }
    }
    let start = order.clone();
    let mut slot = vec![0usize; n];
    for (k, &s) in order.iter().enumerate() {
        slot[s] = k;
    }

    let mut turning = vec![vec![0.0; n]; n];
    let mut letters = Vec::new();
    let mut events: Vec<(f64, usize, usize)> = Vec::new();
    for f in 0..frames - 1 {
        events.clear();
        for i in 0..n {
            let (a0, a1) = (at(i, f), at(i, f + 1));
            for j in i + 1..n {
                let (b0, b1) = (at(j, f), at(j, f + 1));
                let v0 = [a0[0] - b0[0], a0[1] - b0[1]];
                let v1 = [a1[0] - b1[0], a1[1] - b1[1]];
                if v1[0].abs() < EPS_CROSS {
                    return Err(degenerate(format!("strands {i} and {j} share a first coordinate at frame {}", f + 1)));
                }
                let turn = (v0[0] * v1[1] - v0[1] * v1[0]).atan2(v0[0] * v1[0] + v0[1] * v1[1]);
                turning[i][j] += turn.abs() / (2.0 * PI);
                if v0[0] * v1[0] < 0.0 {
                    events.push((v0[0] / (v0[0] - v1[0]), i, j));
                }
            }
        }
        events.sort_by(|a, b| a.0.total_cmp(&b.0));
        for w in events.windows(2) {
            let shared = w[0].1 == w[1].1 || w[0].1 == w[1].2 || w[0].2 == w[1].1 || w[0].2 == w[1].2;
            if shared && w[1].0 - w[0].0 < EPS_CROSS {
                return Err(degenerate(format!("simultaneous crossings in segment {f}")));
            }
        }
        for &(s, i, j) in &events {
            let (si, sj) = (slot[i], slot[j]);
            if si.abs_diff(sj) != 1 {
                return Err(degenerate(format!("strands {i} and {j} are not neighbours when they cross")));
            }
            let k = si.min(sj);
            let (left, right) = (order[k], order[k + 1]);
            let y = |q: usize| at(q, f)[1] + s * (at(q, f + 1)[1] - at(q, f)[1]);
            let (yl, yr) = (y(left), y(right));
            if (yl - yr).abs() < EPS_CROSS {
                return Err(degenerate(format!("strands {i} and {j} collide in segment {f}")));
            }
            letters.push(Letter::new(k + 1, yl < yr));
            order.swap(k, k + 1);
            slot[left] = k + 1;
            slot[right] = k;
        }
    }
    if order != start {
        return Err(Error::Numerical("loop braid does not return to the basepoints".into()));
    }
    for i in 0..n {
        for j in 0..i {
            turning[i][j] = turning[j][i];
        }
    }
    Ok(LoopBraid {
        word: BraidWord::new(n, letters)?.free_reduce(),
        turning,
    })
}
