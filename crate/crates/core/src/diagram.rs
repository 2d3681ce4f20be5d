//! Closed-braid link diagrams and the Seifert matrix of their Bennequin
//! surface.
//!
//! The Bennequin surface of the closure of `b ∈ B_n` is built from `n` stacked
//! discs (one per Seifert circle) joined by one half-twisted band per
//! crossing. A basis of `H_1` is given by loops through two consecutive bands
//! of the same column, so a column with `c_k` crossings contributes
//! `c_k - 1` generators.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::matrix::IntMatrix;

pub use crate::braid::markov_stabilize;

/// A crossing of the closed braid diagram: generator column and sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    pub column: usize,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureDiagram {
    pub strands: usize,
    pub crossings: Vec<Crossing>,
    pub components: usize,
    pub writhe: i64,
    pub seifert_circles: usize,
}

/// Crossing record of the PD-like export; `height` is the position of the
/// crossing along the braid axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PdCrossing {
    pub column: usize,
    pub sign: i8,
    pub height: usize,
}

impl ClosureDiagram {
    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn to_pd_json(&self) -> serde_json::Value {
        let list: Vec<PdCrossing> = self
            .crossings
            .iter()
            .enumerate()
            .map(|(height, c)| PdCrossing {
                column: c.column,
                sign: c.sign,
                height,
            })
            .collect();
        serde_json::json!({
            "strands": self.strands,
            "components": self.components,
            "crossings": list,
        })
    }

    /// Over/under passages (`true` = over) met by each strand during one
    /// pass through the braid, indexed by start position.
    fn passages(&self) -> Vec<Vec<bool>> {
        let mut occupant: Vec<usize> = (0..self.strands).collect();
        let mut seq = vec![Vec::new(); self.strands];
        for c in &self.crossings {
            let (left, right) = (c.column - 1, c.column);
            let (s_left, s_right) = (occupant[left], occupant[right]);
            // the strand moving left-to-right is over for a positive crossing
            seq[s_left].push(c.sign > 0);
            seq[s_right].push(c.sign < 0);
            occupant.swap(left, right);
        }
        seq
    }

    /// Over- and under-passes strictly alternate along every component
    /// (vacuously true without crossings).
    pub fn is_alternating(&self) -> bool {
        let passes = self.passages();
        // end position of each start strand
        let mut occupant: Vec<usize> = (0..self.strands).collect();
        for c in &self.crossings {
            occupant.swap(c.column - 1, c.column);
        }
        let mut next = vec![0; self.strands];
        for (pos, &s) in occupant.iter().enumerate() {
            next[s] = pos;
        }
        let mut seen = vec![false; self.strands];
        for start in 0..self.strands {
            if seen[start] {
                continue;
            }
            let mut cyc: Vec<bool> = Vec::new();
            let mut s = start;
            while !seen[s] {
                seen[s] = true;
                cyc.extend_from_slice(&passes[s]);
                s = next[s];
            }
            if cyc.is_empty() {
                continue;
            }
            let len = cyc.len();
            if (0..len).any(|k| cyc[k] == cyc[(k + 1) % len]) {
                return false;
            }
        }
        true
    }
}

pub fn close(b: &BraidWord) -> ClosureDiagram {
    ClosureDiagram {
        strands: b.strands(),
        crossings: b
            .letters()
            .iter()
            .map(|l| Crossing {
                column: l.index(),
                sign: l.sign() as i8,
            })
            .collect(),
        components: b.cycle_count(),
        writhe: b.lk(),
        seifert_circles: b.strands(),
    }
}

pub fn is_alternating(d: &ClosureDiagram) -> bool {
    d.is_alternating()
}

/// A generator of `H_1` of the Bennequin surface: the loop through the bands
/// of two consecutive crossings `start < end` in `column`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceLoop {
    pub column: usize,
    pub start: usize,
    pub end: usize,
    pub start_sign: i8,
    pub end_sign: i8,
}

/// One connected piece of the Bennequin surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceBlock {
    /// Strand positions (0-based) whose discs belong to this piece.
    pub strands: Range<usize>,
    /// Rows/columns of the Seifert matrix spanned by this piece.
    pub rows: Range<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeifertData {
    pub matrix: IntMatrix,
    pub blocks: Vec<SurfaceBlock>,
    pub loops: Vec<SurfaceLoop>,
}

impl SeifertData {
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// The symmetrised form `V + Vᵀ`.
    pub fn symmetrized(&self) -> IntMatrix {
        self.matrix.symmetrized()
    }
}

/// Seifert matrix `V[a][b] = lk(a, b⁺)` of the Bennequin surface of the
/// closure of `b`.
///
/// Disconnected surfaces are handled piece by piece and returned as a block
/// sum; `dim V = c - n + #pieces`.
pub fn seifert_matrix(b: &BraidWord) -> SeifertData {
    let n = b.strands();
    let mut per_column: Vec<Vec<(usize, i8)>> = vec![Vec::new(); n];
    for (pos, l) in b.letters().iter().enumerate() {
        per_column[l.index()].push((pos, l.sign() as i8));
    }

    // connected pieces: maximal runs of strands joined by non-empty columns
    let mut pieces: Vec<Range<usize>> = Vec::new();
    let mut lo = 0;
    for k in 1..n {
        if per_column[k].is_empty() {
            pieces.push(lo..k);
            lo = k;
        }
    }
    pieces.push(lo..n);

    let mut loops: Vec<SurfaceLoop> = Vec::new();
    let mut blocks = Vec::with_capacity(pieces.len());
    let mut matrices = Vec::with_capacity(pieces.len());
    for piece in pieces {
        let mut piece_loops: Vec<SurfaceLoop> = Vec::new();
        for column in (piece.start + 1)..piece.end {
            for w in per_column[column].windows(2) {
                piece_loops.push(SurfaceLoop {
                    column,
                    start: w[0].0,
                    end: w[1].0,
                    start_sign: w[0].1,
                    end_sign: w[1].1,
                });
            }
        }
        // word order keeps the symmetric form banded
        piece_loops.sort_by_key(|g| g.start);
        let row0 = loops.len();
        matrices.push(block_matrix(&piece_loops));
        loops.extend_from_slice(&piece_loops);
        blocks.push(SurfaceBlock {
            strands: piece,
            rows: row0..loops.len(),
        });
    }

    SeifertData {
        matrix: IntMatrix::direct_sum(&matrices),
        blocks,
        loops,
    }
}

fn block_matrix(loops: &[SurfaceLoop]) -> IntMatrix {
    let m = loops.len();
    let mut v = IntMatrix::zeros(m);
    for (x, g) in loops.iter().enumerate() {
        v[(x, x)] = -(g.start_sign as i64 + g.end_sign as i64) / 2;
        for (y, h) in loops.iter().enumerate() {
            if x == y {
                continue;
            }
            if h.column == g.column && g.end == h.start {
                // consecutive loops sharing the band of crossing g.end
                if g.end_sign > 0 {
                    v[(x, y)] = 1;
                } else {
                    v[(y, x)] = -1;
                }
            } else if h.column == g.column + 1 {
                let (a1, a2, b1, b2) = (g.start, g.end, h.start, h.end);
                if a1 < b1 && b1 < a2 && a2 < b2 {
                    v[(x, y)] = -1;
                } else if b1 < a1 && a1 < b2 && b2 < a2 {
                    v[(x, y)] = 1;
                }
            }
        }
    }
    v
}
