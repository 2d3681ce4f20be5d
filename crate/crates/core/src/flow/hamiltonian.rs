use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::reeb::{Grid, Poly, RadialProfile};

/// An autonomous Hamiltonian on the unit disc.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum Hamiltonian {
    /// `H(r) = ℏ(r²/2)`.
    Radial(RadialProfile),
    /// Bilinear interpolation of grid samples.
    Grid(Grid),
}

impl Hamiltonian {
    pub fn zero() -> Self {
        Hamiltonian::Radial(RadialProfile { pieces: Vec::new() })
    }

    /// Radial profiles preserve every circle, so their support may reach
    /// the boundary. A grid Hamiltonian must vanish on every cell that is
    /// not entirely inside the open disc.
    pub fn validate(&self) -> Result<()> {
        match self {
            Hamiltonian::Radial(h) => h.validate(),
            Hamiltonian::Grid(g) => {
                g.check_shape()?;
                for iy in 0..g.ny - 1 {
                    for ix in 0..g.nx - 1 {
                        let corners = [(ix, iy), (ix + 1, iy), (ix, iy + 1), (ix + 1, iy + 1)];
                        let live = corners.iter().any(|&(a, b)| g.values[b * g.nx + a] != 0.0);
                        let inside = corners.iter().all(|&(a, b)| {
                            let (x, y) = g.point(a, b);
                            x * x + y * y < 1.0
                        });
                        if live && !inside {
                            let (x, y) = g.point(ix, iy);
                            return Err(Error::Grid(format!(
                                "H is nonzero on the cell at ({x}, {y}), which leaves the open unit disc"
                            )));
                        }
                    }
                }
                Ok(())
            }
        }
    }

    pub(crate) fn field(&self) -> Field<'_> {
        match self {
            Hamiltonian::Radial(h) => Field::Radial(
                h.pieces
                    .iter()
                    .map(|a| RadialPiece {
                        hi: a.hi,
                        value: a.poly.clone(),
                        slope: a.poly.derivative(),
                    })
                    .collect(),
            ),
            Hamiltonian::Grid(g) => Field::Grid(g),
        }
    }
}

pub(crate) struct RadialPiece {
    hi: f64,
    value: Poly,
    slope: Poly,
}

/// Precomputed evaluator for `H` and its Hamiltonian vector field.
pub(crate) enum Field<'a> {
    Radial(Vec<RadialPiece>),
    Grid(&'a Grid),
}

impl Field<'_> {
    fn radial_piece(pieces: &[RadialPiece], j: f64) -> Option<&RadialPiece> {
        pieces.get(pieces.partition_point(|a| a.hi < j))
    }

    pub fn value(&self, p: [f64; 2]) -> f64 {
        match self {
            Field::Radial(pieces) => {
                let j = (p[0] * p[0] + p[1] * p[1]) / 2.0;
                Self::radial_piece(pieces, j).map_or(0.0, |a| a.value.eval(j))
            }
            Field::Grid(g) => bilinear(g, p).0,
        }
    }

    /// `(ẋ, ẏ) = 2π(−∂H/∂y, ∂H/∂x)`: the angle coordinate advances by
    /// `ℏ′` full turns per unit time, counterclockwise for `ℏ′ > 0`.
    pub fn velocity(&self, p: [f64; 2]) -> [f64; 2] {
        let [hx, hy] = match self {
            Field::Radial(pieces) => {
                let j = (p[0] * p[0] + p[1] * p[1]) / 2.0;
                let s = Self::radial_piece(pieces, j).map_or(0.0, |a| a.slope.eval(j));
                [s * p[0], s * p[1]]
            }
            Field::Grid(g) => bilinear(g, p).1,
        };
        [-TAU * hy, TAU * hx]
    }
}

/// Bilinear interpolant of the grid and its gradient; zero outside the box.
fn bilinear(g: &Grid, [x, y]: [f64; 2]) -> (f64, [f64; 2]) {
    if x < g.xmin || x > g.xmax || y < g.ymin || y > g.ymax {
        return (0.0, [0.0, 0.0]);
    }
    let (dx, dy) = (g.dx(), g.dy());
    let fx = (x - g.xmin) / dx;
    let fy = (y - g.ymin) / dy;
    let ix = (fx.floor() as usize).min(g.nx - 2);
    let iy = (fy.floor() as usize).min(g.ny - 2);
    let (s, t) = (fx - ix as f64, fy - iy as f64);
    let at = |a: usize, b: usize| g.values[b * g.nx + a];
    let (v00, v10, v01, v11) = (at(ix, iy), at(ix + 1, iy), at(ix, iy + 1), at(ix + 1, iy + 1));
    let value = (1.0 - s) * (1.0 - t) * v00 + s * (1.0 - t) * v10 + (1.0 - s) * t * v01 + s * t * v11;
    let hx = ((1.0 - t) * (v10 - v00) + t * (v11 - v01)) / dx;
    let hy = ((1.0 - s) * (v01 - v00) + s * (v11 - v10)) / dy;
    (value, [hx, hy])
}
