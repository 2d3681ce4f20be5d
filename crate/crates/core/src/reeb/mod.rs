//! Reeb trees of Morse-type Hamiltonians on the unit disc and the integral
//! formulas evaluated on them.
//!
//! The action coordinate `J` on an edge is the area enclosed by a level
//! curve divided by `2π`, so `0 ≤ J ≤ 1/2` and `J = 0` at extrema. The
//! Calabi invariant is normalised as `C = −4π ∫_T ℏ dJ`.

mod gg;
mod grid;
mod measure;
mod poly;
mod profile;
pub mod quadrature;
mod radial;
mod tree;

pub use gg::{
    asym_bound, asym_ratio, asymptotics_csv, asymptotics_table, calabi, calabi_by_parts,
    disc_consistency, gg_integral, sign_gg_closed, total_variation, AsymRow,
};
pub use grid::{reeb_from_grid, Grid};
pub use measure::{measure_density, MeasureSpec};
pub use poly::Poly;
pub use profile::{Piece, Profile, SampleTable};
pub use radial::{Annulus, RadialProfile};
pub use tree::{Edge, ReebTree};
