//! Braid-group quasi-morphisms induced by knot invariants, and their
//! Gambaudo-Ghys extensions to area-preserving diffeomorphisms of the disc.
//!
//! The crate is organised bottom-up:
//!
//! * [`braid`]: braid words, permutations, linking number and the word problem.
//! * [`diagram`]: closed-braid diagrams and Bennequin-surface Seifert matrices.
//! * [`invariants`]: signatures, ω-signatures and the positive-braid formulas
//!   for the Rasmussen and Ozsváth-Szabó invariants.
//! * [`quasimorphism`]: completing braids, hat invariants, homogenization and
//!   the closed-form homogenized values on the pure braids `η_{i,n}`.
//! * [`reeb`]: Reeb trees of Morse-type Hamiltonians and the integral formulas.
//! * [`flow`]: Hamiltonian flow simulation and Monte-Carlo braid averaging.

pub mod braid;
pub mod diagram;
pub mod error;
pub mod flow;
pub mod invariants;
pub mod matrix;
pub mod quasimorphism;
pub mod reeb;

pub use braid::{braid_equal, delta_sq, eta, torus_braid, BraidWord, Letter, Permutation};
pub use error::{Error, Result};
pub use matrix::IntMatrix;
