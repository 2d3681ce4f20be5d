//! Link signatures and ω-signatures of braid closures, and the closed
//! formulas for the Rasmussen `s` and Ozsváth-Szabó `τ` invariants on
//! positive braids.
//!
//! Raw signatures are computed from the Bennequin-surface Seifert matrix and
//! are negative on positive braids (the positive trefoil has raw signature
//! −2). The link-level functions multiply by the global convention factor
//! [`KAPPA`] so that homogenized values on positive braids are positive.

mod congruence;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::{BigRational, Rational64};
use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::diagram::seifert_matrix;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

use congruence::{inertia, Pivoting};

/// Sign convention factor applied to raw signatures by [`sign_link`] and
/// [`sign_omega_link`].
pub const KAPPA: i64 = -1;

/// Default relative pivot tolerance of the floating-point Hermitian path.
pub const PIVOT_TOL: f64 = 1e-9;

/// A rational angle `θ ∈ (0, 1)`; the form is evaluated at `ω = e^{2πiθ}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Angle(Rational64);

impl Angle {
    pub fn new(theta: Rational64) -> Result<Self> {
        if theta <= Rational64::from_integer(0) || theta >= Rational64::from_integer(1) {
            return Err(Error::AngleOutOfRange(theta.to_string()));
        }
        Ok(Self(theta))
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Parse(format!("{num}/0")));
        }
        Self::new(Rational64::new(num, den))
    }

    pub fn half() -> Self {
        Self(Rational64::new(1, 2))
    }

    pub fn value(self) -> Rational64 {
        self.0
    }

    pub fn to_f64(self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }

    pub fn is_half(self) -> bool {
        self.0 == Rational64::new(1, 2)
    }

    pub fn omega(self) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * self.to_f64())
    }
}

/// Parses `"p/q"` or an integer numerator over 1 (always out of range).
pub fn parse_rational(s: &str) -> Result<Rational64> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: i64 = num.parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    let den: i64 = den.parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    if den == 0 {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational64::new(num, den))
}

impl FromStr for Angle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Angle::new(parse_rational(s)?)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl Serialize for Angle {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureResult {
    pub signature: i64,
    pub nullity: usize,
    /// Set when a pivot fell below tolerance, typically because `θ` is at
    /// (or numerically near) a root of the Alexander polynomial.
    pub degenerate: bool,
}

/// Exact signature of an integer symmetric matrix over the rationals.
pub fn signature_symmetric(m: &IntMatrix) -> Result<SignatureResult> {
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = m.dim();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if m[(i, j)] != 0 {
                entries.push((i, j, BigRational::from_integer(BigInt::from(m[(i, j)]))));
            }
        }
    }
    let r = inertia(n, entries, Pivoting::Exact);
    Ok(SignatureResult {
        signature: r.signature,
        nullity: r.nullity,
        degenerate: false,
    })
}

/// Signature of `(1−ω)V + (1−ω̄)Vᵀ` for a Seifert matrix `V`.
///
/// At `θ = 1/2` the form is `2(V + Vᵀ)` and the exact path is used.
pub fn omega_signature(v: &IntMatrix, theta: Angle) -> SignatureResult {
    omega_signature_with_tol(v, theta, PIVOT_TOL)
}

pub fn omega_signature_with_tol(v: &IntMatrix, theta: Angle, tol: f64) -> SignatureResult {
    if theta.is_half() {
        return signature_symmetric(&v.symmetrized()).expect("V + Vᵀ is symmetric");
    }
    let n = v.dim();
    let one = Complex64::new(1.0, 0.0);
    let w = theta.omega();
    let (a, b) = (one - w, one - w.conj());
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (vij, vji) = (v[(i, j)], v[(j, i)]);
            if vij != 0 || vji != 0 {
                entries.push((i, j, a * vij as f64 + b * vji as f64));
            }
        }
    }
    let r = inertia(n, entries, Pivoting::Tolerance(tol));
    SignatureResult {
        signature: r.signature,
        nullity: r.nullity,
        degenerate: r.degenerate,
    }
}

/// `κ · sign(closure of b)`.
pub fn sign_link(b: &BraidWord) -> i64 {
    sign_omega_link(b, Angle::half()).signature
}

/// `κ · sign_ω(closure of b)`; nullity and degeneracy are passed through.
pub fn sign_omega_link(b: &BraidWord, theta: Angle) -> SignatureResult {
    let s = seifert_matrix(b);
    let mut r = omega_signature(&s.matrix, theta);
    r.signature *= KAPPA;
    r
}

/// Link determinant `|det(V + Vᵀ)|`; zero for split closures, where the
/// braided surface is disconnected.
pub fn link_determinant(b: &BraidWord) -> BigInt {
    let split = (1..b.strands()).any(|i| b.letters().iter().all(|l| l.index() != i));
    if split {
        return BigInt::from(0);
    }
    seifert_matrix(b).symmetrized().abs_determinant()
}

/// A closed interval `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: PartialOrd + Copy + std::ops::Sub<Output = T>> Interval<T> {
    pub fn contains(&self, x: T) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn width(&self) -> T {
        self.hi - self.lo
    }
}

fn require_knot(b: &BraidWord) -> Result<()> {
    match b.cycle_count() {
        1 => Ok(()),
        components => Err(Error::NotAKnot { components }),
    }
}

fn require_positive(b: &BraidWord) -> Result<()> {
    match b.letters().iter().position(|l| !l.is_positive()) {
        None => Ok(()),
        Some(position) => Err(Error::NotPositive {
            position,
            letter: b.letters()[position].to_signed(),
        }),
    }
}

/// Rasmussen `s = w − o + 1 = lk − n + 1` of a positive braid knot.
pub fn s_positive(b: &BraidWord) -> Result<i64> {
    require_positive(b)?;
    require_knot(b)?;
    Ok(b.lk() - b.strands() as i64 + 1)
}

/// Ozsváth-Szabó `τ = (lk − n + 1)/2` of a positive braid knot.
pub fn tau_positive(b: &BraidWord) -> Result<Rational64> {
    Ok(Rational64::new(s_positive(b)?, 2))
}

/// `1 + w − o ≤ s ≤ −1 + w + o` for the closure diagram (`o = n`).
pub fn s_bounds(b: &BraidWord) -> Result<Interval<i64>> {
    require_knot(b)?;
    let (w, n) = (b.lk(), b.strands() as i64);
    Ok(Interval {
        lo: 1 + w - n,
        hi: -1 + w + n,
    })
}

/// `lk − n + 1 ≤ 2τ ≤ lk + n − 1`, returned as an interval for `τ`.
pub fn tau_bounds(b: &BraidWord) -> Result<Interval<Rational64>> {
    require_knot(b)?;
    let (w, n) = (b.lk(), b.strands() as i64);
    Ok(Interval {
        lo: Rational64::new(w - n + 1, 2),
        hi: Rational64::new(w + n - 1, 2),
    })
}
