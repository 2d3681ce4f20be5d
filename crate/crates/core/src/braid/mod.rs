//! Braid words in the Artin generators of `B_n`.
//!
//! A [`BraidWord`] is a finite word in `σ_1, …, σ_{n-1}` and their inverses.
//! Words are plain data: nothing is normalised unless [`BraidWord::free_reduce`]
//! is called, and equality of words is *not* equality of braids (use
//! [`braid_equal`] for that).

mod artin;
mod permutation;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use artin::{artin_images, braid_equal, FreeWord};
pub use permutation::Permutation;

/// One Artin generator `σ_i^{±1}`, with `i` counted from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i32", into = "i32")]
pub struct Letter {
    index: u32,
    positive: bool,
}

impl Letter {
    /// `σ_index^{sign}`. Panics if `index == 0`.
    pub fn new(index: usize, positive: bool) -> Self {
        assert!(index >= 1, "Artin generators are numbered from 1");
        Self {
            index: index as u32,
            positive,
        }
    }

    pub fn pos(index: usize) -> Self {
        Self::new(index, true)
    }

    pub fn neg(index: usize) -> Self {
        Self::new(index, false)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.index as usize
    }

    #[inline]
    pub fn is_positive(self) -> bool {
        self.positive
    }

    /// `+1` or `-1`.
    #[inline]
    pub fn sign(self) -> i64 {
        if self.positive {
            1
        } else {
            -1
        }
    }

    #[inline]
    pub fn inverse(self) -> Self {
        Self {
            index: self.index,
            positive: !self.positive,
        }
    }

    /// Signed-integer encoding used by the text format (`-2` is `σ_2^{-1}`).
    pub fn to_signed(self) -> i32 {
        if self.positive {
            self.index as i32
        } else {
            -(self.index as i32)
        }
    }
}

impl TryFrom<i32> for Letter {
    type Error = Error;

    fn try_from(v: i32) -> Result<Self> {
        if v == 0 {
            return Err(Error::Parse("generator 0 does not exist".into()));
        }
        Ok(Letter::new(v.unsigned_abs() as usize, v > 0))
    }
}

impl From<Letter> for i32 {
    fn from(l: Letter) -> i32 {
        l.to_signed()
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_signed())
    }
}

/// A word in the Artin generators of the braid group on `strands` strands.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    /// Checks that every generator index lies in `[1, strands - 1]`.
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidArgument("a braid needs at least one strand".into()));
        }
        if let Some(bad) = letters.iter().find(|l| l.index() >= strands) {
            return Err(Error::GeneratorOutOfRange {
                index: bad.index(),
                strands,
            });
        }
        Ok(Self { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        assert!(strands >= 1);
        Self {
            strands,
            letters: Vec::new(),
        }
    }

    /// Builds a word from the signed-integer encoding, e.g. `[1, 2, -1]`.
    pub fn from_signed(strands: usize, word: &[i32]) -> Result<Self> {
        let letters = word
            .iter()
            .map(|&v| Letter::try_from(v))
            .collect::<Result<Vec<_>>>()?;
        Self::new(strands, letters)
    }

    /// Parses the whitespace-separated text format. When `strands` is `None`
    /// the strand count is inferred as `max|index| + 1`.
    pub fn parse(text: &str, strands: Option<usize>) -> Result<Self> {
        let mut word = Vec::new();
        for tok in text.split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() {
                continue;
            }
            let v: i32 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("not a signed integer: {tok:?}")))?;
            word.push(v);
        }
        let inferred = word.iter().map(|v| v.unsigned_abs() as usize).max().unwrap_or(0) + 1;
        Self::from_signed(strands.unwrap_or(inferred), &word)
    }

    #[inline]
    pub fn strands(&self) -> usize {
        self.strands
    }

    #[inline]
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Word length; an upper bound for the geodesic length.
    #[inline]
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| l.is_positive())
    }

    pub fn to_signed(&self) -> Vec<i32> {
        self.letters.iter().map(|l| l.to_signed()).collect()
    }

    pub fn push(&mut self, letter: Letter) -> Result<()> {
        if letter.index() >= self.strands {
            return Err(Error::GeneratorOutOfRange {
                index: letter.index(),
                strands: self.strands,
            });
        }
        self.letters.push(letter);
        Ok(())
    }

    /// Group product `self · other` (letters of `self` first).
    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch {
                left: self.strands,
                right: other.strands,
            });
        }
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// `self^p`; negative powers go through the inverse and `p = 0` is the
    /// empty word.
    pub fn power(&self, p: i64) -> BraidWord {
        let base = if p < 0 { self.inverse() } else { self.clone() };
        let reps = p.unsigned_abs() as usize;
        let mut letters = Vec::with_capacity(base.len() * reps);
        for _ in 0..reps {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    /// `g · self · g⁻¹`.
    pub fn conjugate_by(&self, g: &BraidWord) -> Result<BraidWord> {
        g.concat(self)?.concat(&g.inverse())
    }

    /// Cancels adjacent `σ_i^ε σ_i^{-ε}` pairs until none remain.
    pub fn free_reduce(&self) -> BraidWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord {
            strands: self.strands,
            letters: out,
        }
    }

    /// The same word viewed in `B_m` for `m ≥ strands` (extra trivial strands
    /// on the right).
    pub fn widen(&self, strands: usize) -> Result<BraidWord> {
        if strands < self.strands {
            return Err(Error::InvalidArgument(format!(
                "cannot narrow a {}-strand braid to {strands} strands",
                self.strands
            )));
        }
        Ok(BraidWord {
            strands,
            letters: self.letters.clone(),
        })
    }

    /// Permutation sending a strand's start position to its end position.
    pub fn permutation(&self) -> Permutation {
        permutation::of_word(self)
    }

    /// Number of cycles of the underlying permutation, i.e. the number of
    /// components of the closure.
    pub fn cycle_count(&self) -> usize {
        self.permutation().cycle_count()
    }

    pub fn is_pure(&self) -> bool {
        self.permutation().is_identity()
    }

    /// Exponent sum: the abelianisation `B_n → Z`.
    pub fn lk(&self) -> i64 {
        self.letters.iter().map(|l| l.sign()).sum()
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.letters {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BraidWord::parse(s, None)
    }
}

/// `σ_1 σ_2 ⋯ σ_{p-1}` repeated `q` times, in `B_p`. Its closure is the torus
/// link `T(p, q)`.
pub fn torus_braid(p: usize, q: usize) -> Result<BraidWord> {
    if p == 0 {
        return Err(Error::InvalidArgument("torus braid needs p >= 1".into()));
    }
    let mut letters = Vec::with_capacity((p - 1) * q);
    for _ in 0..q {
        letters.extend((1..p).map(Letter::pos));
    }
    BraidWord::new(p, letters)
}

/// The full twist `Δ_n² = (σ_1 ⋯ σ_{n-1})^n`.
pub fn delta_sq(n: usize) -> Result<BraidWord> {
    torus_braid(n, n)
}

/// The pure braid `η_{i,n}` in which strand `i` travels once around strands
/// `1..i-1`: `(σ_{i-1} ⋯ σ_1)(σ_1 ⋯ σ_{i-1})`.
///
/// The product `η_{2,n} ⋯ η_{n,n}` is `Δ_n²`, and the `η_{i,n}` commute.
pub fn eta(i: usize, n: usize) -> Result<BraidWord> {
    if i < 2 || i > n {
        return Err(Error::InvalidArgument(format!(
            "eta(i, n) needs 2 <= i <= n, got i = {i}, n = {n}"
        )));
    }
    let down = (1..i).rev().map(Letter::pos);
    let up = (1..i).map(Letter::pos);
    BraidWord::new(n, down.chain(up).collect())
}

/// Markov stabilisation `b ↦ b σ_n` into `B_{n+1}`; the closure is unchanged.
pub fn markov_stabilize(b: &BraidWord) -> BraidWord {
    let n = b.strands();
    let mut letters = b.letters().to_vec();
    letters.push(Letter::pos(n));
    BraidWord {
        strands: n + 1,
        letters,
    }
}
