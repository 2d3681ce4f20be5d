use std::fmt;

use serde::{Deserialize, Serialize};

use super::BraidWord;

/// A permutation of strand positions, stored 0-based.
///
/// `images()[s]` is where the strand starting at position `s` ends up.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// Returns `None` unless `images` is a bijection of `0..len`.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Self { images })
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, s: usize) -> usize {
        self.images[s]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        Permutation {
            images: other.images.iter().map(|&j| self.images[j]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// Cycles as lists of 0-based positions, each starting at its smallest
    /// element, ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x);
                x = self.images[x];
            }
            out.push(cyc);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }
}

impl fmt::Display for Permutation {
    /// One-line notation, 1-based.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, j) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", j + 1)?;
        }
        f.write_str("]")
    }
}

pub(super) fn of_word(b: &BraidWord) -> Permutation {
    // occupant[p] = strand (by start position) currently at position p
    let mut occupant: Vec<usize> = (0..b.strands()).collect();
    for l in b.letters() {
        occupant.swap(l.index() - 1, l.index());
    }
    let mut images = vec![0; b.strands()];
    for (pos, &strand) in occupant.iter().enumerate() {
        images[strand] = pos;
    }
    Permutation { images }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_order_matches_concatenation() {
        let a = BraidWord::from_signed(4, &[1, 2]).unwrap();
        let b = BraidWord::from_signed(4, &[3, -1, 2]).unwrap();
        let ab = a.concat(&b).unwrap();
        assert_eq!(ab.permutation(), b.permutation().compose(&a.permutation()));
    }

    #[test]
    fn from_images_rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0]).is_none());
        assert!(Permutation::from_images(vec![2, 0]).is_none());
        assert!(Permutation::from_images(vec![1, 2, 0]).is_some());
    }

    #[test]
    fn cycles_of_three_cycle() {
        let p = Permutation::from_images(vec![1, 2, 0]).unwrap();
        assert_eq!(p.cycles(), vec![vec![0, 1, 2]]);
        assert!(p.compose(&p.inverse()).is_identity());
        assert_eq!(p.to_string(), "[2 3 1]");
    }
}
