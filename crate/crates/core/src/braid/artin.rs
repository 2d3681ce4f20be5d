//! Word problem via the Artin representation `B_n → Aut(F_n)`.
//!
//! `σ_i` acts by `x_i ↦ x_i x_{i+1} x_i⁻¹`, `x_{i+1} ↦ x_i` and fixes the other
//! generators. The representation is faithful, so two braid words are equal
//! in `B_n` exactly when they induce the same automorphism.

use super::BraidWord;

/// A freely reduced word in `F_n`; `k > 0` is `x_k`, `-k` is `x_k⁻¹`.
pub type FreeWord = Vec<i32>;

fn push_reduced(out: &mut FreeWord, g: i32) {
    if out.last() == Some(&-g) {
        out.pop();
    } else {
        out.push(g);
    }
}

fn product(parts: &[&[i32]]) -> FreeWord {
    let mut out = Vec::with_capacity(parts.iter().map(|p| p.len()).sum());
    for p in parts {
        for &g in *p {
            push_reduced(&mut out, g);
        }
    }
    out
}

fn invert(w: &[i32]) -> FreeWord {
    w.iter().rev().map(|g| -g).collect()
}

/// Images `φ_b(x_1), …, φ_b(x_n)` of the free generators under the
/// automorphism induced by `b`.
pub fn artin_images(b: &BraidWord) -> Vec<FreeWord> {
    let n = b.strands();
    let mut img: Vec<FreeWord> = (1..=n as i32).map(|k| vec![k]).collect();
    // φ_{wa} = φ_w ∘ ρ(a): substitute the current images into ρ(a)(x_j)
    for l in b.letters() {
        let i = l.index() - 1;
        let (a, c) = (img[i].clone(), img[i + 1].clone());
        if l.is_positive() {
            img[i] = product(&[&a, &c, &invert(&a)]);
            img[i + 1] = a;
        } else {
            img[i] = c.clone();
            img[i + 1] = product(&[&invert(&c), &a, &c]);
        }
    }
    img
}

/// Whether `a` and `b` represent the same element of `B_n`.
///
/// Words on different strand counts are never equal.
pub fn braid_equal(a: &BraidWord, b: &BraidWord) -> bool {
    if a.strands() != b.strands() {
        return false;
    }
    if a.lk() != b.lk() || a.permutation() != b.permutation() {
        return false;
    }
    let diff = a
        .concat(&b.inverse())
        .expect("strand counts checked above")
        .free_reduce();
    artin_images(&diff)
        .iter()
        .enumerate()
        .all(|(k, w)| w.len() == 1 && w[0] == k as i32 + 1)
}
