#![allow(dead_code)]

use braidqm::reeb::{Edge, Poly, Profile, ReebTree};
use braidqm::BraidWord;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn word(n: usize, signed: &[i32]) -> BraidWord {
    BraidWord::from_signed(n, signed).unwrap()
}

pub fn random_word(rng: &mut ChaCha8Rng, n: usize, max_len: usize, positive: bool) -> BraidWord {
    let len = rng.gen_range(0..=max_len);
    let letters: Vec<i32> = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..n as i32);
            if positive || rng.gen_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect();
    word(n, &letters)
}

/// A random Reeb tree with up to three leaves and cubic profiles, valid
/// by construction.
pub fn random_tree(rng: &mut ChaCha8Rng) -> ReebTree {
    // topology: edge 0 is the root edge; children lists by index
    let mut children: Vec<Vec<usize>> = vec![Vec::new()];
    let mut frontier = vec![(0usize, 0usize)];
    while let Some((e, depth)) = frontier.pop() {
        if depth < 2 && rng.gen_bool(0.5) {
            for _ in 0..2 {
                children.push(Vec::new());
                let c = children.len() - 1;
                children[e].push(c);
                frontier.push((c, depth + 1));
            }
        }
    }
    let m = children.len();
    let len: Vec<f64> = (0..m).map(|_| rng.gen_range(0.02..0.2)).collect();
    fn top(e: usize, children: &[Vec<usize>], len: &[f64]) -> f64 {
        len[e] + children[e].iter().map(|&c| top(c, children, len)).sum::<f64>()
    }
    let scale = rng.gen_range(0.2..0.5) / top(0, &children, &len);
    let mut hi = vec![0.0; m];
    let mut lo = vec![0.0; m];
    for e in (0..m).rev() {
        lo[e] = children[e].iter().map(|&c| hi[c]).sum();
        hi[e] = lo[e] + scale * len[e];
    }
    // profiles top-down: each edge ends at the value its parent starts at
    let mut poly = vec![Poly::zero(); m];
    let mut order = vec![(0usize, 0.0f64)];
    while let Some((e, end_value)) = order.pop() {
        let raw: Vec<f64> = (0..=rng.gen_range(1..=3)).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let r = Poly::new(raw.clone());
        let mut c = raw;
        c[0] += end_value - r.eval(hi[e]);
        poly[e] = Poly::new(c);
        let start = poly[e].eval(lo[e]);
        for &k in &children[e] {
            order.push((k, start));
        }
    }
    let mut parent = vec![m; m];
    for (e, kids) in children.iter().enumerate() {
        for &k in kids {
            parent[k] = e;
        }
    }
    let edges = (0..m)
        .map(|e| Edge {
            lo: lo[e],
            hi: hi[e],
            hbar: Profile::Poly(poly[e].clone()),
        })
        .collect();
    ReebTree::new(edges, parent).unwrap()
}
