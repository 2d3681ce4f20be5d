use crate::braid::{BraidWord, Letter};

/// Order in which adjacent strand pairs are tried when merging cycles.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Selector {
    #[default]
    Ascending,
    Descending,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// A positive braid `α` using each generator at most once such that the
/// closure of `α·β` is a knot.
///
/// Each appended `σ_i` joins the cycles containing positions `i` and `i+1`,
/// so `α` alone closes to an unlink and `|lk(α)| ≤ n − 1`.
pub fn completing_braid(beta: &BraidWord) -> BraidWord {
    completing_braid_with(beta, Selector::Ascending)
}

pub fn completing_braid_with(beta: &BraidWord, selector: Selector) -> BraidWord {
    let n = beta.strands();
    let mut uf = UnionFind((0..n).collect());
    for cyc in beta.permutation().cycles() {
        for w in cyc.windows(2) {
            uf.union(w[0], w[1]);
        }
    }
    let columns: Vec<usize> = match selector {
        Selector::Ascending => (1..n).collect(),
        Selector::Descending => (1..n).rev().collect(),
    };
    let letters = columns
        .into_iter()
        .filter(|&i| uf.union(i - 1, i))
        .map(Letter::pos)
        .collect();
    BraidWord::new(n, letters).expect("indices lie in 1..n")
}
