//! Reeb tree extraction from a Hamiltonian sampled on a uniform grid.
//!
//! Grid points are the vertices of the Freudenthal triangulation (axis and
//! one diagonal neighbour), which makes join and split trees consistent.
//! The zero region touching the border is contracted to the root. Ties
//! are broken by grid index (simulation of simplicity). The contour tree
//! is obtained by merging join and split trees, then reduced to arcs
//! between critical nodes; each grid point contributes its cell area to
//! the arc it lies on.

use std::collections::VecDeque;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::profile::{Profile, SampleTable};
use super::tree::{Edge, ReebTree};
use crate::error::{Error, Result};

/// Samples `values[iy * nx + ix]` of `H` at `(xmin + ix·dx, ymin + iy·dy)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub nx: usize,
    pub ny: usize,
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
    pub values: Vec<f64>,
}

impl Grid {
    /// Samples `f` on an `n × n` grid over `[−1, 1]²`.
    pub fn sample<F: Fn(f64, f64) -> f64>(n: usize, f: F) -> Self {
        let mut g = Grid {
            nx: n,
            ny: n,
            xmin: -1.0,
            xmax: 1.0,
            ymin: -1.0,
            ymax: 1.0,
            values: Vec::with_capacity(n * n),
        };
        for iy in 0..n {
            for ix in 0..n {
                let (x, y) = g.point(ix, iy);
                g.values.push(f(x, y));
            }
        }
        g
    }

    pub fn dx(&self) -> f64 {
        (self.xmax - self.xmin) / (self.nx - 1) as f64
    }

    pub fn dy(&self) -> f64 {
        (self.ymax - self.ymin) / (self.ny - 1) as f64
    }

    pub fn point(&self, ix: usize, iy: usize) -> (f64, f64) {
        (self.xmin + ix as f64 * self.dx(), self.ymin + iy as f64 * self.dy())
    }

    /// Text format: a header line `nx ny xmin xmax ymin ymax`, then `ny`
    /// rows of `nx` whitespace-separated values. Lines starting with `#`
    /// are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header: Vec<&str> = lines
            .next()
            .ok_or_else(|| Error::Parse("empty grid file".into()))?
            .split_whitespace()
            .collect();
        if header.len() != 6 {
            return Err(Error::Parse("grid header must be: nx ny xmin xmax ymin ymax".into()));
        }
        let int = |s: &str| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad size {s:?}")));
        let real = |s: &str| s.parse::<f64>().map_err(|_| Error::Parse(format!("bad number {s:?}")));
        let (nx, ny) = (int(header[0])?, int(header[1])?);
        let mut values = Vec::with_capacity(nx * ny);
        for (row, line) in lines.enumerate() {
            let vals: Vec<f64> = line.split_whitespace().map(real).collect::<Result<_>>()?;
            if vals.len() != nx {
                return Err(Error::Parse(format!("grid row {row} has {} values, expected {nx}", vals.len())));
            }
            values.extend(vals);
        }
        if values.len() != nx * ny {
            return Err(Error::Parse(format!("{} grid rows, expected {ny}", values.len() / nx.max(1))));
        }
        let g = Grid {
            nx,
            ny,
            xmin: real(header[2])?,
            xmax: real(header[3])?,
            ymin: real(header[4])?,
            ymax: real(header[5])?,
            values,
        };
        g.check_shape()?;
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} {} {} {} {} {}\n",
            self.nx, self.ny, self.xmin, self.xmax, self.ymin, self.ymax
        );
        for row in self.values.chunks(self.nx) {
            let r: Vec<String> = row.iter().map(|v| format!("{v:e}")).collect();
            out.push_str(&r.join(" "));
            out.push('\n');
        }
        out
    }

    pub(crate) fn check_shape(&self) -> Result<()> {
        if self.nx < 3 || self.ny < 3 {
            return Err(Error::Grid("grid must be at least 3 × 3".into()));
        }
        if self.values.len() != self.nx * self.ny {
            return Err(Error::Grid("value count does not match nx·ny".into()));
        }
        if !(self.xmax > self.xmin && self.ymax > self.ymin) {
            return Err(Error::Grid("empty extent".into()));
        }
        if let Some(k) = self.values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Grid(format!("non-finite value at index {k}")));
        }
        Ok(())
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
}

const NEIGHBOURS: [(isize, isize); 6] = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)];

fn remove_item(v: &mut Vec<usize>, x: usize) {
    if let Some(k) = v.iter().position(|&y| y == x) {
        v.swap_remove(k);
    }
}

fn replace_item(v: &mut [usize], old: usize, new: usize) {
    if let Some(slot) = v.iter_mut().find(|y| **y == old) {
        *slot = new;
    }
}

/// Contour-tree arcs of a graph whose vertices are totally ordered by `rank`.
fn contour_tree(adj: &[Vec<usize>], rank: &[usize]) -> Vec<(usize, usize)> {
    let n = adj.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| rank[v]);

    // join tree: components of superlevel sets, swept downwards
    let mut jt_up: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut jt_down: Vec<Option<usize>> = vec![None; n];
    let mut uf = UnionFind::new(n);
    let mut extreme: Vec<usize> = (0..n).collect();
    for &v in order.iter().rev() {
        for &u in &adj[v] {
            if rank[u] > rank[v] {
                let (ru, rv) = (uf.find(u), uf.find(v));
                if ru != rv {
                    let low = extreme[ru];
                    jt_down[low] = Some(v);
                    jt_up[v].push(low);
                    uf.parent[ru] = rv;
                    extreme[rv] = v;
                }
            }
        }
    }

    // split tree: components of sublevel sets, swept upwards
    let mut st_down: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut st_up: Vec<Option<usize>> = vec![None; n];
    let mut uf = UnionFind::new(n);
    let mut extreme: Vec<usize> = (0..n).collect();
    for &v in &order {
        for &u in &adj[v] {
            if rank[u] < rank[v] {
                let (ru, rv) = (uf.find(u), uf.find(v));
                if ru != rv {
                    let high = extreme[ru];
                    st_up[high] = Some(v);
                    st_down[v].push(high);
                    uf.parent[ru] = rv;
                    extreme[rv] = v;
                }
            }
        }
    }

    let mut arcs = Vec::with_capacity(n.saturating_sub(1));
    let mut removed = vec![false; n];
    let mut remaining = n;
    let is_leaf = |v: usize, jt_up: &[Vec<usize>], st_down: &[Vec<usize>]| {
        (jt_up[v].is_empty() && st_down[v].len() == 1) || (st_down[v].is_empty() && jt_up[v].len() == 1)
    };
    let mut queue: VecDeque<usize> = order.iter().copied().filter(|&v| is_leaf(v, &jt_up, &st_down)).collect();
    while remaining > 1 {
        let Some(v) = queue.pop_front() else { break };
        if removed[v] || !is_leaf(v, &jt_up, &st_down) {
            continue;
        }
        let touched: [Option<usize>; 3];
        if jt_up[v].is_empty() {
            // upper leaf
            let u = jt_down[v].expect("upper leaf has a lower join neighbour");
            arcs.push((v, u));
            remove_item(&mut jt_up[u], v);
            let d = st_down[v][0];
            let a = st_up[v];
            st_up[d] = a;
            if let Some(a) = a {
                replace_item(&mut st_down[a], v, d);
            }
            touched = [Some(u), Some(d), a];
        } else {
            let u = st_up[v].expect("lower leaf has an upper split neighbour");
            arcs.push((v, u));
            remove_item(&mut st_down[u], v);
            let w = jt_up[v][0];
            let b = jt_down[v];
            jt_down[w] = b;
            if let Some(b) = b {
                replace_item(&mut jt_up[b], v, w);
            }
            touched = [Some(u), Some(w), b];
        }
        removed[v] = true;
        jt_up[v].clear();
        st_down[v].clear();
        remaining -= 1;
        for t in touched.into_iter().flatten() {
            if !removed[t] && is_leaf(t, &jt_up, &st_down) {
                queue.push_back(t);
            }
        }
    }
    arcs
}

/// Parent of every node on the path to node 0.
fn orient(ct: &[Vec<usize>]) -> Vec<usize> {
    let mut up = vec![usize::MAX; ct.len()];
    let order = breadth_first(ct);
    for &v in &order {
        for &w in &ct[v] {
            if w != 0 && up[w] == usize::MAX && up[v] != w {
                up[w] = v;
            }
        }
    }
    up
}

/// Nodes reachable from node 0, in breadth-first order.
fn breadth_first(ct: &[Vec<usize>]) -> Vec<usize> {
    let mut seen = vec![false; ct.len()];
    let mut order = vec![0usize];
    seen[0] = true;
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for &w in &ct[v] {
            if !seen[w] {
                seen[w] = true;
                order.push(w);
            }
        }
    }
    order
}

/// Contracts contour-tree arcs whose value change is at most `tol`: the
/// spurious critical pairs produced by breaking exact ties (for instance in
/// symmetric samples). Node 0 stays the root. Returns the contracted
/// adjacency and the number of grid cells carried by each node.
fn contract_flat_arcs(n: usize, arcs: &[(usize, usize)], value: &[f64], tol: f64) -> (Vec<Vec<usize>>, Vec<f64>) {
    let mut uf = UnionFind::new(n);
    for &(a, b) in arcs {
        if (value[a] - value[b]).abs() <= tol {
            let (ra, rb) = (uf.find(a), uf.find(b));
            // keep the smaller id as representative so the root stays 0
            uf.parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut weight = vec![0.0; n];
    for v in 0..n {
        let r = uf.find(v);
        weight[r] += 1.0;
    }
    let mut ct: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in arcs {
        let (ra, rb) = (uf.find(a), uf.find(b));
        if ra != rb {
            ct[ra].push(rb);
            ct[rb].push(ra);
        }
    }
    (ct, weight)
}

/// Relative value separation below which an arc counts as a plateau.
const PLATEAU_TOL: f64 = 1e-9;

/// Reeb tree of a Hamiltonian sampled on a grid over (a box containing) the
/// unit disc. `H` must vanish outside the open unit disc and on the border.
pub fn reeb_from_grid(grid: &Grid) -> Result<ReebTree> {
    grid.check_shape()?;
    let (nx, ny) = (grid.nx, grid.ny);
    for iy in 0..ny {
        for ix in 0..nx {
            let (x, y) = grid.point(ix, iy);
            let v = grid.values[iy * nx + ix];
            let border = ix == 0 || iy == 0 || ix == nx - 1 || iy == ny - 1;
            if v != 0.0 && (border || x * x + y * y >= 1.0) {
                return Err(Error::Grid(format!(
                    "H = {v} at ({x}, {y}); it must vanish outside the open unit disc and on the border"
                )));
            }
        }
    }
    let range = grid.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let cell = grid.dx() * grid.dy();
    let step = |ix: usize, iy: usize, (ox, oy): (isize, isize)| {
        let (jx, jy) = (ix as isize + ox, iy as isize + oy);
        (jx >= 0 && jy >= 0 && (jx as usize) < nx && (jy as usize) < ny).then(|| (jx as usize, jy as usize))
    };

    // contract the zero region connected to the border into node 0
    let mut in_root = vec![false; nx * ny];
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for iy in 0..ny {
        for ix in 0..nx {
            if ix == 0 || iy == 0 || ix == nx - 1 || iy == ny - 1 {
                in_root[iy * nx + ix] = true;
                stack.push((ix, iy));
            }
        }
    }
    while let Some((ix, iy)) = stack.pop() {
        for d in NEIGHBOURS {
            if let Some((jx, jy)) = step(ix, iy, d) {
                let k = jy * nx + jx;
                if !in_root[k] && grid.values[k] == 0.0 {
                    in_root[k] = true;
                    stack.push((jx, jy));
                }
            }
        }
    }
    let mut node = vec![0usize; nx * ny];
    let mut value = vec![0.0];
    for k in 0..nx * ny {
        if !in_root[k] {
            node[k] = value.len();
            value.push(grid.values[k]);
        }
    }
    let n = value.len();
    if n == 1 {
        return Ok(ReebTree::empty());
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for iy in 0..ny {
        for ix in 0..nx {
            for d in [(1, 0), (0, 1), (1, 1)] {
                if let Some((jx, jy)) = step(ix, iy, d) {
                    let (a, b) = (node[iy * nx + ix], node[jy * nx + jx]);
                    if a != b {
                        adj[a].push(b);
                        adj[b].push(a);
                    }
                }
            }
        }
    }
    for a in &mut adj {
        a.sort_unstable();
        a.dedup();
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| value[a].total_cmp(&value[b]).then(a.cmp(&b)));
    let mut rank = vec![0; n];
    for (r, &v) in order.iter().enumerate() {
        rank[v] = r;
    }

    let arcs = contour_tree(&adj, &rank);
    if arcs.len() != n - 1 {
        return Err(Error::Grid("level-set topology is not a tree (is the support a disc?)".into()));
    }
    let tol = PLATEAU_TOL * range;
    let (ct, weight) = contract_flat_arcs(n, &arcs, &value, tol);
    let up = orient(&ct);
    let bfs = breadth_first(&ct);
    let critical = |v: usize| v == 0 || ct[v].len() != 2;

    // reduced arcs: (leaf-side critical node, interior nodes, root-side node)
    let mut starts: Vec<usize> = bfs.iter().copied().filter(|&v| v != 0 && critical(v)).collect();
    starts.sort_unstable();
    let mut edge_of = vec![usize::MAX; n];
    for (k, &c) in starts.iter().enumerate() {
        edge_of[c] = k;
    }
    let e = starts.len();
    let mut chains: Vec<(Vec<usize>, usize)> = Vec::with_capacity(e);
    for &c in &starts {
        let mut interior = Vec::new();
        let mut v = up[c];
        while !critical(v) {
            interior.push(v);
            v = up[v];
        }
        if (value[c] - value[v]).abs() <= tol {
            return Err(Error::Grid(format!(
                "plateau: arc between values {} and {} cannot be resolved by perturbation",
                value[c], value[v]
            )));
        }
        chains.push((interior, v));
    }
    let parent: Vec<usize> = chains
        .iter()
        .map(|(_, b)| if *b == 0 { e } else { edge_of[*b] })
        .collect();

    // J intervals, children before parents (reverse BFS order)
    let mut lo = vec![0.0; e];
    let mut hi = vec![0.0; e];
    let unit = cell / (2.0 * PI);
    for &v in bfs.iter().rev() {
        if v == 0 || !critical(v) {
            continue;
        }
        let k = edge_of[v];
        let w: f64 = std::iter::once(v).chain(chains[k].0.iter().copied()).map(|x| weight[x]).sum();
        hi[k] = lo[k] + w * unit;
        if parent[k] < e {
            lo[parent[k]] += hi[k];
        }
    }
    let edges = (0..e)
        .map(|k| {
            let (interior, b) = &chains[k];
            let mut j = vec![lo[k]];
            let mut h = vec![value[starts[k]]];
            let mut acc = weight[starts[k]];
            for &v in interior {
                j.push(lo[k] + (acc + weight[v] / 2.0) * unit);
                h.push(value[v]);
                acc += weight[v];
            }
            j.push(hi[k]);
            h.push(value[*b]);
            Ok(Edge {
                lo: lo[k],
                hi: hi[k],
                hbar: Profile::Samples(SampleTable::new(j, h)?),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ReebTree::new(edges, parent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reeb::gg::calabi;

    fn bump(cx: f64, cy: f64, rad: f64, height: f64) -> impl Fn(f64, f64) -> f64 {
        move |x, y| {
            let s = ((x - cx).powi(2) + (y - cy).powi(2)) / (rad * rad);
            if s < 1.0 {
                height * (1.0 - s).powi(2)
            } else {
                0.0
            }
        }
    }

    #[test]
    fn zero_grid_gives_root_only() {
        let t = reeb_from_grid(&Grid::sample(21, |_, _| 0.0)).unwrap();
        assert!(t.edges.is_empty());
    }

    #[test]
    fn radial_bump_single_edge() {
        let g = Grid::sample(121, bump(0.0, 0.0, 0.8, 1.0));
        let t = reeb_from_grid(&g).unwrap();
        assert_eq!(t.edges.len(), 1);
        // J at the support edge is area/2π = 0.8²/2
        assert!((t.edges[0].hi - 0.32).abs() < 0.01, "{}", t.edges[0].hi);
        // H = (1 − 2J/0.32)², so ∫ℏ dJ = 0.32/3
        let want = -4.0 * PI * 0.32 / 3.0;
        assert!((calabi(&t) - want).abs() < 0.02 * want.abs(), "{} vs {want}", calabi(&t));
    }

    #[test]
    fn two_bumps_two_leaves() {
        let (b1, b2) = (bump(-0.4, 0.0, 0.3, 1.0), bump(0.4, 0.1, 0.25, 0.7));
        let g = Grid::sample(101, move |x, y| b1(x, y) + b2(x, y));
        let t = reeb_from_grid(&g).unwrap();
        assert_eq!(t.leaves().len(), 2);
        assert_eq!(t.parent, vec![2, 2]);
    }

    #[test]
    fn bumps_on_a_plinth_meet_at_a_saddle() {
        let (b1, b2, base) = (bump(-0.2, 0.0, 0.3, 1.0), bump(0.2, 0.0, 0.3, 0.8), bump(0.0, 0.0, 0.85, 0.5));
        let g = Grid::sample(121, move |x, y| b1(x, y) + b2(x, y) + base(x, y));
        let t = reeb_from_grid(&g).unwrap();
        assert_eq!(t.edges.len(), 3);
        assert_eq!(t.leaves().len(), 2);
        t.validate().unwrap();
        // the plinth's own summit lies inside the bumps' support
        let c = Grid::sample(121, bump(0.0, 0.0, 0.85, 0.5));
        let three_peaks = |x: f64, y: f64| {
            let (b1, b2) = (bump(-0.3, 0.0, 0.25, 1.0), bump(0.3, 0.0, 0.25, 0.8));
            b1(x, y) + b2(x, y) + bump(0.0, 0.0, 0.85, 0.5)(x, y)
        };
        assert_eq!(reeb_from_grid(&c).unwrap().edges.len(), 1);
        assert_eq!(reeb_from_grid(&Grid::sample(121, three_peaks)).unwrap().leaves().len(), 3);
    }

    #[test]
    fn rejects_support_on_boundary() {
        let g = Grid::sample(11, |_, _| 1.0);
        assert!(matches!(reeb_from_grid(&g), Err(Error::Grid(_))));
    }

    #[test]
    fn text_round_trip() {
        let g = Grid::sample(5, bump(0.0, 0.0, 0.5, 2.0));
        assert_eq!(Grid::parse(&g.to_text()).unwrap(), g);
        assert!(Grid::parse("3 3 -1 1 -1 1\n0 0 0\n0 0 0\n").is_err());
    }
}
