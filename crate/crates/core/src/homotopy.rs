//! Transversal basis graphs, their weighted distances, and generation of the
//! cycle lattice by short cycles.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Reverse;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::antisym::AntisymmetricMatroid;
use crate::error::{Error, Result};
use crate::ground::ESubset;
use crate::rgp::basis_graph_adjacent;

pub const DEFAULT_CYCLE_CAP: usize = 1_000_000;

/// The graph on transversal bases with edges of weight `|B \ B'|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedBasisGraph {
    pub vertices: Vec<ESubset>,
    /// `(u, v, weight)` with `u < v`, sorted.
    pub edges: Vec<(usize, usize, u8)>,
}

/// The graph on all bases; adjacent iff `|B \ B'| = 1` and one is a transversal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisGraph {
    pub vertices: Vec<ESubset>,
    pub edges: Vec<(usize, usize)>,
}

fn components(v: usize, edges: impl Iterator<Item = (usize, usize)>) -> usize {
    let mut parent: Vec<usize> = (0..v).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut count = v;
    for (a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            count -= 1;
        }
    }
    count
}

impl BasisGraph {
    pub fn is_connected(&self) -> bool {
        components(self.vertices.len(), self.edges.iter().copied()) <= 1
    }
}

impl WeightedBasisGraph {
    pub fn is_connected(&self) -> bool {
        components(self.vertices.len(), self.edges.iter().map(|e| (e.0, e.1))) <= 1
    }

    pub fn index_of(&self, b: ESubset) -> Option<usize> {
        self.vertices.binary_search(&b).ok()
    }

    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = alloc::vec![Vec::new(); self.vertices.len()];
        for (k, &(a, b, _)) in self.edges.iter().enumerate() {
            adj[a].push((b, k));
            adj[b].push((a, k));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Dijkstra from one vertex; `usize::MAX` marks unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<usize> {
        let adj = self.adjacency();
        let mut dist = alloc::vec![usize::MAX; self.vertices.len()];
        dist[source] = 0;
        let mut heap = BinaryHeap::from([Reverse((0usize, source))]);
        while let Some(Reverse((d, u))) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            for &(v, k) in &adj[u] {
                let nd = d + self.edges[k].2 as usize;
                if nd < dist[v] {
                    dist[v] = nd;
                    heap.push(Reverse((nd, v)));
                }
            }
        }
        dist
    }
}

pub fn build_weighted_graph(m: &AntisymmetricMatroid) -> WeightedBasisGraph {
    let vertices = m.transversal_bases();
    let almost = m.almost_transversal_bases();
    let mut edges = Vec::new();
    for a in 0..vertices.len() {
        for b in a + 1..vertices.len() {
            let (x, y) = (vertices[a], vertices[b]);
            match x.difference(y).len() {
                1 => edges.push((a, b, 1)),
                2 if almost.iter().any(|t| x.difference(*t).len() == 1 && y.difference(*t).len() == 1) => {
                    edges.push((a, b, 2))
                }
                _ => {}
            }
        }
    }
    WeightedBasisGraph { vertices, edges }
}

pub fn build_basis_graph(m: &AntisymmetricMatroid) -> BasisGraph {
    let mut vertices = m.bases().to_vec();
    vertices.sort_unstable();
    let mut edges = Vec::new();
    for a in 0..vertices.len() {
        for b in a + 1..vertices.len() {
            if basis_graph_adjacent(vertices[a], vertices[b]) {
                edges.push((a, b));
            }
        }
    }
    BasisGraph { vertices, edges }
}

pub fn build_graphs(m: &AntisymmetricMatroid) -> (WeightedBasisGraph, BasisGraph) {
    (build_weighted_graph(m), build_basis_graph(m))
}

/// Minimum η-weight of a path between two vertices.
pub fn weighted_distance(g: &WeightedBasisGraph, b: ESubset, b2: ESubset) -> Result<usize> {
    let (Some(s), Some(t)) = (g.index_of(b), g.index_of(b2)) else {
        return Err(Error::Precondition("both endpoints must be transversal bases".into()));
    };
    match g.distances_from(s)[t] {
        usize::MAX => Err(Error::Inconsistent(alloc::format!("{b} and {b2} are disconnected"))),
        d => Ok(d),
    }
}

/// First pair whose weighted distance differs from `|B \ B'|`.
pub fn distance_mismatch(g: &WeightedBasisGraph) -> Option<(ESubset, ESubset, usize)> {
    for s in 0..g.vertices.len() {
        let dist = g.distances_from(s);
        for (t, &d) in dist.iter().enumerate() {
            if d != g.vertices[s].difference(g.vertices[t]).len() {
                return Some((g.vertices[s], g.vertices[t], d));
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CycleVerdict {
    /// The enumerated cycles generate the cycle lattice over `Z`.
    Generated,
    /// Rank or an invariant factor falls short.
    NotGenerated { rank: usize, invariant_factors: Vec<BigInt> },
    /// The enumeration cap was hit before completion.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleReport {
    pub vertices: usize,
    pub edges: usize,
    /// `|E| − |V| + 1`.
    pub cycle_rank: usize,
    pub cycles_enumerated: usize,
    pub max_weight: usize,
    /// Vertex sequence of a cycle with odd weight, if any was met.
    pub odd_cycle: Option<Vec<ESubset>>,
    pub verdict: CycleVerdict,
}

impl CycleReport {
    pub fn passed(&self) -> bool {
        self.verdict == CycleVerdict::Generated && self.odd_cycle.is_none()
    }
}

/// Integer row echelon form built one vector at a time.
struct Echelon {
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl Echelon {
    fn insert(&mut self, mut v: Vec<BigInt>) {
        loop {
            let Some(lead) = v.iter().position(|x| !x.is_zero()) else { return };
            match self.rows.binary_search_by_key(&lead, |r| r.0) {
                Err(at) => {
                    if v[lead].is_negative() {
                        v.iter_mut().for_each(|x| *x = -&*x);
                    }
                    self.rows.insert(at, (lead, v));
                    return;
                }
                Ok(at) => {
                    let row = &mut self.rows[at].1;
                    let (a, b) = (row[lead].clone(), v[lead].clone());
                    let e = a.extended_gcd(&b);
                    let (ra, rb) = (&a / &e.gcd, &b / &e.gcd);
                    let new_row: Vec<BigInt> = row.iter().zip(&v).map(|(r, x)| &e.x * r + &e.y * x).collect();
                    let rest: Vec<BigInt> = row.iter().zip(&v).map(|(r, x)| &ra * x - &rb * r).collect();
                    *row = new_row;
                    if row[lead].is_negative() {
                        row.iter_mut().for_each(|x| *x = -&*x);
                    }
                    v = rest;
                }
            }
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Unit pivots mean the lattice is saturated in `Z^E`.
    fn unit_pivots(&self) -> bool {
        self.rows.iter().all(|(p, r)| r[*p].is_one())
    }
}

/// Invariant factors of an integer matrix (nonzero diagonal of its Smith form).
#[allow(clippy::needless_range_loop)]
pub fn invariant_factors(rows: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let r = m.len();
    let c = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut t = 0;
    while t < r.min(c) {
        let Some((pi, pj)) = (t..r)
            .flat_map(|i| (t..c).map(move |j| (i, j)))
            .filter(|&(i, j)| !m[i][j].is_zero())
            .min_by_key(|&(i, j)| m[i][j].abs())
        else {
            break;
        };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut changed = false;
            for i in t + 1..r {
                if !m[i][t].is_zero() {
                    let q = m[i][t].div_floor(&m[t][t]);
                    for j in t..c {
                        let v = &m[i][j] - &q * &m[t][j];
                        m[i][j] = v;
                    }
                    if !m[i][t].is_zero() {
                        m.swap(t, i);
                        changed = true;
                    }
                }
            }
            for j in t + 1..c {
                if !m[t][j].is_zero() {
                    let q = m[t][j].div_floor(&m[t][t]);
                    for i in t..r {
                        let v = &m[i][j] - &q * &m[i][t];
                        m[i][j] = v;
                    }
                    if !m[t][j].is_zero() {
                        for row in m.iter_mut() {
                            row.swap(t, j);
                        }
                        changed = true;
                    }
                }
            }
            if changed {
                continue;
            }
            // Divisibility: fold a row with a non-multiple entry into row t.
            let bad = (t + 1..r)
                .flat_map(|i| (t + 1..c).map(move |j| (i, j)))
                .find(|&(i, j)| !m[i][j].mod_floor(&m[t][t]).is_zero());
            match bad {
                Some((i, _)) => {
                    for j in t..c {
                        let v = &m[t][j] + &m[i][j];
                        m[t][j] = v;
                    }
                }
                None => break,
            }
        }
        out.push(m[t][t].abs());
        t += 1;
    }
    out
}

/// Enumerates all simple cycles of η-weight at most `max_weight` and checks
/// that they generate the integer cycle lattice.
pub fn short_cycle_generation(g: &WeightedBasisGraph, max_weight: usize) -> Result<CycleReport> {
    short_cycle_generation_capped(g, max_weight, DEFAULT_CYCLE_CAP)
}

pub fn short_cycle_generation_capped(g: &WeightedBasisGraph, max_weight: usize, cap: usize) -> Result<CycleReport> {
    if !g.is_connected() {
        return Err(Error::Precondition("transversal basis graph is disconnected".into()));
    }
    let v = g.vertices.len();
    let e = g.edges.len();
    let cycle_rank = (e + 1).saturating_sub(v);
    let adj = g.adjacency();
    let dist: Vec<Vec<usize>> = (0..v).map(|s| g.distances_from(s)).collect();
    let mut lattice = Echelon { rows: Vec::new() };
    let mut report = CycleReport {
        vertices: v,
        edges: e,
        cycle_rank,
        cycles_enumerated: 0,
        max_weight,
        odd_cycle: None,
        verdict: CycleVerdict::Generated,
    };
    let mut capped = false;
    let mut saturated = cycle_rank == 0;

    struct Walk<'a> {
        g: &'a WeightedBasisGraph,
        adj: &'a [Vec<(usize, usize)>],
        dist: &'a [Vec<usize>],
        max_weight: usize,
        cap: usize,
        path: Vec<usize>,
        edges: Vec<usize>,
        on_path: Vec<bool>,
    }

    fn dfs<F: FnMut(&[usize], &[usize], usize) -> bool>(w: &mut Walk<'_>, start: usize, weight: usize, found: &mut F) -> bool {
        let u = *w.path.last().expect("nonempty");
        for &(next, k) in w.adj[u].iter() {
            let nw = weight + w.g.edges[k].2 as usize;
            if nw > w.max_weight {
                continue;
            }
            if next == start {
                // Close a cycle of at least three vertices, once per direction pair.
                if w.path.len() >= 3 && w.path[1] < u {
                    w.edges.push(k);
                    let keep = found(&w.path, &w.edges, nw);
                    w.edges.pop();
                    if !keep {
                        return false;
                    }
                }
                continue;
            }
            if next < start || w.on_path[next] || nw + w.dist[next][start] > w.max_weight {
                continue;
            }
            w.path.push(next);
            w.edges.push(k);
            w.on_path[next] = true;
            let go = dfs(w, start, nw, found);
            w.on_path[next] = false;
            w.edges.pop();
            w.path.pop();
            if !go {
                return false;
            }
        }
        true
    }

    let mut walk = Walk {
        g,
        adj: &adj,
        dist: &dist,
        max_weight,
        cap,
        path: Vec::new(),
        edges: Vec::new(),
        on_path: alloc::vec![false; v],
    };
    for start in 0..v {
        walk.path.clear();
        walk.path.push(start);
        walk.on_path[start] = true;
        let cap = walk.cap;
        let go = dfs(&mut walk, start, 0, &mut |path: &[usize], edges: &[usize], weight: usize| {
            report.cycles_enumerated += 1;
            if weight % 2 == 1 && report.odd_cycle.is_none() {
                report.odd_cycle = Some(path.iter().map(|&p| g.vertices[p]).collect());
            }
            if !saturated {
                let mut vec = alloc::vec![BigInt::zero(); e];
                for (step, &k) in edges.iter().enumerate() {
                    let from = path[step];
                    let sign = if from == g.edges[k].0 { 1 } else { -1 };
                    vec[k] += sign;
                }
                lattice.insert(vec);
                saturated = lattice.rank() == cycle_rank && lattice.unit_pivots();
            }
            if report.cycles_enumerated >= cap {
                capped = true;
                return false;
            }
            true
        });
        walk.on_path[start] = false;
        if !go {
            break;
        }
    }
    if capped {
        report.verdict = CycleVerdict::Inconclusive;
        return Ok(report);
    }
    let rows: Vec<Vec<BigInt>> = lattice.rows.into_iter().map(|r| r.1).collect();
    let factors = invariant_factors(&rows);
    if rows.len() != cycle_rank || factors.iter().any(|f| !f.is_one()) {
        report.verdict = CycleVerdict::NotGenerated { rank: rows.len(), invariant_factors: factors };
    }
    Ok(report)
}
