//! Offline ground truth: intersection graphs, verifiers, exact `ω`, `χ` and
//! `λ` for small graphs, instance generators and ratio reports.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{disks_intersect_filtered, sq_dist, Disk, ExactScalar, Point};
use crate::online::{bound_formula, l21_bound, AlgorithmConfig, BoundParams, Mode, OnlineColor, RunOutput};
use crate::plane_coloring::PlaneColoring;
use crate::shapes::{shapes_intersect, ConvexShape};
use crate::tiling::TileIndex;

pub const CLIQUE_LIMIT: usize = 100;
pub const CHROMATIC_LIMIT: usize = 20;
pub const L21_LIMIT: usize = 10;

/// Generator identifier stored with instances.
pub const RNG_ID: &str = "chacha8";

/// Simple undirected graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionGraph {
    adj: Vec<Vec<usize>>,
    pub provenance: String,
}

impl IntersectionGraph {
    pub fn from_edges(n: usize, edges: &[(usize, usize)], provenance: &str) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            assert!(u != v && u < n && v < n, "bad edge ({}, {})", u, v);
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
            a.dedup();
        }
        IntersectionGraph {
            adj,
            provenance: provenance.to_string(),
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, a) in self.adj.iter().enumerate() {
            out.extend(a.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Induced subgraph on `vs` (renumbered in the given order).
    pub fn induced(&self, vs: &[usize]) -> Self {
        let pos: HashMap<usize, usize> = vs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut edges = Vec::new();
        for (i, &v) in vs.iter().enumerate() {
            for w in &self.adj[v] {
                if let Some(&j) = pos.get(w) {
                    if i < j {
                        edges.push((i, j));
                    }
                }
            }
        }
        Self::from_edges(vs.len(), &edges, &self.provenance)
    }

    fn bitsets(&self) -> Vec<Bits> {
        let n = self.n();
        self.adj
            .iter()
            .map(|a| {
                let mut b = Bits::new(n);
                for &v in a {
                    b.set(v);
                }
                b
            })
            .collect()
    }
}

/// Grid-bucketed candidate pairs whose boxes may touch.
fn candidate_pairs(boxes: &[(f64, f64, f64, f64)], cell: f64) -> Vec<(usize, usize)> {
    let mut grid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    let key = |v: f64| (v / cell).floor() as i64;
    for (i, b) in boxes.iter().enumerate() {
        for gx in key(b.0)..=key(b.2) {
            for gy in key(b.1)..=key(b.3) {
                grid.entry((gx, gy)).or_default().push(i);
            }
        }
    }
    let mut pairs = Vec::new();
    for bucket in grid.values() {
        for (a, &u) in bucket.iter().enumerate() {
            for &v in &bucket[a + 1..] {
                pairs.push((u.min(v), u.max(v)));
            }
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    pairs
}

pub fn build_disk_graph(disks: &[Disk]) -> IntersectionGraph {
    let approx: Vec<_> = disks.iter().map(Disk::approx).collect();
    let pad = 1e-6;
    let boxes: Vec<_> = approx
        .iter()
        .map(|a| {
            let r = a.d / 2.0 + pad;
            (a.x - r, a.y - r, a.x + r, a.y + r)
        })
        .collect();
    let cell = approx.iter().map(|a| a.d).fold(1.0, f64::max);
    let edges: Vec<_> = candidate_pairs(&boxes, cell)
        .into_iter()
        .filter(|&(u, v)| disks_intersect_filtered(&disks[u], &approx[u], &disks[v], &approx[v]))
        .collect();
    IntersectionGraph::from_edges(disks.len(), &edges, "disks")
}

pub fn build_shape_graph(shapes: &[ConvexShape]) -> IntersectionGraph {
    let pad = 1e-6;
    let boxes: Vec<_> = shapes
        .iter()
        .map(|s| {
            let b = s.bbox_f64();
            (b.0 - pad, b.1 - pad, b.2 + pad, b.3 + pad)
        })
        .collect();
    let cell = boxes.iter().map(|b| (b.2 - b.0).max(b.3 - b.1)).fold(1.0, f64::max);
    let edges: Vec<_> = candidate_pairs(&boxes, cell)
        .into_iter()
        .filter(|&(u, v)| shapes_intersect(&shapes[u], &shapes[v]))
        .collect();
    IntersectionGraph::from_edges(shapes.len(), &edges, "shapes")
}

/// Graph of disks centered at the shape centers with the given squared
/// diameters (inner or outer disks).
pub fn build_center_disk_graph(centers: &[Point], diameters_sq: &[ExactScalar]) -> IntersectionGraph {
    let n = centers.len();
    let approx: Vec<(f64, f64, f64)> = (0..n)
        .map(|i| {
            let (x, y) = centers[i].approx();
            (x, y, diameters_sq[i].to_f64().sqrt())
        })
        .collect();
    let boxes: Vec<_> = approx
        .iter()
        .map(|&(x, y, d)| (x - d / 2.0 - 1e-6, y - d / 2.0 - 1e-6, x + d / 2.0 + 1e-6, y + d / 2.0 + 1e-6))
        .collect();
    let cell = approx.iter().map(|a| a.2).fold(1.0, f64::max);
    let edges: Vec<_> = candidate_pairs(&boxes, cell)
        .into_iter()
        .filter(|&(u, v)| {
            // |c_u − c_v| ≤ (d_u + d_v)/2  ⇔  4|Δ|² − d_u² − d_v² ≤ 2 d_u d_v
            let lhs = sq_dist(&centers[u], &centers[v]).scale(&BigRational::from_integer(4.into()))
                - diameters_sq[u].clone()
                - diameters_sq[v].clone();
            if lhs <= ExactScalar::zero() {
                return true;
            }
            // both sides positive: compare squares
            let rhs_sq = (&diameters_sq[u] * &diameters_sq[v]).scale(&BigRational::from_integer(4.into()));
            lhs.square() <= rhs_sq
        })
        .collect();
    IntersectionGraph::from_edges(n, &edges, "center-disks")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoringReport {
    pub passed: bool,
    /// Edges whose endpoints got the same `(branch, value)`.
    pub conflicts: Vec<(usize, usize)>,
}

pub fn verify_coloring(graph: &IntersectionGraph, colors: &[OnlineColor]) -> ColoringReport {
    assert_eq!(graph.n(), colors.len(), "assignment must be total");
    let conflicts: Vec<_> = graph
        .edges()
        .into_iter()
        .filter(|&(u, v)| colors[u] == colors[v])
        .collect();
    ColoringReport {
        passed: conflicts.is_empty(),
        conflicts,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct L21Report {
    pub passed: bool,
    /// Adjacent pairs with labels less than 2 apart.
    pub edge_violations: Vec<(usize, usize)>,
    /// Pairs at distance exactly 2 with equal labels.
    pub distance2_violations: Vec<(usize, usize)>,
}

pub fn verify_l21(graph: &IntersectionGraph, labels: &[u64]) -> L21Report {
    assert_eq!(graph.n(), labels.len(), "labeling must be total");
    let edge_violations: Vec<_> = graph
        .edges()
        .into_iter()
        .filter(|&(u, v)| labels[u].abs_diff(labels[v]) < 2)
        .collect();
    let mut distance2_violations = Vec::new();
    let mut seen = vec![usize::MAX; graph.n()];
    for u in 0..graph.n() {
        seen[u] = u;
        for &v in graph.neighbors(u) {
            seen[v] = u;
        }
        for &v in graph.neighbors(u) {
            for &w in graph.neighbors(v) {
                if seen[w] != u {
                    seen[w] = u;
                    if w > u && labels[w] == labels[u] {
                        distance2_violations.push((u, w));
                    }
                }
            }
        }
    }
    distance2_violations.sort_unstable();
    L21Report {
        passed: edge_violations.is_empty() && distance2_violations.is_empty(),
        edge_violations,
        distance2_violations,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn full(n: usize) -> Self {
        let mut b = Bits::new(n);
        for v in 0..n {
            b.set(v);
        }
        b
    }

    fn set(&mut self, v: usize) {
        self.0[v / 64] |= 1 << (v % 64);
    }

    fn clear(&mut self, v: usize) {
        self.0[v / 64] &= !(1 << (v % 64));
    }

    fn get(&self, v: usize) -> bool {
        self.0[v / 64] >> (v % 64) & 1 == 1
    }

    fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + t)
            })
        })
    }
}

fn check_limit(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::TooLarge { n, limit });
    }
    Ok(())
}

/// Exact clique number with the default size limit.
pub fn max_clique_exact(graph: &IntersectionGraph) -> Result<usize> {
    max_clique_exact_with_limit(graph, CLIQUE_LIMIT)
}

/// Branch and bound with greedy-coloring bounds (Tomita–Seki style).
///
/// Graphs above `limit` vertices are still solved when every closed
/// neighborhood fits under it, one neighborhood at a time.
pub fn max_clique_exact_with_limit(graph: &IntersectionGraph, limit: usize) -> Result<usize> {
    let n = graph.n();
    if n > limit {
        check_limit(graph.max_degree() + 1, limit)?;
    }
    let adj = graph.bitsets();
    let mut best = 0;
    if n <= limit {
        expand(&adj, 0, Bits::full(n), &mut best);
        return Ok(best);
    }
    for v in 0..n {
        // cliques whose smallest vertex is v
        let mut cand = Bits::new(n);
        for w in adj[v].iter().filter(|&w| w > v) {
            cand.set(w);
        }
        if cand.is_empty() {
            best = best.max(1);
        } else {
            expand(&adj, 1, cand, &mut best);
        }
    }
    Ok(best)
}

fn color_sort(adj: &[Bits], cand: &Bits) -> Vec<(usize, usize)> {
    // greedy coloring of the candidates; returns (vertex, color) by color
    let mut uncolored = cand.clone();
    let mut order = Vec::new();
    let mut color = 0;
    while !uncolored.is_empty() {
        color += 1;
        let mut avail = uncolored.clone();
        while let Some(v) = avail.first() {
            avail.clear(v);
            uncolored.clear(v);
            for w in adj[v].iter() {
                if avail.get(w) {
                    avail.clear(w);
                }
            }
            order.push((v, color));
        }
    }
    order
}

fn expand(adj: &[Bits], size: usize, cand: Bits, best: &mut usize) {
    let order = color_sort(adj, &cand);
    let mut cand = cand;
    for &(v, c) in order.iter().rev() {
        if size + c <= *best {
            return;
        }
        let next = cand.and(&adj[v]);
        if next.is_empty() {
            *best = (*best).max(size + 1);
        } else {
            expand(adj, size + 1, next, best);
        }
        cand.clear(v);
    }
}

/// Greedy clique (a lower bound on `ω`) for graphs above the exact limit.
pub fn max_clique_greedy(graph: &IntersectionGraph) -> usize {
    let adj = graph.bitsets();
    let mut best = 0;
    for start in 0..graph.n() {
        let mut clique = 1;
        let mut cand = adj[start].clone();
        while let Some(v) = cand
            .iter()
            .max_by_key(|&v| (cand.and(&adj[v]).iter().count(), std::cmp::Reverse(v)))
        {
            clique += 1;
            cand = cand.and(&adj[v]);
        }
        best = best.max(clique);
    }
    best
}

/// Exact chromatic number with the default size limit.
pub fn chromatic_exact(graph: &IntersectionGraph) -> Result<usize> {
    chromatic_exact_with_limit(graph, CHROMATIC_LIMIT)
}

/// Smallest `k ≥ ω` for which a DSATUR-ordered backtracking search finds a
/// proper `k`-coloring.
pub fn chromatic_exact_with_limit(graph: &IntersectionGraph, limit: usize) -> Result<usize> {
    check_limit(graph.n(), limit)?;
    let n = graph.n();
    if n == 0 {
        return Ok(0);
    }
    let lower = max_clique_exact_with_limit(graph, limit)?;
    for k in lower..=n {
        let mut colors = vec![0usize; n];
        if color_search(graph, k, &mut colors, 0, 0) {
            return Ok(k);
        }
    }
    unreachable!("n colors always suffice")
}

fn color_search(g: &IntersectionGraph, k: usize, colors: &mut [usize], done: usize, used: usize) -> bool {
    let n = g.n();
    if done == n {
        return true;
    }
    // most saturated uncolored vertex, ties by degree then index
    let mut pick = None;
    let mut key = (0usize, 0usize);
    for v in 0..n {
        if colors[v] != 0 {
            continue;
        }
        let mut seen = 0u64;
        for &w in g.neighbors(v) {
            if colors[w] != 0 {
                seen |= 1 << colors[w];
            }
        }
        let k2 = (seen.count_ones() as usize, g.neighbors(v).len());
        if pick.is_none() || k2 > key {
            pick = Some((v, seen));
            key = k2;
        }
    }
    let (v, seen) = pick.expect("an uncolored vertex remains");
    for c in 1..=(used + 1).min(k) {
        if seen >> c & 1 == 0 {
            colors[v] = c;
            if color_search(g, k, colors, done + 1, used.max(c)) {
                return true;
            }
            colors[v] = 0;
        }
    }
    false
}

/// Exact `λ(G)` with the default size limit.
pub fn l21_span_exact(graph: &IntersectionGraph) -> Result<u64> {
    l21_span_exact_with_limit(graph, L21_LIMIT)
}

/// Smallest span for which backtracking finds an L(2,1)-labeling with
/// labels in `0..=span`.
pub fn l21_span_exact_with_limit(graph: &IntersectionGraph, limit: usize) -> Result<u64> {
    check_limit(graph.n(), limit)?;
    let n = graph.n();
    if n == 0 {
        return Ok(0);
    }
    let dist2 = distance_two(graph);
    let delta = graph.max_degree() as u64;
    let mut span = if delta == 0 { 0 } else { delta + 1 };
    loop {
        let mut labels = vec![u64::MAX; n];
        if label_search(graph, &dist2, span, &mut labels, 0) {
            return Ok(span);
        }
        span += 1;
    }
}

fn distance_two(g: &IntersectionGraph) -> Vec<Vec<usize>> {
    (0..g.n())
        .map(|u| {
            let mut out: Vec<usize> = g
                .neighbors(u)
                .iter()
                .flat_map(|&v| g.neighbors(v).iter().copied())
                .filter(|&w| w != u && !g.adjacent(u, w))
                .collect();
            out.sort_unstable();
            out.dedup();
            out
        })
        .collect()
}

fn label_search(g: &IntersectionGraph, d2: &[Vec<usize>], span: u64, labels: &mut [u64], v: usize) -> bool {
    if v == g.n() {
        return true;
    }
    'label: for l in 0..=span {
        for &w in g.neighbors(v) {
            if labels[w] != u64::MAX && labels[w].abs_diff(l) < 2 {
                continue 'label;
            }
        }
        for &w in &d2[v] {
            if labels[w] == l {
                continue 'label;
            }
        }
        labels[v] = l;
        if label_search(g, d2, span, labels, v + 1) {
            return true;
        }
        labels[v] = u64::MAX;
    }
    false
}

/// Exhaustive reference oracles for cross-checking the exact solvers.
pub mod brute {
    use super::IntersectionGraph;

    /// Largest clique by enumerating all vertex subsets.
    pub fn max_clique(g: &IntersectionGraph) -> usize {
        let n = g.n();
        assert!(n <= 20);
        let masks: Vec<u32> = (0..n)
            .map(|u| g.neighbors(u).iter().fold(0u32, |m, &v| m | 1 << v))
            .collect();
        let mut best = 0;
        for s in 0u32..(1 << n) {
            let size = s.count_ones() as usize;
            if size <= best {
                continue;
            }
            let clique = (0..n).filter(|&u| s >> u & 1 == 1).all(|u| s & !(1 << u) & !masks[u] == 0);
            if clique {
                best = size;
            }
        }
        best
    }

    /// Chromatic number by scanning `k = 0, 1, …` over all `k^n` assignments.
    pub fn chromatic(g: &IntersectionGraph) -> usize {
        let n = g.n();
        let edges = g.edges();
        for k in 0..=n {
            if k == 0 {
                if n == 0 {
                    return 0;
                }
                continue;
            }
            let total = (k as u64).pow(n as u32);
            let mut a = vec![0usize; n];
            for code in 0..total {
                let mut c = code;
                for slot in a.iter_mut() {
                    *slot = (c % k as u64) as usize;
                    c /= k as u64;
                }
                if edges.iter().all(|&(u, v)| a[u] != a[v]) {
                    return k;
                }
            }
        }
        n
    }

    /// `λ(G)` by enumerating every label vector in `0..=span` for growing spans.
    pub fn l21_span(g: &IntersectionGraph) -> u64 {
        let n = g.n();
        if n == 0 {
            return 0;
        }
        let edges = g.edges();
        let mut far = Vec::new();
        for u in 0..n {
            for w in u + 1..n {
                if !g.adjacent(u, w) && g.neighbors(u).iter().any(|&v| g.adjacent(v, w)) {
                    far.push((u, w));
                }
            }
        }
        let mut span = 0u64;
        loop {
            let base = span + 1;
            let total = base.pow(n as u32);
            let mut a = vec![0u64; n];
            for code in 0..total {
                let mut c = code;
                for slot in a.iter_mut() {
                    *slot = c % base;
                    c /= base;
                }
                if edges.iter().all(|&(u, v)| a[u].abs_diff(a[v]) >= 2)
                    && far.iter().all(|&(u, w)| a[u] != a[w])
                {
                    return span;
                }
            }
            span += 1;
        }
    }
}

fn quantize(v: f64) -> BigRational {
    BigRational::new(BigInt::from((v * 1e4).floor() as i64), BigInt::from(10_000))
}

/// `n` disks with centers uniform in `[0, box_side)²` and diameters uniform in
/// `[1, σ]`, on four-decimal coordinates.
pub fn gen_random_disks(n: usize, sigma: &ExactScalar, box_side: f64, seed: u64) -> Vec<Disk> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span = sigma.to_f64() - 1.0;
    (0..n)
        .map(|_| {
            let x = quantize(rng.gen_range(0.0..box_side));
            let y = quantize(rng.gen_range(0.0..box_side));
            let u: f64 = rng.gen_range(0.0..=1.0);
            let mut d = ExactScalar::from_rational(quantize(1.0 + u * span));
            if d < ExactScalar::one() {
                d = ExactScalar::one();
            }
            if d > *sigma {
                d = sigma.clone();
            }
            Disk::new(Point::from_rationals(x, y), d)
        })
        .collect()
}

/// `n` unit disks centered inside the layer-1 tile `H_{0,0}` of `coloring`
/// (all owned by it), so they form a clique of size `n`.
pub fn gen_adversarial_tile_clique(n: usize, coloring: &PlaneColoring, seed: u64) -> Vec<Disk> {
    let lattice = coloring.lattice();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = 0.5f64;
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let x = quantize(rng.gen_range(-r..r));
        let y = quantize(rng.gen_range(-r..r));
        let p = Point::from_rationals(x, y);
        if lattice.locate(&p, 1) == TileIndex::new(0, 0) {
            out.push(Disk::new(p, ExactScalar::one()));
        }
    }
    out
}

/// One row of the competitive-ratio report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioReport {
    pub instance: String,
    pub algorithm: String,
    pub sigma: String,
    pub h: Option<u32>,
    pub p: Option<i64>,
    pub q: Option<i64>,
    pub b: Option<u32>,
    pub k: Option<u64>,
    pub mode: String,
    pub n: usize,
    pub omega: usize,
    /// False when `omega` is only a greedy lower bound.
    pub omega_exact: bool,
    pub chi: Option<usize>,
    pub lambda: Option<u64>,
    pub colors_used: usize,
    pub max_value: u64,
    pub bound_value: u64,
    pub bound_respected: bool,
    pub ratio_vs_omega: f64,
    pub verified: bool,
}

pub const REPORT_HEADER: &str = "instance,algorithm,sigma,h,p,q,b,k,mode,n,omega,omega_exact,chi,lambda,colors_used,max_value,bound_value,bound_respected,ratio_vs_omega,verified";

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

impl RatioReport {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{:.6},{}",
            self.instance,
            self.algorithm,
            self.sigma,
            opt(&self.h),
            opt(&self.p),
            opt(&self.q),
            opt(&self.b),
            opt(&self.k),
            self.mode,
            self.n,
            self.omega,
            self.omega_exact,
            opt(&self.chi),
            opt(&self.lambda),
            self.colors_used,
            self.max_value,
            self.bound_value,
            self.bound_respected,
            self.ratio_vs_omega,
            self.verified,
        )
    }
}

/// Verifies a finished run against `graph`, computes `ω` (and `χ` or `λ`
/// when small enough) and checks the closed-form bound. Never fails: oracle
/// size refusals show up as missing or inexact fields.
pub fn report_run(instance: &str, config: &AlgorithmConfig, graph: &IntersectionGraph, out: &RunOutput) -> RatioReport {
    let n = graph.n();
    let colors: Vec<OnlineColor> = out.colors.iter().map(|c| c.color).collect();
    let verified = match config.mode {
        Mode::Proper => verify_coloring(graph, &colors).passed,
        Mode::L21 => {
            let labels: Vec<u64> = colors.iter().map(|c| c.value).collect();
            verify_l21(graph, &labels).passed
        }
    };
    let (omega, omega_exact) = match max_clique_exact(graph) {
        Ok(w) => (w, true),
        Err(_) => (max_clique_greedy(graph), false),
    };
    let chi = (config.mode == Mode::Proper).then(|| chromatic_exact(graph).ok()).flatten();
    let lambda = (config.mode == Mode::L21).then(|| l21_span_exact(graph).ok()).flatten();
    let params = BoundParams::of(config);
    let bound_value = match config.mode {
        Mode::Proper => bound_formula(config.kind, omega as u64, &params),
        Mode::L21 => l21_bound(params.k, params.b, params.gamma, omega as u64),
    };
    let m = &out.metadata;
    RatioReport {
        instance: instance.to_string(),
        algorithm: m.algorithm.clone(),
        sigma: m.sigma.clone(),
        h: m.h,
        p: m.p,
        q: m.q,
        b: m.b,
        k: m.k,
        mode: m.mode.clone(),
        n,
        omega,
        omega_exact,
        chi,
        lambda,
        colors_used: out.stats.colors_used,
        max_value: out.stats.max_value,
        bound_value,
        bound_respected: out.stats.max_value <= bound_value,
        ratio_vs_omega: if omega == 0 { 0.0 } else { out.stats.max_value as f64 / omega as f64 },
        verified,
    }
}

/// Runs `config` on `disks` and reports it.
pub fn competitive_report(instance: &str, config: &AlgorithmConfig, disks: &[Disk]) -> Result<RatioReport> {
    let out = crate::online::run(config, disks)?;
    let graph = build_disk_graph(disks);
    Ok(report_run(instance, config, &graph, &out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::online::{default_base, AlgorithmKind};

    fn q(s: &str) -> ExactScalar {
        s.parse().unwrap()
    }

    fn disk(x: &str, y: &str, d: &str) -> Disk {
        Disk::new(Point::parse(x, y).unwrap(), q(d))
    }

    fn path(n: usize) -> IntersectionGraph {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        IntersectionGraph::from_edges(n, &e, "test")
    }

    fn complete(n: usize) -> IntersectionGraph {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        IntersectionGraph::from_edges(n, &e, "test")
    }

    fn cycle(n: usize) -> IntersectionGraph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        IntersectionGraph::from_edges(n, &e, "test")
    }

    #[test]
    fn disk_graph_examples() {
        let g = build_disk_graph(&[disk("0", "0", "1"), disk("1", "0", "1")]);
        assert_eq!(g.edges(), vec![(0, 1)]);
        let g = build_disk_graph(&vec![disk("2", "3", "1.5"); 5]);
        assert_eq!(g.edge_count(), 10);
        let g = build_disk_graph(&[disk("0", "0", "1"), disk("1.0001", "0", "1")]);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn disk_graph_matches_pairwise() {
        let disks = gen_random_disks(150, &q("3"), 15.0, 9);
        let g = build_disk_graph(&disks);
        let mut e = Vec::new();
        for u in 0..disks.len() {
            for v in u + 1..disks.len() {
                if crate::geometry::disks_intersect(&disks[u], &disks[v]) {
                    e.push((u, v));
                }
            }
        }
        assert_eq!(g.edges(), e);
    }

    #[test]
    fn verify_examples() {
        let g = path(3);
        let c = |v: u64| OnlineColor { branch: 0, value: v };
        assert!(verify_coloring(&g, &[c(1), c(2), c(1)]).passed);
        assert_eq!(verify_coloring(&g, &[c(1), c(1), c(2)]).conflicts, vec![(0, 1)]);
        assert!(verify_coloring(&IntersectionGraph::from_edges(0, &[], "x"), &[]).passed);
        let r = verify_l21(&g, &[1, 3, 1]);
        assert_eq!(r.distance2_violations, vec![(0, 2)]);
        assert!(verify_l21(&g, &[1, 3, 5]).passed);
        assert_eq!(verify_l21(&g, &[1, 2, 4]).edge_violations, vec![(0, 1)]);
    }

    #[test]
    fn large_sparse_graphs_get_exact_clique() {
        assert_eq!(max_clique_exact(&path(500)).unwrap(), 2);
        let disks = gen_random_disks(400, &q("2"), 12.0, 4);
        let g = build_disk_graph(&disks);
        let w = max_clique_exact(&g).unwrap();
        assert!(w >= max_clique_greedy(&g));
        let sub: Vec<usize> = (0..80).collect();
        assert!(w >= max_clique_exact(&g.induced(&sub)).unwrap());
        assert!(max_clique_exact(&complete(150)).is_err());
    }

    #[test]
    fn clique_examples() {
        assert_eq!(max_clique_exact(&complete(5)).unwrap(), 5);
        let g = IntersectionGraph::from_edges(4, &[(0, 1), (2, 3)], "x");
        assert_eq!(max_clique_exact(&g).unwrap(), 2);
        assert_eq!(max_clique_exact(&path(101)).unwrap(), 2);
        assert!(max_clique_exact(&complete(101)).is_err());
    }

    #[test]
    fn chromatic_examples() {
        assert_eq!(chromatic_exact(&complete(4)).unwrap(), 4);
        assert_eq!(chromatic_exact(&cycle(5)).unwrap(), 3);
        assert_eq!(chromatic_exact(&cycle(6)).unwrap(), 2);
        assert!(chromatic_exact(&path(21)).is_err());
    }

    #[test]
    fn l21_examples() {
        assert_eq!(l21_span_exact(&IntersectionGraph::from_edges(1, &[], "x")).unwrap(), 0);
        assert_eq!(l21_span_exact(&path(2)).unwrap(), 2);
        assert_eq!(l21_span_exact(&complete(3)).unwrap(), 4);
        assert_eq!(l21_span_exact(&path(5)).unwrap(), 4);
        assert_eq!(l21_span_exact(&cycle(5)).unwrap(), 4);
    }

    #[test]
    fn brute_oracles_agree_on_small_graphs() {
        for g in [path(4), cycle(5), complete(4), cycle(6)] {
            assert_eq!(brute::max_clique(&g), max_clique_exact(&g).unwrap());
            assert_eq!(brute::chromatic(&g), chromatic_exact(&g).unwrap());
            assert_eq!(brute::l21_span(&g), l21_span_exact(&g).unwrap());
        }
    }

    #[test]
    fn generators_are_deterministic() {
        assert!(gen_random_disks(0, &q("2"), 10.0, 1).is_empty());
        let a = gen_random_disks(1000, &q("2"), 10.0, 7);
        assert_eq!(a, gen_random_disks(1000, &q("2"), 10.0, 7));
        assert!(a.iter().all(|d| d.diameter >= q("1") && d.diameter <= q("2")));
        assert_ne!(a, gen_random_disks(1000, &q("2"), 10.0, 8));
    }

    #[test]
    fn tile_clique_is_a_clique() {
        let base = default_base(AlgorithmKind::SimpleColor, &q("1"), 1, Mode::Proper).unwrap().unwrap();
        let disks = gen_adversarial_tile_clique(12, &base, 4);
        let g = build_disk_graph(&disks);
        assert_eq!(max_clique_exact(&g).unwrap(), 12);
    }

    #[test]
    fn tile_clique_simple_arithmetic() {
        let s = q("1");
        let base = default_base(AlgorithmKind::SimpleColor, &s, 1, Mode::Proper).unwrap();
        let phi = base.as_ref().unwrap().tile_color(TileIndex::new(0, 0));
        let cfg = AlgorithmConfig::new(AlgorithmKind::SimpleColor, s, base.clone(), Mode::Proper).unwrap();
        let disks = gen_adversarial_tile_clique(5, base.as_ref().unwrap(), 1);
        let r = competitive_report("clique", &cfg, &disks).unwrap();
        assert_eq!(r.max_value, 9 * 4 + phi);
        assert!(r.max_value <= 45);
        assert!(r.verified && r.bound_respected);
        assert_eq!(r.omega, 5);
    }

    #[test]
    fn single_vertex_report() {
        let s = q("1");
        let base = default_base(AlgorithmKind::FoldShadeColor, &s, 2, Mode::Proper).unwrap();
        let cfg = AlgorithmConfig::new(AlgorithmKind::FoldShadeColor, s, base, Mode::Proper).unwrap();
        let r = competitive_report("k1", &cfg, &[disk("0", "0", "1")]).unwrap();
        assert_eq!((r.omega, r.chi, r.colors_used), (1, Some(1), 1));
        assert!(r.verified);
    }
}
