//! Solid b-fold colorings of `G_[1,σ]` and solid b-fold L*(2,1)-labelings of
//! the plane, built on [`HexLattice`], plus their validators.
//!
//! A coloring is constant on tiles and depends only on the tile index, so
//! "same color" is always "index difference lies in a sublattice of ℤ²".
//! Distances between tiles are gaps between translates of `H_{0,0}`.
//!
//! Validators accept a gap equal to the threshold. Tiles own the open right
//! chain of their boundary only (see [`crate::tiling`]), and any pair of
//! points realising the gap between two translates always has one point on
//! the unowned left chain or at a top/bottom vertex, so equality is never
//! attained by owned points.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{
    polygon_min_sq_dist, polygon_min_sq_dist_f64, sq_dist, ExactScalar, Point, SQRT3,
};
use crate::quotient::LatticeQuotient;
use crate::tiling::{base_hexagon_vertices, HexLattice, TileIndex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ColoringKind {
    /// `(h², p, q)` lattice coloring.
    Pq,
    /// L*(2,1)-labeling with 3 consecutive labels per monochromatic class.
    LStar3,
    /// L*(2,1)-labeling with 6 consecutive labels per monochromatic class.
    LStar6,
}

impl ColoringKind {
    pub fn id(self) -> &'static str {
        match self {
            ColoringKind::Pq => "pq",
            ColoringKind::LStar3 => "lstar3",
            ColoringKind::LStar6 => "lstar6",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "pq" => Ok(ColoringKind::Pq),
            "lstar3" => Ok(ColoringKind::LStar3),
            "lstar6" => Ok(ColoringKind::LStar6),
            other => Err(Error::Input(format!("unknown coloring kind `{}`", other))),
        }
    }

    pub fn is_lstar(self) -> bool {
        !matches!(self, ColoringKind::Pq)
    }

    fn labels_per_class(self) -> u64 {
        match self {
            ColoringKind::Pq => 1,
            ColoringKind::LStar3 => 3,
            ColoringKind::LStar6 => 6,
        }
    }
}

/// A solid b-fold plane coloring (or L* labeling) over a hexagonal lattice.
#[derive(Clone, Debug)]
pub struct PlaneColoring {
    lattice: Arc<HexLattice>,
    kind: ColoringKind,
    p: i64,
    q: i64,
    /// Declared number of colors / labels.
    k: u64,
    classes: LatticeQuotient,
    sub: Option<LatticeQuotient>,
    order: Option<Arc<LabelOrder>>,
    /// Index differences between tiles of equal color.
    mono: LatticeQuotient,
}

pub fn pq_color_count(p: i64, q: i64) -> Result<u64> {
    if p < 0 || q < 0 || (p == 0 && q == 0) {
        return Err(Error::InvalidParameters(format!("(p, q) = ({}, {})", p, q)));
    }
    Ok((p * p + p * q + q * q) as u64)
}

/// `⌈(2σ/√3 + 1)·h⌉`, exactly.
pub fn hsq_parameter(h: u32, sigma: &ExactScalar) -> i64 {
    let hq = BigRational::from_integer(h.into());
    let two_sigma_over_sqrt3 = ExactScalar::new(
        BigRational::from_integer(0.into()),
        sigma.rational_part() * BigRational::new(2.into(), 3.into()),
    ) + ExactScalar::new(
        sigma.sqrt3_part() * BigRational::from_integer(2.into()),
        BigRational::from_integer(0.into()),
    );
    let v = (two_sigma_over_sqrt3 + ExactScalar::one()).scale(&hq);
    v.ceil().to_i64().expect("parameter fits in i64")
}

fn require_sigma_at_least_one(sigma: &ExactScalar) -> Result<()> {
    if *sigma < ExactScalar::one() {
        return Err(Error::InvalidParameters(format!("sigma = {} < 1", sigma)));
    }
    Ok(())
}

impl PlaneColoring {
    /// The `(h², p, q)`-coloring.
    pub fn pq(lattice: Arc<HexLattice>, p: i64, q: i64) -> Result<Self> {
        let k = pq_color_count(p, q)?;
        let classes = LatticeQuotient::from_basis((p, q), (p + q, -p))?;
        Ok(PlaneColoring {
            lattice,
            kind: ColoringKind::Pq,
            p,
            q,
            k,
            classes,
            sub: None,
            order: None,
            mono: classes,
        })
    }

    /// The `(h², p, 0)`-coloring with `p = ⌈(2σ/√3 + 1)h⌉`, valid for `G_[1,σ]`.
    pub fn hsq(lattice: Arc<HexLattice>, sigma: &ExactScalar) -> Result<Self> {
        require_sigma_at_least_one(sigma)?;
        let p = hsq_parameter(lattice.h(), sigma);
        Self::pq(lattice, p, 0)
    }

    /// Three labels per class of the `(h², p, 0)`-coloring with
    /// `p = ⌈h(2σ/√3 + 1) + 1⌉`; needs `σ ≤ 1/(4 − 2√3) = 1 + √3/2`.
    pub fn lstar_small_sigma(lattice: Arc<HexLattice>, sigma: &ExactScalar) -> Result<Self> {
        require_sigma_at_least_one(sigma)?;
        let cap = ExactScalar::one() + ExactScalar::sqrt3_ratio(1, 2);
        if *sigma > cap {
            return Err(Error::InvalidParameters(format!(
                "sigma = {} exceeds 1/(4 - 2*sqrt3)",
                sigma
            )));
        }
        let p = hsq_parameter(lattice.h(), sigma) + 1;
        Self::lstar(lattice, p, ColoringKind::LStar3)
    }

    /// Six labels per class of the `(h², p, 0)`-coloring with
    /// `p = ⌈h(2σ/√3 + 1) + 1⌉`; valid for every `σ ≥ 1`.
    pub fn lstar_general(lattice: Arc<HexLattice>, sigma: &ExactScalar) -> Result<Self> {
        require_sigma_at_least_one(sigma)?;
        let p = hsq_parameter(lattice.h(), sigma) + 1;
        Self::lstar(lattice, p, ColoringKind::LStar6)
    }

    /// L* labeling from class parameter `p` and label multiplicity.
    pub fn lstar(lattice: Arc<HexLattice>, p: i64, kind: ColoringKind) -> Result<Self> {
        if p <= 0 {
            return Err(Error::InvalidParameters(format!("p = {}", p)));
        }
        let (v1, v2) = match kind {
            // a ≡ b (mod 3): same-label step p(s₁ + s₂)/h, length 3p/2h
            ColoringKind::LStar3 => ((1, 1), (3, 0)),
            // shortest same-label step 2p·s₁/h
            ColoringKind::LStar6 => ((2, 0), (-1, 3)),
            ColoringKind::Pq => return Self::pq(lattice, p, 0),
        };
        let classes = LatticeQuotient::from_basis((p, 0), (0, p))?;
        let sub = LatticeQuotient::from_basis(v1, v2)?;
        let mono = LatticeQuotient::from_basis((p * v1.0, p * v1.1), (p * v2.0, p * v2.1))?;
        let order = LabelOrder::build(&lattice, p, &sub);
        let used = kind.labels_per_class() * (p * p) as u64;
        Ok(PlaneColoring {
            lattice,
            kind,
            p,
            q: 0,
            k: used + 1,
            classes,
            sub: Some(sub),
            order: Some(Arc::new(order)),
            mono,
        })
    }

    /// The same labeling with the unused guard label removed (`k` = labels used).
    pub fn without_guard(&self) -> Self {
        let mut c = self.clone();
        if c.kind.is_lstar() {
            c.k -= 1;
        }
        c
    }

    pub fn lattice(&self) -> &HexLattice {
        &self.lattice
    }

    pub fn lattice_arc(&self) -> Arc<HexLattice> {
        self.lattice.clone()
    }

    pub fn kind(&self) -> ColoringKind {
        self.kind
    }

    pub fn h(&self) -> u32 {
        self.lattice.h()
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn b(&self) -> u32 {
        self.lattice.b()
    }

    /// Number of colors (labels) `k`.
    pub fn k(&self) -> u64 {
        self.k
    }

    /// Color or label of a tile, in `1..=k`.
    pub fn tile_color(&self, t: TileIndex) -> u64 {
        let class = self.classes.reduce(t.i, t.j);
        match &self.sub {
            None => class + 1,
            Some(sub) => {
                let order = self.order.as_ref().expect("labelings carry an order");
                let m = self.kind.labels_per_class();
                let c = order.rank[class as usize];
                let s = sub.reduce(t.i.div_euclid(self.p), t.j.div_euclid(self.p));
                m * c as u64 + order.sub_rank[c as usize][s as usize] as u64 + 1
            }
        }
    }

    /// `φ_r(p)`: color of the layer-`r` tile owning `p`.
    pub fn color_at(&self, p: &Point, layer: u32) -> u64 {
        self.tile_color(self.lattice.locate(p, layer))
    }

    /// Tile index differences that preserve the color.
    pub fn monochrome_lattice(&self) -> &LatticeQuotient {
        &self.mono
    }

    /// Gap (in index space) realised by `(p, q)`; the first candidate for the
    /// nearest same-colored tile.
    fn generator_offset(&self) -> TileIndex {
        let [v1, v2] = self.mono.basis();
        let c1 = center_len(&self.lattice, TileIndex::new(v1.0, v1.1));
        let c2 = center_len(&self.lattice, TileIndex::new(v2.0, v2.1));
        if c1 <= c2 {
            TileIndex::new(v1.0, v1.1)
        } else {
            TileIndex::new(v2.0, v2.1)
        }
    }
}

/// Order in which classes of the `(h², p, 0)`-coloring and their label
/// cosets receive consecutive labels.
///
/// Classes follow a boustrophedon path over residues `(i mod p, j mod p)`,
/// so consecutive classes sit one unit step `e` apart. The first coset of
/// the next class is `last − e`, which puts every tile of the next label at
/// least `p − 1` steps away along `e`. The last coset of the final class is
/// chosen so that labels `1` and `mp²` do clash; the guard label keeps them
/// apart.
#[derive(Clone, Debug)]
struct LabelOrder {
    /// Class ordinal, indexed by `classes.reduce(i, j)`.
    rank: Vec<u32>,
    /// Position of each coset within its class, indexed by class ordinal.
    sub_rank: Vec<Vec<u8>>,
}

impl LabelOrder {
    fn build(lattice: &HexLattice, p: i64, sub: &LatticeQuotient) -> Self {
        let m = sub.index() as usize;
        let reps: Vec<(i64, i64)> = sub.representatives().collect();
        let mut path = Vec::with_capacity((p * p) as usize);
        for i in 0..p {
            for jj in 0..p {
                let j = if i % 2 == 0 { jj } else { p - 1 - jj };
                path.push((i, j));
            }
        }
        let n = path.len();
        let mut rank = vec![0u32; n];
        for (c, &(i, j)) in path.iter().enumerate() {
            rank[(i * p + j) as usize] = c as u32;
        }
        let wrap = (path[0].0 - path[n - 1].0, path[0].1 - path[n - 1].1);
        let mut best: Option<(f64, Vec<Vec<usize>>)> = None;
        for first0 in 0..m {
            let mut seqs: Vec<Vec<usize>> = Vec::with_capacity(n);
            let mut first = first0;
            for c in 0..n - 1 {
                let e = (path[c + 1].0 - path[c].0, path[c + 1].1 - path[c].1);
                let mut seq: Vec<usize> = std::iter::once(first)
                    .chain((0..m).filter(|&x| x != first))
                    .collect();
                // any last coset works; the next class starts at last − e
                let last = seq.remove(1);
                seq.push(last);
                let r = reps[last];
                first = sub.reduce(r.0 - e.0, r.1 - e.1) as usize;
                seqs.push(seq);
            }
            for last in (0..m).filter(|&x| x != first) {
                let g = wrap_gap(lattice, p, sub, &reps, wrap, first0, last);
                if best.as_ref().is_none_or(|(bg, _)| g < *bg) {
                    let mut seq = vec![first];
                    seq.extend((0..m).filter(|&x| x != first && x != last));
                    seq.push(last);
                    let mut all = seqs.clone();
                    all.push(seq);
                    best = Some((g, all));
                }
            }
        }
        let sub_rank = best
            .expect("at least two cosets")
            .1
            .into_iter()
            .map(|seq| {
                let mut pos = vec![0u8; m];
                for (k, &s) in seq.iter().enumerate() {
                    pos[s] = k as u8;
                }
                pos
            })
            .collect();
        LabelOrder { rank, sub_rank }
    }
}

/// Smallest approximate gap between label `mp²` tiles (coset `last` of the
/// final class) and label-1 tiles (coset `first` of class 0).
fn wrap_gap(
    lattice: &HexLattice,
    p: i64,
    sub: &LatticeQuotient,
    reps: &[(i64, i64)],
    wrap: (i64, i64),
    first: usize,
    last: usize,
) -> f64 {
    let (r0, rl) = (reps[first], reps[last]);
    let base = (wrap.0 + p * (r0.0 - rl.0), wrap.1 + p * (r0.1 - rl.1));
    let [v1, v2] = sub.basis();
    let mut best = f64::INFINITY;
    for a in -3..=3i64 {
        for b in -3..=3i64 {
            let d = TileIndex::new(
                base.0 + p * (a * v1.0 + b * v2.0),
                base.1 + p * (a * v1.1 + b * v2.1),
            );
            best = best.min(tile_gap_sq_f64(lattice, d));
        }
    }
    best
}

fn center_len(lattice: &HexLattice, d: TileIndex) -> f64 {
    let (x, y) = lattice.tile_center_f64(d);
    (x * x + y * y).sqrt()
}

/// Exact squared gap between `H_{0,0}` and its translate to tile offset `d`.
pub fn tile_gap_sq(lattice: &HexLattice, d: TileIndex) -> ExactScalar {
    polygon_min_sq_dist(
        &base_hexagon_vertices(),
        &lattice.tile_vertices(d),
    )
    .expect("hexagons have six vertices")
}

fn tile_gap_sq_f64(lattice: &HexLattice, d: TileIndex) -> f64 {
    let base: Vec<(f64, f64)> = base_hexagon_vertices().iter().map(Point::approx).collect();
    let (cx, cy) = lattice.tile_center_f64(d);
    let moved: Vec<(f64, f64)> = base.iter().map(|&(x, y)| (x + cx, y + cy)).collect();
    polygon_min_sq_dist_f64(&base, &moved)
}

/// Nonzero index offsets whose tile centers are within `radius` of the origin.
fn offsets_within(lattice: &HexLattice, radius: f64) -> Vec<TileIndex> {
    let n = (radius * 4.0 * lattice.h() as f64 / 3.0).ceil() as i64 + 1;
    let mut out = Vec::new();
    for di in -n..=n {
        for dj in -n..=n {
            if (di, dj) == (0, 0) {
                continue;
            }
            let d = TileIndex::new(di, dj);
            if center_len(lattice, d) <= radius + 1e-9 {
                out.push(d);
            }
        }
    }
    out
}

/// Gap comparisons against a fixed threshold, exact only near the threshold.
struct GapJudge<'a> {
    lattice: &'a HexLattice,
    threshold_sq: ExactScalar,
    threshold_f64: f64,
    cache: HashMap<TileIndex, bool>,
}

impl<'a> GapJudge<'a> {
    fn new(lattice: &'a HexLattice, threshold: &ExactScalar) -> Self {
        let threshold_sq = threshold.square();
        GapJudge {
            lattice,
            threshold_f64: threshold_sq.to_f64(),
            threshold_sq,
            cache: HashMap::new(),
        }
    }

    /// Whether the gap at offset `d` is at least the threshold.
    fn ok(&mut self, d: TileIndex) -> bool {
        if let Some(&v) = self.cache.get(&d) {
            return v;
        }
        let g = tile_gap_sq_f64(self.lattice, d);
        let slack = 1e-9 * (1.0 + self.threshold_f64);
        let v = if g > self.threshold_f64 + slack {
            true
        } else if g < self.threshold_f64 - slack {
            false
        } else {
            tile_gap_sq(self.lattice, d) >= self.threshold_sq
        };
        self.cache.insert(d, v);
        v
    }
}

/// Largest σ for which a coloring stays valid, with its witness offset.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaMax {
    /// Exact squared minimum gap between same-colored tiles.
    pub sq: ExactScalar,
    /// `√sq`, error well below 1e-9.
    pub value: f64,
    pub witness: TileIndex,
}

/// Minimum gap between same-colored tiles of `coloring`.
pub fn min_same_color_gap(coloring: &PlaneColoring) -> SigmaMax {
    let lattice = coloring.lattice();
    let first = coloring.generator_offset();
    let bound = tile_gap_sq_f64(lattice, first).sqrt() + 1.0 + 1e-6;
    let mono = coloring.monochrome_lattice();
    let cands: Vec<(TileIndex, f64)> = offsets_within(lattice, bound)
        .into_iter()
        .filter(|d| mono.contains(d.i, d.j))
        .map(|d| (d, tile_gap_sq_f64(lattice, d)))
        .collect();
    let best_f = cands.iter().map(|c| c.1).fold(f64::INFINITY, f64::min);
    let mut best: Option<(ExactScalar, TileIndex)> = None;
    for (d, g) in cands {
        if g <= best_f + 1e-9 * (1.0 + best_f) {
            let exact = tile_gap_sq(lattice, d);
            if best.as_ref().is_none_or(|(b, bd)| exact < *b || (exact == *b && d < *bd)) {
                best = Some((exact, d));
            }
        }
    }
    let (sq, witness) = best.expect("the generator itself is a candidate");
    let value = sq.to_f64().sqrt();
    SigmaMax { sq, value, witness }
}

/// `σ_max` of the `(h², p, q)`-coloring. Rejects colorings with `σ_max < 1`.
pub fn pq_sigma_exact(lattice: Arc<HexLattice>, p: i64, q: i64) -> Result<SigmaMax> {
    let c = PlaneColoring::pq(lattice, p, q)?;
    let s = min_same_color_gap(&c);
    if s.sq < ExactScalar::one() {
        return Err(Error::InvalidColoring(format!(
            "(h={}, p={}, q={}) has sigma_max = {:.6} < 1",
            c.h(),
            p,
            q,
            s.value
        )));
    }
    Ok(s)
}

/// Closed-form lower estimate `(√3/2h)·√(p² + pq + q²) − 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SigmaBound {
    pub value: f64,
    /// `value ≥ 1`, i.e. the estimate certifies a coloring of some `G_[1,σ]`.
    pub valid: bool,
}

pub fn pq_sigma_bound(h: u32, p: i64, q: i64) -> Result<SigmaBound> {
    let k = pq_color_count(p, q)? as f64;
    let raw = SQRT3 / (2.0 * h as f64) * k.sqrt() - 1.0;
    // round down by a few ulps so the result stays a lower bound
    let value = raw - 4.0 * f64::EPSILON * raw.abs().max(1.0);
    Ok(SigmaBound {
        value,
        valid: value >= 1.0,
    })
}

/// A pair of tiles breaking a validity condition.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    /// Condition number: 1 = layer colors distinct, 2 = same color/label
    /// gap, 3 = consecutive labels gap, 4 = smallest/largest label gap.
    pub condition: u8,
    pub tile_a: TileIndex,
    pub tile_b: TileIndex,
    pub gap_sq: ExactScalar,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolidReport {
    pub passed: bool,
    pub diameter_ok: bool,
    pub pairs_checked: usize,
    pub points_sampled: usize,
    pub violation: Option<Violation>,
}

const SAMPLE_POINTS: usize = 10_000;

fn tile_diameter_ok() -> bool {
    let v = base_hexagon_vertices();
    v.iter()
        .all(|a| v.iter().all(|b| sq_dist(a, b) <= ExactScalar::one()))
}

fn sample_layer_conflict(coloring: &PlaneColoring, points: usize) -> Option<Violation> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let lattice = coloring.lattice();
    for _ in 0..points {
        let x = BigRational::new(BigInt::from(rng.gen_range(-100_000i64..=100_000)), BigInt::from(10_000));
        let y = BigRational::new(BigInt::from(rng.gen_range(-100_000i64..=100_000)), BigInt::from(10_000));
        let pt = Point::from_rationals(x, y);
        let key = lattice.subtile_key(&pt);
        let colors: Vec<u64> = key.tiles().iter().map(|t| coloring.tile_color(*t)).collect();
        for a in 0..colors.len() {
            for b in (a + 1)..colors.len() {
                if colors[a] == colors[b] {
                    return Some(Violation {
                        condition: 1,
                        tile_a: key.tiles()[a],
                        tile_b: key.tiles()[b],
                        gap_sq: ExactScalar::zero(),
                    });
                }
            }
        }
    }
    None
}

/// Checks that `coloring` is a solid b-fold coloring of `G_[1,σ]`.
pub fn validate_solid(coloring: &PlaneColoring, sigma: &ExactScalar) -> Result<SolidReport> {
    require_sigma_at_least_one(sigma)?;
    let lattice = coloring.lattice();
    let diameter_ok = tile_diameter_ok();
    let mut judge = GapJudge::new(lattice, sigma);
    let mono = coloring.monochrome_lattice();
    let mut violation = None;
    let mut pairs = 0;
    for d in offsets_within(lattice, sigma.to_f64() + 1.0 + 1e-6) {
        if !mono.contains(d.i, d.j) {
            continue;
        }
        pairs += 1;
        if !judge.ok(d) {
            violation = Some(Violation {
                condition: 2,
                tile_a: TileIndex::new(0, 0),
                tile_b: d,
                gap_sq: tile_gap_sq(lattice, d),
            });
            break;
        }
    }
    if violation.is_none() {
        violation = sample_layer_conflict(coloring, SAMPLE_POINTS);
    }
    Ok(SolidReport {
        passed: diameter_ok && violation.is_none(),
        diameter_ok,
        pairs_checked: pairs,
        points_sampled: SAMPLE_POINTS,
        violation,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct LStarReport {
    pub passed: bool,
    pub diameter_ok: bool,
    pub pairs_checked: usize,
    /// Minimum gap between equal labels (squared, exact).
    pub same_label_gap_sq: ExactScalar,
    /// For 6-label constructions: equal labels at least `2σ + √3/2` apart.
    pub wide_same_label: Option<bool>,
    pub violation: Option<Violation>,
}

/// Checks the L*(2,1) conditions at `σ`: equal labels `2σ` apart,
/// cyclically consecutive labels (including `k` and `1`) `σ` apart.
pub fn validate_lstar(labeling: &PlaneColoring, sigma: &ExactScalar) -> Result<LStarReport> {
    require_sigma_at_least_one(sigma)?;
    let lattice = labeling.lattice();
    let diameter_ok = tile_diameter_ok();
    let k = labeling.k();
    let mono = labeling.monochrome_lattice();
    let two_sigma = sigma + sigma;

    let same = min_same_color_gap(labeling);
    let mut violation = None;
    let mut same_judge = GapJudge::new(lattice, &two_sigma);
    if !same_judge.ok(same.witness) {
        violation = Some(Violation {
            condition: 2,
            tile_a: TileIndex::new(0, 0),
            tile_b: same.witness,
            gap_sq: same.sq.clone(),
        });
    }
    let wide_same_label = (labeling.kind() == ColoringKind::LStar6).then(|| {
        let wide = &two_sigma + &ExactScalar::sqrt3_ratio(1, 2);
        same.sq >= wide.square()
    });

    let mut judge = GapJudge::new(lattice, sigma);
    let offsets = offsets_within(lattice, sigma.to_f64() + 1.0 + 1e-6);
    let mut pairs = 0;
    'outer: for (ri, rj) in mono.representatives() {
        if violation.is_some() {
            break;
        }
        let a = TileIndex::new(ri, rj);
        let la = labeling.tile_color(a);
        for &d in &offsets {
            let b = a.offset(d.i, d.j);
            let lb = labeling.tile_color(b);
            let condition = if lb == la + 1 {
                3
            } else if la == k && lb == 1 {
                4
            } else {
                continue;
            };
            pairs += 1;
            if !judge.ok(d) {
                violation = Some(Violation {
                    condition,
                    tile_a: a,
                    tile_b: b,
                    gap_sq: tile_gap_sq(lattice, d),
                });
                break 'outer;
            }
        }
    }
    if violation.is_none() {
        violation = sample_layer_conflict(labeling, SAMPLE_POINTS / 10);
    }
    Ok(LStarReport {
        passed: diameter_ok && violation.is_none() && wide_same_label != Some(false),
        diameter_ok,
        pairs_checked: pairs,
        same_label_gap_sq: same.sq,
        wide_same_label,
        violation,
    })
}

/// Smallest-`k` `(1, p, q)` coloring valid for `G_[1,2]` (the 12-coloring).
pub fn find_g12_base(lattice: Arc<HexLattice>) -> Result<PlaneColoring> {
    let two = ExactScalar::from_int(2);
    let mut cands: Vec<(u64, i64, i64)> = Vec::new();
    for p in 0..=8i64 {
        for q in p..=8i64 {
            if (p, q) != (0, 0) {
                cands.push((pq_color_count(p, q)?, p, q));
            }
        }
    }
    cands.sort();
    for (_, p, q) in cands {
        let c = PlaneColoring::pq(lattice.clone(), p, q)?;
        if min_same_color_gap(&c).sq >= two.square() {
            return Ok(c);
        }
    }
    Err(Error::InvalidParameters("no lattice coloring of G_[1,2] found".into()))
}

/// One row of the records table.
#[derive(Clone, Debug, PartialEq)]
pub struct RecordRow {
    pub sigma: f64,
    pub k_over_b: f64,
    pub b: u32,
    pub k: u64,
    pub p: i64,
    pub q: i64,
    pub h: u32,
}

/// Scans `(h, p, q)` with `p ≤ q` and `pq_sigma_bound ≤ sigma_hi`, and
/// reports the colorings whose `σ_max` is not beaten by any scanned coloring
/// with fewer (or equally many) colors per layer.
///
/// The bound grows with `k/h²`, so any coloring left out of the scan has a
/// larger ratio than every scanned one and cannot displace a reported row.
pub fn records(hs: &[u32], sigma_lo: f64, sigma_hi: f64) -> Result<Vec<RecordRow>> {
    let mut rows = Vec::new();
    for &h in hs {
        let lattice = Arc::new(HexLattice::new(h)?);
        let qmax = ((sigma_hi + 1.0) * 2.0 * h as f64 / SQRT3).ceil() as i64 + 1;
        for q in 0..=qmax {
            for p in 0..=q {
                if (p, q) == (0, 0) || pq_sigma_bound(h, p, q)?.value > sigma_hi {
                    continue;
                }
                let c = PlaneColoring::pq(lattice.clone(), p, q)?;
                let s = min_same_color_gap(&c);
                if s.value < 1.0 {
                    continue;
                }
                rows.push(RecordRow {
                    sigma: s.value,
                    k_over_b: c.k() as f64 / c.b() as f64,
                    b: c.b(),
                    k: c.k(),
                    p,
                    q,
                    h,
                });
            }
        }
    }
    // ratio k/b compared exactly via cross-multiplication
    rows.sort_by(|a, b| {
        (a.k * b.b as u64)
            .cmp(&(b.k * a.b as u64))
            .then(b.sigma.partial_cmp(&a.sigma).unwrap())
            .then(a.b.cmp(&b.b))
            .then((a.p, a.q).cmp(&(b.p, b.q)))
    });
    let mut out: Vec<RecordRow> = Vec::new();
    let mut best = f64::NEG_INFINITY;
    let mut i = 0;
    while i < rows.len() {
        let mut j = i;
        while j < rows.len() && rows[j].k * rows[i].b as u64 == rows[i].k * rows[j].b as u64 {
            j += 1;
        }
        // rows[i] has the largest σ in its ratio group
        let top = rows[i].clone();
        if top.sigma >= best - 1e-9 {
            best = best.max(top.sigma);
            if top.sigma >= sigma_lo - 1e-9 {
                out.push(top);
            }
        }
        i = j;
    }
    Ok(out)
}
