//! The online algorithms as single-pass state machines over disk streams.
//!
//! Every algorithm except BranchFF reads only the center of a disk (and its
//! diameter when branching), so the same state machines color convex shapes
//! through [`OnlineState::step_point`].

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{disks_intersect_filtered, ApproxDisk, Disk, ExactScalar, Point};
use crate::plane_coloring::{find_g12_base, min_same_color_gap, validate_lstar, PlaneColoring};
use crate::tiling::{scale_by_pow2, HexLattice, TileIndex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum AlgorithmKind {
    BranchFF,
    SimpleColor,
    BranchColor,
    FoldColor,
    FoldShadeColor,
    BranchFoldColor,
}

impl AlgorithmKind {
    pub const ALL: [AlgorithmKind; 6] = [
        AlgorithmKind::BranchFF,
        AlgorithmKind::SimpleColor,
        AlgorithmKind::BranchColor,
        AlgorithmKind::FoldColor,
        AlgorithmKind::FoldShadeColor,
        AlgorithmKind::BranchFoldColor,
    ];

    pub fn id(self) -> &'static str {
        match self {
            AlgorithmKind::BranchFF => "branch-ff",
            AlgorithmKind::SimpleColor => "simple",
            AlgorithmKind::BranchColor => "branch-color",
            AlgorithmKind::FoldColor => "fold",
            AlgorithmKind::FoldShadeColor => "fold-shade",
            AlgorithmKind::BranchFoldColor => "branch-fold",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        AlgorithmKind::ALL
            .into_iter()
            .find(|k| k.id() == s)
            .ok_or_else(|| Error::Input(format!("unknown algorithm `{}`", s)))
    }

    pub fn branches(self) -> bool {
        matches!(
            self,
            AlgorithmKind::BranchFF | AlgorithmKind::BranchColor | AlgorithmKind::BranchFoldColor
        )
    }

    pub fn folds(self) -> bool {
        matches!(
            self,
            AlgorithmKind::FoldColor | AlgorithmKind::FoldShadeColor | AlgorithmKind::BranchFoldColor
        )
    }

    fn shaded(self) -> bool {
        matches!(self, AlgorithmKind::FoldShadeColor | AlgorithmKind::BranchFoldColor)
    }
}

impl fmt::Display for AlgorithmKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Mode {
    Proper,
    L21,
}

impl Mode {
    pub fn id(self) -> &'static str {
        match self {
            Mode::Proper => "proper",
            Mode::L21 => "l21",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "proper" => Ok(Mode::Proper),
            "l21" => Ok(Mode::L21),
            other => Err(Error::Input(format!("unknown mode `{}`", other))),
        }
    }
}

fn pow2(t: u32) -> ExactScalar {
    ExactScalar::from_rational(BigRational::from_integer(BigInt::one() << t as usize))
}

/// `t` with `σ = 2^t`, if `σ` is a power of two with `t ≥ 1`.
fn dyadic_exponent(sigma: &ExactScalar) -> Option<u32> {
    if !sigma.is_rational() || !sigma.rational_part().is_integer() {
        return None;
    }
    let n = sigma.rational_part().to_integer();
    if n <= BigInt::one() {
        return None;
    }
    let bits = n.bits() as u32;
    (n == BigInt::one() << (bits - 1) as usize).then_some(bits - 1)
}

/// Number of branches `max(1, ⌈log₂σ⌉)`.
pub fn branch_count(sigma: &ExactScalar) -> u32 {
    let mut t = 0;
    while pow2(t) < *sigma {
        t += 1;
    }
    t.max(1)
}

/// `⌊log₂ d⌋`, except `t − 1` when `d = σ = 2^t`.
pub fn branch_index(diameter: &ExactScalar, sigma: &ExactScalar) -> Result<u32> {
    if *diameter < ExactScalar::one() || diameter > sigma {
        return Err(Error::DiameterOutOfRange {
            diameter: diameter.to_string(),
            sigma: sigma.to_string(),
        });
    }
    if diameter == sigma {
        if let Some(t) = dyadic_exponent(sigma) {
            return Ok(t - 1);
        }
    }
    let mut j = 0;
    while pow2(j + 1) <= *diameter {
        j += 1;
    }
    Ok(j)
}

/// [`branch_index`] from the squared diameter, for shapes whose inner
/// diameter is only known squared.
pub fn branch_index_sq(diameter_sq: &ExactScalar, sigma: &ExactScalar) -> Result<u32> {
    let sigma_sq = sigma.square();
    if *diameter_sq < ExactScalar::one() || *diameter_sq > sigma_sq {
        return Err(Error::DiameterOutOfRange {
            diameter: format!("sqrt({})", diameter_sq),
            sigma: sigma.to_string(),
        });
    }
    if *diameter_sq == sigma_sq {
        if let Some(t) = dyadic_exponent(sigma) {
            return Ok(t - 1);
        }
    }
    let mut j = 0;
    while pow2(2 * (j + 1)) <= *diameter_sq {
        j += 1;
    }
    Ok(j)
}

/// An online color: branch `j` (0 when not branching) and value `c ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OnlineColor {
    pub branch: u32,
    pub value: u64,
}

impl OnlineColor {
    /// Injective integer encoding `c·branches + j`.
    pub fn flat(&self, branches: u32) -> u64 {
        self.value * branches as u64 + self.branch as u64
    }
}

/// Color of one vertex together with where the algorithm put it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VertexColor {
    pub color: OnlineColor,
    /// Layer used (1 for 1-fold algorithms, 0 for BranchFF).
    pub layer: u32,
    /// Tile counted (after scaling, for branching algorithms).
    pub tile: Option<TileIndex>,
}

/// What an algorithm needs from its base plane coloring.
#[derive(Clone, Debug)]
pub struct AlgorithmConfig {
    pub kind: AlgorithmKind,
    /// Input diameters lie in `[1, sigma]`.
    pub sigma: ExactScalar,
    /// The base must be valid for `G_[1, base_sigma]`.
    pub base_sigma: ExactScalar,
    pub base: Option<Arc<PlaneColoring>>,
    pub mode: Mode,
}

impl AlgorithmConfig {
    /// Checks the base against the algorithm's needs: validity for
    /// `G_[1,σ]` (or `G_[1,2]` when branching), and an L* labeling in L21 mode.
    pub fn new(
        kind: AlgorithmKind,
        sigma: ExactScalar,
        base: Option<Arc<PlaneColoring>>,
        mode: Mode,
    ) -> Result<Self> {
        let base_sigma = if kind.branches() { ExactScalar::from_int(2) } else { sigma.clone() };
        Self::with_base_sigma(kind, sigma, base_sigma, base, mode)
    }

    pub fn with_base_sigma(
        kind: AlgorithmKind,
        sigma: ExactScalar,
        base_sigma: ExactScalar,
        base: Option<Arc<PlaneColoring>>,
        mode: Mode,
    ) -> Result<Self> {
        if sigma < ExactScalar::one() {
            return Err(Error::InvalidParameters(format!("sigma = {} < 1", sigma)));
        }
        if mode == Mode::L21 && kind.branches() {
            return Err(Error::InvalidParameters(format!(
                "L(2,1) mode is not available for branching algorithm {}",
                kind
            )));
        }
        match (&base, kind) {
            (None, AlgorithmKind::BranchFF) => {}
            (Some(_), AlgorithmKind::BranchFF) => {
                return Err(Error::InvalidParameters("branch-ff takes no base coloring".into()))
            }
            (None, _) => {
                return Err(Error::InvalidParameters(format!("{} needs a base coloring", kind)))
            }
            (Some(b), _) => {
                if kind == AlgorithmKind::BranchColor && (b.b() != 1 || b.k() != 12) {
                    return Err(Error::InvalidParameters(
                        "branch-color needs a 1-fold 12-coloring of G_[1,2]".into(),
                    ));
                }
                check_base(b, &base_sigma, mode)?;
            }
        }
        Ok(AlgorithmConfig {
            kind,
            sigma,
            base_sigma,
            base,
            mode,
        })
    }

    pub fn branches(&self) -> u32 {
        if self.kind.branches() {
            branch_count(&self.sigma)
        } else {
            1
        }
    }

    pub fn metadata(&self) -> RunMetadata {
        let base = self.base.as_deref();
        RunMetadata {
            algorithm: self.kind.id().to_string(),
            sigma: self.sigma.to_string(),
            base_sigma: self.base_sigma.to_string(),
            h: base.map(|b| b.h()),
            p: base.map(|b| b.p()),
            q: base.map(|b| b.q()),
            k: base.map(|b| b.k()),
            b: base.map(|b| b.b()),
            base_kind: base.map(|b| b.kind().id().to_string()),
            shading: base
                .filter(|_| self.kind.shaded())
                .map(|b| b.lattice().shading_scheme().id().to_string()),
            mode: self.mode.id().to_string(),
            branches: self.branches(),
        }
    }
}

fn check_base(base: &PlaneColoring, sigma: &ExactScalar, mode: Mode) -> Result<()> {
    match mode {
        Mode::L21 => {
            if !base.kind().is_lstar() {
                return Err(Error::InvalidParameters(
                    "L(2,1) mode needs an L*(2,1) labeling as base".into(),
                ));
            }
            let rep = validate_lstar(base, sigma)?;
            if !rep.passed {
                return Err(Error::InvalidColoring(format!(
                    "labeling fails at sigma = {}: {:?}",
                    sigma, rep.violation
                )));
            }
        }
        Mode::Proper => {
            let gap = min_same_color_gap(base);
            if gap.sq < sigma.square() {
                return Err(Error::InvalidColoring(format!(
                    "sigma_max = {:.6} < {}",
                    gap.value, sigma
                )));
            }
        }
    }
    Ok(())
}

/// The base an algorithm uses when none is given.
///
/// Non-branching kinds get the `(h², p, 0)`-coloring for σ (an L* labeling
/// in L21 mode); branching kinds get the best lattice coloring of `G_[1,2]`
/// for the layer count.
pub fn default_base(kind: AlgorithmKind, sigma: &ExactScalar, h: u32, mode: Mode) -> Result<Option<Arc<PlaneColoring>>> {
    let h = if matches!(kind, AlgorithmKind::SimpleColor | AlgorithmKind::BranchColor) { 1 } else { h };
    let lattice = Arc::new(HexLattice::new(h)?);
    let base = match (kind, mode) {
        (AlgorithmKind::BranchFF, _) => return Ok(None),
        (_, Mode::L21) => {
            let cap = ExactScalar::one() + ExactScalar::sqrt3_ratio(1, 2);
            if *sigma <= cap {
                PlaneColoring::lstar_small_sigma(lattice, sigma)?
            } else {
                PlaneColoring::lstar_general(lattice, sigma)?
            }
        }
        (AlgorithmKind::BranchColor, _) => find_g12_base(lattice)?,
        (AlgorithmKind::BranchFoldColor, _) => g12_fold_base(lattice)?,
        _ => PlaneColoring::hsq(lattice, sigma)?,
    };
    Ok(Some(Arc::new(base)))
}

/// b-fold lattice colorings of `G_[1,2]` with the fewest colors per layer
/// found for `b = h² ≤ 100`; other `h` fall back to the `(h², p, 0)` coloring.
pub fn g12_fold_base(lattice: Arc<HexLattice>) -> Result<PlaneColoring> {
    match lattice.h() {
        1 => find_g12_base(lattice),
        3 => PlaneColoring::pq(lattice, 0, 10),
        8 => PlaneColoring::pq(lattice, 1, 26),
        _ => PlaneColoring::hsq(lattice, &ExactScalar::from_int(2)),
    }
}

/// Run metadata exported with results.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunMetadata {
    pub algorithm: String,
    pub sigma: String,
    pub base_sigma: String,
    pub h: Option<u32>,
    pub p: Option<i64>,
    pub q: Option<i64>,
    pub k: Option<u64>,
    pub b: Option<u32>,
    pub base_kind: Option<String>,
    pub shading: Option<String>,
    pub mode: String,
    pub branches: u32,
}

#[derive(Default, Debug, Clone)]
struct BranchState {
    /// Arrivals per subtile, keyed by layer tiles.
    arrivals: HashMap<Vec<TileIndex>, u64>,
    /// `t` counters per tile (the tile determines its layer).
    tile_counts: HashMap<TileIndex, u64>,
    /// BranchFF: placed disks and a spatial hash over them.
    disks: Vec<(Disk, ApproxDisk, u64)>,
    grid: HashMap<(i64, i64), Vec<usize>>,
    max_value: u64,
}

/// Streaming state of one online run.
#[derive(Debug, Clone)]
pub struct OnlineState {
    config: AlgorithmConfig,
    branches: Vec<BranchState>,
    cell: f64,
    position: usize,
}

impl OnlineState {
    pub fn new(config: AlgorithmConfig) -> Self {
        let n = config.branches() as usize;
        // centers of intersecting disks are at most σ apart
        let cell = config.sigma.to_f64() * (1.0 + 1e-6) + 1e-9;
        OnlineState {
            config,
            branches: vec![BranchState::default(); n],
            cell,
            position: 0,
        }
    }

    pub fn config(&self) -> &AlgorithmConfig {
        &self.config
    }

    /// Number of vertices colored so far.
    pub fn position(&self) -> usize {
        self.position
    }

    /// Colors the next disk. Rejects diameters outside `[1, σ]`.
    pub fn step(&mut self, disk: &Disk) -> Result<VertexColor> {
        disk.check_sigma(&self.config.sigma)?;
        if self.config.kind == AlgorithmKind::BranchFF {
            let j = branch_index(&disk.diameter, &self.config.sigma)?;
            let c = self.step_branch_ff(j, disk);
            self.position += 1;
            return Ok(VertexColor {
                color: OnlineColor { branch: j, value: c },
                layer: 0,
                tile: None,
            });
        }
        let j = if self.config.kind.branches() {
            branch_index(&disk.diameter, &self.config.sigma)?
        } else {
            0
        };
        Ok(self.step_center(j, &disk.center))
    }

    /// Colors the next item given by its center and squared (inner)
    /// diameter. Not available for BranchFF, which needs the full disk.
    pub fn step_point(&mut self, center: &Point, diameter_sq: &ExactScalar) -> Result<VertexColor> {
        if self.config.kind == AlgorithmKind::BranchFF {
            return Err(Error::InvalidParameters("branch-ff colors disks only".into()));
        }
        let j = branch_index_sq(diameter_sq, &self.config.sigma)?;
        let j = if self.config.kind.branches() { j } else { 0 };
        Ok(self.step_center(j, center))
    }

    fn step_center(&mut self, j: u32, center: &Point) -> VertexColor {
        let base = self.config.base.clone().expect("checked at configuration");
        let kind = self.config.kind;
        let scaled;
        let p = if j > 0 {
            scaled = scale_by_pow2(center, j);
            &scaled
        } else {
            center
        };
        let lattice = base.lattice();
        let state = &mut self.branches[j as usize];
        let (layer, tile) = if kind.folds() {
            let key = lattice.subtile_key(p);
            let count = state.arrivals.entry(key.0.clone()).or_insert(0);
            let arrivals = *count;
            *count += 1;
            let b = lattice.b() as u64;
            let shade = if kind.shaded() { lattice.shade(&key) as u64 } else { 1 };
            let layer = 1 + ((shade - 1 + arrivals) % b) as u32;
            (layer, key.tile(layer))
        } else {
            (1, lattice.locate(p, 1))
        };
        let t = state.tile_counts.entry(tile).or_insert(0);
        let value = base.tile_color(tile) + base.k() * *t;
        *t += 1;
        state.max_value = state.max_value.max(value);
        self.position += 1;
        VertexColor {
            color: OnlineColor { branch: j, value },
            layer,
            tile: Some(tile),
        }
    }

    fn cell_of(&self, x: f64, y: f64) -> (i64, i64) {
        ((x / self.cell).floor() as i64, (y / self.cell).floor() as i64)
    }

    fn step_branch_ff(&mut self, j: u32, disk: &Disk) -> u64 {
        let a = disk.approx();
        let (cx, cy) = self.cell_of(a.x, a.y);
        let state = &mut self.branches[j as usize];
        let mut forbidden = HashSet::new();
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(ids) = state.grid.get(&(cx + dx, cy + dy)) {
                    for &i in ids {
                        let (d, ad, c) = &state.disks[i];
                        if disks_intersect_filtered(disk, &a, d, ad) {
                            forbidden.insert(*c);
                        }
                    }
                }
            }
        }
        let c = (1..).find(|c| !forbidden.contains(c)).expect("unbounded palette");
        state.grid.entry((cx, cy)).or_default().push(state.disks.len());
        state.disks.push((disk.clone(), a, c));
        state.max_value = state.max_value.max(c);
        c
    }

    /// Largest value so far, per branch.
    pub fn max_per_branch(&self) -> Vec<u64> {
        self.branches.iter().map(|b| b.max_value).collect()
    }
}

/// Summary of a finished run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunStats {
    pub n: usize,
    pub max_per_branch: Vec<u64>,
    pub branches_used: Vec<u32>,
    /// Distinct `(branch, value)` pairs.
    pub colors_used: usize,
    /// Size of the palette the run needs when branch palettes are laid end
    /// to end: the sum of per-branch maxima (the maximum when not branching).
    pub max_value: u64,
}

#[derive(Clone, Debug)]
pub struct RunOutput {
    pub colors: Vec<VertexColor>,
    pub stats: RunStats,
    pub metadata: RunMetadata,
}

/// Colors `disks` in order.
pub fn run(config: &AlgorithmConfig, disks: &[Disk]) -> Result<RunOutput> {
    let mut state = OnlineState::new(config.clone());
    let mut colors = Vec::with_capacity(disks.len());
    for d in disks {
        colors.push(state.step(d)?);
    }
    Ok(finish(state, colors))
}

/// Colors items given as `(center, squared diameter)` in order.
pub fn run_points(config: &AlgorithmConfig, items: &[(Point, ExactScalar)]) -> Result<RunOutput> {
    let mut state = OnlineState::new(config.clone());
    let mut colors = Vec::with_capacity(items.len());
    for (c, d2) in items {
        colors.push(state.step_point(c, d2)?);
    }
    Ok(finish(state, colors))
}

fn finish(state: OnlineState, colors: Vec<VertexColor>) -> RunOutput {
    let max_per_branch = state.max_per_branch();
    let branches_used: Vec<u32> = {
        let set: std::collections::BTreeSet<u32> = colors.iter().map(|c| c.color.branch).collect();
        set.into_iter().collect()
    };
    let distinct: HashSet<OnlineColor> = colors.iter().map(|c| c.color).collect();
    let stats = RunStats {
        n: colors.len(),
        max_value: max_per_branch.iter().sum(),
        max_per_branch,
        branches_used,
        colors_used: distinct.len(),
    };
    RunOutput {
        colors,
        stats,
        metadata: state.config.metadata(),
    }
}

/// Parameters of the closed-form bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundParams {
    pub k: u64,
    pub b: u64,
    pub gamma: u64,
    pub branches: u64,
}

impl BoundParams {
    pub fn of(config: &AlgorithmConfig) -> Self {
        let (k, b, gamma) = config
            .base
            .as_deref()
            .map(|c| (c.k(), c.b() as u64, c.lattice().gamma()))
            .unwrap_or((0, 1, 1));
        BoundParams {
            k,
            b,
            gamma,
            branches: config.branches() as u64,
        }
    }
}

/// `⌊(ω + (b−1)γ)/b⌋`.
fn fold_layers(omega: u64, b: u64, gamma: u64) -> u64 {
    (omega + (b - 1) * gamma) / b
}

/// `⌊(ω + (b−1)γ/2)/b⌋`, without rounding the half.
fn fold_shade_layers(omega: u64, b: u64, gamma: u64) -> u64 {
    (2 * omega + (b - 1) * gamma) / (2 * b)
}

/// Closed-form bound on the largest value for clique number `omega`.
/// For BranchFF this is the competitive-ratio form `28⌈log₂σ⌉·ω`.
pub fn bound_formula(kind: AlgorithmKind, omega: u64, p: &BoundParams) -> u64 {
    match kind {
        AlgorithmKind::BranchFF => 28 * p.branches * omega,
        AlgorithmKind::SimpleColor => p.k * omega,
        AlgorithmKind::BranchColor => 12 * p.branches * omega,
        AlgorithmKind::FoldColor => p.k * fold_layers(omega, p.b, p.gamma),
        AlgorithmKind::FoldShadeColor => p.k * fold_shade_layers(omega, p.b, p.gamma),
        AlgorithmKind::BranchFoldColor => p.branches * p.k * fold_shade_layers(omega, p.b, p.gamma),
    }
}

/// Smallest `ω₀` with `bound(ω) < ratio·ω` for every `ω ≥ ω₀`, or `None`
/// if the bound's slope `k/b` (times branches) is not below `ratio`.
pub fn eventual_threshold(kind: AlgorithmKind, p: &BoundParams, ratio: u64) -> Option<u64> {
    let (slope_num, slope_den, offset_num, offset_den) = match kind {
        AlgorithmKind::BranchFF => (28 * p.branches, 1, 0, 1),
        AlgorithmKind::SimpleColor => (p.k, 1, 0, 1),
        AlgorithmKind::BranchColor => (12 * p.branches, 1, 0, 1),
        AlgorithmKind::FoldColor => (p.k, p.b, p.k * (p.b - 1) * p.gamma, p.b),
        AlgorithmKind::FoldShadeColor => (p.k, p.b, p.k * (p.b - 1) * p.gamma, 2 * p.b),
        AlgorithmKind::BranchFoldColor => (
            p.branches * p.k,
            p.b,
            p.branches * p.k * (p.b - 1) * p.gamma,
            2 * p.b,
        ),
    };
    // bound ≤ slope·ω + offset, so ratio·ω > slope·ω + offset suffices:
    // ω > offset / (ratio − slope)
    if ratio * slope_den <= slope_num {
        return None;
    }
    let gap_num = ratio * slope_den - slope_num;
    let safe = (offset_num * slope_den) / (offset_den * gap_num) + 1;
    let mut w = safe;
    while w > 1 && bound_formula(kind, w - 1, p) < ratio * (w - 1) {
        w -= 1;
    }
    Some(w)
}

/// `⌊(ω + (b−1)γ/2)/b⌋·k`, the largest label of an L21-mode run.
pub fn l21_bound(k: u64, b: u64, gamma: u64, omega: u64) -> u64 {
    k * fold_shade_layers(omega, b, gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiling::HexLattice;

    fn q(s: &str) -> ExactScalar {
        s.parse().unwrap()
    }

    fn disk(x: &str, y: &str, d: &str) -> Disk {
        Disk::new(Point::parse(x, y).unwrap(), q(d))
    }

    fn config(kind: AlgorithmKind, sigma: &str, h: u32) -> AlgorithmConfig {
        let s = q(sigma);
        let base = default_base(kind, &s, h, Mode::Proper).unwrap();
        AlgorithmConfig::new(kind, s, base, Mode::Proper).unwrap()
    }

    #[test]
    fn branch_index_examples() {
        assert_eq!(branch_index(&q("1.5"), &q("2")).unwrap(), 0);
        assert_eq!(branch_index(&q("4"), &q("4")).unwrap(), 1);
        assert_eq!(branch_index(&q("4"), &q("5")).unwrap(), 2);
        assert_eq!(branch_index(&q("2"), &q("2")).unwrap(), 0);
        assert_eq!(branch_index(&q("1"), &q("1")).unwrap(), 0);
        assert!(branch_index(&q("0.9"), &q("2")).is_err());
        assert!(branch_index(&q("2.1"), &q("2")).is_err());
        assert_eq!(branch_index_sq(&q("16"), &q("4")).unwrap(), 1);
        assert_eq!(branch_index_sq(&q("16"), &q("5")).unwrap(), 2);
        assert_eq!(branch_index_sq(&q("15.99"), &q("5")).unwrap(), 1);
    }

    #[test]
    fn branch_counts() {
        assert_eq!(branch_count(&q("1")), 1);
        assert_eq!(branch_count(&q("2")), 1);
        assert_eq!(branch_count(&q("2.01")), 2);
        assert_eq!(branch_count(&q("8")), 3);
    }

    #[test]
    fn branch_ff_palettes() {
        let c = AlgorithmConfig::new(AlgorithmKind::BranchFF, q("8"), None, Mode::Proper).unwrap();
        let mut s = OnlineState::new(c);
        assert_eq!(s.step(&disk("0", "0", "1")).unwrap().color, OnlineColor { branch: 0, value: 1 });
        assert_eq!(s.step(&disk("0.5", "0", "1")).unwrap().color, OnlineColor { branch: 0, value: 2 });
        assert_eq!(s.step(&disk("0", "0", "3")).unwrap().color, OnlineColor { branch: 1, value: 1 });
        assert_eq!(s.step(&disk("10", "0", "1")).unwrap().color, OnlineColor { branch: 0, value: 1 });
    }

    #[test]
    fn simple_counts_per_tile() {
        let c = config(AlgorithmKind::SimpleColor, "1", 1);
        let base = c.base.clone().unwrap();
        assert_eq!(base.k(), 9);
        let mut s = OnlineState::new(c);
        let d = disk("0.01", "0.02", "1");
        let phi = base.color_at(&d.center, 1);
        let v: Vec<u64> = (0..3).map(|_| s.step(&d).unwrap().color.value).collect();
        assert_eq!(v, vec![phi, phi + 9, phi + 18]);
    }

    #[test]
    fn branch_color_scales_centers() {
        let c = config(AlgorithmKind::BranchColor, "8", 1);
        let base = c.base.clone().unwrap();
        let mut s = OnlineState::new(c);
        let d = disk("3.1", "-1.7", "3");
        let out = s.step(&d).unwrap();
        assert_eq!(out.color.branch, 1);
        let half = Point::parse("1.55", "-0.85").unwrap();
        assert_eq!(out.tile, Some(base.lattice().locate(&half, 1)));
    }

    #[test]
    fn fold_cycles_layers() {
        let c = config(AlgorithmKind::FoldColor, "1", 2);
        let mut s = OnlineState::new(c);
        let d = disk("0.3", "0.1", "1");
        let layers: Vec<u32> = (0..5).map(|_| s.step(&d).unwrap().layer).collect();
        assert_eq!(layers, vec![1, 2, 3, 4, 1]);
    }

    #[test]
    fn fold_shade_starts_at_shade() {
        let c = config(AlgorithmKind::FoldShadeColor, "1", 3);
        let lattice = c.base.clone().unwrap().lattice_arc();
        let mut s = OnlineState::new(c);
        let d = disk("0.21", "-0.13", "1");
        let eta = lattice.shade(&lattice.subtile_key(&d.center));
        let layers: Vec<u32> = (0..10).map(|_| s.step(&d).unwrap().layer).collect();
        assert_eq!(layers[0], eta);
        assert_eq!(layers[9], eta);
        let distinct: HashSet<u32> = layers[..9].iter().copied().collect();
        assert_eq!(distinct.len(), 9);
    }

    #[test]
    fn rejects_out_of_range() {
        let c = config(AlgorithmKind::SimpleColor, "2", 1);
        assert!(run(&c, &[disk("0", "0", "2.5")]).is_err());
        assert!(run(&c, &[disk("0", "0", "0.5")]).is_err());
        assert_eq!(run(&c, &[]).unwrap().stats.n, 0);
    }

    #[test]
    fn l21_mode_restrictions() {
        let s = q("1");
        let base = default_base(AlgorithmKind::FoldShadeColor, &s, 1, Mode::L21).unwrap();
        assert!(AlgorithmConfig::new(AlgorithmKind::FoldShadeColor, s.clone(), base.clone(), Mode::L21).is_ok());
        assert!(AlgorithmConfig::new(AlgorithmKind::BranchFoldColor, s.clone(), base, Mode::L21).is_err());
        let plain = default_base(AlgorithmKind::FoldShadeColor, &s, 1, Mode::Proper).unwrap();
        assert!(AlgorithmConfig::new(AlgorithmKind::FoldShadeColor, s, plain, Mode::L21).is_err());
    }

    #[test]
    fn weak_base_rejected() {
        let lattice = Arc::new(HexLattice::new(1).unwrap());
        let base = Arc::new(PlaneColoring::pq(lattice, 0, 3).unwrap());
        assert!(AlgorithmConfig::new(AlgorithmKind::SimpleColor, q("1.5"), Some(base.clone()), Mode::Proper).is_ok());
        assert!(AlgorithmConfig::new(AlgorithmKind::SimpleColor, q("2"), Some(base), Mode::Proper).is_err());
    }

    fn h5() -> BoundParams {
        BoundParams { k: 121, b: 25, gamma: 150, branches: 1 }
    }

    #[test]
    fn bound_examples() {
        assert_eq!(bound_formula(AlgorithmKind::FoldColor, 108_901, &h5()), 544_500);
        assert_eq!(bound_formula(AlgorithmKind::FoldShadeColor, 54_450, &h5()), 272_250);
        let simple = BoundParams { k: 9, b: 1, gamma: 1, branches: 1 };
        assert_eq!(bound_formula(AlgorithmKind::SimpleColor, 4, &simple), 36);
        let branchy = BoundParams { k: 12, b: 1, gamma: 1, branches: 3 };
        assert_eq!(bound_formula(AlgorithmKind::BranchColor, 5, &branchy), 180);
        assert_eq!(bound_formula(AlgorithmKind::BranchFF, 5, &branchy), 420);
    }

    #[test]
    fn thresholds() {
        assert_eq!(eventual_threshold(AlgorithmKind::FoldColor, &h5(), 5), Some(108_901));
        assert_eq!(eventual_threshold(AlgorithmKind::FoldShadeColor, &h5(), 5), Some(54_451));
        let simple = BoundParams { k: 9, b: 1, gamma: 1, branches: 1 };
        assert_eq!(eventual_threshold(AlgorithmKind::SimpleColor, &simple, 5), None);
        assert_eq!(eventual_threshold(AlgorithmKind::SimpleColor, &simple, 10), Some(1));
    }

    #[test]
    fn metadata_records_base() {
        let c = config(AlgorithmKind::BranchColor, "4", 1);
        let m = c.metadata();
        assert_eq!((m.h, m.k, m.b), (Some(1), Some(12), Some(1)));
        assert_eq!((m.p, m.q), (Some(2), Some(2)));
        assert_eq!(m.branches, 2);
    }
}
