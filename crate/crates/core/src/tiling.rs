//! Refined hexagonal tilings: tiles `H_{i,j}`, the `h²` layers, exact point
//! location, subtiles and their shading.
//!
//! Tile `H_{i,j}` is the base hexagon (two vertical sides, diameter 1) shifted
//! by `i·s₁/h + j·s₂/h` with `s₁ = (√3/2, 0)` and `s₂ = (√3/4, −3/4)`.
//!
//! Boundary points belong to the lexicographically smallest `(i, j)` among
//! the layer's closed hexagons containing them. That rule is the same as
//! assigning a point to the tile entered by an infinitesimal step in the
//! −x direction, so every tile owns its interior plus the open right-hand
//! chain of its boundary (right edge and the two right slanted edges, without
//! the top and bottom vertices).
//!
//! All edges of all layers lie on three line families: `x ∈ (√3/4h)ℤ`,
//! `x ± √3·y ∈ (√3/2h)ℤ`. In the scaled coordinates `X = 4hx/√3`,
//! `Y = 4hy` these cut the plane into unit triangles whose centroids are
//! `(m ± 1/3, n)` with `m + n` odd. Each subtile is a union of such
//! triangles, which is how subtiles are enumerated.

use std::collections::HashMap;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::geometry::{ExactScalar, Point, SQRT3};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, serde::Serialize)]
pub struct TileIndex {
    pub i: i64,
    pub j: i64,
}

impl TileIndex {
    pub const fn new(i: i64, j: i64) -> Self {
        TileIndex { i, j }
    }

    pub fn offset(self, di: i64, dj: i64) -> Self {
        TileIndex::new(self.i + di, self.j + dj)
    }
}

/// One tile per layer; entry `r - 1` is the layer-`r` tile holding the subtile.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubtileKey(pub Vec<TileIndex>);

impl SubtileKey {
    pub fn tiles(&self) -> &[TileIndex] {
        &self.0
    }

    pub fn tile(&self, layer: u32) -> TileIndex {
        self.0[layer as usize - 1]
    }
}

/// Which construction produced the shading of a lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShadingScheme {
    /// Vertical stripes of width √3/4h, `h` shades per stripe (h ≥ 3).
    Stripes,
    /// Subtile classes in canonical order, shade = index mod b + 1 (h ≤ 2).
    Canonical,
}

impl ShadingScheme {
    pub fn id(self) -> &'static str {
        match self {
            ShadingScheme::Stripes => "stripes",
            ShadingScheme::Canonical => "canonical",
        }
    }
}

/// Number of subtiles in one tile.
pub fn gamma(h: u32) -> u64 {
    match h {
        0 => 0,
        1 => 1,
        2 => 12,
        _ => 6 * (h as u64) * (h as u64),
    }
}

/// Centroid of a unit triangle of the line arrangement, in thirds of `X`
/// and units of `Y` (see module docs).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FineCentroid {
    pub x3: i64,
    pub y: i64,
}

/// The family of `h²` hexagonal layers with its subtile classes and shading.
#[derive(Clone, Debug)]
pub struct HexLattice {
    h: u32,
    /// normalized subtile key → class index
    classes: HashMap<Vec<TileIndex>, usize>,
    class_reps: Vec<FineCentroid>,
    shades: Vec<u32>,
    scheme: ShadingScheme,
}

const HEX_HALF_WIDTH: f64 = SQRT3 / 4.0;
const LOCATE_EPS: f64 = 1e-9;

impl HexLattice {
    /// Builds the lattice, its subtile classes and the shading. Fails if the
    /// shading does not balance.
    pub fn new(h: u32) -> Result<Self> {
        if h == 0 {
            return Err(Error::InvalidParameters("h must be positive".into()));
        }
        let mut lattice = HexLattice {
            h,
            classes: HashMap::new(),
            class_reps: Vec::new(),
            shades: Vec::new(),
            scheme: ShadingScheme::Canonical,
        };
        for c in lattice.fine_centroids_in_tile(TileIndex::new(0, 0)) {
            let key = lattice.subtile_key(&c.to_point(h)).0;
            if !lattice.classes.contains_key(&key) {
                lattice.classes.insert(key, lattice.class_reps.len());
                lattice.class_reps.push(c);
            }
        }
        let b = lattice.b() as usize;
        let stripes = h >= 3 && lattice.class_reps.len() == 6 * b;
        lattice.shades = if stripes {
            lattice.scheme = ShadingScheme::Stripes;
            lattice
                .class_reps
                .iter()
                .map(|c| stripe_shade(h as i64, *c))
                .collect()
        } else {
            (0..lattice.class_reps.len())
                .map(|idx| (idx % b) as u32 + 1)
                .collect()
        };
        let report = validate_shading(&lattice);
        if !report.passed {
            return Err(Error::InvalidParameters(format!(
                "shading for h = {} is unbalanced: {:?}",
                h, report.failure
            )));
        }
        Ok(lattice)
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    /// Number of layers, `h²`.
    pub fn b(&self) -> u32 {
        self.h * self.h
    }

    pub fn gamma(&self) -> u64 {
        gamma(self.h)
    }

    pub fn shading_scheme(&self) -> ShadingScheme {
        self.scheme
    }

    pub fn class_count(&self) -> usize {
        self.class_reps.len()
    }

    pub fn class_shades(&self) -> &[u32] {
        &self.shades
    }

    pub fn tile_center(&self, t: TileIndex) -> Point {
        let den = 4 * self.h as i64;
        Point::new(
            ExactScalar::sqrt3_ratio(2 * t.i + t.j, den),
            ExactScalar::ratio(-3 * t.j, den),
        )
    }

    pub fn tile_center_f64(&self, t: TileIndex) -> (f64, f64) {
        let den = 4.0 * self.h as f64;
        (
            (2 * t.i + t.j) as f64 * SQRT3 / den,
            -3.0 * t.j as f64 / den,
        )
    }

    /// Vertices of the closed hexagon of tile `t`, counterclockwise.
    pub fn tile_vertices(&self, t: TileIndex) -> Vec<Point> {
        let c = self.tile_center(t);
        base_hexagon()
            .iter()
            .map(|v| &c + v)
            .collect()
    }

    pub fn layer_of(&self, t: TileIndex) -> u32 {
        let h = self.h as i64;
        (1 + t.i.rem_euclid(h) + h * t.j.rem_euclid(h)) as u32
    }

    /// Index residues `(i mod h, j mod h)` shared by all tiles of layer `r`.
    pub fn layer_residues(&self, r: u32) -> (i64, i64) {
        assert!(r >= 1 && r <= self.b(), "layer {} out of range", r);
        let h = self.h as i64;
        let m = r as i64 - 1;
        (m % h, m / h)
    }

    /// Exact closed-hexagon membership.
    pub fn contains_closed(&self, t: TileIndex, p: &Point) -> bool {
        let c = self.tile_center(t);
        let dx = (&p.x - &c.x).abs();
        let dy = (&p.y - &c.y).abs();
        let half_width = ExactScalar::sqrt3_ratio(1, 4);
        if dx > half_width {
            return false;
        }
        // √3·|dy| + |dx| ≤ √3/2
        &ExactScalar::sqrt3() * &dy + &dx <= ExactScalar::sqrt3_ratio(1, 2)
    }

    fn margin_f64(&self, t: TileIndex, x: f64, y: f64) -> f64 {
        let (cx, cy) = self.tile_center_f64(t);
        let dx = (x - cx).abs();
        let dy = (y - cy).abs();
        (HEX_HALF_WIDTH - dx).min(SQRT3 / 2.0 - SQRT3 * dy - dx)
    }

    /// The tile of layer `r` that owns `p`.
    pub fn locate(&self, p: &Point, r: u32) -> TileIndex {
        let (x, y) = p.approx();
        self.locate_with(p, x, y, r)
    }

    fn locate_with(&self, p: &Point, x: f64, y: f64, r: u32) -> TileIndex {
        let h = self.h as i64;
        let hf = self.h as f64;
        let (a, c) = self.layer_residues(r);
        // invert the lattice map: y = −3j/4h, x = (2i + j)√3/4h
        let jr = -4.0 * hf * y / 3.0;
        let ir = (4.0 * hf * x / SQRT3 - jr) / 2.0;
        let u0 = ((ir - a as f64) / hf).floor() as i64;
        let v0 = ((jr - c as f64) / hf).floor() as i64;
        let tol = LOCATE_EPS * (1.0 + x.abs() + y.abs());
        let mut near: Vec<(TileIndex, f64)> = Vec::with_capacity(4);
        for du in -1..=2 {
            for dv in -1..=2 {
                let t = TileIndex::new(a + h * (u0 + du), c + h * (v0 + dv));
                let m = self.margin_f64(t, x, y);
                if m >= -tol {
                    near.push((t, m));
                }
            }
        }
        if near.len() == 1 && near[0].1 > tol {
            return near[0].0;
        }
        near.sort_by_key(|(t, _)| *t);
        near.into_iter()
            .map(|(t, _)| t)
            .find(|t| self.contains_closed(*t, p))
            .expect("every point lies in some closed hexagon of each layer")
    }

    /// The subtile containing `p`: its tile in every layer.
    pub fn subtile_key(&self, p: &Point) -> SubtileKey {
        let (x, y) = p.approx();
        SubtileKey((1..=self.b()).map(|r| self.locate_with(p, x, y, r)).collect())
    }

    /// Translates a key so its layer-1 tile is `H_{0,0}`; the lattice is
    /// periodic under index shifts by multiples of `h`.
    pub fn normalize_key(&self, key: &SubtileKey) -> (TileIndex, Vec<TileIndex>) {
        let anchor = key.tile(1);
        let norm = key
            .0
            .iter()
            .map(|t| t.offset(-anchor.i, -anchor.j))
            .collect();
        (anchor, norm)
    }

    /// Translation class of a subtile, in `0..class_count()`.
    pub fn class_of(&self, key: &SubtileKey) -> Option<usize> {
        let (_, norm) = self.normalize_key(key);
        self.classes.get(&norm).copied()
    }

    /// The shade η of a subtile, in `1..=b`.
    pub fn shade(&self, key: &SubtileKey) -> u32 {
        let class = self
            .class_of(key)
            .expect("every subtile is a translate of one inside H_{0,0}");
        self.shades[class]
    }

    /// Centroids of the unit arrangement triangles lying inside tile `t`.
    pub fn fine_centroids_in_tile(&self, t: TileIndex) -> Vec<FineCentroid> {
        let h = self.h as i64;
        let layer = self.layer_of(t);
        let (xc, yc) = (2 * t.i + t.j, -3 * t.j);
        let mut out = Vec::new();
        for m in (xc - h - 1)..=(xc + h + 1) {
            for n in (yc - 2 * h - 1)..=(yc + 2 * h + 1) {
                if (m + n).rem_euclid(2) != 1 {
                    continue;
                }
                for x3 in [3 * m - 1, 3 * m + 1] {
                    let c = FineCentroid { x3, y: n };
                    if self.locate(&c.to_point(self.h), layer) == t {
                        out.push(c);
                    }
                }
            }
        }
        out
    }

    /// Distinct subtile keys inside tile `t`.
    pub fn subtiles_in_tile(&self, t: TileIndex) -> Vec<SubtileKey> {
        let mut keys: Vec<SubtileKey> = self
            .fine_centroids_in_tile(t)
            .into_iter()
            .map(|c| self.subtile_key(&c.to_point(self.h)))
            .collect();
        keys.sort();
        keys.dedup();
        keys
    }

    /// A tile of layer `r` (the one nearest the origin).
    pub fn representative_tile(&self, r: u32) -> TileIndex {
        let (a, c) = self.layer_residues(r);
        TileIndex::new(a, c)
    }
}

impl FineCentroid {
    pub fn to_point(self, h: u32) -> Point {
        let h = h as i64;
        Point::new(
            ExactScalar::sqrt3_ratio(self.x3, 12 * h),
            ExactScalar::ratio(self.y, 4 * h),
        )
    }
}

fn base_hexagon() -> Vec<Point> {
    vec![
        Point::new(ExactScalar::zero(), ExactScalar::ratio(-1, 2)),
        Point::new(ExactScalar::sqrt3_ratio(1, 4), ExactScalar::ratio(-1, 4)),
        Point::new(ExactScalar::sqrt3_ratio(1, 4), ExactScalar::ratio(1, 4)),
        Point::new(ExactScalar::zero(), ExactScalar::ratio(1, 2)),
        Point::new(ExactScalar::sqrt3_ratio(-1, 4), ExactScalar::ratio(1, 4)),
        Point::new(ExactScalar::sqrt3_ratio(-1, 4), ExactScalar::ratio(-1, 4)),
    ]
}

/// Vertices of `H_{0,0}`, counterclockwise from the bottom vertex.
pub fn base_hexagon_vertices() -> Vec<Point> {
    base_hexagon()
}

/// Stripe `s = ⌊X⌋` gets shades `(s mod h)·h + 1 ..= (s mod h + 1)·h`; inside a
/// stripe, diamonds of two triangles cycle through the block with period
/// `h` diamonds. Stripe `s` starts its cycle at `Y = h·⌊s/h⌋`, which pairs
/// stripe `s` with stripe `s − h` so that the partial runs cut by any
/// hexagon complement each other.
fn stripe_shade(h: i64, c: FineCentroid) -> u32 {
    let s = c.x3.div_euclid(3);
    let phase = h * s.div_euclid(h);
    let diamond = (c.y - phase).div_euclid(2);
    (s.rem_euclid(h) * h + diamond.rem_euclid(h) + 1) as u32
}

/// Outcome of a shading balance check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShadingReport {
    pub passed: bool,
    pub gamma: u64,
    /// `counts[r - 1][s - 1]`: subtiles of shade `s` in the layer-`r` tile.
    pub counts: Vec<Vec<u64>>,
    /// `(layer, shade, count)` of the first imbalance.
    pub failure: Option<(u32, u32, u64)>,
}

/// Checks that one tile of every layer holds exactly `γ/b` subtiles per shade.
pub fn validate_shading(lattice: &HexLattice) -> ShadingReport {
    validate_shading_with(lattice, |class| lattice.shades[class])
}

/// [`validate_shading`] against an arbitrary class → shade map.
pub fn validate_shading_with<F: Fn(usize) -> u32>(lattice: &HexLattice, shade_of: F) -> ShadingReport {
    let b = lattice.b();
    let gamma = lattice.gamma();
    let per_shade = gamma / b as u64;
    let mut counts = Vec::new();
    let mut failure = None;
    for r in 1..=b {
        let tile = lattice.representative_tile(r);
        let mut row = vec![0u64; b as usize];
        let mut total = 0u64;
        for key in lattice.subtiles_in_tile(tile) {
            total += 1;
            match lattice.class_of(&key) {
                Some(class) => {
                    let s = shade_of(class);
                    if s >= 1 && s <= b {
                        row[s as usize - 1] += 1;
                    } else if failure.is_none() {
                        failure = Some((r, s, 0));
                    }
                }
                None => {
                    if failure.is_none() {
                        failure = Some((r, 0, total));
                    }
                }
            }
        }
        if failure.is_none() {
            if total != gamma {
                failure = Some((r, 0, total));
            } else if let Some((s, &cnt)) = row.iter().enumerate().find(|(_, &c)| c != per_shade) {
                failure = Some((r, s as u32 + 1, cnt));
            }
        }
        counts.push(row);
    }
    ShadingReport {
        passed: failure.is_none(),
        gamma,
        counts,
        failure,
    }
}

/// Scales a point by `2^{-j}`.
pub fn scale_by_pow2(p: &Point, j: u32) -> Point {
    if j == 0 {
        return p.clone();
    }
    p.scale(&BigRational::new(1.into(), num_traits::pow(num_bigint::BigInt::from(2), j as usize)))
}
