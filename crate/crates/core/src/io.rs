//! Text formats: JSONL disk and shape instances, and the plane-coloring file.
//!
//! Coordinates travel as decimal strings and are parsed exactly.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{format_rational, Disk, ExactScalar, Point};
use crate::plane_coloring::{ColoringKind, PlaneColoring};
use crate::shapes::ConvexShape;
use crate::tiling::{HexLattice, TileIndex};

#[derive(Serialize, Deserialize)]
struct DiskRecord {
    center: [String; 2],
    diameter: String,
}

#[derive(Serialize, Deserialize)]
struct ShapeRecord {
    center: [String; 2],
    vertices: Vec<[String; 2]>,
}

/// Exact text of a number; rationals as decimals when they terminate.
pub fn format_scalar(x: &ExactScalar) -> String {
    if x.is_rational() {
        format_rational(x.rational_part())
    } else {
        x.to_string()
    }
}

fn coords(p: &Point) -> [String; 2] {
    [format_scalar(&p.x), format_scalar(&p.y)]
}

fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn bad_line(line: usize, e: impl std::fmt::Display) -> Error {
    Error::Input(format!("line {}: {}", line, e))
}

pub fn parse_disks(text: &str) -> Result<Vec<Disk>> {
    lines(text)
        .map(|(n, l)| {
            let r: DiskRecord = serde_json::from_str(l).map_err(|e| bad_line(n, e))?;
            let center = Point::parse(&r.center[0], &r.center[1]).map_err(|e| bad_line(n, e))?;
            let diameter: ExactScalar = r.diameter.parse().map_err(|e| bad_line(n, e))?;
            Ok(Disk::new(center, diameter))
        })
        .collect()
}

pub fn write_disks(disks: &[Disk]) -> String {
    let mut out = String::new();
    for d in disks {
        let r = DiskRecord {
            center: coords(&d.center),
            diameter: format_scalar(&d.diameter),
        };
        out.push_str(&serde_json::to_string(&r).expect("plain strings serialize"));
        out.push('\n');
    }
    out
}

pub fn parse_shapes(text: &str) -> Result<Vec<ConvexShape>> {
    lines(text)
        .map(|(n, l)| {
            let r: ShapeRecord = serde_json::from_str(l).map_err(|e| bad_line(n, e))?;
            let center = Point::parse(&r.center[0], &r.center[1]).map_err(|e| bad_line(n, e))?;
            let vertices = r
                .vertices
                .iter()
                .map(|v| Point::parse(&v[0], &v[1]))
                .collect::<Result<Vec<_>>>()
                .map_err(|e| bad_line(n, e))?;
            ConvexShape::new(vertices, center).map_err(|e| bad_line(n, e))
        })
        .collect()
}

pub fn write_shapes(shapes: &[ConvexShape]) -> String {
    let mut out = String::new();
    for s in shapes {
        let r = ShapeRecord {
            center: coords(s.center()),
            vertices: s.vertices().iter().map(coords).collect(),
        };
        out.push_str(&serde_json::to_string(&r).expect("plain strings serialize"));
        out.push('\n');
    }
    out
}

pub const COLORING_HEADER: &str = "# h p q k b kind sigma_max";

/// Writes a coloring file: header, parameter line, and optionally the
/// colors of one tile per class of same-colored tiles.
///
/// `sigma` is `σ_max` for lattice colorings and the construction σ for
/// L* labelings.
pub fn write_coloring(c: &PlaneColoring, sigma: &str, table: bool) -> String {
    let mut out = String::new();
    writeln!(out, "{}", COLORING_HEADER).unwrap();
    writeln!(
        out,
        "{} {} {} {} {} {} {}",
        c.h(),
        c.p(),
        c.q(),
        c.k(),
        c.b(),
        c.kind().id(),
        sigma
    )
    .unwrap();
    if table {
        for (i, j) in c.monochrome_lattice().representatives() {
            writeln!(out, "{} {} {}", i, j, c.tile_color(TileIndex::new(i, j))).unwrap();
        }
    }
    out
}

/// Parsed coloring file.
#[derive(Clone, Debug, PartialEq)]
pub struct ColoringFile {
    pub h: u32,
    pub p: i64,
    pub q: i64,
    pub k: u64,
    pub b: u32,
    pub kind: ColoringKind,
    pub sigma: String,
    pub table: Vec<(i64, i64, u64)>,
}

fn field<T: std::str::FromStr>(s: Option<&str>, what: &str) -> Result<T> {
    s.and_then(|v| v.parse().ok())
        .ok_or_else(|| Error::Input(format!("coloring file: bad or missing {}", what)))
}

pub fn parse_coloring(text: &str) -> Result<ColoringFile> {
    let mut rows = lines(text);
    let (_, head) = rows
        .next()
        .ok_or_else(|| Error::Input("coloring file: missing parameter line".into()))?;
    let mut it = head.split_whitespace();
    let h = field(it.next(), "h")?;
    let p = field(it.next(), "p")?;
    let q = field(it.next(), "q")?;
    let k = field(it.next(), "k")?;
    let b = field(it.next(), "b")?;
    let kind = ColoringKind::parse(it.next().unwrap_or(""))?;
    let sigma: String = field(it.next(), "sigma_max")?;
    let mut table = Vec::new();
    for (n, l) in rows {
        let mut it = l.split_whitespace();
        let parse = |s: Option<&str>| -> Result<i64> {
            s.and_then(|v| v.parse().ok()).ok_or_else(|| bad_line(n, "expected `i j color`"))
        };
        let i = parse(it.next())?;
        let j = parse(it.next())?;
        let c = parse(it.next())?;
        if c < 1 {
            return Err(bad_line(n, "colors start at 1"));
        }
        table.push((i, j, c as u64));
    }
    Ok(ColoringFile {
        h,
        p,
        q,
        k,
        b,
        kind,
        sigma,
        table,
    })
}

impl ColoringFile {
    /// Rebuilds the coloring and checks the declared `k`, `b` and table.
    pub fn build(&self) -> Result<PlaneColoring> {
        let lattice = Arc::new(HexLattice::new(self.h)?);
        let c = match self.kind {
            ColoringKind::Pq => PlaneColoring::pq(lattice, self.p, self.q)?,
            kind => {
                if self.q != 0 {
                    return Err(Error::InvalidColoring("L* labelings have q = 0".into()));
                }
                let c = PlaneColoring::lstar(lattice, self.p, kind)?;
                if self.k + 1 == c.k() {
                    c.without_guard()
                } else {
                    c
                }
            }
        };
        if c.k() != self.k || c.b() != self.b {
            return Err(Error::InvalidColoring(format!(
                "declared k = {}, b = {} but parameters give k = {}, b = {}",
                self.k,
                self.b,
                c.k(),
                c.b()
            )));
        }
        for &(i, j, color) in &self.table {
            let expect = c.tile_color(TileIndex::new(i, j));
            if expect != color {
                return Err(Error::InvalidColoring(format!(
                    "tile ({}, {}) has color {} in the table but {} by construction",
                    i, j, color, expect
                )));
            }
        }
        Ok(c)
    }
}
