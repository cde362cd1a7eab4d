//! Convex shapes with a chosen center, their inner and outer disks, and the
//! adapter that colors shape streams through the disk algorithms.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{
    check_convex_ccw, convex_polygons_intersect, point_segment_sq_dist, sq_dist, ExactScalar,
    Point,
};
use crate::online::{run_points, AlgorithmConfig, AlgorithmKind, Mode, RunOutput};
use crate::plane_coloring::PlaneColoring;
use crate::tiling::HexLattice;

/// A convex polygon (counterclockwise) with an interior center point `P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexShape {
    vertices: Vec<Point>,
    center: Point,
}

fn cross(o: &Point, a: &Point, b: &Point) -> ExactScalar {
    let (ax, ay) = (&a.x - &o.x, &a.y - &o.y);
    let (bx, by) = (&b.x - &o.x, &b.y - &o.y);
    &ax * &by - &ay * &bx
}

fn strictly_inside(vertices: &[Point], p: &Point) -> bool {
    let n = vertices.len();
    (0..n).all(|i| cross(&vertices[i], &vertices[(i + 1) % n], p) > ExactScalar::zero())
}

impl ConvexShape {
    pub fn new(vertices: Vec<Point>, center: Point) -> Result<Self> {
        check_convex_ccw(&vertices)?;
        if !strictly_inside(&vertices, &center) {
            return Err(Error::CenterOutside);
        }
        Ok(ConvexShape { vertices, center })
    }

    /// Uses [`choose_center`] for `P`.
    pub fn with_chosen_center(vertices: Vec<Point>) -> Result<Self> {
        check_convex_ccw(&vertices)?;
        let center = choose_center(&vertices)?;
        Self::new(vertices, center)
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn center(&self) -> &Point {
        &self.center
    }

    /// Axis-aligned bounding box `(min_x, min_y, max_x, max_y)`, approximate.
    pub fn bbox_f64(&self) -> (f64, f64, f64, f64) {
        let mut b = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        for v in &self.vertices {
            let (x, y) = v.approx();
            b = (b.0.min(x), b.1.min(y), b.2.max(x), b.3.max(y));
        }
        b
    }
}

/// Inner and outer disks of a shape, both centered at `P`.
#[derive(Clone, Debug, PartialEq)]
pub struct ShapeMetrics {
    /// `ID(S)²`: four times the squared distance from `P` to the boundary.
    pub inner_diameter_sq: ExactScalar,
    /// `OD(S)²`: four times the squared distance from `P` to the farthest vertex.
    pub outer_diameter_sq: ExactScalar,
    pub inner_diameter: f64,
    pub outer_diameter: f64,
    /// `ρ = OD/ID`.
    pub rho: f64,
}

impl ShapeMetrics {
    /// Exact test `ρ ≤ bound`.
    pub fn rho_at_most(&self, bound: &ExactScalar) -> bool {
        self.outer_diameter_sq <= &bound.square() * &self.inner_diameter_sq
    }
}

pub fn inner_outer(shape: &ConvexShape) -> ShapeMetrics {
    let v = &shape.vertices;
    let p = &shape.center;
    let n = v.len();
    let inner_r2 = (0..n)
        .map(|i| point_segment_sq_dist(p, &v[i], &v[(i + 1) % n]))
        .min()
        .expect("polygon has vertices");
    let outer_r2 = v.iter().map(|x| sq_dist(p, x)).max().expect("polygon has vertices");
    let four = ExactScalar::from_int(4);
    let inner_diameter_sq = &inner_r2 * &four;
    let outer_diameter_sq = &outer_r2 * &four;
    let inner_diameter = inner_diameter_sq.to_f64().sqrt();
    let outer_diameter = outer_diameter_sq.to_f64().sqrt();
    ShapeMetrics {
        rho: outer_diameter / inner_diameter,
        inner_diameter_sq,
        outer_diameter_sq,
        inner_diameter,
        outer_diameter,
    }
}

/// Closed shapes; exact separating-axis test.
pub fn shapes_intersect(a: &ConvexShape, b: &ConvexShape) -> bool {
    convex_polygons_intersect(&a.vertices, &b.vertices)
}

fn rho_f64(vs: &[(f64, f64)], x: f64, y: f64) -> f64 {
    let n = vs.len();
    let mut inner = f64::INFINITY;
    let mut outer: f64 = 0.0;
    for i in 0..n {
        let (ax, ay) = vs[i];
        let (bx, by) = vs[(i + 1) % n];
        let (ex, ey) = (bx - ax, by - ay);
        let len = (ex * ex + ey * ey).sqrt();
        let d = (ex * (y - ay) - ey * (x - ax)) / len;
        if d <= 0.0 {
            return f64::INFINITY;
        }
        inner = inner.min(d);
        outer = outer.max(((x - ax).powi(2) + (y - ay).powi(2)).sqrt());
    }
    outer / inner
}

/// An interior point that roughly minimizes `ρ`: a grid search over the
/// bounding box refined twice, rounded to four decimals. Falls back to the
/// vertex average when rounding leaves the polygon.
pub fn choose_center(vertices: &[Point]) -> Result<Point> {
    check_convex_ccw(vertices)?;
    let vs: Vec<(f64, f64)> = vertices.iter().map(Point::approx).collect();
    let (mut x0, mut y0, mut x1, mut y1) = vs.iter().fold(
        (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY),
        |b, &(x, y)| (b.0.min(x), b.1.min(y), b.2.max(x), b.3.max(y)),
    );
    let mut best = (f64::INFINITY, 0.5 * (x0 + x1), 0.5 * (y0 + y1));
    const STEPS: usize = 24;
    for _ in 0..3 {
        for a in 0..=STEPS {
            for b in 0..=STEPS {
                let x = x0 + (x1 - x0) * a as f64 / STEPS as f64;
                let y = y0 + (y1 - y0) * b as f64 / STEPS as f64;
                let r = rho_f64(&vs, x, y);
                if r < best.0 {
                    best = (r, x, y);
                }
            }
        }
        let (wx, wy) = ((x1 - x0) / STEPS as f64 * 2.0, (y1 - y0) / STEPS as f64 * 2.0);
        x0 = best.1 - wx;
        x1 = best.1 + wx;
        y0 = best.2 - wy;
        y1 = best.2 + wy;
    }
    let round = |v: f64| BigRational::new(BigInt::from((v * 1e4).round() as i64), BigInt::from(10_000));
    let p = Point::from_rationals(round(best.1), round(best.2));
    if best.0.is_finite() && strictly_inside(vertices, &p) {
        return Ok(p);
    }
    let n = ExactScalar::from_int(vertices.len() as i64);
    let inv = n.inverse()?;
    let sx = vertices.iter().fold(ExactScalar::zero(), |acc, v| acc + v.x.clone());
    let sy = vertices.iter().fold(ExactScalar::zero(), |acc, v| acc + v.y.clone());
    Ok(Point::new(&sx * &inv, &sy * &inv))
}

/// Range the base must cover: `G_[1, ρσ]`, or `G_[1, 2ρ]` when branching
/// on inner diameters.
pub fn shape_base_sigma(kind: AlgorithmKind, sigma: &ExactScalar, rho_bound: &ExactScalar) -> ExactScalar {
    if kind.branches() {
        rho_bound * &ExactScalar::from_int(2)
    } else {
        rho_bound * sigma
    }
}

/// Configuration for coloring shapes with inner diameters in `[1, σ]` and
/// `ρ ≤ rho_bound`. Uses the `(h², p, 0)` coloring for the enlarged range
/// when no base is given.
pub fn shape_config(
    kind: AlgorithmKind,
    sigma: &ExactScalar,
    rho_bound: &ExactScalar,
    h: u32,
    base: Option<Arc<PlaneColoring>>,
) -> Result<AlgorithmConfig> {
    if kind == AlgorithmKind::BranchFF {
        return Err(Error::InvalidParameters("branch-ff colors disks only".into()));
    }
    if *rho_bound < ExactScalar::one() {
        return Err(Error::InvalidParameters(format!("rho bound {} < 1", rho_bound)));
    }
    let base_sigma = shape_base_sigma(kind, sigma, rho_bound);
    let base = match base {
        Some(b) => b,
        None => {
            let h = if kind == AlgorithmKind::SimpleColor { 1 } else { h };
            Arc::new(PlaneColoring::hsq(Arc::new(HexLattice::new(h)?), &base_sigma)?)
        }
    };
    AlgorithmConfig::with_base_sigma(kind, sigma.clone(), base_sigma, Some(base), Mode::Proper)
}

/// Runs the configured algorithm on shape centers, branching on inner
/// diameters. Rejects shapes with `ρ` above the declared bound.
pub fn shape_stream_adapter(
    config: &AlgorithmConfig,
    rho_bound: &ExactScalar,
    shapes: &[ConvexShape],
) -> Result<RunOutput> {
    let mut items = Vec::with_capacity(shapes.len());
    for s in shapes {
        let m = inner_outer(s);
        if !m.rho_at_most(rho_bound) {
            return Err(Error::RhoTooLarge {
                rho: m.rho,
                bound: rho_bound.to_f64(),
            });
        }
        items.push((s.center.clone(), m.inner_diameter_sq));
    }
    run_points(config, &items)
}

/// Random convex polygons with inner diameters in `[1, σ]` and `ρ ≤ rho_max`,
/// vertices on four-decimal coordinates; seeded and reproducible.
pub fn gen_random_shapes(
    n: usize,
    sigma: &ExactScalar,
    rho_max: &ExactScalar,
    box_side: f64,
    seed: u64,
) -> Vec<ConvexShape> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sigma_f = sigma.to_f64();
    // Tight ρ needs many vertices and little jitter: a regular m-gon has
    // ρ = 1/cos(π/m), so start where that uses at most half the slack.
    let slack = (rho_max.to_f64() - 1.0).max(0.0);
    let m_min = (4..64usize)
        .find(|&m| 1.0 / (std::f64::consts::PI / m as f64).cos() <= 1.0 + 0.5 * slack)
        .unwrap_or(64);
    let m_max = m_min.max(9);
    let spread = (slack / 4.0).min(0.35);
    let angle_jitter = (slack / 2.0).min(0.25);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let m = rng.gen_range(m_min..=m_max);
        let cx = rng.gen_range(0.0..box_side);
        let cy = rng.gen_range(0.0..box_side);
        let spin = rng.gen_range(0.0..std::f64::consts::TAU);
        let target = rng.gen_range(1.0..=sigma_f);
        let pts: Vec<(f64, f64)> = (0..m)
            .map(|i| {
                let jitter = if angle_jitter > 0.0 { rng.gen_range(-angle_jitter..angle_jitter) } else { 0.0 };
                let a = spin + (i as f64 + jitter) * std::f64::consts::TAU / m as f64;
                let r = if spread > 0.0 { rng.gen_range(1.0..1.0 + spread) } else { 1.0 };
                (r * a.cos(), r * a.sin())
            })
            .collect();
        // Rotate the edge nearest the origin to the bottom and pin it to
        // y = −target/2 exactly, so the inner diameter can equal 1 or σ.
        let (nearest, dist) = (0..m)
            .map(|i| {
                let (ax, ay) = pts[i];
                let (bx, by) = pts[(i + 1) % m];
                let (ex, ey) = (bx - ax, by - ay);
                (i, (ex * (0.0 - ay) - ey * (0.0 - ax)) / (ex * ex + ey * ey).sqrt())
            })
            .fold((0, f64::INFINITY), |best, c| if c.1 < best.1 { c } else { best });
        if dist.is_nan() || dist <= 0.0 {
            continue;
        }
        let (ax, ay) = pts[nearest];
        let (bx, by) = pts[(nearest + 1) % m];
        let turn = -(by - ay).atan2(bx - ax);
        let (sin, cos) = turn.sin_cos();
        let scale = target / (2.0 * dist);
        let q = |v: f64| BigRational::new(BigInt::from((v * 1e4).round() as i64), BigInt::from(10_000));
        let (cxq, cyq) = (q(cx), q(cy));
        let target_q = q(target);
        let floor_y = &cyq - &target_q / BigRational::from_integer(2.into());
        let vertices: Vec<Point> = pts
            .iter()
            .enumerate()
            .map(|(i, &(x, y))| {
                let (rx, ry) = (x * cos - y * sin, x * sin + y * cos);
                let px = q(cx + scale * rx);
                if i == nearest || i == (nearest + 1) % m {
                    Point::from_rationals(px, floor_y.clone())
                } else {
                    Point::from_rationals(px, q(cy + scale * ry))
                }
            })
            .collect();
        let center = Point::from_rationals(cxq, cyq);
        let Ok(shape) = ConvexShape::new(vertices, center) else {
            continue;
        };
        let metrics = inner_outer(&shape);
        let in_range = metrics.inner_diameter_sq >= ExactScalar::one()
            && metrics.inner_diameter_sq <= sigma.square();
        if in_range && metrics.rho_at_most(rho_max) {
            out.push(shape);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::SQRT3;

    fn pt(x: &str, y: &str) -> Point {
        Point::parse(x, y).unwrap()
    }

    fn q(s: &str) -> ExactScalar {
        s.parse().unwrap()
    }

    fn hexagon() -> ConvexShape {
        let h = ExactScalar::sqrt3_ratio(1, 4);
        let vs = vec![
            Point::new(ExactScalar::ratio(1, 2), ExactScalar::zero()),
            Point::new(ExactScalar::ratio(1, 4), h.clone()),
            Point::new(ExactScalar::ratio(-1, 4), h.clone()),
            Point::new(ExactScalar::ratio(-1, 2), ExactScalar::zero()),
            Point::new(ExactScalar::ratio(-1, 4), -h.clone()),
            Point::new(ExactScalar::ratio(1, 4), -h),
        ];
        ConvexShape::new(vs, Point::origin()).unwrap()
    }

    fn square(x: &str, y: &str) -> ConvexShape {
        let x0: f64 = x.parse().unwrap();
        let y0: f64 = y.parse().unwrap();
        let c = |a: f64, b: f64| pt(&format!("{}", x0 + a), &format!("{}", y0 + b));
        ConvexShape::new(
            vec![c(-0.5, -0.5), c(0.5, -0.5), c(0.5, 0.5), c(-0.5, 0.5)],
            pt(x, y),
        )
        .unwrap()
    }

    #[test]
    fn hexagon_metrics() {
        let m = inner_outer(&hexagon());
        assert_eq!(m.inner_diameter_sq, q("0.75"));
        assert_eq!(m.outer_diameter_sq, q("1"));
        assert!((m.rho - 2.0 / SQRT3).abs() < 1e-12);
    }

    #[test]
    fn square_metrics() {
        let m = inner_outer(&square("0", "0"));
        assert_eq!(m.inner_diameter_sq, q("1"));
        assert_eq!(m.outer_diameter_sq, q("2"));
        assert!((m.rho - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn many_gon_is_nearly_round() {
        let n = 64;
        let vs: Vec<Point> = (0..n)
            .map(|i| {
                let a = i as f64 * std::f64::consts::TAU / n as f64;
                pt(&format!("{:.6}", a.cos()), &format!("{:.6}", a.sin()))
            })
            .collect();
        let s = ConvexShape::new(vs, Point::origin()).unwrap();
        let m = inner_outer(&s);
        let sec = 1.0 / (std::f64::consts::PI / n as f64).cos();
        assert!((m.rho - sec).abs() < 1e-4, "{}", m.rho);
    }

    #[test]
    fn invalid_shapes() {
        let vs = vec![pt("0", "0"), pt("1", "0"), pt("0", "1")];
        assert_eq!(ConvexShape::new(vs.clone(), pt("2", "2")), Err(Error::CenterOutside));
        assert_eq!(ConvexShape::new(vs.clone(), pt("0", "0")), Err(Error::CenterOutside));
        let cw: Vec<Point> = vs.into_iter().rev().collect();
        assert!(ConvexShape::new(cw, pt("0.2", "0.2")).is_err());
    }

    #[test]
    fn intersection_examples() {
        let a = square("0", "0");
        assert!(shapes_intersect(&a, &a));
        assert!(!shapes_intersect(&a, &square("3", "0")));
        assert!(shapes_intersect(&a, &square("0.9", "0.2")));
        assert!(shapes_intersect(&a, &square("1", "1")));
    }

    #[test]
    fn chosen_center_is_inside_and_good() {
        let vs = vec![pt("0", "0"), pt("4", "0"), pt("4", "1"), pt("0", "1")];
        let s = ConvexShape::with_chosen_center(vs).unwrap();
        let m = inner_outer(&s);
        // the centroid gives √17 ≈ 4.123; the search should not do worse
        assert!(m.rho <= 17f64.sqrt() + 1e-3, "{}", m.rho);
    }

    #[test]
    fn generated_shapes_respect_bounds() {
        let shapes = gen_random_shapes(30, &q("2"), &q("2"), 20.0, 3);
        assert_eq!(shapes.len(), 30);
        for s in &shapes {
            let m = inner_outer(s);
            assert!(m.inner_diameter_sq >= q("1") && m.inner_diameter_sq <= q("4"));
            assert!(m.rho_at_most(&q("2")));
        }
        assert_eq!(shapes, gen_random_shapes(30, &q("2"), &q("2"), 20.0, 3));
    }

    #[test]
    fn tight_rho_generates_quickly() {
        for rho in ["1.05", "1.2"] {
            let shapes = gen_random_shapes(20, &q("1.5"), &q(rho), 10.0, 9);
            assert!(shapes.iter().all(|s| inner_outer(s).rho_at_most(&q(rho))));
        }
        let unit = gen_random_shapes(20, &q("1"), &q("1.2"), 10.0, 9);
        assert!(unit.iter().all(|s| inner_outer(s).inner_diameter_sq == q("1")));
    }

    #[test]
    fn adapter_colors_same_tile_apart() {
        let cfg = shape_config(AlgorithmKind::FoldShadeColor, &q("1"), &q("1.5"), 1, None).unwrap();
        let s = square("0.01", "0.01");
        let out = shape_stream_adapter(&cfg, &q("1.5"), &[s.clone(), s]).unwrap();
        assert_ne!(out.colors[0].color, out.colors[1].color);
        assert!(shape_stream_adapter(&cfg, &q("1.2"), &[square("0", "0")]).is_err());
    }
}
