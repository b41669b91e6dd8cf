//! The Hilbert distance, the associated Finsler norm, and Finsler unit
//! balls with their areas.
//!
//! For an interior point `p` and a direction `v`, the chord through `p`
//! meets the boundary at `p-` (backward) and `p+` (forward), and
//!
//! ```text
//! F(p, v) = |v| / 2 * (1 / |p - p-| + 1 / |p - p+|)
//! ```
//!
//! The unit ball `B(p) = { v : F(p, v) < 1 }` is computed exactly for
//! polygonal bodies (it is itself a polygon) and by inscribed sampling for
//! C^2 bodies. The Busemann density is `pi / vol(B(p))`.

use crate::body::{ConvexBody, Location};
use crate::error::{Error, Result};
use crate::geom::{cross_ratio, signed_area, Point, Vector};

/// How a unit ball was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BallExactness {
    /// Piecewise-linear norm resolved on its critical directions.
    Exact,
    /// Inscribed polygon over this many sampled directions.
    Sampled(usize),
}

/// The Finsler unit ball at a point, as a centrally symmetric convex polygon
/// in the tangent plane (centered at the origin).
#[derive(Clone, Debug)]
pub struct UnitBallPolygon {
    pub vertices: Vec<Vector>,
    pub exactness: BallExactness,
}

impl UnitBallPolygon {
    /// Shoelace area of the ball polygon.
    pub fn area(&self) -> f64 {
        let pts: Vec<Point> = self
            .vertices
            .iter()
            .map(|v| Point::new(v.dx, v.dy))
            .collect();
        signed_area(&pts)
    }

    /// Central symmetry check: every vertex has its antipode in the list.
    pub fn is_centrally_symmetric(&self, tol: f64) -> bool {
        self.vertices
            .iter()
            .all(|v| self.vertices.iter().any(|w| (*v + *w).norm() <= tol))
    }

    /// Convexity of the vertex cycle.
    pub fn is_convex(&self) -> bool {
        let n = self.vertices.len();
        if n < 3 {
            return false;
        }
        (0..n).all(|i| {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            let c = self.vertices[(i + 2) % n];
            (b - a).cross(c - b) > 0.0
        })
    }
}

/// Hilbert ball area with the estimated sampling error.
#[derive(Clone, Copy, Debug)]
pub struct BallArea {
    pub value: f64,
    pub error: f64,
}

/// The Busemann density `pi / vol(B(p))`.
#[derive(Clone, Copy, Debug)]
pub struct Density {
    pub value: f64,
}

fn require_interior(body: &ConvexBody, p: Point) -> Result<()> {
    if body.contains(p) == Location::Interior {
        Ok(())
    } else {
        Err(Error::PointNotInterior)
    }
}

/// Points closer to the boundary than this fraction of the diameter are
/// rejected by the ball operations (the measure module integrates across the
/// limit with its own substitution instead).
const NEAR_BOUNDARY_FRACTION: f64 = 1e-6;

fn require_ball_safe(body: &ConvexBody, p: Point) -> Result<()> {
    require_interior(body, p)?;
    if body.boundary_distance(p) < NEAR_BOUNDARY_FRACTION * body.diameter() {
        return Err(Error::PointNotInterior);
    }
    Ok(())
}

/// The Hilbert distance `1/2 ln [a, p, q, b]`.
pub fn hilbert_distance(body: &ConvexBody, p: Point, q: Point) -> Result<f64> {
    require_interior(body, p)?;
    require_interior(body, q)?;
    let eps = body.eps_geom();
    if p.distance(q) <= eps {
        return Ok(0.0);
    }
    let chord = body.chord_endpoints(p, q - p)?;
    let a = chord.p_minus;
    let b = chord.p_plus;
    Ok(0.5 * cross_ratio(a, p, q, b).ln())
}

/// The Finsler norm `F(p, v)`; zero exactly when `v = 0`.
pub fn finsler_norm(body: &ConvexBody, p: Point, v: Vector) -> Result<f64> {
    require_interior(body, p)?;
    if !v.is_finite() {
        return Err(Error::ZeroDirection);
    }
    if v.is_zero() {
        return Ok(0.0);
    }
    let u = v.normalize();
    let d_plus = body.ray_distance(p, u);
    let d_minus = body.ray_distance(p, -u);
    Ok(0.5 * v.norm() * (1.0 / d_minus + 1.0 / d_plus))
}

/// Ball radius along the unit direction `u`: `1 / F(p, u)`, as the harmonic
/// combination of the two chord distances.
fn ball_radius(body: &ConvexBody, p: Point, u: Vector) -> f64 {
    let d_plus = body.ray_distance(p, u);
    let d_minus = body.ray_distance(p, -u);
    2.0 * d_plus * d_minus / (d_plus + d_minus)
}

/// Exact unit ball for polygonal bodies.
///
/// The norm `F(p, .)` is linear on each direction cone in which both chord
/// endpoints stay on fixed edges, so its unit sphere is a polygon whose
/// vertices sit along the critical directions: those pointing from `p` at a
/// body vertex, and their opposites.
fn unit_ball_polygon_exact(body: &ConvexBody, p: Point) -> UnitBallPolygon {
    let poly = body.as_polygon().expect("exact ball needs a polygon body");
    let mut angles: Vec<f64> = Vec::with_capacity(2 * poly.len());
    for v in poly.vertices() {
        let a = (*v - p).angle();
        angles.push(a);
        let opposite = if a <= 0.0 {
            a + std::f64::consts::PI
        } else {
            a - std::f64::consts::PI
        };
        angles.push(opposite);
    }
    angles.sort_by(f64::total_cmp);
    angles.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    if angles.len() > 1
        && (angles[angles.len() - 1] - angles[0] - 2.0 * std::f64::consts::PI).abs() < 1e-12
    {
        angles.pop();
    }
    let mut vertices: Vec<Vector> = angles
        .iter()
        .map(|&a| {
            let u = Vector::from_angle(a);
            u * ball_radius(body, p, u)
        })
        .collect();
    // Candidates on a common norm facet are collinear; drop them so the
    // vertex count reflects the true facet structure.
    let scale = vertices.iter().fold(0.0f64, |m, v| m.max(v.norm()));
    let n = vertices.len();
    let mut pruned: Vec<Vector> = Vec::with_capacity(n);
    for i in 0..n {
        let prev = vertices[(i + n - 1) % n];
        let cur = vertices[i];
        let next = vertices[(i + 1) % n];
        if (cur - prev).cross(next - cur).abs() > 1e-9 * scale * scale {
            pruned.push(cur);
        }
    }
    if pruned.len() >= 3 {
        vertices = pruned;
    }
    UnitBallPolygon {
        vertices,
        exactness: BallExactness::Exact,
    }
}

fn unit_ball_sampled(body: &ConvexBody, p: Point, n_directions: usize) -> UnitBallPolygon {
    let vertices = (0..n_directions)
        .map(|j| {
            let a = 2.0 * std::f64::consts::PI * j as f64 / n_directions as f64;
            let u = Vector::from_angle(a);
            u * ball_radius(body, p, u)
        })
        .collect();
    UnitBallPolygon {
        vertices,
        exactness: BallExactness::Sampled(n_directions),
    }
}

/// Default direction count for sampled balls.
pub const DEFAULT_BALL_DIRECTIONS: usize = 256;

/// The Finsler unit ball at `p`.
///
/// Polygon bodies yield the exact ball (any `n_directions` is ignored); C^2
/// bodies an inscribed polygon over `n_directions` uniform directions
/// (`n_directions >= 16`, even).
pub fn unit_ball(body: &ConvexBody, p: Point, n_directions: usize) -> Result<UnitBallPolygon> {
    require_ball_safe(body, p)?;
    match body {
        ConvexBody::Polygon(_) => Ok(unit_ball_polygon_exact(body, p)),
        _ => {
            if n_directions < 16 || n_directions % 2 != 0 {
                return Err(Error::PreconditionViolated(
                    "sampled unit ball needs an even direction count >= 16".into(),
                ));
            }
            Ok(unit_ball_sampled(body, p, n_directions))
        }
    }
}

/// Area of the unit ball at `p`.
///
/// Exact (shoelace) for polygon bodies. For C^2 bodies the inscribed areas
/// at `n` and `2n` directions are Richardson-extrapolated; the reported
/// error is a fraction of the applied correction.
pub fn ball_area(body: &ConvexBody, p: Point) -> Result<BallArea> {
    ball_area_with(body, p, DEFAULT_BALL_DIRECTIONS)
}

pub fn ball_area_with(body: &ConvexBody, p: Point, n_directions: usize) -> Result<BallArea> {
    require_ball_safe(body, p)?;
    match body {
        ConvexBody::Polygon(_) => Ok(BallArea {
            value: unit_ball_polygon_exact(body, p).area(),
            error: 0.0,
        }),
        _ => {
            let coarse = unit_ball_sampled(body, p, n_directions).area();
            let fine = unit_ball_sampled(body, p, 2 * n_directions).area();
            // Inscribed-polygon deficit scales as n^-2; one Richardson step
            // removes it and leaves O(n^-4).
            let correction = (fine - coarse) / 3.0;
            Ok(BallArea {
                value: fine + correction,
                error: correction.abs() * 0.1 + f64::EPSILON * fine.abs(),
            })
        }
    }
}

/// The Busemann density `pi / vol(B(p))`.
pub fn density(body: &ConvexBody, p: Point) -> Result<Density> {
    let area = ball_area(body, p)?;
    Ok(Density {
        value: std::f64::consts::PI / area.value,
    })
}
