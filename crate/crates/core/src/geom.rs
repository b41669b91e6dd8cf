//! Basic planar primitives: points, vectors, lines, affine maps and
//! homographies of the projective plane.
//!
//! Conventions
//! - Orientation predicates on polygon data use exact arithmetic
//!   (Shewchuk-style, via the `robust` crate); everything else is plain f64.
//! - Angles are radians, counterclockwise, `atan2` range (-pi, pi].

use nalgebra::{Matrix2, Matrix3, Vector2, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of the affine plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

/// A displacement (tangent vector).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Vector {
    pub dx: f64,
    pub dy: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn to_vector(self) -> Vector {
        Vector::new(self.x, self.y)
    }

    pub fn distance(&self, other: Point) -> f64 {
        (*self - other).norm()
    }

    /// Affine interpolation `(1 - t) * self + t * other`.
    pub fn lerp(&self, other: Point, t: f64) -> Point {
        Point::new(
            self.x + t * (other.x - self.x),
            self.y + t * (other.y - self.y),
        )
    }
}

impl Vector {
    pub const fn new(dx: f64, dy: f64) -> Self {
        Self { dx, dy }
    }

    pub const ZERO: Vector = Vector::new(0.0, 0.0);

    pub fn is_finite(&self) -> bool {
        self.dx.is_finite() && self.dy.is_finite()
    }

    pub fn is_zero(&self) -> bool {
        self.dx == 0.0 && self.dy == 0.0
    }

    pub fn norm(&self) -> f64 {
        self.dx.hypot(self.dy)
    }

    pub fn normalize(&self) -> Vector {
        let n = self.norm();
        Vector::new(self.dx / n, self.dy / n)
    }

    pub fn dot(&self, other: Vector) -> f64 {
        self.dx * other.dx + self.dy * other.dy
    }

    /// z-component of the cross product.
    pub fn cross(&self, other: Vector) -> f64 {
        self.dx * other.dy - self.dy * other.dx
    }

    /// Counterclockwise rotation by a quarter turn.
    pub fn perp(&self) -> Vector {
        Vector::new(-self.dy, self.dx)
    }

    pub fn angle(&self) -> f64 {
        self.dy.atan2(self.dx)
    }

    pub fn from_angle(theta: f64) -> Vector {
        Vector::new(theta.cos(), theta.sin())
    }
}

impl std::ops::Add<Vector> for Point {
    type Output = Point;
    fn add(self, v: Vector) -> Point {
        Point::new(self.x + v.dx, self.y + v.dy)
    }
}

impl std::ops::Sub<Vector> for Point {
    type Output = Point;
    fn sub(self, v: Vector) -> Point {
        Point::new(self.x - v.dx, self.y - v.dy)
    }
}

impl std::ops::Sub for Point {
    type Output = Vector;
    fn sub(self, other: Point) -> Vector {
        Vector::new(self.x - other.x, self.y - other.y)
    }
}

impl std::ops::Add for Vector {
    type Output = Vector;
    fn add(self, other: Vector) -> Vector {
        Vector::new(self.dx + other.dx, self.dy + other.dy)
    }
}

impl std::ops::Sub for Vector {
    type Output = Vector;
    fn sub(self, other: Vector) -> Vector {
        Vector::new(self.dx - other.dx, self.dy - other.dy)
    }
}

impl std::ops::Mul<f64> for Vector {
    type Output = Vector;
    fn mul(self, s: f64) -> Vector {
        Vector::new(self.dx * s, self.dy * s)
    }
}

impl std::ops::Neg for Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector::new(-self.dx, -self.dy)
    }
}

/// Exact orientation of the triple `(a, b, c)`:
/// > 0 counterclockwise, < 0 clockwise, == 0 collinear.
pub fn orient2d(a: Point, b: Point, c: Point) -> f64 {
    robust::orient2d(
        robust::Coord { x: a.x, y: a.y },
        robust::Coord { x: b.x, y: b.y },
        robust::Coord { x: c.x, y: c.y },
    )
}

/// Signed area of a simple polygon (shoelace). Positive when counterclockwise.
pub fn signed_area(vertices: &[Point]) -> f64 {
    let n = vertices.len();
    let mut acc = 0.0;
    for i in 0..n {
        let p = vertices[i];
        let q = vertices[(i + 1) % n];
        acc += p.x * q.y - q.x * p.y;
    }
    0.5 * acc
}

/// Arithmetic mean of the vertices.
pub fn vertex_centroid(vertices: &[Point]) -> Point {
    let n = vertices.len() as f64;
    let (sx, sy) = vertices
        .iter()
        .fold((0.0, 0.0), |(sx, sy), p| (sx + p.x, sy + p.y));
    Point::new(sx / n, sy / n)
}

/// Euclidean distance from `p` to the segment `[a, b]`.
pub fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.distance(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.distance(a.lerp(b, t))
}

/// An (unoriented) line through `point` with direction `dir`.
#[derive(Clone, Copy, Debug)]
pub struct Line {
    pub point: Point,
    pub dir: Vector,
}

impl Line {
    pub fn new(point: Point, dir: Vector) -> Self {
        Self {
            point,
            dir: dir.normalize(),
        }
    }

    pub fn through(a: Point, b: Point) -> Self {
        Self::new(a, b - a)
    }

    /// Signed distance of `p` from the line (positive on the side of
    /// `dir.perp()`).
    pub fn signed_distance(&self, p: Point) -> f64 {
        self.dir.cross(p - self.point)
    }

    /// Intersection of two lines; `None` when (nearly) parallel.
    pub fn intersect(&self, other: &Line) -> Option<Point> {
        let denom = self.dir.cross(other.dir);
        if denom.abs() < 1e-14 {
            return None;
        }
        let t = (other.point - self.point).cross(other.dir) / denom;
        Some(self.point + self.dir * t)
    }
}

/// An invertible affine map `x -> M x + t`.
#[derive(Clone, Copy, Debug)]
pub struct AffineMap {
    pub m: Matrix2<f64>,
    pub t: Vector2<f64>,
}

impl AffineMap {
    /// Builds the map, rejecting (near-)singular linear parts.
    pub fn new(m: Matrix2<f64>, t: Vector2<f64>) -> Result<Self> {
        let scale = m.norm();
        if !m.iter().all(|v| v.is_finite()) || !t.iter().all(|v| v.is_finite()) {
            return Err(Error::SingularMap);
        }
        if m.determinant().abs() <= 1e-14 * scale * scale {
            return Err(Error::SingularMap);
        }
        Ok(Self { m, t })
    }

    pub fn identity() -> Self {
        Self {
            m: Matrix2::identity(),
            t: Vector2::zeros(),
        }
    }

    pub fn translation(v: Vector) -> Self {
        Self {
            m: Matrix2::identity(),
            t: Vector2::new(v.dx, v.dy),
        }
    }

    pub fn scaling(sx: f64, sy: f64) -> Result<Self> {
        Self::new(Matrix2::new(sx, 0.0, 0.0, sy), Vector2::zeros())
    }

    /// The unique affine map sending the triple `src` onto `dst`.
    pub fn from_triples(src: [Point; 3], dst: [Point; 3]) -> Result<Self> {
        let u1 = src[1] - src[0];
        let u2 = src[2] - src[0];
        let v1 = dst[1] - dst[0];
        let v2 = dst[2] - dst[0];
        let s = Matrix2::new(u1.dx, u2.dx, u1.dy, u2.dy);
        let d = Matrix2::new(v1.dx, v2.dx, v1.dy, v2.dy);
        let s_inv = s.try_inverse().ok_or(Error::DegenerateTriangle)?;
        let m = d * s_inv;
        let p0 = Vector2::new(src[0].x, src[0].y);
        let q0 = Vector2::new(dst[0].x, dst[0].y);
        let t = q0 - m * p0;
        Self::new(m, t)
    }

    pub fn apply(&self, p: Point) -> Point {
        let v = self.m * Vector2::new(p.x, p.y) + self.t;
        Point::new(v.x, v.y)
    }

    pub fn apply_vector(&self, v: Vector) -> Vector {
        let w = self.m * Vector2::new(v.dx, v.dy);
        Vector::new(w.x, w.y)
    }

    pub fn det(&self) -> f64 {
        self.m.determinant()
    }

    pub fn inverse(&self) -> AffineMap {
        let m_inv = self.m.try_inverse().expect("map validated at construction");
        AffineMap {
            m: m_inv,
            t: -m_inv * self.t,
        }
    }

    pub fn compose(&self, inner: &AffineMap) -> AffineMap {
        AffineMap {
            m: self.m * inner.m,
            t: self.m * inner.t + self.t,
        }
    }
}

/// A projective map of the plane given by a 3x3 matrix acting on
/// homogeneous coordinates `(x, y, 1)`.
#[derive(Clone, Copy, Debug)]
pub struct Homography {
    pub m: Matrix3<f64>,
}

impl Homography {
    pub fn new(m: Matrix3<f64>) -> Result<Self> {
        if !m.iter().all(|v| v.is_finite()) || m.determinant().abs() <= 1e-14 * m.norm().powi(3) {
            return Err(Error::SingularMap);
        }
        Ok(Self { m })
    }

    pub fn identity() -> Self {
        Self {
            m: Matrix3::identity(),
        }
    }

    pub fn from_affine(a: &AffineMap) -> Self {
        let mut m = Matrix3::identity();
        m[(0, 0)] = a.m[(0, 0)];
        m[(0, 1)] = a.m[(0, 1)];
        m[(1, 0)] = a.m[(1, 0)];
        m[(1, 1)] = a.m[(1, 1)];
        m[(0, 2)] = a.t.x;
        m[(1, 2)] = a.t.y;
        Self { m }
    }

    /// Homogeneous weight of the image of `p` (the third coordinate).
    pub fn weight(&self, p: Point) -> f64 {
        let w = self.m * Vector3::new(p.x, p.y, 1.0);
        w.z
    }

    /// Image of `p`; `None` when `p` maps to (or too close to) the line at
    /// infinity.
    pub fn apply(&self, p: Point) -> Option<Point> {
        let w = self.m * Vector3::new(p.x, p.y, 1.0);
        if w.z.abs() < 1e-300 {
            return None;
        }
        let q = Point::new(w.x / w.z, w.y / w.z);
        q.is_finite().then_some(q)
    }

    pub fn compose(&self, inner: &Homography) -> Homography {
        Homography {
            m: self.m * inner.m,
        }
    }

    pub fn inverse(&self) -> Result<Homography> {
        self.m
            .try_inverse()
            .map(|m| Homography { m })
            .ok_or(Error::SingularMap)
    }
}

/// Cross-ratio `[a, p, q, b]` of four collinear points, in the chord order
/// used by the Hilbert distance: `a, p, q, b` along the line.
pub fn cross_ratio(a: Point, p: Point, q: Point, b: Point) -> f64 {
    (q.distance(a) / p.distance(a)) * (p.distance(b) / q.distance(b))
}

/// Pairwise (tree) summation over `values` in index order, so results do not
/// depend on accumulation order elsewhere.
pub fn tree_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        n => {
            let mid = n / 2;
            tree_sum(&values[..mid]) + tree_sum(&values[mid..])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orientation_signs() {
        let a = Point::new(0.0, 0.0);
        let b = Point::new(1.0, 0.0);
        let c = Point::new(0.0, 1.0);
        assert!(orient2d(a, b, c) > 0.0);
        assert!(orient2d(a, c, b) < 0.0);
        assert_eq!(orient2d(a, b, Point::new(2.0, 0.0)), 0.0);
    }

    #[test]
    fn shoelace_unit_square() {
        let square = [
            Point::new(-1.0, -1.0),
            Point::new(1.0, -1.0),
            Point::new(1.0, 1.0),
            Point::new(-1.0, 1.0),
        ];
        assert_eq!(signed_area(&square), 4.0);
    }

    #[test]
    fn affine_from_triples_roundtrip() {
        let src = [
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(0.0, 1.0),
        ];
        let dst = [
            Point::new(2.0, 1.0),
            Point::new(3.0, 1.5),
            Point::new(2.5, 3.0),
        ];
        let map = AffineMap::from_triples(src, dst).unwrap();
        for (s, d) in src.iter().zip(dst.iter()) {
            assert!(map.apply(*s).distance(*d) < 1e-12);
        }
        let inv = map.inverse();
        let p = Point::new(0.3, 0.2);
        assert!(inv.apply(map.apply(p)).distance(p) < 1e-12);
    }

    #[test]
    fn homography_preserves_cross_ratio() {
        let m = Matrix3::new(1.0, 0.2, 0.1, -0.3, 1.1, 0.05, 0.02, 0.03, 1.0);
        let h = Homography::new(m).unwrap();
        let a = Point::new(-1.0, -0.5);
        let dir = Vector::new(1.0, 0.7);
        let pts = [a, a + dir * 0.4, a + dir * 0.9, a + dir * 1.7];
        let imgs: Vec<Point> = pts.iter().map(|p| h.apply(*p).unwrap()).collect();
        let cr0 = cross_ratio(pts[0], pts[1], pts[2], pts[3]);
        let cr1 = cross_ratio(imgs[0], imgs[1], imgs[2], imgs[3]);
        assert!((cr0 - cr1).abs() < 1e-10 * cr0.abs());
    }

    #[test]
    fn line_intersection() {
        let l1 = Line::through(Point::new(0.0, 0.0), Point::new(1.0, 1.0));
        let l2 = Line::through(Point::new(1.0, 0.0), Point::new(0.0, 1.0));
        let p = l1.intersect(&l2).unwrap();
        assert!(p.distance(Point::new(0.5, 0.5)) < 1e-14);
        assert!(l1.intersect(&l1).is_none());
    }
}
