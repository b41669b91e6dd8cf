//! Strictly convex polygons with exact boundary predicates.

use crate::error::{Error, Result};
use crate::geom::{orient2d, point_segment_distance, signed_area, vertex_centroid, Point, Vector};

use super::Location;

/// A bounded open convex polygon, stored as its counterclockwise vertex
/// cycle. Collinear vertex triples are rejected so every vertex is a genuine
/// corner; a flat boundary piece is a single edge.
#[derive(Clone, Debug)]
pub struct Polygon {
    vertices: Vec<Point>,
}

impl Polygon {
    /// Validates and normalizes a vertex cycle. Clockwise input is reversed.
    pub fn new(mut vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidBody("polygon needs at least 3 vertices".into()));
        }
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidBody("polygon vertex is not finite".into()));
        }
        let area = signed_area(&vertices);
        if area == 0.0 {
            return Err(Error::InvalidBody("polygon has zero area".into()));
        }
        if area < 0.0 {
            vertices.reverse();
        }
        let n = vertices.len();
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let c = vertices[(i + 2) % n];
            let o = orient2d(a, b, c);
            if o == 0.0 {
                return Err(Error::InvalidBody(format!(
                    "collinear vertex triple at index {i}"
                )));
            }
            if o < 0.0 {
                return Err(Error::InvalidBody(format!(
                    "reflex vertex at index {}",
                    (i + 1) % n
                )));
            }
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn centroid(&self) -> Point {
        vertex_centroid(&self.vertices)
    }

    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                d = d.max(a.distance(*b));
            }
        }
        d
    }

    /// Exact point classification via orientation predicates.
    pub fn locate(&self, p: Point) -> Location {
        let n = self.vertices.len();
        let mut on_boundary = false;
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            let o = orient2d(a, b, p);
            if o < 0.0 {
                return Location::Exterior;
            }
            if o == 0.0 {
                // On the edge line; inside the segment span?
                let within = p.x >= a.x.min(b.x)
                    && p.x <= a.x.max(b.x)
                    && p.y >= a.y.min(b.y)
                    && p.y <= a.y.max(b.y);
                if within {
                    on_boundary = true;
                } else {
                    return Location::Exterior;
                }
            }
        }
        if on_boundary {
            Location::Boundary
        } else {
            Location::Interior
        }
    }

    /// Distance from the ray `p + t u`, `t > 0`, to the boundary.
    /// `p` must be strictly interior and `u` unit length.
    pub fn ray_distance(&self, p: Point, u: Vector) -> f64 {
        let n = self.vertices.len();
        let mut best = f64::INFINITY;
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            let e = b - a;
            let denom = u.cross(e);
            if denom == 0.0 {
                continue;
            }
            let ap = a - p;
            let t = ap.cross(e) / denom;
            if t <= 0.0 {
                continue;
            }
            let s = ap.cross(u) / denom;
            if (-1e-12..=1.0 + 1e-12).contains(&s) && t < best {
                best = t;
            }
        }
        debug_assert!(best.is_finite(), "interior ray must hit the boundary");
        best
    }

    /// Euclidean distance from `p` to the boundary polyline.
    pub fn boundary_distance(&self, p: Point) -> f64 {
        let n = self.vertices.len();
        let mut d = f64::INFINITY;
        for i in 0..n {
            d = d.min(point_segment_distance(
                p,
                self.vertices[i],
                self.vertices[(i + 1) % n],
            ));
        }
        d
    }

    /// Boundary point for parameter `t` in `[0, n)`: integer part selects the
    /// edge, fractional part interpolates along it.
    pub fn boundary_point(&self, t: f64) -> Point {
        let n = self.vertices.len();
        let t = t.rem_euclid(n as f64);
        let i = (t.floor() as usize).min(n - 1);
        let frac = t - i as f64;
        self.vertices[i].lerp(self.vertices[(i + 1) % n], frac)
    }

    /// Index of the vertex within `tol` of `p`, if any.
    pub fn vertex_near(&self, p: Point, tol: f64) -> Option<usize> {
        self.vertices
            .iter()
            .position(|v| v.distance(p) <= tol)
    }

    /// Index of the edge whose segment contains `p` within `tol`, if any.
    pub fn edge_near(&self, p: Point, tol: f64) -> Option<usize> {
        let n = self.vertices.len();
        (0..n).find(|&i| {
            point_segment_distance(p, self.vertices[i], self.vertices[(i + 1) % n]) <= tol
        })
    }

    /// Clips the polygon against the half-plane `{ x : n . (x - a) <= 0 }`
    /// (Sutherland-Hodgman step). Returns the vertex cycle, possibly empty.
    pub fn clip_halfplane(vertices: &[Point], a: Point, normal: Vector) -> Vec<Point> {
        let inside = |p: Point| normal.dot(p - a) <= 0.0;
        let mut out = Vec::new();
        let n = vertices.len();
        for i in 0..n {
            let cur = vertices[i];
            let nxt = vertices[(i + 1) % n];
            let cur_in = inside(cur);
            let nxt_in = inside(nxt);
            if cur_in {
                out.push(cur);
            }
            if cur_in != nxt_in {
                let da = normal.dot(cur - a);
                let db = normal.dot(nxt - a);
                let t = da / (da - db);
                out.push(cur.lerp(nxt, t));
            }
        }
        out
    }
}
