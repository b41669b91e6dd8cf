//! Ellipse bodies: closed-form chords and curvature.

use nalgebra::{Matrix2, Vector2};

use crate::error::{Error, Result};
use crate::geom::{Point, Vector};

use super::Location;

/// An open ellipse with semi-major axis `a`, semi-minor axis `b` and
/// counterclockwise `rotation` of the major axis from the x-axis.
#[derive(Clone, Debug)]
pub struct Ellipse {
    pub center: Point,
    pub a: f64,
    pub b: f64,
    pub rotation: f64,
}

impl Ellipse {
    pub fn new(center: Point, a: f64, b: f64, rotation: f64) -> Result<Self> {
        if !(center.is_finite() && a.is_finite() && b.is_finite() && rotation.is_finite()) {
            return Err(Error::InvalidBody("ellipse parameter is not finite".into()));
        }
        if !(a >= b && b > 0.0) {
            return Err(Error::InvalidBody(
                "ellipse requires semi_major >= semi_minor > 0".into(),
            ));
        }
        Ok(Self {
            center,
            a,
            b,
            rotation,
        })
    }

    pub fn circle(center: Point, radius: f64) -> Result<Self> {
        Self::new(center, radius, radius, 0.0)
    }

    pub fn area(&self) -> f64 {
        std::f64::consts::PI * self.a * self.b
    }

    pub fn diameter(&self) -> f64 {
        2.0 * self.a
    }

    fn rot(&self) -> Matrix2<f64> {
        let (s, c) = self.rotation.sin_cos();
        Matrix2::new(c, -s, s, c)
    }

    /// Coordinates of `p` in the frame where the ellipse is the unit disk.
    pub fn to_disk(&self, p: Point) -> Vector2<f64> {
        let r = self.rot().transpose() * Vector2::new(p.x - self.center.x, p.y - self.center.y);
        Vector2::new(r.x / self.a, r.y / self.b)
    }

    /// Inverse of [`Self::to_disk`].
    pub fn from_disk(&self, u: Vector2<f64>) -> Point {
        let r = self.rot() * Vector2::new(u.x * self.a, u.y * self.b);
        Point::new(self.center.x + r.x, self.center.y + r.y)
    }

    /// Direction image in the disk frame (linear part only).
    pub fn dir_to_disk(&self, v: Vector) -> Vector2<f64> {
        let r = self.rot().transpose() * Vector2::new(v.dx, v.dy);
        Vector2::new(r.x / self.a, r.y / self.b)
    }

    pub fn locate(&self, p: Point, tol: f64) -> Location {
        let u = self.to_disk(p);
        // Distance in plane units is approximately (|u| - 1) * local scale;
        // classify in disk units scaled back by the minor axis.
        let r = u.norm();
        let band = tol / self.b;
        if r < 1.0 - band {
            Location::Interior
        } else if r > 1.0 + band {
            Location::Exterior
        } else {
            Location::Boundary
        }
    }

    /// Distance along the ray `p + t u` (`u` unit, `p` interior) to the
    /// boundary.
    pub fn ray_distance(&self, p: Point, u: Vector) -> f64 {
        let w = self.to_disk(p);
        let d = self.dir_to_disk(u);
        // |w + t d|^2 = 1 with a = |d|^2, b = w.d, c = |w|^2 - 1 < 0.
        let a = d.dot(&d);
        let b = w.dot(&d);
        let c = w.dot(&w) - 1.0;
        let disc = (b * b - a * c).max(0.0);
        (-b + disc.sqrt()) / a
    }

    /// Boundary point at parameter `t`: `center + R (a cos t, b sin t)`.
    pub fn boundary_point(&self, t: f64) -> Point {
        self.from_disk(Vector2::new(t.cos(), t.sin()))
    }

    /// Outward unit normal at parameter `t`.
    pub fn outward_normal(&self, t: f64) -> Vector {
        // Gradient of the implicit form at the boundary point.
        let g = self.rot() * Vector2::new(t.cos() / self.a, t.sin() / self.b);
        Vector::new(g.x, g.y).normalize()
    }

    /// Tangent direction at parameter `t` (counterclockwise).
    pub fn tangent(&self, t: f64) -> Vector {
        let d = self.rot() * Vector2::new(-self.a * t.sin(), self.b * t.cos());
        Vector::new(d.x, d.y).normalize()
    }

    /// Radius of curvature at parameter `t`:
    /// `(a^2 sin^2 t + b^2 cos^2 t)^(3/2) / (a b)`.
    pub fn curvature_radius(&self, t: f64) -> f64 {
        let (s, c) = t.sin_cos();
        (self.a * self.a * s * s + self.b * self.b * c * c).powf(1.5) / (self.a * self.b)
    }

    /// Euclidean distance from an interior-ish `p` to the boundary, by
    /// Newton refinement of the closest boundary parameter.
    pub fn boundary_distance(&self, p: Point) -> f64 {
        let mut best_t = 0.0;
        let mut best = f64::INFINITY;
        let n = 32;
        for i in 0..n {
            let t = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
            let d = self.boundary_point(t).distance(p);
            if d < best {
                best = d;
                best_t = t;
            }
        }
        // Minimize f(t) = |B(t) - p|^2 / 2 by Newton on f'.
        let mut t = best_t;
        for _ in 0..60 {
            let h = 1e-6;
            let f = |t: f64| {
                let d = self.boundary_point(t) - p;
                0.5 * d.dot(d)
            };
            let fp = (f(t + h) - f(t - h)) / (2.0 * h);
            let fpp = (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
            if fpp.abs() < 1e-300 {
                break;
            }
            let step = fp / fpp;
            t -= step;
            if step.abs() < 1e-14 {
                break;
            }
        }
        self.boundary_point(t).distance(p).min(best)
    }

    /// Parameter of the boundary point nearest to `p`.
    pub fn nearest_boundary_param(&self, p: Point) -> f64 {
        let u = self.to_disk(p);
        // Good initial guess: angle in disk coordinates, then refine.
        let mut t = u.y.atan2(u.x);
        for _ in 0..60 {
            let h = 1e-6;
            let f = |t: f64| {
                let d = self.boundary_point(t) - p;
                0.5 * d.dot(d)
            };
            let fp = (f(t + h) - f(t - h)) / (2.0 * h);
            let fpp = (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
            if fpp.abs() < 1e-300 {
                break;
            }
            let step = fp / fpp;
            t -= step;
            if step.abs() < 1e-14 {
                break;
            }
        }
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curvature_radius_extremes() {
        let e = Ellipse::new(Point::new(0.0, 0.0), 2.0, 1.0, 0.0).unwrap();
        assert!((e.curvature_radius(0.0) - 0.5).abs() < 1e-14);
        assert!((e.curvature_radius(std::f64::consts::FRAC_PI_2) - 4.0).abs() < 1e-13);
    }

    #[test]
    fn ray_distance_circle() {
        let disk = Ellipse::circle(Point::new(0.0, 0.0), 1.0).unwrap();
        let d = disk.ray_distance(Point::new(0.5, 0.0), Vector::new(1.0, 0.0));
        assert!((d - 0.5).abs() < 1e-14);
        let d2 = disk.ray_distance(Point::new(0.5, 0.0), Vector::new(-1.0, 0.0));
        assert!((d2 - 1.5).abs() < 1e-14);
    }

    #[test]
    fn boundary_distance_rotated() {
        let e = Ellipse::new(Point::new(1.0, 2.0), 2.0, 1.0, 0.4).unwrap();
        // Center is at distance b from the boundary along the minor axis.
        let d = e.boundary_distance(Point::new(1.0, 2.0));
        assert!((d - 1.0).abs() < 1e-9);
    }
}
