//! Support-function bodies: strictly convex C^2 domains given by uniform
//! samples of a periodic support function, interpolated trigonometrically.
//!
//! The body is `center + { x : <x, n(theta)> <= h(theta) for all theta }`,
//! with `n(theta) = (cos theta, sin theta)`. The boundary parametrizes as
//!
//! ```text
//! B(theta) = center + h(theta) n(theta) + h'(theta) n'(theta)
//! ```
//!
//! and the radius of curvature is `rho = h + h''`, which must stay strictly
//! positive for the representation to be valid.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::geom::{Point, Vector};

use super::Location;

/// Minimum number of support samples accepted at construction.
pub const MIN_SAMPLES: usize = 512;

/// One trigonometric mode `a cos(k theta) + b sin(k theta)`.
#[derive(Clone, Copy, Debug)]
struct Mode {
    k: usize,
    a: f64,
    b: f64,
}

#[derive(Clone, Debug)]
pub struct SupportBody {
    center: Point,
    samples: Vec<f64>,
    mean: f64,
    modes: Vec<Mode>,
    polyline: OnceLock<Vec<Point>>,
}

impl SupportBody {
    /// Builds a body from `n >= 512` uniform samples of the support function
    /// about the origin of its own frame.
    pub fn from_samples(samples: Vec<f64>) -> Result<Self> {
        Self::from_samples_with_center(samples, Point::new(0.0, 0.0))
    }

    pub fn from_samples_with_center(samples: Vec<f64>, center: Point) -> Result<Self> {
        if samples.len() < MIN_SAMPLES {
            return Err(Error::InvalidBody(format!(
                "support body needs at least {MIN_SAMPLES} samples, got {}",
                samples.len()
            )));
        }
        if samples.iter().any(|h| !h.is_finite()) {
            return Err(Error::InvalidBody("support sample is not finite".into()));
        }
        if samples.iter().any(|&h| h <= 0.0) {
            return Err(Error::InvalidBody(
                "support samples must be strictly positive".into(),
            ));
        }
        let body = Self::interpolate(samples, center);
        body.validate()?;
        Ok(body)
    }

    /// Convenience constructor from a closed-form support function,
    /// sampled at `n` points.
    pub fn from_fn(n: usize, center: Point, h: impl Fn(f64) -> f64) -> Result<Self> {
        let samples = (0..n)
            .map(|j| h(2.0 * std::f64::consts::PI * j as f64 / n as f64))
            .collect();
        Self::from_samples_with_center(samples, center)
    }

    fn interpolate(samples: Vec<f64>, center: Point) -> Self {
        let n = samples.len();
        let half = n / 2;
        let mean = samples.iter().sum::<f64>() / n as f64;
        let max_abs = samples.iter().fold(0.0f64, |m, h| m.max(h.abs()));
        let cutoff = 1e-14 * max_abs;
        let mut modes = Vec::new();
        let step = 2.0 * std::f64::consts::PI / n as f64;
        for k in 1..=half {
            let mut a = 0.0;
            let mut b = 0.0;
            for (j, hj) in samples.iter().enumerate() {
                let (s, c) = (k as f64 * j as f64 * step).sin_cos();
                a += hj * c;
                b += hj * s;
            }
            let scale = if 2 * k == n { 1.0 } else { 2.0 } / n as f64;
            a *= scale;
            b *= if 2 * k == n { 0.0 } else { scale };
            if a.abs() > cutoff || b.abs() > cutoff {
                modes.push(Mode { k, a, b });
            }
        }
        Self {
            center,
            samples,
            mean,
            modes,
            polyline: OnceLock::new(),
        }
    }

    fn validate(&self) -> Result<()> {
        let eps = 10.0 * 1e-9 * self.diameter();
        let n_check = 4 * self.samples.len();
        for j in 0..n_check {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / n_check as f64;
            if self.h(theta) <= 0.0 {
                return Err(Error::InvalidBody(
                    "support function is not strictly positive".into(),
                ));
            }
            if self.curvature_radius(theta) <= eps {
                return Err(Error::InvalidBody(
                    "h + h'' must stay strictly positive (strict convexity)".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn center(&self) -> Point {
        self.center
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    /// Support value `h(theta)` of the recentered body.
    pub fn h(&self, theta: f64) -> f64 {
        let mut v = self.mean;
        for m in &self.modes {
            let (s, c) = (m.k as f64 * theta).sin_cos();
            v += m.a * c + m.b * s;
        }
        v
    }

    pub fn h_prime(&self, theta: f64) -> f64 {
        let mut v = 0.0;
        for m in &self.modes {
            let k = m.k as f64;
            let (s, c) = (k * theta).sin_cos();
            v += k * (m.b * c - m.a * s);
        }
        v
    }

    pub fn h_second(&self, theta: f64) -> f64 {
        let mut v = 0.0;
        for m in &self.modes {
            let k = m.k as f64;
            let (s, c) = (k * theta).sin_cos();
            v -= k * k * (m.a * c + m.b * s);
        }
        v
    }

    /// Radius of curvature `rho(theta) = h + h''`.
    pub fn curvature_radius(&self, theta: f64) -> f64 {
        let mut v = self.mean;
        for m in &self.modes {
            let k2 = (m.k * m.k) as f64;
            let (s, c) = (m.k as f64 * theta).sin_cos();
            v += (1.0 - k2) * (m.a * c + m.b * s);
        }
        v
    }

    pub fn boundary_point(&self, theta: f64) -> Point {
        let (s, c) = theta.sin_cos();
        let h = self.h(theta);
        let hp = self.h_prime(theta);
        Point::new(
            self.center.x + h * c - hp * s,
            self.center.y + h * s + hp * c,
        )
    }

    /// Outward unit normal at parameter `theta` is `n(theta)` itself.
    pub fn outward_normal(&self, theta: f64) -> Vector {
        Vector::from_angle(theta)
    }

    pub fn tangent(&self, theta: f64) -> Vector {
        Vector::from_angle(theta).perp()
    }

    pub fn diameter(&self) -> f64 {
        // h(theta) + h(theta + pi) is the width in direction theta.
        let n = self.samples.len();
        let half = n / 2;
        let mut w: f64 = 0.0;
        for j in 0..half {
            w = w.max(self.samples[j] + self.samples[j + half]);
        }
        w
    }

    /// Extremes of the curvature radius over a dense grid with local
    /// parabolic refinement.
    pub fn curvature_extremes(&self) -> (f64, f64) {
        let n = 8 * self.samples.len();
        let step = 2.0 * std::f64::consts::PI / n as f64;
        let mut min_v = f64::INFINITY;
        let mut max_v = f64::NEG_INFINITY;
        let mut min_j = 0;
        let mut max_j = 0;
        for j in 0..n {
            let v = self.curvature_radius(j as f64 * step);
            if v < min_v {
                min_v = v;
                min_j = j;
            }
            if v > max_v {
                max_v = v;
                max_j = j;
            }
        }
        let refine = |j0: usize, sign: f64| -> f64 {
            let mut t = j0 as f64 * step;
            let mut best = sign * self.curvature_radius(t);
            let mut half = step;
            for _ in 0..40 {
                half *= 0.5;
                for cand in [t - half, t + half] {
                    let v = sign * self.curvature_radius(cand);
                    if v < best {
                        best = v;
                        t = cand;
                    }
                }
            }
            sign * best
        };
        (refine(min_j, 1.0), refine(max_j, -1.0))
    }

    /// Cached dense boundary polyline (inscribed polygon).
    pub fn polyline(&self) -> &[Point] {
        self.polyline.get_or_init(|| {
            let m = 2048;
            (0..m)
                .map(|j| self.boundary_point(2.0 * std::f64::consts::PI * j as f64 / m as f64))
                .collect()
        })
    }

    /// Maximum of `<x - center, n(theta)> - h(theta)` over theta, i.e. the
    /// signed support violation; negative inside.
    pub fn support_violation(&self, x: Point) -> f64 {
        let d = x - self.center;
        let rho = d.norm();
        if rho == 0.0 {
            return -self.h(0.0).min(self.h(std::f64::consts::PI));
        }
        let phi = d.angle();
        // g(theta) = rho cos(theta - phi) - h(theta); refine the coarse max.
        let n = self.samples.len();
        let step = 2.0 * std::f64::consts::PI / n as f64;
        let g = |theta: f64| rho * (theta - phi).cos() - self.h(theta);
        let mut best_j = 0;
        let mut best = f64::NEG_INFINITY;
        for j in 0..n {
            let v = g(j as f64 * step);
            if v > best {
                best = v;
                best_j = j;
            }
        }
        let mut t = best_j as f64 * step;
        let mut half = step;
        for _ in 0..45 {
            half *= 0.5;
            for cand in [t - half, t + half] {
                let v = g(cand);
                if v > best {
                    best = v;
                    t = cand;
                }
            }
        }
        best
    }

    pub fn locate(&self, p: Point, tol: f64) -> Location {
        let v = self.support_violation(p);
        if v < -tol {
            Location::Interior
        } else if v > tol {
            Location::Exterior
        } else {
            Location::Boundary
        }
    }

    /// Distance along the ray `p + t u` (`u` unit, `p` strictly interior) to
    /// the boundary: polyline bracketing plus bisection on the exact series.
    pub fn ray_distance(&self, p: Point, u: Vector) -> f64 {
        let poly = self.polyline();
        let m = poly.len();
        let f = |theta: f64| u.cross(self.boundary_point(theta) - p);
        let step = 2.0 * std::f64::consts::PI / m as f64;
        let mut hit = f64::INFINITY;
        let mut prev = u.cross(poly[0] - p);
        for j in 1..=m {
            let theta_hi = (j % m) as f64 * step + if j == m { 2.0 * std::f64::consts::PI } else { 0.0 };
            let cur = u.cross(poly[j % m] - p);
            if prev == 0.0 || prev.signum() != cur.signum() {
                // Bracket [theta_lo, theta_hi]; keep only the forward chord end.
                let mut lo = (j - 1) as f64 * step;
                let mut hi = theta_hi;
                let mut flo = f(lo);
                for _ in 0..64 {
                    let mid = 0.5 * (lo + hi);
                    let fm = f(mid);
                    if (fm >= 0.0) == (flo >= 0.0) {
                        lo = mid;
                        flo = fm;
                    } else {
                        hi = mid;
                    }
                }
                let theta = 0.5 * (lo + hi);
                let b = self.boundary_point(theta);
                let t = u.dot(b - p);
                if t > 0.0 {
                    hit = hit.min(t);
                }
            }
            prev = cur;
        }
        debug_assert!(hit.is_finite(), "interior ray must hit the boundary");
        hit
    }

    /// Euclidean distance from `p` to the boundary.
    pub fn boundary_distance(&self, p: Point) -> f64 {
        let n = 256;
        let mut best_t = 0.0;
        let mut best = f64::INFINITY;
        for j in 0..n {
            let t = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
            let d = self.boundary_point(t).distance(p);
            if d < best {
                best = d;
                best_t = t;
            }
        }
        let mut t = best_t;
        let mut half = 2.0 * std::f64::consts::PI / n as f64;
        for _ in 0..50 {
            half *= 0.5;
            for cand in [t - half, t + half] {
                let d = self.boundary_point(cand).distance(p);
                if d < best {
                    best = d;
                    t = cand;
                }
            }
        }
        best
    }

    /// Parameter of the boundary point nearest to `p`.
    pub fn nearest_boundary_param(&self, p: Point) -> f64 {
        let n = 256;
        let mut best_t = 0.0;
        let mut best = f64::INFINITY;
        for j in 0..n {
            let t = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
            let d = self.boundary_point(t).distance(p);
            if d < best {
                best = d;
                best_t = t;
            }
        }
        let mut t = best_t;
        let mut half = 2.0 * std::f64::consts::PI / n as f64;
        for _ in 0..50 {
            half *= 0.5;
            for cand in [t - half, t + half] {
                let d = self.boundary_point(cand).distance(p);
                if d < best {
                    best = d;
                    t = cand;
                }
            }
        }
        t
    }

    /// Image under the affine map `x -> M x + t`, re-derived by resampling
    /// the transformed support function `|M^T n| h(angle(M^T n))`.
    pub fn affine_image(&self, m: &nalgebra::Matrix2<f64>, t: &nalgebra::Vector2<f64>) -> Result<Self> {
        let n = self.samples.len();
        let mt = m.transpose();
        let mut samples = Vec::with_capacity(n);
        for j in 0..n {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
            let w = mt * nalgebra::Vector2::new(theta.cos(), theta.sin());
            let norm = w.norm();
            samples.push(norm * self.h(w.y.atan2(w.x)));
        }
        let c = m * nalgebra::Vector2::new(self.center.x, self.center.y) + t;
        Self::from_samples_with_center(samples, Point::new(c.x, c.y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wavy() -> SupportBody {
        SupportBody::from_fn(512, Point::new(0.0, 0.0), |t| 1.0 + 0.1 * (3.0 * t).cos()).unwrap()
    }

    #[test]
    fn series_reproduces_samples_and_derivatives() {
        let b = wavy();
        let theta = 0.7313;
        assert!((b.h(theta) - (1.0 + 0.1 * (3.0 * theta).cos())).abs() < 1e-12);
        assert!((b.h_prime(theta) + 0.3 * (3.0 * theta).sin()).abs() < 1e-12);
        assert!((b.h_second(theta) + 0.9 * (3.0 * theta).cos()).abs() < 1e-12);
        assert!((b.curvature_radius(theta) - (1.0 - 0.8 * (3.0 * theta).cos())).abs() < 1e-12);
    }

    #[test]
    fn rejects_nonconvex_support() {
        // Large high-frequency ripple: h + h'' goes negative.
        let r = SupportBody::from_fn(512, Point::new(0.0, 0.0), |t| 1.0 + 0.3 * (4.0 * t).cos());
        assert!(r.is_err());
    }

    #[test]
    fn circle_support_chords() {
        let b = SupportBody::from_fn(512, Point::new(0.0, 0.0), |_| 1.0).unwrap();
        let d = b.ray_distance(Point::new(0.0, 0.0), Vector::new(1.0, 0.0));
        assert!((d - 1.0).abs() < 1e-9);
        let d2 = b.ray_distance(Point::new(0.5, 0.0), Vector::new(-1.0, 0.0));
        assert!((d2 - 1.5).abs() < 1e-9);
    }

    #[test]
    fn locate_wavy() {
        let b = wavy();
        assert_eq!(b.locate(Point::new(0.0, 0.0), 1e-9), Location::Interior);
        assert_eq!(b.locate(Point::new(5.0, 0.0), 1e-9), Location::Exterior);
        let on = b.boundary_point(1.234);
        assert_eq!(b.locate(on, 1e-9), Location::Boundary);
    }

    #[test]
    fn curvature_extremes_wavy() {
        let b = wavy();
        let (lo, hi) = b.curvature_extremes();
        assert!((lo - 0.2).abs() < 1e-10);
        assert!((hi - 1.8).abs() < 1e-10);
    }
}
