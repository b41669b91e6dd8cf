//! Closed forms on triangular domains.
//!
//! In the standard triangle `D0` with vertices (0,0), (1,0), (0,1) the
//! Hilbert area density is `pi / (12 x y (1 - x - y))`, and the area of the
//! canonical ideal triangle `T(alpha)` has the closed form
//! `(pi / 12) F((1 - 2 alpha) / alpha)` with `F` expressed through the
//! dilogarithm. The minimum over `alpha in (0, 1/2]` is attained at
//! `alpha = 1/2` with value `pi^3 / 24`.

use std::f64::consts::PI;

use nalgebra::Matrix3;

use crate::error::{Error, Result};
use crate::geom::{orient2d, Homography, Point};

/// Barycentric placement of an ideal triangle in a triangular domain
/// `m p q`: its vertices are
/// `a = (1-lambda) m + lambda p`, `b = (1-mu) p + mu q`,
/// `c = (1-nu) q + nu m`.
#[derive(Clone, Copy, Debug)]
pub struct BarycentricSpec {
    pub lambda: f64,
    pub mu: f64,
    pub nu: f64,
}

impl BarycentricSpec {
    pub fn new(lambda: f64, mu: f64, nu: f64) -> Result<Self> {
        for v in [lambda, mu, nu] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::PreconditionViolated(
                    "barycentric parameters must lie strictly in (0, 1)".into(),
                ));
            }
        }
        Ok(Self { lambda, mu, nu })
    }
}

/// The canonical parameter `alpha in (0, 1/2]`.
#[derive(Clone, Copy, Debug)]
pub struct CanonicalAlpha {
    pub alpha: f64,
}

impl CanonicalAlpha {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha <= 0.5 {
            Ok(Self { alpha })
        } else {
            Err(Error::PreconditionViolated(
                "alpha must lie in (0, 1/2]".into(),
            ))
        }
    }

    /// The substitution parameter `t = (1 - 2 alpha) / alpha` in `[0, inf)`.
    pub fn t(&self) -> f64 {
        (1.0 - 2.0 * self.alpha) / self.alpha
    }
}

fn alpha_formula(s: &BarycentricSpec) -> f64 {
    let num = s.lambda * s.mu * s.nu;
    let den = (1.0 - s.lambda) * (1.0 - s.mu) * (1.0 - s.nu) + num;
    num / den
}

/// The canonical `alpha` of a barycentric placement; placements whose raw
/// value exceeds 1/2 are folded through the complement
/// `(lambda, mu, nu) -> (1 - lambda, 1 - mu, 1 - nu)`, which yields
/// `1 - alpha`.
pub fn canonical_alpha(spec: &BarycentricSpec) -> CanonicalAlpha {
    let raw = alpha_formula(spec);
    let alpha = if raw > 0.5 {
        alpha_formula(&BarycentricSpec {
            lambda: 1.0 - spec.lambda,
            mu: 1.0 - spec.mu,
            nu: 1.0 - spec.nu,
        })
    } else {
        raw
    };
    CanonicalAlpha { alpha }
}

/// Vertices of the canonical ideal triangle `T(alpha)` in `D0`:
/// `a = (alpha, 1 - alpha)`, `b = (0, 1 - alpha)`, `c = (alpha, 0)`.
pub fn canonical_triangle_vertices(alpha: &CanonicalAlpha) -> [Point; 3] {
    let a = alpha.alpha;
    [
        Point::new(a, 1.0 - a),
        Point::new(0.0, 1.0 - a),
        Point::new(a, 0.0),
    ]
}

/// The projective normalization of (domain `m p q`, ideal triangle from
/// `spec`) onto (`D0`, `T(alpha)`).
///
/// Built from the lift sending `m, p, q` to `u e1, v e2, w e3` with
/// `u = (1-lambda)(1-mu) / (lambda mu) w`,
/// `v = lambda nu / ((1-lambda)(1-nu)) w`, followed by the linear projection
/// dropping the third axis; `w` is fixed by `max(|u|, |v|, |w|) = 1`. When
/// the raw alpha exceeds 1/2 the construction runs on the relabeling
/// `(m, p, q; lambda, mu, nu) -> (q, p, m; 1-mu, 1-lambda, 1-nu)`, which
/// realizes the complement fold.
pub fn canonical_map(
    m: Point,
    p: Point,
    q: Point,
    spec: &BarycentricSpec,
) -> Result<(Homography, CanonicalAlpha)> {
    if orient2d(m, p, q) == 0.0 {
        return Err(Error::DegenerateTriangle);
    }
    let raw = alpha_formula(spec);
    let (m, p, q, lambda, mu, nu) = if raw > 0.5 {
        (q, p, m, 1.0 - spec.mu, 1.0 - spec.lambda, 1.0 - spec.nu)
    } else {
        (m, p, q, spec.lambda, spec.mu, spec.nu)
    };
    let alpha = CanonicalAlpha {
        alpha: if raw > 0.5 { 1.0 - raw } else { raw },
    };

    let mut u = (1.0 - lambda) * (1.0 - mu) / (lambda * mu);
    let mut v = lambda * nu / ((1.0 - lambda) * (1.0 - nu));
    let mut w = 1.0;
    let scale = u.abs().max(v.abs()).max(w.abs());
    u /= scale;
    v /= scale;
    w /= scale;

    // Barycentric coordinate functionals of (m, p, q) as affine rows
    // (cx, cy, c0).
    let det = (p - m).cross(q - m);
    let row_p = [
        (q.y - m.y) / det,
        -(q.x - m.x) / det,
        (m.y * (q.x - m.x) - m.x * (q.y - m.y)) / det,
    ];
    let row_q = [
        -(p.y - m.y) / det,
        (p.x - m.x) / det,
        (m.x * (p.y - m.y) - m.y * (p.x - m.x)) / det,
    ];
    let row_m = [
        -row_p[0] - row_q[0],
        -row_p[1] - row_q[1],
        1.0 - row_p[2] - row_q[2],
    ];

    let mut h = Matrix3::zeros();
    for j in 0..3 {
        h[(0, j)] = row_m[j] / u;
        h[(1, j)] = row_p[j] / v;
        h[(2, j)] = row_m[j] / u + row_p[j] / v + row_q[j] / w;
    }
    Ok((Homography::new(h)?, alpha))
}

/// Hilbert area density of the standard triangle at an interior point:
/// `pi / (12 x y (1 - x - y))`.
pub fn triangle_density(p: Point) -> Result<f64> {
    let z = 1.0 - p.x - p.y;
    if p.x <= 0.0 || p.y <= 0.0 || z <= 0.0 {
        return Err(Error::OutsideDomain);
    }
    Ok(PI / (12.0 * p.x * p.y * z))
}

/// Series evaluation on |x| <= 1/2.
fn li2_series(x: f64) -> f64 {
    let mut term = x;
    let mut sum = x;
    let mut k = 1.0;
    loop {
        k += 1.0;
        term *= x;
        let add = term / (k * k);
        sum += add;
        if add.abs() < 1e-17 * sum.abs().max(1e-3) || k > 200.0 {
            return sum;
        }
    }
}

/// Real dilogarithm on (-inf, 1], with reflection and inversion branches.
fn li2_real(x: f64) -> f64 {
    debug_assert!(x <= 1.0);
    if x == 1.0 {
        return PI * PI / 6.0;
    }
    if x == -1.0 {
        return -PI * PI / 12.0;
    }
    if x < -1.0 {
        // Inversion: Li2(x) + Li2(1/x) = -pi^2/6 - ln^2(-x)/2 for x < 0.
        let y = -x;
        return -PI * PI / 6.0 - 0.5 * y.ln().powi(2) - li2_real(-1.0 / y);
    }
    if x > 0.5 {
        // Euler reflection: Li2(x) = pi^2/6 - ln x ln(1-x) - Li2(1-x).
        return PI * PI / 6.0 - x.ln() * (1.0 - x).ln() - li2_series(1.0 - x);
    }
    if x < -0.5 {
        // Landen: Li2(x) = -Li2(x/(x-1)) - ln^2(1-x)/2.
        return -li2_series(x / (x - 1.0)) - 0.5 * (1.0 - x).ln().powi(2);
    }
    li2_series(x)
}

/// The dilogarithm `Li2(x) = sum x^k / k^2` on `[-1, 1]`.
pub fn dilog(x: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&x) || x.is_nan() {
        return Err(Error::OutOfRange);
    }
    Ok(li2_real(x))
}

/// The area kernel `F(t)` for `t >= 0`, via its dilogarithm form.
///
/// `F(t) = 2 Li2(1) - 2 Li2(-1/(1+t)) - Li2(-t) - Li2(1/(1+t))
///         + Li2(1/(1+t)^2) + ln((1+t)/t) ln(1+t)`,
/// with `F(0) = pi^2 / 2`.
pub fn f_closed(t: f64) -> Result<f64> {
    if t.is_nan() || t < 0.0 {
        return Err(Error::NegativeT);
    }
    if t == 0.0 {
        return Ok(PI * PI / 2.0);
    }
    let s = 1.0 / (1.0 + t);
    Ok(PI * PI / 3.0 - 2.0 * li2_real(-s) - li2_real(-t) - li2_real(s) + li2_real(s * s)
        + ((1.0 + t) / t).ln() * (1.0 + t).ln())
}

/// `F'(t) = 4 / (1+t) ln( (1+t)^2 / ((1+t)^2 - 1) )`, strictly positive.
pub fn f_prime(t: f64) -> Result<f64> {
    if t.is_nan() || t <= 0.0 {
        return Err(Error::NonpositiveT);
    }
    let u = (1.0 + t) * (1.0 + t);
    Ok(4.0 / (1.0 + t) * (u / (u - 1.0)).ln())
}

/// Closed-form Hilbert area of `T(alpha)` in the standard triangle:
/// `(pi / 12) F((1 - 2 alpha) / alpha)`.
pub fn ideal_area_closed(alpha: &CanonicalAlpha) -> f64 {
    (PI / 12.0) * f_closed(alpha.t()).expect("t >= 0 by construction")
}

/// The two-sided bound on the square's unit-ball area at `p = (x, y)`:
/// `2 (1-x^2)(1-y^2) <= vol(B(p)) <= 4 (1-x^2)(1-y^2)`.
pub fn square_ball_bounds(p: Point) -> Result<(f64, f64)> {
    if p.x.abs() >= 1.0 || p.y.abs() >= 1.0 {
        return Err(Error::OutsideSquare);
    }
    let base = (1.0 - p.x * p.x) * (1.0 - p.y * p.y);
    Ok((2.0 * base, 4.0 * base))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_examples() {
        let s = BarycentricSpec::new(0.5, 0.5, 0.5).unwrap();
        assert!((canonical_alpha(&s).alpha - 0.5).abs() < 1e-15);

        let s = BarycentricSpec::new(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0).unwrap();
        assert!((canonical_alpha(&s).alpha - 1.0 / 9.0).abs() < 1e-15);

        // Raw value 8/9 folds back to 1/9.
        let s = BarycentricSpec::new(2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0).unwrap();
        assert!((canonical_alpha(&s).alpha - 1.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn alpha_fold_is_involutive() {
        let s = BarycentricSpec::new(0.81, 0.27, 0.6).unwrap();
        let c = BarycentricSpec::new(1.0 - 0.81, 1.0 - 0.27, 1.0 - 0.6).unwrap();
        assert!((canonical_alpha(&s).alpha - canonical_alpha(&c).alpha).abs() < 1e-15);
    }

    #[test]
    fn dilog_special_values() {
        assert!((dilog(1.0).unwrap() - PI * PI / 6.0).abs() < 1e-15);
        assert!((dilog(-1.0).unwrap() + PI * PI / 12.0).abs() < 1e-15);
        assert_eq!(dilog(0.0).unwrap(), 0.0);
        let half = dilog(0.5).unwrap();
        let expect = PI * PI / 12.0 - 0.5 * 2.0f64.ln().powi(2);
        assert!((half - expect).abs() < 1e-15);
        assert!(dilog(1.5).is_err());
        assert!(dilog(-1.0000001).is_err());
    }

    #[test]
    fn dilog_square_identity() {
        // Li2(x) + Li2(-x) = Li2(x^2) / 2.
        for i in 0..=20 {
            let x = i as f64 / 20.0;
            let lhs = dilog(x).unwrap() + dilog(-x).unwrap();
            let rhs = 0.5 * dilog(x * x).unwrap();
            assert!((lhs - rhs).abs() < 1e-13, "x = {x}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn f_values() {
        assert!((f_closed(0.0).unwrap() - PI * PI / 2.0).abs() < 1e-15);
        // Strictly increasing on a grid.
        let mut prev = f_closed(0.0).unwrap();
        for i in 1..=100 {
            let t = 0.1 * i as f64;
            let v = f_closed(t).unwrap();
            assert!(v > prev, "F not increasing at t = {t}");
            prev = v;
        }
        assert!(f_closed(-0.1).is_err());
    }

    #[test]
    fn f_continuous_at_zero() {
        // The closed form approaches F(0) = pi^2/2 as t -> 0+.
        let v = f_closed(1e-9).unwrap();
        assert!((v - PI * PI / 2.0).abs() < 1e-7);
    }

    #[test]
    fn f_prime_values() {
        let v = f_prime(1.0).unwrap();
        assert!((v - 2.0 * (4.0f64 / 3.0).ln()).abs() < 1e-15);
        for t in [0.01, 0.1, 1.0, 5.0, 10.0, 100.0] {
            assert!(f_prime(t).unwrap() > 0.0);
        }
        // Monotone decay toward zero for large t.
        assert!(f_prime(10.0).unwrap() > f_prime(100.0).unwrap());
        assert!(f_prime(100.0).unwrap() < 1e-3);
        assert!(f_prime(0.0).is_err());
    }

    #[test]
    fn f_prime_matches_finite_differences() {
        for t in [0.01, 0.1, 1.0, 5.0, 10.0] {
            let h = 1e-5 * t.max(0.1);
            let fd = (f_closed(t + h).unwrap() - f_closed(t - h).unwrap()) / (2.0 * h);
            let fp = f_prime(t).unwrap();
            assert!((fd - fp).abs() < 1e-6, "t = {t}: {fd} vs {fp}");
        }
    }

    #[test]
    fn area_minimum_at_half() {
        let half = CanonicalAlpha::new(0.5).unwrap();
        let min = ideal_area_closed(&half);
        assert!((min - PI.powi(3) / 24.0).abs() < 1e-14);
        let mut prev = f64::INFINITY;
        for i in 1..=50 {
            let alpha = 0.01 * i as f64;
            let v = ideal_area_closed(&CanonicalAlpha::new(alpha).unwrap());
            assert!(v < prev, "area not decreasing at alpha = {alpha}");
            assert!(v >= min - 1e-12);
            prev = v;
        }
    }

    #[test]
    fn density_examples() {
        let d = triangle_density(Point::new(1.0 / 3.0, 1.0 / 3.0)).unwrap();
        assert!((d - 9.0 * PI / 4.0).abs() < 1e-12);
        assert!(triangle_density(Point::new(0.0, 0.5)).is_err());
        // Pole along x -> 0.
        let mut prev = 0.0;
        for i in 1..=6 {
            let x = 10f64.powi(-i);
            let v = triangle_density(Point::new(x, 0.4)).unwrap();
            assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn canonical_map_midpoints_on_standard_triangle() {
        let m = Point::new(0.0, 0.0);
        let p = Point::new(1.0, 0.0);
        let q = Point::new(0.0, 1.0);
        let spec = BarycentricSpec::new(0.5, 0.5, 0.5).unwrap();
        let (h, alpha) = canonical_map(m, p, q, &spec).unwrap();
        assert!((alpha.alpha - 0.5).abs() < 1e-15);
        // Domain vertices land on the vertices of D0 (possibly permuted).
        let d0 = [m, p, q];
        for v in [m, p, q] {
            let img = h.apply(v).unwrap();
            assert!(
                d0.iter().any(|w| img.distance(*w) < 1e-12),
                "vertex image {img:?} not a D0 vertex"
            );
        }
        // The ideal triangle of midpoints maps onto T(1/2).
        let a = m.lerp(p, 0.5);
        let b = p.lerp(q, 0.5);
        let c = q.lerp(m, 0.5);
        let t_half = canonical_triangle_vertices(&alpha);
        for v in [a, b, c] {
            let img = h.apply(v).unwrap();
            assert!(
                t_half.iter().any(|w| img.distance(*w) < 1e-12),
                "midpoint image {img:?} not a T(1/2) vertex"
            );
        }
    }

    #[test]
    fn canonical_map_sends_configuration_to_t_alpha() {
        let m = Point::new(-0.3, 0.2);
        let p = Point::new(2.1, 0.4);
        let q = Point::new(0.4, 1.9);
        for (l, mu, nu) in [(0.31, 0.62, 0.47), (0.8, 0.74, 0.66), (0.12, 0.9, 0.35)] {
            let spec = BarycentricSpec::new(l, mu, nu).unwrap();
            let (h, alpha) = canonical_map(m, p, q, &spec).unwrap();
            let a = m.lerp(p, l);
            let b = p.lerp(q, mu);
            let c = q.lerp(m, nu);
            let target = canonical_triangle_vertices(&alpha);
            for v in [a, b, c] {
                let img = h.apply(v).unwrap();
                assert!(
                    target.iter().any(|w| img.distance(*w) < 1e-10),
                    "lambda={l}: image {img:?} misses T(alpha) {target:?}"
                );
            }
        }
    }

    #[test]
    fn canonical_alpha_affine_invariance() {
        // Applying the construction to an affine image of the domain returns
        // the same alpha.
        let spec = BarycentricSpec::new(0.37, 0.58, 0.81).unwrap();
        let m = Point::new(0.0, 0.0);
        let p = Point::new(1.0, 0.0);
        let q = Point::new(0.0, 1.0);
        let (_, a1) = canonical_map(m, p, q, &spec).unwrap();
        let f = |pt: Point| Point::new(2.0 * pt.x - 0.7 * pt.y + 3.0, 0.4 * pt.x + 1.5 * pt.y - 1.0);
        let (_, a2) = canonical_map(f(m), f(p), f(q), &spec).unwrap();
        assert!((a1.alpha - a2.alpha).abs() < 1e-14);
    }

    #[test]
    fn square_bounds_examples() {
        let (lo, hi) = square_ball_bounds(Point::new(0.0, 0.0)).unwrap();
        assert_eq!((lo, hi), (2.0, 4.0));
        assert!(square_ball_bounds(Point::new(1.0, 0.0)).is_err());
    }
}
