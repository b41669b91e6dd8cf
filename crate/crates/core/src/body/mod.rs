//! Convex-body representations and the geometric primitives shared by the
//! metric, measure and extremal modules.

mod ellipse;
mod polygon;
mod support;

pub use ellipse::Ellipse;
pub use polygon::Polygon;
pub use support::{SupportBody, MIN_SAMPLES};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{AffineMap, Homography, Line, Point, Vector};

/// Classification of a point against a body.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Location {
    Interior,
    Boundary,
    Exterior,
}

/// The ordered boundary pair cut out by a line through an interior point:
/// `p_minus` on the backward ray, `p_plus` on the forward ray.
#[derive(Clone, Copy, Debug)]
pub struct Chord {
    pub p_minus: Point,
    pub p_plus: Point,
}

/// Inner and outer rolling radii of a C^2 strictly convex body: a disk of
/// radius `2r` rolls inside the closure and the boundary rolls inside a disk
/// of radius `R`. Defined here from the curvature radius extremes as
/// `r = rho_min / 2`, `R = rho_max`.
#[derive(Clone, Copy, Debug)]
pub struct RollingRadii {
    pub r: f64,
    pub big_r: f64,
}

/// The support lines at a boundary point: a single line at smooth points and
/// edge interiors, the closed cone of lines at a polygon corner (represented
/// by its two extreme lines, in counterclockwise normal order).
#[derive(Clone, Debug)]
pub enum SupportLines {
    Single(Line),
    Cone { first: Line, second: Line },
}

impl SupportLines {
    pub fn is_corner(&self) -> bool {
        matches!(self, SupportLines::Cone { .. })
    }

    /// The canonical representative: the single line, or the line whose
    /// normal bisects the corner's normal cone.
    pub fn canonical_line(&self, at: Point) -> Line {
        match self {
            SupportLines::Single(l) => *l,
            SupportLines::Cone { first, second } => {
                let n1 = first.dir.perp().normalize();
                let n2 = second.dir.perp().normalize();
                let bisector_normal = (n1 + n2).normalize();
                Line::new(at, bisector_normal.perp())
            }
        }
    }
}

/// A bounded open convex planar domain.
#[derive(Clone, Debug)]
pub enum ConvexBody {
    Polygon(Polygon),
    Ellipse(Ellipse),
    Support(SupportBody),
}

impl ConvexBody {
    pub fn polygon(vertices: Vec<Point>) -> Result<Self> {
        Ok(ConvexBody::Polygon(Polygon::new(vertices)?))
    }

    pub fn ellipse(center: Point, a: f64, b: f64, rotation: f64) -> Result<Self> {
        Ok(ConvexBody::Ellipse(Ellipse::new(center, a, b, rotation)?))
    }

    pub fn unit_disk() -> Self {
        ConvexBody::Ellipse(Ellipse::circle(Point::new(0.0, 0.0), 1.0).unwrap())
    }

    /// The open square `(-1, 1)^2`.
    pub fn square() -> Self {
        ConvexBody::polygon(vec![
            Point::new(-1.0, -1.0),
            Point::new(1.0, -1.0),
            Point::new(1.0, 1.0),
            Point::new(-1.0, 1.0),
        ])
        .unwrap()
    }

    /// The standard triangle domain with vertices (0,0), (1,0), (0,1).
    pub fn standard_triangle() -> Self {
        ConvexBody::polygon(vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(0.0, 1.0),
        ])
        .unwrap()
    }

    pub fn support_from_samples(samples: Vec<f64>) -> Result<Self> {
        Ok(ConvexBody::Support(SupportBody::from_samples(samples)?))
    }

    pub fn diameter(&self) -> f64 {
        match self {
            ConvexBody::Polygon(p) => p.diameter(),
            ConvexBody::Ellipse(e) => e.diameter(),
            ConvexBody::Support(s) => s.diameter(),
        }
    }

    /// Geometric tolerance used for boundary classification and root finding:
    /// `1e-9 * diameter`.
    pub fn eps_geom(&self) -> f64 {
        1e-9 * self.diameter()
    }

    /// A point guaranteed strictly interior.
    pub fn interior_point(&self) -> Point {
        match self {
            ConvexBody::Polygon(p) => p.centroid(),
            ConvexBody::Ellipse(e) => e.center,
            ConvexBody::Support(s) => s.center(),
        }
    }

    /// Point classification: exact for polygons, within `eps_geom` otherwise.
    pub fn contains(&self, p: Point) -> Location {
        match self {
            ConvexBody::Polygon(poly) => poly.locate(p),
            ConvexBody::Ellipse(e) => e.locate(p, self.eps_geom()),
            ConvexBody::Support(s) => s.locate(p, self.eps_geom()),
        }
    }

    /// Euclidean distance from `p` to the boundary.
    pub fn boundary_distance(&self, p: Point) -> f64 {
        match self {
            ConvexBody::Polygon(poly) => poly.boundary_distance(p),
            ConvexBody::Ellipse(e) => e.boundary_distance(p),
            ConvexBody::Support(s) => s.boundary_distance(p),
        }
    }

    /// Distance from interior `p` to the boundary along the unit direction
    /// `u`. Callers must validate interiority.
    pub(crate) fn ray_distance(&self, p: Point, u: Vector) -> f64 {
        match self {
            ConvexBody::Polygon(poly) => poly.ray_distance(p, u),
            ConvexBody::Ellipse(e) => e.ray_distance(p, u),
            ConvexBody::Support(s) => s.ray_distance(p, u),
        }
    }

    /// Boundary endpoints of the line through `p` directed by `v`.
    pub fn chord_endpoints(&self, p: Point, v: Vector) -> Result<Chord> {
        if v.is_zero() || !v.is_finite() {
            return Err(Error::ZeroDirection);
        }
        if self.contains(p) != Location::Interior {
            return Err(Error::PointNotInterior);
        }
        let u = v.normalize();
        let t_plus = self.ray_distance(p, u);
        let t_minus = self.ray_distance(p, -u);
        Ok(Chord {
            p_minus: p - u * t_minus,
            p_plus: p + u * t_plus,
        })
    }

    /// Support lines at a boundary point `b` (within `eps_geom`).
    pub fn support_lines_at(&self, b: Point) -> Result<SupportLines> {
        let eps = self.eps_geom();
        match self {
            ConvexBody::Polygon(poly) => {
                if let Some(i) = poly.vertex_near(b, eps) {
                    let n = poly.len();
                    let prev = poly.vertices()[(i + n - 1) % n];
                    let v = poly.vertices()[i];
                    let next = poly.vertices()[(i + 1) % n];
                    Ok(SupportLines::Cone {
                        first: Line::through(prev, v),
                        second: Line::through(v, next),
                    })
                } else if let Some(i) = poly.edge_near(b, eps) {
                    let n = poly.len();
                    Ok(SupportLines::Single(Line::through(
                        poly.vertices()[i],
                        poly.vertices()[(i + 1) % n],
                    )))
                } else {
                    Err(Error::NotOnBoundary)
                }
            }
            ConvexBody::Ellipse(e) => {
                if e.boundary_distance(b) > eps {
                    return Err(Error::NotOnBoundary);
                }
                let t = e.nearest_boundary_param(b);
                Ok(SupportLines::Single(Line::new(
                    e.boundary_point(t),
                    e.tangent(t),
                )))
            }
            ConvexBody::Support(s) => {
                if s.boundary_distance(b) > eps {
                    return Err(Error::NotOnBoundary);
                }
                let t = s.nearest_boundary_param(b);
                Ok(SupportLines::Single(Line::new(
                    s.boundary_point(t),
                    s.tangent(t),
                )))
            }
        }
    }

    /// Radius of curvature at boundary parameter `t` (C^2 bodies only).
    pub fn curvature_radius(&self, t: f64) -> Result<f64> {
        match self {
            ConvexBody::Polygon(_) => Err(Error::UnsupportedRepresentation),
            ConvexBody::Ellipse(e) => Ok(e.curvature_radius(t)),
            ConvexBody::Support(s) => Ok(s.curvature_radius(t)),
        }
    }

    /// Rolling radii `r = rho_min / 2`, `R = rho_max` (C^2 bodies only).
    pub fn rolling_radii(&self) -> Result<RollingRadii> {
        match self {
            ConvexBody::Polygon(_) => Err(Error::UnsupportedRepresentation),
            ConvexBody::Ellipse(e) => Ok(RollingRadii {
                r: 0.5 * e.b * e.b / e.a,
                big_r: e.a * e.a / e.b,
            }),
            ConvexBody::Support(s) => {
                let (lo, hi) = s.curvature_extremes();
                Ok(RollingRadii {
                    r: 0.5 * lo,
                    big_r: hi,
                })
            }
        }
    }

    /// Boundary point at parameter `t`; the parameter ranges over `[0, n)`
    /// for an `n`-gon and over `[0, 2 pi)` otherwise.
    pub fn boundary_point(&self, t: f64) -> Point {
        match self {
            ConvexBody::Polygon(p) => p.boundary_point(t),
            ConvexBody::Ellipse(e) => e.boundary_point(t),
            ConvexBody::Support(s) => s.boundary_point(t),
        }
    }

    /// Upper bound (exclusive) of the boundary parameter range.
    pub fn boundary_param_span(&self) -> f64 {
        match self {
            ConvexBody::Polygon(p) => p.len() as f64,
            _ => 2.0 * std::f64::consts::PI,
        }
    }

    /// Image under an invertible affine map; every representation stays in
    /// representation (the support body is re-derived by resampling).
    pub fn apply_affine(&self, map: &AffineMap) -> Result<ConvexBody> {
        match self {
            ConvexBody::Polygon(p) => {
                let verts = p.vertices().iter().map(|v| map.apply(*v)).collect();
                ConvexBody::polygon(verts)
            }
            ConvexBody::Ellipse(e) => {
                let c = map.apply(e.center);
                // Shape matrix of the image: columns are the images of the
                // semi-axis vectors; principal axes from S S^T.
                let (s, co) = e.rotation.sin_cos();
                let rot = nalgebra::Matrix2::new(co, -s, s, co);
                let shape = map.m * rot * nalgebra::Matrix2::new(e.a, 0.0, 0.0, e.b);
                let sym = shape * shape.transpose();
                let eig = nalgebra::SymmetricEigen::new(sym);
                let (l0, l1) = (eig.eigenvalues[0], eig.eigenvalues[1]);
                let (major, minor, axis) = if l0 >= l1 {
                    (l0.sqrt(), l1.sqrt(), eig.eigenvectors.column(0).into_owned())
                } else {
                    (l1.sqrt(), l0.sqrt(), eig.eigenvectors.column(1).into_owned())
                };
                ConvexBody::ellipse(c, major, minor, axis.y.atan2(axis.x))
            }
            ConvexBody::Support(sb) => Ok(ConvexBody::Support(sb.affine_image(&map.m, &map.t)?)),
        }
    }

    /// Image of a polygon body under a homography. Fails with
    /// `ImageUnbounded` when the closure meets the line at infinity of the
    /// target chart.
    pub fn apply_homography(&self, h: &Homography) -> Result<ConvexBody> {
        let poly = match self {
            ConvexBody::Polygon(p) => p,
            _ => return Err(Error::UnsupportedRepresentation),
        };
        let weights: Vec<f64> = poly.vertices().iter().map(|v| h.weight(*v)).collect();
        let w_max = weights.iter().fold(0.0f64, |m, w| m.max(w.abs()));
        let same_sign = weights.iter().all(|w| *w > 0.0) || weights.iter().all(|w| *w < 0.0);
        if !same_sign || weights.iter().any(|w| w.abs() < 1e-9 * w_max) {
            return Err(Error::ImageUnbounded);
        }
        let verts: Result<Vec<Point>> = poly
            .vertices()
            .iter()
            .map(|v| h.apply(*v).ok_or(Error::ImageUnbounded))
            .collect();
        ConvexBody::polygon(verts?)
    }

    pub fn as_polygon(&self) -> Option<&Polygon> {
        match self {
            ConvexBody::Polygon(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_ellipse(&self) -> Option<&Ellipse> {
        match self {
            ConvexBody::Ellipse(e) => Some(e),
            _ => None,
        }
    }

    pub fn as_support(&self) -> Option<&SupportBody> {
        match self {
            ConvexBody::Support(s) => Some(s),
            _ => None,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            ConvexBody::Polygon(_) => "polygon",
            ConvexBody::Ellipse(_) => "ellipse",
            ConvexBody::Support(_) => "support",
        }
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let spec: BodyJson = serde_json::from_str(text)
            .map_err(|e| Error::InvalidBody(format!("body JSON: {e}")))?;
        spec.into_body()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&BodyJson::from_body(self)).expect("body serialization")
    }
}

/// On-disk body description.
#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BodyJson {
    Polygon {
        vertices: Vec<[f64; 2]>,
    },
    Ellipse {
        center: [f64; 2],
        a: f64,
        b: f64,
        rotation: f64,
    },
    Support {
        samples: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        center: Option<[f64; 2]>,
    },
}

impl BodyJson {
    pub fn into_body(self) -> Result<ConvexBody> {
        match self {
            BodyJson::Polygon { vertices } => {
                ConvexBody::polygon(vertices.into_iter().map(|[x, y]| Point::new(x, y)).collect())
            }
            BodyJson::Ellipse {
                center,
                a,
                b,
                rotation,
            } => ConvexBody::ellipse(Point::new(center[0], center[1]), a, b, rotation),
            BodyJson::Support { samples, center } => {
                let c = center.map_or(Point::new(0.0, 0.0), |[x, y]| Point::new(x, y));
                Ok(ConvexBody::Support(SupportBody::from_samples_with_center(
                    samples, c,
                )?))
            }
        }
    }

    pub fn from_body(body: &ConvexBody) -> Self {
        match body {
            ConvexBody::Polygon(p) => BodyJson::Polygon {
                vertices: p.vertices().iter().map(|v| [v.x, v.y]).collect(),
            },
            ConvexBody::Ellipse(e) => BodyJson::Ellipse {
                center: [e.center.x, e.center.y],
                a: e.a,
                b: e.b,
                rotation: e.rotation,
            },
            ConvexBody::Support(s) => {
                let c = s.center();
                BodyJson::Support {
                    samples: s.samples().to_vec(),
                    center: (c.x != 0.0 || c.y != 0.0).then_some([c.x, c.y]),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contains_examples() {
        let sq = ConvexBody::square();
        assert_eq!(sq.contains(Point::new(0.0, 0.0)), Location::Interior);
        assert_eq!(sq.contains(Point::new(1.0, 1.0)), Location::Boundary);
        let disk = ConvexBody::unit_disk();
        assert_eq!(disk.contains(Point::new(2.0, 0.0)), Location::Exterior);
    }

    #[test]
    fn chord_endpoints_examples() {
        let disk = ConvexBody::unit_disk();
        let c = disk
            .chord_endpoints(Point::new(0.0, 0.0), Vector::new(1.0, 0.0))
            .unwrap();
        assert!(c.p_minus.distance(Point::new(-1.0, 0.0)) < 1e-12);
        assert!(c.p_plus.distance(Point::new(1.0, 0.0)) < 1e-12);

        let sq = ConvexBody::square();
        let c = sq
            .chord_endpoints(Point::new(0.0, 0.0), Vector::new(1.0, 1.0))
            .unwrap();
        assert!(c.p_minus.distance(Point::new(-1.0, -1.0)) < 1e-12);
        assert!(c.p_plus.distance(Point::new(1.0, 1.0)) < 1e-12);

        let tri = ConvexBody::standard_triangle();
        let c = tri
            .chord_endpoints(Point::new(0.25, 0.25), Vector::new(1.0, 0.0))
            .unwrap();
        assert!(c.p_minus.distance(Point::new(0.0, 0.25)) < 1e-12);
        assert!(c.p_plus.distance(Point::new(0.75, 0.25)) < 1e-12);
    }

    #[test]
    fn chord_errors() {
        let sq = ConvexBody::square();
        assert!(matches!(
            sq.chord_endpoints(Point::new(3.0, 0.0), Vector::new(1.0, 0.0)),
            Err(Error::PointNotInterior)
        ));
        assert!(matches!(
            sq.chord_endpoints(Point::new(0.0, 0.0), Vector::ZERO),
            Err(Error::ZeroDirection)
        ));
    }

    #[test]
    fn chord_swaps_under_direction_flip() {
        let sq = ConvexBody::square();
        let p = Point::new(0.2, -0.3);
        let v = Vector::new(0.5, 1.3);
        let c1 = sq.chord_endpoints(p, v).unwrap();
        let c2 = sq.chord_endpoints(p, -v).unwrap();
        assert!(c1.p_minus.distance(c2.p_plus) < 1e-12);
        assert!(c1.p_plus.distance(c2.p_minus) < 1e-12);
    }

    #[test]
    fn support_lines_square() {
        let sq = ConvexBody::square();
        let at_corner = sq.support_lines_at(Point::new(1.0, 1.0)).unwrap();
        assert!(at_corner.is_corner());
        let at_edge = sq.support_lines_at(Point::new(1.0, 0.0)).unwrap();
        assert!(!at_edge.is_corner());
        match at_edge {
            SupportLines::Single(l) => assert!(l.dir.dx.abs() < 1e-12),
            _ => unreachable!(),
        }
        assert!(sq.support_lines_at(Point::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn support_lines_disk() {
        let disk = ConvexBody::unit_disk();
        match disk.support_lines_at(Point::new(1.0, 0.0)).unwrap() {
            SupportLines::Single(l) => {
                assert!(l.point.distance(Point::new(1.0, 0.0)) < 1e-9);
                assert!(l.dir.dx.abs() < 1e-9);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn rolling_radii_examples() {
        let disk = ConvexBody::unit_disk();
        let rr = disk.rolling_radii().unwrap();
        assert!((rr.r - 0.5).abs() < 1e-12 && (rr.big_r - 1.0).abs() < 1e-12);

        let e = ConvexBody::ellipse(Point::new(0.0, 0.0), 2.0, 1.0, 0.0).unwrap();
        let rr = e.rolling_radii().unwrap();
        assert!((rr.r - 0.25).abs() < 1e-12 && (rr.big_r - 4.0).abs() < 1e-12);

        let s = ConvexBody::Support(
            SupportBody::from_fn(512, Point::new(0.0, 0.0), |t| 1.0 + 0.1 * (3.0 * t).cos())
                .unwrap(),
        );
        let rr = s.rolling_radii().unwrap();
        assert!((rr.r - 0.1).abs() < 1e-9 && (rr.big_r - 1.8).abs() < 1e-9);

        assert!(ConvexBody::square().rolling_radii().is_err());
    }

    #[test]
    fn affine_disk_to_ellipse() {
        let disk = ConvexBody::unit_disk();
        let map = AffineMap::scaling(2.0, 1.0).unwrap();
        let img = disk.apply_affine(&map).unwrap();
        let e = img.as_ellipse().unwrap();
        assert!((e.a - 2.0).abs() < 1e-12 && (e.b - 1.0).abs() < 1e-12);
    }

    #[test]
    fn affine_identity_keeps_body() {
        let sq = ConvexBody::square();
        let img = sq.apply_affine(&AffineMap::identity()).unwrap();
        for (a, b) in sq
            .as_polygon()
            .unwrap()
            .vertices()
            .iter()
            .zip(img.as_polygon().unwrap().vertices())
        {
            assert!(a.distance(*b) < 1e-15);
        }
    }

    #[test]
    fn homography_identity_and_unbounded() {
        let sq = ConvexBody::square();
        let id = Homography::identity();
        assert!(sq.apply_homography(&id).is_ok());
        // Send the line x = 0.5 to infinity: the square straddles it.
        let m = nalgebra::Matrix3::new(1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 1.0, 0.0, -0.5);
        let bad = Homography::new(m).unwrap();
        assert!(matches!(
            sq.apply_homography(&bad),
            Err(Error::ImageUnbounded)
        ));
    }

    #[test]
    fn json_roundtrip() {
        for body in [
            ConvexBody::square(),
            ConvexBody::ellipse(Point::new(0.5, -0.25), 2.0, 1.0, 0.3).unwrap(),
        ] {
            let text = body.to_json_string();
            let back = ConvexBody::from_json_str(&text).unwrap();
            assert_eq!(body.kind_name(), back.kind_name());
            assert!((body.diameter() - back.diameter()).abs() < 1e-12);
        }
        let parsed =
            ConvexBody::from_json_str(r#"{"kind":"polygon","vertices":[[0,0],[1,0],[0,1]]}"#)
                .unwrap();
        assert_eq!(parsed.kind_name(), "polygon");
    }
}
