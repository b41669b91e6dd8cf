//! Planar Hilbert geometry.
//!
//! A Hilbert geometry is a bounded open convex domain `C` of the plane with
//! the cross-ratio distance
//!
//! ```text
//! d_C(p, q) = 1/2 ln( |q - a| / |p - a| * |p - b| / |q - b| )
//! ```
//!
//! where `a, b` are the boundary points of the chord through `p` and `q`.
//! This crate provides:
//!
//! - convex-body representations (polygon, ellipse, support-function body)
//!   and their chord / support-line / curvature primitives ([`body`]),
//! - the Hilbert distance, the associated Finsler norm and its unit balls,
//!   and the Busemann density `pi / vol(ball)` ([`metric`]),
//! - adaptive quadrature of the Hilbert area measure, including ideal
//!   triangles with boundary singularities and divergence detection
//!   ([`measure`]),
//! - closed forms on triangular domains: the dilogarithm, the ideal-triangle
//!   area function and its derivative, square-ball bounds ([`simplex`]),
//! - John/Loewner ellipses with contact points, witness constructions for
//!   the hyperbolic-characterization dichotomy, per-body area bounds and the
//!   supporting circle-chord predicates ([`extremal`]),
//! - seeded samplers and statement verifiers used by the CLI ([`sample`],
//!   [`verify`]).

pub mod body;
pub mod error;
pub mod extremal;
pub mod geom;
pub mod measure;
pub mod metric;
pub mod sample;
pub mod simplex;
pub mod verify;

pub use body::{Chord, ConvexBody, Location, RollingRadii, SupportLines};
pub use error::{Error, Result};
pub use geom::{AffineMap, Homography, Point, Vector};
pub use measure::{AreaResult, IdealTriangle, QuadratureOptions, Verdict, VertexFlag};
pub use metric::{ball_area, density, finsler_norm, hilbert_distance, unit_ball, UnitBallPolygon};
