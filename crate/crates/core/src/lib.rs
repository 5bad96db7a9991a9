//! Delaunay surfaces: constant-mean-curvature surfaces of revolution whose
//! meridians are the roulettes of conic foci.
//!
//! The crate is organised bottom-up:
//!
//! * [`numerics`]: adaptive quadrature, finite differences, root finding;
//! * [`conics`]: parametric parabola, ellipse and hyperbola;
//! * [`roulettes`]: catenary, undularies and nodaries in closed form;
//! * [`surfgeom`]: fundamental forms, curvatures, Gauss–Bonnet, volumes;
//! * [`solver`]: fitting surfaces to a volume and boundary radius;
//! * [`mesh`] and [`io`]: tessellation, composite nodoids, OBJ/CSV output;
//! * [`check`]: the invariant suite behind the `check` command.

pub mod check;
pub mod conics;
pub mod error;
pub mod io;
pub mod mesh;
pub mod numerics;
pub mod roulettes;
pub mod solver;
pub mod surfgeom;
mod vector;

pub use conics::{ConicKind, ConicSpec};
pub use error::{Error, Result};
pub use roulettes::{ProfileJet, ProfilePoint, RouletteKind, RouletteSpec};
pub use surfgeom::{CurvatureBundle, FundamentalForms, PatchDomain, SurfaceKind, SurfaceSpec};
pub use vector::{PlanePoint2, Vec3};
