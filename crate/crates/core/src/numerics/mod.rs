//! Numeric kernels: adaptive quadrature, Richardson-extrapolated central
//! differences, and root finding in one and two dimensions.

mod diff;
mod quadrature;
mod roots;

pub use diff::derivative;
pub use quadrature::{integrate, QuadratureResult, MAX_SUBDIVISIONS};
pub use roots::{find_root_1d, solve_2d, RootResult};
