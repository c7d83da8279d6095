//! Shared numerical kernels: Hermite functions, quadrature grids, adaptive
//! Simpson, finite differences and branch-tracked arctangents.

mod diff;
mod grid;
mod hermite;
mod quadrature;
mod unwrap;

pub use diff::{central_difference, second_derivative_5pt};
pub use grid::{GridDescriptor, GridKind, QuadratureGrid, TimeGrid, MIN_GRID_POINTS};
pub use hermite::{hermite_functions, hermite_weighted};
pub use quadrature::{adaptive_simpson, composite_simpson, gauss_legendre_nodes};
pub use unwrap::{atan_wobble, step_compensation, unwrap_atan};
