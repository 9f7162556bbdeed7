//! Exact engine for canonical functions on cluster Poisson varieties of
//! unpunctured marked bordered surfaces.
//!
//! Two independent routes are implemented and cross-checked: monodromy
//! traces / F-polynomials of laminations, and Euler characteristics of
//! quiver Grassmannians of string and band modules over the Jacobian
//! algebra of the triangulation.
//!
//! The crate is `no_std` (it needs `alloc`). File formats and the command
//! line live in the `skein` crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod canonical;
pub mod clusterseed;
pub mod framed;
pub mod lamination;
pub mod quivermod;
pub mod route;
pub mod surface;

pub use algebra::{HalfInt, LaurentPoly, Mat2, QMatrix, RationalFn};
pub use lamination::{Curve, CurveKind, Lamination};
pub use surface::{EdgeKind, Triangulation};
