//! Modules over the Jacobian algebra of `(Q(T), W(T))`: path basis, string
//! and band modules, quiver Grassmannian Euler characteristics by
//! counting torus-fixed points, and the categorified expansion.

mod cover;
mod expansion;
mod grass;
mod jacobian;
mod module;

pub use cover::{annulus_cover, pushdown_chi, Cover};
pub use expansion::{
    band_chi_table, band_f_polynomial, brute_force_direct_sum, lamination_module, f_polynomial_from_module, mixed_transverse_expansion,
    string_f_polynomial, ModuleKind,
};
pub use grass::{chi_table, grassmannian_chi, transverse_chi_band_w1, ChiTable};
pub use jacobian::{jacobian_basis, JacobianBasis};
pub use module::{band_of_loop, build_module, string_of_arc, Atom, Coef, Letter, QPModule, Word};

use crate::lamination::LaminationError;
use crate::route::RouteError;
use crate::surface::SurfaceError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModuleError {
    #[error("path enumeration did not terminate (paths longer than {0})")]
    NonTerminating(usize),
    #[error("vertex {0} has more than two incoming or outgoing arrows")]
    NotGentle(usize),
    #[error("word is not a string: {0}")]
    NotAString(&'static str),
    #[error("band word is a proper power")]
    ProperPower,
    #[error("module has {0} basis vectors; enumeration supports at most 64")]
    TooLarge(usize),
    #[error("module is not basis-shaped (an arrow sends a basis vector to a combination)")]
    NotBasisShaped,
    #[error("module violates a Jacobian relation")]
    RelationViolated,
    #[error("lamination is not integral")]
    NotIntegral,
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Route(#[from] RouteError),
    #[error(transparent)]
    Lamination(#[from] LaminationError),
}
