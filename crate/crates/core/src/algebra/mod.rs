//! Exact arithmetic: Laurent polynomials with half-integer exponents,
//! rational functions, 2×2 matrices, Chebyshev polynomials and a small
//! dense linear algebra over ℚ.

mod chebyshev;
mod halfint;
mod laurent;
mod linalg;
mod mat2;
mod ratfn;

pub use chebyshev::{chebyshev_poly, eval_univariate, monomial_power_expansion};
pub use halfint::HalfInt;
pub use laurent::LaurentPoly;
pub use linalg::QMatrix;
pub use mat2::{mat2_trace_power, Mat2};
pub use ratfn::RationalFn;

use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("exact division failed: remainder is nonzero")]
    NotDivisible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("variable {0} has no image under the substitution")]
    UndefinedVariable(usize),
    #[error("variable {0} occurs with a half-integer exponent but its image is not a monomial")]
    HalfExponentOnNonMonomial(usize),
    #[error("exponent {0}/4 is not a half-integer")]
    QuarterExponent(i64),
    #[error("variable counts differ: {0} vs {1}")]
    VariableMismatch(usize, usize),
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
