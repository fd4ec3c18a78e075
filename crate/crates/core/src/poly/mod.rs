//! Sparse multivariate polynomials over the integers and the eliminant
//! toolkit consumed by the projection operators.

mod basis;
pub mod factor;
pub mod gcd;
mod multi;
pub mod resultant;
pub mod upoly;

use thiserror::Error;

pub use basis::{
    cache_entries, clear_caches, discriminant, factor_basis, factor_poly, factors_of, level_split, psc_sequence, resultant,
    truncated_psc, FactorBasis, Factorization,
};
pub use multi::{poly_ring_ops, Exps, MultiPoly, RingOp, VarOrder};
pub use upoly::{QPoly, ZPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable order must not be empty")]
    EmptyVarOrder,
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("polynomials over different variable orders ({0} vs {1} variables)")]
    MismatchedVarOrder(usize, usize),
    #[error("both polynomials are constant in the elimination variable")]
    ConstantInVariable,
    #[error("degree in the elimination variable is too small")]
    DegreeTooSmall,
}
