//! Exact real algebraic numbers: root isolation, comparison, sign
//! determination at sample points and roots of polynomials over them.

pub mod field;
pub mod isolate;
mod number;
mod sample;

use thiserror::Error;

pub use field::NumberField;
pub use isolate::{isolate_roots, isolate_squarefree, Isolated};
pub use number::{real_roots, roots_of_irreducible, separate, separate_all, simplest_between, RealAlg, RealNum};
pub use sample::{AnchoredRoot, SamplePoint};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RealAlgError {
    #[error("polynomial vanishes identically over the sample point")]
    IdenticallyZero,
    #[error("polynomial of level {0} cannot be specialized below level {1}")]
    LevelTooHigh(usize, usize),
}
