//! Cylindrical algebraic decomposition of quantifier-free polynomial systems
//! using per-cell local projections, with a classical projection-and-lifting
//! baseline.

pub mod cadbase;
pub mod cli;
pub mod exact;
pub mod formula;
pub mod lpcad;
pub mod poly;
pub mod projection;
pub mod realalg;
