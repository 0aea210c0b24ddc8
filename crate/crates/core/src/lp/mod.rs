//! Exact rational linear programming over distance distributions.

pub mod bounds;
pub mod simplex;
pub mod systems;

pub use bounds::{
    classical_lp_bound, cw_bound, improved_bound, BoundOptions, BoundResult, Certificate, Method,
    ScanEntry,
};
pub use simplex::{
    simplex_solve, Constraint, FarkasCertificate, LinearSystem, LpOutcome, Relation,
    DEFAULT_PIVOT_LIMIT,
};
pub use systems::{
    build_classical_system, build_cw_classical_system, build_cw_system, build_improved_system,
    cw_rhs, improved_rhs,
};
