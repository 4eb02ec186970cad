//! Exact symbolic computation of the Zassenhaus factorization
//!
//! ```text
//! e^{X+Y} = e^X e^Y e^{C_2} e^{C_3} ...
//! ```
//!
//! The exponents `C_n` are produced as linear combinations of nested
//! commutators in two generators with exact rational coefficients. The crate
//! also carries the independent oracles used to check them (an exact
//! truncated word-algebra identity, a numerical order-of-accuracy test on
//! random matrices, and an exact rank test) and a log-domain evaluator of the
//! term bounds that yields the convergence domain of the product.

pub mod convergence;
pub mod error;
pub mod format;
pub mod lie;
pub mod rational;
pub mod series;
pub mod verify;
pub mod words;

pub use convergence::{
    bayen_radius, converges, domain_boundary, geometric_grid, suzuki_radius, BoundTable,
    BoundaryPoint, ConvergenceVerdict, LogMagnitude,
};
pub use error::{Error, Result};
pub use lie::{CommutatorTerm, Generator, LiePolynomial};
pub use rational::ExactRational;
pub use series::{
    enumerate_index_set, left_oriented, term_via_index_formula, zassenhaus_series, FTable,
    IndexTuple, Orientation, SeriesEngine, ZassenhausSeries,
};
pub use verify::{
    associative_defect, independence_rank, truncated_exp, verify_associative, verify_independence,
    verify_matrix, witt_dimension, VerificationReport, VerifyMode,
};
pub use words::{NCPolynomial, Word};
