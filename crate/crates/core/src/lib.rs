//! Dependency-graph rewriting for sparse lower-triangular solves.
//!
//! Level-set SpTRSV runs one barrier per level of the row-dependency DAG.
//! Matrices with long stretches of thin levels (one or two rows each) spend
//! most of their time waiting at those barriers. This crate rewrites the
//! equations of rows in thin levels, substituting the equations of the rows
//! they depend on, so they can be computed earlier; the thin levels empty
//! out and their barriers disappear. The rewritten system is then emitted
//! as matrix-specialized C with every coefficient and index a literal.
//!
//! Pipeline:
//!
//! 1. [`matrix_io`]: Matrix Market → CSR → lower triangle.
//! 2. [`dag`]: dependency DAG, level schedule, per-level statistics.
//! 3. [`equation`] / [`rewrite`]: normalized row equations and the
//!    substitution transform.
//! 4. [`executor`]: reference forward substitution and equation evaluation,
//!    used to verify every transform.
//! 5. [`codegen`]: C kernels, driver, fallback solver and Makefile.
//! 6. [`cli`]: the commands behind the `sptrsv` binary.
//!
//! See the `examples/` directory for one runnable program per stage.

pub mod cli;
pub mod codegen;
pub mod dag;
pub mod equation;
mod error;
pub mod executor;
pub mod matrix_io;
pub mod rewrite;

pub use dag::{level_stats, DependencyDag, LevelSchedule, LevelStats};
pub use equation::{Equation, EquationSystem, Terms};
pub use error::{Error, Result};
pub use executor::{evaluate_equations, serial_sptrsv, verify_transform, SolveResult};
pub use matrix_io::{parse_matrix_market, CooEntry, CsrMatrix, LowerTriangularSystem};
pub use rewrite::{
    elevate_row, recompute_level, rewrite_rows, rewrite_thin_levels, substitute, ThinLevelOptions,
    TransformReport,
};
