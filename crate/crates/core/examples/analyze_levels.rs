//! Level structure of a lower-triangular matrix.
//!
//! ```text
//! cargo run --example analyze_levels [matrix.mtx]
//! ```
//!
//! Without an argument a small built-in matrix is used.

use std::error::Error;
use std::path::PathBuf;

use sptrsv_rewrite::matrix_io::read_matrix_market;
use sptrsv_rewrite::{
    level_stats, parse_matrix_market, CsrMatrix, EquationSystem, LevelSchedule,
    LowerTriangularSystem,
};

const BUILTIN: &str = "\
%%MatrixMarket matrix coordinate real general
% two independent rows feeding a chain of three
6 6 11
1 1 2.0
2 2 2.0
3 1 -1.0
3 2 -1.0
3 3 4.0
4 3 0.5
4 4 1.0
5 4 0.5
5 5 1.0
6 5 0.5
6 6 1.0
";

pub fn run_example(path: Option<PathBuf>) -> Result<(), Box<dyn Error>> {
    let mm = match path {
        Some(path) => read_matrix_market(path)?,
        None => parse_matrix_market(BUILTIN.as_bytes())?,
    };
    let csr = CsrMatrix::from_coo(mm.n, &mm.entries)?;
    let lower = LowerTriangularSystem::from_csr(&csr, false)?;
    let sys = EquationSystem::from_lower(&lower);
    let schedule = LevelSchedule::from_equations(&sys);
    let stats = level_stats(&schedule, &sys)?;

    println!("n = {}, nnz(L) = {}", lower.n(), lower.nnz());
    println!(
        "{} levels, {} barriers",
        schedule.num_levels(),
        schedule.barriers()
    );
    for (level, rows) in schedule.levels().iter().enumerate().take(12) {
        println!("  level {level:>3}: {rows:?}");
    }
    if schedule.num_levels() > 12 {
        println!("  ...");
    }
    for t in &stats.thin_levels {
        println!(
            "levels with <= {} rows: {:.1}%",
            t.threshold,
            100.0 * t.fraction
        );
    }
    println!(
        "flops {} | memory accesses: specialized {} vs generic CSR {}",
        stats.total_flops, stats.total_mem_specialized, stats.total_mem_generic
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example(std::env::args().nth(1).map(PathBuf::from))
}
