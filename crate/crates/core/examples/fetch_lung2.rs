//! Download lung2 from the SuiteSparse collection (needs network access),
//! then analyze and transform it with the default settings.
//!
//! ```text
//! cargo run --release --example fetch_lung2 [cache-dir]
//! ```

use std::error::Error;
use std::path::PathBuf;

use sptrsv_rewrite::cli::{self, AnalyzeConfig, TransformConfig};

fn main() -> Result<(), Box<dyn Error>> {
    let cache = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(cli::default_cache_dir);
    let path = cli::fetch("lung2", &cache)?;
    println!("{}", path.display());

    let analysis = cli::analyze(&AnalyzeConfig {
        matrix: path.clone(),
        unit_diagonal: false,
    })?;
    print!("{}", analysis.to_text());

    let report = cli::transform(&TransformConfig::new(path))?;
    print!("{}", report.to_text());
    Ok(())
}
