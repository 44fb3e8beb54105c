//! The automatic thin-level pass on a matrix shaped like a barrier-bound
//! solve: fat levels of thousands of rows followed by a tail of hundreds of
//! two-row levels.
//!
//! Sweeps `max_merge_span` to show the trade-off: merging the whole tail
//! into one level lets equations grow with the square of the tail length,
//! while a bounded span keeps each rewritten row short.

use std::error::Error;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sptrsv_rewrite::{
    rewrite_thin_levels, verify_transform, CooEntry, EquationSystem, LevelSchedule,
    LowerTriangularSystem, ThinLevelOptions,
};

/// `fat_levels` levels of `width` rows, then `tail` levels of two rows that
/// each read both rows of the level before.
fn barrier_bound(
    fat_levels: usize,
    width: usize,
    tail: usize,
    seed: u64,
) -> (usize, Vec<CooEntry>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut entries = Vec::new();
    let row = |entries: &mut Vec<CooEntry>, i: usize, deps: &[usize], rng: &mut ChaCha8Rng| {
        let d = rng.random_range(1.0..2.0);
        for &j in deps {
            entries.push(CooEntry::new(
                i,
                j,
                rng.random_range(-0.5..0.5) * d / deps.len() as f64,
            ));
        }
        entries.push(CooEntry::new(i, i, d));
    };
    let mut n = 0;
    let mut prev: Vec<usize> = Vec::new();
    for _ in 0..fat_levels {
        let level: Vec<usize> = (n..n + width).collect();
        for &i in &level {
            let deps: Vec<usize> = if prev.is_empty() {
                vec![]
            } else {
                vec![prev[i % prev.len()]]
            };
            row(&mut entries, i, &deps, &mut rng);
        }
        n += width;
        prev = level;
    }
    let mut pair = [prev[0], prev[prev.len() - 1]];
    for _ in 0..tail {
        row(&mut entries, n, &pair, &mut rng);
        row(&mut entries, n + 1, &pair, &mut rng);
        pair = [n, n + 1];
        n += 2;
    }
    (n, entries)
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let (n, entries) = barrier_bound(25, 4000, 450, 7);
    let l = LowerTriangularSystem::from_coo(n, &entries, false)?;
    println!("{n} rows, {} nonzeros", l.nnz());

    for span in [4, 16, 64, usize::MAX] {
        let mut sys = EquationSystem::from_lower(&l);
        let mut schedule = LevelSchedule::from_equations(&sys);
        let opts = ThinLevelOptions {
            max_merge_span: span,
            ..ThinLevelOptions::default()
        };
        let r = rewrite_thin_levels(&mut sys, &mut schedule, &opts)?;
        let v = verify_transform(&l, &sys, &schedule, 3, 1e-10, 0)?;
        let span = if span == usize::MAX {
            "unbounded".to_string()
        } else {
            span.to_string()
        };
        println!(
            "span {span:>9}: levels {} -> {:>3} ({:>5.1}% barriers removed), flops x{:.3}, \
             longest equation {:>3} terms, {} rows over budget, verified {}",
            r.levels_before,
            r.levels_after,
            100.0 * r.barrier_reduction,
            r.flop_ratio,
            r.max_terms_in_any_equation,
            r.rows_over_budget,
            v.passed
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
