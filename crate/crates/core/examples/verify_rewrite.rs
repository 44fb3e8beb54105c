//! Every transform is checked against plain forward substitution before
//! anything is emitted. This shows a passing check, then a failing one on a
//! deliberately corrupted equation.

use std::error::Error;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sptrsv_rewrite::{
    rewrite_thin_levels, verify_transform, CooEntry, Equation, EquationSystem, LevelSchedule,
    LowerTriangularSystem, Terms, ThinLevelOptions,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let n: usize = 500;
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut entries = Vec::new();
    for i in 0..n {
        let d = rng.random_range(0.5..2.0);
        let cols: Vec<usize> = (i.saturating_sub(6)..i)
            .filter(|_| rng.random_bool(0.3))
            .collect();
        for j in cols {
            entries.push(CooEntry::new(i, j, rng.random_range(-0.1..0.1)));
        }
        entries.push(CooEntry::new(i, i, d));
    }
    let l = LowerTriangularSystem::from_coo(n, &entries, false)?;

    let mut sys = EquationSystem::from_lower(&l);
    let mut schedule = LevelSchedule::from_equations(&sys);
    let opts = ThinLevelOptions {
        thin_threshold: 4,
        ..ThinLevelOptions::default()
    };
    let report = rewrite_thin_levels(&mut sys, &mut schedule, &opts)?;
    println!(
        "levels {} -> {}, {} substitutions",
        report.levels_before, report.levels_after, report.substitutions_performed
    );
    let v = verify_transform(&l, &sys, &schedule, 20, 1e-10, 1)?;
    println!(
        "clean:     passed={} worst error {:.2e} (row {})",
        v.passed, v.worst_error, v.worst_row
    );

    // nudge one coefficient of the last row
    let mut eqs = sys.equations().to_vec();
    let last = eqs.pop().expect("non-empty");
    let bumped = Terms::from_pairs(last.b_terms.iter().map(|(k, c)| (k, c * (1.0 + 1e-6))));
    eqs.push(Equation {
        b_terms: bumped,
        ..last
    });
    let broken = EquationSystem::from_equations(eqs)?;
    let v = verify_transform(&l, &broken, &schedule, 20, 1e-10, 1)?;
    println!(
        "corrupted: passed={} {}",
        v.passed,
        v.diagnostic.unwrap_or_default()
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
