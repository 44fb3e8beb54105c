//! The default thin-level settings on synthetic barrier-bound matrices:
//! about 110k rows in ~478 levels, ~94% of them two rows wide.

mod common;

use sptrsv_rewrite::{
    rewrite_thin_levels, verify_transform, EquationSystem, LevelSchedule, LowerTriangularSystem,
    ThinLevelOptions,
};

fn run(runs: &[(usize, usize)], opts: &ThinLevelOptions) -> sptrsv_rewrite::TransformReport {
    let mut rng = common::rng(21);
    let (n, entries) = common::thin_tail(runs, &mut rng);
    let l = LowerTriangularSystem::from_coo(n, &entries, false).unwrap();
    let mut sys = EquationSystem::from_lower(&l);
    let mut s = LevelSchedule::from_equations(&sys);
    let r = rewrite_thin_levels(&mut sys, &mut s, opts).unwrap();
    let v = verify_transform(&l, &sys, &s, 3, 1e-10, 0).unwrap();
    assert!(v.passed, "{v:?}");
    r
}

fn long_tail() -> Vec<(usize, usize)> {
    let mut runs = vec![(3900, 0); 27];
    runs.push((3900, 450));
    runs
}

#[test]
fn defaults_remove_most_barriers_of_a_long_tail() {
    let r = run(&long_tail(), &ThinLevelOptions::default());
    assert_eq!(r.levels_before, 478);
    assert!(r.barrier_reduction >= 0.80, "{r:?}");
    assert!(r.levels_after <= 96, "{r:?}");
    assert!(r.flop_ratio <= 1.25, "{r:?}");
}

#[test]
fn defaults_handle_interleaved_thin_runs() {
    let r = run(&vec![(3900, 16); 28], &ThinLevelOptions::default());
    assert!(r.barrier_reduction >= 0.80, "{r:?}");
    assert!(r.flop_ratio <= 1.25, "{r:?}");
}

#[test]
fn unbounded_merging_of_a_long_tail_costs_flops() {
    let opts = ThinLevelOptions {
        max_merge_span: usize::MAX,
        ..ThinLevelOptions::default()
    };
    let bounded = run(&long_tail(), &ThinLevelOptions::default());
    let unbounded = run(&long_tail(), &opts);
    assert!(unbounded.levels_after < bounded.levels_after);
    assert!(unbounded.flop_ratio > bounded.flop_ratio);
    assert!(unbounded.rows_over_budget > 0);
}
