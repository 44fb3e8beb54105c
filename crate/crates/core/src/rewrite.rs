//! Equation rewriting: substitute a dependency's equation into a row so
//! the row stops waiting for it.
//!
//! Substituting row `j` into row `i` replaces the term `c·x[j]` with
//! `c·(Σ β'·b + Σ α'·x)`. By linearity the value of `x[i]` is unchanged
//! for every right-hand side, but `i` now depends on `j`'s dependencies,
//! all of which sit at strictly lower levels than `j`. Repeating this moves
//! rows from thin levels up into earlier levels so the thin levels, and the
//! barriers behind them, disappear.

use serde::Serialize;

use crate::dag::{level_from_deps, LevelSchedule};
use crate::equation::EquationSystem;
use crate::error::{Error, Result};

/// Replace `x[j]` in row `i` with row `j`'s current equation.
pub fn substitute(sys: &mut EquationSystem, i: usize, j: usize) -> Result<()> {
    if i >= sys.n() || j >= i {
        return Err(Error::NoSuchTerm { row: i, dep: j });
    }
    let (lower, upper) = sys.equations.split_at_mut(i);
    let target = &mut upper[0];
    let c = target
        .x_terms
        .remove(j)
        .ok_or(Error::NoSuchTerm { row: i, dep: j })?;
    let source = &lower[j];
    target.x_terms.add_scaled(c, &source.x_terms);
    target.b_terms.add_scaled(c, &source.b_terms);
    sys.provenance[i].push(j);
    Ok(())
}

/// Level row `i` would occupy given the levels of its current x-terms.
pub fn recompute_level(sys: &EquationSystem, level_of: &[usize], i: usize) -> usize {
    level_from_deps(level_of, sys.equation(i).x_terms.indices())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ElevationOutcome {
    Reached,
    BudgetExceeded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Elevation {
    pub outcome: ElevationOutcome,
    /// Substitutions kept (zero when rolled back).
    pub substitutions: usize,
    /// Substitutions attempted, including rolled-back ones.
    pub attempted: usize,
}

/// Substitute dependencies of row `i` until it can sit at `target` or lower.
///
/// The highest-level dependency at or above `target` is substituted first
/// (ties go to the larger row index). Each substitution trades a dependency
/// for ones at strictly smaller levels, so every row is substituted at most
/// once; more than `i` substitutions means the levels are stale and is
/// reported as an error. If the term count ever exceeds `fill_budget` the
/// row is restored to its state at entry.
///
/// `level_of` must be current for every dependency of `i`; on success
/// `level_of[i]` is updated.
pub fn elevate_row(
    sys: &mut EquationSystem,
    level_of: &mut [usize],
    i: usize,
    target: usize,
    fill_budget: usize,
) -> Result<Elevation> {
    let saved = sys.equations[i].clone();
    let saved_log = sys.provenance[i].len();
    let cap = i;
    let mut count = 0usize;

    loop {
        let next = sys.equations[i]
            .x_terms
            .indices()
            .filter(|&j| level_of[j] >= target)
            .max_by_key(|&j| (level_of[j], j));
        let Some(j) = next else { break };
        if count == cap {
            sys.equations[i] = saved;
            sys.provenance[i].truncate(saved_log);
            return Err(Error::SubstitutionCap { row: i, cap });
        }
        substitute(sys, i, j)?;
        count += 1;
        if sys.equations[i].term_count() > fill_budget {
            sys.equations[i] = saved;
            sys.provenance[i].truncate(saved_log);
            return Ok(Elevation {
                outcome: ElevationOutcome::BudgetExceeded,
                substitutions: 0,
                attempted: count,
            });
        }
    }

    level_of[i] = recompute_level(sys, level_of, i);
    Ok(Elevation {
        outcome: ElevationOutcome::Reached,
        substitutions: count,
        attempted: count,
    })
}

/// Knobs for [`rewrite_thin_levels`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThinLevelOptions {
    /// Levels with at most this many rows are thin.
    pub thin_threshold: usize,
    /// Maximum `p + q` of any rewritten equation.
    pub fill_budget: usize,
    /// Never reduce the schedule below this many levels.
    pub min_levels_kept: usize,
    /// A thin level more than this many levels past its anchor starts a new
    /// anchor instead of substituting all the way down.
    pub max_merge_span: usize,
}

impl Default for ThinLevelOptions {
    fn default() -> Self {
        Self {
            thin_threshold: 2,
            fill_budget: 256,
            min_levels_kept: 1,
            max_merge_span: 16,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct TransformReport {
    pub levels_before: usize,
    pub levels_after: usize,
    pub barriers_before: usize,
    pub barriers_after: usize,
    /// `(barriers_before - barriers_after) / barriers_before`.
    pub barrier_reduction: f64,
    pub flops_before: usize,
    pub flops_after: usize,
    pub flop_ratio: f64,
    pub rows_rewritten: usize,
    pub rows_over_budget: usize,
    pub substitutions_performed: usize,
    pub max_terms_in_any_equation: usize,
}

impl TransformReport {
    fn finish(
        before: &LevelSchedule,
        after: &LevelSchedule,
        flops_before: usize,
        sys: &EquationSystem,
    ) -> Self {
        let flops_after = sys.flop_count();
        let (bb, ba) = (before.barriers(), after.barriers());
        Self {
            levels_before: before.num_levels(),
            levels_after: after.num_levels(),
            barriers_before: bb,
            barriers_after: ba,
            barrier_reduction: if bb == 0 {
                0.0
            } else {
                (bb - ba) as f64 / bb as f64
            },
            flops_before,
            flops_after,
            flop_ratio: if flops_before == 0 {
                1.0
            } else {
                flops_after as f64 / flops_before as f64
            },
            max_terms_in_any_equation: sys.max_terms(),
            ..Self::default()
        }
    }
}

/// Rewrite the rows of thin levels so they join an earlier level.
///
/// Levels of `schedule` are visited in ascending order. Each row's level is
/// recomputed on arrival (its dependencies were all visited earlier). A fat
/// level becomes the anchor. A thin level within `max_merge_span` levels of
/// the anchor has each of its rows elevated to the anchor's current level;
/// farther away it becomes the anchor itself. Rows that blow the fill
/// budget stay where they are and also become the anchor. Before any fat
/// level is seen the anchor is level 0.
///
/// On return `schedule` is rebuilt from the rewritten system.
pub fn rewrite_thin_levels(
    sys: &mut EquationSystem,
    schedule: &mut LevelSchedule,
    opts: &ThinLevelOptions,
) -> Result<TransformReport> {
    check_schedule(sys, schedule)?;
    let before = schedule.clone();
    let flops_before = sys.flop_count();
    let mut report_rows = 0usize;
    let mut over_budget = 0usize;
    let mut substitutions = 0usize;

    let mut level_of = vec![0usize; sys.n()];
    // (level index in `before`, current level)
    let mut anchor = (0usize, 0usize);
    let mut highest = 0usize;
    let total = before.num_levels();

    for (l, rows) in before.levels().iter().enumerate() {
        for &r in rows {
            level_of[r] = recompute_level(sys, &level_of, r);
        }
        let settled = highest;
        let level_top = rows.iter().map(|&r| level_of[r]).max().unwrap_or(0);

        let thin = rows.len() <= opts.thin_threshold;
        // levels left if this one stays above everything settled so far and
        // each remaining level adds one more
        let projected = settled + (total - l);
        let merge_too_far = l - anchor.0 > opts.max_merge_span;
        if !thin || l == 0 || merge_too_far || projected < opts.min_levels_kept {
            anchor = (l, level_top);
        } else {
            let target = anchor.1;
            let mut stuck_top = None;
            for &r in rows {
                if level_of[r] <= target {
                    continue;
                }
                let e = elevate_row(sys, &mut level_of, r, target, opts.fill_budget)?;
                match e.outcome {
                    ElevationOutcome::Reached => {
                        report_rows += 1;
                        substitutions += e.substitutions;
                    }
                    ElevationOutcome::BudgetExceeded => {
                        over_budget += 1;
                        stuck_top = stuck_top.max(Some(level_of[r]));
                    }
                }
            }
            if let Some(top) = stuck_top {
                anchor = (l, top);
            }
        }
        highest = highest.max(rows.iter().map(|&r| level_of[r]).max().unwrap_or(0));
    }

    *schedule = LevelSchedule::from_equations(sys);
    debug_assert_eq!(schedule.level_of(), &level_of[..]);
    let mut report = TransformReport::finish(&before, schedule, flops_before, sys);
    report.rows_rewritten = report_rows;
    report.rows_over_budget = over_budget;
    report.substitutions_performed = substitutions;
    Ok(report)
}

/// Elevate an explicit list of rows, each to the lowest level it can reach
/// within `fill_budget`.
pub fn rewrite_rows(
    sys: &mut EquationSystem,
    schedule: &mut LevelSchedule,
    rows: &[usize],
    fill_budget: usize,
) -> Result<TransformReport> {
    check_schedule(sys, schedule)?;
    if let Some(&r) = rows.iter().find(|&&r| r >= sys.n()) {
        return Err(Error::Consistency(format!(
            "row {r} out of range for n = {}",
            sys.n()
        )));
    }
    let before = schedule.clone();
    let flops_before = sys.flop_count();
    let mut sorted = rows.to_vec();
    sorted.sort_unstable();
    sorted.dedup();

    let mut report = TransformReport::default();
    for &r in &sorted {
        let mut level_of = LevelSchedule::from_equations(sys).level_of().to_vec();
        let current = level_of[r];
        let mut reached = current == 0;
        for target in 0..current {
            let e = elevate_row(sys, &mut level_of, r, target, fill_budget)?;
            if e.outcome == ElevationOutcome::Reached {
                report.substitutions_performed += e.substitutions;
                report.rows_rewritten += usize::from(e.substitutions > 0);
                reached = true;
                break;
            }
        }
        if !reached {
            report.rows_over_budget += 1;
        }
    }

    *schedule = LevelSchedule::from_equations(sys);
    let mut full = TransformReport::finish(&before, schedule, flops_before, sys);
    full.rows_rewritten = report.rows_rewritten;
    full.rows_over_budget = report.rows_over_budget;
    full.substitutions_performed = report.substitutions_performed;
    Ok(full)
}

fn check_schedule(sys: &EquationSystem, schedule: &LevelSchedule) -> Result<()> {
    if schedule.n() != sys.n() {
        return Err(Error::Consistency(format!(
            "schedule covers {} rows but the system has {}",
            schedule.n(),
            sys.n()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equation::{Equation, Terms};
    use crate::matrix_io::{CooEntry, LowerTriangularSystem};

    fn chain(n: usize) -> EquationSystem {
        let mut e: Vec<CooEntry> = (0..n).map(|i| CooEntry::new(i, i, 2.0)).collect();
        e.extend((1..n).map(|i| CooEntry::new(i, i - 1, -1.0)));
        EquationSystem::from_lower(&LowerTriangularSystem::from_coo(n, &e, false).unwrap())
    }

    fn eq(row: usize, b: &[(usize, f64)], x: &[(usize, f64)]) -> Equation {
        Equation {
            row,
            x_terms: Terms::from_pairs(x.iter().copied()),
            b_terms: Terms::from_pairs(b.iter().copied()),
        }
    }

    #[test]
    fn substitution_matches_hand_algebra() {
        // x1 = 0.5 b1 + 3 x0 ; x3 = 0.25 b3 + 2 x1 + 1 x2 (x2 = b2)
        let mut sys = EquationSystem::from_equations(vec![
            eq(0, &[(0, 1.0)], &[]),
            eq(1, &[(1, 0.5)], &[(0, 3.0)]),
            eq(2, &[(2, 1.0)], &[]),
            eq(3, &[(3, 0.25)], &[(1, 2.0), (2, 1.0)]),
        ])
        .unwrap();
        substitute(&mut sys, 3, 1).unwrap();
        let e = sys.equation(3);
        assert_eq!(
            e.x_terms.iter().collect::<Vec<_>>(),
            vec![(0, 6.0), (2, 1.0)]
        );
        assert_eq!(
            e.b_terms.iter().collect::<Vec<_>>(),
            vec![(1, 1.0), (3, 0.25)]
        );
        assert_eq!(sys.provenance(3), &[1]);
        assert!(matches!(
            substitute(&mut sys, 3, 1),
            Err(Error::NoSuchTerm { row: 3, dep: 1 })
        ));
        assert!(matches!(
            substitute(&mut sys, 1, 2),
            Err(Error::NoSuchTerm { row: 1, dep: 2 })
        ));
        assert_eq!(sys.provenance_trace(), "substitute 3<-1\n");
    }

    #[test]
    fn substituting_a_leaf_only_adds_b_terms() {
        let mut sys = chain(2);
        substitute(&mut sys, 1, 0).unwrap();
        let e = sys.equation(1);
        assert!(e.x_terms.is_empty());
        assert_eq!(e.b_terms.len(), 2);
    }

    #[test]
    fn cancellation_drops_the_term() {
        // x2 = x1 - 0.5 x0 with x1 = 0.5 x0  -> x0 coefficient cancels
        let mut sys = EquationSystem::from_equations(vec![
            eq(0, &[(0, 1.0)], &[]),
            eq(1, &[(1, 1.0)], &[(0, 0.5)]),
            eq(2, &[(2, 1.0)], &[(0, -0.5), (1, 1.0)]),
        ])
        .unwrap();
        substitute(&mut sys, 2, 1).unwrap();
        assert!(sys.equation(2).x_terms.is_empty());
    }

    #[test]
    fn recompute_level_definition() {
        let sys = EquationSystem::from_equations(vec![
            eq(0, &[(0, 1.0)], &[]),
            eq(1, &[(1, 1.0)], &[]),
            eq(2, &[(2, 1.0)], &[(0, 1.0), (1, 1.0)]),
        ])
        .unwrap();
        assert_eq!(recompute_level(&sys, &[0, 0, 0], 0), 0);
        assert_eq!(recompute_level(&sys, &[0, 2, 0], 2), 3);
    }

    #[test]
    fn chain_elevation_counts() {
        let mut sys = chain(10);
        let mut lv = LevelSchedule::from_equations(&sys).level_of().to_vec();
        let e = elevate_row(&mut sys, &mut lv, 9, 0, usize::MAX).unwrap();
        assert_eq!(e.outcome, ElevationOutcome::Reached);
        assert_eq!(e.substitutions, 9);
        assert_eq!(lv[9], 0);

        let e = elevate_row(&mut sys, &mut lv, 9, 0, usize::MAX).unwrap();
        assert_eq!(e.substitutions, 0);
    }

    #[test]
    fn budget_exceeded_rolls_back() {
        let mut sys = chain(6);
        let mut lv = LevelSchedule::from_equations(&sys).level_of().to_vec();
        let before = sys.equation(5).clone();
        let budget = before.term_count();
        let e = elevate_row(&mut sys, &mut lv, 5, 0, budget).unwrap();
        assert_eq!(e.outcome, ElevationOutcome::BudgetExceeded);
        assert_eq!(sys.equation(5), &before);
        assert!(sys.provenance(5).is_empty());
        assert_eq!(lv[5], 5);
    }

    #[test]
    fn stale_levels_hit_the_cap() {
        // x2 = x0 + x1, x1 = x0; claiming level(0) > level(1) makes the
        // highest-level-first walk reintroduce x0 after substituting row 1
        let mut sys = EquationSystem::from_equations(vec![
            eq(0, &[(0, 1.0)], &[]),
            eq(1, &[(1, 1.0)], &[(0, 1.0)]),
            eq(2, &[(2, 1.0)], &[(0, 1.0), (1, 1.0)]),
        ])
        .unwrap();
        let before = sys.equation(2).clone();
        let mut lv = vec![9, 0, 0];
        let r = elevate_row(&mut sys, &mut lv, 2, 0, usize::MAX);
        assert!(matches!(r, Err(Error::SubstitutionCap { row: 2, cap: 2 })));
        assert_eq!(sys.equation(2), &before);
    }

    #[test]
    fn no_thin_levels_is_identity() {
        // two independent chains of width 3
        let mut sys = EquationSystem::from_lower(
            &LowerTriangularSystem::from_coo(
                6,
                &(0..6)
                    .map(|i| CooEntry::new(i, i, 1.0))
                    .chain((3..6).map(|i| CooEntry::new(i, i - 3, 1.0)))
                    .collect::<Vec<_>>(),
                false,
            )
            .unwrap(),
        );
        let mut s = LevelSchedule::from_equations(&sys);
        let original = sys.clone();
        let r = rewrite_thin_levels(&mut sys, &mut s, &ThinLevelOptions::default()).unwrap();
        assert_eq!(r.levels_before, r.levels_after);
        assert_eq!(r.substitutions_performed, 0);
        assert_eq!(sys, original);
    }

    #[test]
    fn chain_collapses_with_unlimited_span() {
        let mut sys = chain(100);
        let mut s = LevelSchedule::from_equations(&sys);
        let opts = ThinLevelOptions {
            thin_threshold: 1,
            fill_budget: usize::MAX,
            min_levels_kept: 1,
            max_merge_span: usize::MAX,
        };
        let r = rewrite_thin_levels(&mut sys, &mut s, &opts).unwrap();
        assert_eq!(r.levels_after, 1);
        assert_eq!(s.num_levels(), 1);
        assert_eq!(r.rows_rewritten, 99);
        assert_eq!(r.barrier_reduction, 1.0);
    }

    #[test]
    fn span_chunks_long_chains() {
        let mut sys = chain(100);
        let mut s = LevelSchedule::from_equations(&sys);
        let opts = ThinLevelOptions {
            thin_threshold: 1,
            max_merge_span: 9,
            ..ThinLevelOptions::default()
        };
        let r = rewrite_thin_levels(&mut sys, &mut s, &opts).unwrap();
        assert_eq!(r.levels_after, 10);
        assert!(s.levels().iter().all(|l| l.len() == 10));
        assert!(r.max_terms_in_any_equation <= 11);
    }

    #[test]
    fn min_levels_floor_is_respected() {
        let mut sys = chain(30);
        let mut s = LevelSchedule::from_equations(&sys);
        let opts = ThinLevelOptions {
            thin_threshold: 1,
            fill_budget: usize::MAX,
            min_levels_kept: 12,
            max_merge_span: usize::MAX,
        };
        let r = rewrite_thin_levels(&mut sys, &mut s, &opts).unwrap();
        assert!(r.levels_after >= 12, "{r:?}");
        assert!(r.levels_after < 30);
    }

    #[test]
    fn threshold_zero_changes_nothing() {
        let mut sys = chain(20);
        let mut s = LevelSchedule::from_equations(&sys);
        let opts = ThinLevelOptions {
            thin_threshold: 0,
            ..ThinLevelOptions::default()
        };
        let r = rewrite_thin_levels(&mut sys, &mut s, &opts).unwrap();
        assert_eq!((r.levels_before, r.levels_after), (20, 20));
        assert_eq!(r.flop_ratio, 1.0);
    }

    #[test]
    fn explicit_rows_reach_lowest_level_within_budget() {
        let mut sys = chain(8);
        let mut s = LevelSchedule::from_equations(&sys);
        let r = rewrite_rows(&mut sys, &mut s, &[7], 4).unwrap();
        // budget 4 lets row 7 absorb two rows: b7, b6, b5 and x4
        assert_eq!(s.level_of()[7], 5);
        assert_eq!(r.substitutions_performed, 2);
        assert!(rewrite_rows(&mut sys, &mut s, &[8], 4).is_err());
    }
}
