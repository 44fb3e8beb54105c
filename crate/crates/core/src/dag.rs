//! Row-dependency DAG, level-set schedule and per-level statistics.
//!
//! Row `i` depends on row `j` whenever `L[i][j] != 0` with `j < i`, so every
//! edge points from a smaller to a larger row index and one ascending pass
//! is enough to assign levels:
//!
//! ```text
//! level[i] = 0                          if i has no dependencies
//! level[i] = 1 + max(level[j] : j ∈ deps(i))   otherwise
//! ```

use serde::Serialize;

use crate::equation::EquationSystem;
use crate::error::{Error, Result};
use crate::matrix_io::LowerTriangularSystem;

/// Predecessor and successor adjacency, both stored CSR-style.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencyDag {
    dep_ptr: Vec<usize>,
    dep_idx: Vec<usize>,
    rdep_ptr: Vec<usize>,
    rdep_idx: Vec<usize>,
}

impl DependencyDag {
    pub fn from_lower(l: &LowerTriangularSystem) -> Self {
        Self::from_rows(l.n(), |i| l.off_diagonal(i).0.to_vec())
    }

    /// DAG of a (possibly rewritten) equation system: edges follow x-terms.
    pub fn from_equations(sys: &EquationSystem) -> Self {
        Self::from_rows(sys.n(), |i| sys.equation(i).x_terms.indices().collect())
    }

    fn from_rows(n: usize, deps_of: impl Fn(usize) -> Vec<usize>) -> Self {
        let mut dep_ptr = Vec::with_capacity(n + 1);
        let mut dep_idx = Vec::new();
        dep_ptr.push(0);
        for i in 0..n {
            dep_idx.extend(deps_of(i));
            dep_ptr.push(dep_idx.len());
        }

        let mut rdep_ptr = vec![0usize; n + 1];
        for &j in &dep_idx {
            rdep_ptr[j + 1] += 1;
        }
        for j in 0..n {
            rdep_ptr[j + 1] += rdep_ptr[j];
        }
        let mut fill = rdep_ptr.clone();
        let mut rdep_idx = vec![0usize; dep_idx.len()];
        // ascending i keeps each dependents list sorted
        for i in 0..n {
            for &j in &dep_idx[dep_ptr[i]..dep_ptr[i + 1]] {
                rdep_idx[fill[j]] = i;
                fill[j] += 1;
            }
        }
        Self {
            dep_ptr,
            dep_idx,
            rdep_ptr,
            rdep_idx,
        }
    }

    pub fn n(&self) -> usize {
        self.dep_ptr.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.dep_idx.len()
    }

    /// Rows that row `i` reads, ascending.
    pub fn deps(&self, i: usize) -> &[usize] {
        &self.dep_idx[self.dep_ptr[i]..self.dep_ptr[i + 1]]
    }

    /// Rows that read row `j`, ascending.
    pub fn dependents(&self, j: usize) -> &[usize] {
        &self.rdep_idx[self.rdep_ptr[j]..self.rdep_ptr[j + 1]]
    }
}

/// Level-set partition of the rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelSchedule {
    level_of: Vec<usize>,
    levels: Vec<Vec<usize>>,
}

impl LevelSchedule {
    pub fn from_dag(dag: &DependencyDag) -> Self {
        let mut level_of = vec![0usize; dag.n()];
        for i in 0..dag.n() {
            level_of[i] = dag
                .deps(i)
                .iter()
                .map(|&j| level_of[j] + 1)
                .max()
                .unwrap_or(0);
        }
        Self::from_level_of(level_of)
    }

    pub fn from_equations(sys: &EquationSystem) -> Self {
        let mut level_of = vec![0usize; sys.n()];
        for i in 0..sys.n() {
            level_of[i] = level_from_deps(&level_of, sys.equation(i).x_terms.indices());
        }
        Self::from_level_of(level_of)
    }

    /// Group rows by level. Levels must be dense (no gaps); rows within a
    /// level come out ascending.
    pub(crate) fn from_level_of(level_of: Vec<usize>) -> Self {
        let num_levels = level_of.iter().max().map_or(0, |&l| l + 1);
        let mut levels = vec![Vec::new(); num_levels];
        for (row, &l) in level_of.iter().enumerate() {
            levels[l].push(row);
        }
        debug_assert!(levels.iter().all(|l| !l.is_empty()));
        Self { level_of, levels }
    }

    pub fn n(&self) -> usize {
        self.level_of.len()
    }

    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    /// Barriers between consecutive levels; none after the last one.
    pub fn barriers(&self) -> usize {
        self.num_levels().saturating_sub(1)
    }

    pub fn level_of(&self) -> &[usize] {
        &self.level_of
    }

    pub fn levels(&self) -> &[Vec<usize>] {
        &self.levels
    }

    pub fn widths(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }
}

/// `0` without dependencies, else `1 + max` level over them.
pub(crate) fn level_from_deps(level_of: &[usize], deps: impl Iterator<Item = usize>) -> usize {
    deps.map(|j| level_of[j] + 1).max().unwrap_or(0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelStat {
    pub level: usize,
    pub rows: usize,
    /// Stored terms, `Σ (p+q)`; equals the row nonzeros of L before rewriting.
    pub nonzeros: usize,
    pub flops: usize,
    /// Reads and writes of straight-line code with embedded constants.
    pub mem_specialized: usize,
    /// Reads and writes of a generic CSR loop over the same rows.
    pub mem_generic: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThinLevelCount {
    pub threshold: usize,
    pub levels: usize,
    pub fraction: f64,
}

/// Thresholds reported for the thin-level fractions.
pub const REPORTED_THIN_THRESHOLDS: [usize; 4] = [1, 2, 4, 8];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelStats {
    pub n: usize,
    pub num_levels: usize,
    pub barriers: usize,
    pub total_nonzeros: usize,
    pub total_flops: usize,
    pub total_mem_specialized: usize,
    pub total_mem_generic: usize,
    pub mean_rows_per_level: f64,
    pub median_rows_per_level: f64,
    pub max_rows_per_level: usize,
    pub mean_mem_specialized_per_level: f64,
    pub mean_mem_generic_per_level: f64,
    /// Fraction of levels holding exactly two rows.
    pub two_row_fraction: f64,
    pub thin_levels: Vec<ThinLevelCount>,
    /// `(width, number of levels with that width)`, ascending width.
    pub width_histogram: Vec<(usize, usize)>,
    pub per_level: Vec<LevelStat>,
}

impl LevelStats {
    pub fn thin_count(&self, threshold: usize) -> usize {
        self.per_level
            .iter()
            .filter(|l| l.rows <= threshold)
            .count()
    }
}

/// Per-level and aggregate statistics of `sys` under `schedule`.
pub fn level_stats(schedule: &LevelSchedule, sys: &EquationSystem) -> Result<LevelStats> {
    if schedule.n() != sys.n() {
        return Err(Error::Consistency(format!(
            "schedule covers {} rows but the system has {}",
            schedule.n(),
            sys.n()
        )));
    }
    let per_level: Vec<LevelStat> = schedule
        .levels()
        .iter()
        .enumerate()
        .map(|(level, rows)| {
            let mut stat = LevelStat {
                level,
                rows: rows.len(),
                nonzeros: 0,
                flops: 0,
                mem_specialized: 0,
                mem_generic: 0,
            };
            for &r in rows {
                let eq = sys.equation(r);
                let (p, q) = (eq.b_terms.len(), eq.x_terms.len());
                stat.nonzeros += p + q;
                stat.flops += eq.flops();
                stat.mem_specialized += q + p + 1;
                // row_ptr pair, index/value per term, operand reads, one write
                stat.mem_generic += 2 * p.saturating_sub(1) + 2 * q + 2 + q + p + 1;
            }
            stat
        })
        .collect();

    let num_levels = per_level.len();
    let mut widths: Vec<usize> = per_level.iter().map(|l| l.rows).collect();
    widths.sort_unstable();
    let median = match num_levels {
        0 => 0.0,
        m if m % 2 == 1 => widths[m / 2] as f64,
        m => (widths[m / 2 - 1] + widths[m / 2]) as f64 / 2.0,
    };
    let mut histogram: Vec<(usize, usize)> = Vec::new();
    for w in widths {
        match histogram.last_mut() {
            Some((lw, c)) if *lw == w => *c += 1,
            _ => histogram.push((w, 1)),
        }
    }
    let frac = |count: usize| {
        if num_levels == 0 {
            0.0
        } else {
            count as f64 / num_levels as f64
        }
    };
    let per = |total: usize| {
        if num_levels == 0 {
            0.0
        } else {
            total as f64 / num_levels as f64
        }
    };

    let total_mem_specialized = per_level.iter().map(|l| l.mem_specialized).sum();
    let total_mem_generic = per_level.iter().map(|l| l.mem_generic).sum();
    let thin_levels = REPORTED_THIN_THRESHOLDS
        .iter()
        .map(|&threshold| {
            let levels = per_level.iter().filter(|l| l.rows <= threshold).count();
            ThinLevelCount {
                threshold,
                levels,
                fraction: frac(levels),
            }
        })
        .collect();

    Ok(LevelStats {
        n: sys.n(),
        num_levels,
        barriers: schedule.barriers(),
        total_nonzeros: per_level.iter().map(|l| l.nonzeros).sum(),
        total_flops: per_level.iter().map(|l| l.flops).sum(),
        total_mem_specialized,
        total_mem_generic,
        mean_rows_per_level: per(sys.n()),
        median_rows_per_level: median,
        max_rows_per_level: per_level.iter().map(|l| l.rows).max().unwrap_or(0),
        mean_mem_specialized_per_level: per(total_mem_specialized),
        mean_mem_generic_per_level: per(total_mem_generic),
        two_row_fraction: frac(per_level.iter().filter(|l| l.rows == 2).count()),
        thin_levels,
        width_histogram: histogram,
        per_level,
    })
}
