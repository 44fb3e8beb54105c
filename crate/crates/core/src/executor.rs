//! Reference solvers: CSR forward substitution and level-by-level
//! evaluation of an equation system. Both are single-threaded; they are the
//! oracles every transformation and every generated bundle is checked
//! against.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dag::LevelSchedule;
use crate::equation::EquationSystem;
use crate::error::{Error, Result};
use crate::matrix_io::LowerTriangularSystem;

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub x: Vec<f64>,
    /// `max |x[i]|`, used to scale relative errors.
    pub max_abs: f64,
}

impl SolveResult {
    pub fn new(x: Vec<f64>) -> Self {
        let max_abs = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        Self { x, max_abs }
    }
}

fn check_rhs(n: usize, b: &[f64]) -> Result<()> {
    if b.len() != n {
        return Err(Error::Consistency(format!(
            "right-hand side has {} entries, expected {n}",
            b.len()
        )));
    }
    Ok(())
}

/// `x[i] = (b[i] - Σ_{j<i} L[i][j]·x[j]) / L[i][i]`, rows ascending.
pub fn serial_sptrsv(l: &LowerTriangularSystem, b: &[f64]) -> Result<SolveResult> {
    check_rhs(l.n(), b)?;
    let mut x = vec![0.0; l.n()];
    for i in 0..l.n() {
        let (cols, vals) = l.off_diagonal(i);
        let mut sum = b[i];
        for (&j, &v) in cols.iter().zip(vals) {
            sum -= v * x[j];
        }
        x[i] = sum / l.diag()[i];
    }
    Ok(SolveResult::new(x))
}

/// Evaluate `sys` level by level following `schedule`.
pub fn evaluate_equations(
    sys: &EquationSystem,
    schedule: &LevelSchedule,
    b: &[f64],
) -> Result<SolveResult> {
    evaluate_levels(sys, schedule.level_of(), schedule.levels(), b)
}

/// Same as [`evaluate_equations`] with the level partition passed
/// explicitly, so callers may visit rows of a level in any order.
///
/// Every x-term must reference a row at a strictly lower level, otherwise
/// the within-level order would matter and the schedule is rejected.
pub fn evaluate_levels(
    sys: &EquationSystem,
    level_of: &[usize],
    levels: &[Vec<usize>],
    b: &[f64],
) -> Result<SolveResult> {
    check_rhs(sys.n(), b)?;
    if level_of.len() != sys.n() || levels.iter().map(Vec::len).sum::<usize>() != sys.n() {
        return Err(Error::Consistency(
            "schedule does not cover every row exactly once".into(),
        ));
    }
    let mut x = vec![0.0; sys.n()];
    for (level, rows) in levels.iter().enumerate() {
        for &r in rows {
            let eq = sys.equation(r);
            if level_of[r] != level {
                return Err(Error::Consistency(format!(
                    "row {r} listed in level {level} but assigned level {}",
                    level_of[r]
                )));
            }
            if let Some(dep) = eq.x_terms.indices().find(|&m| level_of[m] >= level) {
                return Err(Error::ScheduleViolation {
                    row: r,
                    level,
                    dep,
                    dep_level: level_of[dep],
                });
            }
            x[r] = eq.evaluate(&x, b);
        }
    }
    Ok(SolveResult::new(x))
}

/// `max_i |a_i - b_i| / max(1, ‖reference‖∞)` and the row where it occurs.
/// Non-finite values anywhere give an infinite error.
pub fn max_relative_error(candidate: &[f64], reference: &SolveResult) -> (f64, usize) {
    let scale = reference.max_abs.max(1.0);
    let mut worst = (0.0f64, 0usize);
    for (i, (a, r)) in candidate.iter().zip(&reference.x).enumerate() {
        let e = if a.is_finite() && r.is_finite() {
            (a - r).abs() / scale
        } else {
            f64::INFINITY
        };
        if e > worst.0 || (e.is_infinite() && !worst.0.is_infinite()) {
            worst = (e, i);
        }
    }
    worst
}

/// Right-hand sides with entries uniform in `[-1, 1]`.
pub fn random_rhs(n: usize, rng: &mut impl Rng) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub trials: usize,
    pub tolerance: f64,
    pub seed: u64,
    pub worst_error: f64,
    pub worst_row: usize,
    pub worst_trial: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

/// Compare `sys` (evaluated under `schedule`) against forward substitution
/// on `L` for `trials` seeded random right-hand sides.
pub fn verify_transform(
    l: &LowerTriangularSystem,
    sys: &EquationSystem,
    schedule: &LevelSchedule,
    trials: usize,
    tol: f64,
    seed: u64,
) -> Result<VerificationReport> {
    if trials == 0 {
        return Err(Error::Consistency("at least one trial is required".into()));
    }
    if l.n() != sys.n() {
        return Err(Error::Consistency(format!(
            "matrix has {} rows but the system has {}",
            l.n(),
            sys.n()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = VerificationReport {
        passed: true,
        trials,
        tolerance: tol,
        seed,
        worst_error: 0.0,
        worst_row: 0,
        worst_trial: 0,
        diagnostic: None,
    };
    for trial in 0..trials {
        let b = random_rhs(l.n(), &mut rng);
        let reference = serial_sptrsv(l, &b)?;
        let got = evaluate_equations(sys, schedule, &b)?;
        let (err, row) = max_relative_error(&got.x, &reference);
        if err > report.worst_error || (err.is_nan() && !report.worst_error.is_nan()) {
            report.worst_error = err;
            report.worst_row = row;
            report.worst_trial = trial;
        }
        if !err.is_finite() {
            report.passed = false;
            report.diagnostic = Some(format!(
                "non-finite value at row {row} in trial {trial} (reference {}, rewritten {})",
                reference.x[row], got.x[row]
            ));
            return Ok(report);
        }
    }
    report.passed = report.worst_error <= tol;
    if !report.passed {
        report.diagnostic = Some(format!(
            "error {:.3e} at row {} exceeds tolerance {tol:.1e}",
            report.worst_error, report.worst_row
        ));
    }
    Ok(report)
}
