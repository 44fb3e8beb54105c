//! Pipeline commands behind the `sptrsv` binary: analyze, transform,
//! codegen and fetch. Each command returns a [`RunReport`]; the binary only
//! parses flags and prints.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::codegen::{self, CodegenOptions, KernelFunction};
use crate::dag::{level_stats, LevelSchedule, LevelStats};
use crate::equation::{csr_flop_count, EquationSystem};
use crate::error::{Error, Result};
use crate::executor::{verify_transform, VerificationReport};
use crate::matrix_io::{read_matrix_market, CsrMatrix, LowerTriangularSystem};
use crate::rewrite::{rewrite_rows, rewrite_thin_levels, ThinLevelOptions, TransformReport};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize)]
pub struct MatrixInfo {
    pub path: PathBuf,
    pub n: usize,
    /// Entries stored in the file after symmetric expansion.
    pub nnz: usize,
    /// Nonzeros after dropping explicit zeros.
    pub nnz_csr: usize,
    /// Nonzeros of the lower triangle, diagonal included.
    pub nnz_lower: usize,
    /// SHA-256 over the lower triangle's CSR arrays.
    pub hash: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CodegenSummary {
    pub out_dir: PathBuf,
    pub files: Vec<String>,
    pub functions: usize,
    pub levels: usize,
    pub barriers: usize,
    pub statements: usize,
    pub manifest: Vec<KernelFunction>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub tool_version: &'static str,
    pub command: &'static str,
    pub matrix: MatrixInfo,
    pub config: serde_json::Value,
    /// `2k+1` per row, the usual CSR count, for comparison.
    pub classic_flops: usize,
    pub stats_before: LevelStats,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats_after: Option<LevelStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transform: Option<TransformReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub codegen: Option<CodegenSummary>,
}

impl RunReport {
    /// False when verification ran and failed.
    pub fn success(&self) -> bool {
        self.verification.as_ref().is_none_or(|v| v.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let m = &self.matrix;
        let _ = writeln!(s, "sptrsv {} {}", self.tool_version, self.command);
        let _ = writeln!(s, "matrix      {}", m.path.display());
        let _ = writeln!(
            s,
            "n           {}\nnnz         {} (lower triangle {})",
            m.n, m.nnz, m.nnz_lower
        );
        write_stats(&mut s, "before", &self.stats_before);
        let _ = writeln!(s, "classic CSR flops {}", self.classic_flops);
        if let Some(after) = &self.stats_after {
            write_stats(&mut s, "after", after);
        }
        if let Some(t) = &self.transform {
            let _ = writeln!(
                s,
                "transform   levels {} -> {}, barriers {} -> {} ({:.1}% removed)",
                t.levels_before,
                t.levels_after,
                t.barriers_before,
                t.barriers_after,
                100.0 * t.barrier_reduction
            );
            let _ = writeln!(
                s,
                "            flops {} -> {} (x{:.3}), rows rewritten {}, over budget {}, substitutions {}, max terms {}",
                t.flops_before,
                t.flops_after,
                t.flop_ratio,
                t.rows_rewritten,
                t.rows_over_budget,
                t.substitutions_performed,
                t.max_terms_in_any_equation
            );
        }
        if let Some(v) = &self.verification {
            let _ = writeln!(
                s,
                "verify      {} ({} trials, worst error {:.3e} at row {}, tol {:.1e})",
                if v.passed { "PASS" } else { "FAIL" },
                v.trials,
                v.worst_error,
                v.worst_row,
                v.tolerance
            );
            if let Some(d) = &v.diagnostic {
                let _ = writeln!(s, "            {d}");
            }
        }
        if let Some(c) = &self.codegen {
            let _ = writeln!(
                s,
                "codegen     {} functions over {} levels ({} barriers), {} statements -> {}",
                c.functions,
                c.levels,
                c.barriers,
                c.statements,
                c.out_dir.display()
            );
            let _ = writeln!(s, "            files: {}", c.files.join(", "));
        }
        s
    }
}

fn write_stats(s: &mut String, label: &str, st: &LevelStats) {
    let _ = writeln!(
        s,
        "levels ({label}) {} (barriers {}), rows/level mean {:.2} median {:.1} max {}",
        st.num_levels,
        st.barriers,
        st.mean_rows_per_level,
        st.median_rows_per_level,
        st.max_rows_per_level
    );
    let thin: Vec<String> = st
        .thin_levels
        .iter()
        .map(|t| format!("<={}: {:.1}%", t.threshold, 100.0 * t.fraction))
        .collect();
    let _ = writeln!(
        s,
        "            thin levels {}; exactly 2 rows: {:.1}%",
        thin.join(", "),
        100.0 * st.two_row_fraction
    );
    let _ = writeln!(
        s,
        "            flops {}, memory accesses specialized {} / generic CSR {}",
        st.total_flops, st.total_mem_specialized, st.total_mem_generic
    );
    let hist: Vec<String> = st
        .width_histogram
        .iter()
        .take(12)
        .map(|(w, c)| format!("{w}x{c}"))
        .collect();
    let more = if st.width_histogram.len() > 12 {
        ", ..."
    } else {
        ""
    };
    let _ = writeln!(
        s,
        "            widths (width x levels): {}{more}",
        hist.join(", ")
    );
}

/// A matrix read from disk and reduced to its lower triangle.
pub struct LoadedMatrix {
    pub lower: LowerTriangularSystem,
    pub info: MatrixInfo,
}

pub fn load_matrix(path: &Path, unit_diagonal: bool) -> Result<LoadedMatrix> {
    let mm = read_matrix_market(path)?;
    let csr = CsrMatrix::from_coo(mm.n, &mm.entries).map_err(|e| e.in_file(path))?;
    let lower =
        LowerTriangularSystem::from_csr(&csr, unit_diagonal).map_err(|e| e.in_file(path))?;
    let info = MatrixInfo {
        path: path.to_path_buf(),
        n: mm.n,
        nnz: mm.entries.len(),
        nnz_csr: csr.nnz(),
        nnz_lower: lower.nnz(),
        hash: matrix_hash(&lower),
    };
    Ok(LoadedMatrix { lower, info })
}

fn matrix_hash(l: &LowerTriangularSystem) -> String {
    let mut h = Sha256::new();
    let csr = l.matrix();
    h.update((csr.n() as u64).to_le_bytes());
    for &p in csr.row_ptr() {
        h.update((p as u64).to_le_bytes());
    }
    for &c in csr.col_idx() {
        h.update((c as u64).to_le_bytes());
    }
    for &v in csr.values() {
        h.update(v.to_bits().to_le_bytes());
    }
    hex::encode(h.finalize())
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeConfig {
    pub matrix: PathBuf,
    pub unit_diagonal: bool,
}

pub fn analyze(cfg: &AnalyzeConfig) -> Result<RunReport> {
    let m = load_matrix(&cfg.matrix, cfg.unit_diagonal)?;
    let sys = EquationSystem::from_lower(&m.lower);
    let schedule = LevelSchedule::from_equations(&sys);
    Ok(RunReport {
        tool_version: TOOL_VERSION,
        command: "analyze",
        classic_flops: csr_flop_count(&m.lower),
        stats_before: level_stats(&schedule, &sys)?,
        matrix: m.info,
        config: serde_json::to_value(cfg).expect("config serializes"),
        stats_after: None,
        transform: None,
        verification: None,
        codegen: None,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct TransformConfig {
    pub matrix: PathBuf,
    pub unit_diagonal: bool,
    pub thin: ThinLevelOptions,
    /// Elevate exactly these rows instead of running the thin-level pass.
    pub rows: Option<Vec<usize>>,
    /// Skip rewriting entirely (verification still runs).
    pub no_rewrite: bool,
    pub trials: usize,
    pub tol: f64,
    pub seed: u64,
}

impl TransformConfig {
    pub fn new(matrix: impl Into<PathBuf>) -> Self {
        Self {
            matrix: matrix.into(),
            unit_diagonal: false,
            thin: ThinLevelOptions::default(),
            rows: None,
            no_rewrite: false,
            trials: 10,
            tol: 1e-10,
            seed: 0,
        }
    }
}

struct Transformed {
    matrix: LoadedMatrix,
    sys: EquationSystem,
    schedule: LevelSchedule,
    report: RunReport,
}

fn run_transform(cfg: &TransformConfig, command: &'static str) -> Result<Transformed> {
    let matrix = load_matrix(&cfg.matrix, cfg.unit_diagonal)?;
    let mut sys = EquationSystem::from_lower(&matrix.lower);
    let mut schedule = LevelSchedule::from_equations(&sys);
    let stats_before = level_stats(&schedule, &sys)?;

    let transform = if cfg.no_rewrite {
        None
    } else if let Some(rows) = &cfg.rows {
        Some(rewrite_rows(
            &mut sys,
            &mut schedule,
            rows,
            cfg.thin.fill_budget,
        )?)
    } else {
        Some(rewrite_thin_levels(&mut sys, &mut schedule, &cfg.thin)?)
    };
    let stats_after = level_stats(&schedule, &sys)?;
    let verification = verify_transform(
        &matrix.lower,
        &sys,
        &schedule,
        cfg.trials,
        cfg.tol,
        cfg.seed,
    )?;

    let report = RunReport {
        tool_version: TOOL_VERSION,
        command,
        matrix: matrix.info.clone(),
        config: serde_json::Value::Null,
        classic_flops: csr_flop_count(&matrix.lower),
        stats_before,
        stats_after: Some(stats_after),
        transform,
        verification: Some(verification),
        codegen: None,
    };
    Ok(Transformed {
        matrix,
        sys,
        schedule,
        report,
    })
}

/// Rewrite, verify and report. A failed verification is returned as a
/// report with [`RunReport::success`] false.
pub fn transform(cfg: &TransformConfig) -> Result<RunReport> {
    let mut t = run_transform(cfg, "transform")?;
    t.report.config = serde_json::to_value(cfg).expect("config serializes");
    Ok(t.report)
}

#[derive(Debug, Clone, Serialize)]
pub struct CodegenConfig {
    pub transform: TransformConfig,
    pub codegen: CodegenOptions,
    pub out: PathBuf,
    pub overwrite: bool,
    /// Right-hand side for `embed_rhs`; all ones when absent.
    pub rhs: Option<PathBuf>,
}

/// Transform (unless disabled), verify, then emit the bundle into `out`.
/// Nothing is written when verification fails.
pub fn codegen(cfg: &CodegenConfig) -> Result<RunReport> {
    let mut t = run_transform(&cfg.transform, "codegen")?;
    t.report.config = serde_json::to_value(cfg).expect("config serializes");
    if !t.report.success() {
        return Ok(t.report);
    }

    let rhs = if cfg.codegen.embed_rhs {
        Some(match &cfg.rhs {
            Some(path) => codegen::read_rhs_file(path, t.sys.n())?,
            None => vec![1.0; t.sys.n()],
        })
    } else {
        None
    };
    let plan = codegen::plan_codegen(&t.schedule, &t.sys, &cfg.codegen)?;
    let bundle = codegen::emit_bundle(&plan, &t.sys, &t.matrix.lower, rhs.as_deref())?;
    bundle.write_to(&cfg.out, cfg.overwrite)?;

    t.report.codegen = Some(CodegenSummary {
        out_dir: cfg.out.clone(),
        files: bundle.files.iter().map(|f| f.name.clone()).collect(),
        functions: plan.functions.len(),
        levels: plan.num_levels,
        barriers: plan.num_levels.saturating_sub(1),
        statements: plan.statements(),
        manifest: plan.functions,
    });
    Ok(t.report)
}

/// Matrices `fetch` knows by bare name: (name, SuiteSparse group, rows).
pub const KNOWN_MATRICES: &[(&str, &str, usize)] = &[("lung2", "Norris", 109_460)];

pub const SUITESPARSE_MM_URL: &str = "https://sparse.tamu.edu/MM";

/// Cache root: `$SPTRSV_CACHE`, else `$HOME/.cache/sptrsv-rewrite`.
pub fn default_cache_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os("SPTRSV_CACHE") {
        return PathBuf::from(dir);
    }
    let home = std::env::var_os("HOME").map_or_else(|| PathBuf::from("."), PathBuf::from);
    home.join(".cache").join("sptrsv-rewrite")
}

/// Resolve `name` or `Group/name` to `(group, name)`.
pub fn resolve_matrix_name(query: &str) -> Result<(String, String)> {
    if let Some((group, name)) = query.split_once('/') {
        if !group.is_empty() && !name.is_empty() && !name.contains('/') {
            return Ok((group.to_string(), name.to_string()));
        }
    }
    KNOWN_MATRICES
        .iter()
        .find(|(n, _, _)| *n == query)
        .map(|(n, g, _)| (g.to_string(), n.to_string()))
        .ok_or_else(|| {
            Error::Fetch(format!(
                "unknown matrix '{query}'; pass it as Group/Name (would try {SUITESPARSE_MM_URL}/<Group>/{query}.tar.gz)"
            ))
        })
}

/// Where `fetch` stores (or finds) the `.mtx` for `Group/name`.
pub fn cached_matrix_path(cache: &Path, group: &str, name: &str) -> PathBuf {
    cache.join(group).join(name).join(format!("{name}.mtx"))
}

/// Download `Group/name` from the SuiteSparse collection into `cache`,
/// returning the cached path without touching the network on a hit.
pub fn fetch(query: &str, cache: &Path) -> Result<PathBuf> {
    let (group, name) = resolve_matrix_name(query)?;
    let path = cached_matrix_path(cache, &group, &name);
    if path.is_file() {
        return Ok(path);
    }
    let url = format!("{SUITESPARSE_MM_URL}/{group}/{name}.tar.gz");
    download(&url, &name, &path)?;

    let mm = read_matrix_market(&path)?;
    if let Some((_, _, rows)) = KNOWN_MATRICES
        .iter()
        .find(|(n, g, _)| *n == name && *g == group)
    {
        if mm.n != *rows {
            let _ = std::fs::remove_file(&path);
            return Err(Error::Fetch(format!(
                "{url}: expected {rows} rows, archive holds {}",
                mm.n
            )));
        }
    }
    Ok(path)
}

#[cfg(feature = "fetch")]
fn download(url: &str, name: &str, dest: &Path) -> Result<()> {
    use std::io::Read;

    let response = ureq::get(url).call().map_err(|e| match e {
        ureq::Error::StatusCode(404) => Error::Fetch(format!("not found: {url}")),
        other => Error::Fetch(format!("{url}: {other}")),
    })?;
    let mut archive = Vec::new();
    response
        .into_body()
        .into_reader()
        .read_to_end(&mut archive)
        .map_err(|e| Error::Fetch(format!("{url}: {e}")))?;

    let wanted = format!("{name}/{name}.mtx");
    let mut tar = tar::Archive::new(flate2::read::GzDecoder::new(&archive[..]));
    let parent = dest.parent().expect("cache path has a parent");
    std::fs::create_dir_all(parent)?;
    for entry in tar.entries()? {
        let mut entry = entry?;
        if entry.path()?.to_string_lossy() == wanted {
            let partial = dest.with_extension("mtx.part");
            entry.unpack(&partial)?;
            std::fs::rename(&partial, dest)?;
            return Ok(());
        }
    }
    Err(Error::Fetch(format!("{url}: archive has no {wanted}")))
}

#[cfg(not(feature = "fetch"))]
fn download(url: &str, _name: &str, _dest: &Path) -> Result<()> {
    Err(Error::Fetch(format!(
        "built without the `fetch` feature; download {url} manually"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_resolve() {
        assert_eq!(
            resolve_matrix_name("lung2").unwrap(),
            ("Norris".to_string(), "lung2".to_string())
        );
        assert_eq!(
            resolve_matrix_name("HB/bcsstk01").unwrap(),
            ("HB".to_string(), "bcsstk01".to_string())
        );
        let err = resolve_matrix_name("nosuchmatrix").unwrap_err().to_string();
        assert!(err.contains("https://sparse.tamu.edu/MM/"), "{err}");
    }

    #[test]
    fn cache_hit_needs_no_network() {
        let dir = tempfile::tempdir().unwrap();
        let path = cached_matrix_path(dir.path(), "Test", "tiny");
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(
            &path,
            "%%MatrixMarket matrix coordinate real general\n1 1 1\n1 1 1.0\n",
        )
        .unwrap();
        assert_eq!(fetch("Test/tiny", dir.path()).unwrap(), path);
    }
}
