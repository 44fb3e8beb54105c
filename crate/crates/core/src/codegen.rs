//! Matrix-specialized C source generation.
//!
//! Every row becomes one straight-line statement whose coefficients and
//! indices are literals, so the emitted solver performs no index-array or
//! matrix-value loads. Rows are grouped into one function per level, split
//! into several functions when a level holds more than `split_threshold`
//! rows. The driver calls the functions level by level, either sequentially
//! or as OpenMP tasks with a `taskwait` between levels.
//!
//! Bundle layout:
//!
//! ```text
//! kernels_0.c ...   level functions
//! driver.c          solve() + main(): timing, checksum, self-check
//! fallback.c        generic CSR solver over the embedded matrix
//! Makefile          `make` builds ./sptrsv_specialized
//! ```

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::dag::LevelSchedule;
use crate::equation::EquationSystem;
use crate::error::{Error, Result};
use crate::matrix_io::LowerTriangularSystem;

pub const DEFAULT_SPLIT_THRESHOLD: usize = 2048;
pub const DEFAULT_STATEMENT_CAP: usize = 2_000_000;
/// Upper bound on statements packed into one kernel file.
pub const STATEMENTS_PER_FILE: usize = 50_000;
pub const BINARY_NAME: &str = "sptrsv_specialized";
/// Relative error the driver's self-check tolerates.
pub const SELF_CHECK_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CodegenOptions {
    pub split_threshold: usize,
    /// Fold `Σ β·b` into one literal per row for a fixed right-hand side.
    pub embed_rhs: bool,
    pub parallel: bool,
    pub statement_cap: usize,
}

impl Default for CodegenOptions {
    fn default() -> Self {
        Self {
            split_threshold: DEFAULT_SPLIT_THRESHOLD,
            embed_rhs: false,
            parallel: false,
            statement_cap: DEFAULT_STATEMENT_CAP,
        }
    }
}

/// One generated function: a contiguous slice of one level's rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelFunction {
    pub name: String,
    pub level: usize,
    pub part: usize,
    /// Position range inside the level's ascending row list.
    pub start: usize,
    pub end: usize,
    #[serde(skip)]
    pub rows: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CodegenPlan {
    pub n: usize,
    pub options: CodegenOptions,
    pub num_levels: usize,
    pub functions: Vec<KernelFunction>,
}

impl CodegenPlan {
    pub fn statements(&self) -> usize {
        self.n
    }

    /// Functions of each level, in call order.
    pub fn by_level(&self) -> Vec<&[KernelFunction]> {
        let mut out = Vec::with_capacity(self.num_levels);
        let mut start = 0;
        while start < self.functions.len() {
            let level = self.functions[start].level;
            let end = start
                + self.functions[start..]
                    .iter()
                    .take_while(|f| f.level == level)
                    .count();
            out.push(&self.functions[start..end]);
            start = end;
        }
        out
    }
}

/// Partition every level into functions of at most `split_threshold` rows.
pub fn plan_codegen(
    schedule: &LevelSchedule,
    sys: &EquationSystem,
    options: &CodegenOptions,
) -> Result<CodegenPlan> {
    if options.split_threshold == 0 {
        return Err(Error::Consistency(
            "split threshold must be at least 1".into(),
        ));
    }
    if schedule.n() != sys.n() || sys.n() == 0 {
        return Err(Error::Consistency(format!(
            "cannot plan {} scheduled rows for a system of {}",
            schedule.n(),
            sys.n()
        )));
    }
    if sys.n() > options.statement_cap {
        return Err(Error::StatementCap {
            statements: sys.n(),
            cap: options.statement_cap,
        });
    }
    if let Some(eq) = sys.equations().iter().find(|eq| {
        eq.x_terms
            .iter()
            .chain(eq.b_terms.iter())
            .any(|(_, c)| !c.is_finite())
    }) {
        return Err(Error::Consistency(format!(
            "row {} has a non-finite coefficient",
            eq.row
        )));
    }

    let mut functions = Vec::new();
    for (level, rows) in schedule.levels().iter().enumerate() {
        for (part, chunk) in rows.chunks(options.split_threshold).enumerate() {
            let start = part * options.split_threshold;
            functions.push(KernelFunction {
                name: format!("level{level}_part{part}"),
                level,
                part,
                start,
                end: start + chunk.len(),
                rows: chunk.to_vec(),
            });
        }
    }
    Ok(CodegenPlan {
        n: sys.n(),
        options: options.clone(),
        num_levels: schedule.num_levels(),
        functions,
    })
}

/// Shortest decimal that reads back to the same `f64`; always carries a
/// `.` or an exponent so C parses it as a double.
pub fn c_literal(v: f64) -> String {
    format!("{v:?}")
}

/// The statement emitted for `row`.
///
/// With `rhs` the b-terms collapse into one constant, summed in ascending
/// index order.
pub fn render_statement(sys: &EquationSystem, row: usize, rhs: Option<&[f64]>) -> String {
    let eq = sys.equation(row);
    let mut terms: Vec<String> = Vec::with_capacity(eq.term_count());
    match rhs {
        None => terms.extend(
            eq.b_terms
                .iter()
                .map(|(k, c)| format!("{}*b[{k}]", c_literal(c))),
        ),
        Some(b) => {
            let folded = eq.b_terms.iter().fold(0.0, |acc, (k, c)| acc + c * b[k]);
            terms.push(c_literal(folded));
        }
    }
    terms.extend(
        eq.x_terms
            .iter()
            .map(|(m, c)| format!("{}*x[{m}]", c_literal(c))),
    );
    if terms.is_empty() {
        terms.push(c_literal(0.0));
    }
    format!("x[{row}] = {};", terms.join(" + "))
}

fn kernel_signature(name: &str, embed: bool) -> String {
    if embed {
        format!("void {name}(double *restrict x)")
    } else {
        format!("void {name}(double *restrict x, const double *restrict b)")
    }
}

const BANNER: &str = "/* Generated by sptrsv-rewrite. Do not edit. */\n";

/// Kernel files as `(file name, contents)`.
pub fn emit_kernels(
    plan: &CodegenPlan,
    sys: &EquationSystem,
    rhs: Option<&[f64]>,
) -> Result<Vec<(String, String)>> {
    let rhs = embedded_rhs(plan, rhs)?;
    let mut files = Vec::new();
    let mut text = String::new();
    let mut in_file = 0usize;
    for f in &plan.functions {
        if in_file > 0 && in_file + f.rows.len() > STATEMENTS_PER_FILE {
            files.push(std::mem::take(&mut text));
            in_file = 0;
        }
        if in_file == 0 {
            text.push_str(BANNER);
        }
        let _ = write!(text, "\n{}\n{{\n", kernel_signature(&f.name, rhs.is_some()));
        for &r in &f.rows {
            let _ = writeln!(text, "    {}", render_statement(sys, r, rhs));
        }
        text.push_str("}\n");
        in_file += f.rows.len();
    }
    if !text.is_empty() {
        files.push(text);
    }
    Ok(files
        .into_iter()
        .enumerate()
        .map(|(k, t)| (format!("kernels_{k}.c"), t))
        .collect())
}

fn embedded_rhs<'a>(plan: &CodegenPlan, rhs: Option<&'a [f64]>) -> Result<Option<&'a [f64]>> {
    match (plan.options.embed_rhs, rhs) {
        (false, _) => Ok(None),
        (true, Some(b)) if b.len() == plan.n => Ok(Some(b)),
        (true, Some(b)) => Err(Error::Consistency(format!(
            "embedded right-hand side has {} entries, expected {}",
            b.len(),
            plan.n
        ))),
        (true, None) => Err(Error::Consistency(
            "embed_rhs requires a right-hand side".into(),
        )),
    }
}

/// `driver.c`: prototypes, `solve()` and `main()`.
pub fn emit_driver(plan: &CodegenPlan) -> String {
    let embed = plan.options.embed_rhs;
    let args = if embed { "x" } else { "x, b" };
    let mut s = String::new();
    s.push_str(BANNER);
    s.push_str("#define _POSIX_C_SOURCE 199309L\n");
    s.push_str("#include <stdint.h>\n#include <stdio.h>\n#include <stdlib.h>\n#include <string.h>\n#include <time.h>\n\n");
    let _ = writeln!(s, "#define N {}\n", plan.n);
    for f in &plan.functions {
        let _ = writeln!(s, "{};", kernel_signature(&f.name, embed));
    }
    s.push_str("void sptrsv_fallback(const double *b, double *x);\n");
    if embed {
        s.push_str("extern const double sptrsv_rhs[N];\n");
    }

    if embed {
        s.push_str("\nstatic void solve(double *restrict x)\n{\n");
    } else {
        s.push_str("\nstatic void solve(double *restrict x, const double *restrict b)\n{\n");
    }
    let levels = plan.by_level();
    if plan.options.parallel {
        s.push_str("#pragma omp parallel\n#pragma omp single\n    {\n");
        for (l, funcs) in levels.iter().enumerate() {
            if l > 0 {
                s.push_str("#pragma omp taskwait\n");
            }
            let _ = writeln!(s, "        /* level {l} */");
            for f in funcs.iter() {
                let _ = writeln!(s, "#pragma omp task\n        {}({args});", f.name);
            }
        }
        s.push_str("    }\n");
    } else {
        for funcs in &levels {
            for f in funcs.iter() {
                let _ = writeln!(s, "    {}({args});", f.name);
            }
        }
    }
    s.push_str("}\n");

    s.push_str(DRIVER_CLOCK);
    if !embed {
        s.push_str(DRIVER_READ_RHS);
    }
    s.push_str("\nint main(int argc, char **argv)\n{\n");
    s.push_str("    double *b = malloc(N * sizeof *b);\n");
    s.push_str("    double *x = calloc(N, sizeof *x);\n");
    s.push_str("    double *ref = calloc(N, sizeof *ref);\n");
    s.push_str("    int reps = 1;\n");
    s.push_str("    if (!b || !x || !ref) {\n        fprintf(stderr, \"out of memory\\n\");\n        return 1;\n    }\n");
    if embed {
        s.push_str("    memcpy(b, sptrsv_rhs, N * sizeof *b);\n");
        s.push_str("    if (argc > 1)\n        reps = atoi(argv[1]);\n");
    } else {
        s.push_str("    if (argc < 2) {\n        fprintf(stderr, \"usage: %s <rhs.bin> [repetitions]\\n\", argv[0]);\n        return 1;\n    }\n");
        s.push_str("    if (read_rhs(argv[1], b) != 0)\n        return 1;\n");
        s.push_str("    if (argc > 2)\n        reps = atoi(argv[2]);\n");
    }
    s.push_str("    if (reps < 1)\n        reps = 1;\n\n");
    s.push_str("    double t0 = now_ms();\n");
    let _ = writeln!(
        s,
        "    for (int r = 0; r < reps; r++)\n        solve({args});"
    );
    s.push_str("    double elapsed = (now_ms() - t0) / reps;\n\n");
    s.push_str(DRIVER_CHECK);
    s.push_str("}\n");
    s
}

const DRIVER_CLOCK: &str = r#"
static double now_ms(void)
{
    struct timespec ts;
    clock_gettime(CLOCK_MONOTONIC, &ts);
    return (double)ts.tv_sec * 1e3 + (double)ts.tv_nsec / 1e6;
}
"#;

const DRIVER_READ_RHS: &str = r#"

/* n little-endian IEEE-754 doubles */
static int read_rhs(const char *path, double *b)
{
    FILE *f = fopen(path, "rb");
    if (!f) {
        perror(path);
        return -1;
    }
    for (long i = 0; i < N; i++) {
        unsigned char buf[8];
        uint64_t bits = 0;
        if (fread(buf, 1, 8, f) != 8) {
            fprintf(stderr, "%s: expected %ld values\n", path, (long)N);
            fclose(f);
            return -1;
        }
        for (int k = 7; k >= 0; k--)
            bits = (bits << 8) | buf[k];
        memcpy(&b[i], &bits, sizeof bits);
    }
    fclose(f);
    return 0;
}
"#;

const DRIVER_CHECK: &str = r#"    sptrsv_fallback(b, ref);
    double checksum = 0.0, scale = 1.0, err = 0.0;
    for (long i = 0; i < N; i++) {
        double a = ref[i] < 0 ? -ref[i] : ref[i];
        if (a > scale)
            scale = a;
        checksum += x[i];
    }
    for (long i = 0; i < N; i++) {
        double d = x[i] - ref[i];
        if (d < 0)
            d = -d;
        if (!(d <= err))
            err = d;
    }
    err /= scale;
    printf("checksum=%.17g\n", checksum);
    printf("time_ms=%.6f\n", elapsed);
    printf("selfcheck_max_rel_err=%.3e\n", err);
    free(b);
    free(x);
    free(ref);
    return err <= 1e-10 ? 0 : 2;
"#;

/// `fallback.c`: forward substitution over the embedded CSR arrays of `L`.
pub fn emit_fallback(l: &LowerTriangularSystem, rhs: Option<&[f64]>) -> String {
    let csr = l.matrix();
    let mut s = String::new();
    s.push_str(BANNER);
    let _ = writeln!(s, "#define N {}\n#define NNZ {}\n", l.n(), l.nnz());
    push_array(
        &mut s,
        "static const long row_ptr[N + 1]",
        csr.row_ptr().iter().map(|v| v.to_string()),
    );
    push_array(
        &mut s,
        "static const long col_idx[NNZ]",
        csr.col_idx().iter().map(|v| v.to_string()),
    );
    push_array(
        &mut s,
        "static const double val[NNZ]",
        csr.values().iter().map(|&v| c_literal(v)),
    );
    if let Some(b) = rhs {
        push_array(
            &mut s,
            "const double sptrsv_rhs[N]",
            b.iter().map(|&v| c_literal(v)),
        );
    }
    s.push_str(
        r#"
/* rows end with their diagonal entry */
void sptrsv_fallback(const double *b, double *x)
{
    for (long i = 0; i < N; i++) {
        double sum = b[i];
        long last = row_ptr[i + 1] - 1;
        for (long k = row_ptr[i]; k < last; k++)
            sum -= val[k] * x[col_idx[k]];
        x[i] = sum / val[last];
    }
}
"#,
    );
    s
}

fn push_array(out: &mut String, decl: &str, items: impl Iterator<Item = String>) {
    let _ = writeln!(out, "{decl} = {{");
    let items: Vec<String> = items.collect();
    for chunk in items.chunks(8) {
        let _ = writeln!(out, "    {},", chunk.join(", "));
    }
    out.push_str("};\n");
}

/// `Makefile` with default target `all`; `CC` and `CFLAGS` may be overridden.
pub fn emit_makefile(plan: &CodegenPlan, kernel_files: &[String]) -> String {
    let mut s = String::new();
    s.push_str("# Generated by sptrsv-rewrite. Do not edit.\n");
    s.push_str("CC ?= cc\nCFLAGS ?= -O2\n");
    if plan.options.parallel {
        s.push_str("OMPFLAGS = -fopenmp\n");
    } else {
        s.push_str("OMPFLAGS =\n");
    }
    let _ = writeln!(s, "SRCS = driver.c fallback.c {}", kernel_files.join(" "));
    let _ = write!(
        s,
        "\nall: {BINARY_NAME}\n\n{BINARY_NAME}: $(SRCS)\n\t$(CC) $(CFLAGS) $(OMPFLAGS) -o $@ $(SRCS) $(LDFLAGS)\n\nclean:\n\trm -f {BINARY_NAME}\n\n.PHONY: all clean\n"
    );
    s
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceFile {
    pub name: String,
    pub contents: String,
}

/// Everything needed to build the specialized solver with one `make`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceBundle {
    pub files: Vec<SourceFile>,
}

impl SourceBundle {
    pub fn file(&self, name: &str) -> Option<&str> {
        self.files
            .iter()
            .find(|f| f.name == name)
            .map(|f| f.contents.as_str())
    }

    pub fn kernel_files(&self) -> impl Iterator<Item = &SourceFile> {
        self.files.iter().filter(|f| f.name.starts_with("kernels_"))
    }

    /// Write all files into `dir`, creating it if needed. A non-empty
    /// directory is refused unless `overwrite` is set.
    pub fn write_to(&self, dir: &Path, overwrite: bool) -> Result<()> {
        if dir.exists() && !overwrite && fs::read_dir(dir)?.next().is_some() {
            return Err(Error::OutputExists(dir.to_path_buf()));
        }
        fs::create_dir_all(dir)?;
        for f in &self.files {
            let path = dir.join(&f.name);
            fs::write(&path, &f.contents).map_err(|e| Error::from(e).in_file(path))?;
        }
        Ok(())
    }
}

/// Kernels, driver, fallback and Makefile for one plan.
pub fn emit_bundle(
    plan: &CodegenPlan,
    sys: &EquationSystem,
    l: &LowerTriangularSystem,
    rhs: Option<&[f64]>,
) -> Result<SourceBundle> {
    if l.n() != plan.n {
        return Err(Error::Consistency(format!(
            "plan has {} rows but the matrix has {}",
            plan.n,
            l.n()
        )));
    }
    let kernels = emit_kernels(plan, sys, rhs)?;
    let rhs = embedded_rhs(plan, rhs)?;
    let names: Vec<String> = kernels.iter().map(|(n, _)| n.clone()).collect();
    let mut files: Vec<SourceFile> = kernels
        .into_iter()
        .map(|(name, contents)| SourceFile { name, contents })
        .collect();
    files.push(SourceFile {
        name: "driver.c".into(),
        contents: emit_driver(plan),
    });
    files.push(SourceFile {
        name: "fallback.c".into(),
        contents: emit_fallback(l, rhs),
    });
    files.push(SourceFile {
        name: "Makefile".into(),
        contents: emit_makefile(plan, &names),
    });
    Ok(SourceBundle { files })
}

/// Write `b` as the driver expects it: little-endian `f64`s, no header.
pub fn write_rhs_file(path: &Path, b: &[f64]) -> Result<()> {
    let mut f = std::io::BufWriter::new(fs::File::create(path)?);
    for v in b {
        f.write_all(&v.to_le_bytes())?;
    }
    f.flush()?;
    Ok(())
}

/// Read a right-hand side written by [`write_rhs_file`].
pub fn read_rhs_file(path: &Path, n: usize) -> Result<Vec<f64>> {
    let bytes = fs::read(path).map_err(|e| Error::from(e).in_file(path))?;
    if bytes.len() != 8 * n {
        return Err(Error::Consistency(format!(
            "{}: {} bytes, expected {} for {n} values",
            path.display(),
            bytes.len(),
            8 * n
        )));
    }
    Ok(bytes
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("8-byte chunk")))
        .collect())
}
