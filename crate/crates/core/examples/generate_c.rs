//! Emit a specialized C bundle and, when `cc` and `make` are available,
//! build and run it.
//!
//! ```text
//! cargo run --example generate_c [out-dir]
//! ```

use std::error::Error;
use std::path::PathBuf;
use std::process::Command;

use sptrsv_rewrite::codegen::{self, CodegenOptions};
use sptrsv_rewrite::{
    evaluate_equations, rewrite_thin_levels, CooEntry, EquationSystem, LevelSchedule,
    LowerTriangularSystem, ThinLevelOptions,
};

pub fn run_example(out_dir: Option<PathBuf>) -> Result<(), Box<dyn Error>> {
    // a chain of 40 rows with a shortcut every fifth row
    let n = 40;
    let mut entries: Vec<CooEntry> = (0..n)
        .map(|i| CooEntry::new(i, i, 2.0 + (i % 3) as f64))
        .collect();
    entries.extend((1..n).map(|i| CooEntry::new(i, i - 1, -1.0)));
    entries.extend((5..n).step_by(5).map(|i| CooEntry::new(i, i - 5, 0.25)));
    let l = LowerTriangularSystem::from_coo(n, &entries, false)?;

    let mut sys = EquationSystem::from_lower(&l);
    let mut schedule = LevelSchedule::from_equations(&sys);
    let opts = ThinLevelOptions {
        thin_threshold: 1,
        max_merge_span: 8,
        ..ThinLevelOptions::default()
    };
    let r = rewrite_thin_levels(&mut sys, &mut schedule, &opts)?;
    println!("levels {} -> {}", r.levels_before, r.levels_after);

    let plan = codegen::plan_codegen(
        &schedule,
        &sys,
        &CodegenOptions {
            parallel: true,
            ..CodegenOptions::default()
        },
    )?;
    let bundle = codegen::emit_bundle(&plan, &sys, &l, None)?;

    let scratch;
    let out = match out_dir {
        Some(dir) => dir,
        None => {
            scratch = tempfile::tempdir()?;
            scratch.path().join("bundle")
        }
    };
    bundle.write_to(&out, true)?;
    for f in &bundle.files {
        println!(
            "wrote {} ({} bytes)",
            out.join(&f.name).display(),
            f.contents.len()
        );
    }
    println!(
        "\n{}",
        bundle
            .file("kernels_0.c")
            .unwrap_or_default()
            .lines()
            .take(8)
            .collect::<Vec<_>>()
            .join("\n")
    );

    let b = vec![1.0; n];
    let built = Command::new("make").arg("-s").current_dir(&out).status();
    if !matches!(built, Ok(s) if s.success()) {
        println!("\n(no working C toolchain; skipping the build)");
        return Ok(());
    }
    codegen::write_rhs_file(&out.join("b.bin"), &b)?;
    let run = Command::new(out.join(codegen::BINARY_NAME))
        .arg("b.bin")
        .current_dir(&out)
        .output()?;
    print!("\n{}", String::from_utf8_lossy(&run.stdout));
    let x = evaluate_equations(&sys, &schedule, &b)?;
    println!("expected checksum={}", x.x.iter().sum::<f64>());
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example(std::env::args().nth(1).map(PathBuf::from))
}
