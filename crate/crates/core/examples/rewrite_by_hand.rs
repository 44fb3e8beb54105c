//! Substitution on a four-row system, one step at a time.
//!
//! Row 3 reads rows 1 and 2, row 2 reads row 1, row 1 reads row 0, so the
//! plain schedule has four levels. Substituting the equations of rows 2, 1
//! and 0 into row 3 leaves it depending on `b` alone and it moves to level 0.

use std::error::Error;

use sptrsv_rewrite::{
    evaluate_equations, serial_sptrsv, substitute, CooEntry, Equation, EquationSystem,
    LevelSchedule, LowerTriangularSystem,
};

fn show(eq: &Equation) -> String {
    let b = eq.b_terms.iter().map(|(k, c)| format!("{c:+}·b{k}"));
    let x = eq.x_terms.iter().map(|(m, c)| format!("{c:+}·x{m}"));
    format!("x{} = {}", eq.row, b.chain(x).collect::<Vec<_>>().join(" "))
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let entries = [
        CooEntry::new(0, 0, 2.0),
        CooEntry::new(1, 0, 1.0),
        CooEntry::new(1, 1, 4.0),
        CooEntry::new(2, 1, -1.0),
        CooEntry::new(2, 2, 2.0),
        CooEntry::new(3, 1, 0.5),
        CooEntry::new(3, 2, 1.0),
        CooEntry::new(3, 3, 4.0),
    ];
    let l = LowerTriangularSystem::from_coo(4, &entries, false)?;
    let mut sys = EquationSystem::from_lower(&l);
    for eq in sys.equations() {
        println!("{}", show(eq));
    }
    println!(
        "levels: {:?}\n",
        LevelSchedule::from_equations(&sys).levels()
    );

    // always eliminate the deepest remaining dependency
    for j in [2, 1, 0] {
        substitute(&mut sys, 3, j)?;
        println!("substitute x{j}:  {}", show(sys.equation(3)));
    }

    let schedule = LevelSchedule::from_equations(&sys);
    println!("\nlevels: {:?}", schedule.levels());
    print!("{}", sys.provenance_trace());
    println!(
        "flops {} -> {}",
        EquationSystem::from_lower(&l).flop_count(),
        sys.flop_count()
    );

    let b = [1.0, 2.0, 3.0, 4.0];
    let want = serial_sptrsv(&l, &b)?;
    let got = evaluate_equations(&sys, &schedule, &b)?;
    println!("x = {:?} (forward substitution {:?})", got.x, want.x);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
