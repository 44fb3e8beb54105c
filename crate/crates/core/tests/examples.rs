#![allow(dead_code)]

#[path = "../examples/analyze_levels.rs"]
mod analyze_levels;
#[path = "../examples/generate_c.rs"]
mod generate_c;
#[path = "../examples/rewrite_by_hand.rs"]
mod rewrite_by_hand;
#[path = "../examples/thin_level_pass.rs"]
mod thin_level_pass;
#[path = "../examples/verify_rewrite.rs"]
mod verify_rewrite;

#[test]
fn analyze_levels_runs() {
    analyze_levels::run_example(None).unwrap();
}

#[test]
fn rewrite_by_hand_runs() {
    rewrite_by_hand::run_example().unwrap();
}

#[test]
fn thin_level_pass_runs() {
    thin_level_pass::run_example().unwrap();
}

#[test]
fn verify_rewrite_runs() {
    verify_rewrite::run_example().unwrap();
}

#[test]
fn generate_c_runs() {
    generate_c::run_example(None).unwrap();
}
