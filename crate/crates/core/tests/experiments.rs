use modlie::exec::Strategy;
use modlie::experiment::{run_experiment, ExperimentConfig};

fn run(algebra: &str, experiment: &str, p: u32, ext: u32, trials: u64, cap_dim: usize) {
    run_with_budget(algebra, experiment, p, ext, trials, cap_dim, 100_000_000);
}

fn run_with_budget(algebra: &str, experiment: &str, p: u32, ext: u32, trials: u64, cap_dim: usize, budget_pairs: u64) {
    let cfg = ExperimentConfig {
        algebra: algebra.into(),
        experiment: experiment.into(),
        p,
        ext,
        trials,
        seed: 9,
        cap_dim,
        budget_pairs,
    };
    let r = run_experiment(&cfg, Strategy::default()).unwrap();
    let bad: Vec<String> = r.failures().iter().map(|a| format!("{}: {}", a.name, a.detail)).collect();
    assert!(r.all_pass(), "{} {} at p = {}: {:?}", experiment, algebra, p, bad);
}

#[test]
fn graded_recipe_at_seven() {
    run("W:1:1", "graded-recipe", 7, 2, 3, 250);
    run("W:2:1,1", "graded-recipe", 7, 2, 3, 250);
}

#[test]
fn obstruction_in_three_variables() {
    run("W:3:1,1,1", "obstruction", 5, 1, 4, 375);
}

#[test]
fn one_and_half_recipes() {
    run("psl:5", "one-and-half", 5, 1, 10, 250);
    run("Zass:2", "one-and-half", 5, 1, 10, 250);
    run("W:2:1,2", "one-and-half", 5, 1, 1, 250);
}

#[test]
fn census_of_small_algebras() {
    run("A1", "census", 5, 1, 0, 250);
    // 5^10 pairs exceed this budget, so the census samples 2000
    run_with_budget("Zass:1", "census", 5, 1, 2000, 250, 1_000_000);
    run_with_budget("W:2:1,1", "census", 5, 1, 500, 250, 1_000_000);
}
