//! Seeded experiment runner producing [`Report`]s.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cartan_w::{CartanError, WittAlgebra, DEFAULT_CAP};
use crate::classical::ClassicalKind;
use crate::descriptor::{Built, Descriptor, DescriptorError};
use crate::exec::{map_range, Strategy};
use crate::field::{Field, FieldError};
use crate::gen::{
    graded_recipe_pair, obstruction_report, one_and_half_search, pair_count, strata_census, ClassicalLadder,
    GenError, SamplingPlan, SearchOutcome, SearchStrategy, Target, ZassenhausSearcher,
};
use crate::report::Report;
use crate::rng::{random_nonzero_vector, stream_rng};

pub const EXPERIMENTS: &[&str] = &["census", "theoremB", "graded-recipe", "zassenhaus-sweep", "obstruction", "one-and-half"];

pub const DEFAULT_BUDGET_PAIRS: u64 = 100_000_000;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("unknown experiment {0:?}; known: {1}")]
    UnknownExperiment(String, String),
    #[error("experiment {0} needs {1}, got {2}")]
    WrongAlgebra(String, &'static str, String),
    #[error("invalid configuration: {0}")]
    Invalid(String),
    #[error(transparent)]
    Descriptor(#[from] DescriptorError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    Gen(#[from] GenError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub algebra: String,
    pub p: u32,
    pub ext: u32,
    pub experiment: String,
    pub trials: u64,
    pub seed: u64,
    pub budget_pairs: u64,
    pub cap_dim: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            algebra: "A1".into(),
            p: 5,
            ext: 1,
            experiment: "census".into(),
            trials: 100,
            seed: 0,
            budget_pairs: DEFAULT_BUDGET_PAIRS,
            cap_dim: DEFAULT_CAP,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(Descriptor, Field), ConfigError> {
        if !EXPERIMENTS.contains(&self.experiment.as_str()) {
            return Err(ConfigError::UnknownExperiment(self.experiment.clone(), EXPERIMENTS.join(", ")));
        }
        if self.ext == 0 || self.budget_pairs == 0 || self.cap_dim == 0 {
            return Err(ConfigError::Invalid("ext, budget and cap must be positive".into()));
        }
        let d: Descriptor = self.algebra.parse()?;
        let field = Field::new(self.p, self.ext)?;
        Ok((d, field))
    }
}

/// Runs the configured experiment. Budget overruns become failing assertions.
pub fn run_experiment(cfg: &ExperimentConfig, strategy: Strategy) -> Result<Report, ConfigError> {
    let (d, field) = cfg.validate()?;
    let mut report = Report::new(d.to_string(), Some(field.spec().clone()), cfg.experiment.clone());
    report.param("p", cfg.p);
    report.param("ext", cfg.ext);
    report.param("trials", cfg.trials);
    report.param("seed", cfg.seed);
    report.param("budget_pairs", cfg.budget_pairs);
    report.param("cap_dim", cfg.cap_dim);
    let result = match cfg.experiment.as_str() {
        "census" => census(cfg, &d, &field, strategy, &mut report),
        "theoremB" => theorem_b(cfg, &d, strategy, &mut report),
        "graded-recipe" => graded(cfg, &d, &field, &mut report),
        "zassenhaus-sweep" => zassenhaus_sweep(cfg, &d, &field, strategy, &mut report),
        "obstruction" => obstruction(cfg, &d, &field, strategy, &mut report),
        "one-and-half" => one_and_half(cfg, &d, &field, strategy, &mut report),
        _ => unreachable!("validated"),
    };
    match result {
        Ok(()) => Ok(report),
        Err(ConfigError::Gen(GenError::BudgetExceeded(msg))) => {
            report.assert("budget", false, msg);
            Ok(report)
        }
        Err(e) => Err(e),
    }
}

fn witt(d: &Descriptor, field: &Field, cap: usize, exp: &str) -> Result<WittAlgebra, ConfigError> {
    match d.build(field, cap)? {
        Built::Witt(w) => Ok(w),
        _ => Err(ConfigError::WrongAlgebra(exp.into(), "a Witt or Zassenhaus algebra", d.to_string())),
    }
}

fn census(cfg: &ExperimentConfig, d: &Descriptor, field: &Field, strategy: Strategy, r: &mut Report) -> Result<(), ConfigError> {
    let built = d.build(field, cfg.cap_dim)?;
    let l = built.lie().ok_or_else(|| ConfigError::WrongAlgebra("census".into(), "a Lie algebra", d.to_string()))?;
    let exhaustive = pair_count(l).is_some_and(|t| t <= cfg.budget_pairs);
    let plan = if exhaustive {
        SamplingPlan::Exhaustive
    } else if cfg.trials == 0 {
        return Err(ConfigError::Invalid(format!("census of {} exceeds the pair budget and needs trials > 0", d)));
    } else {
        SamplingPlan::Random { seed: cfg.seed, count: cfg.trials }
    };
    let c = strata_census(l, &plan, cfg.budget_pairs, strategy)?;
    r.param("plan", &c.plan);
    r.histogram("closure_dim", c.histogram.iter().map(|(&k, &v)| (k, v)));
    let total: u64 = c.histogram.values().sum();
    r.assert("counts-sum", total == c.sample_size, format!("{} of {}", total, c.sample_size));
    let max = c.histogram.keys().max().copied().unwrap_or(0);
    r.assert("max-dim", max <= c.dim, format!("max {} vs dim {}", max, c.dim));
    r.assert("top-stratum-nonempty", c.count(c.dim) > 0, format!("{} pairs generate", c.count(c.dim)));
    Ok(())
}

fn theorem_b(cfg: &ExperimentConfig, d: &Descriptor, strategy: Strategy, r: &mut Report) -> Result<(), ConfigError> {
    let Descriptor::Classical(kind) = d else {
        return Err(ConfigError::WrongAlgebra("theoremB".into(), "a classical algebra", d.to_string()));
    };
    let base = Field::prime(cfg.p)?;
    let ladder = ClassicalLadder::new(kind, &base, cfg.ext.max(2))?;
    theorem_b_with(cfg, kind, &ladder, strategy, r)
}

fn theorem_b_with(
    cfg: &ExperimentConfig,
    kind: &ClassicalKind,
    ladder: &ClassicalLadder,
    strategy: Strategy,
    r: &mut Report,
) -> Result<(), ConfigError> {
    let g = &ladder.base;
    let results = map_range(strategy, cfg.trials as usize, |i| {
        let mut rng = stream_rng(cfg.seed, i as u64);
        let x = random_nonzero_vector(g.field(), g.dim(), &mut rng);
        ladder.partner(&x, cfg.seed, i as u64)
    });
    let mut ext_hist: BTreeMap<u32, u64> = BTreeMap::new();
    let mut failures = vec![];
    let mut replay_ok = true;
    for (i, res) in results.into_iter().enumerate() {
        match res {
            Ok((cert, j)) => {
                *ext_hist.entry(j).or_default() += 1;
                replay_ok &= cert.replay(&ladder.rung(j).expect("rung").base);
                r.certificates.push(cert.record());
            }
            Err(e) => failures.push(format!("trial {}: {}", i, e)),
        }
    }
    let max_ext = ext_hist.keys().max().copied().unwrap_or(0);
    r.histogram("extension_degree", ext_hist);
    r.assert(
        "certified",
        failures.is_empty(),
        format!("{}/{} x certified in {}; {}", r.certificates.len(), cfg.trials, kind, failures.join("; ")),
    );
    r.assert("replay", replay_ok, "closure dimensions reproduce");
    r.assert("max-extension", max_ext <= 2, format!("largest extension degree {}", max_ext));
    Ok(())
}

fn graded(cfg: &ExperimentConfig, d: &Descriptor, field: &Field, r: &mut Report) -> Result<(), ConfigError> {
    let w = witt(d, field, cfg.cap_dim, "graded-recipe")?;
    let runs = cfg.trials.clamp(1, 20);
    let mut logs = vec![];
    for i in 0..runs {
        let mut rng = stream_rng(cfg.seed, i);
        match graded_recipe_pair(&w, &mut rng) {
            Ok((cert, log)) => {
                r.assert(
                    format!("run-{}:closure", i),
                    cert.closure_dim == w.dim(),
                    format!("closure {} of {}", cert.closure_dim, w.dim()),
                );
                r.assert(format!("run-{}:checks", i), log.pass(w.dim()), "weights, separation, torus");
                let mut cert = cert;
                cert.seed = Some(cfg.seed);
                cert.stream = Some(i);
                r.certificates.push(cert.record());
                logs.push(log);
            }
            Err(e @ GenError::FieldTooSmall(_)) => {
                r.assert("field-degree", false, e.to_string());
                break;
            }
            Err(e) => r.assert(format!("run-{}:recipe", i), false, e.to_string()),
        }
    }
    r.datum("logs", logs);
    Ok(())
}

fn zassenhaus_sweep(
    cfg: &ExperimentConfig,
    d: &Descriptor,
    field: &Field,
    strategy: Strategy,
    r: &mut Report,
) -> Result<(), ConfigError> {
    let w = witt(d, field, cfg.cap_dim, "zassenhaus-sweep")?;
    if w.m() != 1 {
        return Err(ConfigError::WrongAlgebra("zassenhaus-sweep".into(), "one variable", d.to_string()));
    }
    let zs = ZassenhausSearcher::new(&w, 4)?;
    let q = field.size() as u64;
    let points = q.checked_pow(w.dim() as u32).map(|t| t - 1);
    let exhaustive = points.is_some_and(|t| t <= cfg.budget_pairs.min(1 << 20));
    let count = if exhaustive { points.unwrap() } else { cfg.trials };
    r.param("x_plan", if exhaustive { "exhaustive" } else { "random" });
    let xs = |i: u64| {
        if exhaustive {
            let mut idx = i + 1;
            (0..w.dim())
                .map(|_| {
                    let c = crate::field::Fe((idx % q) as u32);
                    idx /= q;
                    c
                })
                .collect::<Vec<_>>()
        } else {
            random_nonzero_vector(field, w.dim(), &mut stream_rng(cfg.seed, i))
        }
    };
    let results = map_range(strategy, count as usize, |i| zs.partner(&xs(i as u64)));
    let mut ext_hist: BTreeMap<u32, u64> = BTreeMap::new();
    let mut deg_hist: BTreeMap<String, u64> = BTreeMap::new();
    let mut failures = vec![];
    let mut claims = 0u64;
    for (i, res) in results.into_iter().enumerate() {
        match res {
            Ok(wit) => {
                *ext_hist.entry(wit.extension).or_default() += 1;
                let key = wit.det_degree.map_or("none".to_string(), |d| d.to_string());
                *deg_hist.entry(key).or_default() += 1;
                if !wit.claims_hold() {
                    claims += 1;
                }
                if !wit.certificate.generates(&zs.rung(wit.extension).expect("rung").base) {
                    failures.push(format!("x #{}: closure {}", i, wit.certificate.closure_dim));
                }
                let mut cert = wit.certificate;
                cert.seed = Some(cfg.seed);
                cert.stream = Some(i as u64);
                r.certificates.push(cert.record());
            }
            Err(e) => failures.push(format!("x #{}: {}", i, e)),
        }
    }
    let max_ext = ext_hist.keys().max().copied().unwrap_or(0);
    r.histogram("extension_degree", ext_hist);
    r.histogram("det_degree", deg_hist);
    failures.truncate(10);
    r.assert("all-partnered", failures.is_empty(), format!("{} x; {}", count, failures.join("; ")));
    r.assert("det-degree-and-leading-term", claims == 0, format!("{} deviations", claims));
    r.datum("max_extension", max_ext);
    Ok(())
}

fn obstruction(
    cfg: &ExperimentConfig,
    d: &Descriptor,
    field: &Field,
    strategy: Strategy,
    r: &mut Report,
) -> Result<(), ConfigError> {
    let w = witt(d, field, cfg.cap_dim, "obstruction")?;
    if w.m() < 2 {
        return Err(ConfigError::WrongAlgebra("obstruction".into(), "m >= 2", d.to_string()));
    }
    let mut summaries = vec![];
    let mut derived: BTreeMap<usize, u64> = BTreeMap::new();
    for (t, &u) in w.component(w.s).iter().enumerate() {
        let x = w.base.basis_vec(u);
        let rep = obstruction_report(&w, &x, cfg.trials, cfg.seed.wrapping_add(t as u64), strategy)?;
        for tr in &rep.trials {
            *derived.entry(tr.derived_dim).or_default() += 1;
        }
        let label = w.base.label(u);
        r.assert(format!("bound:{}", label), rep.bounded(), format!("max dim[L,L] {} <= {}", rep.max_derived, rep.bound));
        r.assert(format!("no-generation:{}", label), rep.none_generate(), format!("max closure {} < {}", rep.max_closure, rep.dim));
        if w.is_restricted_type() {
            r.assert(format!("structure:{}", label), rep.structure_ok(), "degree claims and k-branch");
        }
        r.assert(
            format!("y-zero:{}", label),
            rep.y_zero.closure_dim == 1 && rep.y_zero.derived_dim == 0,
            "L = span{x}",
        );
        summaries.push(serde_json::json!({
            "x": label,
            "bound": rep.bound,
            "max_derived": rep.max_derived,
            "max_closure": rep.max_closure,
            "derived_dims": rep.trials.iter().map(|t| t.derived_dim).collect::<Vec<_>>(),
        }));
    }
    r.histogram("derived_dim", derived);
    r.datum("per_x", summaries);
    Ok(())
}

fn one_and_half(
    cfg: &ExperimentConfig,
    d: &Descriptor,
    field: &Field,
    strategy: Strategy,
    r: &mut Report,
) -> Result<(), ConfigError> {
    let built = d.build(field, cfg.cap_dim)?;
    let mut outcomes = vec![];
    match &built {
        Built::Witt(w) if w.m() >= 2 => {
            let x = w.base.basis_vec(w.component(w.s)[0]);
            let coords: Vec<usize> = w.component(-1).into_iter().chain(w.component(0)).collect();
            let s = SearchStrategy::Exhaustive { coords, budget: cfg.budget_pairs };
            let out = one_and_half_search(Target::Plain(&w.base), &x, &s, strategy)?;
            let grid = match &out {
                SearchOutcome::NotFound { searched } => searched.clone(),
                SearchOutcome::Found(c) => format!("found closure {}", c.closure_dim),
            };
            r.assert("top-x-not-found", out.found().is_none(), format!("no witness: {}", grid));
            outcomes.push(grid);
        }
        Built::Witt(w) => {
            let zs = ZassenhausSearcher::new(w, 4)?;
            run_recipe(cfg, Target::Zassenhaus(&zs), strategy, r, &mut outcomes)?;
        }
        Built::Classical(_) => {
            let Descriptor::Classical(kind) = d else { unreachable!() };
            let ladder = ClassicalLadder::new(kind, field, 2)?;
            run_recipe(cfg, Target::Classical(&ladder), strategy, r, &mut outcomes)?;
        }
        Built::DividedPower(_) => {
            return Err(ConfigError::WrongAlgebra("one-and-half".into(), "a Lie algebra", d.to_string()))
        }
    }
    r.datum("outcomes", outcomes);
    Ok(())
}

fn run_recipe(
    cfg: &ExperimentConfig,
    target: Target,
    strategy: Strategy,
    r: &mut Report,
    outcomes: &mut Vec<String>,
) -> Result<(), ConfigError> {
    let l = target.algebra();
    let results = map_range(strategy, cfg.trials as usize, |i| {
        let x = random_nonzero_vector(l.field(), l.dim(), &mut stream_rng(cfg.seed, i as u64));
        one_and_half_search(target, &x, &SearchStrategy::Recipe { seed: cfg.seed }, Strategy::Sequential)
    });
    let mut found = 0;
    for res in results {
        match res? {
            SearchOutcome::Found(c) => {
                found += 1;
                r.certificates.push(c.record());
            }
            SearchOutcome::NotFound { searched } => outcomes.push(searched),
        }
    }
    r.assert("all-found", found == cfg.trials, format!("{}/{}", found, cfg.trials));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(algebra: &str, experiment: &str, trials: u64) -> ExperimentConfig {
        ExperimentConfig { algebra: algebra.into(), experiment: experiment.into(), trials, ..Default::default() }
    }

    #[test]
    fn experiments_pass_and_are_deterministic() {
        let cases = [
            cfg("A1", "census", 200),
            cfg("A2", "theoremB", 5),
            ExperimentConfig { ext: 2, ..cfg("W:2:1,1", "graded-recipe", 1) },
            cfg("Zass:1", "zassenhaus-sweep", 0),
            cfg("W:2:1,1", "obstruction", 3),
            cfg("W:1:1", "one-and-half", 5),
            cfg("W:2:1,1", "one-and-half", 1),
        ];
        for c in cases {
            let a = run_experiment(&c, Strategy::Parallel).unwrap();
            assert!(a.all_pass(), "{}: {:?}", c.experiment, a.failures());
            let b = run_experiment(&c, Strategy::Sequential).unwrap();
            assert_eq!(a.hash(), b.hash(), "{}", c.experiment);
        }
    }

    #[test]
    fn configuration_errors_and_budget() {
        assert!(matches!(run_experiment(&cfg("A1", "nope", 1), Strategy::Sequential), Err(ConfigError::UnknownExperiment(..))));
        assert!(matches!(run_experiment(&cfg("Q9", "census", 1), Strategy::Sequential), Err(ConfigError::Descriptor(_))));
        assert!(matches!(
            run_experiment(&cfg("W:1:1", "theoremB", 1), Strategy::Sequential),
            Err(ConfigError::WrongAlgebra(..))
        ));
        let c = ExperimentConfig { budget_pairs: 10, ..cfg("A1", "census", 100) };
        let r = run_experiment(&c, Strategy::Sequential).unwrap();
        assert!(!r.all_pass());
        assert_eq!(r.failures()[0].name, "budget");
    }
}
