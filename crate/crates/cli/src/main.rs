use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use modlie::cartan_w::DEFAULT_CAP;
use modlie::descriptor::Descriptor;
use modlie::exec::Strategy;
use modlie::experiment::{run_experiment, ExperimentConfig, DEFAULT_BUDGET_PAIRS};
use modlie::field::Field;
use modlie::report::Report;
use modlie::verify::{axioms, run_suite, Scope, Suite};

const EXIT_FAIL: u8 = 1;
const EXIT_CONFIG: u8 = 2;

#[derive(Parser)]
#[command(name = "modlie", version, about = "Generation experiments for modular Lie algebras")]
struct Cli {
    /// Run trials on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct an algebra, validate it and write its structure constants.
    Build {
        descriptor: String,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap_dim: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the axiom or lemma suites.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long)]
        lemma: Option<String>,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap_dim: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a generation experiment.
    #[command(alias = "experiment")]
    Gen(GenArgs),
}

#[derive(Args)]
struct FieldArgs {
    #[arg(long, default_value_t = 5)]
    p: u32,
    #[arg(long, default_value_t = 1)]
    ext: u32,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    algebra: String,
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long)]
    experiment: String,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_BUDGET_PAIRS)]
    budget_pairs: u64,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap_dim: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Axioms,
    PaperLemmas,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Axioms => Suite::Axioms,
            SuiteArg::PaperLemmas => Suite::PaperLemmas,
            SuiteArg::All => Suite::All,
        }
    }
}

fn config_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {}", msg);
    ExitCode::from(EXIT_CONFIG)
}

fn write_out(out: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, format!("{}\n", text)).map_err(|e| format!("{}: {}", path.display(), e)),
        None => {
            println!("{}", text);
            Ok(())
        }
    }
}

fn finish(report: &Report, out: &Option<PathBuf>) -> ExitCode {
    if let Err(e) = write_out(out, &report.to_json()) {
        return config_error(e);
    }
    for a in report.failures() {
        eprintln!("FAIL {}: {}", a.name, a.detail);
    }
    eprintln!(
        "{}: {}/{} assertions pass, hash {}",
        report.experiment,
        report.assertions.len() - report.failures().len(),
        report.assertions.len(),
        report.hash()
    );
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}

fn cmd_build(descriptor: &str, field: &FieldArgs, cap: usize, out: &Option<PathBuf>) -> ExitCode {
    let d: Descriptor = match descriptor.parse() {
        Ok(d) => d,
        Err(e) => return config_error(e),
    };
    let f = match Field::new(field.p, field.ext) {
        Ok(f) => f,
        Err(e) => return config_error(e),
    };
    let built = match d.build(&f, cap) {
        Ok(b) => b,
        Err(e) => return config_error(e),
    };
    let mut report = Report::new(d.to_string(), Some(f.spec().clone()), "build");
    if let Err(e) = axioms(&d, &f, cap, &mut report) {
        return config_error(e);
    }
    if !report.all_pass() {
        for a in report.failures() {
            eprintln!("FAIL {}: {}", a.name, a.detail);
        }
        return ExitCode::from(EXIT_FAIL);
    }
    if let Err(e) = write_out(out, &built.to_json()) {
        return config_error(e);
    }
    eprintln!("{} over {}: dim {}", d, f, built.dim());
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let strategy = if cli.sequential { Strategy::Sequential } else { Strategy::default() };
    match cli.command {
        Command::Build { descriptor, field, cap_dim, out } => cmd_build(&descriptor, &field, cap_dim, &out),
        Command::Verify { suite, algebra, lemma, field, samples, seed, cap_dim, out } => {
            let algebra = match algebra.map(|a| a.parse::<Descriptor>()).transpose() {
                Ok(a) => a,
                Err(e) => return config_error(e),
            };
            let scope = Scope { algebra, p: field.p, ext: field.ext, lemma, samples, seed, cap: cap_dim };
            match run_suite(suite.into(), &scope) {
                Ok(report) => finish(&report, &out),
                Err(e) => config_error(e),
            }
        }
        Command::Gen(g) => {
            let cfg = ExperimentConfig {
                algebra: g.algebra,
                p: g.field.p,
                ext: g.field.ext,
                experiment: g.experiment,
                trials: g.trials,
                seed: g.seed,
                budget_pairs: g.budget_pairs,
                cap_dim: g.cap_dim,
            };
            match run_experiment(&cfg, strategy) {
                Ok(report) => finish(&report, &g.out),
                Err(e) => config_error(e),
            }
        }
    }
}
