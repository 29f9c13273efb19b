//! Command-line front end: evaluate rules on constraint instances,
//! optimize scoring vectors, generate synthetic inputs, and run the
//! benchmark harness.
//!
//! Exit codes: 0 success, 2 invalid input (arguments or files),
//! 3 resource-cap or sampling refusal, 4 degenerate experiment.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use optpsr::approx::{best_approval, grid_search, GridSpec, DEFAULT_GRID_CAP};
use optpsr::exact::{
    optimize_exact_with, optimize_naive_with_cap, ExactOptions, DEFAULT_NAIVE_CAP,
};
use optpsr::experiment::{run_bench, sample_profile, ExperimentConfig, NoiseModel, Weighting};
use optpsr::formats::{
    format_percent, format_rational, parse_instance, parse_rational, parse_rule, parse_universe,
    parse_utilities, rule_spelling, serialize_instance, serialize_lin2, serialize_profile,
    serialize_report,
};
use optpsr::generators::{
    default_tight_parameters, make_tight_instance, random_lin2, reduce_3lin2,
    DEFAULT_BT_MAX_ATTEMPTS,
};
use optpsr::rules::{make_rule, unsatisfiable_constraints};
use optpsr::{gain, Error, Instance, Rat, Result, ScoringVector};

/// Environment variable overriding the exact optimizer's region cap.
const MAX_REGIONS_VAR: &str = "OPTPSR_MAX_REGIONS";

#[derive(Parser)]
#[command(
    name = "optpsr",
    about = "Optimize and evaluate positional scoring rules against weighted pairwise constraints",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one rule on an instance: exact gain and percentage.
    Eval {
        /// Instance file.
        instance: PathBuf,
        /// Rule spelling: borda | harmonic | approval:<t> | vector:<s1,s2,...>
        #[arg(long)]
        rule: String,
    },
    /// Find a gain-maximizing scoring vector.
    Opt {
        /// Instance file.
        instance: PathBuf,
        /// Optimization method.
        #[arg(long, value_enum)]
        method: Method,
        /// Grid resolution (grid method): a unit fraction such as 1/20.
        #[arg(long, default_value = "1/20")]
        step: String,
        /// Candidate cap for the grid method.
        #[arg(long, default_value_t = DEFAULT_GRID_CAP)]
        grid_cap: u64,
        /// Constraint-count cap for the naive method.
        #[arg(long, default_value_t = DEFAULT_NAIVE_CAP)]
        naive_cap: usize,
    },
    /// Generate instances and profiles.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Run the benchmark harness and report mean rule performance.
    Bench {
        /// Universe file: one alternative per line.
        #[arg(long)]
        universe: PathBuf,
        /// Utility file: `alternative utility` per line.
        #[arg(long)]
        utilities: PathBuf,
        /// Votes per repetition.
        #[arg(long)]
        agents: usize,
        /// Ranking length.
        #[arg(long)]
        d: usize,
        /// Noise model.
        #[arg(long, value_enum)]
        noise: Noise,
        /// Constraint weighting.
        #[arg(long, value_enum, default_value_t = WeightingArg::Unit)]
        weighting: WeightingArg,
        /// Rule to score (repeatable).
        #[arg(long = "rule", required = true)]
        rules: Vec<String>,
        /// Repetitions to average over.
        #[arg(long, default_value_t = 50)]
        reps: u64,
        /// Root seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Attempt budget per vote for the rejection sampler.
        #[arg(long, default_value_t = DEFAULT_BT_MAX_ATTEMPTS)]
        max_attempts: u32,
        /// Also write the report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// The worst-case family for approval rules: d constraints, each
    /// satisfied by exactly one approval threshold, all satisfiable at
    /// once.
    Tight {
        /// Ranking length (also the number of constraints).
        #[arg(long)]
        d: usize,
        /// Comma-separated slack parameters a_1,...,a_d (default: 2d each).
        #[arg(long)]
        a: Option<String>,
        /// Instance file to write.
        #[arg(long)]
        out: PathBuf,
    },
    /// A random parity system reduced to a constraint instance whose
    /// optimum encodes the maximum number of satisfiable equations.
    Lin2 {
        /// Number of Boolean variables (at least 3).
        #[arg(long)]
        n: usize,
        /// Number of equations.
        #[arg(long)]
        m: usize,
        /// Seed for drawing the system.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Instance file to write.
        #[arg(long)]
        out: PathBuf,
        /// Where to write the source equation system for audit
        /// (default: the instance path plus ".system").
        #[arg(long)]
        system_out: Option<PathBuf>,
    },
    /// A synthetic profile drawn by sequential proportional selection.
    Pl {
        /// Universe file: one alternative per line.
        #[arg(long)]
        universe: PathBuf,
        /// Utility file: `alternative utility` per line.
        #[arg(long)]
        utilities: PathBuf,
        /// Number of votes to draw.
        #[arg(long)]
        agents: usize,
        /// Ranking length.
        #[arg(long)]
        d: usize,
        /// Root seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Profile file to write.
        #[arg(long)]
        out: PathBuf,
    },
    /// A synthetic profile drawn by independent pairwise tosses with
    /// rejection.
    Bt {
        /// Universe file: one alternative per line.
        #[arg(long)]
        universe: PathBuf,
        /// Utility file: `alternative utility` per line.
        #[arg(long)]
        utilities: PathBuf,
        /// Number of votes to draw.
        #[arg(long)]
        agents: usize,
        /// Ranking length.
        #[arg(long)]
        d: usize,
        /// Root seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Attempt budget per vote.
        #[arg(long, default_value_t = DEFAULT_BT_MAX_ATTEMPTS)]
        max_attempts: u32,
        /// Profile file to write.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(ValueEnum, Clone, Copy)]
enum Method {
    Exact,
    Naive,
    Approval,
    Grid,
}

#[derive(ValueEnum, Clone, Copy)]
enum Noise {
    Pl,
    Bt,
}

#[derive(ValueEnum, Clone, Copy)]
enum WeightingArg {
    Unit,
    Difference,
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli.command) {
        eprintln!("error: {e}");
        std::process::exit(exit_code(&e));
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Validation(_) | Error::Parse { .. } | Error::Io(_) => 2,
        Error::CapExceeded(_) | Error::Sampling(_) => 3,
        Error::Degenerate(_) => 4,
        Error::Internal(_) => 1,
    }
}

/// Prefixes file-shaped errors with the path they came from.
fn annotate(path: &Path, e: Error) -> Error {
    let name = path.display();
    match e {
        Error::Parse {
            line,
            column,
            message,
        } => Error::Parse {
            line,
            column,
            message: format!("{name}: {message}"),
        },
        Error::Validation(m) => Error::Validation(format!("{name}: {m}")),
        Error::Io(io) => Error::Validation(format!("{name}: {io}")),
        other => other,
    }
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| annotate(path, Error::Io(e)))
}

fn load_instance(path: &Path) -> Result<Instance<Rat>> {
    parse_instance(&read_file(path)?).map_err(|e| annotate(path, e))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| annotate(path, Error::Io(e)))
}

fn percent_of_total(g: &Rat, instance: &Instance<Rat>) -> Rat {
    let total = instance.total_weight();
    if total == Rat::from_integer(0.into()) {
        Rat::from_integer(0.into())
    } else {
        Rat::from_integer(100.into()) * g / total
    }
}

fn print_vector_outcome(vector: &ScoringVector<Rat>, g: &Rat, instance: &Instance<Rat>) {
    let scores: Vec<String> = vector.scores().iter().map(format_rational).collect();
    println!("vector {}", scores.join(","));
    println!("gain {}", format_rational(g));
    println!("percent {}", format_percent(&percent_of_total(g, instance)));
}

fn note_unsatisfiable(instance: &Instance<Rat>) {
    let bad = unsatisfiable_constraints(instance);
    if !bad.is_empty() {
        let shown: Vec<String> = bad.iter().map(|i| (i + 1).to_string()).collect();
        eprintln!(
            "note: {} constraint(s) cannot be satisfied by any valid scoring vector: {}",
            bad.len(),
            shown.join(", ")
        );
    }
}

fn region_cap_from_env() -> Result<ExactOptions> {
    let mut options = ExactOptions::default();
    if let Ok(raw) = std::env::var(MAX_REGIONS_VAR) {
        options.region_cap = raw.parse().map_err(|_| {
            Error::Validation(format!(
                "{MAX_REGIONS_VAR} must be a positive integer, got `{raw}`"
            ))
        })?;
    }
    Ok(options)
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Eval { instance, rule } => {
            let instance = load_instance(&instance)?;
            let rule = parse_rule(&rule)?;
            let vector = make_rule(&rule, instance.d())?;
            let g = gain(&vector, &instance)?;
            println!("rule {}", rule_spelling(&rule));
            println!("gain {}", format_rational(&g));
            println!(
                "percent {}",
                format_percent(&percent_of_total(&g, &instance))
            );
            Ok(())
        }
        Command::Opt {
            instance,
            method,
            step,
            grid_cap,
            naive_cap,
        } => {
            let instance = load_instance(&instance)?;
            note_unsatisfiable(&instance);
            match method {
                Method::Exact => {
                    let options = region_cap_from_env()?;
                    let result = optimize_exact_with(&instance, &options)?;
                    println!("method exact");
                    print_vector_outcome(&result.best_vector, &result.best_gain, &instance);
                    println!("regions-explored {}", result.regions_explored);
                }
                Method::Naive => {
                    let result = optimize_naive_with_cap(&instance, naive_cap)?;
                    println!("method naive");
                    print_vector_outcome(&result.best_vector, &result.best_gain, &instance);
                    println!("candidates-checked {}", result.regions_explored);
                }
                Method::Approval => {
                    let report = best_approval(&instance);
                    println!("method approval");
                    for (i, g) in report.gains.iter().enumerate() {
                        println!("approval {} gain {}", i + 1, format_rational(g));
                    }
                    println!("best-t {}", report.best_t);
                    let vector = make_rule(
                        &optpsr::rules::NamedRule::Approval(report.best_t),
                        instance.d(),
                    )?;
                    print_vector_outcome(&vector, &report.best_gain, &instance);
                }
                Method::Grid => {
                    let step = parse_rational(&step)?;
                    let spec = GridSpec {
                        step: step.clone(),
                        max_candidates: grid_cap,
                    };
                    let (vector, g) = grid_search(&instance, &spec)?;
                    println!("method grid");
                    println!("step {}", format_rational(&step));
                    print_vector_outcome(&vector, &g, &instance);
                }
            }
            Ok(())
        }
        Command::Gen { kind } => run_gen(kind),
        Command::Bench {
            universe,
            utilities,
            agents,
            d,
            noise,
            weighting,
            rules,
            reps,
            seed,
            max_attempts,
            out,
        } => {
            let universe =
                parse_universe(&read_file(&universe)?).map_err(|e| annotate(&universe, e))?;
            let utilities =
                parse_utilities(&read_file(&utilities)?).map_err(|e| annotate(&utilities, e))?;
            let rules = rules
                .iter()
                .map(|s| parse_rule(s))
                .collect::<Result<Vec<_>>>()?;
            let noise = match noise {
                Noise::Pl => NoiseModel::PlackettLuce,
                Noise::Bt => NoiseModel::BradleyTerry,
            };
            let mut config = ExperimentConfig::new(universe, utilities, agents, d, noise);
            config.weighting = match weighting {
                WeightingArg::Unit => Weighting::Unit,
                WeightingArg::Difference => Weighting::Difference,
            };
            config.rules = rules;
            config.repetitions = reps;
            config.seed = seed;
            config.bt_max_attempts = max_attempts;
            let report = run_bench(&config)?;
            println!("repetitions {}", report.repetitions);
            println!("omitted-ties {}", report.omitted_ties);
            for row in &report.rows {
                println!(
                    "rule {} {}",
                    rule_spelling(&row.rule),
                    format_percent(&row.mean_percent)
                );
            }
            if let Some(out) = out {
                write_file(&out, &serialize_report(&report))?;
            }
            Ok(())
        }
    }
}

fn run_gen(kind: GenKind) -> Result<()> {
    match kind {
        GenKind::Tight { d, a, out } => {
            let a = match a {
                Some(raw) => raw
                    .split(',')
                    .map(|t| {
                        t.parse::<u64>().map_err(|_| {
                            Error::Validation(format!(
                                "slack parameters must be positive integers, got `{t}`"
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?,
                None => default_tight_parameters(d),
            };
            let instance = make_tight_instance(d, &a)?;
            write_file(&out, &serialize_instance(&instance))
        }
        GenKind::Lin2 {
            n,
            m,
            seed,
            out,
            system_out,
        } => {
            let system = random_lin2(n, m, seed)?;
            let instance = reduce_3lin2(&system)?;
            write_file(&out, &serialize_instance(&instance))?;
            let system_path = system_out.unwrap_or_else(|| {
                let mut os = out.into_os_string();
                os.push(".system");
                PathBuf::from(os)
            });
            write_file(&system_path, &serialize_lin2(&system))
        }
        GenKind::Pl {
            universe,
            utilities,
            agents,
            d,
            seed,
            out,
        } => {
            let universe =
                parse_universe(&read_file(&universe)?).map_err(|e| annotate(&universe, e))?;
            let utilities =
                parse_utilities(&read_file(&utilities)?).map_err(|e| annotate(&utilities, e))?;
            let profile = sample_profile(
                &universe,
                &utilities,
                agents,
                d,
                NoiseModel::PlackettLuce,
                DEFAULT_BT_MAX_ATTEMPTS,
                seed,
            )?;
            write_file(&out, &serialize_profile(&profile))
        }
        GenKind::Bt {
            universe,
            utilities,
            agents,
            d,
            seed,
            max_attempts,
            out,
        } => {
            let universe =
                parse_universe(&read_file(&universe)?).map_err(|e| annotate(&universe, e))?;
            let utilities =
                parse_utilities(&read_file(&utilities)?).map_err(|e| annotate(&utilities, e))?;
            let profile = sample_profile(
                &universe,
                &utilities,
                agents,
                d,
                NoiseModel::BradleyTerry,
                max_attempts,
                seed,
            )?;
            write_file(&out, &serialize_profile(&profile))
        }
    }
}
