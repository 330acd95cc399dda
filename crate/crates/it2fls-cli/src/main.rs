//! Command-line front end for the `it2fls` inference library.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use it2fls::{
    corner_oracle, coverage_report, eiasc, param_count, surface_slice, FiringInterval, FuzzySystem,
    Reducer, SurfaceSample, ValueInterval,
};
use it2fls_cli::dataset::load_dataset;
use it2fls_cli::format::{from_system, parse_system};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

const DEMO_T1: &str = include_str!("../fixtures/demo_t1.json");
const DEMO_IT2: &str = include_str!("../fixtures/demo_it2.json");

#[derive(Parser)]
#[command(
    name = "it2fls",
    version,
    about = "Type-1 and interval type-2 fuzzy inference from the command line"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a system at one input vector.
    Eval {
        /// JSON system definition file.
        #[arg(long)]
        system: PathBuf,
        /// Comma-separated input values, e.g. --input="-0.2,-0.3".
        #[arg(long, allow_hyphen_values = true)]
        input: String,
        /// Override the file's type reducer.
        #[arg(long, value_enum)]
        reducer: Option<ReducerChoice>,
        /// Lower-bound weight for the bmm reducer.
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        /// Upper-bound weight for the bmm reducer.
        #[arg(long, default_value_t = 0.5)]
        beta: f64,
        /// Decimal places in printed numbers.
        #[arg(long, default_value_t = 4)]
        precision: usize,
    },
    /// Sample the output surface onto a CSV grid.
    Surface {
        #[arg(long)]
        system: PathBuf,
        /// Grid points per swept axis.
        #[arg(long, default_value_t = 101)]
        resolution: usize,
        /// Output CSV path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Flag |Δy| above this as jump candidates (default: 10x the median).
        #[arg(long)]
        jump_threshold: Option<f64>,
        /// Input indices to sweep, e.g. --axes=0,2 (defaults to all inputs).
        #[arg(long)]
        axes: Option<String>,
        /// Values for the inputs that are held fixed (defaults to domain midpoints).
        #[arg(long, allow_hyphen_values = true)]
        fix: Option<String>,
        #[arg(long, default_value_t = 4)]
        precision: usize,
    },
    /// Report input-space coverage and the predicted continuity class.
    Coverage {
        #[arg(long)]
        system: PathBuf,
        /// Sample points per axis.
        #[arg(long, default_value_t = 1001)]
        resolution: usize,
        #[arg(long, default_value_t = 4)]
        precision: usize,
    },
    /// Count tunable parameters and classify the system form.
    Params {
        #[arg(long)]
        system: PathBuf,
    },
    /// Fit a system to a CSV dataset with the two-step tuning recipe.
    Optimize {
        /// CSV dataset: feature columns then one target column.
        #[arg(long)]
        data: PathBuf,
        /// Treat the first CSV line as a header.
        #[arg(long)]
        header: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        generations: usize,
        #[arg(long, default_value_t = 30)]
        population: usize,
        /// Membership functions per input: one value or a comma list.
        #[arg(long, default_value = "3")]
        mf_count: String,
        /// Consequent shape for the fitted rules.
        #[arg(long, value_enum, default_value_t = ConsequentChoice::Constant)]
        consequent: ConsequentChoice,
        /// Reducer for the interval step.
        #[arg(long, value_enum)]
        reducer: Option<ReducerChoice>,
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        #[arg(long, default_value_t = 0.5)]
        beta: f64,
        /// Also run the seeded interval step after the type-1 fit.
        #[arg(long)]
        two_step: bool,
        /// Write the fitted type-1 system here.
        #[arg(long)]
        out_t1: Option<PathBuf>,
        /// Write the fitted interval system here (needs --two-step).
        #[arg(long)]
        out_it2: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        precision: usize,
    },
    /// Time the switch-point reducer against the exhaustive corner oracle.
    Bench {
        /// Rules per random instance (the oracle caps at 20).
        #[arg(long, default_value_t = 8)]
        rules: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the bundled two-input demo and verify its published values.
    Demo {
        #[arg(long, default_value_t = 4)]
        precision: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReducerChoice {
    /// Switch-point center-of-sets reduction.
    #[value(alias = "eiasc_cos")]
    Eiasc,
    /// Nie-Tan direct defuzzifier.
    Nt,
    /// Weighted-bound (BMM) direct defuzzifier.
    Bmm,
    /// Type-1 weighted average (type-1 systems only).
    #[value(alias = "t1_weighted_average")]
    T1,
}

impl ReducerChoice {
    fn to_reducer(self, alpha: f64, beta: f64) -> Reducer {
        match self {
            ReducerChoice::Eiasc => Reducer::EiascCenterOfSets,
            ReducerChoice::Nt => Reducer::NieTan,
            ReducerChoice::Bmm => Reducer::Bmm { alpha, beta },
            ReducerChoice::T1 => Reducer::T1WeightedAverage,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConsequentChoice {
    Constant,
    Linear,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Evaluation(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Evaluation(_) => 3,
        }
    }
}

/// Map a library error onto the exit-code taxonomy: bad arguments are usage
/// errors, an unevaluable system is a validation error, runtime failures are
/// evaluation errors.
fn engine_error(error: it2fls::Error) -> CliError {
    match &error {
        it2fls::Error::InvalidSystem(_) => CliError::Validation(error.to_string()),
        it2fls::Error::BadRequest(_)
        | it2fls::Error::DimensionMismatch { .. }
        | it2fls::Error::NonFinite { .. }
        | it2fls::Error::TooManyRules { .. } => CliError::Usage(error.to_string()),
        _ => CliError::Evaluation(error.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(error) => {
            use clap::error::ErrorKind;
            let code = match error.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = error.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(error.exit_code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Eval {
            system,
            input,
            reducer,
            alpha,
            beta,
            precision,
        } => run_eval(&system, &input, reducer, alpha, beta, precision),
        Command::Surface {
            system,
            resolution,
            out,
            jump_threshold,
            axes,
            fix,
            precision,
        } => run_surface(
            &system,
            resolution,
            out.as_deref(),
            jump_threshold,
            axes.as_deref(),
            fix.as_deref(),
            precision,
        ),
        Command::Coverage {
            system,
            resolution,
            precision,
        } => run_coverage(&system, resolution, precision),
        Command::Params { system } => run_params(&system),
        Command::Optimize {
            data,
            header,
            seed,
            generations,
            population,
            mf_count,
            consequent,
            reducer,
            alpha,
            beta,
            two_step,
            out_t1,
            out_it2,
            precision,
        } => run_optimize(OptimizeArgs {
            data,
            header,
            seed,
            generations,
            population,
            mf_count,
            consequent,
            reducer,
            alpha,
            beta,
            two_step,
            out_t1,
            out_it2,
            precision,
        }),
        Command::Bench {
            rules,
            trials,
            seed,
        } => run_bench(rules, trials, seed),
        Command::Demo { precision } => run_demo(precision),
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|error| CliError::Usage(format!("cannot read {}: {error}", path.display())))
}

fn load_system(path: &Path) -> Result<FuzzySystem, CliError> {
    let text = read_file(path)?;
    parse_system(&text).map_err(|error| CliError::Validation(error.to_string()))
}

fn parse_vector(text: &str, what: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(str::trim)
        .map(|field| {
            field
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("{what}: invalid number '{field}'")))
        })
        .collect()
}

fn run_eval(
    path: &Path,
    input: &str,
    reducer: Option<ReducerChoice>,
    alpha: f64,
    beta: f64,
    precision: usize,
) -> Result<(), CliError> {
    let mut system = load_system(path)?;
    let x = parse_vector(input, "--input")?;
    if let Some(choice) = reducer {
        system.reducer = choice.to_reducer(alpha, beta);
    }
    let out = system.evaluate(&x).map_err(engine_error)?;
    if out.switch_points.is_some() {
        println!(
            "y_l={:.p$} y_r={:.p$} y={:.p$}",
            out.y_l,
            out.y_r,
            out.y,
            p = precision
        );
    } else {
        println!("{:.p$}", out.y, p = precision);
    }
    Ok(())
}

fn parse_axes(text: &str) -> Result<(usize, Option<usize>), CliError> {
    let indices: Vec<usize> = text
        .split(',')
        .map(str::trim)
        .map(|field| {
            field
                .parse::<usize>()
                .map_err(|_| CliError::Usage(format!("--axes: invalid index '{field}'")))
        })
        .collect::<Result<_, _>>()?;
    match indices.as_slice() {
        [x] => Ok((*x, None)),
        [x, y] => Ok((*x, Some(*y))),
        _ => Err(CliError::Usage(
            "--axes takes one or two comma-separated input indices".into(),
        )),
    }
}

fn write_surface_csv(
    writer: &mut dyn Write,
    surface: &SurfaceSample,
    precision: usize,
) -> std::io::Result<()> {
    if surface.axes.len() == 1 {
        writeln!(writer, "x1,y")?;
        for (row, x) in surface.axes[0].iter().enumerate() {
            match surface.output_at(row, 0) {
                Some(y) => writeln!(writer, "{x:.p$},{y:.p$}", p = precision)?,
                None => writeln!(writer, "{x:.p$},", p = precision)?,
            }
        }
    } else {
        writeln!(writer, "x1,x2,y")?;
        for (row, x1) in surface.axes[0].iter().enumerate() {
            for (column, x2) in surface.axes[1].iter().enumerate() {
                match surface.output_at(row, column) {
                    Some(y) => writeln!(writer, "{x1:.p$},{x2:.p$},{y:.p$}", p = precision)?,
                    None => writeln!(writer, "{x1:.p$},{x2:.p$},", p = precision)?,
                }
            }
        }
    }
    Ok(())
}

fn run_surface(
    path: &Path,
    resolution: usize,
    out: Option<&Path>,
    jump_threshold: Option<f64>,
    axes: Option<&str>,
    fix: Option<&str>,
    precision: usize,
) -> Result<(), CliError> {
    let system = load_system(path)?;
    let p = system.num_inputs();

    let (axis_x, axis_y) = match axes {
        Some(text) => parse_axes(text)?,
        None => match p {
            1 => (0, None),
            2 => (0, Some(1)),
            _ => {
                return Err(CliError::Usage(format!(
                    "system has {p} inputs; pick one or two to sweep with --axes \
                     and hold the rest with --fix"
                )))
            }
        },
    };

    let base = match fix {
        Some(text) => {
            let values = parse_vector(text, "--fix")?;
            if values.len() != p {
                return Err(CliError::Usage(format!(
                    "--fix needs {p} values (one per input), got {}",
                    values.len()
                )));
            }
            values
        }
        None => system.inputs.iter().map(|d| (d.lo + d.hi) / 2.0).collect(),
    };

    let surface = surface_slice(&system, axis_x, axis_y, &base, resolution, jump_threshold)
        .map_err(engine_error)?;

    let summary = format!(
        "cells={} gaps={} jump_candidates={} threshold={:.p$}",
        surface.outputs.len(),
        surface.gap_count(),
        surface.jump_candidates.len(),
        surface.threshold,
        p = precision
    );

    match out {
        Some(out_path) => {
            let mut buffer = Vec::new();
            write_surface_csv(&mut buffer, &surface, precision).expect("vec write");
            fs::write(out_path, buffer).map_err(|error| {
                CliError::Usage(format!("cannot write {}: {error}", out_path.display()))
            })?;
            println!("{summary}");
        }
        None => {
            let stdout = std::io::stdout();
            let mut handle = stdout.lock();
            write_surface_csv(&mut handle, &surface, precision)
                .map_err(|error| CliError::Evaluation(format!("cannot write csv: {error}")))?;
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn format_intervals(intervals: &[(f64, f64)], precision: usize) -> String {
    if intervals.is_empty() {
        return "none".into();
    }
    let parts: Vec<String> = intervals
        .iter()
        .map(|(lo, hi)| format!("({lo:.p$},{hi:.p$})", p = precision))
        .collect();
    format!("[{}]", parts.join(","))
}

fn run_coverage(path: &Path, resolution: usize, precision: usize) -> Result<(), CliError> {
    let system = load_system(path)?;
    let report = coverage_report(&system, resolution).map_err(engine_error)?;
    for axis in &report.axes {
        println!(
            "input {}: umf_covered={} lmf_covered={} uncovered_umf={} uncovered_lmf={}",
            axis.input,
            axis.umf_covered,
            axis.lmf_covered,
            format_intervals(&axis.uncovered_umf_intervals, precision),
            format_intervals(&axis.uncovered_lmf_intervals, precision),
        );
    }
    println!("predicted_continuity={}", report.predicted_continuity);
    Ok(())
}

fn run_params(path: &Path) -> Result<(), CliError> {
    let system = load_system(path)?;
    let count = param_count(&system);
    println!("form={}", count.form);
    println!("stored={}", count.stored);
    match count.formula {
        Some(formula) => println!("formula={formula}"),
        None => println!("formula=none"),
    }
    if let Some(note) = &count.note {
        println!("note={note}");
    }
    Ok(())
}

struct OptimizeArgs {
    data: PathBuf,
    header: bool,
    seed: u64,
    generations: usize,
    population: usize,
    mf_count: String,
    consequent: ConsequentChoice,
    reducer: Option<ReducerChoice>,
    alpha: f64,
    beta: f64,
    two_step: bool,
    out_t1: Option<PathBuf>,
    out_it2: Option<PathBuf>,
    precision: usize,
}

fn write_system(path: &Path, system: &FuzzySystem) -> Result<(), CliError> {
    let document = from_system(system);
    let mut text = serde_json::to_string_pretty(&document)
        .map_err(|error| CliError::Evaluation(format!("cannot serialize system: {error}")))?;
    text.push('\n');
    fs::write(path, text)
        .map_err(|error| CliError::Usage(format!("cannot write {}: {error}", path.display())))
}

fn run_optimize(args: OptimizeArgs) -> Result<(), CliError> {
    let data = load_dataset(&args.data, args.header)
        .map_err(|error| CliError::Validation(error.to_string()))?;

    let counts = args
        .mf_count
        .split(',')
        .map(str::trim)
        .map(|field| {
            field
                .parse::<usize>()
                .map_err(|_| CliError::Usage(format!("--mf-count: invalid count '{field}'")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mf_count = if counts.len() == 1 {
        vec![counts[0]; data.num_inputs()]
    } else if counts.len() == data.num_inputs() {
        counts
    } else {
        return Err(CliError::Usage(format!(
            "--mf-count needs one value or {} comma-separated values",
            data.num_inputs()
        )));
    };

    let mut config = it2fls::OptimizerConfig::new(mf_count);
    config.seed = args.seed;
    config.max_generations = args.generations;
    config.population_size = args.population;
    config.consequent_kind = match args.consequent {
        ConsequentChoice::Constant => it2fls::ConsequentKind::Constant,
        ConsequentChoice::Linear => it2fls::ConsequentKind::Linear,
    };
    if let Some(choice) = args.reducer {
        if choice == ReducerChoice::T1 {
            return Err(CliError::Usage(
                "the interval step needs an interval reducer (eiasc, nt, or bmm)".into(),
            ));
        }
        config.reducer = choice.to_reducer(args.alpha, args.beta);
    }

    let started = Instant::now();
    let (t1_system, t1_report) = it2fls::optimize_t1(&data, &config).map_err(engine_error)?;
    eprintln!("t1 wall_ms={}", started.elapsed().as_millis());
    println!(
        "t1 rmse={:.p$} generations={}",
        t1_report.final_fitness(),
        t1_report.best_per_generation.len() - 1,
        p = args.precision
    );
    if let Some(out) = &args.out_t1 {
        write_system(out, &t1_system)?;
    }

    if args.two_step {
        let started = Instant::now();
        let (it2_system, it2_report) =
            it2fls::optimize_it2(&data, &config, &t1_system).map_err(engine_error)?;
        eprintln!("it2 wall_ms={}", started.elapsed().as_millis());
        println!(
            "it2 rmse={:.p$} generations={}",
            it2_report.final_fitness(),
            it2_report.best_per_generation.len() - 1,
            p = args.precision
        );
        if let Some(out) = &args.out_it2 {
            write_system(out, &it2_system)?;
        }
    } else if args.out_it2.is_some() {
        return Err(CliError::Usage("--out-it2 needs --two-step".into()));
    }
    Ok(())
}

fn run_bench(rules: usize, trials: usize, seed: u64) -> Result<(), CliError> {
    if !(1..=it2fls::ORACLE_MAX_RULES).contains(&rules) {
        return Err(CliError::Usage(format!(
            "--rules must be between 1 and {} (the corner oracle enumerates 2^rules corners)",
            it2fls::ORACLE_MAX_RULES
        )));
    }
    if trials < 1 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let instances: Vec<(Vec<FiringInterval>, Vec<ValueInterval>)> = (0..trials)
        .map(|_| {
            let firings = (0..rules)
                .map(|i| {
                    let a: f64 = rng.random_range(0.0..1.0);
                    let b: f64 = rng.random_range(0.0..1.0);
                    let (lo, mut hi) = if a <= b { (a, b) } else { (b, a) };
                    if i == 0 {
                        hi = hi.max(0.1);
                    }
                    FiringInterval::new(lo, hi).expect("generated interval is ordered")
                })
                .collect();
            let consequents = (0..rules)
                .map(|_| {
                    ValueInterval::new(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0))
                })
                .collect();
            (firings, consequents)
        })
        .collect();

    let started = Instant::now();
    let reduced: Vec<_> = instances
        .iter()
        .map(|(f, c)| eiasc(f, c).map_err(engine_error))
        .collect::<Result<_, _>>()?;
    let eiasc_nanos = started.elapsed().as_nanos() / trials as u128;

    let started = Instant::now();
    let corners: Vec<_> = instances
        .iter()
        .map(|(f, c)| corner_oracle(f, c).map_err(engine_error))
        .collect::<Result<_, _>>()?;
    let oracle_nanos = started.elapsed().as_nanos() / trials as u128;

    let max_deviation = reduced
        .iter()
        .zip(&corners)
        .map(|(r, (l, u))| (r.y_l - l).abs().max((r.y_r - u).abs()))
        .fold(0.0f64, f64::max);

    println!(
        "rules={rules} trials={trials} eiasc_ns_per_call={eiasc_nanos} \
         oracle_ns_per_call={oracle_nanos} max_deviation={max_deviation:.2e}"
    );
    Ok(())
}

struct DemoCheck {
    label: &'static str,
    expected: f64,
    actual: f64,
}

fn run_demo(precision: usize) -> Result<(), CliError> {
    let t1 = parse_system(DEMO_T1).map_err(|error| CliError::Validation(error.to_string()))?;
    let it2 = parse_system(DEMO_IT2).map_err(|error| CliError::Validation(error.to_string()))?;
    let x = [-0.2, -0.3];
    let mut checks: Vec<DemoCheck> = Vec::new();
    let mut push = |label: &'static str, expected: f64, actual: f64| {
        checks.push(DemoCheck {
            label,
            expected,
            actual,
        })
    };

    let t1_sets = [
        ("t1 N(x1)", t1.rules[0].antecedents[0], x[0], 0.4111),
        ("t1 P(x1)", t1.rules[3].antecedents[0], x[0], 0.1353),
        ("t1 N(x2)", t1.rules[0].antecedents[1], x[1], 0.5063),
        ("t1 P(x2)", t1.rules[3].antecedents[1], x[1], 0.0956),
    ];
    for (label, set, at, expected) in t1_sets {
        push(label, expected, set.t1_membership(at).unwrap_or(f64::NAN));
    }

    let levels = t1.firing_levels(&x).map_err(engine_error)?;
    for (label, expected, actual) in [
        ("t1 level NN", 0.2082, levels[0]),
        ("t1 level NP", 0.0393, levels[1]),
        ("t1 level PN", 0.0685, levels[2]),
        ("t1 level PP", 0.0129, levels[3]),
    ] {
        push(label, expected, actual);
    }
    push("t1 y", -0.5491, t1.evaluate(&x).map_err(engine_error)?.y);

    let it2_sets = [
        (
            "it2 N(x1)",
            it2.rules[0].antecedents[0],
            x[0],
            (0.2780, 0.5205),
        ),
        (
            "it2 P(x1)",
            it2.rules[3].antecedents[0],
            x[0],
            (0.0561, 0.2301),
        ),
        (
            "it2 N(x2)",
            it2.rules[0].antecedents[1],
            x[1],
            (0.3753, 0.6065),
        ),
        (
            "it2 P(x2)",
            it2.rules[3].antecedents[1],
            x[1],
            (0.0340, 0.1783),
        ),
    ];
    for (label, set, at, (lo, hi)) in it2_sets {
        let interval = set.membership_interval(at);
        push(label, lo, interval.lower);
        push(label, hi, interval.upper);
    }

    let firings = it2.firing_intervals(&x).map_err(engine_error)?;
    for (label, (lo, hi), firing) in [
        ("it2 firing NN", (0.1044, 0.3157), firings[0]),
        ("it2 firing NP", (0.0095, 0.0928), firings[1]),
        ("it2 firing PN", (0.0211, 0.1395), firings[2]),
        ("it2 firing PP", (0.0019, 0.0410), firings[3]),
    ] {
        push(label, lo, firing.lower());
        push(label, hi, firing.upper());
    }

    let reduced = it2.evaluate(&x).map_err(engine_error)?;
    push("it2 y_l", -0.8846, reduced.y_l);
    push("it2 y_r", 0.0058, reduced.y_r);
    push("it2 y", -0.4394, reduced.y);

    let mut nt = it2.clone();
    nt.reducer = Reducer::NieTan;
    push(
        "it2 nt y",
        -0.4794,
        nt.evaluate(&x).map_err(engine_error)?.y,
    );

    let mut balanced = it2.clone();
    balanced.reducer = Reducer::Bmm {
        alpha: 0.5,
        beta: 0.5,
    };
    push(
        "it2 bmm y",
        -0.5665,
        balanced.evaluate(&x).map_err(engine_error)?.y,
    );

    let mut failures = 0;
    for check in &checks {
        let ok = (check.actual - check.expected).abs() < 5e-4;
        if !ok {
            failures += 1;
        }
        println!(
            "{}: expected={:.p$} actual={:.p$} {}",
            check.label,
            check.expected,
            check.actual,
            if ok { "ok" } else { "MISMATCH" },
            p = precision
        );
    }
    println!(
        "demo: {}/{} checks passed",
        checks.len() - failures,
        checks.len()
    );
    if failures > 0 {
        return Err(CliError::Evaluation(format!(
            "{failures} demo check(s) out of tolerance"
        )));
    }
    Ok(())
}
