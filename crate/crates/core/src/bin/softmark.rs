use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use softmark::suite::{run_suite, ConfigSet, Level};
use softmark::sweep::{self, Scale, SweepField, SweepSpec};
use softmark::{format, solve, Error, GameConfig};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_INVALID_INPUT: u8 = 2;
const EXIT_SOLVER_FAILED: u8 = 3;

#[derive(Parser)]
#[command(name = "softmark", version, about = "Scalar Gaussian soft-watermarking game solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one game instance.
    Solve(SolveArgs),
    /// Solve along a grid of one input and write one row per grid point.
    Sweep(SweepArgs),
    /// Run the Monte Carlo and grid-oracle checks.
    Verify(VerifyArgs),
    /// Compare the exact solution with the large-host approximation along σs².
    CompareAsymptotic(CompareArgs),
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long = "sigma-x2", allow_negative_numbers = true)]
    sigma_x2: f64,
    #[arg(long = "sigma-s2", allow_negative_numbers = true)]
    sigma_s2: f64,
    #[arg(long, allow_negative_numbers = true)]
    pe: f64,
    #[arg(long, allow_negative_numbers = true)]
    pa: f64,
    #[arg(long, value_enum, default_value_t = SolveFormat::Text)]
    format: SolveFormat,
}

#[derive(Args)]
struct GridArgs {
    #[arg(long, allow_negative_numbers = true)]
    min: f64,
    #[arg(long, allow_negative_numbers = true)]
    max: f64,
    #[arg(long, default_value_t = 200)]
    steps: usize,
    #[arg(long, value_enum, default_value_t = ScaleArg::Log)]
    scale: ScaleArg,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Input to sweep.
    #[arg(long, value_enum, default_value_t = FieldArg::SigmaS2)]
    field: FieldArg,
    #[arg(long = "sigma-x2", allow_negative_numbers = true)]
    sigma_x2: f64,
    #[arg(long = "sigma-s2", allow_negative_numbers = true)]
    sigma_s2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pe: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pa: Option<f64>,
    #[command(flatten)]
    grid: GridArgs,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long = "sigma-x2", allow_negative_numbers = true)]
    sigma_x2: f64,
    #[arg(long, allow_negative_numbers = true)]
    pe: f64,
    #[arg(long, allow_negative_numbers = true)]
    pa: f64,
    #[command(flatten)]
    grid: GridArgs,
}

#[derive(Args)]
#[group(id = "set", required = true, multiple = false)]
struct ConfigSetArgs {
    /// Verify the exactly solvable instance (10, 1, 1, 1).
    #[arg(long, group = "set")]
    analytic: bool,
    /// Verify this many random nontrivial instances.
    #[arg(long, group = "set")]
    random: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    set: ConfigSetArgs,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = LevelArg::Quick)]
    level: LevelArg,
    /// Monte Carlo samples per check; defaults to 2·10^5 (quick) or 10^6 (full).
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, value_enum, default_value_t = SolveFormat::Text)]
    format: SolveFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScaleArg {
    Linear,
    Log,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldArg {
    #[value(name = "sigma-s2")]
    SigmaS2,
    Pa,
    Pe,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

/// A failure mapped to its process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_validation() {
            EXIT_INVALID_INPUT
        } else {
            EXIT_SOLVER_FAILED
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Verify(args) => cmd_verify(args),
        Command::CompareAsymptotic(args) => cmd_compare(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("softmark: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn cmd_solve(args: SolveArgs) -> Result<(), Failure> {
    let cfg = GameConfig::new(args.sigma_x2, args.sigma_s2, args.pe, args.pa)?;
    let s = solve(&cfg)?;
    let text = match args.format {
        SolveFormat::Json => {
            let mut value = json!({
                "config": cfg,
                "regime": s.regime,
                "sigma_u2": s.sigma_u2,
                "alpha": s.encoder.alpha,
                "beta": s.encoder.beta,
                "kappa": s.attacker.kappa,
                "sigma_z2": s.attacker.sigma_z2,
                "cost_j": s.cost_j,
                "diagnostics": s.diagnostics,
            });
            format::round_json(&mut value);
            let mut out = serde_json::to_string_pretty(&value).expect("JSON values always serialize");
            out.push('\n');
            out
        }
        SolveFormat::Text => {
            let n = format::number;
            let d = &s.diagnostics;
            let opt = |x: Option<f64>| x.map(n).unwrap_or_else(|| "-".to_string());
            format!(
                "regime      {}\nsigma_u2    {}\nalpha       {}\nbeta        {}\nkappa       {}\n\
                 sigma_z2    {}\ncost_j      {}\nj_bounds    [{}, {}]\ninterval    [{}, {}]\n\
                 residual    {}\niterations  {}\n",
                s.regime,
                n(s.sigma_u2),
                n(s.encoder.alpha),
                n(s.encoder.beta),
                n(s.attacker.kappa),
                n(s.attacker.sigma_z2),
                n(s.cost_j),
                n(d.lower_bound_j),
                n(d.upper_bound_j),
                opt(d.feasible_lo),
                opt(d.feasible_hi),
                opt(d.cubic_residual),
                d.bisection_iterations,
            )
        }
    };
    print!("{text}");
    Ok(())
}

fn grid_spec(fixed: GameConfig, field: SweepField, grid: &GridArgs) -> SweepSpec {
    SweepSpec {
        fixed,
        field,
        min: grid.min,
        max: grid.max,
        steps: grid.steps,
        scale: match grid.scale {
            ScaleArg::Linear => Scale::Linear,
            ScaleArg::Log => Scale::Log,
        },
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure {
            code: EXIT_INVALID_INPUT,
            message: format!("cannot write {}: {e}", path.display()),
        }),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure {
                code: EXIT_SOLVER_FAILED,
                message: format!("cannot write to stdout: {e}"),
            }),
    }
}

fn required(value: Option<f64>, flag: &str) -> Result<f64, Failure> {
    value.ok_or_else(|| Failure {
        code: EXIT_INVALID_INPUT,
        message: format!("{flag} is required unless it is the swept field"),
    })
}

fn cmd_sweep(args: SweepArgs) -> Result<(), Failure> {
    let field = match args.field {
        FieldArg::SigmaS2 => SweepField::SigmaS2,
        FieldArg::Pa => SweepField::PA,
        FieldArg::Pe => SweepField::PE,
    };
    // The swept slot is overwritten per row; any positive placeholder works.
    let fixed = GameConfig {
        sigma_x2: args.sigma_x2,
        sigma_s2: match field {
            SweepField::SigmaS2 => 1.0,
            _ => required(args.sigma_s2, "--sigma-s2")?,
        },
        p_e: match field {
            SweepField::PE => 1.0,
            _ => required(args.pe, "--pe")?,
        },
        p_a: match field {
            SweepField::PA => 1.0,
            _ => required(args.pa, "--pa")?,
        },
    };
    let spec = grid_spec(fixed, field, &args.grid);
    let rows = sweep::sweep_rows(&spec)?;
    let text = match args.grid.format {
        TableFormat::Csv => sweep::to_csv(&rows),
        TableFormat::Json => sweep::to_json(&rows)?,
    };
    emit(&text, &args.grid.out)
}

fn cmd_compare(args: CompareArgs) -> Result<(), Failure> {
    let fixed = GameConfig {
        sigma_x2: args.sigma_x2,
        sigma_s2: 1.0,
        p_e: args.pe,
        p_a: args.pa,
    };
    let spec = grid_spec(fixed, SweepField::SigmaS2, &args.grid);
    let rows = sweep::compare_asymptotic(&spec)?;
    let text = match args.grid.format {
        TableFormat::Csv => sweep::to_csv(&rows),
        TableFormat::Json => sweep::to_json(&rows)?,
    };
    emit(&text, &args.grid.out)
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    let set = match args.set.random {
        Some(count) => ConfigSet::Random {
            count,
            seed: args.seed,
        },
        None => ConfigSet::Analytic,
    };
    let level = match args.level {
        LevelArg::Quick => Level::Quick,
        LevelArg::Full => Level::Full,
    };
    let samples = args.samples.unwrap_or_else(|| level.default_samples());
    let report = run_suite(set, level, samples, args.seed)?;

    match args.format {
        SolveFormat::Json => {
            let mut value = serde_json::to_value(&report).expect("report serializes");
            value["passed"] = json!(report.all_passed());
            format::round_json(&mut value);
            println!("{}", serde_json::to_string_pretty(&value).expect("report serializes"));
        }
        SolveFormat::Text => {
            for c in &report.checks {
                println!(
                    "[{}] config {:>2} {:<14} {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.config_index,
                    c.check,
                    c.detail
                );
            }
            println!(
                "{}/{} configs passed",
                report.configs_passed(),
                report.configs.len()
            );
        }
    }

    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure {
            code: EXIT_VERIFY_FAILED,
            message: String::new(),
        })
    }
}
