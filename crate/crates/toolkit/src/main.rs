use std::path::PathBuf;
use std::process::ExitCode;

use bfglm::{
    bench_instance, format_instance, format_param, generate_instance, generate_shape_instance, parse_param,
    parse_point_request, read_instance, verify_solution, BenchRow, GenRequest, ToolError, ToolResult,
};
use bfglm_core::{solve, solve_split, Error, Modulus, Rng, SolverConfig, ZeroDimParam};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "bfglm",
    version,
    about = "Zero-dimensional parametrizations from multiplication matrices"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args)]
struct SolveArgs {
    /// Instance file.
    #[arg(long = "in")]
    input: PathBuf,
    /// Output file for the parametrization (stdout if absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Block size.
    #[arg(long, default_value_t = 2)]
    m: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long, default_value_t = 8)]
    retries: usize,
    /// Recompute Krylov vectors instead of storing them.
    #[arg(long)]
    streaming: bool,
}

impl SolveArgs {
    fn config(&self) -> SolverConfig {
        SolverConfig {
            m: self.m,
            workers: self.workers,
            retries: self.retries,
            streaming: self.streaming,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parametrization by block Wiedemann.
    Solve(SolveArgs),
    /// Same, splitting off the points seen by one variable first.
    SolveSplit {
        #[command(flatten)]
        common: SolveArgs,
        /// Variable used for the first pass.
        #[arg(long, default_value_t = 0)]
        x1_index: usize,
    },
    /// Generate an instance with known points.
    Gen {
        #[arg(long, default_value_t = 65537)]
        p: u64,
        /// Point request file.
        #[arg(long, conflicts_with = "random")]
        points: Option<PathBuf>,
        /// Number of random simple points.
        #[arg(long)]
        random: Option<usize>,
        /// Number of variables for `--random`.
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Extra entries per row of the conjugation factors.
        #[arg(long, default_value_t = 2)]
        fill: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Append the points to the instance file.
        #[arg(long)]
        truth: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a parametrization against an instance.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        param: PathBuf,
        /// Also compare against the truth section of the instance file.
        #[arg(long)]
        truth: bool,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Time both solvers on a generated instance in shape position.
    Bench {
        #[arg(long, default_value_t = 2000)]
        dim: usize,
        /// Prime; must exceed D^2 by a wide margin for a random form to separate.
        #[arg(long, default_value_t = 2147483647)]
        p: u64,
        /// Degree of the polynomials giving the other coordinates; about
        /// `k/D` of their columns are dense. Defaults to `D/10`.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

enum Failure {
    Tool(ToolError),
    Verification(String),
}

impl From<ToolError> for Failure {
    fn from(e: ToolError) -> Self {
        Failure::Tool(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Tool(e.into())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Tool(e.into())
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> ToolResult<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn write_param(out: Option<&PathBuf>, param: &ZeroDimParam) -> ToolResult<()> {
    emit(out, &format_param(param))
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Solve(a) => {
            let (inst, _) = read_instance(&a.input)?;
            let (param, stats) = solve(&inst, &a.config(), &mut Rng::new(a.seed))?;
            write_param(a.out.as_ref(), &param)?;
            eprintln!(
                "degree {} of {}, {} retries, {:.3}s, Krylov fraction {:.2}",
                param.degree(),
                inst.dim(),
                stats.attempts - 1,
                stats.total_seconds,
                stats.krylov_seconds / stats.total_seconds.max(f64::MIN_POSITIVE)
            );
            for e in &stats.failures {
                eprintln!("  retried after: {e}");
            }
        }
        Command::SolveSplit { common: a, x1_index } => {
            let (inst, _) = read_instance(&a.input)?;
            let (param, stats, trace) = solve_split(&inst, &a.config(), x1_index, &mut Rng::new(a.seed))?;
            write_param(a.out.as_ref(), &param)?;
            eprintln!(
                "degree {} of {} ({} from the first pass), {} attempt(s), {:.3}s",
                param.degree(),
                inst.dim(),
                trace.d_a,
                stats.attempts,
                stats.total_seconds
            );
            eprintln!(
                "  last attempt: first pass {:.3}s, corrections {:.3}s, residual {:.3}s, union {:.3}s",
                trace.x1_seconds, trace.correction_seconds, trace.residual_seconds, trace.union_seconds
            );
            for e in &stats.failures {
                eprintln!("  retried after: {e}");
            }
        }
        Command::Gen {
            p,
            points,
            random,
            n,
            fill,
            seed,
            truth,
            out,
        } => {
            let mut rng = Rng::new(seed);
            let f = Modulus::new(p)?;
            let mut req = match (points, random) {
                (Some(path), _) => parse_point_request(&std::fs::read_to_string(path)?, p, &mut rng)?,
                (None, Some(k)) => GenRequest::random(&f, n, k, &mut rng),
                (None, None) => {
                    return Err(ToolError::InvalidSpec("one of --points or --random is required".into()).into())
                }
            };
            req.fill = fill;
            let (inst, gt) = generate_instance(p, &req, &mut rng)?;
            emit(out.as_ref(), &format_instance(&inst, truth.then_some(&gt)))?;
        }
        Command::Verify {
            input,
            param,
            truth: use_truth,
            seed,
        } => {
            let (inst, truth) = read_instance(&input)?;
            if use_truth && truth.is_none() {
                return Err(ToolError::InvalidSpec("--truth needs a truth section in the instance file".into()).into());
            }
            let truth = if use_truth { truth } else { None };
            let param = parse_param(&std::fs::read_to_string(param)?)?;
            let rep = verify_solution(&inst, &param, truth.as_ref(), &mut Rng::new(seed))?;
            println!("invariants        {}", rep.invariants_ok);
            println!("minpoly degree    {}", rep.minpoly.degree().map_or(0, |d| d));
            println!("minpoly verified  {}", rep.minpoly_annihilates);
            println!("Q | minpoly       {}", rep.q_divides_minpoly);
            println!("all points found  {}", rep.all_points_found);
            println!("coordinates       {}", rep.coordinates_ok);
            if let Some(p) = &rep.points {
                println!("known points      {}", p.passed());
            }
            println!("status            {}", rep.status);
            if !rep.passed() {
                return Err(Failure::Verification(rep.status.to_string()));
            }
        }
        Command::Bench {
            dim,
            p,
            k,
            n,
            m,
            workers,
            seed,
        } => {
            let k = k.unwrap_or(dim / 10);
            let (inst, _) = generate_shape_instance(p, dim, n, k, &mut Rng::new(seed))?;
            let cfg = SolverConfig {
                m,
                workers,
                ..SolverConfig::default()
            };
            let row: BenchRow = bench_instance(&inst, &cfg, seed)?;
            println!("{}", BenchRow::HEADER);
            println!("{row}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(4)
        }
        Err(Failure::Tool(e)) => {
            eprintln!("error: {e}");
            match e {
                ToolError::Core(Error::UnluckyRandomness { .. }) => ExitCode::from(3),
                _ => ExitCode::from(1),
            }
        }
    }
}
