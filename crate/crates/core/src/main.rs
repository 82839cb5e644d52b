use clap::{Args, Parser, Subcommand};
use dynfpt::harness::{self, GenConfig, HarnessError, Model, Params, Problem, ReplayOptions, Strategy, TraceFile};
use std::io::{Read, Write};
use std::process::ExitCode;

/// Replay, generate and benchmark traces for the dynamic parameterized structures.
#[derive(Parser)]
#[command(name = "dynfpt", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone, Copy)]
struct Knobs {
    /// Seed for randomized strategies and generators.
    #[arg(long, env = "DYNFPT_SEED", default_value_t = 0)]
    seed: u64,
    /// Failure probability of randomized color coding.
    #[arg(long, default_value_t = 1e-6)]
    epsilon: f64,
    /// Hitting-set arity.
    #[arg(long, default_value_t = 3)]
    d: usize,
    /// Degree bound for densesub.
    #[arg(long, default_value_t = 3)]
    delta: usize,
    /// Promise bound for ecc and plc.
    #[arg(long, default_value_t = 4)]
    g: usize,
}

impl Knobs {
    fn params(self) -> Params {
        Params { seed: self.seed, epsilon: self.epsilon, d: self.d, delta: self.delta, g: self.g }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Apply a trace and print one answer block per query.
    Replay {
        /// Trace file, or - for stdin.
        trace: String,
        #[arg(long)]
        problem: Problem,
        /// Defaults to the problem's dynamic strategy.
        #[arg(long)]
        strategy: Option<Strategy>,
        /// Compare every answer with the exhaustive oracle.
        #[arg(long)]
        check_oracle: bool,
        /// Suppress answer lines.
        #[arg(long)]
        quiet: bool,
        /// Print the report as key=value lines.
        #[arg(long)]
        kv: bool,
        #[command(flatten)]
        knobs: Knobs,
    },
    /// Write a generated trace.
    Gen {
        problem: Problem,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        ops: usize,
        #[arg(long, default_value = "random")]
        model: Model,
        #[arg(long, default_value_t = 1)]
        query_every: usize,
        /// Output file; stdout when absent.
        #[arg(short, long)]
        output: Option<String>,
        #[command(flatten)]
        knobs: Knobs,
    },
    /// Replay a trace under several strategies and compare.
    Bench {
        trace: String,
        #[arg(long)]
        problem: Problem,
        /// Comma-separated; defaults to every strategy of the problem.
        #[arg(long, value_delimiter = ',')]
        strategies: Vec<Strategy>,
        #[arg(long)]
        kv: bool,
        #[command(flatten)]
        knobs: Knobs,
    },
}

fn load(path: &str) -> Result<TraceFile, HarnessError> {
    let mut text = String::new();
    let res = if path == "-" { std::io::stdin().read_to_string(&mut text).map(|_| ()) } else { std::fs::read_to_string(path).map(|t| text = t) };
    res.map_err(|e| HarnessError::Other(format!("{path}: {e}")))?;
    Ok(TraceFile::parse(&text)?)
}

fn run(cli: Cli) -> Result<(), HarnessError> {
    let mut out = std::io::stdout().lock();
    let io = |e: std::io::Error| HarnessError::Other(e.to_string());
    match cli.cmd {
        Cmd::Replay { trace, problem, strategy, check_oracle, quiet, kv, knobs } => {
            let trace = load(&trace)?;
            let strategy = strategy.unwrap_or(problem.strategies()[0]);
            let report = harness::replay(&trace, problem, strategy, ReplayOptions { params: knobs.params(), check_oracle })?;
            if !quiet {
                for line in &report.output {
                    writeln!(out, "{line}").map_err(io)?;
                }
            }
            eprint!("{}", if kv { report.kv() } else { report.render() });
            if let Some(step) = report.promise_violation {
                return Err(HarnessError::PromiseViolated { step });
            }
        }
        Cmd::Gen { problem, n, k, ops, model, query_every, output, knobs } => {
            let text = harness::gen(GenConfig { problem, n, k, ops, model, params: knobs.params(), query_every })?.serialize();
            match output {
                Some(path) => std::fs::write(&path, text).map_err(io)?,
                None => out.write_all(text.as_bytes()).map_err(io)?,
            }
        }
        Cmd::Bench { trace, problem, strategies, kv, knobs } => {
            let trace = load(&trace)?;
            let strategies = if strategies.is_empty() { problem.strategies().to_vec() } else { strategies };
            let reports = harness::bench(&trace, problem, &strategies, knobs.params())?;
            write!(out, "{}", harness::comparison_table(&reports)).map_err(io)?;
            for r in &reports {
                write!(out, "\n{}", if kv { r.kv() } else { r.render() }).map_err(io)?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
