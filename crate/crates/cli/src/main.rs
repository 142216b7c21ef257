//! `quatinv`: generate, invert and benchmark quaternion matrices.
//!
//! Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 I/O or
//! file-format error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use quatinv::bench::{parse_algorithms, parse_sizes, run_bench, summarize, BenchConfig};
use quatinv::invert::{invert_with, AlgorithmId};
use quatinv::io::{read_csv, read_qmat, write_qmat, CsvSink};
use quatinv::model::residual;
use quatinv::rng::gen_trial;
use quatinv::{Error, NoCount, QuatMatrix, Quaternion};

#[derive(Debug, Parser)]
#[command(name = "quatinv", version, about = "Quaternion matrix inversion: six algorithms, benchmarks and checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Pattern {
    Random,
    Identity,
    I,
    J,
    K,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a seeded random or structured matrix as a QMH1 file.
    Gen {
        /// Matrix size.
        #[arg(short, long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        trial: u64,
        #[arg(long, value_enum, default_value_t = Pattern::Random)]
        pattern: Pattern,
        #[arg(long)]
        out: PathBuf,
    },
    /// Invert a QMH1 file, or a generated matrix when `--n` is given.
    Invert {
        /// Input QMH1 file.
        #[arg(required_unless_present = "n", conflicts_with = "n")]
        input: Option<PathBuf>,
        /// Generate a random `n x n` input instead of reading one.
        #[arg(short, long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Algorithm code 1-6 or name.
        #[arg(long, default_value = "2", value_parser = parse_alg)]
        alg: AlgorithmId,
        /// Where to write the inverse.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time every (size, trial, algorithm) and write the CSV report.
    Bench {
        /// Sizes: `N`, `START..END` or `START..END:STEP`, comma separated.
        #[arg(long, default_value = "100..1000:100", value_parser = parse_size_list)]
        sizes: Sizes,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        /// Algorithm codes or names, comma separated, or `all`.
        #[arg(long, default_value = "all", value_parser = parse_alg_list)]
        algs: Algorithms,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Record real flop counts with a second, untimed pass.
        #[arg(long)]
        count_flops: bool,
        /// CSV destination; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also render the three charts into this directory.
        #[arg(long)]
        plots: Option<PathBuf>,
        #[arg(long)]
        no_warmup: bool,
    },
    /// Render time, ratio and residual charts from a bench CSV.
    Plot {
        csv: PathBuf,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Run the invariant checks on seeded random inputs.
    Verify {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
    },
}

fn parse_alg(s: &str) -> Result<AlgorithmId, String> {
    match s.parse::<AlgorithmId>() {
        Ok(AlgorithmId::Phi2Oracle) => Err("the oracle is not selectable".into()),
        Ok(a) => Ok(a),
        Err(e) => Err(e.to_string()),
    }
}

// Newtypes so clap treats a whole list as one value.
#[derive(Debug, Clone)]
struct Sizes(Vec<usize>);

#[derive(Debug, Clone)]
struct Algorithms(Vec<AlgorithmId>);

fn parse_size_list(s: &str) -> Result<Sizes, String> {
    parse_sizes(s).map(Sizes).map_err(|e| e.to_string())
}

fn parse_alg_list(s: &str) -> Result<Algorithms, String> {
    parse_algorithms(s).map(Algorithms).map_err(|e| e.to_string())
}

/// Failure classes, one per nonzero exit code.
enum Failure {
    Usage(String),
    Numerical(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) | Error::Format(_) => Failure::Io(e.to_string()),
            Error::UnknownAlgorithm(_) => Failure::Usage(e.to_string()),
            Error::NotGeneric { .. } => {
                Failure::Numerical(format!("{e}\nhint: another algorithm may succeed, try --alg 3 or --alg 4"))
            }
            other => Failure::Numerical(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Numerical(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}

fn pattern_matrix(pattern: Pattern, n: usize, seed: u64, trial: u64) -> QuatMatrix {
    match pattern {
        Pattern::Random => gen_trial(n, seed, trial),
        Pattern::Identity => QuatMatrix::identity(n),
        Pattern::I => QuatMatrix::scalar_identity(n, Quaternion::I),
        Pattern::J => QuatMatrix::scalar_identity(n, Quaternion::J),
        Pattern::K => QuatMatrix::scalar_identity(n, Quaternion::K),
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Gen { n, seed, trial, pattern, out } => {
            if n == 0 {
                return Err(Failure::Usage("n must be at least 1".into()));
            }
            write_qmat(&out, &pattern_matrix(pattern, n, seed, trial))?;
            println!("wrote {n}x{n} {pattern:?} matrix to {}", out.display());
        }
        Command::Invert { input, n, seed, alg, out } => {
            let z = match (input, n) {
                (Some(path), _) => read_qmat(path)?,
                (None, Some(0)) => return Err(Failure::Usage("n must be at least 1".into())),
                (None, Some(n)) => gen_trial(n, seed, 0),
                (None, None) => unreachable!("clap requires one input"),
            };
            let start = Instant::now();
            let report = invert_with(alg, &z, &mut NoCount)?;
            let wall = start.elapsed().as_secs_f64();
            let res = residual(&z, &report.inverse)?;
            if let Some(out) = &out {
                write_qmat(out, &report.inverse)?;
            }
            println!(
                "n={} alg={} time={wall:.6}s residual={res:.3e} branch={} min_pivot={:.3e}",
                z.rows(),
                alg,
                report.branch,
                report.min_pivot
            );
        }
        Command::Bench { sizes, trials, algs, seed, count_flops, out, plots, no_warmup } => {
            let config = BenchConfig { sizes: sizes.0, trials, algorithms: algs.0, seed, count_flops, warmup: !no_warmup };
            config.validate().map_err(|e| Failure::Usage(e.to_string()))?;
            let sink_out: Box<dyn Write> = match &out {
                Some(path) => Box::new(BufWriter::new(File::create(path)?)),
                None => Box::new(io::stdout().lock()),
            };
            let mut sink = CsvSink::new(sink_out)?;
            let records = run_bench(&config, |r| sink.write(r))?;
            sink.finish()?;
            let table = summarize(&records);
            if out.is_some() {
                print!("{table}");
            } else {
                eprint!("{table}");
            }
            if let Some(dir) = plots {
                quatinv::plot::write_plots(&records, dir)?;
            }
        }
        Command::Plot { csv, out } => {
            let records = read_csv(File::open(&csv)?)?;
            for path in quatinv::plot::write_plots(&records, out)? {
                println!("wrote {}", path.display());
            }
        }
        Command::Verify { seed, trials } => {
            let checks = quatinv::verify::run_checks(seed, trials);
            for c in &checks {
                println!("{c}");
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            if failed > 0 {
                return Err(Failure::Numerical(format!("{failed} check(s) failed")));
            }
        }
    }
    Ok(())
}
