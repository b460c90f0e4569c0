// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use twopaths::generators::{figure1_instance, grid_instance, random_instance, two_rails_instance, Instance};
use twopaths::oracle::{exact_distant_paths, min_hitting_ball, MinBall, SearchOutcome};
use twopaths::{solve, verify_certificate, Certificate, Vertex};
use twopaths_cli::bench::{self, BenchConfig};
use twopaths_cli::document::{instance_digest, CertificateDoc};
use twopaths_cli::dot::emit_dot;
use twopaths_cli::format::{emit_instance, parse_graph, parse_id_list, to_instance};
use twopaths_cli::{CliError, CliResult};

/// Two far-apart X-Y paths, or a small ball meeting every X-Y path.
#[derive(Parser)]
#[command(name = "twopaths", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and print a verified certificate.
    /// Exit 0: paths, 1: ball, 2: bad input, 3: solver failure.
    Solve {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Write the certificate here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write a Graphviz rendering of the certificate.
        #[arg(long)]
        emit_dot: Option<PathBuf>,
    },
    /// Check a certificate. Exit 0: valid, 1: rejected, 2: bad input.
    Verify {
        #[command(flatten)]
        instance: InstanceArgs,
        certificate: PathBuf,
    },
    /// Run the exact exponential solvers under a time budget
    /// (TWOPATHS_ORACLE_BUDGET_SECS, default 60).
    Oracle {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Number of paths to look for.
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Also compute the smallest hitting ball.
        #[arg(long)]
        min_ball: bool,
    },
    /// Write a generated instance in the edge-list format.
    Generate {
        #[command(subcommand)]
        family: Family,
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Solve and verify a generated corpus and print a CSV report.
    Bench {
        #[arg(long, default_value_t = 50)]
        random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run the oracles on instances with at most this many vertices.
        #[arg(long, default_value_t = 30)]
        oracle_cap: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Family {
    /// The 3 x 7 lower-bound graph, subdivided for `d`.
    Figure1 {
        #[arg(long)]
        d: usize,
    },
    Grid {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long)]
        d: usize,
    },
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 1)]
        x_size: usize,
        #[arg(long, default_value_t = 1)]
        y_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        d: usize,
    },
    /// Two overlapping components beside a shortest path.
    TwoRails {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        bridged: bool,
    },
}

/// Terminals and `d` fall back to the `# x:`, `# y:`, `# d:` header
/// comments of the graph file.
#[derive(Args)]
struct InstanceArgs {
    graph: PathBuf,
    /// Comma-separated ids.
    #[arg(long, conflicts_with = "x_file")]
    x: Option<String>,
    #[arg(long, conflicts_with = "y_file")]
    y: Option<String>,
    /// File of ids separated by commas or whitespace.
    #[arg(long)]
    x_file: Option<PathBuf>,
    #[arg(long)]
    y_file: Option<PathBuf>,
    #[arg(long)]
    d: Option<usize>,
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn ids(list: &Option<String>, file: &Option<PathBuf>) -> CliResult<Option<Vec<Vertex>>> {
    match (list, file) {
        (Some(l), _) => parse_id_list(l).map(Some),
        (None, Some(f)) => {
            let text = read(f)?;
            let joined = text.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty());
            parse_id_list(&joined.collect::<Vec<_>>().join(",")).map(Some)
        }
        (None, None) => Ok(None),
    }
}

impl InstanceArgs {
    fn load(&self) -> CliResult<Instance> {
        let file = parse_graph(&read(&self.graph)?)?;
        to_instance(file, ids(&self.x, &self.x_file)?, ids(&self.y, &self.y_file)?, self.d)
    }
}

fn emit(output: &Option<PathBuf>, text: &str) -> CliResult<()> {
    match output {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_solve(instance: &InstanceArgs, output: &Option<PathBuf>, dot: &Option<PathBuf>) -> CliResult<u8> {
    let inst = instance.load()?;
    let cert = solve(&inst.graph, &inst.x, &inst.y, inst.d)?;
    if let Err(r) = verify_certificate(&inst.graph, &inst.x, &inst.y, inst.d, &cert) {
        eprintln!("solver produced an invalid certificate: {r}");
        return Ok(3);
    }
    emit(output, &format!("{}\n", CertificateDoc::new(&cert, &inst).to_json()))?;
    if let Some(p) = dot {
        write(p, &emit_dot(&inst, Some(&cert)))?;
    }
    Ok(match cert {
        Certificate::DistantPaths { .. } => 0,
        Certificate::HittingBall { .. } => 1,
    })
}

fn cmd_verify(instance: &InstanceArgs, certificate: &Path) -> CliResult<u8> {
    let inst = instance.load()?;
    let doc = CertificateDoc::parse(&read(certificate)?)?;
    if doc.instance != instance_digest(&inst) {
        eprintln!("rejected: certificate belongs to a different instance");
        return Ok(1);
    }
    let cert = match doc.certificate(&inst) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("rejected: {e}");
            return Ok(1);
        }
    };
    match verify_certificate(&inst.graph, &inst.x, &inst.y, inst.d, &cert) {
        Ok(()) => {
            eprintln!("valid {} certificate", cert.kind());
            Ok(0)
        }
        Err(r) => {
            eprintln!("rejected: {r}");
            Ok(1)
        }
    }
}

fn cmd_oracle(instance: &InstanceArgs, k: usize, min_ball: bool) -> CliResult<u8> {
    let inst = instance.load()?;
    let budget = bench::budget_from_env()?;
    let outcome = exact_distant_paths(&inst.graph, &inst.x, &inst.y, inst.d, k, budget)?;
    println!("{}", outcome.label());
    if let SearchOutcome::Found(paths) = &outcome {
        for p in paths {
            let vs: Vec<String> = p.vertices().iter().map(|v| v.to_string()).collect();
            println!("path {}", vs.join(" "));
        }
    }
    if min_ball {
        match min_hitting_ball(&inst.graph, &inst.x, &inst.y)? {
            MinBall::Ball { center, radius } => println!("min ball center {center} radius {radius}"),
            MinBall::NoXYPath => println!("min ball none (no X-Y path)"),
            MinBall::Unhittable => println!("min ball none (X-Y paths in separate components)"),
        }
    }
    Ok(0)
}

fn cmd_generate(family: &Family, output: &Option<PathBuf>) -> CliResult<u8> {
    let inst = match *family {
        Family::Figure1 { d } => figure1_instance(d)?,
        Family::Grid { rows, cols, d } => grid_instance(rows, cols, d)?,
        Family::Random { n, p, x_size, y_size, seed, d } => random_instance(n, p, x_size, y_size, seed, d)?,
        Family::TwoRails { d, bridged } => two_rails_instance(d, bridged)?,
    };
    emit(output, &emit_instance(&inst))?;
    Ok(0)
}

fn cmd_bench(random: usize, seed: u64, oracle_cap: usize, output: &Option<PathBuf>) -> CliResult<u8> {
    let cfg = BenchConfig { random, seed, oracle_cap, budget: bench::budget_from_env()? };
    let corpus = bench::default_corpus(&cfg)?;
    let reports = bench::run(&corpus, &cfg);
    emit(output, &bench::to_csv(&reports))?;
    let failed = reports.iter().filter(|r| !r.passed()).count();
    eprintln!("{} instances, {failed} failed", reports.len());
    Ok(if failed == 0 { 0 } else { 1 })
}

fn run(cli: &Cli) -> CliResult<u8> {
    match &cli.command {
        Command::Solve { instance, output, emit_dot } => cmd_solve(instance, output, emit_dot),
        Command::Verify { instance, certificate } => cmd_verify(instance, certificate),
        Command::Oracle { instance, k, min_ball } => cmd_oracle(instance, *k, *min_ball),
        Command::Generate { family, output } => cmd_generate(family, output),
        Command::Bench { random, seed, oracle_cap, output } => cmd_bench(*random, *seed, *oracle_cap, output),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
