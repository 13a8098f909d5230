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

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};

use bh_dpc::io::{topology_dot, topology_json};
use bh_dpc::oracle::{brute_force_dpc, tightness_witness, OracleOptions};
use bh_dpc::solver::{solve_with, Instance, PathCover, SolveOptions};
use bh_dpc::sweep::{run_sweep, SweepMode, SweepOptions};
use bh_dpc::{verify_cover, Error};

#[derive(Parser)]
#[command(name = "bh-dpc", version, about = "Disjoint path covers of balanced hypercubes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    ExhaustiveN2,
    RandomN3,
    RandomN4,
    Witness,
}

#[derive(Subcommand)]
enum Command {
    /// Vertex and edge listing of BH_n (n <= 4).
    Topo {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build and verify a cover for an instance file.
    Solve {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        budget_ms: Option<u64>,
        /// DOT draws the cover's edges bold on the cube.
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Check a cover file against an instance file.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        cover: PathBuf,
    },
    /// Exhaustive search on an instance file (n <= 2, or n = 3 with --allow-n3).
    Oracle {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        budget_ms: Option<u64>,
        #[arg(long)]
        allow_n3: bool,
    },
    /// The instance on which 2n - 1 paths cannot cover the cube.
    Witness {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Batch runs: exhaustive-n2, random-n3, random-n4, witness.
    Sweep {
        #[arg(value_enum)]
        mode: Mode,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        samples: Option<usize>,
        /// Per instance.
        #[arg(long)]
        budget_ms: Option<u64>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Verification(_) | Error::Construction(_) | Error::MirrorInfeasible(_) => 1,
        Error::BudgetExceeded(_) => 3,
        _ => 2,
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(p) => fs::write(p, text).map_err(Error::from),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn read_instance(path: &PathBuf) -> Result<Instance, Error> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Topo { n, format, out } => {
            let text = match format {
                Format::Json => topology_json(n)?,
                Format::Dot => topology_dot(n, None)?,
            };
            emit(out.as_ref(), text.trim_end())?;
        }
        Command::Solve { input, out, budget_ms, format } => {
            let inst = read_instance(&input)?;
            let opts = SolveOptions {
                budget: budget_ms.map(Duration::from_millis).or(SolveOptions::default().budget),
            };
            let solution = solve_with(&inst, &opts)?;
            let text = match format {
                Format::Json => serde_json::to_string(&solution.cover)?,
                Format::Dot => topology_dot(inst.n(), Some(&solution.cover))?,
            };
            emit(out.as_ref(), text.trim_end())?;
            eprintln!("{}", serde_json::to_string(&verify_cover(&inst, &solution.cover))?);
        }
        Command::Verify { input, cover } => {
            let inst = read_instance(&input)?;
            let cover: PathCover = serde_json::from_str(&fs::read_to_string(cover)?)?;
            let report = verify_cover(&inst, &cover);
            println!("{}", serde_json::to_string(&report)?);
            if !report.ok {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Oracle { input, out, budget_ms, allow_n3 } => {
            let inst = read_instance(&input)?;
            let opts = OracleOptions {
                budget: budget_ms.map(Duration::from_millis).or(OracleOptions::default().budget),
                allow_n3,
            };
            match brute_force_dpc(&inst, &opts)? {
                Some(cover) => emit(out.as_ref(), &serde_json::to_string(&cover)?)?,
                None => println!("no {}-DPC exists", inst.k()),
            }
        }
        Command::Witness { n, out } => {
            let w = tightness_witness(n)?;
            emit(out.as_ref(), &serde_json::to_string_pretty(&w)?)?;
        }
        Command::Sweep { mode, seed, samples, budget_ms, format } => {
            let mode = match mode {
                Mode::ExhaustiveN2 => SweepMode::ExhaustiveN2,
                Mode::RandomN3 => SweepMode::RandomN3,
                Mode::RandomN4 => SweepMode::RandomN4,
                Mode::Witness => SweepMode::Witness,
            };
            let mut opts = SweepOptions { seed, samples, ..SweepOptions::default() };
            if let Some(ms) = budget_ms {
                opts.budget = Some(Duration::from_millis(ms));
            }
            let started = Instant::now();
            let report = run_sweep(mode, &opts)?;
            match format {
                Some(Format::Json) => println!("{}", serde_json::to_string_pretty(&report)?),
                _ => println!("{report}"),
            }
            eprintln!("elapsed: {:.2?}", started.elapsed());
            if !report.all_passed() {
                return Ok(ExitCode::from(if report.budget_overruns > 0 { 3 } else { 1 }));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
