use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dynparam::colouring::{check_universal, FamilyParams};
use dynparam::harness::{bench_script, collect_report, generated_script, verify_trial, BENCH_CSV_HEADER};
use dynparam::script::{format_answers, run_script, Problem};
use rayon::prelude::*;

#[derive(Parser)]
#[command(name = "dynparam", version, about = "Dynamic parameterised maintainers: run, verify and benchmark")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a change script and print one `q<i> yes|no` line per query.
    Run { file: PathBuf },
    /// Compare a maintainer against its brute-force oracle on random change sequences.
    Verify(VerifyArgs),
    /// Time every change against recomputation from scratch; CSV on stdout.
    Bench(BenchArgs),
    /// Colouring family tools.
    #[command(subcommand)]
    Colouring(ColouringCommand),
}

#[derive(Args)]
struct VerifyArgs {
    problem: Problem,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 50)]
    len: usize,
    /// Where the reproducer script of the first failure is written.
    #[arg(long)]
    reproducer: Option<PathBuf>,
    /// Invert the answer to query QUERY of trial TRIAL (harness self-test).
    #[arg(long, value_name = "TRIAL:QUERY", value_parser = parse_fault)]
    inject_fault: Option<(usize, usize)>,
}

#[derive(Args)]
struct BenchArgs {
    problem: Problem,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 50)]
    len: usize,
    /// Also write the benchmarked script to this file.
    #[arg(long)]
    emit_script: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ColouringCommand {
    /// Exhaustively check that the family is (n, k, c)-universal.
    Check {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        c: usize,
    },
}

fn parse_fault(s: &str) -> Result<(usize, usize), String> {
    let (t, q) = s.split_once(':').ok_or("expected TRIAL:QUERY")?;
    let t = t.parse().map_err(|e| format!("trial: {e}"))?;
    let q = q.parse().map_err(|e| format!("query: {e}"))?;
    Ok((t, q))
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn cmd_run(file: PathBuf) -> ExitCode {
    let text = match fs::read_to_string(&file) {
        Ok(t) => t,
        Err(e) => return fail(1, format!("cannot read {}: {e}", file.display())),
    };
    match run_script(&text) {
        Ok(answers) => {
            print!("{}", format_answers(&answers));
            ExitCode::SUCCESS
        }
        Err(e) => fail(e.exit_code() as u8, e),
    }
}

fn cmd_verify(a: VerifyArgs) -> ExitCode {
    let outcomes = (0..a.trials)
        .into_par_iter()
        .map(|t| verify_trial(a.problem, a.seed, t, a.len, a.inject_fault))
        .collect();
    let report = collect_report(a.problem, outcomes);
    println!("{}", report.summary());
    let Some((trial, m)) = report.first_failure else {
        return ExitCode::SUCCESS;
    };
    println!("first failure: trial {trial}, seed {}, step {}: {}", m.seed, m.step, m.detail);
    let path = a
        .reproducer
        .unwrap_or_else(|| PathBuf::from(format!("reproducer-{}-{}.script", a.problem, m.seed)));
    match fs::write(&path, m.reproducer.to_text()) {
        Ok(()) => println!("reproducer: {}", path.display()),
        Err(e) => eprintln!("error: cannot write {}: {e}", path.display()),
    }
    ExitCode::from(2)
}

fn cmd_bench(a: BenchArgs) -> ExitCode {
    let script = generated_script(a.problem, a.seed, a.len);
    if let Some(path) = &a.emit_script {
        if let Err(e) = fs::write(path, script.to_text()) {
            return fail(1, format!("cannot write {}: {e}", path.display()));
        }
    }
    let records = match bench_script(&script) {
        Ok(r) => r,
        Err(e) => return fail(2, e),
    };
    let mut out = io::stdout().lock();
    let mut write = || -> io::Result<()> {
        writeln!(out, "{BENCH_CSV_HEADER}")?;
        for r in &records {
            writeln!(out, "{}", r.csv_row())?;
        }
        out.flush()
    };
    match write() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(1, e),
    }
}

fn cmd_colouring_check(n: usize, k: usize, c: usize) -> ExitCode {
    let params = match FamilyParams::new(n, k, c) {
        Ok(p) => p,
        Err(e) => return fail(1, e),
    };
    match check_universal(params) {
        Ok(u) => {
            println!("universal: {}", if u { "yes" } else { "no" });
            match params.cardinality() {
                Some(size) => println!("cardinality: {size}"),
                None => println!("cardinality: overflow"),
            }
            ExitCode::SUCCESS
        }
        Err(e) => fail(1, e),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match cli.command {
        Command::Run { file } => cmd_run(file),
        Command::Verify(a) => cmd_verify(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Colouring(ColouringCommand::Check { n, k, c }) => cmd_colouring_check(n, k, c),
    }
}
