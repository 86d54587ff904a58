use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use groupoidify::cli::{parse, run, RunOptions};
use groupoidify::groups::DEFAULT_CAP;
use groupoidify::hecke::DEFAULT_MAX_FLAGS;

/// Run a program of group, G-set and span declarations and verification commands.
#[derive(Parser, Debug)]
#[command(name = "groupoidify", version)]
struct Args {
    /// Program file, or `-` for standard input.
    file: PathBuf,
    /// Print the JSON report instead of text.
    #[arg(long)]
    json: bool,
    /// Write the report to this file.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Largest group that will be enumerated.
    #[arg(long, value_name = "N", default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Largest flag complex that will be built.
    #[arg(long, value_name = "N", default_value_t = DEFAULT_MAX_FLAGS)]
    max_flags: usize,
    /// Seed for randomized commands.
    #[arg(long, value_name = "N", default_value_t = 0)]
    seed: u64,
    /// Print the canonical form of the program and exit.
    #[arg(long)]
    pretty: bool,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let source = if args.file.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        std::fs::read_to_string(&args.file)
    };
    let source = match source {
        Ok(s) => s,
        Err(e) => {
            eprintln!("cannot read {}: {e}", args.file.display());
            return ExitCode::from(2);
        }
    };
    let program = match parse(&source) {
        Ok(p) => p,
        Err(d) => {
            eprintln!("{}", d.render(&source));
            return ExitCode::from(2);
        }
    };
    if args.pretty {
        print!("{}", groupoidify::cli::pretty(&program));
        return ExitCode::SUCCESS;
    }
    let options = RunOptions { cap: args.cap, max_flags: args.max_flags, seed: args.seed };
    let output = run(&program, &options);
    let text = if args.json { output.to_json() } else { output.to_text() };
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if let Some(e) = &output.error {
        eprintln!("runtime error at line {} in `{}`: {}", e.line, e.statement, e.message);
    }
    if output.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
