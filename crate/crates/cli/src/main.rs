use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use integrality_cli::{parse_method, run, Command, Flags, Format, EXIT_INPUT};

/// Build, certify and brute-force check mixed-integer relaxations.
#[derive(Parser, Debug)]
#[command(name = "irelax", version)]
struct Cli {
    /// hnf, delta, cover, synthesize, certify, verify, ip, good-set,
    /// hyperplanes, density, nondegen or inum.
    #[arg(value_parser = |s: &str| s.parse::<Command>())]
    command: Command,

    /// Instance file, or `-` for standard input.
    input: PathBuf,

    /// delta: full_rank|max; cover: trivial|box|optimal;
    /// synthesize: best|part1|part2; density: enumerate|sample.
    #[arg(long)]
    mode: Option<String>,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Largest radius of the right-hand side cube for density.
    #[arg(long, default_value_t = 5)]
    t: u64,

    #[arg(long, default_value_t = 10_000)]
    samples: u64,

    /// Largest absolute entry of candidate rows for inum.
    #[arg(long, default_value_t = 2)]
    entry_bound: i64,

    /// Largest k tried by inum; defaults to the number of variables.
    #[arg(long)]
    kmax: Option<usize>,

    /// Enumeration cap of the command.
    #[arg(long)]
    cap: Option<u128>,

    /// TU check: exhaustive, ghouila_houri or auto.
    #[arg(long, default_value = "auto", value_parser = parse_method)]
    method: integrality::wsynth::TuMethod,

    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,

    /// Emit the density table as CSV.
    #[arg(long)]
    csv: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut text = String::new();
    let read = if cli.input.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(&cli.input).map(|s| text = s)
    };
    if let Err(e) = read {
        eprintln!("irelax: cannot read {}: {e}", cli.input.display());
        return ExitCode::from(EXIT_INPUT as u8);
    }
    let flags = Flags {
        mode: cli.mode,
        seed: cli.seed,
        t: cli.t,
        samples: cli.samples,
        entry_bound: cli.entry_bound,
        kmax: cli.kmax,
        cap: cli.cap,
        method: cli.method,
        format: if cli.csv { Format::Csv } else { Format::Json },
    };
    let out = run(cli.command, &text, &flags);
    if let Some(err) = out.report.get("error") {
        eprintln!("irelax: {}", err["message"].as_str().unwrap_or("failed"));
    }
    let rendered = out.render(flags.format);
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                eprintln!("irelax: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_INPUT as u8);
            }
        }
        None => print!("{rendered}"),
    }
    ExitCode::from(out.code as u8)
}
