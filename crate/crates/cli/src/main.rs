use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use oxn_core::checks::{self, CheckOptions, CheckReport, Selector, Status, DEFAULT_SEED};
use oxn_core::ChainSize;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Runs the verification suites for the singular order-preserving maps of a finite chain.
#[derive(Debug, Parser)]
#[command(name = "oxn-verify", version, after_help = after_help())]
struct Args {
    /// Check to run (see the list below).
    #[arg(value_name = "CHECK", conflicts_with = "check")]
    positional: Option<String>,

    #[arg(long)]
    check: Option<String>,

    /// Chain size.
    #[arg(long, default_value_t = 3)]
    n: usize,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Report file, or the table file with --export.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Seed for sampled suites.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Write the Cayley table of oxn, TL, TR, TPo or TPi to --out instead of running checks.
    #[arg(long, value_name = "SEMIGROUP", conflicts_with_all = ["positional", "check"], requires = "out")]
    export: Option<String>,

    #[arg(long, hide = true)]
    inject_fault: bool,
}

fn after_help() -> String {
    let mut s = String::from("Checks (maximum n):\n");
    for c in checks::CHECKS {
        s.push_str(&format!("  {:<16} {} ({})\n", c.name, c.summary, c.max_n));
    }
    s.push_str(&format!("  {:<16} every check whose maximum admits n\n", checks::ALL));
    s.push_str("\nExit status: 0 all pass, 1 verification failure, 2 usage or resource error.");
    s
}

fn usage(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("oxn-verify: {e}");
    ExitCode::from(2)
}

fn render(reports: &[CheckReport], format: Format) -> String {
    match format {
        Format::Text => reports.iter().map(|r| format!("{r}\n")).collect(),
        Format::Json => serde_json::to_string_pretty(reports).expect("reports serialize") + "\n",
    }
}

fn main() -> ExitCode {
    let args = Args::parse();

    if let Some(sel) = &args.export {
        let selector: Selector = match sel.parse() {
            Ok(s) => s,
            Err(e) => return usage(e),
        };
        let n = match ChainSize::new(args.n) {
            Ok(n) => n,
            Err(e) => return usage(e),
        };
        let path = args.out.as_deref().expect("required by clap");
        return match checks::export_cayley(selector, n, path) {
            Ok(t) => {
                eprintln!("wrote {selector} (order {}) to {}", t.order(), path.display());
                ExitCode::SUCCESS
            }
            Err(e) => usage(e),
        };
    }

    let Some(name) = args.positional.or(args.check) else {
        return usage("no check given; try --help");
    };
    let options = CheckOptions {
        seed: args.seed,
        inject_fault: args.inject_fault,
    };
    let reports = match checks::run(&name, args.n, &options) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    let text = render(&reports, args.format);
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                return usage(format!("{}: {e}", path.display()));
            }
        }
        None => print!("{text}"),
    }
    if reports.iter().all(|r| r.status == Status::Pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
