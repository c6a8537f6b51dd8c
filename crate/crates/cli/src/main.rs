use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use chi_cli::run::{run, FieldChoice, Options};
use chi_cli::session::parse_session;
use chi_cli::suite::run_suite;
use clap::{Parser, ValueEnum};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Exact graded intersection multiplicities from session files.
#[derive(Parser, Debug)]
#[command(name = "chi", version)]
struct Args {
    /// Session file; standard input when omitted.
    input: Option<PathBuf>,
    /// Highest homological degree for tor and check.
    #[arg(long, default_value_t = 8)]
    imax: usize,
    /// Highest internal degree for tor and check.
    #[arg(long, default_value_t = 16)]
    dmax: usize,
    /// Number of printed power series coefficients.
    #[arg(long, default_value_t = 10)]
    series_terms: usize,
    /// Coefficient field: qq or fp:P.
    #[arg(long, default_value = "qq")]
    field: FieldChoice,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Run the bundled golden sessions and report PASS or FAIL for each.
    #[arg(long)]
    run_paper_suite: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    if args.run_paper_suite {
        let outcomes = run_suite();
        let mut failed = 0;
        for o in &outcomes {
            if o.passed() {
                println!("PASS {}", o.name);
            } else {
                failed += 1;
                println!("FAIL {}", o.name);
                for m in &o.mismatches {
                    println!("  {m}");
                }
            }
        }
        println!("{} of {} sessions passed", outcomes.len() - failed, outcomes.len());
        return ExitCode::from(if failed == 0 { 0 } else { 2 });
    }

    let (label, text) = match &args.input {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(t) => (path.display().to_string(), t),
            Err(e) => {
                eprintln!("chi: cannot read {}: {e}", path.display());
                return ExitCode::from(1);
            }
        },
        None => {
            let mut t = String::new();
            if let Err(e) = std::io::stdin().read_to_string(&mut t) {
                eprintln!("chi: cannot read standard input: {e}");
                return ExitCode::from(1);
            }
            ("<stdin>".to_string(), t)
        }
    };
    let session = match parse_session(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{label}:{}:{}: {}", e.pos.line, e.pos.col, e.message);
            return ExitCode::from(1);
        }
    };
    let opts = Options {
        imax: args.imax,
        dmax: args.dmax,
        series_terms: args.series_terms,
    };
    let report = run(&session, args.field, &opts);
    for c in &report.commands {
        if let Some(e) = &c.error {
            eprintln!("{label}:{}: {}: {e}", c.line, c.command);
        }
    }
    match args.format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("report serializes")),
    }
    ExitCode::from(report.exit_code() as u8)
}
