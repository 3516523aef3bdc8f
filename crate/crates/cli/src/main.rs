use std::io::Write;
use std::process::ExitCode;

use artinperv_cli::commands::Failure;
use artinperv_cli::{run, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(f) => {
            match &f {
                Failure::Input(m) | Failure::Domain(m) => eprintln!("error: {m}"),
                Failure::Invalid(diags) => {
                    for d in diags {
                        eprintln!("{d}");
                    }
                }
            }
            return ExitCode::from(f.exit_code() as u8);
        }
    };
    let text = serde_json::to_string_pretty(&report.json).expect("reports serialize") + "\n";
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    let mut stdout = std::io::stdout().lock();
    let shown = if cli.pretty {
        report.table.as_str()
    } else if cli.out.is_none() {
        text.as_str()
    } else {
        ""
    };
    let _ = stdout.write_all(shown.as_bytes());
    ExitCode::from(report.code as u8)
}
