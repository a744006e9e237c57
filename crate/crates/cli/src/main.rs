use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use omnitoric_cli::{run, Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli.command, io::stdin().lock()).and_then(|out| {
        let text = out.render();
        match &cli.output {
            Some(path) => fs::write(path, text).map_err(|e| CliError::io(path.display().to_string(), e)),
            None => io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| CliError::io("<stdout>", e)),
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = writeln!(
                io::stderr(),
                "{}",
                serde_json::to_string_pretty(&e.to_json()).unwrap_or_default()
            );
            ExitCode::from(1)
        }
    }
}
