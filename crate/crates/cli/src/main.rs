mod args;
mod commands;
mod output;
mod selftest;

use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;

use args::{Cli, Command};
use selftest::Level;

fn dispatch(cli: &Cli) -> anyhow::Result<commands::Outcome> {
    let g = &cli.global;
    match &cli.command {
        Command::KrTable { ell, m, r, mode } => commands::kr_table(g, *ell, *m, r.clone(), *mode),
        Command::Optimal { m, r } => commands::optimal(g, *m, r.clone()),
        Command::Verify { ell, m, q, r, alpha } => commands::verify(g, *ell, *m, *q, r.clone(), alpha.clone().map(|a| a.0)),
        Command::Code { ell, m, q, alpha } => commands::code(g, *ell, *m, *q, alpha.clone().map(|a| a.0)),
        Command::Selftest { full, inject_fault, .. } => {
            selftest::run(g, if *full { Level::Full } else { Level::Fast }, *inject_fault)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = dispatch(&cli).and_then(|outcome| {
        match &cli.global.out {
            Some(path) => std::fs::write(path, &outcome.text).with_context(|| format!("writing {}", path.display()))?,
            None => print!("{}", outcome.text),
        }
        Ok(outcome.ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
