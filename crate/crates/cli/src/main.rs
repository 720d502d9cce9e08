mod args;
mod commands;
mod error;
mod table;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

const EXIT_USAGE: u8 = 1;
const EXIT_DATA: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();

    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = match &cli.command {
        Command::Metrics(a) => commands::metrics(a, &mut out),
        Command::Rank(a) => commands::rank(a, &mut out),
        Command::SamplePairs(a) => commands::sample(a, &mut out),
        Command::FitBt(a) => commands::fit_bt_cmd(a, &mut out),
        Command::Correlate(a) => commands::correlate_cmd(a, &mut out),
        Command::Agreement(a) => commands::agreement_cmd(a, &mut out),
        Command::Gen(a) => commands::gen(a, &mut out),
        Command::Export(a) => commands::export(a, &mut out),
        Command::Serve(a) => commands::serve(a),
    }
    .and_then(|()| commands::finish(&mut out));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is_broken_pipe() => ExitCode::SUCCESS,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(EXIT_DATA)
        }
    }
}
