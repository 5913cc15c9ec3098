use std::process::ExitCode;

use clap::Parser;

use fragit::cli::{self, ArgsError, Args};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("error")).init();
    let args = Args::parse();
    let settings = match cli::settings_from_args(&args) {
        Ok(s) => s,
        Err(ArgsError::Usage(message)) => {
            eprintln!("fragit: usage error: {message}");
            return ExitCode::from(cli::EXIT_USAGE as u8);
        }
        Err(ArgsError::Settings(e)) => {
            eprintln!("fragit: error: {e}");
            return ExitCode::from(cli::exit_code(&e) as u8);
        }
    };

    if let Some(path) = &settings.config_out {
        return match cli::make_config(&settings, path) {
            Ok(()) => {
                println!("wrote {}", path.display());
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("fragit: error: {e}");
                ExitCode::from(cli::exit_code(&e) as u8)
            }
        };
    }

    match cli::run(&settings) {
        Ok(report) => {
            print!("{}", report.summary);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("fragit: error: {e}");
            ExitCode::from(cli::exit_code(&e) as u8)
        }
    }
}
