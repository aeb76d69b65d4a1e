//! Command-line front end: argument parsing, input documents, command
//! dispatch and report rendering.

pub mod commands;
pub mod config;
pub mod document;

use std::io::Write;
use std::path::PathBuf;

use clap::Parser;
use trichar_core::Error;

pub use commands::{run, Outcome};
pub use config::{parse_config, Command, Format, SessionConfig};

#[derive(Debug, Parser)]
#[command(
    name = "trichar",
    version,
    about = "Supercharacter theories of finite groups of triangular type"
)]
pub struct Cli {
    /// Command to run; may be omitted when --config supplies it.
    #[arg(value_enum)]
    pub command: Option<Command>,
    /// JSON group document.
    #[arg(long, value_name = "FILE", conflicts_with = "builtin")]
    pub input: Option<PathBuf>,
    /// Built-in family, e.g. family=t,n=2,q=3.
    #[arg(long, value_name = "family=NAME,n=N,q=Q")]
    pub builtin: Option<String>,
    /// JSON subgroup document for restrict and superinduce.
    #[arg(long, value_name = "FILE")]
    pub subgroup: Option<PathBuf>,
    /// Full session configuration as a JSON document.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["input", "builtin", "subgroup"])]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, value_name = "K")]
    pub jobs: Option<usize>,
}

impl Cli {
    pub fn into_config(self) -> Result<SessionConfig, Error> {
        let mut config = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
                parse_config(&text)?
            }
            None => {
                let command = self
                    .command
                    .ok_or_else(|| Error::Usage("missing command".into()))?;
                SessionConfig {
                    command,
                    builtin: self
                        .builtin
                        .as_deref()
                        .map(config::Builtin::parse)
                        .transpose()?,
                    input: self.input.clone().map(config::Source::Path),
                    subgroup: self.subgroup.clone().map(config::Source::Path),
                    format: Format::Text,
                    output: None,
                    jobs: None,
                }
            }
        };
        if let Some(c) = self.command {
            config.command = c;
        }
        if let Some(f) = self.format {
            config.format = f;
        }
        if self.output.is_some() {
            config.output = self.output;
        }
        if self.jobs.is_some() {
            config.jobs = self.jobs;
        }
        config.check()?;
        Ok(config)
    }
}

fn render(outcome: &Outcome, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&outcome.json).expect("JSON values serialize");
            s.push('\n');
            s
        }
        Format::Text => outcome.text.clone(),
    }
}

/// Runs the configuration, on a dedicated pool when `jobs` is set, and writes
/// the report. Returns the exit status.
pub fn execute(config: &SessionConfig) -> i32 {
    let outcome = match config.jobs {
        Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
            Ok(pool) => pool.install(|| run(config)),
            Err(e) => Outcome::from_error(&Error::Usage(format!("cannot start {k} workers: {e}"))),
        },
        None => run(config),
    };
    let body = render(&outcome, config.format);
    let written = match &config.output {
        Some(path) => {
            std::fs::write(path, &body).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => std::io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return commands::EXIT_VALIDATION;
    }
    if outcome.status != 0 && config.format == Format::Text {
        if let Some(msg) = outcome
            .json
            .get("error")
            .and_then(|e| e.get("message"))
            .and_then(|m| m.as_str())
        {
            if config.output.is_some() {
                eprintln!("error: {msg}");
            }
        }
    }
    outcome.status
}

/// Entry point for the binary.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                commands::EXIT_VALIDATION
            } else {
                0
            };
        }
    };
    match cli.into_config() {
        Ok(config) => execute(&config),
        Err(e) => {
            eprintln!("error: {e}");
            commands::exit_code(&e)
        }
    }
}
