use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

use crate::args::Command;

#[derive(Debug)]
pub enum CliError {
    Core(emchi::Error),
    Io { path: PathBuf, source: std::io::Error },
    Usage(String),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.code(),
            CliError::Io { .. } => "E_IO",
            CliError::Usage(_) => "E_USAGE",
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Core(e) => e.to_string(),
            CliError::Io { path, source } => format!("{}: {source}", path.display()),
            CliError::Usage(m) => m.trim_end().to_string(),
        }
    }
}

impl From<emchi::Error> for CliError {
    fn from(e: emchi::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<emchi::ParseError> for CliError {
    fn from(e: emchi::ParseError) -> Self {
        CliError::Core(e.into())
    }
}

/// What a subcommand produced.
pub struct Report {
    pub parameters: Value,
    pub result: Value,
    pub text: String,
    /// `false` for a negative mathematical answer (exit code 1).
    pub answer: bool,
    /// A document written verbatim instead of the envelope.
    pub raw: Option<String>,
}

impl Report {
    pub fn new(parameters: Value, result: impl Serialize, text: String) -> Self {
        Report {
            parameters,
            result: serde_json::to_value(result).expect("serializable result"),
            text,
            answer: true,
            raw: None,
        }
    }

    pub fn answer(mut self, answer: bool) -> Self {
        self.answer = answer;
        self
    }
}

#[derive(Serialize)]
pub struct Envelope {
    command: &'static str,
    parameters: Value,
    result: Value,
    timing: Option<Timing>,
    version: &'static str,
    #[serde(skip)]
    text: String,
    #[serde(skip)]
    raw: Option<String>,
}

#[derive(Serialize)]
struct Timing {
    elapsed_ms: f64,
}

impl Envelope {
    pub fn new(command: &Command, report: Report, elapsed: Option<Duration>) -> Self {
        Envelope {
            command: command.name(),
            parameters: report.parameters,
            result: report.result,
            timing: elapsed.map(|d| Timing {
                elapsed_ms: d.as_secs_f64() * 1e3,
            }),
            version: env!("CARGO_PKG_VERSION"),
            text: report.text,
            raw: report.raw,
        }
    }
}

pub fn emit(env: &Envelope, pretty: bool) {
    let mut out = std::io::stdout().lock();
    let body = if let Some(raw) = &env.raw {
        raw.clone()
    } else if pretty {
        let mut t = env.text.clone();
        if !t.ends_with('\n') {
            t.push('\n');
        }
        if let Some(timing) = &env.timing {
            t.push_str(&format!("elapsed: {:.3} ms\n", timing.elapsed_ms));
        }
        t
    } else {
        let mut t = serde_json::to_string_pretty(env).expect("serializable envelope");
        t.push('\n');
        t
    };
    // A closed pipe is not worth a panic.
    let _ = out.write_all(body.as_bytes());
    let _ = out.flush();
}

pub fn report_error(e: &CliError, pretty: bool) {
    let body = if pretty {
        format!("error[{}]: {}\n", e.code(), e.message())
    } else {
        let v = serde_json::json!({
            "error": { "code": e.code(), "message": e.message() },
            "version": env!("CARGO_PKG_VERSION"),
        });
        format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
    };
    let _ = std::io::stderr().write_all(body.as_bytes());
}
