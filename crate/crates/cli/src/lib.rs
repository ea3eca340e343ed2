//! Library side of the `irelax` command-line tool: instance parsing, command
//! dispatch and deterministic JSON reports.
//!
//! Every command returns a [`Outcome`] holding the report and the process
//! exit code: 0 on success, 1 when the property the command tests is false,
//! 2 for input errors and 3 when a cap is exceeded.
//!
//! ```
//! use integrality_cli::{run, Command, Flags};
//!
//! let input = r#"{"A": [[1, 0, 0], [0, 1, 0], [2, 4, 5], [1, 4, 4], [2, 2, 3]]}"#;
//! let out = run(Command::Delta, input, &Flags::default());
//! assert_eq!(out.code, 0);
//! assert_eq!(out.report["result"]["delta"], 5);
//! ```

mod commands;
mod input;
mod json;

use std::fmt;
use std::str::FromStr;

use integrality::wsynth::TuMethod;
use integrality::Error;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub use input::{parse_instance, InstanceFile, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Command {
    Hnf,
    Delta,
    Cover,
    Synthesize,
    Certify,
    Verify,
    Ip,
    GoodSet,
    Hyperplanes,
    Density,
    Nondegen,
    Inum,
}

impl Command {
    pub const ALL: [Command; 12] = [
        Command::Hnf,
        Command::Delta,
        Command::Cover,
        Command::Synthesize,
        Command::Certify,
        Command::Verify,
        Command::Ip,
        Command::GoodSet,
        Command::Hyperplanes,
        Command::Density,
        Command::Nondegen,
        Command::Inum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Hnf => "hnf",
            Command::Delta => "delta",
            Command::Cover => "cover",
            Command::Synthesize => "synthesize",
            Command::Certify => "certify",
            Command::Verify => "verify",
            Command::Ip => "ip",
            Command::GoodSet => "good-set",
            Command::Hyperplanes => "hyperplanes",
            Command::Density => "density",
            Command::Nondegen => "nondegen",
            Command::Inum => "inum",
        }
    }

    /// Accepted values of `--mode`, default first.
    pub fn modes(self) -> &'static [&'static str] {
        match self {
            Command::Delta => &["full_rank", "max"],
            Command::Cover => &["trivial", "box", "optimal"],
            Command::Synthesize => &["best", "part1", "part2"],
            Command::Density => &["enumerate", "sample"],
            _ => &[],
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown command {s:?}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    /// Only the density table has a CSV form.
    Csv,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flags {
    pub mode: Option<String>,
    pub seed: u64,
    pub t: u64,
    pub samples: u64,
    pub entry_bound: i64,
    /// Defaults to the number of variables.
    pub kmax: Option<usize>,
    /// Overrides the command's enumeration cap.
    pub cap: Option<u128>,
    pub method: TuMethod,
    pub format: Format,
}

impl Default for Flags {
    fn default() -> Self {
        Flags {
            mode: None,
            seed: 0,
            t: 5,
            samples: 10_000,
            entry_bound: 2,
            kmax: None,
            cap: None,
            method: TuMethod::Auto,
            format: Format::Json,
        }
    }
}

pub fn method_name(m: TuMethod) -> &'static str {
    match m {
        TuMethod::Exhaustive => "exhaustive",
        TuMethod::GhouilaHouri => "ghouila_houri",
        TuMethod::Auto => "auto",
    }
}

pub fn parse_method(s: &str) -> Result<TuMethod, String> {
    match s {
        "exhaustive" => Ok(TuMethod::Exhaustive),
        "ghouila_houri" => Ok(TuMethod::GhouilaHouri),
        "auto" => Ok(TuMethod::Auto),
        _ => Err(format!("unknown TU method {s:?}; expected exhaustive, ghouila_houri or auto")),
    }
}

/// Failure of a command, already mapped to its exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match &e {
            Error::CapExceeded { .. } => (EXIT_CAP, "cap_exceeded"),
            Error::Certify(_) => (EXIT_FALSE, "certification_failed"),
            Error::Consistency(_) => (EXIT_FALSE, "internal"),
            _ => (EXIT_INPUT, "input"),
        };
        Failure {
            code,
            kind,
            message: e.to_string(),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure {
            code: EXIT_INPUT,
            kind: "input",
            message: e.to_string(),
        }
    }
}

impl Failure {
    pub(crate) fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            kind: "input",
            message: message.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub report: Value,
    pub code: i32,
}

impl Outcome {
    /// Report text with sorted keys and a trailing newline.
    pub fn render(&self, format: Format) -> String {
        if format == Format::Csv {
            if let Some(rows) = self.report["result"]["table"].as_array() {
                return json::density_csv(rows);
            }
        }
        let mut s = serde_json::to_string_pretty(&self.report).expect("reports are plain JSON");
        s.push('\n');
        s
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn flags_json(command: Command, flags: &Flags) -> Value {
    json!({
        "mode": flags.mode.clone().or_else(|| command.modes().first().map(|m| m.to_string())),
        "seed": flags.seed,
        "t": flags.t,
        "samples": flags.samples,
        "entry_bound": flags.entry_bound,
        "kmax": flags.kmax,
        "cap": flags.cap.map(|c| c.to_string()),
        "method": method_name(flags.method),
    })
}

/// Parses `input` and runs `command` on it.
pub fn run(command: Command, input: &str, flags: &Flags) -> Outcome {
    let result = parse_instance(input)
        .map_err(Failure::from)
        .and_then(|inst| commands::dispatch(command, &inst, flags));
    let mut report = json!({
        "command": command.name(),
        "input_sha256": sha256_hex(input.as_bytes()),
        "flags": flags_json(command, flags),
    });
    let code = match result {
        Ok((value, code)) => {
            report["result"] = value;
            code
        }
        Err(f) => {
            report["result"] = Value::Null;
            report["error"] = json!({ "kind": f.kind, "message": f.message });
            f.code
        }
    };
    report["status"] = json!(code);
    Outcome { report, code }
}
