use serde::Serialize;
use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

#[derive(Debug, thiserror::Error)]
pub enum OutputError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

type Result<T> = std::result::Result<T, OutputError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
}

/// Exit-code contract shared by every subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    ToleranceFail,
    ConfigError,
    NumericalFailure,
    NotConverged,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::ToleranceFail => 1,
            Status::ConfigError => 2,
            Status::NumericalFailure => 3,
            Status::NotConverged => 4,
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a, C: Serialize, R: Serialize> {
    command: &'a str,
    status: Status,
    exit_code: u8,
    config: &'a C,
    result: &'a R,
}

/// A finished run: the resolved configuration, the JSON result and the CSV body.
pub struct Report<C: Serialize, R: Serialize> {
    pub command: &'static str,
    pub status: Status,
    pub config: C,
    pub result: R,
    pub csv: Vec<u8>,
}

impl<C: Serialize, R: Serialize> Report<C, R> {
    fn render(&self, format: Format) -> Result<Vec<u8>> {
        match format {
            Format::Json => {
                let envelope = Envelope {
                    command: self.command,
                    status: self.status,
                    exit_code: self.status.code(),
                    config: &self.config,
                    result: &self.result,
                };
                let mut out = serde_json::to_vec_pretty(&envelope)?;
                out.push(b'\n');
                Ok(out)
            }
            Format::Csv => {
                let mut out = Vec::new();
                writeln!(out, "# command = {}", self.command)?;
                writeln!(out, "# status = {}", serde_json::to_value(self.status)?.as_str().unwrap_or_default())?;
                if let serde_json::Value::Object(map) = serde_json::to_value(&self.config)? {
                    for (k, v) in map {
                        writeln!(out, "# {k} = {v}")?;
                    }
                }
                out.extend_from_slice(&self.csv);
                Ok(out)
            }
        }
    }

    pub fn emit(&self, format: Format, path: Option<&Path>) -> Result<()> {
        let bytes = self.render(format)?;
        match path {
            Some(p) => File::create(p)?.write_all(&bytes)?,
            None => io::stdout().lock().write_all(&bytes)?,
        }
        Ok(())
    }
}
