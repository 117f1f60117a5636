//! Command-line pipeline: each subcommand is a [`Command`] registered by
//! name, sharing one [`Session`] so chained stages reuse earlier results.

mod commands;

use std::path::PathBuf;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::grading::{block_grading, GradingData};
use crate::lie::{rational, Rational};
use crate::metric::{invariant_family, naturally_reductive_subfamily, FormFamily};

pub use commands::{Curvature, Geodesic, Grade, Lorentz, Metrics, Reductive, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "txt",
        }
    }
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(Error::Config(format!(
                "unknown format '{other}' (expected json, csv or text)"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: String,
    pub n: usize,
    pub partition: [usize; 4],
    pub parameter_values: Option<Vec<Rational>>,
    pub output_format: Format,
    pub output_path: Option<PathBuf>,
    pub t_samples: Vec<f64>,
    /// 1-based position in the `m` basis for `geodesic`.
    pub generator: usize,
    pub connection: Option<String>,
}

impl RunConfig {
    pub fn new(command: &str, n: usize, partition: [usize; 4]) -> Self {
        Self {
            command: command.to_string(),
            n,
            partition,
            parameter_values: None,
            output_format: Format::Json,
            output_path: None,
            t_samples: vec![0.0, 1.0, std::f64::consts::PI, 2.0 * std::f64::consts::PI],
            generator: 1,
            connection: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let sum: usize = self.partition.iter().sum();
        if sum != self.n {
            return Err(Error::Config(format!(
                "partition {:?} sums to {sum} but --n is {}; the four block sizes must add up to n",
                self.partition, self.n
            )));
        }
        if self.n < 3 {
            return Err(Error::Config(format!("--n must be at least 3, got {}", self.n)));
        }
        Ok(())
    }
}

pub fn parse_partition(text: &str) -> Result<[usize; 4]> {
    let parts: Vec<usize> = text
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| {
            Error::Config(format!(
                "--partition expects four nonnegative integers like 2,2,1,0, got '{text}'"
            ))
        })?;
    <[usize; 4]>::try_from(parts)
        .map_err(|p| Error::Config(format!("--partition needs exactly four sizes, got {}", p.len())))
}

pub fn parse_params(text: &str) -> Result<Vec<Rational>> {
    text.split(',')
        .map(|p| {
            rational::parse(p)
                .ok_or_else(|| Error::Config(format!("--params entry '{p}' is not a rational like -1 or 3/4")))
        })
        .collect()
}

pub fn parse_samples(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("--t-samples entry '{p}' is not a real number")))
        })
        .collect()
}

/// One serialized output of a stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub stage: String,
    pub extension: &'static str,
    pub content: String,
}

impl Document {
    pub fn file_name(&self) -> String {
        format!("{}.{}", self.stage, self.extension)
    }

    pub fn sha256(&self) -> String {
        hex::encode(Sha256::digest(self.content.as_bytes()))
    }
}

/// Lazily computed pipeline state shared across stages.
pub struct Session {
    pub config: RunConfig,
    grading: OnceLock<GradingData>,
    family: OnceLock<FormFamily>,
    refined: OnceLock<FormFamily>,
}

impl Session {
    pub fn new(config: RunConfig) -> Result<Self> {
        config.validate()?;
        Ok(Self {
            config,
            grading: OnceLock::new(),
            family: OnceLock::new(),
            refined: OnceLock::new(),
        })
    }

    pub fn grading(&self) -> Result<&GradingData> {
        if let Some(g) = self.grading.get() {
            return Ok(g);
        }
        let g = block_grading(self.config.n, self.config.partition)?;
        Ok(self.grading.get_or_init(|| g))
    }

    pub fn family(&self) -> Result<&FormFamily> {
        let grading = self.grading()?;
        Ok(self.family.get_or_init(|| invariant_family(grading)))
    }

    pub fn refined(&self) -> Result<&FormFamily> {
        let family = self.family()?;
        Ok(self.refined.get_or_init(|| naturally_reductive_subfamily(family)))
    }

    pub fn json<T: Serialize>(&self, stage: &str, value: &T) -> Document {
        Document {
            stage: stage.to_string(),
            extension: "json",
            content: serde_json::to_string_pretty(value).expect("serializable") + "\n",
        }
    }

    pub fn text(&self, stage: &str, content: String) -> Document {
        Document {
            stage: stage.to_string(),
            extension: "txt",
            content,
        }
    }
}

pub trait Command: Send + Sync {
    fn name(&self) -> &'static str;
    fn run(&self, session: &Session, format: Format) -> Result<Vec<Document>>;
}

pub struct CommandRegistry {
    commands: Vec<Box<dyn Command>>,
}

impl CommandRegistry {
    pub fn with_builtins() -> Self {
        let mut registry = Self { commands: Vec::new() };
        registry.register(Box::new(Grade));
        registry.register(Box::new(Metrics));
        registry.register(Box::new(Reductive));
        registry.register(Box::new(Curvature));
        registry.register(Box::new(Lorentz));
        registry.register(Box::new(Geodesic));
        registry.register(Box::new(Report));
        registry
    }

    pub fn register(&mut self, command: Box<dyn Command>) {
        self.commands.retain(|c| c.name() != command.name());
        self.commands.push(command);
    }

    pub fn get(&self, name: &str) -> Result<&dyn Command> {
        self.commands
            .iter()
            .find(|c| c.name() == name)
            .map(|c| c.as_ref())
            .ok_or_else(|| Error::Config(format!("unknown command '{name}' (known: {})", self.names().join(", "))))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.commands.iter().map(|c| c.name()).collect()
    }
}

/// Stages chained by `report`, in order.
pub const REPORT_STAGES: [&str; 6] = ["grade", "verify", "metrics", "reductive", "curvature", "lorentz"];

/// Dispatches `config.command` and returns its documents.
pub fn run(config: RunConfig) -> Result<Vec<Document>> {
    let registry = CommandRegistry::with_builtins();
    let command = registry.get(&config.command)?;
    let format = config.output_format;
    let session = Session::new(config)?;
    command.run(&session, format)
}

#[derive(Debug, Serialize)]
pub struct ManifestEntry {
    pub stage: String,
    pub file: String,
    pub sha256: String,
}

pub fn manifest(documents: &[Document]) -> Vec<ManifestEntry> {
    documents
        .iter()
        .map(|d| ManifestEntry {
            stage: d.stage.clone(),
            file: d.file_name(),
            sha256: d.sha256(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing() {
        assert_eq!(parse_partition("2,2,1,0").unwrap(), [2, 2, 1, 0]);
        assert!(parse_partition("2,2,1").is_err());
        assert!(parse_partition("2,x,1,0").is_err());
        assert_eq!(
            parse_params("-1, 1/2").unwrap(),
            vec![rational::int(-1), rational::rat(1, 2)]
        );
        assert!(parse_params("1/0").is_err());
        assert_eq!(parse_samples("0.1,3").unwrap(), vec![0.1, 3.0]);
        assert!("yaml".parse::<Format>().is_err());
    }

    #[test]
    fn invalid_partition_is_rejected() {
        let err = run(RunConfig::new("grade", 5, [2, 2, 2, 0])).unwrap_err();
        assert!(err.to_string().contains("must add up to n"));
    }

    #[test]
    fn registry_names() {
        let r = CommandRegistry::with_builtins();
        assert_eq!(
            r.names(),
            [
                "grade",
                "metrics",
                "reductive",
                "curvature",
                "lorentz",
                "geodesic",
                "report"
            ]
        );
        assert!(r.get("plot").is_err());
    }
}
