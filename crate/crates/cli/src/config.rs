//! Session configuration, from a JSON document or from command-line flags.

use std::path::PathBuf;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use trichar_core::families::Family;
use trichar_core::Error;

use crate::document::{GroupDocument, SubgroupDocument};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Validate,
    Superclasses,
    Table,
    Restrict,
    Superinduce,
    Products,
    CheckAll,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Builtin {
    pub family: String,
    #[serde(default = "default_n")]
    pub n: usize,
    pub q: u32,
}

fn default_n() -> usize {
    2
}

impl Builtin {
    /// Parses `family=NAME,n=N,q=Q`.
    pub fn parse(s: &str) -> Result<Self, Error> {
        let (mut family, mut n, mut q) = (None, None, None);
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| {
                Error::Usage(format!(
                    "expected key=value in builtin descriptor, got {part:?}"
                ))
            })?;
            let num = |v: &str| {
                v.parse::<u32>()
                    .map_err(|_| Error::Usage(format!("{k} must be a number, got {v:?}")))
            };
            match k {
                "family" => family = Some(v.to_string()),
                "n" => n = Some(num(v)? as usize),
                "q" => q = Some(num(v)?),
                _ => return Err(Error::Usage(format!("unknown builtin key {k:?}"))),
            }
        }
        let family =
            family.ok_or_else(|| Error::Usage("builtin descriptor needs family=".into()))?;
        Family::parse(&family)?;
        Ok(Builtin {
            family,
            n: n.unwrap_or(2),
            q: q.ok_or_else(|| Error::Usage("builtin descriptor needs q=".into()))?,
        })
    }

    pub fn name(&self) -> String {
        match self.family.as_str() {
            "affine" => format!("affine({})", self.q),
            f => format!("{}({},{})", f.to_uppercase(), self.n, self.q),
        }
    }
}

/// A group given inline or by path.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Source<T> {
    Path(PathBuf),
    Inline(T),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SessionConfig {
    pub command: Command,
    #[serde(default)]
    pub builtin: Option<Builtin>,
    #[serde(default)]
    pub input: Option<Source<GroupDocument>>,
    /// For `restrict` and `superinduce`; without it the standard catalog is used.
    #[serde(default)]
    pub subgroup: Option<Source<SubgroupDocument>>,
    #[serde(default)]
    pub format: Format,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub jobs: Option<usize>,
}

impl SessionConfig {
    pub fn check(&self) -> Result<(), Error> {
        match (&self.builtin, &self.input) {
            (Some(_), Some(_)) => Err(Error::Usage(
                "give either builtin or input, not both".into(),
            )),
            (None, None) => Err(Error::Usage("missing group: give builtin or input".into())),
            _ => Ok(()),
        }?;
        if let Some(b) = &self.builtin {
            Family::parse(&b.family)?;
        }
        if self.subgroup.is_some()
            && !matches!(self.command, Command::Restrict | Command::Superinduce)
        {
            return Err(Error::Usage(
                "subgroup is only used by restrict and superinduce".into(),
            ));
        }
        if self.jobs == Some(0) {
            return Err(Error::Usage("jobs must be positive".into()));
        }
        Ok(())
    }
}

/// Parses a configuration document. Schema errors name the offending field path.
pub fn parse_config(document: &str) -> Result<SessionConfig, Error> {
    let de = &mut serde_json::Deserializer::from_str(document);
    let config: SessionConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::Usage(format!("config field {path}: {}", e.into_inner()))
    })?;
    config.check()?;
    Ok(config)
}

/// Reads and parses a JSON file into `T`, with field paths in errors.
pub fn read_json<T: serde::de::DeserializeOwned>(path: &std::path::Path) -> Result<T, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        Error::Validation(format!("{} at {}: {}", path.display(), e.path(), e.inner()))
    })
}
