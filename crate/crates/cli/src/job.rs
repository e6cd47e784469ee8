//! Job files: the JSON input format and its validation against the ring.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use loccoh::cech::AmbientQuotient;
use loccoh::corpus::Instance;
use loccoh::linalg::ScalarField;
use loccoh::monomial::{Monomial, MonomialIdeal, PolyRing};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Lyubeznik,
    Cd,
    Ann,
    Reduce,
    Seqcm,
    Filtration,
    Shapes,
    VerifyAll,
}

impl FromStr for Command {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        serde_json::from_value(serde_json::Value::String(s.to_string()))
            .map_err(|_| CliError::Usage(format!("unknown command `{s}`")))
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match serde_json::to_value(self) {
            Ok(serde_json::Value::String(s)) => f.write_str(&s),
            _ => Err(fmt::Error),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<usize>,
    /// `[lo, hi]` for the Bass number scan.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scan_box: Option<[i32; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl JobOptions {
    fn is_empty(&self) -> bool {
        *self == JobOptions::default()
    }
}

fn default_field() -> String {
    "Q".into()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub vars: Vec<String>,
    #[serde(default = "default_field")]
    pub field: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<String>,
    pub ideal: Vec<String>,
    pub cmd: Command,
    #[serde(default, skip_serializing_if = "JobOptions::is_empty")]
    pub options: JobOptions,
}

/// A job resolved against its ring.
#[derive(Debug, Clone)]
pub struct Job {
    pub spec: JobSpec,
    pub field: ScalarField,
    pub ring: Arc<PolyRing>,
    pub ambient: AmbientQuotient,
    pub ideal: MonomialIdeal,
}

/// `"Q"` or `"F<p>"` for a prime `p`.
pub fn parse_field(s: &str) -> Result<ScalarField, loccoh::Error> {
    match s.trim() {
        "Q" | "QQ" => Ok(ScalarField::Rationals),
        t => {
            let p = t
                .strip_prefix('F')
                .or_else(|| t.strip_prefix("GF"))
                .and_then(|d| d.parse::<u64>().ok())
                .ok_or_else(|| {
                    loccoh::Error::Parse(format!("field must be \"Q\" or \"F<p>\", got {t:?}"))
                })?;
            ScalarField::prime(p)
        }
    }
}

pub fn field_name(f: ScalarField) -> String {
    match f {
        ScalarField::Rationals => "Q".into(),
        ScalarField::Prime(p) => format!("F{p}"),
    }
}

/// 1-based line and column of the first occurrence of `needle` in `text`.
fn locate(text: &str, needle: &str) -> Option<(usize, usize)> {
    let at = text.find(needle)?;
    let before = &text[..at];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    Some((line, column))
}

fn gens(ring: &Arc<PolyRing>, strs: &[String]) -> Result<Vec<Monomial>, (loccoh::Error, String)> {
    strs.iter()
        .map(|s| Monomial::parse(s, ring).map_err(|e| (e, s.clone())))
        .collect()
}

impl JobSpec {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("job specs serialize")
    }

    pub fn from_instance(inst: &Instance, cmd: Command) -> Self {
        let ring = inst.ambient.ring();
        let show = |id: &MonomialIdeal| -> Vec<String> {
            id.gens()
                .iter()
                .map(|g| g.display(ring).to_string())
                .collect()
        };
        JobSpec {
            vars: ring.names().to_vec(),
            field: field_name(ring.field()),
            relations: show(inst.ambient.relations()),
            ideal: show(&inst.ideal),
            cmd,
            options: JobOptions::default(),
        }
    }

    /// Builds the ring and ideals; `source` is used to locate errors.
    pub fn resolve(&self, source: Option<&str>) -> Result<Job, CliError> {
        let at = |needle: &str| {
            source
                .and_then(|t| locate(t, &format!("\"{needle}\"")))
                .map(|(l, c)| (l, c + 1))
        };
        let field = parse_field(&self.field).map_err(|e| CliError::Invalid {
            source: e,
            location: at(&self.field),
        })?;
        let ring = PolyRing::new(self.vars.clone(), field).map_err(|e| CliError::Invalid {
            location: source.and_then(|t| locate(t, "\"vars\"")),
            source: e,
        })?;
        let build = |strs: &[String]| -> Result<MonomialIdeal, CliError> {
            let ms = gens(&ring, strs).map_err(|(e, s)| CliError::Invalid {
                source: e,
                location: at(&s),
            })?;
            Ok(MonomialIdeal::new(&ring, ms)?)
        };
        let relations = build(&self.relations)?;
        let ideal = build(&self.ideal)?;
        let ambient = AmbientQuotient::new(relations)?;
        Ok(Job {
            spec: self.clone(),
            field,
            ring,
            ambient,
            ideal,
        })
    }
}

pub fn parse_spec(text: &str) -> Result<JobSpec, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Syntax {
        message: e
            .to_string()
            .split(" at line ")
            .next()
            .unwrap_or_default()
            .to_string(),
        line: e.line(),
        column: e.column(),
    })
}

/// Parses and validates a job file.
pub fn parse_job(text: &str) -> Result<Job, CliError> {
    parse_spec(text)?.resolve(Some(text))
}
