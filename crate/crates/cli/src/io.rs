//! Input parsing and output emission.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use setdepth::{ConvexBody, DiscreteSetDistribution, UnitDirection};

/// Exit code for malformed or inconsistent input.
pub const EXIT_VALIDATION: i32 = 2;
/// Exit code for failures while computing.
pub const EXIT_COMPUTATION: i32 = 3;

/// An error tagged with the process exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub error: anyhow::Error,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#}", self.error)
    }
}

pub fn invalid(error: impl Into<anyhow::Error>) -> Failure {
    Failure {
        code: EXIT_VALIDATION,
        error: error.into(),
    }
}

/// Library errors that stem from bad input map to 2, everything else to 3.
pub fn from_lib(error: setdepth::Error) -> Failure {
    use setdepth::Error as E;
    let code = match error {
        E::InvalidArgument(_)
        | E::InvalidBody(_)
        | E::InvalidDistribution(_)
        | E::DimensionMismatch { .. }
        | E::MatrixShape { .. } => EXIT_VALIDATION,
        _ => EXIT_COMPUTATION,
    };
    Failure {
        code,
        error: error.into(),
    }
}

pub type CliResult<T> = Result<T, Failure>;

/// Parses JSON, naming the offending field on failure.
pub fn parse_json<T: DeserializeOwned>(text: &str, origin: &Path) -> CliResult<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        invalid(anyhow::anyhow!(
            "{}: at `{}`: {}",
            origin.display(),
            path,
            e.inner()
        ))
    })
}

pub fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(invalid)
}

/// A body together with the id used in tabular output.
#[derive(Debug, Clone, Serialize)]
pub struct NamedBody {
    pub id: String,
    pub body: ConvexBody,
}

/// Every body in the given files, in order. A file holds a single body or
/// an array of bodies; ids are the file stem, suffixed with `#i` for arrays.
pub fn load_bodies(paths: &[PathBuf]) -> CliResult<Vec<NamedBody>> {
    let mut out = Vec::new();
    for path in paths {
        let text = read(path)?;
        let stem = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        if !text.trim_start().starts_with('[') {
            out.push(NamedBody {
                id: stem,
                body: parse_json(&text, path)?,
            });
        } else {
            {
                let bodies: Vec<ConvexBody> = parse_json(&text, path)?;
                out.extend(bodies.into_iter().enumerate().map(|(i, body)| NamedBody {
                    id: format!("{stem}#{i}"),
                    body,
                }));
            }
        }
    }
    Ok(out)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SampleRow {
    a: f64,
    b: f64,
}

/// Interval-valued observations, header `a,b`, one unit of mass each.
pub fn load_sample_csv(path: &Path) -> CliResult<DiscreteSetDistribution> {
    let text = read(path)?;
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut bodies = Vec::new();
    for (i, row) in reader.deserialize::<SampleRow>().enumerate() {
        let row = row.map_err(|e| invalid(anyhow::anyhow!("{}: row {}: {e}", path.display(), i + 1)))?;
        let body = ConvexBody::interval(row.a, row.b)
            .map_err(|e| invalid(anyhow::anyhow!("{}: row {}: {e}", path.display(), i + 1)))?;
        bodies.push(body);
    }
    if bodies.is_empty() {
        return Err(invalid(anyhow::anyhow!("{}: no observations", path.display())));
    }
    DiscreteSetDistribution::equal_weight(bodies).map_err(from_lib)
}

/// The law from `--dist` or `--sample-csv`; exactly one must be given.
pub fn load_distribution(dist: Option<&Path>, sample: Option<&Path>) -> CliResult<DiscreteSetDistribution> {
    match (dist, sample) {
        (Some(path), None) => parse_json(&read(path)?, path),
        (None, Some(path)) => load_sample_csv(path),
        (Some(_), Some(_)) => Err(invalid(anyhow::anyhow!(
            "give either --dist or --sample-csv, not both"
        ))),
        (None, None) => Err(invalid(anyhow::anyhow!(
            "a distribution is required: --dist or --sample-csv"
        ))),
    }
}

pub fn check_dims(bodies: &[NamedBody], dim: usize) -> CliResult<()> {
    match bodies.iter().find(|b| b.body.dim() != dim) {
        Some(b) => Err(invalid(anyhow::anyhow!(
            "body `{}` has dimension {}, the distribution has dimension {dim}",
            b.id,
            b.body.dim()
        ))),
        None => Ok(()),
    }
}

/// Coordinates joined by spaces, for a single CSV field.
pub fn direction_field(u: &UnitDirection) -> String {
    u.coords()
        .iter()
        .map(f64::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// CSV text with a header row and LF line endings.
pub fn csv_text<R: Serialize>(rows: &[R], header: &[&str]) -> CliResult<String> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .has_headers(false)
        .from_writer(Vec::new());
    let fail = |e: csv::Error| Failure {
        code: EXIT_COMPUTATION,
        error: e.into(),
    };
    writer.write_record(header).map_err(fail)?;
    for row in rows {
        writer.serialize(row).map_err(fail)?;
    }
    let bytes = writer.into_inner().map_err(|e| Failure {
        code: EXIT_COMPUTATION,
        error: anyhow::anyhow!("{e}"),
    })?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn json_text<T: Serialize>(value: &T) -> CliResult<String> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Failure {
        code: EXIT_COMPUTATION,
        error: e.into(),
    })?;
    text.push('\n');
    Ok(text)
}

/// Writes to `--out` when given, stdout otherwise.
pub fn emit(text: &str, out: Option<&Path>) -> CliResult<()> {
    let result = match out {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .context("cannot write to stdout"),
    };
    result.map_err(|error| Failure {
        code: EXIT_COMPUTATION,
        error,
    })
}
