//! Point sets and other inputs, inline or from JSON files.

use std::fs;
use std::path::Path;

use midpoint::{Point, Rational};
use serde::Deserialize;

use crate::CliError;

#[derive(Deserialize)]
#[serde(untagged)]
enum PointFile {
    Bare(Vec<Point>),
    Wrapped { points: Vec<Point> },
}

pub fn read_json(path: &Path) -> Result<serde_json::Value, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
    serde_json::from_str(&text).map_err(CliError::Json)
}

fn looks_like_file(arg: &str) -> bool {
    arg.ends_with(".json") || Path::new(arg).is_file()
}

/// `0,0; 1,0; 0,1`, or a JSON file holding `[[..], ..]` or `{"points": [..]}`.
pub fn point_set(arg: &str) -> Result<Vec<Point>, CliError> {
    if looks_like_file(arg) {
        let value = read_json(Path::new(arg))?;
        let parsed: PointFile = serde_json::from_value(value).map_err(CliError::Json)?;
        return Ok(match parsed {
            PointFile::Bare(p) | PointFile::Wrapped { points: p } => p,
        });
    }
    let arg = arg.trim().trim_start_matches('[').trim_end_matches(']');
    arg.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| Point::parse(s).map_err(CliError::Core))
        .collect()
}

pub fn point(arg: &str) -> Result<Point, CliError> {
    let arg = arg.trim().trim_start_matches('(').trim_end_matches(')');
    Point::parse(arg).map_err(CliError::Core)
}

pub fn rationals(arg: &str) -> Result<Vec<Rational>, CliError> {
    midpoint::formula::parse_coefficients(arg).map_err(CliError::Core)
}
