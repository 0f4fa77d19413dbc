//! Reading and writing skeleton sequences, plus synthetic clip generation.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use ndarray::ArrayView3;

use crate::error::{Error, Result};
use crate::sequence::SkeletonSequence;

pub mod csv_long;
pub mod json;
pub mod ntu;
pub mod synth;

pub use csv_long::{parse_csv, write_csv, write_csv_grid};
pub use json::{parse_json, write_json, write_json_grid};
pub use ntu::parse_ntu_skeleton;
pub use synth::{synthesize, Segment, SyntheticSpec, Waveform};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Ntu,
    Csv,
    Json,
}

impl Format {
    /// Guesses from the file extension (`.skeleton`, `.csv`, `.json`).
    pub fn from_path(path: &Path) -> Option<Self> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "skeleton" => Some(Format::Ntu),
            "csv" => Some(Format::Csv),
            "json" => Some(Format::Json),
            _ => None,
        }
    }

    /// Format used for writing: NTU input is written back as JSON.
    pub fn output_family(self) -> Self {
        match self {
            Format::Ntu => Format::Json,
            other => other,
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            Format::Ntu => "skeleton",
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Format::Ntu => "ntu",
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ntu" => Ok(Format::Ntu),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::InvalidParameter {
                name: "format",
                reason: format!("unknown format `{other}`"),
            }),
        }
    }
}

pub fn parse(text: &str, format: Format, source: &str) -> Result<SkeletonSequence> {
    match format {
        Format::Ntu => ntu::parse_ntu_skeleton_with_source(text, source),
        Format::Csv => csv_long::parse_csv_with_source(text, source),
        Format::Json => json::parse_json_with_source(text, source),
    }
}

/// Serializes a grid in `format`'s output family.
pub fn write_grid(data: ArrayView3<'_, f64>, format: Format, source: Option<&str>) -> String {
    match format.output_family() {
        Format::Csv => write_csv_grid(data),
        _ => write_json_grid(data, source, None),
    }
}
