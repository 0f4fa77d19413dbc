//! Long-format CSV: header `frame,joint,c1[,c2,...]`, one row per (frame, joint).
//!
//! Frame and joint numbers are 1-based. Rows may come in any order but must
//! cover the full grid exactly once. Values are written with 17 significant
//! digits in exponent notation, which round-trips every `f64` exactly.

use ndarray::{Array3, ArrayView3};

use crate::error::{Error, Result};
use crate::sequence::SkeletonSequence;

pub fn parse_csv(text: &str) -> Result<SkeletonSequence> {
    parse_csv_with_source(text, "csv")
}

pub fn parse_csv_with_source(text: &str, source: &str) -> Result<SkeletonSequence> {
    let mut reader = ::csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(::csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut records = reader.records();

    let header = match records.next() {
        Some(Ok(h)) => h,
        Some(Err(e)) => {
            return Err(Error::MalformedHeader {
                line: 1,
                reason: e.to_string(),
            })
        }
        None => {
            return Err(Error::MalformedHeader {
                line: 1,
                reason: "empty input".into(),
            })
        }
    };
    let names: Vec<&str> = header.iter().collect();
    let channels = names.len().saturating_sub(2);
    let header_ok = names.len() >= 3
        && names[0] == "frame"
        && names[1] == "joint"
        && names[2..].iter().enumerate().all(|(i, n)| *n == format!("c{}", i + 1));
    if !header_ok {
        return Err(Error::MalformedHeader {
            line: 1,
            reason: format!("expected `frame,joint,c1[,c2[,c3]]`, found `{}`", names.join(",")),
        });
    }

    let mut rows: Vec<(usize, usize, Vec<f64>)> = Vec::new();
    for record in records {
        let record = record.map_err(|e| Error::MalformedLine {
            line: e.position().map_or(0, |p| p.line() as usize),
            reason: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.len() == 1 && record.get(0) == Some("") {
            continue;
        }
        if record.len() != channels + 2 {
            return Err(Error::RaggedChannelCount {
                line,
                expected: channels + 2,
                got: record.len(),
            });
        }
        let index = |i: usize, what: &str| -> Result<usize> {
            let raw = &record[i];
            match raw.parse::<usize>() {
                Ok(n) if n >= 1 => Ok(n),
                _ => Err(Error::MalformedLine {
                    line,
                    reason: format!("{what} must be a positive integer, found `{raw}`"),
                }),
            }
        };
        let frame = index(0, "frame")?;
        let joint = index(1, "joint")?;
        let values = (2..record.len())
            .map(|i| {
                record[i].parse::<f64>().map_err(|_| Error::MalformedLine {
                    line,
                    reason: format!("bad value `{}`", &record[i]),
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push((frame, joint, values));
    }

    let frames = rows.iter().map(|r| r.0).max().unwrap_or(0);
    let joints = rows.iter().map(|r| r.1).max().unwrap_or(0);
    if frames == 0 || joints == 0 {
        return Err(Error::MissingCell(1, 1));
    }
    let mut seen = vec![false; frames * joints];
    let mut data = Array3::zeros((channels, frames, joints));
    for (frame, joint, values) in rows {
        let cell = (frame - 1) * joints + (joint - 1);
        if std::mem::replace(&mut seen[cell], true) {
            return Err(Error::DuplicateCell(frame, joint));
        }
        for (c, x) in values.into_iter().enumerate() {
            data[[c, frame - 1, joint - 1]] = x;
        }
    }
    if let Some(cell) = seen.iter().position(|&s| !s) {
        return Err(Error::MissingCell(cell / joints + 1, cell % joints + 1));
    }
    SkeletonSequence::new(data, source)
}

/// Writes any `C x T x V` grid in long format, frame-major order.
pub fn write_csv_grid(data: ArrayView3<'_, f64>) -> String {
    let (c, t, v) = data.dim();
    let mut out = String::from("frame,joint");
    for ch in 1..=c {
        out.push_str(&format!(",c{ch}"));
    }
    out.push('\n');
    for frame in 0..t {
        for joint in 0..v {
            out.push_str(&format!("{},{}", frame + 1, joint + 1));
            for ch in 0..c {
                out.push_str(&format!(",{:.16e}", data[[ch, frame, joint]]));
            }
            out.push('\n');
        }
    }
    out
}

pub fn write_csv(seq: &SkeletonSequence) -> String {
    write_csv_grid(seq.data())
}
