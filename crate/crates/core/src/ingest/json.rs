//! JSON sequences: `{"channels", "frames", "joints", "data"}` with `data`
//! a nested `C x T x V` list. `source` and `joint_labels` are optional.

use ndarray::{Array3, ArrayView3};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::sequence::SkeletonSequence;

const KNOWN_KEYS: [&str; 6] = ["channels", "frames", "joints", "data", "source", "joint_labels"];

fn dim(obj: &Map<String, Value>, key: &str) -> Result<usize> {
    obj.get(key)
        .and_then(Value::as_u64)
        .map(|n| n as usize)
        .ok_or_else(|| Error::SchemaViolation(key.to_string()))
}

fn list<'a>(value: &'a Value, len: usize, path: &str) -> Result<&'a Vec<Value>> {
    let items = value
        .as_array()
        .ok_or_else(|| Error::SchemaViolation(path.to_string()))?;
    if items.len() != len {
        return Err(Error::DimensionMismatch(format!(
            "{path} has {} entries, expected {len}",
            items.len()
        )));
    }
    Ok(items)
}

pub fn parse_json(text: &str) -> Result<SkeletonSequence> {
    parse_json_with_source(text, "json")
}

pub fn parse_json_with_source(text: &str, source: &str) -> Result<SkeletonSequence> {
    let root: Value = serde_json::from_str(text).map_err(|e| Error::MalformedLine {
        line: e.line(),
        reason: e.to_string(),
    })?;
    let obj = root.as_object().ok_or_else(|| Error::SchemaViolation("$".into()))?;
    if let Some(unknown) = obj.keys().find(|k| !KNOWN_KEYS.contains(&k.as_str())) {
        return Err(Error::SchemaViolation(unknown.clone()));
    }
    let (c, t, v) = (dim(obj, "channels")?, dim(obj, "frames")?, dim(obj, "joints")?);
    let data_value = obj.get("data").ok_or_else(|| Error::SchemaViolation("data".into()))?;

    let mut data = Array3::zeros((c, t, v));
    for (ci, plane) in list(data_value, c, "data")?.iter().enumerate() {
        for (ti, row) in list(plane, t, &format!("data[{ci}]"))?.iter().enumerate() {
            let path = format!("data[{ci}][{ti}]");
            for (vi, x) in list(row, v, &path)?.iter().enumerate() {
                data[[ci, ti, vi]] = x
                    .as_f64()
                    .ok_or_else(|| Error::SchemaViolation(format!("{path}[{vi}]")))?;
            }
        }
    }

    let source = match obj.get("source") {
        None => source.to_string(),
        Some(Value::String(s)) => s.clone(),
        Some(_) => return Err(Error::SchemaViolation("source".into())),
    };
    let seq = SkeletonSequence::new(data, source)?;
    match obj.get("joint_labels") {
        None | Some(Value::Null) => Ok(seq),
        Some(Value::Array(items)) => {
            let labels = items
                .iter()
                .map(|l| l.as_str().map(str::to_string))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::SchemaViolation("joint_labels".into()))?;
            seq.with_joint_labels(labels)
        }
        Some(_) => Err(Error::SchemaViolation("joint_labels".into())),
    }
}

/// Writes any `C x T x V` grid; numbers use the shortest exact representation.
pub fn write_json_grid(data: ArrayView3<'_, f64>, source: Option<&str>, labels: Option<&[String]>) -> String {
    let (c, t, v) = data.dim();
    let nested: Vec<Vec<Vec<f64>>> = data
        .outer_iter()
        .map(|plane| plane.outer_iter().map(|row| row.to_vec()).collect())
        .collect();
    let mut obj = Map::new();
    obj.insert("channels".into(), c.into());
    obj.insert("frames".into(), t.into());
    obj.insert("joints".into(), v.into());
    obj.insert("data".into(), serde_json::to_value(nested).expect("finite grid"));
    if let Some(s) = source {
        obj.insert("source".into(), s.into());
    }
    if let Some(l) = labels {
        obj.insert("joint_labels".into(), l.into());
    }
    let mut out = serde_json::to_string(&Value::Object(obj)).expect("json serializes");
    out.push('\n');
    out
}

pub fn write_json(seq: &SkeletonSequence) -> String {
    write_json_grid(seq.data(), Some(seq.source()), seq.joint_labels())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_sequence_round_trip() {
        let seq = SkeletonSequence::new(Array3::zeros((3, 2, 25)), "zeros").unwrap();
        assert_eq!(parse_json(&write_json(&seq)).unwrap(), seq);
    }

    #[test]
    fn ragged_data() {
        let text = r#"{"channels":1,"frames":2,"joints":2,"data":[[[0,0],[0]]]}"#;
        assert!(matches!(parse_json(text).unwrap_err(), Error::DimensionMismatch(_)));
    }

    #[test]
    fn missing_and_unknown_keys() {
        let text = r#"{"channels":1,"frames":2,"data":[[[0],[0]]]}"#;
        assert_eq!(parse_json(text).unwrap_err(), Error::SchemaViolation("joints".into()));
        let text = r#"{"channels":1,"frames":2,"joints":1,"data":[[[0],[0]]],"fps":30}"#;
        assert_eq!(parse_json(text).unwrap_err(), Error::SchemaViolation("fps".into()));
        let text = r#"{"channels":1,"frames":2,"joints":1,"data":[[["a"],[0]]]}"#;
        assert_eq!(
            parse_json(text).unwrap_err(),
            Error::SchemaViolation("data[0][0][0]".into())
        );
    }

    #[test]
    fn labels_survive() {
        let seq = SkeletonSequence::new(Array3::zeros((1, 2, 2)), "l")
            .unwrap()
            .with_joint_labels(vec!["head".into(), "hand".into()])
            .unwrap();
        let back = parse_json(&write_json(&seq)).unwrap();
        assert_eq!(back.joint_labels().unwrap(), ["head", "hand"]);
    }
}
