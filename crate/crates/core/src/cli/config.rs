use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{Error, Result};

/// Read a JSON config file into a flat key map.
pub fn load(path: &Path) -> Result<Map<String, Value>> {
    let text = fs::read_to_string(path)?;
    match serde_json::from_str(&text)? {
        Value::Object(map) => Ok(map),
        _ => Err(Error::param("config", "config file must hold a JSON object")),
    }
}

/// Deserialize `T` from `file` keys overlaid by the non-null fields of `flags`.
///
/// Keys in the file that `T` does not know are ignored, so one config file
/// can serve several commands.
pub fn merge<T: Serialize + DeserializeOwned>(file: &Map<String, Value>, flags: &T) -> Result<T> {
    let mut merged = file.clone();
    if let Value::Object(set) = serde_json::to_value(flags)? {
        for (k, v) in set {
            if !v.is_null() {
                merged.insert(k, v);
            }
        }
    }
    serde_json::from_value(Value::Object(merged)).map_err(|e| Error::param("config", e.to_string()))
}
