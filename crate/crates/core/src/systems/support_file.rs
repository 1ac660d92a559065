//! JSON support files.
//!
//! ```json
//! {
//!   "dim": 2,
//!   "provenance": "cyclic-reduced n=3",
//!   "variables": ["y1", "y2"],
//!   "supports": [
//!     [[0, 0], [1, 0], [0, 1]],
//!     [[1, 0], [1, 1], [0, 1]]
//!   ]
//! }
//! ```
//!
//! `provenance` and `variables` are optional. Exponents that do not fit in a
//! signed 64-bit integer are written as decimal strings.

use serde::{Deserialize, Serialize};

use super::SystemSpec;
use crate::error::SystemError;
use crate::linalg::IntVector;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SupportFile {
    dim: usize,
    #[serde(default)]
    provenance: Option<String>,
    #[serde(default)]
    variables: Option<Vec<String>>,
    supports: Vec<Vec<IntVector>>,
}

pub fn from_support_json(text: &str) -> Result<SystemSpec, SystemError> {
    let f: SupportFile = serde_json::from_str(text)?;
    if let Some(vars) = &f.variables {
        if vars.len() != f.dim {
            return Err(SystemError::InvalidParameter(format!(
                "{} variable names for dimension {}",
                vars.len(),
                f.dim
            )));
        }
    }
    let spec = SystemSpec::new(f.dim, f.supports, f.provenance.unwrap_or_default())?;
    Ok(match f.variables {
        Some(v) => spec.with_variables(v),
        None => spec,
    })
}

/// Serializes with one support per line; the output is byte-stable.
pub fn to_support_json(spec: &SystemSpec) -> String {
    let mut out = String::from("{\n");
    out.push_str(&format!("  \"dim\": {},\n", spec.ambient_dim));
    out.push_str(&format!("  \"provenance\": {},\n", json(&spec.provenance)));
    if let Some(vars) = &spec.variables {
        out.push_str(&format!("  \"variables\": {},\n", json(vars)));
    }
    out.push_str("  \"supports\": [\n");
    for (i, s) in spec.supports.iter().enumerate() {
        let sep = if i + 1 < spec.supports.len() { "," } else { "" };
        out.push_str(&format!("    {}{sep}\n", json(s)));
    }
    out.push_str("  ]\n}\n");
    out
}

fn json<T: Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}
