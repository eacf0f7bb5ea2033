//! JSON algebra definition files.
//!
//! ```json
//! { "name": "R2", "dim": 2, "parity": [0, 1], "unit": ["1", "0"],
//!   "structconst": [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"]] }
//! ```
//!
//! Omitted triples are zero. An optional `labels` array names the basis.

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::scalar::{format_rational, parse_rational};

use super::{AlgebraDef, Parity, Z2Error};

#[derive(Debug, Serialize, Deserialize)]
struct AlgebraFile {
    name: String,
    dim: usize,
    parity: Vec<u8>,
    unit: Vec<String>,
    structconst: Vec<(usize, usize, usize, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    labels: Vec<String>,
}

impl From<&AlgebraDef> for AlgebraFile {
    fn from(def: &AlgebraDef) -> Self {
        let mut structconst = Vec::new();
        for i in 0..def.dim {
            for j in 0..def.dim {
                for k in 0..def.dim {
                    let c = def.get(i, j, k);
                    if !c.is_zero() {
                        structconst.push((i, j, k, format_rational(c)));
                    }
                }
            }
        }
        Self {
            name: def.name.clone(),
            dim: def.dim,
            parity: def.parity.iter().map(|p| p.bit()).collect(),
            unit: def.unit.iter().map(format_rational).collect(),
            structconst,
            labels: def.labels.clone(),
        }
    }
}

impl TryFrom<AlgebraFile> for AlgebraDef {
    type Error = Z2Error;

    fn try_from(file: AlgebraFile) -> Result<Self, Z2Error> {
        let parity = file
            .parity
            .iter()
            .map(|&b| {
                Parity::from_bit(b).ok_or_else(|| Z2Error::Format(format!("parity value {b} is not 0 or 1")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if parity.len() != file.dim {
            return Err(Z2Error::ShapeMismatch {
                what: "parity",
                expected: file.dim,
                found: parity.len(),
            });
        }
        let mut def = AlgebraDef::new(file.name, parity).with_labels(file.labels);
        def.unit = file
            .unit
            .iter()
            .map(|s| rational(s))
            .collect::<Result<Vec<_>, _>>()?;
        for (i, j, k, c) in file.structconst {
            for index in [i, j, k] {
                if index >= def.dim {
                    return Err(Z2Error::IndexOutOfRange { index, dim: def.dim });
                }
            }
            let c = rational(&c)?;
            let cur = def.get(i, j, k).clone();
            def.set(i, j, k, cur + c);
        }
        Ok(def)
    }
}

fn rational(s: &str) -> Result<BigRational, Z2Error> {
    parse_rational(s).ok_or_else(|| Z2Error::Format(format!("bad rational {s:?}")))
}

/// Pretty-printed JSON for a definition.
pub fn to_json(def: &AlgebraDef) -> String {
    serde_json::to_string_pretty(&AlgebraFile::from(def)).expect("algebra file serializes")
}

pub fn from_json(text: &str) -> Result<AlgebraDef, Z2Error> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(|e| Z2Error::Format(e.to_string()))?;
    file.try_into()
}
