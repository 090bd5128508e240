use serde::{Deserialize, Serialize};

use super::{Arrangement, ArrangementError, Hyperplane};
use crate::exactlin::{format_rational, parse_rational};

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawArrangement {
    dim: usize,
    hyperplanes: Vec<RawHyperplane>,
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawHyperplane {
    normal: Vec<String>,
    offset: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

/// Reads the JSON arrangement format:
/// `{"dim": n, "hyperplanes": [{"normal": ["1","0"], "offset": "0", "label": "L1"}, ...]}`.
///
/// Labels default to `H1, H2, ...`.
pub fn parse_arrangement(text: &str) -> Result<Arrangement, ArrangementError> {
    let raw: RawArrangement = serde_json::from_str(text).map_err(|e| ArrangementError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let rational = |s: &str, location: String| {
        parse_rational(s).map_err(|e| ArrangementError::MalformedRational {
            location,
            message: e.to_string(),
        })
    };
    let mut hyperplanes = Vec::with_capacity(raw.hyperplanes.len());
    for (index, h) in raw.hyperplanes.iter().enumerate() {
        let normal = h
            .normal
            .iter()
            .enumerate()
            .map(|(k, s)| rational(s, format!("hyperplanes[{index}].normal[{k}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let offset = rational(&h.offset, format!("hyperplanes[{index}].offset"))?;
        if normal.len() != raw.dim {
            return Err(ArrangementError::DimensionMismatch {
                index,
                expected: raw.dim,
                found: normal.len(),
            });
        }
        let label = h.label.clone().unwrap_or_else(|| format!("H{}", index + 1));
        let hyperplane =
            Hyperplane::new(normal, offset, label).ok_or(ArrangementError::ZeroNormal { index })?;
        hyperplanes.push(hyperplane);
    }
    Arrangement::new(raw.dim, hyperplanes)
}

/// Writes an arrangement in the format read by [`parse_arrangement`].
pub fn to_json_string(arrangement: &Arrangement) -> String {
    let raw = RawArrangement {
        dim: arrangement.dim(),
        hyperplanes: arrangement
            .hyperplanes()
            .iter()
            .map(|h| RawHyperplane {
                normal: h.normal().iter().map(format_rational).collect(),
                offset: format_rational(h.offset()),
                label: Some(h.label().to_string()),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&raw).expect("arrangement serializes")
}
