use serde::{Deserialize, Serialize};

use super::{CoverList, FiniteLattice};
use crate::error::{LatticeError, Result};

/// On-disk form: `{"name": ..., "elements": [...], "covers": [[lo, hi], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    #[serde(default)]
    pub name: String,
    pub elements: Vec<String>,
    pub covers: Vec<[u32; 2]>,
}

impl From<&FiniteLattice> for LatticeJson {
    fn from(l: &FiniteLattice) -> Self {
        LatticeJson {
            name: l.name().to_string(),
            elements: l.names().to_vec(),
            covers: l.covers().into_iter().map(|(a, b)| [a.0, b.0]).collect(),
        }
    }
}

impl LatticeJson {
    pub fn build(&self) -> Result<FiniteLattice> {
        for (i, [lo, hi]) in self.covers.iter().enumerate() {
            for v in [lo, hi] {
                if *v as usize >= self.elements.len() {
                    return Err(LatticeError::Parse {
                        location: format!("covers[{i}]"),
                        message: format!("index {v} out of range for {} elements", self.elements.len()),
                    });
                }
            }
        }
        let cl = CoverList {
            name: self.name.clone(),
            size: self.elements.len(),
            covers: self.covers.iter().map(|&[a, b]| (a, b)).collect(),
            names: Some(self.elements.clone()),
        };
        FiniteLattice::from_covers(&cl)
    }
}

pub fn serialize(l: &FiniteLattice) -> String {
    serde_json::to_string_pretty(&LatticeJson::from(l)).expect("lattice json is always serializable")
}

pub fn parse(text: &str) -> Result<FiniteLattice> {
    let raw: LatticeJson = serde_json::from_str(text).map_err(|e| LatticeError::Parse {
        location: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    raw.build()
}
