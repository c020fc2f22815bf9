//! Generator files: the tower, the construction parameters and the
//! generator list, as one JSON document.

use serde::{Deserialize, Serialize};

use crate::constructions::{
    ConstructionParams, GeneratorMeta, GeneratorRecord, Params1, Params2,
};
use crate::error::{Error, Result};
use crate::field::{FieldDescription, FieldTower};
use crate::subspace::SubspaceJson;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorEntry {
    pub meta: GeneratorMeta,
    pub subspace: SubspaceJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorFile {
    pub field: FieldDescription,
    pub construction: u8,
    pub params: serde_json::Value,
    pub generators: Vec<GeneratorEntry>,
}

impl GeneratorFile {
    pub fn new(t: &FieldTower, params: &ConstructionParams, records: &[GeneratorRecord]) -> Self {
        let params_json = match params {
            ConstructionParams::One(p) => serde_json::to_value(p),
            ConstructionParams::Two(p) => serde_json::to_value(p),
        }
        .expect("plain data");
        GeneratorFile {
            field: t.description(),
            construction: params.id(),
            params: params_json,
            generators: records
                .iter()
                .map(|r| GeneratorEntry {
                    meta: r.meta.clone(),
                    subspace: r.subspace.to_json(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// Rebuilds the tower, re-validates the parameters against it and
    /// parses every subspace.
    pub fn load(&self) -> Result<(FieldTower, ConstructionParams, Vec<GeneratorRecord>)> {
        let t = FieldTower::from_description(&self.field)?;
        let params = match self.construction {
            1 => {
                let p: Params1 = serde_json::from_value(self.params.clone())?;
                let fresh = Params1::new(p.q, p.k, p.n, p.r)?;
                if fresh != p || (t.q(), t.k(), t.n()) != (p.q, p.k, p.n) {
                    return Err(Error::InvalidParams(
                        "construction 1 parameters disagree with the field".into(),
                    ));
                }
                ConstructionParams::One(p)
            }
            2 => {
                let p: Params2 = serde_json::from_value(self.params.clone())?;
                let fresh = Params2::new(&t, p.r)?;
                if (fresh.q, fresh.k, fresh.n, fresh.f0, fresh.m) != (p.q, p.k, p.n, p.f0, p.m) {
                    return Err(Error::InvalidParams(
                        "construction 2 parameters disagree with the field".into(),
                    ));
                }
                p.check_admissible(&t)?;
                ConstructionParams::Two(p)
            }
            c => return Err(Error::InvalidParams(format!("unknown construction {c}"))),
        };
        let records = self
            .generators
            .iter()
            .map(|e| {
                Ok(GeneratorRecord {
                    subspace: t.subspace_from_json(&e.subspace)?,
                    meta: e.meta.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((t, params, records))
    }
}
