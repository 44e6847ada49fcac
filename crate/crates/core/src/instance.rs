//! Instance files: a field, named subspaces, optional named bases and a task.
//!
//! ```json
//! {"field": {"p": 2, "k": 4},
//!  "subspaces": {"A": [[1,0,0,0],[0,1,1,0]], "B": [[0,1,1,0],[0,1,0,0]]},
//!  "bases": {"src": [[1,0,0,0],[0,1,1,0]]},
//!  "task": {"op": "match", "source": "src", "target": "B"}}
//! ```
//!
//! Vectors are coefficient lists, constant term first. Subspaces are spans of their
//! generators; bases must be independent.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{ExtensionField, FieldDescriptor};
use crate::subspace::{Basis, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub op: Option<String>,
    /// Basis or subspace name of the source; defaults to "A".
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    /// Subspace name of the target; defaults to "B".
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    /// Coordinate map for strong-matching checks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Vec<Vec<u64>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub field: FieldDescriptor,
    pub subspaces: BTreeMap<String, Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub bases: BTreeMap<String, Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub task: Option<TaskSpec>,
}

/// A validated instance.
#[derive(Debug, Clone)]
pub struct Instance {
    pub field: ExtensionField,
    pub subspaces: BTreeMap<String, Subspace>,
    pub bases: BTreeMap<String, Basis>,
    pub task: TaskSpec,
}

fn vectors(field: &ExtensionField, name: &str, raw: &[Vec<u64>]) -> Result<Vec<Vec<u32>>> {
    raw.iter()
        .map(|v| {
            field
                .element_from_u64(v)
                .map(|e| e.into_coeffs())
                .map_err(|e| Error::Invalid(format!("{name}: {e}")))
        })
        .collect()
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Invalid(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> Result<Instance> {
        let field = ExtensionField::from_descriptor(&self.field)?;
        let (p, k) = (field.p(), field.k());
        let mut subspaces = BTreeMap::new();
        for (name, raw) in &self.subspaces {
            let gens = vectors(&field, name, raw)?;
            subspaces.insert(name.clone(), Subspace::span(p, k, gens)?);
        }
        let mut bases = BTreeMap::new();
        for (name, raw) in &self.bases {
            let vs = vectors(&field, name, raw)?;
            let basis = Basis::from_vectors(p, k, vs)
                .map_err(|e| Error::Invalid(format!("basis {name}: {e}")))?;
            bases.insert(name.clone(), basis);
        }
        if let Some(phi) = self.task.as_ref().and_then(|t| t.phi.as_ref()) {
            if let Some(&c) = phi.iter().flatten().find(|&&c| c >= p as u64) {
                return Err(Error::CoefficientOutOfRange {
                    value: c,
                    p: p as u64,
                });
            }
        }
        Ok(Instance {
            field,
            subspaces,
            bases,
            task: self.task.clone().unwrap_or_default(),
        })
    }
}

impl Instance {
    pub fn load(path: &Path) -> Result<Self> {
        InstanceFile::load(path)?.validate()
    }

    pub fn subspace(&self, name: &str) -> Result<&Subspace> {
        self.subspaces
            .get(name)
            .or_else(|| self.bases.get(name).map(|b| b.parent()))
            .ok_or_else(|| Error::Invalid(format!("no subspace named {name:?}")))
    }

    /// A named basis, or the echelon basis of a named subspace.
    pub fn basis(&self, name: &str) -> Result<Basis> {
        if let Some(b) = self.bases.get(name) {
            return Ok(b.clone());
        }
        self.subspaces
            .get(name)
            .map(Basis::echelon)
            .ok_or_else(|| Error::Invalid(format!("no basis or subspace named {name:?}")))
    }

    pub fn source_name(&self) -> &str {
        self.task.source.as_deref().unwrap_or("A")
    }

    pub fn target_name(&self) -> &str {
        self.task.target.as_deref().unwrap_or("B")
    }

    pub fn phi(&self) -> Option<Vec<Vec<u32>>> {
        self.task.phi.as_ref().map(|m| {
            m.iter()
                .map(|r| r.iter().map(|&c| c as u32).collect())
                .collect()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_validate() {
        let text = r#"{"field":{"p":2,"k":3},
            "subspaces":{"B":[[0,1,0],[0,0,1]]},
            "bases":{"b":[[0,1,1],[0,0,1]]},
            "task":{"op":"automatch","source":"b","target":"B"}}"#;
        let inst = InstanceFile::parse(text).unwrap().validate().unwrap();
        assert_eq!(inst.field.modulus(), &[1, 1, 0, 1]);
        assert_eq!(inst.subspace("B").unwrap().dim(), 2);
        assert_eq!(
            inst.basis("b").unwrap().parent(),
            inst.subspace("B").unwrap()
        );
        assert_eq!(
            inst.basis("B").unwrap().vectors(),
            &[vec![0, 1, 0], vec![0, 0, 1]]
        );
        assert!(inst.basis("C").is_err());
    }

    #[test]
    fn rejects_bad_input() {
        let bad_modulus = r#"{"field":{"p":2,"k":3,"modulus":[1,1,1,1]},"subspaces":{}}"#;
        assert!(InstanceFile::parse(bad_modulus)
            .unwrap()
            .validate()
            .is_err());
        let dependent = r#"{"field":{"p":2,"k":3},"subspaces":{},"bases":{"x":[[1,0,0],[1,0,0]]}}"#;
        assert!(InstanceFile::parse(dependent).unwrap().validate().is_err());
        let out_of_range = r#"{"field":{"p":2,"k":3},"subspaces":{"A":[[2,0,0]]}}"#;
        assert!(InstanceFile::parse(out_of_range)
            .unwrap()
            .validate()
            .is_err());
        let short = r#"{"field":{"p":2,"k":3},"subspaces":{"A":[[1,0]]}}"#;
        assert!(InstanceFile::parse(short).unwrap().validate().is_err());
        assert!(InstanceFile::parse("{").is_err());
        assert!(
            InstanceFile::parse(r#"{"field":{"p":2,"k":3},"subspaces":{},"extra":1}"#).is_err()
        );
    }
}
