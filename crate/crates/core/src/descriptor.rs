//! Serializable code descriptor.
//!
//! Field elements are written as discrete-log indices with `-1` for zero.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galois::{Elem, FieldDescriptor, FiniteField};
use crate::lrc::{Family, LinearCode, Partition, RecoveringStructure};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionDescriptor {
    pub fibers: Vec<Vec<usize>>,
    pub xvals: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeDescriptor {
    pub schema_version: u32,
    pub field: FieldDescriptor,
    pub family: Family,
    pub n: usize,
    pub k: usize,
    /// Locality of each recovering structure.
    pub r: Vec<usize>,
    pub designed_distance: i64,
    pub fibers: Vec<Vec<usize>>,
    pub xvals: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second: Option<PartitionDescriptor>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<Vec<i64>>,
    pub generator: Vec<Vec<i64>>,
    /// Construction parameters, informational only.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, i64>,
}

fn wire(v: &[Elem]) -> Vec<i64> {
    v.iter().map(|e| e.to_wire()).collect()
}

fn unwire(field: &FiniteField, v: &[i64]) -> Result<Vec<Elem>> {
    v.iter().map(|&w| field.from_wire(w)).collect()
}

impl CodeDescriptor {
    pub fn from_code(code: &LinearCode) -> CodeDescriptor {
        let parts = code.structure().partitions();
        let to_desc = |p: &Partition| PartitionDescriptor { fibers: p.fibers().to_vec(), xvals: wire(p.xvals()) };
        let first = to_desc(&parts[0]);
        CodeDescriptor {
            schema_version: SCHEMA_VERSION,
            field: code.field().descriptor(),
            family: code.family(),
            n: code.len(),
            k: code.dimension(),
            r: code.localities(),
            designed_distance: code.designed_distance(),
            fibers: first.fibers,
            xvals: first.xvals,
            second: parts.get(1).map(to_desc),
            labels: code.labels().iter().map(|l| wire(l)).collect(),
            generator: code.generator().iter().map(|row| wire(row)).collect(),
            params: BTreeMap::new(),
        }
    }

    pub fn with_params<I: IntoIterator<Item = (&'static str, i64)>>(mut self, params: I) -> Self {
        self.params.extend(params.into_iter().map(|(k, v)| (k.to_string(), v)));
        self
    }

    /// Rebuilds the code, re-validating every invariant.
    pub fn to_code(&self) -> Result<LinearCode> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::InvalidStructure(format!(
                "unsupported schema version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        let field = Arc::new(FiniteField::from_descriptor(&self.field)?);
        let mut parts = vec![Partition::new(self.n, self.fibers.clone(), unwire(&field, &self.xvals)?)?];
        if let Some(s) = &self.second {
            parts.push(Partition::new(self.n, s.fibers.clone(), unwire(&field, &s.xvals)?)?);
        }
        let structure = RecoveringStructure::new(self.n, parts)?;
        let generator = self.generator.iter().map(|row| unwire(&field, row)).collect::<Result<Vec<_>>>()?;
        if generator.len() != self.k {
            return Err(Error::LengthMismatch { expected: self.k, got: generator.len() });
        }
        let labels = self.labels.iter().map(|l| unwire(&field, l)).collect::<Result<Vec<_>>>()?;
        let code = LinearCode::new(field, generator, structure, self.family, self.designed_distance, labels)?;
        if code.localities() != self.r {
            return Err(Error::ParameterMismatch(format!(
                "declared localities {:?} but fibers give {:?}",
                self.r,
                code.localities()
            )));
        }
        Ok(code)
    }
}
