//! JSON shapes for descriptors and representatives.
//!
//! Polynomials are lowest-first coefficient arrays; matrices are arrays of
//! integer rows.

use serde::{Deserialize, Serialize};

use crate::classify::{ClassDescriptor, Entry, Sign, SymplecticPair};
use crate::error::{Error, Result};
use crate::ffield::Fp;
use crate::fmatrix::Mat;
use crate::fpoly::Poly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescriptorJson {
    pub p: u64,
    pub entries: Vec<EntryJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum EntryJson {
    Unit { sign: i64, n: usize },
    #[serde(rename = "self")]
    SelfRecip { g: Vec<u32>, n: usize },
    Pair { g: Vec<u32>, n: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    pub descriptor: DescriptorJson,
    #[serde(rename = "X")]
    pub x: Vec<Vec<u32>>,
    #[serde(rename = "A")]
    pub a: Vec<Vec<u32>>,
}

impl From<&ClassDescriptor> for DescriptorJson {
    fn from(d: &ClassDescriptor) -> Self {
        let entries = d
            .entries()
            .iter()
            .map(|e| match e {
                Entry::Unit { sign, n } => EntryJson::Unit { sign: sign.as_i64(), n: *n },
                Entry::SelfRecip { g, n } => EntryJson::SelfRecip { g: g.coeffs().to_vec(), n: *n },
                Entry::Pair { g, n } => EntryJson::Pair { g: g.coeffs().to_vec(), n: *n },
            })
            .collect();
        DescriptorJson { p: d.field().p() as u64, entries }
    }
}

impl DescriptorJson {
    /// Validates and canonicalizes.
    pub fn to_descriptor(&self) -> Result<ClassDescriptor> {
        let field = Fp::new(self.p)?;
        let poly = |g: &[u32]| Poly::new(field, g.iter().map(|&c| c % field.p()).collect());
        let entries = self
            .entries
            .iter()
            .map(|e| {
                Ok(match e {
                    EntryJson::Unit { sign, n } => Entry::Unit { sign: Sign::from_i64(*sign)?, n: *n },
                    EntryJson::SelfRecip { g, n } => Entry::SelfRecip { g: poly(g), n: *n },
                    EntryJson::Pair { g, n } => Entry::Pair { g: poly(g), n: *n },
                })
            })
            .collect::<Result<Vec<_>>>()?;
        ClassDescriptor::new(field, entries)
    }
}

impl From<&SymplecticPair> for PairJson {
    fn from(p: &SymplecticPair) -> Self {
        PairJson { descriptor: (&p.descriptor).into(), x: p.x.to_rows(), a: p.a.to_rows() }
    }
}

impl PairJson {
    /// Rechecks that X preserves A and that the stated descriptor is X's.
    pub fn to_pair(&self) -> Result<SymplecticPair> {
        let d = self.descriptor.to_descriptor()?;
        let field = d.field();
        let mat = |rows: &[Vec<u32>]| {
            let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|&v| v as i64).collect()).collect();
            Mat::from_rows(field, &rows)
        };
        let pair = SymplecticPair::new(mat(&self.x)?, mat(&self.a)?)?;
        if pair.descriptor != d {
            return Err(Error::Parse("descriptor does not match X".into()));
        }
        Ok(pair)
    }
}

pub fn descriptor_to_json(d: &ClassDescriptor) -> String {
    serde_json::to_string(&DescriptorJson::from(d)).expect("descriptor serializes")
}

pub fn descriptor_from_json(s: &str) -> Result<ClassDescriptor> {
    let dto: DescriptorJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    dto.to_descriptor()
}

pub fn pair_to_json(p: &SymplecticPair) -> String {
    serde_json::to_string(&PairJson::from(p)).expect("pair serializes")
}

pub fn pair_from_json(s: &str) -> Result<SymplecticPair> {
    let dto: PairJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    dto.to_pair()
}
