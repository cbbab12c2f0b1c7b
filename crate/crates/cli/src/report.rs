//! JSON records written to stdout, one object per line.
//!
//! Field order in each struct is the key order on the wire, so these types
//! double as the stable output schema.

use serde::{Deserialize, Serialize};

use specht_ext::coherence::MultiSequence;
use specht_ext::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Slot {
    pub r: usize,
    pub s: usize,
    pub i: u64,
    pub v: u64,
}

/// The nonzero entries of `ms`, in canonical slot order.
pub fn slots(ms: &MultiSequence, lambda: &Partition) -> Vec<Slot> {
    ms.support(lambda)
        .into_iter()
        .map(|(slot, v)| Slot {
            r: slot.r,
            s: slot.s,
            i: slot.i,
            v,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct H1 {
    pub value: usize,
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyRecord {
    pub p: u64,
    pub lambda: Vec<u64>,
    pub h0: u8,
    #[serde(rename = "ext1_B")]
    pub ext1_b: usize,
    pub h1: H1,
    pub case: String,
    pub witness: Option<Vec<Slot>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MismatchRecord {
    pub p: u64,
    pub lambda: Vec<u64>,
    pub classifier_dim: usize,
    pub oracle_dim: usize,
    pub case: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisRecord {
    pub p: u64,
    pub lambda: Vec<u64>,
    pub dim: usize,
    pub basis: Vec<Vec<Slot>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sl2Record {
    pub p: u64,
    pub r: u64,
    pub s: u64,
    pub ext1: u8,
    pub reason: String,
}

/// Serialises one record as a single line.
pub fn line<T: Serialize>(record: &T) -> String {
    serde_json::to_string(record).expect("records contain only integers, strings and lists")
}
