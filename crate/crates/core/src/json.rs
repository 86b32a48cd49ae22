//! Stable JSON forms for structures, covering diagrams, and count reports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::enumeration::EnumStats;
use crate::error::{Error, Result};
use crate::generic::GenericGraph;
use crate::space::{GroundSet, Subset};
use crate::structure::ConnectivityStructure;

/// On-disk form of a structure: the point count, the stored connected sets
/// (each ascending, the list sorted by weight), and optional point labels.
///
/// Input is forgiving: sets may arrive unsorted or duplicated and may
/// include singletons, which are dropped. The closure axiom is verified.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureJson {
    pub n: u32,
    pub connected: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl StructureJson {
    pub fn from_structure(s: &ConnectivityStructure) -> Self {
        StructureJson {
            n: s.size(),
            connected: s.sets().iter().map(|k| k.elements().collect()).collect(),
            labels: None,
        }
    }

    pub fn to_structure(&self) -> Result<ConnectivityStructure> {
        let ground = GroundSet::new(self.n)?;
        if let Some(labels) = &self.labels {
            if labels.len() != self.n as usize {
                return Err(Error::Schema(format!(
                    "expected {} labels, got {}",
                    self.n,
                    labels.len()
                )));
            }
        }
        let sets = self
            .connected
            .iter()
            .map(|es| Subset::from_elements(es.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        ConnectivityStructure::new(ground, &sets)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("structure serialization cannot fail")
    }
}

/// Count report for one enumeration run. `elapsed_ms` is filled only on
/// demand so that reports stay byte-identical across worker counts.
#[derive(Debug, Clone, Serialize)]
pub struct StatsReport {
    pub n: u32,
    pub s: u64,
    pub c: u64,
    pub k: u64,
    pub f: u32,
    pub hist: BTreeMap<u32, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl StatsReport {
    pub fn new(n: u32, stats: &EnumStats) -> Self {
        StatsReport {
            n,
            s: stats.total,
            c: stats.connected,
            k: stats.irreducibly_connected,
            f: stats.max_family_size,
            hist: stats
                .size_histogram
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(i, &c)| (i as u32, c))
                .collect(),
            elapsed_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }
}

/// Covering diagram as indices into the vertex list.
#[derive(Debug, Clone, Serialize)]
pub struct GenericGraphJson {
    pub n: u32,
    pub vertices: Vec<Vec<u32>>,
    pub orders: Vec<u32>,
    pub edges: Vec<[usize; 2]>,
}

impl GenericGraphJson {
    pub fn new(n: u32, graph: &GenericGraph) -> Self {
        GenericGraphJson {
            n,
            vertices: graph
                .vertices()
                .iter()
                .map(|v| v.elements().collect())
                .collect(),
            orders: graph.orders().to_vec(),
            edges: graph.edges().iter().map(|&(a, b)| [a, b]).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serialization cannot fail")
    }
}
