//! The on-disk JSON form of a fusion ring.
//!
//! A ring document carries `name`, `rank`, `labels`, `unit`, `dual`, the
//! sparse `fusion` quadruples `[p, q, r, m]` with `p <= q`, and an
//! optional `metadata` object (`complete_below`, `connected`,
//! `fs_indicators`, alphabetically). Serialization is canonical: fields
//! in that order, two-space indent, quadruples one per line, metadata
//! omitted when empty, and a trailing newline, so parsing and
//! reserializing a canonical file reproduces it byte for byte. Unknown
//! fields are rejected rather than ignored.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::recovery::FrobeniusSchur;
use crate::ring::{FusionRing, RingError};

/// Failures while reading or interpreting a ring document.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("JSON syntax: {0}")]
    Syntax(String),
    #[error("rank field says {field} but {got} labels are listed")]
    RankMismatch { field: usize, got: usize },
    #[error("{0}")]
    Structure(#[from] RingError),
    #[error("fs indicator references unknown label `{label}`")]
    UnknownIndicatorLabel { label: String },
    #[error("fs indicator for `{label}` is {value}, which contradicts the dual map")]
    IndicatorDualMismatch { label: String, value: FrobeniusSchur },
}

/// Optional side information attached to a ring document.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complete_below: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub connected: Option<bool>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub fs_indicators: BTreeMap<String, FrobeniusSchur>,
}

impl Metadata {
    pub fn is_empty(&self) -> bool {
        self.complete_below.is_none() && self.connected.is_none() && self.fs_indicators.is_empty()
    }
}

/// A fusion ring in interchange form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingDocument {
    pub name: String,
    pub rank: usize,
    pub labels: Vec<String>,
    pub unit: usize,
    pub dual: Vec<usize>,
    pub fusion: Vec<(usize, usize, usize, i64)>,
    #[serde(default, skip_serializing_if = "Metadata::is_empty")]
    pub metadata: Metadata,
}

impl RingDocument {
    /// Reads a document from JSON and checks it down to a buildable ring.
    pub fn parse(text: &str) -> Result<RingDocument, FormatError> {
        let doc: RingDocument =
            serde_json::from_str(text).map_err(|e| FormatError::Syntax(e.to_string()))?;
        doc.check()?;
        Ok(doc)
    }

    /// Structural checks beyond what the JSON shape enforces.
    fn check(&self) -> Result<(), FormatError> {
        if self.rank != self.labels.len() {
            return Err(FormatError::RankMismatch { field: self.rank, got: self.labels.len() });
        }
        let ring = self.build_ring()?;
        for (label, &value) in &self.metadata.fs_indicators {
            let Some(p) = self.labels.iter().position(|l| l == label) else {
                return Err(FormatError::UnknownIndicatorLabel { label: label.clone() });
            };
            let self_dual = ring.dual_of(p) == p;
            if self_dual == (value == FrobeniusSchur::Complex) {
                return Err(FormatError::IndicatorDualMismatch { label: label.clone(), value });
            }
        }
        Ok(())
    }

    fn build_ring(&self) -> Result<FusionRing, RingError> {
        FusionRing::new(
            self.name.clone(),
            self.labels.clone(),
            self.unit,
            self.dual.clone(),
            &self.fusion,
            self.metadata.complete_below,
        )
    }

    /// The ring described by this document.
    pub fn to_ring(&self) -> Result<FusionRing, FormatError> {
        Ok(self.build_ring()?)
    }

    /// Captures a ring as a document; metadata starts from the ring's
    /// truncation bound only.
    pub fn from_ring(ring: &FusionRing) -> RingDocument {
        RingDocument {
            name: ring.name().to_string(),
            rank: ring.rank(),
            labels: ring.labels().to_vec(),
            unit: ring.unit(),
            dual: ring.dual_map().to_vec(),
            fusion: ring.entries(),
            metadata: Metadata {
                complete_below: ring.complete_below(),
                connected: None,
                fs_indicators: BTreeMap::new(),
            },
        }
    }

    pub fn with_connected(mut self, connected: bool) -> Self {
        self.metadata.connected = Some(connected);
        self
    }

    pub fn with_fs_indicators(mut self, indicators: BTreeMap<String, FrobeniusSchur>) -> Self {
        self.metadata.fs_indicators = indicators;
        self
    }

    /// Canonical serialization; stable under parse-serialize round trips.
    pub fn serialize(&self) -> String {
        let mut normalized = self.clone();
        normalized.fusion = normalized
            .fusion
            .into_iter()
            .map(|(p, q, r, m)| (p.min(q), p.max(q), r, m))
            .collect();
        normalized.fusion.sort();
        let mut out = String::new();
        out.push_str("{\n");
        out.push_str(&format!("  \"name\": {},\n", json_str(&normalized.name)));
        out.push_str(&format!("  \"rank\": {},\n", normalized.rank));
        out.push_str(&format!(
            "  \"labels\": [{}],\n",
            normalized.labels.iter().map(|l| json_str(l)).collect::<Vec<_>>().join(", ")
        ));
        out.push_str(&format!("  \"unit\": {},\n", normalized.unit));
        out.push_str(&format!(
            "  \"dual\": [{}],\n",
            normalized.dual.iter().map(usize::to_string).collect::<Vec<_>>().join(", ")
        ));
        if normalized.fusion.is_empty() {
            out.push_str("  \"fusion\": []");
        } else {
            out.push_str("  \"fusion\": [\n");
            let rows: Vec<String> = normalized
                .fusion
                .iter()
                .map(|(p, q, r, m)| format!("    [{p}, {q}, {r}, {m}]"))
                .collect();
            out.push_str(&rows.join(",\n"));
            out.push_str("\n  ]");
        }
        if !normalized.metadata.is_empty() {
            out.push_str(",\n  \"metadata\": {");
            let mut fields = Vec::new();
            if let Some(bound) = normalized.metadata.complete_below {
                fields.push(format!("\n    \"complete_below\": {bound}"));
            }
            if let Some(connected) = normalized.metadata.connected {
                fields.push(format!("\n    \"connected\": {connected}"));
            }
            if !normalized.metadata.fs_indicators.is_empty() {
                let pairs: Vec<String> = normalized
                    .metadata
                    .fs_indicators
                    .iter()
                    .map(|(label, value)| {
                        format!("      {}: {}", json_str(label), json_str(&value.to_string()))
                    })
                    .collect();
                fields.push(format!(
                    "\n    \"fs_indicators\": {{\n{}\n    }}",
                    pairs.join(",\n")
                ));
            }
            out.push_str(&fields.join(","));
            out.push_str("\n  }");
        }
        out.push_str("\n}\n");
        out
    }
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}
