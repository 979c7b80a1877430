//! Built-in example rings.
//!
//! Finite-group entries are embedded fixture documents produced by the
//! companion oracle generator; the truncated SU(2) entries are built at
//! call time from the derived tensor table. Every entry passes
//! validation and analyzes cleanly under default limits.

use std::sync::Arc;

use crate::format::{FormatError, RingDocument};
use crate::ring::FusionRing;
use crate::su2::{self, SpinIndex};

const FINITE_DOCS: &[(&str, &str)] = &[
    ("trivial", include_str!("../fixtures/catalog/trivial.json")),
    ("z2", include_str!("../fixtures/catalog/z2.json")),
    ("z3", include_str!("../fixtures/catalog/z3.json")),
    ("z4", include_str!("../fixtures/catalog/z4.json")),
    ("z5", include_str!("../fixtures/catalog/z5.json")),
    ("z6", include_str!("../fixtures/catalog/z6.json")),
    ("z2xz2", include_str!("../fixtures/catalog/z2xz2.json")),
    ("s3", include_str!("../fixtures/catalog/s3.json")),
    ("d4", include_str!("../fixtures/catalog/d4.json")),
    ("q8", include_str!("../fixtures/catalog/q8.json")),
    ("a4", include_str!("../fixtures/catalog/a4.json")),
];

const SU2_MAX_TWICE: &[u32] = &[2, 4, 10];

fn su2_name(max_twice: u32) -> String {
    format!("su2-trunc-jmax{}", SpinIndex::from_twice(max_twice))
}

/// Document form of a truncated SU(2) export, indicators included.
pub fn su2_truncation_document(max_twice: u32) -> Result<RingDocument, crate::su2::Su2Error> {
    let ring = su2::export_truncated_ring(max_twice)?;
    let indicators = ring
        .labels()
        .iter()
        .enumerate()
        .map(|(index, label)| {
            (label.clone(), su2::fs_indicator(SpinIndex::from_twice(index as u32)))
        })
        .collect();
    Ok(RingDocument::from_ring(&ring).with_connected(true).with_fs_indicators(indicators))
}

/// Names of every catalog entry, in catalog order.
pub fn names() -> Vec<String> {
    let mut all: Vec<String> = FINITE_DOCS.iter().map(|(name, _)| name.to_string()).collect();
    all.extend(SU2_MAX_TWICE.iter().map(|&m| su2_name(m)));
    all
}

/// The catalog document with the given name.
pub fn document(name: &str) -> Option<RingDocument> {
    if let Some((_, text)) = FINITE_DOCS.iter().find(|(n, _)| *n == name) {
        let doc = RingDocument::parse(text).expect("embedded fixtures are canonical");
        return Some(doc);
    }
    SU2_MAX_TWICE
        .iter()
        .find(|&&m| su2_name(m) == name)
        .map(|&m| su2_truncation_document(m).expect("catalog truncations are far from overflow"))
}

/// The catalog entry as a ready-to-use ring.
pub fn ring(name: &str) -> Option<Result<Arc<FusionRing>, FormatError>> {
    document(name).map(|doc| doc.to_ring().map(Arc::new))
}

/// Every catalog document, in catalog order.
pub fn all_documents() -> Vec<(String, RingDocument)> {
    names()
        .into_iter()
        .map(|name| {
            let doc = document(&name).expect("names() only lists catalog entries");
            (name, doc)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_has_the_advertised_entries() {
        let names = names();
        assert_eq!(names.len(), 14);
        for expected in ["trivial", "z2xz2", "d4", "q8", "a4", "su2-trunc-jmax5"] {
            assert!(names.iter().any(|n| n == expected), "missing {expected}");
        }
    }

    #[test]
    fn every_entry_parses_builds_and_validates() {
        for (name, doc) in all_documents() {
            let ring = doc.to_ring().unwrap_or_else(|e| panic!("{name}: {e}"));
            let report = ring.validate();
            assert!(report.is_valid(), "{name}: {:?}", report.violations());
            assert_eq!(ring.name(), name);
        }
    }

    #[test]
    fn embedded_fixtures_are_canonical_bytes() {
        for (name, text) in FINITE_DOCS {
            let doc = RingDocument::parse(text).unwrap();
            assert_eq!(doc.serialize(), *text, "{name} fixture is not canonical");
        }
    }

    #[test]
    fn su2_entries_are_truncated_and_connected() {
        for &m in SU2_MAX_TWICE {
            let doc = document(&su2_name(m)).unwrap();
            assert_eq!(doc.metadata.complete_below, Some(m as usize));
            assert_eq!(doc.metadata.connected, Some(true));
            assert_eq!(doc.rank, m as usize + 1);
        }
    }

    #[test]
    fn d4_and_q8_differ_only_in_indicators() {
        let d4 = document("d4").unwrap();
        let q8 = document("q8").unwrap();
        assert_eq!(d4.fusion, q8.fusion);
        assert_eq!(d4.dual, q8.dual);
        assert_ne!(d4.metadata.fs_indicators, q8.metadata.fs_indicators);
    }

    #[test]
    fn unknown_name_is_none() {
        assert!(document("so3").is_none());
        assert!(ring("so3").is_none());
    }
}
