#![allow(dead_code)]

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::sync::Arc;

use fusionscope::format::RingDocument;
use fusionscope::ring::FusionRing;
use group_oracle::GroupFacts;
use nalgebra::Complex;

/// Directory holding the generated catalog fixtures.
pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/catalog")
}

/// Raw fixture bytes for one catalog entry.
pub fn fixture_text(name: &str) -> String {
    let path = fixture_dir().join(format!("{name}.json"));
    fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("cannot read {}: {e}", path.display()))
}

/// Parses a fixture file from disk rather than the embedded catalog.
pub fn disk_document(name: &str) -> RingDocument {
    RingDocument::parse(&fixture_text(name))
        .unwrap_or_else(|e| panic!("fixture {name} does not parse: {e}"))
}

/// Builds the ring of a disk fixture.
pub fn disk_ring(name: &str) -> Arc<FusionRing> {
    Arc::new(disk_document(name).to_ring().unwrap())
}

/// The group facts recorded by the fixture generator, keyed by name.
pub fn groupfacts() -> BTreeMap<String, GroupFacts> {
    let text = fs::read_to_string(fixture_dir().join("groupfacts.json")).unwrap();
    serde_json::from_str(&text).unwrap()
}

/// Character table columns of one group as vectors over the ring basis.
pub fn table_columns(fact: &GroupFacts) -> Vec<Vec<Complex<f64>>> {
    let classes = fact.class_sizes.len();
    (0..classes)
        .map(|i| {
            fact.character_table
                .iter()
                .map(|row| Complex::new(row[i][0], row[i][1]))
                .collect()
        })
        .collect()
}

/// Largest entrywise distance between two complex vectors.
pub fn vector_distance(a: &[Complex<f64>], b: &[Complex<f64>]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}
