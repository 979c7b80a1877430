mod common;

use std::collections::BTreeMap;

use fusionscope::format::RingDocument;
use fusionscope::recovery::FrobeniusSchur;
use fusionscope::ring::FusionRing;
use proptest::prelude::*;

#[derive(Debug, Clone)]
struct RawRing {
    labels: Vec<String>,
    unit: usize,
    dual: Vec<usize>,
    entries: Vec<(usize, usize, usize, i64)>,
    complete_below: Option<usize>,
    connected: Option<bool>,
    with_indicators: bool,
}

/// Pairs indices into an involution that fixes the unit.
fn involution_from_seed(rank: usize, unit: usize, seed: u64) -> Vec<usize> {
    let mut dual: Vec<usize> = (0..rank).collect();
    let mut free: Vec<usize> = (0..rank).filter(|&p| p != unit).collect();
    let mut state = seed | 1;
    while free.len() >= 2 {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        if state % 3 == 0 {
            free.remove(0);
            continue;
        }
        let a = free.remove(0);
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let pick = (state as usize) % free.len();
        let b = free.remove(pick);
        dual[a] = b;
        dual[b] = a;
    }
    dual
}

fn raw_ring_strategy() -> impl Strategy<Value = RawRing> {
    (1usize..=5)
        .prop_flat_map(|rank| {
            let cells = prop::collection::btree_map(
                (0..rank, 0..rank, 0..rank),
                1i64..=3,
                0..=rank * rank,
            );
            (
                Just(rank),
                0..rank,
                any::<u64>(),
                cells,
                prop::option::of(0..=2 * rank),
                prop::option::of(any::<bool>()),
                any::<bool>(),
            )
        })
        .prop_map(|(rank, unit, seed, cells, bound, connected, with_indicators)| {
            let labels = (0..rank).map(|i| format!("b{i}")).collect();
            let dual = involution_from_seed(rank, unit, seed);
            let complete_below = bound.filter(|&b| b >= unit + unit);
            let mut entries = Vec::new();
            let mut seen = BTreeMap::new();
            for ((p, q, r), m) in cells {
                let key = (p.min(q), p.max(q), r);
                if seen.insert(key, m).is_none() {
                    entries.push((key.0, key.1, key.2, m));
                }
            }
            RawRing { labels, unit, dual, entries, complete_below, connected, with_indicators }
        })
}

fn document_from(raw: &RawRing) -> RingDocument {
    let ring = FusionRing::new(
        "generated",
        raw.labels.clone(),
        raw.unit,
        raw.dual.clone(),
        &raw.entries,
        raw.complete_below,
    )
    .unwrap();
    let mut doc = RingDocument::from_ring(&ring);
    if let Some(connected) = raw.connected {
        doc = doc.with_connected(connected);
    }
    if raw.with_indicators {
        let mut indicators = BTreeMap::new();
        for (p, label) in raw.labels.iter().enumerate() {
            let value = if raw.dual[p] == p {
                if p % 2 == 0 { FrobeniusSchur::Real } else { FrobeniusSchur::PseudoReal }
            } else {
                FrobeniusSchur::Complex
            };
            indicators.insert(label.clone(), value);
        }
        doc = doc.with_fs_indicators(indicators);
    }
    doc
}

proptest! {
    #[test]
    fn serialization_round_trips(raw in raw_ring_strategy()) {
        let doc = document_from(&raw);
        let text = doc.serialize();
        let parsed = RingDocument::parse(&text).unwrap();
        prop_assert_eq!(&parsed, &doc);
        prop_assert_eq!(parsed.serialize(), text);
    }

    #[test]
    fn parsing_accepts_any_json_layout(raw in raw_ring_strategy()) {
        let doc = document_from(&raw);
        let loose = serde_json::to_string(&doc).unwrap();
        let parsed = RingDocument::parse(&loose).unwrap();
        prop_assert_eq!(parsed.serialize(), doc.serialize());
    }

    #[test]
    fn rings_survive_the_round_trip(raw in raw_ring_strategy()) {
        let doc = document_from(&raw);
        let before = doc.to_ring().unwrap();
        let after = RingDocument::parse(&doc.serialize()).unwrap().to_ring().unwrap();
        prop_assert_eq!(before.entries(), after.entries());
        prop_assert_eq!(before.dual_map(), after.dual_map());
        prop_assert_eq!(before.unit(), after.unit());
        prop_assert_eq!(before.complete_below(), after.complete_below());
    }
}

#[test]
fn malformed_documents_are_rejected() {
    assert!(RingDocument::parse("not json").is_err());
    assert!(RingDocument::parse("{}").is_err());
    let missing_label = r#"{
  "name": "broken",
  "rank": 2,
  "labels": ["a"],
  "unit": 0,
  "dual": [0, 1],
  "fusion": [[0, 0, 0, 1]]
}"#;
    assert!(RingDocument::parse(missing_label).is_err());
    let unknown_field = r#"{
  "name": "broken",
  "rank": 1,
  "labels": ["a"],
  "unit": 0,
  "dual": [0],
  "fusion": [[0, 0, 0, 1]],
  "extra": true
}"#;
    assert!(RingDocument::parse(unknown_field).is_err());
}
