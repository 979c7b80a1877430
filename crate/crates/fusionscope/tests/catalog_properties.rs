mod common;

use fusionscope::catalog;
use fusionscope::recovery::{self, CenterCheck, FrobeniusSchur};
use fusionscope::report::{self, AnalyzeOptions};
use fusionscope::subrings;

const MAX_RANK: usize = 16;

#[test]
fn every_entry_validates_cleanly() {
    for (name, doc) in catalog::all_documents() {
        let ring = doc.to_ring().unwrap();
        let outcome = ring.validate();
        assert!(
            outcome.is_valid(),
            "{name} violates the axioms: {:?}",
            outcome.violations()
        );
    }
}

#[test]
fn every_entry_analyzes_cleanly() {
    for (name, doc) in catalog::all_documents() {
        let report = report::analyze(&doc, &AnalyzeOptions::default()).unwrap();
        assert!(report.is_clean(), "analysis of {name} reported a failure");
        let json = report.to_json();
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed["name"], name.as_str());
        assert!(!report.render_text().is_empty());
    }
}

#[test]
fn invertible_labels_have_singleton_dual_products() {
    for (name, doc) in catalog::all_documents() {
        let ring = doc.to_ring().unwrap();
        let group = recovery::invertible_characters(&ring).unwrap();
        for label in group.names() {
            let p = ring.labels().iter().position(|l| l == label).unwrap();
            let support = ring.product_support(p, ring.dual_of(p));
            assert_eq!(
                support,
                &[(ring.unit(), 1)],
                "{name}: invertible {label} lacks a singleton dual product"
            );
        }
    }
}

#[test]
fn adjoint_subring_sits_inside_the_identity_chain_class() {
    let facts = common::groupfacts();
    for (name, doc) in catalog::all_documents() {
        let ring = std::sync::Arc::new(doc.to_ring().unwrap());
        let chain = recovery::chain_group(&ring).unwrap();
        let identity_class = chain.class_of(ring.unit());
        let adjoint = subrings::adjoint_subring(&ring);
        for &p in adjoint.basis() {
            assert_eq!(
                chain.class_of(p),
                identity_class,
                "{name}: adjoint member {p} escapes the identity class"
            );
        }
        if facts.contains_key(&name) {
            let mut class = chain.classes()[identity_class].clone();
            class.sort_unstable();
            assert_eq!(
                adjoint.basis(),
                &class[..],
                "{name}: adjoint basis differs from the identity chain class"
            );
        }
    }
}

#[test]
fn subring_lattices_contain_trivial_and_full() {
    for (name, doc) in catalog::all_documents() {
        let ring = std::sync::Arc::new(doc.to_ring().unwrap());
        let lattice = subrings::enumerate_subrings(&ring, MAX_RANK).unwrap();
        assert!(lattice.len() >= 1, "{name} has no subrings");
        let unit_only = lattice.position_of(&[ring.unit()]);
        let full: Vec<usize> = (0..ring.rank()).collect();
        assert!(lattice.position_of(&full).is_some(), "{name} lattice misses the full ring");
        if ring.rank() > 1 {
            assert!(unit_only.is_some(), "{name} lattice misses the unit subring");
        }
        for (i, j) in lattice.inclusions() {
            assert!(lattice.get(i).rank() <= lattice.get(j).rank());
        }
    }
}

#[test]
fn su2_entries_are_truncated_and_connected() {
    for name in ["su2-trunc-jmax1", "su2-trunc-jmax2", "su2-trunc-jmax5"] {
        let doc = catalog::document(name).unwrap();
        assert_eq!(doc.metadata.connected, Some(true), "{name}");
        let ring = doc.to_ring().unwrap();
        assert!(ring.is_truncated(), "{name}");
        let chain = recovery::chain_group(&ring).unwrap();
        assert_eq!(chain.group().invariant_factors(), &[2], "{name}");
        assert_eq!(chain.classes().len(), 2, "{name}");
        for (p, class) in (0..ring.rank()).map(|p| (p, chain.class_of(p))) {
            assert_eq!(class, p % 2, "{name}: spin parity of index {p}");
        }
    }
}

#[test]
fn odd_fusion_with_pseudoreal_forces_a_center() {
    let doc = catalog::document("su2-trunc-jmax2").unwrap();
    let ring = doc.to_ring().unwrap();
    let indicators: Vec<FrobeniusSchur> = ring
        .labels()
        .iter()
        .map(|label| doc.metadata.fs_indicators[label])
        .collect();
    match recovery::check_oddfusion_pseudoreal_center(&ring, &indicators).unwrap() {
        CenterCheck::Pass { center, .. } => {
            assert_eq!(center.invariant_factors(), &[2]);
        }
        other => panic!("expected a nontrivial center, got {other:?}"),
    }

    let doc = catalog::document("q8").unwrap();
    let ring = doc.to_ring().unwrap();
    let indicators: Vec<FrobeniusSchur> = ring
        .labels()
        .iter()
        .map(|label| doc.metadata.fs_indicators[label])
        .collect();
    match recovery::check_oddfusion_pseudoreal_center(&ring, &indicators).unwrap() {
        CenterCheck::Pass { center, .. } => {
            assert_eq!(center.invariant_factors(), &[2]);
        }
        other => panic!("expected a nontrivial center for q8, got {other:?}"),
    }

    let doc = catalog::document("s3").unwrap();
    let ring = doc.to_ring().unwrap();
    let indicators: Vec<FrobeniusSchur> = ring
        .labels()
        .iter()
        .map(|label| doc.metadata.fs_indicators[label])
        .collect();
    assert_eq!(
        recovery::check_oddfusion_pseudoreal_center(&ring, &indicators).unwrap(),
        CenterCheck::VacuousNoPseudoReal
    );
}

#[test]
fn fixture_files_on_disk_are_canonical() {
    for (name, doc) in catalog::all_documents() {
        if name.starts_with("su2-") {
            continue;
        }
        let text = common::fixture_text(&name);
        assert_eq!(doc.serialize(), text, "{name} fixture drifted from canonical form");
    }
}
