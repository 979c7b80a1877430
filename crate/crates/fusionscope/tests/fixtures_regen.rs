mod common;

#[test]
fn fixture_files_match_a_fresh_generation() {
    let groups = group_oracle::catalog_groups();
    assert_eq!(groups.len(), 11);
    for group in &groups {
        let generated = group_oracle::ring_document_text(group);
        let on_disk = common::fixture_text(group.name());
        assert_eq!(generated, on_disk, "{} fixture is stale", group.name());
    }
}

#[test]
fn group_facts_match_a_fresh_generation() {
    let generated = serde_json::to_string_pretty(&group_oracle::all_facts()).unwrap() + "\n";
    let on_disk = std::fs::read_to_string(common::fixture_dir().join("groupfacts.json")).unwrap();
    assert_eq!(generated, on_disk, "groupfacts.json is stale");
}

#[test]
fn every_generated_group_has_a_catalog_entry() {
    let names = fusionscope::catalog::names();
    for group in group_oracle::catalog_groups() {
        assert!(
            names.iter().any(|n| n == group.name()),
            "{} missing from the catalog",
            group.name()
        );
    }
}
