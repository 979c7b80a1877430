//! Regenerates the finite-group catalog fixtures and groupfacts.json.

use std::fs;
use std::path::PathBuf;

use group_oracle::{all_facts, catalog_groups, ring_document_text};

fn main() {
    let target: PathBuf = [
        env!("CARGO_MANIFEST_DIR"),
        "..",
        "fusionscope",
        "fixtures",
        "catalog",
    ]
    .iter()
    .collect();
    fs::create_dir_all(&target).expect("create fixture directory");

    let groups = catalog_groups();
    for group in &groups {
        let path = target.join(format!("{}.json", group.name()));
        fs::write(&path, ring_document_text(group)).expect("write fixture");
        println!("wrote {}", path.display());
    }

    let facts = all_facts();
    assert_eq!(facts.len(), groups.len());
    let mut text = serde_json::to_string_pretty(&facts).expect("serialize facts");
    text.push('\n');
    let path = target.join("groupfacts.json");
    fs::write(&path, text).expect("write groupfacts");
    println!("wrote {}", path.display());
}
