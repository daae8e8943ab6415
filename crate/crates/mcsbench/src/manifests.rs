//! Mapping manifests shipped with the tool.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use mcsbench_core::adapters::{load_manifest, MappingManifest};

/// `(file stem, manifest JSON)` for every shipped benchmark.
pub const SHIPPED: [(&str, &str); 7] = [
    ("anli", include_str!("../../../manifests/anli.json")),
    ("commonsenseqa", include_str!("../../../manifests/commonsenseqa.json")),
    ("cosmosqa", include_str!("../../../manifests/cosmosqa.json")),
    ("cycic", include_str!("../../../manifests/cycic.json")),
    ("hellaswag", include_str!("../../../manifests/hellaswag.json")),
    ("piqa", include_str!("../../../manifests/piqa.json")),
    ("socialiqa", include_str!("../../../manifests/socialiqa.json")),
];

pub fn shipped() -> Vec<MappingManifest> {
    SHIPPED.iter().map(|(_, text)| load_manifest(text).expect("shipped manifests are valid")).collect()
}

/// A shipped manifest by file stem or benchmark name, ignoring case.
pub fn find_shipped(name: &str) -> Option<MappingManifest> {
    let wanted = name.to_ascii_lowercase();
    shipped()
        .into_iter()
        .zip(SHIPPED)
        .find_map(|(m, (stem, _))| (stem == wanted || m.benchmark.name().to_ascii_lowercase() == wanted).then_some(m))
}

/// Loads `arg` as a manifest file if it exists, otherwise as a shipped name.
pub fn resolve(arg: &str) -> Result<MappingManifest> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        return load_manifest(&text).with_context(|| format!("manifest {}", path.display()));
    }
    match find_shipped(arg) {
        Some(m) => Ok(m),
        None => bail!(
            "no manifest file or shipped manifest named {arg:?} (shipped: {})",
            SHIPPED.iter().map(|(s, _)| *s).collect::<Vec<_>>().join(", ")
        ),
    }
}
