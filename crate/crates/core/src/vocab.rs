//! Namespaces and well-known terms.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};

pub const MCS_NS: &str = "https://w3id.org/mcs#";
pub const SCHEMA_NS: &str = "http://schema.org/";
pub const RDF_NS: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS_NS: &str = "http://www.w3.org/2000/01/rdf-schema#";

/// Default base IRI against which benchmark entities are minted.
pub const DEFAULT_BASE_IRI: &str = "https://w3id.org/mcs/data/";

pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
pub const RDFS_LABEL: &str = "http://www.w3.org/2000/01/rdf-schema#label";
pub const RDFS_SUBCLASS_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
pub const SCHEMA_TEXT: &str = "http://schema.org/text";
pub const SCHEMA_DATASET: &str = "http://schema.org/dataset";

/// The ontology namespace in use. Defaults to [`MCS_NS`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocab {
    pub mcs: String,
}

impl Default for Vocab {
    fn default() -> Self {
        Vocab { mcs: MCS_NS.to_string() }
    }
}

impl Vocab {
    pub fn with_namespace(mcs: impl Into<String>) -> Self {
        Vocab { mcs: mcs.into() }
    }

    pub fn term(&self, local: &str) -> String {
        format!("{}{}", self.mcs, local)
    }

    /// `mcs`, `schema`, `rdf` and `rdfs`.
    pub fn default_prefixes(&self) -> BTreeMap<String, String> {
        [("mcs", self.mcs.as_str()), ("schema", SCHEMA_NS), ("rdf", RDF_NS), ("rdfs", RDFS_NS)]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect()
    }
}
