//! JSON ring and map files.
//!
//! Ring: `{ "p": 2, "generators": [{"name": "x", "degree": 1, "parity": "even"}], "relations": ["x*y"] }`.
//! Map: `{ "source": <ring ref>, "target": <ring ref>, "images": {"x": "t1"} }`, where a ring
//! ref is a path (relative to the map file), an inline ring object, or a
//! built-in name such as `"elementary_abelian(2,2)"`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{AlgebraMap, GeneratorSpec, Parity, PresentedAlgebra};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorEntry {
    pub name: String,
    pub degree: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity: Option<Parity>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingFile {
    pub p: u32,
    pub generators: Vec<GeneratorEntry>,
    #[serde(default)]
    pub relations: Vec<String>,
}

impl RingFile {
    pub fn to_algebra(&self) -> Result<PresentedAlgebra> {
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let mut spec = GeneratorSpec::new(g.name.clone(), g.degree, self.p);
                if let Some(par) = g.parity {
                    spec.parity = par;
                }
                spec
            })
            .collect();
        let rels: Vec<&str> = self.relations.iter().map(|s| s.as_str()).collect();
        PresentedAlgebra::from_strings(self.p, gens, &rels)
    }

    pub fn from_algebra(a: &PresentedAlgebra) -> Self {
        RingFile {
            p: a.p(),
            generators: a
                .free()
                .generators()
                .iter()
                .map(|g| GeneratorEntry {
                    name: g.name.clone(),
                    degree: g.degree,
                    parity: Some(g.parity),
                })
                .collect(),
            relations: a.relations().iter().map(|r| r.to_string()).collect(),
        }
    }

    pub fn from_json(text: &str, origin: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|source| Error::Json {
            path: origin.to_string(),
            source,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RingRef {
    Inline(RingFile),
    Named(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapFile {
    pub source: RingRef,
    pub target: RingRef,
    pub images: BTreeMap<String, String>,
}

impl MapFile {
    pub fn from_json(text: &str, origin: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|source| Error::Json {
            path: origin.to_string(),
            source,
        })
    }

    /// Builds the map once both rings are resolved.
    pub fn to_map(&self, source: Arc<PresentedAlgebra>, target: Arc<PresentedAlgebra>) -> Result<AlgebraMap> {
        let pairs: Vec<(&str, &str)> = self
            .images
            .iter()
            .map(|(k, v)| (k.as_str(), v.as_str()))
            .collect();
        AlgebraMap::from_strings(source, target, &pairs)
    }

    pub fn from_map(f: &AlgebraMap, source: RingRef, target: RingRef) -> Self {
        let images = f
            .source()
            .free()
            .generators()
            .iter()
            .zip(f.images())
            .map(|(g, img)| (g.name.clone(), img.to_string()))
            .collect();
        MapFile {
            source,
            target,
            images,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_file_roundtrip() {
        let text = r#"{"p":2,"generators":[{"name":"x","degree":1},{"name":"y","degree":1},{"name":"w","degree":2}],"relations":["x*y"]}"#;
        let rf = RingFile::from_json(text, "inline").unwrap();
        let a = rf.to_algebra().unwrap();
        assert_eq!(a.hilbert_series(3), vec![1, 2, 3, 4]);
        let back = RingFile::from_algebra(&a);
        assert_eq!(back.to_algebra().unwrap(), a);
    }

    #[test]
    fn bad_parity_rejected() {
        let text = r#"{"p":3,"generators":[{"name":"a","degree":1,"parity":"even"}],"relations":[]}"#;
        assert!(RingFile::from_json(text, "inline").unwrap().to_algebra().is_err());
    }
}
