//! Manifest files tying a group, a ring and its restriction maps together:
//!
//! ```json
//! { "group": "group.json", "ring": "ring.json",
//!   "restrictions": { "S-…": "res_v1.json" }, "comodule": "comodule.json" }
//! ```
//!
//! Every file reference may be replaced by the inline object. Paths are
//! relative to the manifest. Inside map files, rings are referenced by name:
//! `"ring"` (the system ring), `"ring_tensor_center"` (ring ⊗ H*(C), the
//! target of μ*), `"elementary_abelian(p,m)"`, or a path.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{CohomologySystem, ElemAbCohomology, GroupParams, Restriction};
use crate::error::{Error, Result};
use crate::graded::io::{MapFile, RingFile, RingRef};
use crate::graded::{AlgebraMap, PresentedAlgebra};
use crate::pgroup::io::GroupFile;
use crate::pgroup::{GroupTable, Subgroup, DEFAULT_GROUP_CAP};

/// A file reference or the inline object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Source<T> {
    File(String),
    Inline(T),
}

pub type MapSource = Source<MapFile>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<Source<GroupFile>>,
    /// Required when no group is given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<GroupParams>,
    pub ring: Source<RingFile>,
    #[serde(default)]
    pub restrictions: BTreeMap<String, MapSource>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comodule: Option<MapSource>,
}

const SYSTEM_RING: &str = "ring";
const COMODULE_TARGET: &str = "ring_tensor_center";

fn resolve<T: serde::de::DeserializeOwned + Clone>(
    src: &Source<T>,
    read: &dyn Fn(&str) -> Result<String>,
) -> Result<T> {
    match src {
        Source::Inline(t) => Ok(t.clone()),
        Source::File(path) => {
            let text = read(path)?;
            serde_json::from_str(&text).map_err(|source| Error::Json {
                path: path.clone(),
                source,
            })
        }
    }
}

struct Rings<'a> {
    ring: Arc<PresentedAlgebra>,
    center: Option<Arc<PresentedAlgebra>>,
    read: &'a dyn Fn(&str) -> Result<String>,
}

impl Rings<'_> {
    fn get(&self, r: &RingRef) -> Result<Arc<PresentedAlgebra>> {
        match r {
            RingRef::Inline(file) => Ok(Arc::new(file.to_algebra()?)),
            RingRef::Named(name) if name == SYSTEM_RING => Ok(Arc::clone(&self.ring)),
            RingRef::Named(name) if name == COMODULE_TARGET => self
                .center
                .as_ref()
                .map(|c| self.ring.tensor(c).map(Arc::new))
                .unwrap_or_else(|| Err(Error::Invalid("the rank of C is unknown".into()))),
            RingRef::Named(name) => match ElemAbCohomology::from_builtin_name(name) {
                Some(v) => Ok(Arc::clone(v?.algebra())),
                None => {
                    let text = (self.read)(name)?;
                    Ok(Arc::new(RingFile::from_json(&text, name)?.to_algebra()?))
                }
            },
        }
    }
}

/// Loads a system from a manifest on disk.
pub fn load_system(path: &Path) -> Result<CohomologySystem> {
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let read_file = |p: &Path| {
        std::fs::read_to_string(p).map_err(|source| Error::Io {
            path: p.display().to_string(),
            source,
        })
    };
    let text = read_file(path)?;
    let read = move |rel: &str| read_file(&dir.join(rel));
    load_system_with(&text, &path.display().to_string(), &read)
}

/// Loads a system from manifest text, reading referenced files through `read`.
/// All validation problems are collected into one [`Error::Validation`].
pub fn load_system_with(
    manifest: &str,
    origin: &str,
    read: &dyn Fn(&str) -> Result<String>,
) -> Result<CohomologySystem> {
    let manifest: Manifest = serde_json::from_str(manifest).map_err(|source| Error::Json {
        path: origin.to_string(),
        source,
    })?;
    let group = match &manifest.group {
        Some(src) => Some(resolve(src, read)?.to_group(DEFAULT_GROUP_CAP)?),
        None => None,
    };
    let params = match (&group, manifest.params) {
        (_, Some(p)) => p,
        (Some(g), None) => GroupParams {
            p: g.p(),
            n: g.n(),
            z: g.center_omega1().1 as usize,
            r: g.p_rank() as usize,
        },
        (None, None) => return Err(Error::Invalid(format!("{origin}: manifest needs \"group\" or \"params\""))),
    };
    let ring = Arc::new(resolve(&manifest.ring, read)?.to_algebra()?);
    let center = ElemAbCohomology::new(params.p, params.z)?;
    let rings = Rings {
        ring: Arc::clone(&ring),
        center: Some(Arc::clone(center.algebra())),
        read,
    };
    let subgroups: BTreeMap<String, Subgroup> = match &group {
        Some(g) => (params.z..=params.r)
            .flat_map(|d| g.enumerate_acd(d as u32).members)
            .map(|s| (s.id(), s))
            .collect(),
        None => BTreeMap::new(),
    };

    let mut errors = Vec::new();
    let mut restrictions = Vec::new();
    for (id, src) in &manifest.restrictions {
        let subgroup = subgroups.get(id).cloned();
        if group.is_some() && subgroup.is_none() {
            errors.push(format!("restriction {id}: no elementary abelian subgroup containing C has this id"));
            continue;
        }
        match load_map(src, &rings) {
            Ok(map) => {
                let target = map
                    .target()
                    .free()
                    .generators()
                    .iter()
                    .all(|g| g.degree <= 2)
                    .then(|| elem_ab_rank(&map, params.p))
                    .flatten();
                match target {
                    Some(target) => restrictions.push(Restriction {
                        subgroup,
                        id: id.clone(),
                        target,
                        map,
                    }),
                    None => errors.push(format!("restriction {id}: target must be an elementary_abelian(p,m) ring")),
                }
            }
            Err(e) => errors.push(format!("restriction {id}: {e}")),
        }
    }
    let comodule = match &manifest.comodule {
        Some(src) => match load_map(src, &rings) {
            Ok(m) => Some(m),
            Err(e) => {
                errors.push(format!("comodule: {e}"));
                None
            }
        },
        None => None,
    };
    if !errors.is_empty() {
        return Err(Error::Validation(errors));
    }
    CohomologySystem::new(group, params, ring, restrictions, comodule)
}

fn load_map(src: &MapSource, rings: &Rings<'_>) -> Result<AlgebraMap> {
    let file = resolve(src, rings.read)?;
    let source = rings.get(&file.source)?;
    if *source != *rings.ring {
        return Err(Error::Invalid("map source must be the system ring".into()));
    }
    let target = rings.get(&file.target)?;
    file.to_map(source, target)
}

/// The ElemAbCohomology whose ring is the target of `map`, if it is one.
fn elem_ab_rank(map: &AlgebraMap, p: u32) -> Option<ElemAbCohomology> {
    let n = map.target().free().ngens();
    let m = if p == 2 { n } else { n / 2 };
    let v = ElemAbCohomology::new(p, m).ok()?;
    (**v.algebra() == **map.target()).then_some(v)
}

/// Writes the system as `manifest.json` plus one file per component into `dir`.
pub fn save_system(sys: &CohomologySystem, dir: &Path) -> Result<()> {
    let write = |name: &str, value: &dyn erased::Json| -> Result<()> {
        let path = dir.join(name);
        std::fs::write(&path, value.to_json()).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })
    };
    std::fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.display().to_string(),
        source,
    })?;
    let mut manifest = Manifest {
        group: None,
        params: None,
        ring: Source::File("ring.json".into()),
        restrictions: BTreeMap::new(),
        comodule: None,
    };
    match sys.group() {
        Some(g) => {
            write("group.json", &GroupFile::from_group(g))?;
            manifest.group = Some(Source::File("group.json".into()));
        }
        None => manifest.params = Some(sys.params()),
    }
    write("ring.json", &RingFile::from_algebra(sys.ring()))?;
    for (k, r) in sys.restrictions().iter().enumerate() {
        let name = format!("res_{k}.json");
        let file = MapFile::from_map(
            &r.map,
            RingRef::Named(SYSTEM_RING.into()),
            RingRef::Named(r.target.builtin_name()),
        );
        write(&name, &file)?;
        manifest.restrictions.insert(r.id.clone(), Source::File(name));
    }
    if let Some(mu) = sys.comodule() {
        let file = MapFile::from_map(mu, RingRef::Named(SYSTEM_RING.into()), RingRef::Named(COMODULE_TARGET.into()));
        write("comodule.json", &file)?;
        manifest.comodule = Some(Source::File("comodule.json".into()));
    }
    write("manifest.json", &manifest)
}

mod erased {
    pub trait Json {
        fn to_json(&self) -> String;
    }

    impl<T: serde::Serialize> Json for T {
        fn to_json(&self) -> String {
            serde_json::to_string_pretty(self).expect("serializable") + "\n"
        }
    }
}

/// Subgroup ids of 𝒜ᶜ(G), by rank, for writing manifests.
pub fn subgroup_ids(g: &GroupTable) -> BTreeMap<usize, Vec<String>> {
    let (_, z) = g.center_omega1();
    (z..=g.p_rank())
        .map(|d| (d as usize, g.enumerate_acd(d).members.iter().map(Subgroup::id).collect()))
        .collect()
}
