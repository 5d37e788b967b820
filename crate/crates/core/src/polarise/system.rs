//! Parameter systems and their JSON form.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cohmodel::CohomologySystem;
use crate::dickson::DualSpaceAlgebra;
use crate::error::{Error, Result};
use crate::graded::{Element, FreeAlgebra};
use crate::pgroup::Subgroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Parameters are elements of the presented ring R.
    Ring,
    /// Only the images in k[V*] for V ∈ 𝒜ᶜ(G) are known.
    RestrictionOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Canonical,
    ChernInduced,
    User,
}

/// Images of the parameters in k[V*] for one V ∈ 𝒜ᶜ(G), in coordinates
/// with C spanned by the last z basis vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct SubgroupImages {
    pub id: String,
    pub subgroup: Option<Subgroup>,
    pub space: DualSpaceAlgebra,
    pub zetas: Vec<Element>,
    pub kappas: Vec<Element>,
}

impl SubgroupImages {
    pub fn rank(&self) -> usize {
        self.space.rank()
    }

    pub fn ring(&self) -> &Arc<FreeAlgebra> {
        self.space.ring()
    }
}

/// ζ_1..ζ_z, κ_1..κ_{r-z}, held either as ring elements or as restrictions.
#[derive(Clone, Debug)]
pub struct ParameterSystem {
    pub mode: Mode,
    pub provenance: Provenance,
    pub p: u32,
    pub z: usize,
    pub r: usize,
    /// Ring mode only.
    pub zetas: Vec<Element>,
    /// Ring mode only.
    pub kappas: Vec<Element>,
    /// Restriction-only mode, one entry per V ∈ 𝒜ᶜ(G).
    pub images: Vec<SubgroupImages>,
}

impl ParameterSystem {
    pub fn ring(
        provenance: Provenance,
        sys: &CohomologySystem,
        zetas: Vec<Element>,
        kappas: Vec<Element>,
    ) -> Result<Self> {
        let params = sys.params();
        let ps = ParameterSystem {
            mode: Mode::Ring,
            provenance,
            p: params.p,
            z: params.z,
            r: params.r,
            zetas,
            kappas,
            images: Vec::new(),
        };
        ps.validate()?;
        Ok(ps)
    }

    pub fn restriction_only(
        provenance: Provenance,
        p: u32,
        z: usize,
        r: usize,
        images: Vec<SubgroupImages>,
    ) -> Result<Self> {
        let ps = ParameterSystem {
            mode: Mode::RestrictionOnly,
            provenance,
            p,
            z,
            r,
            zetas: Vec::new(),
            kappas: Vec::new(),
            images,
        };
        ps.validate()?;
        Ok(ps)
    }

    fn validate(&self) -> Result<()> {
        let mut errors = Vec::new();
        let check = |what: String, e: &Element, errors: &mut Vec<String>| match e.degree() {
            Err(_) => errors.push(format!("{what} is not homogeneous")),
            Ok(None) => errors.push(format!("{what} is zero")),
            Ok(Some(0)) => errors.push(format!("{what} has degree 0")),
            Ok(Some(_)) => {}
        };
        match self.mode {
            Mode::Ring => {
                if self.zetas.len() != self.z || self.kappas.len() != self.r - self.z {
                    errors.push(format!(
                        "expected {} zetas and {} kappas, got {} and {}",
                        self.z,
                        self.r - self.z,
                        self.zetas.len(),
                        self.kappas.len()
                    ));
                }
                for (i, e) in self.zetas.iter().enumerate() {
                    check(format!("zeta_{}", i + 1), e, &mut errors);
                }
                for (j, e) in self.kappas.iter().enumerate() {
                    check(format!("kappa_{}", j + 1), e, &mut errors);
                }
            }
            Mode::RestrictionOnly => {
                for im in &self.images {
                    if im.zetas.len() != self.z || im.kappas.len() != self.r - self.z {
                        errors.push(format!("subgroup {}: wrong number of images", im.id));
                    }
                    for (i, e) in im.zetas.iter().chain(&im.kappas).enumerate() {
                        if !e.is_homogeneous() {
                            errors.push(format!("subgroup {}: image {} is not homogeneous", im.id, i + 1));
                        }
                    }
                }
            }
        }
        if errors.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(errors))
        }
    }

    pub fn len(&self) -> usize {
        self.r
    }

    pub fn is_empty(&self) -> bool {
        self.r == 0
    }

    pub fn image(&self, id: &str) -> Option<&SubgroupImages> {
        self.images.iter().find(|im| im.id == id)
    }

    /// Degrees of ζ's then κ's (ring mode) or of the images on the first
    /// subgroup of maximal rank (restriction-only mode; zero images are
    /// skipped).
    pub fn degrees(&self) -> Vec<u32> {
        let deg = |e: &Element| e.degree().ok().flatten().unwrap_or(0);
        match self.mode {
            Mode::Ring => self.zetas.iter().chain(&self.kappas).map(deg).collect(),
            Mode::RestrictionOnly => self
                .images
                .iter()
                .max_by_key(|im| im.rank())
                .map(|im| im.zetas.iter().chain(&im.kappas).map(deg).collect())
                .unwrap_or_default(),
        }
    }

    pub fn to_file(&self) -> SystemFile {
        let strs = |v: &[Element]| v.iter().map(|e| e.to_string()).collect();
        SystemFile {
            mode: self.mode,
            provenance: self.provenance,
            zetas: strs(&self.zetas),
            kappas: strs(&self.kappas),
            images: self
                .images
                .iter()
                .map(|im| {
                    (
                        im.id.clone(),
                        ImageFile {
                            rank: im.rank(),
                            zetas: strs(&im.zetas),
                            kappas: strs(&im.kappas),
                        },
                    )
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageFile {
    pub rank: usize,
    pub zetas: Vec<String>,
    pub kappas: Vec<String>,
}

/// `{ "mode": "ring" | "restriction-only", "provenance": ..., "zetas": [...],
/// "kappas": [...], "images": { id: { "rank": m, "zetas": [...], "kappas": [...] } } }`.
/// Ring-mode strings are in the generators of R; image strings in x1..xm.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemFile {
    pub mode: Mode,
    #[serde(default = "user")]
    pub provenance: Provenance,
    #[serde(default)]
    pub zetas: Vec<String>,
    #[serde(default)]
    pub kappas: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub images: BTreeMap<String, ImageFile>,
}

fn user() -> Provenance {
    Provenance::User
}

impl SystemFile {
    pub fn from_json(text: &str, origin: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|source| Error::Json {
            path: origin.to_string(),
            source,
        })
    }

    pub fn to_system(&self, sys: &CohomologySystem) -> Result<ParameterSystem> {
        let params = sys.params();
        match self.mode {
            Mode::Ring => {
                let parse = |v: &[String]| v.iter().map(|s| sys.ring().parse(s)).collect::<Result<Vec<_>>>();
                ParameterSystem::ring(self.provenance, sys, parse(&self.zetas)?, parse(&self.kappas)?)
            }
            Mode::RestrictionOnly => {
                let mut images = Vec::new();
                for (id, im) in &self.images {
                    let space = DualSpaceAlgebra::new(params.p, im.rank)?;
                    let parse = |v: &[String]| v.iter().map(|s| space.ring().parse(s)).collect::<Result<Vec<_>>>();
                    let subgroup = sys.group().and_then(|g| {
                        (params.z..=params.r)
                            .flat_map(|d| g.enumerate_acd(d as u32).members)
                            .find(|s| s.id() == *id)
                    });
                    images.push(SubgroupImages {
                        id: id.clone(),
                        subgroup,
                        zetas: parse(&im.zetas)?,
                        kappas: parse(&im.kappas)?,
                        space,
                    });
                }
                ParameterSystem::restriction_only(self.provenance, params.p, params.z, params.r, images)
            }
        }
    }
}
