//! Polarised systems of parameters: the system type, axiom checks, p-th
//! power promotion and the restriction-level constructions.

mod axioms;
mod construct;
mod system;

pub use axioms::{check_axioms, check_restriction_axioms, promote_to_special, sop_verdict, AxiomReport, Promotion};
pub use construct::{
    acd_bases, canonical_restrictions, chern_induced_system, compare_systems, compatibility_failures,
    restrict_dual, ring_images, theta_restriction, unit_multiple, ComparisonRow, ThetaReport,
};
pub use system::{ImageFile, Mode, ParameterSystem, Provenance, SubgroupImages, SystemFile};
