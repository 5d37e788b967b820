//! Shipped example data: presentations of H*(D8) and H*(Q8) from the
//! literature with their restriction maps. They are validated on load but
//! not derived here.

use crate::cohmodel::{load_system_with, CohomologySystem};
use crate::error::{Error, Result};
use crate::polarise::{ParameterSystem, SystemFile};

/// (name, file, contents) for every shipped file.
pub const FILES: &[(&str, &str, &str)] = &[
    ("d8", "manifest.json", include_str!("../fixtures/d8/manifest.json")),
    ("d8", "group.json", include_str!("../fixtures/d8/group.json")),
    ("d8", "ring.json", include_str!("../fixtures/d8/ring.json")),
    ("d8", "res_c.json", include_str!("../fixtures/d8/res_c.json")),
    ("d8", "res_v1.json", include_str!("../fixtures/d8/res_v1.json")),
    ("d8", "res_v2.json", include_str!("../fixtures/d8/res_v2.json")),
    ("d8", "comodule.json", include_str!("../fixtures/d8/comodule.json")),
    ("d8", "system.json", include_str!("../fixtures/d8/system.json")),
    ("q8", "manifest.json", include_str!("../fixtures/q8/manifest.json")),
    ("q8", "group.json", include_str!("../fixtures/q8/group.json")),
    ("q8", "ring.json", include_str!("../fixtures/q8/ring.json")),
    ("q8", "res_c.json", include_str!("../fixtures/q8/res_c.json")),
    ("q8", "system.json", include_str!("../fixtures/q8/system.json")),
];

pub const NAMES: &[&str] = &["d8", "q8"];

pub fn file(name: &str, file: &str) -> Result<&'static str> {
    FILES
        .iter()
        .find(|(n, f, _)| *n == name && *f == file)
        .map(|(_, _, text)| *text)
        .ok_or_else(|| Error::Invalid(format!("no shipped file {name}/{file}")))
}

/// Loads a shipped system by name.
pub fn system(name: &str) -> Result<CohomologySystem> {
    let manifest = file(name, "manifest.json")?;
    let read = |f: &str| file(name, f).map(str::to_string);
    load_system_with(manifest, &format!("{name}/manifest.json"), &read)
}

/// The parameter system shipped with a fixture.
pub fn parameter_system(name: &str) -> Result<ParameterSystem> {
    let sys = system(name)?;
    SystemFile::from_json(file(name, "system.json")?, &format!("{name}/system.json"))?.to_system(&sys)
}

pub fn d8() -> CohomologySystem {
    system("d8").expect("shipped D8 fixture")
}

pub fn q8() -> CohomologySystem {
    system("q8").expect("shipped Q8 fixture")
}
