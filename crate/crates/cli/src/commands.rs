use std::path::Path;

use anyhow::{bail, Context, Result};
use depthkit::cohmodel::{load_system, CohomologySystem};
use depthkit::depth::{default_bound, tau_numbers, DepthNumber};
use depthkit::dickson::{check_gl_invariance, dickson_set_with_cap, restrict_dickson, DualSpaceAlgebra, DEFAULT_CAP};
use depthkit::fixtures;
use depthkit::graded::io::RingFile;
use depthkit::pgroup::io::GroupFile;
use depthkit::pgroup::{GroupTable, DEFAULT_GROUP_CAP};
use depthkit::polarise::{
    acd_bases, canonical_restrictions, check_axioms, check_restriction_axioms, chern_induced_system,
    compare_systems, compatibility_failures, ring_images, theta_restriction, AxiomReport, Mode, ParameterSystem,
    SystemFile,
};
use depthkit::steenrod::apply_power;
use depthkit::verdict::Verdict;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::report::Report;
use crate::Global;

fn origin(path: &Path) -> String {
    path.display().to_string()
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Pass { bound: None } => "pass".into(),
        Verdict::Pass { bound: Some(d) } => format!("pass through degree {d}"),
        Verdict::Fail { witness } => format!("FAIL: {witness}"),
        Verdict::Unknown { reason } => format!("unknown: {reason}"),
    }
}

fn number_text(n: &DepthNumber) -> String {
    match n.value {
        Some(v) => v.to_string(),
        None => format!("unknown ({})", n.note),
    }
}

fn load_manifest(rep: &mut Report, path: &Path) -> Result<CohomologySystem> {
    rep.read_input(path)?;
    load_system(path).with_context(|| format!("cannot load manifest {}", path.display()))
}

fn load_parameters(rep: &mut Report, sys: &CohomologySystem, path: &Path) -> Result<ParameterSystem> {
    let text = rep.read_input(path)?;
    let file = SystemFile::from_json(&text, &origin(path))?;
    Ok(file.to_system(sys)?)
}

/// Records PS1-PS4 failures and red alerts; PS2' and PS5 are informative.
fn record_axioms(rep: &mut Report, label: &str, ax: &AxiomReport) {
    for (name, v) in ax.rows() {
        rep.line(format!("  {name:<5} {}", verdict_text(v)));
        if let (Verdict::Fail { witness }, "PS1" | "PS2" | "PS3" | "PS4") = (v, name) {
            rep.failures.push(format!("{label}{name} fails: {witness}"));
        }
    }
    if let Some(n) = ax.special_exponent {
        rep.line(format!("  special after raising κ to the p^{n}"));
    }
    rep.red_alerts.extend(ax.red_alerts.iter().map(|a| format!("{label}{a}")));
}

pub fn group_analyze(rep: &mut Report, g: &Global, file: &Path) -> Result<()> {
    let text = rep.read_input(file)?;
    let grp = GroupFile::from_json(&text, &origin(file))?.to_group(g.cap.unwrap_or(DEFAULT_GROUP_CAP))?;
    let (c, z) = grp.center_omega1();
    let r = grp.p_rank();
    rep.line(format!("p = {}, |G| = {} = p^{}", grp.p(), grp.order(), grp.n()));
    rep.line(format!("z = {z}, r = {r}, |Z(G)| = {}", grp.center().order()));
    let mut families = Vec::new();
    for d in z..=r {
        let members = grp.enumerate_acd(d).members;
        rep.line(format!("|A^C_{d}| = {}", members.len()));
        let mut orbits = Vec::new();
        for o in grp.conjugation_orbits(&members) {
            let cent = grp.centralizer(&o.representative);
            let self_centralizing = cent == o.representative;
            rep.line(format!(
                "  orbit of {} (size {}): |N_G(V)| = {}, |C_G(V)| = {}{}",
                o.representative.id(),
                o.size,
                o.normalizer_order,
                cent.order(),
                if self_centralizing { ", C_G(V) = V" } else { "" }
            ));
            orbits.push(json!({
                "representative": o.representative.id(),
                "elements": o.representative.elements(),
                "size": o.size,
                "normalizer_order": o.normalizer_order,
                "centralizer_order": cent.order(),
                "self_centralizing": self_centralizing,
            }));
        }
        families.push(json!({ "d": d, "count": members.len(), "orbits": orbits }));
    }
    rep.results = json!({
        "p": grp.p(),
        "order": grp.order(),
        "n": grp.n(),
        "z": z,
        "r": r,
        "c": c.id(),
        "center_order": grp.center().order(),
        "families": families,
    });
    Ok(())
}

pub fn ring_hilbert(rep: &mut Report, g: &Global, file: &Path) -> Result<()> {
    let text = rep.read_input(file)?;
    let alg = RingFile::from_json(&text, &origin(file))?.to_algebra()?;
    let bound = g.bound.unwrap_or(20);
    rep.bound = Some(bound);
    let dims = alg.hilbert_series(bound);
    for (d, n) in dims.iter().enumerate() {
        rep.line(format!("dim R_{d} = {n}"));
    }
    rep.results = json!({
        "p": alg.p(),
        "generators": alg.free().generators().iter().map(|x| json!({"name": x.name, "degree": x.degree})).collect::<Vec<_>>(),
        "relations": alg.relations().len(),
        "dims": dims,
    });
    Ok(())
}

pub fn dickson(
    rep: &mut Report,
    g: &Global,
    p: u32,
    m: usize,
    restrict: Option<usize>,
    gl_trials: Option<usize>,
) -> Result<()> {
    let cap = g.cap.map(|c| c as u64).unwrap_or(DEFAULT_CAP);
    let set = dickson_set_with_cap(p, m, cap)?;
    let mut results = serde_json::Map::new();
    let ds: Vec<String> = std::iter::once("1".to_string())
        .chain(set.invariants().iter().map(|e| e.to_string()))
        .collect();
    for (s, d) in ds.iter().enumerate() {
        rep.line(format!("D_{s} = {d}"));
    }
    results.insert("p".into(), json!(p));
    results.insert("m".into(), json!(m));
    results.insert("dickson".into(), json!(ds));
    if let Some(l) = restrict {
        let t = restrict_dickson(p, m, l)?;
        let rows: Vec<Value> = t
            .rows
            .iter()
            .map(|row| {
                rep.line(format!(
                    "Res D_{} = {} (expected {}){}",
                    row.s,
                    row.image,
                    row.expected,
                    if row.matches() { "" } else { "  MISMATCH" }
                ));
                if !row.matches() {
                    rep.red_alerts
                        .push(format!("restriction of D_{} with l = {l} is {}, not {}", row.s, row.image, row.expected));
                }
                json!({"s": row.s, "image": row.image.to_string(), "expected": row.expected.to_string(), "matches": row.matches()})
            })
            .collect();
        results.insert("restriction".into(), json!({ "l": l, "rows": rows }));
    }
    if let Some(trials) = gl_trials {
        let seed = g.seed.unwrap_or(0);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = check_gl_invariance(&set, trials, &mut rng)?;
        rep.line(format!("GL_{m}(F_{p}) invariance, {trials} random elements, seed {seed}: {v:?}"));
        if !v.holds() {
            rep.red_alerts.push(format!("GL invariance fails: {v:?}"));
        }
        results.insert("gl".into(), json!({ "trials": trials, "seed": seed, "holds": v.holds() }));
    }
    rep.results = Value::Object(results);
    Ok(())
}

/// Largest k with `xk` in the input.
fn infer_rank(input: &str) -> usize {
    let b = input.as_bytes();
    let mut best = 0;
    for (i, &c) in b.iter().enumerate() {
        if c == b'x' {
            let digits: String = input[i + 1..].chars().take_while(char::is_ascii_digit).collect();
            best = best.max(digits.parse().unwrap_or(0));
        }
    }
    best
}

pub fn steenrod(rep: &mut Report, p: u32, op: u64, input: &str, m: Option<usize>) -> Result<()> {
    let m = m.unwrap_or_else(|| infer_rank(input)).max(1);
    let space = DualSpaceAlgebra::new(p, m)?;
    let x = space.ring().parse(input)?;
    let y = apply_power(op, &x)?;
    rep.line(format!("P^{op}({x}) = {y}"));
    rep.results = json!({ "p": p, "m": m, "op": op, "input": x.to_string(), "output": y.to_string() });
    Ok(())
}

pub fn depth_report(rep: &mut Report, g: &Global, manifest: &Path, system: &Path) -> Result<()> {
    let sys = load_manifest(rep, manifest)?;
    let ps = load_parameters(rep, &sys, system)?;
    let bound = g.bound.unwrap_or_else(|| default_bound(&sys, &ps));
    rep.bound = Some(bound);
    let d = tau_numbers(&sys, &ps, bound)?;
    rep.line(format!("z = {}, r = {}, bound D = {bound}", d.z, d.r));
    rep.line(format!("s_a = {}, τ_a = {}", number_text(&d.s_a), number_text(&d.tau_a)));
    rep.line(format!("s_aH = {}, τ_aH = {}", number_text(&d.s_ah), number_text(&d.tau_ah)));
    rep.line(format!("τ_H = {}", number_text(&d.tau_h)));
    let set: Vec<String> = d
        .s_ah_set
        .iter()
        .map(|m| match m {
            Some(true) => "yes".into(),
            Some(false) => "no".into(),
            None => "?".into(),
        })
        .collect();
    rep.line(format!("S_aH membership for 0..=r-z: [{}]", set.join(", ")));
    if let Some(c) = &d.regularity {
        rep.line(format!(
            "regular prefix of κ_1..κ_r-z: {} of {} (Hilbert cross-check {})",
            c.regular_prefix(),
            c.sequence.len(),
            if c.hilbert_agrees { "agrees" } else { "DISAGREES" }
        ));
    }
    for (k, w) in &d.non_detected {
        rep.line(format!("  not detected on H^C_{k}: {} in degree {}", w.element, w.degree));
    }
    let tight = match d.tightness.tight {
        Some(true) => "yes",
        Some(false) => "no",
        None => "unknown",
    };
    rep.line(format!("depth = z (tight): {tight}"));
    for s in &d.tightness.statements {
        let h = match s.holds {
            Some(true) => "holds",
            Some(false) => "fails",
            None => "unknown",
        };
        rep.line(format!("  {}: {h} ({})", s.label, s.detail));
    }
    for n in &d.notes {
        rep.line(format!("note: {n}"));
    }
    rep.red_alerts.extend(d.red_alerts.iter().cloned());
    rep.line("axioms:");
    let ax = axioms(&sys, &ps, bound)?;
    record_axioms(rep, "", &ax);
    rep.results = json!({ "params": sys.params(), "depth": d, "axioms": ax });
    Ok(())
}

fn axioms(sys: &CohomologySystem, ps: &ParameterSystem, bound: u32) -> Result<AxiomReport> {
    Ok(match ps.mode {
        Mode::Ring => check_axioms(sys, ps, bound)?,
        Mode::RestrictionOnly => check_restriction_axioms(sys.group(), ps, bound)?,
    })
}

fn restriction_bound(g: &Global, ps: &ParameterSystem) -> u32 {
    g.bound
        .unwrap_or_else(|| 2 * ps.degrees().into_iter().max().unwrap_or(0))
}

pub fn polarise_build(rep: &mut Report, g: &Global, manifest: &Path, out: Option<&Path>) -> Result<()> {
    let sys = load_manifest(rep, manifest)?;
    let Some(grp) = sys.group() else {
        bail!("{} has no group table; the canonical system needs one", manifest.display())
    };
    let ps = canonical_restrictions(grp)?;
    let bound = restriction_bound(g, &ps);
    rep.bound = Some(bound);
    let file = ps.to_file();
    rep.line(format!(
        "canonical system: {} subgroups, degrees {:?}",
        ps.images.len(),
        ps.degrees()
    ));
    for (v, u, what) in compatibility_failures(grp, &ps)? {
        rep.failures.push(format!("restriction from {v} to {u} does not match {what}"));
    }
    rep.line("axioms:");
    let ax = check_restriction_axioms(Some(grp), &ps, bound)?;
    record_axioms(rep, "", &ax);
    let text = serde_json::to_string_pretty(&file)? + "\n";
    match out {
        Some(path) => {
            std::fs::write(path, &text).with_context(|| format!("cannot write {}", path.display()))?;
            rep.line(format!("wrote {}", path.display()));
        }
        None => rep.line(text.trim_end().to_string()),
    }
    rep.results = json!({ "system": file, "axioms": ax });
    Ok(())
}

pub fn polarise_verify(rep: &mut Report, g: &Global, manifest: &Path, system: &Path) -> Result<()> {
    let sys = load_manifest(rep, manifest)?;
    let ps = load_parameters(rep, &sys, system)?;
    let bound = match ps.mode {
        Mode::Ring => g.bound.unwrap_or_else(|| default_bound(&sys, &ps)),
        Mode::RestrictionOnly => restriction_bound(g, &ps),
    };
    rep.bound = Some(bound);
    rep.line(format!("{:?} system, degrees {:?}, bound D = {bound}", ps.mode, ps.degrees()));
    let ax = axioms(&sys, &ps, bound)?;
    record_axioms(rep, "", &ax);
    rep.results = json!({ "mode": ps.mode, "degrees": ps.degrees(), "axioms": ax });
    Ok(())
}

pub fn example_extraspecial(rep: &mut Report, g: &Global, p: u32, n: u32) -> Result<()> {
    // p = 2, n = 1 is D8; the shipped table keeps subgroup ids aligned with the fixture.
    let d8 = (p, n) == (2, 1);
    let grp = if d8 {
        fixtures::d8().group().cloned().context("shipped D8 fixture has no group")?
    } else {
        GroupTable::extraspecial_plus(p, n, g.cap.unwrap_or(DEFAULT_GROUP_CAP))?
    };
    let (_, z) = grp.center_omega1();
    let r = grp.p_rank() as usize;
    let bound = g.bound.unwrap_or(10);
    rep.bound = Some(bound);
    rep.line(format!("{p}^(1+{}) with |G| = {}: z = {z}, r = {r}", 2 * n, grp.order()));

    let canonical = canonical_restrictions(&grp)?;
    rep.line(format!("canonical system, degrees {:?}:", canonical.degrees()));
    let can_ax = check_restriction_axioms(Some(&grp), &canonical, bound)?;
    record_axioms(rep, "canonical: ", &can_ax);
    for (v, u, what) in compatibility_failures(&grp, &canonical)? {
        rep.failures.push(format!("canonical: restriction from {v} to {u} does not match {what}"));
    }

    let chern = chern_induced_system(&grp)?;
    rep.line(format!("Chern-induced system, degrees {:?}:", chern.degrees()));
    let ch_ax = check_restriction_axioms(Some(&grp), &chern, bound)?;
    record_axioms(rep, "chern-induced: ", &ch_ax);

    let rows = compare_systems(&canonical, &chern, r);
    let agree = rows
        .iter()
        .filter(|row| row.parameter.starts_with("kappa"))
        .filter(|row| row.unit.is_some())
        .count();
    let kappas = rows.iter().filter(|row| row.parameter.starts_with("kappa")).count();
    rep.line(format!("κ images agreeing up to a unit on rank-{r} subgroups: {agree} of {kappas}"));
    for row in rows.iter().filter(|row| row.parameter.starts_with("kappa") && row.unit.is_none()) {
        rep.failures
            .push(format!("{} on {}: canonical and Chern-induced images differ beyond a unit", row.parameter, row.id));
    }

    let mut theta = Vec::new();
    for b in acd_bases(&grp)? {
        let t = theta_restriction(&grp, b.subgroup())?;
        if t.value != t.expected {
            rep.red_alerts.push(format!("Θ restricted to {} is {}, expected {}", t.id, t.value, t.expected));
        }
        if let Some(a) = &t.red_alert {
            rep.red_alerts.push(format!("Θ on {}: {a}", t.id));
        }
        theta.push(t);
    }
    let theta_ok = theta.iter().filter(|t| t.value == t.expected).count();
    rep.line(format!("Θ restrictions matching D_1(W)^|G:V|: {theta_ok} of {}", theta.len()));

    let fixture = if d8 {
        let sys = fixtures::d8();
        let images = ring_images(&sys, &fixtures::parameter_system("d8")?)?;
        let mut rows = Vec::new();
        for rank in z as usize..=r {
            rows.extend(compare_systems(&canonical, &images, rank));
        }
        let ok = rows.iter().all(|row| row.unit.is_some());
        rep.line(format!(
            "consistency with the shipped D8 system: {}",
            if ok { "all images agree up to a unit" } else { "MISMATCH" }
        ));
        for row in rows.iter().filter(|row| row.unit.is_none()) {
            rep.failures
                .push(format!("{} on {}: canonical image differs from the D8 fixture", row.parameter, row.id));
        }
        Some(rows)
    } else {
        None
    };

    rep.results = json!({
        "p": p,
        "n": n,
        "order": grp.order(),
        "z": z,
        "r": r,
        "canonical": { "system": canonical.to_file(), "axioms": can_ax },
        "chern_induced": { "system": chern.to_file(), "axioms": ch_ax },
        "comparison": rows,
        "theta": theta,
        "fixture_consistency": fixture,
    });
    Ok(())
}
