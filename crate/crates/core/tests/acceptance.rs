//! Acceptance suite: one line per criterion, exit status 1 if any fails.
//! All comparisons are exact; the time limits are wall-clock.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use depthkit::cohmodel::{CohomologySystem, ElemAbCohomology};
use depthkit::depth::{is_regular_sequence, tau_numbers, DepthReport, RegSeqCertificate};
use depthkit::dickson::{
    check_gl_invariance, dickson_set, expand_fv, regular_rep_chern, restrict_dickson, DualSpaceAlgebra, DEFAULT_CAP,
};
use depthkit::fixtures;
use depthkit::fplinalg::is_prime;
use depthkit::graded::Element;
use depthkit::pgroup::{GroupTable, DEFAULT_GROUP_CAP};
use depthkit::polarise::{
    acd_bases, canonical_restrictions, check_restriction_axioms, chern_induced_system, compare_systems,
    theta_restriction, ParameterSystem, Provenance,
};
use depthkit::steenrod::{kappa_chain, total_power, ChainVerdict, KappaComposite};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

/// (p, m) with p^m <= 81 and m >= 1.
fn table() -> Vec<(u32, usize)> {
    let mut out = Vec::new();
    for p in (2..=DEFAULT_CAP as u32).filter(|&p| is_prime(p as u64)) {
        let mut m = 1;
        while (p as u64).pow(m as u32) <= DEFAULT_CAP {
            out.push((p, m));
            m += 1;
        }
    }
    out
}

fn extraspecial(p: u32, n: u32) -> GroupTable {
    GroupTable::extraspecial_plus(p, n, DEFAULT_GROUP_CAP).expect("extraspecial group")
}

fn fixture_groups() -> Vec<(&'static str, GroupTable)> {
    vec![
        ("D8", GroupTable::dihedral8()),
        ("Q8", GroupTable::quaternion8()),
        ("3^1+2", extraspecial(3, 1)),
        ("3^1+4", extraspecial(3, 2)),
    ]
}

fn criterion_1() -> Check {
    let entries = table();
    for &(p, m) in &entries {
        let fv = expand_fv(p, m, DEFAULT_CAP).map_err(e)?;
        ensure(fv.exponents_are_p_powers() && fv.is_monic(), || {
            format!("f_V for p={p}, m={m} is not a monic p-polynomial")
        })?;
        ensure(fv.dickson()[0].to_string() == "1", || format!("D_0 != 1 for p={p}, m={m}"))?;
    }
    let set = dickson_set(2, 2).map_err(e)?;
    let (d1, d2) = (set.get(1).to_string(), set.get(2).to_string());
    ensure(d1 == "x1^2+x1*x2+x2^2" && d2 == "x1^2*x2+x1*x2^2", || {
        format!("F_2, m = 2 gave D_1 = {d1}, D_2 = {d2}")
    })?;
    Ok(format!("{} (p, m) pairs", entries.len()))
}

fn criterion_2() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let entries = table();
    for &(p, m) in &entries {
        let set = dickson_set(p, m).map_err(e)?;
        let v = check_gl_invariance(&set, 100, &mut rng).map_err(e)?;
        ensure(v.holds(), || format!("p={p}, m={m}: {v:?}"))?;
    }
    Ok(format!("100 random g for each of {} pairs", entries.len()))
}

fn criterion_3() -> Check {
    let mut count = 0;
    for (p, m) in table() {
        for l in 0..=m {
            let t = restrict_dickson(p, m, l).map_err(e)?;
            ensure(t.all_match(), || format!("p={p}, m={m}, l={l}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} restrictions"))
}

fn criterion_4() -> Check {
    for p in [2, 3] {
        for z in 1..=3 {
            let c = regular_rep_chern(p, z, DEFAULT_CAP).map_err(e)?;
            ensure(c.holds(), || format!("p={p}, z={z}: {c:?}"))?;
        }
    }
    Ok("p in {2,3}, z <= 3".into())
}

fn random_poly<R: Rng>(space: &DualSpaceAlgebra, rng: &mut R) -> Element {
    let ring = space.ring();
    let mut out = ring.zero();
    for _ in 0..rng.gen_range(1..4) {
        let d = 2 * rng.gen_range(1..4);
        let monos = ring.monomials_of_degree(d);
        let m = monos[rng.gen_range(0..monos.len())].clone();
        out = &out + &ring.monomial(m, rng.gen_range(1..space.p()));
    }
    out
}

fn criterion_5() -> Check {
    let mut chains = 0;
    for (name, g) in fixture_groups() {
        let ps = canonical_restrictions(&g).map_err(e)?;
        let (z, r) = (ps.z, ps.r);
        for b in acd_bases(&g).map_err(e)? {
            let s = b.rank() - z;
            if s == 0 || s > 3 {
                continue;
            }
            let theta = theta_restriction(&g, b.subgroup()).map_err(e)?;
            let im = ps.image(&theta.id).ok_or("missing canonical image")?;
            let positions: Vec<usize> = (0..s).collect();
            for j in 1..=(s + 1).min(r - z) {
                let c = kappa_chain(g.n(), z as u32, j as u32, &theta.value, &positions, KappaComposite::DegreeConsistent)
                    .map_err(e)?;
                ensure(c.verdict == ChainVerdict::Match && c.value == im.kappas[j - 1], || {
                    format!("{name}, V = {}, j = {j}: {:?}", theta.id, c.verdict)
                })?;
                chains += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for k in 0..200 {
        let p = [2, 3, 5][k % 3];
        let space = DualSpaceAlgebra::new(p, 3).map_err(e)?;
        let (x, y) = (random_poly(&space, &mut rng), random_poly(&space, &mut rng));
        let lhs = total_power(&(&x * &y)).map_err(e)?;
        let rhs = &total_power(&x).map_err(e)? * &total_power(&y).map_err(e)?;
        ensure(lhs == rhs, || format!("Cartan fails for p={p}, x = {x}, y = {y}"))?;
    }
    Ok(format!("{chains} chains, 200 Cartan pairs"))
}

fn criterion_6() -> Check {
    let mut checked = 0;
    for (name, g) in fixture_groups() {
        let (_, z) = g.center_omega1();
        let us = g.enumerate_acd(z + 1).members;
        for u in &us {
            let normalizer = g.normalizer(u).order();
            for d in z..=g.p_rank() {
                for v in g.enumerate_acd(d).members {
                    for target in us.iter().filter(|t| t.is_subgroup_of(&v)) {
                        let count = g.double_coset_count(u, &v, target);
                        let conjugate = (0..g.order()).any(|x| g.conjugate(u, x) == *target);
                        let expected = if conjugate { normalizer / v.order() } else { 0 };
                        ensure(count == expected, || {
                            format!("{name}: U = {}, V = {}, U' = {}: {count} != {expected}", u.id(), v.id(), target.id())
                        })?;
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{checked} (U, V, U') triples"))
}

fn criterion_7() -> Check {
    let mut count = 0;
    for (name, g) in fixture_groups() {
        for b in acd_bases(&g).map_err(e)? {
            let t = theta_restriction(&g, b.subgroup()).map_err(e)?;
            ensure(t.value == t.expected && t.red_alert.is_none(), || {
                format!("{name}, V = {}: η̂ = {}, alert {:?}", t.id, t.eta_hat, t.red_alert)
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} subgroups"))
}

fn elementary(p: u32, m: usize) -> Result<(CohomologySystem, ParameterSystem), String> {
    let sys = CohomologySystem::elementary_abelian(p, m).map_err(e)?;
    let v = ElemAbCohomology::new(p, m).map_err(e)?;
    let set = dickson_set(p, m).map_err(e)?;
    let zetas = (1..=m)
        .map(|i| {
            let d = v.from_dual(set.get(i))?;
            Ok(if i % 2 == 1 { d.scale(p - 1) } else { d })
        })
        .collect::<depthkit::Result<Vec<_>>>()
        .map_err(e)?;
    let ps = ParameterSystem::ring(Provenance::Canonical, &sys, zetas, vec![]).map_err(e)?;
    Ok((sys, ps))
}

fn certified(sys: &CohomologySystem, seq: &[Element], bound: u32) -> Result<RegSeqCertificate, String> {
    let c = is_regular_sequence(sys.ring(), seq, bound).map_err(e)?;
    ensure(c.hilbert_agrees, || "injectivity and Hilbert-series criteria disagree".into())?;
    Ok(c)
}

fn criterion_8() -> Check {
    for (p, m) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)] {
        let (sys, ps) = elementary(p, m)?;
        let rep = tau_numbers(&sys, &ps, 10).map_err(e)?;
        ensure(rep.tau_a.value == Some(m), || format!("elementary ({p},{m}): τ_a = {:?}", rep.tau_a))?;
        let c = certified(&sys, &ps.zetas, 10)?;
        ensure(c.is_regular(), || format!("elementary ({p},{m}): Dickson sequence not regular"))?;
    }
    let mut depth = Vec::new();
    for (name, want) in [("d8", 2), ("q8", 1)] {
        let sys = fixtures::system(name).map_err(e)?;
        let ps = fixtures::parameter_system(name).map_err(e)?;
        let seq = [ps.zetas.clone(), ps.kappas.clone()].concat();
        let c = certified(&sys, &seq, 10)?;
        ensure(c.is_regular() && seq.len() == want, || format!("{name}: {:?}", c.steps))?;
        let rep = tau_numbers(&sys, &ps, 10).map_err(e)?;
        ensure(rep.tau_a.value == Some(want), || format!("{name}: τ_a = {:?}", rep.tau_a))?;
        depth.push(format!("{name} depth {want}"));
    }
    Ok(format!("elementary τ_a = m; {} through D = 10", depth.join(", ")))
}

fn coherent(name: &str, rep: &DepthReport) -> Result<(), String> {
    ensure(rep.red_alerts.is_empty(), || format!("{name}: {:?}", rep.red_alerts))?;
    if rep.s_ah_set.iter().all(Option::is_some) {
        let set: Vec<bool> = rep.s_ah_set.iter().map(|m| m.unwrap_or(false)).collect();
        let cut = set.iter().position(|m| !m).unwrap_or(set.len());
        ensure(set[cut..].iter().all(|m| !m), || format!("{name}: S_aH = {set:?}"))?;
    }
    if let (Some(a), Some(ah), Some(h)) = (rep.tau_a.value, rep.tau_ah.value, rep.tau_h.value) {
        ensure(a >= ah && h >= ah, || format!("{name}: τ_a = {a}, τ_aH = {ah}, τ_H = {h}"))?;
    }
    ensure(rep.tightness.consistent, || format!("{name}: tightness statements disagree"))
}

fn stable(name: &str, sys: &CohomologySystem, seq: &[Element], p: u64) -> Result<(), String> {
    let base = certified(sys, seq, 12)?.is_regular();
    let rev: Vec<Element> = seq.iter().rev().cloned().collect();
    ensure(certified(sys, &rev, 12)?.is_regular() == base, || format!("{name}: permutation changes the verdict"))?;
    for k in 0..seq.len() {
        let mut powered = seq.to_vec();
        powered[k] = powered[k].pow(p);
        ensure(certified(sys, &powered, 12)?.is_regular() == base, || {
            format!("{name}: p-th power of element {} changes the verdict", k + 1)
        })?;
    }
    Ok(())
}

fn criterion_9() -> Check {
    let mut systems: Vec<(String, CohomologySystem, ParameterSystem)> = Vec::new();
    for name in fixtures::NAMES {
        systems.push((
            name.to_string(),
            fixtures::system(name).map_err(e)?,
            fixtures::parameter_system(name).map_err(e)?,
        ));
    }
    for (p, m) in [(2, 2), (3, 1)] {
        let (sys, ps) = elementary(p, m)?;
        systems.push((format!("elementary({p},{m})"), sys, ps));
    }
    for (name, sys, ps) in &systems {
        let rep = tau_numbers(sys, ps, 10).map_err(e)?;
        coherent(name, &rep)?;
        let seq = [ps.zetas.clone(), ps.kappas.clone()].concat();
        stable(name, sys, &seq, ps.p as u64)?;
    }
    let d8 = &systems[0].1;
    let x = d8.ring().parse("x").map_err(e)?;
    let y = d8.ring().parse("x+y").map_err(e)?;
    stable("D8 zero divisor", d8, &[x], 2)?;
    stable("D8 (x+y)", d8, &[y], 2)?;
    Ok(format!("{} systems", systems.len()))
}

fn extraspecial_example(p: u32, n: u32) -> Result<usize, String> {
    let g = extraspecial(p, n);
    let ch = chern_induced_system(&g).map_err(e)?;
    let rep = check_restriction_axioms(Some(&g), &ch, 10).map_err(e)?;
    ensure(rep.core().is_pass(), || format!("{p}^1+{}: {rep:?}", 2 * n))?;
    let can = canonical_restrictions(&g).map_err(e)?;
    let rows = compare_systems(&can, &ch, g.p_rank() as usize);
    let kappas: Vec<_> = rows.iter().filter(|r| r.parameter.starts_with("kappa")).collect();
    ensure(!kappas.is_empty() && kappas.iter().all(|r| r.unit.is_some()), || {
        format!("κ images differ beyond a unit: {kappas:?}")
    })?;
    Ok(kappas.len())
}

fn criterion_10() -> Check {
    let start = Instant::now();
    let small = extraspecial_example(3, 1)?;
    let small_time = start.elapsed();
    ensure(small_time < Duration::from_secs(60), || format!("3^1+2 took {small_time:?}"))?;
    let start = Instant::now();
    let large = extraspecial_example(3, 2)?;
    let large_time = start.elapsed();
    ensure(large_time < Duration::from_secs(600), || format!("3^1+4 took {large_time:?}"))?;
    Ok(format!(
        "3^1+2: {small} κ comparisons in {:.2}s; 3^1+4: {large} in {:.2}s",
        small_time.as_secs_f64(),
        large_time.as_secs_f64()
    ))
}

fn main() -> ExitCode {
    type Criterion = (u32, &'static str, fn() -> Check, Option<u64>);
    let criteria: [Criterion; 10] = [
        (1, "Dickson identities", criterion_1, Some(5)),
        (2, "GL-invariance", criterion_2, None),
        (3, "restriction law", criterion_3, None),
        (4, "Milgram identity", criterion_4, None),
        (5, "Steenrod/Dickson consistency", criterion_5, None),
        (6, "Mackey count", criterion_6, Some(60)),
        (7, "norm-product identity", criterion_7, None),
        (8, "depth engine fixtures", criterion_8, Some(30)),
        (9, "theorem coherence", criterion_9, None),
        (10, "extraspecial example", criterion_10, Some(660)),
    ];
    let mut failed = 0;
    for (k, title, run, limit) in criteria {
        let start = Instant::now();
        let result = run();
        let secs = start.elapsed().as_secs_f64();
        let (ok, detail) = match (result, limit) {
            (Ok(d), Some(l)) if secs > l as f64 => (false, format!("{d}; exceeded {l}s")),
            (Ok(d), _) => (true, d),
            (Err(d), _) => (false, d),
        };
        let limit = limit.map(|l| format!(", limit {l}s")).unwrap_or_default();
        println!(
            "criterion {k:>2} {}: {title}: {detail} [{secs:.2}s{limit}]",
            if ok { "PASS" } else { "FAIL" }
        );
        if !ok {
            failed += 1;
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
