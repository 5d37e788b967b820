use std::sync::Arc;

use depthkit::cohmodel::{CohomologySystem, ElemAbCohomology, GroupParams};
use depthkit::dickson::dickson_set;
use depthkit::fixtures;
use depthkit::graded::{AlgebraMap, GeneratorSpec, PresentedAlgebra};
use depthkit::pgroup::{GroupTable, DEFAULT_GROUP_CAP};
use depthkit::polarise::*;
use depthkit::steenrod::{kappa_chain, ChainVerdict, KappaComposite};

fn extraspecial(p: u32, n: u32) -> GroupTable {
    GroupTable::extraspecial_plus(p, n, DEFAULT_GROUP_CAP).unwrap()
}

fn groups() -> Vec<(&'static str, GroupTable)> {
    vec![
        ("d8", GroupTable::dihedral8()),
        ("q8", GroupTable::quaternion8()),
        ("3^1+2", extraspecial(3, 1)),
        ("elem(2,3)", GroupTable::elementary_abelian(2, 3, DEFAULT_GROUP_CAP).unwrap()),
    ]
}

#[test]
fn shipped_systems_satisfy_ps1_to_ps4() {
    for name in fixtures::NAMES {
        let sys = fixtures::system(name).unwrap();
        let ps = fixtures::parameter_system(name).unwrap();
        let rep = check_axioms(&sys, &ps, 10).unwrap();
        assert!(rep.core().is_pass(), "{name}: {rep:?}");
        assert!(rep.ps2_prime.is_pass(), "{name}");
        assert!(rep.ps5.is_unknown());
        assert_eq!(rep.special_exponent, Some(0));
        assert!(rep.red_alerts.is_empty());
    }
}

#[test]
fn canonical_systems_satisfy_ps1_to_ps4() {
    for (name, g) in groups() {
        let ps = canonical_restrictions(&g).unwrap();
        let rep = check_restriction_axioms(Some(&g), &ps, 10).unwrap();
        assert!(rep.core().is_pass(), "{name}: {rep:?}");
        assert!(rep.ps2_prime.is_unknown());
        assert!(compatibility_failures(&g, &ps).unwrap().is_empty(), "{name}");
    }
}

#[test]
fn canonical_d8_images() {
    let ps = canonical_restrictions(&GroupTable::dihedral8()).unwrap();
    let d1 = dickson_set(2, 1).unwrap().get(1).clone();
    for im in &ps.images {
        if im.rank() == 2 {
            // |G:V| = 2
            assert_eq!(im.kappas[0], d1.embed(im.ring(), &[0]).pow(2));
            assert_eq!(im.kappas[0].degree().unwrap(), Some(4));
        } else {
            assert!(im.kappas[0].is_zero());
        }
    }
}

#[test]
fn canonical_restrictions_agree_with_the_d8_ring() {
    let sys = fixtures::d8();
    let ring = ring_images(&sys, &fixtures::parameter_system("d8").unwrap()).unwrap();
    let can = canonical_restrictions(sys.group().unwrap()).unwrap();
    for im in &ring.images {
        let c = can.image(&im.id).unwrap();
        assert_eq!(im.zetas, c.zetas, "{}", im.id);
        assert_eq!(im.kappas, c.kappas, "{}", im.id);
    }
}

#[test]
fn ps4_violation_is_named() {
    let g = GroupTable::dihedral8();
    let mut ps = canonical_restrictions(&g).unwrap();
    let im = ps.images.iter_mut().find(|im| im.rank() == 1).unwrap();
    im.kappas[0] = im.ring().parse("x1^4").unwrap();
    let id = im.id.clone();
    let rep = check_restriction_axioms(Some(&g), &ps, 10).unwrap();
    let depthkit::verdict::Verdict::Fail { witness } = &rep.ps4 else {
        panic!("{rep:?}")
    };
    assert!(witness.contains(&id) && witness.contains("j = 1"), "{witness}");
    assert!(rep.ps1.is_pass() && rep.ps3.is_pass());
}

#[test]
fn missing_subgroups_give_unknown() {
    let g = GroupTable::dihedral8();
    let mut ps = canonical_restrictions(&g).unwrap();
    ps.images.pop();
    let rep = check_restriction_axioms(Some(&g), &ps, 10).unwrap();
    assert!(rep.ps2.is_unknown() && rep.ps3.is_unknown() && rep.ps4.is_unknown());
    let rep = check_restriction_axioms(None, &canonical_restrictions(&g).unwrap(), 10).unwrap();
    assert!(rep.ps2.is_unknown());
}

#[test]
fn theta_matches_canonical_kappa_1() {
    for (name, g) in groups() {
        let ps = canonical_restrictions(&g).unwrap();
        for b in acd_bases(&g).unwrap() {
            let t = theta_restriction(&g, b.subgroup()).unwrap();
            assert!(t.red_alert.is_none(), "{name}: {t:?}");
            assert!(t.gl_invariant && t.dickson_degree && t.choice_independent);
            assert_eq!(t.value, t.expected);
            if let Some(k1) = ps.image(&t.id).unwrap().kappas.first() {
                assert_eq!(&t.value, k1, "{name} {}", t.id);
            }
            if t.s > 0 {
                assert_eq!(t.scalar, Some(1));
            }
        }
    }
}

#[test]
fn theta_on_a_klein_four() {
    let g = GroupTable::dihedral8();
    let v = g.enumerate_acd(2).members[0].clone();
    let t = theta_restriction(&g, &v).unwrap();
    // V is the only U' of rank z + 1, and x1 is the only form on V restricting
    // to x_V, so η̂ = x1^(p-1) = x1 and the value is x1^|G:V|
    assert_eq!(t.eta_hat.to_string(), "x1");
    assert_eq!(t.value.to_string(), "x1^2");
}

#[test]
fn kappa_chain_reproduces_canonical_images() {
    for (name, g) in groups() {
        let ps = canonical_restrictions(&g).unwrap();
        let n = g.n();
        let z = ps.z as u32;
        for b in acd_bases(&g).unwrap() {
            let s = b.rank() - ps.z;
            if s == 0 || s > 3 {
                continue;
            }
            let t = theta_restriction(&g, b.subgroup()).unwrap();
            let im = ps.image(&t.id).unwrap();
            let positions: Vec<usize> = (0..s).collect();
            for j in 1..=s as u32 {
                if j as usize > im.kappas.len() {
                    continue;
                }
                let c = kappa_chain(n, z, j, &t.value, &positions, KappaComposite::DegreeConsistent).unwrap();
                assert!(
                    matches!(c.verdict, ChainVerdict::Match | ChainVerdict::MatchUpToUnit(_)),
                    "{name} {} j={j}: {:?}",
                    t.id,
                    c.verdict
                );
                assert_eq!(c.expected, im.kappas[j as usize - 1]);
            }
        }
    }
}

#[test]
fn chern_induced_3_1_2() {
    let g = extraspecial(3, 1);
    let ch = chern_induced_system(&g).unwrap();
    let rep = check_restriction_axioms(Some(&g), &ch, 10).unwrap();
    assert!(rep.core().is_pass(), "{rep:?}");
    assert!(compatibility_failures(&g, &ch).unwrap().is_empty());
    let can = canonical_restrictions(&g).unwrap();
    let rows = compare_systems(&can, &ch, 2);
    assert_eq!(rows.iter().filter(|r| r.parameter == "kappa_1").count(), 4);
    for r in rows.iter().filter(|r| r.parameter.starts_with("kappa")) {
        assert!(r.unit.is_some(), "{r:?}");
    }
    for im in ch.images.iter().filter(|im| im.rank() == 2) {
        // κ_1 = c_2 has degree 2(9 - 3) / 3 = 4 on U; ζ_1 = c_3 is a product of 3 nonzero forms
        assert_eq!(im.kappas[0].degree().unwrap(), Some(4));
        assert_eq!(im.zetas[0].degree().unwrap(), Some(6));
        assert!(!im.zetas[0].is_zero());
    }
}

#[test]
fn chern_induced_d8_matches_the_fixture_up_to_frobenius() {
    let sys = fixtures::d8();
    let ch = chern_induced_system(sys.group().unwrap()).unwrap();
    let ring = ring_images(&sys, &fixtures::parameter_system("d8").unwrap()).unwrap();
    for r in compare_systems(&ch, &ring, 2) {
        if r.parameter == "kappa_1" {
            assert_eq!(r.unit, Some(1), "{r:?}");
        }
    }
}

#[test]
fn x_choice_for_unit_multiple() {
    let k = depthkit::dickson::DualSpaceAlgebra::new(3, 2).unwrap();
    let a = k.ring().parse("x1^2").unwrap();
    assert_eq!(unit_multiple(&a, &a.pow(3).scale(2)), Some(2));
    assert_eq!(unit_multiple(&a, &k.ring().parse("x2^2").unwrap()), None);
}

fn toy(height: u32) -> (CohomologySystem, ParameterSystem) {
    let ring = Arc::new(
        PresentedAlgebra::from_strings(
            2,
            vec![GeneratorSpec::new("x", 2, 2), GeneratorSpec::new("e", 1, 2)],
            &[&format!("e^{height}")],
        )
        .unwrap(),
    );
    let c = ElemAbCohomology::new(2, 1).unwrap();
    let target = Arc::new(ring.tensor(c.algebra()).unwrap());
    let mu = AlgebraMap::from_strings(Arc::clone(&ring), target, &[("x", "x + e*t1"), ("e", "e")]).unwrap();
    let params = GroupParams { p: 2, n: 3, z: 1, r: 2 };
    let sys = CohomologySystem::new(None, params, ring, vec![], Some(mu)).unwrap();
    let ps = ParameterSystem::ring(
        Provenance::User,
        &sys,
        vec![sys.ring().parse("e").unwrap()],
        vec![sys.ring().parse("x").unwrap()],
    )
    .unwrap();
    (sys, ps)
}

#[test]
fn promotion_exponents() {
    let (sys, ps) = toy(2);
    let (out, pr) = promote_to_special(&sys, &ps, 4).unwrap();
    assert_eq!(pr.exponent, Some(1));
    assert_eq!(out.kappas[0].to_string(), "x^2");
    assert_eq!(pr.degrees, vec![1, 4]);
    let (sys, ps) = toy(4);
    assert_eq!(promote_to_special(&sys, &ps, 4).unwrap().1.exponent, Some(2));
    assert!(promote_to_special(&sys, &ps, 1).unwrap().1.verdict.is_unknown());
    let d8 = fixtures::d8();
    let ps = fixtures::parameter_system("d8").unwrap();
    assert_eq!(promote_to_special(&d8, &ps, 3).unwrap().1.exponent, Some(0));
    let q8 = fixtures::q8();
    let ps = fixtures::parameter_system("q8").unwrap();
    assert!(promote_to_special(&q8, &ps, 3).unwrap().1.verdict.is_unknown());
}

#[test]
fn system_file_round_trip() {
    let g = GroupTable::dihedral8();
    let ps = canonical_restrictions(&g).unwrap();
    let file = ps.to_file();
    let text = serde_json::to_string(&file).unwrap();
    let back = SystemFile::from_json(&text, "inline").unwrap();
    assert_eq!(back, file);
    let sys = fixtures::d8();
    let again = back.to_system(&sys).unwrap();
    assert_eq!(again.images, ps.images);
}
