//! The canonical system at restriction level, the norm product η̂ and the
//! Chern-induced system of an extraspecial group.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use super::{ParameterSystem, Provenance, SubgroupImages};
use crate::dickson::{chern_of_character_sum, dickson_set, substitute_linear, DualSpaceAlgebra, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::fplinalg::FpMatrix;
use crate::graded::{AlgebraMap, Element, FreeAlgebra, PresentedAlgebra};
use crate::pgroup::{ElemAbBasis, GroupTable, Subgroup};

fn as_string<S: Serializer>(e: &Element, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&e.to_string())
}

/// Every V ∈ 𝒜ᶜ(G) with its basis (C last), by increasing rank.
pub fn acd_bases(g: &GroupTable) -> Result<Vec<ElemAbBasis>> {
    let (c, z) = g.center_omega1();
    let mut out = Vec::new();
    for d in z..=g.p_rank() {
        for v in g.enumerate_acd(d).members {
            out.push(g.elem_ab_basis(&v, &c)?);
        }
    }
    Ok(out)
}

fn check_cap(p: u32, m: usize) -> Result<()> {
    match (p as u64).checked_pow(m as u32) {
        Some(size) if size <= DEFAULT_CAP => Ok(()),
        _ => Err(Error::Invalid(format!(
            "|V| = {p}^{m} exceeds the cap of {DEFAULT_CAP} elements"
        ))),
    }
}

/// The pull-back of `e` ∈ k[V*] to k[U*] along U ≤ V, where `rows` comes
/// from [`ElemAbBasis::inclusion_matrix`] (row k: k-th basis vector of U).
pub fn restrict_dual(e: &Element, rows: &[Vec<u32>], target: &Arc<FreeAlgebra>) -> Result<Element> {
    let src = e.ring();
    let images = (0..src.ngens())
        .map(|i| {
            let mut img = target.zero();
            for (k, row) in rows.iter().enumerate() {
                img = &img + &target.generator(k).scale(row[i]);
            }
            img
        })
        .collect();
    let map = AlgebraMap::new(
        Arc::new(PresentedAlgebra::free_algebra(Arc::clone(src))),
        Arc::new(PresentedAlgebra::free_algebra(Arc::clone(target))),
        images,
    )?;
    map.apply_unreduced(e)
}

/// ζ_i ↦ the Chern class of index p^n − p^{n−i} of the regular
/// representation restricted to V, that is of c(ρ_V)^{|G:V|}; κ_j ↦
/// D_j(W)^{|G:V|} for j <= s = rank V − z and 0 otherwise.
pub fn canonical_restrictions(g: &GroupTable) -> Result<ParameterSystem> {
    let p = g.p();
    let n = g.n();
    let (_, z) = g.center_omega1();
    let (z, r) = (z as usize, g.p_rank() as usize);
    let pu = p as u64;
    let mut regular: HashMap<usize, Element> = HashMap::new();
    let mut images = Vec::new();
    for basis in acd_bases(g)? {
        let m = basis.rank();
        check_cap(p, m)?;
        let s = m - z;
        let index = n - m as u32;
        let space = DualSpaceAlgebra::new(p, m)?;
        let total = match regular.get(&m) {
            Some(t) => t.clone(),
            None => {
                let t = chern_of_character_sum(space.ring(), &space.all_vectors())?.total().clone();
                regular.insert(m, t.clone());
                t
            }
        };
        let zetas = (1..=z)
            .map(|i| {
                total
                    .component((2 * (pu.pow(m as u32) - pu.pow((m - i) as u32))) as u32)
                    .frobenius_power(index)
            })
            .collect();
        let kappas = (1..=r - z)
            .map(|j| {
                if j <= s {
                    let positions: Vec<usize> = (0..s).collect();
                    Ok(dickson_set(p, s)?.embed(j, space.ring(), &positions).frobenius_power(index))
                } else {
                    Ok(space.ring().zero())
                }
            })
            .collect::<Result<Vec<_>>>()?;
        images.push(SubgroupImages {
            id: basis.subgroup().id(),
            subgroup: Some(basis.subgroup().clone()),
            space,
            zetas,
            kappas,
        });
    }
    ParameterSystem::restriction_only(Provenance::Canonical, p, z, r, images)
}

/// The restriction-level Chern-induced system of p^{1+2k}_+: ρ is induced
/// from a linear character of a maximal elementary abelian U extending a
/// nontrivial character of C, so ρ|_U is the sum of the p^k extensions.
/// ζ_1 = c_{p^k}(ρ), κ_j = c_{p^k − p^{k−j}}(ρ).
pub fn chern_induced_system(g: &GroupTable) -> Result<ParameterSystem> {
    let p = g.p();
    let n = g.n();
    let (_, z) = g.center_omega1();
    let r = g.p_rank();
    if z != 1 || n % 2 == 0 || r != (n - 1) / 2 + 1 {
        return Err(Error::Invalid(
            "the Chern-induced system needs an extraspecial group of type +".into(),
        ));
    }
    let k = (n - 1) / 2;
    let pu = p as u64;
    let bases = acd_bases(g)?;
    let maximal: Vec<&ElemAbBasis> = bases.iter().filter(|b| b.rank() == r as usize).collect();
    let mut images = Vec::new();
    for basis in &bases {
        check_cap(p, basis.rank())?;
        let u = maximal
            .iter()
            .find(|u| basis.subgroup().is_subgroup_of(u.subgroup()))
            .ok_or_else(|| Error::Invalid(format!("{} lies in no maximal subgroup", basis.subgroup().id())))?;
        let rows = u.inclusion_matrix(basis)?;
        let f = crate::fplinalg::Fp::new(p)?;
        let chars: Vec<Vec<u32>> = u
            .characters_extending(&[1])?
            .iter()
            .map(|phi| {
                rows.iter()
                    .map(|row| row.iter().zip(phi).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
                    .collect()
            })
            .collect();
        let space = DualSpaceAlgebra::new(p, basis.rank())?;
        let chern = chern_of_character_sum(space.ring(), &chars)?;
        let zetas = vec![chern.class(pu.pow(k))];
        let kappas = (1..=k).map(|j| chern.class(pu.pow(k) - pu.pow(k - j))).collect();
        images.push(SubgroupImages {
            id: basis.subgroup().id(),
            subgroup: Some(basis.subgroup().clone()),
            space,
            zetas,
            kappas,
        });
    }
    ParameterSystem::restriction_only(Provenance::ChernInduced, p, 1, r as usize, images)
}

/// `Some(c)` when the Frobenius roots satisfy c·root(a) = root(b).
pub fn unit_multiple(a: &Element, b: &Element) -> Option<u32> {
    let (ra, _) = a.frobenius_reduce();
    let (rb, _) = b.frobenius_reduce();
    if ra.is_zero() && rb.is_zero() {
        return Some(1);
    }
    (1..a.ring().p()).find(|&c| ra.scale(c) == rb)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonRow {
    pub id: String,
    pub rank: usize,
    pub parameter: String,
    /// c with c·(first) = (second) after taking Frobenius roots.
    pub unit: Option<u32>,
}

/// Compares the images of two restriction-only systems on the subgroups of
/// rank `rank` they share.
pub fn compare_systems(a: &ParameterSystem, b: &ParameterSystem, rank: usize) -> Vec<ComparisonRow> {
    let mut rows = Vec::new();
    for ia in a.images.iter().filter(|im| im.rank() == rank) {
        let Some(ib) = b.image(&ia.id) else { continue };
        let pairs = ia
            .zetas
            .iter()
            .zip(&ib.zetas)
            .enumerate()
            .map(|(i, pair)| (format!("zeta_{}", i + 1), pair))
            .chain(
                ia.kappas
                    .iter()
                    .zip(&ib.kappas)
                    .enumerate()
                    .map(|(j, pair)| (format!("kappa_{}", j + 1), pair)),
            );
        for (parameter, (x, y)) in pairs {
            rows.push(ComparisonRow {
                id: ia.id.clone(),
                rank,
                parameter,
                unit: unit_multiple(x, y),
            });
        }
    }
    rows
}

/// For U ≤ V both in the system: the V-image pulled back to U against the
/// U-image. Returns the mismatches as (V, U, parameter).
pub fn compatibility_failures(g: &GroupTable, ps: &ParameterSystem) -> Result<Vec<(String, String, String)>> {
    let bases = acd_bases(g)?;
    let mut out = Vec::new();
    for v in &bases {
        let Some(iv) = ps.image(&v.subgroup().id()) else { continue };
        for u in &bases {
            if u.rank() >= v.rank() || !u.subgroup().is_subgroup_of(v.subgroup()) {
                continue;
            }
            let Some(iu) = ps.image(&u.subgroup().id()) else { continue };
            let rows = v.inclusion_matrix(u)?;
            let named = iv.zetas.iter().zip(&iu.zetas).enumerate().map(|(i, x)| (format!("zeta_{}", i + 1), x));
            let named = named.chain(
                iv.kappas
                    .iter()
                    .zip(&iu.kappas)
                    .enumerate()
                    .map(|(j, x)| (format!("kappa_{}", j + 1), x)),
            );
            for (label, (ev, eu)) in named {
                if restrict_dual(ev, &rows, iu.ring())? != *eu {
                    out.push((iv.id.clone(), iu.id.clone(), label));
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThetaReport {
    pub id: String,
    pub rank: usize,
    pub s: usize,
    /// Σ over U′ ∈ 𝒜ᶜ_{z+1}(V) of N(x_{U′})^{p−1}, N the product of the φ
    /// ∈ V* restricting to x_{U′}.
    #[serde(serialize_with = "as_string")]
    pub eta_hat: Element,
    pub dickson_degree: bool,
    pub gl_invariant: bool,
    /// c with Res_U(η̂) = c·Res_U(D_1(W)) on the first U ≤ V of rank z+1.
    pub scalar: Option<u32>,
    pub matches_dickson: bool,
    /// η̂ computed with x_{U′} replaced by a nonzero multiple is unchanged.
    pub choice_independent: bool,
    /// η̂^{|G:V|}.
    #[serde(serialize_with = "as_string")]
    pub value: Element,
    /// D_1(W)^{|G:V|}, zero when s = 0.
    #[serde(serialize_with = "as_string")]
    pub expected: Element,
    pub red_alert: Option<String>,
}

fn eta_hat(
    v: &ElemAbBasis,
    family: &[ElemAbBasis],
    space: &DualSpaceAlgebra,
    unit: u32,
) -> Result<Element> {
    let p = v.p();
    let f = crate::fplinalg::Fp::new(p)?;
    let mut eta = space.ring().zero();
    for u in family {
        let rows = v.inclusion_matrix(u)?;
        let mut target = vec![0; u.rank()];
        target[0] = unit;
        let mut norm = space.ring().one();
        for phi in space.all_vectors() {
            let restricted: Vec<u32> = rows
                .iter()
                .map(|row| row.iter().zip(&phi).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
                .collect();
            if restricted == target {
                norm = &norm * &space.linear_form(&phi);
            }
        }
        eta = &eta + &norm.pow((p - 1) as u64);
    }
    Ok(eta)
}

/// Generators of GL(W) acting on the first s coordinates of k[V*].
fn gl_generators(p: u32, s: usize, m: usize) -> Result<Vec<FpMatrix>> {
    let f = crate::fplinalg::Fp::new(p)?;
    let mut out = Vec::new();
    let root = (1..p)
        .find(|&a| (1..p - 1).all(|k| f.pow(a, k as u64) != 1))
        .unwrap_or(1);
    let mut scale = FpMatrix::identity(p, m)?;
    scale.set(0, 0, root);
    out.push(scale);
    if s >= 2 {
        let mut add = FpMatrix::identity(p, m)?;
        add.set(0, 1, 1);
        out.push(add);
        for i in 0..s - 1 {
            let mut swap = FpMatrix::identity(p, m)?;
            swap.set(i, i, 0);
            swap.set(i + 1, i + 1, 0);
            swap.set(i, i + 1, 1);
            swap.set(i + 1, i, 1);
            out.push(swap);
        }
    }
    Ok(out)
}

/// The norm product η̂ on V, checked against D_1(W).
pub fn theta_restriction(g: &GroupTable, v: &Subgroup) -> Result<ThetaReport> {
    let p = g.p();
    let (c, z) = g.center_omega1();
    let z = z as usize;
    let vb = g.elem_ab_basis(v, &c)?;
    let m = vb.rank();
    check_cap(p, m)?;
    let s = m - z;
    let index = g.n() - m as u32;
    let space = DualSpaceAlgebra::new(p, m)?;
    let family: Vec<ElemAbBasis> = g
        .enumerate_acd(z as u32 + 1)
        .members
        .iter()
        .filter(|u| u.is_subgroup_of(v))
        .map(|u| g.elem_ab_basis(u, &c))
        .collect::<Result<_>>()?;
    let eta = eta_hat(&vb, &family, &space, 1)?;
    let choice_independent = p == 2 || eta_hat(&vb, &family, &space, p - 1)? == eta;
    let d1 = if s == 0 {
        space.ring().zero()
    } else {
        let positions: Vec<usize> = (0..s).collect();
        dickson_set(p, s)?.embed(1, space.ring(), &positions)
    };
    let dickson_degree = s == 0 || eta.degree().ok().flatten() == d1.degree().ok().flatten();
    let mut gl_invariant = true;
    for gen in gl_generators(p, s, m)? {
        if s > 0 && substitute_linear(&eta, &gen)? != eta {
            gl_invariant = false;
        }
    }
    let scalar = match family.first() {
        None => None,
        Some(u) => {
            let rows = vb.inclusion_matrix(u)?;
            let ur = DualSpaceAlgebra::new(p, u.rank())?;
            let a = restrict_dual(&eta, &rows, ur.ring())?;
            let b = restrict_dual(&d1, &rows, ur.ring())?;
            let f = crate::fplinalg::Fp::new(p)?;
            b.terms().iter().next().map(|(mono, &cb)| f.mul(a.coefficient(mono), f.inv(cb)))
        }
    };
    let matches_dickson = eta == d1;
    let value = eta.frobenius_power(index);
    let expected = d1.frobenius_power(index);
    let red_alert = if !matches_dickson {
        Some(format!("η̂ = {eta} differs from D_1(W) = {d1} on {}", v.id()))
    } else if s > 0 && scalar != Some(1) {
        Some(format!("restriction scalar {scalar:?} is not 1 on {}", v.id()))
    } else {
        None
    };
    Ok(ThetaReport {
        id: v.id(),
        rank: m,
        s,
        eta_hat: eta,
        dickson_degree,
        gl_invariant,
        scalar,
        matches_dickson,
        choice_independent,
        value,
        expected,
        red_alert,
    })
}

/// The images of a ring-mode system in k[V*] for each supplied restriction.
/// Fails when an image leaves the polynomial part of H*(V).
pub fn ring_images(sys: &crate::cohmodel::CohomologySystem, ps: &ParameterSystem) -> Result<ParameterSystem> {
    let mut images = Vec::new();
    for r in sys.restrictions() {
        let space = r.target.dual_space()?;
        let convert = |v: &[Element]| {
            v.iter()
                .map(|e| {
                    let img = r.map.apply(e)?;
                    r.target
                        .to_dual(&img, space.ring())
                        .ok_or_else(|| Error::Invalid(format!("Res to {} of {e} is not in k[V*]", r.id)))
                })
                .collect::<Result<Vec<_>>>()
        };
        images.push(SubgroupImages {
            id: r.id.clone(),
            subgroup: r.subgroup.clone(),
            zetas: convert(&ps.zetas)?,
            kappas: convert(&ps.kappas)?,
            space,
        });
    }
    ParameterSystem::restriction_only(ps.provenance, ps.p, ps.z, ps.r, images)
}
