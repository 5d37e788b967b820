//! Steenrod powers on polynomial algebras with degree-2 generators.
//!
//! The total power acts on a generator by `P(g) = g + g^p` and is
//! multiplicative, so `P^t(g^e) = C(e,t) g^(e + (p-1)t)` and P^i of a
//! monomial is the sum over ways of splitting i among its generators.
//! For p = 2, P^i stands for Sq^(2i).

use std::sync::Arc;

use serde::Serialize;

use crate::dickson::{dickson_set, lucas_support};
use crate::error::{Error, Result};
use crate::graded::{Element, FreeAlgebra, Monomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PowerOp {
    pub index: u64,
}

impl PowerOp {
    pub fn apply(&self, x: &Element) -> Result<Element> {
        apply_power(self.index, x)
    }
}

fn check_ring(ring: &Arc<FreeAlgebra>) -> Result<()> {
    if ring.generators().iter().any(|g| g.degree != 2) {
        return Err(Error::Invalid(
            "power operations act on polynomial algebras with degree-2 generators".into(),
        ));
    }
    Ok(())
}

/// P^i(x) for homogeneous x.
pub fn apply_power(i: u64, x: &Element) -> Result<Element> {
    let ring = x.ring();
    check_ring(ring)?;
    if !x.is_homogeneous() {
        return Err(Error::Inhomogeneous(x.to_string()));
    }
    let f = ring.field();
    let pm1 = (f.p() - 1) as u64;
    let mut out = ring.zero();
    for (m, &c) in x.terms() {
        let total: u64 = m.0.iter().map(|&e| e as u64).sum();
        if i > total {
            continue;
        }
        let supports: Vec<Vec<(u32, u32)>> = m.0.iter().map(|&e| lucas_support(f, e)).collect();
        let mut exps = m.0.clone();
        split(&supports, 0, i, c, &mut exps, &m.0, pm1, f, &mut out);
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn split(
    supports: &[Vec<(u32, u32)>],
    k: usize,
    remaining: u64,
    coef: u32,
    exps: &mut Vec<u32>,
    base: &[u32],
    pm1: u64,
    f: crate::fplinalg::Fp,
    out: &mut Element,
) {
    if k == supports.len() {
        if remaining == 0 {
            out.add_term(Monomial(exps.clone()), coef);
        }
        return;
    }
    let rest_max: u64 = base[k + 1..].iter().map(|&e| e as u64).sum();
    for &(t, b) in &supports[k] {
        let t = t as u64;
        if t > remaining || remaining - t > rest_max {
            continue;
        }
        exps[k] = base[k] + (pm1 * t) as u32;
        split(supports, k + 1, remaining - t, f.mul(coef, b), exps, base, pm1, f, out);
    }
    exps[k] = base[k];
}

/// The total power `sum_i P^i(x)`, for any x.
pub fn total_power(x: &Element) -> Result<Element> {
    check_ring(x.ring())?;
    let mut out = x.ring().zero();
    for (_, part) in x.components() {
        let top = part.degree()?.unwrap_or(0) as u64 / 2;
        for i in 0..=top {
            out = &out + &apply_power(i, &part)?;
        }
    }
    Ok(out)
}

/// Which sequence of powers is composed to pass from eta to kappa_j.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KappaComposite {
    /// `P^{p^(n-z+j-4)} ... P^{p^(n-z-1)} P^{p^(n-z-2)}`: exponents increase.
    Literal,
    /// `P^{p^(n-z-j)} ... P^{p^(n-z-3)} P^{p^(n-z-2)}`: exponents decrease,
    /// which is the order that moves D_k(W) to D_{k+1}(W) at every step.
    DegreeConsistent,
}

impl KappaComposite {
    /// Exponents k of the operations P^{p^k}, in the order they are applied.
    pub fn exponents(&self, n: u32, z: u32, j: u32) -> Vec<i64> {
        let base = n as i64 - z as i64 - 2;
        (0..j.saturating_sub(1) as i64)
            .map(|k| match self {
                KappaComposite::Literal => base + k,
                KappaComposite::DegreeConsistent => base - k,
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainVerdict {
    Match,
    /// Equal after multiplying the computed value by the given unit.
    MatchUpToUnit(u32),
    Mismatch,
    /// A negative exponent was reached while the value was still nonzero.
    Undefined,
}

#[derive(Clone, Debug)]
pub struct KappaChain {
    pub composite: KappaComposite,
    pub exponents: Vec<i64>,
    pub value: Element,
    pub expected: Element,
    pub verdict: ChainVerdict,
}

/// Applies the composite to `eta` (an element of a ring containing k[W] at
/// `w_positions`) and compares with `D_j(W)^{p^(n - z - s)}`, s = rank W.
pub fn kappa_chain(
    n: u32,
    z: u32,
    j: u32,
    eta: &Element,
    w_positions: &[usize],
    composite: KappaComposite,
) -> Result<KappaChain> {
    if j == 0 {
        return Err(Error::Invalid("kappa indices start at 1".into()));
    }
    let ring = eta.ring();
    let p = ring.p();
    let s = w_positions.len() as u32;
    if z + s > n {
        return Err(Error::Invalid(format!("rank z + s = {} exceeds n = {n}", z + s)));
    }
    let index_power = (p as u64).pow(n - z - s);
    let expected = if j <= s {
        dickson_set(p, s as usize)?
            .embed(j as usize, ring, w_positions)
            .pow(index_power)
    } else {
        ring.zero()
    };
    let exponents = composite.exponents(n, z, j);
    let mut value = eta.clone();
    let mut undefined = false;
    for &k in &exponents {
        if value.is_zero() {
            break;
        }
        if k < 0 {
            undefined = true;
            break;
        }
        value = apply_power((p as u64).pow(k as u32), &value)?;
    }
    let verdict = if undefined {
        ChainVerdict::Undefined
    } else if value == expected {
        ChainVerdict::Match
    } else {
        let f = ring.field();
        (2..p)
            .find(|&u| value.scale(u) == expected)
            .filter(|_| !expected.is_zero())
            .map(|u| ChainVerdict::MatchUpToUnit(f.reduce(u as i64)))
            .unwrap_or(ChainVerdict::Mismatch)
    };
    Ok(KappaChain {
        composite,
        exponents,
        value,
        expected,
        verdict,
    })
}
