//! Hash-map polynomials over F_p with exponents packed 16 bits per variable.
//! Used for the large Dickson expansions and linear substitutions, where the
//! generic element type spends most of its time allocating monomials.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fplinalg::Fp;
use crate::graded::{Element, FreeAlgebra, Monomial};

pub(crate) const MAX_VARS: usize = 8;
const BITS: u32 = 16;
const MASK: u128 = 0xffff;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct PackedPoly {
    field: Fp,
    nvars: usize,
    terms: HashMap<u128, u32>,
}

fn exp_of(key: u128, i: usize) -> u32 {
    ((key >> (BITS * i as u32)) & MASK) as u32
}

fn with_exp(key: u128, i: usize, e: u32) -> u128 {
    let shift = BITS * i as u32;
    (key & !(MASK << shift)) | ((e as u128) << shift)
}

/// Pairs `(k, C(e,k) mod p)` with the binomial nonzero, found digit by digit.
pub(crate) fn lucas_support(field: Fp, e: u32) -> Vec<(u32, u32)> {
    let p = field.p();
    let mut out = vec![(0u32, 1u32)];
    let mut place = 1u32;
    let mut rest = e;
    while rest > 0 {
        let digit = rest % p;
        let mut next = Vec::with_capacity(out.len() * (digit as usize + 1));
        for &(k, c) in &out {
            for d in 0..=digit {
                next.push((k + d * place, field.mul(c, field.binomial(digit as u64, d as u64))));
            }
        }
        out = next;
        rest /= p;
        place = place.saturating_mul(p);
    }
    out
}

impl PackedPoly {
    pub fn zero(field: Fp, nvars: usize) -> Result<Self> {
        if nvars > MAX_VARS {
            return Err(Error::CapExceeded {
                what: "variables in packed polynomial".into(),
                value: nvars as u64,
                cap: MAX_VARS as u64,
            });
        }
        Ok(PackedPoly {
            field,
            nvars,
            terms: HashMap::new(),
        })
    }

    pub fn one(field: Fp, nvars: usize) -> Result<Self> {
        let mut out = Self::zero(field, nvars)?;
        out.terms.insert(0, 1);
        Ok(out)
    }

    /// `sum_i coeffs[i] * var_i`.
    pub fn linear(field: Fp, coeffs: &[u32]) -> Result<Self> {
        let mut out = Self::zero(field, coeffs.len())?;
        for (i, &c) in coeffs.iter().enumerate() {
            out.add_term(with_exp(0, i, 1), c);
        }
        Ok(out)
    }

    pub fn from_element(e: &Element) -> Result<Self> {
        let mut out = Self::zero(e.ring().field(), e.ring().ngens())?;
        for (m, &c) in e.terms() {
            let mut key = 0u128;
            for (i, &x) in m.0.iter().enumerate() {
                if x as u128 > MASK {
                    return Err(Error::CapExceeded {
                        what: "exponent in packed polynomial".into(),
                        value: x as u64,
                        cap: MASK as u64,
                    });
                }
                key = with_exp(key, i, x);
            }
            out.terms.insert(key, c);
        }
        Ok(out)
    }

    pub fn to_element(&self, ring: &Arc<FreeAlgebra>) -> Element {
        let mut out = ring.zero();
        for (&key, &c) in &self.terms {
            let exps = (0..self.nvars).map(|i| exp_of(key, i)).collect();
            out.add_term(Monomial(exps), c);
        }
        out
    }

    /// Drops trailing variables, which must not occur.
    pub fn with_nvars(mut self, n: usize) -> Self {
        debug_assert!(self.terms.keys().all(|&k| (n..self.nvars).all(|i| exp_of(k, i) == 0)));
        self.nvars = n;
        self
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, key: u128, c: u32) {
        if c == 0 {
            return;
        }
        let f = self.field;
        let entry = self.terms.entry(key).or_insert(0);
        *entry = f.add(*entry, c);
        if *entry == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &PackedPoly) -> PackedPoly {
        let mut out = self.clone();
        for (&k, &c) in &other.terms {
            out.add_term(k, c);
        }
        out
    }

    pub fn mul(&self, other: &PackedPoly) -> Result<PackedPoly> {
        let (a_max, b_max) = (self.max_exponent(), other.max_exponent());
        if (a_max + b_max) as u128 > MASK {
            return Err(Error::CapExceeded {
                what: "exponent in packed polynomial".into(),
                value: (a_max + b_max) as u64,
                cap: MASK as u64,
            });
        }
        let f = self.field;
        let mut acc: HashMap<u128, u32> = HashMap::with_capacity(self.len().max(other.len()) * 2);
        for (&ka, &ca) in &self.terms {
            for (&kb, &cb) in &other.terms {
                let e = acc.entry(ka + kb).or_insert(0);
                *e = f.add(*e, f.mul(ca, cb));
            }
        }
        acc.retain(|_, c| *c != 0);
        Ok(PackedPoly {
            field: f,
            nvars: self.nvars,
            terms: acc,
        })
    }

    fn max_exponent(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|&k| (0..self.nvars).map(move |i| exp_of(k, i)))
            .max()
            .unwrap_or(0)
    }

    /// Substitutes `var_i -> var_i + c * var_j` (i != j).
    pub fn transvect(&self, i: usize, j: usize, c: u32) -> PackedPoly {
        let f = self.field;
        let mut out = PackedPoly {
            field: f,
            nvars: self.nvars,
            terms: HashMap::with_capacity(self.terms.len() * 2),
        };
        let mut cache: HashMap<u32, Vec<(u32, u32)>> = HashMap::new();
        for (&key, &coef) in &self.terms {
            let ei = exp_of(key, i);
            if ei == 0 || c == 0 {
                out.add_term(key, coef);
                continue;
            }
            let ej = exp_of(key, j);
            let support = cache.entry(ei).or_insert_with(|| lucas_support(f, ei));
            for &(k, b) in support.iter() {
                let nk = with_exp(with_exp(key, i, ei - k), j, ej + k);
                out.add_term(nk, f.mul(coef, f.mul(b, f.pow(c, k as u64))));
            }
        }
        out
    }

    /// Substitutes `var_i -> a * var_i`.
    pub fn scale_var(&self, i: usize, a: u32) -> PackedPoly {
        let f = self.field;
        let mut out = PackedPoly {
            field: f,
            nvars: self.nvars,
            terms: HashMap::with_capacity(self.terms.len()),
        };
        for (&key, &coef) in &self.terms {
            out.add_term(key, f.mul(coef, f.pow(a, exp_of(key, i) as u64)));
        }
        out
    }

    pub fn swap_vars(&self, i: usize, j: usize) -> PackedPoly {
        let mut out = PackedPoly {
            field: self.field,
            nvars: self.nvars,
            terms: HashMap::with_capacity(self.terms.len()),
        };
        for (&key, &coef) in &self.terms {
            let (ei, ej) = (exp_of(key, i), exp_of(key, j));
            out.terms.insert(with_exp(with_exp(key, i, ej), j, ei), coef);
        }
        out
    }

    /// Splits by the exponent of variable `v`: returns `exponent -> coefficient`
    /// with `v` removed from the coefficient.
    pub fn collect_by(&self, v: usize) -> Vec<(u32, PackedPoly)> {
        let mut groups: HashMap<u32, PackedPoly> = HashMap::new();
        for (&key, &coef) in &self.terms {
            let e = exp_of(key, v);
            groups
                .entry(e)
                .or_insert_with(|| PackedPoly {
                    field: self.field,
                    nvars: self.nvars,
                    terms: HashMap::new(),
                })
                .terms
                .insert(with_exp(key, v, 0), coef);
        }
        let mut out: Vec<_> = groups.into_iter().collect();
        out.sort_by_key(|(e, _)| *e);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lucas_support_matches_binomials() {
        for p in [2u32, 3, 5] {
            let f = Fp::new(p).unwrap();
            for e in 0..60u32 {
                let got = lucas_support(f, e);
                let want: Vec<(u32, u32)> = (0..=e)
                    .filter_map(|k| {
                        let b = f.binomial(e as u64, k as u64);
                        (b != 0).then_some((k, b))
                    })
                    .collect();
                let mut got_sorted = got.clone();
                got_sorted.sort();
                assert_eq!(got_sorted, want, "p={p} e={e}");
            }
        }
    }

    #[test]
    fn transvection_matches_generic_substitution() {
        let r = FreeAlgebra::polynomial(3, &["x", "y"], 2).unwrap();
        let e = r.parse("x^4*y + 2*x^3 + y^5").unwrap();
        let got = PackedPoly::from_element(&e).unwrap().transvect(0, 1, 2).to_element(&r);
        let x_plus = r.parse("x + 2*y").unwrap();
        let y = r.parse("y").unwrap();
        let want = &(&x_plus.pow(4) * &y) + &(&x_plus.pow(3).scale(2) + &y.pow(5));
        assert_eq!(got, want);
    }

    #[test]
    fn roundtrip_and_product() {
        let r = FreeAlgebra::polynomial(2, &["a", "b", "c"], 2).unwrap();
        let x = r.parse("a*b + c^3 + 1").unwrap();
        let y = r.parse("a + b*c").unwrap();
        let px = PackedPoly::from_element(&x).unwrap();
        let py = PackedPoly::from_element(&y).unwrap();
        assert_eq!(px.to_element(&r), x);
        assert_eq!(px.mul(&py).unwrap().to_element(&r), &x * &y);
        assert_eq!(px.swap_vars(0, 2).swap_vars(0, 2), px);
    }
}
