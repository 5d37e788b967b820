//! Graded-commutative algebras over F_p.
//!
//! A [`FreeAlgebra`] is the free graded-commutative algebra on homogeneous
//! generators: polynomial on the even ones, exterior on the odd ones. Its
//! [`Element`]s are finite sums of signed monomials. Presented quotients by
//! homogeneous ideals live in [`presented`]; homomorphisms in [`map`].
//!
//! Monomials are written with generators in declaration order, so the sign
//! of a product only depends on how many odd generators have to move past
//! each other.

pub mod io;
pub mod map;
mod parse;
pub mod presented;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fplinalg::Fp;

pub use map::AlgebraMap;
pub use presented::{DegreePiece, PresentedAlgebra};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: u32,
    pub parity: Parity,
}

impl GeneratorSpec {
    /// Generator whose parity follows its degree.
    pub fn new(name: impl Into<String>, degree: u32, p: u32) -> Self {
        let parity = if p != 2 && degree % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        };
        GeneratorSpec {
            name: name.into(),
            degree,
            parity,
        }
    }
}

/// Exponent vector, one entry per generator; odd generators carry 0 or 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

/// Free graded-commutative algebra on a list of generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeAlgebra {
    field: Fp,
    generators: Vec<GeneratorSpec>,
}

fn valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'' || c == '.')
}

impl FreeAlgebra {
    pub fn new(p: u32, generators: Vec<GeneratorSpec>) -> Result<Arc<Self>> {
        let field = Fp::new(p)?;
        for (i, g) in generators.iter().enumerate() {
            if g.degree == 0 {
                return Err(Error::Invalid(format!(
                    "generator {} has degree 0; algebras must be connected",
                    g.name
                )));
            }
            if !valid_identifier(&g.name) {
                return Err(Error::Invalid(format!(
                    "generator name {:?} is not an identifier",
                    g.name
                )));
            }
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::Invalid(format!("duplicate generator {}", g.name)));
            }
            let expected = if p != 2 && g.degree % 2 == 1 {
                Parity::Odd
            } else {
                Parity::Even
            };
            if g.parity != expected {
                return Err(Error::Invalid(format!(
                    "generator {} of degree {} must be {:?} for p = {p}",
                    g.name, g.degree, expected
                )));
            }
        }
        Ok(Arc::new(FreeAlgebra { field, generators }))
    }

    /// Polynomial algebra on `names`, all of the same degree.
    pub fn polynomial(p: u32, names: &[&str], degree: u32) -> Result<Arc<Self>> {
        Self::new(
            p,
            names
                .iter()
                .map(|n| GeneratorSpec::new(*n, degree, p))
                .collect(),
        )
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn generators(&self) -> &[GeneratorSpec] {
        &self.generators
    }

    pub fn ngens(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.generators[i].parity == Parity::Odd
    }

    pub fn has_odd_generators(&self) -> bool {
        self.generators.iter().any(|g| g.parity == Parity::Odd)
    }

    pub fn max_generator_degree(&self) -> u32 {
        self.generators.iter().map(|g| g.degree).max().unwrap_or(0)
    }

    pub fn monomial_degree(&self, m: &Monomial) -> u32 {
        m.0.iter()
            .zip(&self.generators)
            .map(|(&e, g)| e * g.degree)
            .sum()
    }

    pub fn zero(self: &Arc<Self>) -> Element {
        Element {
            ring: Arc::clone(self),
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(self: &Arc<Self>, c: i64) -> Element {
        let c = self.field.reduce(c);
        let mut e = self.zero();
        if c != 0 {
            e.terms.insert(Monomial::one(self.ngens()), c);
        }
        e
    }

    pub fn one(self: &Arc<Self>) -> Element {
        self.scalar(1)
    }

    pub fn generator(self: &Arc<Self>, i: usize) -> Element {
        let mut m = Monomial::one(self.ngens());
        m.0[i] = 1;
        self.monomial(m, 1)
    }

    pub fn gen(self: &Arc<Self>, name: &str) -> Result<Element> {
        let i = self
            .generator_index(name)
            .ok_or_else(|| Error::Invalid(format!("unknown generator {name}")))?;
        Ok(self.generator(i))
    }

    pub fn monomial(self: &Arc<Self>, m: Monomial, c: u32) -> Element {
        let mut e = self.zero();
        let c = c % self.p();
        if c != 0 {
            assert_eq!(m.0.len(), self.ngens());
            e.terms.insert(m, c);
        }
        e
    }

    pub fn parse(self: &Arc<Self>, s: &str) -> Result<Element> {
        parse::parse_element(self, s)
    }

    /// Product of two monomials with its sign, or `None` when an odd
    /// generator would appear twice.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(Monomial, bool)> {
        let mut out = Vec::with_capacity(a.0.len());
        let mut negative = false;
        // Number of odd generators in `a` with index greater than the current one.
        let mut odd_in_a_after = 0u32;
        if self.has_odd_generators() {
            odd_in_a_after = a
                .0
                .iter()
                .enumerate()
                .filter(|&(i, &e)| e > 0 && self.is_odd(i))
                .count() as u32;
        }
        for (i, (&ea, &eb)) in a.0.iter().zip(&b.0).enumerate() {
            if self.generators[i].parity == Parity::Odd {
                if ea > 0 {
                    odd_in_a_after -= 1;
                }
                if ea > 0 && eb > 0 {
                    return None;
                }
                if eb > 0 && odd_in_a_after % 2 == 1 {
                    negative = !negative;
                }
            }
            out.push(ea + eb);
        }
        Some((Monomial(out), negative))
    }

    /// All monomials of degree `d`, in descending lexicographic order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let n = self.ngens();
        let mut out = Vec::new();
        let mut current = vec![0u32; n];
        self.enumerate_monomials(0, d, &mut current, &mut out);
        out
    }

    fn enumerate_monomials(&self, i: usize, remaining: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == cur.len() {
            if remaining == 0 {
                out.push(Monomial(cur.clone()));
            }
            return;
        }
        let g = &self.generators[i];
        let max = if g.parity == Parity::Odd {
            1.min(remaining / g.degree)
        } else {
            remaining / g.degree
        };
        for e in (0..=max).rev() {
            cur[i] = e;
            self.enumerate_monomials(i + 1, remaining - e * g.degree, cur, out);
        }
        cur[i] = 0;
    }
}

/// A finite F_p-linear combination of monomials of a free algebra.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    ring: Arc<FreeAlgebra>,
    terms: BTreeMap<Monomial, u32>,
}

impl Element {
    pub fn ring(&self) -> &Arc<FreeAlgebra> {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, u32> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn same_ring(&self, other: &Element) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    /// `Ok(None)` for zero, `Ok(Some(d))` when every term has degree `d`.
    pub fn degree(&self) -> Result<Option<u32>> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d = self.ring.monomial_degree(m);
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return Err(Error::Inhomogeneous(self.to_string())),
                _ => {}
            }
        }
        Ok(deg)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree().is_ok()
    }

    /// Homogeneous components keyed by degree.
    pub fn components(&self) -> BTreeMap<u32, Element> {
        let mut out: BTreeMap<u32, Element> = BTreeMap::new();
        for (m, &c) in &self.terms {
            let d = self.ring.monomial_degree(m);
            out.entry(d)
                .or_insert_with(|| self.ring.zero())
                .terms
                .insert(m.clone(), c);
        }
        out
    }

    pub fn component(&self, d: u32) -> Element {
        let mut e = self.ring.zero();
        for (m, &c) in &self.terms {
            if self.ring.monomial_degree(m) == d {
                e.terms.insert(m.clone(), c);
            }
        }
        e
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: u32) {
        let f = self.ring.field();
        let c = c % f.p();
        if c == 0 {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = f.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Element) -> Result<Element> {
        if !self.same_ring(other) {
            return Err(Error::HostMismatch);
        }
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Element) -> Result<Element> {
        if !self.same_ring(other) {
            return Err(Error::HostMismatch);
        }
        let f = self.ring.field();
        let mut out = self.ring.zero();
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &other.terms {
                if let Some((m, negative)) = self.ring.mul_monomials(ma, mb) {
                    let c = f.mul(ca, cb);
                    out.add_term(m, if negative { f.neg(c) } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: u32) -> Element {
        let f = self.ring.field();
        let c = c % f.p();
        let mut out = self.ring.zero();
        if c != 0 {
            for (m, &a) in &self.terms {
                out.terms.insert(m.clone(), f.mul(a, c));
            }
        }
        out
    }

    pub fn pow(&self, mut exp: u64) -> Element {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `y` with `y^p = self`, when `self` is a p-th power in the free algebra.
    ///
    /// In characteristic p, `(sum c m)^p = sum c m^p` on the even part, so this
    /// is exactly the case where every exponent is divisible by p.
    pub fn frobenius_root(&self) -> Option<Element> {
        let p = self.ring.p();
        let mut out = self.ring.zero();
        for (m, &c) in &self.terms {
            if m.0.iter().any(|&e| e % p != 0) {
                return None;
            }
            out.terms.insert(Monomial(m.0.iter().map(|&e| e / p).collect()), c);
        }
        Some(out)
    }

    /// Strips as many p-th powers as possible; returns the root and the count.
    pub fn frobenius_reduce(&self) -> (Element, u32) {
        let mut cur = self.clone();
        let mut k = 0;
        if cur.is_zero() || cur.terms.keys().all(|m| m.is_one()) {
            return (cur, 0);
        }
        while let Some(r) = cur.frobenius_root() {
            cur = r;
            k += 1;
        }
        (cur, k)
    }

    /// `self^(p^k)`, computed termwise. Mixed terms vanish in characteristic p
    /// and odd generators square to zero, so this agrees with [`Element::pow`].
    pub fn frobenius_power(&self, k: u32) -> Element {
        let p = self.ring.p();
        let q = p.pow(k);
        let mut out = self.ring.zero();
        for (m, &c) in &self.terms {
            if k > 0 && m.0.iter().enumerate().any(|(i, &e)| e > 0 && self.ring.is_odd(i)) {
                continue;
            }
            out.add_term(Monomial(m.0.iter().map(|&e| e * q).collect()), c);
        }
        out
    }

    /// Copies this element into `target`, sending generator `i` to
    /// generator `positions[i]`. Positions must be increasing and keep parity.
    pub fn embed(&self, target: &Arc<FreeAlgebra>, positions: &[usize]) -> Element {
        assert_eq!(positions.len(), self.ring.ngens());
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
        let n = target.ngens();
        let mut out = target.zero();
        for (m, &c) in &self.terms {
            let mut exps = vec![0u32; n];
            for (i, &e) in m.0.iter().enumerate() {
                exps[positions[i]] = e;
            }
            out.add_term(Monomial(exps), c);
        }
        out
    }

    /// Same terms, viewed in another free algebra with identical generators.
    pub fn rehost(&self, ring: &Arc<FreeAlgebra>) -> Result<Element> {
        if **ring != *self.ring {
            return Err(Error::HostMismatch);
        }
        Ok(Element {
            ring: Arc::clone(ring),
            terms: self.terms.clone(),
        })
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, &c) in self.terms.iter().rev() {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let factors: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|&(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let name = &self.ring.generators[i].name;
                    if e == 1 {
                        name.clone()
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            match (factors.is_empty(), c) {
                (true, c) => write!(f, "{c}")?,
                (false, 1) => write!(f, "{}", factors.join("*"))?,
                (false, c) => write!(f, "{c}*{}", factors.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.checked_add(rhs).expect("addition of elements from different algebras")
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(self.ring.p() - 1)
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self + &(-rhs)
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.checked_mul(rhs).expect("product of elements from different algebras")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn odd_pair(p: u32) -> Arc<FreeAlgebra> {
        FreeAlgebra::new(
            p,
            vec![
                GeneratorSpec::new("a", 1, p),
                GeneratorSpec::new("b", 1, p),
                GeneratorSpec::new("x", 2, p),
            ],
        )
        .unwrap()
    }

    #[test]
    fn unit_is_identity() {
        let r = odd_pair(3);
        let x = r.parse("a*x+2*b").unwrap();
        assert_eq!(&r.one() * &x, x);
        assert_eq!(&x * &r.one(), x);
    }

    #[test]
    fn exterior_square_vanishes() {
        let r = odd_pair(3);
        let a = r.gen("a").unwrap();
        assert!((&a * &a).is_zero());
    }

    #[test]
    fn odd_generators_anticommute() {
        let r = odd_pair(3);
        let a = r.gen("a").unwrap();
        let b = r.gen("b").unwrap();
        let ab = &a * &b;
        let ba = &b * &a;
        assert!((&ab + &ba).is_zero());
        assert_eq!(ba.to_string(), "2*a*b");
    }

    #[test]
    fn parity_rules_enforced() {
        assert!(FreeAlgebra::new(
            2,
            vec![GeneratorSpec {
                name: "t".into(),
                degree: 1,
                parity: Parity::Odd
            }]
        )
        .is_err());
        assert!(FreeAlgebra::new(
            3,
            vec![GeneratorSpec {
                name: "t".into(),
                degree: 1,
                parity: Parity::Even
            }]
        )
        .is_err());
        assert!(FreeAlgebra::polynomial(2, &["x", "x"], 1).is_err());
    }

    #[test]
    fn host_mismatch_is_an_error() {
        let r = FreeAlgebra::polynomial(2, &["x"], 1).unwrap();
        let s = FreeAlgebra::polynomial(2, &["y"], 1).unwrap();
        assert!(matches!(
            r.gen("x").unwrap().checked_mul(&s.gen("y").unwrap()),
            Err(Error::HostMismatch)
        ));
    }

    #[test]
    fn monomial_enumeration_counts() {
        let r = FreeAlgebra::polynomial(2, &["x", "y"], 1).unwrap();
        let ms = r.monomials_of_degree(2);
        let shown: Vec<String> = ms.iter().map(|m| r.monomial(m.clone(), 1).to_string()).collect();
        assert_eq!(shown, vec!["x^2", "x*y", "y^2"]);
        assert_eq!(r.monomials_of_degree(0), vec![Monomial(vec![0, 0])]);
    }

    #[test]
    fn frobenius_root_of_power() {
        let r = FreeAlgebra::polynomial(3, &["x", "y"], 2).unwrap();
        let a = r.parse("x^2+2*x*y").unwrap();
        let (root, k) = a.pow(9).frobenius_reduce();
        assert_eq!((root, k), (a.clone(), 2));
        assert!(a.frobenius_root().is_none());
    }

    fn arb_element(r: Arc<FreeAlgebra>) -> impl Strategy<Value = Element> {
        let n = r.ngens();
        let p = r.p();
        prop::collection::vec((prop::collection::vec(0u32..3, n), 1..p), 0..5).prop_map(move |terms| {
            let mut e = r.zero();
            for (mut exps, c) in terms {
                for (i, x) in exps.iter_mut().enumerate() {
                    if r.is_odd(i) {
                        *x = (*x).min(1);
                    }
                }
                e.add_term(Monomial(exps), c);
            }
            e
        })
    }

    fn sign_of(e: &Element) -> Option<(u32, bool)> {
        // Homogeneous parity of an element, when it has one.
        let ring = e.ring();
        let mut parity = None;
        for m in e.terms().keys() {
            let odd = m.0.iter().enumerate().filter(|&(i, &x)| x > 0 && ring.is_odd(i)).count() % 2 == 1;
            match parity {
                None => parity = Some(odd),
                Some(q) if q != odd => return None,
                _ => {}
            }
        }
        Some((0, parity.unwrap_or(false)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn associative(a in arb_element(odd_pair(3)), b in arb_element(odd_pair(3)), c in arb_element(odd_pair(3))) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn graded_commutative(a in arb_element(odd_pair(5)), b in arb_element(odd_pair(5))) {
            if let (Some((_, pa)), Some((_, pb))) = (sign_of(&a), sign_of(&b)) {
                let ab = &a * &b;
                let ba = &b * &a;
                if pa && pb {
                    prop_assert_eq!(ab, -&ba);
                } else {
                    prop_assert_eq!(ab, ba);
                }
            }
        }

        #[test]
        fn distributive(a in arb_element(odd_pair(3)), b in arb_element(odd_pair(3)), c in arb_element(odd_pair(3))) {
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn frobenius_power_is_pow(a in arb_element(odd_pair(3))) {
            prop_assert_eq!(a.frobenius_power(1), a.pow(3));
        }

        #[test]
        fn display_parse_roundtrip(a in arb_element(odd_pair(3))) {
            let r = a.ring().clone();
            prop_assert_eq!(r.parse(&a.to_string()).unwrap(), a);
        }
    }
}
