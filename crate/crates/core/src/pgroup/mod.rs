//! Finite p-groups as full multiplication tables.
//!
//! Elements are indices `0..order`. Subgroups are sorted index sets. The
//! families of elementary abelian subgroups containing the greatest central
//! elementary abelian subgroup C are found by growing C one commuting
//! element of order p at a time.

mod basis;
pub mod io;
mod pc;

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::fplinalg::is_prime;

pub use basis::ElemAbBasis;
pub use pc::PcPresentation;

pub const DEFAULT_GROUP_CAP: usize = 1024;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    p: u32,
    order: usize,
    table: Vec<u32>,
    identity: usize,
    inverses: Vec<usize>,
}

/// A subgroup, as the sorted list of its element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn from_elements(mut elements: Vec<usize>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        Subgroup { elements }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&g| other.contains(g))
    }

    /// `S-` followed by the first 16 hex digits of the SHA-256 of the
    /// comma-separated sorted element list.
    pub fn id(&self) -> String {
        let text = self
            .elements
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
            .join(",");
        let digest = Sha256::digest(text.as_bytes());
        let hex: String = digest.iter().take(8).map(|b| format!("{b:02x}")).collect();
        format!("S-{hex}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FamilyKind {
    /// Elementary abelian subgroups of rank d containing C.
    ElementaryAbelian,
    /// Centralizers of those.
    Centralizers,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupFamily {
    pub kind: FamilyKind,
    pub d: u32,
    pub members: Vec<Subgroup>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub representative: Subgroup,
    pub size: usize,
    pub normalizer_order: usize,
}

fn log_p(n: usize, p: u32) -> Option<u32> {
    let mut k = 0;
    let mut m = n;
    while m > 1 {
        if m % p as usize != 0 {
            return None;
        }
        m /= p as usize;
        k += 1;
    }
    Some(k)
}

impl GroupTable {
    /// Validates a Cayley table: a Latin square with an identity, of p-power
    /// order at most `cap`, associative on a deterministic sample of triples.
    pub fn from_table(p: u32, table: Vec<Vec<usize>>, cap: usize) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        let order = table.len();
        if order == 0 {
            return Err(Error::Invalid("empty multiplication table".into()));
        }
        if order > cap {
            return Err(Error::CapExceeded {
                what: "group order".into(),
                value: order as u64,
                cap: cap as u64,
            });
        }
        if log_p(order, p).is_none() {
            return Err(Error::Invalid(format!("order {order} is not a power of {p}")));
        }
        let mut flat = Vec::with_capacity(order * order);
        for (i, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(Error::Invalid(format!(
                    "table row {i} has {} entries, expected {order}",
                    row.len()
                )));
            }
            for (j, &x) in row.iter().enumerate() {
                if x >= order {
                    return Err(Error::Invalid(format!("table[{i}][{j}] = {x} is out of range")));
                }
                flat.push(x as u32);
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|g| flat[e * order + g] as usize == g && flat[g * order + e] as usize == g))
            .ok_or_else(|| Error::Invalid("table has no identity element".into()))?;
        for i in 0..order {
            let mut row_seen = vec![false; order];
            let mut col_seen = vec![false; order];
            for j in 0..order {
                row_seen[flat[i * order + j] as usize] = true;
                col_seen[flat[j * order + i] as usize] = true;
            }
            if row_seen.iter().any(|s| !s) || col_seen.iter().any(|s| !s) {
                return Err(Error::Invalid(format!("row or column {i} is not a permutation")));
            }
        }
        let inverses = (0..order)
            .map(|g| {
                (0..order)
                    .find(|&h| flat[g * order + h] as usize == identity)
                    .expect("latin square has inverses")
            })
            .collect();
        let g = GroupTable {
            p,
            order,
            table: flat,
            identity,
            inverses,
        };
        if let Some((a, b, c)) = g.associativity_sample(2000) {
            return Err(Error::Invalid(format!("table is not associative at ({a}, {b}, {c})")));
        }
        Ok(g)
    }

    fn associativity_sample(&self, samples: usize) -> Option<(usize, usize, usize)> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let n = self.order;
        if n * n * n <= samples {
            return self.check_associative_full();
        }
        (0..samples).find_map(|_| {
            let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            (self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))).then_some((a, b, c))
        })
    }

    /// Every triple; returns the first failure.
    pub fn check_associative_full(&self) -> Option<(usize, usize, usize)> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// n with |G| = p^n.
    pub fn n(&self) -> u32 {
        log_p(self.order, self.p).expect("validated at construction")
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let mut acc = self.identity;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// `g^-1 a g`.
    pub fn conj(&self, a: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), a), g)
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order).map(|g| self.element_order(g)).max().unwrap_or(1)
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_elements((0..self.order).collect())
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup::from_elements(vec![self.identity])
    }

    /// Closure of `gens` under multiplication.
    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut elems = vec![self.identity];
        let mut i = 0;
        while i < elems.len() {
            let x = elems[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    elems.push(y);
                }
            }
            i += 1;
        }
        Subgroup::from_elements(elems)
    }

    pub fn is_subgroup(&self, s: &Subgroup) -> bool {
        s.contains(self.identity)
            && s.elements
                .iter()
                .all(|&a| s.elements.iter().all(|&b| s.contains(self.mul(a, b))))
    }

    pub fn is_elementary_abelian(&self, s: &Subgroup) -> bool {
        s.elements.iter().all(|&a| {
            self.pow(a, self.p as u64) == self.identity
                && s.elements.iter().all(|&b| self.commute(a, b))
        })
    }

    /// log_p |s|.
    pub fn rank_of(&self, s: &Subgroup) -> u32 {
        log_p(s.order(), self.p).unwrap_or(0)
    }

    pub fn center(&self) -> Subgroup {
        Subgroup::from_elements(
            (0..self.order)
                .filter(|&a| (0..self.order).all(|b| self.commute(a, b)))
                .collect(),
        )
    }

    /// C: the central elements with g^p = 1, and its rank z.
    pub fn center_omega1(&self) -> (Subgroup, u32) {
        let c = Subgroup::from_elements(
            self.center()
                .elements
                .into_iter()
                .filter(|&a| self.pow(a, self.p as u64) == self.identity)
                .collect(),
        );
        let z = self.rank_of(&c);
        (c, z)
    }

    pub fn centralizer(&self, s: &Subgroup) -> Subgroup {
        Subgroup::from_elements(
            (0..self.order)
                .filter(|&g| s.elements.iter().all(|&v| self.commute(g, v)))
                .collect(),
        )
    }

    /// `g^-1 s g`.
    pub fn conjugate(&self, s: &Subgroup, g: usize) -> Subgroup {
        Subgroup::from_elements(s.elements.iter().map(|&a| self.conj(a, g)).collect())
    }

    pub fn normalizer(&self, s: &Subgroup) -> Subgroup {
        Subgroup::from_elements(
            (0..self.order)
                .filter(|&g| s.elements.iter().all(|&a| s.contains(self.conj(a, g))))
                .collect(),
        )
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let comms: BTreeSet<usize> = (0..self.order)
            .flat_map(|a| {
                (0..self.order).map(move |b| self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b)))
            })
            .collect();
        self.generate(&comms.into_iter().collect::<Vec<_>>())
    }

    /// G' G^p, which is the Frattini subgroup of a p-group.
    pub fn frattini_subgroup(&self) -> Subgroup {
        let mut gens: Vec<usize> = self.derived_subgroup().elements;
        gens.extend((0..self.order).map(|a| self.pow(a, self.p as u64)));
        gens.sort_unstable();
        gens.dedup();
        self.generate(&gens)
    }

    /// Every elementary abelian subgroup containing C, grouped by rank.
    pub fn elementary_abelian_over_c(&self) -> BTreeMap<u32, Vec<Subgroup>> {
        let (c, z) = self.center_omega1();
        let order_p: Vec<usize> = (0..self.order)
            .filter(|&g| g != self.identity && self.pow(g, self.p as u64) == self.identity)
            .collect();
        let mut out = BTreeMap::new();
        let mut level = vec![c];
        let mut d = z;
        while !level.is_empty() {
            let mut next: BTreeSet<Subgroup> = BTreeSet::new();
            for u in &level {
                for &g in &order_p {
                    if u.contains(g) || !u.elements.iter().all(|&v| self.commute(g, v)) {
                        continue;
                    }
                    let mut gens = u.elements.clone();
                    gens.push(g);
                    next.insert(self.generate(&gens));
                }
            }
            let mut sorted = level;
            sorted.sort();
            out.insert(d, sorted);
            level = next.into_iter().collect();
            d += 1;
        }
        out
    }

    /// 𝒜ᶜ_d(G), empty when d < z or d > r.
    pub fn enumerate_acd(&self, d: u32) -> SubgroupFamily {
        let members = self.elementary_abelian_over_c().remove(&d).unwrap_or_default();
        SubgroupFamily {
            kind: FamilyKind::ElementaryAbelian,
            d,
            members,
        }
    }

    /// ℋᶜ_d(G): distinct centralizers of the members of 𝒜ᶜ_d(G).
    pub fn enumerate_hcd(&self, d: u32) -> SubgroupFamily {
        let set: BTreeSet<Subgroup> = self
            .enumerate_acd(d)
            .members
            .iter()
            .map(|v| self.centralizer(v))
            .collect();
        SubgroupFamily {
            kind: FamilyKind::Centralizers,
            d,
            members: set.into_iter().collect(),
        }
    }

    /// The p-rank r.
    pub fn p_rank(&self) -> u32 {
        *self
            .elementary_abelian_over_c()
            .keys()
            .max()
            .expect("C itself is always present")
    }

    /// Orbits of G acting on the family by conjugation, with the first member
    /// (in sorted order) of each orbit as representative.
    pub fn conjugation_orbits(&self, members: &[Subgroup]) -> Vec<Orbit> {
        let mut sorted: Vec<Subgroup> = members.to_vec();
        sorted.sort();
        let mut done: HashSet<Subgroup> = HashSet::new();
        let mut out = Vec::new();
        for u in sorted {
            if done.contains(&u) {
                continue;
            }
            let orbit: BTreeSet<Subgroup> = (0..self.order).map(|g| self.conjugate(&u, g)).collect();
            let normalizer_order = self.normalizer(&u).order();
            done.extend(orbit.iter().cloned());
            out.push(Orbit {
                representative: u,
                size: orbit.len(),
                normalizer_order,
            });
        }
        out
    }

    /// All double cosets U g V, each as a sorted element list, in order of
    /// their smallest element.
    pub fn double_cosets(&self, u: &Subgroup, v: &Subgroup) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut out = Vec::new();
        for g in 0..self.order {
            if seen[g] {
                continue;
            }
            let mut coset: Vec<usize> = u
                .elements
                .iter()
                .flat_map(|&a| v.elements.iter().map(move |&b| (a, b)))
                .map(|(a, b)| self.mul(self.mul(a, g), b))
                .collect();
            coset.sort_unstable();
            coset.dedup();
            for &x in &coset {
                seen[x] = true;
            }
            out.push(coset);
        }
        out
    }

    /// Number of double cosets U g V containing some g with U^g = `target`.
    pub fn double_coset_count(&self, u: &Subgroup, v: &Subgroup, target: &Subgroup) -> usize {
        self.double_cosets(u, v)
            .iter()
            .filter(|coset| coset.iter().any(|&g| self.conjugate(u, g) == *target))
            .count()
    }

    /// Coordinates on an elementary abelian subgroup U ≥ C with C spanned by
    /// the last coordinates.
    pub fn elem_ab_basis(&self, u: &Subgroup, c: &Subgroup) -> Result<ElemAbBasis> {
        ElemAbBasis::new(self, u, c)
    }
}

/// Built-in groups.
impl GroupTable {
    /// (Z/p)^m, element index = coordinates read in base p, first most significant.
    pub fn elementary_abelian(p: u32, m: u32, cap: usize) -> Result<Self> {
        let order = (p as usize).checked_pow(m).unwrap_or(usize::MAX);
        check_order_cap(order, cap)?;
        let digits = |mut x: usize| -> Vec<usize> {
            let mut d = vec![0; m as usize];
            for i in (0..m as usize).rev() {
                d[i] = x % p as usize;
                x /= p as usize;
            }
            d
        };
        let index = |d: &[usize]| d.iter().fold(0, |acc, &x| acc * p as usize + x);
        let table = (0..order)
            .map(|a| {
                let da = digits(a);
                (0..order)
                    .map(|b| {
                        let s: Vec<usize> = da
                            .iter()
                            .zip(digits(b))
                            .map(|(x, y)| (x + y) % p as usize)
                            .collect();
                        index(&s)
                    })
                    .collect()
            })
            .collect();
        Self::from_table(p, table, cap)
    }

    /// p^{1+2n}_+: triples (a, b, c) with a, b in F_p^n and c in F_p, multiplied
    /// by (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a.b'). For odd p this has
    /// exponent p; for p = 2 it is the central product of n copies of D8.
    pub fn extraspecial_plus(p: u32, n: u32, cap: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("extraspecial groups need n >= 1".into()));
        }
        let len = 2 * n as usize + 1;
        let order = (p as usize).checked_pow(len as u32).unwrap_or(usize::MAX);
        check_order_cap(order, cap)?;
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        let pu = p as usize;
        let nn = n as usize;
        let digits = |mut x: usize| -> Vec<usize> {
            let mut d = vec![0; len];
            for i in (0..len).rev() {
                d[i] = x % pu;
                x /= pu;
            }
            d
        };
        let elems: Vec<Vec<usize>> = (0..order).map(digits).collect();
        let index = |d: &[usize]| d.iter().fold(0, |acc, &x| acc * pu + x);
        let table = (0..order)
            .map(|i| {
                let a = &elems[i];
                (0..order)
                    .map(|j| {
                        let b = &elems[j];
                        let mut s: Vec<usize> = (0..len).map(|k| (a[k] + b[k]) % pu).collect();
                        let dot: usize = (0..nn).map(|k| a[k] * b[nn + k]).sum();
                        s[len - 1] = (s[len - 1] + dot) % pu;
                        index(&s)
                    })
                    .collect()
            })
            .collect();
        Self::from_table(p, table, cap)
    }

    /// D8 from the presentation s^2 = 1, r^2 = c, r^s = rc, c central.
    pub fn dihedral8() -> Self {
        PcPresentation::parse(2, &["s", "r", "c"], &["r^2 = c", "r^s = r*c"])
            .and_then(|pc| pc.to_group(DEFAULT_GROUP_CAP))
            .expect("built-in presentation")
    }

    /// Q8 from the presentation i^2 = z, j^2 = z, j^i = jz, z central.
    pub fn quaternion8() -> Self {
        PcPresentation::parse(2, &["i", "j", "z"], &["i^2 = z", "j^2 = z", "j^i = j*z"])
            .and_then(|pc| pc.to_group(DEFAULT_GROUP_CAP))
            .expect("built-in presentation")
    }
}

fn check_order_cap(order: usize, cap: usize) -> Result<()> {
    if order > cap {
        return Err(Error::CapExceeded {
            what: "group order".into(),
            value: order as u64,
            cap: cap as u64,
        });
    }
    Ok(())
}
