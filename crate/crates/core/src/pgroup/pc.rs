//! Power-conjugate presentations and a collector that expands them into
//! multiplication tables.
//!
//! Generators g_1..g_n. Every element is a normal word
//! g_1^e_1 ... g_n^e_n with 0 <= e_k < p. Relations are
//! `g_k^p = w` and `g_j^g_k = w` (j > k, meaning g_k^-1 g_j g_k), where w is a
//! normal word in the generators after g_k. Missing relations default to
//! `g_k^p = 1` and `g_j^g_k = g_j`.

use serde::{Deserialize, Serialize};

use super::GroupTable;
use crate::error::{Error, Result};
use crate::fplinalg::is_prime;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PcPresentation {
    pub p: u32,
    pub generators: Vec<String>,
    pub relations: Vec<String>,
}

struct Collector {
    p: u32,
    n: usize,
    powers: Vec<Vec<u32>>,
    /// conj[j][k] = g_j^{g_k} for j > k.
    conj: Vec<Vec<Vec<u32>>>,
}

impl PcPresentation {
    pub fn parse(p: u32, generators: &[&str], relations: &[&str]) -> Result<Self> {
        let pc = PcPresentation {
            p,
            generators: generators.iter().map(|s| s.to_string()).collect(),
            relations: relations.iter().map(|s| s.to_string()).collect(),
        };
        pc.collector()?;
        Ok(pc)
    }

    fn gen_index(&self, name: &str, rel: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| Error::parse(rel, format!("unknown generator {name:?}")))
    }

    /// Parses `g1^e1*g2^e2*...` (or `1`) into an exponent vector, which must
    /// already be in normal order.
    fn parse_word(&self, text: &str, rel: &str) -> Result<Vec<u32>> {
        let mut exps = vec![0u32; self.generators.len()];
        if text == "1" {
            return Ok(exps);
        }
        let mut last: Option<usize> = None;
        for factor in text.split('*') {
            let (name, e) = match factor.split_once('^') {
                Some((n, e)) => (
                    n,
                    e.parse::<u32>()
                        .map_err(|_| Error::parse(rel, format!("bad exponent in {factor:?}")))?,
                ),
                None => (factor, 1),
            };
            let i = self.gen_index(name, rel)?;
            if last.is_some_and(|l| l >= i) || e >= self.p {
                return Err(Error::parse(rel, format!("word {text:?} is not in normal form")));
            }
            last = Some(i);
            exps[i] = e;
        }
        Ok(exps)
    }

    fn collector(&self) -> Result<Collector> {
        if !is_prime(self.p as u64) {
            return Err(Error::NotPrime(self.p as u64));
        }
        let n = self.generators.len();
        for (i, g) in self.generators.iter().enumerate() {
            if self.generators[..i].contains(g) {
                return Err(Error::Invalid(format!("duplicate generator {g}")));
            }
        }
        let mut powers = vec![vec![0u32; n]; n];
        let mut conj: Vec<Vec<Vec<u32>>> = (0..n)
            .map(|j| {
                (0..n)
                    .map(|_| {
                        let mut w = vec![0u32; n];
                        w[j] = 1;
                        w
                    })
                    .collect()
            })
            .collect();
        for rel in &self.relations {
            let compact: String = rel.chars().filter(|c| !c.is_whitespace()).collect();
            let (lhs, rhs) = compact
                .split_once('=')
                .ok_or_else(|| Error::parse(rel, "expected 'lhs = rhs'"))?;
            let (base, top) = lhs
                .split_once('^')
                .ok_or_else(|| Error::parse(rel, "left side must be g^p or g^h"))?;
            let j = self.gen_index(base, rel)?;
            let word = self.parse_word(rhs, rel)?;
            let (k, slot) = if top.chars().all(|c| c.is_ascii_digit()) {
                if top.parse::<u32>().ok() != Some(self.p) {
                    return Err(Error::parse(rel, format!("power relations must use exponent {}", self.p)));
                }
                (j, &mut powers[j])
            } else {
                let k = self.gen_index(top, rel)?;
                if k >= j {
                    return Err(Error::parse(rel, "conjugating generator must come first"));
                }
                (k, &mut conj[j][k])
            };
            if word[..=k].iter().any(|&e| e != 0) {
                return Err(Error::parse(rel, "right side may only use later generators"));
            }
            *slot = word;
        }
        Ok(Collector {
            p: self.p,
            n,
            powers,
            conj,
        })
    }

    /// Multiplication table on normal words, indexed by reading the exponent
    /// vector in base p with the first generator most significant. The
    /// result is validated as a group (full associativity check up to
    /// order 256, sampled beyond).
    pub fn to_group(&self, cap: usize) -> Result<GroupTable> {
        let col = self.collector()?;
        let order = (self.p as usize)
            .checked_pow(col.n as u32)
            .filter(|&o| o <= cap)
            .ok_or_else(|| Error::CapExceeded {
                what: "group order".into(),
                value: (self.p as u64).saturating_pow(col.n as u32),
                cap: cap as u64,
            })?;
        let words: Vec<Vec<u32>> = (0..order).map(|i| col.word_of(i)).collect();
        let table = words
            .iter()
            .map(|a| words.iter().map(|b| col.index_of(&col.mul(a, b))).collect())
            .collect();
        let g = GroupTable::from_table(self.p, table, cap)?;
        if order <= 256 {
            if let Some(t) = g.check_associative_full() {
                return Err(Error::Invalid(format!("presentation is inconsistent: not associative at {t:?}")));
            }
        }
        Ok(g)
    }
}

impl Collector {
    fn word_of(&self, mut i: usize) -> Vec<u32> {
        let mut w = vec![0u32; self.n];
        for k in (0..self.n).rev() {
            w[k] = (i % self.p as usize) as u32;
            i /= self.p as usize;
        }
        w
    }

    fn index_of(&self, w: &[u32]) -> usize {
        w.iter().fold(0, |acc, &e| acc * self.p as usize + e as usize)
    }

    fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut out = a.to_vec();
        for (k, &e) in b.iter().enumerate() {
            for _ in 0..e {
                out = self.mul_gen(&out, k);
            }
        }
        out
    }

    /// w * g_k. Writing w = P g_k^e T with P before g_k and T after it,
    /// T g_k = g_k T^{g_k}, so w g_k = P g_k^{e+1} T^{g_k}, where an overflow of
    /// the exponent to p is replaced by the power relation.
    fn mul_gen(&self, w: &[u32], k: usize) -> Vec<u32> {
        let mut head = w.to_vec();
        for e in head.iter_mut().skip(k + 1) {
            *e = 0;
        }
        head[k] += 1;
        let mut suffix = vec![0u32; self.n];
        if head[k] == self.p {
            head[k] = 0;
            suffix = self.powers[k].clone();
        }
        for j in k + 1..self.n {
            for _ in 0..w[j] {
                suffix = self.mul(&suffix, &self.conj[j][k]);
            }
        }
        for j in k + 1..self.n {
            head[j] = suffix[j];
        }
        head
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d8_layout() {
        let g = GroupTable::dihedral8();
        assert_eq!(g.order(), 8);
        // s = 4, r = 2, c = 1
        assert_eq!(g.mul(2, 2), 1);
        assert_eq!(g.conj(2, 4), 3);
        assert_eq!(g.mul(4, 2), 6);
    }

    #[test]
    fn abelian_default() {
        let pc = PcPresentation::parse(3, &["a", "b"], &[]).unwrap();
        let g = pc.to_group(1024).unwrap();
        assert_eq!(g.center().order(), 9);
    }

    #[test]
    fn cyclic_via_powers() {
        let pc = PcPresentation::parse(2, &["a", "b", "c"], &["a^2 = b", "b^2 = c"]).unwrap();
        let g = pc.to_group(1024).unwrap();
        assert_eq!(g.exponent(), 8);
    }

    #[test]
    fn rejects_malformed() {
        assert!(PcPresentation::parse(2, &["a", "b"], &["a^b = a"]).is_err());
        assert!(PcPresentation::parse(2, &["a", "b"], &["a^3 = b"]).is_err());
        assert!(PcPresentation::parse(2, &["a", "b"], &["b^2 = a"]).is_err());
        assert!(PcPresentation::parse(2, &["a", "b"], &["a^2 = q"]).is_err());
        assert!(PcPresentation::parse(2, &["a", "b"], &["a^2 = b*a"]).is_err());
    }

    #[test]
    fn inconsistent_presentation_detected() {
        // b^a = b*c with c of order 2 not central in a way that breaks a^2 = 1
        let pc = PcPresentation::parse(3, &["a", "b"], &["b^a = b^2"]).unwrap();
        assert!(pc.to_group(1024).is_err());
    }
}
