//! Coordinates on an elementary abelian subgroup U containing C.

use std::collections::HashMap;

use super::{GroupTable, Subgroup};
use crate::error::{Error, Result};

/// A basis u_1..u_m of U with C = <u_{m-z+1}, ..., u_m>. Each basis element is
/// the smallest index not yet in the span (C first, then U).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElemAbBasis {
    p: u32,
    subgroup: Subgroup,
    basis: Vec<usize>,
    z: usize,
    coords: HashMap<usize, Vec<u32>>,
}

impl ElemAbBasis {
    pub fn new(g: &GroupTable, u: &Subgroup, c: &Subgroup) -> Result<Self> {
        if !g.is_elementary_abelian(u) {
            return Err(Error::Invalid("subgroup is not elementary abelian".into()));
        }
        if !c.is_subgroup_of(u) {
            return Err(Error::Invalid("C is not contained in the subgroup".into()));
        }
        let mut c_basis = Vec::new();
        let mut span = g.trivial();
        for &x in c.elements() {
            if !span.contains(x) {
                c_basis.push(x);
                span = g.generate(&c_basis);
            }
        }
        let mut rest = Vec::new();
        for &x in u.elements() {
            if !span.contains(x) {
                rest.push(x);
                let mut gens = rest.clone();
                gens.extend(&c_basis);
                span = g.generate(&gens);
            }
        }
        let z = c_basis.len();
        let mut basis = rest;
        basis.extend(c_basis);
        let m = basis.len();
        let p = g.p();
        let mut coords = HashMap::new();
        for v in crate::dickson::all_vectors(p, m) {
            let mut x = g.identity();
            for (i, &a) in v.iter().enumerate() {
                x = g.mul(x, g.pow(basis[i], a as u64));
            }
            coords.insert(x, v);
        }
        Ok(ElemAbBasis {
            p,
            subgroup: u.clone(),
            basis,
            z,
            coords,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Rank of C.
    pub fn z(&self) -> usize {
        self.z
    }

    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn coordinates(&self, x: usize) -> Option<&[u32]> {
        self.coords.get(&x).map(|v| v.as_slice())
    }

    /// For U' ≤ U with its own basis: row k holds the coordinates of the k-th
    /// basis element of U' in this basis. A linear form with coefficient
    /// vector phi on U restricts to the form `M * phi` on U'.
    pub fn inclusion_matrix(&self, sub: &ElemAbBasis) -> Result<Vec<Vec<u32>>> {
        sub.basis
            .iter()
            .map(|&b| {
                self.coordinates(b)
                    .map(|c| c.to_vec())
                    .ok_or_else(|| Error::Invalid("not a subgroup of the basis domain".into()))
            })
            .collect()
    }

    /// The characters of U (coefficient vectors in U*) whose restriction to C
    /// is `chi_c` (coefficients on the basis of C).
    pub fn characters_extending(&self, chi_c: &[u32]) -> Result<Vec<Vec<u32>>> {
        if chi_c.len() != self.z {
            return Err(Error::Dimension(format!(
                "character of C has {} coordinates, C has rank {}",
                chi_c.len(),
                self.z
            )));
        }
        if chi_c.iter().all(|&c| c % self.p == 0) {
            return Err(Error::Invalid("the character of C must be nontrivial".into()));
        }
        let free = self.rank() - self.z;
        Ok(crate::dickson::all_vectors(self.p, free)
            .into_iter()
            .map(|mut v| {
                v.extend(chi_c.iter().map(|&c| c % self.p));
                v
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::super::DEFAULT_GROUP_CAP;
    use super::*;
    use crate::fplinalg::{Fp, FpMatrix};

    #[test]
    fn d8_bases() {
        let g = GroupTable::dihedral8();
        let (c, _) = g.center_omega1();
        let fam = g.enumerate_acd(2).members;
        let b = ElemAbBasis::new(&g, &fam[0], &c).unwrap();
        assert_eq!(b.basis(), &[4, 1]);
        assert_eq!(b.z(), 1);
        let b = ElemAbBasis::new(&g, &fam[1], &c).unwrap();
        assert_eq!(b.basis(), &[6, 1]);
        assert_eq!(b.coordinates(7), Some(&[1u32, 1][..]));
    }

    #[test]
    fn extensions() {
        let g = GroupTable::extraspecial_plus(3, 1, DEFAULT_GROUP_CAP).unwrap();
        let (c, _) = g.center_omega1();
        let u = &g.enumerate_acd(2).members[0];
        let b = ElemAbBasis::new(&g, u, &c).unwrap();
        let cb = ElemAbBasis::new(&g, &c, &c).unwrap();
        assert_eq!(cb.characters_extending(&[1]).unwrap(), vec![vec![1]]);
        let ext = b.characters_extending(&[1]).unwrap();
        assert_eq!(ext.len(), 3);
        // pairwise differences span Ann(C) = span{(1, 0)}
        let f = Fp::new(3).unwrap();
        let diffs: Vec<Vec<i64>> = ext
            .iter()
            .flat_map(|a| ext.iter().map(move |b| (a, b)))
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| f.sub(*x, *y) as i64).collect())
            .collect();
        let m = FpMatrix::from_rows(3, &diffs).unwrap();
        assert_eq!(m.rank(), 1);
        assert!(diffs.iter().all(|d| d[1] == 0));
        assert!(b.characters_extending(&[0]).is_err());
    }

    #[test]
    fn inclusion_matrix_for_c() {
        let g = GroupTable::extraspecial_plus(3, 2, DEFAULT_GROUP_CAP).unwrap();
        let (c, _) = g.center_omega1();
        let v = &g.enumerate_acd(3).members[0];
        let u = g
            .enumerate_acd(2)
            .members
            .into_iter()
            .find(|u| u.is_subgroup_of(v))
            .unwrap();
        let bv = ElemAbBasis::new(&g, v, &c).unwrap();
        let bu = ElemAbBasis::new(&g, &u, &c).unwrap();
        let m = bv.inclusion_matrix(&bu).unwrap();
        assert_eq!(m.len(), 2);
        // the C basis element has the same coordinates in both bases
        assert_eq!(m[1], vec![0, 0, 1]);
    }
}
