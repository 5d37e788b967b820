//! Dense linear algebra over the prime field F_p.
//!
//! Matrices are stored row-major with entries reduced into `0..p`. Row
//! reduction picks the first nonzero entry in column order as the pivot, so
//! every result is deterministic. For `p = 2` the elimination runs on a
//! bit-packed copy of the matrix (see [`gf2`]).

pub mod gf2;

use std::fmt;

use crate::error::{Error, Result};

/// Arithmetic in F_p for a fixed prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub fn new(p: u32) -> Result<Self> {
        if is_prime(p as u64) {
            Ok(Fp { p })
        } else {
            Err(Error::NotPrime(p as u64))
        }
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + (self.p - b % self.p) as u64;
        (s % self.p as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a % self.p != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, (self.p - 2) as u64)
    }

    /// Reduce a signed integer into `0..p`.
    #[inline]
    pub fn reduce(self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }

    /// Binomial coefficient C(n, k) mod p via Lucas' theorem.
    pub fn binomial(self, mut n: u64, mut k: u64) -> u32 {
        let p = self.p as u64;
        let mut acc = 1u32;
        while n > 0 || k > 0 {
            let (nd, kd) = (n % p, k % p);
            if kd > nd {
                return 0;
            }
            acc = self.mul(acc, small_binomial(nd, kd, self));
            n /= p;
            k /= p;
        }
        acc
    }
}

fn small_binomial(n: u64, k: u64, f: Fp) -> u32 {
    let mut num = 1u32;
    let mut den = 1u32;
    for i in 0..k {
        num = f.mul(num, ((n - i) % f.p as u64) as u32);
        den = f.mul(den, ((i + 1) % f.p as u64) as u32);
    }
    f.mul(num, f.inv(den))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 || n >= 1 << 31 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense matrix over F_p, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    field: Fp,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

/// Output of [`FpMatrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: FpMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Result<Self> {
        Ok(FpMatrix {
            field: Fp::new(p)?,
            rows,
            cols,
            entries: vec![0; rows * cols],
        })
    }

    pub fn identity(p: u32, n: usize) -> Result<Self> {
        let mut m = Self::zeros(p, n, n)?;
        for i in 0..n {
            m.entries[i * n + i] = 1 % p;
        }
        Ok(m)
    }

    /// Builds a matrix from signed integer rows, reducing mod p.
    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Result<Self> {
        let field = Fp::new(p)?;
        let cols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has length {}, expected {cols}",
                    row.len()
                )));
            }
            entries.extend(row.iter().map(|&e| field.reduce(e)));
        }
        Ok(FpMatrix {
            field,
            rows: rows.len(),
            cols,
            entries,
        })
    }

    /// Builds a matrix from rows already reduced into `0..p`.
    pub fn from_residue_rows(field: Fp, cols: usize, rows: Vec<Vec<u32>>) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has length {}, expected {cols}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&e| e >= field.p) {
                return Err(Error::Invalid(format!(
                    "entry {bad} is not a residue mod {}",
                    field.p
                )));
            }
            entries.extend_from_slice(row);
        }
        Ok(FpMatrix {
            field,
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: u32) {
        self.entries[r * self.cols + c] = value % self.field.p;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            entries: vec![0; self.entries.len()],
        };
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.cols != other.rows || self.field != other.field {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.field.p as u64;
        let mut out = vec![0u32; self.rows * other.cols];
        for r in 0..self.rows {
            let mut acc = vec![0u64; other.cols];
            for k in 0..self.cols {
                let a = self.get(r, k) as u64;
                if a == 0 {
                    continue;
                }
                for (c, slot) in acc.iter_mut().enumerate() {
                    *slot = (*slot + a * other.get(k, c) as u64) % p;
                }
            }
            for (c, v) in acc.into_iter().enumerate() {
                out[r * other.cols + c] = v as u32;
            }
        }
        Ok(FpMatrix {
            field: self.field,
            rows: self.rows,
            cols: other.cols,
            entries: out,
        })
    }

    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let p = self.field.p as u64;
        Ok((0..self.rows)
            .map(|r| {
                let s = self
                    .row(r)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p);
                s as u32
            })
            .collect())
    }

    /// Reduced row-echelon form. Uses the packed path when `p = 2`.
    pub fn rref(&self) -> Rref {
        if self.field.p == 2 {
            let mut packed = gf2::BitMatrix::from_matrix(self);
            let pivots = packed.rref_in_place();
            let matrix = packed.to_matrix();
            let rank = pivots.len();
            Rref {
                matrix,
                pivots,
                rank,
            }
        } else {
            self.rref_generic()
        }
    }

    /// Reduced row-echelon form by plain Gauss-Jordan elimination, for every p.
    pub fn rref_generic(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.rref_in_place_generic();
        let rank = pivots.len();
        Rref {
            matrix: m,
            pivots,
            rank,
        }
    }

    fn rref_in_place_generic(&mut self) -> Vec<usize> {
        let f = self.field;
        let p = f.p as u64;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..cols {
            if lead == self.rows {
                break;
            }
            let Some(pr) = (lead..self.rows).find(|&r| self.get(r, c) != 0) else {
                continue;
            };
            if pr != lead {
                for k in 0..cols {
                    self.entries.swap(pr * cols + k, lead * cols + k);
                }
            }
            let inv = f.inv(self.get(lead, c));
            if inv != 1 {
                for k in c..cols {
                    let idx = lead * cols + k;
                    self.entries[idx] = f.mul(self.entries[idx], inv);
                }
            }
            for r in 0..self.rows {
                if r == lead {
                    continue;
                }
                let factor = self.get(r, c);
                if factor == 0 {
                    continue;
                }
                let neg = p - factor as u64;
                for k in c..cols {
                    let a = self.entries[lead * cols + k] as u64;
                    if a != 0 {
                        let idx = r * cols + k;
                        self.entries[idx] = ((self.entries[idx] as u64 + neg * a) % p) as u32;
                    }
                }
            }
            pivots.push(c);
            lead += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of `{v : self * v = 0}`.
    pub fn kernel_basis(&self) -> Subspace {
        let Rref { matrix, pivots, .. } = self.rref();
        let f = self.field;
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &c in &pivots {
                v[c] = true;
            }
            v
        };
        let mut vectors = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(matrix.get(row, free));
            }
            vectors.push(v);
        }
        Subspace::span(f, self.cols, vectors)
    }

    /// Some `x` with `self * x = rhs`, or `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &[u32]) -> Result<Option<Vec<u32>>> {
        if rhs.len() != self.rows {
            return Err(Error::Dimension(format!(
                "right-hand side has length {}, matrix has {} rows",
                rhs.len(),
                self.rows
            )));
        }
        let f = self.field;
        let mut aug = FpMatrix {
            field: f,
            rows: self.rows,
            cols: self.cols + 1,
            entries: Vec::with_capacity(self.rows * (self.cols + 1)),
        };
        for r in 0..self.rows {
            aug.entries.extend_from_slice(self.row(r));
            aug.entries.push(rhs[r] % f.p);
        }
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u32; self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = matrix.get(row, self.cols);
        }
        Ok(Some(x))
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix(p={}, {}x{})", self.field.p, self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// A subspace of F_p^n held as a reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Fp,
    ambient: usize,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Fp, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Fp, ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Subspace {
            field,
            ambient,
            basis,
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of arbitrary vectors of length `ambient`.
    pub fn span(field: Fp, ambient: usize, vectors: Vec<Vec<u32>>) -> Self {
        if vectors.is_empty() || ambient == 0 {
            return Self::zero(field, ambient);
        }
        let m = FpMatrix::from_residue_rows(field, ambient, vectors)
            .expect("span vectors must have the ambient length");
        let Rref {
            matrix,
            pivots,
            rank,
        } = m.rref();
        Subspace {
            field,
            ambient,
            basis: (0..rank).map(|r| matrix.row(r).to_vec()).collect(),
            pivots,
        }
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after clearing every pivot column.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            let c = out[pc];
            if c == 0 {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(row) {
                if r != 0 {
                    *o = f.sub(*o, f.mul(c, r));
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&e| e == 0)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Lexicographically smallest nonzero vector: the last reduced basis row.
    pub fn smallest_nonzero(&self) -> Option<&[u32]> {
        self.basis.last().map(|v| v.as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, p: u32, rows: usize, cols: usize) -> FpMatrix {
        let data: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_range(0..p) as i64).collect())
            .collect();
        FpMatrix::from_rows(p, &data).unwrap()
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(matches!(FpMatrix::zeros(4, 1, 1), Err(Error::NotPrime(4))));
        assert!(FpMatrix::zeros(1, 1, 1).is_err());
    }

    #[test]
    fn identity_is_reduced() {
        let id = FpMatrix::identity(2, 3).unwrap();
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.pivots, vec![0, 1, 2]);
        assert_eq!(r.rank, 3);
    }

    #[test]
    fn equal_rows_collapse() {
        let m = FpMatrix::from_rows(2, &[vec![1, 1], vec![1, 1]]).unwrap();
        let r = m.rref();
        assert_eq!(r.matrix, FpMatrix::from_rows(2, &[vec![1, 1], vec![0, 0]]).unwrap());
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn empty_matrix_has_rank_zero() {
        let m = FpMatrix::zeros(3, 0, 0).unwrap();
        assert_eq!(m.rref().rank, 0);
        assert_eq!(m.kernel_basis().dim(), 0);
    }

    #[test]
    fn random_rank_matches_transpose() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let m = random_matrix(&mut rng, 3, 20, 30);
            assert_eq!(m.rank(), m.transpose().rank());
        }
    }

    #[test]
    fn kernel_of_identity_and_zero() {
        assert!(FpMatrix::identity(5, 4).unwrap().kernel_basis().is_zero());
        let z = FpMatrix::zeros(2, 2, 3).unwrap();
        assert_eq!(z.kernel_basis(), Subspace::full(Fp::new(2).unwrap(), 3));
    }

    #[test]
    fn kernel_matches_enumeration() {
        let m = FpMatrix::from_rows(2, &[vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        let k = m.kernel_basis();
        // Enumerate all 8 vectors of F_2^3.
        let solutions: Vec<Vec<u32>> = (0..8u32)
            .map(|b| vec![b & 1, (b >> 1) & 1, (b >> 2) & 1])
            .filter(|v| m.mul_vec(v).unwrap().iter().all(|&e| e == 0))
            .collect();
        assert_eq!(solutions, vec![vec![0, 0, 0], vec![1, 1, 1]]);
        assert_eq!(k.basis(), &[vec![1, 1, 1]]);
    }

    #[test]
    fn solve_cases() {
        let id = FpMatrix::identity(7, 3).unwrap();
        assert_eq!(id.solve(&[1, 0, 0]).unwrap(), Some(vec![1, 0, 0]));

        let m = FpMatrix::from_rows(2, &[vec![1, 1]]).unwrap();
        let x = m.solve(&[1]).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), vec![1]);

        let zero = FpMatrix::from_rows(3, &[vec![0]]).unwrap();
        assert_eq!(zero.solve(&[1]).unwrap(), None);
        assert!(zero.solve(&[1, 2]).is_err());
    }

    #[test]
    fn smallest_nonzero_is_lexicographic_minimum() {
        let f = Fp::new(3).unwrap();
        let s = Subspace::span(f, 3, vec![vec![1, 2, 0], vec![0, 1, 1]]);
        // Enumerate the subspace and take the minimum nonzero vector.
        let mut all = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                let v: Vec<u32> = (0..3)
                    .map(|i| f.add(f.mul(a, s.basis()[0][i]), f.mul(b, s.basis()[1][i])))
                    .collect();
                if v.iter().any(|&e| e != 0) {
                    all.push(v);
                }
            }
        }
        all.sort();
        assert_eq!(s.smallest_nonzero().unwrap(), all[0].as_slice());
    }

    #[test]
    fn lucas_binomials() {
        let f = Fp::new(3).unwrap();
        assert_eq!(f.binomial(9, 3), 0);
        assert_eq!(f.binomial(4, 1), 1);
        assert_eq!(f.binomial(5, 2), 1); // 10 mod 3
        let f2 = Fp::new(2).unwrap();
        assert_eq!(f2.binomial(2, 1), 0);
        assert_eq!(f2.binomial(3, 1), 1);
        assert_eq!(f2.binomial(1, 2), 0);
    }
}
