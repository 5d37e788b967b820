//! Bit-packed matrices over F_2: one `u64` word holds 64 consecutive columns.

use super::{Fp, FpMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        BitMatrix {
            rows,
            cols,
            words,
            data: vec![0; rows * words],
        }
    }

    pub fn from_matrix(m: &FpMatrix) -> Self {
        debug_assert_eq!(m.p(), 2);
        let mut b = Self::zeros(m.rows(), m.cols());
        for r in 0..m.rows() {
            for (c, &e) in m.row(r).iter().enumerate() {
                if e & 1 == 1 {
                    b.data[r * b.words + c / 64] |= 1 << (c % 64);
                }
            }
        }
        b
    }

    pub fn to_matrix(&self) -> FpMatrix {
        let field = Fp::new(2).expect("2 is prime");
        let rows = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c) as u32).collect())
            .collect();
        FpMatrix::from_residue_rows(field, self.cols, rows).expect("well-formed")
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        (self.data[r * self.words + c / 64] >> (c % 64)) & 1 == 1
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.words {
            self.data.swap(a * self.words + w, b * self.words + w);
        }
    }

    fn xor_row_into(&mut self, src: usize, dst: usize, from_word: usize) {
        for w in from_word..self.words {
            let v = self.data[src * self.words + w];
            self.data[dst * self.words + w] ^= v;
        }
    }

    /// Gauss-Jordan elimination in place; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..self.cols {
            if lead == self.rows {
                break;
            }
            let Some(pr) = (lead..self.rows).find(|&r| self.get(r, c)) else {
                continue;
            };
            self.swap_rows(pr, lead);
            let word = c / 64;
            for r in 0..self.rows {
                if r != lead && self.get(r, c) {
                    self.xor_row_into(lead, r, word);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        pivots
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn packed_path_agrees_with_generic_path() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for trial in 0..200 {
            let rows = rng.gen_range(0..40);
            let cols = rng.gen_range(0..150);
            let data: Vec<Vec<i64>> = (0..rows)
                .map(|_| (0..cols).map(|_| rng.gen_range(0..2)).collect())
                .collect();
            let m = if rows == 0 {
                FpMatrix::zeros(2, 0, cols).unwrap()
            } else {
                FpMatrix::from_rows(2, &data).unwrap()
            };
            let packed = m.rref();
            let generic = m.rref_generic();
            assert_eq!(packed, generic, "trial {trial}");
        }
    }
}
