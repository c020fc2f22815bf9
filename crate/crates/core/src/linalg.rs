//! Row reduction over GF(q) on flat row-major byte matrices.
//!
//! q ≤ 256 always holds here: n ≥ 4 and q^n fits in 32 bits.

use crate::field::Arith;

#[derive(Debug, Clone)]
pub(crate) struct Gfq {
    q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl Gfq {
    pub fn new(arith: &Arith) -> Self {
        let q = arith.size(1) as usize;
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        let mut neg = vec![0u8; q];
        let mut inv = vec![0u8; q];
        for a in 0..q {
            neg[a] = arith.neg(a as u32) as u8;
            if a != 0 {
                inv[a] = arith.inv(1, a as u32) as u8;
            }
            for b in 0..q {
                add[a * q + b] = arith.add(a as u32, b as u32) as u8;
                mul[a * q + b] = arith.mul(1, a as u32, b as u32) as u8;
            }
        }
        Gfq {
            q,
            add,
            mul,
            neg,
            inv,
        }
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    /// row_dst −= c · row_src
    #[inline]
    fn axpy(&self, dst: &mut [u8], src: &[u8], c: u8) {
        let nc = self.neg[c as usize];
        for (d, &s) in dst.iter_mut().zip(src) {
            if s != 0 {
                *d = self.add(*d, self.mul(nc, s));
            }
        }
    }

    fn scale(&self, row: &mut [u8], c: u8) {
        for x in row.iter_mut() {
            *x = self.mul(*x, c);
        }
    }

    /// Reduced row echelon form in place, pivots found by a left-to-right
    /// column scan. Zero rows are dropped; returns the rank.
    pub fn rref(&self, m: &mut Vec<u8>, cols: usize) -> usize {
        let rows = m.len().checked_div(cols).unwrap_or(0);
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(piv) = (rank..rows).find(|&r| m[r * cols + col] != 0) else {
                continue;
            };
            if piv != rank {
                for c in 0..cols {
                    m.swap(piv * cols + c, rank * cols + c);
                }
            }
            let inv = self.inv(m[rank * cols + col]);
            self.scale(&mut m[rank * cols..(rank + 1) * cols], inv);
            let pivot_row = m[rank * cols..(rank + 1) * cols].to_vec();
            for r in 0..rows {
                if r != rank {
                    let c = m[r * cols + col];
                    if c != 0 {
                        self.axpy(&mut m[r * cols..(r + 1) * cols], &pivot_row, c);
                    }
                }
            }
            rank += 1;
        }
        m.truncate(rank * cols);
        rank
    }

    /// Rank by forward elimination only.
    pub fn rank(&self, m: &mut [u8], cols: usize) -> usize {
        let rows = m.len().checked_div(cols).unwrap_or(0);
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(piv) = (rank..rows).find(|&r| m[r * cols + col] != 0) else {
                continue;
            };
            if piv != rank {
                for c in 0..cols {
                    m.swap(piv * cols + c, rank * cols + c);
                }
            }
            let inv = self.inv(m[rank * cols + col]);
            let (head, tail) = m.split_at_mut((rank + 1) * cols);
            let pivot_row = &head[rank * cols..];
            for r in 0..rows - rank - 1 {
                let row = &mut tail[r * cols..(r + 1) * cols];
                let c = row[col];
                if c != 0 {
                    self.axpy(row, pivot_row, self.mul(c, inv));
                }
            }
            rank += 1;
        }
        rank
    }

    /// v · M for a row vector v and an n×n matrix M.
    pub fn vec_mat(&self, v: &[u8], m: &[u8], out: &mut [u8]) {
        let n = out.len();
        out.iter_mut().for_each(|x| *x = 0);
        for (i, &c) in v.iter().enumerate() {
            if c != 0 {
                let row = &m[i * n..(i + 1) * n];
                for (o, &r) in out.iter_mut().zip(row) {
                    if r != 0 {
                        *o = self.add(*o, self.mul(c, r));
                    }
                }
            }
        }
    }

    /// Applies `vec_mat` to every row of `rows`.
    pub fn rows_mat(&self, rows: &[u8], m: &[u8], n: usize) -> Vec<u8> {
        let mut out = vec![0u8; rows.len()];
        for (src, dst) in rows.chunks(n).zip(out.chunks_mut(n)) {
            self.vec_mat(src, m, dst);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use crate::field::FieldTower;

    #[test]
    fn rref_over_gf3() {
        let t = FieldTower::with_q(3, 2, 4).unwrap();
        let f = &t.gfq;
        let mut m = vec![2, 1, 0, 1, 1, 2, 0, 1, 0, 0, 0, 0];
        let r = f.rref(&mut m, 4);
        assert_eq!(r, 2);
        assert_eq!(m, vec![1, 2, 0, 0, 0, 0, 0, 1]);
        let mut m2 = vec![2, 1, 0, 1, 1, 2, 0, 1, 0, 0, 0, 0];
        assert_eq!(f.rank(&mut m2, 4), 2);
    }

    #[test]
    fn rank_of_dependent_rows() {
        let t = FieldTower::with_q(2, 2, 4).unwrap();
        let mut m = vec![1, 1, 0, 0, 0, 1, 1, 0, 1, 0, 1, 0];
        assert_eq!(t.gfq.rank(&mut m, 4), 2);
    }
}
