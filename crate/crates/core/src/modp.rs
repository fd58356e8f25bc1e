//! Arithmetic and linear algebra over a prime field `F_p` with `p < 2^31`.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!(p >= 2 && p < (1 << 31));
        PrimeField { p }
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a % self.p;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    /// Reduction of a possibly negative integer.
    pub fn from_i128(&self, a: i128) -> u64 {
        a.rem_euclid(self.p as i128) as u64
    }

    /// Smallest generator of the multiplicative group.
    pub fn primitive_root(&self) -> u64 {
        if self.p == 2 {
            return 1;
        }
        let mut factors = Vec::new();
        let mut m = self.p - 1;
        let mut d = 2;
        while d * d <= m {
            if m % d == 0 {
                factors.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            factors.push(m);
        }
        (2..self.p)
            .find(|&z| factors.iter().all(|&q| self.pow(z, (self.p - 1) / q) != 1))
            .unwrap()
    }

    /// A square root of `a`, if one exists (by scanning).
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        (0..self.p).find(|&x| self.mul(x, x) == a % self.p)
    }
}

/// Dense row-major matrix over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<u64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let data = rows.into_iter().flatten().collect();
        Matrix {
            rows: r,
            cols: c,
            data,
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, f: &PrimeField, v: &[u64]) -> Vec<u64> {
        (0..self.rows)
            .map(|i| {
                let acc: u128 = self
                    .row(i)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a as u128 * b as u128)
                    .sum();
                (acc % f.modulus() as u128) as u64
            })
            .collect()
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self, f: &PrimeField) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c));
            for j in c..self.cols {
                let v = f.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let v = f.sub(self.get(i, j), f.mul(factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, f: &PrimeField) -> usize {
        self.clone().rref(f).len()
    }

    /// Characteristic polynomial `det(xI - self)` of a square matrix, lowest degree first,
    /// via reduction to upper Hessenberg form.
    pub fn charpoly(&self, f: &PrimeField) -> Vec<u64> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| h.get(i, m - 1) != 0) else {
                continue;
            };
            if i != m {
                for j in 0..n {
                    h.data.swap(i * n + j, m * n + j);
                }
                for j in 0..n {
                    h.data.swap(j * n + i, j * n + m);
                }
            }
            let t_inv = f.inv(h.get(m, m - 1));
            for j in m + 1..n {
                let u = f.mul(h.get(j, m - 1), t_inv);
                if u == 0 {
                    continue;
                }
                for k in 0..n {
                    let v = f.sub(h.get(j, k), f.mul(u, h.get(m, k)));
                    h.set(j, k, v);
                }
                for k in 0..n {
                    let v = f.add(h.get(k, m), f.mul(u, h.get(k, j)));
                    h.set(k, m, v);
                }
            }
        }
        // polys[m] is the characteristic polynomial of the leading m x m block
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for m in 1..=n {
            let prev = &polys[m - 1];
            let mut next = vec![0u64; m + 1];
            let hmm = h.get(m - 1, m - 1);
            for (k, &c) in prev.iter().enumerate() {
                next[k + 1] = f.add(next[k + 1], c);
                next[k] = f.sub(next[k], f.mul(hmm, c));
            }
            let mut prod = 1u64;
            for i in (1..m).rev() {
                prod = f.mul(prod, h.get(i, i - 1));
                let coef = f.mul(h.get(i - 1, m - 1), prod);
                if coef != 0 {
                    for (k, &c) in polys[i - 1].iter().enumerate() {
                        next[k] = f.sub(next[k], f.mul(coef, c));
                    }
                }
            }
            polys.push(next);
        }
        polys.pop().unwrap()
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn nullspace(&self, f: &PrimeField) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0u64; self.cols];
                v[fc] = 1;
                for (ri, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(m.get(ri, fc));
                }
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_basics() {
        let f = PrimeField::new(31);
        assert_eq!(f.mul(f.inv(7), 7), 1);
        let z = f.primitive_root();
        assert_eq!(z, 3);
        assert_eq!(f.pow(z, 30), 1);
        assert_eq!(f.sqrt(4).map(|x| f.mul(x, x)), Some(4));
        assert_eq!(f.sqrt(3), None);
        assert_eq!(f.from_i128(-1), 30);
    }

    #[test]
    fn nullspace_and_rank() {
        let f = PrimeField::new(7);
        let m = Matrix::from_rows(vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(m.rank(&f), 2);
        let ns = m.nullspace(&f);
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&f, &ns[0]).iter().all(|&x| x == 0));
    }

    #[test]
    fn charpoly_roots_match_rank_scan() {
        use rand::{Rng, SeedableRng};
        let f = PrimeField::new(13);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 1..7 {
            for _ in 0..20 {
                let m = Matrix::from_rows(
                    (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..13)).collect()).collect(),
                );
                let cp = m.charpoly(&f);
                assert_eq!(cp.len(), n + 1);
                assert_eq!(cp[n], 1);
                for t in 0..13u64 {
                    let val = cp.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, t), c));
                    let mut shifted = m.clone();
                    for i in 0..n {
                        let v = f.sub(shifted.get(i, i), t);
                        shifted.set(i, i, v);
                    }
                    assert_eq!(val == 0, shifted.rank(&f) < n);
                }
            }
        }
    }
}
