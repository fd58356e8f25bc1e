//! Small finite fields and permutation realizations of matrix groups.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Perm;
use crate::structure::is_prime;

/// Largest domain a matrix group may act on.
pub const MAX_DOMAIN: usize = 1_000_000;

/// `F_q` with `q = p^k`, elements encoded as integers `Σ c_i p^i` standing for `Σ c_i x^i`
/// modulo a monic irreducible polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    p: u32,
    k: u32,
    /// Monic modulus, lowest degree first (length `k + 1`). `[0, 1]` for prime fields.
    modulus: Vec<u32>,
}

impl FiniteField {
    pub fn new(p: u32, k: u32, modulus: Option<Vec<u32>>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::InvalidField("extension degree must be positive".into()));
        }
        let modulus = match modulus {
            None if k == 1 => vec![0, 1],
            None => return Err(Error::InvalidField("extension field needs a modulus".into())),
            Some(m) => m,
        };
        if modulus.len() != k as usize + 1
            || modulus[k as usize] != 1
            || modulus.iter().any(|&c| c >= p)
        {
            return Err(Error::InvalidField(format!(
                "modulus must be monic of degree {k} with coefficients below {p}"
            )));
        }
        let f = FiniteField { p, k, modulus };
        if !f.modulus_irreducible() {
            return Err(Error::InvalidField("modulus is reducible".into()));
        }
        if (p as u64).pow(k) > u32::MAX as u64 / 2 {
            return Err(Error::InvalidField("field too large".into()));
        }
        Ok(f)
    }

    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1, None)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn size(&self) -> u32 {
        self.p.pow(self.k)
    }

    fn digits(&self, a: u32) -> Vec<u32> {
        let mut d = Vec::with_capacity(self.k as usize);
        let mut x = a;
        for _ in 0..self.k {
            d.push(x % self.p);
            x /= self.p;
        }
        d
    }

    fn from_digits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.from_digits(&s)
    }

    pub fn neg(&self, a: u32) -> u32 {
        let d: Vec<u32> = self
            .digits(a)
            .iter()
            .map(|&x| (self.p - x) % self.p)
            .collect();
        self.from_digits(&d)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let k = self.k as usize;
        let p = self.p as u64;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for i in (k..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..k {
                let sub = c * self.modulus[j] as u64 % p;
                prod[i - k + j] = (prod[i - k + j] + p - sub) % p;
            }
        }
        let d: Vec<u32> = prod[..k].iter().map(|&x| x as u32).collect();
        self.from_digits(&d)
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
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

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            None
        } else {
            Some(self.pow(a, self.size() as u64 - 2))
        }
    }

    /// No monic factor of degree at most `k/2`.
    fn modulus_irreducible(&self) -> bool {
        let k = self.k as usize;
        let p = self.p;
        for d in 1..=k / 2 {
            for code in 0..p.pow(d as u32) {
                let mut f: Vec<u32> = (0..d).map(|i| (code / p.pow(i as u32)) % p).collect();
                f.push(1);
                if poly_divides(&f, &self.modulus, p) {
                    return false;
                }
            }
        }
        true
    }
}

fn poly_divides(f: &[u32], g: &[u32], p: u32) -> bool {
    let p = p as i64;
    let mut rem: Vec<i64> = g.iter().map(|&x| x as i64).collect();
    let df = f.len() - 1;
    for i in (df..rem.len()).rev() {
        let c = rem[i].rem_euclid(p);
        if c == 0 {
            continue;
        }
        for (j, &fc) in f.iter().enumerate() {
            rem[i - df + j] = (rem[i - df + j] - c * fc as i64).rem_euclid(p);
        }
    }
    rem[..df].iter().all(|x| x.rem_euclid(p) == 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Action {
    /// Right action on nonzero row vectors.
    Vectors,
    /// Action on 1-spaces, each normalized so its first nonzero coordinate is 1.
    Projective,
}

impl Action {
    pub fn name(self) -> &'static str {
        match self {
            Action::Vectors => "vectors",
            Action::Projective => "projective",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixGroupSpec {
    pub field: FiniteField,
    pub dim: usize,
    /// Row-major `dim x dim` matrices.
    pub generators: Vec<Vec<u32>>,
    pub action: Action,
}

pub fn determinant(field: &FiniteField, dim: usize, m: &[u32]) -> u32 {
    let mut a = m.to_vec();
    let mut det = 1;
    for c in 0..dim {
        let Some(pr) = (c..dim).find(|&r| a[r * dim + c] != 0) else {
            return 0;
        };
        if pr != c {
            for j in 0..dim {
                a.swap(pr * dim + j, c * dim + j);
            }
            det = field.neg(det);
        }
        let pivot = a[c * dim + c];
        det = field.mul(det, pivot);
        let inv = field.inv(pivot).unwrap();
        for r in c + 1..dim {
            let factor = field.mul(a[r * dim + c], inv);
            if factor == 0 {
                continue;
            }
            for j in c..dim {
                let v = field.sub(a[r * dim + j], field.mul(factor, a[c * dim + j]));
                a[r * dim + j] = v;
            }
        }
    }
    det
}

/// Points of the domain as coordinate vectors, in increasing order of their integer code.
pub fn domain(field: &FiniteField, dim: usize, action: Action) -> Result<Vec<Vec<u32>>> {
    let q = field.size() as usize;
    let total = q
        .checked_pow(dim as u32)
        .filter(|&t| t <= MAX_DOMAIN)
        .ok_or_else(|| Error::Invalid("matrix action domain too large".into()))?;
    let mut pts = Vec::new();
    for code in 1..total {
        let v: Vec<u32> = (0..dim)
            .map(|i| ((code / q.pow(i as u32)) % q) as u32)
            .collect();
        if action == Action::Projective {
            let first = v.iter().find(|&&x| x != 0).unwrap();
            if *first != 1 {
                continue;
            }
        }
        pts.push(v);
    }
    Ok(pts)
}

fn normalize(field: &FiniteField, v: &mut [u32]) {
    if let Some(&first) = v.iter().find(|&&x| x != 0) {
        let inv = field.inv(first).unwrap();
        for x in v.iter_mut() {
            *x = field.mul(*x, inv);
        }
    }
}

/// Permutations induced by the generator matrices, acting on the right of row vectors.
pub fn perm_from_matrix_group(spec: &MatrixGroupSpec) -> Result<Group> {
    let f = &spec.field;
    let n = spec.dim;
    for m in &spec.generators {
        if m.len() != n * n {
            return Err(Error::Invalid(format!("matrix needs {} entries", n * n)));
        }
        if m.iter().any(|&x| x >= f.size()) {
            return Err(Error::Invalid("matrix entry outside the field".into()));
        }
        if determinant(f, n, m) == 0 {
            return Err(Error::SingularMatrix);
        }
    }
    let pts = domain(f, n, spec.action)?;
    let index: HashMap<&[u32], usize> = pts.iter().enumerate().map(|(i, v)| (v.as_slice(), i)).collect();
    let mut perms = Vec::with_capacity(spec.generators.len());
    for m in &spec.generators {
        let images = pts
            .iter()
            .map(|v| {
                let mut w: Vec<u32> = (0..n)
                    .map(|j| (0..n).fold(0, |acc, i| f.add(acc, f.mul(v[i], m[i * n + j]))))
                    .collect();
                if spec.action == Action::Projective {
                    normalize(f, &mut w);
                }
                index[w.as_slice()] as u32
            })
            .collect();
        perms.push(Perm::from_images(images)?);
    }
    Group::new(pts.len(), perms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl2(p: u32, action: Action) -> MatrixGroupSpec {
        MatrixGroupSpec {
            field: FiniteField::prime(p).unwrap(),
            dim: 2,
            generators: vec![vec![1, 1, 0, 1], vec![1, 0, 1, 1]],
            action,
        }
    }

    #[test]
    fn field_arithmetic() {
        // F_9 = F_3[x]/(x^2 + 2x + 2); x is encoded as 3
        let f = FiniteField::new(3, 2, Some(vec![2, 2, 1])).unwrap();
        assert_eq!(f.size(), 9);
        for a in 1..9 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        // x generates the multiplicative group
        let orders: Vec<u64> = (1..=8).filter(|&e| f.pow(3, e) == 1).collect();
        assert_eq!(orders, vec![8]);
        assert!(FiniteField::new(3, 2, Some(vec![2, 0, 1])).is_err()); // x^2 + 2 = (x+1)(x+2)
        assert!(FiniteField::new(4, 1, None).is_err());
    }

    #[test]
    fn sl2_realizations() {
        assert_eq!(perm_from_matrix_group(&sl2(5, Action::Vectors)).unwrap().order(), 120);
        let psl = perm_from_matrix_group(&sl2(7, Action::Projective)).unwrap();
        assert_eq!(psl.degree(), 8);
        assert_eq!(psl.order(), 168);
        let sl27 = perm_from_matrix_group(&sl2(7, Action::Vectors)).unwrap();
        assert_eq!(sl27.degree(), 48);
        assert_eq!(sl27.order(), 336);
    }

    #[test]
    fn sl2_9_on_vectors() {
        let f = FiniteField::new(3, 2, Some(vec![2, 2, 1])).unwrap();
        // x^-1 = x + 2, encoded 5
        let spec = MatrixGroupSpec {
            field: f,
            dim: 2,
            generators: vec![vec![1, 1, 0, 1], vec![1, 0, 1, 1], vec![3, 0, 0, 5]],
            action: Action::Vectors,
        };
        let g = perm_from_matrix_group(&spec).unwrap();
        assert_eq!(g.degree(), 80);
        assert_eq!(g.order(), 720);
    }

    #[test]
    fn singular_rejected() {
        let mut spec = sl2(5, Action::Vectors);
        spec.generators.push(vec![1, 2, 2, 4]);
        assert!(matches!(perm_from_matrix_group(&spec), Err(Error::SingularMatrix)));
    }
}
