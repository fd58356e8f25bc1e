//! Exact values in `Z[ζ_n]`.
//!
//! Character values are stored as eigenvalue multiplicity vectors: `mult[k]` is the number of
//! eigenvalues equal to `ζ_n^k`, with `ζ_n = exp(2πi/n)`. Sums and products stay in that form;
//! equality and rationality tests reduce modulo the cyclotomic polynomial `Φ_n`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

fn poly_cache() -> &'static Mutex<HashMap<u32, Vec<i64>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<i64>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1);
    if let Some(p) = poly_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            num = exact_div(&num, &phi_d);
        }
    }
    poly_cache().lock().unwrap().insert(n, num.clone());
    num
}

/// Quotient of exact division by a monic polynomial.
fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qlen = num.len() - dd;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dd];
        q[i] = c;
        if c != 0 {
            for (j, &dc) in den.iter().enumerate() {
                rem[i + j] -= c * dc;
            }
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    q
}

/// Reduces a polynomial (lowest degree first) modulo `Φ_n`.
pub fn reduce_mod_phi(v: &[i64], n: u32) -> Vec<i64> {
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    let mut r: Vec<i128> = v.iter().map(|&x| x as i128).collect();
    if r.len() < deg {
        r.resize(deg, 0);
    }
    for i in (deg..r.len()).rev() {
        let c = r[i];
        if c != 0 {
            for (j, &pc) in phi.iter().enumerate() {
                r[i - deg + j] -= c * pc as i128;
            }
        }
    }
    r.truncate(deg);
    r.into_iter().map(|x| i64::try_from(x).expect("coefficient overflow")).collect()
}

/// If the element of `Z[x]/(x^n - 1)` given by `v` is a rational integer, returns it.
pub fn integer_value(v: &[i64], n: u32) -> Option<i64> {
    let r = reduce_mod_phi(v, n);
    if r[1..].iter().all(|&x| x == 0) {
        Some(r[0])
    } else {
        None
    }
}

/// Embeds a vector over `Z[x]/(x^n - 1)` into `Z[x]/(x^m - 1)` for `n | m`.
pub fn embed(v: &[i64], m: u32) -> Vec<i64> {
    let n = v.len() as u32;
    assert!(m % n == 0, "{n} does not divide {m}");
    let step = (m / n) as usize;
    let mut out = vec![0i64; m as usize];
    for (k, &c) in v.iter().enumerate() {
        out[k * step] = c;
    }
    out
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclotomicValue {
    order: u32,
    mult: Vec<i64>,
}

impl CyclotomicValue {
    pub fn new(order: u32, mult: Vec<i64>) -> Self {
        assert_eq!(mult.len(), order as usize);
        CyclotomicValue { order, mult }
    }

    pub fn integer(order: u32, c: i64) -> Self {
        let mut mult = vec![0; order as usize];
        mult[0] = c;
        CyclotomicValue { order, mult }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn mult(&self) -> &[i64] {
        &self.mult
    }

    /// Sum of multiplicities: the value of the whole character at the identity.
    pub fn total(&self) -> i64 {
        self.mult.iter().sum()
    }

    /// Whether all eigenvalues equal 1, i.e. the element acts trivially.
    pub fn is_trivial_action(&self) -> bool {
        self.mult[1..].iter().all(|&m| m == 0)
    }

    pub fn embedded(&self, m: u32) -> Vec<i64> {
        embed(&self.mult, m)
    }

    pub fn conj(&self) -> Self {
        let n = self.order as usize;
        let mult = (0..n).map(|k| self.mult[(n - k) % n]).collect();
        CyclotomicValue {
            order: self.order,
            mult,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let m = self.order.lcm(&other.order);
        let a = self.embedded(m);
        let b = other.embedded(m);
        CyclotomicValue {
            order: m,
            mult: a.iter().zip(&b).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        CyclotomicValue {
            order: self.order,
            mult: self.mult.iter().map(|x| x * c).collect(),
        }
    }

    /// Product; for characters this is the multiset of pairwise eigenvalue products.
    pub fn mul(&self, other: &Self) -> Self {
        let m = self.order.lcm(&other.order) as usize;
        let sa = m / self.order as usize;
        let sb = m / other.order as usize;
        let mut out = vec![0i64; m];
        for (i, &x) in self.mult.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in other.mult.iter().enumerate() {
                if y != 0 {
                    out[(i * sa + j * sb) % m] += x * y;
                }
            }
        }
        CyclotomicValue {
            order: m as u32,
            mult: out,
        }
    }

    /// Canonical coordinates modulo `Φ_order`.
    pub fn reduced(&self) -> Vec<i64> {
        reduce_mod_phi(&self.mult, self.order)
    }

    pub fn as_integer(&self) -> Option<i64> {
        integer_value(&self.mult, self.order)
    }

    /// Equality as complex numbers (not as multisets).
    pub fn value_eq(&self, other: &Self) -> bool {
        let m = self.order.lcm(&other.order);
        let d: Vec<i64> = self
            .embedded(m)
            .iter()
            .zip(other.embedded(m))
            .map(|(a, b)| a - b)
            .collect();
        reduce_mod_phi(&d, m).iter().all(|&x| x == 0)
    }

    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.order as f64;
        self.mult.iter().enumerate().fold((0.0, 0.0), |(re, im), (k, &c)| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / n;
            (re + c as f64 * t.cos(), im + c as f64 * t.sin())
        })
    }
}

impl fmt::Display for CyclotomicValue {
    /// Integers print plainly; other values as sums of `E(n)^k` over the power basis.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.as_integer() {
            return write!(f, "{c}");
        }
        // simplify to the smallest n for which the value is still expressible
        let mut n = self.order;
        let mut coeffs = self.reduced();
        for d in 1..self.order {
            if self.order % d != 0 {
                continue;
            }
            let step = (self.order / d) as usize;
            if self.mult.iter().enumerate().all(|(k, &c)| c == 0 || k % step == 0) {
                let small: Vec<i64> = (0..d as usize).map(|k| self.mult[k * step]).collect();
                n = d;
                coeffs = reduce_mod_phi(&small, d);
                break;
            }
        }
        let mut first = true;
        for (k, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let abs = c.abs();
            let term = match k {
                0 => abs.to_string(),
                _ => {
                    let root = if k == 1 {
                        format!("E({n})")
                    } else {
                        format!("E({n})^{k}")
                    };
                    if abs == 1 {
                        root
                    } else {
                        format!("{abs}*{root}")
                    }
                }
            };
            write!(f, "{sign}{term}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for CyclotomicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.order, self.mult)
    }
}
