//! Permutations acting on the right of `{0, .., n-1}`.
//!
//! The product `p * q` applies `p` first, then `q`, so `x^(pq) = (x^p)^q`.
//! Files and printed output use 1-based cycle notation.

use std::fmt;
use std::ops::Mul;

use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Box<[u32]>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image array, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::NotAPermutation(n));
            }
            seen[x] = true;
        }
        Ok(Perm {
            images: images.into_boxed_slice(),
        })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Perm::from_images(images.clone()).is_ok());
        Perm {
            images: images.into_boxed_slice(),
        }
    }

    /// Builds a permutation from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for &x in cycle {
                if x >= degree {
                    return Err(Error::PointOutOfRange { point: x + 1, degree });
                }
                if touched[x] {
                    return Err(Error::NotAPermutation(degree));
                }
                touched[x] = true;
            }
            for (i, &x) in cycle.iter().enumerate() {
                images[x] = cycle[(i + 1) % cycle.len()] as u32;
            }
        }
        Ok(Perm {
            images: images.into_boxed_slice(),
        })
    }

    /// Parses 1-based cycle notation such as `(1 2 3)(4 5)` or `()`.
    pub fn parse_cycles(text: &str, degree: usize) -> std::result::Result<Self, String> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err("empty permutation; write () for the identity".into());
        }
        while !rest.is_empty() {
            let Some(inner) = rest.strip_prefix('(') else {
                return Err(format!("expected '(' at `{rest}`"));
            };
            let Some(close) = inner.find(')') else {
                return Err("unclosed cycle".into());
            };
            if inner[..close].contains('(') {
                return Err("unclosed cycle".into());
            }
            let body = &inner[..close];
            let mut cycle = Vec::new();
            for tok in body.split(|c: char| c.is_whitespace() || c == ',') {
                if tok.is_empty() {
                    continue;
                }
                let pt: usize = tok
                    .parse()
                    .map_err(|_| format!("bad point `{tok}`"))?;
                if pt == 0 || pt > degree {
                    return Err(format!("point {pt} out of range 1..={degree}"));
                }
                cycle.push(pt - 1);
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = inner[close + 1..].trim_start();
        }
        Perm::from_cycles(degree, &cycles).map_err(|e| e.to_string())
    }

    /// Disjoint cycles of length > 1, each starting at its least point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start] as usize;
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// 1-based cycle notation; the identity prints as `()`.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            s.push_str(&pts.join(" "));
            s.push(')');
        }
        s
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn first_moved(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i != x as usize)
            .map(|(i, _)| i)
    }

    /// `self` followed by `other`.
    #[inline]
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm {
            images: inv.into_boxed_slice(),
        }
    }

    pub fn pow(&self, exp: u64) -> Perm {
        let mut result = Perm::identity(self.degree());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        result
    }

    /// Element order, the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    /// `x^-1 * self * x`.
    pub fn conjugate_by(&self, x: &Perm) -> Perm {
        // point a^x maps to (a^self)^x
        let mut images = vec![0u32; self.degree()];
        for (a, &b) in self.images.iter().enumerate() {
            images[x.images[a] as usize] = x.images[b as usize];
        }
        Perm {
            images: images.into_boxed_slice(),
        }
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(a: &Perm, b: &Perm) -> Perm {
        a.inverse().compose(&b.inverse()).compose(a).compose(b)
    }

    /// Places `self` on points `offset..offset + self.degree()` of a larger domain.
    pub fn shifted(&self, offset: usize, degree: usize) -> Perm {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[offset + i] = (offset + x as usize) as u32;
        }
        Perm {
            images: images.into_boxed_slice(),
        }
    }
}

impl Mul for &Perm {
    type Output = Perm;
    fn mul(self, rhs: &Perm) -> Perm {
        self.compose(rhs)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_print() {
        let p = Perm::parse_cycles("(1 2 3)(4 5)", 5).unwrap();
        assert_eq!(p.image(0), 1);
        assert_eq!(p.image(2), 0);
        assert_eq!(p.to_cycle_string(), "(1 2 3)(4 5)");
        assert_eq!(p.order(), 6);
        assert_eq!(Perm::parse_cycles("()", 3).unwrap(), Perm::identity(3));
    }

    #[test]
    fn parse_errors() {
        assert!(Perm::parse_cycles("(1 2 3", 5).is_err());
        assert!(Perm::parse_cycles("(1 6)", 5).is_err());
        assert!(Perm::parse_cycles("(1 2)(2 3)", 5).is_err());
        assert!(Perm::parse_cycles("(0 1)", 5).is_err());
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn right_action_convention() {
        let a = Perm::parse_cycles("(1 2)", 3).unwrap();
        let b = Perm::parse_cycles("(2 3)", 3).unwrap();
        // 1 -> 2 under a, then 2 -> 3 under b
        assert_eq!((&a * &b).image(0), 2);
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Perm> {
        Just((0..n as u32).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Perm::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn group_axioms(a in arb_perm(9), b in arb_perm(9), c in arb_perm(9)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert!((&a.inverse() * &a).is_identity());
            prop_assert_eq!(b.conjugate_by(&a), &(&a.inverse() * &b) * &a);
            prop_assert!(a.pow(a.order()).is_identity());
        }

        #[test]
        fn cycle_string_roundtrip(a in arb_perm(12)) {
            let s = a.to_cycle_string();
            prop_assert_eq!(Perm::parse_cycles(&s, 12).unwrap(), a);
        }
    }
}
