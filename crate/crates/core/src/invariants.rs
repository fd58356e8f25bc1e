//! Average character degrees and degree counts, all exact.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::chartab::{Character, CharacterTable};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::structure::is_prime;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeFilter {
    All,
    Even,
    DivisibleBy(u64),
    CoprimeTo(u64),
}

impl DegreeFilter {
    /// Rejects non-prime parameters.
    pub fn validated(self) -> Result<Self> {
        match self {
            DegreeFilter::DivisibleBy(p) | DegreeFilter::CoprimeTo(p) if !is_prime(p) => {
                Err(Error::NotPrime(p))
            }
            f => Ok(f),
        }
    }

    pub fn accepts(self, d: u64) -> bool {
        match self {
            DegreeFilter::All => true,
            DegreeFilter::Even => d % 2 == 0,
            DegreeFilter::DivisibleBy(p) => d % p == 0,
            DegreeFilter::CoprimeTo(p) => d % p != 0,
        }
    }
}

/// An exact average together with the number of terms; the empty average is 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalAverage {
    pub value: BigRational,
    pub count: usize,
}

impl RationalAverage {
    pub fn of<I: IntoIterator<Item = u64>>(items: I) -> Self {
        let mut sum = BigInt::zero();
        let mut count = 0usize;
        for d in items {
            sum += d;
            count += 1;
        }
        let value = if count == 0 {
            BigRational::zero()
        } else {
            BigRational::new(sum, BigInt::from(count))
        };
        RationalAverage { value, count }
    }

    pub fn ratio(num: i64, den: i64) -> BigRational {
        BigRational::new(num.into(), den.into())
    }

    pub fn equals(&self, num: i64, den: i64) -> bool {
        self.value == Self::ratio(num, den)
    }

    pub fn less_than(&self, num: i64, den: i64) -> bool {
        self.value < Self::ratio(num, den)
    }

    /// `value < p/√3`, decided as `3·value² < p²`.
    pub fn below_p_over_sqrt3(&self, p: u64) -> bool {
        let three = BigRational::from_integer(3.into());
        let p2 = BigRational::from_integer(BigInt::from(p) * BigInt::from(p));
        &three * &self.value * &self.value < p2
    }
}

impl fmt::Display for RationalAverage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render(&self.value))
    }
}

/// `num/den` in lowest terms, integers without a denominator.
pub fn render(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Character degrees, sorted ascending.
pub fn degrees(t: &CharacterTable) -> Vec<u64> {
    let mut d = t.degrees();
    d.sort_unstable();
    d
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormalMode {
    /// Characters with `N` in the kernel (characters of `G/N`).
    Quotient,
    /// Characters whose kernel does not contain `N` (`Irr(G|N)`).
    Relative,
}

fn check_subgroup(t: &CharacterTable, n: &Group) -> Result<()> {
    if n.degree() != t.group().degree() || !n.is_subgroup_of(t.group()) {
        return Err(Error::NotMember);
    }
    Ok(())
}

/// Characters selected by `mode` relative to `n`.
pub fn characters_mod<'a>(
    t: &'a CharacterTable,
    n: &Group,
    mode: NormalMode,
) -> Result<Vec<&'a Character>> {
    check_subgroup(t, n)?;
    let mut out = Vec::new();
    for chi in t.characters() {
        let inside = t.kernel_contains(chi, n)?;
        if inside == (mode == NormalMode::Quotient) {
            out.push(chi);
        }
    }
    Ok(out)
}

/// `n_d(G)`, or `n_d(G/N)` / `n_d(G|N)` when a subgroup and mode are given.
pub fn n_d(t: &CharacterTable, d: u64, modulo: Option<(&Group, NormalMode)>) -> Result<usize> {
    Ok(match modulo {
        None => t.degrees().iter().filter(|&&x| x == d).count(),
        Some((n, mode)) => characters_mod(t, n, mode)?
            .iter()
            .filter(|c| c.degree() == d)
            .count(),
    })
}

pub fn acd(t: &CharacterTable, filter: DegreeFilter) -> RationalAverage {
    RationalAverage::of(t.degrees().into_iter().filter(|&d| filter.accepts(d)))
}

/// `acd(G|N)`: the average over characters whose kernel does not contain `n`.
pub fn acd_rel(t: &CharacterTable, n: &Group) -> Result<RationalAverage> {
    if n.is_trivial() {
        log::warn!("acd(G|N) with trivial N averages over the empty set");
    }
    let chars = characters_mod(t, n, NormalMode::Relative)?;
    Ok(RationalAverage::of(chars.iter().map(|c| c.degree())))
}

/// Indices of the characters of `t` lying over `theta ∈ Irr(N)`.
pub fn irr_over(t: &CharacterTable, sub: &CharacterTable, theta: &Character) -> Result<Vec<usize>> {
    check_subgroup(t, sub.group())?;
    if !sub.is_irreducible(theta.class_function())? {
        return Err(Error::NotIrreducible);
    }
    let mut out = Vec::new();
    for (i, chi) in t.characters().iter().enumerate() {
        let res = t.restrict(chi.class_function(), sub)?;
        if sub.multiplicity(&res, theta.class_function())? > 0 {
            out.push(i);
        }
    }
    Ok(out)
}

/// `acd(G|θ)`.
pub fn acd_over(t: &CharacterTable, sub: &CharacterTable, theta: &Character) -> Result<RationalAverage> {
    let idx = irr_over(t, sub, theta)?;
    Ok(RationalAverage::of(idx.iter().map(|&i| t.character(i).degree())))
}

/// Whether `acd(G) < 16/5` is equivalent to
/// `Σ_{d≥4} (5d − 16) n_d(G) < 11 n_1(G) + 6 n_2(G) + n_3(G)`.
pub fn theorem_a_inequality_equiv(t: &CharacterTable) -> bool {
    let below = acd(t, DegreeFilter::All).less_than(16, 5);
    let (mut lhs, mut rhs) = (BigInt::zero(), BigInt::zero());
    for d in t.degrees() {
        match d {
            1 => rhs += 11,
            2 => rhs += 6,
            3 => rhs += 1,
            _ => lhs += BigInt::from(5 * d - 16),
        }
    }
    below == (lhs < rhs)
}

/// `|G| / Σ χ(1)`, the Cauchy–Schwarz upper bound for `acd(G)`.
pub fn cauchy_schwarz_bound(t: &CharacterTable) -> BigRational {
    let sum: u64 = t.degrees().iter().sum();
    BigRational::new(BigInt::from(t.group_order()), BigInt::from(sum))
}

/// `acd(G) ≤ |G| / Σ χ(1)`.
pub fn cauchy_schwarz_holds(t: &CharacterTable) -> bool {
    let a = acd(t, DegreeFilter::All).value;
    !(a - cauchy_schwarz_bound(t)).is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::ClassData;
    use crate::group::DEFAULT_ELEMENT_BOUND as B;
    use crate::perm::Perm;
    use crate::structure::center;

    fn group(n: usize, gens: &[&str]) -> Group {
        Group::new(
            n,
            gens.iter().map(|s| Perm::parse_cycles(s, n).unwrap()).collect(),
        )
        .unwrap()
    }

    fn table(g: &Group) -> CharacterTable {
        CharacterTable::of_group(g, B).unwrap()
    }

    #[test]
    fn averages_and_rendering() {
        let a5 = table(&group(5, &["(1 2 3 4 5)", "(1 2 3)"]));
        assert_eq!(acd(&a5, DegreeFilter::All).to_string(), "16/5");
        assert_eq!(acd(&a5, DegreeFilter::DivisibleBy(3)).to_string(), "3");
        assert!(theorem_a_inequality_equiv(&a5));
        assert!(cauchy_schwarz_holds(&a5));
        let c3 = table(&group(3, &["(1 2 3)"]));
        let e = acd(&c3, DegreeFilter::Even);
        assert_eq!((e.count, e.to_string()), (0, "0".to_string()));
        assert!(DegreeFilter::CoprimeTo(4).validated().is_err());
    }

    #[test]
    fn relative_counts_partition() {
        let s4 = group(4, &["(1 2 3 4)", "(1 2)"]);
        let t = table(&s4);
        let v4 = group(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        for d in 1..=3 {
            let q = n_d(&t, d, Some((&v4, NormalMode::Quotient))).unwrap();
            let r = n_d(&t, d, Some((&v4, NormalMode::Relative))).unwrap();
            assert_eq!(q + r, n_d(&t, d, None).unwrap());
        }
        // S4/V4 ≅ S3 has degrees 1,1,2; the two degree-3 characters are faithful
        assert_eq!(n_d(&t, 3, Some((&v4, NormalMode::Relative))).unwrap(), 2);
        assert!(acd_rel(&t, &v4).unwrap().equals(3, 1));
        assert!(acd_rel(&t, &Group::trivial(4)).unwrap().equals(0, 1));
        // acd(G|G) averages the nonprincipal degrees
        assert!(acd_rel(&t, &s4).unwrap().equals(1 + 2 + 3 + 3, 4));
    }

    #[test]
    fn over_a_central_character() {
        let q8 = group(8, &["(1 2 3 4)(5 6 7 8)", "(1 5 3 7)(2 8 4 6)"]);
        let t = table(&q8);
        let cd = ClassData::new(&q8, B).unwrap();
        let z = center(&q8, &cd).unwrap();
        let zt = table(&z);
        let lambda = zt.characters().iter().find(|c| c.kernel_classes().len() == 1).unwrap();
        let over = acd_over(&t, &zt, lambda).unwrap();
        assert_eq!((over.count, over.to_string()), (1, "2".to_string()));
        let principal = &zt.characters()[0];
        assert!(acd_over(&t, &zt, principal).unwrap().equals(1, 1));
    }

    #[test]
    fn p_over_sqrt3_exact() {
        let a = RationalAverage { value: RationalAverage::ratio(16, 5), count: 5 };
        // 3·(16/5)² = 30.72 < 36 but > 25
        assert!(a.below_p_over_sqrt3(6));
        assert!(!a.below_p_over_sqrt3(5));
    }
}
