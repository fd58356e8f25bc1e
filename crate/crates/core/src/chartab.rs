//! Character tables by the Burnside–Dixon–Schneider method.
//!
//! Central characters are found as common eigenvectors of the class matrices over a prime
//! field `F_p` with `p ≡ 1 (mod exponent)`; each character value is then lifted to its exact
//! eigenvalue multiplicity vector using the power maps.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use crate::classes::ClassData;
use crate::cyclotomic::{integer_value, CyclotomicValue};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::modp::{Matrix, PrimeField};
use crate::structure::{class_fusion, is_prime, normal_closure};

/// Upper limit for the Dixon prime search.
pub const DIXON_PRIME_CEILING: u64 = 1 << 31;

/// A class function given by one exact value per class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    values: Vec<CyclotomicValue>,
}

impl ClassFunction {
    pub fn new(values: Vec<CyclotomicValue>) -> Self {
        ClassFunction { values }
    }

    pub fn values(&self) -> &[CyclotomicValue] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &CyclotomicValue {
        &self.values[class]
    }

    /// Value at the identity class, when it is an integer.
    pub fn degree(&self) -> i64 {
        self.values[0].as_integer().expect("value at identity is an integer")
    }

    /// Pointwise product.
    pub fn tensor(&self, other: &ClassFunction) -> ClassFunction {
        ClassFunction {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.mul(b))
                .collect(),
        }
    }

    pub fn add(&self, other: &ClassFunction) -> ClassFunction {
        ClassFunction {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn conj(&self) -> ClassFunction {
        ClassFunction {
            values: self.values.iter().map(|v| v.conj()).collect(),
        }
    }

    /// Equality of values (not of multiplicity vectors).
    pub fn value_eq(&self, other: &ClassFunction) -> bool {
        self.values.len() == other.values.len()
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| a.value_eq(b))
    }
}

/// An irreducible character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    degree: u64,
    values: ClassFunction,
    kernel_classes: Vec<usize>,
}

impl Character {
    fn new(degree: u64, values: Vec<CyclotomicValue>) -> Self {
        let kernel_classes = values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_trivial_action())
            .map(|(i, _)| i)
            .collect();
        Character {
            degree,
            values: ClassFunction::new(values),
            kernel_classes,
        }
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn values(&self) -> &[CyclotomicValue] {
        self.values.values()
    }

    pub fn class_function(&self) -> &ClassFunction {
        &self.values
    }

    /// Classes on which the character takes the value `χ(1)`.
    pub fn kernel_classes(&self) -> &[usize] {
        &self.kernel_classes
    }

    pub fn is_linear(&self) -> bool {
        self.degree == 1
    }
}

/// Exact character table with canonical row and column order.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: Arc<Group>,
    classes: Arc<ClassData>,
    chars: Vec<Character>,
    exponent: u64,
    prime: u64,
    root: u64,
}

/// Smallest prime `p ≡ 1 (mod exponent)` with `p > 2·sqrt(order)`.
pub fn dixon_prime(exponent: u64, order: u128) -> Result<u64> {
    let mut p = exponent + 1;
    while p < DIXON_PRIME_CEILING {
        if (p as u128) * (p as u128) > 4 * order && is_prime(p) {
            return Ok(p);
        }
        p += exponent;
    }
    Err(Error::NoDixonPrime(DIXON_PRIME_CEILING))
}

/// Class matrix `A_i` with `(A_i)[j][k] = #{x in C_i : x^-1 g_k in C_j}` reduced mod `p`.
fn class_matrix(classes: &ClassData, i: usize, field: &PrimeField) -> Matrix {
    let r = classes.len();
    let elems = classes.elements();
    let inverses: Vec<_> = classes
        .members(i)
        .iter()
        .map(|&x| elems[x as usize].inverse())
        .collect();
    let mut m = Matrix::zeros(r, r);
    for k in 0..r {
        let g = classes.rep(k);
        for xi in &inverses {
            let y = xi.compose(g);
            let j = classes.class_of(&y).expect("closed under multiplication");
            let v = field.add(m.get(j, k), 1);
            m.set(j, k, v);
        }
    }
    m
}

/// Subspace in reduced row echelon form.
struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    fn dim(&self) -> usize {
        self.basis.rows
    }

    /// Splits into eigenspaces of `a` restricted to this (invariant) subspace.
    fn split(self, a: &Matrix, field: &PrimeField) -> Result<Vec<Subspace>> {
        let d = self.dim();
        let r = self.basis.cols;
        let images: Vec<Vec<u64>> = (0..d)
            .map(|s| a.mul_vec(field, self.basis.row(s)))
            .collect();
        let mut restricted = Matrix::zeros(d, d);
        for (s, img) in images.iter().enumerate() {
            for (t, &pc) in self.pivots.iter().enumerate() {
                restricted.set(t, s, img[pc]);
            }
        }
        let cp = restricted.charpoly(field);
        let p = field.modulus();
        let mut spaces = Vec::new();
        let mut found = 0;
        for t in 0..p {
            if found == d {
                break;
            }
            let val = cp.iter().rev().fold(0, |acc, &c| field.add(field.mul(acc, t), c));
            if val != 0 {
                continue;
            }
            let mut shifted = restricted.clone();
            for i in 0..d {
                let v = field.sub(shifted.get(i, i), t);
                shifted.set(i, i, v);
            }
            let ns = shifted.nullspace(field);
            found += ns.len();
            spaces.push(ns);
        }
        if found != d {
            return Err(Error::SplitFailed(format!(
                "eigenspaces of total dimension {found} in a subspace of dimension {d}"
            )));
        }
        if spaces.len() == 1 {
            return Ok(vec![self]);
        }
        Ok(spaces
            .into_iter()
            .map(|ns| {
                let rows: Vec<Vec<u64>> = ns
                    .iter()
                    .map(|c| {
                        let mut v = vec![0u64; r];
                        for (s, &cs) in c.iter().enumerate() {
                            if cs == 0 {
                                continue;
                            }
                            for (x, &b) in v.iter_mut().zip(self.basis.row(s)) {
                                *x = field.add(*x, field.mul(cs, b));
                            }
                        }
                        v
                    })
                    .collect();
                let mut basis = Matrix::from_rows(rows);
                let pivots = basis.rref(field);
                Subspace { basis, pivots }
            })
            .collect())
    }
}

impl CharacterTable {
    /// Computes the table of `group` from its class data.
    pub fn compute(group: Arc<Group>, classes: Arc<ClassData>) -> Result<Self> {
        let r = classes.len();
        let order = classes.group_order();
        let exponent = classes.exponent();
        let p = dixon_prime(exponent, order)?;
        let field = PrimeField::new(p);
        let z = field.primitive_root();

        let mut spaces = vec![Subspace {
            basis: Matrix::from_rows(
                (0..r)
                    .map(|i| (0..r).map(|j| u64::from(i == j)).collect())
                    .collect(),
            ),
            pivots: (0..r).collect(),
        }];
        for i in 1..r {
            if spaces.iter().all(|s| s.dim() == 1) {
                break;
            }
            let a = class_matrix(&classes, i, &field);
            let mut next = Vec::with_capacity(r);
            for s in spaces {
                if s.dim() == 1 {
                    next.push(s);
                } else {
                    next.extend(s.split(&a, &field)?);
                }
            }
            spaces = next;
        }
        if spaces.len() != r {
            return Err(Error::SplitFailed(format!(
                "{} common eigenspaces for {r} classes",
                spaces.len()
            )));
        }

        let order_mod = field.from_i128(order as i128);
        let size_inv: Vec<u64> = (0..r)
            .map(|i| field.inv(classes.size(i) as u64 % p))
            .collect();
        let max_degree = (order as f64).sqrt() as u64 + 1;
        let mut chars = Vec::with_capacity(r);
        for s in &spaces {
            let w0 = s.basis.row(0);
            if w0[0] == 0 {
                return Err(Error::SplitFailed("central character vanishes at 1".into()));
            }
            let norm = field.inv(w0[0]);
            let w: Vec<u64> = w0.iter().map(|&x| field.mul(x, norm)).collect();
            let mut sum = 0;
            for i in 0..r {
                let t = field.mul(field.mul(w[i], w[classes.inverse_class(i)]), size_inv[i]);
                sum = field.add(sum, t);
            }
            if sum == 0 {
                return Err(Error::SplitFailed("degenerate central character".into()));
            }
            let d2 = field.mul(order_mod, field.inv(sum));
            let degree = (1..=max_degree)
                .find(|&d| field.mul(d % p, d % p) == d2)
                .ok_or_else(|| Error::SplitFailed("no degree square root".into()))?;
            let values_mod: Vec<u64> = (0..r)
                .map(|i| field.mul(field.mul(degree % p, w[i]), size_inv[i]))
                .collect();
            let values = (0..r)
                .map(|i| lift_value(&classes, &field, z, &values_mod, i, degree))
                .collect::<Result<Vec<_>>>()?;
            chars.push(Character::new(degree, values));
        }

        let mut keyed: Vec<(u64, Vec<i64>, Character)> = chars
            .into_iter()
            .map(|c| {
                let key: Vec<i64> = c
                    .values()
                    .iter()
                    .flat_map(|v| v.embedded(exponent as u32))
                    .collect();
                (c.degree, key, c)
            })
            .collect();
        // degree ascending, then value vectors descending so the principal character leads
        keyed.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(&a.1)));
        let chars = keyed.into_iter().map(|(_, _, c)| c).collect();

        Ok(CharacterTable {
            group,
            classes,
            chars,
            exponent,
            prime: p,
            root: z,
        })
    }

    /// Builds class data and table in one step.
    pub fn of_group(group: &Group, bound: usize) -> Result<Self> {
        let classes = ClassData::new(group, bound)?;
        Self::compute(Arc::new(group.clone()), Arc::new(classes))
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn classes(&self) -> &Arc<ClassData> {
        &self.classes
    }

    pub fn characters(&self) -> &[Character] {
        &self.chars
    }

    pub fn character(&self, i: usize) -> &Character {
        &self.chars[i]
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn dixon_prime(&self) -> u64 {
        self.prime
    }

    pub fn primitive_root(&self) -> u64 {
        self.root
    }

    pub fn group_order(&self) -> u128 {
        self.classes.group_order()
    }

    /// Degrees in table order.
    pub fn degrees(&self) -> Vec<u64> {
        self.chars.iter().map(|c| c.degree).collect()
    }

    pub fn principal(&self) -> ClassFunction {
        ClassFunction::new(
            (0..self.classes.len())
                .map(|i| CyclotomicValue::integer(self.classes.element_order(i) as u32, 1))
                .collect(),
        )
    }

    /// `(1/|G|) Σ |C_i| a(g_i) conj(b(g_i))`; errors if the result is not rational.
    pub fn inner_product(&self, a: &ClassFunction, b: &ClassFunction) -> Result<BigRational> {
        let m = a
            .values()
            .iter()
            .chain(b.values())
            .fold(self.exponent as u32, |acc, v| acc.lcm(&v.order()));
        let mut acc = vec![0i64; m as usize];
        for (i, (x, y)) in a.values().iter().zip(b.values()).enumerate() {
            let prod = x.mul(&y.conj());
            let size = self.classes.size(i) as i64;
            for (slot, c) in acc.iter_mut().zip(prod.embedded(m)) {
                *slot += size * c;
            }
        }
        let total = integer_value(&acc, m)
            .ok_or_else(|| Error::NotRational("inner product".into()))?;
        Ok(BigRational::new(
            BigInt::from(total),
            BigInt::from(self.group_order()),
        ))
    }

    /// Inner product of two characters, which must be a non-negative integer.
    pub fn multiplicity(&self, a: &ClassFunction, b: &ClassFunction) -> Result<u64> {
        let ip = self.inner_product(a, b)?;
        if !ip.is_integer() || ip < BigRational::from_integer(0.into()) {
            return Err(Error::NotRational(format!("character inner product {ip}")));
        }
        Ok(u64::try_from(ip.to_integer()).expect("small multiplicity"))
    }

    /// Multiplicities of every irreducible character in `f`.
    pub fn decompose(&self, f: &ClassFunction) -> Result<Vec<u64>> {
        self.chars
            .iter()
            .map(|c| self.multiplicity(f, c.class_function()))
            .collect()
    }

    pub fn is_irreducible(&self, f: &ClassFunction) -> Result<bool> {
        Ok(f.degree() > 0 && self.inner_product(f, f)? == BigRational::from_integer(1.into()))
    }

    /// Index of the irreducible character equal to `f`, if any.
    pub fn find(&self, f: &ClassFunction) -> Option<usize> {
        self.chars
            .iter()
            .position(|c| c.values.values() == f.values() || c.values.value_eq(f))
    }

    /// Restriction to a subgroup with its own table.
    pub fn restrict(&self, chi: &ClassFunction, sub: &CharacterTable) -> Result<ClassFunction> {
        let fusion = class_fusion(&self.classes, &sub.classes)?;
        Ok(ClassFunction::new(
            fusion.iter().map(|&c| chi.value(c).clone()).collect(),
        ))
    }

    /// Whether every element of `n` lies in the kernel of `chi`.
    pub fn kernel_contains(&self, chi: &Character, n: &Group) -> Result<bool> {
        for g in n.generators() {
            let c = self.classes.class_of(g)?;
            if !chi.values()[c].is_trivial_action() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Kernel of `chi` as a subgroup.
    pub fn kernel_subgroup(&self, chi: &Character) -> Result<Group> {
        let reps: Vec<_> = chi
            .kernel_classes()
            .iter()
            .map(|&c| self.classes.rep(c).clone())
            .collect();
        normal_closure(&self.group, &reps)
    }

    /// Irreducible characters of this group extending `theta` from the subgroup `sub`.
    pub fn extensions_of(&self, sub: &CharacterTable, theta: &Character) -> Result<Vec<usize>> {
        if !sub.group.is_normal_in(&self.group) {
            log::warn!("extension test against a subgroup that is not normal");
        }
        let mut out = Vec::new();
        for (i, chi) in self.chars.iter().enumerate() {
            if chi.degree != theta.degree {
                continue;
            }
            let res = self.restrict(chi.class_function(), sub)?;
            if res.values() == theta.values() {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// Checks that `β ↦ βψ` maps `Irr(G/N)` injectively into `Irr(G)`.
    pub fn gallagher_check(
        &self,
        sub: &CharacterTable,
        psi: &Character,
    ) -> Result<GallagherReport> {
        let mut report = GallagherReport::default();
        let res = self.restrict(psi.class_function(), sub)?;
        report.restriction_irreducible = sub.is_irreducible(&res)?;
        for (i, beta) in self.chars.iter().enumerate() {
            if !self.kernel_contains(beta, &sub.group)? {
                continue;
            }
            let prod = beta.class_function().tensor(psi.class_function());
            let irreducible = self.is_irreducible(&prod)?;
            let image = self.find(&prod);
            report.products.push(GallagherProduct {
                beta: i,
                image,
                irreducible,
            });
        }
        let mut images: Vec<usize> = report.products.iter().filter_map(|p| p.image).collect();
        images.sort_unstable();
        let before = images.len();
        images.dedup();
        report.distinct = before == images.len();
        Ok(report)
    }
}

fn lift_value(
    classes: &ClassData,
    field: &PrimeField,
    z: u64,
    values_mod: &[u64],
    i: usize,
    degree: u64,
) -> Result<CyclotomicValue> {
    let p = field.modulus();
    let n = classes.element_order(i);
    let theta = field.pow(z, (p - 1) / n);
    let theta_inv = field.inv(theta);
    let n_inv = field.inv(n % p);
    let powers: Vec<u64> = (0..n).map(|l| values_mod[classes.power_class(i, l)]).collect();
    let mut mult = Vec::with_capacity(n as usize);
    for k in 0..n {
        // θ^(-k l)
        let step = field.pow(theta_inv, k);
        let mut w = 1;
        let mut acc = 0;
        for &v in &powers {
            acc = field.add(acc, field.mul(v, w));
            w = field.mul(w, step);
        }
        let m = field.mul(acc, n_inv);
        if m > degree {
            return Err(Error::SplitFailed(format!(
                "multiplicity {m} exceeds degree {degree} at class {i}"
            )));
        }
        mult.push(m as i64);
    }
    if mult.iter().sum::<i64>() != degree as i64 {
        return Err(Error::SplitFailed(format!("multiplicities at class {i} do not sum to the degree")));
    }
    Ok(CyclotomicValue::new(n as u32, mult))
}

#[derive(Clone, Debug, Default)]
pub struct GallagherProduct {
    pub beta: usize,
    /// Index of `βψ` in the table when it is irreducible.
    pub image: Option<usize>,
    pub irreducible: bool,
}

#[derive(Clone, Debug, Default)]
pub struct GallagherReport {
    pub restriction_irreducible: bool,
    pub products: Vec<GallagherProduct>,
    pub distinct: bool,
}

impl GallagherReport {
    pub fn passed(&self) -> bool {
        self.restriction_irreducible
            && self.distinct
            && self.products.iter().all(|p| p.irreducible && p.image.is_some())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ELEMENT_BOUND as B;
    use crate::perm::Perm;

    fn group(n: usize, gens: &[&str]) -> Group {
        Group::new(
            n,
            gens.iter().map(|s| Perm::parse_cycles(s, n).unwrap()).collect(),
        )
        .unwrap()
    }

    fn sorted(mut v: Vec<u64>) -> Vec<u64> {
        v.sort_unstable();
        v
    }

    #[test]
    fn cyclic_two() {
        let t = CharacterTable::of_group(&group(2, &["(1 2)"]), B).unwrap();
        let ints: Vec<Vec<i64>> = t
            .characters()
            .iter()
            .map(|c| c.values().iter().map(|v| v.as_integer().unwrap()).collect())
            .collect();
        assert_eq!(ints, vec![vec![1, 1], vec![1, -1]]);
    }

    #[test]
    fn dixon_prime_choice() {
        // A5: exponent 30, 2*sqrt(60) ≈ 15.5
        assert_eq!(dixon_prime(30, 60).unwrap(), 31);
        assert_eq!(dixon_prime(2, 2).unwrap(), 3);
    }

    #[test]
    fn a5_table() {
        let t = CharacterTable::of_group(&group(5, &["(1 2 3 4 5)", "(1 2 3)"]), B).unwrap();
        assert_eq!(t.degrees(), vec![1, 3, 3, 4, 5]);
        assert_eq!(t.principal(), *t.character(0).class_function());
        for a in t.characters() {
            for b in t.characters() {
                let ip = t.inner_product(a.class_function(), b.class_function()).unwrap();
                let expect = if a == b { 1 } else { 0 };
                assert_eq!(ip, BigRational::from_integer(expect.into()));
            }
        }
    }

    #[test]
    fn s5_degrees() {
        let t = CharacterTable::of_group(&group(5, &["(1 2 3 4 5)", "(1 2)"]), B).unwrap();
        assert_eq!(sorted(t.degrees()), vec![1, 1, 4, 4, 5, 5, 6]);
    }

    #[test]
    fn tensor_and_restriction_in_s5() {
        let s5 = CharacterTable::of_group(&group(5, &["(1 2 3 4 5)", "(1 2)"]), B).unwrap();
        let a5 = CharacterTable::of_group(&group(5, &["(1 2 3 4 5)", "(1 2 3)"]), B).unwrap();
        let sgn = s5.character(1);
        assert_eq!(sgn.degree(), 1);
        let triv = sgn.class_function().tensor(sgn.class_function());
        assert_eq!(s5.find(&triv), Some(0));
        let fives: Vec<usize> = (0..s5.len()).filter(|&i| s5.character(i).degree() == 5).collect();
        let prod = sgn.class_function().tensor(s5.character(fives[0]).class_function());
        assert_eq!(s5.find(&prod), Some(fives[1]));
        // restriction of a degree-4 character is irreducible
        let four = s5.characters().iter().find(|c| c.degree() == 4).unwrap();
        let res = s5.restrict(four.class_function(), &a5).unwrap();
        assert!(a5.is_irreducible(&res).unwrap());
        assert_eq!(a5.find(&res), Some(3));
        // both degree-5 characters of S5 extend the degree-5 character of A5
        let ext = s5.extensions_of(&a5, a5.character(4)).unwrap();
        assert_eq!(ext, fives);
        let res5 = s5.restrict(s5.character(fives[0]).class_function(), &a5).unwrap();
        assert_eq!(a5.multiplicity(&res5, a5.character(4).class_function()).unwrap(), 1);
        // Gallagher: {1, sgn} times the extension
        let rep = s5.gallagher_check(&a5, s5.character(fives[0])).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.products.len(), 2);
    }

    #[test]
    fn kernels() {
        let s4 = group(4, &["(1 2 3 4)", "(1 2)"]);
        let t = CharacterTable::of_group(&s4, B).unwrap();
        assert_eq!(sorted(t.degrees()), vec![1, 1, 2, 3, 3]);
        let k = t.kernel_subgroup(t.character(0)).unwrap();
        assert_eq!(k.order(), 24);
        let two = t.characters().iter().find(|c| c.degree() == 2).unwrap();
        assert_eq!(t.kernel_subgroup(two).unwrap().order(), 4);
        // regular character contains the principal one exactly once
        let reg = ClassFunction::new(
            (0..t.classes().len())
                .map(|i| {
                    let n = t.classes().element_order(i) as u32;
                    CyclotomicValue::integer(n, if i == 0 { 24 } else { 0 })
                })
                .collect(),
        );
        assert_eq!(t.multiplicity(&reg, &t.principal()).unwrap(), 1);
        assert_eq!(t.decompose(&reg).unwrap(), t.degrees());
    }
}
