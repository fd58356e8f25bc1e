//! Conjugacy classes by full element enumeration.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Perm;

/// Conjugacy classes of a group in canonical order: ascending by element order, then class
/// size, then the lexicographically least member (which is also the representative).
#[derive(Clone, Debug)]
pub struct ClassData {
    order: u128,
    elements: Vec<Perm>,
    element_index: HashMap<Perm, u32>,
    class_of: Vec<u32>,
    members: Vec<Vec<u32>>,
    reps: Vec<Perm>,
    sizes: Vec<usize>,
    element_orders: Vec<u64>,
    inverse_class: Vec<usize>,
    /// `power[i][l]` is the class of `rep_i^l` for `0 <= l < order(rep_i)`.
    power: Vec<Vec<usize>>,
}

impl ClassData {
    pub fn new(group: &Group, bound: usize) -> Result<Self> {
        let elements = group.elements(bound)?;
        let element_index: HashMap<Perm, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i as u32))
            .collect();
        let n = elements.len();
        const UNSET: u32 = u32::MAX;
        let mut raw_class = vec![UNSET; n];
        let mut raw_members: Vec<Vec<u32>> = Vec::new();
        for start in 0..n {
            if raw_class[start] != UNSET {
                continue;
            }
            let c = raw_members.len() as u32;
            raw_class[start] = c;
            let mut members = vec![start as u32];
            let mut i = 0;
            while i < members.len() {
                let y = &elements[members[i] as usize];
                for x in group.generators() {
                    let z = y.conjugate_by(x);
                    let zi = element_index[&z];
                    if raw_class[zi as usize] == UNSET {
                        raw_class[zi as usize] = c;
                        members.push(zi);
                    }
                }
                i += 1;
            }
            raw_members.push(members);
        }

        let mut keyed: Vec<(u64, usize, u32, Vec<u32>)> = raw_members
            .into_iter()
            .map(|m| {
                let least = *m
                    .iter()
                    .min_by(|a, b| elements[**a as usize].cmp(&elements[**b as usize]))
                    .unwrap();
                (elements[least as usize].order(), m.len(), least, m)
            })
            .collect();
        keyed.sort_by(|a, b| {
            (a.0, a.1)
                .cmp(&(b.0, b.1))
                .then_with(|| elements[a.2 as usize].cmp(&elements[b.2 as usize]))
        });

        let r = keyed.len();
        let mut class_of = vec![0u32; n];
        let mut members = Vec::with_capacity(r);
        let mut reps = Vec::with_capacity(r);
        let mut sizes = Vec::with_capacity(r);
        let mut element_orders = Vec::with_capacity(r);
        for (ci, (ord, size, least, m)) in keyed.into_iter().enumerate() {
            for &e in &m {
                class_of[e as usize] = ci as u32;
            }
            reps.push(elements[least as usize].clone());
            sizes.push(size);
            element_orders.push(ord);
            members.push(m);
        }

        let mut power = Vec::with_capacity(r);
        for (ci, rep) in reps.iter().enumerate() {
            let ord = element_orders[ci] as usize;
            let mut row = Vec::with_capacity(ord);
            let mut x = Perm::identity(rep.degree());
            for _ in 0..ord {
                row.push(class_of[element_index[&x] as usize] as usize);
                x = x.compose(rep);
            }
            power.push(row);
        }
        let inverse_class = (0..r)
            .map(|i| power[i][element_orders[i] as usize - 1])
            .collect();

        Ok(ClassData {
            order: group.order(),
            elements,
            element_index,
            class_of,
            members,
            reps,
            sizes,
            element_orders,
            inverse_class,
            power,
        })
    }

    pub fn group_order(&self) -> u128 {
        self.order
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn reps(&self) -> &[Perm] {
        &self.reps
    }

    pub fn rep(&self, i: usize) -> &Perm {
        &self.reps[i]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn size(&self, i: usize) -> usize {
        self.sizes[i]
    }

    pub fn centralizer_order(&self, i: usize) -> u128 {
        self.order / self.sizes[i] as u128
    }

    pub fn element_order(&self, i: usize) -> u64 {
        self.element_orders[i]
    }

    pub fn element_orders(&self) -> &[u64] {
        &self.element_orders
    }

    pub fn inverse_class(&self, i: usize) -> usize {
        self.inverse_class[i]
    }

    /// Class of `rep_i^e`.
    pub fn power_class(&self, i: usize, e: u64) -> usize {
        let row = &self.power[i];
        row[(e % row.len() as u64) as usize]
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element_id(&self, g: &Perm) -> Option<usize> {
        self.element_index.get(g).map(|&i| i as usize)
    }

    pub fn class_of_id(&self, id: usize) -> usize {
        self.class_of[id] as usize
    }

    /// Class index of an arbitrary element.
    pub fn class_of(&self, g: &Perm) -> Result<usize> {
        self.element_index
            .get(g)
            .map(|&i| self.class_of[i as usize] as usize)
            .ok_or(Error::NotMember)
    }

    /// Element ids of the members of class `i`.
    pub fn members(&self, i: usize) -> &[u32] {
        &self.members[i]
    }

    pub fn exponent(&self) -> u64 {
        use num_integer::Integer;
        self.element_orders.iter().fold(1, |a, b| a.lcm(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ELEMENT_BOUND;

    fn group(n: usize, gens: &[&str]) -> Group {
        Group::new(
            n,
            gens.iter().map(|s| Perm::parse_cycles(s, n).unwrap()).collect(),
        )
        .unwrap()
    }

    /// Brute-force class sizes via `x^-1 g x` over all `x`.
    fn brute_sizes(g: &Group) -> Vec<usize> {
        let elems = g.elements(DEFAULT_ELEMENT_BOUND).unwrap();
        let mut seen = std::collections::HashSet::new();
        let mut sizes = Vec::new();
        for e in &elems {
            if seen.contains(e) {
                continue;
            }
            let cls: std::collections::HashSet<Perm> =
                elems.iter().map(|x| e.conjugate_by(x)).collect();
            sizes.push(cls.len());
            seen.extend(cls);
        }
        sizes.sort_unstable();
        sizes
    }

    #[test]
    fn a5_classes() {
        let a5 = group(5, &["(1 2 3 4 5)", "(1 2 3)"]);
        let cd = ClassData::new(&a5, DEFAULT_ELEMENT_BOUND).unwrap();
        assert_eq!(cd.len(), 5);
        assert_eq!(cd.sizes(), &[1, 15, 20, 12, 12]);
        assert_eq!(cd.element_orders(), &[1, 2, 3, 5, 5]);
        let mut s = cd.sizes().to_vec();
        s.sort_unstable();
        assert_eq!(s, brute_sizes(&a5));
        // the two 5-classes are swapped by squaring and fixed by inversion
        assert_eq!(cd.power_class(3, 2), 4);
        assert_eq!(cd.inverse_class(3), 3);
        assert_eq!(cd.power_class(3, 5), 0);
    }

    #[test]
    fn cyclic_and_s5() {
        let c3 = group(3, &["(1 2 3)"]);
        let cd = ClassData::new(&c3, DEFAULT_ELEMENT_BOUND).unwrap();
        assert_eq!(cd.sizes(), &[1, 1, 1]);
        assert_eq!(cd.inverse_class(1), 2);
        let s5 = group(5, &["(1 2 3 4 5)", "(1 2)"]);
        let cd = ClassData::new(&s5, DEFAULT_ELEMENT_BOUND).unwrap();
        assert_eq!(cd.len(), 7);
        let mut s = cd.sizes().to_vec();
        s.sort_unstable();
        assert_eq!(s, brute_sizes(&s5));
    }

    #[test]
    fn class_invariants() {
        let g = group(6, &["(1 2 3 4 5 6)", "(1 2)"]);
        let cd = ClassData::new(&g, DEFAULT_ELEMENT_BOUND).unwrap();
        assert_eq!(cd.sizes().iter().sum::<usize>() as u128, g.order());
        for i in 0..cd.len() {
            assert_eq!(g.order() % cd.size(i) as u128, 0);
            assert_eq!(cd.inverse_class(cd.inverse_class(i)), i);
            assert_eq!(cd.power_class(i, 1), i);
            assert_eq!(cd.power_class(i, cd.element_order(i)), 0);
            assert_eq!(cd.class_of(cd.rep(i)).unwrap(), i);
        }
    }
}
