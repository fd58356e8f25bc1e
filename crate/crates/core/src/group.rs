//! Permutation groups backed by a base and strong generating set.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::perm::Perm;

/// Default cap on the number of elements any operation may enumerate.
pub const DEFAULT_ELEMENT_BOUND: usize = 1_000_000;

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    /// Indices into the strong generating set of the generators fixing all earlier base points.
    gens: Vec<usize>,
    orbit: Vec<usize>,
    /// `transversal[b]` maps the base point to `b`.
    transversal: Vec<Option<Perm>>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base] = Some(Perm::identity(degree));
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            transversal,
        }
    }

    fn rebuild(&mut self, strong: &[Perm]) {
        let degree = self.transversal.len();
        self.transversal.iter_mut().for_each(|t| *t = None);
        self.transversal[self.base] = Some(Perm::identity(degree));
        self.orbit.clear();
        self.orbit.push(self.base);
        let mut queue = VecDeque::from([self.base]);
        while let Some(a) = queue.pop_front() {
            for &gi in &self.gens {
                let s = &strong[gi];
                let b = s.image(a);
                if self.transversal[b].is_none() {
                    let t = self.transversal[a].as_ref().unwrap().compose(s);
                    self.transversal[b] = Some(t);
                    self.orbit.push(b);
                    queue.push_back(b);
                }
            }
        }
    }
}

/// A permutation group on `degree` points.
///
/// Subgroups are plain `Group`s on the same point set; helpers such as
/// [`Group::subgroup`] check membership in a parent.
#[derive(Clone, Debug)]
pub struct Group {
    degree: usize,
    gens: Vec<Perm>,
    strong: Vec<Perm>,
    levels: Vec<Level>,
    order: u128,
}

impl Group {
    pub fn trivial(degree: usize) -> Self {
        Group {
            degree,
            gens: Vec::new(),
            strong: Vec::new(),
            levels: Vec::new(),
            order: 1,
        }
    }

    /// Builds the group generated by `gens`. Identity generators are dropped and the
    /// remaining ones sorted by image array, so equal inputs give identical groups.
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<Self> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }
        let mut gens: Vec<Perm> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        gens.sort();
        gens.dedup();
        let mut group = Group {
            degree,
            gens: gens.clone(),
            strong: Vec::new(),
            levels: Vec::new(),
            order: 1,
        };
        group.schreier_sims(gens)?;
        Ok(group)
    }

    /// Subgroup of `parent` generated by `gens`, which must all lie in `parent`.
    pub fn subgroup(parent: &Group, gens: Vec<Perm>) -> Result<Self> {
        for g in &gens {
            if g.degree() != parent.degree {
                return Err(Error::DegreeMismatch {
                    expected: parent.degree,
                    got: g.degree(),
                });
            }
            if !parent.contains(g) {
                return Err(Error::NotMember);
            }
        }
        Group::new(parent.degree, gens)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn strong_generators(&self) -> &[Perm] {
        &self.strong
    }

    /// Sizes of the basic orbits; their product is the group order.
    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Strips `g` through the chain from `start`; returns the residue and the level where
    /// stripping stopped (`levels.len()` if it went all the way).
    fn strip(&self, g: &Perm, start: usize) -> (Perm, usize) {
        let mut h = g.clone();
        for (j, level) in self.levels.iter().enumerate().skip(start) {
            let b = h.image(level.base);
            match &level.transversal[b] {
                Some(u) => h = h.compose(&u.inverse()),
                None => return (h, j),
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, j) = self.strip(g, 0);
        j == self.levels.len() && h.is_identity()
    }

    fn schreier_sims(&mut self, gens: Vec<Perm>) -> Result<()> {
        let degree = self.degree;
        self.strong = gens;
        for gi in 0..self.strong.len() {
            let g = &self.strong[gi];
            if self.levels.iter().all(|l| g.image(l.base) == l.base) {
                let b = g.first_moved().expect("identity generators are filtered");
                self.levels.push(Level::new(b, degree));
            }
        }
        for j in 0..self.levels.len() {
            self.assign_gens(j);
        }

        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let lvl = i as usize;
            let mut restart = None;
            'pairs: for oi in 0..self.levels[lvl].orbit.len() {
                let beta = self.levels[lvl].orbit[oi];
                for gpos in 0..self.levels[lvl].gens.len() {
                    let s = &self.strong[self.levels[lvl].gens[gpos]];
                    let level = &self.levels[lvl];
                    let u_beta = level.transversal[beta].as_ref().unwrap();
                    let u_img = level.transversal[s.image(beta)].as_ref().unwrap();
                    let h = u_beta.compose(s).compose(&u_img.inverse());
                    if h.is_identity() {
                        continue;
                    }
                    let (y, j) = self.strip(&h, lvl + 1);
                    if j < self.levels.len() || !y.is_identity() {
                        if j == self.levels.len() {
                            let b = y.first_moved().unwrap();
                            self.levels.push(Level::new(b, degree));
                        }
                        self.strong.push(y);
                        let idx = self.strong.len() - 1;
                        for l in lvl + 1..=j {
                            self.levels[l].gens.push(idx);
                            let strong = &self.strong;
                            self.levels[l].rebuild(strong);
                        }
                        restart = Some(j);
                        break 'pairs;
                    }
                }
            }
            match restart {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }

        let mut order: u128 = 1;
        for l in &self.levels {
            order = order
                .checked_mul(l.orbit.len() as u128)
                .ok_or(Error::OrderOverflow)?;
        }
        self.order = order;
        Ok(())
    }

    fn assign_gens(&mut self, j: usize) {
        let fixed: Vec<usize> = self.levels[..j].iter().map(|l| l.base).collect();
        let gens: Vec<usize> = self
            .strong
            .iter()
            .enumerate()
            .filter(|(_, s)| fixed.iter().all(|&b| s.image(b) == b))
            .map(|(i, _)| i)
            .collect();
        self.levels[j].gens = gens;
        let strong = &self.strong;
        self.levels[j].rebuild(strong);
    }

    /// All elements, as products of transversal elements. Order is deterministic.
    pub fn elements(&self, bound: usize) -> Result<Vec<Perm>> {
        if self.order > bound as u128 {
            return Err(Error::TooLarge {
                order: self.order,
                bound,
            });
        }
        let mut elems = vec![self.identity()];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(elems.len() * level.orbit.len());
            for x in &elems {
                for &b in &level.orbit {
                    next.push(x.compose(level.transversal[b].as_ref().unwrap()));
                }
            }
            elems = next;
        }
        Ok(elems)
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut orbit = vec![point];
        let mut i = 0;
        while i < orbit.len() {
            let a = orbit[i];
            for g in &self.gens {
                let b = g.image(a);
                if !seen[b] {
                    seen[b] = true;
                    orbit.push(b);
                }
            }
            i += 1;
        }
        orbit
    }

    /// Orbits on all points, each sorted, in order of least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if seen[p] {
                continue;
            }
            let mut o = self.orbit(p);
            for &x in &o {
                seen[x] = true;
            }
            o.sort_unstable();
            out.push(o);
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.gens.iter().enumerate().all(|(i, a)| {
            self.gens[i + 1..]
                .iter()
                .all(|b| a.compose(b) == b.compose(a))
        })
    }

    pub fn is_subgroup_of(&self, other: &Group) -> bool {
        self.degree == other.degree && self.gens.iter().all(|g| other.contains(g))
    }

    /// Equality as sets of permutations.
    pub fn same_as(&self, other: &Group) -> bool {
        self.order == other.order && self.is_subgroup_of(other)
    }

    /// Whether `self` is normalized by every generator of `parent`.
    pub fn is_normal_in(&self, parent: &Group) -> bool {
        self.is_subgroup_of(parent)
            && parent
                .gens
                .iter()
                .all(|x| self.gens.iter().all(|h| self.contains(&h.conjugate_by(x))))
    }

    /// Group generated by `self` and `extra`.
    pub fn closure(&self, extra: &[Perm]) -> Result<Group> {
        let mut gens = self.gens.clone();
        for g in extra {
            if !self.contains(g) {
                gens.push(g.clone());
            }
        }
        if gens.len() == self.gens.len() {
            return Ok(self.clone());
        }
        Group::new(self.degree, gens)
    }

    /// Group generated by `elems`, added one at a time and skipping those already present.
    pub fn generated_incrementally(degree: usize, elems: &[Perm]) -> Result<Group> {
        let mut g = Group::trivial(degree);
        for e in elems {
            if !g.contains(e) {
                let mut gens = g.gens.clone();
                gens.push(e.clone());
                g = Group::new(degree, gens)?;
            }
        }
        Ok(g)
    }

    /// Least common multiple of the element orders (enumerates the group).
    pub fn exponent(&self, bound: usize) -> Result<u64> {
        use num_integer::Integer;
        Ok(self
            .elements(bound)?
            .iter()
            .fold(1u64, |acc, g| acc.lcm(&g.order())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn perm(s: &str, n: usize) -> Perm {
        Perm::parse_cycles(s, n).unwrap()
    }

    /// Closure under multiplication by generators, independent of the chain.
    fn brute_order(degree: usize, gens: &[Perm]) -> usize {
        let mut seen = HashSet::new();
        let id = Perm::identity(degree);
        seen.insert(id.clone());
        let mut stack = vec![id];
        while let Some(x) = stack.pop() {
            for g in gens {
                let y = x.compose(g);
                if seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn trivial_group() {
        let g = Group::new(1, vec![]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.elements(10).unwrap().len(), 1);
    }

    #[test]
    fn a5_and_s4_orders() {
        let a5 = Group::new(5, vec![perm("(1 2 3 4 5)", 5), perm("(1 2 3)", 5)]).unwrap();
        assert_eq!(a5.order(), 60);
        assert_eq!(brute_order(5, a5.generators()), 60);
        let s4 = Group::new(4, vec![perm("(1 2 3 4)", 4), perm("(1 2)", 4)]).unwrap();
        assert_eq!(s4.order(), 24);
        assert_eq!(brute_order(4, s4.generators()), 24);
    }

    #[test]
    fn larger_groups_match_brute_force() {
        let cases = [
            (7, vec!["(1 2 3 4 5 6 7)", "(5 6 7)"]),
            (8, vec!["(1 2 3 4 5 6 7 8)", "(1 2)"]),
            (9, vec!["(1 2 3)(4 5 6)(7 8 9)", "(1 4 7)(2 5 8)(3 6 9)", "(1 2)(4 5)"]),
            (10, vec!["(1 2)(3 4)(5 6)(7 8)", "(1 3 5 7 9)(2 4 6 8 10)"]),
        ];
        for (n, gens) in cases {
            let gens: Vec<Perm> = gens.iter().map(|s| perm(s, n)).collect();
            let g = Group::new(n, gens.clone()).unwrap();
            assert_eq!(g.order() as usize, brute_order(n, &gens), "degree {n}");
            let elems = g.elements(DEFAULT_ELEMENT_BOUND).unwrap();
            let set: HashSet<_> = elems.iter().cloned().collect();
            assert_eq!(set.len(), elems.len());
            assert!(elems.iter().all(|e| g.contains(e)));
        }
    }

    #[test]
    fn membership() {
        let a5 = Group::new(5, vec![perm("(1 2 3 4 5)", 5), perm("(1 2 3)", 5)]).unwrap();
        assert!(a5.contains(&perm("(1 2)(3 4)", 5)));
        assert!(!a5.contains(&perm("(1 2)", 5)));
        assert!(a5.generators().iter().all(|g| a5.contains(g)));
    }

    #[test]
    fn element_bound_enforced() {
        let s6 = Group::new(6, vec![perm("(1 2 3 4 5 6)", 6), perm("(1 2)", 6)]).unwrap();
        assert!(matches!(s6.elements(100), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn deterministic_generators() {
        let a = Group::new(4, vec![perm("(1 2)", 4), perm("(1 2 3 4)", 4)]).unwrap();
        let b = Group::new(4, vec![perm("(1 2 3 4)", 4), perm("(1 2)", 4), perm("()", 4)]).unwrap();
        assert_eq!(a.generators(), b.generators());
    }
}
