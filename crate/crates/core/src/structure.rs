//! Normal structure: closures, derived series, centre, minimal normal subgroups,
//! solvable radical, quotients and p-solvability.

use std::collections::HashMap;

use crate::classes::ClassData;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Perm;

/// Smallest normal subgroup of `g` containing `elems`.
pub fn normal_closure(g: &Group, elems: &[Perm]) -> Result<Group> {
    for e in elems {
        if !g.contains(e) {
            return Err(Error::NotMember);
        }
    }
    let mut h = Group::generated_incrementally(g.degree(), elems)?;
    loop {
        let mut new = Vec::new();
        for x in h.generators() {
            for s in g.generators() {
                let c = x.conjugate_by(s);
                if !h.contains(&c) && !new.contains(&c) {
                    new.push(c);
                }
            }
        }
        if new.is_empty() {
            return Ok(h);
        }
        h = h.closure(&new)?;
    }
}

pub fn derived_subgroup(g: &Group) -> Result<Group> {
    let gens = g.generators();
    let mut comms = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = Perm::commutator(a, b);
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    normal_closure(g, &comms)
}

/// `G, G', G'', ...` ending at the first repeated term.
pub fn derived_series(g: &Group) -> Result<Vec<Group>> {
    let mut series = vec![g.clone()];
    loop {
        let last = series.last().unwrap();
        if last.is_trivial() {
            return Ok(series);
        }
        let d = derived_subgroup(last)?;
        if d.order() == last.order() {
            return Ok(series);
        }
        series.push(d);
    }
}

pub fn is_solvable(g: &Group) -> Result<bool> {
    Ok(derived_series(g)?.last().unwrap().is_trivial())
}

pub fn is_perfect(g: &Group) -> Result<bool> {
    Ok(derived_subgroup(g)?.order() == g.order())
}

/// The subgroup formed by the central classes.
pub fn center(g: &Group, classes: &ClassData) -> Result<Group> {
    let central: Vec<Perm> = (0..classes.len())
        .filter(|&i| classes.size(i) == 1)
        .map(|i| classes.rep(i).clone())
        .collect();
    Group::generated_incrementally(g.degree(), &central)
}

/// All minimal normal subgroups, as the inclusion-minimal normal closures of class
/// representatives. Order follows the first class producing each subgroup.
pub fn minimal_normal_subgroups(g: &Group, classes: &ClassData) -> Result<Vec<Group>> {
    let mut closures: Vec<Group> = Vec::new();
    for i in 1..classes.len() {
        let n = normal_closure(g, std::slice::from_ref(classes.rep(i)))?;
        if !closures.iter().any(|c| c.same_as(&n)) {
            closures.push(n);
        }
    }
    let minimal = closures
        .iter()
        .filter(|n| {
            !closures
                .iter()
                .any(|m| m.order() < n.order() && m.is_subgroup_of(n))
        })
        .cloned()
        .collect();
    Ok(minimal)
}

#[derive(Clone, Debug)]
enum ProjectionKind {
    /// Action on the orbits of the kernel.
    Blocks {
        block_of: Vec<u32>,
        block_reps: Vec<u32>,
    },
    /// Action on right cosets of the kernel.
    Cosets {
        coset_of: HashMap<Perm, u32>,
        reps: Vec<Perm>,
    },
}

/// The natural map from a group onto a permutation realization of a quotient.
#[derive(Clone, Debug)]
pub struct Projection {
    kind: ProjectionKind,
}

impl Projection {
    pub fn degree(&self) -> usize {
        match &self.kind {
            ProjectionKind::Blocks { block_reps, .. } => block_reps.len(),
            ProjectionKind::Cosets { reps, .. } => reps.len(),
        }
    }

    /// Image of an element of the source group.
    pub fn image(&self, g: &Perm) -> Perm {
        match &self.kind {
            ProjectionKind::Blocks {
                block_of,
                block_reps,
            } => Perm::from_images_unchecked(
                block_reps
                    .iter()
                    .map(|&r| block_of[g.image(r as usize)])
                    .collect(),
            ),
            ProjectionKind::Cosets { coset_of, reps } => Perm::from_images_unchecked(
                reps.iter().map(|r| coset_of[&r.compose(g)]).collect(),
            ),
        }
    }
}

/// `G/N` with the projection from `G`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: Group,
    pub projection: Projection,
    /// Image of each generator of the source group, in the source's generator order.
    pub generator_images: Vec<Perm>,
}

impl Quotient {
    /// Preimage in `source` of a subgroup of the quotient.
    pub fn preimage(&self, source: &Group, kernel: &Group, sub: &Group, bound: usize) -> Result<Group> {
        let mut wanted: HashMap<Perm, Option<Perm>> =
            sub.generators().iter().map(|q| (q.clone(), None)).collect();
        let mut missing = wanted.len();
        if missing > 0 {
            for e in source.elements(bound)? {
                let img = self.projection.image(&e);
                if let Some(slot) = wanted.get_mut(&img) {
                    if slot.is_none() {
                        *slot = Some(e);
                        missing -= 1;
                        if missing == 0 {
                            break;
                        }
                    }
                }
            }
        }
        if missing > 0 {
            return Err(Error::NotMember);
        }
        let lifts: Vec<Perm> = sub
            .generators()
            .iter()
            .map(|q| wanted[q].clone().unwrap())
            .collect();
        kernel.closure(&lifts)
    }
}

/// Faithful action of `G/N`. Uses the action on `N`-orbits when its kernel is exactly `N`,
/// otherwise the action on right cosets of `N`.
pub fn quotient_group(g: &Group, n: &Group, bound: usize) -> Result<Quotient> {
    if !n.is_normal_in(g) {
        return Err(Error::NotNormal);
    }
    let index = g.order() / n.order();

    let orbits = n.orbits();
    let mut block_of = vec![0u32; g.degree()];
    for (b, o) in orbits.iter().enumerate() {
        for &x in o {
            block_of[x] = b as u32;
        }
    }
    let block_reps: Vec<u32> = orbits.iter().map(|o| o[0] as u32).collect();
    let projection = Projection {
        kind: ProjectionKind::Blocks {
            block_of,
            block_reps,
        },
    };
    let images: Vec<Perm> = g.generators().iter().map(|x| projection.image(x)).collect();
    let q = Group::new(projection.degree(), images.clone())?;
    if q.order() == index {
        return Ok(Quotient {
            group: q,
            projection,
            generator_images: images,
        });
    }

    let n_elems = n.elements(bound)?;
    let mut coset_of: HashMap<Perm, u32> = HashMap::new();
    let mut reps = Vec::new();
    for e in g.elements(bound)? {
        if coset_of.contains_key(&e) {
            continue;
        }
        let c = reps.len() as u32;
        for x in &n_elems {
            coset_of.insert(x.compose(&e), c);
        }
        reps.push(e);
    }
    let projection = Projection {
        kind: ProjectionKind::Cosets { coset_of, reps },
    };
    let images: Vec<Perm> = g.generators().iter().map(|x| projection.image(x)).collect();
    let q = Group::new(projection.degree(), images.clone())?;
    debug_assert_eq!(q.order(), index);
    Ok(Quotient {
        group: q,
        projection,
        generator_images: images,
    })
}

/// Largest solvable normal subgroup, built by absorbing abelian minimal normal subgroups of
/// successive quotients.
pub fn solvable_radical(g: &Group, bound: usize) -> Result<Group> {
    let mut radical = Group::trivial(g.degree());
    loop {
        let q = quotient_group(g, &radical, bound)?;
        let cd = ClassData::new(&q.group, bound)?;
        let mins = minimal_normal_subgroups(&q.group, &cd)?;
        match mins.into_iter().find(|m| m.is_abelian()) {
            None => return Ok(radical),
            Some(m) => radical = q.preimage(g, &radical, &m, bound)?,
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Whether every chief factor is a p-group or a p'-group.
pub fn is_p_solvable(g: &Group, p: u64, bound: usize) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut current = g.clone();
    loop {
        if current.order() % p as u128 != 0 {
            return Ok(true);
        }
        let cd = ClassData::new(&current, bound)?;
        let mins = minimal_normal_subgroups(&current, &cd)?;
        let n = &mins[0];
        if !n.is_abelian() && n.order() % p as u128 == 0 {
            return Ok(false);
        }
        current = quotient_group(&current, n, bound)?.group;
    }
}

/// For each class of `h`, the class of `g` containing it.
pub fn class_fusion(g_classes: &ClassData, h_classes: &ClassData) -> Result<Vec<usize>> {
    h_classes
        .reps()
        .iter()
        .map(|r| g_classes.class_of(r))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ELEMENT_BOUND as B;

    fn group(n: usize, gens: &[&str]) -> Group {
        Group::new(
            n,
            gens.iter().map(|s| Perm::parse_cycles(s, n).unwrap()).collect(),
        )
        .unwrap()
    }

    fn a5() -> Group {
        group(5, &["(1 2 3 4 5)", "(1 2 3)"])
    }
    fn s4() -> Group {
        group(4, &["(1 2 3 4)", "(1 2)"])
    }
    fn s5() -> Group {
        group(5, &["(1 2 3 4 5)", "(1 2)"])
    }

    #[test]
    fn derived_series_examples() {
        let c6 = group(6, &["(1 2 3 4 5 6)"]);
        let s = derived_series(&c6).unwrap();
        assert_eq!(s.len(), 2);
        let orders: Vec<u128> = derived_series(&s4()).unwrap().iter().map(|g| g.order()).collect();
        assert_eq!(orders, vec![24, 12, 4, 1]);
        let s = derived_series(&a5()).unwrap();
        assert_eq!(s.len(), 1);
        assert!(is_perfect(&a5()).unwrap());
        assert!(!is_solvable(&a5()).unwrap());
        assert!(is_solvable(&s4()).unwrap());
    }

    #[test]
    fn normal_closure_examples() {
        let s4 = s4();
        let t = normal_closure(&s4, &[Perm::identity(4)]).unwrap();
        assert_eq!(t.order(), 1);
        let a4 = normal_closure(&s4, &[Perm::parse_cycles("(1 2 3)", 4).unwrap()]).unwrap();
        assert_eq!(a4.order(), 12);
        let a5 = a5();
        for g in a5.elements(B).unwrap().iter().filter(|g| !g.is_identity()) {
            assert_eq!(normal_closure(&a5, &[g.clone()]).unwrap().order(), 60);
        }
        assert!(normal_closure(&a5, &[Perm::parse_cycles("(1 2)", 5).unwrap()]).is_err());
    }

    #[test]
    fn centre_and_minimal_normals() {
        let a5 = a5();
        let cd = ClassData::new(&a5, B).unwrap();
        assert_eq!(center(&a5, &cd).unwrap().order(), 1);
        let v4 = group(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        let cd = ClassData::new(&v4, B).unwrap();
        assert_eq!(center(&v4, &cd).unwrap().order(), 4);
        let mins = minimal_normal_subgroups(&v4, &cd).unwrap();
        assert_eq!(mins.len(), 3);
        assert!(mins.iter().all(|m| m.order() == 2));
        let t = Group::trivial(1);
        let cd = ClassData::new(&t, B).unwrap();
        assert!(minimal_normal_subgroups(&t, &cd).unwrap().is_empty());
    }

    #[test]
    fn quotients() {
        let s4 = s4();
        let v4 = group(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        let q = quotient_group(&s4, &v4, B).unwrap();
        assert_eq!(q.group.order(), 6);
        assert!(!q.group.is_abelian());
        let q = quotient_group(&s4, &s4, B).unwrap();
        assert_eq!(q.group.order(), 1);
        let s3 = group(4, &["(1 2 3)", "(1 2)"]);
        assert!(matches!(quotient_group(&s4, &s3, B), Err(Error::NotNormal)));
        // projection is a homomorphism
        let q = quotient_group(&s4, &v4, B).unwrap();
        let e = s4.elements(B).unwrap();
        for a in e.iter().take(8) {
            for b in e.iter().skip(5).take(8) {
                assert_eq!(
                    q.projection.image(&a.compose(b)),
                    q.projection.image(a).compose(&q.projection.image(b))
                );
            }
        }
    }

    #[test]
    fn coset_fallback() {
        // C4 regular: the subgroup of order 2 has orbits {1,3},{2,4}; action on them has kernel C2
        let c4xc2 = group(6, &["(1 2 3 4)", "(5 6)"]);
        // antidiagonal subgroup <(1 3)(2 4)(5 6)>: its orbits give kernel of order 4
        let d = group(6, &["(1 3)(2 4)(5 6)"]);
        let q = quotient_group(&c4xc2, &d, B).unwrap();
        assert_eq!(q.group.order(), 4);
        assert_eq!(q.projection.degree(), 4);
    }

    #[test]
    fn radical_and_p_solvability() {
        assert_eq!(solvable_radical(&s4(), B).unwrap().order(), 24);
        assert_eq!(solvable_radical(&a5(), B).unwrap().order(), 1);
        assert_eq!(solvable_radical(&s5(), B).unwrap().order(), 1);
        for p in [2, 3, 5] {
            assert!(!is_p_solvable(&a5(), p, B).unwrap());
            assert!(is_p_solvable(&s4(), p, B).unwrap());
        }
        assert!(is_p_solvable(&a5(), 7, B).unwrap());
        assert!(is_p_solvable(&s5(), 7, B).unwrap());
        assert!(!is_p_solvable(&s5(), 2, B).unwrap());
        assert!(matches!(is_p_solvable(&a5(), 4, B), Err(Error::NotPrime(4))));
    }

    #[test]
    fn fusion_a5_in_s5() {
        let s5 = s5();
        let a5 = a5();
        let cs = ClassData::new(&s5, B).unwrap();
        let ca = ClassData::new(&a5, B).unwrap();
        let f = class_fusion(&cs, &ca).unwrap();
        assert_eq!(f[3], f[4]);
        assert_eq!(cs.size(f[3]), 24);
        let same = class_fusion(&cs, &cs).unwrap();
        assert_eq!(same, (0..cs.len()).collect::<Vec<_>>());
    }
}
