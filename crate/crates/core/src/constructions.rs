//! Direct, central and fiber products, plus homomorphisms given by generator images.

use std::collections::{HashMap, VecDeque};

use crate::classes::ClassData;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Perm;
use crate::structure::{quotient_group, Quotient};

/// Largest quotient searched when lifting elements for a fiber product.
pub const WORD_SEARCH_BOUND: usize = 10_000;

/// Places a permutation of `a` and one of `b` side by side on `a.degree() + b.degree()` points.
pub fn pair(x: &Perm, y: &Perm) -> Perm {
    let n = x.degree() + y.degree();
    let off = x.degree();
    let images: Vec<u32> = x
        .images()
        .iter()
        .copied()
        .chain(y.images().iter().map(|&v| v + off as u32))
        .collect();
    debug_assert_eq!(images.len(), n);
    Perm::from_images(images).expect("pair of permutations")
}

/// `A × B` acting on the disjoint union of the two point sets.
pub fn direct_product(a: &Group, b: &Group) -> Result<Group> {
    let ia = a.identity();
    let ib = b.identity();
    let gens = a
        .generators()
        .iter()
        .map(|x| pair(x, &ib))
        .chain(b.generators().iter().map(|y| pair(&ia, y)))
        .collect();
    Group::new(a.degree() + b.degree(), gens)
}

/// `(M × C) / {(z, φ(z)^-1)}` for an isomorphism `φ` between central subgroups.
#[derive(Clone, Debug)]
pub struct CentralProduct {
    pub group: Group,
    /// `M × C` before identification.
    pub product: Group,
    pub quotient: Quotient,
    m_degree: usize,
    c_degree: usize,
}

impl CentralProduct {
    pub fn image_of_m(&self, x: &Perm) -> Perm {
        self.quotient
            .projection
            .image(&pair(x, &Perm::identity(self.c_degree)))
    }

    pub fn image_of_c(&self, y: &Perm) -> Perm {
        self.quotient
            .projection
            .image(&pair(&Perm::identity(self.m_degree), y))
    }

    pub fn m_image(&self, m: &Group) -> Result<Group> {
        Group::new(
            self.group.degree(),
            m.generators().iter().map(|x| self.image_of_m(x)).collect(),
        )
    }

    pub fn c_image(&self, c: &Group) -> Result<Group> {
        Group::new(
            self.group.degree(),
            c.generators().iter().map(|y| self.image_of_c(y)).collect(),
        )
    }
}

fn is_central(g: &Group, z: &Perm) -> bool {
    g.contains(z) && g.generators().iter().all(|x| x.compose(z) == z.compose(x))
}

/// Central product of `m` and `c` amalgamating `<z_m>` with `<z_c>` via `z_m[i] ↦ z_c[i]`.
pub fn central_product(
    m: &Group,
    c: &Group,
    z_m: &[Perm],
    z_c: &[Perm],
    bound: usize,
) -> Result<CentralProduct> {
    if z_m.len() != z_c.len() {
        return Err(Error::NotIsomorphism(
            "generator lists differ in length".into(),
        ));
    }
    if !z_m.iter().all(|z| is_central(m, z)) || !z_c.iter().all(|z| is_central(c, z)) {
        return Err(Error::NotCentral);
    }
    let product = direct_product(m, c)?;
    let anti: Vec<Perm> = z_m
        .iter()
        .zip(z_c)
        .map(|(a, b)| pair(a, &b.inverse()))
        .collect();
    let d = Group::new(product.degree(), anti)?;
    let zm = Group::new(m.degree(), z_m.to_vec())?;
    let zc = Group::new(c.degree(), z_c.to_vec())?;
    if d.order() != zm.order() || d.order() != zc.order() {
        return Err(Error::NotIsomorphism(format!(
            "antidiagonal has order {}, central subgroups {} and {}",
            d.order(),
            zm.order(),
            zc.order()
        )));
    }
    let quotient = quotient_group(&product, &d, bound)?;
    let group = quotient.group.clone();
    debug_assert_eq!(group.order() * d.order(), m.order() * c.order());
    Ok(CentralProduct {
        group,
        product,
        quotient,
        m_degree: m.degree(),
        c_degree: c.degree(),
    })
}

/// A homomorphism onto `target`, given by the images of `source_generators`.
#[derive(Clone, Debug)]
pub struct EpimorphismData {
    pub source_generators: Vec<Perm>,
    pub target: Group,
    pub images: Vec<Perm>,
}

impl EpimorphismData {
    pub fn from_quotient(source: &Group, q: &Quotient) -> Self {
        EpimorphismData {
            source_generators: source.generators().to_vec(),
            target: q.group.clone(),
            images: q.generator_images.clone(),
        }
    }
}

/// Breadth-first search through the target of `e`, recording for each element the source
/// element obtained from the same word. Returns the map and the Schreier generators of the
/// kernel.
fn lift_table(e: &EpimorphismData) -> Result<(HashMap<Perm, Perm>, Vec<Perm>)> {
    if e.target.order() > WORD_SEARCH_BOUND as u128 {
        return Err(Error::WordSearchExhausted(e.target.order() as usize));
    }
    let src_deg = e
        .source_generators
        .first()
        .map(|g| g.degree())
        .unwrap_or(0);
    let mut lifts: HashMap<Perm, Perm> = HashMap::new();
    let id_q = e.target.identity();
    lifts.insert(id_q.clone(), Perm::identity(src_deg));
    let mut queue = VecDeque::from([id_q]);
    let mut order = Vec::new();
    while let Some(q) = queue.pop_front() {
        order.push(q.clone());
        for (s, img) in e.images.iter().enumerate() {
            let q2 = q.compose(img);
            if !lifts.contains_key(&q2) {
                if lifts.len() >= WORD_SEARCH_BOUND {
                    return Err(Error::WordSearchExhausted(lifts.len()));
                }
                let b = lifts[&q].compose(&e.source_generators[s]);
                lifts.insert(q2.clone(), b);
                queue.push_back(q2);
            }
        }
    }
    if lifts.len() as u128 != e.target.order() {
        return Err(Error::NotIsomorphism(
            "generator images do not generate the target".into(),
        ));
    }
    let mut kernel = Vec::new();
    for q in &order {
        for (s, img) in e.images.iter().enumerate() {
            let k = lifts[q]
                .compose(&e.source_generators[s])
                .compose(&lifts[&q.compose(img)].inverse());
            if !k.is_identity() && !kernel.contains(&k) {
                kernel.push(k);
            }
        }
    }
    Ok((lifts, kernel))
}

/// `{(x, y) ∈ A × B : pa(x) = pb(y)}`.
pub fn fiber_product(
    a: &Group,
    b: &Group,
    pa: &EpimorphismData,
    pb: &EpimorphismData,
) -> Result<Group> {
    if !pa.target.same_as(&pb.target) {
        return Err(Error::Invalid(
            "epimorphisms must share their target".into(),
        ));
    }
    let (lifts, kernel_b) = lift_table(pb)?;
    let ia = a.identity();
    let mut gens = Vec::new();
    for (x, q) in pa.source_generators.iter().zip(&pa.images) {
        let y = lifts
            .get(q)
            .ok_or_else(|| Error::NotIsomorphism("image outside target".into()))?;
        gens.push(pair(x, y));
    }
    let mut fiber = Group::new(a.degree() + b.degree(), gens)?;
    let ker: Vec<Perm> = kernel_b.iter().map(|k| pair(&ia, k)).collect();
    fiber = Group::generated_incrementally(fiber.degree(), &[fiber.generators(), &ker].concat())?;
    let expected = a.order() * b.order() / pa.target.order();
    if fiber.order() != expected {
        return Err(Error::NotIsomorphism(format!(
            "fiber product has order {}, expected {expected}",
            fiber.order()
        )));
    }
    Ok(fiber)
}

/// A homomorphism stored as a full element map (desk-scale groups only).
#[derive(Clone, Debug)]
pub struct Homomorphism {
    map: HashMap<Perm, Perm>,
}

impl Homomorphism {
    /// Extends generator images to the whole of `source`; fails if they violate a relation.
    pub fn from_generator_images(source: &Group, images: &[Perm], bound: usize) -> Result<Self> {
        let gens = source.generators();
        let tdeg = images.first().map(|x| x.degree()).unwrap_or(0);
        let mut map: HashMap<Perm, Perm> = HashMap::new();
        map.insert(source.identity(), Perm::identity(tdeg));
        let mut queue = VecDeque::from([source.identity()]);
        while let Some(x) = queue.pop_front() {
            let fx = map[&x].clone();
            for (g, img) in gens.iter().zip(images) {
                let y = x.compose(g);
                let fy = fx.compose(img);
                match map.get(&y) {
                    Some(prev) if *prev != fy => {
                        return Err(Error::NotIsomorphism("relation violated".into()))
                    }
                    Some(_) => {}
                    None => {
                        if map.len() >= bound {
                            return Err(Error::TooLarge {
                                order: source.order(),
                                bound,
                            });
                        }
                        map.insert(y.clone(), fy);
                        queue.push_back(y);
                    }
                }
            }
        }
        Ok(Homomorphism { map })
    }

    pub fn apply(&self, x: &Perm) -> Option<&Perm> {
        self.map.get(x)
    }

    pub fn is_injective(&self) -> bool {
        let mut imgs: Vec<&Perm> = self.map.values().collect();
        imgs.sort();
        imgs.dedup();
        imgs.len() == self.map.len()
    }
}

/// Finds an isomorphism `src → dst` by searching images for the generators of `src`.
/// The first generator is sent to a class representative of `dst`.
pub fn find_isomorphism(src: &Group, dst: &Group, bound: usize) -> Result<Option<Homomorphism>> {
    if src.order() != dst.order() {
        return Ok(None);
    }
    if src.generators().is_empty() {
        return Ok(Some(Homomorphism::from_generator_images(src, &[], bound)?));
    }
    let dst_classes = ClassData::new(dst, bound)?;
    let src_classes = ClassData::new(src, bound)?;
    let reduced = match two_generators(src, &src_classes)? {
        Some(pair) => Group::new(src.degree(), pair)?,
        None => src.clone(),
    };
    let src = &reduced;
    let gens = src.generators();
    let orders: Vec<u64> = gens.iter().map(|g| g.order()).collect();
    let sizes: Vec<usize> = gens
        .iter()
        .map(|g| src_classes.class_of(g).map(|c| src_classes.size(c)))
        .collect::<Result<_>>()?;
    let candidates: Vec<Vec<Perm>> = (0..gens.len())
        .map(|i| {
            if i == 0 {
                (0..dst_classes.len())
                    .filter(|&c| {
                        dst_classes.element_order(c) == orders[0] && dst_classes.size(c) == sizes[0]
                    })
                    .map(|c| dst_classes.rep(c).clone())
                    .collect()
            } else {
                dst_classes
                    .elements()
                    .iter()
                    .enumerate()
                    .filter(|(id, e)| {
                        e.order() == orders[i]
                            && dst_classes.size(dst_classes.class_of_id(*id)) == sizes[i]
                    })
                    .map(|(_, e)| e.clone())
                    .collect()
            }
        })
        .collect();

    let mut choice = Vec::with_capacity(gens.len());
    search(src, dst, gens, &candidates, &mut choice, bound)
}

/// A generating pair `(class representative, element)`, if one exists; high-order
/// representatives are tried first.
fn two_generators(g: &Group, classes: &ClassData) -> Result<Option<Vec<Perm>>> {
    if g.generators().len() <= 2 {
        return Ok(None);
    }
    for c in (0..classes.len()).rev() {
        let x = classes.rep(c);
        for y in classes.elements() {
            if Group::new(g.degree(), vec![x.clone(), y.clone()])?.order() == g.order() {
                return Ok(Some(vec![x.clone(), y.clone()]));
            }
        }
    }
    Ok(None)
}

fn search(
    src: &Group,
    dst: &Group,
    gens: &[Perm],
    candidates: &[Vec<Perm>],
    choice: &mut Vec<Perm>,
    bound: usize,
) -> Result<Option<Homomorphism>> {
    let i = choice.len();
    if i == gens.len() {
        if Group::new(dst.degree(), choice.clone())?.order() != dst.order() {
            return Ok(None);
        }
        return match Homomorphism::from_generator_images(src, choice, bound) {
            Ok(h) if h.is_injective() => Ok(Some(h)),
            Ok(_) | Err(Error::NotIsomorphism(_)) => Ok(None),
            Err(e) => Err(e),
        };
    }
    'cand: for c in &candidates[i] {
        // cheap filter: orders of pairwise products must agree
        for (j, prev) in choice.iter().enumerate() {
            if gens[j].compose(&gens[i]).order() != prev.compose(c).order() {
                continue 'cand;
            }
        }
        choice.push(c.clone());
        if let Some(h) = search(src, dst, gens, candidates, choice, bound)? {
            return Ok(Some(h));
        }
        choice.pop();
    }
    Ok(None)
}
