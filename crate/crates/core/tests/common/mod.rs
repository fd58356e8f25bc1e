//! Independent slow-path character table: brute-force class sums, complex common
//! eigenvectors, no Schreier-Sims and no modular arithmetic.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use nalgebra::{Complex, DMatrix};
use rand::{Rng, SeedableRng};

type Elem = Vec<u32>;

fn compose(a: &Elem, b: &Elem) -> Elem {
    a.iter().map(|&x| b[x as usize]).collect()
}

fn inverse(a: &Elem) -> Elem {
    let mut r = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        r[x as usize] = i as u32;
    }
    r
}

pub struct OracleTable {
    /// One representative per class (as image arrays).
    pub reps: Vec<Elem>,
    pub sizes: Vec<usize>,
    /// `rows[χ][class]`.
    pub rows: Vec<Vec<Complex<f64>>>,
}

pub fn closure(gens: &[Elem], degree: usize) -> Vec<Elem> {
    let id: Elem = (0..degree as u32).collect();
    let mut seen: HashSet<Elem> = HashSet::from([id.clone()]);
    let mut out = vec![id];
    let mut i = 0;
    while i < out.len() {
        for g in gens {
            let y = compose(&out[i], g);
            if seen.insert(y.clone()) {
                out.push(y);
            }
        }
        i += 1;
    }
    out
}

pub fn oracle_table(gens: &[Elem], degree: usize, seed: u64) -> OracleTable {
    let elems = closure(gens, degree);
    let order = elems.len();
    let index: HashMap<&Elem, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut class_of = vec![usize::MAX; order];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..order {
        if class_of[i] != usize::MAX {
            continue;
        }
        let c = classes.len();
        let mut members = Vec::new();
        for x in &elems {
            let conj = compose(&compose(&inverse(x), &elems[i]), x);
            let j = index[&conj];
            if class_of[j] == usize::MAX {
                class_of[j] = c;
                members.push(j);
            }
        }
        classes.push(members);
    }
    let r = classes.len();
    // a[i][j][k] = #{(x, y) in C_i x C_j : xy = rep_k}
    let reps: Vec<usize> = classes.iter().map(|m| m[0]).collect();
    let mut a = vec![vec![vec![0f64; r]; r]; r];
    for (i, ci) in classes.iter().enumerate() {
        for &x in ci {
            for (k, &g) in reps.iter().enumerate() {
                let y = compose(&inverse(&elems[x]), &elems[g]);
                a[i][class_of[index[&y]]][k] += 1.0;
            }
        }
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let coeffs: Vec<f64> = (0..r).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let combo = DMatrix::from_fn(r, r, |j, k| (0..r).map(|i| coeffs[i] * a[i][j][k]).sum::<f64>());
    let eig = combo.clone().complex_eigenvalues();
    let cm = combo.map(|x| Complex::new(x, 0.0));
    let identity_class = class_of[index[&(0..degree as u32).collect::<Elem>()]];
    let mut rows = Vec::new();
    for lam in eig.iter() {
        let shifted = &cm - DMatrix::identity(r, r) * *lam;
        let svd = shifted.svd(false, true);
        let v_t = svd.v_t.unwrap();
        let (kmin, _) = svd
            .singular_values
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap();
        let w: Vec<Complex<f64>> = (0..r).map(|k| v_t[(kmin, k)].conj()).collect();
        let w0 = w[identity_class];
        let omega: Vec<Complex<f64>> = w.iter().map(|x| x / w0).collect();
        let s: f64 = (0..r)
            .map(|k| omega[k].norm_sqr() / classes[k].len() as f64)
            .sum();
        let deg = (order as f64 / s).sqrt();
        rows.push(
            (0..r)
                .map(|k| omega[k] * deg / classes[k].len() as f64)
                .collect(),
        );
    }
    OracleTable {
        reps: reps.iter().map(|&i| elems[i].clone()).collect(),
        sizes: classes.iter().map(|c| c.len()).collect(),
        rows,
    }
}

/// Compares the library table of `g` with the oracle up to row order.
pub fn matches_oracle(g: &chardeg::Group, seed: u64) -> Result<(), String> {
    let gens: Vec<Elem> = g.generators().iter().map(|p| p.images().to_vec()).collect();
    let o = oracle_table(&gens, g.degree(), seed);
    let t = chardeg::CharacterTable::of_group(g, chardeg::DEFAULT_ELEMENT_BOUND)
        .map_err(|e| e.to_string())?;
    let cd = t.classes();
    if o.reps.len() != cd.len() {
        return Err(format!("{} oracle classes, {} computed", o.reps.len(), cd.len()));
    }
    let fusion: Vec<usize> = o
        .reps
        .iter()
        .map(|r| cd.class_of(&chardeg::Perm::from_images(r.clone()).unwrap()).unwrap())
        .collect();
    let mut used = vec![false; o.rows.len()];
    for chi in t.characters() {
        let vals: Vec<Complex<f64>> = fusion
            .iter()
            .map(|&c| {
                let (re, im) = chi.values()[c].to_complex();
                Complex::new(re, im)
            })
            .collect();
        let hit = o.rows.iter().enumerate().position(|(i, row)| {
            !used[i] && row.iter().zip(&vals).all(|(a, b)| (a - b).norm() < 1e-6)
        });
        match hit {
            Some(i) => used[i] = true,
            None => return Err(format!("character of degree {} not in oracle", chi.degree())),
        }
    }
    Ok(())
}
