//! Named verification checks and theorem scans over a catalogue.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::chartab::{Character, CharacterTable, ClassFunction};
use crate::corpus::{Catalogue, Entry, Source};
use crate::cyclotomic::integer_value;
use crate::error::{Error, Result};
use crate::group::{Group, DEFAULT_ELEMENT_BOUND as BOUND};
use crate::invariants::{
    acd, acd_over, acd_rel, cauchy_schwarz_bound, cauchy_schwarz_holds, irr_over, n_d, render,
    theorem_a_inequality_equiv, DegreeFilter, NormalMode, RationalAverage,
};
use crate::perm::Perm;
use crate::structure::{
    center, is_p_solvable, is_solvable, minimal_normal_subgroups, quotient_group,
};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub description: String,
    pub anchor: String,
    pub passed: bool,
    pub witness: String,
}

impl Check {
    pub fn new(id: &str, description: &str, anchor: &str, passed: bool, witness: String) -> Self {
        Check {
            id: id.to_string(),
            description: description.to_string(),
            anchor: anchor.to_string(),
            passed,
            witness,
        }
    }
}

/// A group attaining a threshold exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Boundary {
    pub group: String,
    pub value: String,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub suite: String,
    pub summary: Summary,
    pub checks: Vec<Check>,
    pub boundary: Vec<Boundary>,
}

impl Report {
    pub fn new(suite: &str, checks: Vec<Check>, boundary: Vec<Boundary>) -> Self {
        let passed = checks.iter().filter(|c| c.passed).count();
        Report {
            schema_version: REPORT_SCHEMA_VERSION,
            suite: suite.to_string(),
            summary: Summary {
                total: checks.len(),
                passed,
                failed: checks.len() - passed,
            },
            checks,
            boundary,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            writeln!(s, "{mark} {}: {} [{}] {}", c.id, c.description, c.anchor, c.witness).unwrap();
        }
        for b in &self.boundary {
            writeln!(s, "BOUNDARY {}: {} {}", b.group, b.value, b.note).unwrap();
        }
        writeln!(
            s,
            "{}: {} checks, {} passed, {} failed",
            self.suite, self.summary.total, self.summary.passed, self.summary.failed
        )
        .unwrap();
        s
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn table(cat: &Catalogue, name: &str) -> Result<Arc<CharacterTable>> {
    cat.require(name)?.table()
}

fn sub_table(g: &Group) -> Result<CharacterTable> {
    CharacterTable::of_group(g, BOUND)
}

fn equals_check(id: &str, desc: &str, anchor: &str, got: &RationalAverage, want: BigRational) -> Check {
    let passed = got.value == want;
    Check::new(id, desc, anchor, passed, format!("{got} (expected {})", render(&want)))
}

/// Nonprincipal irreducible characters of an abelian subgroup's table.
fn nonprincipal(t: &CharacterTable) -> Vec<&Character> {
    t.characters().iter().skip(1).collect()
}

fn central_subgroup_of_order(g: &Group, order: u64) -> Result<Group> {
    let cd = crate::classes::ClassData::new(g, BOUND)?;
    let z = center(g, &cd)?;
    let elems = z.elements(BOUND)?;
    let gens: Vec<Perm> = elems.into_iter().filter(|x| x.order() == order).take(1).collect();
    if gens.is_empty() {
        return Err(Error::Invalid(format!("no central element of order {order}")));
    }
    Group::new(g.degree(), gens)
}

fn degree_list(chars: &[&Character]) -> String {
    let d: Vec<String> = chars.iter().map(|c| c.degree().to_string()).collect();
    format!("[{}]", d.join(","))
}

/// Named checks of exact invariant values and character-table facts.
pub fn paper_check_suite(cat: &Catalogue) -> Result<Report> {
    let mut checks = Vec::new();
    let a5 = table(cat, "A5")?;
    let sl25 = table(cat, "SL2_5")?;
    let a6 = table(cat, "A6")?;

    checks.push(equals_check(
        "acd_A5",
        "average degree of A5",
        "the 16/5 threshold is attained by A5",
        &acd(&a5, DegreeFilter::All),
        rat(16, 5),
    ));
    checks.push(equals_check(
        "acd_A6",
        "average degree of A6",
        "A6 and its covers",
        &acd(&a6, DegreeFilter::All),
        rat(46, 7),
    ));
    checks.push(equals_check(
        "acd_SL25",
        "average degree of SL2(5)",
        "cross-check of the SL2(5) table",
        &acd(&sl25, DegreeFilter::All),
        rat(10, 3),
    ));
    checks.push(equals_check(
        "acde_SL25",
        "average even degree of SL2(5)",
        "the 18/5 threshold is attained by SL2(5)",
        &acd(&sl25, DegreeFilter::Even),
        rat(18, 5),
    ));
    for (name, p) in [("PSL2_5", 5), ("PSL2_7", 7), ("PSL2_11", 11), ("PSL2_13", 13)] {
        checks.push(equals_check(
            &format!("acdp_{name}"),
            &format!("average degree divisible by {p} in PSL2({p})"),
            "acd_p(PSL2(p)) = p",
            &acd(&*table(cat, name)?, DegreeFilter::DivisibleBy(p)),
            rat(p as i64, 1),
        ));
    }
    checks.push(equals_check(
        "acd3_A5",
        "average degree divisible by 3 in A5",
        "acd_3(A5) = 3",
        &acd(&a5, DegreeFilter::DivisibleBy(3)),
        rat(3, 1),
    ));
    let sl_3p = acd(&sl25, DegreeFilter::CoprimeTo(3));
    let a5_3p = acd(&a5, DegreeFilter::CoprimeTo(3));
    checks.push(equals_check(
        "acd3p_SL25",
        "average 3'-degree of SL2(5)",
        "acd_3'(SL2(5)) = 3",
        &sl_3p,
        rat(3, 1),
    ));
    checks.push(equals_check(
        "acd3p_A5",
        "average 3'-degree of A5",
        "acd_3'(SL2(5)) < acd_3'(A5)",
        &a5_3p,
        rat(10, 3),
    ));
    checks.push(Check::new(
        "acd3p_SL25_below_A5",
        "SL2(5) has smaller average 3'-degree than A5",
        "acd_3'(SL2(5)) < acd_3'(A5)",
        sl_3p.value < a5_3p.value,
        format!("{sl_3p} < {a5_3p}"),
    ));

    // SL2(5) relative to its center
    let sl25_g = sl25.group().clone();
    let z = center(&sl25_g, sl25.classes())?;
    checks.push(equals_check(
        "acd_rel_SL25",
        "average degree of Irr(SL2(5)|Z)",
        "acd(M|lambda) = 14/4",
        &acd_rel(&sl25, &z)?,
        rat(7, 2),
    ));
    let zt = sub_table(&z)?;
    for lam in nonprincipal(&zt) {
        checks.push(equals_check(
            "acd_over_SL25",
            "average degree over the nonprincipal central character of SL2(5)",
            "acd(M|lambda) = 14/4",
            &acd_over(&sl25, &zt, lam)?,
            rat(7, 2),
        ));
    }
    for (d, want) in [(1, 0), (2, 2), (4, 1), (6, 1)] {
        let got = n_d(&sl25, d, Some((&z, NormalMode::Relative)))?;
        checks.push(Check::new(
            &format!("n{d}_SL25_Z"),
            &format!("characters of SL2(5) of degree {d} not containing Z in the kernel"),
            "degree counts over a central involution",
            got == want,
            format!("{got} (expected {want})"),
        ));
    }

    // triple cover of A6
    let t3 = table(cat, "3A6")?;
    let z3 = center(t3.group(), t3.classes())?;
    let z3t = sub_table(&z3)?;
    checks.push(equals_check(
        "acd_rel_3A6",
        "average degree of Irr(3.A6|Z)",
        "A6 and its covers",
        &acd_rel(&t3, &z3)?,
        rat(36, 5),
    ));
    for (k, lam) in nonprincipal(&z3t).into_iter().enumerate() {
        let over = irr_over(&t3, &z3t, lam)?;
        let chars: Vec<&Character> = over.iter().map(|&i| t3.character(i)).collect();
        let avg = RationalAverage::of(chars.iter().map(|c| c.degree()));
        let mut c = equals_check(
            &format!("acd_over_3A6_{}", k + 1),
            "average degree over a nonprincipal central character of 3.A6",
            "(3+3+6+9+15)/5 = 36/5",
            &avg,
            rat(36, 5),
        );
        c.witness = format!("{} over {}", c.witness, degree_list(&chars));
        checks.push(c);
    }

    // degree-3 counts
    for (name, want) in [("PSL2_7", 2), ("A5", 2), ("A5xA5", 4)] {
        let got = n_d(&*table(cat, name)?, 3, None)?;
        checks.push(Check::new(
            &format!("deg3_count_{name}"),
            &format!("number of degree-3 characters of {name}"),
            "socle of k simple factors has 2k characters of degree 3",
            got == want,
            format!("{got} (expected {want})"),
        ));
    }

    // kernels of degree-3 characters of covers
    for name in ["SL2_7", "2A6", "6A6"] {
        let t = table(cat, name)?;
        let n = central_subgroup_of_order(t.group(), 2)?;
        let deg3: Vec<&Character> = t.characters().iter().filter(|c| c.degree() == 3).collect();
        let mut ok = true;
        for c in &deg3 {
            ok &= t.kernel_contains(c, &n)?;
        }
        checks.push(Check::new(
            &format!("deg3_kernel_{name}"),
            &format!("central involution of {name} lies in every degree-3 kernel"),
            "kernels of degree-3 characters of covers",
            ok,
            format!("{} degree-3 characters checked", deg3.len()),
        ));
    }
    {
        let n = central_subgroup_of_order(t3.group(), 3)?;
        let faithful = t3
            .characters()
            .iter()
            .filter(|c| c.degree() == 3)
            .map(|c| t3.kernel_contains(c, &n).map(|k| !k))
            .collect::<Result<Vec<bool>>>()?;
        checks.push(Check::new(
            "deg3_faithful_3A6",
            "degree-3 characters of 3.A6 do not contain the center in their kernel",
            "case |Z(M)| = 3 remains for A6",
            !faithful.is_empty() && faithful.iter().all(|&b| b),
            format!("{} degree-3 characters", faithful.len()),
        ));
    }

    // simple groups have no degree-2 characters
    for name in ["A5", "A6", "PSL2_7", "PSL2_11", "PSL2_13", "A7"] {
        let got = n_d(&*table(cat, name)?, 2, None)?;
        checks.push(Check::new(
            &format!("no_deg2_{name}"),
            &format!("{name} has no character of degree 2"),
            "nonabelian simple groups have no degree-2 character",
            got == 0,
            format!("n_2 = {got}"),
        ));
    }

    // extendible characters and Gallagher
    for (big, small, degs) in [("S5", "A5", vec![4u64, 5]), ("PGL2_7", "PSL2_7", vec![7, 8])] {
        let tg = table(cat, big)?;
        let tn = table(cat, small)?;
        for d in degs {
            let theta = tn
                .characters()
                .iter()
                .find(|c| c.degree() == d)
                .ok_or_else(|| Error::Invalid(format!("{small} has no degree {d}")))?;
            let ext = tg.extensions_of(&tn, theta)?;
            checks.push(Check::new(
                &format!("extend_{small}_{d}"),
                &format!("degree-{d} character of {small} extends to {big}"),
                "extendible characters of the simple socle",
                !ext.is_empty(),
                format!("{} extensions", ext.len()),
            ));
            if let Some(&psi) = ext.first() {
                let rep = tg.gallagher_check(&tn, tg.character(psi))?;
                let images: Vec<String> = rep
                    .products
                    .iter()
                    .map(|p| p.image.map_or("?".into(), |i| tg.character(i).degree().to_string()))
                    .collect();
                checks.push(Check::new(
                    &format!("gallagher_{big}_{d}"),
                    &format!("beta -> beta*psi is injective into Irr({big}) for psi of degree {d}"),
                    "Gallagher correspondence",
                    rep.passed(),
                    format!("product degrees [{}]", images.join(",")),
                ));
            }
        }
    }

    // A5 is the smallest nonsolvable group in the catalogue
    {
        let mut smaller_nonsolvable = Vec::new();
        let mut min_nonsolvable: Option<(u128, String)> = None;
        for e in cat.entries() {
            if !is_solvable(&e.group)? {
                if e.group.order() < 60 {
                    smaller_nonsolvable.push(e.name().to_string());
                }
                let cand = (e.group.order(), e.name().to_string());
                if min_nonsolvable.as_ref().is_none_or(|m| cand.0 < m.0) {
                    min_nonsolvable = Some(cand);
                }
            }
        }
        checks.push(Check::new(
            "smallest_nonsolvable",
            "every catalogue group of order below 60 is solvable",
            "A5 is the smallest nonsolvable group",
            smaller_nonsolvable.is_empty(),
            format!(
                "least nonsolvable order {}",
                min_nonsolvable.map_or("none".into(), |m| m.0.to_string())
            ),
        ));
    }

    // empty even-degree average
    {
        let mut odd = Vec::new();
        let mut ok = true;
        for e in cat.entries().iter().filter(|e| e.group.order() % 2 == 1) {
            let a = acd(&*e.table()?, DegreeFilter::Even);
            ok &= a.count == 0 && a.equals(0, 1);
            odd.push(e.name().to_string());
        }
        checks.push(Check::new(
            "acde_odd_order",
            "acd_e of every odd-order catalogue group is 0",
            "the empty average is 0",
            ok && !odd.is_empty(),
            format!("{} odd-order groups", odd.len()),
        ));
    }

    // weighted degree-count form of acd < 16/5
    for name in ["A5", "C2", "SL2_7"] {
        let t = table(cat, name)?;
        checks.push(Check::new(
            &format!("ineq_equiv_{name}"),
            "acd < 16/5 iff the weighted degree-count inequality holds",
            "reformulation of acd(G) < 16/5",
            theorem_a_inequality_equiv(&t),
            format!("acd = {}", acd(&t, DegreeFilter::All)),
        ));
    }

    // central products
    for name in ["SL2_5oC4", "SL2_5oQ8"] {
        checks.extend(central_product_checks(cat, name)?);
    }
    checks.extend(theorem_b_counting(cat, "SL2_5oC4")?);

    Ok(Report::new("paper", checks, Vec::new()))
}

/// Characters of a central factor matching `lambda` on the amalgamated subgroup.
fn transport(
    lambda: &Character,
    zg: &CharacterTable,
    zf: &CharacterTable,
    image: &dyn Fn(&Perm) -> Perm,
) -> Result<usize> {
    let values = zf
        .classes()
        .reps()
        .iter()
        .map(|r| {
            let c = zg.classes().class_of(&image(r))?;
            Ok(lambda.values()[c].clone())
        })
        .collect::<Result<Vec<_>>>()?;
    zf.find(&ClassFunction::new(values))
        .ok_or_else(|| Error::Invalid("transported character is not irreducible".into()))
}

struct CentralData {
    g: Arc<CharacterTable>,
    m: Arc<CharacterTable>,
    c: Arc<CharacterTable>,
    zg: CharacterTable,
    zm: CharacterTable,
    zc: CharacterTable,
    c_image: Group,
    entry_name: String,
}

fn central_data(cat: &Catalogue, name: &str) -> Result<(CentralData, Vec<(usize, usize)>)> {
    let e: &Entry = cat.require(name)?;
    let Source::Central { m, c, zgens } = &e.spec.source else {
        return Err(Error::Invalid(format!("{name} is not a central product")));
    };
    let cp = e
        .central
        .as_ref()
        .ok_or_else(|| Error::Invalid(format!("{name} lacks construction data")))?;
    let (me, ce) = (cat.require(m)?, cat.require(c)?);
    let mut zm = Vec::new();
    let mut zc = Vec::new();
    for (a, b) in zgens {
        zm.push(Perm::parse_cycles(a, me.group.degree()).map_err(Error::Invalid)?);
        zc.push(Perm::parse_cycles(b, ce.group.degree()).map_err(Error::Invalid)?);
    }
    let zm = Group::new(me.group.degree(), zm)?;
    let zc = Group::new(ce.group.degree(), zc)?;
    let zg = cp.m_image(&zm)?;
    let data = CentralData {
        g: e.table()?,
        m: me.table()?,
        c: ce.table()?,
        zg: sub_table(&zg)?,
        zm: sub_table(&zm)?,
        zc: sub_table(&zc)?,
        c_image: cp.c_image(&ce.group)?,
        entry_name: name.to_string(),
    };
    let mut pairs = Vec::new();
    for lam in data.zg.characters() {
        let im = transport(lam, &data.zg, &data.zm, &|x| cp.image_of_m(x))?;
        let ic = transport(lam, &data.zg, &data.zc, &|x| cp.image_of_c(x))?;
        pairs.push((im, ic));
    }
    Ok((data, pairs))
}

fn counts(t: &CharacterTable, idx: &[usize]) -> BTreeMap<u64, usize> {
    let mut m = BTreeMap::new();
    for &i in idx {
        *m.entry(t.character(i).degree()).or_insert(0) += 1;
    }
    m
}

/// Multiplicativity of averages and degree counts over each character of the amalgamated
/// central subgroup.
pub fn central_product_checks(cat: &Catalogue, name: &str) -> Result<Vec<Check>> {
    let (d, pairs) = central_data(cat, name)?;
    let mut out = Vec::new();
    for (k, (lam, &(im, ic))) in d.zg.characters().iter().zip(&pairs).enumerate() {
        let over_g = irr_over(&d.g, &d.zg, lam)?;
        let over_m = irr_over(&d.m, &d.zm, d.zm.character(im))?;
        let over_c = irr_over(&d.c, &d.zc, d.zc.character(ic))?;
        let ag = RationalAverage::of(over_g.iter().map(|&i| d.g.character(i).degree()));
        let am = RationalAverage::of(over_m.iter().map(|&i| d.m.character(i).degree()));
        let ac = RationalAverage::of(over_c.iter().map(|&i| d.c.character(i).degree()));
        out.push(Check::new(
            &format!("central_acd_{}_{}", d.entry_name, k),
            "acd(G|lambda) = acd(M|lambda) * acd(C|lambda)",
            "central product lemma",
            ag.value == &am.value * &ac.value,
            format!("{ag} = {am} * {ac}"),
        ));
        let cg = counts(&d.g, &over_g);
        let cm = counts(&d.m, &over_m);
        let cc = counts(&d.c, &over_c);
        let mut predicted: BTreeMap<u64, usize> = BTreeMap::new();
        for (&d1, &n1) in &cm {
            for (&d2, &n2) in &cc {
                *predicted.entry(d1 * d2).or_insert(0) += n1 * n2;
            }
        }
        out.push(Check::new(
            &format!("central_counts_{}_{}", d.entry_name, k),
            "n_d(G|lambda) = sum over d1*d2 = d of n_d1(M|lambda) n_d2(C|lambda)",
            "bijection Irr(M|Z) x Irr(C|Z) -> Irr(G|Z)",
            cg == predicted,
            format!("{cg:?}"),
        ));
    }
    Ok(out)
}

/// The degree-count identities for a central product `G = M∘C` with `M = SL2(5)`.
pub fn theorem_b_counting(cat: &Catalogue, name: &str) -> Result<Vec<Check>> {
    let (d, _) = central_data(cat, name)?;
    let z = d.zg.group().as_ref().clone();
    let g = &d.g;
    let n = |k: u64| n_d(g, k, None);
    let (n1, n2, n4, n6) = (n(1)?, n(2)?, n(4)?, n(6)?);
    let cz = quotient_group(&d.c_image, &z, BOUND)?;
    let n2_cz = n_d(&sub_table(&cz.group)?, 2, None)?;
    let n2_gz = n_d(g, 2, Some((&z, NormalMode::Relative)))?;
    let id = |s: &str| format!("{s}_{name}");
    Ok(vec![
        Check::new(
            &id("n2_rel"),
            "n_2(G|Z) = 2 n_1(G)",
            "degree counts over a central involution",
            n2_gz == 2 * n1,
            format!("{n2_gz} = 2*{n1}"),
        ),
        Check::new(
            &id("n2_identity"),
            "n_2(G) = n_2(C/Z) + 2 n_1(G)",
            "degree counts over a central involution",
            n2 == n2_cz + 2 * n1,
            format!("{n2} = {n2_cz} + 2*{n1}"),
        ),
        Check::new(
            &id("n4_bound"),
            "n_4(G) >= 2 n_1(G)",
            "degree counts over a central involution",
            n4 >= 2 * n1,
            format!("{n4} >= {}", 2 * n1),
        ),
        Check::new(
            &id("n6_bound"),
            "n_6(G) >= 2 n_2(G) - 3 n_1(G)",
            "degree counts over a central involution",
            n6 as i64 >= 2 * n2 as i64 - 3 * n1 as i64,
            format!("{n6} >= {}", 2 * n2 as i64 - 3 * n1 as i64),
        ),
    ])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanMode {
    /// acd < 16/5 implies solvable.
    TheoremA,
    /// acd_e < 18/5 implies solvable.
    TheoremB,
    /// acd_3' < 3 implies solvable.
    Conjecture3Prime,
    /// 3 acd² < p² implies p-solvable.
    QuestionP(u64),
    /// acd ≤ |G| / Σ χ(1).
    CauchySchwarz,
}

impl ScanMode {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "thmA" => ScanMode::TheoremA,
            "thmB" => ScanMode::TheoremB,
            "conj3p" => ScanMode::Conjecture3Prime,
            "cs" => ScanMode::CauchySchwarz,
            _ => match s.strip_prefix("question:") {
                Some(p) => {
                    let p: u64 = p
                        .parse()
                        .map_err(|_| Error::Invalid(format!("bad prime in `{s}`")))?;
                    if !crate::structure::is_prime(p) {
                        return Err(Error::NotPrime(p));
                    }
                    ScanMode::QuestionP(p)
                }
                None => return Err(Error::Invalid(format!("unknown scan `{s}`"))),
            },
        })
    }

    pub fn name(self) -> String {
        match self {
            ScanMode::TheoremA => "thmA".into(),
            ScanMode::TheoremB => "thmB".into(),
            ScanMode::Conjecture3Prime => "conj3p".into(),
            ScanMode::QuestionP(p) => format!("question:{p}"),
            ScanMode::CauchySchwarz => "cs".into(),
        }
    }
}

fn scan_entry(e: &Entry, mode: ScanMode) -> Result<(Check, Option<Boundary>)> {
    let t = e.table()?;
    let g = &e.group;
    let id = format!("{}/{}", mode.name(), e.name());
    let threshold = |filter: DegreeFilter, num: i64, den: i64, anchor: &str, what: &str| {
        let a = acd(&t, filter);
        let solvable = is_solvable(g)?;
        let below = a.less_than(num, den);
        let boundary = a.equals(num, den).then(|| Boundary {
            group: e.name().to_string(),
            value: a.to_string(),
            note: format!("{what} equals the threshold; solvable = {solvable}"),
        });
        let check = Check::new(
            &id,
            &format!("{what} < {} implies solvable", render(&rat(num, den))),
            anchor,
            !below || solvable,
            format!("{what} = {a}, solvable = {solvable}"),
        );
        Ok::<_, Error>((check, boundary))
    };
    match mode {
        ScanMode::TheoremA => threshold(DegreeFilter::All, 16, 5, "Theorem A", "acd"),
        ScanMode::TheoremB => threshold(DegreeFilter::Even, 18, 5, "Theorem B", "acd_e"),
        ScanMode::Conjecture3Prime => {
            threshold(DegreeFilter::CoprimeTo(3), 3, 1, "3'-degree conjecture", "acd_3'")
        }
        ScanMode::QuestionP(p) => {
            let a = acd(&t, DegreeFilter::All);
            let below = a.below_p_over_sqrt3(p);
            let ps = is_p_solvable(g, p, BOUND)?;
            Ok((
                Check::new(
                    &id,
                    &format!("3 acd^2 < {} implies {p}-solvable", p * p),
                    "p-solvability question",
                    !below || ps,
                    format!("acd = {a}, {p}-solvable = {ps}"),
                ),
                None,
            ))
        }
        ScanMode::CauchySchwarz => {
            let a = acd(&t, DegreeFilter::All);
            let b = cauchy_schwarz_bound(&t);
            let boundary = (a.value == b).then(|| Boundary {
                group: e.name().to_string(),
                value: a.to_string(),
                note: "acd attains |G|/sum of degrees".into(),
            });
            Ok((
                Check::new(
                    &id,
                    "acd <= |G| / sum of degrees",
                    "Cauchy-Schwarz bound",
                    cauchy_schwarz_holds(&t),
                    format!("{a} <= {}", render(&b)),
                ),
                boundary,
            ))
        }
    }
}

/// Evaluates one scan over every catalogue group, in catalogue order.
pub fn theorem_scan(cat: &Catalogue, mode: ScanMode) -> Result<Report> {
    let rows: Vec<(Check, Option<Boundary>)> = cat
        .entries()
        .par_iter()
        .map(|e| scan_entry(e, mode))
        .collect::<Result<_>>()?;
    let (checks, boundary): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
    Ok(Report::new(
        &format!("scan {}", mode.name()),
        checks,
        boundary.into_iter().flatten().collect(),
    ))
}

/// Exact consistency conditions of a computed table. Returns the first failure.
pub fn table_consistency(t: &CharacterTable) -> std::result::Result<(), String> {
    let cd = t.classes();
    let order = t.group_order();
    let r = cd.len();
    if t.len() != r {
        return Err(format!("{} characters for {r} classes", t.len()));
    }
    let degs = t.degrees();
    let sq: u128 = degs.iter().map(|&d| (d as u128) * (d as u128)).sum();
    if sq != order {
        return Err(format!("sum of squared degrees {sq} differs from {order}"));
    }
    if let Some(d) = degs.iter().find(|&&d| order % d as u128 != 0) {
        return Err(format!("degree {d} does not divide {order}"));
    }
    for (i, a) in t.characters().iter().enumerate() {
        for (j, b) in t.characters().iter().enumerate().skip(i) {
            let ip = t
                .inner_product(a.class_function(), b.class_function())
                .map_err(|e| e.to_string())?;
            let want = rat((i == j) as i64, 1);
            if ip != want {
                return Err(format!("<chi_{i}, chi_{j}> = {ip}"));
            }
        }
    }
    let m = t.exponent() as u32;
    let emb: Vec<Vec<Vec<i64>>> = t
        .characters()
        .iter()
        .map(|c| c.values().iter().map(|v| v.embedded(m)).collect())
        .collect();
    let conj: Vec<Vec<Vec<i64>>> = t
        .characters()
        .iter()
        .map(|c| c.values().iter().map(|v| v.conj().embedded(m)).collect())
        .collect();
    let n = m as usize;
    for i in 0..r {
        for j in i..r {
            let mut acc = vec![0i64; n];
            for k in 0..t.len() {
                let (x, y) = (&emb[k][i], &conj[k][j]);
                for (a, &xa) in x.iter().enumerate() {
                    if xa == 0 {
                        continue;
                    }
                    for (b, &yb) in y.iter().enumerate() {
                        acc[(a + b) % n] += xa * yb;
                    }
                }
            }
            let got = integer_value(&acc, m);
            let want = if i == j { cd.centralizer_order(i) as i64 } else { 0 };
            if got != Some(want) {
                return Err(format!("column sum ({i},{j}) = {got:?}, expected {want}"));
            }
        }
    }
    if !cauchy_schwarz_holds(t) {
        return Err("Cauchy-Schwarz bound violated".into());
    }
    Ok(())
}

/// Degrees of characters with `N` in the kernel agree with the table of `G/N`, for every
/// minimal normal subgroup `N`.
pub fn quotient_consistency(t: &CharacterTable) -> std::result::Result<(), String> {
    let g = t.group();
    let mins = minimal_normal_subgroups(g, t.classes()).map_err(|e| e.to_string())?;
    for n in mins {
        let mut inside: Vec<u64> = t
            .characters()
            .iter()
            .filter(|c| t.kernel_contains(c, &n).unwrap_or(false))
            .map(|c| c.degree())
            .collect();
        inside.sort_unstable();
        let q = quotient_group(g, &n, BOUND).map_err(|e| e.to_string())?;
        let mut qd = sub_table(&q.group).map_err(|e| e.to_string())?.degrees();
        qd.sort_unstable();
        if inside != qd {
            return Err(format!(
                "N of order {}: kernel degrees {inside:?}, quotient degrees {qd:?}",
                n.order()
            ));
        }
    }
    Ok(())
}
