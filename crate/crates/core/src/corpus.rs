//! Group definition files and the bundled catalogue.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use crate::chartab::CharacterTable;
use crate::classes::ClassData;
use crate::constructions::{
    central_product, direct_product, fiber_product, find_isomorphism, CentralProduct,
    EpimorphismData,
};
use crate::error::{Error, Result};
use crate::group::{Group, DEFAULT_ELEMENT_BOUND};
use crate::matrix::{perm_from_matrix_group, Action, FiniteField, MatrixGroupSpec};
use crate::perm::Perm;
use crate::structure::{center, is_solvable, quotient_group};

pub const CORPUS_ENV: &str = "CHARDEG_CORPUS";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Perm { degree: usize, gens: Vec<Perm> },
    Matrix(MatrixGroupSpec),
    Direct(String, String),
    /// Central product; each pair gives a generator of `Z(M)` and its partner in `Z(C)`,
    /// in 1-based cycle notation on the respective factor.
    Central {
        m: String,
        c: String,
        zgens: Vec<(String, String)>,
    },
    Fiber(String, String),
}

impl Source {
    pub fn dependencies(&self) -> Vec<&str> {
        match self {
            Source::Perm { .. } | Source::Matrix(_) => vec![],
            Source::Direct(a, b) | Source::Fiber(a, b) => vec![a, b],
            Source::Central { m, c, .. } => vec![m, c],
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expectations {
    pub order: Option<u128>,
    pub center: Option<u128>,
    pub solvable: Option<bool>,
    /// Sorted ascending.
    pub degrees: Option<Vec<u64>>,
    /// `G/Z(G)` has the class profile of this catalogue group.
    pub central_quotient: Option<String>,
}

impl Expectations {
    pub fn is_empty(&self) -> bool {
        *self == Expectations::default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub name: String,
    pub source: Source,
    pub expect: Expectations,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("expected a number, found `{tok}`")))
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Default)]
struct Draft {
    name: Option<String>,
    perm_degree: Option<usize>,
    mat: Option<(u32, u32, usize)>,
    poly: Option<Vec<u32>>,
    action: Option<Action>,
    gens: Vec<(usize, String)>,
    zgens: Vec<(String, String)>,
    product: Option<(String, String, String)>,
    expect: Expectations,
}

/// Parses the line-oriented group format.
pub fn parse_group_file(text: &str) -> Result<GroupSpec> {
    let mut d = Draft::default();
    let mut kind_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        let toks: Vec<&str> = rest.split_whitespace().collect();
        let set_kind = |d: &Draft, kind_line: &mut usize| -> Result<()> {
            if d.perm_degree.is_some() || d.mat.is_some() || d.product.is_some() {
                return Err(parse_err(ln, "group kind given twice"));
            }
            *kind_line = ln;
            Ok(())
        };
        match key {
            "name" => {
                if toks.len() != 1 || !valid_name(toks[0]) {
                    return Err(parse_err(ln, "name must be one identifier of [A-Za-z0-9_]"));
                }
                if d.name.is_some() {
                    return Err(parse_err(ln, "name given twice"));
                }
                d.name = Some(toks[0].to_string());
            }
            "perm" => {
                set_kind(&d, &mut kind_line)?;
                if toks.len() != 1 {
                    return Err(parse_err(ln, "usage: perm <degree>"));
                }
                let n: usize = parse_num(toks[0], ln)?;
                if n == 0 {
                    return Err(parse_err(ln, "degree must be at least 1"));
                }
                d.perm_degree = Some(n);
            }
            "mat" => {
                set_kind(&d, &mut kind_line)?;
                if toks.len() != 3 {
                    return Err(parse_err(ln, "usage: mat <p> <k> <n>"));
                }
                d.mat = Some((
                    parse_num(toks[0], ln)?,
                    parse_num(toks[1], ln)?,
                    parse_num(toks[2], ln)?,
                ));
            }
            "poly" => {
                d.poly = Some(toks.iter().map(|t| parse_num(t, ln)).collect::<Result<_>>()?);
            }
            "action" => {
                d.action = Some(match rest {
                    "vectors" => Action::Vectors,
                    "projective" => Action::Projective,
                    _ => return Err(parse_err(ln, "action must be `vectors` or `projective`")),
                });
            }
            "gen" => d.gens.push((ln, rest.to_string())),
            "direct" | "central" | "fiber" => {
                set_kind(&d, &mut kind_line)?;
                if toks.len() != 2 || !toks.iter().all(|t| valid_name(t)) {
                    return Err(parse_err(ln, format!("usage: {key} <group> <group>")));
                }
                d.product = Some((key.to_string(), toks[0].to_string(), toks[1].to_string()));
            }
            "zgen" => {
                let Some((a, b)) = rest.split_once('|') else {
                    return Err(parse_err(ln, "usage: zgen <cycles> | <cycles>"));
                };
                d.zgens.push((a.trim().to_string(), b.trim().to_string()));
            }
            "expect" => {
                let Some((&what, vals)) = toks.split_first() else {
                    return Err(parse_err(ln, "usage: expect <field> <value>"));
                };
                let e = &mut d.expect;
                match (what, vals) {
                    ("order", [v]) => e.order = Some(parse_num(v, ln)?),
                    ("center", [v]) => e.center = Some(parse_num(v, ln)?),
                    ("solvable", ["true"]) => e.solvable = Some(true),
                    ("solvable", ["false"]) => e.solvable = Some(false),
                    ("degrees", vs) if !vs.is_empty() => {
                        let mut ds: Vec<u64> =
                            vs.iter().map(|v| parse_num(v, ln)).collect::<Result<_>>()?;
                        ds.sort_unstable();
                        e.degrees = Some(ds);
                    }
                    ("central-quotient", [v]) if valid_name(v) => {
                        e.central_quotient = Some(v.to_string())
                    }
                    _ => return Err(parse_err(ln, format!("malformed expectation `{rest}`"))),
                }
            }
            _ => return Err(parse_err(ln, format!("unknown keyword `{key}`"))),
        }
    }
    let name = d.name.ok_or_else(|| parse_err(1, "missing `name` line"))?;
    let only = |ok: bool, what: &str| -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(parse_err(kind_line, format!("`{what}` does not apply to this group kind")))
        }
    };
    let source = if let Some(degree) = d.perm_degree {
        only(d.poly.is_none() && d.action.is_none() && d.zgens.is_empty(), "poly/action/zgen")?;
        let gens = d
            .gens
            .iter()
            .map(|(ln, g)| Perm::parse_cycles(g, degree).map_err(|m| parse_err(*ln, m)))
            .collect::<Result<_>>()?;
        Source::Perm { degree, gens }
    } else if let Some((p, k, n)) = d.mat {
        only(d.zgens.is_empty(), "zgen")?;
        let field = FiniteField::new(p, k, d.poly).map_err(|e| parse_err(kind_line, e.to_string()))?;
        let mut generators = Vec::new();
        for (ln, g) in &d.gens {
            let entries: Vec<u32> = g
                .split_whitespace()
                .map(|t| parse_num(t, *ln))
                .collect::<Result<_>>()?;
            if entries.len() != n * n {
                return Err(parse_err(*ln, format!("matrix needs {} entries", n * n)));
            }
            if entries.iter().any(|&x| x >= field.size()) {
                return Err(parse_err(*ln, "entry outside the field"));
            }
            if crate::matrix::determinant(&field, n, &entries) == 0 {
                return Err(parse_err(*ln, "singular matrix"));
            }
            generators.push(entries);
        }
        Source::Matrix(MatrixGroupSpec {
            field,
            dim: n,
            generators,
            action: d.action.unwrap_or(Action::Vectors),
        })
    } else if let Some((kind, a, b)) = d.product {
        only(d.gens.is_empty() && d.poly.is_none() && d.action.is_none(), "gen/poly/action")?;
        match kind.as_str() {
            "direct" => {
                only(d.zgens.is_empty(), "zgen")?;
                Source::Direct(a, b)
            }
            "fiber" => {
                only(d.zgens.is_empty(), "zgen")?;
                Source::Fiber(a, b)
            }
            _ => Source::Central {
                m: a,
                c: b,
                zgens: d.zgens,
            },
        }
    } else {
        return Err(parse_err(1, "missing `perm`, `mat` or product line"));
    };
    let spec = GroupSpec {
        name,
        source,
        expect: d.expect,
    };
    Ok(spec)
}

/// Canonical text form; parsing it gives back the same spec.
pub fn serialize(spec: &GroupSpec) -> String {
    let mut s = String::new();
    writeln!(s, "name {}", spec.name).unwrap();
    match &spec.source {
        Source::Perm { degree, gens } => {
            writeln!(s, "perm {degree}").unwrap();
            for g in gens {
                writeln!(s, "gen {}", g.to_cycle_string()).unwrap();
            }
        }
        Source::Matrix(m) => {
            let f = &m.field;
            writeln!(s, "mat {} {} {}", f.characteristic(), f.degree(), m.dim).unwrap();
            if f.degree() > 1 {
                let poly: Vec<String> = f.modulus().iter().map(|c| c.to_string()).collect();
                writeln!(s, "poly {}", poly.join(" ")).unwrap();
            }
            writeln!(s, "action {}", m.action.name()).unwrap();
            for g in &m.generators {
                let e: Vec<String> = g.iter().map(|c| c.to_string()).collect();
                writeln!(s, "gen {}", e.join(" ")).unwrap();
            }
        }
        Source::Direct(a, b) => writeln!(s, "direct {a} {b}").unwrap(),
        Source::Fiber(a, b) => writeln!(s, "fiber {a} {b}").unwrap(),
        Source::Central { m, c, zgens } => {
            writeln!(s, "central {m} {c}").unwrap();
            for (a, b) in zgens {
                writeln!(s, "zgen {a} | {b}").unwrap();
            }
        }
    }
    let e = &spec.expect;
    if let Some(o) = e.order {
        writeln!(s, "expect order {o}").unwrap();
    }
    if let Some(z) = e.center {
        writeln!(s, "expect center {z}").unwrap();
    }
    if let Some(b) = e.solvable {
        writeln!(s, "expect solvable {b}").unwrap();
    }
    if let Some(ds) = &e.degrees {
        let ds: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
        writeln!(s, "expect degrees {}", ds.join(" ")).unwrap();
    }
    if let Some(q) = &e.central_quotient {
        writeln!(s, "expect central-quotient {q}").unwrap();
    }
    s
}

/// A constructed group together with construction data needed by later checks.
#[derive(Clone, Debug)]
pub struct Built {
    pub group: Group,
    pub central: Option<CentralProduct>,
}

/// Builds a spec, resolving product operands through `lookup`.
pub fn build(spec: &GroupSpec, lookup: &dyn Fn(&str) -> Result<Arc<Group>>) -> Result<Built> {
    let bound = DEFAULT_ELEMENT_BOUND;
    let plain = |group| Built {
        group,
        central: None,
    };
    Ok(match &spec.source {
        Source::Perm { degree, gens } => plain(Group::new(*degree, gens.clone())?),
        Source::Matrix(m) => plain(perm_from_matrix_group(m)?),
        Source::Direct(a, b) => plain(direct_product(&*lookup(a)?, &*lookup(b)?)?),
        Source::Fiber(a, b) => plain(fiber_over_central_quotients(&*lookup(a)?, &*lookup(b)?, bound)?),
        Source::Central { m, c, zgens } => {
            let (mg, cg) = (lookup(m)?, lookup(c)?);
            let mut zm = Vec::new();
            let mut zc = Vec::new();
            for (a, b) in zgens {
                zm.push(Perm::parse_cycles(a, mg.degree()).map_err(Error::Invalid)?);
                zc.push(Perm::parse_cycles(b, cg.degree()).map_err(Error::Invalid)?);
            }
            let cp = central_product(&mg, &cg, &zm, &zc, bound)?;
            Built {
                group: cp.group.clone(),
                central: Some(cp),
            }
        }
    })
}

/// `A ×_Q B` where `Q ≅ A/Z(A) ≅ B/Z(B)`.
pub fn fiber_over_central_quotients(a: &Group, b: &Group, bound: usize) -> Result<Group> {
    let za = center(a, &ClassData::new(a, bound)?)?;
    let zb = center(b, &ClassData::new(b, bound)?)?;
    let qa = quotient_group(a, &za, bound)?;
    let qb = quotient_group(b, &zb, bound)?;
    let iso = find_isomorphism(&qb.group, &qa.group, bound)?.ok_or_else(|| {
        Error::NotIsomorphism("central quotients are not isomorphic".into())
    })?;
    let pa = EpimorphismData::from_quotient(a, &qa);
    let images = qb
        .generator_images
        .iter()
        .map(|x| iso.apply(x).cloned().expect("total map"))
        .collect();
    let pb = EpimorphismData {
        source_generators: b.generators().to_vec(),
        target: qa.group.clone(),
        images,
    };
    fiber_product(a, b, &pa, &pb)
}

/// A catalogue group with lazily computed class data and character table.
#[derive(Debug)]
pub struct Entry {
    pub spec: GroupSpec,
    pub group: Arc<Group>,
    pub central: Option<CentralProduct>,
    classes: OnceLock<Arc<ClassData>>,
    table: OnceLock<Arc<CharacterTable>>,
}

impl Entry {
    pub fn new(spec: GroupSpec, built: Built) -> Self {
        Entry {
            spec,
            group: Arc::new(built.group),
            central: built.central,
            classes: OnceLock::new(),
            table: OnceLock::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.spec.name
    }

    pub fn classes(&self) -> Result<Arc<ClassData>> {
        if let Some(c) = self.classes.get() {
            return Ok(c.clone());
        }
        let c = Arc::new(ClassData::new(&self.group, DEFAULT_ELEMENT_BOUND)?);
        Ok(self.classes.get_or_init(|| c).clone())
    }

    pub fn table(&self) -> Result<Arc<CharacterTable>> {
        if let Some(t) = self.table.get() {
            return Ok(t.clone());
        }
        let t = Arc::new(CharacterTable::compute(self.group.clone(), self.classes()?)?);
        Ok(self.table.get_or_init(|| t).clone())
    }
}

/// Sorted multiset of `(element order, class size)`.
pub fn class_profile(classes: &ClassData) -> Vec<(u64, usize)> {
    let mut p: Vec<_> = (0..classes.len())
        .map(|i| (classes.element_order(i), classes.size(i)))
        .collect();
    p.sort_unstable();
    p
}

#[derive(Debug)]
pub struct Catalogue {
    entries: Vec<Entry>,
    index: HashMap<String, usize>,
}

impl Catalogue {
    /// `$CHARDEG_CORPUS`, or the bundled corpus directory.
    pub fn default_dir() -> PathBuf {
        std::env::var_os(CORPUS_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/corpus")))
    }

    pub fn load_default() -> Result<Self> {
        Self::load(&Self::default_dir())
    }

    /// Parses every `*.grp` file in `dir`, builds all groups and validates expectations.
    pub fn load(dir: &Path) -> Result<Self> {
        let mut specs = BTreeMap::new();
        let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "grp"))
            .collect();
        paths.sort();
        for path in paths {
            let text = std::fs::read_to_string(&path)?;
            let spec = parse_group_file(&text).map_err(|e| Error::Validation {
                name: path.display().to_string(),
                msg: e.to_string(),
            })?;
            if specs.insert(spec.name.clone(), spec).is_some() {
                return Err(Error::Validation {
                    name: path.display().to_string(),
                    msg: "duplicate group name".into(),
                });
            }
        }
        let cat = Self::from_specs(specs.into_values().collect())?;
        cat.validate()?;
        Ok(cat)
    }

    /// Builds specs in dependency order; independent groups are built in parallel.
    pub fn from_specs(specs: Vec<GroupSpec>) -> Result<Self> {
        let names: HashMap<&str, ()> = specs.iter().map(|s| (s.name.as_str(), ())).collect();
        for s in &specs {
            for dep in s.source.dependencies() {
                if !names.contains_key(dep) {
                    return Err(Error::Validation {
                        name: s.name.clone(),
                        msg: format!("unknown group `{dep}`"),
                    });
                }
            }
        }
        let mut built: HashMap<String, Arc<Group>> = HashMap::new();
        let mut done: Vec<Entry> = Vec::new();
        let mut pending: Vec<GroupSpec> = specs;
        while !pending.is_empty() {
            let (ready, rest): (Vec<_>, Vec<_>) = pending
                .into_iter()
                .partition(|s| s.source.dependencies().iter().all(|d| built.contains_key(*d)));
            if ready.is_empty() {
                return Err(Error::Validation {
                    name: rest[0].name.clone(),
                    msg: "cyclic product dependencies".into(),
                });
            }
            let lookup = |n: &str| {
                built
                    .get(n)
                    .cloned()
                    .ok_or_else(|| Error::UnknownGroup(n.to_string()))
            };
            let results: Vec<Result<Entry>> = ready
                .into_par_iter()
                .map(|s| {
                    let b = build(&s, &lookup).map_err(|e| Error::Validation {
                        name: s.name.clone(),
                        msg: e.to_string(),
                    })?;
                    Ok(Entry::new(s, b))
                })
                .collect();
            for r in results {
                let e = r?;
                built.insert(e.spec.name.clone(), e.group.clone());
                done.push(e);
            }
            pending = rest;
        }
        done.sort_by(|a, b| a.spec.name.cmp(&b.spec.name));
        let index = done
            .iter()
            .enumerate()
            .map(|(i, e)| (e.spec.name.clone(), i))
            .collect();
        Ok(Catalogue {
            entries: done,
            index,
        })
    }

    /// Checks every expectation block; nonsolvable groups must carry a complete one.
    pub fn validate(&self) -> Result<()> {
        self.entries
            .par_iter()
            .map(|e| {
                self.validate_entry(e).map_err(|err| match err {
                    v @ Error::Validation { .. } => v,
                    other => Error::Validation {
                        name: e.name().to_string(),
                        msg: other.to_string(),
                    },
                })
            })
            .collect::<Result<Vec<()>>>()?;
        Ok(())
    }

    fn validate_entry(&self, e: &Entry) -> Result<()> {
        let fail = |msg: String| Error::Validation {
            name: e.name().to_string(),
            msg,
        };
        let x = &e.spec.expect;
        let g = &e.group;
        if let Some(o) = x.order {
            if g.order() != o {
                return Err(fail(format!("order {} but expected {o}", g.order())));
            }
        }
        let solvable = is_solvable(g)?;
        if let Some(s) = x.solvable {
            if s != solvable {
                return Err(fail(format!("solvable is {solvable} but expected {s}")));
            }
        }
        if !solvable
            && (x.order.is_none() || x.center.is_none() || x.solvable.is_none() || x.degrees.is_none())
        {
            return Err(fail(
                "nonsolvable entries need expected order, center, solvable and degrees".into(),
            ));
        }
        if let Some(z) = x.center {
            let zo = center(g, &*e.classes()?)?.order();
            if zo != z {
                return Err(fail(format!("center has order {zo} but expected {z}")));
            }
        }
        if let Some(ds) = &x.degrees {
            let mut got = e.table()?.degrees();
            got.sort_unstable();
            if &got != ds {
                return Err(fail(format!("degrees {got:?} but expected {ds:?}")));
            }
        }
        if let Some(qname) = &x.central_quotient {
            let other = self.get(qname).ok_or_else(|| fail(format!("unknown group `{qname}`")))?;
            let z = center(g, &*e.classes()?)?;
            let q = quotient_group(g, &z, DEFAULT_ELEMENT_BOUND)?;
            let qc = ClassData::new(&q.group, DEFAULT_ELEMENT_BOUND)?;
            if class_profile(&qc) != class_profile(&*other.classes()?) {
                return Err(fail(format!("G/Z(G) does not have the class profile of {qname}")));
            }
        }
        Ok(())
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&Entry> {
        self.index.get(name).map(|&i| &self.entries[i])
    }

    pub fn require(&self, name: &str) -> Result<&Entry> {
        self.get(name)
            .ok_or_else(|| Error::UnknownGroup(name.to_string()))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Builds a spec whose product operands refer to this catalogue.
    pub fn build_external(&self, spec: GroupSpec) -> Result<Entry> {
        let lookup = |n: &str| Ok(self.require(n)?.group.clone());
        let built = build(&spec, &lookup)?;
        Ok(Entry::new(spec, built))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let t = parse_group_file("name C1\nperm 1\n").unwrap();
        assert_eq!(
            t.source,
            Source::Perm {
                degree: 1,
                gens: vec![]
            }
        );
        let a5 = parse_group_file(
            "# alternating\nname A5\nperm 5\ngen (1 2 3 4 5)\ngen (1 2 3)\nexpect order 60\n",
        )
        .unwrap();
        let built = build(&a5, &|_| unreachable!()).unwrap();
        assert_eq!(Some(built.group.order()), a5.expect.order);
        match parse_group_file("name X\nperm 3\ngen (1 2 3\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_group_file("name X\nperm 3\ngen (1 4)\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_group_file("name X\nmat 5 1 2\ngen 1 2 2 4\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(parse_group_file("name X\nperm 3\nfrobnicate\n").is_err());
    }

    #[test]
    fn round_trip() {
        let text = "name F9\nmat 3 2 2\npoly 2 2 1\naction projective\ngen 1 1 0 1\n\
                    expect order 9\nexpect degrees 1 1 1\nexpect central-quotient C1\n";
        let s = parse_group_file(text).unwrap();
        assert_eq!(parse_group_file(&serialize(&s)).unwrap(), s);
        let c = parse_group_file("name G\ncentral A B\nzgen (1 2) | (3 4)(1 2)\n").unwrap();
        assert_eq!(parse_group_file(&serialize(&c)).unwrap(), c);
    }
}
