mod common;

use std::time::{Duration, Instant};

use chardeg::corpus::Catalogue;
use chardeg::invariants::{acd, DegreeFilter, RationalAverage};
use chardeg::verify::{paper_check_suite, quotient_consistency, table_consistency, theorem_scan, Report, ScanMode};
use chardeg::{CharacterTable, Group, Perm, DEFAULT_ELEMENT_BOUND as B};

struct Gate {
    failed: Vec<String>,
}

impl Gate {
    fn record(&mut self, id: &str, passed: bool, detail: String) {
        println!("{} {id}: {detail}", if passed { "PASS" } else { "FAIL" });
        if !passed {
            self.failed.push(id.to_string());
        }
    }
}

fn avg(cat: &Catalogue, name: &str, f: DegreeFilter) -> RationalAverage {
    acd(&cat.require(name).unwrap().table().unwrap(), f)
}

fn expect(gate: &mut Gate, id: &str, got: &RationalAverage, num: i64, den: i64) {
    let want = RationalAverage::ratio(num, den);
    gate.record(id, got.value == want, format!("{got} (expected {})", chardeg::invariants::render(&want)));
}

fn suite_checks(gate: &mut Gate, id: &str, report: &Report, prefixes: &[&str]) {
    let picked: Vec<_> = report
        .checks
        .iter()
        .filter(|c| prefixes.iter().any(|p| c.id.starts_with(p)))
        .collect();
    let bad: Vec<_> = picked.iter().filter(|c| !c.passed).map(|c| c.id.clone()).collect();
    gate.record(
        id,
        !picked.is_empty() && bad.is_empty(),
        format!("{} checks, failing {bad:?}", picked.len()),
    );
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t0 = Instant::now();
    let out = f();
    (out, t0.elapsed())
}

fn main() {
    let mut gate = Gate { failed: Vec::new() };
    let cat = Catalogue::load_default().unwrap();

    // 1
    expect(&mut gate, "1.acd_A5", &avg(&cat, "A5", DegreeFilter::All), 16, 5);
    expect(&mut gate, "1.acd_A6", &avg(&cat, "A6", DegreeFilter::All), 46, 7);
    expect(&mut gate, "1.acd_SL2_5", &avg(&cat, "SL2_5", DegreeFilter::All), 10, 3);
    let a5 = Group::new(
        5,
        vec![Perm::parse_cycles("(1 2 3 4 5)", 5).unwrap(), Perm::parse_cycles("(1 2 3)", 5).unwrap()],
    )
    .unwrap();
    let (t, dt) = timed(|| CharacterTable::of_group(&a5, B).unwrap());
    gate.record("1.time_A5", t.len() == 5 && dt < Duration::from_millis(100), format!("{dt:?} < 100ms"));

    // 2
    expect(&mut gate, "2.acde_SL2_5", &avg(&cat, "SL2_5", DegreeFilter::Even), 18, 5);
    let odd: Vec<_> = cat.entries().iter().filter(|e| e.group.order() % 2 == 1).collect();
    let nonzero: Vec<_> = odd
        .iter()
        .filter(|e| !acd(&e.table().unwrap(), DegreeFilter::Even).equals(0, 1))
        .map(|e| e.name().to_string())
        .collect();
    gate.record("2.acde_odd_order", nonzero.is_empty(), format!("{} odd-order groups, nonzero {nonzero:?}", odd.len()));

    // 3
    for p in [5i64, 7, 11, 13] {
        let name = format!("PSL2_{p}");
        expect(&mut gate, &format!("3.acdp_{name}"), &avg(&cat, &name, DegreeFilter::DivisibleBy(p as u64)), p, 1);
    }
    expect(&mut gate, "3.acd3_A5", &avg(&cat, "A5", DegreeFilter::DivisibleBy(3)), 3, 1);

    // 4
    expect(&mut gate, "4.acd3p_SL2_5", &avg(&cat, "SL2_5", DegreeFilter::CoprimeTo(3)), 3, 1);
    expect(&mut gate, "4.acd3p_A5", &avg(&cat, "A5", DegreeFilter::CoprimeTo(3)), 10, 3);

    let report = paper_check_suite(&cat).unwrap();
    // 5
    suite_checks(&mut gate, "5.over_central_lambda", &report, &["acd_over_SL25", "acd_over_3A6_", "acd_rel_SL25", "acd_rel_3A6"]);
    // 6
    suite_checks(&mut gate, "6.central_products", &report, &["central_acd_SL2_5oC4_", "central_counts_SL2_5oC4_", "central_acd_SL2_5oQ8_", "central_counts_SL2_5oQ8_"]);
    // 7
    suite_checks(&mut gate, "7.kernels_and_counts", &report, &["deg3_kernel_SL2_7", "deg3_kernel_6A6", "n1_SL25_Z", "n2_SL25_Z", "n4_SL25_Z", "n6_SL25_Z"]);

    // 8
    let (scans, dt) = timed(|| {
        let cat = Catalogue::load_default().unwrap();
        let mut modes = vec![ScanMode::TheoremA, ScanMode::TheoremB, ScanMode::Conjecture3Prime];
        modes.extend([2, 3, 5, 7, 11, 13].map(ScanMode::QuestionP));
        modes
            .into_iter()
            .map(|m| (m.name(), theorem_scan(&cat, m).unwrap()))
            .collect::<Vec<_>>()
    });
    for (name, r) in &scans {
        let bad: Vec<_> = r.checks.iter().filter(|c| !c.passed).map(|c| c.id.clone()).collect();
        gate.record(&format!("8.scan_{name}"), bad.is_empty(), format!("{} groups, violations {bad:?}", r.checks.len()));
    }
    gate.record("8.time_scan", dt < Duration::from_secs(300), format!("{dt:?} < 300s"));

    // 9
    let mut bad = Vec::new();
    for e in cat.entries() {
        let t = e.table().unwrap();
        if let Err(m) = table_consistency(&t).and_then(|_| quotient_consistency(&t)) {
            bad.push(format!("{}: {m}", e.name()));
        }
    }
    gate.record("9.properties", bad.is_empty(), format!("{} groups, failing {bad:?}", cat.len()));
    let g6 = cat.require("6A6").unwrap().group.clone();
    let (t, dt) = timed(|| CharacterTable::of_group(&g6, B).unwrap());
    gate.record("9.time_6A6", t.group_order() == 2160 && dt < Duration::from_secs(30), format!("{dt:?} < 30s"));
    let (r, dt) = timed(|| paper_check_suite(&Catalogue::load_default().unwrap()).unwrap());
    gate.record("9.time_verify", r.all_passed() && dt < Duration::from_secs(60), format!("{dt:?} < 60s"));

    // 10
    let mut bad = Vec::new();
    let small: Vec<_> = cat.entries().iter().filter(|e| e.group.order() <= 24).collect();
    for e in &small {
        if let Err(m) = common::matches_oracle(&e.group, 17) {
            bad.push(format!("{}: {m}", e.name()));
        }
    }
    gate.record("10.oracle", bad.is_empty(), format!("{} groups, failing {bad:?}", small.len()));

    if !gate.failed.is_empty() {
        eprintln!("failed: {:?}", gate.failed);
        std::process::exit(1);
    }
}
