use chardeg::corpus::Catalogue;
use chardeg::verify::{paper_check_suite, theorem_scan, ScanMode};

#[test]
fn paper_suite_passes() {
    let cat = Catalogue::load_default().unwrap();
    let report = paper_check_suite(&cat).unwrap();
    print!("{}", report.to_text());
    assert!(report.all_passed());
}

#[test]
fn scans_have_no_violations() {
    let cat = Catalogue::load_default().unwrap();
    for mode in ["thmA", "thmB", "conj3p", "question:2", "question:3", "question:5", "question:7", "question:11", "question:13", "cs"] {
        let report = theorem_scan(&cat, ScanMode::parse(mode).unwrap()).unwrap();
        for c in report.checks.iter().filter(|c| !c.passed) {
            println!("violation {}: {}", c.id, c.witness);
        }
        assert!(report.all_passed(), "{mode}");
        if mode != "cs" {
            for b in &report.boundary {
                println!("{mode} boundary {} {} {}", b.group, b.value, b.note);
            }
        }
    }
}
