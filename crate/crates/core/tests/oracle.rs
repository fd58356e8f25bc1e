mod common;

use chardeg::corpus::Catalogue;

#[test]
fn small_catalogue_groups_match_oracle() {
    let cat = Catalogue::load_default().unwrap();
    let mut n = 0;
    for e in cat.entries().iter().filter(|e| e.group.order() <= 24) {
        common::matches_oracle(&e.group, 11).unwrap_or_else(|m| panic!("{}: {m}", e.name()));
        n += 1;
    }
    assert!(n >= 40, "only {n} small groups");
}

#[test]
fn oracle_reproduces_s3() {
    let s3 = common::oracle_table(&[vec![1, 2, 0], vec![1, 0, 2]], 3, 5);
    let mut degs: Vec<i64> = s3.rows.iter().map(|r| {
        let i = s3.reps.iter().position(|x| *x == vec![0, 1, 2]).unwrap();
        r[i].re.round() as i64
    }).collect();
    degs.sort();
    assert_eq!(degs, vec![1, 1, 2]);
}
