use chardeg::corpus::{parse_group_file, serialize, Catalogue};

#[test]
fn catalogue_loads_and_validates() {
    let t = std::time::Instant::now();
    let cat = Catalogue::load_default().unwrap();
    eprintln!("loaded {} groups in {:?}", cat.len(), t.elapsed());
    let names: Vec<&str> = cat.entries().iter().map(|e| e.name()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert_eq!(cat.require("A5").unwrap().group.order(), 60);
    assert_eq!(cat.require("6A6").unwrap().group.order(), 2160);
    assert_eq!(cat.require("SL2_7").unwrap().group.order(), 336);
}

#[test]
fn corpus_files_round_trip() {
    for entry in std::fs::read_dir(Catalogue::default_dir()).unwrap() {
        let path = entry.unwrap().path();
        let spec = parse_group_file(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(parse_group_file(&serialize(&spec)).unwrap(), spec, "{}", path.display());
    }
}
