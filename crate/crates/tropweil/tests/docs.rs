//! The checked-in index tables and examples stay in sync with the code.
//! `TROPWEIL_BLESS=1` rewrites `docs/index_tables.json`.

use std::path::PathBuf;

use serde_json::Value;
use tropweil::formats::{read_json, ChainList, LambdaFile, PolygonFile, SublatticeFile};
use tropweil::tables::index_tables;

fn docs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs")
}

#[test]
fn index_tables_match_the_code() {
    let path = docs().join("index_tables.json");
    let generated = index_tables();
    if std::env::var_os("TROPWEIL_BLESS").is_some() {
        std::fs::write(&path, serde_json::to_string_pretty(&generated).unwrap() + "\n").unwrap();
    }
    let stored: Value = read_json(&path).expect("docs/index_tables.json (bless with TROPWEIL_BLESS=1)");
    assert_eq!(stored, generated);
}

#[test]
fn examples_parse() {
    let ex = docs().join("examples");
    let chains: ChainList = read_json(&ex.join("triangle.json")).unwrap();
    assert_eq!(chains.into_chains().unwrap().len(), 1);
    let poly: PolygonFile = read_json(&ex.join("square.json")).unwrap();
    assert_eq!(poly.vertices().unwrap().len(), 4);
    let l: SublatticeFile = read_json(&ex.join("index2.json")).unwrap();
    assert!(l.to_spec().unwrap().is_proper());
    let lam: LambdaFile = read_json(&ex.join("zero_lambda.json")).unwrap();
    assert!(lam.to_lambda().unwrap().values.is_empty());
}

#[test]
fn schemas_are_json() {
    for entry in std::fs::read_dir(docs().join("schemas")).unwrap() {
        let p = entry.unwrap().path();
        let v: Value = read_json(&p).unwrap();
        assert!(v.get("$schema").is_some(), "{}", p.display());
    }
}
