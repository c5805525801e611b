use std::fs;

use mnl::formats::{
    load_generators, load_loop, load_tensor, CayleyFile, GeneratorFile, InputError, TensorFile,
};
use mnl_core::birep::octonion_lr_generators;
use mnl_core::catalog_algebra;
use mnl_core::loops::octonion_unit_loop;
use mnl_core::rational::{int, rat};

fn write(dir: &tempfile::TempDir, name: &str, body: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn tensor_round_trip() {
    let m7 = catalog_algebra("m7").unwrap();
    let file = TensorFile::from_tensor(&m7).unwrap();
    assert_eq!(file.dim, 7);
    assert_eq!(file.entries.len(), 21);
    let text = serde_json::to_string(&file).unwrap();
    let back: TensorFile = serde_json::from_str(&text).unwrap();
    assert_eq!(back.to_tensor().unwrap(), m7);
}

#[test]
fn tensor_entries_are_completed_by_antisymmetry() {
    let file: TensorFile = serde_json::from_str(
        r#"{"dim": 3, "entries": [[3, 1, 2, 1, 2], [1, 2, 3, 1, 2], [2, 3, 1, 1, 2]]}"#,
    )
    .unwrap();
    let c = file.to_tensor().unwrap();
    assert_eq!(c.get(2, 0, 1), rat(1, 2));
    assert_eq!(c.get(2, 1, 0), rat(-1, 2));
    assert_eq!(c, catalog_algebra("su2").unwrap().scale(rat(1, 2)));
}

#[test]
fn contradictory_entries_are_rejected() {
    let file: TensorFile =
        serde_json::from_str(r#"{"dim": 3, "entries": [[3, 1, 2, 1, 1], [3, 2, 1, 1, 1]]}"#)
            .unwrap();
    let err = file.to_tensor().unwrap_err();
    assert!(err.to_string().contains("antisymmetry"), "{err}");
    let diagonal: TensorFile =
        serde_json::from_str(r#"{"dim": 2, "entries": [[1, 2, 2, 1, 1]]}"#).unwrap();
    assert!(diagonal.to_tensor().is_err());
}

#[test]
fn tensor_validation() {
    for body in [
        r#"{"dim": 0, "entries": []}"#,
        r#"{"dim": 2, "entries": [[1, 2, 3, 1, 1]]}"#,
        r#"{"dim": 2, "entries": [[1, 1, 2, 1, 0]]}"#,
    ] {
        let file: TensorFile = serde_json::from_str(body).unwrap();
        assert!(file.to_tensor().is_err(), "{body}");
    }
    assert!(
        serde_json::from_str::<TensorFile>(r#"{"dim": 2, "entries": [], "extra": 1}"#).is_err()
    );
}

#[test]
fn cayley_round_trip() {
    let t = octonion_unit_loop();
    let file = CayleyFile::from_table(&t);
    let text = serde_json::to_string(&file).unwrap();
    let back: CayleyFile = serde_json::from_str(&text).unwrap();
    let table = back.to_table().unwrap();
    assert_eq!(table, t);
    assert_eq!(table.name(1), "e1");
}

#[test]
fn cayley_order_must_match() {
    let file: CayleyFile =
        serde_json::from_str(r#"{"order": 3, "table": [[0, 1], [1, 0]]}"#).unwrap();
    assert!(file.to_table().is_err());
    let bad: CayleyFile =
        serde_json::from_str(r#"{"order": 2, "table": [[0, 1], [1, 2]]}"#).unwrap();
    assert!(bad.to_table().is_err());
}

#[test]
fn generator_round_trip() {
    let gen = octonion_lr_generators();
    let m7 = catalog_algebra("m7").unwrap();
    let file = GeneratorFile::from_generators(&gen, Some(&m7)).unwrap();
    let text = serde_json::to_string(&file).unwrap();
    assert!(text.contains("\"S\"") && text.contains("\"T\""));
    let back: GeneratorFile = serde_json::from_str(&text).unwrap();
    let loaded = back.to_generators().unwrap();
    assert_eq!(loaded.gen, gen);
    assert_eq!(loaded.tensor, Some(m7));
}

#[test]
fn generator_shapes_are_checked() {
    let body = r#"{"r": 1, "dim": 2, "S": [[[[1, 1], [0, 1]], [[0, 1], [1, 1]]]], "T": []}"#;
    let file: GeneratorFile = serde_json::from_str(body).unwrap();
    assert!(file.to_generators().is_err());
    let body = r#"{"r": 1, "dim": 2, "S": [[[[1, 1]]]], "T": [[[[1, 1]]]]}"#;
    let file: GeneratorFile = serde_json::from_str(body).unwrap();
    assert!(file.to_generators().is_err());
}

#[test]
fn builtins_and_paths() {
    assert_eq!(load_tensor("builtin:abelian(5)").unwrap().dim(), 5);
    assert!(matches!(
        load_tensor("builtin:g2"),
        Err(InputError::UnknownBuiltin(_))
    ));
    assert_eq!(load_loop("builtin:octonion-loop").unwrap().order(), 16);
    assert_eq!(load_loop("builtin:chein-S3").unwrap().order(), 12);
    assert_eq!(load_loop("builtin:Q8").unwrap().order(), 8);
    assert!(load_loop("builtin:chein-A5").is_err());
    let quat = load_generators("builtin:quaternion").unwrap();
    assert_eq!(quat.tensor.unwrap().get(2, 0, 1), int(2));

    let dir = tempfile::tempdir().unwrap();
    let path = write(
        &dir,
        "su2.json",
        r#"{"dim": 3, "entries": [[3, 1, 2, 1, 1], [1, 2, 3, 1, 1], [2, 3, 1, 1, 1]]}"#,
    );
    assert_eq!(load_tensor(&path).unwrap(), catalog_algebra("su2").unwrap());
    let truncated = write(&dir, "cut.json", r#"{"order": 2, "table": [[0, 1], [1"#);
    assert!(matches!(
        load_loop(&truncated),
        Err(InputError::Json { .. })
    ));
    assert!(matches!(
        load_tensor(dir.path().join("missing.json").to_str().unwrap()),
        Err(InputError::Io { .. })
    ));
}
