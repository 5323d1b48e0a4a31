use std::io::Write;
use std::process::{Command, Output, Stdio};

use intform::verdict::VerificationReport;
use intform::{Catalog, ClassMatch, IntegralLattice, Signature, SurfaceInvariants, Verdict};

fn intform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_intform"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn intform_with_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_intform"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = intform(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

/// Parses `text` as `T` and checks that serializing it again reproduces the
/// same bytes.
fn roundtrip<T: serde::de::DeserializeOwned + serde::Serialize>(text: &str) -> T {
    let value: T = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(serde_json::to_string(&value).unwrap(), text.trim());
    value
}

#[test]
fn classify_hyperbolic_plane() {
    assert_eq!(
        ok(&["lattice", "classify", "--gram", "[[0,1],[1,0]]"]),
        "1U\n"
    );
}

#[test]
fn e8_roots() {
    let out = ok(&["lattice", "vectors", "--named", "E8", "--norm", "2"]);
    assert_eq!(out.lines().count(), 120);
    assert!(ok(&["lattice", "vectors", "--named", "E8", "--norm", "1"]).is_empty());
}

#[test]
fn sum_pipes_into_signature() {
    let sum = intform(&["lattice", "sum", "--named", "E8", "--gram", "[[-1]]"]);
    assert!(sum.status.success());
    let sig = intform_with_stdin(&["lattice", "signature"], &sum.stdout);
    assert_eq!(stdout(&sig), "(8,1,0)\n");
}

#[test]
fn sum_keeps_command_line_order() {
    assert_eq!(
        ok(&["lattice", "sum", "--gram", "[[-1]]", "--named", "U"]),
        "[[-1,0,0],[0,0,1],[0,1,0]]\n"
    );
    assert_eq!(
        ok(&["lattice", "sum", "--named", "U", "--gram", "[[-1]]"]),
        "[[0,1,0],[1,0,0],[0,0,-1]]\n"
    );
}

#[test]
fn basic_invariants() {
    assert_eq!(ok(&["lattice", "det", "--named", "U"]), "-1\n");
    assert_eq!(ok(&["lattice", "parity", "--named", "E8"]), "even\n");
    assert_eq!(
        ok(&["lattice", "parity", "--gram", "[[1,0],[0,-1]]"]),
        "odd\n"
    );
    assert_eq!(
        ok(&["lattice", "classify", "--class", "3<1> + 19<-1>"]),
        "3<1> + 19<-1>\n"
    );
    assert_eq!(
        ok(&[
            "lattice",
            "characteristic",
            "--gram",
            "[[1,0],[0,-1]]",
            "--vector",
            "[1,1]"
        ]),
        "true\n"
    );
    assert_eq!(
        ok(&[
            "lattice",
            "characteristic",
            "--named",
            "U",
            "--vector",
            "[0,0]"
        ]),
        "true\n"
    );
}

#[test]
fn lattice_from_file() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(br#"{"gram":[[2,1],[1,1]]}"#).unwrap();
    let path = file.path().to_str().unwrap();
    assert_eq!(ok(&["lattice", "signature", "--file", path]), "(2,0,0)\n");
    assert_eq!(ok(&["lattice", "classify", "--file", path]), "2<1>\n");
}

#[test]
fn nondiagonalizable_is_not_an_error() {
    let out = ok(&["lattice", "classify", "--named", "E8"]);
    assert!(out.starts_with("NotDiagonalizable"));
    assert_eq!(
        ok(&["lattice", "classify", "--gram", "[[2]]"]),
        "NotUnimodular\n"
    );
}

#[test]
fn input_errors_exit_2() {
    for args in [
        &["lattice", "det", "--gram", "[[1,2],[3]]"][..],
        &["lattice", "det", "--gram", "[[1,2],[3,4]]"],
        &["lattice", "det", "--gram", "[[1.5]]"],
        &["lattice", "det", "--named", "E7"],
        &["lattice", "parity", "--gram", "[]"],
        &["lattice", "vectors", "--named", "U", "--norm", "1"],
        &[
            "lattice",
            "characteristic",
            "--named",
            "U",
            "--vector",
            "[1]",
        ],
        &["surface", "check", "--named", "no_such_surface"],
        &["surface", "check", "--invariants", "{\"b1\":0}"],
        &["verify", "--b2max", "100000"],
    ] {
        assert_eq!(intform(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn surface_examples() {
    let fake = ok(&["surface", "classify", "--named", "fake_plane"]);
    assert!(fake.contains("PositiveDefinite"), "{fake}");
    assert!(fake.contains("lattice: 1<1>"), "{fake}");

    let blown = intform(&[
        "surface",
        "blowup",
        "--named",
        "secondary_kodaira",
        "-k",
        "1",
    ]);
    assert!(blown.status.success());
    let verdict = intform_with_stdin(&["surface", "classify"], &blown.stdout);
    let text = stdout(&verdict);
    assert!(text.contains("NegativeDefinite"), "{text}");
    assert!(text.contains("lattice: 1<-1>"), "{text}");

    assert_eq!(ok(&["surface", "check", "--named", "k3"]), "consistent\n");
    let bad = r#"{"b1":0,"b2":1,"q":0,"pg":0,"c1sq":9,"c2":4,"kahler":"yes","minimal":true,"kodaira":"unknown"}"#;
    assert_eq!(
        ok(&["surface", "check", "--invariants", bad]),
        "inconsistent: euler, noether\n"
    );
    assert_eq!(
        ok(&["surface", "classify", "--invariants", bad]),
        "inconsistent: euler, noether\n"
    );
}

#[test]
fn catalog_golden() {
    let catalog = Catalog::builtin();
    let listing = ok(&["surface", "catalog"]);
    assert_eq!(listing.lines().count(), catalog.entries.len());
    for e in &catalog.entries {
        let text = ok(&["surface", "classify", "--named", &e.name, "--json"]);
        let v: Verdict = roundtrip(&text);
        assert_eq!(v.lattice, e.known_lattice, "{}", e.name);
        assert!(v.allowed_classes.contains(&ClassMatch {
            class: e.class_label,
            blowups: e.blowups
        }));
    }
}

#[test]
fn custom_catalog_path() {
    let mut catalog = Catalog::builtin();
    catalog.entries.truncate(1);
    catalog.entries[0].name = "my_plane".into();
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(serde_json::to_string(&catalog).unwrap().as_bytes())
        .unwrap();
    let path = file.path().to_str().unwrap();
    assert_eq!(
        ok(&["surface", "check", "--named", "my_plane", "--catalog", path]),
        "consistent\n"
    );
    assert_eq!(
        ok(&["surface", "catalog", "--catalog", path])
            .lines()
            .count(),
        1
    );
    let missing = intform(&["surface", "check", "--named", "k3", "--catalog", path]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn json_outputs_roundtrip() {
    let sig: Signature = roundtrip(&ok(&["lattice", "signature", "--named", "E8", "--json"]));
    assert_eq!(sig, Signature::new(8, 0, 0));
    let sum: IntegralLattice = roundtrip(&ok(&[
        "lattice", "sum", "--named", "U", "--named", "E8neg", "--json",
    ]));
    assert_eq!(sum.rank(), 10);
    let big = "[[100000000000000000000000000001]]";
    let out = ok(&["lattice", "sum", "--gram", big, "--json"]);
    assert_eq!(out.trim(), format!("{{\"gram\":{big}}}"));
    let _: SurfaceInvariants = roundtrip(&ok(&["surface", "blowup", "--named", "k3", "-k", "2"]));
    let _: Catalog = roundtrip(&ok(&["surface", "catalog", "--json"]));
    // the table and classify outputs have no typed parser; compare as values
    let table: serde_json::Value =
        serde_json::from_str(&ok(&["surface", "table", "--json"])).unwrap();
    assert_eq!(
        table,
        serde_json::to_value(intform::classes::TABLE).unwrap()
    );
    let e8: serde_json::Value =
        serde_json::from_str(&ok(&["lattice", "classify", "--named", "E8", "--json"])).unwrap();
    assert_eq!(e8["result"], "not_diagonalizable");
    assert_eq!(e8["remainder"]["gram"].as_array().unwrap().len(), 8);
}

#[test]
fn table_lists_every_row() {
    assert_eq!(ok(&["surface", "table"]).lines().count(), 11);
}

#[test]
fn verify_default_run() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = intform(&["verify", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: VerificationReport =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(report.passed());
    assert_eq!(report.checked, 3574);
    assert!(stdout(&out).contains("counterexamples: 0"));
}

#[test]
fn verify_variants() {
    let text = ok(&["verify", "--kmax", "0", "--json"]);
    let report: VerificationReport = roundtrip(&text);
    assert!(report
        .definite_nonkahler
        .iter()
        .all(|e| e.generator.class == intform::SurfaceClass::ClassVii));

    let report: VerificationReport =
        roundtrip(&ok(&["verify", "--qmax", "0", "--kahler-only", "--json"]));
    assert!(report.definite_nonkahler.is_empty());
    assert!(report
        .definite_kahler
        .iter()
        .all(|e| e.verdict.lattice == Some(intform::LatticeClass::diagonal(1, 0))));
}
