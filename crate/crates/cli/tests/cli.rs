use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use artinperv_cli::render;
use artinperv_cli::schema::*;
use artinperv_cli::workspace::{matrix_doc, Workspace};
use artinperv_core::curveheart::random::{random_curve, random_heart_morphism};
use artinperv_core::curveheart::{heart_kernel, CurveData, HeartMorphism, HeartObject};
use artinperv_core::grouprep::random::seeded_rng;
use artinperv_core::ArtinRep;
use proptest::prelude::*;
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn artinperv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_artinperv")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn p1() -> String {
    fixture("p1.json").display().to_string()
}

#[test]
fn empty_workspace_is_valid() {
    assert_eq!(artinperv(&["validate"]).status.code(), Some(0));
    let out = artinperv(&["validate", &fixture("empty.json").display().to_string()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["ok"], Value::Bool(true));
}

#[test]
fn golden_fixture_is_valid() {
    let out = artinperv(&["validate", &p1()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn non_injective_h0_is_reported_with_its_path() {
    let out = artinperv(&["validate", &fixture("bad_nobject.json").display().to_string()]);
    assert_eq!(out.status.code(), Some(1));
    let diags = json_of(&out)["diagnostics"].as_array().unwrap().clone();
    assert_eq!(diags.len(), 1);
    assert!(diags[0]["path"].as_str().unwrap().ends_with("bad_nobject.json#/objects/bad/points/0/f"));
    assert_eq!(diags[0]["message"], "H⁰(f_x) not injective");
}

#[test]
fn malformed_documents_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{\n  \"groups\": {\"C1\": }\n}\n").unwrap();
    let out = artinperv(&["validate", &path.display().to_string()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("broken.json:2:"));
    std::fs::write(&path, r#"{"gruops": {}}"#).unwrap();
    assert_eq!(artinperv(&["validate", &path.display().to_string()]).status.code(), Some(2));
    assert_eq!(artinperv(&["validate", "does/not/exist.json"]).status.code(), Some(2));
}

#[test]
fn dangling_references_fail_validation_and_block_commands() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dangling.json");
    std::fs::write(&path, r#"{"geometries": {"X": {"kind": "point", "field": "nowhere"}}}"#).unwrap();
    let p = path.display().to_string();
    let out = artinperv(&["validate", &p]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["diagnostics"][0]["message"], "unknown field 'nowhere'");
    assert_eq!(artinperv(&["omega0", "--geometry", "X", &p]).status.code(), Some(1));
}

#[test]
fn omega0_matches_golden_files() {
    for (geometry, golden) in [("P1", "p1_omega0_Z.json"), ("P1_char3", "p1_char3_omega0_Z.json")] {
        let out = artinperv(&["--coeff", "Z", "omega0", "--geometry", geometry, &p1()]);
        assert_eq!(out.status.code(), Some(0));
        let expected = std::fs::read(fixture("golden").join(golden)).unwrap();
        assert_eq!(out.stdout, expected, "{geometry}");
        assert_eq!(artinperv(&["--coeff", "Z", "omega0", "--geometry", geometry, &p1()]).stdout, out.stdout);
    }
}

#[test]
fn omega0_over_q_collapses() {
    let out = artinperv(&["--coeff", "Q", "omega0", "--geometry", "P1", &p1()]);
    let v = json_of(&out);
    assert_eq!(v["degrees"].as_array().unwrap().len(), 1);
    assert_eq!(v["degrees"][0]["module"]["display"], "Q^1");
    assert_eq!(v["verdict"], "Constructible");
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = artinperv(&["--out", &path.display().to_string(), "omega0", "--geometry", "P1", &p1()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), std::fs::read(fixture("golden/p1_omega0_Z.json")).unwrap());
    let pretty = artinperv(&["--pretty", "omega0", "--geometry", "P1", &p1()]);
    let text = String::from_utf8(pretty.stdout).unwrap();
    assert!(text.contains("H^3      Q/Z(-1)"), "{text}");
    assert!(text.contains("NotConstructible(3)"));
}

#[test]
fn snc_two_lines() {
    let v = json_of(&artinperv(&["snc", "--snc", "two_lines", &p1()]));
    let abut = v["abutment"].as_array().unwrap();
    assert_eq!(abut[0]["degree"], 0);
    assert_eq!(abut[0]["module"]["free_rank"], 1);
    assert_eq!(abut[1]["degree"], 3);
    assert_eq!(abut[1]["module"]["display"], "(Q/Z(-1))^2");
    assert_eq!(v["d_squared_vanishes"], true);
}

#[test]
fn cone_reports_non_constructibility() {
    for (g, rank) in [("E", 2), ("A", 4)] {
        let v = json_of(&artinperv(&["cone", "--geometry", g, "--ell", "3", &p1()]));
        assert_eq!(v["divisible_rank"], rank);
        assert_eq!(v["constructible"], false);
    }
    assert_eq!(artinperv(&["cone", "--geometry", "E", "--ell", "4", &p1()]).status.code(), Some(1));
}

#[test]
fn heart_subcommands_on_the_fixture() {
    let k = json_of(&artinperv(&["heart", "kernel", "--morphism", "canonical", &p1()]));
    assert_eq!(k["object"]["branch_ranks"], serde_json::json!([0]));
    assert_eq!(k["object"]["point_ranks"], serde_json::json!([1, 1]));
    let c = json_of(&artinperv(&["heart", "cokernel", "--morphism", "canonical", &p1()]));
    assert_eq!(c["object"]["point_ranks"], serde_json::json!([0, 0]));
    let s = json_of(&artinperv(&["heart", "series", "--object", "jshriek_n", &p1()]));
    assert_eq!(s["length"], 3);
    let w = json_of(&artinperv(&["heart", "simple", "--object", "weightless", &p1()]));
    assert_eq!(w["simple"], true);
    let i = json_of(&artinperv(&["heart", "iext", "--object", "jshriek", &p1()]));
    assert_eq!(i["object"]["point_ranks"], serde_json::json!([0, 0]));
    let t = json_of(&artinperv(&["heart", "truncate", "--object", "jshriek", &p1()]));
    assert_eq!(t["amplitude"], serde_json::json!([0]));
    let r = json_of(&artinperv(&["heart", "realize", "--morphism", "canonical", "--ell", "7", &p1()]));
    assert_eq!(r["kernel"], k["object"]);
    assert_eq!(artinperv(&["heart", "realize", "--object", "jshriek", "--ell", "6", &p1()]).status.code(), Some(1));
    assert_eq!(artinperv(&["heart", "kernel", &p1()]).status.code(), Some(2));
}

/// A workspace holding a random morphism between heart objects on a random curve.
struct RandomCase {
    doc: Document,
    f: HeartMorphism,
}

fn group_entry(doc: &mut Document, g: &artinperv_core::FiniteGroup) -> String {
    let name = g.name().to_string();
    doc.groups.insert(name.clone(), GroupDoc::Catalog { catalog: name.clone() });
    name
}

fn rep_entry(doc: &mut Document, id: String, r: &ArtinRep) -> String {
    let group = group_entry(doc, r.group());
    let generators = Some(r.generator_matrices().iter().map(matrix_doc).collect());
    doc.reps.insert(id.clone(), RepDoc { group, coefficients: r.coefficients().to_string(), dim: r.dim(), generators });
    id
}

fn curve_doc(doc: &mut Document, c: &CurveData) -> CurveDoc {
    let branches = c
        .branches
        .iter()
        .map(|b| BranchDoc { name: b.name.clone(), group: group_entry(doc, &b.galois.quotient) })
        .collect();
    let points = c
        .points
        .iter()
        .map(|p| PointDoc {
            name: p.name.clone(),
            residue: group_entry(doc, &p.residue.quotient),
            char_exponent: p.char_exponent,
            fiber: p
                .fiber
                .iter()
                .map(|y| FiberDoc {
                    name: y.name.clone(),
                    branch: c.branches[y.branch].name.clone(),
                    inertia: y.inertia,
                    decomposition: Some(y.decomposition.clone()),
                    residue_map: Some(y.residue_map.clone()),
                })
                .collect(),
        })
        .collect();
    CurveDoc::Explicit { coefficients: c.coefficients.to_string(), branches, points }
}

fn object_doc(doc: &mut Document, id: &str, h: &HeartObject) -> ObjectDoc {
    let branches = h.branches.iter().enumerate().map(|(e, r)| rep_entry(doc, format!("{id}_b{e}"), r)).collect();
    let points = h.points.iter().enumerate().map(|(x, r)| rep_entry(doc, format!("{id}_p{x}"), r)).collect();
    ObjectDoc::Heart { curve: "C".into(), branches, points, c: h.c.iter().map(matrix_doc).collect() }
}

fn random_case(seed: u64) -> RandomCase {
    let mut rng = seeded_rng(seed);
    let mut curve = random_curve(&mut rng);
    std::sync::Arc::make_mut(&mut curve).name = "C".into();
    let f = random_heart_morphism(&mut rng, &curve, 2);
    let mut doc = Document::default();
    let cd = curve_doc(&mut doc, &curve);
    doc.curves.insert("C".into(), cd);
    let s = object_doc(&mut doc, "X", &f.source);
    let t = object_doc(&mut doc, "Y", &f.target);
    doc.objects = BTreeMap::from([("X".into(), s), ("Y".into(), t)]);
    let m = MorphismDoc {
        source: "X".into(),
        target: "Y".into(),
        branch: f.branch.iter().map(matrix_doc).collect(),
        point: f.point.iter().map(|m| PointMapDoc::Heart(matrix_doc(m))).collect(),
    };
    doc.morphisms.insert("f".into(), m);
    RandomCase { doc, f }
}

#[test]
fn random_kernels_through_the_binary() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..4u64 {
        let case = random_case(0xc11 + seed);
        let path = dir.path().join(format!("case{seed}.json"));
        std::fs::write(&path, serde_json::to_string(&case.doc).unwrap()).unwrap();
        let out = artinperv(&["heart", "kernel", "--morphism", "f", &path.display().to_string()]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        let (k, _) = heart_kernel(&case.f).unwrap();
        assert_eq!(json_of(&out)["object"], render::heart(&k, "C"));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn documents_round_trip(seed in any::<u64>()) {
        let case = random_case(seed);
        let text = serde_json::to_string_pretty(&case.doc).unwrap();
        let back: Document = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &case.doc);
        prop_assert_eq!(serde_json::to_string_pretty(&back).unwrap(), text);
        let ws = Workspace::resolve(&[("case".into(), back)]);
        prop_assert!(ws.diagnostics.is_empty(), "{:?}", ws.diagnostics);
        prop_assert_eq!(&ws.morphisms["f"], &case.f);
    }
}

#[test]
fn fixture_round_trips() {
    let text = std::fs::read_to_string(fixture("p1.json")).unwrap();
    let doc: Document = serde_json::from_str(&text).unwrap();
    let again: Document = serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
    assert_eq!(doc, again);
}
