use std::path::PathBuf;
use std::process::Command;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

/// Runs the binary from the fixture directory; returns stdout, stderr and exit code.
fn run(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_cmcubics"))
        .args(args)
        .current_dir(fixtures())
        .env("SOURCE_DATE_EPOCH", "0")
        .output()
        .expect("binary runs");
    (String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap(), out.status.code().unwrap_or(-1))
}

/// Compares with `fixtures/golden/<name>`; `UPDATE_GOLDEN=1` rewrites the file.
fn golden(name: &str, actual: &str) {
    let path = fixtures().join("golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "golden {name} differs");
}

#[test]
fn groebner_outputs() {
    let (out, _, code) = run(&["groebner", "triple_line.ideal"]);
    assert_eq!(code, 0);
    golden("groebner_triple_line.txt", &out);
    let (out, _, _) = run(&["groebner", "--order", "lex", "twisted_cubic.ideal"]);
    golden("groebner_twisted_lex.txt", &out);
    let (gf7, _, _) = run(&["groebner", "--field", "GF7", "nodal_curve.ideal"]);
    assert!(gf7.starts_with("ring GF(7)[x,y,w,u]\n"));
}

#[test]
fn groebner_output_is_an_ideal_file() {
    let (out, _, _) = run(&["groebner", "twisted_cubic.ideal"]);
    let reparsed = cmcubics_cli::parse(&out).unwrap();
    let original = cmcubics_cli::document::read(&fixtures().join("twisted_cubic.ideal")).unwrap();
    let f = cmcubics_core::Rationals;
    assert!(reparsed.ideal(&f).unwrap().equals(&original.ideal(&f).unwrap()).unwrap());
}

#[test]
fn image_of_the_nodal_curve() {
    let (out, _, code) = run(&["image", "nodal_curve.ideal", "--map", "projection.map"]);
    assert_eq!(code, 0);
    golden("image_nodal.txt", &out);
}

#[test]
fn hilbert_lines() {
    let (out, _, _) = run(&["hilbert", "triple_line.ideal"]);
    golden("hilbert_triple_line.txt", &out);
    assert!(out.starts_with("HP = 3*t + 1 ; degree 3 ; genus 0 ; regularity <="));
    let (json, _, _) = run(&["hilbert", "--json", "nodal_cubic.ideal"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!((v["hp"].as_str(), v["degree"].as_i64(), v["genus"].as_i64()), (Some("3*t"), Some(3), Some(1)));
    let (lex, _, _) = run(&["hilbert", "--order", "lex", "triple_line.ideal"]);
    assert_eq!(lex, out);
}

#[test]
fn classification_and_reconstruction() {
    let (out, _, code) = run(&["classify", "conic_tangent.ideal", "--reconstruct"]);
    assert_eq!(code, 0);
    golden("classify_conic_tangent.txt", &out);
    let (out, _, _) = run(&["classify", "nodal_cubic.ideal", "--point", "0,0,0,1", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["case"], "I");
    let (_, err, code) = run(&["classify", "nodal_cubic.ideal", "--point", "1,0,0,0"]);
    assert_eq!(code, 2);
    assert!(err.contains("not a singular point"), "{err}");
}

#[test]
fn deformation_commands() {
    let (out, _, code) = run(&["deform", "hyperplane.ideal"]);
    assert_eq!(code, 0);
    assert_eq!(out, "dimension 1\n(y)\nwitnesses verified: yes\n");
    let (json, _, _) = run(&["deform", "--json", "triple_line.ideal"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["dimension"], 12);
    assert_eq!(v["witnesses_verified"], true);
    // the listed functionals do not all annihilate the action
    let (json, _, code) = run(&["deform", "--tangent-cm", "--json"]);
    assert_eq!(code, 1);
    golden("deform_tangent.json", &json);
}

#[test]
fn family_commands() {
    let (out, _, code) = run(&["family", "fiber", "nodal_family.ideal", "--at", "0"]);
    assert_eq!(code, 0);
    assert_eq!(out, "ring Q[x,y,z,w]\nx*z\ny*z\nz^2\nx^3 + x^2*w - y^2*w\n");
    let (out, _, _) = run(&["family", "image", "triple_line_family.ideal", "--map", "projection_qt.map"]);
    golden("family_image.txt", &out);
    let (out, _, code) = run(&["family", "probe", "nodal_family.ideal", "--samples", "0,1,-2"]);
    assert_eq!(code, 0);
    golden("family_probe.txt", &out);
    let (_, err, code) = run(&["family", "fiber", "rational_family.ideal", "--at", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("excluded"), "{err}");
    let (_, err, code) = run(&["family", "fiber", "triple_line.ideal", "--at", "0"]);
    assert_eq!(code, 2);
    assert!(err.contains("parametric"), "{err}");
}

#[test]
fn catalog_table() {
    let (out, _, code) = run(&["verify", "catalog", "--json"]);
    assert_eq!(code, 0);
    golden("verify_catalog.json", &out);
    let (text, _, _) = run(&["verify", "catalog", "--field", "GF7"]);
    assert_eq!(text.matches("PASS").count(), 9);
}

#[test]
fn mutated_generator_fails_one_case() {
    let (out, _, code) = run(&["verify", "catalog", "--json", "--override", "IX=mutated_triple_line.ideal"]);
    assert_eq!(code, 1);
    golden("verify_catalog_mutated.json", &out);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    for row in v["cases"].as_array().unwrap() {
        assert_eq!(row["kernel_match"] == false, row["case"] == "IX", "{row}");
    }
}

#[test]
fn report_golden_and_exit_code() {
    let (out, _, code) = run(&["report", "--json"]);
    golden("report_q.json", &out);
    let report: cmcubics_cli::ReportDocument = serde_json::from_str(&out).unwrap();
    assert_eq!(report.schema, 1);
    assert_eq!(code, if report.passed { 0 } else { 1 });
    let (again, _, _) = run(&["report", "--json"]);
    assert_eq!(out, again);
}

#[test]
fn errors_go_to_stderr() {
    let (_, err, code) = run(&["groebner", "missing.ideal"]);
    assert_eq!(code, 2);
    assert!(err.contains("missing.ideal"));
    let (_, _, code) = run(&["groebner", "--order", "revlex", "triple_line.ideal"]);
    assert_eq!(code, 2);
    let (_, err, code) = run(&["report", "--field", "GF(4)"]);
    assert_eq!(code, 2);
    assert!(err.contains("GF(4)"), "{err}");
}
