//! The aggregate verification report.

use std::fmt::Write as _;
use std::time::{SystemTime, UNIX_EPOCH};

use cmcubics_core::cmpoints::{extension_generators, extension_matches_chart, verify_catalog_point, CatalogRow};
use cmcubics_core::deform::{
    cm_tangent_triple_line, embedded_deformations, regularity_check, resolution_check, triple_line_family_check,
};
use cmcubics_core::families::{
    degeneration_chart_check, flatness_probe, nodal_family, specialization_check, syzygy_identity_check,
};
use cmcubics_core::{catalog_case, syzygy_basis, CaseLabel, ExactRoots, HilbertPolynomial, Ideal};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::commands::{presentation_strings, row_json};
use crate::error::CliError;
use crate::field::FieldSpec;
use crate::with_exact_field;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witness: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema: u32,
    pub tool: String,
    pub version: String,
    pub field: String,
    /// Seconds since the epoch; `SOURCE_DATE_EPOCH` overrides the clock.
    pub timestamp: u64,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl ReportDocument {
    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Equality ignoring the timestamp.
    pub fn same_content(&self, other: &ReportDocument) -> bool {
        ReportDocument { timestamp: 0, ..self.clone() } == ReportDocument { timestamp: 0, ..other.clone() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("cmcubics {} report over {}\n", self.version, self.field);
        for c in &self.checks {
            if c.passed {
                writeln!(out, "PASS {}", c.name).unwrap();
            } else {
                writeln!(out, "FAIL {}  {}", c.name, c.witness).unwrap();
            }
        }
        let ok = self.checks.iter().filter(|c| c.passed).count();
        writeln!(out, "{} ({ok}/{} checks)", if self.passed { "PASS" } else { "FAIL" }, self.checks.len()).unwrap();
        out
    }
}

fn timestamp() -> u64 {
    std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or_else(|| SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()))
}

/// Failures inside a check become failed entries, never aborts.
fn check(name: impl Into<String>, run: impl FnOnce() -> cmcubics_core::Result<(bool, Value)>) -> Check {
    match run() {
        Ok((passed, witness)) => Check { name: name.into(), passed, witness },
        Err(e) => Check { name: name.into(), passed: false, witness: json!({ "error": e.to_string() }) },
    }
}

fn strings<T: ToString>(items: &[T]) -> Vec<String> {
    items.iter().map(|g| g.to_string()).collect()
}

pub fn run_report(field: FieldSpec) -> Result<ReportDocument, CliError> {
    with_exact_field!(field, "report", |f| {
        let checks = collect_checks(&f);
        let passed = checks.iter().all(|c| c.passed);
        Ok(ReportDocument {
            schema: SCHEMA_VERSION,
            tool: "cmcubics".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            field: cmcubics_core::Field::name(&f),
            timestamp: timestamp(),
            checks,
            passed,
        })
    })
}

fn collect_checks<F: ExactRoots>(f: &F) -> Vec<Check> {
    let mut checks = Vec::new();
    let curve_hp = HilbertPolynomial::linear(3, 1);

    let rows: Vec<(CaseLabel, cmcubics_core::Result<CatalogRow>)> =
        CaseLabel::ALL.iter().map(|&l| (l, verify_catalog_point(&catalog_case(l, f), l))).collect();
    for (l, row) in &rows {
        checks.push(check(format!("catalog.{l}"), || {
            let row = row.clone()?;
            Ok((row.passed(), row_json(&row)))
        }));
    }
    for (l, row) in &rows {
        checks.push(check(format!("chart.{l}"), || {
            let r = row.clone()?.report;
            let gens = extension_generators(&catalog_case(*l, f))?;
            let witness = json!({
                "dim_BA_truncations": [[6, r.dim_ba.0], [7, r.dim_ba.1]],
                "maximal_ideal_moves_B_into_A": r.moves_b_into_a,
                "module_generators": strings(&gens),
            });
            Ok((r.dim_ba_ok() && r.moves_b_into_a, witness))
        }));
    }
    for l in [CaseLabel::IV, CaseLabel::VI, CaseLabel::VII, CaseLabel::VIII, CaseLabel::IX] {
        checks.push(check(format!("extension.{l}"), || {
            let ok = extension_matches_chart(l, f)?;
            Ok((ok, json!({ "presentation": presentation_strings(l, f).unwrap_or_default() })))
        }));
    }

    checks.push(check("nodal.identity", || {
        let ok = syzygy_identity_check(f)?;
        Ok((ok, json!({ "y*f1 - x*f2 - t*q": if ok { "0" } else { "nonzero" } })))
    }));
    let nodal = nodal_family(f);
    checks.push(check("nodal.special_fiber", || {
        let z0 = nodal.clone()?.fiber_at(&f.zero())?;
        let expected = Ideal::from_strs(z0.ring(), &["x*z", "y*z", "z^2", "x^3 + x^2*w - y^2*w"])?;
        Ok((z0.equals(&expected)?, json!({ "fiber": strings(z0.gens()) })))
    }));
    checks.push(check("nodal.embedded_point", || {
        let z0 = nodal.clone()?.fiber_at(&f.zero())?;
        let p = Ideal::from_strs(z0.ring(), &["x", "y", "z"])?;
        let sat = z0.saturate_ideal(&p)?;
        let plane = Ideal::from_strs(z0.ring(), &["z", "x^3 + x^2*w - y^2*w"])?;
        let (saturated, differs) = (sat.equals(&plane)?, !z0.equals(&plane)?);
        let witness = json!({ "saturation": strings(&sat.basis().elements()), "fiber_differs": differs });
        Ok((saturated && differs, witness))
    }));
    checks.push(check("nodal.flatness", || {
        let samples = [0, 1, -2].map(|c| f.from_int(c));
        let rep = flatness_probe(&nodal.clone()?, &samples)?;
        let witness = json!({
            "generic": rep.generic.to_string(),
            "samples": rep.samples.iter().map(|(c, hp)| [f.format_elem(c), hp.to_string()]).collect::<Vec<_>>(),
        });
        Ok((rep.passed() && rep.generic == curve_hp, witness))
    }));

    let spec = specialization_check(f);
    checks.push(check("specialization.generic_image", || {
        let s = spec.clone()?;
        Ok((s.generic_image_ok, json!({ "image": s.generic_image })))
    }));
    checks.push(check("specialization.special_image", || {
        let s = spec.clone()?;
        Ok((s.special_image_ok, json!({ "image_at_0_is_triple_line": s.special_image_ok })))
    }));
    checks.push(check("specialization.generic_type", || {
        let s = spec.clone()?;
        Ok((s.generic == CaseLabel::VII, json!({ "expected": "VII", "computed": s.generic.as_str() })))
    }));
    checks.push(check("specialization.special_type", || {
        let s = spec.clone()?;
        Ok((s.special == CaseLabel::IX, json!({ "expected": "IX", "computed": s.special.as_str() })))
    }));
    checks.push(check("specialization.fibers_commute", || {
        let s = spec.clone()?;
        Ok((s.commutes && s.flat, json!({ "commutes": s.commutes, "flat": s.flat })))
    }));
    match degeneration_chart_check(f) {
        Ok(rows) => {
            for (i, row) in rows.iter().enumerate() {
                let witness = json!({
                    "family": row.name,
                    "expected": row.expected.map(|(s, t)| [s.as_str(), t.as_str()]),
                    "computed": [row.generic.as_str(), row.special.as_str()],
                    "generic_image": row.generic_image,
                    "flat": row.flat,
                    "commutes": row.commutes,
                });
                checks.push(Check { name: format!("degeneration.{}", i + 1), passed: row.confirmed(), witness });
            }
        }
        Err(e) => checks.push(Check {
            name: "degeneration".into(),
            passed: false,
            witness: json!({ "error": e.to_string() }),
        }),
    }

    for l in CaseLabel::ALL {
        checks.push(check(format!("resolution.{l}"), || {
            let ideal = catalog_case(l, f).ideal;
            let syz = syzygy_basis(ideal.ring(), ideal.gens())?;
            let witness = json!({ "generators": ideal.gens().len(), "syzygy_degrees": syz.degrees() });
            Ok((resolution_check(&ideal)?, witness))
        }));
    }
    for l in CaseLabel::ALL {
        checks.push(check(format!("regularity.{l}"), || {
            let rep = regularity_check(&catalog_case(l, f).ideal)?;
            let witness = json!({ "hp": rep.hilbert_polynomial.to_string(), "hf": rep.values });
            Ok((rep.passed() && rep.hilbert_polynomial == curve_hp, witness))
        }));
    }
    for l in CaseLabel::ALL {
        checks.push(check(format!("deformations.{l}"), || {
            let defs = embedded_deformations(&catalog_case(l, f).ideal)?;
            let verified = defs.verify_witnesses()?;
            let witness = json!({ "dimension": defs.dimension(), "witnesses_verified": verified });
            Ok((defs.dimension() == 12 && verified, witness))
        }));
    }
    checks.push(check("deformations.explicit_family", || {
        let rep = triple_line_family_check(f)?;
        let witness = json!({
            "dimension": rep.dimension,
            "directions_contained": rep.contained,
            "rank": rep.rank,
            "third_generator_forced": rep.forced_third,
        });
        Ok((rep.passed(), witness))
    }));

    let tangent = cm_tangent_triple_line(f);
    checks.push(check("tangent.dimensions", || {
        let t = tangent.clone()?;
        let witness = json!({ "raw": t.raw, "action_rank": t.action_rank, "quotient": t.quotient });
        Ok((t.dimensions_ok(), witness))
    }));
    checks.push(check("tangent.functionals", || {
        let t = tangent.clone()?;
        let witness = json!({
            "not_invariant": t.reference.not_invariant,
            "independent": t.reference.independent,
            "spans": t.reference.spans,
        });
        Ok((t.reference.spans, witness))
    }));
    checks
}
