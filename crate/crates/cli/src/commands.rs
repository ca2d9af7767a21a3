//! Subcommands. Each returns an [`Outcome`] holding both renderings.

use std::fmt::Write as _;

use cmcubics_core::cmpoints::{curve_ring, verify_catalog_point, CatalogRow, ExtensionPresentation};
use cmcubics_core::deform::{cm_tangent_triple_line, embedded_deformations, INVARIANT_FUNCTIONALS};
use cmcubics_core::families::{flatness_probe, ParametricIdeal};
use cmcubics_core::hilbert::hilbert_series_with;
use cmcubics_core::{
    catalog_case, classify_plane_cubic, cm_point_for, degree_genus, ring_map_kernel, verify_cm_point, CMPoint,
    CaseLabel, ExactRoots, Field, Ideal, Matrix, MonomialOrder, PolyRing, Polynomial, RationalFunctions, RingHandle,
    VerificationReport,
};
use serde_json::{json, Value};

use crate::document::{ideal_text, map_text, parse_point, parse_samples, parse_scalar, Document};
use crate::error::CliError;
use crate::field::FieldSpec;
use crate::{with_exact_field, with_field, with_parametric_field};

type Result<T> = std::result::Result<T, CliError>;

/// Text and JSON rendering of a command result.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub text: String,
    pub json: Value,
    /// Drives the exit status.
    pub passed: bool,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome { text, json, passed: true }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Terms listed from largest to smallest in `order`.
pub fn format_in_order<F: Field>(p: &Polynomial<F>, order: MonomialOrder) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut terms: Vec<_> = p.terms().to_vec();
    terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
    let ring = p.ring();
    let mut out = String::new();
    for (k, (m, c)) in terms.into_iter().enumerate() {
        let term = ring.monomial(c, m).to_string();
        match (k, term.strip_prefix('-')) {
            (0, _) => out.push_str(&term),
            (_, Some(rest)) => write!(out, " - {rest}").unwrap(),
            (_, None) => write!(out, " + {term}").unwrap(),
        }
    }
    out
}

/// Reduced basis sorted by leading monomial.
fn basis_strings<F: Field>(ideal: &Ideal<F>, order: MonomialOrder) -> Vec<String> {
    let mut elems = ideal.groebner(order).elements();
    elems.sort_by(|a, b| match (a.leading_term(order), b.leading_term(order)) {
        (Some((ma, _)), Some((mb, _))) => order.cmp(ma, mb),
        _ => std::cmp::Ordering::Equal,
    });
    elems.iter().map(|g| format_in_order(g, order)).collect()
}

fn with_header(header: String, lines: &[String]) -> String {
    let mut out = header;
    for l in lines {
        out.push('\n');
        out.push_str(l);
    }
    out.push('\n');
    out
}

pub fn groebner(doc: &Document, order: MonomialOrder) -> Result<Outcome> {
    with_field!(doc.field(), |f| {
        let ideal = doc.ideal(&f)?;
        let basis = basis_strings(&ideal, order);
        let text = with_header(ideal.ring().header(), &basis);
        let json = json!({ "ring": ideal.ring().header(), "order": order.to_string(), "basis": basis });
        Ok(Outcome::ok(text, json))
    })
}

/// Kernel of the map file applied to the ideal file.
pub fn image(curve: &Document, map: &Document, order: MonomialOrder) -> Result<Outcome> {
    if curve.field() != map.field() {
        return Err(CliError::BadMap(format!("ideal is over {} but the map is over {}", curve.field(), map.field())));
    }
    with_field!(curve.field(), |f| {
        let m = map.map(&f)?;
        let ideal = curve.ideal_in(m.target())?;
        let kernel = ring_map_kernel(&m, &ideal)?;
        let basis = basis_strings(&kernel, order);
        let text = with_header(kernel.ring().header(), &basis);
        Ok(Outcome::ok(text, json!({ "ring": kernel.ring().header(), "order": order.to_string(), "kernel": basis })))
    })
}

pub fn hilbert(doc: &Document, order: MonomialOrder) -> Result<Outcome> {
    with_field!(doc.field(), |f| {
        let ideal = doc.ideal(&f)?;
        let data = hilbert_series_with(&ideal, order)?;
        let hp = data.polynomial.to_string();
        let mut json = json!({
            "hp": hp,
            "krull_dimension": data.dimension,
            "regularity": data.regularity_index,
            "numerator": data.numerator.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        });
        let text = match degree_genus(&data.polynomial) {
            Ok((d, g)) => {
                json["degree"] = json!(d);
                json["genus"] = json!(g);
                format!("HP = {hp} ; degree {d} ; genus {g} ; regularity <={}\n", data.regularity_index)
            }
            Err(_) => format!(
                "HP = {hp} ; dimension {} ; regularity <={}\n",
                data.dimension as i64 - 1,
                data.regularity_index
            ),
        };
        Ok(Outcome::ok(text, json))
    })
}

fn point_for<F: Field>(field: &F, doc: &Document, flag: Option<&str>) -> Result<Vec<F::Elem>> {
    match flag {
        Some(text) => parse_point(field, text),
        None => doc.point(field)?.ok_or_else(|| CliError::Usage("no point: pass --point a,b,c,d".into())),
    }
}

/// Type of the plane cubic in the ideal file at a point, optionally with
/// the CM point over it.
pub fn classify(doc: &Document, point: Option<&str>, reconstruct: bool) -> Result<Outcome> {
    with_exact_field!(doc.field(), "classify", |f| classify_in(&f, doc, point, reconstruct))
}

fn classify_in<F: ExactRoots>(f: &F, doc: &Document, point: Option<&str>, reconstruct: bool) -> Result<Outcome> {
    let image = doc.ideal(f)?;
    let p = point_for(f, doc, point)?;
    let c = classify_plane_cubic(&image, &p)?;
    let mut text =
        format!("case {}\ndescription {}\nmultiplicity {}\n", c.label, c.label.description(), c.multiplicity);
    if let Some(n) = c.singular_points {
        writeln!(text, "singular_points {n}").unwrap();
    }
    if let Some(split) = c.split_tangents {
        writeln!(text, "split_tangents {}", yes_no(split)).unwrap();
    }
    let mut json = json!({
        "case": c.label.as_str(),
        "description": c.label.description(),
        "multiplicity": c.multiplicity,
        "singular_points": c.singular_points,
        "split_tangents": c.split_tangents,
    });
    if reconstruct {
        let pt = cm_point_for(&image, &p)?;
        let gens: Vec<Polynomial<F>> = pt.ideal.gens().iter().map(|g| g.monic(MonomialOrder::GrevLex)).collect();
        let curve = Ideal::new(pt.ideal.ring(), gens)?;
        write!(text, "curve:\n{}map:\n{}", ideal_text(&curve), map_text(&pt.map)).unwrap();
        json["curve"] = json!(curve.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>());
        json["map"] = json!(pt.map.images().iter().map(|g| g.to_string()).collect::<Vec<_>>());
    }
    Ok(Outcome::ok(text, json))
}

fn tuple_string<F: Field>(t: &[Polynomial<F>]) -> String {
    format!("({})", t.iter().map(|h| h.to_string()).collect::<Vec<_>>().join(", "))
}

/// First-order embedded deformations of the ideal file.
pub fn deform(doc: &Document) -> Result<Outcome> {
    with_field!(doc.field(), |f| {
        let defs = embedded_deformations(&doc.ideal(&f)?)?;
        let verified = defs.verify_witnesses()?;
        let tuples: Vec<String> = defs.basis.iter().map(|t| tuple_string(t)).collect();
        let mut text = format!("dimension {}\n", defs.dimension());
        for t in &tuples {
            writeln!(text, "{t}").unwrap();
        }
        writeln!(text, "witnesses verified: {}", yes_no(verified)).unwrap();
        let json = json!({
            "dimension": defs.dimension(),
            "degrees": defs.degrees,
            "syzygies": defs.syzygies.len(),
            "basis": defs.basis.iter().map(|t| t.iter().map(|h| h.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "witnesses_verified": verified,
        });
        Ok(Outcome { text, json, passed: verified })
    })
}

/// Invariant functionals in reduced echelon form, as linear forms in `a1..a12, b1..b16`.
fn echelon_functionals<F: Field>(field: &F, rows: &[Vec<F::Elem>]) -> Result<Vec<String>> {
    let names: Vec<String> = (1..=12).map(|i| format!("a{i}")).chain((1..=16).map(|i| format!("b{i}"))).collect();
    let ring = PolyRing::new(field.clone(), &names)?;
    if rows.is_empty() {
        return Ok(Vec::new());
    }
    let mut m = Matrix::from_rows(field, rows.to_vec());
    let rank = m.rref().len();
    Ok(m.rows()[..rank].iter().map(|r| Polynomial::linear_form(&ring, r).to_string()).collect())
}

/// Tangent space computation at the triple-line point.
pub fn deform_tangent(field: FieldSpec) -> Result<Outcome> {
    with_exact_field!(field, "deform --tangent-cm", |f| {
        let rep = cm_tangent_triple_line(&f)?;
        let invariants = echelon_functionals(&f, &rep.invariants)?;
        let alternative = rep.compare(&f, &INVARIANT_FUNCTIONALS)?;
        let mut text = format!(
            "deformations {} ; raw {} ; action rank {} ; quotient {}\ninvariant functionals:\n",
            rep.deformation_dimension, rep.raw, rep.action_rank, rep.quotient
        );
        for s in &invariants {
            writeln!(text, "  {s}").unwrap();
        }
        let not_inv = if rep.reference.not_invariant.is_empty() {
            "none".to_string()
        } else {
            rep.reference.not_invariant.join(", ")
        };
        writeln!(
            text,
            "reference list spans: {} ; not invariant: {not_inv}\nlist with b3 - a6 spans: {}",
            yes_no(rep.reference.spans),
            yes_no(alternative.spans)
        )
        .unwrap();
        let json = json!({
            "deformation_dimension": rep.deformation_dimension,
            "raw": rep.raw,
            "action_rank": rep.action_rank,
            "quotient": rep.quotient,
            "invariants": invariants,
            "reference_spans": rep.reference.spans,
            "reference_not_invariant": rep.reference.not_invariant,
            "corrected_list_spans": alternative.spans,
        });
        Ok(Outcome { text, json, passed: rep.passed() })
    })
}

fn parametric<B: ExactRoots>(base: &B, doc: &Document) -> Result<ParametricIdeal<B>> {
    Ok(ParametricIdeal::from_rational(&doc.ideal(&RationalFunctions::new(base.clone()))?)?)
}

fn excluded_strings<B: ExactRoots>(base: &B, fam: &ParametricIdeal<B>) -> Vec<String> {
    fam.excluded().iter().map(|c| base.format_elem(c)).collect()
}

/// Fiber of a `Q(t)` family at `t = c`.
pub fn family_fiber(doc: &Document, at: &str) -> Result<Outcome> {
    with_parametric_field!(doc.field(), "family fiber", |b| {
        let fam = parametric(&b, doc)?;
        let c = parse_scalar(&b, at)?;
        let fiber = fam.fiber_at(&c)?;
        let gens: Vec<String> = fiber.gens().iter().map(|g| g.to_string()).collect();
        let json = json!({ "ring": fiber.ring().header(), "t": b.format_elem(&c), "fiber": gens });
        Ok(Outcome::ok(ideal_text(&fiber), json))
    })
}

/// Generic image of a family; parameter values where it may not specialize are listed.
pub fn family_image(doc: &Document, map: &Document) -> Result<Outcome> {
    if doc.field() != map.field() {
        return Err(CliError::BadMap(format!("family is over {} but the map is over {}", doc.field(), map.field())));
    }
    with_parametric_field!(doc.field(), "family image", |b| {
        let m = map.map(&RationalFunctions::new(b))?;
        let fam = ParametricIdeal::from_rational(&doc.ideal_in(m.target())?)?;
        let image = fam.generic_image(&m)?;
        let excluded = excluded_strings(&b, &image);
        let gens = basis_strings(image.ideal(), MonomialOrder::GrevLex);
        let mut text = with_header(image.ring().header(), &gens);
        if !excluded.is_empty() {
            writeln!(text, "# excluded t = {}", excluded.join(", ")).unwrap();
        }
        Ok(Outcome::ok(text, json!({ "ring": image.ring().header(), "image": gens, "excluded": excluded })))
    })
}

/// Hilbert polynomial of the generic fiber against sample fibers.
pub fn family_probe(doc: &Document, samples: &str) -> Result<Outcome> {
    with_parametric_field!(doc.field(), "family probe", |b| {
        let fam = parametric(&b, doc)?;
        let values = parse_samples(&b, samples)?;
        let rep = flatness_probe(&fam, &values)?;
        let mut text = format!("generic HP = {}\n", rep.generic);
        for (c, hp) in &rep.samples {
            writeln!(text, "t = {}: HP = {hp}", b.format_elem(c)).unwrap();
        }
        let excluded = excluded_strings(&b, &fam);
        if !excluded.is_empty() {
            writeln!(text, "excluded t = {}", excluded.join(", ")).unwrap();
        }
        writeln!(text, "constant: {}", yes_no(rep.passed())).unwrap();
        let json = json!({
            "generic": rep.generic.to_string(),
            "samples": rep.samples.iter().map(|(c, hp)| json!({ "t": b.format_elem(c), "hp": hp.to_string() })).collect::<Vec<_>>(),
            "excluded": excluded,
            "constant": rep.passed(),
        });
        Ok(Outcome { text, json, passed: rep.passed() })
    })
}

/// JSON of one catalog row.
pub fn row_json(row: &CatalogRow) -> Value {
    let mut v = report_json(&row.report);
    v["case"] = json!(row.label.as_str());
    v["kernel_match"] = json!(row.kernel_match);
    v["passed"] = json!(row.passed());
    v
}

fn report_json(r: &VerificationReport) -> Value {
    json!({
        "hp_curve": r.hp_curve.to_string(),
        "hp_image": r.hp_image.to_string(),
        "dim_BA": r.dim_ba.1,
        "dim_BA_truncations": [[6, r.dim_ba.0], [7, r.dim_ba.1]],
        "mB_in_A": r.moves_b_into_a,
        "singular_at_p": r.singular_at_p,
        "passed": r.passed(),
    })
}

/// A catalog case whose curve ideal is replaced by a file.
pub struct Override {
    pub label: CaseLabel,
    pub curve: Document,
}

fn catalog_point<F: Field>(f: &F, label: CaseLabel, overrides: &[Override]) -> Result<CMPoint<F>> {
    let pt = catalog_case(label, f);
    match overrides.iter().find(|o| o.label == label) {
        Some(o) => {
            let ideal = o.curve.ideal_in(&curve_ring(f))?;
            Ok(CMPoint::new(ideal, pt.map, pt.point, Some(label))?)
        }
        None => Ok(pt),
    }
}

/// Verification table of the nine cases.
pub fn verify_catalog(field: FieldSpec, overrides: &[Override]) -> Result<Outcome> {
    with_field!(field.base(), |f| {
        let mut text = format!(
            "{:<5} {:<7} {:<9} {:<9} {:<7} {:<8} {:<9} {}\n",
            "case", "kernel", "hp_curve", "hp_image", "dim_BA", "mB_in_A", "singular", "status"
        );
        let mut rows = Vec::new();
        let mut all = true;
        for label in CaseLabel::ALL {
            let pt = catalog_point(&f, label, overrides)?;
            match verify_catalog_point(&pt, label) {
                Ok(row) => {
                    let r = &row.report;
                    writeln!(
                        text,
                        "{:<5} {:<7} {:<9} {:<9} {:<7} {:<8} {:<9} {}",
                        label.as_str(),
                        yes_no(row.kernel_match),
                        r.hp_curve.to_string(),
                        r.hp_image.to_string(),
                        format!("{}/{}", r.dim_ba.0, r.dim_ba.1),
                        yes_no(r.moves_b_into_a),
                        yes_no(r.singular_at_p),
                        if row.passed() { "PASS" } else { "FAIL" }
                    )
                    .unwrap();
                    all &= row.passed();
                    rows.push(row_json(&row));
                }
                Err(e) => {
                    writeln!(text, "{:<5} error: {e} FAIL", label.as_str()).unwrap();
                    all = false;
                    rows.push(json!({ "case": label.as_str(), "error": e.to_string(), "passed": false }));
                }
            }
        }
        Ok(Outcome { text, json: json!({ "field": f.name(), "cases": rows }), passed: all })
    })
}

/// Checks an arbitrary pair (curve, map) at a point.
pub fn verify_point(curve: &Document, map: &Document, point: Option<&str>) -> Result<Outcome> {
    with_field!(curve.field(), |f| {
        let m = map.map(&f)?;
        let ideal = curve.ideal_in(m.target())?;
        let p = point_for(&f, curve, point)?;
        let pt = CMPoint::new(ideal, m, p, None)?;
        let r = verify_cm_point(&pt)?;
        let image = cmcubics_core::scheme_image(&pt)?;
        let text = format!(
            "image {image}\nhp_curve {}\nhp_image {}\ndim_BA {}/{}\nmB_in_A {}\nsingular_at_p {}\nstatus {}\n",
            r.hp_curve,
            r.hp_image,
            r.dim_ba.0,
            r.dim_ba.1,
            yes_no(r.moves_b_into_a),
            yes_no(r.singular_at_p),
            if r.passed() { "PASS" } else { "FAIL" }
        );
        let mut json = report_json(&r);
        json["image"] = json!(image.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>());
        Ok(Outcome { text, json, passed: r.passed() })
    })
}

/// Presentation relations shown next to an extension check.
pub(crate) fn presentation_strings<F: Field>(label: CaseLabel, f: &F) -> Result<Vec<String>> {
    let pres = ExtensionPresentation::for_case(label, f)?;
    Ok(std::iter::once(&pres.cubic).chain(&pres.relations).map(|p| p.to_string()).collect())
}
