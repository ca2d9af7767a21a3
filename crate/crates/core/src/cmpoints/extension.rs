//! Explicit presentations `B = A[b]/(...)` of the chart extensions.

use std::sync::Arc;

use super::{curve_ring, CaseLabel};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::poly::{PolyRing, Polynomial, RingHandle};
use crate::scalars::Field;

/// `A = k[x,y]/(q)` and `B = A[b]/(relations)`.
#[derive(Clone, Debug)]
pub struct ExtensionPresentation<F: Field> {
    pub label: CaseLabel,
    pub ring: Arc<PolyRing<F>>,
    pub cubic: Polynomial<F>,
    pub relations: Vec<Polynomial<F>>,
}

impl<F: Field> ExtensionPresentation<F> {
    /// All of `q` and the relations in `k[x,y,b]`.
    pub fn ideal(&self) -> Result<Ideal<F>> {
        let mut gens = vec![self.cubic.clone()];
        gens.extend(self.relations.iter().cloned());
        Ideal::new(&self.ring, gens)
    }
}

/// `k[x,y,b]`.
pub fn extension_ring<F: Field>(field: &F) -> Arc<PolyRing<F>> {
    PolyRing::new(field.clone(), &["x", "y", "b"]).expect("valid names")
}

fn presentation_strs(label: CaseLabel) -> Option<(&'static str, [&'static str; 3])> {
    Some(match label {
        CaseLabel::IV => ("x^2*y + y^2", ["x*b - (x^2 + y)", "y*b", "b^2 - (x^2 + y)"]),
        CaseLabel::VI => ("x^2*y - x*y^2", ["x*b - x*y", "y*b - x*y", "b^2 - x*y"]),
        CaseLabel::VII => ("x^2", ["x*b", "y*b - x", "b^2"]),
        CaseLabel::VIII => ("x^2*y", ["x*b - x^2", "y*b", "b^2 - x^2"]),
        CaseLabel::IX => ("x^3", ["x*b", "y*b - x^2", "b^2"]),
        _ => return None,
    })
}

impl<F: Field> ExtensionPresentation<F> {
    /// Available for IV, VI, VII, VIII and IX.
    pub fn for_case(label: CaseLabel, field: &F) -> Result<Self> {
        let (q, rels) = presentation_strs(label).ok_or_else(|| Error::UnsupportedCase(label.to_string()))?;
        let ring = extension_ring(field);
        Ok(ExtensionPresentation { label, cubic: ring.parse(q)?, relations: ring.parse_all(&rels)?, ring })
    }
}

/// The catalog curve of `label` restricted to `w = 1`, with `u` renamed `b`.
pub fn catalog_chart<F: Field>(label: CaseLabel, field: &F) -> Result<Ideal<F>> {
    let curve = curve_ring(field);
    let ring = extension_ring(field);
    // x, y, w, u -> x, y, 1, b
    let images = [ring.var(0), ring.var(1), ring.one(), ring.var(2)];
    let gens = curve
        .parse_all(&label.curve_generators())?
        .iter()
        .map(|g| g.substitute(&images))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(&ring, gens)
}

/// Whether a presentation agrees with the chart of the catalog curve `chart_of`.
pub fn presentation_matches_chart<F: Field>(pres: &ExtensionPresentation<F>, chart_of: CaseLabel) -> Result<bool> {
    catalog_chart(chart_of, pres.ring.field())?.equals(&pres.ideal()?)
}

/// Presentation of `label` against its own chart.
pub fn extension_matches_chart<F: Field>(label: CaseLabel, field: &F) -> Result<bool> {
    presentation_matches_chart(&ExtensionPresentation::for_case(label, field)?, label)
}
