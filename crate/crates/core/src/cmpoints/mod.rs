//! Cohen-Macaulay points: the nine-case catalog, scheme images, and the
//! verification of the defining conditions at a point.

mod chart;
mod classify;
mod extension;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hilbert::{hilbert_polynomial, HilbertPolynomial};
use crate::ideal::{ring_map_kernel, Ideal};
use crate::linalg::Matrix;
use crate::poly::{PolyRing, Polynomial, RingMap};
use crate::scalars::Field;

pub use chart::{dim_b_over_a, extension_generators, moves_b_into_a};
pub use classify::{classify_plane_cubic, cm_point_for, pgl_transform, singular_locus, Classification, PlaneCubic};
pub use extension::{extension_matches_chart, extension_ring, presentation_matches_chart, ExtensionPresentation};

/// The nine point types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseLabel {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
    IX,
}

impl CaseLabel {
    pub const ALL: [CaseLabel; 9] = [
        CaseLabel::I,
        CaseLabel::II,
        CaseLabel::III,
        CaseLabel::IV,
        CaseLabel::V,
        CaseLabel::VI,
        CaseLabel::VII,
        CaseLabel::VIII,
        CaseLabel::IX,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CaseLabel::I => "I",
            CaseLabel::II => "II",
            CaseLabel::III => "III",
            CaseLabel::IV => "IV",
            CaseLabel::V => "V",
            CaseLabel::VI => "VI",
            CaseLabel::VII => "VII",
            CaseLabel::VIII => "VIII",
            CaseLabel::IX => "IX",
        }
    }

    /// Geometry of the image cubic near the point.
    pub fn description(&self) -> &'static str {
        match self {
            CaseLabel::I => "nodal cubic, point at the node",
            CaseLabel::II => "cuspidal cubic, point at the cusp",
            CaseLabel::III => "conic plus secant line, point at a crossing",
            CaseLabel::IV => "conic plus tangent line, point at the tangency",
            CaseLabel::V => "three non-concurrent lines, point at a vertex",
            CaseLabel::VI => "three concurrent lines, point at the common point",
            CaseLabel::VII => "double line plus line, point on the double line only",
            CaseLabel::VIII => "double line plus line, point at the intersection",
            CaseLabel::IX => "triple line",
        }
    }

    /// Curve ideal in `k[x,y,w,u]`.
    fn curve_generators(&self) -> [&'static str; 3] {
        match self {
            CaseLabel::I => ["x*u - y*w", "y*u - x*(x + w)", "u^2 - w*(x + w)"],
            CaseLabel::II => ["x*u - y*w", "y*u - x^2", "u^2 - x*w"],
            CaseLabel::III => ["x*u", "y*u - (x^2 + y*w)", "u^2 - u*w"],
            CaseLabel::IV => ["x*u - (x^2 + y*w)", "y*u", "u^2 - (x^2 + y*w)"],
            CaseLabel::V => ["x*u", "y*u - y*w", "u^2 - u*w"],
            CaseLabel::VI => ["x*u - x*y", "y*u - x*y", "u^2 - y*u"],
            CaseLabel::VII => ["x*u", "y*u - x*w", "u^2"],
            CaseLabel::VIII => ["x*u - x^2", "y*u", "u^2 - x*u"],
            CaseLabel::IX => ["x*u", "y*u - x^2", "u^2"],
        }
    }

    /// The plane cubic cut out by the image in `z = 0`.
    pub fn image_cubic(&self) -> &'static str {
        match self {
            CaseLabel::I => "x^3 + x^2*w - y^2*w",
            CaseLabel::II => "x^3 - y^2*w",
            CaseLabel::III => "x^3 + x*y*w",
            CaseLabel::IV => "x^2*y + y^2*w",
            CaseLabel::V => "x*y*w",
            CaseLabel::VI => "x^2*y - x*y^2",
            CaseLabel::VII => "x^2*w",
            CaseLabel::VIII => "x^2*y",
            CaseLabel::IX => "x^3",
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CaseLabel::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnsupportedCase(s.to_string()))
    }
}

/// `k[x,y,w,u]`, home of the curves.
pub fn curve_ring<F: Field>(field: &F) -> Arc<PolyRing<F>> {
    PolyRing::new(field.clone(), &["x", "y", "w", "u"]).expect("valid names")
}

/// `k[x,y,z,w]`, home of the images.
pub fn space_ring<F: Field>(field: &F) -> Arc<PolyRing<F>> {
    PolyRing::new(field.clone(), &["x", "y", "z", "w"]).expect("valid names")
}

/// A CM point `(I, phi)` together with the distinguished image point.
#[derive(Clone, Debug)]
pub struct CMPoint<F: Field> {
    pub ideal: Ideal<F>,
    /// `k[x,y,z,w] -> k[x,y,w,u]`, graded of degree 1.
    pub map: RingMap<F>,
    /// Projective coordinates of the point in the image space.
    pub point: Vec<F::Elem>,
    pub label: Option<CaseLabel>,
}

impl<F: Field> CMPoint<F> {
    pub fn new(ideal: Ideal<F>, map: RingMap<F>, point: Vec<F::Elem>, label: Option<CaseLabel>) -> Result<Self> {
        if !map.is_graded() || map.target() != ideal.ring() {
            return Err(Error::ContextMismatch);
        }
        if point.len() != map.source().nvars() || point.iter().all(|c| map.source().field().is_zero(c)) {
            return Err(Error::ContextMismatch);
        }
        Ok(CMPoint { ideal, map, point, label })
    }

    pub fn field(&self) -> &F {
        self.ideal.ring().field()
    }

    /// Same image and same point (projectively). By uniqueness of the
    /// extension this identifies CM points with equal curve Hilbert data.
    pub fn equivalent(&self, other: &CMPoint<F>) -> Result<bool> {
        let same_point = proportional(self.field(), &self.point, &other.point);
        let same_image = scheme_image(self)?.equals(&scheme_image(other)?)?;
        let same_hp = hilbert_polynomial(&self.ideal)? == hilbert_polynomial(&other.ideal)?;
        Ok(same_point && same_image && same_hp)
    }
}

pub(crate) fn proportional<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> bool {
    a.len() == b.len() && (0..a.len()).all(|i| (0..a.len()).all(|j| f.mul(&a[i], &b[j]) == f.mul(&a[j], &b[i])))
}

/// The standard projection `x -> x, y -> y, z -> 0, w -> w`.
pub fn standard_map<F: Field>(field: &F) -> RingMap<F> {
    RingMap::from_strs(&space_ring(field), &curve_ring(field), &["x", "y", "0", "w"]).expect("valid map")
}

/// Catalog point of the given type, with point `[0:0:0:1]`.
pub fn catalog_case<F: Field>(label: CaseLabel, field: &F) -> CMPoint<F> {
    let ring = curve_ring(field);
    let ideal = Ideal::from_strs(&ring, &label.curve_generators()).expect("catalog parses");
    let point = vec![field.zero(), field.zero(), field.zero(), field.one()];
    CMPoint { ideal, map: standard_map(field), point, label: Some(label) }
}

/// Expected image ideal `(z, q)` of a catalog case.
pub fn expected_image<F: Field>(label: CaseLabel, field: &F) -> Ideal<F> {
    Ideal::from_strs(&space_ring(field), &["z", label.image_cubic()]).expect("catalog parses")
}

/// Kernel of `S -> S_C`, the scheme-theoretic image.
pub fn scheme_image<F: Field>(pt: &CMPoint<F>) -> Result<Ideal<F>> {
    ring_map_kernel(&pt.map, &pt.ideal)
}

/// Outcome of [`verify_cm_point`].
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub hp_curve: HilbertPolynomial,
    pub hp_image: HilbertPolynomial,
    /// `HP(curve) = 3t + 1`.
    pub curve_ok: bool,
    /// `HP(image) = 3t`, so the length defect is 1.
    pub image_ok: bool,
    /// `dim_k B/A` at filtration degrees 6 and 7.
    pub dim_ba: (usize, usize),
    /// Every module generator of `B` over `A` is moved into `A` by the maximal ideal of the point.
    pub moves_b_into_a: bool,
    pub singular_at_p: bool,
}

impl VerificationReport {
    pub fn dim_ba_ok(&self) -> bool {
        self.dim_ba == (1, 1)
    }

    pub fn passed(&self) -> bool {
        self.curve_ok && self.image_ok && self.dim_ba_ok() && self.moves_b_into_a && self.singular_at_p
    }
}

/// Whether the image has a singular point at `p`: all generators and all
/// 2x2 minors of the Jacobian vanish there.
pub fn image_singular_at<F: Field>(image: &Ideal<F>, point: &[F::Elem]) -> Result<bool> {
    let f = image.ring().field();
    let gens = image.basis().elements();
    for g in &gens {
        if !f.is_zero(&g.eval(point)?) {
            return Ok(false);
        }
    }
    let n = image.ring().nvars();
    let jac: Vec<Vec<F::Elem>> = gens
        .iter()
        .map(|g| (0..n).map(|v| g.partial_derivative(v).eval(point)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    if jac.is_empty() {
        return Ok(true);
    }
    Ok(Matrix::from_rows(f, jac).rank() < 2)
}

/// Runs checks (a)-(e) on a CM point.
pub fn verify_cm_point<F: Field>(pt: &CMPoint<F>) -> Result<VerificationReport> {
    let image = scheme_image(pt)?;
    let hp_curve = hilbert_polynomial(&pt.ideal)?;
    let hp_image = hilbert_polynomial(&image)?;
    let curve_ok = hp_curve == HilbertPolynomial::linear(3, 1);
    let image_ok = hp_image == HilbertPolynomial::linear(3, 0);
    let singular_at_p = image_singular_at(&image, &pt.point)?;
    let chart = chart::Chart::new(pt)?;
    let dim_ba = (chart.dim_b_over_a(6)?, chart.dim_b_over_a(7)?);
    let moves_b_into_a = chart.moves_b_into_a()?;
    Ok(VerificationReport { hp_curve, hp_image, curve_ok, image_ok, dim_ba, moves_b_into_a, singular_at_p })
}

/// One row of the catalog verification table.
#[derive(Clone, Debug)]
pub struct CatalogRow {
    pub label: CaseLabel,
    pub kernel_match: bool,
    pub report: VerificationReport,
}

impl CatalogRow {
    pub fn passed(&self) -> bool {
        self.kernel_match && self.report.passed()
    }
}

pub fn verify_catalog_point<F: Field>(pt: &CMPoint<F>, label: CaseLabel) -> Result<CatalogRow> {
    let image = scheme_image(pt)?;
    let kernel_match = image.equals(&expected_image(label, pt.field()))?;
    Ok(CatalogRow { label, kernel_match, report: verify_cm_point(pt)? })
}

/// Verifies all nine catalog cases.
pub fn verify_catalog<F: Field>(field: &F) -> Result<Vec<CatalogRow>> {
    CaseLabel::ALL.iter().map(|&l| verify_catalog_point(&catalog_case(l, field), l)).collect()
}

/// Replaces one generator of a catalog ideal (fault injection).
pub fn with_generator<F: Field>(pt: &CMPoint<F>, index: usize, replacement: Polynomial<F>) -> Result<CMPoint<F>> {
    let mut gens = pt.ideal.gens().to_vec();
    if index >= gens.len() {
        return Err(Error::ContextMismatch);
    }
    gens[index] = replacement;
    Ok(CMPoint { ideal: Ideal::new(pt.ideal.ring(), gens)?, ..pt.clone() })
}

/// Moves a point so that its `w`-coordinate is nonzero, changing `phi` by a
/// linear automorphism of the image space.
pub(crate) fn into_w_chart<F: Field>(pt: &CMPoint<F>) -> Result<CMPoint<F>> {
    let f = pt.field();
    let w = pt.point.len() - 1;
    if !f.is_zero(&pt.point[w]) {
        return Ok(pt.clone());
    }
    let j = pt.point.iter().position(|c| !f.is_zero(c)).ok_or(Error::ChartMiss)?;
    // new coordinates: w' = w + x_j, everything else fixed
    let mut images = pt.map.images().to_vec();
    images[w] = &images[w] + &images[j];
    let mut point = pt.point.clone();
    point[w] = f.add(&point[w], &point[j]);
    Ok(CMPoint {
        ideal: pt.ideal.clone(),
        map: RingMap::new(pt.map.source(), pt.map.target(), images)?,
        point,
        label: pt.label,
    })
}
